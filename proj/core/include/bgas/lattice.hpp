#pragma once

#include <array>
#include <cmath>
#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "bgas/errors.hpp"

namespace bgas {

inline constexpr double two_pi = 6.283185307179586476925286766559;

// A point k = 2*pi*n of the dual lattice of the unit torus, d in {1,2,3}.
// Only the integer vector n is stored; all arithmetic stays exact and the
// (2*pi)^2 scale enters once, at the final floating-point step.
struct Momentum {
    std::array<std::int64_t, 3> n{0, 0, 0};
    int dim = 1;

    static Momentum of(int dim, std::int64_t n0, std::int64_t n1 = 0, std::int64_t n2 = 0) {
        Momentum m;
        m.dim = dim;
        m.n = {n0, n1, n2};
        return m;
    }

    bool is_zero() const { return n[0] == 0 && n[1] == 0 && n[2] == 0; }

    std::int64_t norm2_int() const { return n[0] * n[0] + n[1] * n[1] + n[2] * n[2]; }

    // |k|^2 = (2*pi)^2 * |n|^2
    double k2() const { return two_pi * two_pi * static_cast<double>(norm2_int()); }

    std::int64_t dot_int(const Momentum& o) const {
        return n[0] * o.n[0] + n[1] * o.n[1] + n[2] * o.n[2];
    }

    Momentum operator-() const { return {{-n[0], -n[1], -n[2]}, dim}; }
    Momentum operator+(const Momentum& o) const {
        return {{n[0] + o.n[0], n[1] + o.n[1], n[2] + o.n[2]}, dim};
    }
    Momentum operator-(const Momentum& o) const {
        return {{n[0] - o.n[0], n[1] - o.n[1], n[2] - o.n[2]}, dim};
    }

    // Canonical order: lexicographic on n. Gives every reduction in the
    // project a deterministic default order.
    auto operator<=>(const Momentum&) const = default;

    std::string to_string() const;
};

// Finite, nonzero, negation-closed set of momenta in canonical order.
class ModeSet {
public:
    ModeSet() = default;

    // Validates: no zero mode, no duplicates, closed under negation.
    static ModeSet from_modes(int dim, std::vector<Momentum> modes);

    // { k = 2*pi*n : n != 0, |k| <= cutoff }, canonical (lexicographic) order.
    // Throws ErrorKind::dimension when the set would exceed max_modes.
    static ModeSet ball(int dim, double cutoff, std::size_t max_modes = default_max_modes);

    int dim() const { return dim_; }
    std::size_t size() const { return modes_.size(); }
    bool empty() const { return modes_.empty(); }
    const std::vector<Momentum>& modes() const { return modes_; }
    const Momentum& operator[](std::size_t i) const { return modes_[i]; }

    bool contains(const Momentum& m) const;
    // Index in canonical order; -1 if absent.
    std::ptrdiff_t index_of(const Momentum& m) const;

    auto begin() const { return modes_.begin(); }
    auto end() const { return modes_.end(); }

    static constexpr std::size_t default_max_modes = 4'000'000;

private:
    int dim_ = 1;
    std::vector<Momentum> modes_;  // sorted, unique
};

// S u { a+b : a,b in S, a+b != 0 }, deduplicated and negation-closed.
// Covers the support of Theorem-2-style double sums of a band-limited
// potential: every nonvanishing term has all three of k, l, k+l here.
ModeSet sum_closure(const ModeSet& s);

// Union in canonical order.
ModeSet mode_union(const ModeSet& a, const ModeSet& b);

}  // namespace bgas
