#include "bgas/lattice.hpp"

#include <algorithm>
#include <cstdio>
#include <set>

namespace bgas {

std::string Momentum::to_string() const {
    char buf[80];
    if (dim == 1) {
        std::snprintf(buf, sizeof buf, "(%lld)", static_cast<long long>(n[0]));
    } else if (dim == 2) {
        std::snprintf(buf, sizeof buf, "(%lld,%lld)", static_cast<long long>(n[0]),
                      static_cast<long long>(n[1]));
    } else {
        std::snprintf(buf, sizeof buf, "(%lld,%lld,%lld)", static_cast<long long>(n[0]),
                      static_cast<long long>(n[1]), static_cast<long long>(n[2]));
    }
    return buf;
}

ModeSet ModeSet::from_modes(int dim, std::vector<Momentum> modes) {
    if (dim < 1 || dim > 3) throw_config("dimension must be 1, 2 or 3", "dim");
    for (auto& m : modes) {
        m.dim = dim;
        for (int c = dim; c < 3; ++c) {
            if (m.n[c] != 0) throw_config("mode has nonzero component beyond dimension " + std::to_string(dim), "modes");
        }
        if (m.is_zero()) throw_config("mode set must not contain the zero mode", "modes");
    }
    std::sort(modes.begin(), modes.end());
    if (std::adjacent_find(modes.begin(), modes.end()) != modes.end())
        throw_config("mode set contains duplicates", "modes");
    for (const auto& m : modes) {
        if (!std::binary_search(modes.begin(), modes.end(), -m))
            throw_config("mode set is not closed under negation (missing " + (-m).to_string() + ")", "modes");
    }
    ModeSet s;
    s.dim_ = dim;
    s.modes_ = std::move(modes);
    return s;
}

ModeSet ModeSet::ball(int dim, double cutoff, std::size_t max_modes) {
    if (dim < 1 || dim > 3) throw_config("dimension must be 1, 2 or 3", "dim");
    if (!(cutoff > 0.0)) throw_config("ball cutoff must be positive", "modes.cutoff");
    // |2*pi*n| <= cutoff  <=>  |n|^2 <= (cutoff/2pi)^2
    const double r = cutoff / two_pi;
    const auto nmax = static_cast<std::int64_t>(std::floor(r));
    const double r2 = r * r;
    // Exact membership test in integers where possible: |n|^2 <= r2.
    std::size_t bound_estimate = 1;
    for (int c = 0; c < dim; ++c) bound_estimate *= static_cast<std::size_t>(2 * nmax + 1);
    if (bound_estimate > 8 * max_modes + 8)
        throw Error(ErrorKind::dimension,
                    "ball cutoff " + std::to_string(cutoff) + " would enumerate about " +
                        std::to_string(bound_estimate) + " candidate modes (limit " +
                        std::to_string(max_modes) + ")");

    std::vector<Momentum> modes;
    const std::int64_t lo1 = dim >= 2 ? -nmax : 0, hi1 = dim >= 2 ? nmax : 0;
    const std::int64_t lo2 = dim >= 3 ? -nmax : 0, hi2 = dim >= 3 ? nmax : 0;
    for (std::int64_t a = -nmax; a <= nmax; ++a)
        for (std::int64_t b = lo1; b <= hi1; ++b)
            for (std::int64_t c = lo2; c <= hi2; ++c) {
                if (a == 0 && b == 0 && c == 0) continue;
                const auto norm2 = a * a + b * b + c * c;
                if (static_cast<double>(norm2) <= r2) {
                    modes.push_back({{a, b, c}, dim});
                    if (modes.size() > max_modes)
                        throw Error(ErrorKind::dimension,
                                    "ball cutoff " + std::to_string(cutoff) + " exceeds the mode limit " +
                                        std::to_string(max_modes));
                }
            }
    std::sort(modes.begin(), modes.end());
    ModeSet s;
    s.dim_ = dim;
    s.modes_ = std::move(modes);
    return s;
}

bool ModeSet::contains(const Momentum& m) const {
    return std::binary_search(modes_.begin(), modes_.end(), m);
}

std::ptrdiff_t ModeSet::index_of(const Momentum& m) const {
    auto it = std::lower_bound(modes_.begin(), modes_.end(), m);
    if (it == modes_.end() || !(*it == m)) return -1;
    return it - modes_.begin();
}

ModeSet sum_closure(const ModeSet& s) {
    std::set<Momentum> out(s.begin(), s.end());
    for (const auto& a : s)
        for (const auto& b : s) {
            const Momentum c = a + b;
            if (!c.is_zero()) out.insert(c);
        }
    return ModeSet::from_modes(s.dim(), {out.begin(), out.end()});
}

ModeSet mode_union(const ModeSet& a, const ModeSet& b) {
    if (a.dim() != b.dim()) throw_config("mode set union across dimensions", "modes");
    std::set<Momentum> out(a.begin(), a.end());
    out.insert(b.begin(), b.end());
    return ModeSet::from_modes(a.dim(), {out.begin(), out.end()});
}

}  // namespace bgas
