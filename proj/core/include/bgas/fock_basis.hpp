#pragma once

#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "bgas/lattice.hpp"

namespace bgas {

using occ_t = std::uint16_t;

// Occupation-number basis over an ordered list of momentum modes, restricted
// to one total-momentum sector (all Hamiltonians in scope conserve it).
//
// Two flavours share the machinery:
//   excitation space:  modes exclude k = 0, total occupation <= n_max,
//                      graded-lexicographic order, vacuum at ordinal 0;
//   N-body space:      modes include k = 0, total occupation == N,
//                      lexicographic order.
class OccupationBasis {
public:
    static constexpr std::size_t default_dim_limit = 3'000'000;

    // Excitation Fock space over the nonzero modes of m.
    static OccupationBasis excitation(const ModeSet& m, int n_max, bool momentum_restrict = true,
                                      std::size_t dim_limit = default_dim_limit);

    // Canonical-ensemble N-body space over m u {0}.
    static OccupationBasis nbody(const ModeSet& m, int n_particles, bool momentum_restrict = true,
                                 std::size_t dim_limit = default_dim_limit);

    std::size_t size() const { return nstates_; }
    int num_modes() const { return static_cast<int>(mode_list_.size()); }
    const std::vector<Momentum>& mode_list() const { return mode_list_; }
    bool has_zero_mode() const { return zero_mode_ >= 0; }
    int zero_mode_index() const { return zero_mode_; }

    std::span<const occ_t> state(std::size_t i) const {
        return {states_.data() + i * mode_list_.size(), mode_list_.size()};
    }
    int total_occupation(std::size_t i) const { return totals_[i]; }

    // Ordinal of an occupation vector; -1 if outside the basis.
    std::ptrdiff_t find(std::span<const occ_t> occ) const;

    int n_max() const { return n_max_; }               // -1 for N-body bases
    int n_particles() const { return n_particles_; }   // -1 for excitation bases
    bool momentum_restricted() const { return momentum_restrict_; }

private:
    struct KeyHash {
        std::size_t operator()(const std::vector<occ_t>& v) const {
            std::size_t h = 1469598103934665603ull;
            for (occ_t x : v) {
                h ^= x;
                h *= 1099511628211ull;
            }
            return h;
        }
    };

    void build_index();

    std::vector<Momentum> mode_list_;
    std::vector<occ_t> states_;  // row-major, size() * num_modes()
    std::size_t nstates_ = 0;
    std::vector<int> totals_;
    std::unordered_map<std::vector<occ_t>, std::size_t, KeyHash> index_;
    int zero_mode_ = -1;
    int n_max_ = -1;
    int n_particles_ = -1;
    bool momentum_restrict_ = true;
};

}  // namespace bgas
