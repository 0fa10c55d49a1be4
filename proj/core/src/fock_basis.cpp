#include "bgas/fock_basis.hpp"

#include <algorithm>
#include <array>
#include <limits>

namespace bgas {

namespace {

struct Enumerator {
    const std::vector<Momentum>& modes;
    int budget;            // remaining occupation
    bool exact;            // consume the budget exactly (N-body) or not
    bool momentum_restrict;
    std::size_t dim_limit;

    // suffix reach bounds per coordinate: with b remaining quanta spread over
    // modes i.., the total momentum lies in [b*neg[i][c], b*pos[i][c]]
    std::array<std::vector<std::int64_t>, 3> neg, pos;

    std::vector<occ_t> occ;
    std::vector<occ_t>* out = nullptr;  // null: counting pass
    std::size_t count = 0;

    explicit Enumerator(const std::vector<Momentum>& m) : modes(m) {
        const std::size_t nm = modes.size();
        for (int c = 0; c < 3; ++c) {
            neg[c].assign(nm + 1, 0);
            pos[c].assign(nm + 1, 0);
            for (std::size_t i = nm; i-- > 0;) {
                neg[c][i] = std::min<std::int64_t>({0, neg[c][i + 1], modes[i].n[c]});
                pos[c][i] = std::max<std::int64_t>({0, pos[c][i + 1], modes[i].n[c]});
            }
        }
    }

    bool reachable(std::size_t i, int b, const std::array<std::int64_t, 3>& mom) const {
        if (!momentum_restrict) return true;
        for (int c = 0; c < 3; ++c) {
            const std::int64_t t = -mom[c];  // still needed
            if (t < b * neg[c][i] || t > b * pos[c][i]) return false;
        }
        return true;
    }

    void visit() {
        ++count;
        if (count > dim_limit)
            throw Error(ErrorKind::dimension,
                        "basis dimension exceeds the configured limit of " + std::to_string(dim_limit));
        if (out) out->insert(out->end(), occ.begin(), occ.end());
    }

    void rec(std::size_t i, int used, std::array<std::int64_t, 3> mom) {
        if (i == modes.size()) {
            if (exact && used != budget) return;
            if (momentum_restrict && (mom[0] || mom[1] || mom[2])) return;
            visit();
            return;
        }
        const int room = budget - used;
        if (!reachable(i, room, mom)) return;
        const auto& k = modes[i];
        for (int n = 0; n <= room; ++n) {
            occ[i] = static_cast<occ_t>(n);
            rec(i + 1, used + n,
                {mom[0] + n * k.n[0], mom[1] + n * k.n[1], mom[2] + n * k.n[2]});
        }
        occ[i] = 0;
    }

    std::size_t run(std::vector<occ_t>* sink) {
        out = sink;
        count = 0;
        occ.assign(modes.size(), 0);
        rec(0, 0, {0, 0, 0});
        return count;
    }
};

}  // namespace

OccupationBasis OccupationBasis::excitation(const ModeSet& m, int n_max, bool momentum_restrict,
                                            std::size_t dim_limit) {
    if (n_max < 0) throw_config("n_max must be nonnegative", "nmax");
    OccupationBasis b;
    b.mode_list_ = m.modes();
    b.n_max_ = n_max;
    b.momentum_restrict_ = momentum_restrict;

    Enumerator e(b.mode_list_);
    e.budget = n_max;
    e.exact = false;
    e.momentum_restrict = momentum_restrict;
    e.dim_limit = dim_limit;
    e.run(nullptr);
    std::vector<occ_t> flat;
    flat.reserve(e.count * b.mode_list_.size());
    e.run(&flat);

    // graded lexicographic: total ascending, then occupation vector
    const std::size_t nm = b.mode_list_.size();
    const std::size_t ns = nm ? flat.size() / nm : (flat.size() ? 1 : 0);
    std::vector<std::size_t> order(ns);
    for (std::size_t i = 0; i < ns; ++i) order[i] = i;
    auto total_of = [&](std::size_t i) {
        int t = 0;
        for (std::size_t c = 0; c < nm; ++c) t += flat[i * nm + c];
        return t;
    };
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t c) {
        const int ta = total_of(a), tc = total_of(c);
        if (ta != tc) return ta < tc;
        return std::lexicographical_compare(flat.begin() + a * nm, flat.begin() + (a + 1) * nm,
                                            flat.begin() + c * nm, flat.begin() + (c + 1) * nm);
    });
    b.states_.reserve(flat.size());
    b.totals_.reserve(ns);
    for (std::size_t i : order) {
        b.states_.insert(b.states_.end(), flat.begin() + i * nm, flat.begin() + (i + 1) * nm);
        b.totals_.push_back(total_of(i));
    }
    if (nm == 0) {  // degenerate empty mode set: single vacuum state
        b.totals_.push_back(0);
    }
    b.build_index();
    return b;
}

OccupationBasis OccupationBasis::nbody(const ModeSet& m, int n_particles, bool momentum_restrict,
                                       std::size_t dim_limit) {
    if (n_particles < 0) throw_config("particle number must be nonnegative", "N");
    if (n_particles > std::numeric_limits<occ_t>::max())
        throw_config("particle number exceeds the occupation storage width", "N");
    OccupationBasis b;
    b.mode_list_ = m.modes();
    b.mode_list_.push_back(Momentum::of(m.dim(), 0));
    std::sort(b.mode_list_.begin(), b.mode_list_.end());
    b.n_particles_ = n_particles;
    b.momentum_restrict_ = momentum_restrict;

    Enumerator e(b.mode_list_);
    e.budget = n_particles;
    e.exact = true;
    e.momentum_restrict = momentum_restrict;
    e.dim_limit = dim_limit;
    e.run(nullptr);
    std::vector<occ_t> flat;
    flat.reserve(e.count * b.mode_list_.size());
    e.run(&flat);
    b.states_ = std::move(flat);

    const std::size_t nm = b.mode_list_.size();
    const std::size_t ns = b.states_.size() / nm;
    b.totals_.assign(ns, n_particles);
    for (std::size_t i = 0; i < nm; ++i)
        if (b.mode_list_[i].is_zero()) b.zero_mode_ = static_cast<int>(i);
    b.build_index();
    return b;
}

void OccupationBasis::build_index() {
    const std::size_t nm = mode_list_.size();
    nstates_ = nm ? states_.size() / nm : totals_.size();
    index_.reserve(nstates_);
    for (std::size_t i = 0; i < nstates_; ++i) {
        std::vector<occ_t> key(states_.begin() + i * nm, states_.begin() + (i + 1) * nm);
        index_.emplace(std::move(key), i);
    }
}

std::ptrdiff_t OccupationBasis::find(std::span<const occ_t> occ) const {
    std::vector<occ_t> key(occ.begin(), occ.end());
    auto it = index_.find(key);
    return it == index_.end() ? -1 : static_cast<std::ptrdiff_t>(it->second);
}

}  // namespace bgas
