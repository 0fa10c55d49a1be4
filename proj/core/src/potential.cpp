#include "bgas/potential.hpp"

#include <json.hpp>

#include <sstream>

namespace bgas {

using nlohmann::json;

PotentialSpec PotentialSpec::gaussian(int dim, double g, double s, double lambda_scale) {
    if (dim < 1 || dim > 3) throw_config("dimension must be 1, 2 or 3", "dim");
    if (!(g > 0.0)) throw_config("gaussian strength g must be positive", "potential.g");
    if (!(s > 0.0)) throw_config("gaussian width s must be positive", "potential.s");
    if (!(lambda_scale > 0.0)) throw_config("lambda_scale must be positive", "potential.lambda_scale");
    PotentialSpec p;
    p.kind = Kind::gaussian;
    p.dim = dim;
    p.g = g;
    p.s = s;
    p.lambda_scale = lambda_scale;
    return p;
}

PotentialSpec PotentialSpec::tabulated(int dim, double v0,
                                       std::vector<std::pair<Momentum, double>> values,
                                       double lambda_scale) {
    if (dim < 1 || dim > 3) throw_config("dimension must be 1, 2 or 3", "dim");
    if (!(lambda_scale > 0.0)) throw_config("lambda_scale must be positive", "potential.lambda_scale");
    if (v0 < 0.0) throw_config("vhat(0) must be nonnegative (positive type)", "potential.v0");
    PotentialSpec p;
    p.kind = Kind::tabulated;
    p.dim = dim;
    p.v0 = v0;
    p.lambda_scale = lambda_scale;
    for (auto& [m, v] : values) {
        if (m.is_zero()) throw_config("tabulated entries must not include n = 0; use v0", "potential.entries");
        for (int c = dim; c < 3; ++c)
            if (m.n[c] != 0) throw_config("entry momentum exceeds dimension", "potential.entries");
        if (v < 0.0) throw_config("vhat must be nonnegative (positive type)", "potential.entries");
        if (v == 0.0) continue;  // zero entries are not support
        auto [it, inserted] = p.entries.emplace(m.n, v);
        if (!inserted && it->second != v)
            throw_config("conflicting duplicate entry at n = " + m.to_string(), "potential.entries");
    }
    // Evenness: store symmetric closure so vhat(-k) = vhat(k) is bit-exact.
    for (const auto& [n, v] : std::map(p.entries)) {
        std::array<std::int64_t, 3> neg{-n[0], -n[1], -n[2]};
        auto [it, inserted] = p.entries.emplace(neg, v);
        if (!inserted && it->second != v)
            throw_config("tabulated entries are not even: vhat(-k) != vhat(k)", "potential.entries");
    }
    bool all_zero = p.entries.empty() && v0 == 0.0;
    if (all_zero) throw_config("potential must not be identically zero", "potential");
    return p;
}

double vhat_gaussian_norm2(const PotentialSpec& spec, double norm2_int) {
    const double k2 = two_pi * two_pi * norm2_int;
    const double w = spec.s * spec.lambda_scale;
    return spec.g * std::exp(-k2 / (2.0 * w * w));
}

double vhat(const PotentialSpec& spec, const Momentum& k) {
    if (spec.kind == PotentialSpec::Kind::gaussian)
        return vhat_gaussian_norm2(spec, static_cast<double>(k.norm2_int()));
    if (k.is_zero()) return spec.v0;
    if (spec.lambda_scale == 1.0) {
        auto it = spec.entries.find(k.n);
        return it == spec.entries.end() ? 0.0 : it->second;
    }
    // Scaled tabulated: nonzero only when n / lambda_scale is again a grid
    // point. Integer scales are decided exactly; fractional ones by a tight
    // rounding test.
    std::array<std::int64_t, 3> m{};
    const double L = spec.lambda_scale;
    for (int c = 0; c < 3; ++c) {
        const double u = static_cast<double>(k.n[c]) / L;
        const double r = std::nearbyint(u);
        if (std::abs(u - r) > 1e-9) return 0.0;
        m[c] = static_cast<std::int64_t>(r);
    }
    if (m[0] == 0 && m[1] == 0 && m[2] == 0) return spec.v0;
    auto it = spec.entries.find(m);
    return it == spec.entries.end() ? 0.0 : it->second;
}

ModeSet support(const PotentialSpec& spec) {
    if (spec.kind == PotentialSpec::Kind::gaussian)
        throw_config("gaussian potential has unbounded support", "potential.kind");
    std::vector<Momentum> modes;
    for (const auto& [n, v] : spec.entries)
        if (v > 0.0) modes.push_back({n, spec.dim});
    return ModeSet::from_modes(spec.dim, std::move(modes));
}

ModeSet effective_domain(const PotentialSpec& spec) {
    const ModeSet supp = support(spec);
    return sum_closure(supp);
}

PotentialSpec PotentialSpec::from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw_config(std::string("potential JSON parse error: ") + e.what(), "potential");
    }
    if (!j.is_object()) throw_config("potential must be a JSON object", "potential");
    if (!j.contains("kind") || !j["kind"].is_string())
        throw_config("potential missing string field 'kind'", "potential.kind");
    const std::string kind = j["kind"];
    const int dim = j.value("dim", 1);
    const double lam = j.value("lambda_scale", 1.0);
    if (kind == "gaussian") {
        if (!j.contains("g") || !j["g"].is_number())
            throw_config("gaussian potential missing numeric field 'g'", "potential.g");
        if (!j.contains("s") || !j["s"].is_number())
            throw_config("gaussian potential missing numeric field 's'", "potential.s");
        return gaussian(dim, j["g"], j["s"], lam);
    }
    if (kind == "tabulated") {
        if (!j.contains("v0") || !j["v0"].is_number())
            throw_config("tabulated potential missing numeric field 'v0'", "potential.v0");
        std::vector<std::pair<Momentum, double>> values;
        if (j.contains("entries")) {
            if (!j["entries"].is_array()) throw_config("'entries' must be an array", "potential.entries");
            std::size_t idx = 0;
            for (const auto& e : j["entries"]) {
                const std::string at = "potential.entries[" + std::to_string(idx++) + "]";
                if (!e.is_object() || !e.contains("n") || !e.contains("v"))
                    throw_config("entry must be an object with fields 'n' and 'v'", at);
                if (!e["n"].is_array() || e["n"].size() != static_cast<std::size_t>(dim))
                    throw_config("entry field 'n' must be an integer vector of length dim", at + ".n");
                Momentum m;
                m.dim = dim;
                for (int c = 0; c < dim; ++c) {
                    if (!e["n"][c].is_number_integer())
                        throw_config("entry field 'n' must be integer", at + ".n");
                    m.n[c] = e["n"][c];
                }
                if (!e["v"].is_number()) throw_config("entry field 'v' must be numeric", at + ".v");
                values.emplace_back(m, e["v"].get<double>());
            }
        }
        return tabulated(dim, j["v0"], std::move(values), lam);
    }
    throw_config("unknown potential kind '" + kind + "'", "potential.kind");
}

std::string PotentialSpec::to_json_text() const {
    json j;
    j["dim"] = dim;
    j["lambda_scale"] = lambda_scale;
    if (kind == Kind::gaussian) {
        j["kind"] = "gaussian";
        j["g"] = g;
        j["s"] = s;
    } else {
        j["kind"] = "tabulated";
        j["v0"] = v0;
        json arr = json::array();
        for (const auto& [n, v] : entries) {
            json nv = json::array();
            for (int c = 0; c < dim; ++c) nv.push_back(n[c]);
            arr.push_back(json{{"n", nv}, {"v", v}});
        }
        j["entries"] = arr;
    }
    return j.dump();
}

std::string PotentialSpec::describe() const {
    std::ostringstream os;
    if (kind == Kind::gaussian) {
        os << "gaussian(g=" << g << ", s=" << s << ")";
    } else {
        os << "tabulated(v0=" << v0 << ", |supp|=" << entries.size() << ")";
    }
    if (lambda_scale != 1.0) os << " @ lambda_scale=" << lambda_scale;
    return os.str();
}

}  // namespace bgas
