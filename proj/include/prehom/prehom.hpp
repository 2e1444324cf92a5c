#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "prehom/repr.hpp"
#include "prehom/rng.hpp"

namespace prehom {

/// Exact witness for the orbit geometry at a point: the isotropy subalgebra
/// basis and both dimensions. Always satisfies
/// isotropy_dim + orbit_dim = dim(algebra).
struct IsotropyCertificate {
    Vec point;
    std::size_t isotropy_dim = 0;
    std::size_t orbit_dim = 0;
    std::vector<Vec> isotropy_basis;
};

enum class PvStatus {
    IsPV,           // open orbit exhibited, exact certificate attached
    NotPV,          // ruled out by dimension count, also exact
    ProbablyNotPV,  // sampling exhausted without an open orbit; heuristic only
};

struct PvVerdict {
    PvStatus status = PvStatus::ProbablyNotPV;
    bool cuspidal = false;
    std::optional<IsotropyCertificate> certificate;
    std::size_t trials = 0;
    std::string reason;
};

struct SearchPolicy {
    std::uint64_t seed = 1;
    std::size_t max_trials = 64;
    std::vector<Vec> preferred;  // structured candidate points tried first
};

/// Columns of the d x n matrix are d(rho)(e_i) v; its rank is the orbit
/// dimension and its kernel, read in algebra coordinates, is the isotropy
/// subalgebra.
inline IsotropyCertificate isotropy_at(const Representation& r, const Vec& v) {
    if (v.size() != r.space_dim)
        throw std::invalid_argument("isotropy_at: point has wrong length");
    std::size_t n = r.algebra->dim();
    std::vector<Vec> cols;
    cols.reserve(n);
    for (std::size_t i = 0; i < n; ++i) cols.push_back(r.action[i] * v);
    Matrix A = from_columns(cols, r.space_dim);
    IsotropyCertificate cert;
    cert.point = v;
    cert.isotropy_basis = nullspace(A);
    cert.isotropy_dim = cert.isotropy_basis.size();
    cert.orbit_dim = n - cert.isotropy_dim;
    return cert;
}

/// Re-runs the rank computation at the stored point and checks every stored
/// basis element still kills it.
inline bool verify_certificate(const Representation& r, const IsotropyCertificate& cert) {
    IsotropyCertificate again = isotropy_at(r, cert.point);
    if (again.isotropy_dim != cert.isotropy_dim || again.orbit_dim != cert.orbit_dim)
        return false;
    for (const auto& x : cert.isotropy_basis)
        if (!is_zero_vec(r.act_elem(x) * cert.point)) return false;
    return true;
}

/// Seeded search for a point of maximal orbit dimension. Candidate entries are
/// integers from [-3, 3], the range doubling every 8 failed trials. Points
/// supplied in policy.preferred are tried first and do not count as trials.
inline std::optional<std::pair<Vec, IsotropyCertificate>> find_generic_point(
    const Representation& r, const SearchPolicy& policy = {}) {
    std::size_t target = std::min(r.algebra->dim(), r.space_dim);
    for (const auto& v : policy.preferred) {
        auto cert = isotropy_at(r, v);
        if (cert.orbit_dim == target) return std::make_pair(v, cert);
    }
    Rng rng(policy.seed);
    long range = 3;
    for (std::size_t trial = 0; trial < policy.max_trials; ++trial) {
        if (trial > 0 && trial % 8 == 0) range *= 2;
        Vec v(r.space_dim);
        for (auto& x : v) x = Rational(rng.draw(-range, range));
        auto cert = isotropy_at(r, v);
        if (cert.orbit_dim == target) return std::make_pair(v, cert);
    }
    return std::nullopt;
}

inline PvVerdict decide_pv(const Representation& r, const SearchPolicy& policy = {}) {
    PvVerdict verdict;
    if (r.space_dim > r.algebra->dim()) {
        verdict.status = PvStatus::NotPV;
        verdict.reason = "dim V = " + std::to_string(r.space_dim) + " exceeds dim g = " +
                         std::to_string(r.algebra->dim());
        return verdict;
    }
    auto found = find_generic_point(r, policy);
    if (found && found->second.orbit_dim == r.space_dim) {
        verdict.status = PvStatus::IsPV;
        verdict.certificate = found->second;
        verdict.cuspidal = r.space_dim == r.algebra->dim();
    } else {
        verdict.status = PvStatus::ProbablyNotPV;
        verdict.trials = policy.max_trials;
        verdict.reason = "no open orbit found in " + std::to_string(policy.max_trials) +
                         " trials";
    }
    return verdict;
}

/// Cuspidal means dim g = dim V with an open orbit, equivalently a zero
/// isotropy certificate.
inline std::pair<bool, std::optional<IsotropyCertificate>> cuspidal_check(
    const Representation& r, const SearchPolicy& policy = {}) {
    if (r.space_dim != r.algebra->dim()) return {false, std::nullopt};
    PvVerdict v = decide_pv(r, policy);
    if (v.status == PvStatus::IsPV) return {true, v.certificate};
    return {false, std::nullopt};
}

struct SplitReport {
    PvVerdict whole;            // verdict on r1 + r2
    PvVerdict first;            // verdict on r1 alone
    std::optional<PvVerdict> second_restricted;  // r2 over the isotropy of r1
    std::size_t restricted_isotropy_dim = 0;
    bool agree = false;
};

/// Compares the direct-sum verdict with the staged one: first summand over g,
/// then the second summand restricted to the isotropy subalgebra of a generic
/// point of the first.
inline SplitReport split_check(const Representation& r1, const Representation& r2,
                               const SearchPolicy& policy = {}) {
    SplitReport rep;
    rep.whole = decide_pv(direct_sum_rep(r1, r2), policy);
    rep.first = decide_pv(r1, policy);
    bool staged_pv = false;
    if (rep.first.status == PvStatus::IsPV) {
        const auto& iso = rep.first.certificate->isotropy_basis;
        rep.restricted_isotropy_dim = iso.size();
        if (iso.empty()) {
            // zero isotropy: the second summand must itself be zero-dimensional
            staged_pv = r2.space_dim == 0;
        } else {
            auto [h, restricted] = restrict_to_span(r2, iso, "iso");
            rep.second_restricted = decide_pv(restricted, policy);
            staged_pv = rep.second_restricted->status == PvStatus::IsPV;
        }
    }
    bool whole_pv = rep.whole.status == PvStatus::IsPV;
    rep.agree = whole_pv == staged_pv;
    return rep;
}

inline nlohmann::ordered_json to_json(const IsotropyCertificate& c) {
    nlohmann::ordered_json j;
    auto vec_json = [](const Vec& v) {
        auto a = nlohmann::ordered_json::array();
        for (const auto& x : v) a.push_back(rat_to_string(x));
        return a;
    };
    j["point"] = vec_json(c.point);
    j["isotropy_dim"] = c.isotropy_dim;
    j["orbit_dim"] = c.orbit_dim;
    auto basis = nlohmann::ordered_json::array();
    for (const auto& b : c.isotropy_basis) basis.push_back(vec_json(b));
    j["isotropy_basis"] = std::move(basis);
    return j;
}

inline IsotropyCertificate certificate_from_json(const nlohmann::json& j) {
    IsotropyCertificate c;
    for (const auto& s : j.at("point")) c.point.push_back(rat_from_string(s.get<std::string>()));
    c.isotropy_dim = j.at("isotropy_dim").get<std::size_t>();
    c.orbit_dim = j.at("orbit_dim").get<std::size_t>();
    for (const auto& row : j.at("isotropy_basis")) {
        Vec v;
        for (const auto& s : row) v.push_back(rat_from_string(s.get<std::string>()));
        c.isotropy_basis.push_back(std::move(v));
    }
    return c;
}

inline const char* status_name(PvStatus s) {
    switch (s) {
        case PvStatus::IsPV: return "IsPV";
        case PvStatus::NotPV: return "NotPV";
        case PvStatus::ProbablyNotPV: return "ProbablyNotPV";
    }
    return "?";
}

inline nlohmann::ordered_json to_json(const PvVerdict& v) {
    nlohmann::ordered_json j;
    j["status"] = status_name(v.status);
    j["cuspidal"] = v.cuspidal;
    if (v.certificate) j["certificate"] = to_json(*v.certificate);
    if (v.status != PvStatus::IsPV) {
        j["trials"] = v.trials;
        j["reason"] = v.reason;
    }
    return j;
}

}  // namespace prehom
