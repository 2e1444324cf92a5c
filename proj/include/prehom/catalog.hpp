#pragma once

#include <algorithm>
#include <atomic>
#include <cctype>
#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"
#include "prehom/instantiate.hpp"
#include "prehom/lsa.hpp"
#include "prehom/prehom.hpp"
#include "prehom/table1.hpp"

namespace prehom {

/// What an entry asserts about itself. Absent fields are simply not claimed;
/// the verifier only tests what is present.
struct ClaimSet {
    std::optional<bool> is_pv;
    std::optional<bool> is_cuspidal;
    std::optional<std::size_t> isotropy_dim;
    std::optional<std::string> generic_isotropy_name;
    std::optional<bool> lsa_valid;
    std::optional<bool> unique_right_identity;
};

/// One row of the shipped classification data. Triplet entries carry a
/// descriptor plus an optional concrete center action and an optional
/// structured generic point; table entries name an LSA instead.
struct CatalogEntry {
    std::string id;
    std::string family;
    std::size_t item = 0;
    std::string kind;  // "triplet" or "lsa"

    std::optional<TripletDescriptor> descriptor;
    std::optional<CenterSpec> center;
    std::string center_choice;  // "printed" or "default" when a center is supplied
    std::optional<Vec> point;

    std::string lsa_id;  // "A1", "A2" or "A3"
    std::optional<Rational> lambda;

    ClaimSet claims;
    bool instantiable = false;
    bool provisional = false;
    nlohmann::ordered_json metadata;
};

/// Dimension of a named isotropy group. Accepts "1", classical names with a
/// rank, the small exceptional names, and products joined by " x ".
inline Int isotropy_name_dim(const std::string& name) {
    auto one = [](const std::string& part) -> Int {
        if (part == "1") return 0;
        if (part == "G2") return 14;
        if (part == "F4") return 52;
        if (part == "E6") return 78;
        if (part == "E7") return 133;
        auto open = part.find('(');
        auto close = part.find(')');
        if (open == std::string::npos || close == std::string::npos || close < open)
            throw std::invalid_argument("isotropy name not understood: " + part);
        std::string head = part.substr(0, open);
        Int n(0);
        for (std::size_t i = open + 1; i < close; ++i) {
            if (!std::isdigit(static_cast<unsigned char>(part[i])))
                throw std::invalid_argument("isotropy name not understood: " + part);
            n = n * 10 + (part[i] - '0');
        }
        if (head == "GL") return n * n;
        if (head == "SL") return n * n - 1;
        if (head == "SO" || head == "Spin") return n * (n - 1) / 2;
        if (head == "Sp") return n * (2 * n + 1);
        throw std::invalid_argument("isotropy name not understood: " + part);
    };
    Int total(0);
    std::size_t pos = 0;
    while (pos < name.size()) {
        auto next = name.find(" x ", pos);
        std::string part = name.substr(pos, next == std::string::npos ? next : next - pos);
        total += one(part);
        if (next == std::string::npos) break;
        pos = next + 3;
    }
    return total;
}

namespace detail {

inline Rational json_rat(const nlohmann::json& j) {
    if (j.is_number_integer()) return Rational(j.get<long long>());
    return rat_from_string(j.get<std::string>());
}

inline Vec json_vec(const nlohmann::json& j) {
    Vec v;
    for (const auto& x : j) v.push_back(json_rat(x));
    return v;
}

inline CenterSpec parse_center(const nlohmann::json& j, const TripletDescriptor& t,
                               const std::string& id) {
    CenterSpec spec;
    if (j.is_string()) {
        if (j.get<std::string>() != "diag")
            throw std::runtime_error("catalog entry " + id + ": unknown center shorthand");
        if (t.center_count != t.summands.size())
            throw std::runtime_error("catalog entry " + id +
                                     ": diag center needs one generator per summand");
        for (std::size_t g = 0; g < t.center_count; ++g) {
            CenterSpec::Generator gen;
            gen.scalars.assign(t.summands.size(), Rational(0));
            gen.scalars[g] = 1;
            spec.generators.push_back(std::move(gen));
        }
        return spec;
    }
    for (const auto& gj : j) {
        CenterSpec::Generator gen;
        if (gj.contains("scalars"))
            for (const auto& s : gj.at("scalars")) gen.scalars.push_back(json_rat(s));
        if (gj.contains("blocks"))
            for (const auto& bj : gj.at("blocks")) {
                CenterSpec::Block b;
                for (const auto& s : bj.at("summands")) b.summands.push_back(s.get<std::size_t>());
                const auto& rows = bj.at("matrix");
                std::size_t nr = rows.size();
                std::size_t nc = nr == 0 ? 0 : rows.at(0).size();
                b.matrix = Matrix(nr, nc);
                for (std::size_t r = 0; r < nr; ++r)
                    for (std::size_t c = 0; c < nc; ++c) b.matrix(r, c) = json_rat(rows.at(r).at(c));
                gen.blocks.push_back(std::move(b));
            }
        spec.generators.push_back(std::move(gen));
    }
    if (spec.generators.size() != t.center_count)
        throw std::runtime_error("catalog entry " + id + ": center lists " +
                                 std::to_string(spec.generators.size()) +
                                 " generators for GL(1)^" + std::to_string(t.center_count));
    return spec;
}

}  // namespace detail

/// Parses the data file and cross-checks every transcribed number against the
/// symbolic dimension formulas. Any mismatch fails the load, naming the entry.
inline std::vector<CatalogEntry> load_catalog(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_catalog: cannot open " + path);
    nlohmann::json root = nlohmann::json::parse(in);
    std::vector<CatalogEntry> out;
    for (const auto& ej : root.at("entries")) {
        CatalogEntry e;
        e.id = ej.at("id").get<std::string>();
        auto fail = [&](const std::string& why) {
            throw std::runtime_error("catalog entry " + e.id + ": " + why);
        };
        e.family = ej.at("family").get<std::string>();
        e.item = ej.value("item", std::size_t(0));
        e.kind = ej.at("kind").get<std::string>();
        e.instantiable = ej.value("instantiable", false);
        e.provisional = ej.value("provisional", false);
        if (ej.contains("metadata")) e.metadata = ej.at("metadata");

        const auto& cj = ej.at("claims");
        if (cj.contains("is_pv")) e.claims.is_pv = cj.at("is_pv").get<bool>();
        if (cj.contains("is_cuspidal")) e.claims.is_cuspidal = cj.at("is_cuspidal").get<bool>();
        if (cj.contains("isotropy_dim"))
            e.claims.isotropy_dim = cj.at("isotropy_dim").get<std::size_t>();
        if (cj.contains("generic_isotropy_name"))
            e.claims.generic_isotropy_name = cj.at("generic_isotropy_name").get<std::string>();
        if (cj.contains("lsa_valid")) e.claims.lsa_valid = cj.at("lsa_valid").get<bool>();
        if (cj.contains("unique_right_identity"))
            e.claims.unique_right_identity = cj.at("unique_right_identity").get<bool>();

        if (e.kind == "lsa") {
            e.lsa_id = ej.at("lsa").get<std::string>();
            if (ej.contains("lambda")) e.lambda = detail::json_rat(ej.at("lambda"));
            if (e.lsa_id == "A3" && !e.lambda) fail("A3 needs a lambda value");
            out.push_back(std::move(e));
            continue;
        }
        if (e.kind != "triplet") fail("unknown kind " + e.kind);

        TripletDescriptor t = parse_descriptor(ej.at("descriptor").get<std::string>());
        Int space = space_dim_of(t);
        Int algebra = algebra_dim_of(t);
        if (ej.contains("space_dim") && Int(ej.at("space_dim").get<long long>()) != space)
            fail("transcribed space dimension " + ej.at("space_dim").dump() +
                 " disagrees with the formula value " + space.str());
        if (ej.contains("algebra_dim") && Int(ej.at("algebra_dim").get<long long>()) != algebra)
            fail("transcribed algebra dimension " + ej.at("algebra_dim").dump() +
                 " disagrees with the formula value " + algebra.str());
        if (e.claims.is_cuspidal && *e.claims.is_cuspidal && space != algebra)
            fail("claimed cuspidal but dim G = " + algebra.str() + " while dim V = " +
                 space.str());
        if (e.claims.is_pv && *e.claims.is_pv && e.claims.isotropy_dim &&
            algebra - space != Int(static_cast<long long>(*e.claims.isotropy_dim)))
            fail("claimed isotropy dimension is not dim G - dim V");
        if (e.claims.generic_isotropy_name) {
            Int named = isotropy_name_dim(*e.claims.generic_isotropy_name);
            if (!e.claims.isotropy_dim) fail("isotropy name claimed without a dimension");
            if (named != Int(static_cast<long long>(*e.claims.isotropy_dim)))
                fail("isotropy name " + *e.claims.generic_isotropy_name + " has dimension " +
                     named.str() + ", not " + std::to_string(*e.claims.isotropy_dim));
        }
        if (ej.contains("center")) {
            e.center = detail::parse_center(ej.at("center"), t, e.id);
            e.center_choice = ej.value("center_choice", std::string("default"));
        } else if (t.center_count > 0 && e.instantiable) {
            fail("instantiable entry with GL(1)^k center needs a center action");
        }
        if (ej.contains("point")) {
            Vec p = detail::json_vec(ej.at("point"));
            if (Int(static_cast<long long>(p.size())) != space)
                fail("printed point has length " + std::to_string(p.size()) +
                     ", expected " + space.str());
            e.point = std::move(p);
        }
        e.descriptor = std::move(t);
        out.push_back(std::move(e));
    }
    return out;
}

struct CheckResult {
    std::string name;
    std::string status;  // "pass", "fail" or "skip"
    std::string detail;
};

struct VerificationReport {
    std::string id;
    std::string status = "skip";  // overall: pass when every check passes
    std::string reason;           // populated for skips
    std::string center_choice;
    std::vector<CheckResult> checks;
    std::optional<IsotropyCertificate> certificate;
    std::optional<Vec> right_identity;

    bool failed() const {
        return std::any_of(checks.begin(), checks.end(),
                           [](const CheckResult& c) { return c.status == "fail"; });
    }
};

struct VerifyOptions {
    std::uint64_t seed = 1;
    std::size_t max_trials = 64;
    std::size_t max_dim = 64;  // instantiation budget on dim V
    std::string data_dir;      // where table1.json lives; needed for lsa entries
};

namespace detail {

inline void finish_status(VerificationReport& rep) {
    rep.status = rep.failed() ? "fail" : "pass";
}

inline void check_eq(VerificationReport& rep, const std::string& name, bool ok,
                     const std::string& detail) {
    rep.checks.push_back({name, ok ? "pass" : "fail", detail});
}

inline void verify_lsa_entry(const CatalogEntry& e, const VerifyOptions& opt,
                             VerificationReport& rep) {
    Table1 table = Table1::load(opt.data_dir + "/table1.json");
    Lsa a = e.lsa_id == "A1"   ? table.a1()
            : e.lsa_id == "A2" ? table.a2()
                               : table.a3(*e.lambda);
    LsaValidation val = validate_lsa(a);
    if (e.claims.lsa_valid)
        check_eq(rep, "lsa-valid", val.ok == *e.claims.lsa_valid,
                 val.ok ? "left-symmetry holds" : "left-symmetry fails");
    RightIdentitySet ids = right_identities(a);
    check_eq(rep, "right-identity-exists", ids.exists,
             ids.exists ? "affine solution found" : "system inconsistent");
    if (e.claims.unique_right_identity)
        check_eq(rep, "right-identity-unique", ids.unique() == *e.claims.unique_right_identity,
                 "kernel dimension " + std::to_string(ids.kernel.size()));
    if (ids.exists) rep.right_identity = ids.particular;
    finish_status(rep);
}

inline void verify_triplet_entry(const CatalogEntry& e, const VerifyOptions& opt,
                                 VerificationReport& rep) {
    const TripletDescriptor& t = *e.descriptor;
    if (!e.instantiable) {
        rep.status = "skip";
        rep.reason = "marked not instantiable";
        for (const auto& f : t.factors) {
            bool ok = f.family == FactorFamily::GL || f.family == FactorFamily::SL ||
                      f.family == FactorFamily::SO || f.family == FactorFamily::Sp;
            if (!ok) {
                rep.reason = std::string("factor ") + family_text(f.family) +
                             " is not instantiable";
                break;
            }
        }
        return;
    }
    Int space = space_dim_of(t);
    if (space > Int(static_cast<long long>(opt.max_dim))) {
        rep.status = "skip";
        rep.reason = "dim V = " + space.str() + " exceeds the budget " +
                     std::to_string(opt.max_dim);
        return;
    }
    InstantiationOutcome built = try_instantiate(t, e.center ? &*e.center : nullptr);
    if (!built) {
        rep.checks.push_back({"instantiate", "fail", built.reason});
        rep.status = "fail";
        return;
    }
    const Representation& r = *built.rep;
    rep.center_choice = e.center_choice;

    SearchPolicy policy;
    policy.seed = opt.seed;
    policy.max_trials = opt.max_trials;
    if (e.point) {
        IsotropyCertificate at = isotropy_at(r, *e.point);
        if (e.claims.isotropy_dim)
            check_eq(rep, "printed-point",
                     at.isotropy_dim == *e.claims.isotropy_dim,
                     "isotropy dimension " + std::to_string(at.isotropy_dim) + " at the stored point");
        policy.preferred.push_back(*e.point);
    }

    PvVerdict verdict = decide_pv(r, policy);
    if (e.claims.is_pv) {
        bool got_pv = verdict.status == PvStatus::IsPV;
        check_eq(rep, "pv-verdict", got_pv == *e.claims.is_pv,
                 std::string(status_name(verdict.status)) +
                     (verdict.reason.empty() ? "" : ": " + verdict.reason));
    }
    if (verdict.certificate) {
        rep.certificate = verdict.certificate;
        if (e.claims.isotropy_dim)
            check_eq(rep, "isotropy-dim",
                     verdict.certificate->isotropy_dim == *e.claims.isotropy_dim,
                     "found " + std::to_string(verdict.certificate->isotropy_dim) +
                         ", claimed " + std::to_string(*e.claims.isotropy_dim));
        if (e.claims.generic_isotropy_name)
            check_eq(rep, "isotropy-name",
                     Int(static_cast<long long>(verdict.certificate->isotropy_dim)) ==
                         isotropy_name_dim(*e.claims.generic_isotropy_name),
                     *e.claims.generic_isotropy_name);
    } else if (e.claims.isotropy_dim) {
        check_eq(rep, "isotropy-dim", false, "no certificate produced");
    }
    if (e.claims.is_cuspidal)
        check_eq(rep, "cuspidal", verdict.cuspidal == *e.claims.is_cuspidal,
                 verdict.cuspidal ? "dim G = dim V with zero isotropy" : "not cuspidal");
    finish_status(rep);
}

}  // namespace detail

/// Replays an entry's claims against a fresh computation. Non-instantiable
/// and over-budget triplets come back as skips with the reason attached.
inline VerificationReport verify_entry(const CatalogEntry& e, const VerifyOptions& opt = {}) {
    VerificationReport rep;
    rep.id = e.id;
    if (e.kind == "lsa")
        detail::verify_lsa_entry(e, opt, rep);
    else
        detail::verify_triplet_entry(e, opt, rep);
    return rep;
}

struct VerifySummary {
    std::vector<VerificationReport> reports;  // catalog order
    std::size_t passed = 0;
    std::size_t failed = 0;
    std::size_t skipped = 0;

    bool ok() const { return failed == 0; }
};

/// Case-insensitive substring match against id, family and descriptor text.
inline bool entry_matches(const CatalogEntry& e, const std::string& filter) {
    if (filter.empty()) return true;
    auto lower = [](std::string s) {
        std::transform(s.begin(), s.end(), s.begin(),
                       [](unsigned char c) { return std::tolower(c); });
        return s;
    };
    std::string f = lower(filter);
    if (lower(e.id).find(f) != std::string::npos) return true;
    if (lower(e.family).find(f) != std::string::npos) return true;
    if (e.descriptor && lower(render(*e.descriptor)).find(f) != std::string::npos) return true;
    return false;
}

/// Verifies every matching entry. Work fans out over `jobs` threads; reports
/// come back in catalog order regardless of completion order.
inline VerifySummary verify_all(const std::vector<CatalogEntry>& entries,
                                const std::string& filter = "",
                                const VerifyOptions& opt = {}, std::size_t jobs = 1) {
    std::vector<const CatalogEntry*> selected;
    for (const auto& e : entries)
        if (entry_matches(e, filter)) selected.push_back(&e);

    VerifySummary summary;
    summary.reports.resize(selected.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        while (true) {
            std::size_t i = next.fetch_add(1);
            if (i >= selected.size()) break;
            summary.reports[i] = verify_entry(*selected[i], opt);
        }
    };
    if (jobs <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t j = 0; j < jobs; ++j) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    for (const auto& rep : summary.reports) {
        if (rep.status == "pass") ++summary.passed;
        else if (rep.status == "fail") ++summary.failed;
        else ++summary.skipped;
    }
    return summary;
}

inline nlohmann::ordered_json to_json(const VerificationReport& rep) {
    nlohmann::ordered_json j;
    j["id"] = rep.id;
    j["status"] = rep.status;
    if (!rep.reason.empty()) j["reason"] = rep.reason;
    if (!rep.center_choice.empty()) j["center_choice"] = rep.center_choice;
    auto checks = nlohmann::ordered_json::array();
    for (const auto& c : rep.checks) {
        nlohmann::ordered_json cj;
        cj["name"] = c.name;
        cj["status"] = c.status;
        cj["detail"] = c.detail;
        checks.push_back(std::move(cj));
    }
    if (!checks.empty()) j["checks"] = std::move(checks);
    if (rep.certificate) j["certificate"] = to_json(*rep.certificate);
    if (rep.right_identity) {
        auto a = nlohmann::ordered_json::array();
        for (const auto& x : *rep.right_identity) a.push_back(rat_to_string(x));
        j["right_identity"] = std::move(a);
    }
    return j;
}

inline nlohmann::ordered_json to_json(const VerifySummary& s) {
    nlohmann::ordered_json j;
    j["total"] = s.reports.size();
    j["passed"] = s.passed;
    j["failed"] = s.failed;
    j["skipped"] = s.skipped;
    auto reports = nlohmann::ordered_json::array();
    for (const auto& rep : s.reports) reports.push_back(to_json(rep));
    j["reports"] = std::move(reports);
    return j;
}

}  // namespace prehom
