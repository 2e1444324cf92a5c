#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <prehom/castling.hpp>
#include <prehom/catalog.hpp>
#include <prehom/instantiate.hpp>
#include <prehom/lsa.hpp>
#include <prehom/prehom.hpp>
#include <prehom/rational.hpp>
#include <prehom/symplectic.hpp>
#include <prehom/table1.hpp>

namespace {

using nlohmann::ordered_json;
using namespace prehom;

struct GlobalOpts {
    std::uint64_t seed = 1;
    std::size_t max_trials = 64;
    std::size_t max_dim = 64;
    bool max_dim_set = false;
    bool json = false;
    std::string out;
    std::string data_dir = PREHOM_DATA_DIR;
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

SearchPolicy policy_of(const GlobalOpts& g) {
    SearchPolicy p;
    p.seed = g.seed;
    p.max_trials = g.max_trials;
    return p;
}

std::string join_words(const std::vector<std::string>& words) {
    std::string s;
    for (const auto& w : words) {
        if (!s.empty()) s += ' ';
        s += w;
    }
    return s;
}

std::string vec_text(const Vec& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ", ";
        s += rat_to_string(v[i]);
    }
    return s + "]";
}

ordered_json vec_json(const Vec& v) {
    ordered_json a = ordered_json::array();
    for (const auto& c : v) a.push_back(rat_to_string(c));
    return a;
}

int emit(const GlobalOpts& g, const std::string& text) {
    if (g.out.empty()) {
        std::cout << text;
        return 0;
    }
    std::ofstream f(g.out, std::ios::binary);
    if (!f) throw UsageError("cannot open output file " + g.out);
    f << text;
    return 0;
}

CenterSpec diag_center(const TripletDescriptor& t) {
    if (t.center_count != t.summands.size())
        throw UsageError("the diag center takes one GL(1) generator per summand, got " +
                         std::to_string(t.center_count) + " generators for " +
                         std::to_string(t.summands.size()) + " summands");
    CenterSpec spec;
    for (std::size_t g = 0; g < t.center_count; ++g) {
        CenterSpec::Generator gen;
        gen.scalars.assign(t.summands.size(), Rational(0));
        gen.scalars[g] = 1;
        spec.generators.push_back(std::move(gen));
    }
    return spec;
}

Representation instantiate_or_fail(const TripletDescriptor& t, const std::string& center_mode) {
    std::optional<CenterSpec> cs;
    if (t.center_count > 0) {
        if (center_mode == "diag") {
            cs = diag_center(t);
        } else {
            nlohmann::json cj;
            try {
                cj = nlohmann::json::parse(center_mode);
            } catch (const nlohmann::json::parse_error&) {
                throw UsageError("--center takes 'diag' or a JSON generator array");
            }
            try {
                cs = detail::parse_center(cj, t, "cli");
            } catch (const std::runtime_error& e) {
                std::string msg = e.what();
                auto pos = msg.find(": ");
                if (pos != std::string::npos) msg = msg.substr(pos + 2);
                throw UsageError("--center: " + msg);
            }
        }
    }
    InstantiationOutcome out = try_instantiate(t, cs ? &*cs : nullptr);
    if (!out) throw UsageError("cannot instantiate " + render(t) + ": " + out.reason);
    return std::move(*out.rep);
}

int run_check_pv(const GlobalOpts& g, const std::string& text, const std::string& center_mode) {
    TripletDescriptor t = parse_descriptor(text);
    Representation rep = instantiate_or_fail(t, center_mode);
    PvVerdict v = decide_pv(rep, policy_of(g));

    std::ostringstream os;
    if (g.json) {
        ordered_json j;
        j["descriptor"] = render(t);
        j["space_dim"] = rep.space_dim;
        j["algebra_dim"] = rep.algebra->dim();
        j["verdict"] = to_json(v);
        os << j.dump(2) << "\n";
    } else {
        os << "descriptor: " << render(t) << "\n";
        os << "dim g: " << rep.algebra->dim() << "\n";
        os << "dim V: " << rep.space_dim << "\n";
        os << "status: " << status_name(v.status) << "\n";
        os << "cuspidal: " << (v.cuspidal ? "yes" : "no") << "\n";
        if (v.certificate) {
            os << "isotropy dim: " << v.certificate->isotropy_dim << "\n";
            os << "orbit dim: " << v.certificate->orbit_dim << "\n";
            os << "point: " << vec_text(v.certificate->point) << "\n";
        }
        if (!v.reason.empty()) os << "reason: " << v.reason << "\n";
        if (v.status != PvStatus::IsPV) os << "trials: " << v.trials << "\n";
    }
    emit(g, os.str());
    return v.status == PvStatus::IsPV ? 0 : 1;
}

struct LsaSource {
    Lsa lsa;
    std::string label;
    std::optional<Vec> point;
};

LsaSource lsa_from_argument(const GlobalOpts& g, const std::string& text,
                            const std::string& lambda_opt, const std::string& center_mode) {
    if (text.rfind("table1:", 0) == 0) {
        std::istringstream tok(text);
        std::string name, extra, lambda = lambda_opt;
        tok >> name;
        while (tok >> extra)
            if (extra.rfind("lambda=", 0) == 0) lambda = extra.substr(7);
        Table1 table = Table1::load(g.data_dir + "/table1.json");
        if (name == "table1:A1") return {table.a1(), name, std::nullopt};
        if (name == "table1:A2") return {table.a2(), name, std::nullopt};
        if (name == "table1:A3") {
            if (lambda.empty())
                throw UsageError("table1:A3 needs a parameter, pass --lambda or a lambda= token");
            return {table.a3(rat_from_string(lambda)), name + " lambda=" + lambda, std::nullopt};
        }
        throw UsageError("unknown table1 entry '" + name + "' (A1, A2, A3)");
    }

    TripletDescriptor t = parse_descriptor(text);
    Representation rep = instantiate_or_fail(t, center_mode);
    if (rep.space_dim != rep.algebra->dim())
        throw UsageError("not cuspidal: dim g = " + std::to_string(rep.algebra->dim()) +
                         " but dim V = " + std::to_string(rep.space_dim));
    auto [ok, cert] = cuspidal_check(rep, policy_of(g));
    if (!ok)
        throw UsageError("not cuspidal: no open orbit found for " + render(t));
    CuspidalLsa built = lsa_from_cuspidal(rep, cert->point);
    return {std::move(built.lsa), render(t), cert->point};
}

int run_lsa(const GlobalOpts& g, const std::string& text, const std::string& lambda_opt,
            const std::string& center_mode) {
    LsaSource src = lsa_from_argument(g, text, lambda_opt, center_mode);
    const Lsa& a = src.lsa;
    LsaValidation val = validate_lsa(a);
    RightIdentitySet ids = right_identities(a);
    FrobeniusReport frob = frobenius_iff_right_identity(a);

    std::ostringstream os;
    if (g.json) {
        ordered_json j;
        j["source"] = src.label;
        if (src.point) j["point"] = vec_json(*src.point);
        j["lsa"] = lsa_to_json(a);
        j["left_symmetric"] = val.ok;
        ordered_json rj;
        rj["exists"] = ids.exists;
        rj["unique"] = ids.unique();
        if (ids.exists) rj["particular"] = vec_json(ids.particular);
        j["right_identity"] = std::move(rj);
        ordered_json fj;
        fj["frobenius"] = frob.frobenius;
        fj["agrees_with_right_identity"] = frob.agree;
        if (frob.witness) fj["witness"] = vec_json(*frob.witness);
        j["double"] = std::move(fj);
        os << j.dump(2) << "\n";
    } else {
        os << "source: " << src.label << "\n";
        os << "dim: " << a.dim() << "\n";
        os << "left-symmetric: " << (val.ok ? "yes" : "no") << "\n";
        if (!val.ok) os << "violations: " << val.violations.size() << "\n";
        if (src.point) os << "point: " << vec_text(*src.point) << "\n";
        os << "right identity: " << (ids.exists ? vec_text(ids.particular) : "none") << "\n";
        os << "unique right identity: " << (ids.unique() ? "yes" : "no") << "\n";
        os << "double is frobenius: " << (frob.frobenius ? "yes" : "no") << "\n";
        if (frob.witness) os << "frobenius witness: " << vec_text(*frob.witness) << "\n";
        os << "products:\n";
        for (std::size_t i = 0; i < a.dim(); ++i)
            for (std::size_t jj = 0; jj < a.dim(); ++jj) {
                std::string line;
                for (std::size_t k = 0; k < a.dim(); ++k) {
                    if (is_zero(a.m(i, jj, k))) continue;
                    if (!line.empty()) line += " + ";
                    Rational c = a.m(i, jj, k);
                    line += (c == 1 ? "" : "(" + rat_to_string(c) + ") ") +
                            std::string("e") + std::to_string(k);
                }
                if (!line.empty())
                    os << "  e" << i << " e" << jj << " = " << line << "\n";
            }
    }
    emit(g, os.str());
    return val.ok ? 0 : 1;
}

int run_castle(const GlobalOpts& g, const std::string& text, std::size_t summand,
               std::size_t factor) {
    TripletDescriptor t = parse_descriptor(text);
    CastlingMove mv{summand, factor};
    TripletDescriptor next;
    try {
        next = castle(t, mv);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }

    std::ostringstream os;
    if (g.json) {
        ordered_json j;
        j["from"] = render(t);
        j["move"] = {{"summand", summand}, {"factor", factor}};
        j["to"] = render(next);
        j["space_dim_from"] = space_dim_of(t).convert_to<std::int64_t>();
        j["space_dim_to"] = space_dim_of(next).convert_to<std::int64_t>();
        os << j.dump(2) << "\n";
    } else {
        os << "from: " << render(t) << "\n";
        os << "move: summand " << summand << ", factor " << factor << "\n";
        os << "to: " << render(next) << "\n";
        os << "dim V: " << space_dim_of(t) << " -> " << space_dim_of(next) << "\n";
    }
    emit(g, os.str());
    return 0;
}

int run_reduce(const GlobalOpts& g, const std::string& text) {
    TripletDescriptor t = parse_descriptor(text);
    ReduceBudget budget;
    if (g.max_dim_set) budget.max_total_dim = Int(static_cast<unsigned long long>(g.max_dim));
    ReduceResult r = reduce(t, budget);

    std::ostringstream os;
    if (g.json) {
        ordered_json j;
        j["start"] = render(t);
        j["reduced"] = render(r.descriptor);
        j["space_dim_start"] = space_dim_of(t).convert_to<std::int64_t>();
        j["space_dim_reduced"] = space_dim_of(r.descriptor).convert_to<std::int64_t>();
        ordered_json path = ordered_json::array();
        for (const auto& mv : r.path)
            path.push_back({{"summand", mv.summand}, {"factor", mv.factor}});
        j["path"] = std::move(path);
        j["complete"] = r.complete;
        os << j.dump(2) << "\n";
    } else {
        os << "start: " << render(t) << " (dim V " << space_dim_of(t) << ")\n";
        os << "reduced: " << render(r.descriptor) << " (dim V " << space_dim_of(r.descriptor)
           << ")\n";
        os << "path:";
        if (r.path.empty()) os << " (none)";
        for (const auto& mv : r.path)
            os << " [summand " << mv.summand << ", factor " << mv.factor << "]";
        os << "\n";
        os << "complete: " << (r.complete ? "yes" : "no") << "\n";
    }
    emit(g, os.str());
    return 0;
}

int run_verify_catalog(const GlobalOpts& g, const std::string& filter, std::size_t jobs) {
    std::vector<CatalogEntry> entries = load_catalog(g.data_dir + "/catalog.json");
    VerifyOptions opt;
    opt.seed = g.seed;
    opt.max_trials = g.max_trials;
    opt.max_dim = g.max_dim;
    opt.data_dir = g.data_dir;
    VerifySummary summary = verify_all(entries, filter, opt, jobs);

    std::ostringstream os;
    if (g.json) {
        os << to_json(summary).dump(2) << "\n";
    } else {
        for (const auto& rep : summary.reports) {
            os << rep.status;
            for (std::size_t pad = rep.status.size(); pad < 5; ++pad) os << ' ';
            os << ' ' << rep.id;
            if (rep.status == "skip") os << "  (" << rep.reason << ")";
            if (rep.status == "fail")
                for (const auto& c : rep.checks)
                    if (c.status == "fail") os << "  [" << c.name << ": " << c.detail << "]";
            os << "\n";
        }
        os << "passed " << summary.passed << "  failed " << summary.failed << "  skipped "
           << summary.skipped << "\n";
    }
    emit(g, os.str());
    return summary.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact prehomogeneity checker for triplet descriptors"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOpts g;
    app.add_option("--seed", g.seed, "seed for generic point search")->envname("PREHOM_SEED");
    app.add_option("--max-trials", g.max_trials, "point candidates per decision")
        ->envname("PREHOM_MAX_TRIALS");
    auto* max_dim_opt =
        app.add_option("--max-dim", g.max_dim, "dimension budget for instantiation and reduce")
            ->envname("PREHOM_MAX_DIM");
    app.add_flag("--json", g.json, "machine-readable output");
    app.add_option("--out", g.out, "write output to this file instead of stdout");
    app.add_option("--data", g.data_dir, "directory with catalog.json and table1.json")
        ->envname("PREHOM_DATA");

    std::vector<std::string> checkpv_words, lsa_words, castle_words, reduce_words;
    std::string center_mode = "diag";
    std::string lambda_opt;
    std::size_t mv_summand = 0, mv_factor = 0;
    std::string filter;
    std::size_t jobs = 1;

    CLI::App* c_check = app.add_subcommand("check-pv", "decide prehomogeneity of a descriptor");
    c_check->add_option("descriptor", checkpv_words, "triplet descriptor text")->required();
    c_check->add_option("--center", center_mode, "center action for GL(1)^k prefixes");

    CLI::App* c_lsa =
        app.add_subcommand("lsa", "build the left-symmetric algebra of a cuspidal triplet");
    c_lsa->add_option("descriptor", lsa_words, "descriptor text or table1:A1|A2|A3")->required();
    c_lsa->add_option("--lambda", lambda_opt, "parameter for table1:A3");
    c_lsa->add_option("--center", center_mode, "center action for GL(1)^k prefixes");

    CLI::App* c_castle = app.add_subcommand("castle", "apply one castling move");
    c_castle->add_option("descriptor", castle_words, "triplet descriptor text")->required();
    c_castle->add_option("--summand", mv_summand, "summand index of the move")->required();
    c_castle->add_option("--factor", mv_factor, "factor index of the move")->required();

    CLI::App* c_reduce = app.add_subcommand("reduce", "walk the castling class to minimum dim");
    c_reduce->add_option("descriptor", reduce_words, "triplet descriptor text")->required();

    CLI::App* c_verify = app.add_subcommand("verify-catalog", "verify the bundled catalog");
    c_verify->add_option("--filter", filter, "substring filter on id, family or descriptor");
    c_verify->add_option("--jobs", jobs, "worker threads");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    g.max_dim_set = max_dim_opt->count() > 0;

    try {
        if (app.got_subcommand(c_check))
            return run_check_pv(g, join_words(checkpv_words), center_mode);
        if (app.got_subcommand(c_lsa))
            return run_lsa(g, join_words(lsa_words), lambda_opt, center_mode);
        if (app.got_subcommand(c_castle))
            return run_castle(g, join_words(castle_words), mv_summand, mv_factor);
        if (app.got_subcommand(c_reduce)) return run_reduce(g, join_words(reduce_words));
        if (app.got_subcommand(c_verify)) return run_verify_catalog(g, filter, jobs);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
