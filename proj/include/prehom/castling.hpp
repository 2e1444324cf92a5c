#pragma once

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <deque>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "prehom/rational.hpp"

namespace prehom {

enum class FactorFamily { GL, SL, SO, Sp, Spin, G2, E6, E7 };

inline const char* family_text(FactorFamily f) {
    switch (f) {
        case FactorFamily::GL: return "GL";
        case FactorFamily::SL: return "SL";
        case FactorFamily::SO: return "SO";
        case FactorFamily::Sp: return "Sp";
        case FactorFamily::Spin: return "Spin";
        case FactorFamily::G2: return "G2";
        case FactorFamily::E6: return "E6";
        case FactorFamily::E7: return "E7";
    }
    return "?";
}

inline bool family_has_rank(FactorFamily f) {
    return f != FactorFamily::G2 && f != FactorFamily::E6 && f != FactorFamily::E7;
}

struct DescriptorFactor {
    FactorFamily family;
    std::size_t rank = 0;

    bool operator==(const DescriptorFactor& o) const {
        return family == o.family && rank == o.rank;
    }
};

/// One factor's label inside a summand, e.g. L2 or 2L1*.
struct RepLabel {
    std::string base = "1";
    bool dual = false;

    bool operator==(const RepLabel& o) const { return base == o.base && dual == o.dual; }
};

struct RepTerm {
    std::vector<RepLabel> labels;

    bool operator==(const RepTerm& o) const { return labels == o.labels; }
};

/// Symbolic triplet: optional GL(1)^k center, simple factors, and a sum of
/// representation terms carrying one label per factor.
struct TripletDescriptor {
    std::size_t center_count = 0;
    std::vector<DescriptorFactor> factors;
    std::vector<RepTerm> summands;

    bool operator==(const TripletDescriptor& o) const {
        return center_count == o.center_count && factors == o.factors && summands == o.summands;
    }
};

inline std::string label_text(const RepLabel& l) { return l.dual ? l.base + "*" : l.base; }

/// Dimension of one label on one factor. Throws when the label is not defined
/// for the family or the rank is too small.
inline Int label_dim(const DescriptorFactor& f, const RepLabel& l) {
    auto fail = [&](const std::string& why) {
        throw std::invalid_argument("label " + label_text(l) + " on " +
                                    std::string(family_text(f.family)) +
                                    (family_has_rank(f.family)
                                         ? "(" + std::to_string(f.rank) + ")"
                                         : "") +
                                    ": " + why);
    };
    if (l.base == "1") {
        if (l.dual) fail("the trivial label has no dual marker");
        return 1;
    }
    bool star_ok = f.family == FactorFamily::GL || f.family == FactorFamily::SL ||
                   f.family == FactorFamily::E6;
    if (l.dual && !star_ok) fail("dual marker is only tracked for GL, SL and E6");
    Int n(static_cast<unsigned>(f.rank));
    switch (f.family) {
        case FactorFamily::GL:
        case FactorFamily::SL:
            if (l.base == "L1") return n;
            if (l.base == "L2") {
                if (f.rank < 2) fail("rank too small");
                return n * (n - 1) / 2;
            }
            if (l.base == "L3") {
                if (f.rank < 3) fail("rank too small");
                return n * (n - 1) * (n - 2) / 6;
            }
            if (l.base == "2L1") return n * (n + 1) / 2;
            if (l.base == "3L1") return n * (n + 1) * (n + 2) / 6;
            fail("label not defined for this family");
            break;
        case FactorFamily::SO:
            if (l.base == "L1") return n;
            if (l.base == "L2") {
                if (f.rank < 2) fail("rank too small");
                return n * (n - 1) / 2;
            }
            fail("label not defined for this family");
            break;
        case FactorFamily::Sp:
            if (l.base == "L1") return 2 * n;
            if (l.base == "L2") {
                if (f.rank < 2) fail("rank too small");
                return n * (2 * n - 1) - 1;
            }
            if (l.base == "L3") {
                if (f.rank < 3) fail("rank too small");
                return 2 * n * (2 * n - 1) * (2 * n - 2) / 6 - 2 * n;
            }
            fail("label not defined for this family");
            break;
        case FactorFamily::Spin:
            if (l.base == "L1") return n;
            if (l.base == "spin") {
                if (f.rank < 3) fail("rank too small");
                Int d(1);
                for (std::size_t t = 0; t < (f.rank - 1) / 2; ++t) d *= 2;
                return d;
            }
            fail("label not defined for this family");
            break;
        case FactorFamily::G2:
            if (l.base == "L2") return 7;
            fail("label not defined for this family");
            break;
        case FactorFamily::E6:
            if (l.base == "L1") return 27;
            fail("label not defined for this family");
            break;
        case FactorFamily::E7:
            if (l.base == "L1") return 56;
            fail("label not defined for this family");
            break;
    }
    return 0;
}

inline Int factor_algebra_dim(const DescriptorFactor& f) {
    Int n(static_cast<unsigned>(f.rank));
    switch (f.family) {
        case FactorFamily::GL: return n * n;
        case FactorFamily::SL: return n * n - 1;
        case FactorFamily::SO:
        case FactorFamily::Spin: return n * (n - 1) / 2;
        case FactorFamily::Sp: return n * (2 * n + 1);
        case FactorFamily::G2: return 14;
        case FactorFamily::E6: return 78;
        case FactorFamily::E7: return 133;
    }
    return 0;
}

inline Int summand_dim(const TripletDescriptor& t, std::size_t s) {
    Int d(1);
    for (std::size_t f = 0; f < t.factors.size(); ++f)
        d *= label_dim(t.factors[f], t.summands[s].labels[f]);
    return d;
}

inline Int space_dim_of(const TripletDescriptor& t) {
    Int d(0);
    for (std::size_t s = 0; s < t.summands.size(); ++s) d += summand_dim(t, s);
    return d;
}

inline Int algebra_dim_of(const TripletDescriptor& t) {
    Int d(static_cast<unsigned>(t.center_count));
    for (const auto& f : t.factors) d += factor_algebra_dim(f);
    return d;
}

/// Validates shape constraints: label list lengths and per-factor label
/// legality (by evaluating every dimension).
inline void validate_descriptor(const TripletDescriptor& t) {
    if (t.summands.empty()) throw std::invalid_argument("descriptor has no summands");
    if (t.factors.empty() && t.center_count == 0)
        throw std::invalid_argument("descriptor has no factors");
    for (const auto& s : t.summands)
        if (s.labels.size() != t.factors.size())
            throw std::invalid_argument("summand carries " + std::to_string(s.labels.size()) +
                                        " labels for " + std::to_string(t.factors.size()) +
                                        " factors");
    for (const auto& f : t.factors)
        if (family_has_rank(f.family) && f.rank == 0)
            throw std::invalid_argument("factor rank must be positive");
    for (std::size_t s = 0; s < t.summands.size(); ++s) summand_dim(t, s);
}

inline std::string render(const TripletDescriptor& t) {
    std::string out;
    if (t.center_count > 0) out += "GL(1)^" + std::to_string(t.center_count);
    for (std::size_t f = 0; f < t.factors.size(); ++f) {
        if (!out.empty()) out += " x ";
        out += family_text(t.factors[f].family);
        if (family_has_rank(t.factors[f].family))
            out += "(" + std::to_string(t.factors[f].rank) + ")";
    }
    out += " : ";
    for (std::size_t s = 0; s < t.summands.size(); ++s) {
        if (s) out += " + ";
        if (t.summands[s].labels.empty()) {
            out += "1";
            continue;
        }
        for (std::size_t f = 0; f < t.summands[s].labels.size(); ++f) {
            if (f) out += "@";
            out += label_text(t.summands[s].labels[f]);
        }
    }
    return out;
}

namespace detail {

class DescriptorParser {
  public:
    explicit DescriptorParser(std::string text) : text_(std::move(text)) {}

    TripletDescriptor run() {
        TripletDescriptor t;
        skip_space();
        parse_factors(t);
        expect(':');
        parse_summands(t);
        skip_space();
        if (pos_ != text_.size()) fail("trailing input");
        validate_descriptor(t);
        return t;
    }

  private:
    std::string text_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& why) const {
        throw std::invalid_argument("descriptor parse error at offset " + std::to_string(pos_) +
                                    ": " + why);
    }

    void skip_space() {
        while (pos_ < text_.size() && text_[pos_] == ' ') ++pos_;
    }

    bool eat(const std::string& word) {
        if (text_.compare(pos_, word.size(), word) == 0) {
            pos_ += word.size();
            return true;
        }
        return false;
    }

    void expect(char c) {
        skip_space();
        if (pos_ >= text_.size() || text_[pos_] != c)
            fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    std::size_t parse_int() {
        skip_space();
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (pos_ == start) fail("expected a number");
        return static_cast<std::size_t>(std::stoull(text_.substr(start, pos_ - start)));
    }

    void parse_factors(TripletDescriptor& t) {
        bool first = true;
        while (true) {
            skip_space();
            parse_factor(t, first);
            first = false;
            skip_space();
            if (pos_ < text_.size() && text_[pos_] == 'x') {
                ++pos_;
                continue;
            }
            break;
        }
    }

    void parse_factor(TripletDescriptor& t, bool first) {
        static const std::pair<const char*, FactorFamily> names[] = {
            {"Spin", FactorFamily::Spin}, {"SL", FactorFamily::SL}, {"SO", FactorFamily::SO},
            {"Sp", FactorFamily::Sp},     {"GL", FactorFamily::GL}, {"G2", FactorFamily::G2},
            {"E6", FactorFamily::E6},     {"E7", FactorFamily::E7}};
        for (const auto& [word, fam] : names) {
            if (!eat(word)) continue;
            DescriptorFactor f{fam, 0};
            if (family_has_rank(fam)) {
                expect('(');
                f.rank = parse_int();
                expect(')');
            }
            if (pos_ < text_.size() && text_[pos_] == '^') {
                ++pos_;
                std::size_t k = parse_int();
                if (fam != FactorFamily::GL || f.rank != 1)
                    fail("only GL(1) takes an exponent");
                if (!first || t.center_count > 0)
                    fail("the GL(1)^k center must come first and appear once");
                if (k == 0) fail("center exponent must be positive");
                t.center_count = k;
                return;
            }
            t.factors.push_back(f);
            return;
        }
        fail("expected a factor name");
    }

    void parse_summands(TripletDescriptor& t) {
        while (true) {
            RepTerm term;
            while (true) {
                skip_space();
                term.labels.push_back(parse_label());
                skip_space();
                if (pos_ < text_.size() && text_[pos_] == '@') {
                    ++pos_;
                    continue;
                }
                break;
            }
            if (t.factors.empty() && term.labels.size() == 1 && term.labels[0].base == "1")
                term.labels.clear();
            t.summands.push_back(std::move(term));
            skip_space();
            if (pos_ < text_.size() && text_[pos_] == '+') {
                ++pos_;
                continue;
            }
            break;
        }
    }

    RepLabel parse_label() {
        static const char* bases[] = {"3L1", "2L1", "L1", "L2", "L3", "spin", "1"};
        for (const char* b : bases) {
            if (!eat(b)) continue;
            RepLabel l{b, false};
            if (pos_ < text_.size() && text_[pos_] == '*') {
                ++pos_;
                l.dual = true;
            }
            return l;
        }
        fail("expected a label");
    }
};

}  // namespace detail

inline TripletDescriptor parse_descriptor(const std::string& text) {
    return detail::DescriptorParser(text).run();
}

/// Dual label as tracked at the descriptor level. Labels of self-dual or
/// outer-symmetric families keep their spelling.
inline RepLabel dual_label(const DescriptorFactor& f, const RepLabel& l) {
    if (l.base == "1") return l;
    if (f.family == FactorFamily::GL || f.family == FactorFamily::SL ||
        f.family == FactorFamily::E6)
        return {l.base, !l.dual};
    return l;
}

/// A castling move is named by the summand it acts in and the distinguished
/// GL or SL factor there.
struct CastlingMove {
    std::size_t summand = 0;
    std::size_t factor = 0;

    bool operator==(const CastlingMove& o) const {
        return summand == o.summand && factor == o.factor;
    }
};

/// Checks move legality and returns the codimension data (n, m): the factor is
/// GL(n) or SL(n) with plain L1 in the chosen summand, acts trivially in every
/// other summand, and m, the product of the remaining label dimensions in the
/// summand, exceeds n.
inline std::pair<std::size_t, Int> castling_data(const TripletDescriptor& t,
                                                 const CastlingMove& mv) {
    if (mv.summand >= t.summands.size()) throw std::invalid_argument("castle: no such summand");
    if (mv.factor >= t.factors.size()) throw std::invalid_argument("castle: no such factor");
    const DescriptorFactor& f = t.factors[mv.factor];
    if (f.family != FactorFamily::GL && f.family != FactorFamily::SL)
        throw std::invalid_argument("castle: distinguished factor must be GL or SL");
    const RepLabel& l = t.summands[mv.summand].labels[mv.factor];
    if (!(l.base == "L1" && !l.dual))
        throw std::invalid_argument("castle: distinguished factor must carry plain L1");
    for (std::size_t s = 0; s < t.summands.size(); ++s)
        if (s != mv.summand && t.summands[s].labels[mv.factor].base != "1")
            throw std::invalid_argument(
                "castle: distinguished factor acts outside the chosen summand");
    Int m(1);
    for (std::size_t g = 0; g < t.factors.size(); ++g)
        if (g != mv.factor) m *= label_dim(t.factors[g], t.summands[mv.summand].labels[g]);
    if (m <= Int(static_cast<unsigned>(f.rank)))
        throw std::invalid_argument("castle: need m > n for GL(n) against an m-dimensional rep");
    return {f.rank, m};
}

/// The transform: GL(n) becomes GL(m - n) and every other label in the chosen
/// summand is dualized.
inline TripletDescriptor castle(const TripletDescriptor& t, const CastlingMove& mv) {
    auto [n, m] = castling_data(t, mv);
    TripletDescriptor out = t;
    out.factors[mv.factor].rank = Int(m - Int(static_cast<unsigned>(n))).convert_to<std::size_t>();
    for (std::size_t g = 0; g < t.factors.size(); ++g)
        if (g != mv.factor)
            out.summands[mv.summand].labels[g] =
                dual_label(t.factors[g], t.summands[mv.summand].labels[g]);
    return out;
}

inline std::vector<CastlingMove> legal_moves(const TripletDescriptor& t) {
    std::vector<CastlingMove> out;
    for (std::size_t s = 0; s < t.summands.size(); ++s)
        for (std::size_t f = 0; f < t.factors.size(); ++f) {
            CastlingMove mv{s, f};
            try {
                castling_data(t, mv);
            } catch (const std::invalid_argument&) {
                continue;
            }
            out.push_back(mv);
        }
    return out;
}

struct ReduceBudget {
    Int max_total_dim = 0;  // 0 means derived from the start descriptor
    std::size_t max_nodes = 1024;
};

struct ReduceResult {
    TripletDescriptor descriptor;
    std::vector<CastlingMove> path;
    bool complete = true;
};

/// Breadth-first walk of the castling class, bounded by total dimension and
/// node count, returning a minimum-dimension member. Ties break on the
/// rendered text. The result is flagged incomplete when the budget pruned
/// anything.
inline ReduceResult reduce(const TripletDescriptor& t, const ReduceBudget& budget = {}) {
    Int cap = budget.max_total_dim;
    if (cap == 0) cap = space_dim_of(t) * 4 + 64;

    struct Node {
        TripletDescriptor descr;
        std::string parent;
        CastlingMove via;
    };
    std::map<std::string, Node> seen;
    std::deque<std::string> frontier;
    std::string start_key = render(t);
    seen.emplace(start_key, Node{t, "", {}});
    frontier.push_back(start_key);
    bool complete = true;

    while (!frontier.empty()) {
        std::string key = frontier.front();
        frontier.pop_front();
        TripletDescriptor cur = seen.at(key).descr;
        for (const auto& mv : legal_moves(cur)) {
            TripletDescriptor next = castle(cur, mv);
            if (space_dim_of(next) > cap) {
                complete = false;
                continue;
            }
            std::string nk = render(next);
            if (seen.count(nk)) continue;
            if (seen.size() >= budget.max_nodes) {
                complete = false;
                continue;
            }
            seen.emplace(nk, Node{next, key, mv});
            frontier.push_back(nk);
        }
    }

    const std::string* best = &start_key;
    Int best_dim = space_dim_of(t);
    for (const auto& [key, node] : seen) {
        Int d = space_dim_of(node.descr);
        if (d < best_dim || (d == best_dim && key < *best)) {
            best_dim = d;
            best = &key;
        }
    }
    ReduceResult out;
    out.descriptor = seen.at(*best).descr;
    out.complete = complete;
    for (std::string k = *best; k != start_key;) {
        const Node& node = seen.at(k);
        out.path.push_back(node.via);
        k = node.parent;
    }
    std::reverse(out.path.begin(), out.path.end());
    return out;
}

}  // namespace prehom
