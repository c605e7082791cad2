#include "crnms/network.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

namespace crnms {

namespace {

bool is_name_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }
bool is_name_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_'; }
bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r'; }

struct Term {
    std::string species;
    long coefficient;
};

class LineParser {
public:
    LineParser(std::string_view text, std::size_t lineNo) : s_(text), line_(lineNo) {}

    // Parses one side of a reaction in [begin, end).
    std::vector<Term> parse_side(std::size_t begin, std::size_t end) {
        pos_ = begin;
        end_ = end;
        skip_ws();
        if (pos_ >= end_) fail("expected a complex");
        std::vector<Term> terms;
        if (s_[pos_] == '0') {
            std::size_t save = pos_;
            ++pos_;
            skip_ws();
            if (pos_ >= end_) return terms;
            pos_ = save;
        }
        while (true) {
            terms.push_back(parse_term());
            skip_ws();
            if (pos_ >= end_) break;
            if (s_[pos_] != '+') fail(std::string("unexpected character '") + s_[pos_] + "'");
            ++pos_;
        }
        return terms;
    }

    [[noreturn]] void fail(const std::string& msg, std::size_t at) const {
        throw ParseError(line_, at + 1, msg);
    }
    [[noreturn]] void fail(const std::string& msg) const { fail(msg, pos_); }

private:
    void skip_ws() {
        while (pos_ < end_ && is_space(s_[pos_])) ++pos_;
    }

    Term parse_term() {
        skip_ws();
        if (pos_ >= end_) fail("expected a term");
        if (s_[pos_] == '-') fail("negative coefficient");
        long coeff = 1;
        if (std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            std::size_t start = pos_;
            while (pos_ < end_ && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            if (pos_ < end_ && (s_[pos_] == '.' || s_[pos_] == '/' || s_[pos_] == 'e'))
                if (s_[pos_] != 'e' || (pos_ + 1 < end_ && std::isdigit(static_cast<unsigned char>(s_[pos_ + 1]))))
                    fail("non-integer coefficient", start);
            std::string digits(s_.substr(start, pos_ - start));
            if (digits.size() > 9) fail("coefficient too large", start);
            coeff = std::stol(digits);
            skip_ws();
        }
        if (pos_ >= end_ || !is_name_start(s_[pos_])) fail("expected a species name");
        std::size_t start = pos_;
        while (pos_ < end_ && is_name_char(s_[pos_])) ++pos_;
        return Term{std::string(s_.substr(start, pos_ - start)), coeff};
    }

    std::string_view s_;
    std::size_t line_;
    std::size_t pos_ = 0;
    std::size_t end_ = 0;
};

std::string trim(std::string_view v) {
    std::size_t b = 0, e = v.size();
    while (b < e && std::isspace(static_cast<unsigned char>(v[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(v[e - 1]))) --e;
    return std::string(v.substr(b, e - b));
}

}  // namespace

ReactionNetwork parse_network(std::string_view text) {
    struct Raw {
        std::vector<Term> lhs, rhs;
        std::string label;
        std::size_t line;
    };
    std::vector<Raw> raws;
    std::vector<std::string> species;
    std::map<std::string, std::size_t> index;

    std::size_t lineNo = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t nl = text.find('\n', start);
        if (nl == std::string_view::npos) nl = text.size();
        std::string_view line = text.substr(start, nl - start);
        ++lineNo;
        start = nl + 1;

        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        if (trim(line).empty()) {
            if (nl == text.size()) break;
            continue;
        }
        LineParser p(line, lineNo);
        Raw raw;
        raw.line = lineNo;
        std::size_t body = 0;
        if (auto colon = line.find(':'); colon != std::string_view::npos) {
            raw.label = trim(line.substr(0, colon));
            if (raw.label.empty()) p.fail("empty label", colon);
            body = colon + 1;
        }
        std::size_t arrow = line.find("->", body);
        if (arrow == std::string_view::npos) p.fail("missing '->'", body);
        if (line.find("->", arrow + 2) != std::string_view::npos) p.fail("more than one '->'", arrow + 2);
        raw.lhs = p.parse_side(body, arrow);
        raw.rhs = p.parse_side(arrow + 2, line.size());
        for (const auto* side : {&raw.lhs, &raw.rhs})
            for (const Term& t : *side)
                if (!index.count(t.species)) {
                    index[t.species] = species.size();
                    species.push_back(t.species);
                }
        raws.push_back(std::move(raw));
        if (nl == text.size()) break;
    }
    if (raws.empty()) throw ParseError(lineNo == 0 ? 1 : lineNo, 1, "network has no reactions");

    ReactionNetwork net;
    net.species = species;
    for (const Raw& raw : raws) {
        Reaction r;
        r.reactant.assign(species.size(), 0);
        r.product.assign(species.size(), 0);
        r.label = raw.label;
        for (const Term& t : raw.lhs) r.reactant[index[t.species]] += static_cast<int>(t.coefficient);
        for (const Term& t : raw.rhs) r.product[index[t.species]] += static_cast<int>(t.coefficient);
        if (r.reactant == r.product) throw ParseError(raw.line, 1, "reactant and product complexes are equal");
        net.reactions.push_back(std::move(r));
    }
    return net;
}

ReactionNetwork load_network(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open '" + path.string() + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_network(ss.str());
}

namespace {

std::string format_complex(const ReactionNetwork& net, const std::vector<int>& c,
                           const std::vector<bool>& forceZero) {
    std::string out;
    for (std::size_t k = 0; k < c.size(); ++k) {
        if (c[k] == 0 && !forceZero[k]) continue;
        if (!out.empty()) out += " + ";
        if (c[k] != 1) out += std::to_string(c[k]) + " ";
        out += net.species[k];
    }
    return out.empty() ? "0" : out;
}

}  // namespace

std::string format_reaction(const ReactionNetwork& net, std::size_t j) {
    std::vector<bool> none(net.num_species(), false);
    const Reaction& r = net.reactions[j];
    return format_complex(net, r.reactant, none) + " -> " + format_complex(net, r.product, none);
}

std::string print_network(const ReactionNetwork& net) {
    // Species that never occur with a nonzero coefficient are kept as "0 X" terms.
    std::vector<bool> silent(net.num_species(), true);
    for (const auto& r : net.reactions)
        for (std::size_t k = 0; k < net.num_species(); ++k)
            if (r.reactant[k] != 0 || r.product[k] != 0) silent[k] = false;
    std::vector<bool> none(net.num_species(), false);
    std::string out;
    for (std::size_t j = 0; j < net.num_reactions(); ++j) {
        const Reaction& r = net.reactions[j];
        if (!r.label.empty()) out += r.label + ": ";
        out += format_complex(net, r.reactant, j == 0 ? silent : none);
        out += " -> ";
        out += format_complex(net, r.product, none);
        out += "\n";
    }
    return out;
}

ReactionNetwork make_network(const std::vector<std::pair<std::vector<int>, std::vector<int>>>& reactions) {
    if (reactions.empty()) throw Error(ErrorCode::InvalidArgument, "network has no reactions");
    ReactionNetwork net;
    const std::size_t s = reactions.front().first.size();
    for (std::size_t k = 0; k < s; ++k) net.species.push_back("X" + std::to_string(k + 1));
    for (const auto& [a, b] : reactions) {
        if (a.size() != s || b.size() != s)
            throw Error(ErrorCode::DimensionMismatch, "complex length differs from species count");
        if (a == b) throw Error(ErrorCode::InvalidArgument, "reactant and product complexes are equal");
        for (std::size_t k = 0; k < s; ++k)
            if (a[k] < 0 || b[k] < 0) throw Error(ErrorCode::InvalidArgument, "negative coefficient");
        net.reactions.push_back(Reaction{a, b, {}});
    }
    return net;
}

IntMatrix stoichiometric_matrix(const ReactionNetwork& net) {
    IntMatrix m(net.num_species(), std::vector<long long>(net.num_reactions()));
    for (std::size_t k = 0; k < net.num_species(); ++k)
        for (std::size_t j = 0; j < net.num_reactions(); ++j) m[k][j] = net.change(k, j);
    return m;
}

std::size_t matrix_rank(const IntMatrix& m) {
    if (m.empty()) return 0;
    std::vector<std::vector<Rational>> a(m.size());
    for (std::size_t i = 0; i < m.size(); ++i)
        for (long long v : m[i]) a[i].emplace_back(static_cast<long>(v));
    const std::size_t rows = a.size(), cols = a.front().size();
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t piv = rank;
        while (piv < rows && a[piv][c] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(a[piv], a[rank]);
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == rank || a[r][c] == 0) continue;
            Rational f = a[r][c] / a[rank][c];
            for (std::size_t cc = c; cc < cols; ++cc) a[r][cc] -= f * a[rank][cc];
        }
        ++rank;
    }
    return rank;
}

OneDimStructure one_dim_structure(const ReactionNetwork& net) {
    const std::size_t s = net.num_species(), m = net.num_reactions();
    if (m == 0) throw Error(ErrorCode::InvalidArgument, "network has no reactions");
    IntMatrix N = stoichiometric_matrix(net);
    const std::size_t rank = matrix_rank(N);
    if (rank == 0) throw Error(ErrorCode::ZeroBaseDirection, "stoichiometric subspace is zero");
    if (rank != 1)
        throw Error(ErrorCode::NotOneDimensional,
                    "stoichiometric subspace has dimension " + std::to_string(rank));

    OneDimStructure out;
    out.gammaByOriginal.resize(s);
    for (std::size_t k = 0; k < s; ++k) out.gammaByOriginal[k] = N[k][0];
    std::size_t base = s;
    for (std::size_t k = 0; k < s; ++k)
        if (out.gammaByOriginal[k] != 0) {
            base = k;
            break;
        }
    if (base == s) throw Error(ErrorCode::ZeroBaseDirection, "base reaction has zero change vector");

    out.lambdaByOriginal.resize(m);
    for (std::size_t j = 0; j < m; ++j)
        out.lambdaByOriginal[j] = Rational(static_cast<long>(N[base][j]), static_cast<long>(out.gammaByOriginal[base]));
    for (std::size_t j = 0; j < m; ++j) out.lambdaByOriginal[j].canonicalize();

    out.speciesPerm.push_back(base);
    for (std::size_t k = 0; k < s; ++k)
        if (k != base) out.speciesPerm.push_back(k);
    for (std::size_t j = 0; j < m; ++j)
        if (out.lambdaByOriginal[j] > 0) out.reactionPerm.push_back(j);
    out.t = out.reactionPerm.size();
    for (std::size_t j = 0; j < m; ++j)
        if (out.lambdaByOriginal[j] < 0) out.reactionPerm.push_back(j);

    for (std::size_t k : out.speciesPerm) out.gamma.push_back(out.gammaByOriginal[k]);
    for (std::size_t j : out.reactionPerm) out.lambda.push_back(out.lambdaByOriginal[j]);
    return out;
}

std::vector<Rational> conservation_constants(const OneDimStructure& s, std::span<const Rational> x0) {
    if (x0.size() != s.speciesPerm.size())
        throw Error(ErrorCode::DimensionMismatch, "state length differs from species count");
    const std::size_t b = s.base_species();
    const Rational gb(static_cast<long>(s.gammaByOriginal[b]));
    std::vector<Rational> c;
    for (std::size_t i = 1; i < s.speciesPerm.size(); ++i) {
        const std::size_t k = s.speciesPerm[i];
        Rational gi(static_cast<long>(s.gammaByOriginal[k]));
        c.push_back(gi * x0[b] - gb * x0[k]);
    }
    return c;
}

EssentialSets essential_sets(const ReactionNetwork& net, const OneDimStructure& s) {
    EssentialSets out;
    for (std::size_t k = 0; k < net.num_species(); ++k) {
        bool varies = false;
        for (std::size_t j = 1; j < net.num_reactions(); ++j)
            if (net.alpha(k, j) != net.alpha(k, 0)) varies = true;
        const bool moves = s.gammaByOriginal[k] != 0;
        if (varies) out.E.push_back(k);
        if (moves) out.H.push_back(k);
        if (varies && moves) out.both.push_back(k);
    }
    return out;
}

EmbedResult embed(const ReactionNetwork& net, std::span<const std::size_t> keep) {
    std::vector<std::size_t> kept(keep.begin(), keep.end());
    std::sort(kept.begin(), kept.end());
    kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
    if (kept.empty()) throw Error(ErrorCode::EmptyResult, "no species kept");
    for (std::size_t k : kept)
        if (k >= net.num_species()) throw Error(ErrorCode::InvalidArgument, "species index out of range");

    EmbedResult out;
    out.keptSpecies = kept;
    for (std::size_t k : kept) out.network.species.push_back(net.species[k]);
    for (std::size_t j = 0; j < net.num_reactions(); ++j) {
        Reaction r;
        r.label = net.reactions[j].label;
        for (std::size_t k : kept) {
            r.reactant.push_back(net.alpha(k, j));
            r.product.push_back(net.beta(k, j));
        }
        if (r.reactant == r.product) {
            out.droppedReactions.push_back(j);
            continue;
        }
        out.keptReactions.push_back(j);
        out.network.reactions.push_back(std::move(r));
    }
    if (out.network.reactions.empty())
        throw Error(ErrorCode::EmptyResult, "every reaction becomes trivial after embedding");
    return out;
}

EmbedResult embed(const ReactionNetwork& net, const std::vector<std::string>& keepNames) {
    std::vector<std::size_t> idx;
    for (const std::string& name : keepNames) {
        auto it = std::find(net.species.begin(), net.species.end(), name);
        if (it == net.species.end())
            throw Error(ErrorCode::EmptyResult, "species '" + name + "' does not occur in the network");
        idx.push_back(static_cast<std::size_t>(it - net.species.begin()));
    }
    return embed(net, std::span<const std::size_t>(idx));
}

EmbedResult reduce_to_essential(const ReactionNetwork& net) {
    const OneDimStructure s = one_dim_structure(net);
    const EssentialSets sets = essential_sets(net, s);
    if (sets.both.empty())
        throw Error(ErrorCode::EssentialEmpty,
                    "no species has both varying reactant coefficients and nonzero change; "
                    "the positive steady-state capacity is 0 or infinite");
    return embed(net, std::span<const std::size_t>(sets.both));
}

}  // namespace crnms
