#include "crnms/arrows.hpp"

#include <map>

namespace crnms {

std::string glyph_text(Glyph g) {
    switch (g) {
        case Glyph::Right: return "->";
        case Glyph::Left: return "<-";
        case Glyph::Both: return "<->";
    }
    return "?";
}

ArrowDiagram one_species_diagram(const ReactionNetwork& net) {
    if (net.num_species() != 1)
        throw Error(ErrorCode::PreconditionViolated, "arrow diagrams need a one-species network");
    std::map<int, std::pair<bool, bool>> seen;  // reactant value -> (goes right, goes left)
    for (std::size_t j = 0; j < net.num_reactions(); ++j) {
        auto& e = seen[net.alpha(0, j)];
        if (net.change(0, j) > 0) e.first = true;
        if (net.change(0, j) < 0) e.second = true;
    }
    ArrowDiagram d;
    for (const auto& [value, dirs] : seen) {
        d.reactantValues.push_back(value);
        d.glyphs.push_back(dirs.first && dirs.second ? Glyph::Both : dirs.first ? Glyph::Right : Glyph::Left);
    }
    return d;
}

namespace {

template <class F>
void for_each_bi_arrow(const ReactionNetwork& net, const OneDimStructure& s, F&& f) {
    const std::size_t m = s.reactionPerm.size();
    for (std::size_t k : s.speciesPerm)
        for (std::size_t a = 0; a < s.t; ++a)
            for (std::size_t b = s.t; b < m; ++b) {
                const std::size_t i = s.reactionPerm[a], j = s.reactionPerm[b];
                const long long p = static_cast<long long>(net.alpha(k, i) - net.alpha(k, j)) * net.change(k, i);
                if (p != 0) f(BiArrow{k, i, j, p});
            }
}

}  // namespace

PairWitnesses diagram_pair_witnesses(const ReactionNetwork& net, const OneDimStructure& s) {
    PairWitnesses w;
    for_each_bi_arrow(net, s, [&](const BiArrow& a) { (a.product < 0 ? w.rightLeft : w.leftRight).push_back(a); });
    return w;
}

AdReport ad_count(const ReactionNetwork& net, const OneDimStructure& s) {
    AdReport r;
    r.perSpecies.assign(net.num_species(), 0);
    for_each_bi_arrow(net, s, [&](const BiArrow& a) {
        ++r.total;
        ++r.perSpecies[a.species];
        r.triples.push_back(a);
    });
    return r;
}

}  // namespace crnms
