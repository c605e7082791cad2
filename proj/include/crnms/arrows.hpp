#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "crnms/network.hpp"

namespace crnms {

enum class Glyph { Right, Left, Both };

std::string glyph_text(Glyph g);  // "->", "<-", "<->"

/// Arrow diagram of a one-species network: one glyph per distinct reactant value.
struct ArrowDiagram {
    std::vector<int> reactantValues;  // increasing
    std::vector<Glyph> glyphs;
};

ArrowDiagram one_species_diagram(const ReactionNetwork& net);

/// Nonzero entry of the bi-arrow table.  Indices are original and 0-based;
/// `positive` has lambda > 0 and `negative` has lambda < 0.
struct BiArrow {
    std::size_t species;
    std::size_t positive;
    std::size_t negative;
    long long product;  // (alpha_ki - alpha_kj)(beta_ki - alpha_ki)
};

/// rightLeft: product < 0, the embedded diagram reads (->, <-).
/// leftRight: product > 0, the embedded diagram reads (<-, ->).
struct PairWitnesses {
    std::vector<BiArrow> rightLeft;
    std::vector<BiArrow> leftRight;
};

PairWitnesses diagram_pair_witnesses(const ReactionNetwork& net, const OneDimStructure& s);

struct AdReport {
    std::size_t total = 0;
    std::vector<std::size_t> perSpecies;  // original species order
    std::vector<BiArrow> triples;         // canonical enumeration order
};

AdReport ad_count(const ReactionNetwork& net, const OneDimStructure& s);

}  // namespace crnms
