#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "crnms/errors.hpp"
#include "crnms/rational.hpp"

namespace crnms {

using IntMatrix = std::vector<std::vector<long long>>;

struct Reaction {
    std::vector<int> reactant;  // dense, indexed by species
    std::vector<int> product;
    std::string label;

    bool operator==(const Reaction&) const = default;
};

struct ReactionNetwork {
    std::vector<std::string> species;
    std::vector<Reaction> reactions;

    std::size_t num_species() const { return species.size(); }
    std::size_t num_reactions() const { return reactions.size(); }
    int alpha(std::size_t k, std::size_t j) const { return reactions[j].reactant[k]; }
    int beta(std::size_t k, std::size_t j) const { return reactions[j].product[k]; }
    long long change(std::size_t k, std::size_t j) const {
        return static_cast<long long>(beta(k, j)) - alpha(k, j);
    }

    bool operator==(const ReactionNetwork&) const = default;
};

/// Parses the line-oriented text format.
///
///   # comment
///   r1: 2 X1 + X2 -> 3 X1 + X3
///   X1 -> 0
ReactionNetwork parse_network(std::string_view text);
ReactionNetwork load_network(const std::filesystem::path& path);
std::string print_network(const ReactionNetwork& net);
std::string format_reaction(const ReactionNetwork& net, std::size_t j);

/// Builds a network from dense coefficient vectors; species are named X1..Xs.
ReactionNetwork make_network(const std::vector<std::pair<std::vector<int>, std::vector<int>>>& reactions);

/// Species by reactions, entries beta - alpha.
IntMatrix stoichiometric_matrix(const ReactionNetwork& net);

std::size_t matrix_rank(const IntMatrix& m);

/// Canonical data of a one-dimensional network.  Index vectors map
/// canonical positions to original (0-based) indices.
struct OneDimStructure {
    std::vector<std::size_t> speciesPerm;
    std::vector<std::size_t> reactionPerm;
    std::vector<long long> gamma;    // canonical species order
    std::vector<Rational> lambda;    // canonical reaction order
    std::size_t t = 0;               // reactions with lambda > 0

    std::vector<long long> gammaByOriginal;
    std::vector<Rational> lambdaByOriginal;

    std::size_t base_species() const { return speciesPerm.front(); }
};

OneDimStructure one_dim_structure(const ReactionNetwork& net);

/// c_{i-1} = gamma_i x0_b - gamma_b x0_i for the non-base species in
/// canonical order.  x0 is given in original species order.
std::vector<Rational> conservation_constants(const OneDimStructure& s, std::span<const Rational> x0);

struct EssentialSets {
    std::vector<std::size_t> E;  // reactant coefficients not all equal
    std::vector<std::size_t> H;  // gamma_k != 0
    std::vector<std::size_t> both;
};

EssentialSets essential_sets(const ReactionNetwork& net, const OneDimStructure& s);

struct EmbedResult {
    ReactionNetwork network;
    std::vector<std::size_t> keptSpecies;
    std::vector<std::size_t> keptReactions;
    std::vector<std::size_t> droppedReactions;
};

EmbedResult embed(const ReactionNetwork& net, std::span<const std::size_t> keep);
EmbedResult embed(const ReactionNetwork& net, const std::vector<std::string>& keepNames);

/// Restriction to the species in E and H.  Throws EssentialEmpty when that set is empty.
EmbedResult reduce_to_essential(const ReactionNetwork& net);

}  // namespace crnms
