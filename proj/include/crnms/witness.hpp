#pragma once

#include <optional>
#include <string>
#include <vector>

#include "crnms/classifier.hpp"
#include "crnms/gproblem.hpp"
#include "crnms/verify.hpp"

namespace crnms {

/// Offsets d (original species order) that put a nondegenerate critical
/// point of g at z = 0 with the far end diverging the other way.
struct DChoice {
    std::vector<Real> offsets;
    std::string transform;  // identity, negate-alpha, negate-gamma, negate-both
    std::size_t pivot = 0;  // species with weight 1
    Real epsilon = 0;
    int halvings = 0;
    Real slope = 0;      // g'(0)
    Real curvature = 0;  // g''(0)
};

DChoice choose_d_three(const BiReactionProfile& p, int startHalvings = 0);

struct KChoice {
    Real level = 0;
    std::string rule;  // midpoint or best-level
    Real zStar = 0;
    std::optional<Real> zStarStar;
    std::size_t roots = 0;
};

KChoice choose_K_three(const GProblem& gp);

/// Turns g-problem roots into rates, conservation constants and states for a
/// two-reaction network with kappa_1 = 1.
Witness assemble_witness(const ReactionNetwork& net, const OneDimStructure& s, const std::vector<Real>& offsets,
                         Real level, const std::vector<Real>& roots);

Witness witness_three(const ReactionNetwork& net);
Witness witness_two_general(const ReactionNetwork& net);

/// All positive steady states of a two-reaction network for given rates and
/// conservation constants.
struct RecoveredStates {
    GProblem problem;
    Real level = 0;
    RootSet roots;
    std::vector<std::vector<Rational>> states;
};

RecoveredStates states_from_parameters(const ReactionNetwork& net, const std::vector<Rational>& kappa,
                                       const std::vector<Rational>& c);

}  // namespace crnms
