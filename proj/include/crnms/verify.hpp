#pragma once

#include <optional>
#include <string>
#include <vector>

#include "crnms/network.hpp"

namespace crnms {

/// Rate constants, conservation constants and the steady states claimed for them.
struct Witness {
    std::vector<Rational> kappa;                // original reaction order
    std::vector<Rational> c;                    // non-base species in canonical order
    std::vector<std::vector<Rational>> states;  // original species order
    std::string route;                          // how it was built; empty for external input

    std::vector<Real> z;                        // line parameters of the states, when known
    std::optional<Real> level;                  // K of the g-problem, when used
    std::vector<Rational> offsets;              // d, original species order, when used
    std::vector<bool> nondegenerate;
};

/// Mass-action balance sum_j lambda_j kappa_j x^alpha_j along x(z) = gamma z + d.
struct LineSystem {
    std::vector<std::vector<int>> exponents;  // per reaction, original species order
    std::vector<int> lambdaSign;
    std::vector<Real> weights;                // |lambda_j| kappa_j
    std::vector<Real> direction;
    std::vector<Real> offsets;
    Real lower = 0, upper = 0;

    bool contains(Real z) const { return z > lower && z < upper; }
};

LineSystem make_line_system(const ReactionNetwork& net, const OneDimStructure& s, const std::vector<Real>& kappa,
                            const std::vector<Real>& offsets);

/// ln(sum of positive terms) - ln(sum of negative terms) at z.
Real line_balance(const LineSystem& ls, Real z);

/// Derivative of line_balance at z.
Real line_balance_slope(const LineSystem& ls, Real z);

/// Sign changes of line_balance on a grid, refined by bisection.
std::vector<Real> line_roots(const LineSystem& ls);

struct StateCheck {
    std::vector<Real> residuals;  // h1 then one per conservation law, all relative
    Real maxResidual = 0;
    bool positive = false;
    bool nondegenerate = false;
    Real transversality = 0;
    bool pass = false;
};

struct VerificationReport {
    std::vector<StateCheck> states;
    Real tolerance = 0;
    bool distinct = false;
    bool pass = false;
};

/// Relative residual |sum_j lambda_j kappa_j x^alpha_j| / sum_j |lambda_j kappa_j x^alpha_j| at x.
Real balance_residual(const ReactionNetwork& net, const OneDimStructure& s, const std::vector<Real>& kappa,
                      const std::vector<Real>& x);

/// Derivative of the log balance along gamma, times the distance to the boundary.
Real balance_transversality(const ReactionNetwork& net, const OneDimStructure& s, const std::vector<Real>& kappa,
                            const std::vector<Real>& x);

constexpr Real kNondegeneracyThreshold = 1e-8L;

VerificationReport verify_witness(const ReactionNetwork& net, const Witness& w, Real tolerance = 1e-9L);

}  // namespace crnms
