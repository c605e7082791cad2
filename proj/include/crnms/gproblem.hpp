#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "crnms/classifier.hpp"
#include "crnms/rational.hpp"

namespace crnms {

/// g(z) = sum_k alpha_k ln(gamma_k z + d_k) on the interval where every
/// gamma_k z + d_k is positive.
struct GProblem {
    std::vector<long long> alphas;
    std::vector<long long> gammas;
    std::vector<Real> offsets;
    Real lower = 0;  // may be -inf
    Real upper = 0;  // may be +inf

    std::size_t size() const { return alphas.size(); }
    bool contains(Real z) const { return z > lower && z < upper; }
};

GProblem make_g_problem(std::vector<long long> alphas, std::vector<long long> gammas, std::vector<Real> offsets);
GProblem g_problem(const BiReactionProfile& p, std::vector<Real> offsets);

/// True when g is constant on its interval (all pole groups cancel).
bool is_constant(const GProblem& gp);

struct GValue {
    Real value;
    Real first;
    Real second;
};

GValue eval_g(const GProblem& gp, Real z);

enum class Side { Lower, Upper };

/// Limit of g at an end of the interval; +-inf when it diverges.
Real boundary_limit(const GProblem& gp, Side side);

/// Zeros of g' on the interval, increasing.
std::vector<Real> critical_points(const GProblem& gp);

struct RootSet {
    std::vector<Real> roots;
    std::vector<std::pair<Real, Real>> brackets;
    std::vector<Real> residuals;  // |g(root) - K|
    std::vector<Real> suspectedDegenerate;
};

RootSet find_roots(const GProblem& gp, Real level);

struct LevelChoice {
    Real level = 0;
    std::size_t count = 0;
};

/// Level with the most solutions among midpoints of consecutive critical
/// values and finite end limits.
LevelChoice best_level(const GProblem& gp);

/// |g'(z)| times the distance to the nearest pole, in units of z.
Real transversality(const GProblem& gp, Real z);

/// Sorted sample of the interval used by the root finders.
std::vector<Real> scan_grid(Real lower, Real upper, Real scale, std::size_t n);

/// Bisection on a sign change of f between lo and hi.
Real bisect(const std::function<Real(Real)>& f, Real lo, Real hi, int maxIter = 400);

/// Poles (-d/gamma) sorted; used to pick scan scales.
Real pole_scale(const GProblem& gp);

}  // namespace crnms
