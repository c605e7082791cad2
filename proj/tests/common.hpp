#pragma once

#include <algorithm>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <cmath>

#include "crnms/gproblem.hpp"
#include "crnms/network.hpp"

namespace testing {

inline std::string data_path(const std::string& name) { return std::string(CRNMS_DATA_DIR) + "/" + name; }

inline crnms::ReactionNetwork data_network(const std::string& name) { return crnms::load_network(data_path(name)); }

using RawReactions = std::vector<std::pair<std::vector<int>, std::vector<int>>>;

/// Random one-dimensional network with every reaction a nonzero multiple of one direction.
/// Coefficients lie in [0, maxCoeff]; every species occurs somewhere.
inline RawReactions random_one_dim(std::mt19937_64& rng, int s, int m, int maxCoeff) {
    std::uniform_int_distribution<int> coeff(0, maxCoeff), sign(0, 1), dirPick(-maxCoeff, maxCoeff);
    for (;;) {
        std::vector<int> dir(s);
        for (int& x : dir) x = dirPick(rng);
        bool zero = true;
        for (int x : dir) zero = zero && x == 0;
        if (zero) continue;
        RawReactions rx;
        bool ok = true;
        for (int j = 0; j < m && ok; ++j) {
            const int mu = sign(rng) ? 1 : -1;
            std::vector<int> a(s), b(s);
            for (int k = 0; k < s; ++k) {
                const int lo = std::max(0, -mu * dir[k]);
                const int hi = std::min(maxCoeff, maxCoeff - mu * dir[k]);
                if (lo > hi) {
                    ok = false;
                    break;
                }
                a[k] = std::uniform_int_distribution<int>(lo, hi)(rng);
                b[k] = a[k] + mu * dir[k];
            }
            if (ok) rx.emplace_back(a, b);
        }
        if (!ok) continue;
        std::vector<bool> seen(s, false);
        for (auto& [a, b] : rx)
            for (int k = 0; k < s; ++k) seen[k] = seen[k] || a[k] > 0 || b[k] > 0;
        bool all = true;
        for (bool x : seen) all = all && x;
        if (all) return rx;
    }
}

/// Same as above but forces the two reactions of a bi-reaction network to run in opposite directions.
inline RawReactions random_opposed_pair(std::mt19937_64& rng, int s, int maxCoeff) {
    for (;;) {
        RawReactions rx = random_one_dim(rng, s, 2, maxCoeff);
        long long d0 = 0, d1 = 0;
        for (int k = 0; k < s && d0 == 0; ++k) {
            d0 = rx[0].second[k] - rx[0].first[k];
            d1 = rx[1].second[k] - rx[1].first[k];
        }
        if (d0 * d1 < 0) return rx;
    }
}

struct RandomG {
    crnms::GProblem gp;
    crnms::Real level;
};

/// Random nonconstant g-problem: alpha in [-5,5], gamma in [-3,3], log-uniform d, level taken from g's range.
inline RandomG random_g(std::mt19937_64& rng, int s) {
    using crnms::Real;
    std::uniform_int_distribution<int> alpha(-5, 5), gamma(-3, 3);
    std::uniform_real_distribution<double> logd(-3.0, 3.0), u(0.0, 1.0);
    for (;;) {
        std::vector<long long> a(s), g(s);
        std::vector<Real> d(s);
        for (int k = 0; k < s; ++k) {
            a[k] = alpha(rng);
            g[k] = gamma(rng);
            d[k] = std::pow(10.0L, static_cast<Real>(logd(rng)));
        }
        crnms::GProblem gp = crnms::make_g_problem(a, g, d);
        if (crnms::is_constant(gp)) continue;
        const Real lo = std::isfinite(gp.lower) ? gp.lower : -1e3L;
        const Real hi = std::isfinite(gp.upper) ? gp.upper : 1e3L;
        const Real z = lo + (hi - lo) * static_cast<Real>(0.001 + 0.998 * u(rng));
        if (!gp.contains(z)) continue;
        const Real level = crnms::eval_g(gp, z).value;
        return {std::move(gp), level};
    }
}

}  // namespace testing
