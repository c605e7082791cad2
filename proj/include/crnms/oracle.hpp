#pragma once

#include <vector>

#include "crnms/gproblem.hpp"

namespace crnms {

/// Dense double-precision sampling of g, kept independent of the long
/// double root finder so the two can be compared.
struct OracleScan {
    std::vector<long long> alphas, gammas;
    std::vector<double> offsets;
    double lower = 0, upper = 0;
    std::vector<double> z;
    std::vector<double> g;
};

OracleScan oracle_scan(const GProblem& gp, int points = 200001);

/// Number of distinct solutions of g = level found by the scan.
int oracle_count(const OracleScan& scan, double level);
int oracle_count(const GProblem& gp, Real level);

/// Local extrema of the sampled sequence, including both ends.
std::vector<double> oracle_turning_values(const OracleScan& scan);

/// Sign changes of (sample - level) computed from the turning values.
int count_level_crossings(const std::vector<double>& turning, double level);

}  // namespace crnms
