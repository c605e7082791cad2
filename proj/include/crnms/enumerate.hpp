#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <string>

#include "crnms/classifier.hpp"

namespace crnms {

struct EnumerateOptions {
    int species = 1;   // exactly this many species, each occurring somewhere
    int maxCoeff = 1;  // coefficients in 0..maxCoeff
};

struct EnumerateSummary {
    std::size_t networks = 0;
    std::map<std::string, std::size_t> byTag;
    std::map<std::string, std::size_t> byRule;
};

/// True when no species relabelling or reaction swap gives a smaller encoding.
bool is_canonical_pair(const ReactionNetwork& net);

/// Visits every canonical one-dimensional two-reaction network with distinct
/// reactions, in a fixed order.
EnumerateSummary enumerate_networks(const EnumerateOptions& opt,
                                    const std::function<void(const ClassificationReport&)>& sink);

}  // namespace crnms
