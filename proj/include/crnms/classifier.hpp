#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "crnms/arrows.hpp"
#include "crnms/network.hpp"

namespace crnms {

enum class SignClass { S1, S2, S3, S4, S5 };

std::string to_string(SignClass c);

SignClass sign_class(long long alpha, long long gamma);

struct BiReactionProfile {
    std::vector<long long> alphas;  // alpha_k1 - alpha_k2
    std::vector<long long> gammas;  // beta_k1 - alpha_k1
    std::vector<SignClass> classes;
    Rational lambda2;
    std::array<long long, 4> sums{};          // sum |alpha| over S1..S4
    std::array<long long, 4> mins{};          // min |alpha|, 0 for an empty class
    std::array<std::size_t, 4> counts{};

    bool has(SignClass c) const { return counts[static_cast<int>(c)] > 0; }
    long long sum(SignClass c) const { return sums[static_cast<int>(c)]; }
    long long min(SignClass c) const { return mins[static_cast<int>(c)]; }
    std::size_t nonempty() const;
};

BiReactionProfile make_profile(std::vector<long long> alphas, std::vector<long long> gammas, Rational lambda2);

/// Profile of a two-reaction network in original species order.
BiReactionProfile bi_profile(const ReactionNetwork& net, const OneDimStructure& s);

/// Profile of reactions (i, j) of a larger network, measured along the base direction.
BiReactionProfile pair_profile(const ReactionNetwork& net, const OneDimStructure& s, std::size_t i, std::size_t j);

enum class CapacityTag { Zero, InfinitelyMany, FiniteAtMostTwo, FiniteAtLeastThree, Unknown };

std::string to_string(CapacityTag t);

struct Inequality {
    std::string lhs;  // e.g. "sum|alpha| over S4"
    std::string rhs;
    long long lhsValue = 0;
    long long rhsValue = 0;
    bool holds() const { return lhsValue > rhsValue; }
};

struct CapacityClass {
    CapacityTag tag = CapacityTag::Unknown;
    std::string rule;  // "same-direction", "continuum", "case-a" .. "case-d", "tests"
    std::string explanation;
    std::vector<Inequality> inequalities;
    std::optional<int> lowerBound;          // for m > 2
    std::optional<int> upperBoundIfFinite;  // for m > 2
};

CapacityClass capacity_class_bi(const BiReactionProfile& p);

struct TwoNondegResult {
    bool nondegenerate = false;
    std::string reason;
};

TwoNondegResult two_nondeg_bi(const ReactionNetwork& net, const OneDimStructure& s);
TwoNondegResult two_nondeg_profile(const BiReactionProfile& p);

struct NecessaryPairResult {
    bool passes = false;
    std::string note;
};

NecessaryPairResult necessary_pair_test(const PairWitnesses& w);

struct SufficientTwoResult {
    std::optional<std::pair<std::size_t, std::size_t>> certificate;  // (positive, negative), original indices
    bool pairTestPasses = false;
    bool satisfied = false;
    std::vector<std::pair<std::size_t, std::size_t>> infinitePairs;
};

SufficientTwoResult sufficient_two_test(const ReactionNetwork& net, const OneDimStructure& s);

struct NecessaryThreeResult {
    bool passes = false;
    std::size_t ad = 0;
    std::string note;
};

NecessaryThreeResult necessary_three_test(const AdReport& ad);

struct Warning {
    std::string code;
    std::string message;
};

/// Notes for specific networks whose commonly quoted data is known to be inconsistent.
std::vector<Warning> known_network_notes(const ReactionNetwork& net);

struct ClassificationReport {
    ReactionNetwork network;
    OneDimStructure structure;
    EssentialSets essential;
    std::optional<EmbedResult> reduction;
    std::optional<CapacityClass> reducedCapacity;
    std::string reductionNote;
    PairWitnesses pairs;
    AdReport ad;
    NecessaryPairResult necessaryPair;
    SufficientTwoResult sufficientTwo;
    NecessaryThreeResult necessaryThree;
    std::optional<BiReactionProfile> profile;
    std::optional<TwoNondegResult> twoNondeg;
    std::optional<ArrowDiagram> diagram;
    CapacityClass capacity;
    std::vector<Warning> warnings;
};

ClassificationReport classify(const ReactionNetwork& net);

}  // namespace crnms
