#include "crnms/classifier.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>

namespace crnms {

std::string to_string(SignClass c) {
    static const char* names[] = {"S1", "S2", "S3", "S4", "S5"};
    return names[static_cast<int>(c)];
}

std::string to_string(CapacityTag t) {
    switch (t) {
        case CapacityTag::Zero: return "Zero";
        case CapacityTag::InfinitelyMany: return "InfinitelyMany";
        case CapacityTag::FiniteAtMostTwo: return "FiniteAtMostTwo";
        case CapacityTag::FiniteAtLeastThree: return "FiniteAtLeastThree";
        case CapacityTag::Unknown: return "Unknown";
    }
    return "Unknown";
}

SignClass sign_class(long long alpha, long long gamma) {
    if (alpha > 0 && gamma > 0) return SignClass::S1;
    if (alpha < 0 && gamma < 0) return SignClass::S2;
    if (alpha > 0 && gamma < 0) return SignClass::S3;
    if (alpha < 0 && gamma > 0) return SignClass::S4;
    return SignClass::S5;
}

std::size_t BiReactionProfile::nonempty() const {
    return static_cast<std::size_t>(std::count_if(counts.begin(), counts.end(), [](std::size_t c) { return c > 0; }));
}

BiReactionProfile make_profile(std::vector<long long> alphas, std::vector<long long> gammas, Rational lambda2) {
    if (alphas.size() != gammas.size())
        throw Error(ErrorCode::DimensionMismatch, "alpha and gamma lengths differ");
    BiReactionProfile p;
    p.alphas = std::move(alphas);
    p.gammas = std::move(gammas);
    p.lambda2 = std::move(lambda2);
    for (std::size_t k = 0; k < p.alphas.size(); ++k) {
        SignClass c = sign_class(p.alphas[k], p.gammas[k]);
        p.classes.push_back(c);
        if (c == SignClass::S5) continue;
        const int i = static_cast<int>(c);
        const long long a = std::llabs(p.alphas[k]);
        p.sums[i] += a;
        p.mins[i] = p.counts[i] == 0 ? a : std::min(p.mins[i], a);
        ++p.counts[i];
    }
    return p;
}

BiReactionProfile bi_profile(const ReactionNetwork& net, const OneDimStructure& s) {
    if (net.num_reactions() != 2)
        throw Error(ErrorCode::NotBiReaction, "network has " + std::to_string(net.num_reactions()) + " reactions");
    return pair_profile(net, s, 0, 1);
}

BiReactionProfile pair_profile(const ReactionNetwork& net, const OneDimStructure& s, std::size_t i, std::size_t j) {
    std::vector<long long> a, g;
    for (std::size_t k = 0; k < net.num_species(); ++k) {
        a.push_back(static_cast<long long>(net.alpha(k, i)) - net.alpha(k, j));
        g.push_back(s.gammaByOriginal[k]);
    }
    Rational l2 = s.lambdaByOriginal[j] / s.lambdaByOriginal[i];
    l2.canonicalize();
    return make_profile(std::move(a), std::move(g), std::move(l2));
}

namespace {

constexpr std::array<int, 4> kSignAlpha = {+1, -1, +1, -1};
constexpr std::array<int, 4> kSignAlphaGamma = {+1, +1, -1, -1};

Inequality sum_over_min(const BiReactionProfile& p, int sumClass, int minClass) {
    Inequality q;
    q.lhs = "sum|alpha| over S" + std::to_string(sumClass + 1);
    q.rhs = "min|alpha| over S" + std::to_string(minClass + 1);
    q.lhsValue = p.sums[sumClass];
    q.rhsValue = p.mins[minClass];
    return q;
}

std::string instantiate(const std::vector<Inequality>& qs, bool any) {
    std::string out;
    for (const auto& q : qs) {
        if (!out.empty()) out += any ? " or " : " and ";
        out += std::to_string(q.lhsValue) + (q.holds() ? " > " : " <= ") + std::to_string(q.rhsValue) + " (" +
               q.lhs + " vs " + q.rhs + ")";
    }
    return out;
}

}  // namespace

CapacityClass capacity_class_bi(const BiReactionProfile& p) {
    CapacityClass c;
    if (p.lambda2 > 0) {
        c.tag = CapacityTag::Zero;
        c.rule = "same-direction";
        c.explanation = "both reactions move along the same direction, so no positive steady state exists";
        return c;
    }
    const long long aPlus = p.sum(SignClass::S1) - p.sum(SignClass::S4);
    const long long aMinus = p.sum(SignClass::S3) - p.sum(SignClass::S2);
    if (aPlus == 0 && aMinus == 0) {
        c.tag = CapacityTag::InfinitelyMany;
        c.rule = "continuum";
        c.explanation = "sum|alpha| over S1 equals that over S4 and sum over S3 equals that over S2; "
                        "placing poles together makes g constant, giving a continuum of steady states";
        return c;
    }
    std::vector<int> present;
    for (int i = 0; i < 4; ++i)
        if (p.counts[i] > 0) present.push_back(i);

    if (present.size() == 1) {
        c.tag = CapacityTag::FiniteAtMostTwo;
        c.rule = "case-a";
        c.explanation = "only S" + std::to_string(present[0] + 1) + " is nonempty among S1..S4";
        return c;
    }
    if (present.size() == 2) {
        c.rule = "case-b";
        const int k = present[0], l = present[1];
        const bool opposite = kSignAlpha[k] != kSignAlpha[l] && kSignAlphaGamma[k] != kSignAlphaGamma[l];
        if (!opposite) {
            c.tag = CapacityTag::FiniteAtMostTwo;
            c.explanation = "S" + std::to_string(k + 1) + " and S" + std::to_string(l + 1) +
                            " do not make both alpha and alpha*gamma change sign";
            return c;
        }
        c.inequalities = {sum_over_min(p, k, l), sum_over_min(p, l, k)};
        const bool ok = c.inequalities[0].holds() && c.inequalities[1].holds();
        c.tag = ok ? CapacityTag::FiniteAtLeastThree : CapacityTag::FiniteAtMostTwo;
        c.explanation = "S" + std::to_string(k + 1) + ", S" + std::to_string(l + 1) + ": " +
                        instantiate(c.inequalities, false);
        return c;
    }
    if (present.size() == 3) {
        c.rule = "case-c";
        int k = -1, l = -1;
        for (int x : present) {
            int sameAlpha = 0, sameAG = 0;
            for (int y : present) {
                if (y == x) continue;
                sameAlpha += kSignAlpha[y] == kSignAlpha[x];
                sameAG += kSignAlphaGamma[y] == kSignAlphaGamma[x];
            }
            if (sameAlpha == 0) k = x;
            if (sameAG == 0) l = x;
        }
        c.inequalities = {sum_over_min(p, l, k)};
        c.tag = c.inequalities[0].holds() ? CapacityTag::FiniteAtLeastThree : CapacityTag::FiniteAtMostTwo;
        c.explanation = "k = S" + std::to_string(k + 1) + ", l = S" + std::to_string(l + 1) + ": " +
                        instantiate(c.inequalities, false);
        return c;
    }
    c.rule = "case-d";
    c.inequalities = {sum_over_min(p, 3, 0), sum_over_min(p, 0, 3), sum_over_min(p, 2, 1), sum_over_min(p, 1, 2)};
    const bool any = std::any_of(c.inequalities.begin(), c.inequalities.end(), [](const Inequality& q) { return q.holds(); });
    c.tag = any ? CapacityTag::FiniteAtLeastThree : CapacityTag::FiniteAtMostTwo;
    c.explanation = "all of S1..S4 nonempty: " + instantiate(c.inequalities, true);
    return c;
}

TwoNondegResult two_nondeg_profile(const BiReactionProfile& p) {
    if (p.lambda2 > 0) throw Error(ErrorCode::LambdaNotOpposed, "the two reactions are not opposed");
    std::vector<std::size_t> pos, neg;
    for (std::size_t k = 0; k < p.alphas.size(); ++k) {
        const long long prod = p.alphas[k] * p.gammas[k];
        if (prod > 0) pos.push_back(k);
        if (prod < 0) neg.push_back(k);
    }
    TwoNondegResult r;
    if (pos.empty() || neg.empty()) {
        r.reason = pos.empty() ? "no species has a positive product" : "no species has a negative product";
        return r;
    }
    if (pos.size() == 1 && neg.size() == 1 && p.alphas[pos[0]] == -p.alphas[neg[0]]) {
        r.reason = "exactly one positive and one negative product with opposite alpha differences";
        return r;
    }
    r.nondegenerate = true;
    r.reason = "products of both signs";
    return r;
}

TwoNondegResult two_nondeg_bi(const ReactionNetwork& net, const OneDimStructure& s) {
    return two_nondeg_profile(bi_profile(net, s));
}

NecessaryPairResult necessary_pair_test(const PairWitnesses& w) {
    NecessaryPairResult r;
    r.passes = !w.rightLeft.empty() && !w.leftRight.empty();
    if (r.passes)
        r.note = "embedded one-species diagrams (->, <-) and (<-, ->) both occur";
    else
        r.note = std::string("no embedded diagram ") + (w.rightLeft.empty() ? "(->, <-)" : "(<-, ->)") +
                 "; when the capacity is finite the network is not multistationary "
                 "(with infinite capacity, as for X1 -> 2 X1, X1 -> 0, the conclusion does not apply)";
    return r;
}

SufficientTwoResult sufficient_two_test(const ReactionNetwork& net, const OneDimStructure& s) {
    SufficientTwoResult r;
    r.pairTestPasses = necessary_pair_test(diagram_pair_witnesses(net, s)).passes;
    for (std::size_t a = 0; a < s.t; ++a)
        for (std::size_t b = s.t; b < s.reactionPerm.size(); ++b) {
            const std::size_t i = s.reactionPerm[a], j = s.reactionPerm[b];
            BiReactionProfile pp = pair_profile(net, s, i, j);
            const bool finite = pp.sum(SignClass::S1) != pp.sum(SignClass::S4) ||
                                pp.sum(SignClass::S3) != pp.sum(SignClass::S2);
            if (finite) {
                if (!r.certificate) r.certificate = std::make_pair(i, j);
            } else {
                r.infinitePairs.emplace_back(i, j);
            }
        }
    r.satisfied = r.certificate.has_value() && r.pairTestPasses;
    return r;
}

NecessaryThreeResult necessary_three_test(const AdReport& ad) {
    NecessaryThreeResult r;
    r.ad = ad.total;
    r.passes = ad.total >= 3;
    r.note = r.passes ? "Ad >= 3: three or more positive steady states are not excluded"
                      : "Ad < 3: with finite capacity there are at most two positive steady states, "
                        "so the network is not multistable";
    return r;
}

namespace {

using Key = std::vector<int>;

Key canonical_key(const ReactionNetwork& net) {
    const std::size_t s = net.num_species(), m = net.num_reactions();
    std::vector<std::size_t> sp(s), rp(m);
    std::iota(sp.begin(), sp.end(), 0);
    Key best;
    do {
        std::iota(rp.begin(), rp.end(), 0);
        do {
            Key key;
            for (std::size_t j : rp) {
                for (std::size_t k : sp) key.push_back(net.alpha(k, j));
                for (std::size_t k : sp) key.push_back(net.beta(k, j));
            }
            if (best.empty() || key < best) best = key;
        } while (std::next_permutation(rp.begin(), rp.end()));
    } while (std::next_permutation(sp.begin(), sp.end()));
    return best;
}

struct Note {
    const char* text;
    const char* code;
    const char* message;
};

const Note kNotes[] = {
    {"X1 + 2 X2 -> X2\n2 X1 -> 3 X1 + X2\n2 X2 -> X1 + 3 X2\n", "quoted-states-inconsistent",
     "The frequently quoted steady states (0.30806, 0.80806) and (6.8111, 7.3111) for rates (1, 9, 1) "
     "and c = 0.5 do not satisfy this network's steady-state equation x1*x2^2 - 9*x1^2 - x2^2 = 0; "
     "they solve the variant with +x2^2. Use the witness command for verified values."},
    {"2 X1 + X2 -> X1\nX1 + 2 X2 -> 2 X1 + 3 X2\nX1 + X2 -> 0\n", "continuum-at-balanced-rates",
     "For k1 = k2 and k3 = k2*c this network has a continuum of positive steady states in the class "
     "x2 - x1 = c, so it is (degenerately) multistationary; for k1 != k2 it has at most one positive "
     "steady state per class."},
};

}  // namespace

std::vector<Warning> known_network_notes(const ReactionNetwork& net) {
    std::vector<Warning> out;
    if (net.num_species() > 6 || net.num_reactions() > 4) return out;
    Key key;
    for (const Note& n : kNotes) {
        ReactionNetwork ref = parse_network(n.text);
        if (ref.num_species() != net.num_species() || ref.num_reactions() != net.num_reactions()) continue;
        if (key.empty()) key = canonical_key(net);
        if (canonical_key(ref) == key) out.push_back({n.code, n.message});
    }
    return out;
}

ClassificationReport classify(const ReactionNetwork& net) {
    ClassificationReport r;
    r.network = net;
    r.structure = one_dim_structure(net);
    const OneDimStructure& s = r.structure;
    r.essential = essential_sets(net, s);
    if (r.essential.both.empty()) {
        r.reductionNote = "E and H do not intersect; the capacity is 0 or infinite";
    } else if (r.essential.both.size() < net.num_species()) {
        r.reduction = embed(net, std::span<const std::size_t>(r.essential.both));
        r.reductionNote = "restricted to species in both E and H; the capacity is unchanged";
        const ReactionNetwork& red = r.reduction->network;
        const OneDimStructure rs = one_dim_structure(red);
        if (red.num_reactions() == 2) r.reducedCapacity = capacity_class_bi(bi_profile(red, rs));
    }
    r.pairs = diagram_pair_witnesses(net, s);
    r.ad = ad_count(net, s);
    r.necessaryPair = necessary_pair_test(r.pairs);
    r.sufficientTwo = sufficient_two_test(net, s);
    r.necessaryThree = necessary_three_test(r.ad);
    if (net.num_species() == 1) r.diagram = one_species_diagram(net);

    const std::size_t m = net.num_reactions();
    if (s.t == m) {
        r.capacity.tag = CapacityTag::Zero;
        r.capacity.rule = "same-direction";
        r.capacity.explanation = "every reaction moves along the same direction, so no positive steady state exists";
        if (m == 2) r.profile = bi_profile(net, s);
    } else if (m == 2) {
        r.profile = bi_profile(net, s);
        r.capacity = capacity_class_bi(*r.profile);
        r.twoNondeg = two_nondeg_profile(*r.profile);
    } else {
        CapacityClass& c = r.capacity;
        c.tag = CapacityTag::Unknown;
        c.rule = "tests";
        std::string text;
        if (r.sufficientTwo.satisfied) {
            c.lowerBound = 2;
            text += "sufficient two-state condition holds; ";
        }
        if (!r.necessaryPair.passes) {
            c.upperBoundIfFinite = 1;
            text += "necessary pair condition fails (at most one steady state when finite); ";
        } else if (!r.necessaryThree.passes) {
            c.upperBoundIfFinite = 2;
            text += "Ad < 3 (at most two steady states when finite); ";
        }
        text += "no exact capacity is available for more than two reactions";
        c.explanation = text;
    }

    r.warnings = known_network_notes(net);
    if (r.sufficientTwo.satisfied && !r.sufficientTwo.infinitePairs.empty())
        r.warnings.push_back({"opposed-pair-with-continuum",
                              "an opposed reaction pair has infinite capacity; for some rate constants the "
                              "network may have a continuum of positive steady states"});
    if (r.diagram && std::all_of(r.diagram->glyphs.begin(), r.diagram->glyphs.end(),
                                 [](Glyph g) { return g == Glyph::Both; }))
        r.warnings.push_back({"all-double-arrows",
                              "every reactant value carries <->; for suitable rate constants every positive "
                              "concentration is a (degenerate) steady state"});
    return r;
}

}  // namespace crnms
