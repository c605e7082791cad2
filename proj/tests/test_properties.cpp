#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "common.hpp"
#include "crnms/enumerate.hpp"
#include "crnms/oracle.hpp"
#include "crnms/witness.hpp"

using namespace crnms;

namespace {

ReactionNetwork permute_species(const ReactionNetwork& net, const std::vector<std::size_t>& perm) {
    testing::RawReactions rx;
    for (const Reaction& r : net.reactions) {
        std::vector<int> a(perm.size()), b(perm.size());
        for (std::size_t k = 0; k < perm.size(); ++k) {
            a[k] = r.reactant[perm[k]];
            b[k] = r.product[perm[k]];
        }
        rx.emplace_back(a, b);
    }
    return make_network(rx);
}

ReactionNetwork swap_reactions(const ReactionNetwork& net) {
    ReactionNetwork out = net;
    std::swap(out.reactions[0], out.reactions[1]);
    return out;
}

// Every reaction keeps its reactant and moves the other way; nullopt if a product would go negative.
std::optional<ReactionNetwork> negate_direction(const ReactionNetwork& net) {
    testing::RawReactions rx;
    for (const Reaction& r : net.reactions) {
        std::vector<int> b(r.reactant.size());
        for (std::size_t k = 0; k < b.size(); ++k) {
            b[k] = 2 * r.reactant[k] - r.product[k];
            if (b[k] < 0) return std::nullopt;
        }
        rx.emplace_back(r.reactant, b);
    }
    return make_network(rx);
}

CapacityTag tag_of(const ReactionNetwork& net) { return capacity_class_bi(bi_profile(net, one_dim_structure(net))).tag; }

}  // namespace

TEST_CASE("classification is invariant under relabelling, reaction swap and direction reversal") {
    std::mt19937_64 rng(5150);
    std::uniform_int_distribution<int> size(1, 5);
    int reversed = 0;
    for (int trial = 0; trial < 600; ++trial) {
        const int s = size(rng);
        const ReactionNetwork net = make_network(testing::random_one_dim(rng, s, 2, 5));
        const CapacityTag tag = tag_of(net);
        std::vector<std::size_t> perm(static_cast<std::size_t>(s));
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        CHECK(tag_of(permute_species(net, perm)) == tag);
        CHECK(tag_of(swap_reactions(net)) == tag);
        if (const auto rev = negate_direction(net)) {
            ++reversed;
            CHECK(tag_of(*rev) == tag);
        }
    }
    CHECK(reversed > 50);
}

TEST_CASE("three-state classes have Ad at least 3 and produce witnesses") {
    std::mt19937_64 rng(77);
    std::uniform_int_distribution<int> size(2, 5);
    int built = 0;
    for (int trial = 0; trial < 4000 && built < 40; ++trial) {
        const ReactionNetwork net = make_network(testing::random_opposed_pair(rng, size(rng), 5));
        const OneDimStructure st = one_dim_structure(net);
        if (capacity_class_bi(bi_profile(net, st)).tag != CapacityTag::FiniteAtLeastThree) continue;
        CHECK(ad_count(net, st).total >= 3);
        const Witness w = witness_three(net);
        CHECK(w.states.size() >= 3);
        CHECK(verify_witness(net, w).pass);
        ++built;
    }
    CHECK(built == 40);
}

TEST_CASE("at-most-two classes never show three roots") {
    std::mt19937_64 rng(31337);
    std::uniform_int_distribution<int> size(1, 5);
    std::uniform_real_distribution<double> logd(-3, 3);
    int checked = 0;
    for (int trial = 0; trial < 4000 && checked < 40; ++trial) {
        const ReactionNetwork net = make_network(testing::random_opposed_pair(rng, size(rng), 5));
        const BiReactionProfile p = bi_profile(net, one_dim_structure(net));
        if (capacity_class_bi(p).tag != CapacityTag::FiniteAtMostTwo) continue;
        ++checked;
        for (int sample = 0; sample < 10; ++sample) {
            std::vector<Real> d;
            for (std::size_t k = 0; k < p.alphas.size(); ++k) d.push_back(std::pow(10.0L, static_cast<Real>(logd(rng))));
            const GProblem gp = g_problem(p, d);
            if (is_constant(gp)) continue;
            const std::vector<double> tv = oracle_turning_values(oracle_scan(gp, 20001));
            for (std::size_t i = 0; i + 1 < tv.size(); ++i) {
                const double K = (tv[i] + tv[i + 1]) / 2;
                CHECK(count_level_crossings(tv, K) <= 2);
            }
        }
    }
    CHECK(checked == 40);
}

TEST_CASE("same-direction networks have no balance point") {
    std::mt19937_64 rng(8);
    std::uniform_int_distribution<int> size(1, 4);
    std::uniform_real_distribution<double> u(0.1, 10);
    int checked = 0;
    for (int trial = 0; trial < 2000 && checked < 50; ++trial) {
        const ReactionNetwork net = make_network(testing::random_one_dim(rng, size(rng), 2, 4));
        const OneDimStructure st = one_dim_structure(net);
        if (st.t != 2) continue;
        CHECK(tag_of(net) == CapacityTag::Zero);
        ++checked;
        std::vector<Real> offsets;
        for (std::size_t k = 0; k < net.num_species(); ++k) offsets.push_back(u(rng));
        const LineSystem ls = make_line_system(net, st, {static_cast<Real>(u(rng)), static_cast<Real>(u(rng))}, offsets);
        CHECK(line_roots(ls).empty());
    }
    CHECK(checked == 50);
}

TEST_CASE("reduction is idempotent and embeddings nest") {
    std::mt19937_64 rng(404);
    std::uniform_int_distribution<int> size(1, 5), msize(1, 4);
    for (int trial = 0; trial < 300; ++trial) {
        const ReactionNetwork net = make_network(testing::random_one_dim(rng, size(rng), msize(rng), 4));
        try {
            const EmbedResult once = reduce_to_essential(net);
            CHECK(reduce_to_essential(once.network).network == once.network);
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::EssentialEmpty);
        }

        std::vector<std::string> a, ab;
        std::bernoulli_distribution keep(0.6);
        for (const std::string& x : net.species)
            if (keep(rng)) {
                a.push_back(x);
                if (keep(rng)) ab.push_back(x);
            }
        if (ab.empty()) continue;
        try {
            const EmbedResult outer = embed(net, a);
            const ReactionNetwork direct = embed(net, ab).network;
            CHECK(embed(outer.network, ab).network == direct);
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::EmptyResult);
        }
    }
}

TEST_CASE("single-species enumeration") {
    std::set<std::string> seen;
    bool three = false;
    const EnumerateSummary sum = enumerate_networks({1, 2}, [&](const ClassificationReport& r) {
        CHECK(is_canonical_pair(r.network));
        CHECK(seen.insert(print_network(r.network)).second);
        three = three || r.capacity.tag == CapacityTag::FiniteAtLeastThree;
        if (r.capacity.tag == CapacityTag::FiniteAtMostTwo) {
            const BiReactionProfile& p = *r.profile;
            for (Real d : {0.5L, 1.0L, 7.0L}) {
                const GProblem gp = g_problem(p, {d});
                if (is_constant(gp)) continue;
                for (Real K : {-1.0L, 0.0L, 2.0L}) CHECK(oracle_count(gp, K) <= 2);
            }
        }
    });
    CHECK_FALSE(three);
    CHECK(sum.networks == seen.size());
    CHECK(sum.networks > 0);
}

TEST_CASE("two-species enumeration is canonical and consistent") {
    std::size_t count = 0;
    const EnumerateSummary sum = enumerate_networks({2, 2}, [&](const ClassificationReport& r) {
        ++count;
        CHECK(is_canonical_pair(r.network));
        CHECK(r.network.num_species() == 2);
        if (r.capacity.tag == CapacityTag::FiniteAtLeastThree) CHECK(r.ad.total >= 3);
    });
    CHECK(sum.networks == count);
    std::size_t tagged = 0;
    for (const auto& [tag, n] : sum.byTag) tagged += n;
    CHECK(tagged == count);
}

TEST_CASE("three-species enumeration contains a relabelling of the case-b network") {
    const ReactionNetwork gb = testing::data_network("g_b.crn");
    auto same_up_to_symmetry = [&](const ReactionNetwork& net) {
        std::vector<std::size_t> perm = {0, 1, 2};
        do {
            const ReactionNetwork p = permute_species(net, perm);
            for (const ReactionNetwork& q : {p, swap_reactions(p)}) {
                bool eq = true;
                for (std::size_t j = 0; j < 2 && eq; ++j)
                    eq = q.reactions[j].reactant == gb.reactions[j].reactant && q.reactions[j].product == gb.reactions[j].product;
                if (eq) return true;
            }
        } while (std::next_permutation(perm.begin(), perm.end()));
        return false;
    };
    int hits = 0;
    CapacityTag tag = CapacityTag::Unknown;
    enumerate_networks({3, 4}, [&](const ClassificationReport& r) {
        if (same_up_to_symmetry(r.network)) {
            ++hits;
            tag = r.capacity.tag;
        }
    });
    CHECK(hits == 1);
    CHECK(tag == CapacityTag::FiniteAtLeastThree);
}
