#include <doctest.h>

#include "common.hpp"
#include "crnms/report.hpp"
#include "crnms/witness.hpp"

using namespace crnms;
using testing::data_network;

TEST_CASE("tagged numbers") {
    const json q = tagged(Rational(3, 8));
    CHECK(q["exactness"] == "rational");
    CHECK(q["value"] == "3/8");
    CHECK(q["decimal"].get<double>() == 0.375);
    const json r = tagged(0.5L);
    CHECK(r["exactness"] == "float64");
    CHECK(r["value"].get<double>() == 0.5);
}

TEST_CASE("network and classification reports") {
    const ReactionNetwork ad = data_network("ad_example.crn");
    const json n = to_json(ad);
    CHECK(n["species"] == json({"X1", "X2", "X3"}));
    CHECK(n["reactions"].size() == 2);
    CHECK(n["reactions"][0]["index"] == 1);

    const json c = to_json(classify(data_network("g_b.crn")));
    CHECK(c["capacity"]["tag"] == "FiniteAtLeastThree");
    CHECK(c["capacity"]["rule"] == "case-b");
    CHECK(c["ad"]["total"] == 3);
    CHECK(c["structure"]["positiveReactions"] == 1);
    CHECK_FALSE(pretty(c).empty());
}

TEST_CASE("witness round trip") {
    const ReactionNetwork gc = data_network("g_c.crn");
    const OneDimStructure s = one_dim_structure(gc);
    const Witness w = witness_three(gc);
    const json j = to_json(gc, s, w);
    const Witness back = witness_from_json(j, gc);
    CHECK(back.kappa == w.kappa);
    CHECK(back.c == w.c);
    CHECK(back.states == w.states);
    CHECK(verify_witness(gc, back).pass);

    const Witness wrapped = witness_from_json(json{{"witness", j}}, gc);
    CHECK(wrapped.states == w.states);

    const json plain = {{"kappa", {1, "2.5"}},
                        {"c", {json{{"exactness", "rational"}, {"value", "1/2"}}, 3}},
                        {"states", {{"1", 2, 0.25}}}};
    const Witness p = witness_from_json(plain, gc);
    CHECK(p.kappa == std::vector<Rational>{Rational(1), Rational(5, 2)});
    CHECK(p.c == std::vector<Rational>{Rational(1, 2), Rational(3)});
    CHECK(p.states[0][2] == Rational(1, 4));

    CHECK_THROWS_AS(witness_from_json(json{{"kappa", {1}}}, gc), Error);
}

TEST_CASE("conservation constants follow their species labels") {
    const ReactionNetwork gb = data_network("g_b.crn");
    const OneDimStructure s = one_dim_structure(gb);
    const Witness w = witness_three(gb);
    json j = to_json(gb, s, w);
    json& wj = j;
    std::swap(wj["c"][0], wj["c"][1]);
    wj["cSpecies"] = json({"X3", "X2"});
    CHECK(witness_from_json(j, gb).c == w.c);
}
