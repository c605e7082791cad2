#include <doctest.h>

#include <random>
#include <set>

#include "crnms/network.hpp"

using namespace crnms;

namespace {

const char* kAdExample = "X1 + 3 X2 -> 4 X2 + X3\nX2 + X3 -> X1\n";
const char* kFiveSpecies = "X1 + 3 X2 + X4 + X5 -> 4 X2 + X3 + X5\nX2 + X3 + X4 -> X1 + 2 X4\n";
const char* kGb = "3 X1 + 2 X2 + X3 -> 4 X1 + 3 X2 + 2 X3\nX1 + X2 + 3 X3 -> 2 X3\n";

std::vector<Rational> q(std::initializer_list<const char*> xs) {
    std::vector<Rational> out;
    for (const char* x : xs) out.push_back(parse_rational(x));
    return out;
}

std::set<std::string> names(const ReactionNetwork& net, const std::vector<std::size_t>& idx) {
    std::set<std::string> out;
    for (std::size_t i : idx) out.insert(net.species[i]);
    return out;
}

}  // namespace

TEST_CASE("rational text forms") {
    CHECK(to_string(parse_rational("9999.50")) == "19999/2");
    CHECK(to_string(parse_rational("0.00020")) == "1/5000");
    CHECK(to_string(parse_rational("-1.5e-3")) == "-3/2000");
    CHECK(to_string(parse_rational("08")) == "8");
    CHECK(to_string(parse_rational("010/04")) == "5/2");
    CHECK(to_string(parse_rational("26879/4294967296")) == "26879/4294967296");
    CHECK_THROWS_AS(parse_rational("1/0"), Error);
    CHECK_THROWS_AS(parse_rational("abc"), Error);
    CHECK(exact_rational(0.1L) == exact_rational(0.1L));
    CHECK(to_real(exact_rational(0.1L)) == 0.1L);
    CHECK(to_real(exact_rational(-12345.678L)) == -12345.678L);
    CHECK(to_string(exact_rational(0.375L)) == "3/8");
}

TEST_CASE("parse the bi-arrow example") {
    const ReactionNetwork net = parse_network(kAdExample);
    REQUIRE(net.num_species() == 3);
    REQUIRE(net.num_reactions() == 2);
    CHECK(net.reactions[0].reactant == std::vector<int>{1, 3, 0});
    CHECK(net.reactions[1].reactant == std::vector<int>{0, 1, 1});
    const IntMatrix N = stoichiometric_matrix(net);
    CHECK(N[0] == std::vector<long long>{-1, 1});
    CHECK(N[1] == std::vector<long long>{1, -1});
    CHECK(N[2] == std::vector<long long>{1, -1});
}

TEST_CASE("parser details") {
    const ReactionNetwork one = parse_network("X1 -> 2 X1");
    CHECK(one.reactions[0].reactant == std::vector<int>{1});
    CHECK(one.reactions[0].product == std::vector<int>{2});

    const ReactionNetwork labelled = parse_network("# header\n\nfwd: 2X1 + X1 -> 0  # trailing\nX1 -> X2\n");
    CHECK(labelled.reactions[0].label == "fwd");
    CHECK(labelled.reactions[0].reactant == std::vector<int>{3, 0});
    CHECK(labelled.reactions[0].product == std::vector<int>{0, 0});
    CHECK(labelled.species == std::vector<std::string>{"X1", "X2"});

    auto error_at = [](const char* text, std::size_t line, std::size_t col) {
        try {
            parse_network(text);
        } catch (const ParseError& e) {
            CHECK(e.line() == line);
            CHECK(e.column() == col);
            return;
        }
        FAIL("expected a parse error");
    };
    error_at("X1 -> X1", 1, 1);
    error_at("X1 -> 2 X2\n-1 X1 -> X2", 2, 1);
    error_at("X1 -> 1.5 X2", 1, 7);
    error_at("X1 + -> X2", 1, 6);
    error_at("X1 X2", 1, 1);
    CHECK_THROWS_AS(parse_network("# nothing\n"), ParseError);
}

TEST_CASE("print and parse round trip") {
    for (const char* text : {kAdExample, kFiveSpecies, kGb, "a: X1 -> 0\nb: 0 -> X1\n"}) {
        const ReactionNetwork net = parse_network(text);
        CHECK(parse_network(print_network(net)) == net);
    }
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> coeff(0, 3), size(1, 4);
    for (int trial = 0; trial < 300; ++trial) {
        const int s = size(rng), m = size(rng);
        std::vector<std::pair<std::vector<int>, std::vector<int>>> rx;
        for (int j = 0; j < m; ++j) {
            std::vector<int> a(s), b(s);
            do {
                for (int k = 0; k < s; ++k) {
                    a[k] = coeff(rng);
                    b[k] = coeff(rng);
                }
            } while (a == b);
            rx.emplace_back(a, b);
        }
        const ReactionNetwork net = make_network(rx);
        const ReactionNetwork back = parse_network(print_network(net));
        // Names are kept; order follows first appearance, so compare by name.
        REQUIRE(back.num_reactions() == net.num_reactions());
        for (std::size_t j = 0; j < net.num_reactions(); ++j)
            for (std::size_t k = 0; k < net.num_species(); ++k) {
                auto it = std::find(back.species.begin(), back.species.end(), net.species[k]);
                const std::size_t kb = static_cast<std::size_t>(it - back.species.begin());
                const bool present = it != back.species.end();
                CHECK(net.alpha(k, j) == (present ? back.alpha(kb, j) : 0));
                CHECK(net.beta(k, j) == (present ? back.beta(kb, j) : 0));
            }
        CHECK(parse_network(print_network(back)) == back);
    }
}

TEST_CASE("one-dimensional structure") {
    const ReactionNetwork ad = parse_network(kAdExample);
    const OneDimStructure s = one_dim_structure(ad);
    CHECK(s.gammaByOriginal == std::vector<long long>{-1, 1, 1});
    CHECK(s.lambdaByOriginal == q({"1", "-1"}));
    CHECK(s.t == 1);

    const ReactionNetwork three = parse_network("X1 + 2 X2 -> X2\n2 X1 -> 3 X1 + X2\n2 X2 -> X1 + 3 X2\n");
    const OneDimStructure s3 = one_dim_structure(three);
    CHECK(s3.lambda == q({"1", "-1", "-1"}));
    CHECK(s3.t == 1);

    const ReactionNetwork mixed = parse_network("X1 -> X2\n2 X2 -> 2 X1\nX1 -> 0 X1 + X2\n");
    const OneDimStructure sm = one_dim_structure(mixed);
    CHECK(sm.reactionPerm == std::vector<std::size_t>{0, 2, 1});
    CHECK(sm.lambda == q({"1", "1", "-2"}));

    const ReactionNetwork shifted = parse_network("X1 -> X1 + X2\nX2 -> 0\n");
    const OneDimStructure ss = one_dim_structure(shifted);
    CHECK(ss.speciesPerm == std::vector<std::size_t>{1, 0});
    CHECK(ss.gamma == std::vector<long long>{1, 0});

    CHECK_THROWS_AS(one_dim_structure(parse_network("X1 -> 2 X1\nX2 -> 2 X2\n")), Error);
    try {
        one_dim_structure(parse_network("X1 -> 2 X1\nX2 -> 2 X2\n"));
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotOneDimensional);
    }
}

TEST_CASE("every change column is lambda times gamma") {
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> coeff(0, 4), mult(-3, 3), size(1, 4);
    for (int trial = 0; trial < 200; ++trial) {
        const int s = size(rng), m = size(rng);
        std::vector<int> dir(s);
        do
            for (int& x : dir) x = mult(rng);
        while (std::all_of(dir.begin(), dir.end(), [](int x) { return x == 0; }));
        std::vector<std::pair<std::vector<int>, std::vector<int>>> rx;
        for (int j = 0; j < m; ++j) {
            int mu = 0;
            while (mu == 0) mu = mult(rng);
            std::vector<int> a(s), b(s);
            for (int k = 0; k < s; ++k) {
                a[k] = coeff(rng) + 12;
                b[k] = a[k] + mu * dir[k];
            }
            rx.emplace_back(a, b);
        }
        const ReactionNetwork net = make_network(rx);
        const OneDimStructure st = one_dim_structure(net);
        for (std::size_t j = 0; j < net.num_reactions(); ++j)
            for (std::size_t k = 0; k < net.num_species(); ++k)
                CHECK(Rational(static_cast<long>(net.change(k, j))) ==
                      st.lambdaByOriginal[j] * Rational(static_cast<long>(st.gammaByOriginal[k])));
        CHECK(st.lambdaByOriginal[0] == 1);
        CHECK(st.gamma[0] != 0);
        for (std::size_t i = 0; i < st.lambda.size(); ++i) CHECK((st.lambda[i] > 0) == (i < st.t));
    }
}

TEST_CASE("conservation constants") {
    const ReactionNetwork gb = parse_network(kGb);
    const OneDimStructure s = one_dim_structure(gb);
    const std::vector<Rational> x0 = q({"9999.50", "0.00020", "0.50"});
    const std::vector<Rational> c = conservation_constants(s, x0);
    CHECK(c == q({"49997499/5000", "9999"}));
    CHECK(std::fabs(to_real(c[0]) - 9999.4998L) < 1e-9L);

    const OneDimStructure sym = one_dim_structure(parse_network("X1 -> X1 + X2\nX1 + X2 -> X1\n"));
    CHECK(sym.gammaByOriginal == std::vector<long long>{0, 1});

    const OneDimStructure two = one_dim_structure(parse_network("X1 -> X2 + 2 X1\nX1 + X2 -> 0\n"));
    CHECK(conservation_constants(two, q({"5", "5"})) == q({"0"}));

    const OneDimStructure single = one_dim_structure(parse_network("X1 -> 2 X1"));
    CHECK(conservation_constants(single, q({"3"})).empty());
    CHECK_THROWS_AS(conservation_constants(single, q({"3", "4"})), Error);

    std::mt19937 rng(3);
    std::uniform_int_distribution<int> num(1, 1000);
    const OneDimStructure ad = one_dim_structure(parse_network(kAdExample));
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<Rational> x = {Rational(num(rng), num(rng)), Rational(num(rng), num(rng)), Rational(num(rng), num(rng))};
        for (auto& v : x) v.canonicalize();
        const std::vector<Rational> cc = conservation_constants(ad, x);
        const std::size_t b = ad.base_species();
        for (std::size_t i = 1; i < 3; ++i) {
            const std::size_t k = ad.speciesPerm[i];
            CHECK(Rational(static_cast<long>(ad.gammaByOriginal[k])) * x[b] -
                      Rational(static_cast<long>(ad.gammaByOriginal[b])) * x[k] - cc[i - 1] ==
                  0);
        }
    }
}

TEST_CASE("essential sets, embedding and reduction") {
    const ReactionNetwork five = parse_network(kFiveSpecies);
    const OneDimStructure s = one_dim_structure(five);
    const EssentialSets e = essential_sets(five, s);
    CHECK(names(five, e.E) == std::set<std::string>{"X1", "X2", "X3", "X5"});
    CHECK(names(five, e.H) == std::set<std::string>{"X1", "X2", "X3", "X4"});
    CHECK(names(five, e.both) == std::set<std::string>{"X1", "X2", "X3"});

    const EmbedResult gh = embed(five, std::span<const std::size_t>(e.H));
    CHECK(gh.network == parse_network("X1 + 3 X2 + X4 -> 4 X2 + X3\nX2 + X3 + X4 -> X1 + 2 X4\n"));
    CHECK(gh.droppedReactions.empty());

    const EmbedResult red = reduce_to_essential(five);
    CHECK(red.network == parse_network("X1 + 3 X2 -> 4 X2 + X3\nX2 + X3 -> X1\n"));
    CHECK(reduce_to_essential(red.network).network == red.network);

    const ReactionNetwork ad = parse_network(kAdExample);
    CHECK(reduce_to_essential(ad).network == ad);
    const EssentialSets ead = essential_sets(ad, one_dim_structure(ad));
    CHECK(ead.E == std::vector<std::size_t>{0, 1, 2});

    const ReactionNetwork single = parse_network("X1 -> 2 X1\nX1 -> 0\n");
    const EssentialSets es = essential_sets(single, one_dim_structure(single));
    CHECK(es.E.empty());
    CHECK(es.H == std::vector<std::size_t>{0});
    try {
        reduce_to_essential(single);
        FAIL("expected EssentialEmpty");
    } catch (const Error& err) {
        CHECK(err.code() == ErrorCode::EssentialEmpty);
    }

    const ReactionNetwork pair = parse_network("X1 + X2 -> 2 X1 + X2\n2 X1 + X2 -> X1 + X2\n");
    CHECK(reduce_to_essential(pair).network == parse_network("X1 -> 2 X1\n2 X1 -> X1\n"));

    const std::vector<std::size_t> all = {0, 1, 2, 3, 4};
    CHECK(embed(five, std::span<const std::size_t>(all)).network == five);

    const ReactionNetwork grow = parse_network("X1 -> 2 X1");
    try {
        embed(grow, std::vector<std::string>{"X2"});
        FAIL("expected EmptyResult");
    } catch (const Error& err) {
        CHECK(err.code() == ErrorCode::EmptyResult);
    }
    const ReactionNetwork drop = parse_network("X1 + X2 -> X1\nX1 -> 2 X1\n");
    const EmbedResult d = embed(drop, std::vector<std::string>{"X1"});
    CHECK(d.droppedReactions == std::vector<std::size_t>{0});
    CHECK(d.network.num_reactions() == 1);
}

TEST_CASE("nested embeddings agree") {
    const ReactionNetwork five = parse_network(kFiveSpecies);
    const std::vector<std::size_t> a = {0, 1, 2, 3}, ab = {0, 1, 3};
    const EmbedResult outer = embed(five, std::span<const std::size_t>(a));
    // ab expressed in the outer network's indexing is {0, 1, 3} as well.
    const EmbedResult inner = embed(outer.network, std::span<const std::size_t>(ab));
    CHECK(inner.network == embed(five, std::span<const std::size_t>(ab)).network);
}
