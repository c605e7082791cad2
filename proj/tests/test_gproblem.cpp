#include <doctest.h>

#include <cmath>
#include <random>

#include "common.hpp"
#include "crnms/classifier.hpp"
#include "crnms/gproblem.hpp"
#include "crnms/oracle.hpp"

using namespace crnms;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an error");
    return ErrorCode::Parse;
}

}  // namespace

TEST_CASE("intervals") {
    const GProblem a = make_g_problem({2, -1}, {1, 1}, {1, 2});
    CHECK(a.lower == -1);
    CHECK(std::isinf(a.upper));
    CHECK(a.upper > 0);

    const BiReactionProfile gc = make_profile({1, -1, -2}, {1, -1, 1}, Rational(-1));
    const GProblem b = g_problem(gc, {1, 1, 1});
    CHECK(b.lower == -1);
    CHECK(b.upper == 1);

    CHECK(code_of([] { make_g_problem({1, 1}, {1, -1}, {-1, -1}); }) == ErrorCode::EmptyInterval);
    CHECK(code_of([] { make_g_problem({1}, {1, 2}, {1}); }) == ErrorCode::DimensionMismatch);

    const GProblem inert = make_g_problem({1, 2}, {1, 0}, {1, 3});
    CHECK(inert.lower == -1);
    CHECK(code_of([] { make_g_problem({1, 2}, {1, 0}, {1, -3}); }) == ErrorCode::EmptyInterval);
}

TEST_CASE("evaluation") {
    const GProblem gp = make_g_problem({2, -1}, {1, 1}, {1, 2});
    const GValue v = eval_g(gp, 0);
    CHECK(std::fabs(v.value + std::log(2.0L)) < 1e-18L);
    CHECK(std::fabs(v.first - 1.5L) < 1e-18L);
    CHECK(std::fabs(v.second - (-2.0L + 0.25L)) < 1e-18L);
    CHECK(code_of([&] { eval_g(gp, -1); }) == ErrorCode::OutOfDomain);
    CHECK(code_of([&] { eval_g(gp, -3); }) == ErrorCode::OutOfDomain);

    const GProblem zero = make_g_problem({0, 0}, {1, -1}, {1, 1});
    CHECK(is_constant(zero));
    CHECK(eval_g(zero, 0.3L).value == 0);
    CHECK(code_of([&] { critical_points(zero); }) == ErrorCode::ConstantG);
    CHECK(code_of([&] { find_roots(zero, 0); }) == ErrorCode::ConstantG);
    CHECK(code_of([&] { oracle_count(zero, 0); }) == ErrorCode::ConstantG);

    // Equal sums on co-located poles cancel.
    CHECK(is_constant(make_g_problem({1, -1}, {1, 1}, {2, 2})));
    CHECK_FALSE(is_constant(make_g_problem({1, -1}, {1, 1}, {1, 2})));
}

TEST_CASE("boundary limits") {
    const GProblem gp = make_g_problem({2, -1}, {1, 1}, {1, 2});
    CHECK(boundary_limit(gp, Side::Lower) == -INFINITY);
    CHECK(boundary_limit(gp, Side::Upper) == INFINITY);

    const GProblem bal = make_g_problem({1, -1}, {1, 1}, {1, 2});
    CHECK(boundary_limit(bal, Side::Lower) == -INFINITY);
    CHECK(std::fabs(boundary_limit(bal, Side::Upper)) < 1e-15L);

    const GProblem gc = make_g_problem({1, -1, -2}, {1, -1, 1}, {1, 1, 1});
    CHECK(boundary_limit(gc, Side::Lower) == INFINITY);
    CHECK(boundary_limit(gc, Side::Upper) == INFINITY);
}

TEST_CASE("closed form root and critical points") {
    const GProblem gp = make_g_problem({2, -1}, {1, 1}, {1, 2});
    CHECK(critical_points(gp).empty());
    const RootSet r = find_roots(gp, 0);
    REQUIRE(r.roots.size() == 1);
    CHECK(std::fabs(r.roots[0] - (-1.0L + std::sqrt(5.0L)) / 2) < 1e-12L);
    CHECK(r.residuals[0] < 1e-10L);
    CHECK(oracle_count(gp, 0) == 1);
    CHECK(find_roots(gp, 20).roots.size() == 1);

    // Bounded above: g = ln(z+1) - ln(z+2) < 0.
    const GProblem bal = make_g_problem({1, -1}, {1, 1}, {1, 2});
    CHECK(find_roots(bal, 0.5L).roots.empty());
    CHECK(oracle_count(bal, 0.5L) == 0);
    CHECK(oracle_count(bal, eval_g(bal, 3).value) == 1);

    const GProblem gc = make_g_problem({1, -1, -2}, {1, -1, 1}, {1, 1, 1});
    const std::vector<Real> cps = critical_points(gc);
    for (Real z : cps) CHECK(std::fabs(eval_g(gc, z).first) < 1e-9L);
}

TEST_CASE("find_roots agrees with the oracle on random instances") {
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<int> size(1, 6);
    int multi = 0;
    for (int trial = 0; trial < 150; ++trial) {
        const int s = size(rng);
        const testing::RandomG rg = testing::random_g(rng, s);
        const RootSet r = find_roots(rg.gp, rg.level);
        const int oc = oracle_count(rg.gp, rg.level);
        CHECK(static_cast<int>(r.roots.size()) == oc);
        CHECK(r.roots.size() <= static_cast<std::size_t>(s) + 1);
        for (std::size_t i = 0; i < r.roots.size(); ++i) {
            CHECK(r.residuals[i] < 1e-10L * (1 + std::fabs(rg.level)));
            if (i > 0) CHECK(r.roots[i] > r.roots[i - 1]);
        }
        if (r.roots.size() >= 2) {
            ++multi;
            const std::vector<Real> cps = critical_points(rg.gp);
            for (std::size_t i = 1; i < r.roots.size(); ++i) {
                bool between = false;
                for (Real c : cps) between = between || (c > r.roots[i - 1] && c < r.roots[i]);
                CHECK(between);
            }
        }
    }
    CHECK(multi > 0);
}

TEST_CASE("best level and turning values") {
    const GProblem gc = make_g_problem({1, -1, -2}, {1, -1, 1}, {1, 1, 1});
    const LevelChoice lc = best_level(gc);
    CHECK(lc.count == find_roots(gc, lc.level).roots.size());
    const OracleScan scan = oracle_scan(gc);
    const std::vector<double> tv = oracle_turning_values(scan);
    for (double K : {-2.0, -0.5, 0.01, 0.3, 1.0, 4.0})
        CHECK(count_level_crossings(tv, K) == oracle_count(scan, K));
}

TEST_CASE("scan grid and bisection") {
    const std::vector<Real> grid = scan_grid(-1, INFINITY, 1, 1000);
    CHECK(grid.size() >= 1000);
    for (std::size_t i = 1; i < grid.size(); ++i) CHECK(grid[i] > grid[i - 1]);
    CHECK(grid.front() > -1);
    CHECK(grid.back() > 1e6L);
    const Real r = bisect([](Real x) { return x * x - 2; }, 0, 2);
    CHECK(std::fabs(r - std::sqrt(2.0L)) < 1e-17L);
}
