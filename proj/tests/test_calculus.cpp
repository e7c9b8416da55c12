#include <cmath>
#include <random>

#include "doctest.h"
#include "fuzzy/calculus.hpp"
#include "fuzzy/convolve.hpp"
#include "fuzzy/cutcore.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"
#include "support/random_fixtures.hpp"

using namespace fuzzy;

namespace {

FuzzyNum shifted(const FuzzyNum& u, double r) {
    auto move = [r](const CutCurve& c) {
        std::vector<Segment> segs = c.segments();
        for (auto& s : segs) {
            s.expr = s.expr + Expr::constant(r);
            s.level_of.reset();
        }
        std::vector<double> pts = c.point_values();
        for (auto& p : pts) p += r;
        return CutCurve(segs, pts);
    };
    return FuzzyNum(move(u.left()), move(u.right()));
}

std::vector<double> branch_points(const FuzzyNum& fz) {
    std::vector<double> xs;
    for (const auto& p : classify_points(fz))
        if (p.branch != Branch::core_endpoint) xs.push_back(p.x);
    return xs;
}

}  // namespace

TEST_CASE("slopes of the parabola vertex") {
    auto w = fixtures::parabola(1).fz;
    CHECK(left_deriv(w, 0).value == 0);
    CHECK(right_deriv(w, 0).value == 0);
    CHECK(numeric_slope(w, 0, Side::left).value == doctest::Approx(0).epsilon(1e-9));
    CHECK(left_deriv(w, 0.5).value == doctest::Approx(-1).epsilon(1e-12));
}

TEST_CASE("one-sided slopes of the kinked number smoothed by w1") {
    auto uw = convolve(fixtures::eapnd().fz, fixtures::parabola(1).fz);
    const double x = -std::sqrt(0.5);
    // Cut of the sum near level 0.5: (a - 0.5) - sqrt(1 - a) below, (2a - 1) - sqrt(1 - a) above.
    // Slopes are reciprocals of the cut derivatives at a = 0.5.
    const double d_below = 1 + 0.5 / std::sqrt(0.5);
    const double d_above = 2 + 0.5 / std::sqrt(0.5);
    CHECK(std::fabs(left_deriv(uw, x).value - 1 / d_below) <= 1e-9);
    CHECK(std::fabs(right_deriv(uw, x).value - 1 / d_above) <= 1e-9);
    CHECK(std::fabs(left_deriv(uw, x).value - (2 - std::sqrt(2.0))) <= 1e-9);
    CHECK(std::fabs(numeric_slope(uw, x, Side::left).value - 1 / d_below) <= 1e-6);
    CHECK(std::fabs(numeric_slope(uw, x, Side::right).value - 1 / d_above) <= 1e-6);
}

TEST_CASE("jumps and plateaus give extended slopes") {
    auto u = fixtures::eapnc().fz;
    CHECK(right_deriv(u, 2.5).value == -INFINITY);
    CHECK(left_deriv(u, 2.5).value == doctest::Approx(-1));
    auto s = fixtures::unsm().fz;
    CHECK(left_deriv(s, -0.75).value == 0);
    CHECK(right_deriv(s, -0.5).value == doctest::Approx(0));
}

TEST_CASE("classify_points on reference numbers") {
    SUBCASE("kink") {
        auto pts = classify_points(fixtures::eapnd().fz);
        REQUIRE(branch_points(fixtures::eapnd().fz).size() == 1);
        const auto& p = pts.front();
        CHECK(p.x == doctest::Approx(0).epsilon(1e-12));
        CHECK(p.kind == PointKind::kink);
        CHECK(p.branch == Branch::left);
        CHECK(p.level == doctest::Approx(0.5));
    }
    SUBCASE("jump") {
        const auto pts = classify_points(fixtures::eapnc().fz);
        const SingularPoint* jump = nullptr;
        for (const auto& p : pts)
            if (p.branch == Branch::right) jump = &p;
        REQUIRE(jump != nullptr);
        CHECK(jump->kind == PointKind::jump);
        CHECK(jump->x == doctest::Approx(2.5));
        CHECK(jump->level == doctest::Approx(0.5));
        CHECK(jump->right_limit == doctest::Approx(0.3));
        CHECK(branch_points(fixtures::eapnc().fz).size() == 1);
    }
    SUBCASE("smooth numbers") {
        CHECK(classify_points(fixtures::parabola(1).fz).empty());
        CHECK(classify_points(fixtures::parabola(0.25).fz).empty());
    }
    SUBCASE("singular sets of the five reference numbers") {
        // Hand-derived from the membership formulas.
        CHECK(branch_points(fixtures::triangular().fz).empty());
        // Shoulder pieces meet the plateaus with zero slope on both sides.
        CHECK(branch_points(fixtures::unsm().fz).empty());
        CHECK(branch_points(fixtures::eapcn().fz).empty());
        auto d = branch_points(fixtures::eapnd().fz);
        REQUIRE(d.size() == 1);
        CHECK(std::fabs(d[0]) <= 1e-12);
        auto c = branch_points(fixtures::eapnc().fz);
        REQUIRE(c.size() == 1);
        CHECK(c[0] == doctest::Approx(2.5));
    }
}

TEST_CASE("class flags") {
    auto f = class_membership(fixtures::unsm().fz);
    CHECK(f.in_FN);
    CHECK(f.in_FC);
    CHECK_FALSE(f.in_FT);
    CHECK_FALSE(f.in_FD);
    f = class_membership(fixtures::eapcn().fz);
    CHECK(f.in_FT);
    CHECK(f.in_FN);
    CHECK_FALSE(f.in_FC);
    for (double p : {0.1, 1.0, 4.0}) {
        f = class_membership(fixtures::parabola(p).fz);
        CHECK(f.in_FT);
        CHECK(f.in_FN);
        CHECK(f.in_FC);
        CHECK(f.in_FD);
    }
    f = class_membership(fixtures::eapnd().fz);
    CHECK(f.in_FC);
    CHECK_FALSE(f.in_FN);
    f = class_membership(fixtures::eapnc().fz);
    CHECK_FALSE(f.in_FC);
}

TEST_CASE("sup_metric") {
    auto u = fixtures::unsm().fz;
    auto m = sup_metric(u, u);
    CHECK(m.value == 0);
    for (double r : {0.25, -1.5, 3.0}) {
        auto v = shifted(u, r);
        auto d = sup_metric(u, v);
        double grid = oracles::grid_metric(u, v, 10001);
        CHECK(std::fabs(d.value - std::fabs(r)) <= d.certified_gap + 1e-12);
        CHECK(std::fabs(d.value - grid) <= 1e-12);
    }
    auto w = fixtures::parabola(1).fz;
    auto t = fixtures::triangular().fz;
    auto d = sup_metric(w, t);
    // max over a of sqrt(1-a) - (1-a), attained at 1 - a = 1/4.
    CHECK(std::fabs(d.value - 0.25) <= d.certified_gap + 1e-12);
}

TEST_CASE("sup_metric is symmetric and satisfies the triangle inequality") {
    std::vector<FuzzyNum> pool;
    for (auto& ex : fixtures::all_examples()) pool.push_back(ex.fz);
    for (auto& fz : fixtures::random_numbers(8, 31)) pool.push_back(fz);
    const std::size_t n = pool.size();
    std::vector<std::vector<MetricResult>> d(n, std::vector<MetricResult>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) d[i][j] = sup_metric(pool[i], pool[j]);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            CHECK(d[i][j].value == d[j][i].value);
            // The grid maximum can only undershoot the supremum.
            double grid = oracles::grid_metric(pool[i], pool[j], 2001);
            CHECK(grid <= d[i][j].value + d[i][j].certified_gap + 1e-15);
            CHECK(d[i][j].value <= grid + 1e-2);
            for (std::size_t k = 0; k < n; ++k) {
                double slack = 2 * std::max({d[i][k].certified_gap, d[i][j].certified_gap, d[j][k].certified_gap});
                CHECK(d[i][k].value <= d[i][j].value + d[j][k].value + slack);
            }
        }
    }
}

TEST_CASE("lipschitz_estimate") {
    CHECK(lipschitz_estimate(fixtures::triangular().fz) == doctest::Approx(1).epsilon(1e-12));
    for (double p : {0.25, 1.0, 2.0}) CHECK(lipschitz_estimate(fixtures::parabola(p).fz) == doctest::Approx(2 / p).epsilon(1e-9));
    CHECK(std::isinf(lipschitz_estimate(fixtures::eapnc().fz)));
    CHECK(lipschitz_estimate(crisp(2)) == 0);
}

TEST_CASE("lipschitz estimate equals the cut-pair ratio bound on continuous numbers") {
    std::vector<FuzzyNum> pool;
    for (auto& ex : fixtures::all_examples()) pool.push_back(ex.fz);
    for (auto& fz : fixtures::random_numbers(50, 77)) pool.push_back(fz);
    int checked = 0;
    for (const auto& fz : pool) {
        if (!class_membership(fz).in_FC || fz.degenerate()) continue;
        ++checked;
        double k = lipschitz_estimate(fz);
        double oracle = oracles::cut_pair_lipschitz(fz);
        if (std::isinf(k)) {
            // Vertical tangent: secant ratios grow without bound as the pair shrinks.
            CHECK(oracle > 1e4);
            continue;
        }
        CHECK(std::fabs(k - oracle) <= 1e-9 * std::max(1.0, k));
    }
    CHECK(checked >= 10);
}

TEST_CASE("symbolic and numeric slopes agree wherever the symbolic slope is finite") {
    std::vector<FuzzyNum> pool;
    for (auto& ex : fixtures::all_examples()) pool.push_back(ex.fz);
    for (auto& fz : fixtures::random_numbers(50, 4242)) pool.push_back(fz);
    std::mt19937 rng(3);
    for (const auto& fz : pool) {
        Interval s = fz.support();
        if (!(s.hi > s.lo)) continue;
        std::uniform_real_distribution<double> pick(s.lo, s.hi);
        for (int k = 0; k < 200; ++k) {
            double x = pick(rng);
            for (Side side : {Side::left, Side::right}) {
                ExtendedSlope sym = symbolic_slope(fz, x, side);
                if (!sym.finite()) continue;
                ExtendedSlope num = numeric_slope(fz, x, side);
                INFO("x = " << x);
                CHECK(std::fabs(sym.value - num.value) <= 1e-6 * (1 + std::fabs(sym.value)));
            }
        }
    }
}

TEST_CASE("cut continuity is equality with the strong cut endpoint") {
    std::vector<FuzzyNum> pool;
    for (auto& ex : fixtures::all_examples()) pool.push_back(ex.fz);
    for (auto& fz : fixtures::random_numbers(50, 9)) pool.push_back(fz);
    for (const auto& fz : pool) {
        for (double b : fz.left().breakpoints()) {
            bool cont = fz.left().left_limit(b) == doctest::Approx(fz.left().right_limit(b)).epsilon(1e-12);
            bool same = alpha_cut(fz, b).lo == doctest::Approx(strong_cut(fz, b).lo).epsilon(1e-12);
            CHECK(cont == same);
        }
        for (double b : fz.right().breakpoints()) {
            bool cont = fz.right().left_limit(b) == doctest::Approx(fz.right().right_limit(b)).epsilon(1e-12);
            bool same = alpha_cut(fz, b).hi == doctest::Approx(strong_cut(fz, b).hi).epsilon(1e-12);
            CHECK(cont == same);
        }
    }
}
