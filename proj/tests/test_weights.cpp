#include <doctest.h>

#include <cmath>

#include "wpdo/weights.hpp"

using namespace wpdo;

TEST_CASE("built-in weight evaluation") {
    const WeightFunction w = bracket_weight();
    CHECK(w(0) == doctest::Approx(1.0));
    CHECK(w(3) == doctest::Approx(std::sqrt(10.0)));
    CHECK(even_power_weight(2)(2) == doctest::Approx(std::pow(17.0, 0.25)));
    CHECK(constant_weight()(12345) == 1.0);
}

TEST_CASE("growth verification") {
    SUBCASE("bracket weight: tightest constants on |k| <= 64") {
        const GrowthReport r = verify_growth(bracket_weight(), 64);
        CHECK(r.passed);
        CHECK(r.tight_C0 == doctest::Approx(1.0 / std::sqrt(2.0)));
        CHECK(r.tight_C1 == doctest::Approx(1.0));
    }
    SUBCASE("constant weight passes with C0 = C1 = 1") {
        const GrowthReport r = verify_growth(constant_weight(), 64);
        CHECK(r.passed);
        CHECK(r.tight_C0 == doctest::Approx(1.0));
        CHECK(r.tight_C1 == doctest::Approx(1.0));
    }
    SUBCASE("a decreasing weight fails its declared lower bound") {
        const WeightFunction bad(
            "decreasing", [](long k) { return 1.0 / (1.0 + std::abs(static_cast<double>(k))); },
            0.0, 0.0, 1.0, 0.5, 1.0);
        const GrowthReport r = verify_growth(bad, 64);
        CHECK_FALSE(r.passed);
        CHECK(std::abs(r.offending_k) > 0);
        CHECK_THROWS_AS(require_valid_weight(bad), Error);
    }
}

TEST_CASE("difference estimate constants") {
    const WeightFunction w = bracket_weight();
    SUBCASE("alpha = 1, gamma = 0 stays below 2 on |k| <= 64") {
        const DifferenceReport r = verify_difference_estimate(w, 1, 64);
        for (const auto& e : r.entries)
            if (e.alpha == 1 && e.gamma == 0) CHECK(e.constant <= 2.0);
    }
    SUBCASE("gamma = 1, alpha = 0: |k (Lambda(k+1)-Lambda(k))| / Lambda stays bounded") {
        const DifferenceReport r = verify_difference_estimate(w, 1, 64);
        bool seen = false;
        for (const auto& e : r.entries)
            if (e.alpha == 0 && e.gamma == 1) {
                seen = true;
                CHECK(e.constant < 2.0);
            }
        CHECK(seen);
    }
    SUBCASE("constant weight has vanishing differences") {
        const DifferenceReport r = verify_difference_estimate(constant_weight(), 2, 32);
        for (const auto& e : r.entries) CHECK(e.constant == 0.0);
    }
}

TEST_CASE("telescoping identity of the forward difference") {
    const WeightFunction w = even_power_weight(3);
    for (long a : {-17L, -3L, 4L}) {
        const long b = a + 23;
        double sum = 0.0;
        for (long j = a; j < b; ++j) sum += weight_forward_difference(w, j, 1);
        CHECK(sum == doctest::Approx(w(b) - w(a)).epsilon(1e-12));
    }
}

TEST_CASE("growth verification is stable across doubling windows for the bracket") {
    for (long K : {64L, 128L, 256L}) {
        const GrowthReport r = verify_growth(bracket_weight(), K);
        CHECK(r.passed);
    }
}

TEST_CASE("table weights evaluate and clamp their windows") {
    std::map<long, double> vals;
    for (long k = -20; k <= 20; ++k) vals[k] = std::sqrt(1.0 + k * k);
    const WeightFunction w = table_weight(vals, 1.0, 1.0, 1.0, 1.0 / std::sqrt(2.0), 1.0);
    CHECK(w(3) == doctest::Approx(std::sqrt(10.0)));
    CHECK(w.domain_radius() == 20);
    CHECK_THROWS_AS((void)w(21), Error);
    CHECK(verify_growth(w, 64).passed);  // window clamps to the table
    CHECK_NOTHROW(require_valid_weight(w));
}
