#include <catch2/catch_amalgamated.hpp>

#include "cantor/measure.hpp"

using namespace cantor;

namespace {

std::vector<RationalInterval> single(const Rational& lo, const Rational& hi) {
    return {RationalInterval{lo, hi, IntervalKind::retained}};
}

}  // namespace

TEST_CASE("hausdorff_measure_estimate: whole set has measure 1 at every level") {
    auto spec = triadic_spec();
    auto rep = hausdorff_measure_estimate(spec, whole_set_target(), 10);
    REQUIRE(rep.cover_count == Integer(1024));
    REQUIRE(rep.mu_s_sum == Rational(1));
}

TEST_CASE("hausdorff_measure_estimate: F11 = [0,1/3] carries half the measure") {
    auto spec = triadic_spec();
    // canonical-cover count oracle: 2^4 level-5 intervals of na-diameter 2^-5
    auto rep = hausdorff_measure_estimate(spec, single(Rational(0), Rational(1, 3)), 5);
    REQUIRE(rep.cover_count == Integer(16));
    REQUIRE(rep.mu_s_sum == Rational(1, 2));
}

TEST_CASE("measure estimates: empty target") {
    auto spec = triadic_spec();
    auto rep = hausdorff_measure_estimate(spec, {}, 4);
    REQUIRE(rep.mu_s_sum == Rational(0));
    auto repv = valued_measure_estimate(spec, {}, 4);
    REQUIRE(repv.mu_v_sum == Rational(0));
}

TEST_CASE("valued_measure_estimate: equals the s-measure exactly") {
    auto spec = triadic_spec();
    for (int n = 1; n <= 12; ++n) {
        auto rep = valued_measure_estimate(spec, whole_set_target(), n);
        REQUIRE(rep.mu_v_sum == Rational(1));
        auto hs = hausdorff_measure_estimate(spec, whole_set_target(), n);
        REQUIRE(rep.mu_v_sum == hs.mu_s_sum);
    }
    auto f20 = valued_measure_estimate(spec, single(Rational(0), Rational(1, 9)), 6);
    REQUIRE(f20.mu_v_sum == Rational(1, 4));
}

TEST_CASE("measure: non-canonical target rejected") {
    auto spec = triadic_spec();
    REQUIRE_THROWS_AS(hausdorff_measure_estimate(spec, single(Rational(1, 3), Rational(2, 3)), 4),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(hausdorff_measure_estimate(spec, single(Rational(0), Rational(1, 2)), 4),
                      std::invalid_argument);
    // target finer than the cover level
    REQUIRE_THROWS_AS(hausdorff_measure_estimate(spec, single(Rational(0), Rational(1, 27)), 2),
                      std::invalid_argument);
}

TEST_CASE("measure: monotone in the target") {
    auto spec = triadic_spec();
    auto small = hausdorff_measure_estimate(spec, single(Rational(0), Rational(1, 9)), 6);
    auto big = hausdorff_measure_estimate(spec, single(Rational(0), Rational(1, 3)), 6);
    REQUIRE(small.mu_s_sum < big.mu_s_sum);
}

TEST_CASE("cover elements: d_na <= d^s, here with equality") {
    auto spec = triadic_spec();
    auto rep = valued_measure_estimate(spec, whole_set_target(), 6);
    const Real s = rep.s_used.value();
    for (const auto& el : rep.cover) {
        REQUIRE(el.euclid_diameter == el.interval.length());
        REQUIRE(el.scale_used == el.euclid_diameter);
        Real ds = real_pow(to_real(el.euclid_diameter), s);
        REQUIRE(to_real(el.na_diameter) <= ds + Real("1e-40"));
        REQUIRE(abs(to_real(el.na_diameter) - ds) < Real("1e-40"));
    }
}

TEST_CASE("measure_convergence_table: ratio is exactly 1") {
    auto spec = triadic_spec();
    auto rows = measure_convergence_table(spec, whole_set_target(), 8);
    REQUIRE(rows.size() == 8);
    for (const auto& row : rows) {
        REQUIRE(row.mu_s == Rational(1));
        REQUIRE(row.mu_v == Rational(1));
        REQUIRE(row.ratio == Rational(1));
    }

    auto quintic_rows = measure_convergence_table(make_spec(3, 2, 5), whole_set_target(), 6);
    for (const auto& row : quintic_rows) REQUIRE(row.ratio == Rational(1));
}

TEST_CASE("exponent_level_sums: dimension selection") {
    auto spec = triadic_spec();
    const Real s = hausdorff_dimension(spec).value();

    auto low = exponent_level_sums(spec, s - Real("0.05"), 10);
    for (std::size_t i = 1; i < low.size(); ++i) REQUIRE(low[i] > low[i - 1]);

    auto high = exponent_level_sums(spec, s + Real("0.05"), 10);
    for (std::size_t i = 1; i < high.size(); ++i) REQUIRE(high[i] < high[i - 1]);

    auto exact = exponent_level_sums(spec, s, 10);
    for (const Real& v : exact) REQUIRE(abs(v - 1) < Real("1e-38"));
}

TEST_CASE("measure: resource cap") {
    auto spec = triadic_spec();
    REQUIRE_THROWS_AS(hausdorff_measure_estimate(spec, whole_set_target(), 10, 100),
                      resource_error);
}
