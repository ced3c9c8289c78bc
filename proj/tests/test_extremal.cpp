#include <doctest.h>

#include <cmath>

#include "relcap/extremal.hpp"

using namespace relcap;

namespace {

const std::vector<MapSpec>& sweep() {
  static const std::vector<MapSpec> specs = {
      MapSpec::sector(kPi / 2),   MapSpec::sector(kPi),      MapSpec::sector(1.5 * kPi),
      MapSpec::sector(2 * kPi - 0.1), MapSpec::pick(0.1),    MapSpec::pick(1.0 / 3.0),
      MapSpec::pick(0.9),         MapSpec::two_slit(0.1),    MapSpec::two_slit(0.5),
      MapSpec::two_slit(0.9)};
  return specs;
}

}  // namespace

TEST_CASE("map values at the centre") {
  CHECK(std::abs(evaluate_map(MapSpec::sector(kPi), {0.0, 0.0}) - Point(std::sqrt(2.0) - 1.0)) <
        1e-14);
  CHECK(std::abs(evaluate_map(MapSpec::pick(0.3), {0.0, 0.0})) < 1e-15);
  CHECK(std::abs(evaluate_map(MapSpec::two_slit(0.3), {0.0, 0.0})) < 1e-15);
  for (const MapSpec& spec : sweep()) {
    CHECK(std::abs(evaluate_map(spec, {1.0 - 1e-10, 0.0}) - Point(1.0)) < 1e-9);
    CHECK_THROWS_AS(evaluate_map(spec, {1.0, 0.0}), ValidationError);
  }
}

TEST_CASE("invalid parameters") {
  CHECK_THROWS_AS(MapSpec::sector(0.0).validate(), ValidationError);
  CHECK_THROWS_AS(MapSpec::sector(2 * kPi).validate(), ValidationError);
  CHECK_THROWS_AS(MapSpec::pick(1.0).validate(), ValidationError);
  CHECK_THROWS_AS(MapSpec::two_slit(-0.1).validate(), ValidationError);
  CHECK(parse_map_kind("two-slit") == MapKind::kTwoSlit);
  CHECK_THROWS(parse_map_kind("koebe"));
}

TEST_CASE("maps send the disk into itself and miss the omitted set") {
  for (const MapSpec& spec : sweep()) {
    const Region omitted = omitted_set(spec);
    for (int k = 0; k < 64; ++k) {
      const Point z = std::polar(0.97 * std::sqrt((k + 0.5) / 64.0), 2.4 * k);
      const Point w = evaluate_map(spec, z);
      CHECK(std::abs(w) < 1.0);
      CHECK(omitted.distance(w) > 0.0);
    }
  }
}

TEST_CASE("defining equations hold along the radius") {
  for (const MapSpec& spec : sweep()) {
    for (int k = 0; k <= 100; ++k) {
      const double x = 0.999 * k / 100.0;
      const Point w = evaluate_map(spec, {x, 0.0});
      CHECK(defining_equation_residual(spec, {x, 0.0}, w) < 1e-10);
      CHECK(w.real() > -1e-15);
    }
  }
}

TEST_CASE("analytic and numeric jets agree") {
  for (const MapSpec& spec : sweep()) {
    const TaylorJet a = analytic_jet(spec);
    const NumericJet n = numeric_jet(spec, default_jet_steps(spec));
    CAPTURE(spec.name());
    CHECK(a.a1 > 0.0);
    CHECK(std::abs(a.a1 - n.jet.a1) < 1e-6);
    CHECK(std::abs(a.a2 - n.jet.a2) < 1e-6);
    CHECK(std::abs(a.a3 - n.jet.a3) < 1e-6);
    CHECK(std::abs(class_b_residual(a)) < 1e-8);
    CHECK(std::abs(schwarzian_at_one(a).imag()) < 1e-8);
  }
  CHECK_THROWS_AS(numeric_jet(MapSpec::pick(0.5), {0.1, 0.05}), ValidationError);
}

TEST_CASE("half-disk map jet from its closed form") {
  // f(1 + s) = (s + 2 sqrt(1 + s + s^2/2)) / (2 + s); expand by hand to third order.
  // sqrt(1 + s + s^2/2) = 1 + s/2 + s^2/8 - s^3/16 + ...
  // numerator 2 + 2s + s^2/4 - s^3/8, times 1/(2+s) = (1/2)(1 - s/2 + s^2/4 - s^3/8),
  // so f = 1 + s/2 - s^2/8 + 0 s^3
  const TaylorJet jet = analytic_jet(MapSpec::sector(kPi));
  CHECK(jet.a1 == doctest::Approx(0.5));
  CHECK(jet.a2.real() == doctest::Approx(-0.125));
  CHECK(std::abs(jet.a3) < 1e-14);
  CHECK(extremal_relcap(jet) == doctest::Approx(0.25));
}

TEST_CASE("sector Schwarzian follows from the chain rule") {
  // f = g^p with g the half-disk map and p = alpha/pi:
  // Re S_f(1)/f'(1)^2 = -1/2 - 1/p^2.
  for (const double alpha : {kPi / 2, kPi, 1.5 * kPi, 2 * kPi - 0.1}) {
    const TaylorJet jet = analytic_jet(MapSpec::sector(alpha));
    const double p = alpha / kPi;
    CHECK(jet.a1 == doctest::Approx(0.5 * p));
    CHECK(schwarzian_at_one(jet).real() / (jet.a1 * jet.a1) ==
          doctest::Approx(-0.5 - 1.0 / (p * p)).epsilon(1e-12));
  }
}

TEST_CASE("Pick and two-slit Schwarzians") {
  for (const double rho : {0.1, 1.0 / 3.0, 0.9}) {
    const TaylorJet jet = analytic_jet(MapSpec::pick(rho));
    const double q = (1.0 - rho) / (1.0 + rho);
    CHECK(schwarzian_at_one(jet).real() / (jet.a1 * jet.a1) ==
          doctest::Approx(-0.75 * q * q).epsilon(1e-12));
  }
  for (const double t : {0.1, 0.5, 0.9}) {
    const TaylorJet jet = analytic_jet(MapSpec::two_slit(t));
    const double q = (1.0 - t * t) / (1.0 + t * t);
    CHECK(schwarzian_at_one(jet).real() / (jet.a1 * jet.a1) ==
          doctest::Approx(-1.5 * q * q).epsilon(1e-12));
  }
  // Pick with rho -> 0 meets the sector family as alpha -> 2 pi
  const TaylorJet pick = analytic_jet(MapSpec::pick(1e-9));
  CHECK(schwarzian_at_one(pick).real() / (pick.a1 * pick.a1) == doctest::Approx(-0.75));
  const TaylorJet sec = analytic_jet(MapSpec::sector(2 * kPi - 1e-9));
  CHECK(schwarzian_at_one(sec).real() / (sec.a1 * sec.a1) == doctest::Approx(-0.75));
}

TEST_CASE("class B arithmetic") {
  CHECK(class_b_residual(TaylorJet{1.0, {}, {}}) == 0.0);
  CHECK(class_b_residual(TaylorJet{2.0, 1.0, 0.0}) == 0.0);
  CHECK(class_b_residual(TaylorJet{2.0, 2.0, 0.0}) == doctest::Approx(2.0));
  CHECK(std::abs(schwarzian_at_one(TaylorJet{1.0, {}, {}})) == 0.0);
}

TEST_CASE("bound check") {
  const TaylorJet jet = analytic_jet(MapSpec::sector(kPi));
  CapacityEstimate est;
  est.value = 0.25;
  est.std_error = 0.001;
  SchwarzianCheck c = schwarzian_bound_check(jet, est);
  CHECK(c.pass);
  CHECK(c.equality);
  CHECK(c.lhs == doctest::Approx(0.0625));
  est.value = 0.1;
  c = schwarzian_bound_check(jet, est);
  CHECK(c.pass);
  CHECK_FALSE(c.equality);
  est.value = 0.4;
  c = schwarzian_bound_check(jet, est);
  CHECK_FALSE(c.pass);
}

TEST_CASE("omitted sets") {
  const Region pick = omitted_set(MapSpec::pick(0.5));
  CHECK(pick.distance({-0.75, 0.0}) == doctest::Approx(0.0));
  CHECK(pick.distance({-0.25, 0.0}) == doctest::Approx(0.25));
  const Region slits = omitted_set(MapSpec::two_slit(0.5));
  CHECK(slits.distance({0.0, 0.75}) == doctest::Approx(0.0));
  CHECK(slits.distance({0.0, -0.75}) == doctest::Approx(0.0));
  CHECK(slits.distance({0.0, 0.0}) == doctest::Approx(0.5));
  const Region wedge = omitted_set(MapSpec::sector(kPi));
  CHECK(wedge.contains({-0.5, 0.3}));
  CHECK_FALSE(wedge.contains({0.5, 0.3}));
}
