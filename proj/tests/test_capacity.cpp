#include <doctest.h>

#include <cmath>

#include "relcap/capacity.hpp"

using namespace relcap;

TEST_CASE("weighted fit recovers an exact line") {
  const std::vector<double> xs{0.4, 0.2, 0.1, 0.05};
  std::vector<double> x;
  std::vector<double> y;
  for (const double v : xs) {
    x.push_back(1.0);
    x.push_back(v);
    y.push_back(2.0 + 3.0 * v);
  }
  std::vector<double> cov(16, 0.0);
  for (int i = 0; i < 4; ++i) cov[i * 4 + i] = 1e-4;
  const LinearFit fit = weighted_fit(x, 2, y, cov);
  CHECK(fit.coef[0] == doctest::Approx(2.0));
  CHECK(fit.coef[1] == doctest::Approx(3.0));
  CHECK(fit.reduced_chi == doctest::Approx(0.0).epsilon(1e-6));
  CHECK(fit.coef_cov[0] > 0.0);
  CHECK_THROWS_AS(weighted_fit({1.0}, 2, {1.0}, {1.0}), ValidationError);
}

TEST_CASE("weighted fit propagates correlated noise") {
  // Two equal observations of one constant with full correlation carry no
  // more information than one.
  const LinearFit fit = weighted_fit({1.0, 1.0}, 1, {5.0, 5.0}, {0.25, 0.25, 0.25, 0.25});
  CHECK(fit.coef[0] == doctest::Approx(5.0));
  CHECK(fit.coef_cov[0] == doctest::Approx(0.25).epsilon(1e-6));
}

TEST_CASE("approach ladders") {
  const ApproachPath p = ApproachPath::geometric(ApproachKind::kRealAxisToOne, 0.1, 0.5, 4);
  CHECK(p.offsets == std::vector<double>{0.1, 0.05, 0.025, 0.0125});
  CHECK_THROWS_AS(ApproachPath::geometric(ApproachKind::kRealAxisToOne, 0.1, 1.5, 4),
                  ValidationError);
  ApproachPath bad;
  bad.offsets = {0.1, 0.2};
  CHECK_THROWS_AS(bad.validate(), ValidationError);
  const ApproachPath d = default_disk_ladder(Region({Disk{{0.0, 0.0}, 0.9}}));
  CHECK(d.offsets.front() == doctest::Approx(0.05));
  CHECK(d.offsets.size() == 5);
  CHECK_THROWS_AS(default_disk_ladder(Region({Segment{{0.0, 0.0}, {1.0, 0.0}}})),
                  ValidationError);
}

TEST_CASE("hcap of the slit [0, i]") {
  const Region slit({Segment{{0.0, 0.0}, {0.0, 1.0}}});
  const CapacityEstimate c = hcap_estimate(slit, {5.0, 10.0, 20.0}, 20000, 21);
  CHECK(std::abs(c.value - 0.5) < std::max(0.05, 4.0 * c.std_error));
  CHECK(c.offsets_used.size() == 3);
  CHECK_THROWS_AS(hcap_estimate(slit, {1.5, 10.0}, 1000, 1), ValidationError);
  CHECK_THROWS_AS(hcap_estimate(slit, {5.0}, 1000, 1), ValidationError);
}

TEST_CASE("hcap of the empty set is zero") {
  const CapacityEstimate c = hcap_estimate(Region(), {5.0, 10.0}, 2000, 1);
  CHECK(c.value == doctest::Approx(0.0));
}

TEST_CASE("relcap of the left half-disk") {
  Polygon wedge;
  wedge.vertices.push_back({0.0, 0.0});
  for (int k = 0; k <= 16; ++k) {
    wedge.vertices.push_back(std::polar(2.0, kPi / 2 + kPi * k / 16));
  }
  const Region e({wedge});
  const CapacityEstimate c = relcap_estimate(e, default_disk_ladder(e), 20000, 5);
  CHECK(std::abs(c.value - 0.25) < std::max(0.0125, 4.0 * c.std_error));
  CHECK_FALSE(c.negative_flag);
  CHECK(c.raw.size() == 5);
}

TEST_CASE("relcap of a far set is small and the empty set is zero") {
  const Region far({Disk{{-0.8, 0.0}, 0.1}});
  const CapacityEstimate c = relcap_estimate(far, default_disk_ladder(far), 10000, 6);
  CHECK(c.value < 0.02);
  const CapacityEstimate z = relcap_estimate(Region(), default_disk_ladder(Region()), 2000, 6);
  CHECK(z.value == doctest::Approx(0.0));
}

TEST_CASE("relcap rejects ladders that meet E") {
  const Region e({Segment{{0.5, 0.0}, {0.95, 0.0}}});
  const ApproachPath p = ApproachPath::geometric(ApproachKind::kRealAxisToOne, 0.2, 0.5, 3);
  CHECK_THROWS_AS(relcap_estimate(e, p, 1000, 1), ValidationError);
}

TEST_CASE("moebius transport scales value and error") {
  CapacityEstimate c;
  c.value = 0.5;
  c.std_error = 0.01;
  const CapacityEstimate a = mobius_transport(c, TransportRule::kInfinityScaling, {0.0, 2.0});
  CHECK(a.value == doctest::Approx(2.0));
  CHECK(a.std_error == doctest::Approx(0.04));
  const CapacityEstimate b = mobius_transport(c, TransportRule::kFiniteDerivative, {2.0, 0.0});
  CHECK(b.value == doctest::Approx(0.125));
  CHECK_THROWS_AS(mobius_transport(c, TransportRule::kFiniteDerivative, {0.0, 0.0}),
                  ValidationError);
}

TEST_CASE("cayley map and disk images") {
  CHECK(std::abs(cayley({0.0, 0.0}) - Point{0.0, 1.0}) < 1e-15);
  CHECK(std::abs(cayley({-1.0, 0.0})) < 1e-15);
  CHECK(std::abs(cayley({0.0, 1.0}) - Point{-1.0, 0.0}) < 1e-15);

  const Disk d{{-0.4, 0.3}, 0.25};
  const HalfPlaneImage img = disk_to_halfplane_image(Region({d}), 64);
  const Disk& im = std::get<Disk>(img.region.primitives().front());
  for (int k = 0; k < 32; ++k) {
    const Point w = cayley(d.center + std::polar(d.radius, 2.0 * kPi * k / 32));
    CHECK(std::abs(std::abs(w - im.center) - im.radius) < 1e-12);
  }
  CHECK(img.hausdorff_error == 0.0);
  CHECK(im.center.imag() > im.radius);

  const HalfPlaneImage seg = disk_to_halfplane_image(Region({Segment{{-0.5, 0.0}, {0.5, 0.0}}}), 8);
  CHECK(seg.region.primitives().size() == 8);
  CHECK_THROWS_AS(disk_to_halfplane_image(Region({Disk{{0.9, 0.0}, 0.2}})), ValidationError);
  CHECK_THROWS_AS(disk_to_halfplane_image(Region({Sigma{}})), ValidationError);
}
