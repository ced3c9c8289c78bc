#include <doctest.h>

#include <cmath>

#include "relcap/symmetrize.hpp"

using namespace relcap;

namespace {

PolarRaster empty_polar(int rings, int sectors) {
  PolarRaster p;
  p.center = {0.0, 0.0};
  for (int i = 0; i <= rings; ++i) p.r_edges.push_back(static_cast<double>(i) / rings);
  p.theta_count = sectors;
  p.cells.assign(static_cast<std::size_t>(rings) * sectors, 0);
  return p;
}

CartesianMask empty_mask(int n) {
  return CartesianMask{Box{-1.0, -1.0, 1.0, 1.0}, n, n,
                       std::vector<std::uint8_t>(static_cast<std::size_t>(n) * n, 0)};
}

int ring_count(const PolarRaster& p, int ring) {
  int c = 0;
  for (int j = 0; j < p.theta_count; ++j) c += p.at(ring, j) ? 1 : 0;
  return c;
}

}  // namespace

TEST_CASE("circular symmetrization keeps ring measure and centres the block") {
  PolarRaster p = empty_polar(2, 16);
  p.set(0, 0, true);
  p.set(0, 3, true);
  p.set(0, 9, true);
  p.set(1, 1, true);
  p.set(1, 2, true);
  const PolarRaster m = circular_symmetrize(p, CrDirection::kMinus);
  CHECK(ring_count(m, 0) == 3);
  CHECK(ring_count(m, 1) == 2);
  // odd block: the extra cell goes toward increasing angle
  CHECK(m.at(0, 7));
  CHECK(m.at(0, 8));
  CHECK(m.at(0, 9));
  CHECK(m.at(1, 7));
  CHECK(m.at(1, 8));
  const PolarRaster plus = circular_symmetrize(p, CrDirection::kPlus);
  CHECK(plus.at(1, 15));
  CHECK(plus.at(1, 0));
  CHECK(circular_symmetrize(m, CrDirection::kMinus).cells == m.cells);
}

TEST_CASE("steiner symmetrization keeps column measure") {
  CartesianMask m = empty_mask(8);
  m.set(2, 0, true);
  m.set(2, 7, true);
  m.set(5, 6, true);
  const CartesianMask s = steiner_symmetrize(m);
  CHECK(s.occupied() == 3);
  CHECK(s.at(2, 3));
  CHECK(s.at(2, 4));
  CHECK(s.at(5, 4));
  CHECK(steiner_symmetrize(s).cells == s.cells);
  CartesianMask lopsided{Box{-1.0, -0.5, 1.0, 1.0}, 4, 4, std::vector<std::uint8_t>(16, 0)};
  CHECK_THROWS_AS(steiner_symmetrize(lopsided), ValidationError);
}

TEST_CASE("polarization moves mass to the right and keeps measure") {
  CartesianMask m = empty_mask(8);
  m.set(1, 2, true);  // left only: moves right
  m.set(6, 5, true);  // right only: stays
  m.set(0, 0, true);
  m.set(7, 0, true);  // mirrored pair: stays
  const CartesianMask p = polarize(m);
  CHECK(p.occupied() == m.occupied());
  CHECK(p.at(6, 2));
  CHECK_FALSE(p.at(1, 2));
  CHECK(p.at(6, 5));
  CHECK(p.at(0, 0));
  CHECK(p.at(7, 0));
  CHECK(polarize(p).cells == p.cells);
}

TEST_CASE("composition halves are symmetric") {
  CartesianMask m = empty_mask(8);
  m.set(1, 2, true);
  m.set(6, 5, true);
  const auto [plus, minus] = compose_halves(m);
  CHECK(plus.at(6, 5));
  CHECK(plus.at(1, 5));
  CHECK(plus.occupied() == 2);
  CHECK(minus.at(1, 2));
  CHECK(minus.at(6, 2));
  CHECK(minus.occupied() == 2);
}

TEST_CASE("marcus transformation of a centred disk is the disk") {
  const Region d({Disk{{0.0, 0.0}, 0.5}});
  const PolarRaster p = rasterize_polar(d, {0.0, 0.0}, 1.0, 8, 32);
  const RadialProfile m = marcus_radial(p, false);
  for (const double v : m.m_values) CHECK(v == doctest::Approx(0.5));
}

TEST_CASE("marcus keeps the logarithmic measure of each ray") {
  PolarRaster p = empty_polar(8, 8);
  p.r_edges = {0.0, 0.1, 0.2, 0.4, 0.8, 1.6, 3.2, 6.4, 12.8};
  for (int j = 0; j < 8; ++j) {
    p.set(0, j, true);
    p.set(1, j, true);
  }
  p.set(3, 0, true);  // extra [0.4, 0.8): log 2
  p.set(5, 0, true);  // extra [1.6, 3.2): log 2
  const RadialProfile m = marcus_radial(p, false);
  CHECK(m.m_values[0] == doctest::Approx(0.2 * 4.0));
  CHECK(m.m_values[1] == doctest::Approx(0.2));
  const RadialProfile m2 = marcus_radial(p, false, 0.1);
  CHECK(m2.m_values[0] == doctest::Approx(0.8));
  CHECK_THROWS_AS(marcus_radial(p, false, 0.3), ValidationError);
}

TEST_CASE("averaging uses a weighted geometric mean") {
  const PolarRaster a = rasterize_polar(Region({Disk{{0.0, 0.0}, 0.25}}), {0.0, 0.0}, 1.0, 8, 16);
  const PolarRaster b = rasterize_polar(Region({Disk{{0.0, 0.0}, 1.0}}), {0.0, 0.0}, 1.0, 8, 16);
  const RadialProfile r = averaging_transform({a, b}, AveragingSpec{{0.5, 0.5}}, false);
  for (const double v : r.m_values) CHECK(v == doctest::Approx(0.5));
  const AveragingSpec bad{{0.5, 0.6}};
  CHECK_THROWS_AS(bad.validate(), ValidationError);
  CHECK_THROWS_AS(averaging_transform({a}, AveragingSpec{{0.5, 0.5}}, false), ValidationError);
}

TEST_CASE("star and band regions") {
  RadialProfile prof;
  prof.center = {1.0, 0.0};
  prof.theta_count = 16;
  prof.m_values.assign(16, 0.5);
  const Region star = star_region(prof);
  CHECK(star.contains({0.7, 0.01}));
  CHECK_FALSE(star.contains({0.4, 0.01}));
  const Region band = chord_band_region(prof);
  CHECK(band.contains({-0.5, 0.01}));
  CHECK_FALSE(band.contains({0.7, 0.01}));
  CHECK(chord_length(kPi) == doctest::Approx(2.0));
  CHECK(chord_length(0.0) == 0.0);
}

TEST_CASE("sections and bands about 1") {
  PolarRaster q = empty_polar(4, 16);
  q.center = {1.0, 0.0};
  q.r_edges = {0.0, 0.5, 1.0, 1.5, 2.0};
  for (int j = 0; j < 16; ++j) q.set(1, j, true);
  q.set(2, 5, true);
  const std::vector<double> t = radial_log_sections(q);
  CHECK(t[7] == doctest::Approx(std::log(2.0)));
  CHECK(t[8] == doctest::Approx(std::log(2.0)));
  CHECK(t[0] == 0.0);
  CHECK(t[4] == 0.0);  // chord below the cell
  // the outer cell of sector 5 is cut at the circle
  const double c5 = chord_length(q.sector_mid(5));
  REQUIRE(c5 > 1.0);
  REQUIRE(c5 < 1.5);
  CHECK(t[5] == doctest::Approx(std::log(2.0) + std::log(c5)));
  const Region band = disk_band_from_sections(t, 16);
  CHECK(band.contains({-0.9, 0.02}));
  CHECK_FALSE(band.contains({0.2, 0.02}));
  CHECK_THROWS_AS(disk_band_from_sections(t, 8), ValidationError);
}

TEST_CASE("steiner complement keeps the column measure inside U") {
  CartesianMask m{Box{-1.0, -1.0, 1.0, 1.0}, 4, 4, std::vector<std::uint8_t>(16, 0)};
  m.set(1, 1, true);  // column x in [-0.5, 0), cell y in [-0.5, 0)
  const Region caps = steiner_complement_in_disk(m);
  const double xm = -0.25;
  const double c = std::sqrt(1.0 - xm * xm);
  CHECK(caps.contains({xm, c - 0.2}));
  CHECK_FALSE(caps.contains({xm, c - 0.3}));
  CHECK(caps.contains({xm, -(c - 0.2)}));
  CHECK_FALSE(caps.contains({0.25, 0.9}));
}

TEST_CASE("circular symmetrization with sigma") {
  const Region e({Disk{{0.3, 0.4}, 0.2}});
  const Region out = cr_sigma_transform(e, -0.5, CrDirection::kMinus, 64, 128);
  CHECK_FALSE(out.contains({0.3, 0.4}));
  // the ring of radius 0.9 about -0.5 carries Sigma's arc plus E's arc, so the
  // block spills into U on both sides of the real axis
  const Point p = Point{-0.5, 0.0} + std::polar(0.9, 1.4);
  CHECK(std::abs(p) < 1.0);
  CHECK(out.contains(p));
  CHECK(out.contains(std::conj(p)));
  CHECK_FALSE(out.contains({-0.2, 0.0}));
  CHECK(cr_sigma_transform(Region(), -0.5, CrDirection::kMinus, 64, 128).contains(p) == false);
}

TEST_CASE("lens polygons") {
  const Disk a{{0.0, 0.0}, 1.0};
  const Disk b{{1.0, 0.0}, 1.0};
  const std::optional<Polygon> lens = disk_intersection_polygon(a, b, 256);
  REQUIRE(lens);
  double area = 0.0;
  const auto& v = lens->vertices;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Point p = v[i];
    const Point q = v[(i + 1) % v.size()];
    area += 0.5 * (p.real() * q.imag() - q.real() * p.imag());
  }
  const double exact = 2.0 * kPi / 3.0 - std::sqrt(3.0) / 2.0;
  CHECK(area == doctest::Approx(exact).epsilon(1e-3));
  CHECK(area < exact);
  CHECK_FALSE(disk_intersection_polygon(a, Disk{{3.0, 0.0}, 1.0}));
}
