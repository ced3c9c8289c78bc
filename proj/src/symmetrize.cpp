#include "relcap/symmetrize.hpp"

#include <cmath>

namespace relcap {

namespace {

int positive_mod(int a, int m) {
  const int r = a % m;
  return r < 0 ? r + m : r;
}

// First cell of a block of m cells centred on position c (in cell units).
int block_start(double c, int m) { return static_cast<int>(std::ceil(c - 0.5 * m - 1e-9)); }

void require_symmetric(double lo, double hi, const char* what) {
  if (std::abs(lo + hi) > 1e-12 * std::max(1.0, hi - lo)) {
    throw ValidationError(std::string("bbox must be symmetric about the ") + what);
  }
}

int mirror_column(const CartesianMask& m, int ix) { return m.nx - 1 - ix; }

bool right_column(const CartesianMask& m, int ix) { return m.cell_mid(ix, 0).real() >= 0.0; }

bool left_column(const CartesianMask& m, int ix) { return m.cell_mid(ix, 0).real() <= 0.0; }

}  // namespace

PolarRaster circular_symmetrize(const PolarRaster& raster, CrDirection direction) {
  raster.validate();
  PolarRaster out = raster;
  const int t = raster.theta_count;
  const double centre = direction == CrDirection::kMinus ? 0.5 * t : 0.0;
  for (int ring = 0; ring < raster.rings(); ++ring) {
    int m = 0;
    for (int j = 0; j < t; ++j) {
      m += raster.at(ring, j) ? 1 : 0;
    }
    if (m == 0 || m == t) {
      continue;
    }
    for (int j = 0; j < t; ++j) {
      out.set(ring, j, false);
    }
    const int start = block_start(centre, m);
    for (int k = 0; k < m; ++k) {
      out.set(ring, positive_mod(start + k, t), true);
    }
  }
  return out;
}

CartesianMask steiner_symmetrize(const CartesianMask& mask) {
  mask.validate();
  require_symmetric(mask.bbox.ymin, mask.bbox.ymax, "real axis");
  CartesianMask out = mask;
  const double centre = 0.5 * mask.ny;
  for (int ix = 0; ix < mask.nx; ++ix) {
    int m = 0;
    for (int iy = 0; iy < mask.ny; ++iy) {
      m += mask.at(ix, iy) ? 1 : 0;
      out.set(ix, iy, false);
    }
    const int start = block_start(centre, m);
    for (int k = 0; k < m; ++k) {
      out.set(ix, start + k, true);
    }
  }
  return out;
}

CartesianMask polarize(const CartesianMask& mask) {
  mask.validate();
  require_symmetric(mask.bbox.xmin, mask.bbox.xmax, "imaginary axis");
  CartesianMask out = mask;
  for (int ix = 0; ix < mask.nx; ++ix) {
    const int mx = mirror_column(mask, ix);
    const bool right = right_column(mask, ix);
    for (int iy = 0; iy < mask.ny; ++iy) {
      const bool a = mask.at(ix, iy);
      const bool b = mask.at(mx, iy);
      out.set(ix, iy, right ? (a || b) : (a && b));
    }
  }
  return out;
}

std::pair<CartesianMask, CartesianMask> compose_halves(const CartesianMask& mask) {
  mask.validate();
  require_symmetric(mask.bbox.xmin, mask.bbox.xmax, "imaginary axis");
  CartesianMask plus = mask;
  CartesianMask minus = mask;
  for (int ix = 0; ix < mask.nx; ++ix) {
    const int mx = mirror_column(mask, ix);
    for (int iy = 0; iy < mask.ny; ++iy) {
      const bool here_plus = right_column(mask, ix) && mask.at(ix, iy);
      const bool mirror_plus = right_column(mask, mx) && mask.at(mx, iy);
      const bool here_minus = left_column(mask, ix) && mask.at(ix, iy);
      const bool mirror_minus = left_column(mask, mx) && mask.at(mx, iy);
      plus.set(ix, iy, here_plus || mirror_plus);
      minus.set(ix, iy, here_minus || mirror_minus);
    }
  }
  return {plus, minus};
}

// ---------------------------------------------------------------------------
// Radial transformations

double RadialProfile::theta(int sector) const { return (sector + 0.5) * 2.0 * kPi / theta_count; }

bool RadialProfile::active(int sector) const {
  return !restricted || left_sector(sector, theta_count);
}

bool left_sector(int sector, int theta_count) {
  const double mid = (sector + 0.5) * 2.0 * kPi / theta_count;
  return mid > 0.5 * kPi && mid < 1.5 * kPi;
}

RadialProfile marcus_radial(const PolarRaster& raster, bool restrict_left,
                            std::optional<double> rho) {
  raster.validate();
  const int t = raster.theta_count;
  const int rings = raster.rings();
  const auto& edges = raster.r_edges;
  RadialProfile out;
  out.center = raster.center;
  out.theta_count = t;
  out.restricted = restrict_left;
  out.m_values.assign(t, 0.0);

  // A ray that is one occupied run from the centre needs no rho; the others
  // fix how far out rho may go.
  std::vector<int> prefix(t, 0);
  std::vector<bool> pure(t, true);
  int limit = rings;
  bool any_general = false;
  for (int j = 0; j < t; ++j) {
    if (!out.active(j)) {
      continue;
    }
    int p = 0;
    while (p < rings && raster.at(p, j)) {
      ++p;
    }
    prefix[j] = p;
    for (int i = p; i < rings; ++i) {
      if (raster.at(i, j)) {
        pure[j] = false;
        break;
      }
    }
    if (!pure[j]) {
      any_general = true;
      limit = std::min(limit, p);
    }
  }
  int rho_index = limit;
  if (any_general) {
    if (limit == 0 && edges[0] == 0.0) {
      throw ValidationError("the centre is not interior to the set (no inscribed disk)");
    }
    if (rho) {
      int found = -1;
      for (int i = 0; i <= limit; ++i) {
        if (std::abs(edges[i] - *rho) <= 1e-12 * std::max(1.0, edges.back()) &&
            edges[i] > 0.0) {
          found = i;
        }
      }
      if (found < 0) {
        throw ValidationError("rho must be a positive ring edge inside the inscribed disk");
      }
      rho_index = found;
    }
  }
  for (int j = 0; j < t; ++j) {
    if (!out.active(j)) {
      continue;
    }
    if (pure[j]) {
      out.m_values[j] = prefix[j] > 0 ? edges[prefix[j]] : edges[0];
      continue;
    }
    double log_sum = 0.0;
    for (int i = rho_index; i < rings; ++i) {
      if (raster.at(i, j)) {
        log_sum += std::log(edges[i + 1] / edges[i]);
      }
    }
    out.m_values[j] = edges[rho_index] * std::exp(log_sum);
  }
  return out;
}

void AveragingSpec::validate() const {
  if (weights.empty()) {
    throw ValidationError("averaging needs at least one weight");
  }
  double sum = 0.0;
  for (const double w : weights) {
    if (!(w > 0.0)) {
      throw ValidationError("averaging weights must be positive");
    }
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    throw ValidationError("averaging weights must sum to 1");
  }
}

RadialProfile averaging_transform(const std::vector<PolarRaster>& rasters,
                                  const AveragingSpec& spec, bool restrict_left) {
  spec.validate();
  if (rasters.size() != spec.weights.size()) {
    throw ValidationError("one weight per raster is required");
  }
  for (const auto& r : rasters) {
    if (!r.same_grid(rasters.front())) {
      throw ValidationError("averaged rasters must share centre and grid");
    }
  }
  RadialProfile out;
  for (std::size_t k = 0; k < rasters.size(); ++k) {
    const RadialProfile p = marcus_radial(rasters[k], restrict_left);
    if (k == 0) {
      out = p;
      for (double& m : out.m_values) {
        m = std::pow(m, spec.weights[0]);
      }
      continue;
    }
    for (int j = 0; j < out.theta_count; ++j) {
      out.m_values[j] *= std::pow(p.m_values[j], spec.weights[k]);
    }
  }
  return out;
}

RadialProfile r_transform(const PolarRaster& complement) {
  const RadialProfile m = marcus_radial(complement, true);
  RadialProfile out = m;
  const int t = m.theta_count;
  for (int j = 0; j < t; ++j) {
    if (out.active(j)) {
      out.m_values[j] = std::sqrt(m.m_values[j] * m.m_values[t - 1 - j]);
    }
  }
  return out;
}

Region star_region(const RadialProfile& profile, int arc_steps) {
  const int t = profile.theta_count;
  const double w = 2.0 * kPi / t;
  arc_steps = std::max(1, arc_steps);
  std::vector<Primitive> prims;
  for (int j = 0; j < t; ++j) {
    const double m = profile.m_values[j];
    if (!profile.active(j) || !(m > 0.0)) {
      continue;
    }
    Polygon poly;
    poly.vertices.push_back(profile.center);
    for (int k = 0; k <= arc_steps; ++k) {
      poly.vertices.push_back(profile.center + std::polar(m, j * w + w * k / arc_steps));
    }
    prims.emplace_back(std::move(poly));
  }
  return Region(std::move(prims));
}

Region chord_band_region(const RadialProfile& profile, int sub_angles) {
  const int t = profile.theta_count;
  const double w = 2.0 * kPi / t;
  sub_angles = std::max(1, sub_angles);
  std::vector<Primitive> prims;
  for (int j = 0; j < t; ++j) {
    if (!left_sector(j, t)) {
      continue;
    }
    const double m = profile.m_values[j];
    for (int k = 0; k < sub_angles; ++k) {
      const double phi0 = j * w + w * k / sub_angles;
      const double phi1 = j * w + w * (k + 1) / sub_angles;
      Polygon poly;
      for (const double phi : {phi0, phi1}) {
        poly.vertices.push_back(profile.center + std::polar(std::min(m, chord_length(phi)), phi));
      }
      for (const double phi : {phi1, phi0}) {
        const double c = chord_length(phi);
        if (m < c) {
          poly.vertices.push_back(profile.center + std::polar(c, phi));
        }
      }
      if (poly.vertices.size() >= 3) {
        prims.emplace_back(std::move(poly));
      }
    }
  }
  return Region(std::move(prims));
}

// ---------------------------------------------------------------------------
// Unit-disk helpers

std::vector<double> radial_log_sections(const PolarRaster& e_raster) {
  e_raster.validate();
  const int t = e_raster.theta_count;
  const auto& edges = e_raster.r_edges;
  std::vector<double> s(t, 0.0);
  for (int j = 0; j < t; ++j) {
    for (int i = 0; i < e_raster.rings(); ++i) {
      if (!e_raster.at(i, j)) {
        continue;
      }
      const double outer = std::min(edges[i + 1], chord_length(e_raster.sector_mid(j)));
      if (!(outer > edges[i])) {
        continue;
      }
      if (edges[i] == 0.0) {
        throw ValidationError("E reaches the centre of the raster");
      }
      s[j] += std::log(outer / edges[i]);
    }
  }
  return s;
}

Region disk_band_from_sections(const std::vector<double>& sections, int theta_count,
                               int sub_angles) {
  if (static_cast<int>(sections.size()) != theta_count) {
    throw ValidationError("one section per sector is required");
  }
  const double w = 2.0 * kPi / theta_count;
  const Point one{1.0, 0.0};
  constexpr double kOuter = 2.1;
  sub_angles = std::max(1, sub_angles);
  std::vector<Primitive> prims;
  for (int j = 0; j < theta_count; ++j) {
    if (!left_sector(j, theta_count) || !(sections[j] > 0.0)) {
      continue;
    }
    const double shrink = std::exp(-sections[j]);
    Polygon poly;
    for (int k = 0; k <= sub_angles; ++k) {
      const double phi = j * w + w * k / sub_angles;
      const Point p = one + std::polar(chord_length(phi) * shrink, phi);
      if (poly.vertices.empty() || std::abs(p - poly.vertices.back()) > 0.0) {
        poly.vertices.push_back(p);
      }
    }
    for (int k = sub_angles; k >= 0; --k) {
      poly.vertices.push_back(one + std::polar(kOuter, j * w + w * k / sub_angles));
    }
    prims.emplace_back(std::move(poly));
  }
  return Region(std::move(prims));
}

Region steiner_complement_in_disk(const CartesianMask& e_mask, int sub) {
  e_mask.validate();
  sub = std::max(1, sub);
  constexpr double kTop = 1.1;
  std::vector<Primitive> prims;
  for (int ix = 0; ix < e_mask.nx; ++ix) {
    const double xm = e_mask.cell_mid(ix, 0).real();
    const double c = std::sqrt(std::max(0.0, 1.0 - xm * xm));
    double inside = 0.0;
    for (int iy = 0; iy < e_mask.ny; ++iy) {
      if (e_mask.at(ix, iy)) {
        const double y0 = e_mask.bbox.ymin + iy * e_mask.dy();
        inside += std::max(0.0, std::min(y0 + e_mask.dy(), c) - std::max(y0, -c));
      }
    }
    if (!(inside > 0.0)) {
      continue;
    }
    const double half = 0.5 * inside;
    const double x0 = std::max(-1.0, e_mask.bbox.xmin + ix * e_mask.dx());
    const double x1 = std::min(1.0, e_mask.bbox.xmin + (ix + 1) * e_mask.dx());
    if (!(x1 > x0)) {
      continue;
    }
    for (const double sign : {1.0, -1.0}) {
      Polygon poly;
      for (int k = 0; k <= sub; ++k) {
        const double x = x0 + (x1 - x0) * k / sub;
        const double y = std::max(0.0, std::sqrt(std::max(0.0, 1.0 - x * x)) - half);
        poly.vertices.emplace_back(x, sign * y);
      }
      poly.vertices.emplace_back(x1, sign * kTop);
      poly.vertices.emplace_back(x0, sign * kTop);
      if (sign < 0.0) {
        std::reverse(poly.vertices.begin(), poly.vertices.end());
      }
      prims.emplace_back(std::move(poly));
    }
  }
  return Region(std::move(prims));
}

Region cr_sigma_transform(const Region& e, double a, CrDirection direction, int rings,
                          int sectors) {
  std::vector<Primitive> prims = e.primitives();
  prims.emplace_back(Sigma{});
  const Region augmented(std::move(prims));
  const Point centre{a, 0.0};
  const double r_max = 2.0 + std::abs(a) + 0.1;
  PolarRaster raster = circular_symmetrize(
      rasterize_polar(augmented, centre, r_max, rings, sectors), direction);
  // Remove cells lying wholly in Sigma.
  for (int i = 0; i < raster.rings(); ++i) {
    for (int j = 0; j < sectors; ++j) {
      if (!raster.at(i, j)) {
        continue;
      }
      bool outside = true;
      for (const double r : {raster.r_edges[i], raster.ring_mid(i), raster.r_edges[i + 1]}) {
        for (const double f : {0.0, 0.5, 1.0}) {
          const double phi = (j + f) * raster.sector_width();
          outside = outside && std::abs(centre + std::polar(r, phi)) >= 1.0 + 1e-9;
        }
      }
      if (outside) {
        raster.set(i, j, false);
      }
    }
  }
  return region_from_polar(raster);
}

std::optional<Polygon> disk_intersection_polygon(const Disk& a, const Disk& b, int vertices) {
  vertices = std::max(8, vertices);
  const double d = std::abs(b.center - a.center);
  if (d >= a.radius + b.radius) {
    return std::nullopt;
  }
  Polygon poly;
  if (d <= std::abs(a.radius - b.radius)) {
    const Disk& s = a.radius <= b.radius ? a : b;
    for (int k = 0; k < vertices; ++k) {
      poly.vertices.push_back(s.center + std::polar(s.radius, 2.0 * kPi * k / vertices));
    }
    return poly;
  }
  const double beta = std::arg(b.center - a.center);
  const double x = (d * d + a.radius * a.radius - b.radius * b.radius) / (2.0 * d);
  const double ga = std::acos(std::clamp(x / a.radius, -1.0, 1.0));
  const double gb = std::acos(std::clamp((d - x) / b.radius, -1.0, 1.0));
  const int half = vertices / 2;
  for (int k = 0; k <= half; ++k) {
    poly.vertices.push_back(a.center + std::polar(a.radius, beta - ga + 2.0 * ga * k / half));
  }
  for (int k = 1; k < half; ++k) {
    poly.vertices.push_back(b.center +
                            std::polar(b.radius, beta + kPi - gb + 2.0 * gb * k / half));
  }
  return poly;
}

}  // namespace relcap
