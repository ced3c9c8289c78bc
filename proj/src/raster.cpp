#include <algorithm>
#include <cmath>

#include "relcap/geometry.hpp"

namespace relcap {

namespace {

double wrap_angle(double theta) {
  theta = std::fmod(theta, 2.0 * kPi);
  return theta < 0.0 ? theta + 2.0 * kPi : theta;
}

double resolve_thickening(const RasterOptions& options, double scale) {
  return options.segment_thickening >= 0.0 ? options.segment_thickening : 1e-3 * scale;
}

std::vector<Segment> segments_of(const Region& region) {
  std::vector<Segment> out;
  for (const auto& prim : region.primitives()) {
    if (const auto* s = std::get_if<Segment>(&prim)) {
      out.push_back(*s);
    }
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// PolarRaster

Point PolarRaster::cell_mid(int ring, int sector) const {
  return center + std::polar(ring_mid(ring), sector_mid(sector));
}

std::size_t PolarRaster::occupied() const {
  return static_cast<std::size_t>(std::count(cells.begin(), cells.end(), 1));
}

bool PolarRaster::same_grid(const PolarRaster& o) const {
  return center == o.center && r_edges == o.r_edges && theta_count == o.theta_count;
}

void PolarRaster::validate() const {
  if (r_edges.size() < 2 || r_edges.front() < 0.0) {
    throw ValidationError("polar raster needs at least one ring with r_edges[0] >= 0");
  }
  for (std::size_t i = 1; i < r_edges.size(); ++i) {
    if (!(r_edges[i] > r_edges[i - 1])) {
      throw ValidationError("polar raster ring edges must be strictly increasing");
    }
  }
  if (theta_count < 1 || cells.size() != static_cast<std::size_t>(rings()) * theta_count) {
    throw ValidationError("polar raster occupancy has the wrong dimensions");
  }
}

// ---------------------------------------------------------------------------
// CartesianMask

Point CartesianMask::cell_mid(int ix, int iy) const {
  return {bbox.xmin + (ix + 0.5) * dx(), bbox.ymin + (iy + 0.5) * dy()};
}

std::size_t CartesianMask::occupied() const {
  return static_cast<std::size_t>(std::count(cells.begin(), cells.end(), 1));
}

bool CartesianMask::same_grid(const CartesianMask& o) const {
  return bbox.xmin == o.bbox.xmin && bbox.xmax == o.bbox.xmax && bbox.ymin == o.bbox.ymin &&
         bbox.ymax == o.bbox.ymax && nx == o.nx && ny == o.ny;
}

void CartesianMask::validate() const {
  if (nx < 2 || ny < 2) {
    throw ValidationError("cartesian mask needs nx, ny >= 2");
  }
  if (!(bbox.width() > 0.0) || !(bbox.height() > 0.0)) {
    throw ValidationError("cartesian mask bbox must have positive area");
  }
  if (cells.size() != static_cast<std::size_t>(nx) * ny) {
    throw ValidationError("cartesian mask occupancy has the wrong dimensions");
  }
}

// ---------------------------------------------------------------------------
// Rasterization

PolarRaster rasterize_polar(const Region& region, Point center, double r_max, int rings,
                            int sectors, const RasterOptions& options) {
  if (rings < 8 || sectors < 8 || !(r_max > 0.0)) {
    throw ValidationError("polar grid needs rings, sectors >= 8 and r_max > 0");
  }
  PolarRaster raster;
  raster.center = center;
  raster.theta_count = sectors;
  raster.r_edges.resize(rings + 1);
  if (options.spacing == RingSpacing::kGeometric) {
    if (!(options.r_min > 0.0) || !(options.r_min < r_max)) {
      throw ValidationError("geometric rings need 0 < r_min < r_max");
    }
    for (int i = 0; i <= rings; ++i) {
      raster.r_edges[i] = options.r_min * std::pow(r_max / options.r_min,
                                                   static_cast<double>(i) / rings);
    }
  } else {
    for (int i = 0; i <= rings; ++i) {
      raster.r_edges[i] = r_max * i / rings;
    }
  }
  raster.r_edges.back() = r_max;
  raster.cells.assign(static_cast<std::size_t>(rings) * sectors, 0);

  for (int i = 0; i < rings; ++i) {
    for (int j = 0; j < sectors; ++j) {
      if (region.contains(raster.cell_mid(i, j))) {
        raster.set(i, j, true);
      }
    }
  }

  const double thick = resolve_thickening(options, r_max);
  for (const Segment& seg : segments_of(region)) {
    // Mark every cell the segment passes through, then every cell whose
    // midpoint lies within the thickening distance.
    const double min_ring = [&] {
      double m = r_max;
      for (int i = 0; i < rings; ++i) {
        m = std::min(m, raster.r_edges[i + 1] - raster.r_edges[i]);
      }
      return m;
    }();
    const double len = std::abs(seg.b - seg.a);
    const int steps = std::max(2, static_cast<int>(std::ceil(4.0 * len / std::max(min_ring * 0.25, 1e-9))));
    for (int k = 0; k <= steps; ++k) {
      const Point q = seg.a + (seg.b - seg.a) * (static_cast<double>(k) / steps) - center;
      const double r = std::abs(q);
      if (r < raster.r_edges.front() || r >= r_max) {
        continue;
      }
      const auto it = std::upper_bound(raster.r_edges.begin(), raster.r_edges.end(), r);
      const int ring = static_cast<int>(it - raster.r_edges.begin()) - 1;
      const int sector =
          std::min(sectors - 1, static_cast<int>(wrap_angle(std::arg(q)) / raster.sector_width()));
      raster.set(ring, sector, true);
    }
    for (int i = 0; i < rings; ++i) {
      for (int j = 0; j < sectors; ++j) {
        if (segment_distance(seg.a, seg.b, raster.cell_mid(i, j)) <= thick) {
          raster.set(i, j, true);
        }
      }
    }
  }
  return raster;
}

CartesianMask rasterize_cartesian(const Region& region, const Box& bbox, int nx, int ny,
                                  const RasterOptions& options) {
  CartesianMask mask;
  mask.bbox = bbox;
  mask.nx = nx;
  mask.ny = ny;
  mask.cells.assign(static_cast<std::size_t>(std::max(nx, 0)) * std::max(ny, 0), 0);
  mask.validate();
  for (int iy = 0; iy < ny; ++iy) {
    for (int ix = 0; ix < nx; ++ix) {
      if (region.contains(mask.cell_mid(ix, iy))) {
        mask.set(ix, iy, true);
      }
    }
  }
  const double thick = resolve_thickening(options, bbox.diagonal());
  const double dx = mask.dx();
  const double dy = mask.dy();
  for (const Segment& seg : segments_of(region)) {
    const double len = std::abs(seg.b - seg.a);
    const int steps = std::max(2, static_cast<int>(std::ceil(4.0 * len / std::min(dx, dy))));
    for (int k = 0; k <= steps; ++k) {
      const Point q = seg.a + (seg.b - seg.a) * (static_cast<double>(k) / steps);
      const int ix = static_cast<int>(std::floor((q.real() - bbox.xmin) / dx));
      const int iy = static_cast<int>(std::floor((q.imag() - bbox.ymin) / dy));
      if (ix >= 0 && ix < nx && iy >= 0 && iy < ny) {
        mask.set(ix, iy, true);
      }
    }
    // Midpoints within the thickening distance.
    const int ix0 = std::max(0, static_cast<int>(std::floor((std::min(seg.a.real(), seg.b.real()) - thick - bbox.xmin) / dx)));
    const int ix1 = std::min(nx - 1, static_cast<int>(std::floor((std::max(seg.a.real(), seg.b.real()) + thick - bbox.xmin) / dx)));
    const int iy0 = std::max(0, static_cast<int>(std::floor((std::min(seg.a.imag(), seg.b.imag()) - thick - bbox.ymin) / dy)));
    const int iy1 = std::min(ny - 1, static_cast<int>(std::floor((std::max(seg.a.imag(), seg.b.imag()) + thick - bbox.ymin) / dy)));
    for (int iy = iy0; iy <= iy1; ++iy) {
      for (int ix = ix0; ix <= ix1; ++ix) {
        if (segment_distance(seg.a, seg.b, mask.cell_mid(ix, iy)) <= thick) {
          mask.set(ix, iy, true);
        }
      }
    }
  }
  return mask;
}

// ---------------------------------------------------------------------------
// Raster -> Region

Region region_from_mask(const CartesianMask& mask) {
  std::vector<Primitive> prims;
  const double dx = mask.dx();
  const double dy = mask.dy();
  for (int iy = 0; iy < mask.ny; ++iy) {
    int ix = 0;
    while (ix < mask.nx) {
      if (!mask.at(ix, iy)) {
        ++ix;
        continue;
      }
      const int start = ix;
      while (ix < mask.nx && mask.at(ix, iy)) {
        ++ix;
      }
      const double x0 = mask.bbox.xmin + start * dx;
      const double x1 = mask.bbox.xmin + ix * dx;
      const double y0 = mask.bbox.ymin + iy * dy;
      const double y1 = y0 + dy;
      prims.emplace_back(Polygon{{{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}}});
    }
  }
  return Region(std::move(prims));
}

Region region_from_polar(const PolarRaster& raster, int max_run, int arc_steps) {
  raster.validate();
  max_run = std::max(1, max_run);
  arc_steps = std::max(1, arc_steps);
  const int t = raster.theta_count;
  const double w = raster.sector_width();
  std::vector<Primitive> prims;

  auto emit = [&](int ring, int first_sector, int count) {
    const double r_in = raster.r_edges[ring];
    const double r_out = raster.r_edges[ring + 1];
    const double th0 = first_sector * w;
    const int pieces = count * arc_steps;
    Polygon poly;
    poly.vertices.reserve(2 * (pieces + 1));
    for (int k = 0; k <= pieces; ++k) {
      poly.vertices.push_back(raster.center + std::polar(r_out, th0 + w * k / arc_steps));
    }
    if (r_in == 0.0) {
      poly.vertices.push_back(raster.center);
    } else {
      for (int k = pieces; k >= 0; --k) {
        poly.vertices.push_back(raster.center + std::polar(r_in, th0 + w * k / arc_steps));
      }
    }
    prims.emplace_back(std::move(poly));
  };

  for (int ring = 0; ring < raster.rings(); ++ring) {
    // Start scanning just after an empty sector so runs never straddle the
    // scan origin; a fully occupied ring starts at sector 0.
    int origin = 0;
    for (int j = 0; j < t; ++j) {
      if (!raster.at(ring, j)) {
        origin = (j + 1) % t;
        break;
      }
    }
    int k = 0;
    while (k < t) {
      const int j = (origin + k) % t;
      if (!raster.at(ring, j)) {
        ++k;
        continue;
      }
      int len = 0;
      while (k + len < t && len < max_run && raster.at(ring, (origin + k + len) % t)) {
        ++len;
      }
      if (raster.r_edges[ring] == 0.0 && len == t) {
        // Full-disk fan would degenerate; halve it.
        emit(ring, j, t / 2);
        emit(ring, (j + t / 2) % t, t - t / 2);
      } else {
        emit(ring, j, len);
      }
      k += len;
    }
  }
  return Region(std::move(prims));
}

}  // namespace relcap
