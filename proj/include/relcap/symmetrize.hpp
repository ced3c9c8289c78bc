#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <utility>
#include <vector>

#include "relcap/geometry.hpp"

namespace relcap {

enum class CrDirection { kMinus, kPlus };

/// Per ring, occupied sectors gathered into one block centred on angle pi
/// (minus) or 0 (plus). Odd leftovers go toward increasing angle.
PolarRaster circular_symmetrize(const PolarRaster& raster, CrDirection direction);

/// Per column, occupied cells gathered into one block centred on y = 0; the
/// bbox must be symmetric about the real axis.
CartesianMask steiner_symmetrize(const CartesianMask& mask);

/// Polarization about the imaginary axis: right cells take the union with
/// the mirror image, left cells the intersection.
CartesianMask polarize(const CartesianMask& mask);

/// (E+ with its mirror, E- with its mirror); closed halves, so a column on
/// the axis belongs to both.
std::pair<CartesianMask, CartesianMask> compose_halves(const CartesianMask& mask);

/// M(theta) per sector; with `restricted` only sectors whose midpoint lies in
/// (pi/2, 3pi/2) carry a value (the others are 0).
struct RadialProfile {
  Point center;
  int theta_count = 0;
  std::vector<double> m_values;
  bool restricted = false;

  double theta(int sector) const;
  bool active(int sector) const;
};

bool left_sector(int sector, int theta_count);

/// Marcus radial transformation of the open set B given by `raster`.
/// rho defaults to the largest ring edge below which every ray that is not a
/// pure prefix run is fully occupied; a given rho must be such an edge too.
RadialProfile marcus_radial(const PolarRaster& raster, bool restrict_left,
                            std::optional<double> rho = std::nullopt);

struct AveragingSpec {
  std::vector<double> weights;
  void validate() const;
};

RadialProfile averaging_transform(const std::vector<PolarRaster>& rasters,
                                  const AveragingSpec& spec, bool restrict_left);

/// Inner radius of R E from the raster of U \ E about 1:
/// sqrt(M(theta) M(2pi - theta)).
RadialProfile r_transform(const PolarRaster& complement);

/// Star set {center + r e^{i theta} : r < M(theta)} as polygons.
Region star_region(const RadialProfile& profile, int arc_steps = 2);

/// The band {1 + r e^{i phi} : M(theta) <= r < -2 cos phi} of a profile about 1.
Region chord_band_region(const RadialProfile& profile, int sub_angles = 4);

// ---------------------------------------------------------------------------
// Unit-disk helpers about z0 = 1 that keep the circle |z| = 1 exact.

inline double chord_length(double theta) { return std::max(0.0, -2.0 * std::cos(theta)); }

/// Per sector, the logarithmic measure sum log(r_out/r_in) of the occupied
/// cells of E's raster about 1, each cell cut at the unit circle along the
/// sector's mid ray. Needs r_edges[0] > 0 or an empty ring 0.
std::vector<double> radial_log_sections(const PolarRaster& e_raster);

/// U minus the star set with M(phi) = chord(phi) exp(-s_j) over left sector
/// j. Band polygons extend to radius 2.1 about 1, outside U, where walks never go.
Region disk_band_from_sections(const std::vector<double>& sections, int theta_count,
                               int sub_angles = 4);

/// U minus St(U minus E) for E given by a mask: caps of height m/2 under the
/// circle in each column (m = occupied length inside the unit disk along the
/// column's mid line), reaching past the circle.
Region steiner_complement_in_disk(const CartesianMask& e_mask, int sub = 4);

/// Cr about a of E union Sigma, cells entirely in Sigma dropped.
Region cr_sigma_transform(const Region& e, double a, CrDirection direction, int rings,
                          int sectors);

/// Lens of two disks as an inscribed polygon; nullopt when they miss.
std::optional<Polygon> disk_intersection_polygon(const Disk& a, const Disk& b, int vertices = 128);

}  // namespace relcap
