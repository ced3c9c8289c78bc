#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace relcap {

using Point = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Disk {
  Point center;
  double radius = 0.0;
};

/// Closed simple polygon; the last vertex connects back to the first.
struct Polygon {
  std::vector<Point> vertices;
};

struct Segment {
  Point a;
  Point b;
};

/// The exterior of the open unit disk, {|z| >= 1}.
struct Sigma {};

using Primitive = std::variant<Disk, Polygon, Segment, Sigma>;

struct Box {
  double xmin = 0.0;
  double ymin = 0.0;
  double xmax = 0.0;
  double ymax = 0.0;

  double width() const { return xmax - xmin; }
  double height() const { return ymax - ymin; }
  double diagonal() const;
  bool contains(Point p) const;
  double distance(Point p) const;
  Box united(const Box& other) const;
};

enum class DomainTag { kUnitDisk, kUpperHalfPlane };

/// z -> scale * z + shift.
struct Similarity {
  Point scale{1.0, 0.0};
  Point shift{0.0, 0.0};
  Point apply(Point z) const { return scale * z + shift; }
};

struct NearestPoint {
  double distance = 0.0;
  Point point;  // closest point on the boundary of the nearest primitive
};

/// A planar set given as the union of its primitives. Immutable after
/// construction; a bounding-volume hierarchy over the bounded primitives is
/// built once and shared between copies.
class Region {
 public:
  Region();
  /// Validates every primitive; throws ValidationError on bad input.
  explicit Region(std::vector<Primitive> primitives);

  const std::vector<Primitive>& primitives() const { return primitives_; }
  bool empty() const { return primitives_.empty(); }
  bool bounded() const;

  bool contains(Point p) const;

  /// Euclidean distance to the union, 0 inside. Throws on an empty region.
  double distance(Point p) const;

  /// Same as distance(), but returns `upper` whenever nothing is closer than
  /// `upper`. Used by the walkers, which only care about the minimum with the
  /// base boundary distance.
  double distance_below(Point p, double upper) const;

  NearestPoint nearest(Point p) const;

  std::optional<Box> bounding_box() const;

  Region united(const Region& other) const;
  Region transformed(const Similarity& map) const;

 private:
  struct Bvh;
  std::vector<Primitive> primitives_;
  std::vector<std::size_t> unbounded_;
  std::shared_ptr<const Bvh> bvh_;
};

double primitive_distance(const Primitive& prim, Point p);
bool primitive_contains(const Primitive& prim, Point p);
Point primitive_boundary_point(const Primitive& prim, Point p);
std::optional<Box> primitive_box(const Primitive& prim);

double segment_distance(Point a, Point b, Point p);
Point segment_closest(Point a, Point b, Point p);
bool segments_intersect(Point a, Point b, Point c, Point d);

/// Free-function forms of the region queries.
bool contains(const Region& region, Point p);
double distance_to_region(const Region& region, Point p);

/// Boundary point z0: a finite point with a unit tangent, or infinity.
struct BoundaryPoint {
  std::optional<Point> location;
  Point tangent{0.0, 1.0};

  bool at_infinity() const { return !location.has_value(); }
  static BoundaryPoint one_on_unit_circle() { return {Point{1.0, 0.0}, Point{0.0, 1.0}}; }
  static BoundaryPoint infinity() { return {std::nullopt, Point{1.0, 0.0}}; }
};

/// Sufficient check that the inner distance from z0 to E is positive: E must
/// miss {|z - z0| < probe} (or {|z| > 1/probe} for z0 = infinity) inside D.
bool inner_distance_positive(const Region& e, DomainTag domain, const BoundaryPoint& z0,
                             double probe_radius);

bool in_domain(DomainTag domain, Point p);

// Region file format (JSON).
Region parse_region(std::string_view text);
std::string serialize_region(const Region& region);
Region load_region(const std::string& path);
void save_region(const Region& region, const std::string& path);

// ---------------------------------------------------------------------------
// Rasters

enum class RingSpacing { kLinear, kGeometric };

/// Occupancy on a polar grid about `center`. Sector j covers
/// [j*2pi/T, (j+1)*2pi/T); ring i covers [r_edges[i], r_edges[i+1]).
struct PolarRaster {
  Point center;
  std::vector<double> r_edges;
  int theta_count = 0;
  std::vector<std::uint8_t> cells;  // ring-major: cells[ring * theta_count + sector]

  int rings() const { return static_cast<int>(r_edges.size()) - 1; }
  bool at(int ring, int sector) const { return cells[index(ring, sector)] != 0; }
  void set(int ring, int sector, bool value) { cells[index(ring, sector)] = value ? 1 : 0; }
  double sector_width() const { return 2.0 * kPi / theta_count; }
  double sector_mid(int sector) const { return (sector + 0.5) * sector_width(); }
  double ring_mid(int ring) const { return 0.5 * (r_edges[ring] + r_edges[ring + 1]); }
  Point cell_mid(int ring, int sector) const;
  std::size_t occupied() const;
  bool same_grid(const PolarRaster& other) const;
  void validate() const;

 private:
  std::size_t index(int ring, int sector) const {
    return static_cast<std::size_t>(ring) * theta_count + sector;
  }
};

/// Occupancy on an nx-by-ny cell grid over bbox; cell (ix, iy) is stored at
/// iy * nx + ix with iy increasing upward.
struct CartesianMask {
  Box bbox;
  int nx = 0;
  int ny = 0;
  std::vector<std::uint8_t> cells;

  double dx() const { return bbox.width() / nx; }
  double dy() const { return bbox.height() / ny; }
  bool at(int ix, int iy) const { return cells[index(ix, iy)] != 0; }
  void set(int ix, int iy, bool value) { cells[index(ix, iy)] = value ? 1 : 0; }
  Point cell_mid(int ix, int iy) const;
  std::size_t occupied() const;
  bool same_grid(const CartesianMask& other) const;
  void validate() const;

 private:
  std::size_t index(int ix, int iy) const { return static_cast<std::size_t>(iy) * nx + ix; }
};

struct RasterOptions {
  /// Thickening applied to segments so slits survive the midpoint rule.
  /// Negative means 1e-3 times the bounding scale of the grid.
  double segment_thickening = -1.0;
  RingSpacing spacing = RingSpacing::kLinear;
  /// Inner radius of ring 0 for geometric spacing (ignored for linear).
  double r_min = 0.0;
};

PolarRaster rasterize_polar(const Region& region, Point center, double r_max, int rings,
                            int sectors, const RasterOptions& options = {});

CartesianMask rasterize_cartesian(const Region& region, const Box& bbox, int nx, int ny,
                                  const RasterOptions& options = {});

/// Union of the occupied cells as rectangles (row runs merged).
Region region_from_mask(const CartesianMask& mask);

/// Union of the occupied polar cells as polygons; runs of at most
/// `max_run` sectors are merged and each arc is split into `arc_steps` chords
/// per sector.
Region region_from_polar(const PolarRaster& raster, int max_run = 8, int arc_steps = 2);

}  // namespace relcap
