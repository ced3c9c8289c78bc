#include "relcap/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace relcap {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double cross(Point a, Point b) { return a.real() * b.imag() - a.imag() * b.real(); }

bool on_segment_exact(Point a, Point b, Point p) {
  if (cross(b - a, p - a) != 0.0) {
    return false;
  }
  return p.real() >= std::min(a.real(), b.real()) && p.real() <= std::max(a.real(), b.real()) &&
         p.imag() >= std::min(a.imag(), b.imag()) && p.imag() <= std::max(a.imag(), b.imag());
}

bool polygon_contains(const Polygon& poly, Point p) {
  const auto& v = poly.vertices;
  const std::size_t n = v.size();
  bool inside = false;
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    if (on_segment_exact(v[j], v[i], p)) {
      return true;
    }
    const bool crosses = (v[i].imag() > p.imag()) != (v[j].imag() > p.imag());
    if (crosses) {
      const double x = v[j].real() + (p.imag() - v[j].imag()) * (v[i].real() - v[j].real()) /
                                         (v[i].imag() - v[j].imag());
      if (p.real() < x) {
        inside = !inside;
      }
    }
  }
  return inside;
}

Point polygon_boundary_point(const Polygon& poly, Point p) {
  const auto& v = poly.vertices;
  double best = kInf;
  Point best_point = v.front();
  for (std::size_t i = 0, j = v.size() - 1; i < v.size(); j = i++) {
    const Point q = segment_closest(v[j], v[i], p);
    const double d = std::abs(q - p);
    if (d < best) {
      best = d;
      best_point = q;
    }
  }
  return best_point;
}

void validate_primitive(const Primitive& prim) {
  std::visit(
      [](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Disk>) {
          if (!(x.radius > 0.0) || !std::isfinite(x.radius)) {
            throw ValidationError("disk radius must be positive");
          }
          if (!std::isfinite(x.center.real()) || !std::isfinite(x.center.imag())) {
            throw ValidationError("disk center must be finite");
          }
        } else if constexpr (std::is_same_v<T, Segment>) {
          if (x.a == x.b) {
            throw ValidationError("segment endpoints must be distinct");
          }
        } else if constexpr (std::is_same_v<T, Polygon>) {
          const auto& v = x.vertices;
          const std::size_t n = v.size();
          if (n < 3) {
            throw ValidationError("polygon needs at least 3 vertices");
          }
          for (std::size_t i = 0; i < n; ++i) {
            if (v[i] == v[(i + 1) % n]) {
              throw ValidationError("polygon has repeated consecutive vertices");
            }
          }
          for (std::size_t i = 0; i < n; ++i) {
            const Point a = v[i];
            const Point b = v[(i + 1) % n];
            for (std::size_t j = i + 1; j < n; ++j) {
              const Point c = v[j];
              const Point d = v[(j + 1) % n];
              const bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
              if (adjacent) {
                // Adjacent edges may only share their common vertex.
                const Point shared = (j == i + 1) ? b : a;
                const Point other_first = (j == i + 1) ? a : b;
                const Point other_second = (j == i + 1) ? d : c;
                if (cross(other_first - shared, other_second - shared) == 0.0 &&
                    std::real((other_first - shared) * std::conj(other_second - shared)) > 0.0) {
                  throw ValidationError("polygon edges overlap");
                }
                continue;
              }
              if (segments_intersect(a, b, c, d)) {
                throw ValidationError("polygon is self-intersecting");
              }
            }
          }
        }
      },
      prim);
}

}  // namespace

// ---------------------------------------------------------------------------
// Box

double Box::diagonal() const { return std::hypot(width(), height()); }

bool Box::contains(Point p) const {
  return p.real() >= xmin && p.real() <= xmax && p.imag() >= ymin && p.imag() <= ymax;
}

double Box::distance(Point p) const {
  const double dx = std::max({xmin - p.real(), 0.0, p.real() - xmax});
  const double dy = std::max({ymin - p.imag(), 0.0, p.imag() - ymax});
  return std::hypot(dx, dy);
}

Box Box::united(const Box& o) const {
  return {std::min(xmin, o.xmin), std::min(ymin, o.ymin), std::max(xmax, o.xmax),
          std::max(ymax, o.ymax)};
}

// ---------------------------------------------------------------------------
// Primitive queries

Point segment_closest(Point a, Point b, Point p) {
  const Point ab = b - a;
  const double len2 = std::norm(ab);
  if (len2 == 0.0) {
    return a;
  }
  const double t = std::clamp(std::real((p - a) * std::conj(ab)) / len2, 0.0, 1.0);
  return a + t * ab;
}

double segment_distance(Point a, Point b, Point p) { return std::abs(p - segment_closest(a, b, p)); }

bool segments_intersect(Point a, Point b, Point c, Point d) {
  const double d1 = cross(d - c, a - c);
  const double d2 = cross(d - c, b - c);
  const double d3 = cross(b - a, c - a);
  const double d4 = cross(b - a, d - a);
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0))) {
    return true;
  }
  return on_segment_exact(c, d, a) || on_segment_exact(c, d, b) || on_segment_exact(a, b, c) ||
         on_segment_exact(a, b, d);
}

bool primitive_contains(const Primitive& prim, Point p) {
  return std::visit(
      [p](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Disk>) {
          return std::norm(p - x.center) <= x.radius * x.radius;
        } else if constexpr (std::is_same_v<T, Polygon>) {
          return polygon_contains(x, p);
        } else if constexpr (std::is_same_v<T, Segment>) {
          return on_segment_exact(x.a, x.b, p);
        } else {
          return std::norm(p) >= 1.0;
        }
      },
      prim);
}

double primitive_distance(const Primitive& prim, Point p) {
  return std::visit(
      [p](const auto& x) -> double {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Disk>) {
          return std::max(0.0, std::abs(p - x.center) - x.radius);
        } else if constexpr (std::is_same_v<T, Polygon>) {
          if (polygon_contains(x, p)) {
            return 0.0;
          }
          return std::abs(polygon_boundary_point(x, p) - p);
        } else if constexpr (std::is_same_v<T, Segment>) {
          return segment_distance(x.a, x.b, p);
        } else {
          return std::max(0.0, 1.0 - std::abs(p));
        }
      },
      prim);
}

Point primitive_boundary_point(const Primitive& prim, Point p) {
  return std::visit(
      [p](const auto& x) -> Point {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Disk>) {
          const Point d = p - x.center;
          const double r = std::abs(d);
          if (r == 0.0) {
            return x.center + x.radius;
          }
          return x.center + d * (x.radius / r);
        } else if constexpr (std::is_same_v<T, Polygon>) {
          return polygon_boundary_point(x, p);
        } else if constexpr (std::is_same_v<T, Segment>) {
          return segment_closest(x.a, x.b, p);
        } else {
          const double r = std::abs(p);
          return r == 0.0 ? Point{1.0, 0.0} : p / r;
        }
      },
      prim);
}

std::optional<Box> primitive_box(const Primitive& prim) {
  return std::visit(
      [](const auto& x) -> std::optional<Box> {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Disk>) {
          return Box{x.center.real() - x.radius, x.center.imag() - x.radius,
                     x.center.real() + x.radius, x.center.imag() + x.radius};
        } else if constexpr (std::is_same_v<T, Polygon>) {
          Box b{kInf, kInf, -kInf, -kInf};
          for (const Point v : x.vertices) {
            b = b.united(Box{v.real(), v.imag(), v.real(), v.imag()});
          }
          return b;
        } else if constexpr (std::is_same_v<T, Segment>) {
          return Box{std::min(x.a.real(), x.b.real()), std::min(x.a.imag(), x.b.imag()),
                     std::max(x.a.real(), x.b.real()), std::max(x.a.imag(), x.b.imag())};
        } else {
          return std::nullopt;
        }
      },
      prim);
}

// ---------------------------------------------------------------------------
// Bounding-volume hierarchy

struct Region::Bvh {
  struct Node {
    Box box;
    int left = -1;
    int right = -1;
    int first = 0;
    int count = 0;
  };
  std::vector<Node> nodes;
  std::vector<std::size_t> order;  // primitive indices, leaf ranges index into this
  std::vector<Box> boxes;          // per primitive (indexed by primitive index)

  static constexpr int kLeafSize = 4;

  int build(int first, int count) {
    Node node;
    node.box = boxes[order[first]];
    for (int i = 1; i < count; ++i) {
      node.box = node.box.united(boxes[order[first + i]]);
    }
    const int id = static_cast<int>(nodes.size());
    nodes.push_back(node);
    if (count <= kLeafSize) {
      nodes[id].first = first;
      nodes[id].count = count;
      return id;
    }
    const bool split_x = node.box.width() >= node.box.height();
    auto key = [&](std::size_t k) {
      const Box& b = boxes[k];
      return split_x ? b.xmin + b.xmax : b.ymin + b.ymax;
    };
    const int half = count / 2;
    std::nth_element(order.begin() + first, order.begin() + first + half,
                     order.begin() + first + count,
                     [&](std::size_t a, std::size_t b) { return key(a) < key(b); });
    const int left = build(first, half);
    const int right = build(first + half, count - half);
    nodes[id].left = left;
    nodes[id].right = right;
    return id;
  }
};

// ---------------------------------------------------------------------------
// Region

Region::Region() : bvh_(std::make_shared<Bvh>()) {}

Region::Region(std::vector<Primitive> primitives) : primitives_(std::move(primitives)) {
  auto bvh = std::make_shared<Bvh>();
  bvh->boxes.resize(primitives_.size());
  for (std::size_t i = 0; i < primitives_.size(); ++i) {
    validate_primitive(primitives_[i]);
    if (auto box = primitive_box(primitives_[i])) {
      bvh->boxes[i] = *box;
      bvh->order.push_back(i);
    } else {
      unbounded_.push_back(i);
    }
  }
  if (!bvh->order.empty()) {
    bvh->build(0, static_cast<int>(bvh->order.size()));
  }
  bvh_ = std::move(bvh);
}

bool Region::bounded() const { return unbounded_.empty(); }

bool Region::contains(Point p) const {
  for (std::size_t i : unbounded_) {
    if (primitive_contains(primitives_[i], p)) {
      return true;
    }
  }
  const auto& nodes = bvh_->nodes;
  if (nodes.empty()) {
    return false;
  }
  int stack[64];
  int top = 0;
  stack[top++] = 0;
  while (top > 0) {
    const auto& node = nodes[stack[--top]];
    if (!node.box.contains(p)) {
      continue;
    }
    if (node.left < 0) {
      for (int k = 0; k < node.count; ++k) {
        const std::size_t idx = bvh_->order[node.first + k];
        if (bvh_->boxes[idx].contains(p) && primitive_contains(primitives_[idx], p)) {
          return true;
        }
      }
    } else {
      stack[top++] = node.left;
      stack[top++] = node.right;
    }
  }
  return false;
}

double Region::distance_below(Point p, double upper) const {
  double best = upper;
  for (std::size_t i : unbounded_) {
    best = std::min(best, primitive_distance(primitives_[i], p));
  }
  const auto& nodes = bvh_->nodes;
  if (nodes.empty() || best == 0.0) {
    return best;
  }
  int stack[64];
  int top = 0;
  stack[top++] = 0;
  while (top > 0) {
    const auto& node = nodes[stack[--top]];
    if (node.box.distance(p) >= best) {
      continue;
    }
    if (node.left < 0) {
      for (int k = 0; k < node.count; ++k) {
        const std::size_t idx = bvh_->order[node.first + k];
        if (bvh_->boxes[idx].distance(p) < best) {
          best = std::min(best, primitive_distance(primitives_[idx], p));
          if (best == 0.0) {
            return 0.0;
          }
        }
      }
    } else {
      // Visit the nearer child first so pruning bites earlier.
      const double dl = nodes[node.left].box.distance(p);
      const double dr = nodes[node.right].box.distance(p);
      if (dl < dr) {
        stack[top++] = node.right;
        stack[top++] = node.left;
      } else {
        stack[top++] = node.left;
        stack[top++] = node.right;
      }
    }
  }
  return best;
}

double Region::distance(Point p) const {
  if (empty()) {
    throw std::invalid_argument("distance query on an empty region");
  }
  return distance_below(p, kInf);
}

NearestPoint Region::nearest(Point p) const {
  if (empty()) {
    throw std::invalid_argument("nearest-point query on an empty region");
  }
  double best = kInf;
  std::size_t best_idx = 0;
  auto consider = [&](std::size_t idx) {
    const double d = primitive_distance(primitives_[idx], p);
    if (d < best) {
      best = d;
      best_idx = idx;
    }
  };
  for (std::size_t i : unbounded_) {
    consider(i);
  }
  const auto& nodes = bvh_->nodes;
  if (!nodes.empty()) {
    int stack[64];
    int top = 0;
    stack[top++] = 0;
    while (top > 0) {
      const auto& node = nodes[stack[--top]];
      if (node.box.distance(p) > best) {
        continue;
      }
      if (node.left < 0) {
        for (int k = 0; k < node.count; ++k) {
          consider(bvh_->order[node.first + k]);
        }
      } else {
        stack[top++] = node.left;
        stack[top++] = node.right;
      }
    }
  }
  return {best, primitive_boundary_point(primitives_[best_idx], p)};
}

std::optional<Box> Region::bounding_box() const {
  if (empty() || !bounded()) {
    return std::nullopt;
  }
  return bvh_->nodes.front().box;
}

Region Region::united(const Region& other) const {
  std::vector<Primitive> all = primitives_;
  all.insert(all.end(), other.primitives_.begin(), other.primitives_.end());
  return Region(std::move(all));
}

Region Region::transformed(const Similarity& map) const {
  const double k = std::abs(map.scale);
  if (k == 0.0) {
    throw std::invalid_argument("degenerate similarity");
  }
  std::vector<Primitive> out;
  out.reserve(primitives_.size());
  for (const auto& prim : primitives_) {
    std::visit(
        [&](const auto& x) {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, Disk>) {
            out.emplace_back(Disk{map.apply(x.center), x.radius * k});
          } else if constexpr (std::is_same_v<T, Polygon>) {
            Polygon poly;
            poly.vertices.reserve(x.vertices.size());
            for (const Point v : x.vertices) {
              poly.vertices.push_back(map.apply(v));
            }
            out.emplace_back(std::move(poly));
          } else if constexpr (std::is_same_v<T, Segment>) {
            out.emplace_back(Segment{map.apply(x.a), map.apply(x.b)});
          } else {
            if (map.shift != Point{0.0, 0.0} || k != 1.0) {
              throw std::invalid_argument("sigma is only invariant under rotations");
            }
            out.emplace_back(Sigma{});
          }
        },
        prim);
  }
  return Region(std::move(out));
}

bool contains(const Region& region, Point p) { return region.contains(p); }

double distance_to_region(const Region& region, Point p) { return region.distance(p); }

bool in_domain(DomainTag domain, Point p) {
  return domain == DomainTag::kUnitDisk ? std::norm(p) < 1.0 : p.imag() > 0.0;
}

bool inner_distance_positive(const Region& e, DomainTag domain, const BoundaryPoint& z0,
                             double probe_radius) {
  if (e.empty()) {
    return true;
  }
  if (z0.at_infinity()) {
    // Neighbourhood of infinity: {|z| > 1/probe}. A bounded E clears it when
    // its bounding box lies inside the disk of radius 1/probe.
    const auto box = e.bounding_box();
    if (!box) {
      return false;
    }
    const double far = std::max({std::abs(Point{box->xmin, box->ymin}),
                                 std::abs(Point{box->xmin, box->ymax}),
                                 std::abs(Point{box->xmax, box->ymin}),
                                 std::abs(Point{box->xmax, box->ymax})});
    return far <= 1.0 / probe_radius;
  }
  const Point c = *z0.location;
  if (e.distance(c) >= probe_radius) {
    return true;
  }
  // Something of E is within the probe disk; it only counts if it is inside D.
  // Segments have no area, so they are walked explicitly; everything else is
  // probed on a polar sample of the relative neighbourhood.
  for (const auto& prim : e.primitives()) {
    if (const auto* seg = std::get_if<Segment>(&prim)) {
      constexpr int kSteps = 4096;
      for (int k = 0; k <= kSteps; ++k) {
        const Point q = seg->a + (seg->b - seg->a) * (static_cast<double>(k) / kSteps);
        if (std::abs(q - c) < probe_radius && in_domain(domain, q)) {
          return false;
        }
      }
    }
  }
  constexpr int kRadial = 128;
  constexpr int kAngular = 512;
  for (int i = 0; i < kRadial; ++i) {
    const double r = probe_radius * (i + 0.5) / kRadial;
    for (int j = 0; j < kAngular; ++j) {
      const Point q = c + std::polar(r, 2.0 * kPi * (j + 0.5) / kAngular);
      if (in_domain(domain, q) && e.contains(q)) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace relcap
