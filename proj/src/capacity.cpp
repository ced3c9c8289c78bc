#include "relcap/capacity.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace relcap {

namespace {

void finish_flags(CapacityEstimate& c) {
  c.negative_flag = c.value < -3.0 * c.std_error;
  // Reduced chi^2 above 9 means the model misses the ladder by more than noise.
  c.divergence_flag = c.fit_residual > 3.0;
}

}  // namespace

ApproachPath ApproachPath::geometric(ApproachKind kind, double delta0, double q, int rungs) {
  if (!(delta0 > 0.0) || !(q > 0.0 && q < 1.0) || rungs < 2) {
    throw ValidationError("approach ladder needs delta0 > 0, 0 < q < 1 and at least 2 rungs");
  }
  ApproachPath path;
  path.kind = kind;
  for (int k = 0; k < rungs; ++k) {
    path.offsets.push_back(delta0 * std::pow(q, k));
  }
  return path;
}

void ApproachPath::validate() const {
  if (offsets.size() < 2) {
    throw ValidationError("approach ladder needs at least 2 offsets");
  }
  for (std::size_t k = 0; k < offsets.size(); ++k) {
    if (!(offsets[k] > 0.0) || (k > 0 && !(offsets[k] < offsets[k - 1]))) {
      throw ValidationError("approach offsets must be positive and strictly decreasing");
    }
  }
}

ApproachPath default_disk_ladder(const Region& e) {
  double d0 = 0.1;
  if (!e.empty()) {
    d0 = std::min(d0, 0.5 * e.distance(Point{1.0, 0.0}));
  }
  if (!(d0 > 0.0)) {
    throw ValidationError("E touches the boundary point 1");
  }
  return ApproachPath::geometric(ApproachKind::kRealAxisToOne, d0, 0.5, 5);
}

LinearFit weighted_fit(const std::vector<double>& x, std::size_t p, const std::vector<double>& y,
                       const std::vector<double>& y_cov) {
  const std::size_t k = y.size();
  if (p == 0 || k < p || x.size() != k * p || y_cov.size() != k * k) {
    throw ValidationError("degenerate fit: not enough observations");
  }
  double max_var = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    max_var = std::max(max_var, y_cov[i * k + i]);
  }
  Eigen::MatrixXd design(k, p);
  Eigen::VectorXd obs(k);
  Eigen::VectorXd w(k);
  Eigen::MatrixXd sigma(k, k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < p; ++j) {
      design(i, j) = x[i * p + j];
    }
    for (std::size_t j = 0; j < k; ++j) {
      sigma(i, j) = y_cov[i * k + j];
    }
    obs(i) = y[i];
    const double v = y_cov[i * k + i];
    w(i) = max_var > 0.0 ? 1.0 / (v > 0.0 ? v : max_var) : 1.0;
  }
  const Eigen::MatrixXd xtw = design.transpose() * w.asDiagonal();
  const Eigen::MatrixXd normal = xtw * design;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(normal);
  if (!lu.isInvertible()) {
    throw ValidationError("degenerate fit: singular design");
  }
  const Eigen::MatrixXd a = lu.solve(xtw);
  const Eigen::VectorXd beta = a * obs;
  const Eigen::MatrixXd cov = a * sigma * a.transpose();
  LinearFit fit;
  fit.coef.assign(beta.data(), beta.data() + p);
  fit.coef_cov.resize(p * p);
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = 0; j < p; ++j) {
      fit.coef_cov[i * p + j] = cov(i, j);
    }
  }
  if (k > p && max_var > 0.0) {
    const Eigen::VectorXd r = obs - design * beta;
    const double chi2 = (r.array().square() * w.array()).sum();
    fit.reduced_chi = std::sqrt(chi2 / static_cast<double>(k - p));
  }
  return fit;
}

// ---------------------------------------------------------------------------
// hcap

std::vector<double> default_heights(const Region& e) {
  double top = 0.0;
  if (auto box = e.bounding_box()) {
    top = std::max(0.0, box->ymax);
  }
  const double y0 = std::max(5.0, 2.5 * top);
  return {y0, 2.0 * y0, 4.0 * y0};
}

CapacityEstimate hcap_estimate(const Region& e, const std::vector<double>& heights, std::int64_t n,
                               std::uint64_t seed, const WalkOptions& options) {
  if (heights.size() < 2) {
    throw ValidationError("degenerate fit: hcap needs at least 2 heights");
  }
  if (!e.bounded()) {
    throw ValidationError("hcap needs a bounded set");
  }
  double top = 0.0;
  if (auto box = e.bounding_box()) {
    top = box->ymax;
  }
  std::vector<double> ys = heights;
  std::sort(ys.begin(), ys.end());
  for (std::size_t i = 0; i < ys.size(); ++i) {
    if (!(ys[i] > 2.0 * top) || (i > 0 && ys[i] == ys[i - 1])) {
      throw ValidationError("heights must be distinct and above twice the top of E");
    }
  }
  std::vector<Point> starts;
  for (const double y : ys) {
    starts.emplace_back(0.0, y);
  }
  const WalkDomain w{DomainTag::kUpperHalfPlane, e};
  const CoupledSample s = sample_coupled(
      w, starts, n, seed, options, [](std::size_t, const ExitSample& x, bool&) {
        return x.terminated_on == HitPart::kObstacle ? x.position.imag() : 0.0;
      });

  const std::size_t k = ys.size();
  const std::size_t p = k >= 3 ? 2 : 1;
  std::vector<double> design(k * p);
  std::vector<double> cov(k * k);
  for (std::size_t i = 0; i < k; ++i) {
    design[i * p] = 1.0 / ys[i];
    if (p == 2) {
      design[i * p + 1] = 1.0 / (ys[i] * ys[i]);
    }
    for (std::size_t j = 0; j < k; ++j) {
      cov[i * k + j] = s.covariance_of_means(i, j);
    }
  }
  const LinearFit fit = weighted_fit(design, p, s.mean, cov);

  CapacityEstimate c;
  c.value = fit.coef[0];
  c.std_error = std::sqrt(std::max(0.0, fit.coef_cov[0]));
  c.fit_residual = fit.reduced_chi;
  for (std::size_t i = 0; i < k; ++i) {
    c.offsets_used.push_back(1.0 / ys[i]);
    c.raw.push_back(s.mean[i]);
    c.raw_std_error.push_back(std::sqrt(std::max(0.0, s.variance_of_mean(i))));
  }
  c.n_samples = s.n;
  finish_flags(c);
  return c;
}

// ---------------------------------------------------------------------------
// relcap

CapacityEstimate relcap_estimate(const Region& e, const ApproachPath& path, std::int64_t n,
                                 std::uint64_t seed, const WalkOptions& options) {
  path.validate();
  if (path.kind != ApproachKind::kRealAxisToOne) {
    throw ValidationError("relcap_estimate supports the real-axis approach to 1 only");
  }
  const BoundaryPoint z0 = BoundaryPoint::one_on_unit_circle();
  if (!inner_distance_positive(e, DomainTag::kUnitDisk, z0, path.offsets.front())) {
    throw ValidationError("the approach path meets E (inner distance check failed)");
  }
  const std::size_t k = path.offsets.size();
  std::vector<Point> starts;
  for (const double d : path.offsets) {
    starts.emplace_back(1.0 - d, 0.0);
  }
  const WalkDomain w{DomainTag::kUnitDisk, e};
  // log q_k = -E[1{obstacle} g_U(B, x_k)], with r(U, x) = 1 - x^2 exact.
  const CoupledSample s = sample_coupled(
      w, starts, n, seed, options,
      [&starts](std::size_t a, const ExitSample& x, bool& guard) {
        if (x.terminated_on != HitPart::kObstacle) {
          return 0.0;
        }
        if (std::abs(x.position - starts[a]) < 1e-12) {
          guard = true;
        }
        return base_green(DomainTag::kUnitDisk, x.position, starts[a]);
      });

  std::vector<double> ck(k);
  std::vector<double> jac(k);
  for (std::size_t a = 0; a < k; ++a) {
    const double d = path.offsets[a];
    const double q = std::exp(-s.mean[a]);
    ck[a] = -std::expm1(-s.mean[a]) / (2.0 * d * d);
    jac[a] = q / (2.0 * d * d);
  }
  std::vector<double> cov(k * k);
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = 0; b < k; ++b) {
      cov[a * k + b] = jac[a] * jac[b] * s.covariance_of_means(a, b);
    }
  }
  // c(delta) = c + b delta + O(delta^2) along the ladder; the intercept is the
  // extrapolated capacity.
  std::vector<double> design(k * 2);
  for (std::size_t a = 0; a < k; ++a) {
    design[a * 2] = 1.0;
    design[a * 2 + 1] = path.offsets[a];
  }
  const LinearFit fit = weighted_fit(design, 2, ck, cov);

  CapacityEstimate c;
  c.value = fit.coef[0];
  c.std_error = std::sqrt(std::max(0.0, fit.coef_cov[0]));
  c.fit_residual = fit.reduced_chi;
  c.offsets_used = path.offsets;
  c.raw = ck;
  for (std::size_t a = 0; a < k; ++a) {
    c.raw_std_error.push_back(std::sqrt(std::max(0.0, cov[a * k + a])));
  }
  c.n_samples = s.n;
  c.guard_flag = s.guard_hits > 0;
  finish_flags(c);
  return c;
}

// ---------------------------------------------------------------------------
// Transport

CapacityEstimate mobius_transport(const CapacityEstimate& c, TransportRule rule, Point factor) {
  const double m = std::norm(factor);
  if (!(m > 0.0)) {
    throw ValidationError("Moebius transport needs a nonzero scale factor");
  }
  const double s = rule == TransportRule::kInfinityScaling ? m : 1.0 / m;
  CapacityEstimate out = c;
  out.value *= s;
  out.std_error *= s;
  for (double& r : out.raw) {
    r *= s;
  }
  for (double& r : out.raw_std_error) {
    r *= s;
  }
  return out;
}

Point cayley(Point z) { return Point{0.0, 1.0} * (1.0 + z) / (1.0 - z); }

HalfPlaneImage disk_to_halfplane_image(const Region& e, int chords) {
  if (chords < 1) {
    throw ValidationError("chord count must be positive");
  }
  if (!e.empty() && !(e.distance(Point{1.0, 0.0}) > 0.0)) {
    throw ValidationError("E touches z = 1; its image is unbounded");
  }
  HalfPlaneImage out;
  std::vector<Primitive> prims;
  // Image of the path a -> b as a polyline, tracking the arc-to-chord gap.
  auto polyline = [&](Point a, Point b, std::vector<Point>& pts) {
    for (int j = 0; j < chords; ++j) {
      const Point p0 = a + (b - a) * (static_cast<double>(j) / chords);
      const Point p1 = a + (b - a) * (static_cast<double>(j + 1) / chords);
      const Point w0 = cayley(p0);
      const Point w1 = cayley(p1);
      const Point wm = cayley(0.5 * (p0 + p1));
      out.hausdorff_error = std::max(out.hausdorff_error, segment_distance(w0, w1, wm));
      pts.push_back(w0);
    }
  };
  for (const auto& prim : e.primitives()) {
    if (const auto* d = std::get_if<Disk>(&prim)) {
      const Point a = 1.0 - d->center;
      const double den = std::norm(a) - d->radius * d->radius;
      prims.emplace_back(Disk{Point{0.0, -1.0} + Point{0.0, 2.0} * std::conj(a) / den,
                              2.0 * d->radius / den});
    } else if (const auto* poly = std::get_if<Polygon>(&prim)) {
      Polygon image;
      const auto& v = poly->vertices;
      for (std::size_t i = 0; i < v.size(); ++i) {
        polyline(v[i], v[(i + 1) % v.size()], image.vertices);
      }
      prims.emplace_back(std::move(image));
    } else if (const auto* s = std::get_if<Segment>(&prim)) {
      std::vector<Point> pts;
      polyline(s->a, s->b, pts);
      pts.push_back(cayley(s->b));
      for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        prims.emplace_back(Segment{pts[i], pts[i + 1]});
      }
    } else {
      throw ValidationError("the exterior of the unit disk has no bounded image");
    }
  }
  out.region = Region(std::move(prims));
  return out;
}

}  // namespace relcap
