#include "relcap/extremal.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace relcap {

namespace {

double pick_constant(double rho) { return 4.0 * rho / ((1.0 + rho) * (1.0 + rho)); }
double two_slit_constant(double t) { return 2.0 * t / (1.0 + t * t); }

// Of the candidates, the one of least modulus (the roots of both quadratics
// have product of modulus one, so this is the root in U).
Point inner_root(Point c, Point r, bool pick) {
  const Point num = 2.0 * c;
  const Point base = pick ? 2.0 * c + 1.0 : Point{1.0, 0.0};
  Point best{std::numeric_limits<double>::infinity(), 0.0};
  for (const Point den : {base + r, base - r}) {
    if (std::abs(den) == 0.0) {
      continue;
    }
    const Point w = num / den;
    if (std::abs(w) < std::abs(best)) {
      best = w;
    }
  }
  return best;
}

// 1 - f(1 - h) for real h in (0, 1), without cancellation near h = 0.
double radial_offset(const MapSpec& spec, double h) {
  switch (spec.kind) {
    case MapKind::kSector: {
      const double q_minus_1 = -h + 0.5 * h * h;
      const double root_minus_1 = q_minus_1 / (std::sqrt(1.0 + q_minus_1) + 1.0);
      const double g_minus_1 = 2.0 * root_minus_1 / (2.0 - h);
      return -std::expm1(spec.param / kPi * std::log1p(g_minus_1));
    }
    case MapKind::kPick: {
      const double c = pick_constant(spec.param) * (1.0 - h) / (h * h);
      return 2.0 / (1.0 + std::sqrt(1.0 + 4.0 * c));
    }
    case MapKind::kTwoSlit: {
      const double c = two_slit_constant(spec.param) * (1.0 - h) / (h * (2.0 - h));
      return 2.0 / ((2.0 * c + 1.0) + std::sqrt(4.0 * c * c + 1.0));
    }
  }
  return 0.0;
}

double singularity_distance(const MapSpec& spec) {
  switch (spec.kind) {
    case MapKind::kSector:
      return std::sqrt(2.0);
    case MapKind::kPick:
      return 2.0 * std::sqrt(pick_constant(spec.param));
    case MapKind::kTwoSlit:
      return 2.0 * std::sin(0.5 * std::asin(two_slit_constant(spec.param)));
  }
  return 1.0;
}

struct Extrapolated {
  double value;
  double error;
};

// Neville's tableau evaluated at h = 0.
Extrapolated extrapolate_to_zero(const std::vector<double>& h, const std::vector<double>& y) {
  const std::size_t n = h.size();
  std::vector<double> t = y;
  double previous = y[n - 1];
  double current = y[n - 1];
  for (std::size_t j = 1; j < n; ++j) {
    for (std::size_t i = n - 1; i >= j; --i) {
      t[i] = t[i] + (t[i] - t[i - 1]) * h[i] / (h[i - j] - h[i]);
    }
    previous = current;
    current = t[n - 1];
  }
  return {current, std::abs(current - previous)};
}

}  // namespace

void MapSpec::validate() const {
  switch (kind) {
    case MapKind::kSector:
      if (!(param > 0.0 && param < 2.0 * kPi)) {
        throw ValidationError("sector angle must lie in (0, 2pi)");
      }
      return;
    case MapKind::kPick:
    case MapKind::kTwoSlit:
      if (!(param > 0.0 && param < 1.0)) {
        throw ValidationError("map parameter must lie in (0, 1)");
      }
      return;
  }
}

std::string MapSpec::name() const {
  switch (kind) {
    case MapKind::kSector:
      return "sector";
    case MapKind::kPick:
      return "pick";
    case MapKind::kTwoSlit:
      return "two-slit";
  }
  return "";
}

MapKind parse_map_kind(const std::string& name) {
  if (name == "sector") return MapKind::kSector;
  if (name == "pick") return MapKind::kPick;
  if (name == "two-slit") return MapKind::kTwoSlit;
  throw ValidationError("unknown map: " + name);
}

Point evaluate_map(const MapSpec& spec, Point z) {
  spec.validate();
  if (!(std::abs(z) < 1.0)) {
    throw ValidationError("map argument must lie in the open unit disk");
  }
  Point w;
  switch (spec.kind) {
    case MapKind::kSector: {
      const Point g = (z - 1.0 + std::sqrt(2.0 * z * z + 2.0)) / (z + 1.0);
      return std::exp(spec.param / kPi * std::log(g));
    }
    case MapKind::kPick: {
      const Point c = pick_constant(spec.param) * z / ((1.0 - z) * (1.0 - z));
      w = inner_root(c, std::sqrt(4.0 * c + 1.0), true);
      break;
    }
    case MapKind::kTwoSlit: {
      const Point c = two_slit_constant(spec.param) * z / ((1.0 - z) * (1.0 + z));
      w = inner_root(c, std::sqrt(4.0 * c * c + 1.0), false);
      break;
    }
  }
  if (!(std::abs(w) <= 1.0 + 1e-12)) {
    throw std::domain_error("no root of the defining equation inside the unit disk");
  }
  return w;
}

double defining_equation_residual(const MapSpec& spec, Point z, Point w) {
  Point lhs;
  Point rhs;
  switch (spec.kind) {
    case MapKind::kSector:
      return 0.0;
    case MapKind::kPick:
      lhs = pick_constant(spec.param) * z / ((1.0 - z) * (1.0 - z));
      rhs = w / ((1.0 - w) * (1.0 - w));
      break;
    case MapKind::kTwoSlit:
      lhs = two_slit_constant(spec.param) * z / ((1.0 - z) * (1.0 + z));
      rhs = w / ((1.0 - w) * (1.0 + w));
      break;
  }
  return std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs));
}

Series map_series(const MapSpec& spec, int order) {
  spec.validate();
  const Series s = Series::variable(order);
  const Series one = Series::constant(order, 1.0);
  switch (spec.kind) {
    case MapKind::kSector: {
      const Series root = sqrt(one + s + s * s * 0.5);
      const Series g = (s + root * 2.0) / (s + 2.0);
      return pow(g, spec.param / kPi);
    }
    case MapKind::kPick: {
      // (1 - u)/u^2 = A (1 + s)/s^2 with u = 1 - w, i.e. u (1 - u)^(-1/2) = R(s)
      const double a = pick_constant(spec.param);
      const Series r = -s * pow(s + 1.0, -0.5) * (1.0 / std::sqrt(a));
      const Series phi = s * pow(one - s, -0.5);
      const Series u = compose(reverse(phi), r);
      return one - u;
    }
    case MapKind::kTwoSlit: {
      // u (2 - u)/(1 - u) = -s (2 + s)/(B (1 + s))
      const double b = two_slit_constant(spec.param);
      const Series r = -s * (s + 2.0) / (s + 1.0) * (1.0 / b);
      const Series phi = s * (-s + 2.0) / (one - s);
      const Series u = compose(reverse(phi), r);
      return one - u;
    }
  }
  return one;
}

TaylorJet analytic_jet(const MapSpec& spec) {
  const Series f = map_series(spec, 6);
  return {f[1].real(), f[2], f[3]};
}

std::vector<double> default_jet_steps(const MapSpec& spec) {
  spec.validate();
  const double h0 = 0.25 * std::min(1.0, singularity_distance(spec));
  std::vector<double> steps;
  for (int k = 0; k < 8; ++k) {
    steps.push_back(std::ldexp(h0, -k));
  }
  return steps;
}

NumericJet numeric_jet(const MapSpec& spec, const std::vector<double>& steps) {
  spec.validate();
  if (steps.size() < 4) {
    throw ValidationError("numeric jet needs at least four steps");
  }
  for (std::size_t i = 0; i < steps.size(); ++i) {
    if (!(steps[i] > 0.0 && steps[i] < 1.0) || (i > 0 && !(steps[i] < 0.9 * steps[i - 1]))) {
      throw ValidationError("numeric jet steps must decrease in (0, 1) by at least 10% each");
    }
  }
  const std::size_t n = steps.size();
  std::vector<double> d(n);
  for (std::size_t i = 0; i < n; ++i) {
    d[i] = radial_offset(spec, steps[i]) / steps[i];
  }
  NumericJet out;
  const Extrapolated a1 = extrapolate_to_zero(steps, d);
  for (std::size_t i = 0; i < n; ++i) {
    d[i] = (a1.value - d[i]) / steps[i];
  }
  const Extrapolated a2 = extrapolate_to_zero(steps, d);
  for (std::size_t i = 0; i < n; ++i) {
    d[i] = (a2.value - d[i]) / steps[i];
  }
  const Extrapolated a3 = extrapolate_to_zero(steps, d);
  out.jet = {a1.value, a2.value, a3.value};
  out.error = {a1.error, a2.error, a3.error};
  return out;
}

Region omitted_set(const MapSpec& spec) {
  spec.validate();
  switch (spec.kind) {
    case MapKind::kSector: {
      // wedge {|arg w| >= alpha/2} reaching radius 2, outside U
      const double start = 0.5 * spec.param;
      const double span = 2.0 * kPi - spec.param;
      const int pieces = std::max(2, static_cast<int>(std::ceil(span / (kPi / 8.0))));
      Polygon wedge;
      wedge.vertices.push_back({0.0, 0.0});
      for (int k = 0; k <= pieces; ++k) {
        wedge.vertices.push_back(std::polar(2.0, start + span * k / pieces));
      }
      return Region({wedge});
    }
    case MapKind::kPick:
      return Region({Segment{{-1.0, 0.0}, {-spec.param, 0.0}}});
    case MapKind::kTwoSlit:
      return Region({Segment{{0.0, spec.param}, {0.0, 1.0}},
                     Segment{{0.0, -1.0}, {0.0, -spec.param}}});
  }
  return Region();
}

Complex schwarzian_at_one(const TaylorJet& jet) {
  if (jet.a1 == 0.0) {
    throw std::domain_error("Schwarzian needs a1 != 0");
  }
  return 6.0 * (jet.a3 / jet.a1 - jet.a2 * jet.a2 / (jet.a1 * jet.a1));
}

double class_b_residual(const TaylorJet& jet) {
  return (2.0 * jet.a2 + jet.a1 * (1.0 - jet.a1)).real();
}

double extremal_relcap(const TaylorJet& jet) {
  return -schwarzian_at_one(jet).real() / (6.0 * jet.a1 * jet.a1);
}

SchwarzianCheck schwarzian_bound_check(const TaylorJet& jet, const CapacityEstimate& relcap_e,
                                       double k, double equality_rel) {
  SchwarzianCheck out;
  const double a1sq = jet.a1 * jet.a1;
  out.lhs = -schwarzian_at_one(jet).real() / 6.0;
  out.rhs = a1sq * relcap_e.value;
  out.slack = out.lhs - out.rhs;
  out.std_error = a1sq * relcap_e.std_error;
  out.pass = out.slack >= -k * out.std_error;
  out.equality = std::abs(out.slack) <= std::max(equality_rel * std::abs(out.lhs), k * out.std_error);
  return out;
}

}  // namespace relcap
