#pragma once

#include <array>
#include <string>
#include <vector>

#include "relcap/capacity.hpp"
#include "relcap/geometry.hpp"
#include "relcap/series.hpp"

namespace relcap {

/// f(z) = 1 + a1 (z-1) + a2 (z-1)^2 + a3 (z-1)^3 + ...
struct TaylorJet {
  double a1 = 1.0;
  Complex a2{};
  Complex a3{};
};

enum class MapKind { kSector, kPick, kTwoSlit };

struct MapSpec {
  MapKind kind = MapKind::kSector;
  double param = 0.0;  // alpha in (0, 2pi), rho in (0, 1) or t in (0, 1)

  static MapSpec sector(double alpha) { return {MapKind::kSector, alpha}; }
  static MapSpec pick(double rho) { return {MapKind::kPick, rho}; }
  static MapSpec two_slit(double t) { return {MapKind::kTwoSlit, t}; }

  void validate() const;
  std::string name() const;
};

MapKind parse_map_kind(const std::string& name);

/// The catalog maps of U into U with f(1) = 1. Pick and two-slit values come
/// from their defining quadratics, taking the root inside U.
Point evaluate_map(const MapSpec& spec, Point z);

/// Relative residual of w in the implicit equation of a Pick or two-slit map
/// (0 for the sector map, which is explicit).
double defining_equation_residual(const MapSpec& spec, Point z, Point w);

/// Coefficients by power-series arithmetic in s = z - 1.
TaylorJet analytic_jet(const MapSpec& spec);

/// Full series of f(1 + s) to the given order.
Series map_series(const MapSpec& spec, int order = 6);

struct NumericJet {
  TaylorJet jet;
  std::array<double, 3> error{};
};

/// h_k = h0 2^-k, k = 0..7, with h0 a quarter of the distance from 1 to the
/// nearest singularity of the map (at most 1/4).
std::vector<double> default_jet_steps(const MapSpec& spec);

/// Neville extrapolation of radial difference quotients of f(1 - h).
NumericJet numeric_jet(const MapSpec& spec, const std::vector<double>& steps);

/// The omitted set U \ f(U) as a region.
Region omitted_set(const MapSpec& spec);

Complex schwarzian_at_one(const TaylorJet& jet);
double class_b_residual(const TaylorJet& jet);

/// relcap of the omitted set when the map is onto its complement:
/// -Re S_f(1) / (6 a1^2).
double extremal_relcap(const TaylorJet& jet);

struct SchwarzianCheck {
  double lhs = 0.0;  // -Re(a3/a1 - a2^2/a1^2)
  double rhs = 0.0;  // a1^2 relcap E
  double slack = 0.0;
  double std_error = 0.0;
  bool pass = false;
  bool equality = false;
};

/// Pass iff slack >= -k a1^2 stderr; equality when |slack| is within
/// max(equality_rel |lhs|, k a1^2 stderr).
SchwarzianCheck schwarzian_bound_check(const TaylorJet& jet, const CapacityEstimate& relcap_e,
                                       double k = 3.0, double equality_rel = 0.05);

}  // namespace relcap
