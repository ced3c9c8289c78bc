#pragma once

#include <cstdint>
#include <vector>

#include "relcap/geometry.hpp"
#include "relcap/potential.hpp"

namespace relcap {

enum class CapacityMethod { kWos, kGrid, kAnalytic };

struct CapacityEstimate {
  double value = 0.0;
  double std_error = 0.0;
  /// Reduced chi of the extrapolation fit (0 when the fit is exact).
  double fit_residual = 0.0;
  /// Ladder offsets delta_k (relcap) or 1/Y (hcap), strictly decreasing.
  std::vector<double> offsets_used;
  /// Per-offset raw values: c_k for relcap, m(Y) for hcap.
  std::vector<double> raw;
  std::vector<double> raw_std_error;
  CapacityMethod method = CapacityMethod::kWos;
  std::int64_t n_samples = 0;

  bool negative_flag = false;    // value < -3 std_error
  bool divergence_flag = false;  // fit misfit well beyond noise
  bool guard_flag = false;       // log-singularity guard tripped
};

enum class ApproachKind { kRealAxisToOne, kImaginaryAxisToInfinity };

/// Geometric offsets delta_k = delta0 * q^k (disk: delta = |1 - x|; half-plane:
/// delta = 1/|z|).
struct ApproachPath {
  ApproachKind kind = ApproachKind::kRealAxisToOne;
  std::vector<double> offsets;

  static ApproachPath geometric(ApproachKind kind, double delta0, double q, int rungs);
  void validate() const;
};

/// delta0 = min(0.1, dist(1, E)/2), q = 1/2, 5 rungs.
ApproachPath default_disk_ladder(const Region& e);

/// Weighted least squares of y against the columns of x (row-major, rows =
/// observations) with the full covariance of y propagated to the coefficients.
struct LinearFit {
  std::vector<double> coef;
  std::vector<double> coef_cov;  // p x p
  double reduced_chi = 0.0;
};

LinearFit weighted_fit(const std::vector<double>& x, std::size_t p, const std::vector<double>& y,
                       const std::vector<double>& y_cov);

/// Parts of E below the real axis are never reached and so ignored.
CapacityEstimate hcap_estimate(const Region& e, const std::vector<double>& heights, std::int64_t n,
                               std::uint64_t seed, const WalkOptions& options = {});

/// Heights {1, 2, 4} * max(5, 2.5 sup Im E).
std::vector<double> default_heights(const Region& e);

CapacityEstimate relcap_estimate(const Region& e, const ApproachPath& path, std::int64_t n,
                                 std::uint64_t seed, const WalkOptions& options = {});

enum class TransportRule {
  kInfinityScaling,   // f(z) = a z + b at infinity: multiply by |a|^2
  kFiniteDerivative,  // divide by |f'(z0)|^2
};

CapacityEstimate mobius_transport(const CapacityEstimate& c, TransportRule rule, Point factor);

/// T(z) = i(1 + z)/(1 - z): U onto H with 1 going to infinity.
Point cayley(Point z);

struct HalfPlaneImage {
  Region region;
  double hausdorff_error = 0.0;
};

/// Image of E under T. Disks map exactly; polygon edges and segments become
/// polylines of `chords` pieces per edge.
HalfPlaneImage disk_to_halfplane_image(const Region& e, int chords = 64);

}  // namespace relcap
