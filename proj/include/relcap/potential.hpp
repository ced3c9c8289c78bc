#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "relcap/geometry.hpp"

namespace relcap {

class WalkError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// SplitMix64; small, fast and good enough to seed one walk per stream.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

/// Independent sub-seed for stream `stream` of a run seeded with `seed`.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

/// Worker count: OpenMP's default capped by RELCAP_THREADS when set.
int worker_count();

struct WalkDomain {
  DomainTag base = DomainTag::kUnitDisk;
  Region obstacle;

  bool contains(Point p) const;
  /// Distance to the base boundary (|z| = 1 or the real axis).
  double base_distance(Point p) const;
  Point base_projection(Point p) const;
};

enum class HitPart { kBase, kObstacle };

struct ExitSample {
  Point position;
  std::int64_t steps = 0;
  HitPart terminated_on = HitPart::kBase;
};

struct WalkOptions {
  /// Termination distance; negative means 1e-4 times the domain scale.
  double eps = -1.0;
  std::int64_t max_steps = 1000000;
  /// Height cap for H; negative means 64 * (obstacle diameter + |start|).
  /// A walker above it jumps straight down to the obstacle ceiling.
  double r_cap = -1.0;
  /// In H, jump straight to the horizontal line through the top of the
  /// obstacle when far above it (exact Cauchy hitting law).
  bool fast_exit = false;
  /// Walks per shard; results depend on (seed, shard size) only.
  std::int64_t shard_size = 1024;
};

/// Resolved per-domain walk parameters.
struct WalkParams {
  double eps = 0.0;
  double r_cap = 0.0;  // 0 disables the cap
  double y_top = 0.0;  // obstacle ceiling in H (0 if empty)
  bool fast_exit = false;
  std::int64_t max_steps = 0;
};

/// `starts` are used for the scale of the H defaults.
WalkParams resolve_walk_params(const WalkDomain& w, const std::vector<Point>& starts,
                               const WalkOptions& options);

ExitSample wos_exit_sample(const WalkDomain& w, Point start, const WalkParams& params,
                           SplitMix64& rng);

struct Estimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::int64_t n_samples = 0;
  std::uint64_t seed = 0;
  /// Set when a log-singularity guard was triggered.
  bool guard_flag = false;
};

/// Per-start payoff of one exit sample; may set `guard`.
using Payoff = std::function<double(std::size_t start_index, const ExitSample& exit, bool& guard)>;

/// Sample means and sample covariance of payoffs at several starts, with
/// walk i at every start driven by the same random stream (common random
/// numbers).
struct CoupledSample {
  std::vector<double> mean;
  std::vector<double> cov;  // row-major K x K sample covariance of single payoffs
  std::int64_t n = 0;
  std::int64_t guard_hits = 0;

  std::size_t size() const { return mean.size(); }
  double variance_of_mean(std::size_t k) const { return cov[k * size() + k] / n; }
  double covariance_of_means(std::size_t a, std::size_t b) const {
    return cov[a * size() + b] / n;
  }
};

CoupledSample sample_coupled(const WalkDomain& w, const std::vector<Point>& starts,
                             std::int64_t n, std::uint64_t seed, const WalkOptions& options,
                             const Payoff& payoff);

/// E^start[Im B_tau] for base H; exits on the real axis count as exactly 0.
Estimate expected_im_exit(const WalkDomain& w, Point start, std::int64_t n, std::uint64_t seed,
                          const WalkOptions& options = {});

/// kBoundaryLog averages log|B_tau - z| directly. kGreenDifference uses
/// log r(W, z) = log r(base, z) - E^z[1{obstacle hit} g_base(B_tau, z)], which
/// has the same expectation and vanishing variance when the obstacle is rarely hit.
enum class InnerRadiusMethod { kBoundaryLog, kGreenDifference };

/// Log inner radius of the base domain (exact): log(1 - |z|^2) for U, log(2 Im z) for H.
double base_log_inner_radius(DomainTag base, Point z);

/// Green function of the base domain, g(zeta, z) >= 0.
double base_green(DomainTag base, Point zeta, Point z);

/// Estimate of log r(W, z); radius() gives exp(mean).
struct InnerRadius : Estimate {
  double radius() const;
};

InnerRadius inner_radius(const WalkDomain& w, Point z, std::int64_t n, std::uint64_t seed,
                         const WalkOptions& options = {},
                         InnerRadiusMethod method = InnerRadiusMethod::kBoundaryLog);

// ---------------------------------------------------------------------------
// Finite-difference oracle

struct GridSolveOptions {
  int max_iterations = 20000;
  double tolerance = 1e-10;  // relative residual
};

/// Value on the boundary next to an interior node, and where the boundary
/// crosses the grid line as a fraction of the node spacing (1 = at the node).
struct GridBoundary {
  double value = 0.0;
  double fraction = 1.0;
};

/// Called with an unknown node and its non-unknown neighbour.
using GridBoundaryRule = std::function<GridBoundary(Point interior, Point exterior)>;

/// Discrete Dirichlet problem on the cell-midpoint nodes of `mask`: occupied
/// nodes off the outer frame are unknowns; the 5-point Laplacian is shortened
/// (Shortley-Weller) where `rule` reports a crossing closer than one spacing.
/// The default rule puts the value log|exterior - z| at the exterior node.
/// z must be an unknown node. Returns h(z).
double grid_green_regular_part(const CartesianMask& mask, Point z,
                               const GridBoundaryRule& rule = {},
                               const GridSolveOptions& options = {});

struct GridOracleOptions {
  /// Target cells across the domain (U) or across the window (H).
  int cells = 512;
  /// Half-width of the H window in units of max(Im z, obstacle extent).
  double window = 8.0;
  GridSolveOptions solve;
};

/// log r(W, z) from the grid oracle, with the grid placed so that z is a
/// node. In H the real axis lies on a node row and the outer frame carries the
/// obstacle-free value log|p - conj(z)|.
double grid_log_inner_radius(const WalkDomain& w, Point z, const GridOracleOptions& options = {});

}  // namespace relcap
