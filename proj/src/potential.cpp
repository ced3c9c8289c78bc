#include "relcap/potential.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <string>

namespace relcap {

namespace {

constexpr double kGuardDistance = 1e-12;

struct Moments {
  std::vector<double> mean;
  std::vector<double> m2;
  std::int64_t count = 0;
  std::int64_t guard_hits = 0;

  explicit Moments(std::size_t k) : mean(k, 0.0), m2(k * k, 0.0) {}

  void add(const std::vector<double>& y, std::vector<double>& delta) {
    const std::size_t k = mean.size();
    ++count;
    for (std::size_t a = 0; a < k; ++a) {
      delta[a] = y[a] - mean[a];
      mean[a] += delta[a] / static_cast<double>(count);
    }
    for (std::size_t a = 0; a < k; ++a) {
      for (std::size_t b = 0; b < k; ++b) {
        m2[a * k + b] += delta[a] * (y[b] - mean[b]);
      }
    }
  }

  void merge(const Moments& o) {
    if (o.count == 0) {
      return;
    }
    const std::size_t k = mean.size();
    const double na = static_cast<double>(count);
    const double nb = static_cast<double>(o.count);
    const double n = na + nb;
    std::vector<double> delta(k);
    for (std::size_t a = 0; a < k; ++a) {
      delta[a] = o.mean[a] - mean[a];
    }
    for (std::size_t a = 0; a < k; ++a) {
      for (std::size_t b = 0; b < k; ++b) {
        m2[a * k + b] += o.m2[a * k + b] + delta[a] * delta[b] * na * nb / n;
      }
    }
    for (std::size_t a = 0; a < k; ++a) {
      mean[a] += delta[a] * nb / n;
    }
    count += o.count;
    guard_hits += o.guard_hits;
  }
};

double guarded_log(double r, bool& guard) {
  if (r < kGuardDistance) {
    guard = true;
    return std::log(kGuardDistance);
  }
  return std::log(r);
}

}  // namespace

std::uint64_t SplitMix64::next() {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  SplitMix64 a(stream ^ 0x6a09e667f3bcc909ULL);
  SplitMix64 b(seed ^ a.next());
  return b.next();
}

int worker_count() {
  int n = omp_get_max_threads();
  if (const char* env = std::getenv("RELCAP_THREADS")) {
    const int cap = std::atoi(env);
    if (cap > 0) {
      n = std::min(n, cap);
    }
  }
  return std::max(1, n);
}

// ---------------------------------------------------------------------------
// Walk domain

bool WalkDomain::contains(Point p) const {
  return in_domain(base, p) && !obstacle.contains(p);
}

double WalkDomain::base_distance(Point p) const {
  return base == DomainTag::kUnitDisk ? 1.0 - std::abs(p) : p.imag();
}

Point WalkDomain::base_projection(Point p) const {
  if (base == DomainTag::kUnitDisk) {
    const double r = std::abs(p);
    return r == 0.0 ? Point{1.0, 0.0} : p / r;
  }
  return {p.real(), 0.0};
}

WalkParams resolve_walk_params(const WalkDomain& w, const std::vector<Point>& starts,
                               const WalkOptions& options) {
  WalkParams params;
  params.max_steps = options.max_steps;
  if (w.base == DomainTag::kUnitDisk) {
    params.eps = options.eps > 0.0 ? options.eps : 1e-4;
    return params;
  }
  double start_scale = 0.0;
  for (const Point s : starts) {
    start_scale = std::max(start_scale, std::abs(s));
  }
  double diam = 0.0;
  if (!w.obstacle.empty()) {
    const auto box = w.obstacle.bounding_box();
    if (!box) {
      throw ValidationError("obstacle in the half-plane must be bounded");
    }
    diam = box->diagonal();
    params.y_top = std::max(0.0, box->ymax);
  }
  const double scale = diam > 0.0 ? diam : std::max(start_scale, 1.0);
  params.eps = options.eps > 0.0 ? options.eps : 1e-4 * scale;
  params.r_cap = options.r_cap > 0.0 ? options.r_cap : 64.0 * (diam + start_scale);
  params.fast_exit = options.fast_exit;
  return params;
}

ExitSample wos_exit_sample(const WalkDomain& w, Point start, const WalkParams& params,
                           SplitMix64& rng) {
  const bool half_plane = w.base == DomainTag::kUpperHalfPlane;
  const bool has_obstacle = !w.obstacle.empty();
  Point z = start;
  for (std::int64_t steps = 0;; ++steps) {
    const double db = w.base_distance(z);
    double d = db;
    bool obstacle_nearer = false;
    if (has_obstacle) {
      const double dobs = w.obstacle.distance_below(z, db);
      if (dobs < db) {
        d = dobs;
        obstacle_nearer = true;
      }
    }
    if (d <= params.eps) {
      if (obstacle_nearer) {
        return {w.obstacle.nearest(z).point, steps, HitPart::kObstacle};
      }
      return {w.base_projection(z), steps, HitPart::kBase};
    }
    if (steps >= params.max_steps) {
      throw WalkError("walk exceeded " + std::to_string(params.max_steps) +
                      " steps; the domain is probably degenerate");
    }
    // Above the cap the walk would crawl; both cases jump with the exact
    // hitting law of the line Im = y_top seen from z.
    if (half_plane && ((params.fast_exit && z.imag() > 2.0 * params.y_top) ||
                       (params.r_cap > 0.0 && z.imag() > params.r_cap))) {
      const double h = z.imag() - params.y_top;
      const double x = z.real() + h * std::tan(kPi * (rng.uniform() - 0.5));
      if (params.y_top == 0.0) {
        return {Point{x, 0.0}, steps + 1, HitPart::kBase};
      }
      z = {x, params.y_top};
      continue;
    }
    z += std::polar(d, 2.0 * kPi * rng.uniform());
  }
}

// ---------------------------------------------------------------------------
// Coupled sampling

CoupledSample sample_coupled(const WalkDomain& w, const std::vector<Point>& starts,
                             std::int64_t n, std::uint64_t seed, const WalkOptions& options,
                             const Payoff& payoff) {
  if (n < 1) {
    throw ValidationError("sample count must be at least 1");
  }
  if (starts.empty()) {
    throw ValidationError("at least one start point is required");
  }
  const WalkParams params = resolve_walk_params(w, starts, options);
  for (const Point s : starts) {
    if (!w.contains(s)) {
      throw ValidationError("start point lies outside the walk domain");
    }
  }
  const std::size_t k = starts.size();
  const std::int64_t shard = std::max<std::int64_t>(1, options.shard_size);
  const std::int64_t shards = (n + shard - 1) / shard;
  std::vector<Moments> parts(static_cast<std::size_t>(shards), Moments(k));
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(shards));

#pragma omp parallel for schedule(dynamic, 1) num_threads(worker_count())
  for (std::int64_t s = 0; s < shards; ++s) {
    try {
      Moments& m = parts[static_cast<std::size_t>(s)];
      std::vector<double> y(k);
      std::vector<double> delta(k);
      const std::int64_t end = std::min(n, (s + 1) * shard);
      for (std::int64_t i = s * shard; i < end; ++i) {
        const std::uint64_t walk_seed = derive_seed(seed, static_cast<std::uint64_t>(i));
        bool guard = false;
        for (std::size_t a = 0; a < k; ++a) {
          SplitMix64 rng(walk_seed);
          const ExitSample exit = wos_exit_sample(w, starts[a], params, rng);
          y[a] = payoff(a, exit, guard);
        }
        if (guard) {
          ++m.guard_hits;
        }
        m.add(y, delta);
      }
    } catch (...) {
      errors[static_cast<std::size_t>(s)] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) {
      std::rethrow_exception(e);
    }
  }

  Moments total(k);
  for (const Moments& m : parts) {
    total.merge(m);
  }
  CoupledSample out;
  out.mean = total.mean;
  out.n = total.count;
  out.guard_hits = total.guard_hits;
  out.cov.assign(k * k, 0.0);
  if (total.count > 1) {
    for (std::size_t i = 0; i < k * k; ++i) {
      out.cov[i] = total.m2[i] / static_cast<double>(total.count - 1);
    }
  }
  return out;
}

Estimate expected_im_exit(const WalkDomain& w, Point start, std::int64_t n, std::uint64_t seed,
                          const WalkOptions& options) {
  if (w.base != DomainTag::kUpperHalfPlane) {
    throw ValidationError("expected_im_exit needs the upper half-plane as base");
  }
  const CoupledSample s = sample_coupled(
      w, {start}, n, seed, options, [](std::size_t, const ExitSample& e, bool&) {
        return e.terminated_on == HitPart::kObstacle ? e.position.imag() : 0.0;
      });
  Estimate est;
  est.mean = s.mean[0];
  est.std_error = std::sqrt(std::max(0.0, s.variance_of_mean(0)));
  est.n_samples = s.n;
  est.seed = seed;
  return est;
}

// ---------------------------------------------------------------------------
// Inner radius

double base_log_inner_radius(DomainTag base, Point z) {
  if (base == DomainTag::kUnitDisk) {
    return std::log(1.0 - std::norm(z));
  }
  return std::log(2.0 * z.imag());
}

double base_green(DomainTag base, Point zeta, Point z) {
  const double near = std::abs(zeta - z);
  const double far = base == DomainTag::kUnitDisk ? std::abs(1.0 - std::conj(z) * zeta)
                                                  : std::abs(zeta - std::conj(z));
  return std::max(0.0, std::log(far / std::max(near, kGuardDistance)));
}

double InnerRadius::radius() const { return std::exp(mean); }

InnerRadius inner_radius(const WalkDomain& w, Point z, std::int64_t n, std::uint64_t seed,
                         const WalkOptions& options, InnerRadiusMethod method) {
  Payoff payoff;
  if (method == InnerRadiusMethod::kBoundaryLog) {
    payoff = [z](std::size_t, const ExitSample& e, bool& guard) {
      return guarded_log(std::abs(e.position - z), guard);
    };
  } else {
    const DomainTag base = w.base;
    payoff = [z, base](std::size_t, const ExitSample& e, bool& guard) {
      if (e.terminated_on != HitPart::kObstacle) {
        return 0.0;
      }
      if (std::abs(e.position - z) < kGuardDistance) {
        guard = true;
      }
      return base_green(base, e.position, z);
    };
  }
  const CoupledSample s = sample_coupled(w, {z}, n, seed, options, payoff);
  InnerRadius est;
  est.mean = method == InnerRadiusMethod::kBoundaryLog
                 ? s.mean[0]
                 : base_log_inner_radius(w.base, z) - s.mean[0];
  est.std_error = std::sqrt(std::max(0.0, s.variance_of_mean(0)));
  est.n_samples = s.n;
  est.seed = seed;
  est.guard_flag = s.guard_hits > 0;
  return est;
}

}  // namespace relcap
