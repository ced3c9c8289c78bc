// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "relcap/capacity.hpp"
#include "relcap/extremal.hpp"
#include "relcap/potential.hpp"
#include "relcap/series.hpp"
#include "relcap/suites.hpp"

using namespace relcap;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

double rss(std::initializer_list<double> v) {
  double s = 0.0;
  for (const double x : v) s += x * x;
  return std::sqrt(s);
}

struct Outcome {
  bool pass = true;
  std::vector<std::string> lines;

  void check(bool ok, const char* fmt, ...) __attribute__((format(printf, 3, 4)));
};

void Outcome::check(bool ok, const char* fmt, ...) {
  char buf[512];
  va_list args;
  va_start(args, fmt);
  std::vsnprintf(buf, sizeof buf, fmt, args);
  va_end(args);
  lines.push_back(std::string(ok ? "  ok   " : "  MISS ") + buf);
  pass = pass && ok;
}

Outcome hcap_regression() {
  Outcome out;
  // z + hcap/z + ...: with w = 1/z, the 1/z coefficient is the w^2 term of w * map(1/w).
  const Series w = Series::variable(5);
  const double slit_target = sqrt(w * w + 1.0)[2].real();   // w sqrt(1/w^2 + 1)
  const double disk_target = (w * w + 1.0)[2].real();       // w (1/w + w)
  out.check(std::abs(slit_target - 0.5) < 1e-15, "slit oracle coefficient %.15g", slit_target);
  out.check(std::abs(disk_target - 1.0) < 1e-15, "half-disk oracle coefficient %.15g",
            disk_target);
  const std::vector<double> heights{5.0, 10.0, 20.0};
  struct Item {
    const char* name;
    Region e;
    double target;
  };
  const Item items[] = {{"slit [0,i]", Region({Segment{{0.0, 0.0}, {0.0, 1.0}}}), slit_target},
                        {"half-disk", Region({Disk{{0.0, 0.0}, 1.0}}), disk_target}};
  std::uint64_t seed = 101;
  for (const Item& it : items) {
    const auto t0 = Clock::now();
    const CapacityEstimate c = hcap_estimate(it.e, heights, 1000000, seed++);
    const double secs = seconds_since(t0);
    const double tol = std::max(0.02 * it.target, 3.0 * c.std_error);
    out.check(std::abs(c.value - it.target) <= tol, "%s: %.5f +- %.5f vs %.5f (tol %.5f)",
              it.name, c.value, c.std_error, it.target, tol);
    out.check(secs <= 60.0, "%s: %.1f s on %d worker(s) (limit 60 s)", it.name, secs,
              worker_count());
  }
  return out;
}

Region random_upper_disks(SplitMix64& rng) {
  const int count = 1 + static_cast<int>(rng.next() % 3);
  std::vector<Primitive> prims;
  for (int i = 0; i < count; ++i) {
    const double r = 0.1 + 0.4 * rng.uniform();
    const double x = -1.0 + 2.0 * rng.uniform();
    const double y = r + 0.05 + rng.uniform();
    prims.emplace_back(Disk{{x, y}, r});
  }
  return Region(std::move(prims));
}

Outcome scaling_law() {
  Outcome out;
  SplitMix64 rng(2024);
  for (int i = 0; i < 5; ++i) {
    const Region e = random_upper_disks(rng);
    const Region e2 = e.transformed({{2.0, 0.0}, {}});
    const std::vector<double> h = default_heights(e);
    std::vector<double> h2;
    for (const double y : h) h2.push_back(2.0 * y);
    const CapacityEstimate a = hcap_estimate(e, h, 200000, derive_seed(7, 2 * i));
    const CapacityEstimate b = hcap_estimate(e2, h2, 200000, derive_seed(7, 2 * i + 1));
    const double ratio = b.value / a.value;
    const double se = ratio * rss({a.std_error / a.value, b.std_error / b.value});
    out.check(std::abs(ratio - 4.0) <= 3.0 * se, "set %d: hcap(2E)/hcap(E) = %.4f +- %.4f", i,
              ratio, se);
  }
  return out;
}

Outcome transport_identity() {
  Outcome out;
  SplitMix64 rng(77);
  int done = 0;
  while (done < 3) {
    std::vector<Primitive> prims;
    const int count = 1 + static_cast<int>(rng.next() % 3);
    for (int k = 0; k < count; ++k) {
      const double r = 0.05 + 0.3 * rng.uniform();
      const Point c = std::polar(0.9 * std::sqrt(rng.uniform()), 2.0 * kPi * rng.uniform());
      prims.emplace_back(Disk{c, r});
    }
    const Region e(std::move(prims));
    if (!(e.distance({1.0, 0.0}) >= 0.15)) continue;
    const CapacityEstimate rc = relcap_estimate(e, default_disk_ladder(e), 200000,
                                                derive_seed(11, done));
    const Region image = disk_to_halfplane_image(e).region;
    const CapacityEstimate hc =
        hcap_estimate(image, default_heights(image), 200000, derive_seed(13, done));
    const double target = 0.25 * hc.value;
    const double se = rss({rc.std_error, 0.25 * hc.std_error});
    const double tol = std::max(0.07 * std::abs(target), 3.0 * se);
    out.check(std::abs(rc.value - target) <= tol, "set %d: relcap %.5f vs hcap/4 %.5f (tol %.5f)",
              done, rc.value, target, tol);
    ++done;
  }
  return out;
}

Outcome relcap_extremal() {
  Outcome out;
  struct Item {
    const char* name;
    MapSpec spec;
    double closed_form;
  };
  const double rho = 1.0 / 3.0;
  const Item items[] = {{"U minus B(pi)", MapSpec::sector(kPi), 0.25},
                        {"[-1,-1/3]", MapSpec::pick(rho), 1.0 / 32.0}};
  std::uint64_t seed = 500;
  for (const Item& it : items) {
    const double target = extremal_relcap(analytic_jet(it.spec));
    out.check(std::abs(target - it.closed_form) < 1e-12, "%s: jet target %.12f", it.name, target);
    const Region e = omitted_set(it.spec);
    const CapacityEstimate c = relcap_estimate(e, default_disk_ladder(e), 200000, seed++);
    const double tol = std::max(0.05 * target, 3.0 * c.std_error);
    out.check(std::abs(c.value - target) <= tol, "%s: %.5f +- %.5f vs %.5f (tol %.5f)", it.name,
              c.value, c.std_error, target, tol);
  }
  return out;
}

Outcome inequality_suites() {
  Outcome out;
  const SuiteKind kinds[] = {SuiteKind::kMonotonicity, SuiteKind::kChoquet,
                             SuiteKind::kPolarization, SuiteKind::kComposition,
                             SuiteKind::kCrSymmetrization, SuiteKind::kSteiner,
                             SuiteKind::kMarcus,       SuiteKind::kAveraging};
  double total = 0.0;
  for (const SuiteKind k : kinds) {
    SuiteConfig c;
    c.suite = k;
    c.trials = 100;
    const Report r = run_suite(c);
    total += r.runtime_seconds;
    out.check(r.fail_count() == 0 && r.rows.size() == 100,
              "%s: %zu pass, %zu flagged, %zu fail (%.1f s)", r.suite.c_str(), r.pass_count(),
              r.flagged_count(), r.fail_count(), r.runtime_seconds);
  }
  out.check(total <= 600.0, "combined runtime %.1f s on %d worker(s) (limit 600 s)", total,
            worker_count());
  return out;
}

Outcome extremal_exactness() {
  Outcome out;
  struct Family {
    MapKind kind;
    std::vector<double> params;
    std::function<double(double)> rhs;  // stated value of Re S_f(1) / f'(1)^2
  };
  const Family families[] = {
      {MapKind::kSector,
       {kPi / 2, kPi, 1.5 * kPi, 2 * kPi - 0.1},
       [](double a) {
         const double p = a / kPi - 1.0;
         return -(3.0 * kPi * kPi / (2.0 * a * a)) * (p * p + 1.0);
       }},
      {MapKind::kPick,
       {0.1, 1.0 / 3.0, 0.9},
       [](double r) {
         const double q = (1.0 - r) / (1.0 + r);
         return -0.75 * q * q;
       }},
      {MapKind::kTwoSlit,
       {0.1, 0.5, 0.9},
       [](double t) {
         const double q = (1.0 - t * t) / (1.0 + t * t);
         return -1.5 * q * q;
       }},
  };
  for (const Family& f : families) {
    for (const double p : f.params) {
      const MapSpec spec{f.kind, p};
      const TaylorJet a = analytic_jet(spec);
      const NumericJet n = numeric_jet(spec, default_jet_steps(spec));
      const double diff = std::max({std::abs(a.a1 - n.jet.a1), std::abs(a.a2 - n.jet.a2),
                                    std::abs(a.a3 - n.jet.a3)});
      const Complex s = schwarzian_at_one(a);
      const double ratio = s.real() / (a.a1 * a.a1);
      const double want = f.rhs(p);
      out.check(diff <= 1e-6, "%s %.6f: analytic vs numeric jet %.2e", spec.name().c_str(), p,
                diff);
      out.check(std::abs(class_b_residual(a)) < 1e-8 && std::abs(s.imag()) < 1e-8,
                "%s %.6f: class-B residual %.1e, Im S %.1e", spec.name().c_str(), p,
                class_b_residual(a), s.imag());
      out.check(std::abs(ratio - want) <= 1e-8, "%s %.6f: Re S/a1^2 = %.10f, stated %.10f",
                spec.name().c_str(), p, ratio, want);
    }
  }
  return out;
}

Outcome solver_cross_validation() {
  Outcome out;
  struct Config {
    const char* name;
    WalkDomain w;
    Point z;
    double exact;  // 0 when unknown
  };
  const Config configs[] = {
      {"U, z=0.5", {DomainTag::kUnitDisk, Region()}, {0.5, 0.0}, 0.75},
      {"H, z=0.7i", {DomainTag::kUpperHalfPlane, Region()}, {0.0, 0.7}, 1.4},
      {"U minus disk", {DomainTag::kUnitDisk, Region({Disk{{-0.3, 0.2}, 0.25}})}, {0.3, -0.1},
       0.0},
      {"U minus polygon",
       {DomainTag::kUnitDisk,
        Region({Polygon{{{-0.6, -0.5}, {0.0, -0.3}, {-0.2, 0.1}, {-0.7, 0.0}}}})},
       {0.3, 0.2},
       0.0},
      {"H minus disk", {DomainTag::kUpperHalfPlane, Region({Disk{{0.5, 0.8}, 0.3}})}, {-0.2, 0.6},
       0.0},
  };
  std::uint64_t seed = 900;
  for (const Config& c : configs) {
    const InnerRadius wos = inner_radius(c.w, c.z, 200000, seed++);
    const double r_wos = wos.radius();
    const double se = r_wos * wos.std_error;
    const double r_grid = std::exp(grid_log_inner_radius(c.w, c.z));
    out.check(std::abs(r_wos - r_grid) <= 3.0 * se + 1e-2, "%s: walk %.5f +- %.5f, grid %.5f",
              c.name, r_wos, se, r_grid);
    if (c.exact > 0.0) {
      out.check(std::abs(r_wos - c.exact) <= 3.0 * se + 1e-2 &&
                    std::abs(r_grid - c.exact) <= 1e-2,
                "%s: exact %.5f", c.name, c.exact);
    }
  }
  return out;
}

Outcome determinism() {
  Outcome out;
  for (const SuiteKind k : all_suites()) {
    SuiteConfig c;
    c.suite = k;
    c.trials = 2;
    c.samples = 2000;
    const std::string a = format_csv(run_suite(c));
    const std::string b = format_csv(run_suite(c));
    out.check(a == b, "%s: %zu bytes, digest %s", suite_name(k).c_str(), a.size(),
              digest_hex(a).c_str());
  }
  return out;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* title;
    Outcome (*run)();
  };
  const Criterion criteria[] = {
      {1, "hcap regression (slit, half-disk)", hcap_regression},
      {2, "hcap scaling law on 5 random sets", scaling_law},
      {3, "disk/half-plane transport on 3 random sets", transport_identity},
      {4, "relcap extremal regression", relcap_extremal},
      {5, "inequality suites, 100 trials each", inequality_suites},
      {6, "extremal-map exactness", extremal_exactness},
      {7, "walk-on-spheres vs grid oracle", solver_cross_validation},
      {8, "bitwise-identical suite CSV on rerun", determinism},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.lines.push_back(std::string("  error: ") + e.what());
    }
    for (const std::string& l : o.lines) std::printf("%s\n", l.c_str());
    std::printf("CRITERION %d %s: %s (%.1f s)\n", c.id, o.pass ? "PASS" : "FAIL", c.title,
                seconds_since(t0));
    std::fflush(stdout);
    failed += o.pass ? 0 : 1;
  }
  std::printf("%d of 8 criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}
