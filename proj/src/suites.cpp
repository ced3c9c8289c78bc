#include "relcap/suites.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <optional>
#include <stdexcept>

#include "relcap/capacity.hpp"
#include "relcap/extremal.hpp"
#include "relcap/series.hpp"
#include "relcap/symmetrize.hpp"

namespace relcap {

namespace {

constexpr double kMinDistance = 0.15;

struct Named {
  SuiteKind kind;
  const char* name;
};

constexpr Named kSuiteNames[] = {
    {SuiteKind::kMonotonicity, "monotonicity"},
    {SuiteKind::kChoquet, "choquet"},
    {SuiteKind::kPolarization, "polarization"},
    {SuiteKind::kComposition, "composition"},
    {SuiteKind::kCrSymmetrization, "cr-symmetrization"},
    {SuiteKind::kSteiner, "steiner"},
    {SuiteKind::kMarcus, "marcus"},
    {SuiteKind::kAveraging, "averaging"},
    {SuiteKind::kSchwarzian, "schwarzian"},
    {SuiteKind::kTransport, "transport"},
    {SuiteKind::kHcapRegression, "hcap-regression"},
    {SuiteKind::kRelcapRegression, "relcap-regression"},
};

double uniform(SplitMix64& rng, double lo, double hi) { return lo + (hi - lo) * rng.uniform(); }

// Disk in U at distance >= kMinDistance from 1.
Disk random_disk(SplitMix64& rng) {
  for (;;) {
    const double r = uniform(rng, 0.05, 0.35);
    const Point c = std::polar(0.9 * std::sqrt(rng.uniform()), uniform(rng, 0.0, 2.0 * kPi));
    if (std::abs(c - 1.0) - r >= kMinDistance) {
      return {c, r};
    }
  }
}

std::vector<Primitive> random_disks(SplitMix64& rng, int lo, int hi) {
  const int count = lo + static_cast<int>(rng.next() % static_cast<std::uint64_t>(hi - lo + 1));
  std::vector<Primitive> out;
  for (int i = 0; i < count; ++i) {
    out.emplace_back(random_disk(rng));
  }
  return out;
}

// Disk union in a fixed box of the upper half-plane.
Region random_halfplane_disks(SplitMix64& rng) {
  const int count = 1 + static_cast<int>(rng.next() % 4);
  std::vector<Primitive> out;
  for (int i = 0; i < count; ++i) {
    out.emplace_back(Disk{{uniform(rng, -1.0, 1.0), uniform(rng, 0.0, 1.0)}, uniform(rng, 0.1, 0.5)});
  }
  return Region(std::move(out));
}

struct Context {
  const SuiteConfig& config;
  int index;
  std::uint64_t case_seed;
  std::uint64_t walk_seed;
  SplitMix64 rng;
  std::string digest_input;

  Context(const SuiteConfig& c, int i)
      : config(c),
        index(i),
        case_seed(derive_seed(c.seed, static_cast<std::uint64_t>(i))),
        walk_seed(derive_seed(case_seed, 0x77616c6bULL)),
        rng(derive_seed(case_seed, 0x73657473ULL)) {}

  void record(const Region& r) { digest_input += serialize_region(r); }

  std::string name(const std::string& label = {}) const {
    char idx[16];
    std::snprintf(idx, sizeof idx, "%03d", index);
    std::string out = suite_name(config.suite) + "-" + idx;
    if (!label.empty()) {
      out += "-" + label;
    }
    return out + "-" + digest_hex(digest_input).substr(0, 8);
  }

  CapacityEstimate relcap(const Region& e, const ApproachPath& path) const {
    if (e.empty()) {
      CapacityEstimate zero;
      zero.method = CapacityMethod::kAnalytic;
      return zero;
    }
    return relcap_estimate(e, path, config.samples, walk_seed, config.walk);
  }

  CapacityEstimate hcap(const Region& e, const std::vector<double>& heights,
                        std::uint64_t seed) const {
    return hcap_estimate(e, heights, config.samples, seed, config.walk);
  }
};

double combined(std::initializer_list<double> terms) {
  double s = 0.0;
  for (const double t : terms) {
    s += t * t;
  }
  return std::sqrt(s);
}

// Ladder shared by every set of a case, so all estimates use the same walks.
ApproachPath shared_ladder(std::initializer_list<const Region*> sets) {
  Region all;
  for (const Region* r : sets) {
    all = all.united(*r);
  }
  return default_disk_ladder(all);
}

void annotate(CaseRow& row, std::initializer_list<const CapacityEstimate*> estimates) {
  for (const CapacityEstimate* e : estimates) {
    if (e->divergence_flag) {
      row.note += "divergence;";
    }
    if (e->guard_flag) {
      row.note += "guard;";
    }
  }
}

const Similarity kToI{{0.0, 1.0}, {}};
const Similarity kFromI{{0.0, -1.0}, {}};

CaseRow monotonicity_case(Context& ctx) {
  std::vector<Primitive> small = random_disks(ctx.rng, 1, 3);
  std::vector<Primitive> big = small;
  for (Primitive& p : random_disks(ctx.rng, 1, 2)) {
    big.push_back(std::move(p));
  }
  const Region e1(std::move(small));
  const Region e2(std::move(big));
  ctx.record(e1);
  ctx.record(e2);
  const ApproachPath path = shared_ladder({&e2});
  const CapacityEstimate c1 = ctx.relcap(e1, path);
  const CapacityEstimate c2 = ctx.relcap(e2, path);
  CaseRow row = inequality_row(ctx.name(), c2.value, c1.value,
                               combined({c1.std_error, c2.std_error}), ctx.config.tolerance);
  annotate(row, {&c1, &c2});
  return row;
}

CaseRow choquet_case(Context& ctx) {
  const Disk a = random_disk(ctx.rng);
  Disk b;
  for (;;) {
    const double rb = uniform(ctx.rng, 0.05, 0.35);
    const double d = (a.radius + rb) * uniform(ctx.rng, 0.2, 0.9);
    const Point c = a.center + std::polar(d, uniform(ctx.rng, 0.0, 2.0 * kPi));
    if (std::abs(c) < 0.95 && std::abs(c - 1.0) - rb >= kMinDistance) {
      b = {c, rb};
      break;
    }
  }
  const Region ra({a});
  const Region rb({b});
  const Region uni({a, b});
  const std::optional<Polygon> lens = disk_intersection_polygon(a, b);
  const Region inter = lens ? Region({*lens}) : Region();
  ctx.record(uni);
  const ApproachPath path = shared_ladder({&uni});
  const CapacityEstimate ca = ctx.relcap(ra, path);
  const CapacityEstimate cb = ctx.relcap(rb, path);
  const CapacityEstimate cu = ctx.relcap(uni, path);
  const CapacityEstimate ci = ctx.relcap(inter, path);
  CaseRow row = inequality_row(ctx.name(), ca.value + cb.value, cu.value + ci.value,
                               combined({ca.std_error, cb.std_error, cu.std_error, ci.std_error}),
                               ctx.config.tolerance);
  annotate(row, {&ca, &cb, &cu, &ci});
  return row;
}

CartesianMask mask_about_i(Context& ctx, const Region& e) {
  const int g = ctx.config.mask_cells;
  return rasterize_cartesian(e.transformed(kToI), Box{-1.0, -1.0, 1.0, 1.0}, g, g);
}

CaseRow polarization_case(Context& ctx) {
  const Region e(random_disks(ctx.rng, 1, 4));
  ctx.record(e);
  const CartesianMask mask = mask_about_i(ctx, e);
  const Region er = region_from_mask(mask).transformed(kFromI);
  const Region pe = region_from_mask(polarize(mask)).transformed(kFromI);
  const ApproachPath path = shared_ladder({&er, &pe});
  const CapacityEstimate c0 = ctx.relcap(er, path);
  const CapacityEstimate cp = ctx.relcap(pe, path);
  CaseRow row = inequality_row(ctx.name(), c0.value, cp.value,
                               combined({c0.std_error, cp.std_error}), ctx.config.tolerance);
  annotate(row, {&c0, &cp});
  return row;
}

CaseRow composition_case(Context& ctx) {
  const Region e(random_disks(ctx.rng, 1, 4));
  ctx.record(e);
  const CartesianMask mask = mask_about_i(ctx, e);
  const Region er = region_from_mask(mask).transformed(kFromI);
  const auto [plus, minus] = compose_halves(mask);
  const Region hp = region_from_mask(plus).transformed(kFromI);
  const Region hm = region_from_mask(minus).transformed(kFromI);
  const ApproachPath path = shared_ladder({&er, &hp, &hm});
  const CapacityEstimate c0 = ctx.relcap(er, path);
  const CapacityEstimate cp = ctx.relcap(hp, path);
  const CapacityEstimate cm = ctx.relcap(hm, path);
  CaseRow row = inequality_row(ctx.name(), 2.0 * c0.value, cp.value + cm.value,
                               combined({2.0 * c0.std_error, cp.std_error, cm.std_error}),
                               ctx.config.tolerance);
  annotate(row, {&c0, &cp, &cm});
  return row;
}

CaseRow cr_case(Context& ctx) {
  const Region e(random_disks(ctx.rng, 1, 4));
  ctx.record(e);
  const PolarRaster raster =
      rasterize_polar(e, {0.0, 0.0}, 1.0, ctx.config.polar_rings, ctx.config.polar_sectors);
  const Region er = region_from_polar(raster);
  const Region cr = region_from_polar(circular_symmetrize(raster, CrDirection::kMinus));
  const ApproachPath path = shared_ladder({&er, &cr});
  const CapacityEstimate c0 = ctx.relcap(er, path);
  const CapacityEstimate c1 = ctx.relcap(cr, path);
  CaseRow row = inequality_row(ctx.name(), c0.value, c1.value,
                               combined({c0.std_error, c1.std_error}), ctx.config.tolerance);
  annotate(row, {&c0, &c1});
  return row;
}

CaseRow steiner_case(Context& ctx) {
  const Region e(random_disks(ctx.rng, 1, 4));
  ctx.record(e);
  const int g = ctx.config.mask_cells;
  const CartesianMask mask = rasterize_cartesian(e, Box{-1.1, -1.1, 1.1, 1.1}, g, g);
  const Region er = region_from_mask(mask);
  const Region st = steiner_complement_in_disk(mask);
  const ApproachPath path = shared_ladder({&er, &st});
  const CapacityEstimate c0 = ctx.relcap(er, path);
  const CapacityEstimate c1 = ctx.relcap(st, path);
  CaseRow row = inequality_row(ctx.name(), c0.value, c1.value,
                               combined({c0.std_error, c1.std_error}), ctx.config.tolerance);
  annotate(row, {&c0, &c1});
  return row;
}

PolarRaster raster_about_one(const SuiteConfig& config, const Region& e) {
  return rasterize_polar(e, {1.0, 0.0}, 2.0, config.polar_rings, config.polar_sectors);
}

CaseRow marcus_case(Context& ctx) {
  const Region e(random_disks(ctx.rng, 1, 4));
  ctx.record(e);
  const PolarRaster raster = raster_about_one(ctx.config, e);
  const Region er = region_from_polar(raster);
  const Region m =
      disk_band_from_sections(radial_log_sections(raster), ctx.config.polar_sectors);
  const ApproachPath path = shared_ladder({&er, &m});
  const CapacityEstimate c0 = ctx.relcap(er, path);
  const CapacityEstimate c1 = ctx.relcap(m, path);
  CaseRow row = inequality_row(ctx.name(), c0.value, c1.value,
                               combined({c0.std_error, c1.std_error}), ctx.config.tolerance);
  annotate(row, {&c0, &c1});
  return row;
}

// Odd cases average E with its conjugate, i.e. the R E transform.
CaseRow averaging_case(Context& ctx) {
  const Region e1(random_disks(ctx.rng, 1, 4));
  std::vector<Primitive> other;
  if (ctx.index % 2 == 1) {
    for (const Primitive& p : e1.primitives()) {
      const Disk& d = std::get<Disk>(p);
      other.emplace_back(Disk{std::conj(d.center), d.radius});
    }
  } else {
    other = random_disks(ctx.rng, 1, 4);
  }
  const Region second(std::move(other));
  ctx.record(e1);
  ctx.record(second);
  const PolarRaster r1 = raster_about_one(ctx.config, e1);
  const PolarRaster r2 = raster_about_one(ctx.config, second);
  const std::vector<double> s1 = radial_log_sections(r1);
  const std::vector<double> s2 = radial_log_sections(r2);
  std::vector<double> avg(s1.size());
  for (std::size_t j = 0; j < s1.size(); ++j) {
    avg[j] = 0.5 * s1[j] + 0.5 * s2[j];
  }
  const Region er1 = region_from_polar(r1);
  const Region er2 = region_from_polar(r2);
  const Region a = disk_band_from_sections(avg, ctx.config.polar_sectors);
  const ApproachPath path = shared_ladder({&er1, &er2, &a});
  const CapacityEstimate c1 = ctx.relcap(er1, path);
  const CapacityEstimate c2 = ctx.relcap(er2, path);
  const CapacityEstimate ca = ctx.relcap(a, path);
  CaseRow row = inequality_row(ctx.name(ctx.index % 2 == 1 ? "conj" : "pair"),
                               0.5 * c1.value + 0.5 * c2.value, ca.value,
                               combined({0.5 * c1.std_error, 0.5 * c2.std_error, ca.std_error}),
                               ctx.config.tolerance);
  annotate(row, {&c1, &c2, &ca});
  return row;
}

struct SchwarzianCase {
  MapSpec spec;
  // Omitted set, or a strict subset of it when `subset` is set.
  bool subset;
};

Region schwarzian_set(const SchwarzianCase& c) {
  if (!c.subset) {
    return omitted_set(c.spec);
  }
  switch (c.spec.kind) {
    case MapKind::kPick:
      return Region({Segment{{-1.0, 0.0}, {-0.5 * (1.0 + c.spec.param), 0.0}}});
    case MapKind::kTwoSlit:
      return Region({Segment{{0.0, c.spec.param}, {0.0, 1.0}}});
    case MapKind::kSector:
      break;
  }
  throw ValidationError("no subset case for this map");
}

CaseRow schwarzian_case(Context& ctx) {
  static const std::vector<SchwarzianCase> cases = {
      {MapSpec::sector(kPi), false},          {MapSpec::pick(1.0 / 3.0), false},
      {MapSpec::two_slit(0.5), false},        {MapSpec::pick(1.0 / 3.0), true},
      {MapSpec::sector(0.5 * kPi), false},    {MapSpec::sector(1.5 * kPi), false},
      {MapSpec::two_slit(0.5), true},         {MapSpec::pick(0.5), false},
  };
  const SchwarzianCase& c = cases[static_cast<std::size_t>(ctx.index) % cases.size()];
  const Region e = schwarzian_set(c);
  ctx.record(e);
  const TaylorJet jet = analytic_jet(c.spec);
  const CapacityEstimate est = ctx.relcap(e, default_disk_ladder(e));
  const SchwarzianCheck check = schwarzian_bound_check(jet, est, ctx.config.tolerance);
  char label[48];
  std::snprintf(label, sizeof label, "%s%.4f%s", c.spec.name().c_str(), c.spec.param,
                c.subset ? "-subset" : "");
  CaseRow row{ctx.name(label), check.lhs, check.rhs, check.slack, check.std_error,
              CaseStatus::kPass, {}};
  if (!check.pass) {
    row.status = CaseStatus::kFail;
  } else if (!c.subset && check.equality) {
    row.status = CaseStatus::kEquality;
  } else if (check.slack < 0.0) {
    row.status = CaseStatus::kFlagged;
  }
  annotate(row, {&est});
  return row;
}

CaseRow transport_case(Context& ctx) {
  const Region e(random_disks(ctx.rng, 1, 3));
  ctx.record(e);
  const CapacityEstimate rc = ctx.relcap(e, default_disk_ladder(e));
  const Region image = disk_to_halfplane_image(e).region;
  const CapacityEstimate hc = ctx.hcap(image, default_heights(image), ctx.walk_seed);
  CaseRow row = equality_row(ctx.name(), rc.value, 0.25 * hc.value,
                             combined({rc.std_error, 0.25 * hc.std_error}),
                             ctx.config.tolerance, 0.07);
  annotate(row, {&rc, &hc});
  return row;
}

// hcap of the slit [0, i] and of the half-disk from the expansions at infinity
// of sqrt(z^2 + 1) and z + 1/z, both written in w = 1/z: the 1/z coefficient
// is the w^2 coefficient of z^-1 times the map.
double slit_hcap_target() {
  const Series w = Series::variable(4);
  return sqrt(w * w + 1.0)[2].real();
}

double half_disk_hcap_target() {
  const Series w = Series::variable(4);
  return (w * w + 1.0)[2].real();
}

CaseRow hcap_regression_case(Context& ctx) {
  const double k = ctx.config.tolerance;
  if (ctx.index < 2) {
    const bool slit = ctx.index == 0;
    const Region e = slit ? Region({Segment{{0.0, 0.0}, {0.0, 1.0}}})
                          : Region({Disk{{0.0, 0.0}, 1.0}});
    ctx.record(e);
    const double target = slit ? slit_hcap_target() : half_disk_hcap_target();
    const CapacityEstimate hc = ctx.hcap(e, ctx.config.regression_heights, ctx.walk_seed);
    CaseRow row = equality_row(ctx.name(slit ? "slit" : "half-disk"), hc.value, target,
                               hc.std_error, k, 0.02);
    annotate(row, {&hc});
    return row;
  }
  // Scaling: hcap(2E) = 4 hcap(E), with independent walks for the two sets.
  const Region e = random_halfplane_disks(ctx.rng);
  const Region e2 = e.transformed({{2.0, 0.0}, {}});
  ctx.record(e);
  const std::vector<double> heights = default_heights(e);
  std::vector<double> heights2;
  for (const double y : heights) {
    heights2.push_back(2.0 * y);
  }
  const CapacityEstimate h1 = ctx.hcap(e, heights, ctx.walk_seed);
  const CapacityEstimate h2 = ctx.hcap(e2, heights2, derive_seed(ctx.walk_seed, 2));
  CaseRow row = equality_row(ctx.name("scaling"), h2.value, 4.0 * h1.value,
                             combined({h2.std_error, 4.0 * h1.std_error}), k, 0.0);
  annotate(row, {&h1, &h2});
  return row;
}

CaseRow relcap_regression_case(Context& ctx) {
  static const std::vector<MapSpec> maps = {MapSpec::sector(kPi), MapSpec::pick(1.0 / 3.0),
                                            MapSpec::two_slit(0.5), MapSpec::pick(0.5)};
  const MapSpec& spec = maps[static_cast<std::size_t>(ctx.index) % maps.size()];
  const Region e = omitted_set(spec);
  ctx.record(e);
  const double target = extremal_relcap(analytic_jet(spec));
  const CapacityEstimate est = ctx.relcap(e, default_disk_ladder(e));
  char label[48];
  std::snprintf(label, sizeof label, "%s%.4f", spec.name().c_str(), spec.param);
  CaseRow row = equality_row(ctx.name(label), est.value, target, est.std_error,
                             ctx.config.tolerance, 0.05);
  annotate(row, {&est});
  return row;
}

using CaseFn = CaseRow (*)(Context&);

CaseFn case_function(SuiteKind kind) {
  switch (kind) {
    case SuiteKind::kMonotonicity:
      return monotonicity_case;
    case SuiteKind::kChoquet:
      return choquet_case;
    case SuiteKind::kPolarization:
      return polarization_case;
    case SuiteKind::kComposition:
      return composition_case;
    case SuiteKind::kCrSymmetrization:
      return cr_case;
    case SuiteKind::kSteiner:
      return steiner_case;
    case SuiteKind::kMarcus:
      return marcus_case;
    case SuiteKind::kAveraging:
      return averaging_case;
    case SuiteKind::kSchwarzian:
      return schwarzian_case;
    case SuiteKind::kTransport:
      return transport_case;
    case SuiteKind::kHcapRegression:
      return hcap_regression_case;
    case SuiteKind::kRelcapRegression:
      return relcap_regression_case;
  }
  throw ValidationError("unknown suite");
}

}  // namespace

const std::vector<SuiteKind>& all_suites() {
  static const std::vector<SuiteKind> kinds = [] {
    std::vector<SuiteKind> out;
    for (const Named& n : kSuiteNames) {
      out.push_back(n.kind);
    }
    return out;
  }();
  return kinds;
}

std::string suite_name(SuiteKind kind) {
  for (const Named& n : kSuiteNames) {
    if (n.kind == kind) {
      return n.name;
    }
  }
  return "unknown";
}

SuiteKind parse_suite(const std::string& name) {
  for (const Named& n : kSuiteNames) {
    if (name == n.name) {
      return n.kind;
    }
  }
  throw ValidationError("unknown suite: " + name);
}

void SuiteConfig::validate() const {
  if (trials < 1) {
    throw ValidationError("trials must be at least 1");
  }
  if (samples < 1000) {
    throw ValidationError("samples must be at least 1000");
  }
  if (mask_cells < 8 || mask_cells % 2 != 0) {
    throw ValidationError("mask_cells must be an even number >= 8");
  }
  if (polar_rings < 1 || polar_sectors < 8 || polar_sectors % 4 != 0) {
    throw ValidationError("polar grid needs rings >= 1 and a multiple of 4 sectors >= 8");
  }
  if (!(tolerance > 0.0)) {
    throw ValidationError("tolerance must be positive");
  }
}

Report run_suite(const SuiteConfig& config) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();
  Report report;
  report.suite = suite_name(config.suite);
  const CaseFn fn = case_function(config.suite);
  for (int i = 0; i < config.trials; ++i) {
    Context ctx(config, i);
    try {
      report.rows.push_back(fn(ctx));
    } catch (const std::exception& ex) {
      CaseRow row;
      row.name = ctx.name("error");
      row.lhs = row.rhs = row.slack = row.std_error = std::nan("");
      row.status = CaseStatus::kFlagged;
      row.note = ex.what();
      report.rows.push_back(std::move(row));
    }
  }
  report.runtime_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace relcap
