#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "relcap/capacity.hpp"
#include "relcap/extremal.hpp"
#include "relcap/geometry.hpp"
#include "relcap/report.hpp"
#include "relcap/suites.hpp"
#include "relcap/symmetrize.hpp"

namespace {

using namespace relcap;

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  ss.imbue(std::locale::classic());
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::istringstream in(item);
    in.imbue(std::locale::classic());
    double v = 0.0;
    if (!(in >> v)) {
      throw ValidationError("bad number in list: " + item);
    }
    out.push_back(v);
  }
  return out;
}

void print_estimate(const CapacityEstimate& e, const char* label) {
  std::cout << label << ' ' << format_number(e.value) << " stderr " << format_number(e.std_error)
            << " fit_residual " << format_number(e.fit_residual) << " samples " << e.n_samples
            << '\n';
  for (std::size_t k = 0; k < e.offsets_used.size(); ++k) {
    std::cout << "  offset " << format_number(e.offsets_used[k]) << " raw "
              << format_number(e.raw[k]) << " stderr " << format_number(e.raw_std_error[k])
              << '\n';
  }
  if (e.negative_flag) std::cout << "  flag negative\n";
  if (e.divergence_flag) std::cout << "  flag divergence\n";
  if (e.guard_flag) std::cout << "  flag guard\n";
}

void write_estimate_csv(const CapacityEstimate& e, const char* label, const std::string& path) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) {
    throw std::runtime_error("cannot open " + path + " for writing");
  }
  file << "quantity,offset,value,stderr\n";
  for (std::size_t k = 0; k < e.offsets_used.size(); ++k) {
    file << "raw," << format_number(e.offsets_used[k]) << ',' << format_number(e.raw[k]) << ','
         << format_number(e.raw_std_error[k]) << '\n';
  }
  file << label << ",0," << format_number(e.value) << ',' << format_number(e.std_error) << '\n';
}

Point parse_point(const std::string& text) {
  const std::vector<double> v = parse_list(text);
  if (v.size() != 2) {
    throw ValidationError("expected \"X,Y\"");
  }
  return {v[0], v[1]};
}

std::pair<int, int> parse_grid(const std::string& text) {
  const std::vector<double> v = parse_list(text);
  if (v.size() != 2 || v[0] < 1 || v[1] < 1) {
    throw ValidationError("expected a grid \"N1,N2\"");
  }
  return {static_cast<int>(v[0]), static_cast<int>(v[1])};
}

Box region_box(const Region& r) {
  const std::optional<Box> b = r.bounding_box();
  if (!b) {
    throw ValidationError("symmetrization needs a bounded, non-empty region");
  }
  return *b;
}

double far_radius(const Box& b, Point c) {
  double r = 0.0;
  for (const Point p : {Point{b.xmin, b.ymin}, Point{b.xmin, b.ymax}, Point{b.xmax, b.ymin},
                        Point{b.xmax, b.ymax}}) {
    r = std::max(r, std::abs(p - c));
  }
  return r * (1.0 + 1e-9);
}

std::string minus_path(const std::string& out) {
  const auto dot = out.rfind('.');
  const auto slash = out.rfind('/');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) {
    return out + "-minus";
  }
  return out.substr(0, dot) + "-minus" + out.substr(dot);
}

int run_symmetrize(const std::vector<std::string>& region_paths, const std::string& op,
                   const std::string& center_text, const std::string& grid_text,
                   const std::string& weights_text, const std::string& out) {
  const Point c = parse_point(center_text);
  const auto [n1, n2] = parse_grid(grid_text);
  std::vector<Region> regions;
  for (const std::string& p : region_paths) {
    regions.push_back(load_region(p));
  }
  const Region& e = regions.front();
  const Similarity to_origin{{1.0, 0.0}, -c};
  const Similarity back{{1.0, 0.0}, c};

  if (op == "cr-minus" || op == "cr-plus") {
    const PolarRaster raster = rasterize_polar(e, c, far_radius(region_box(e), c), n1, n2);
    save_region(region_from_polar(circular_symmetrize(
                    raster, op == "cr-minus" ? CrDirection::kMinus : CrDirection::kPlus)),
                out);
  } else if (op == "steiner" || op == "polarize" || op == "compose") {
    const Region shifted = e.transformed(to_origin);
    const Box b = region_box(shifted);
    const double h = std::max(std::abs(b.ymin), std::abs(b.ymax)) * 1.001 + 1e-12;
    const double w = std::max(std::abs(b.xmin), std::abs(b.xmax)) * 1.001 + 1e-12;
    if (op == "steiner") {
      const CartesianMask m = rasterize_cartesian(shifted, Box{b.xmin, -h, b.xmax, h}, n1, n2);
      save_region(region_from_mask(steiner_symmetrize(m)).transformed(back), out);
    } else {
      const CartesianMask m = rasterize_cartesian(shifted, Box{-w, b.ymin, w, b.ymax}, n1, n2);
      if (op == "polarize") {
        save_region(region_from_mask(polarize(m)).transformed(back), out);
      } else {
        const auto [plus, minus] = compose_halves(m);
        save_region(region_from_mask(plus).transformed(back), out);
        save_region(region_from_mask(minus).transformed(back), minus_path(out));
      }
    }
  } else if (op == "marcus" || op == "average") {
    std::vector<PolarRaster> rasters;
    double r = 0.0;
    for (const Region& reg : regions) {
      r = std::max(r, far_radius(region_box(reg), c));
    }
    for (const Region& reg : regions) {
      rasters.push_back(rasterize_polar(reg, c, r, n1, n2));
    }
    AveragingSpec spec;
    if (op == "marcus") {
      spec.weights = {1.0};
      rasters.resize(1);
    } else {
      spec.weights = weights_text.empty()
                         ? std::vector<double>(rasters.size(), 1.0 / rasters.size())
                         : parse_list(weights_text);
    }
    save_region(star_region(averaging_transform(rasters, spec, false)), out);
  } else if (op == "r-transform") {
    // Raster of U \ E about 1, then R E as a band under the circle.
    PolarRaster raster = rasterize_polar(e, {1.0, 0.0}, 2.0, n1, n2);
    for (int i = 0; i < raster.rings(); ++i) {
      for (int j = 0; j < raster.theta_count; ++j) {
        const bool in_disk = std::abs(raster.cell_mid(i, j)) < 1.0;
        raster.set(i, j, in_disk && !raster.at(i, j));
      }
    }
    save_region(chord_band_region(r_transform(raster)), out);
  } else {
    throw ValidationError("unknown op: " + op);
  }
  return 0;
}

int run_extremal(const std::string& map, double param, bool numeric_check) {
  const MapSpec spec{parse_map_kind(map), param};
  spec.validate();
  const TaylorJet jet = analytic_jet(spec);
  const Complex s = schwarzian_at_one(jet);
  std::cout << "map " << spec.name() << " param " << format_number(param) << '\n';
  std::cout << "a1 " << format_number(jet.a1) << '\n';
  std::cout << "a2 " << format_number(jet.a2.real()) << ' ' << format_number(jet.a2.imag())
            << '\n';
  std::cout << "a3 " << format_number(jet.a3.real()) << ' ' << format_number(jet.a3.imag())
            << '\n';
  std::cout << "schwarzian " << format_number(s.real()) << ' ' << format_number(s.imag()) << '\n';
  std::cout << "schwarzian_over_a1sq " << format_number(s.real() / (jet.a1 * jet.a1)) << '\n';
  std::cout << "class_b_residual " << format_number(class_b_residual(jet)) << '\n';
  std::cout << "relcap_omitted " << format_number(extremal_relcap(jet)) << '\n';
  if (!numeric_check) {
    return 0;
  }
  const NumericJet num = numeric_jet(spec, default_jet_steps(spec));
  const double d1 = std::abs(num.jet.a1 - jet.a1);
  const double d2 = std::abs(num.jet.a2 - jet.a2);
  const double d3 = std::abs(num.jet.a3 - jet.a3);
  std::cout << "numeric a1 " << format_number(num.jet.a1) << " diff " << format_number(d1) << '\n';
  std::cout << "numeric a2 " << format_number(num.jet.a2.real()) << " diff " << format_number(d2)
            << '\n';
  std::cout << "numeric a3 " << format_number(num.jet.a3.real()) << " diff " << format_number(d3)
            << '\n';
  const bool ok = d1 <= 1e-6 && d2 <= 1e-6 && d3 <= 1e-6;
  std::cout << "numeric_check " << (ok ? "PASS" : "FAIL") << '\n';
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Relative and half-plane capacity estimation and verification"};
  app.require_subcommand(1);

  WalkOptions walk;
  std::string region_path;
  std::int64_t samples = 100000;
  std::uint64_t seed = 1;
  std::string csv;

  auto* relcap_cmd = app.add_subcommand("relcap", "relative capacity of E in U at z = 1");
  std::string offsets;
  relcap_cmd->add_option("--region", region_path, "region file (JSON)")->required();
  relcap_cmd->add_option("--samples", samples, "walks per offset");
  relcap_cmd->add_option("--offsets", offsets, "ladder \"D0,Q,K\" (default from dist(1, E))");
  relcap_cmd->add_option("--eps", walk.eps, "walk termination distance");
  relcap_cmd->add_option("--seed", seed, "random seed");
  relcap_cmd->add_option("--csv", csv, "write per-offset values as CSV");

  auto* hcap_cmd = app.add_subcommand("hcap", "half-plane capacity of E in H");
  std::string heights;
  hcap_cmd->add_option("--region", region_path, "region file (JSON)")->required();
  hcap_cmd->add_option("--heights", heights, "start heights \"Y1,Y2,...\"");
  hcap_cmd->add_option("--samples", samples, "walks per height");
  hcap_cmd->add_option("--eps", walk.eps, "walk termination distance");
  hcap_cmd->add_option("--seed", seed, "random seed");
  hcap_cmd->add_flag("--fast-exit", walk.fast_exit, "exact jump to the top of E from far above");
  hcap_cmd->add_option("--csv", csv, "write per-height values as CSV");

  auto* sym_cmd = app.add_subcommand("symmetrize", "apply a symmetrization to a region");
  std::vector<std::string> sym_regions;
  std::string op;
  std::string center = "0,0";
  std::string grid;
  std::string weights;
  std::string out;
  sym_cmd->add_option("--region", sym_regions, "region file(s); average takes several")
      ->required();
  sym_cmd
      ->add_option("--op", op,
                   "cr-minus|cr-plus|steiner|marcus|average|polarize|compose|r-transform")
      ->required();
  sym_cmd->add_option("--center", center, "centre \"X,Y\" (r-transform always uses 1)");
  sym_cmd->add_option("--grid", grid, "\"NR,NT\" (polar) or \"NX,NY\" (Cartesian)")->required();
  sym_cmd->add_option("--weights", weights, "averaging weights \"a1,a2,...\"");
  sym_cmd->add_option("--out", out, "output region file (compose also writes *-minus)")
      ->required();

  auto* ext_cmd = app.add_subcommand("extremal", "boundary jet of a catalog extremal map");
  std::string map;
  double param = 0.0;
  bool numeric_check = false;
  ext_cmd->add_option("--map", map, "sector|pick|two-slit")->required();
  ext_cmd->add_option("--param", param, "alpha, rho or t")->required();
  ext_cmd->add_flag("--numeric-check", numeric_check, "compare with finite differences");

  auto* verify_cmd = app.add_subcommand("verify", "run a verification suite");
  std::string suite;
  SuiteConfig config;
  verify_cmd->add_option("--suite", suite, "suite name or \"all\"")->required();
  verify_cmd->add_option("--trials", config.trials, "cases per suite");
  verify_cmd->add_option("--samples", config.samples, "walks per rung or height");
  verify_cmd->add_option("--seed", config.seed, "random seed");
  verify_cmd->add_option("--csv", csv, "write the report as CSV");
  verify_cmd->add_option("--tolerance", config.tolerance, "k in slack >= -k stderr");

  CLI11_PARSE(app, argc, argv);

  try {
    if (relcap_cmd->parsed()) {
      const Region e = load_region(region_path);
      ApproachPath path = default_disk_ladder(e);
      if (!offsets.empty()) {
        const std::vector<double> v = parse_list(offsets);
        if (v.size() != 3) {
          throw ValidationError("--offsets expects \"D0,Q,K\"");
        }
        path = ApproachPath::geometric(ApproachKind::kRealAxisToOne, v[0], v[1],
                                       static_cast<int>(v[2]));
      }
      const CapacityEstimate est = relcap_estimate(e, path, samples, seed, walk);
      print_estimate(est, "relcap");
      if (!csv.empty()) write_estimate_csv(est, "relcap", csv);
      return 0;
    }
    if (hcap_cmd->parsed()) {
      const Region e = load_region(region_path);
      const std::vector<double> ys = heights.empty() ? default_heights(e) : parse_list(heights);
      const CapacityEstimate est = hcap_estimate(e, ys, samples, seed, walk);
      print_estimate(est, "hcap");
      if (!csv.empty()) write_estimate_csv(est, "hcap", csv);
      return 0;
    }
    if (sym_cmd->parsed()) {
      return run_symmetrize(sym_regions, op, center, grid, weights, out);
    }
    if (ext_cmd->parsed()) {
      return run_extremal(map, param, numeric_check);
    }
    if (verify_cmd->parsed()) {
      std::vector<SuiteKind> kinds;
      if (suite == "all") {
        kinds = all_suites();
      } else {
        kinds.push_back(parse_suite(suite));
      }
      Report combined;
      combined.suite = suite;
      std::size_t fails = 0;
      for (const SuiteKind kind : kinds) {
        config.suite = kind;
        const Report r = run_suite(config);
        for (const CaseRow& row : r.rows) {
          if (row.status != CaseStatus::kPass && row.status != CaseStatus::kEquality) {
            std::cout << row.name << ' ' << status_name(row.status) << " slack "
                      << format_number(row.slack) << " stderr " << format_number(row.std_error)
                      << (row.note.empty() ? "" : " note ") << row.note << '\n';
          }
        }
        std::cout << r.suite << ": pass " << r.pass_count() << " fail " << r.fail_count()
                  << " flagged " << r.flagged_count() << " runtime "
                  << format_number(r.runtime_seconds) << "s\n";
        fails += r.fail_count();
        combined.rows.insert(combined.rows.end(), r.rows.begin(), r.rows.end());
      }
      if (!csv.empty()) emit_csv(combined, csv);
      return fails == 0 ? 0 : 1;
    }
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return 2;
  }
  return 0;
}
