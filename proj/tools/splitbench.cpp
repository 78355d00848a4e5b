// Convergence-study harness for classic and initial-boundary corrected
// Strang splitting on diffusion-reaction problems.

#include <CLI11.hpp>

#include <cstdio>
#include <exception>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "ibcsplit/errors.hpp"
#include "ibcsplit/experiment.hpp"

namespace {

void print_report(const ibc::ConvergenceReport& report) {
  std::printf("study %s  (dim %d, grid %lld", report.meta.name.c_str(), report.meta.dimension,
              static_cast<long long>(report.meta.nx));
  if (report.meta.dimension == 2) std::printf(" x %lld", static_cast<long long>(report.meta.ny));
  std::printf(", t_end %g, reaction %s)\n", report.meta.t_end, report.meta.reaction.c_str());
  std::printf("reference: tol %.1e/%.1e, %s, %.2fs\n", report.meta.ref_abs_tol,
              report.meta.ref_rel_tol, report.meta.reference_from_cache ? "cache hit" : "solved",
              report.meta.reference_seconds);
  for (const ibc::SchemeSeries& s : report.series) {
    std::printf("\n  %-8s %12s %14s %10s\n",
                std::string(ibc::scheme_config_name(s.scheme)).c_str(), "tau", "error_inf",
                "order");
    for (std::size_t i = 0; i < s.taus.size(); ++i) {
      if (!s.failures[i].empty()) {
        std::printf("  %-8s %12.6g %14s %10s   (%s)\n", "", s.taus[i], "failed", "",
                    s.failures[i].c_str());
        continue;
      }
      std::printf("  %-8s %12.6g %14.6e", "", s.taus[i], s.errors[i]);
      if (s.order.pairwise[i])
        std::printf(" %10.3f", *s.order.pairwise[i]);
      else
        std::printf(" %10s", "");
      std::printf("%s\n", s.order.admissible[i] ? "" : "   (below floor)");
    }
    std::printf("  %-8s tail slope: %.3f\n", "", s.order.tail_slope);
  }
  std::printf("\ntotal %.2fs\n", report.meta.total_seconds);
}

int run_study(const ibc::ExperimentSpec& spec, const std::string& out_dir,
              const std::string& format, bool no_cache) {
  ibc::StudyOptions opts;
  opts.cache_dir = std::filesystem::path(out_dir) / "cache";
  opts.use_cache = !no_cache;
  const ibc::ConvergenceReport report = ibc::run_convergence_study(spec, opts);
  print_report(report);
  const auto files = ibc::emit_report(report, format, out_dir);
  std::printf("\nwrote:\n");
  for (const auto& f : files) std::printf("  %s\n", f.string().c_str());
  return 0;
}

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Strang / IBC-Strang splitting convergence studies"};
  app.require_subcommand(1);

  // run --config <path>
  auto* run = app.add_subcommand("run", "run a study from a JSON config file");
  std::string config_path, run_out = "results", run_format = "csv";
  bool no_cache = false;
  double ref_tol = -1.0;
  run->add_option("--config", config_path, "config file")->required();
  run->add_option("--out", run_out, "output directory");
  run->add_option("--format", run_format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  run->add_flag("--no-cache", no_cache, "bypass the reference cache");
  run->add_option("--ref-tol", ref_tol, "override both reference tolerances");

  // preset <id>
  auto* preset = app.add_subcommand("preset", "run a built-in preset");
  std::string preset_id, preset_schemes, preset_taus, preset_out = "results";
  preset->add_option("id", preset_id, "preset id (see list-presets)")->required();
  preset->add_option("--schemes", preset_schemes, "comma list, e.g. classic,ibc");
  preset->add_option("--taus", preset_taus, "comma list of step sizes, descending");
  preset->add_option("--out", preset_out, "output directory");

  auto* list = app.add_subcommand("list-presets", "list built-in presets");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      ibc::ExperimentSpec spec = ibc::load_config(config_path);
      if (ref_tol > 0.0) {
        spec.reference.abs_tol = ref_tol;
        spec.reference.rel_tol = ref_tol;
      }
      return run_study(spec, run_out, run_format, no_cache);
    }
    if (preset->parsed()) {
      ibc::ExperimentSpec spec = ibc::spec_from_preset(preset_id);
      if (!preset_schemes.empty()) {
        spec.schemes.clear();
        for (const std::string& s : split_csv(preset_schemes)) {
          const auto k = ibc::scheme_from_name(s);
          if (!k) throw ibc::config_error("unknown scheme \"" + s + "\"", "schemes");
          spec.schemes.push_back(*k);
        }
      }
      if (!preset_taus.empty()) {
        spec.taus.clear();
        for (const std::string& t : split_csv(preset_taus)) spec.taus.push_back(std::stod(t));
      }
      return run_study(spec, preset_out, "csv", false);
    }
    if (list->parsed()) {
      for (const ibc::Preset& p : ibc::preset_registry()) {
        std::printf("%-8s %dD  t_end=%-5g n=%lld", p.id.c_str(), p.dimension, p.t_end,
                    static_cast<long long>(p.default_n_interior_x));
        if (p.dimension == 2)
          std::printf("x%lld", static_cast<long long>(p.default_n_interior_y));
        std::printf("  %s\n", p.summary.c_str());
        if (p.quoted_b)
          std::printf("         commonly quoted data b = (%g, %g); default uses the initial "
                      "trace\n",
                      (*p.quoted_b)[0], (*p.quoted_b)[1]);
      }
      return 0;
    }
  } catch (const ibc::config_error& e) {
    std::cerr << "config error: " << e.what();
    if (!e.field().empty()) std::cerr << " [field: " << e.field() << "]";
    std::cerr << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
