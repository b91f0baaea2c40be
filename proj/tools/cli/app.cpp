#include "cli/app.hpp"

#include <CLI11.hpp>
#include <Eigen/Core>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "cli/output.hpp"
#include "cli/presets.hpp"
#include "cli/runs.hpp"
#include "cli/schema.hpp"
#include "cli/svg.hpp"
#include "cli/toml_lite.hpp"
#include "entmed/langevin.hpp"

#ifndef ENTMED_VERSION
#define ENTMED_VERSION "0.0.0"
#endif

namespace entmed::cli {

using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t kDefaultSeed = 20240611;

json versions() {
  return {{"entmed", ENTMED_VERSION},
          {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
                        std::to_string(EIGEN_MINOR_VERSION)},
          {"compiler", __VERSION__}};
}

json load_config(const std::string& path) {
  if (path.empty()) return json::object();
  json cfg;
  try {
    cfg = parse_toml_file(path);
  } catch (const TomlError& e) {
    throw SchemaError(e.where(), e.message());
  }
  for (const auto& [k, v] : cfg.items()) {
    if (!v.is_object()) throw SchemaError(k, "top-level keys must be scenario tables");
    schema_for(k);
  }
  return cfg;
}

json scenario_table(const json& cfg, const std::string& scenario, const std::vector<std::string>& sets) {
  schema_for(scenario);
  json table = cfg.contains(scenario) ? cfg.at(scenario) : json::object();
  for (const auto& s : sets) apply_override(table, scenario, s);
  return table;
}

void write_output(const RunOutput& out, const std::string& dir, const std::string& stem, const std::string& title,
                  bool plot, std::vector<std::string>& files) {
  const std::string csv = stem + ".csv";
  if (out.tabular) {
    write_table_csv(out.table, (fs::path(dir) / csv).string());
  } else {
    write_trace_csv(out.trace, (fs::path(dir) / csv).string());
    if (plot) {
      write_svg_plot(out.trace, title, (fs::path(dir) / (stem + ".svg")).string());
      files.push_back(stem + ".svg");
    }
  }
  files.insert(files.end() - (plot && !out.tabular ? 1 : 0), csv);
}

json run_record(const std::string& scenario, const json& params, const RunOutput& out) {
  json r = {{"scenario", scenario}, {"parameters", params}, {"info", out.info}};
  if (!out.tabular && !out.trace.meta.empty()) r["meta"] = out.trace.meta;
  return r;
}

int cmd_run(const std::string& scenario, const std::string& config, const std::string& out_dir, std::uint64_t seed,
            std::vector<std::string> sets, const std::string& initial, bool plot) {
  if (!initial.empty()) {
    if (scenario != "jc") throw SchemaError("--initial", "only the jc scenario takes an initial state");
    sets.push_back("initial=\"" + initial + "\"");
  }
  const json params = resolve(schema_for(scenario), scenario_table(load_config(config), scenario, sets));
  RunOutput out = execute(scenario, params, seed);
  fs::create_directories(out_dir);
  std::vector<std::string> files;
  write_output(out, out_dir, scenario, scenario, plot, files);
  json manifest = {{"command", "run"}, {"seed", seed}, {"versions", versions()}};
  manifest["runs"] = json::array({run_record(scenario, params, out)});
  write_manifest(finish_manifest(manifest, out_dir, files), (fs::path(out_dir) / "manifest.json").string());
  std::cout << "wrote " << (fs::path(out_dir) / files.front()).string() << '\n';
  return 0;
}

int cmd_sweep(const std::string& scenario, const std::string& config, const std::string& out_dir, std::uint64_t seed,
              const std::vector<std::string>& sets, const std::vector<std::string>& grid) {
  std::vector<GridAxis> axes;
  for (const auto& g : grid) axes.push_back(parse_grid(g));
  const json table = scenario_table(load_config(config), scenario, sets);
  const json params = resolve(schema_for(scenario), table);
  Table t = sweep(scenario, table, axes, seed);
  fs::create_directories(out_dir);
  const std::string csv = scenario + "_sweep.csv";
  write_table_csv(t, (fs::path(out_dir) / csv).string());
  json axes_j = json::array();
  for (const auto& a : axes) axes_j.push_back({{"key", a.key}, {"lo", a.lo}, {"hi", a.hi}, {"n", a.n}});
  json manifest = {{"command", "sweep"}, {"seed", seed}, {"versions", versions()}, {"grid", axes_j}};
  manifest["runs"] = json::array({{{"scenario", scenario}, {"parameters", params}}});
  write_manifest(finish_manifest(manifest, out_dir, {csv}), (fs::path(out_dir) / "manifest.json").string());
  std::cout << "wrote " << (fs::path(out_dir) / csv).string() << " (" << t.rows.size() << " cells)\n";
  return 0;
}

int cmd_reproduce(const std::string& id, const std::string& out_dir, std::uint64_t seed, bool plot) {
  const Preset* preset = nullptr;
  try {
    preset = &preset_for(id);
  } catch (const std::out_of_range& e) {
    throw SchemaError(id, e.what());
  }
  fs::create_directories(out_dir);
  std::vector<std::string> files;
  json runs = json::array();
  for (const auto& r : preset->runs) {
    if (!preset->grid.empty()) {
      std::vector<GridAxis> axes;
      for (const auto& g : preset->grid) axes.push_back(parse_grid(g));
      Table t = sweep(r.scenario, r.table, axes, seed);
      write_table_csv(t, (fs::path(out_dir) / (r.file + ".csv")).string());
      files.push_back(r.file + ".csv");
      runs.push_back({{"scenario", r.scenario}, {"parameters", resolve(schema_for(r.scenario), r.table)},
                      {"grid", preset->grid}});
      continue;
    }
    const json params = resolve(schema_for(r.scenario), r.table);
    RunOutput out = execute(r.scenario, params, seed);
    write_output(out, out_dir, r.file, preset->id + ": " + preset->summary, plot, files);
    runs.push_back(run_record(r.scenario, params, out));
  }
  json manifest = {{"command", "reproduce"}, {"preset", preset->id}, {"seed", seed}, {"versions", versions()},
                   {"runs", runs}};
  write_manifest(finish_manifest(manifest, out_dir, files), (fs::path(out_dir) / "manifest.json").string());
  for (const auto& f : files) std::cout << "wrote " << (fs::path(out_dir) / f).string() << '\n';
  return 0;
}

int cmd_list() {
  std::cout << "scenarios:\n";
  for (const auto& s : schemas()) {
    std::cout << "  " << s.scenario << "  " << s.summary << '\n';
    for (const auto& f : s.fields)
      std::cout << "      " << f.key << " = " << f.def.dump() << (f.series ? "  (list allowed)" : "") << "  " << f.doc
                << '\n';
  }
  std::cout << "presets:\n";
  for (const auto& p : presets()) std::cout << "  " << p.id << "  " << p.summary << '\n';
  return 0;
}

void dump_spectrum(const UnstableModel& e) {
  std::cerr << "entmed: unstable dynamics: " << e.what() << "\nspectrum (re, im):\n";
  for (const auto& z : e.spectrum()) std::cerr << "  " << format_csv_number(z.real()) << ", " << format_csv_number(z.imag()) << '\n';
}

}  // namespace

int run_cli(int argc, char** argv) {
  CLI::App app{"entmed: entanglement through mediators"};
  app.set_version_flag("--version", ENTMED_VERSION);
  app.require_subcommand(1);

  std::string scenario, config, out_dir = "out", initial, preset_id;
  std::uint64_t seed = kDefaultSeed;
  std::vector<std::string> sets, grid;
  bool plot = false;

  auto* run = app.add_subcommand("run", "run one scenario");
  run->add_option("scenario", scenario, "scenario name")->required();
  run->add_option("--config", config, "TOML file with one table per scenario");
  run->add_option("--out", out_dir, "output directory");
  run->add_option("--seed", seed, "seed for randomised optimisers");
  run->add_option("--set", sets, "override key=value (repeatable)");
  run->add_option("--initial", initial, "jc initial state |mnk>, e.g. 220");
  run->add_flag("--plot", plot, "write an SVG line plot");

  auto* rep = app.add_subcommand("reproduce", "run a named figure preset");
  rep->add_option("preset", preset_id, "preset id")->required();
  rep->add_option("--out", out_dir, "output directory");
  rep->add_option("--seed", seed, "seed for randomised optimisers");
  rep->add_flag("--plot", plot, "write SVG line plots");

  auto* swp = app.add_subcommand("sweep", "evaluate a scenario over a parameter grid");
  swp->add_option("scenario", scenario, "scenario name")->required();
  swp->add_option("--grid", grid, "axis key=lo:hi:n (repeatable)");
  swp->add_option("--config", config, "TOML file with one table per scenario");
  swp->add_option("--out", out_dir, "output directory");
  swp->add_option("--seed", seed, "seed for randomised optimisers");
  swp->add_option("--set", sets, "override key=value (repeatable)");

  auto* lst = app.add_subcommand("list", "list scenarios, their fields and presets");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*run) return cmd_run(scenario, config, out_dir, seed, sets, initial, plot);
    if (*rep) return cmd_reproduce(preset_id, out_dir, seed, plot);
    if (*swp) return cmd_sweep(scenario, config, out_dir, seed, sets, grid);
    if (*lst) return cmd_list();
  } catch (const SchemaError& e) {
    std::cerr << "entmed: schema error at " << e.what() << '\n';
    return 2;
  } catch (const UnstableModel& e) {
    dump_spectrum(e);
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "entmed: invalid configuration: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "entmed: error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace entmed::cli
