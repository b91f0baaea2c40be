#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

#include "cli/output.hpp"
#include "cli/presets.hpp"
#include "cli/runs.hpp"
#include "cli/schema.hpp"
#include "cli/toml_lite.hpp"
#include "entmed/witness.hpp"

using namespace entmed;
using namespace entmed::cli;
using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("entmed_cli_" + std::to_string(getpid())) / name;
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

struct Result {
  int code;
  std::string err;
};

Result invoke(const std::string& args) {
  const fs::path err = fs::temp_directory_path() / ("entmed_cli_err_" + std::to_string(getpid()));
  const std::string cmd = std::string(ENTMED_EXE) + " " + args + " >/dev/null 2>" + err.string();
  const int status = std::system(cmd.c_str());
  std::ifstream is(err);
  std::stringstream ss;
  ss << is.rdbuf();
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, ss.str()};
}

std::string read(const fs::path& p) {
  std::ifstream is(p);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

std::string header(const fs::path& p) {
  std::ifstream is(p);
  std::string line;
  std::getline(is, line);
  return line;
}

}  // namespace

// ----------------------------------------------------------------- TOML subset

TEST(Toml, TablesScalarsAndArrays) {
  json j = parse_toml(R"(
# comment
top = 1
[gravity-released]
nbar = [0, 1, 5]   # trailing comment
t_max_s = 1_0.5
name = "a \"b\" \n"
flag = true
big = 1e-7
neg = -inf
[a.b]
c = [
  1.5,
  2,
]
)");
  EXPECT_EQ(j["top"], 1);
  EXPECT_EQ(j["gravity-released"]["nbar"], json({0, 1, 5}));
  EXPECT_DOUBLE_EQ(j["gravity-released"]["t_max_s"].get<double>(), 10.5);
  EXPECT_EQ(j["gravity-released"]["name"], "a \"b\" \n");
  EXPECT_EQ(j["gravity-released"]["flag"], true);
  EXPECT_DOUBLE_EQ(j["gravity-released"]["big"].get<double>(), 1e-7);
  EXPECT_TRUE(std::isinf(j["gravity-released"]["neg"].get<double>()));
  EXPECT_EQ(j["a"]["b"]["c"], json({1.5, 2}));
}

TEST(Toml, ErrorsCarryLineNumbers) {
  for (const char* bad : {"x = ", "[t]\nx = [1, [2]]", "[[t]]", "x = 'unterminated", "x = 1\nx = 2", "= 3"}) {
    try {
      parse_toml(bad, "cfg.toml");
      ADD_FAILURE() << "accepted: " << bad;
    } catch (const std::runtime_error& e) {
      EXPECT_NE(std::string(e.what()).find("cfg.toml:"), std::string::npos) << e.what();
    }
  }
}

TEST(Toml, ValueParsing) {
  EXPECT_EQ(parse_toml_value("3"), 3);
  EXPECT_EQ(parse_toml_value("false"), false);
  EXPECT_EQ(parse_toml_value("[1, 2]"), json({1, 2}));
  EXPECT_EQ(parse_toml_value("dipole"), "dipole");
  EXPECT_EQ(parse_toml_value("\"220\""), "220");
}

// ----------------------------------------------------------------- schema

TEST(Schema, DefaultsAndValidation) {
  const Schema& s = schema_for("gravity-released");
  json p = resolve(s, json::object());
  EXPECT_DOUBLE_EQ(p["m"].get<double>(), 1e-7);
  EXPECT_EQ(p["points"], 1001);

  auto path_of = [&](const json& t) {
    try {
      resolve(s, t);
    } catch (const SchemaError& e) {
      return e.path();
    }
    return std::string("none");
  };
  EXPECT_EQ(path_of({{"bogus", 1}}), "gravity-released.bogus");
  EXPECT_EQ(path_of({{"m", "heavy"}}), "gravity-released.m");
  EXPECT_EQ(path_of({{"L_over_R", 1.5}}), "gravity-released.L_over_R");
  EXPECT_EQ(path_of({{"points", 2.5}}), "gravity-released.points");
  EXPECT_EQ(path_of({{"m", {1, 2}}}), "gravity-released.m");
  EXPECT_EQ(path_of({{"nbar", {0, -1}}}), "gravity-released.nbar[1]");
  EXPECT_EQ(path_of({{"nbar", {0, 1}}, {"m", 1.0}}), "none");
  EXPECT_THROW(schema_for("nope"), SchemaError);
}

TEST(Schema, OnlyOneListField) {
  const Schema& s = schema_for("optomech");
  EXPECT_THROW(resolve(s, {{"P_B", {0.02, 0.04}}, {"Delta_B", {-1.0, 1.0}}}), SchemaError);
}

TEST(Schema, Overrides) {
  json t = json::object();
  apply_override(t, "jc", "initial=220");
  apply_override(t, "jc", "jc.points=5");
  EXPECT_EQ(t["initial"], "220");
  EXPECT_EQ(t["points"], 5);
  EXPECT_THROW(apply_override(t, "jc", "points"), SchemaError);
  EXPECT_THROW(apply_override(t, "jc", "optomech.P_B=1"), SchemaError);
}

TEST(Schema, EveryPresetResolves) {
  for (const auto& p : presets())
    for (const auto& r : p.runs) EXPECT_NO_THROW(resolve(schema_for(r.scenario), r.table)) << p.id;
  EXPECT_THROW(preset_for("fig9_9"), std::out_of_range);
}

TEST(Grid, Parsing) {
  GridAxis a = parse_grid("P_B=0:0.1:5");
  EXPECT_EQ(a.key, "P_B");
  EXPECT_EQ(a.values().size(), 5u);
  EXPECT_DOUBLE_EQ(a.values().back(), 0.1);
  EXPECT_EQ(parse_grid("x=2:3:1").values(), std::vector<double>{2.0});
  for (const char* bad : {"P_B", "=0:1:2", "P_B=0:1", "P_B=0:1:0", "P_B=a:1:2", "P_B=0:1:2:3"})
    EXPECT_THROW(parse_grid(bad), SchemaError) << bad;
}

// ----------------------------------------------------------------- execution in process

TEST(Execute, SeriesColumnsAreSuffixed) {
  json p = resolve(schema_for("gravity-released"), {{"nbar", {0, 1}}, {"points", 5}, {"t_max_s", 1.0}});
  RunOutput out = execute("gravity-released", p, 1);
  ASSERT_FALSE(out.tabular);
  EXPECT_EQ(out.trace.time_label, "t_s");
  std::vector<std::string> names;
  for (const auto& s : out.trace.series) names.push_back(s.name);
  EXPECT_EQ(names, (std::vector<std::string>{"T_dimensionless", "E_logneg_nbar0", "E_analytic_nbar0",
                                             "E_logneg_nbar1", "E_analytic_nbar1"}));
  EXPECT_DOUBLE_EQ(out.trace.get("T_dimensionless").values.back(), 1e5);
}

TEST(Execute, SweepTableShape) {
  json t = {{"M", 4}};
  Table tab = sweep("bacteria-steady", t, {parse_grid("G_I=1e13:3e13:2"), parse_grid("G_II=2e13:4e13:3")}, 1);
  ASSERT_EQ(tab.rows.size(), 6u);
  EXPECT_EQ(tab.columns, (std::vector<std::string>{"G_I", "G_II", "stable", "max_real", "E_12_34", "E_cav_bac"}));
  EXPECT_DOUBLE_EQ(tab.rows[0][0], 1e13);
  EXPECT_DOUBLE_EQ(tab.rows[0][1], 2e13);
  EXPECT_DOUBLE_EQ(tab.rows[1][1], 3e13);
  EXPECT_DOUBLE_EQ(tab.rows[3][0], 3e13);
  EXPECT_THROW(sweep("bacteria-steady", t, {}, 1), SchemaError);
  EXPECT_THROW(sweep("bacteria-steady", t, {parse_grid("rwa=0:1:2")}, 1), SchemaError);
  EXPECT_THROW(sweep("bacteria-steady", t, {parse_grid("G_I=-1:1:2")}, 1), SchemaError);
}

TEST(Output, Sha256KnownVector) {
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  EXPECT_EQ(sha256_hex(""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
}

// ----------------------------------------------------------------- the executable

TEST(Binary, RunWritesCsvManifestAndPlot) {
  const fs::path out = scratch("loc");
  Result r = invoke("run localisation --set points=3 --set restarts=2 --plot --out " + out.string());
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(header(out / "localisation.csv"), "T,E_AB,S_AB,D_ABgC");
  EXPECT_TRUE(fs::exists(out / "localisation.svg"));
  json m = json::parse(read(out / "manifest.json"));
  EXPECT_EQ(m["runs"][0]["parameters"]["points"], 3);
  EXPECT_EQ(m["files"]["localisation.csv"], sha256_file((out / "localisation.csv").string()));
  CorrelationTrace tr = read_trace_csv((out / "localisation.csv").string());
  EXPECT_EQ(tr.times.size(), 3u);
}

TEST(Binary, JcInitialFlag) {
  const fs::path out = scratch("jc");
  Result r = invoke("run jc --initial 220 --set points=4 --out " + out.string());
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(header(out / "jc.csv"), "gt,I_AB,N_AB,CC_lb,negS_AgB");
  EXPECT_EQ(invoke("run jc --initial 2x0 --out " + out.string()).code, 2);
  EXPECT_EQ(invoke("run qsl-direct --initial 220 --out " + out.string()).code, 2);
}

TEST(Binary, ConfigFileAndReproducibleHash) {
  const fs::path out = scratch("cfg");
  std::ofstream(out / "fig6_5.toml") << "[gravity-released]\nnbar = [0, 1, 5]\npoints = 11\n";
  ASSERT_EQ(invoke("run gravity-released --config " + (out / "fig6_5.toml").string() + " --out " + (out / "a").string()).code, 0);
  ASSERT_EQ(invoke("run gravity-released --config " + (out / "fig6_5.toml").string() + " --out " + (out / "b").string()).code, 0);
  EXPECT_EQ(header(out / "a" / "gravity-released.csv"),
            "t_s,T_dimensionless,E_logneg_nbar0,E_analytic_nbar0,E_logneg_nbar1,E_analytic_nbar1,E_logneg_nbar5,"
            "E_analytic_nbar5");
  json a = json::parse(read(out / "a" / "manifest.json")), b = json::parse(read(out / "b" / "manifest.json"));
  EXPECT_EQ(a["run_hash"], b["run_hash"]);
  EXPECT_EQ(read(out / "a" / "gravity-released.csv"), read(out / "b" / "gravity-released.csv"));
  ASSERT_EQ(invoke("run gravity-released --seed 5 --config " + (out / "fig6_5.toml").string() + " --out " +
                   (out / "c").string())
                .code,
            0);
  EXPECT_NE(json::parse(read(out / "c" / "manifest.json"))["run_hash"], a["run_hash"]);
}

TEST(Binary, SchemaErrorsExitTwoWithFieldPath) {
  const fs::path out = scratch("bad");
  Result r = invoke("run gravity-released --set nbar=-1 --out " + out.string());
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("gravity-released.nbar"), std::string::npos) << r.err;
  std::ofstream(out / "bad.toml") << "[optomech]\nP_B = \"loud\"\n";
  r = invoke("run optomech --config " + (out / "bad.toml").string() + " --out " + out.string());
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("optomech.P_B"), std::string::npos) << r.err;
  std::ofstream(out / "broken.toml") << "[optomech\n";
  r = invoke("run optomech --config " + (out / "broken.toml").string() + " --out " + out.string());
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("broken.toml:1"), std::string::npos) << r.err;
  EXPECT_EQ(invoke("run no-such-scenario --out " + out.string()).code, 2);
  EXPECT_EQ(invoke("frobnicate").code, 2);
}

TEST(Binary, InstabilityExitsThreeWithSpectrum) {
  const fs::path out = scratch("unstable");
  Result r = invoke("run optomech --set P_B=0 --set points=3 --out " + out.string());
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.err.find("spectrum"), std::string::npos) << r.err;
  r = invoke("run optomech-steady --set P_B=0 --out " + out.string());
  EXPECT_EQ(r.code, 3);
  EXPECT_EQ(invoke("run optomech --set P_B=0 --set points=3 --set require_stable=false --out " + out.string()).code, 0);
}

TEST(Binary, SweepWithStabilityMask) {
  const fs::path out = scratch("sweep");
  Result r = invoke("sweep optomech-steady --grid P_B=0:0.08:3 --grid Delta_B=-6.2e6:-5.7e6:2 --out " + out.string());
  ASSERT_EQ(r.code, 0) << r.err;
  Table expect;
  std::ifstream is(out / "optomech-steady_sweep.csv");
  std::string line;
  std::getline(is, line);
  EXPECT_EQ(line, "P_B,Delta_B,stable,max_real,E_AB,E_AB_C");
  int rows = 0, unstable = 0;
  while (std::getline(is, line)) {
    ++rows;
    if (line.find(",0,") != std::string::npos && line.rfind("0,", 0) == 0) ++unstable;
  }
  EXPECT_EQ(rows, 6);
  EXPECT_EQ(unstable, 2);
  r = invoke("sweep optomech-steady --out " + out.string());
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("empty grid"), std::string::npos) << r.err;
}

TEST(Binary, ReproduceKnownAndUnknown) {
  const fs::path out = scratch("rep");
  ASSERT_EQ(invoke("reproduce fig5_1 --plot --out " + out.string()).code, 0);
  EXPECT_EQ(header(out / "fig5_1.csv"), "T,Gamma,N_AB");
  EXPECT_TRUE(fs::exists(out / "fig5_1.svg"));
  EXPECT_TRUE(fs::exists(out / "manifest.json"));
  Result r = invoke("reproduce fig9_9 --out " + out.string());
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("fig6_2"), std::string::npos) << r.err;
  EXPECT_NE(r.err.find("bacteria_steady"), std::string::npos) << r.err;
}

TEST(Binary, ReproduceFig62HasThreeCurves) {
  const fs::path out = scratch("fig62");
  ASSERT_EQ(invoke("reproduce fig6_2 --out " + out.string()).code, 0);
  EXPECT_EQ(header(out / "fig6_2.csv"), "t_s,T_dimensionless,E_logneg_eta0.01,E_logneg_eta0.05,E_logneg_eta0.1");
}
