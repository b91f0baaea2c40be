#include "cli/runs.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>

#include "cli/schema.hpp"
#include "entmed/corr.hpp"
#include "entmed/dynamics.hpp"
#include "entmed/gaussian.hpp"
#include "entmed/langevin.hpp"
#include "entmed/parallel.hpp"
#include "entmed/qsl.hpp"
#include "entmed/scenarios.hpp"

namespace entmed::cli {

using json = nlohmann::json;

namespace {

double num(const json& p, const char* k) { return p.at(k).get<double>(); }
int inum(const json& p, const char* k) { return p.at(k).get<int>(); }
bool flag(const json& p, const char* k) { return p.at(k).get<bool>(); }

// columns with quantifier "t" are time axes shared by every series
void time_column(CorrelationTrace& tr, const std::string& name, std::vector<double> v) {
  tr.add(name, "t", "", std::move(v));
}

std::vector<double> scaled(const std::vector<double>& v, double f) {
  std::vector<double> out(v);
  for (auto& x : out) x *= f;
  return out;
}

std::vector<int> range(int a, int b) {
  std::vector<int> v;
  for (int i = a; i < b; ++i) v.push_back(i);
  return v;
}

void require_stable(const DriftModel& m, const std::string& what) {
  const Stability st = stability(m);
  if (st.stable) return;
  std::ostringstream os;
  os << what << ": drift matrix has an eigenvalue with positive real part (max Re " << st.max_real << ")";
  throw UnstableModel(os.str(), st.eigenvalues);
}

// ----------------------------------------------------------------- qubit scenarios

RunOutput run_instrumental(const json& p, std::uint64_t seed) {
  Scenario s = scenario_hamiltonian("instrumental_discord");
  UnitaryPropagator up(s.H);
  const Partition a_bc({"A"}, {"B", "C"});
  ReeOptions ro;
  ro.restarts = inum(p, "restarts");
  ro.seed = seed;
  RedOptions rd;
  rd.seed = seed;
  RunOutput out;
  out.trace.time_label = "T";
  out.trace.times = linspace(0.0, num(p, "T_max"), inum(p, "points"));
  std::vector<double> e, d;
  for (double T : out.trace.times) {
    DensityMatrix r = up.apply(s.rho0, T);
    e.push_back(ree_numeric(r, a_bc, ro).value);
    d.push_back(red_discord(r, "C", rd).value);
  }
  out.trace.add("E_A_BC", "E", "A_BC", e);
  out.trace.add("D_ABgC", "D", "AB|C", d);
  out.info["time"] = "T = omega t";
  return out;
}

RunOutput run_localisation(const json& p, std::uint64_t seed) {
  Scenario s = scenario_hamiltonian("localisation", {{"p", num(p, "p")}});
  UnitaryPropagator up(s.H);
  const Partition ab({"A"}, {"B"});
  ReeOptions ro;
  ro.restarts = inum(p, "restarts");
  ro.seed = seed;
  RedOptions rd;
  rd.seed = seed;
  RunOutput out;
  out.trace.time_label = "T";
  out.trace.times = linspace(0.0, num(p, "T_max"), inum(p, "points"));
  std::vector<double> e, sab, d;
  for (double T : out.trace.times) {
    DensityMatrix r = up.apply(s.rho0, T);
    DensityMatrix rab = partial_trace(r, {"A", "B"});
    e.push_back(ree_numeric(rab, ab, ro).value);
    sab.push_back(von_neumann_entropy(rab));
    d.push_back(red_discord(r, "C", rd).value);
  }
  out.trace.add("E_AB", "E", "AB", e);
  out.trace.add("S_AB", "S", "AB", sab);
  out.trace.add("D_ABgC", "D", "AB|C", d);
  out.info["time"] = "T = omega t";
  return out;
}

RunOutput run_qsl(const json& p, const char* scenario) {
  Scenario s = scenario_hamiltonian(scenario);
  const bool mediated = std::string(scenario) == "ghz_saturation";
  UnitaryPropagator up(s.H);
  const Partition ab({"A"}, {"B"});
  RunOutput out;
  out.trace.time_label = "T";
  out.trace.times = linspace(0.0, num(p, "T_max"), inum(p, "points"));
  std::vector<double> g, n;
  for (double T : out.trace.times) {
    DensityMatrix r = up.apply(s.rho0, T);
    g.push_back(qsl_time_bound(s.rho0, r, s.H).gamma);
    n.push_back(negativity(mediated ? partial_trace(r, {"A", "B"}) : r, ab));
  }
  out.trace.add("Gamma", "Gamma", "", g);
  out.trace.add("N_AB", "N", "AB", n);
  out.info["time"] = "T = Omega t";
  return out;
}

RunOutput run_jc(const json& p) {
  const std::string init = p.at("initial").get<std::string>();
  if (init.size() != 3 || init.find_first_not_of("0123456789") != std::string::npos)
    throw SchemaError("jc.initial", "expected three digits m n k, e.g. \"110\"");
  const int m = init[0] - '0', n = init[1] - '0', k = init[2] - '0';
  if (k > 1) throw SchemaError("jc.initial", "atom level k must be 0 or 1");
  const std::string model = p.at("model").get<std::string>();
  if (model != "jc" && model != "dipole") throw SchemaError("jc.model", "expected jc or dipole");
  std::map<std::string, double> sp{{"m", m}, {"n", n}, {"k", k}};
  const int nmax = inum(p, "n_max") > 0 ? inum(p, "n_max") : default_fock_cutoff(m + n + k);
  if (m > nmax || n > nmax) throw SchemaError("jc.n_max", "cutoff below the initial photon number");
  sp["n_max"] = nmax;
  Scenario s = scenario_hamiltonian(model == "jc" ? "jc_fields" : "dipole_fields", sp);
  UnitaryPropagator up(s.H);
  const Partition ab({"A"}, {"B"});
  const auto ba = MeasurementBasis::computational("A", nmax + 1), bb = MeasurementBasis::computational("B", nmax + 1);
  RunOutput out;
  out.trace.time_label = "gt";
  out.trace.times = linspace(0.0, num(p, "gt_max"), inum(p, "points"));
  std::vector<double> mi, neg, cc, ns;
  for (double gt : out.trace.times) {
    DensityMatrix rab = partial_trace(DensityMatrix(up.apply(*s.psi0, gt)), {"A", "B"});
    mi.push_back(mutual_information(rab, ab));
    neg.push_back(negativity(rab, ab));
    cc.push_back(classical_correlation_lb(rab, ba, bb));
    ns.push_back(-conditional_entropy(rab, {"A"}, {"B"}));
  }
  out.trace.add("I_AB", "I", "AB", mi);
  out.trace.add("N_AB", "N", "AB", neg);
  out.trace.add("CC_lb", "CC", "AB", cc);
  out.trace.add("negS_AgB", "negS", "A|B", ns);
  out.trace.meta["d_C"] = 2;
  out.info["fock_cutoff"] = nmax;
  out.info["time"] = "gt";
  return out;
}

// ----------------------------------------------------------------- gravity

GravityConfig gravity_config(const json& p) {
  GravityConfig c = GravityConfig::spheres(num(p, "m"), num(p, "omega"), num(p, "L_over_R"));
  c.nbar = num(p, "nbar");
  c.validate();
  return c;
}

RunOutput run_trapped(const json& p) {
  GravityConfig cfg = gravity_config(p);
  cfg.gamma = num(p, "gamma");
  cfg.s_A = num(p, "s_A");
  cfg.s_B = flag(p, "same_squeezing") ? cfg.s_A : num(p, "s_B");
  const double eta = num(p, "eta") > 0 ? num(p, "eta") : eta_g(cfg);
  DriftModel m = num(p, "eta") > 0 ? trapped_drift_eta(eta, cfg.gamma / cfg.omega, cfg.nbar, cfg.s_A, cfg.s_B)
                                   : trapped_drift(cfg);
  PropagationOptions opts;
  opts.local_frame = flag(p, "local_frame");
  const auto grid = linspace(0.0, num(p, "T_max"), inum(p, "points"));
  auto tr = propagate_cm(m, grid, opts);
  RunOutput out;
  out.trace.time_label = "t_s";
  out.trace.times = scaled(grid, 1.0 / cfg.omega);
  time_column(out.trace, "T_dimensionless", grid);
  std::vector<double> e, w;
  const double xs = position_scale(cfg);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const RMat v = tr.lab(k);
    e.push_back(log_negativity_two_mode(v));
    w.push_back(xs * std::sqrt(v(0, 0)));
  }
  out.trace.add("E_logneg", "E", "AB", e);
  if (flag(p, "width")) out.trace.add("x_width_A_m", "width", "A", w);
  out.info["eta_g"] = eta;
  out.info["seconds_per_time_unit"] = 1.0 / cfg.omega;
  out.info["metres_per_position_unit"] = xs;
  out.info["dt_used"] = tr.dt_used;
  return out;
}

RunOutput run_released(const json& p) {
  GravityConfig cfg = gravity_config(p);
  PropagationOptions opts;
  opts.local_frame = true;
  const auto t_s = linspace(0.0, num(p, "t_max_s"), inum(p, "points"));
  const auto grid = scaled(t_s, cfg.omega);
  auto tr = propagate_cm(released_drift(cfg), grid, opts);
  RunOutput out;
  out.trace.time_label = "t_s";
  out.trace.times = t_s;
  time_column(out.trace, "T_dimensionless", grid);
  std::vector<double> e, ea;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    e.push_back(log_negativity_two_mode(tr.V[k]));
    ea.push_back(released_entanglement_analytic(cfg, t_s[k]));
  }
  out.trace.add("E_logneg", "E", "AB", e);
  out.trace.add("E_analytic", "E", "AB", ea);
  out.info["seconds_per_time_unit"] = 1.0 / cfg.omega;
  out.info["drive_nu"] = gravity_drive(cfg);
  out.info["dt_used"] = tr.dt_used;
  return out;
}

// ----------------------------------------------------------------- bacteria and optomechanics

BacteriaConfig bacteria_config(const json& p) {
  BacteriaConfig c;
  c.L = num(p, "L");
  c.n_r = num(p, "n_r");
  c.R1 = num(p, "R1");
  c.R2 = num(p, "R2");
  c.M = inum(p, "M");
  c.Omega_I = num(p, "Omega_I");
  c.Omega_II = num(p, "Omega_II");
  c.G_I = num(p, "G_I");
  c.G_II = num(p, "G_II");
  c.P.assign(c.M, num(p, "P"));
  c.validate();
  return c;
}

OptomechConfig optomech_config(const json& p) {
  OptomechConfig c;
  for (auto [key, field] : std::initializer_list<std::pair<const char*, double OptomechConfig::*>>{
           {"m_C", &OptomechConfig::m_C},
           {"omega_C", &OptomechConfig::omega_C},
           {"gamma_C", &OptomechConfig::gamma_C},
           {"T", &OptomechConfig::T},
           {"l_A", &OptomechConfig::l_A},
           {"l_B", &OptomechConfig::l_B},
           {"finesse", &OptomechConfig::finesse},
           {"P_A", &OptomechConfig::P_A},
           {"P_B", &OptomechConfig::P_B},
           {"wavelength", &OptomechConfig::wavelength},
           {"Delta_A", &OptomechConfig::Delta_A},
           {"Delta_B", &OptomechConfig::Delta_B}})
    c.*field = num(p, key);
  c.effective_detuning = flag(p, "effective_detuning");
  c.validate();
  return c;
}

RunOutput run_bacteria(const json& p) {
  BacteriaConfig cfg = bacteria_config(p);
  DriftModel m = bacteria_drift(cfg, flag(p, "rwa"));
  require_stable(m, "bacteria");
  const int M = cfg.M;
  const auto t_s = linspace(0.0, num(p, "t_max_s"), inum(p, "points"));
  const auto grid = scaled(t_s, 1.0 / m.time_unit_s);
  auto tr = propagate_cm(m, grid);
  auto mt = propagate_means(m, grid);
  RunOutput out;
  out.trace.time_label = "t_s";
  out.trace.times = t_s;
  time_column(out.trace, "T_dimensionless", grid);
  std::vector<double> ec, eb, n1, n2;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    ec.push_back(log_negativity_cv(tr.V[k], {0, 1}, {2, 3}));
    eb.push_back(log_negativity_cv(tr.V[k], range(0, M), {M, M + 1}));
    const auto n = photon_numbers(tr.V[k], mt.u[k], M + 2);
    n1.push_back(n[M]);
    n2.push_back(n[M + 1]);
  }
  out.trace.add("E_12_34", "E", "12|34", ec);
  out.trace.add("E_cav_bac", "E", "cavity|bacteria", eb);
  out.trace.add("N_I", "n", "I", n1);
  out.trace.add("N_II", "n", "II", n2);
  out.info["seconds_per_time_unit"] = m.time_unit_s;
  out.info["dt_used"] = tr.dt_used;
  return out;
}

RunOutput run_optomech(const json& p) {
  OptomechConfig cfg = optomech_config(p);
  DriftModel m = optomech_drift(cfg);
  const Stability st = stability(m);
  if (flag(p, "require_stable")) require_stable(m, "optomech");
  const auto t_s = linspace(0.0, num(p, "t_max_s"), inum(p, "points"));
  const auto grid = scaled(t_s, 1.0 / m.time_unit_s);
  auto tr = propagate_cm(m, grid);
  RunOutput out;
  out.trace.time_label = "t_s";
  out.trace.times = t_s;
  time_column(out.trace, "T_dimensionless", grid);
  std::vector<double> eab, eabc;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    eab.push_back(log_negativity_cv(tr.V[k], {0}, {1}));
    eabc.push_back(log_negativity_cv(tr.V[k], {0, 1}, {2}));
  }
  out.trace.add("E_AB", "E", "A|B", eab);
  out.trace.add("E_AB_C", "E", "AB|C", eabc);
  out.info["seconds_per_time_unit"] = m.time_unit_s;
  out.info["stable"] = st.stable;
  out.info["max_real_eigenvalue"] = st.max_real;
  out.info["dt_used"] = tr.dt_used;
  return out;
}

// steady-state outputs; an unstable cell reports stable = 0 and nan entanglement
using Cell = std::vector<std::pair<std::string, double>>;

Cell steady_bacteria(const json& p) {
  BacteriaConfig cfg = bacteria_config(p);
  DriftModel m = bacteria_drift(cfg, flag(p, "rwa"));
  const Stability st = stability(m);
  const double nan = std::nan("");
  double ec = nan, eb = nan;
  if (st.stable) {
    const RMat v = steady_state(m);
    ec = log_negativity_cv(v, {0, 1}, {2, 3});
    eb = log_negativity_cv(v, range(0, cfg.M), {cfg.M, cfg.M + 1});
  }
  return {{"stable", st.stable}, {"max_real", st.max_real}, {"E_12_34", ec}, {"E_cav_bac", eb}};
}

Cell steady_optomech(const json& p) {
  DriftModel m = optomech_drift(optomech_config(p));
  const Stability st = stability(m);
  const double nan = std::nan("");
  double eab = nan, eabc = nan;
  if (st.stable) {
    const RMat v = steady_state(m);
    eab = log_negativity_cv(v, {0}, {1});
    eabc = log_negativity_cv(v, {0, 1}, {2});
  }
  return {{"stable", st.stable}, {"max_real", st.max_real}, {"E_AB", eab}, {"E_AB_C", eabc}};
}

bool is_steady(const std::string& scenario) { return scenario == "bacteria-steady" || scenario == "optomech-steady"; }

Cell steady_cell(const std::string& scenario, const json& p) {
  return scenario == "bacteria-steady" ? steady_bacteria(p) : steady_optomech(p);
}

RunOutput execute_scalar(const std::string& scenario, const json& p, std::uint64_t seed) {
  if (scenario == "instrumental-discord") return run_instrumental(p, seed);
  if (scenario == "localisation") return run_localisation(p, seed);
  if (scenario == "qsl-direct") return run_qsl(p, "direct_xx");
  if (scenario == "qsl-ghz") return run_qsl(p, "ghz_saturation");
  if (scenario == "gravity-trapped") return run_trapped(p);
  if (scenario == "gravity-released") return run_released(p);
  if (scenario == "bacteria") return run_bacteria(p);
  if (scenario == "optomech") return run_optomech(p);
  if (scenario == "jc") return run_jc(p);
  throw SchemaError(scenario, "unknown scenario");
}

std::string suffix(const std::string& key, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "_%s%g", key.c_str(), v);
  return buf;
}

// at most one list-valued field, by resolve()
std::optional<std::string> list_key(const json& p) {
  for (auto it = p.begin(); it != p.end(); ++it)
    if (it->is_array()) return it.key();
  return std::nullopt;
}

}  // namespace

void write_table_csv(const Table& t, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open " + path);
  for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << format_csv_number(row[i]);
    os << '\n';
  }
  if (!os) throw std::runtime_error("write failed for " + path);
}

RunOutput execute(const std::string& scenario, const json& params, std::uint64_t seed) {
  schema_for(scenario);
  const std::optional<std::string> lk = list_key(params);
  if (is_steady(scenario)) {
    RunOutput out;
    out.tabular = true;
    std::vector<double> values{0.0};
    if (lk) values = params.at(*lk).get<std::vector<double>>();
    for (double v : values) {
      json p = params;
      if (lk) p[*lk] = v;
      Cell c = steady_cell(scenario, p);
      if (!lk && c[0].second == 0.0) {
        if (scenario == "bacteria-steady")
          require_stable(bacteria_drift(bacteria_config(p), flag(p, "rwa")), scenario);
        else
          require_stable(optomech_drift(optomech_config(p)), scenario);
      }
      if (out.table.columns.empty()) {
        if (lk) out.table.columns.push_back(*lk);
        for (const auto& [k, x] : c) out.table.columns.push_back(k);
      }
      std::vector<double> row;
      if (lk) row.push_back(v);
      for (const auto& [k, x] : c) row.push_back(x);
      out.table.rows.push_back(row);
    }
    return out;
  }
  if (!lk) return execute_scalar(scenario, params, seed);

  const std::string key = *lk;
  RunOutput merged;
  bool first = true;
  for (const auto& v : params.at(key)) {
    json p = params;
    p[key] = v;
    RunOutput one = execute_scalar(scenario, p, seed);
    const std::string sfx = suffix(key, v.get<double>());
    if (first) {
      merged.trace.time_label = one.trace.time_label;
      merged.trace.times = one.trace.times;
      merged.trace.meta = one.trace.meta;
      for (const auto& s : one.trace.series)
        if (s.quantifier == "t") merged.trace.series.push_back(s);
      first = false;
    }
    for (auto s : one.trace.series) {
      if (s.quantifier == "t") continue;
      s.name += sfx;
      merged.trace.series.push_back(std::move(s));
    }
    merged.info[key + "=" + format_csv_number(v.get<double>())] = one.info;
  }
  return merged;
}

std::vector<double> GridAxis::values() const {
  if (n == 1) return {lo};
  return linspace(lo, hi, n);
}

GridAxis parse_grid(const std::string& spec) {
  const auto eq = spec.find('=');
  if (eq == std::string::npos || eq == 0) throw SchemaError("--grid " + spec, "expected key=lo:hi:n");
  GridAxis a;
  a.key = spec.substr(0, eq);
  std::stringstream ss(spec.substr(eq + 1));
  std::string part;
  std::vector<std::string> parts;
  while (std::getline(ss, part, ':')) parts.push_back(part);
  if (parts.size() != 3) throw SchemaError("--grid " + spec, "expected key=lo:hi:n");
  try {
    std::size_t used = 0;
    a.lo = std::stod(parts[0], &used);
    if (used != parts[0].size()) throw std::invalid_argument("lo");
    a.hi = std::stod(parts[1], &used);
    if (used != parts[1].size()) throw std::invalid_argument("hi");
    a.n = std::stoi(parts[2], &used);
    if (used != parts[2].size()) throw std::invalid_argument("n");
  } catch (const std::logic_error&) {
    throw SchemaError("--grid " + spec, "malformed number");
  }
  if (a.n < 1) throw SchemaError("--grid " + spec, "needs at least one point");
  return a;
}

Table sweep(const std::string& scenario, const json& params, const std::vector<GridAxis>& axes, std::uint64_t seed) {
  const Schema& schema = schema_for(scenario);
  if (axes.empty()) throw SchemaError("--grid", "empty grid");
  if (list_key(params)) throw SchemaError(scenario + "." + *list_key(params), "lists are not allowed in a sweep");
  std::size_t cells = 1;
  std::vector<std::vector<double>> values;
  for (const auto& a : axes) {
    const Field* f = schema.find(a.key);
    if (!f) throw SchemaError(scenario + "." + a.key, "unknown field");
    if (f->kind != Kind::number) throw SchemaError(scenario + "." + a.key, "only real-valued fields can be swept");
    values.push_back(a.values());
    cells *= values.back().size();
  }
  // validate every cell before running any
  std::vector<json> cell_params(cells);
  for (std::size_t c = 0; c < cells; ++c) {
    json table = params;
    std::size_t r = c;
    for (std::size_t i = axes.size(); i-- > 0;) {
      table[axes[i].key] = values[i][r % values[i].size()];
      r /= values[i].size();
    }
    cell_params[c] = resolve(schema, table);
  }

  std::vector<std::vector<std::pair<std::string, double>>> results(cells);
  parallel_for(cells, [&](std::size_t c) {
    const json& p = cell_params[c];
    if (is_steady(scenario)) {
      results[c] = steady_cell(scenario, p);
      return;
    }
    RunOutput one = execute_scalar(scenario, p, seed);
    std::vector<std::pair<std::string, double>> row;
    for (const auto& s : one.trace.series) {
      if (s.quantifier == "t") continue;
      double best = -INFINITY;
      for (double x : s.values) best = std::max(best, x);
      row.emplace_back("max_" + s.name, best);
    }
    results[c] = row;
  });

  Table t;
  for (const auto& a : axes) t.columns.push_back(a.key);
  for (const auto& [k, x] : results[0]) t.columns.push_back(k);
  for (std::size_t c = 0; c < cells; ++c) {
    std::vector<double> row;
    for (const auto& a : axes) row.push_back(cell_params[c].at(a.key).get<double>());
    for (const auto& [k, x] : results[c]) row.push_back(x);
    t.rows.push_back(row);
  }
  return t;
}

}  // namespace entmed::cli
