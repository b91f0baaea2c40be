#include "cli/schema.hpp"

#include <cmath>

#include "cli/toml_lite.hpp"

namespace entmed::cli {

using json = nlohmann::json;

namespace {

Field num(std::string k, double def, double lo, double hi, std::string doc, bool series = false) {
  return {std::move(k), Kind::number, def, lo, hi, series, std::move(doc)};
}
Field integer(std::string k, long long def, double lo, double hi, std::string doc) {
  return {std::move(k), Kind::integer, def, lo, hi, false, std::move(doc)};
}
Field flag(std::string k, bool def, std::string doc) { return {std::move(k), Kind::boolean, def, 0, 0, false, std::move(doc)}; }
Field text(std::string k, std::string def, std::string doc) {
  return {std::move(k), Kind::string, std::move(def), 0, 0, false, std::move(doc)};
}

const double kPi = 3.14159265358979323846;
const double kHuge = 1e300;

std::vector<Field> bacteria_fields() {
  return {num("L", 518e-9, 1e-9, 1, "cavity length (m)"),
          num("n_r", 1.33, 1, 10, "refractive index"),
          num("R1", 0.5, 0, 1, "mirror reflectivity 1"),
          num("R2", 1.0, 0, 1, "mirror reflectivity 2"),
          integer("M", 4, 2, 12, "number of cavity modes"),
          num("Omega_I", 2.5e15, 0, kHuge, "bacterial mode I frequency (rad/s)"),
          num("Omega_II", 4.1e15, 0, kHuge, "bacterial mode II frequency (rad/s)"),
          num("G_I", 3.9e13, 0, kHuge, "coupling to mode I (Hz)", true),
          num("G_II", 6.0e13, -kHuge, kHuge, "coupling to mode II (Hz); negative selects 1.53 G_I", true),
          num("P", 0.05, 0, kHuge, "laser power per cavity mode (W)", true),
          flag("rwa", false, "rotating-wave (Tavis-Cummings) coupling")};
}

std::vector<Field> optomech_fields() {
  return {num("m_C", 145e-12, 0, kHuge, "mirror mass (kg)"),
          num("omega_C", 2 * kPi * 947e3, 0, kHuge, "mirror frequency (rad/s)"),
          num("gamma_C", 2 * kPi * 140, 0, kHuge, "mirror damping (rad/s)"),
          num("T", 0.3, 0, kHuge, "bath temperature (K)"),
          num("l_A", 25e-3, 0, kHuge, "cavity A length (m)"),
          num("l_B", 25e-3, 0, kHuge, "cavity B length (m)"),
          num("finesse", 1.4e4, 1, kHuge, "cavity finesse"),
          num("P_A", 0.1, 0, kHuge, "laser A power (W)"),
          num("P_B", 0.04, 0, kHuge, "laser B power (W)", true),
          num("wavelength", 1064e-9, 0, kHuge, "laser wavelength (m)"),
          num("Delta_A", 2 * kPi * 947e3, -kHuge, kHuge, "detuning A (rad/s)"),
          num("Delta_B", -2 * kPi * 947e3, -kHuge, kHuge, "detuning B (rad/s)", true),
          flag("effective_detuning", true, "detunings include the radiation-pressure shift")};
}

std::vector<Schema> build() {
  std::vector<Schema> out;
  out.push_back({"instrumental-discord",
                 "three qubits, sigma_x couplings through C; E_A:BC and D_AB|C",
                 {num("T_max", kPi / 4, 0, 100, "final omega t"), integer("points", 9, 2, 100000, "grid points"),
                  integer("restarts", 16, 1, 1000, "REE restarts")}});
  out.push_back({"localisation",
                 "entanglement localisation from a flagged Bell mixture",
                 {num("p", 0.5, 0, 1, "weight of the first branch"), num("T_max", kPi / 4, 0, 100, "final omega t"),
                  integer("points", 11, 2, 100000, "grid points"), integer("restarts", 16, 1, 1000, "REE restarts")}});
  out.push_back({"qsl-direct",
                 "direct sigma_x sigma_x coupling and its speed-limit bound",
                 {num("T_max", kPi / 4, 0, 100, "final Omega t"), integer("points", 41, 2, 100000, "grid points")}});
  out.push_back({"qsl-ghz",
                 "GHZ mediator reproducing the direct dynamics",
                 {num("T_max", kPi / 4, 0, 100, "final Omega t"), integer("points", 41, 2, 100000, "grid points")}});
  out.push_back({"gravity-trapped",
                 "two trapped masses coupled by gravity",
                 {num("m", 1.0, 0, kHuge, "mass (kg)"), num("omega", 0.1, 0, kHuge, "trap frequency (rad/s)"),
                  num("L_over_R", 2.1, 2, kHuge, "centre separation over radius"),
                  num("eta", 0, 0, 0.5, "coupling eta_g; 0 derives it from m, omega, L", true),
                  num("gamma", 0, 0, kHuge, "damping (rad/s)"), num("nbar", 0, 0, kHuge, "thermal occupation"),
                  num("s_A", 0, -20, 20, "squeezing of A", true), num("s_B", 0, -20, 20, "squeezing of B"),
                  flag("same_squeezing", true, "s_B follows s_A"), num("T_max", 3.0, 0, kHuge, "final omega t"),
                  integer("points", 301, 2, 1000000, "grid points"), flag("local_frame", false, "integrate in the local frame"),
                  flag("width", false, "add the position width of A in metres")}});
  out.push_back({"gravity-released",
                 "masses released from a trap and coupled by gravity",
                 {num("m", 1e-7, 0, kHuge, "mass (kg)"), num("omega", 1e5, 0, kHuge, "initial trap frequency (rad/s)"),
                  num("L_over_R", 3.0, 2, kHuge, "centre separation over radius"),
                  num("nbar", 0, 0, kHuge, "initial thermal occupation", true),
                  num("t_max_s", 10.0, 0, kHuge, "final time (s)"), integer("points", 1001, 2, 1000000, "grid points")}});
  out.push_back({"bacteria", "multimode cavity coupled to two bacterial exciton modes",
                 [] {
                   auto f = bacteria_fields();
                   f.push_back(num("t_max_s", 2e-12, 0, kHuge, "final time (s)"));
                   f.push_back(integer("points", 401, 2, 1000000, "grid points"));
                   return f;
                 }()});
  out.push_back({"bacteria-steady", "steady state of the bacteria-cavity model", bacteria_fields(), true});
  out.push_back({"optomech", "membrane-in-the-middle optomechanics",
                 [] {
                   auto f = optomech_fields();
                   f.push_back(num("t_max_s", 20e-6, 0, kHuge, "final time (s)"));
                   f.push_back(integer("points", 2001, 2, 1000000, "grid points"));
                   f.push_back(flag("require_stable", true, "refuse unstable drift matrices"));
                   return f;
                 }()});
  out.push_back({"optomech-steady", "steady state of the optomechanical model", optomech_fields(), true});
  out.push_back({"jc",
                 "two cavity fields coupled through a two-level atom",
                 {text("initial", "110", "initial |m n k>, three digits"),
                  text("model", "jc", "jc (rotating wave) or dipole"),
                  num("gt_max", 6.0, 0, kHuge, "final g t"), integer("points", 301, 2, 1000000, "grid points"),
                  integer("n_max", 0, 0, 60, "Fock cutoff; 0 selects the default")}});
  return out;
}

void check_number(const Field& f, const json& v, const std::string& path) {
  if (!v.is_number()) throw SchemaError(path, "expected a number");
  const double x = v.get<double>();
  if (std::isnan(x)) throw SchemaError(path, "must not be nan");
  if (f.kind == Kind::integer && (!v.is_number_integer())) throw SchemaError(path, "expected an integer");
  if (x < f.lo || x > f.hi) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "value %.6g outside [%.6g, %.6g]", x, f.lo, f.hi);
    throw SchemaError(path, buf);
  }
}

void check_scalar(const Field& f, const json& v, const std::string& path) {
  switch (f.kind) {
    case Kind::number:
    case Kind::integer:
      check_number(f, v, path);
      break;
    case Kind::boolean:
      if (!v.is_boolean()) throw SchemaError(path, "expected true or false");
      break;
    case Kind::string:
      if (!v.is_string()) throw SchemaError(path, "expected a string");
      break;
  }
}

}  // namespace

const Field* Schema::find(const std::string& key) const {
  for (const auto& f : fields)
    if (f.key == key) return &f;
  return nullptr;
}

const std::vector<Schema>& schemas() {
  static const std::vector<Schema> all = build();
  return all;
}

std::vector<std::string> scenario_list() {
  std::vector<std::string> out;
  for (const auto& s : schemas()) out.push_back(s.scenario);
  return out;
}

const Schema& schema_for(const std::string& scenario) {
  for (const auto& s : schemas())
    if (s.scenario == scenario) return s;
  std::string known;
  for (const auto& s : schemas()) known += " " + s.scenario;
  throw SchemaError(scenario, "unknown scenario; known:" + known);
}

json resolve(const Schema& s, const json& table) {
  if (!table.is_null() && !table.is_object()) throw SchemaError(s.scenario, "expected a table");
  json out = json::object();
  int series = 0;
  if (table.is_object())
    for (const auto& [k, v] : table.items()) {
      const Field* f = s.find(k);
      const std::string path = s.scenario + "." + k;
      if (!f) throw SchemaError(path, "unknown field");
      if (v.is_array()) {
        if (!f->series) throw SchemaError(path, "does not accept a list");
        if (v.empty()) throw SchemaError(path, "empty list");
        for (std::size_t i = 0; i < v.size(); ++i) check_scalar(*f, v[i], path + "[" + std::to_string(i) + "]");
        ++series;
      } else {
        check_scalar(*f, v, path);
      }
      out[k] = v;
    }
  if (series > 1) throw SchemaError(s.scenario, "at most one field may hold a list");
  for (const auto& f : s.fields)
    if (!out.contains(f.key)) out[f.key] = f.def;
  return out;
}

void apply_override(json& table, const std::string& scenario, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) throw SchemaError("--set " + assignment, "expected key=value");
  std::string key = assignment.substr(0, eq);
  const std::string prefix = scenario + ".";
  if (key.rfind(prefix, 0) == 0) key = key.substr(prefix.size());
  if (key.find('.') != std::string::npos) throw SchemaError("--set " + assignment, "key belongs to another table");
  json v;
  try {
    v = parse_toml_value(assignment.substr(eq + 1));
  } catch (const TomlError& e) {
    throw SchemaError(scenario + "." + key, e.message());
  }
  const Field* f = schema_for(scenario).find(key);
  if (f && f->kind == Kind::string && !v.is_string()) v = assignment.substr(eq + 1);
  if (!table.is_object()) table = json::object();
  table[key] = v;
}

}  // namespace entmed::cli
