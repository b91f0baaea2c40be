#include "cli/presets.hpp"

#include <cmath>
#include <stdexcept>

namespace entmed::cli {

using json = nlohmann::json;

namespace {

std::vector<Preset> build() {
  const double pi = 3.14159265358979323846;
  std::vector<Preset> out;
  out.push_back({"fig3_2", "entanglement and discord with instrumental mediator discord",
                 {{"fig3_2", "instrumental-discord", {{"T_max", pi / 4}, {"points", 161}}}}, {}});
  out.push_back({"fig3_3", "entanglement localisation", {{"fig3_3", "localisation", {{"points", 41}}}}, {}});
  out.push_back({"fig5_1", "direct coupling saturating the speed limit", {{"fig5_1", "qsl-direct", json::object()}}, {}});
  out.push_back({"fig5_2", "GHZ mediator with the direct dynamics", {{"fig5_2", "qsl-ghz", json::object()}}, {}});
  out.push_back({"fig6_2", "trapped masses for three coupling strengths",
                 {{"fig6_2", "gravity-trapped", {{"eta", {0.01, 0.05, 0.1}}, {"T_max", 3.0}, {"points", 301}}}}, {}});
  const double eta_s = 1e-4;
  out.push_back({"fig6_3", "trapped squeezed masses",
                 {{"fig6_3", "gravity-trapped",
                   {{"eta", eta_s},
                    {"s_A", {0.1, 0.5, 1.0}},
                    {"local_frame", true},
                    {"T_max", 1.5 * pi / (2 * eta_s)},
                    {"points", 3001}}}},
                 {}});
  out.push_back({"fig6_5", "released masses for three initial occupations",
                 {{"fig6_5", "gravity-released", {{"nbar", {0.0, 1.0, 5.0}}}}}, {}});
  out.push_back({"fig6_6", "squeezed kilogram masses with the position width",
                 {{"fig6_6", "gravity-trapped",
                   {{"m", 1.0},
                    {"omega", 0.1},
                    {"L_over_R", 2.1},
                    {"s_A", {1.73, -1.73}},
                    {"local_frame", true},
                    {"width", true},
                    {"T_max", 20000.0},
                    {"points", 2001}}}},
                 {}});
  out.push_back({"fig7_2", "membrane-in-the-middle entanglement for four powers",
                 {{"fig7_2", "optomech",
                   {{"P_B", {0.02, 0.04, 0.06, 0.08}}, {"t_max_s", 20e-6}, {"require_stable", false}}}},
                 {}});
  out.push_back({"fig7_6", "two fields through an atom from |110> and |220>",
                 {{"fig7_6_110", "jc", {{"initial", "110"}}}, {"fig7_6_220", "jc", {{"initial", "220"}}}}, {}});
  out.push_back({"bacteria_dynamics", "bacteria-cavity entanglement dynamics",
                 {{"bacteria_dynamics", "bacteria", json::object()}}, {}});
  out.push_back({"bacteria_steady", "steady bacteria-cavity entanglement over both couplings",
                 {{"bacteria_steady", "bacteria-steady", json::object()}},
                 {"G_I=0:0.2e15:21", "G_II=0:0.2e15:21"}});
  return out;
}

}  // namespace

const std::vector<Preset>& presets() {
  static const std::vector<Preset> all = build();
  return all;
}

const Preset& preset_for(const std::string& id) {
  for (const auto& p : presets())
    if (p.id == id) return p;
  std::string known;
  for (const auto& p : presets()) known += " " + p.id;
  throw std::out_of_range("unknown preset '" + id + "'; known:" + known);
}

}  // namespace entmed::cli
