#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace entmed {

enum class Verdict { positive, negative, not_applicable };
const char* to_string(Verdict v);

struct Series {
  std::string name;        // CSV column, e.g. "E_AB"
  std::string quantifier;  // e.g. "E"
  std::string partition;   // e.g. "AB"
  std::vector<double> values;
};

struct CorrelationTrace {
  std::string time_label = "T";
  std::vector<double> times;
  std::vector<Series> series;
  // known facts about the run, e.g. S_A0, S_B0, I_ACB0, breaking_channel, product_start
  std::map<std::string, double> meta;

  void add(std::string name, std::string quantifier, std::string partition, std::vector<double> values);
  const Series& get(const std::string& name) const;
  bool has(const std::string& name) const;
  std::optional<double> meta_value(const std::string& key) const;
  void validate() const;
};

void write_trace_csv(const CorrelationTrace& tr, const std::string& path);
CorrelationTrace read_trace_csv(const std::string& path);
std::string format_csv_number(double v);

struct WitnessOptions {
  double threshold = 1e-6;
};

struct WitnessResult {
  Verdict verdict = Verdict::not_applicable;
  double max_value = 0.0;
  double bound = 0.0;
  double first_time = 0.0;  // first sample above the bound, if positive
  std::string detail;
};

enum class Quantifier {
  mutual_information,
  classical_correlation,
  discord,
  negativity,
  log_negativity,
  ree,
  entropy_of_entanglement
};
Quantifier parse_quantifier(const std::string& s);

double capacity_bound(Quantifier q, double d_C);

WitnessResult discord_witness_breaking(const CorrelationTrace& tr, const std::string& series = "E_AB",
                                       const WitnessOptions& opts = {});
WitnessResult discord_witness_entropies(const CorrelationTrace& tr, const std::string& series = "E_AB",
                                        const WitnessOptions& opts = {});
// I_ACB0 absent: the initial state is assumed uncorrelated
WitnessResult nondecomposability_witness(const CorrelationTrace& tr, const std::string& series, Quantifier q,
                                         double d_C, std::optional<double> I_ACB0 = std::nullopt,
                                         const WitnessOptions& opts = {});
int dimension_witness(double observed, Quantifier q);
WitnessResult sec_witness(const CorrelationTrace& tr, const std::string& series = "E_AB",
                          const WitnessOptions& opts = {});

}  // namespace entmed
