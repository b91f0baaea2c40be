#include "entmed/witness.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace entmed {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::positive:
      return "positive";
    case Verdict::negative:
      return "negative";
    case Verdict::not_applicable:
      return "not_applicable";
  }
  return "?";
}

void CorrelationTrace::add(std::string name, std::string quantifier, std::string partition,
                           std::vector<double> values) {
  if (has(name)) throw std::invalid_argument("CorrelationTrace: duplicate series " + name);
  series.push_back({std::move(name), std::move(quantifier), std::move(partition), std::move(values)});
}

bool CorrelationTrace::has(const std::string& name) const {
  for (const auto& s : series)
    if (s.name == name) return true;
  return false;
}

const Series& CorrelationTrace::get(const std::string& name) const {
  for (const auto& s : series)
    if (s.name == name) return s;
  throw std::out_of_range("CorrelationTrace: no series " + name);
}

std::optional<double> CorrelationTrace::meta_value(const std::string& key) const {
  auto it = meta.find(key);
  if (it == meta.end()) return std::nullopt;
  return it->second;
}

void CorrelationTrace::validate() const {
  for (std::size_t i = 1; i < times.size(); ++i)
    if (!(times[i] > times[i - 1])) throw std::invalid_argument("CorrelationTrace: times not strictly increasing");
  for (const auto& s : series)
    if (s.values.size() != times.size())
      throw std::invalid_argument("CorrelationTrace: series " + s.name + " has wrong length");
}

std::string format_csv_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void write_trace_csv(const CorrelationTrace& tr, const std::string& path) {
  tr.validate();
  std::ofstream os(path);
  if (!os) throw std::runtime_error("write_trace_csv: cannot open " + path);
  os << tr.time_label;
  for (const auto& s : tr.series) os << ',' << s.name;
  os << '\n';
  for (std::size_t i = 0; i < tr.times.size(); ++i) {
    os << format_csv_number(tr.times[i]);
    for (const auto& s : tr.series) os << ',' << format_csv_number(s.values[i]);
    os << '\n';
  }
  if (!os) throw std::runtime_error("write_trace_csv: write failed for " + path);
}

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    if (!cell.empty() && cell.back() == '\r') cell.pop_back();
    out.push_back(cell);
  }
  return out;
}

// "E_AB" -> ("E", "AB")
void split_name(const std::string& name, std::string& q, std::string& p) {
  const auto pos = name.find('_');
  q = name.substr(0, pos);
  p = pos == std::string::npos ? std::string() : name.substr(pos + 1);
}

}  // namespace

CorrelationTrace read_trace_csv(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("read_trace_csv: cannot open " + path);
  std::string line;
  if (!std::getline(is, line)) throw std::runtime_error("read_trace_csv: empty file " + path);
  const auto header = split(line);
  if (header.empty()) throw std::runtime_error("read_trace_csv: empty header");
  CorrelationTrace tr;
  tr.time_label = header[0];
  for (std::size_t c = 1; c < header.size(); ++c) {
    Series s;
    s.name = header[c];
    split_name(s.name, s.quantifier, s.partition);
    tr.series.push_back(s);
  }
  int row = 1;
  while (std::getline(is, line)) {
    ++row;
    if (line.empty() || line == "\r") continue;
    const auto cells = split(line);
    if (cells.size() != header.size())
      throw std::runtime_error("read_trace_csv: row " + std::to_string(row) + " has wrong column count");
    try {
      tr.times.push_back(std::stod(cells[0]));
      for (std::size_t c = 1; c < cells.size(); ++c) tr.series[c - 1].values.push_back(std::stod(cells[c]));
    } catch (const std::logic_error&) {
      throw std::runtime_error("read_trace_csv: bad number on row " + std::to_string(row));
    }
  }
  tr.validate();
  return tr;
}

Quantifier parse_quantifier(const std::string& s) {
  if (s == "I" || s == "mutual_information") return Quantifier::mutual_information;
  if (s == "CC" || s == "classical_correlation") return Quantifier::classical_correlation;
  if (s == "D" || s == "discord") return Quantifier::discord;
  if (s == "N" || s == "negativity") return Quantifier::negativity;
  if (s == "LN" || s == "log_negativity") return Quantifier::log_negativity;
  if (s == "E" || s == "ree") return Quantifier::ree;
  if (s == "S" || s == "entropy_of_entanglement") return Quantifier::entropy_of_entanglement;
  throw std::invalid_argument("unknown quantifier: " + s);
}

double capacity_bound(Quantifier q, double d_C) {
  if (!(d_C >= 1.0)) throw std::invalid_argument("capacity_bound: mediator dimension must be >= 1");
  switch (q) {
    case Quantifier::mutual_information:
      return 2.0 * std::log2(d_C);
    case Quantifier::negativity:
      return (d_C - 1.0) / 2.0;
    case Quantifier::classical_correlation:
    case Quantifier::discord:
    case Quantifier::log_negativity:
    case Quantifier::ree:
    case Quantifier::entropy_of_entanglement:
      return std::log2(d_C);
  }
  throw std::invalid_argument("capacity_bound: unknown quantifier");
}

namespace {

WitnessResult exceed(const CorrelationTrace& tr, const Series& s, double bound, double thr) {
  WitnessResult r;
  r.bound = bound;
  r.verdict = Verdict::negative;
  r.max_value = -INFINITY;
  for (std::size_t i = 0; i < s.values.size(); ++i) {
    const double v = s.values[i];
    r.max_value = std::max(r.max_value, v);
    if (r.verdict == Verdict::negative && v > bound + thr) {
      r.verdict = Verdict::positive;
      r.first_time = tr.times[i];
    }
  }
  if (s.values.empty()) r.max_value = 0.0;
  return r;
}

bool flag_set(const CorrelationTrace& tr, const char* key) {
  auto v = tr.meta_value(key);
  return v && *v != 0.0;
}

}  // namespace

WitnessResult discord_witness_breaking(const CorrelationTrace& tr, const std::string& name, const WitnessOptions& o) {
  tr.validate();
  const Series& s = tr.get(name);
  WitnessResult r;
  if (!flag_set(tr, "breaking_channel")) {
    r.detail = "run not certified to start after an entanglement breaking channel";
    return r;
  }
  if (!s.values.empty() && s.values.front() > o.threshold) {
    r.detail = "initial value is not zero";
    r.max_value = s.values.front();
    return r;
  }
  r = exceed(tr, s, 0.0, o.threshold);
  r.detail = r.verdict == Verdict::positive ? "D_AB|C > 0 during evolution" : "no entanglement gain observed";
  return r;
}

WitnessResult discord_witness_entropies(const CorrelationTrace& tr, const std::string& name, const WitnessOptions& o) {
  tr.validate();
  const Series& s = tr.get(name);
  auto sa = tr.meta_value("S_A0"), sb = tr.meta_value("S_B0");
  if (!sa || !sb) {
    WitnessResult r;
    r.detail = "initial probe entropies unknown";
    return r;
  }
  WitnessResult r = exceed(tr, s, *sa + *sb, o.threshold);
  r.detail = r.verdict == Verdict::positive ? "entanglement exceeds S_A(0) + S_B(0)" : "within entropy bound";
  return r;
}

WitnessResult nondecomposability_witness(const CorrelationTrace& tr, const std::string& name, Quantifier q,
                                         double d_C, std::optional<double> I_ACB0, const WitnessOptions& o) {
  tr.validate();
  const Series& s = tr.get(name);
  const double cap = capacity_bound(q, d_C);
  WitnessResult r = exceed(tr, s, cap + I_ACB0.value_or(0.0), o.threshold);
  r.detail = I_ACB0 ? "bound includes initial I_AC:B" : "assumes uncorrelated initial state";
  if (r.verdict == Verdict::positive) r.detail += "; evolution is not decomposable";
  return r;
}

int dimension_witness(double observed, Quantifier q) {
  if (!std::isfinite(observed)) throw std::invalid_argument("dimension_witness: non-finite value");
  for (int d = 1; d < (1 << 20); ++d)
    if (capacity_bound(q, d) >= observed - 1e-12 * std::max(1.0, std::abs(observed))) return d;
  throw std::domain_error("dimension_witness: value too large");
}

WitnessResult sec_witness(const CorrelationTrace& tr, const std::string& name, const WitnessOptions& o) {
  tr.validate();
  const Series& s = tr.get(name);
  WitnessResult r;
  if (!flag_set(tr, "product_start")) {
    r.detail = "run not certified to start from rho_AB x rho_C";
    return r;
  }
  if (s.values.empty()) {
    r.verdict = Verdict::negative;
    return r;
  }
  r = exceed(tr, s, s.values.front(), o.threshold);
  r.detail = r.verdict == Verdict::positive ? "system-environment correlation existed" : "no gain over initial value";
  return r;
}

}  // namespace entmed
