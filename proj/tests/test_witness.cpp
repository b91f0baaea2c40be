#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include <gtest/gtest.h>
#include <unistd.h>

#include "entmed/corr.hpp"
#include "entmed/dynamics.hpp"
#include "entmed/gaussian.hpp"
#include "entmed/langevin.hpp"
#include "entmed/scenarios.hpp"
#include "entmed/witness.hpp"
#include "support/gen.hpp"

using namespace entmed;

namespace {

const Partition kAB({"A"}, {"B"});

CorrelationTrace ramp(std::vector<double> values) {
  CorrelationTrace tr;
  for (std::size_t i = 0; i < values.size(); ++i) tr.times.push_back(0.1 * i);
  tr.add("E_AB", "E", "AB", std::move(values));
  return tr;
}

// A:B quantifier sampled along a unitary run of a scenario
CorrelationTrace scenario_trace(const Scenario& s, const std::vector<double>& grid, const std::string& name,
                                double (*q)(const DensityMatrix&, const Partition&)) {
  CorrelationTrace tr;
  tr.times = grid;
  UnitaryPropagator up(s.H);
  std::vector<double> v;
  for (double t : grid) v.push_back(q(partial_trace(up.apply(s.rho0, t), {"A", "B"}), kAB));
  tr.add(name, name.substr(0, name.find('_')), "AB", v);
  return tr;
}

std::filesystem::path temp_file(const std::string& stem) {
  return std::filesystem::temp_directory_path() / (stem + "_" + std::to_string(::getpid()) + ".csv");
}

}  // namespace

TEST(Capacity, Table) {
  EXPECT_NEAR(capacity_bound(Quantifier::mutual_information, 2), 2.0, 1e-15);
  EXPECT_NEAR(capacity_bound(Quantifier::negativity, 2), 0.5, 1e-15);
  EXPECT_NEAR(capacity_bound(Quantifier::discord, 3), std::log2(3.0), 1e-15);
  EXPECT_NEAR(capacity_bound(Quantifier::ree, 4), 2.0, 1e-15);
  EXPECT_NEAR(capacity_bound(Quantifier::log_negativity, 1), 0.0, 1e-15);
  EXPECT_THROW(capacity_bound(Quantifier::ree, 0.5), std::invalid_argument);
  EXPECT_EQ(parse_quantifier("I"), Quantifier::mutual_information);
  EXPECT_EQ(parse_quantifier("negativity"), Quantifier::negativity);
  EXPECT_THROW(parse_quantifier("Q"), std::invalid_argument);
}

TEST(Dimension, InvertsCapacity) {
  EXPECT_EQ(dimension_witness(0.6, Quantifier::negativity), 3);
  EXPECT_EQ(dimension_witness(2.0, Quantifier::mutual_information), 2);
  EXPECT_EQ(dimension_witness(4.1, Quantifier::mutual_information), 5);
  EXPECT_EQ(dimension_witness(0.0, Quantifier::ree), 1);
  EXPECT_THROW(dimension_witness(NAN, Quantifier::ree), std::invalid_argument);
  testgen::Gen g(1);
  for (int i = 0; i < 200; ++i) {
    const double x = g.uniform(0.0, 6.0);
    for (Quantifier q : {Quantifier::mutual_information, Quantifier::negativity, Quantifier::discord}) {
      const int d = dimension_witness(x, q);
      EXPECT_GE(capacity_bound(q, d), x - 1e-12);
      if (d > 1) EXPECT_LT(capacity_bound(q, d - 1), x);
    }
  }
}

TEST(Trace, Validation) {
  CorrelationTrace tr = ramp({0.0, 0.1, 0.2});
  EXPECT_NO_THROW(tr.validate());
  EXPECT_THROW(tr.add("E_AB", "E", "AB", {1, 2, 3}), std::invalid_argument);
  tr.add("I_AB", "I", "AB", {1, 2});
  EXPECT_THROW(tr.validate(), std::invalid_argument);
  CorrelationTrace bad = ramp({0.0, 0.1});
  bad.times = {0.0, 0.0};
  EXPECT_THROW(bad.validate(), std::invalid_argument);
  EXPECT_THROW(ramp({0.0}).get("N_AB"), std::out_of_range);
}

TEST(Trace, CsvRoundTrip) {
  CorrelationTrace tr;
  tr.time_label = "t_s";
  tr.times = {0.0, 1e-7, 0.25, 3.0};
  tr.add("E_AB", "E", "AB", {0.0, 1.0 / 3.0, -2.5e-13, 12345.678901234});
  tr.add("D_ABgC", "D", "ABgC", {M_PI, 0.0, 1e300, 7.0});
  const auto p = temp_file("trace");
  write_trace_csv(tr, p.string());
  CorrelationTrace back = read_trace_csv(p.string());
  std::filesystem::remove(p);
  EXPECT_EQ(back.time_label, "t_s");
  ASSERT_EQ(back.series.size(), 2u);
  EXPECT_EQ(back.get("D_ABgC").quantifier, "D");
  EXPECT_EQ(back.get("D_ABgC").partition, "ABgC");
  for (std::size_t i = 0; i < tr.times.size(); ++i) {
    EXPECT_NEAR(back.times[i], tr.times[i], 1e-11 * std::abs(tr.times[i]));
    for (const auto& s : tr.series) {
      const double a = s.values[i], b = back.get(s.name).values[i];
      EXPECT_NEAR(b, a, 1e-11 * std::abs(a)) << s.name;
    }
  }
  EXPECT_EQ(format_csv_number(1.0 / 3.0), "0.333333333333");
  EXPECT_EQ(format_csv_number(0.0), "0");
}

TEST(Trace, CsvRejectsMalformed) {
  const auto p = temp_file("bad");
  {
    std::ofstream os(p);
    os << "T,E_AB\n0,1\n0.1\n";
  }
  EXPECT_THROW(read_trace_csv(p.string()), std::runtime_error);
  {
    std::ofstream os(p);
    os << "T,E_AB\n0,abc\n";
  }
  EXPECT_THROW(read_trace_csv(p.string()), std::runtime_error);
  std::filesystem::remove(p);
  EXPECT_THROW(read_trace_csv(p.string()), std::runtime_error);
}

TEST(DiscordBreaking, Verdicts) {
  const Scenario loc = scenario_hamiltonian("localisation");
  CorrelationTrace lt = scenario_trace(loc, linspace(0.0, M_PI, 11), "N_AB", negativity);
  EXPECT_EQ(discord_witness_breaking(lt, "N_AB").verdict, Verdict::not_applicable);

  CorrelationTrace zero = ramp({0, 0, 0, 0});
  zero.meta["breaking_channel"] = 1;
  EXPECT_EQ(discord_witness_breaking(zero).verdict, Verdict::negative);

  // sigma_z on A breaks any A:BC entanglement, then the mediator dynamics run
  Scenario s = scenario_hamiltonian("instrumental_discord");
  s.rho0 = dephase(s.rho0, MeasurementBasis::computational("A", 2));
  CorrelationTrace tr;
  tr.times = linspace(0.0, M_PI / 4, 21);
  UnitaryPropagator up(s.H);
  std::vector<double> v;
  for (double t : tr.times) v.push_back(negativity(up.apply(s.rho0, t), Partition({"A"}, {"B", "C"})));
  tr.add("N_ABC", "N", "ABC", v);
  tr.meta["breaking_channel"] = 1;
  WitnessResult r = discord_witness_breaking(tr, "N_ABC");
  EXPECT_EQ(r.verdict, Verdict::positive) << r.max_value;
  EXPECT_GT(r.first_time, 0.0);

  CorrelationTrace started = ramp({0.2, 0.3});
  started.meta["breaking_channel"] = 1;
  EXPECT_EQ(discord_witness_breaking(started).verdict, Verdict::not_applicable);
}

TEST(DiscordEntropies, Verdicts) {
  CorrelationTrace tr = ramp({0.0, 0.4, 0.9});
  EXPECT_EQ(discord_witness_entropies(tr).verdict, Verdict::not_applicable);
  tr.meta["S_A0"] = 0.3;
  tr.meta["S_B0"] = 0.5;
  WitnessResult r = discord_witness_entropies(tr);
  EXPECT_EQ(r.verdict, Verdict::positive);
  EXPECT_NEAR(r.bound, 0.8, 1e-15);
  EXPECT_NEAR(r.first_time, 0.2, 1e-15);
  tr.meta["S_B0"] = 0.7;
  EXPECT_EQ(discord_witness_entropies(tr).verdict, Verdict::negative);

  // pure probes: the bound is zero
  CorrelationTrace pure = ramp({0.0, 1e-3});
  pure.meta["S_A0"] = pure.meta["S_B0"] = 0.0;
  EXPECT_EQ(discord_witness_entropies(pure).verdict, Verdict::positive);
}

TEST(DiscordEntropies, GravityGroundState) {
  DriftModel m = trapped_drift_eta(0.1, 0.0, 0.0, 0.0, 0.0);
  const auto grid = linspace(0.0, 3.0, 61);
  auto traj = propagate_cm(m, grid);
  CorrelationTrace tr;
  tr.times = grid;
  std::vector<double> e;
  for (std::size_t k = 0; k < grid.size(); ++k) e.push_back(log_negativity_two_mode(traj.lab(k)));
  tr.add("E_AB", "LN", "AB", e);
  const RMat v0 = traj.lab(0);
  tr.meta["S_A0"] = gaussian_entropy(select_modes(v0, {0}));
  tr.meta["S_B0"] = gaussian_entropy(select_modes(v0, {1}));
  EXPECT_NEAR(tr.meta["S_A0"], 0.0, 1e-12);
  EXPECT_EQ(discord_witness_entropies(tr).verdict, Verdict::positive);
}

TEST(Nondecomposability, BelowBoundIsNegative) {
  CorrelationTrace tr = ramp({0.0, 0.3, 0.49});
  EXPECT_EQ(nondecomposability_witness(tr, "E_AB", Quantifier::negativity, 2).verdict, Verdict::negative);
  EXPECT_EQ(nondecomposability_witness(tr, "E_AB", Quantifier::negativity, 2, 0.0).verdict, Verdict::negative);
  const WitnessResult r = nondecomposability_witness(ramp({0.0, 0.6}), "E_AB", Quantifier::negativity, 2, 0.05);
  EXPECT_EQ(r.verdict, Verdict::positive);
  EXPECT_NEAR(r.bound, 0.55, 1e-15);
}

TEST(Nondecomposability, JaynesCummingsBeatsDecomposableLimit) {
  Scenario s = scenario_hamiltonian("jc_fields", {{"m", 2}, {"n", 2}, {"k", 0}});
  CorrelationTrace tr = scenario_trace(s, linspace(0.0, 8.0, 161), "I_AB", mutual_information);
  WitnessResult r = nondecomposability_witness(tr, "I_AB", Quantifier::mutual_information, 2, 0.0);
  EXPECT_EQ(r.verdict, Verdict::positive) << r.max_value;
  EXPECT_GT(r.max_value, 2.0);
}

TEST(Nondecomposability, DipoleWithinBounds) {
  const int nmax = 12;
  Scenario s = scenario_hamiltonian("dipole_fields", {{"m", 1}, {"n", 1}, {"k", 0}, {"n_max", double(nmax)}});
  const auto grid = linspace(0.0, 1.0, 11);
  CorrelationTrace ti = scenario_trace(s, grid, "I_AB", mutual_information);
  CorrelationTrace tn = scenario_trace(s, grid, "N_AB", negativity);
  EXPECT_EQ(nondecomposability_witness(ti, "I_AB", Quantifier::mutual_information, 2, 0.0).verdict,
            Verdict::negative);
  EXPECT_EQ(nondecomposability_witness(tn, "N_AB", Quantifier::negativity, 2, 0.0).verdict, Verdict::negative);
}

TEST(Nondecomposability, NoFalsePositivesOnCommutingRuns) {
  testgen::Gen g(7);
  int positives = 0;
  for (int run = 0; run < 200; ++run) {
    const int dc = g.integer(2, 3);
    const Space sp({2, 2, dc}, {"A", "B", "C"});
    // H_AC and H_BC built on a shared mediator eigenbasis commute
    const CMat w = g.unitary(dc);
    CMat h = CMat::Zero(4 * dc, 4 * dc);
    for (int k = 0; k < dc; ++k) {
      const CMat pk = w.col(k) * w.col(k).adjoint();
      h += kron(kron(g.hermitian(2), ops::identity(2)), pk) + kron(kron(ops::identity(2), g.hermitian(2)), pk);
    }
    const CMat rho = g.coin() ? CMat(kron(kron(g.density(2), g.density(2)), g.density(dc))) : g.density(4 * dc);
    DensityMatrix r0(sp, rho);
    const double iacb = mutual_information(r0, Partition({"A", "C"}, {"B"}));
    Scenario s{"commuting", HermitianOp(sp, hermitize(h)), HermitianOp::zero(sp), HermitianOp::zero(sp), r0, {}};
    const auto grid = linspace(0.0, 4.0, 9);
    CorrelationTrace ti = scenario_trace(s, grid, "I_AB", mutual_information);
    CorrelationTrace tn = scenario_trace(s, grid, "N_AB", negativity);
    positives += nondecomposability_witness(ti, "I_AB", Quantifier::mutual_information, dc, iacb).verdict ==
                 Verdict::positive;
    positives += nondecomposability_witness(tn, "N_AB", Quantifier::negativity, dc, iacb).verdict ==
                 Verdict::positive;
  }
  EXPECT_EQ(positives, 0);
}

TEST(Sec, Verdicts) {
  CorrelationTrace iso = ramp({0.1, 0.1, 0.1});
  iso.meta["product_start"] = 1;
  EXPECT_EQ(sec_witness(iso).verdict, Verdict::negative);

  const Scenario loc = scenario_hamiltonian("localisation");
  CorrelationTrace lt = scenario_trace(loc, linspace(0.0, M_PI, 11), "N_AB", negativity);
  EXPECT_EQ(sec_witness(lt, "N_AB").verdict, Verdict::not_applicable);

  Scenario jc = scenario_hamiltonian("jc_fields", {{"m", 1}, {"n", 0}, {"k", 1}});
  CorrelationTrace tr = scenario_trace(jc, linspace(0.0, 3.0, 31), "N_AB", negativity);
  tr.meta["product_start"] = 1;
  WitnessResult r = sec_witness(tr, "N_AB");
  EXPECT_EQ(r.verdict, Verdict::positive) << r.max_value;
  EXPECT_NEAR(r.bound, 0.0, 1e-12);
}

TEST(Witness, MonotoneInThreshold) {
  testgen::Gen g(9);
  for (int i = 0; i < 300; ++i) {
    std::vector<double> v;
    const int n = g.integer(1, 12);
    for (int k = 0; k < n; ++k) v.push_back(g.uniform(0.0, 1.2));
    CorrelationTrace tr = ramp(v);
    tr.meta["S_A0"] = g.uniform(0.0, 0.5);
    tr.meta["S_B0"] = g.uniform(0.0, 0.5);
    tr.meta["breaking_channel"] = 1;
    tr.meta["product_start"] = 1;
    tr.series[0].values[0] = g.coin() ? 0.0 : v[0];
    double lo = g.uniform(0.0, 0.3), hi = lo + g.uniform(0.0, 0.3);
    WitnessOptions a{lo}, b{hi};
    auto never_flips = [&](Verdict va, Verdict vb) { return !(va == Verdict::negative && vb == Verdict::positive); };
    EXPECT_TRUE(never_flips(discord_witness_breaking(tr, "E_AB", a).verdict,
                            discord_witness_breaking(tr, "E_AB", b).verdict));
    EXPECT_TRUE(never_flips(discord_witness_entropies(tr, "E_AB", a).verdict,
                            discord_witness_entropies(tr, "E_AB", b).verdict));
    EXPECT_TRUE(never_flips(sec_witness(tr, "E_AB", a).verdict, sec_witness(tr, "E_AB", b).verdict));
    EXPECT_TRUE(never_flips(nondecomposability_witness(tr, "E_AB", Quantifier::negativity, 2, {}, a).verdict,
                            nondecomposability_witness(tr, "E_AB", Quantifier::negativity, 2, {}, b).verdict));
  }
}
