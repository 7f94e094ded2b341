// Command-line front end: single cycles, parameter-plane scans,
// efficiency sweeps, occupancy trajectories, the measurement-erase
// report, and the randomized verification suites.
//
// stdout carries data, stderr carries diagnostics. Exit codes:
// 0 success, 1 verification failure, 2 invalid input.

#include <cstdint>
#include <exception>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "qotto/analysis.hpp"
#include "qotto/coherence.hpp"
#include "qotto/cycle.hpp"
#include "qotto/io.hpp"
#include "qotto/verify.hpp"

namespace {

using namespace qotto;

constexpr int kExitVerifyFailure = 1;
constexpr int kExitInvalidInput = 2;

struct CommonOpts {
  CycleSpec spec{1.0, 0.0, 0.6, 0.2, 1.0, 3.0};
  std::string format = "json";
  std::string out;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_csv_default = false) {
  if (with_csv_default) o.format = "csv";
  cmd->add_option("--omega", o.spec.omega, "Sum of the two local fields");
  cmd->add_option("--j", o.spec.coupling, "Exchange coupling strength J");
  cmd->add_option("--delta1", o.spec.delta1, "Field difference at the hot end");
  cmd->add_option("--delta2", o.spec.delta2, "Field difference at the cold end");
  cmd->add_option("--beta1", o.spec.beta1, "Inverse temperature of bath 1");
  cmd->add_option("--beta2", o.spec.beta2, "Inverse temperature of bath 2");
  cmd->add_option("--samples", o.spec.stroke_samples, "Integration points per stroke");
  cmd->add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--out", o.out, "Output file (atomic write); default stdout");
  cmd->set_config("--config", "", "Config file (key = flag name); flags override");
}

void emit(const CommonOpts& o, const std::string& payload) {
  if (o.out.empty())
    std::cout << payload;
  else
    atomic_write(o.out, payload);
}

std::string json_number(const std::optional<double>& v) {
  return v ? format_double(*v) : "null";
}

int cmd_cycle(const CommonOpts& o) {
  const auto [ep, ex] = run_cycle(o.spec);
  const CycleConstraintReport rep = validate_cycle_constraint(
      o.spec.omega, o.spec.delta1, o.spec.delta2, o.spec.coupling);
  const double cl1_a = coherence_l1(ep.rho_a);
  const double cl1_d = coherence_l1(ep.rho_d);

  std::ostringstream os;
  if (o.format == "json") {
    os << "{\n";
    os << "  \"W\": " << format_double(ex.work) << ",\n";
    os << "  \"W_A\": " << format_double(ex.work_a) << ",\n";
    os << "  \"W_B\": " << format_double(ex.work_b) << ",\n";
    os << "  \"Q1\": " << format_double(ex.heat_1) << ",\n";
    os << "  \"Q2\": " << format_double(ex.heat_2) << ",\n";
    os << "  \"eta\": " << json_number(ex.efficiency) << ",\n";
    os << "  \"pa_p0\": " << format_double(ep.pops_a.p0) << ",\n";
    os << "  \"pa_p1\": " << format_double(ep.pops_a.p1) << ",\n";
    os << "  \"pa_pplus\": " << format_double(ep.pops_a.pplus) << ",\n";
    os << "  \"pa_pminus\": " << format_double(ep.pops_a.pminus) << ",\n";
    os << "  \"pc_p0\": " << format_double(ep.pops_c.p0) << ",\n";
    os << "  \"pc_p1\": " << format_double(ep.pops_c.p1) << ",\n";
    os << "  \"pc_pplus\": " << format_double(ep.pops_c.pplus) << ",\n";
    os << "  \"pc_pminus\": " << format_double(ep.pops_c.pminus) << ",\n";
    os << "  \"c_l1_a\": " << format_double(cl1_a) << ",\n";
    os << "  \"c_l1_d\": " << format_double(cl1_d) << ",\n";
    os << "  \"zero_area_warning\": " << (rep.zero_area_warning ? "true" : "false")
       << "\n";
    os << "}\n";
  } else {
    os << "W,W_A,W_B,Q1,Q2,eta,pa_p0,pa_p1,pa_pplus,pa_pminus,"
          "pc_p0,pc_p1,pc_pplus,pc_pminus,c_l1_a,c_l1_d,zero_area_warning\n";
    os << format_double(ex.work) << ',' << format_double(ex.work_a) << ','
       << format_double(ex.work_b) << ',' << format_double(ex.heat_1) << ','
       << format_double(ex.heat_2) << ','
       << (ex.efficiency ? format_double(*ex.efficiency) : "") << ','
       << format_double(ep.pops_a.p0) << ',' << format_double(ep.pops_a.p1) << ','
       << format_double(ep.pops_a.pplus) << ',' << format_double(ep.pops_a.pminus)
       << ',' << format_double(ep.pops_c.p0) << ',' << format_double(ep.pops_c.p1)
       << ',' << format_double(ep.pops_c.pplus) << ','
       << format_double(ep.pops_c.pminus) << ',' << format_double(cl1_a) << ','
       << format_double(cl1_d) << ',' << (rep.zero_area_warning ? 1 : 0) << '\n';
  }
  if (rep.zero_area_warning) std::cerr << "warning: " << rep.message << '\n';
  emit(o, os.str());
  return 0;
}

int cmd_scan(const CommonOpts& o, int grid) {
  const WindowGrid g =
      window_scan(o.spec.omega, o.spec.coupling, o.spec.beta1, o.spec.beta2, grid);

  std::ostringstream os;
  os << "delta1,delta2,W,f,sign\n";
  for (const WindowCell& c : g.cells)
    os << format_double(c.delta1) << ',' << format_double(c.delta2) << ','
       << format_double(c.work) << ',' << format_double(c.f) << ',' << c.sign << '\n';

  std::ostringstream ob;
  ob << "delta1,delta2\n";
  for (const auto& [d1, d2] : g.f_zero_boundary)
    ob << format_double(d1) << ',' << format_double(d2) << '\n';

  if (o.out.empty()) {
    std::cout << os.str() << "# f=0 boundary\n" << ob.str();
  } else {
    atomic_write(o.out, os.str());
    atomic_write(o.out + ".boundary.csv", ob.str());
  }
  return 0;
}

int cmd_efficiency(const CommonOpts& o, const std::string& range) {
  double start = 0.0, stop = 0.0;
  int count = 0;
  {
    std::istringstream is(range);
    char c1 = 0, c2 = 0;
    if (!(is >> start >> c1 >> stop >> c2 >> count) || c1 != ':' || c2 != ':' ||
        count < 2 || !(start < stop))
      throw std::invalid_argument("--delta2-range must be start:stop:count with "
                                  "start < stop and count >= 2");
  }

  const PositiveWorkRange pw = positive_work_delta2_range(
      o.spec.omega, o.spec.coupling, o.spec.delta1, o.spec.beta1, o.spec.beta2);
  const double carnot = 1.0 - o.spec.beta1 / o.spec.beta2;

  std::ostringstream os;
  if (pw.lower) os << "# positive_work_delta2_lower=" << format_double(*pw.lower) << '\n';
  if (pw.upper) os << "# positive_work_delta2_upper=" << format_double(*pw.upper) << '\n';
  os << "delta2,W,eta,eta_up,eta_carnot,positive_work_flag\n";
  for (int k = 0; k < count; ++k) {
    const double d2 = start + (stop - start) * k / (count - 1);
    CycleSpec s = o.spec;
    s.delta2 = d2;
    const auto [ep, ex] = run_cycle(s);
    os << format_double(d2) << ',' << format_double(ex.work) << ','
       << (ex.efficiency ? format_double(*ex.efficiency) : "") << ','
       << (d2 != s.delta1
               ? format_double(efficiency_bound(s.omega, s.coupling, s.delta1, d2))
               : "")
       << ',' << format_double(carnot) << ',' << (ex.work > 0.0 ? 1 : 0) << '\n';
  }
  emit(o, os.str());
  return 0;
}

int cmd_trajectory(const CommonOpts& o) {
  const std::vector<OccupancySample> samples = trajectory(o.spec);
  std::ostringstream os;
  os << "stroke_label,delta,omega_A,omega_B,p_A,p_B\n";
  for (const OccupancySample& s : samples)
    os << s.stroke << ',' << format_double(s.delta) << ',' << format_double(s.omega_a)
       << ',' << format_double(s.omega_b) << ',' << format_double(s.p_a) << ','
       << format_double(s.p_b) << '\n';
  emit(o, os.str());
  return 0;
}

int cmd_measure_erase(const CommonOpts& o) {
  const MeasureEraseReport rep = measure_erase_cycle(o.spec);
  std::ostringstream os;
  if (o.format == "json") {
    os << "{\n";
    os << "  \"w_c_to_d\": " << format_double(rep.w_c_to_d) << ",\n";
    os << "  \"w_turn_off\": " << format_double(rep.w_turn_off) << ",\n";
    os << "  \"w_decoherence\": " << format_double(rep.w_decoherence) << ",\n";
    os << "  \"w_erase_bound\": " << format_double(rep.w_erase_bound) << ",\n";
    os << "  \"w_total_bound\": " << format_double(rep.w_total_bound) << "\n";
    os << "}\n";
  } else {
    os << "w_c_to_d,w_turn_off,w_decoherence,w_erase_bound,w_total_bound\n";
    os << format_double(rep.w_c_to_d) << ',' << format_double(rep.w_turn_off) << ','
       << format_double(rep.w_decoherence) << ',' << format_double(rep.w_erase_bound)
       << ',' << format_double(rep.w_total_bound) << '\n';
  }
  emit(o, os.str());
  return 0;
}

int cmd_verify(std::uint64_t seed, int cases) {
  if (cases < 0) throw std::invalid_argument("--cases must be >= 0");
  if (cases == 0) {
    std::cerr << "warning: --cases 0, all suites vacuously pass\n";
    std::cout << "all suites passed (0 cases)\n";
    return 0;
  }
  const std::vector<SuiteResult> results = run_verify(seed, cases);
  bool all_ok = true;
  for (const SuiteResult& r : results) {
    std::cout << (r.passed() ? "PASS" : "FAIL") << ' ' << r.name << ": "
              << (r.cases - r.failures) << '/' << r.cases << " cases\n";
    if (!r.passed()) {
      all_ok = false;
      std::cerr << "FAIL " << r.name << " first failing parameters: "
                << r.first_failure << '\n';
    }
  }
  std::cout << (all_ok ? "all suites passed\n" : "verification FAILED\n");
  return all_ok ? 0 : kExitVerifyFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coupled two-qubit quantum Otto cycle toolkit"};
  app.require_subcommand(1);

  CommonOpts cycle_o, scan_o, eff_o, traj_o, me_o;
  int grid = 200;
  std::string delta2_range = "0:0.9:101";
  std::uint64_t seed = 42;
  int cases = 1000;

  CLI::App* c_cycle = app.add_subcommand("cycle", "Run one Otto cycle");
  add_common(c_cycle, cycle_o);

  CLI::App* c_scan = app.add_subcommand("scan", "Positive-work window scan");
  add_common(c_scan, scan_o, true);
  c_scan->add_option("--grid", grid, "Grid size per axis")->check(CLI::Range(2, 100000));

  CLI::App* c_eff = app.add_subcommand("efficiency", "Efficiency sweep over delta2");
  add_common(c_eff, eff_o, true);
  c_eff->add_option("--delta2-range", delta2_range, "Sweep as start:stop:count");

  CLI::App* c_traj = app.add_subcommand("trajectory", "Occupancy samples per stroke");
  add_common(c_traj, traj_o, true);

  CLI::App* c_me = app.add_subcommand("measure-erase", "Measurement-erase work audit");
  add_common(c_me, me_o);

  CLI::App* c_verify = app.add_subcommand("verify", "Run randomized invariant suites");
  c_verify->add_option("--seed", seed, "64-bit PRNG seed (std::mt19937_64)");
  c_verify->add_option("--cases", cases, "Cases per suite");
  c_verify->set_config("--config", "", "Config file (key = flag name)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitInvalidInput;
  }

  try {
    if (c_cycle->parsed()) return cmd_cycle(cycle_o);
    if (c_scan->parsed()) return cmd_scan(scan_o, grid);
    if (c_eff->parsed()) return cmd_efficiency(eff_o, delta2_range);
    if (c_traj->parsed()) return cmd_trajectory(traj_o);
    if (c_me->parsed()) return cmd_measure_erase(me_o);
    if (c_verify->parsed()) return cmd_verify(seed, cases);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalidInput;
  }
  return kExitInvalidInput;
}
