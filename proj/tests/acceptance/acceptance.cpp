// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "qif/analytic.hpp"
#include "qif/config.hpp"
#include "qif/errors.hpp"
#include "qif/experiment.hpp"
#include "qif/numeric.hpp"
#include "qif/runner.hpp"
#include "qif/table.hpp"

using namespace qif;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool passed = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      passed = false;
      detail += "[violated: " + what + "] ";
    }
  }
  void note(const char* fmt, double v) {
    char buf[128];
    std::snprintf(buf, sizeof buf, fmt, v);
    detail += buf;
    detail += ' ';
  }
};

struct Criterion {
  const char* id;
  const char* title;
  double time_limit_s;
  std::function<Outcome()> body;
};

InterferometerParams reference_params() { return InterferometerParams::balanced(0.75 * kPi, 0.0, 0.3); }

class Draws {
 public:
  explicit Draws(std::uint64_t seed) : rng_(seed) {}
  InterferometerParams any(double max_delta) {
    const double r = unit_(rng_);
    const double phi = angle_(rng_);
    const double alpha = angle_(rng_);
    return InterferometerParams(r, phi, alpha, max_delta * unit_(rng_));
  }
  InterferometerParams bright(double max_delta) {
    for (;;) {
      const auto p = any(max_delta);
      if (analytic::postselection_norm(p) > 1e-6) return p;
    }
  }

 private:
  std::mt19937_64 rng_;
  std::uniform_real_distribution<double> unit_{0.0, 1.0};
  std::uniform_real_distribution<double> angle_{0.0, 2 * kPi};
};

Outcome effective_attraction() {
  Outcome o;
  const auto params = reference_params();
  const auto grid = numeric::joint_oracle_grid(params);
  const double p1 = numeric::mean(numeric::joint_marginal_oracle(params, grid, Electron::first));
  const double p2 = numeric::mean(numeric::joint_marginal_oracle(params, grid, Electron::second));
  const double printed = analytic::mean_single_overlap(params);
  o.note("<p1>/W=%+.6f", p1);
  o.note("<p2>/W=%+.6f", p2);
  o.note("single-overlap=%+.6f", printed);
  o.note("discrepancy=%+.6f", printed - p1);
  o.require(std::abs(p1 - 0.3567) <= 1e-3, "<p1> = 0.3567 +- 1e-3");
  o.require(p1 > 0.0, "<p1> > 0");
  o.require(std::abs(p1 + p2) <= 1e-12, "<p2> = -<p1> within 1e-12");
  o.require(std::abs(printed - 0.4897) <= 1e-3, "single-overlap form = 0.4897 +- 1e-3");
  return o;
}

Outcome oracle_equivalence() {
  Outcome o;
  Draws draws(1001);
  double max_dev = 0.0;
  for (int i = 0; i < 100; ++i) {
    const auto params = draws.bright(3.0);
    const auto grid = numeric::joint_oracle_grid(params);
    for (const Electron e : {Electron::first, Electron::second}) {
      const auto oracle = numeric::joint_marginal_oracle(params, grid, e);
      for (std::size_t k = 0; k < grid.size(); ++k) {
        const double closed =
            analytic::marginal_density(params, e, grid[k], analytic::Normalization::normalized);
        max_dev = std::max(max_dev, std::abs(oracle.values()[k] - closed));
      }
    }
  }
  o.note("max_dev=%.3e", max_dev);
  o.require(max_dev <= 1e-9, "max pointwise deviation <= 1e-9");
  return o;
}

Outcome ehrenfest() {
  Outcome o;
  Draws draws(2002);
  double max_dev = 0.0;
  double max_total = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const auto params = draws.any(4.0);
    const auto e1 = analytic::ehrenfest_check(params, Electron::first);
    const auto e2 = analytic::ehrenfest_check(params, Electron::second);
    const double closed = -2.0 * std::pow(params.t() * params.r(), 2) * params.delta();
    max_dev = std::max({max_dev, std::abs(e1.weighted_sum - closed), std::abs(e1.closed_form - closed)});
    max_total = std::max(max_total, std::abs(e1.weighted_sum + e2.weighted_sum));
  }
  const auto balanced = analytic::ehrenfest_check(reference_params());
  o.note("max_dev=%.3e", max_dev);
  o.note("max_total=%.3e", max_total);
  o.note("balanced=%+.12f", balanced.weighted_sum);
  o.require(max_dev <= 1e-10, "sum P_jk <p1>_jk = -2 t^2 r^2 delta within 1e-10");
  o.require(std::abs(balanced.weighted_sum + 0.15) <= 1e-10 && std::abs(balanced.closed_form + 0.15) <= 1e-12,
            "balanced delta=0.3W gives -0.15 W");
  o.require(max_total <= 1e-12, "total two-electron mean momentum 0 within 1e-12");
  return o;
}

Outcome unitarity() {
  Outcome o;
  Draws draws(2002);
  double max_dev = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const auto probabilities = analytic::port_probabilities(draws.any(4.0));
    double total = 0.0;
    for (const PortPair port : kAllPorts) total += probabilities[port];
    max_dev = std::max(max_dev, std::abs(total - 1.0));
  }
  o.note("max_dev=%.3e", max_dev);
  o.require(max_dev <= 1e-12, "sum P_jk = 1 within 1e-12");
  return o;
}

Outcome momentum_kick() {
  Outcome o;
  const auto kicked = numeric::momentum_kick_oracle(GaussianPacket(1.0), 0.3, 4096);
  const auto identity = numeric::momentum_kick_oracle(GaussianPacket(1.0), 0.0, 4096);
  o.note("kick_dev=%.3e", kicked.max_density_deviation);
  o.note("mean_shift=%+.10f", kicked.mean_shift);
  o.note("identity_dev=%.3e", identity.max_density_deviation);
  o.require(kicked.max_density_deviation <= 1e-8, "kicked density deviation <= 1e-8");
  o.require(std::abs(kicked.mean_shift + 0.3) <= 1e-8, "mean shift -0.3 W within 1e-8");
  o.require(std::abs(kicked.width_change) <= 1e-8, "width unchanged");
  o.require(identity.max_density_deviation <= 1e-12 && std::abs(identity.mean_shift) <= 1e-12 &&
                std::abs(identity.width_change) <= 1e-12,
            "delta=0 is identity within 1e-12");
  o.require(kicked.parseval_error <= 1e-12 && identity.parseval_error <= 1e-12, "Parseval within 1e-12");
  return o;
}

Outcome laboratory_numbers() {
  Outcome o;
  const auto cfg = cli::parse_config(
      "mode = design\nd_m = 2e-3\nlength_m = 4e-2\nspeed_m_per_s = 2e6\ndx0_transverse_m = 10e-6\n"
      "dx0_longitudinal_m = 200e-9\ntune = 3\n");
  const auto result = cli::execute(cfg);
  const auto value = [&](const std::string& name) {
    for (const auto& row : result.table.rows) {
      if (std::get<std::string>(row[0]) == name) return std::get<double>(row[1]);
    }
    return std::numeric_limits<double>::quiet_NaN();
  };
  const double dw = value("delta_over_W");
  const double alpha_pi = value("alpha_over_pi");
  const double tuned = value("tuned_d_m");
  const double spread = value("spread_longitudinal_m");
  const double transverse = value("spread_transverse_relative");
  const double fringe = value("fringe_spacing_m");
  o.note("delta/W=%.4f", dw);
  o.note("alpha/pi=%+.4f", alpha_pi);
  o.note("tuned_d=%.4e", tuned);
  o.note("spread_long=%.3e", spread);
  o.note("transverse_rel=%.2e", transverse);
  o.note("fringe=%.3e", fringe);
  o.require(std::abs(dw - 0.22) <= 0.05, "delta/W = 0.22 +- 0.05");
  o.require(std::abs(std::abs(alpha_pi) - 6.96) <= 0.1, "|alpha| = 6.96 pi +- 0.1 pi");
  o.require(std::abs(tuned - 2.32e-3) <= 0.05e-3, "tuned d for 6 pi = 2.32 mm +- 0.05 mm");
  o.require(std::abs(spread - 6e-6) <= 0.15 * 6e-6, "longitudinal spread within 15% of 6 um");
  o.require(transverse <= 2e-4, "transverse relative spread <= 2e-4");
  o.require(std::abs(fringe - 6e-4) <= 0.1 * 6e-4, "fringe spacing within 10% of 6e-4 m");
  int checks = 0;
  for (const auto& row : result.table.rows) {
    if (std::get<std::string>(row[0]).starts_with("check_")) {
      ++checks;
      o.require(std::get<std::string>(row[3]) == "pass", std::get<std::string>(row[0]) + " passes");
    }
  }
  o.require(checks == 5, "five validity checks reported");
  return o;
}

Outcome sweep_structure() {
  Outcome o;
  const auto result = cli::execute(cli::parse_config(
      "mode = sweep\nalpha = 0\ndelta_over_w_min = 0\ndelta_over_w_max = 3\ndelta_over_w_steps = 101\n"
      "phi_min = 0\nphi_max = 2pi\nphi_steps = 101\n"));
  o.require(result.table.rows.size() == 101u * 101u, "101 x 101 rows");
  int mismatches = 0;
  int positive = 0;
  int dark = 0;
  double slice0 = 0.0;
  double slice_half = 0.0;
  for (const auto& row : result.table.rows) {
    const double dw = std::get<double>(row[0]);
    const double phi = std::get<double>(row[1]);
    const double c = std::cos(phi);
    const double i1 = analytic::overlap(dw, 1.0);
    if (const auto* m = std::get_if<double>(&row[2])) {
      const bool predicted = dw > 0.0 && c < 0.0 && i1 * i1 > std::abs(c);
      if ((*m > 0.0) != predicted) ++mismatches;
      if (*m > 0.0) ++positive;
      if (phi == 0.0) slice0 = std::max(slice0, std::abs(*m + dw / 2));
      if (std::abs(phi - kPi / 2) < 1e-12) slice_half = std::max(slice_half, std::abs(*m));
    } else {
      ++dark;
    }
    if (const auto* m = std::get_if<double>(&row[3])) {
      const bool predicted = dw > 0.0 && c < 0.0 && i1 > std::abs(c);
      if ((*m > 0.0) != predicted) ++mismatches;
    }
  }
  o.note("positive=%.0f", positive);
  o.note("dark=%.0f", dark);
  o.note("phi0_dev=%.2e", slice0);
  o.note("phi_half_dev=%.2e", slice_half);
  o.require(mismatches == 0, "sign of mean matches cos(phi) < 0 and overlap > |cos(phi)|");
  o.require(slice0 <= 1e-15, "phi = 0 slice equals -delta/2");
  // cos(pi/2) rounds to 6.1e-17, so the slice vanishes to that order.
  o.require(slice_half <= 1e-15, "phi = pi/2 slice is 0");
  return o;
}

Outcome purity() {
  Outcome o;
  const auto ref = reference_params();
  const auto grid = numeric::MomentumGrid::symmetric(8.3, 401);
  const double gram = analytic::reduced_state(ref, Electron::first).purity();
  const double kernel = numeric::kernel_purity(ref, grid, Electron::first);
  const auto no_kick = InterferometerParams::balanced(0.75 * kPi, 0.0, 0.0);
  const auto quarter = InterferometerParams::balanced(kPi / 2, 0.0, 0.3);
  const double p_no_kick = analytic::reduced_state(no_kick, Electron::first).purity();
  const double p_quarter = analytic::reduced_state(quarter, Electron::first).purity();
  const double k_no_kick = numeric::kernel_purity(no_kick, grid, Electron::first);
  const double k_quarter = numeric::kernel_purity(quarter, grid, Electron::first);
  o.note("gram=%.8f", gram);
  o.note("kernel=%.8f", kernel);
  o.note("diff=%.2e", std::abs(gram - kernel));
  o.require(std::abs(gram - 0.9117) <= 1e-3, "purity 0.9117 +- 1e-3");
  o.require(std::abs(gram - kernel) <= 1e-6, "Gram and kernel agree within 1e-6");
  o.require(std::abs(p_no_kick - 1.0) <= 1e-12 && std::abs(p_quarter - 1.0) <= 1e-12,
            "purity = 1 at delta = 0 and phi = pi/2");
  o.require(std::abs(k_no_kick - 1.0) <= 1e-6 && std::abs(k_quarter - 1.0) <= 1e-6,
            "kernel purity = 1 at delta = 0 and phi = pi/2");
  return o;
}

Outcome determinism_and_errors() {
  Outcome o;
  const std::vector<std::string> configs = {
      "mode=distributions\ndelta_over_w=0.3\nphi=0.75pi\nalpha=0\n",
      "mode=decompose\ndelta_over_w=0.3\nphi=0.75pi\nalpha=0\n",
      "mode=sweep\ndelta_over_w_steps=31\nphi_steps=31\n",
      "mode=ports\ndelta_over_w=0.3\nphi=0.75pi\nalpha=0\n",
      "mode=design\nd_m=2e-3\nlength_m=4e-2\nspeed_m_per_s=2e6\ndx0_transverse_m=1e-5\ndx0_longitudinal_m=2e-7\n",
      "mode=verify\noracle_draws=3\nalgebra_draws=20\n",
  };
  for (const auto& text : configs) {
    const auto cfg = cli::parse_config(text);
    for (const auto fmt : {cli::Format::csv, cli::Format::json}) {
      const std::string a = cli::render_table(cli::execute(cfg).table, fmt);
      const std::string b = cli::render_table(cli::execute(cfg).table, fmt);
      o.require(a == b, std::string(cli::to_string(cfg.mode)) + " output byte-identical");
      o.require(a.find("nan") == std::string::npos, std::string(cli::to_string(cfg.mode)) + " has no NaN");
    }
  }

  const auto dark = InterferometerParams::balanced(kPi, 0.0, 0.0);
  const auto expect_dark = [&](const char* what, const std::function<void()>& f) {
    try {
      f();
      o.require(false, std::string(what) + " raises ZeroProbability");
    } catch (const ZeroProbability&) {
    }
  };
  expect_dark("distributions mode", [] {
    cli::execute(cli::parse_config("mode=distributions\ndelta_over_w=0\nphi=pi\nalpha=0\n"));
  });
  expect_dark("mean_postselected", [&] { analytic::mean_postselected(dark); });
  expect_dark("normalized marginal", [&] {
    analytic::marginal_density(dark, Electron::first, 0.0, analytic::Normalization::normalized);
  });
  expect_dark("reduced_state", [&] { analytic::reduced_state(dark, Electron::first); });
  expect_dark("joint oracle", [&] {
    numeric::joint_marginal_oracle(dark, numeric::joint_oracle_grid(dark), Electron::first);
  });
  return o;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"C1", "effective attraction at delta=0.3W, phi=3pi/4", 1.0, effective_attraction},
      {"C2", "joint-state oracle vs closed-form marginals", 30.0, oracle_equivalence},
      {"C3", "Ehrenfest unconditioned mean", 0.0, ehrenfest},
      {"C4", "exit-port unitarity", 0.0, unitarity},
      {"C5", "momentum-kick DFT oracle", 0.0, momentum_kick},
      {"C6", "laboratory design numbers", 1.0, laboratory_numbers},
      {"C7", "mean-momentum surface sign structure", 10.0, sweep_structure},
      {"C8", "reduced-state purity, two routes", 0.0, purity},
      {"C9", "determinism and dark-port errors", 0.0, determinism_and_errors},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = c.body();
    } catch (const std::exception& e) {
      outcome.passed = false;
      outcome.detail += std::string("[exception: ") + e.what() + "]";
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.time_limit_s > 0.0 && seconds >= c.time_limit_s) {
      outcome.passed = false;
      outcome.detail += "[runtime limit exceeded] ";
    }
    if (!outcome.passed) ++failures;
    std::printf("[%s] %s %-48s %.3fs  %s\n", outcome.passed ? "PASS" : "FAIL", c.id, c.title, seconds,
                outcome.detail.c_str());
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
