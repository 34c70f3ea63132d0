#include "qif/runner.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

#include "qif/analytic.hpp"
#include "qif/experiment.hpp"
#include "qif/numeric.hpp"
#include "qif/packet.hpp"
#include "qif/verification.hpp"

namespace qif::cli {
namespace {

using analytic::Normalization;

std::string line(const char* fmt, double value) {
  char buf[160];
  std::snprintf(buf, sizeof buf, fmt, value);
  return buf;
}

numeric::MomentumGrid output_grid(const RunConfig& cfg) {
  return numeric::MomentumGrid(cfg.p_min_over_w, cfg.p_max_over_w,
                               static_cast<std::size_t>(cfg.grid_points));
}

void summarize_means(const InterferometerParams& params, std::vector<std::string>& summary) {
  const double consistent = analytic::mean_postselected(params, Electron::first);
  const double single = analytic::mean_single_overlap(params);
  const auto oracle = numeric::joint_marginal_oracle(params, numeric::joint_oracle_grid(params),
                                                     Electron::first);
  summary.push_back(line("mean_p1_over_W (closed form, overlap I^2):      %+.6f", consistent));
  summary.push_back(line("mean_p1_over_W (joint-state quadrature):        %+.6f", numeric::mean(oracle)));
  summary.push_back(line("mean_p1_over_W (single-overlap form, I):        %+.6f", single));
  summary.push_back(line("difference single-overlap minus closed form:    %+.6f", single - consistent));
  summary.push_back(line("mean_p2_over_W (closed form):                   %+.6f",
                         analytic::mean_postselected(params, Electron::second)));
  summary.push_back(line("postselection_norm:                             %.6f",
                         analytic::postselection_norm(params)));
}

RunResult distributions(const RunConfig& cfg) {
  const auto params = cfg.model_params();
  const auto grid = output_grid(cfg);
  const GaussianPacket base = params.packet();
  RunResult out;
  out.table.columns = {"p_over_W", "P1", "P2"};
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double p = grid[i];
    double p1 = 0.0;
    double p2 = 0.0;
    switch (cfg.branch) {
      case Branch::postselected:
        p1 = analytic::marginal_density(params, Electron::first, p, Normalization::normalized);
        p2 = analytic::marginal_density(params, Electron::second, p, Normalization::normalized);
        break;
      case Branch::free:
        p1 = p2 = std::pow(packet_eval(base, p), 2);
        break;
      case Branch::interacting:
        p1 = std::pow(packet_eval(shift_packet(base, -params.delta()), p), 2);
        p2 = std::pow(packet_eval(shift_packet(base, params.delta()), p), 2);
        break;
    }
    out.table.add_row({p, p1, p2});
  }
  if (cfg.branch == Branch::postselected) {
    summarize_means(params, out.summary);
  } else {
    const double shift = cfg.branch == Branch::free ? 0.0 : params.delta();
    out.summary.push_back(line("mean_p1_over_W: %+.6f", -shift));
    out.summary.push_back(line("mean_p2_over_W: %+.6f", shift));
  }
  return out;
}

RunResult decompose(const RunConfig& cfg) {
  const auto params = cfg.model_params();
  const auto grid = output_grid(cfg);
  RunResult out;
  out.table.columns = {"p_over_W", "T_a", "T_b", "P1_unnormalized"};
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto [populations, interference] = analytic::term_decomposition(params, grid[i]);
    out.table.add_row({grid[i], populations, interference,
                       analytic::marginal_density(params, Electron::first, grid[i], Normalization::raw)});
  }
  out.summary.push_back(line("postselection_norm: %.6f", analytic::postselection_norm(params)));
  return out;
}

RunResult sweep(const RunConfig& cfg) {
  RunResult out;
  out.table.columns = {"delta_over_W", "phi_rad", "mean_p1_over_W", "mean_p1_single_overlap_over_W"};
  int anomalous = 0;
  int dark = 0;
  double best = -INFINITY;
  for (int i = 0; i < cfg.delta_sweep.steps; ++i) {
    const double delta = cfg.delta_sweep.at(i);
    for (int j = 0; j < cfg.phi_sweep.steps; ++j) {
      const double phi = cfg.phi_sweep.at(j);
      const InterferometerParams params(cfg.r, phi, cfg.alpha, delta, 1.0);
      Cell consistent;
      Cell single;
      if (analytic::postselection_norm(params) > kDarkPortThreshold) {
        const double m = analytic::mean_postselected(params);
        consistent = m;
        if (m > 0.0) ++anomalous;
        best = std::max(best, m);
      } else {
        ++dark;
      }
      const double c = std::cos(phi);
      if (1.0 + c * c + 2.0 * c * analytic::overlap(delta, 1.0) > kDarkPortThreshold) {
        single = analytic::mean_single_overlap(params);
      }
      out.table.add_row({delta, phi, consistent, single});
    }
  }
  out.summary.push_back(line("grid points with positive mean_p1 (effective attraction): %.0f", anomalous));
  out.summary.push_back(line("maximum mean_p1_over_W: %+.6f", best));
  out.summary.push_back(line("dark points left empty: %.0f", dark));
  return out;
}

RunResult ports(const RunConfig& cfg) {
  const auto params = cfg.model_params();
  const auto probabilities = analytic::port_probabilities(params);
  const auto m1 = analytic::port_mean_momenta(params, Electron::first);
  const auto m2 = analytic::port_mean_momenta(params, Electron::second);
  const auto e1 = analytic::ehrenfest_check(params, Electron::first);
  const auto e2 = analytic::ehrenfest_check(params, Electron::second);
  const auto cell = [](const std::optional<double>& v) -> Cell { return v ? Cell(*v) : Cell(); };

  RunResult out;
  out.table.columns = {"port", "probability", "mean_p1_over_W", "mean_p2_over_W"};
  double total = 0.0;
  for (const PortPair port : kAllPorts) {
    out.table.add_row({std::string(to_string(port)), probabilities[port], cell(m1[port]), cell(m2[port])});
    total += probabilities[port];
  }
  out.table.add_row({std::string("weighted_total"), total, e1.weighted_sum, e2.weighted_sum});
  out.table.add_row({std::string("classical_kick"), Cell(), e1.closed_form, e2.closed_form});
  out.summary.push_back(line("sum of port probabilities:       %.15f", total));
  out.summary.push_back(line("ehrenfest closed form (p1/W):    %+.12f", e1.closed_form));
  out.summary.push_back(line("ehrenfest weighted sum (p1/W):   %+.12f", e1.weighted_sum));
  out.summary.push_back(line("total two-electron mean (p/W):   %+.3e", e1.weighted_sum + e2.weighted_sum));
  return out;
}

RunResult design(const RunConfig& cfg) {
  const auto s = experiment::derive_setup(cfg.inputs);
  const auto tuned = experiment::tune_separation_for_alpha(cfg.inputs, cfg.tune.multiple);
  constexpr double pi = std::numbers::pi;

  RunResult out;
  out.table.columns = {"quantity", "value", "threshold", "status"};
  const auto add = [&](const char* name, double v) {
    out.table.add_row({std::string(name), v, Cell(), Cell()});
  };
  add("t_transit_s", s.t_transit);
  add("force_N", s.force);
  add("delta_kg_m_per_s", s.delta);
  add("W_kg_m_per_s", s.width_W);
  add("delta_over_W", s.delta_over_W);
  add("alpha_rad", s.alpha);
  add("alpha_over_pi", s.alpha / pi);
  add("fringe_spacing_m", s.fringe_spacing);
  add("spread_longitudinal_m", s.spread_longitudinal);
  add("spread_transverse_m", s.spread_transverse);
  add("spread_transverse_relative", s.spread_transverse_relative);
  add("kinetic_scale_J", s.kinetic_scale);
  add("potential_scale_J", s.potential_scale);
  add("tuned_alpha_multiple_of_2pi", tuned.multiple);
  add("tuned_d_m", tuned.d);
  add("tuned_alpha_rad", tuned.alpha);
  add("tuned_alpha_over_pi", tuned.alpha / pi);
  for (const auto& check : s.validity) {
    out.table.add_row({"check_" + check.name, check.ratio, check.threshold,
                       std::string(check.passed ? "pass" : "fail")});
  }

  out.summary.push_back(line("delta_over_W:        %.4f", s.delta_over_W));
  out.summary.push_back(line("alpha_over_pi:       %+.4f", s.alpha / pi));
  out.summary.push_back(line("fringe_spacing_m:    %.4e", s.fringe_spacing));
  out.summary.push_back(line("spread_long_m:       %.4e", s.spread_longitudinal));
  out.summary.push_back(line("tuned_d_m:           %.6e", tuned.d));
  out.summary.push_back(std::string("validity checks:     ") + (s.all_valid() ? "all pass" : "FAILURES"));
  return out;
}

RunResult verify(const RunConfig& cfg) {
  const auto suites = run_verification({cfg.seed, cfg.oracle_draws, cfg.algebra_draws});
  RunResult out;
  out.table.columns = {"suite", "cases", "max_deviation", "tolerance", "status"};
  for (const auto& suite : suites) {
    out.table.add_row({suite.name, static_cast<double>(suite.cases), suite.max_deviation, suite.tolerance,
                       std::string(suite.passed ? "pass" : "fail")});
    char buf[200];
    std::snprintf(buf, sizeof buf, "[%s] %-36s max_dev=%.3e tol=%.1e", suite.passed ? "PASS" : "FAIL",
                  suite.name.c_str(), suite.max_deviation, suite.tolerance);
    out.summary.emplace_back(buf);
    if (!suite.passed) out.exit_code = 1;
  }
  return out;
}

}  // namespace

RunResult execute(const RunConfig& config) {
  switch (config.mode) {
    case Mode::distributions: return distributions(config);
    case Mode::decompose: return decompose(config);
    case Mode::sweep: return sweep(config);
    case Mode::ports: return ports(config);
    case Mode::design: return design(config);
    case Mode::verify: return verify(config);
  }
  return {};
}

}  // namespace qif::cli
