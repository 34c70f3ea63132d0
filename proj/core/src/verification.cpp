#include "qif/verification.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "qif/analytic.hpp"
#include "qif/numeric.hpp"

namespace qif::cli {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

class Draws {
 public:
  explicit Draws(std::uint64_t seed) : rng_(seed) {}

  InterferometerParams next(double max_delta_over_w, bool balanced) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> angle(0.0, kTwoPi);
    std::uniform_real_distribution<double> kick(0.0, max_delta_over_w);
    const double r = balanced ? std::numbers::sqrt2 / 2.0 : unit(rng_);
    const double phi = angle(rng_);
    const double alpha = angle(rng_);
    return InterferometerParams(r, phi, alpha, kick(rng_), 1.0);
  }

  /// Skips draws whose post-selection is (numerically) dark.
  InterferometerParams next_bright(double max_delta_over_w) {
    for (;;) {
      const auto params = next(max_delta_over_w, true);
      if (analytic::postselection_norm(params) > 1e-6) return params;
    }
  }

 private:
  std::mt19937_64 rng_;
};

SuiteResult finish(std::string name, int cases, double max_dev, double tol) {
  return {std::move(name), cases, max_dev, tol, max_dev <= tol};
}

SuiteResult joint_marginal_suite(const VerifyOptions& opt) {
  Draws draws(opt.seed);
  double max_dev = 0.0;
  for (int i = 0; i < opt.oracle_draws; ++i) {
    const auto params = draws.next_bright(3.0);
    const auto grid = numeric::joint_oracle_grid(params);
    for (const Electron e : {Electron::first, Electron::second}) {
      const auto oracle = numeric::joint_marginal_oracle(params, grid, e);
      for (std::size_t k = 0; k < grid.size(); ++k) {
        const double closed = analytic::marginal_density(params, e, grid[k], analytic::Normalization::normalized);
        max_dev = std::max(max_dev, std::abs(oracle.values()[k] - closed));
      }
    }
  }
  return finish("joint_marginal_vs_closed_form", opt.oracle_draws, max_dev, 1e-9);
}

SuiteResult quadrature_mean_suite(const VerifyOptions& opt) {
  Draws draws(opt.seed + 1);
  double max_dev = 0.0;
  const int cases = std::max(1, opt.oracle_draws / 4);
  for (int i = 0; i < cases; ++i) {
    const auto params = draws.next_bright(3.0);
    const auto oracle = numeric::joint_marginal_oracle(params, numeric::joint_oracle_grid(params), Electron::first);
    max_dev = std::max(max_dev, std::abs(numeric::mean(oracle) - analytic::mean_postselected(params)));
  }
  return finish("postselected_mean_vs_quadrature", cases, max_dev, 1e-8);
}

SuiteResult unitarity_suite(const VerifyOptions& opt) {
  Draws draws(opt.seed + 2);
  double max_dev = 0.0;
  for (int i = 0; i < opt.algebra_draws; ++i) {
    const auto probabilities = analytic::port_probabilities(draws.next(4.0, false));
    double total = 0.0;
    for (const PortPair port : kAllPorts) total += probabilities[port];
    max_dev = std::max(max_dev, std::abs(total - 1.0));
  }
  return finish("port_probability_unitarity", opt.algebra_draws, max_dev, 1e-12);
}

SuiteResult ehrenfest_suite(const VerifyOptions& opt) {
  Draws draws(opt.seed + 2);
  double max_dev = 0.0;
  for (int i = 0; i < opt.algebra_draws; ++i) {
    const auto [closed, weighted] = analytic::ehrenfest_check(draws.next(4.0, false));
    max_dev = std::max(max_dev, std::abs(closed - weighted));
  }
  return finish("ehrenfest_unconditioned_mean", opt.algebra_draws, max_dev, 1e-10);
}

SuiteResult conservation_suite(const VerifyOptions& opt) {
  Draws draws(opt.seed + 2);
  double max_dev = 0.0;
  for (int i = 0; i < opt.algebra_draws; ++i) {
    const auto params = draws.next(4.0, false);
    const auto m1 = analytic::port_mean_momenta(params, Electron::first);
    const auto m2 = analytic::port_mean_momenta(params, Electron::second);
    for (const PortPair port : kAllPorts) {
      if (m1[port] && m2[port]) max_dev = std::max(max_dev, std::abs(*m1[port] + *m2[port]));
    }
    const double total = analytic::ehrenfest_check(params, Electron::first).weighted_sum +
                         analytic::ehrenfest_check(params, Electron::second).weighted_sum;
    max_dev = std::max(max_dev, std::abs(total));
  }
  return finish("two_electron_momentum_conservation", opt.algebra_draws, max_dev, 1e-12);
}

SuiteResult kick_suite() {
  double max_dev = 0.0;
  int cases = 0;
  for (const double delta : {0.0, 0.3, 1.0, 2.5}) {
    const auto report = numeric::momentum_kick_oracle(GaussianPacket(1.0), delta, 4096);
    max_dev = std::max({max_dev, report.max_density_deviation, std::abs(report.mean_shift + delta),
                        std::abs(report.width_change)});
    ++cases;
  }
  return finish("momentum_kick_dft_vs_shift", cases, max_dev, 1e-8);
}

SuiteResult purity_suite(const VerifyOptions& opt) {
  Draws draws(opt.seed + 3);
  double max_dev = 0.0;
  const int cases = 5;
  for (int i = 0; i < cases; ++i) {
    const auto params =
        i == 0 ? InterferometerParams::balanced(0.75 * std::numbers::pi, 0.0, 0.3) : draws.next_bright(2.0);
    const auto grid = numeric::MomentumGrid::symmetric(8.0 + params.delta(), 301);
    const double gram = analytic::reduced_state(params, Electron::first).purity();
    max_dev = std::max(max_dev, std::abs(gram - numeric::kernel_purity(params, grid, Electron::first)));
  }
  return finish("purity_gram_vs_kernel", cases, max_dev, 1e-6);
}

}  // namespace

std::vector<SuiteResult> run_verification(const VerifyOptions& options) {
  return {joint_marginal_suite(options), quadrature_mean_suite(options), unitarity_suite(options),
          ehrenfest_suite(options),      conservation_suite(options),    kick_suite(),
          purity_suite(options)};
}

}  // namespace qif::cli
