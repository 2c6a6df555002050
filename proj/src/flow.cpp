#include "steklov/flow.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "steklov/zeta.hpp"

namespace steklov {
namespace {

template <typename Factor>
FourierFunction apply_multiplier(const FourierFunction& f, Factor&& factor) {
  const int M = f.grid_order();
  std::vector<Complex> c(static_cast<size_t>(2 * M + 1));
  for (int k = -M; k <= M; ++k) {
    c[static_cast<size_t>(k + M)] = f.coeff(k) * factor(k);
  }
  return FourierFunction(std::move(c));
}

// -alpha (Lambda alpha) + (H alpha)(D alpha), products exact at band 2M,
// truncated back to the state band.
FourierFunction rhs_core(const FourierFunction& alpha) {
  const int M = alpha.grid_order();
  const FourierFunction lam =
      apply_multiplier(alpha, [](int k) { return static_cast<double>(std::abs(k)); });
  const FourierFunction dd =
      apply_multiplier(alpha, [](int k) { return static_cast<double>(k); });
  const FourierFunction hh =
      apply_multiplier(alpha, [](int k) { return k > 0 ? 1.0 : (k < 0 ? -1.0 : 0.0); });
  const FourierFunction transport = pointwise_product(hh, dd);
  const FourierFunction drift = pointwise_product(alpha, lam);
  return (transport - drift).truncated(M).realified();
}

}  // namespace

FourierFunction flow_rhs(const FourierFunction& alpha) {
  if (!alpha.is_real()) throw std::invalid_argument("flow_rhs: alpha must be real");
  if (alpha.min_real() <= 1e-10) throw std::domain_error("flow_rhs: alpha lost positivity");
  return rhs_core(alpha);
}

double snd_der_trace(const SteklovDiscretization& disc) {
  double tail = 0.0;
  const double value =
      trace_smoothing_product(disc, ScalarFunction::power_log(-1.0, 1), &tail);
  if (tail > 1e-8 * std::max(1.0, std::abs(value))) {
    std::ostringstream msg;
    msg << "snd_der_trace: trace tail " << tail << " above tolerance; raise N";
    throw std::runtime_error(msg.str());
  }
  return value;
}

double snd_der_trace(const FourierFunction& a, int N) {
  return snd_der_trace(build_discretization(a, N));
}

std::vector<FlowState> flow_integrate(const FourierFunction& alpha0, double tau_end, double dt,
                                      int N, double monitor_every) {
  if (!(tau_end > 0.0) || !(dt > 0.0)) {
    throw std::invalid_argument("flow_integrate: tau_end and dt must be positive");
  }
  if (!alpha0.is_real() || alpha0.min_real() <= 1e-10) {
    throw std::invalid_argument("flow_integrate: initial weight must be real positive");
  }
  if (normalization_residual(alpha0) > 1e-8) {
    throw std::invalid_argument("flow_integrate: initial weight is not normalized");
  }
  if (monitor_every <= 0.0) monitor_every = tau_end / 50.0;

  const int M = alpha0.grid_order();
  FourierFunction alpha = normalize(alpha0);

  auto monitor = [&](double tau, const FourierFunction& a) {
    FlowState state;
    state.tau = tau;
    state.alpha = a;
    state.normalization_residual = normalization_residual(a);
    const SteklovDiscretization disc = build_discretization(a, N);
    state.zeta2_at_0 = zeta_diff_deriv(spectrum_of(disc), 0.0, 2).value;
    state.snd_der_trace = snd_der_trace(disc);
    state.sup_distance_to_one = sup_distance(a, FourierFunction::constant(1.0));
    return state;
  };

  std::vector<FlowState> states;
  states.push_back(monitor(0.0, alpha));

  double tau = 0.0;
  double dt_cur = dt;
  double next_monitor = monitor_every;
  constexpr double kMargin = 1e-6;
  while (tau < tau_end - 1e-12) {
    const double h = std::min(dt_cur, tau_end - tau);
    const FourierFunction k1 = rhs_core(alpha);
    const FourierFunction k2 = rhs_core((alpha + 0.5 * h * k1).truncated(M));
    const FourierFunction k3 = rhs_core((alpha + 0.5 * h * k2).truncated(M));
    const FourierFunction k4 = rhs_core((alpha + h * k3).truncated(M));
    FourierFunction cand =
        (alpha + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)).truncated(M);
    if (cand.min_real() < kMargin) {
      dt_cur *= 0.5;
      if (dt_cur < 1e-8) {
        std::ostringstream msg;
        msg << "flow_integrate: step size collapsed at tau = " << tau
            << " (positivity margin below " << kMargin << ")";
        throw std::runtime_error(msg.str());
      }
      continue;
    }
    alpha = normalize(cand);
    tau += h;
    if (tau + 1e-12 >= next_monitor && tau < tau_end - 1e-12) {
      states.push_back(monitor(tau, alpha));
      while (next_monitor <= tau + 1e-12) next_monitor += monitor_every;
    }
  }
  states.push_back(monitor(tau, alpha));
  return states;
}

VariationReport trace_identity_check(const FourierFunction& a, double s, int N) {
  const SteklovDiscretization disc = build_discretization(a, N);
  const double closed = s * trace_smoothing_product(disc, ScalarFunction::power(-s - 1.0));

  auto value_along = [&](double h) {
    const FourierFunction stepped = normalize(a + h * rhs_core(a));
    return zeta_diff_deriv(stepped, s, 0, N).value;
  };
  auto centered = [&](double h) { return (value_along(h) - value_along(-h)) / (2.0 * h); };
  const double h = 2e-3;
  const double fd = (4.0 * centered(0.5 * h) - centered(h)) / 3.0;
  return VariationReport::make(closed, fd, h);
}

}  // namespace steklov
