#pragma once

#include "steklov/variation.hpp"

namespace steklov {

/// Snapshot of the deformation flow. zeta2_at_0 is the difference
/// (zeta_{alpha_tau} - 2 zeta_R)''(0), nonincreasing along the flow and
/// tending to zero as alpha_tau -> 1.
struct FlowState {
  double tau = 0.0;
  FourierFunction alpha;
  double normalization_residual = 0.0;
  double zeta2_at_0 = 0.0;
  double sup_distance_to_one = 0.0;
  double snd_der_trace = 0.0;
};

/// Right side of the evolution equation
///   d alpha/d tau = -alpha (Lambda alpha) + (H alpha)(D alpha),
/// assembled in Fourier space with exactly dealiased products.
FourierFunction flow_rhs(const FourierFunction& alpha);

/// Classical fourth-order stepping with per-step renormalization to inverse
/// mean 1. Steps are rejected and dt halved when the positivity margin of
/// the candidate state drops below 1e-6; integration aborts once dt
/// collapses below 1e-8. Monitors (spectrum at truncation N, trace
/// functional) are emitted every monitor_every units of tau
/// (0 picks tau_end/50) plus the initial and final states.
std::vector<FlowState> flow_integrate(const FourierFunction& alpha0, double tau_end, double dt,
                                      int N, double monitor_every = 0.0);

/// Tr[ ln(Lambda_a+P0) (Lambda_a+P0)^{-1} (Lambda_a^2 - D_a^2) ] over the
/// trusted modes; nonnegative, zero exactly at weights conformally
/// equivalent to 1. Along the flow, d/dtau of zeta''(0) equals -2 times
/// this trace.
double snd_der_trace(const FourierFunction& a, int N);
double snd_der_trace(const SteklovDiscretization& disc);

/// Compare the finite-difference tau-derivative of (zeta_a - 2 zeta_R)(s)
/// along the flow against s Tr[(Lambda_a+P0)^{-s-1}(Lambda_a^2 - D_a^2)].
VariationReport trace_identity_check(const FourierFunction& a, double s, int N);

}  // namespace steklov
