#pragma once

#include "steklov/spectrum.hpp"

namespace steklov {

/// Family of weights alpha_tau = normalize((1 - tau beta)^{-1}) through the
/// constant weight 1, with beta = d alpha_tau / d tau at tau = 0, zero-mean.
/// For beta = 2 cos((2r+1) theta) this is the single-mode family and the
/// normalization is exact before the cleanup.
struct DeformationFamily {
  FourierFunction beta;

  static DeformationFamily single_mode(int r);
  static DeformationFamily general(const FourierFunction& beta);

  FourierFunction weight_at(double tau) const;
};

/// Closed-form/finite-difference comparison record.
struct VariationReport {
  double closed_form = 0.0;
  double finite_difference = 0.0;
  double tau_step = 0.0;
  double relative_error = 0.0;  // |cf - fd| / max(1, |cf|)

  static VariationReport make(double closed_form, double fd, double tau_step);
};

/// Second tau-variation of zeta_{alpha_tau}(z) at tau = 0 around the
/// constant weight:
///   4z sum_{p,n>0, p!=n} (n^{-z}-p^{-z})/(p^2-n^2) p n |beta_{p+n}|^2
///   + 2z^2 sum_{n>0} n^{-z} |beta_{2n}|^2,
/// a finite sum over the band of beta. beta must have zero mean.
double second_variation_zeta(const FourierFunction& beta, double z);

/// d/dz of second_variation_zeta for the single mode 2r+1, in closed form:
/// (8/(2r+1)) sum_{p=r+1}^{2r} p(2r+1-p)/(2p-2r-1)
///   * ( p^{-s}(-1+s ln p) - (2r+1-p)^{-s}(-1+s ln(2r+1-p)) ).
double second_variation_zeta_prime(int r, double s);

/// s * int_{1/2}^1 x(1-x)/(2x-1) (x^{-s} - (1-x)^{-s}) dx for s in (0,2);
/// the coefficient of the leading (2r+1)^{2-s} ln(2r+1) growth of
/// second_variation_zeta_prime, always strictly negative.
double asymptotic_coefficient(double s);

/// gamma(p,m) = pm (2 ln(p/m) mp + (p+m)(m-p)) / ((m-p)^2 (m+p)^2), p != m.
double coefficient_gamma(int p, int m);

/// rho(n,p,s) = int_0^s max(|n|,1)^t max(|p|,1)^{s-t} dt in closed form.
double coefficient_rho(int n, int p, double s);

/// h(m,p) = 1/(2m^2) if max(|p|,1) = m, else
/// (ln m - ln max(|p|,1))/(m - max(|p|,1))^2 - 1/(m (m - max(|p|,1))).
double coefficient_h(int m, int p);

/// (1/4) d^2/dtau^2 <ln(Lambda+P0) phi_m, phi_m> at tau=0:
/// sum_{p>0, p!=m} gamma(p,m) |beta_{m+p}|^2.
double log_diag_expansion(int m, const FourierFunction& beta);

/// <ln(Lambda_a + P0) phi_m, phi_m> from the Galerkin discretization.
double log_diag_numeric(const FourierFunction& a, int m, int N);
double log_diag_numeric(const SteklovDiscretization& disc, int m);

/// Centered second tau-difference of (zeta_{alpha_tau} - 2 zeta_R)(z) for the
/// family (1 - tau beta)^{-1}, Richardson-extrapolated over tau_step and
/// tau_step/2.
double second_variation_fd(const FourierFunction& beta, double z, double tau_step, int N);

struct CounterexampleReport {
  int r_found = 0;
  double diff2_value = 0.0;        // second_variation_zeta_prime(r_found, s)
  double spectral_zeta1_diff = 0.0;  // (zeta_{alpha_tau} - 2 zeta_R)'(s)
  double zeta1_diff_at_zero = 0.0;   // same derivative at s = 0
  double quadratic_mismatch = 0.0;   // |2 g(tau)/tau^2 - diff2| / |diff2|
  double tau = 0.0;
  int truncation_order = 0;
};

/// Scan r upward until second_variation_zeta_prime(r, s) < 0, then verify
/// with the spectral pipeline that (zeta_{alpha_tau})'(s) < 2 zeta_R'(s)
/// while the same derivative vanishes at s = 0. N = 0 picks the truncation
/// from the bandwidth of the witness. Throws std::runtime_error when r_max
/// is exhausted or the quadratic regime check fails (mismatch > 20%).
CounterexampleReport counterexample_search(double s, int r_max, double tau, int N = 0);

}  // namespace steklov
