#pragma once

#include <vector>

#include "steklov/operators.hpp"

namespace steklov {

/// Ordered Steklov eigenvalues with the trusted-prefix convention: of the
/// 2N+1 Galerkin eigenvalues, the first trusted_count = N are accepted as
/// converged (mode cutoff N/2 applied to the paired spectrum).
struct SpectrumResult {
  std::vector<double> eigenvalues;  // nondecreasing, size 2N+1
  int trusted_count = 0;
  int truncation_order = 0;
  /// max |lambda_k - floor((k+1)/2)| over the last quartile of the trusted
  /// prefix; a rough indicator of how far the asymptotic regime was reached.
  double tail_residual = 0.0;

  double lambda(int k) const { return eigenvalues.at(static_cast<size_t>(k)); }
};

/// lambda_k(disk) = floor((k+1)/2).
int disk_eigenvalue(int k);

SpectrumResult steklov_spectrum(const FourierFunction& a, int N);
SpectrumResult spectrum_of(const SteklovDiscretization& disc);

/// d_k = lambda_k - floor((k+1)/2) for k = 1..trusted_count.
std::vector<double> pair_differences(const SpectrumResult& result);

/// 1 - lambda_1(a): zero exactly when a is conformally equivalent to 1,
/// strictly positive otherwise (Weinstock).
double weinstock_gap(const FourierFunction& a, int N);

/// Length of the leading eigenvalue run on which the two results agree
/// within tol. With a doubled-truncation pair this refines the default
/// trusted_count = N convention, which over-trusts weights whose
/// eigenfunctions spread proportionally to the mode number (Mobius
/// pullbacks are the prime case).
int agreeing_prefix(const SpectrumResult& a, const SpectrumResult& b, double tol);

}  // namespace steklov
