#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "steklov/fourier.hpp"

namespace steklov {

/// Descriptor for f(x) = x^s ln^m(x) applied through the spectral calculus.
struct ScalarFunction {
  double exponent = 1.0;
  int log_power = 0;

  static ScalarFunction power(double s) { return {s, 0}; }
  static ScalarFunction log() { return {0.0, 1}; }
  static ScalarFunction power_log(double s, int m) { return {s, m}; }

  double operator()(double x) const;
  /// True when small eigenvalues must be clamped before applying f.
  bool needs_kernel_floor() const { return log_power > 0 || exponent < 0.0; }
};

/// Fourier-Galerkin matrices for the weighted Steklov problem at truncation
/// order N: basis e^{in theta}/sqrt(2pi), n = -N..N.
///
/// lambda_a = T |D| T with T the Toeplitz matrix of multiplication by
/// a^{1/2} truncated to the band; the truncation corrupts edge modes, so
/// only quantities built from modes |n| <= trusted_modes() (equivalently
/// the eigenvalue prefix k <= N) should be consumed downstream.
struct SteklovDiscretization {
  int order = 0;  // N
  Eigen::MatrixXcd lambda_a;
  Eigen::MatrixXcd abs_da;
  Eigen::MatrixXcd p0;
  Eigen::MatrixXcd phi_basis;  // column i is phi_n for n = i - N
  FourierFunction weight;
  double normalization_residual = 0.0;
  std::vector<std::string> diagnostics;

  int dim() const { return 2 * order + 1; }
  int trusted_modes() const { return order / 2; }
  Eigen::VectorXcd phi(int n) const;
};

/// Assemble the Galerkin matrices for a positive normalized weight.
/// Throws if a is not real positive or the normalization residual exceeds
/// 1e-8; N smaller than 4x the effective bandwidth of a only records a
/// diagnostic.
SteklovDiscretization build_discretization(const FourierFunction& a, int N);

/// Eigendecomposition of a Hermitian PSD matrix, reusable across several
/// scalar functions of the same operator.
class SpectralCalculus {
 public:
  explicit SpectralCalculus(const Eigen::MatrixXcd& A);
  Eigen::MatrixXcd apply(const ScalarFunction& f) const;
  const Eigen::VectorXd& eigenvalues() const { return eigenvalues_; }
  const Eigen::MatrixXcd& eigenvectors() const { return eigenvectors_; }

 private:
  Eigen::VectorXd eigenvalues_;
  Eigen::MatrixXcd eigenvectors_;
};

/// f(A) for Hermitian positive semidefinite A. Eigenvalues below 1e-10 are
/// clamped to 1e-10 when f involves a logarithm or negative power (the
/// caller is expected to have added P_0 for kernel handling).
Eigen::MatrixXcd matrix_function(const Eigen::MatrixXcd& A, const ScalarFunction& f);

/// <Op u, v> in the discretized L^2 product (plain coefficient dot).
Complex quadratic_form(const Eigen::MatrixXcd& op, const Eigen::VectorXcd& u,
                       const Eigen::VectorXcd& v);

/// Tr[ f(Lambda_a + P_0) (Lambda_a^2 - D_a^2) ] over the trusted modes,
/// expanded in the phi_n basis with D_a^2 phi_n = n^2 phi_n used exactly.
/// When tail_estimate is non-null it receives a bound on the dropped modes
/// extrapolated from the decay of the last computed terms.
double trace_smoothing_product(const SteklovDiscretization& disc, const ScalarFunction& f,
                               double* tail_estimate = nullptr);

/// Row-major dump, each complex entry as two little-endian 64-bit floats.
void dump_matrix(const Eigen::MatrixXcd& m, const std::string& path);

}  // namespace steklov
