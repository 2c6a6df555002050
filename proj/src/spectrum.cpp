#include "steklov/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace steklov {

int disk_eigenvalue(int k) {
  if (k < 0) throw std::invalid_argument("disk_eigenvalue: k must be nonnegative");
  return (k + 1) / 2;
}

SpectrumResult spectrum_of(const SteklovDiscretization& disc) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(disc.lambda_a,
                                                         Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("spectrum_of: eigendecomposition failed");
  }
  SpectrumResult result;
  result.truncation_order = disc.order;
  result.trusted_count = disc.order;
  result.eigenvalues.assign(solver.eigenvalues().data(),
                            solver.eigenvalues().data() + solver.eigenvalues().size());
  std::sort(result.eigenvalues.begin(), result.eigenvalues.end());
  if (result.eigenvalues[0] < -1e-8) {
    std::ostringstream msg;
    msg << "spectrum_of: Galerkin matrix not PSD (lambda_0 = " << result.eigenvalues[0] << ")";
    throw std::runtime_error(msg.str());
  }
  // the kernel eigenvalue is exact in the continuum; clear the dust
  if (result.eigenvalues[0] < 0.0) result.eigenvalues[0] = 0.0;

  const int K = result.trusted_count;
  double tail = 0.0;
  for (int k = (3 * K) / 4; k <= K; ++k) {
    tail = std::max(tail, std::abs(result.lambda(k) - disk_eigenvalue(k)));
  }
  result.tail_residual = tail;
  return result;
}

SpectrumResult steklov_spectrum(const FourierFunction& a, int N) {
  return spectrum_of(build_discretization(a, N));
}

std::vector<double> pair_differences(const SpectrumResult& result) {
  std::vector<double> diffs;
  diffs.reserve(static_cast<size_t>(result.trusted_count));
  for (int k = 1; k <= result.trusted_count; ++k) {
    diffs.push_back(result.lambda(k) - disk_eigenvalue(k));
  }
  return diffs;
}

double weinstock_gap(const FourierFunction& a, int N) {
  const SpectrumResult s = steklov_spectrum(a, N);
  return 1.0 - s.lambda(1);
}

int agreeing_prefix(const SpectrumResult& a, const SpectrumResult& b, double tol) {
  const int limit = std::min(a.trusted_count, b.trusted_count);
  int k = 0;
  while (k + 1 <= limit && std::abs(a.lambda(k + 1) - b.lambda(k + 1)) < tol) ++k;
  return k;
}

}  // namespace steklov
