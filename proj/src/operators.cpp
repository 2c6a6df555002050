#include "steklov/operators.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace steklov {
namespace {

constexpr double kHermitianTol = 1e-10;
constexpr double kPsdTol = -1e-8;
constexpr double kKernelFloor = 1e-10;
constexpr double kNormalizationTol = 1e-8;

void hermitize(Eigen::MatrixXcd& A) { A = 0.5 * (A + A.adjoint()).eval(); }

}  // namespace

double ScalarFunction::operator()(double x) const {
  double v = exponent == 0.0 ? 1.0 : std::pow(x, exponent);
  const double lx = log_power > 0 ? std::log(x) : 0.0;
  for (int i = 0; i < log_power; ++i) v *= lx;
  return v;
}

Eigen::VectorXcd SteklovDiscretization::phi(int n) const {
  if (std::abs(n) > order) throw std::out_of_range("phi: mode outside truncation");
  return phi_basis.col(n + order);
}

SteklovDiscretization build_discretization(const FourierFunction& a, int N) {
  if (N < 1) throw std::invalid_argument("build_discretization: N must be positive");
  if (!a.is_real()) throw std::invalid_argument("build_discretization: weight must be real");
  SteklovDiscretization disc;
  disc.order = N;
  disc.weight = a;
  disc.normalization_residual = normalization_residual(a);
  if (disc.normalization_residual > kNormalizationTol) {
    std::ostringstream msg;
    msg << "build_discretization: normalization residual " << disc.normalization_residual
        << " exceeds " << kNormalizationTol;
    throw std::invalid_argument(msg.str());
  }
  const int bandwidth = a.effective_bandwidth(1e-12);
  if (N < 4 * bandwidth) {
    std::ostringstream msg;
    msg << "truncation order " << N << " below 4x effective bandwidth " << bandwidth
        << "; edge corruption may reach trusted modes";
    disc.diagnostics.push_back(msg.str());
  }

  const int dim = 2 * N + 1;
  const int n_grid = detail::next_odd_fft_size(std::max({8 * N + 9, 4 * a.size() + 5, 513}));
  const std::vector<double> avals = a.sampled_real(n_grid);
  for (int j = 0; j < n_grid; ++j) {
    if (avals[static_cast<size_t>(j)] <= 1e-10) {
      std::ostringstream msg;
      msg << "build_discretization: weight non-positive at node " << j;
      throw std::domain_error(msg.str());
    }
  }

  std::vector<double> sqrt_a(avals.size()), inv_sqrt_a(avals.size()), inv_a(avals.size());
  for (size_t j = 0; j < avals.size(); ++j) {
    sqrt_a[j] = std::sqrt(avals[j]);
    inv_sqrt_a[j] = 1.0 / sqrt_a[j];
    inv_a[j] = 1.0 / avals[j];
  }

  // Toeplitz multiplication by a^{1/2} on the band, then T |D| T.
  const FourierFunction sq = FourierFunction::from_samples(sqrt_a);
  Eigen::MatrixXcd T(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      T(i, j) = sq.coeff(i - j);
    }
  }
  Eigen::MatrixXcd scaled = T;
  for (int j = 0; j < dim; ++j) {
    scaled.col(j) *= static_cast<double>(std::abs(j - N));
  }
  disc.lambda_a = T * scaled.adjoint();
  // T is Hermitian, so T diag T == T (diag T^H)^H; hermitize the dust away
  hermitize(disc.lambda_a);

  // Theta(theta) = int_0^theta a^{-1}: linear part + periodic part synthesized
  // from the coefficients of a^{-1} (the k=0 coefficient is 1 under the
  // normalization; its residual is already bounded above).
  const FourierFunction g = FourierFunction::from_samples(inv_a);
  const int gM = g.grid_order();
  std::vector<Complex> pcoeffs(static_cast<size_t>(2 * gM + 1), Complex(0.0, 0.0));
  for (int k = 1; k <= gM; ++k) {
    pcoeffs[static_cast<size_t>(gM + k)] = g.coeff(k) / Complex(0.0, k);
    pcoeffs[static_cast<size_t>(gM - k)] = g.coeff(-k) / Complex(0.0, -k);
  }
  const FourierFunction periodic{std::move(pcoeffs)};
  const std::vector<Complex> pvals = periodic.sampled(n_grid);
  const double p0val = pvals[0].real();
  std::vector<double> theta_int(avals.size());
  for (int j = 0; j < n_grid; ++j) {
    const double theta = 2.0 * std::numbers::pi * j / n_grid;
    theta_int[static_cast<size_t>(j)] = theta + pvals[static_cast<size_t>(j)].real() - p0val;
  }

  disc.phi_basis.resize(dim, dim);
  std::vector<Complex> fn(avals.size());
  for (int n = -N; n <= N; ++n) {
    for (size_t j = 0; j < avals.size(); ++j) {
      fn[j] = inv_sqrt_a[j] * std::polar(1.0, n * theta_int[j]);
    }
    const FourierFunction col = FourierFunction::from_complex_samples(fn);
    for (int k = -N; k <= N; ++k) {
      disc.phi_basis(k + N, n + N) = col.coeff(k);
    }
  }

  Eigen::VectorXcd kernel = disc.phi_basis.col(N);
  kernel /= kernel.norm();
  disc.p0 = kernel * kernel.adjoint();

  Eigen::MatrixXcd phi_scaled = disc.phi_basis;
  for (int n = -N; n <= N; ++n) {
    phi_scaled.col(n + N) *= static_cast<double>(std::abs(n));
  }
  disc.abs_da = phi_scaled * disc.phi_basis.adjoint();
  hermitize(disc.abs_da);
  return disc;
}

SpectralCalculus::SpectralCalculus(const Eigen::MatrixXcd& A) {
  if (A.rows() != A.cols()) throw std::invalid_argument("SpectralCalculus: square matrix required");
  const double scale = A.cwiseAbs().maxCoeff();
  const double dev = (A - A.adjoint()).cwiseAbs().maxCoeff();
  if (dev > kHermitianTol * (1.0 + scale)) {
    std::ostringstream msg;
    msg << "SpectralCalculus: matrix not Hermitian (deviation " << dev << ")";
    throw std::invalid_argument(msg.str());
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(A);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("SpectralCalculus: eigendecomposition failed");
  }
  eigenvalues_ = solver.eigenvalues();
  eigenvectors_ = solver.eigenvectors();
  if (eigenvalues_.minCoeff() < kPsdTol) {
    std::ostringstream msg;
    msg << "SpectralCalculus: matrix not PSD (min eigenvalue " << eigenvalues_.minCoeff()
        << ")";
    throw std::invalid_argument(msg.str());
  }
}

Eigen::MatrixXcd SpectralCalculus::apply(const ScalarFunction& f) const {
  const auto n = eigenvalues_.size();
  Eigen::VectorXd fv(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double w = eigenvalues_[i];
    w = f.needs_kernel_floor() ? std::max(w, kKernelFloor) : std::max(w, 0.0);
    fv[i] = f(w);
  }
  return eigenvectors_ * fv.asDiagonal() * eigenvectors_.adjoint();
}

Eigen::MatrixXcd matrix_function(const Eigen::MatrixXcd& A, const ScalarFunction& f) {
  return SpectralCalculus(A).apply(f);
}

Complex quadratic_form(const Eigen::MatrixXcd& op, const Eigen::VectorXcd& u,
                       const Eigen::VectorXcd& v) {
  if (op.rows() != op.cols() || op.cols() != u.size() || u.size() != v.size()) {
    throw std::invalid_argument("quadratic_form: dimension mismatch");
  }
  return v.dot(op * u);
}

double trace_smoothing_product(const SteklovDiscretization& disc, const ScalarFunction& f,
                               double* tail_estimate) {
  const int N = disc.order;
  const int K = disc.trusted_modes();
  SpectralCalculus calc(disc.lambda_a + disc.p0);
  const Eigen::MatrixXcd F = calc.apply(f);
  const Eigen::MatrixXcd FL2 = F * disc.lambda_a * disc.lambda_a;

  std::vector<double> terms(static_cast<size_t>(K) + 1, 0.0);
  double total = 0.0;
  for (int n = 1; n <= K; ++n) {
    double t = 0.0;
    for (int sign : {1, -1}) {
      const Eigen::VectorXcd ph = disc.phi_basis.col(sign * n + N);
      t += (ph.dot(FL2 * ph) - static_cast<double>(n) * n * ph.dot(F * ph)).real();
    }
    terms[static_cast<size_t>(n)] = t;
    total += t;
  }

  if (tail_estimate != nullptr) {
    // extrapolate the superpolynomial decay of |t_n| from the last points
    // still above the floating-point floor
    double scale = 0.0;
    for (int n = 1; n <= K; ++n) scale = std::max(scale, std::abs(terms[static_cast<size_t>(n)]));
    const double floor = std::max(1e-15 * scale, 1e-300);
    std::vector<std::pair<int, double>> pts;
    for (int n = 2; n <= K; ++n) {
      if (std::abs(terms[static_cast<size_t>(n)]) > floor) {
        pts.emplace_back(n, std::log(std::abs(terms[static_cast<size_t>(n)])));
      }
    }
    if (pts.size() > 20) pts.erase(pts.begin(), pts.end() - 20);
    if (pts.size() < 4) {
      *tail_estimate = pts.empty() ? 0.0 : floor;
    } else {
      double sx = 0, sy = 0, sxx = 0, sxy = 0;
      for (auto& [x, y] : pts) {
        sx += x; sy += y; sxx += static_cast<double>(x) * x; sxy += x * y;
      }
      const double npts = static_cast<double>(pts.size());
      const double denom = npts * sxx - sx * sx;
      const double q = -(npts * sxy - sx * sy) / denom;
      const double c = (sy + q * sx) / npts;
      if (q <= 0.0) {
        *tail_estimate = std::abs(terms[static_cast<size_t>(K)]) * K;  // no decay observed
      } else {
        *tail_estimate = std::exp(c - q * (K + 1)) / (1.0 - std::exp(-q));
      }
    }
  }
  return total;
}

void dump_matrix(const Eigen::MatrixXcd& m, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("dump_matrix: cannot open " + path);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      const double re = m(i, j).real();
      const double im = m(i, j).imag();
      out.write(reinterpret_cast<const char*>(&re), sizeof(double));
      out.write(reinterpret_cast<const char*>(&im), sizeof(double));
    }
  }
}

}  // namespace steklov
