#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <cstdio>
#include <fstream>

#include "steklov/operators.hpp"

using namespace steklov;

namespace {

// Independent Toeplitz assembly of D_a = a^{1/2} D a^{1/2} for the
// eigenrelation check; mirrors the paper-side definition, not the
// phi-basis construction.
Eigen::MatrixXcd toeplitz_d_a(const FourierFunction& a, int N) {
  const FourierFunction sq = pointwise_power(a, 0.5);
  const int dim = 2 * N + 1;
  Eigen::MatrixXcd T(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) T(i, j) = sq.coeff(i - j);
  }
  Eigen::MatrixXcd D = Eigen::MatrixXcd::Zero(dim, dim);
  for (int j = 0; j < dim; ++j) D(j, j) = static_cast<double>(j - N);
  Eigen::MatrixXcd out = T * D * T;
  return 0.5 * (out + out.adjoint());
}

}  // namespace

TEST_CASE("build_discretization: constant weight reduces to the disk") {
  const int N = 16;
  const auto disc = build_discretization(FourierFunction::constant(1.0), N);
  for (int i = 0; i < disc.dim(); ++i) {
    for (int j = 0; j < disc.dim(); ++j) {
      const Complex expected = i == j ? Complex(std::abs(i - N), 0.0) : Complex(0.0, 0.0);
      CHECK(std::abs(disc.lambda_a(i, j) - expected) < 1e-12);
      const Complex p0_expected = (i == N && j == N) ? Complex(1.0, 0.0) : Complex(0.0, 0.0);
      CHECK(std::abs(disc.p0(i, j) - p0_expected) < 1e-12);
      const Complex id = i == j ? Complex(1.0, 0.0) : Complex(0.0, 0.0);
      CHECK(std::abs(disc.phi_basis(i, j) - id) < 1e-12);
      CHECK(std::abs(disc.abs_da(i, j) - expected) < 1e-12);
    }
  }
}

TEST_CASE("build_discretization: hermitian, PSD, kernel vector overlap") {
  const int N = 64;
  const auto a = make_alpha_tau(1, 0.1);
  const auto disc = build_discretization(a, N);

  CHECK((disc.lambda_a - disc.lambda_a.adjoint()).cwiseAbs().maxCoeff() < 1e-12);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(disc.lambda_a);
  const Eigen::VectorXd ev = solver.eigenvalues();
  CHECK(std::abs(ev[0]) < 1e-8);
  CHECK(ev[1] > 0.5);  // exactly one near-zero eigenvalue

  // kernel eigenvector against the coefficient vector of (2 pi a)^{-1/2}
  const Eigen::VectorXcd kernel = solver.eigenvectors().col(0);
  const Eigen::VectorXcd expected = disc.phi(0);
  CHECK(std::abs(kernel.dot(expected)) > 0.99);
}

TEST_CASE("build_discretization: phi columns orthonormal on trusted modes") {
  const int N = 64;
  const auto disc = build_discretization(make_alpha_tau(1, 0.1), N);
  const int K = disc.trusted_modes();
  for (int n = -K; n <= K; ++n) {
    for (int m = -K; m <= n; ++m) {
      const Complex dot = disc.phi(m).dot(disc.phi(n));
      const double expected = n == m ? 1.0 : 0.0;
      CHECK(std::abs(dot - Complex(expected, 0.0)) < 1e-8);
    }
  }
}

TEST_CASE("D_a phi_n = n phi_n on interior modes") {
  // N at 4x the effective bandwidth of the weight, per the build contract
  const int N = 160;
  const auto a = make_alpha_tau(1, 0.1);
  const auto disc = build_discretization(a, N);
  CHECK(disc.diagnostics.empty());
  const Eigen::MatrixXcd da = toeplitz_d_a(a, N);
  for (int n = -N / 2; n <= N / 2; ++n) {
    const Eigen::VectorXcd ph = disc.phi(n);
    const double residual = (da * ph - static_cast<double>(n) * ph).cwiseAbs().maxCoeff();
    CHECK(residual < 1e-8);
  }
}

TEST_CASE("Lambda_1^2 equals D_1^2 in the discretization") {
  const int N = 12;
  const auto one = FourierFunction::constant(1.0);
  const auto disc = build_discretization(one, N);
  const Eigen::MatrixXcd d1 = toeplitz_d_a(one, N);
  const Eigen::MatrixXcd diff = disc.lambda_a * disc.lambda_a - d1 * d1;
  CHECK(diff.cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("build_discretization: input validation") {
  CHECK_THROWS_AS(build_discretization(FourierFunction::cosine(1, 1.0), 16),
                  std::domain_error);  // not positive
  const auto unnormalized = FourierFunction::constant(2.0);
  CHECK_THROWS_AS(build_discretization(unnormalized, 16), std::invalid_argument);
  // under-resolved truncation is a diagnostic, not an error
  const auto disc = build_discretization(make_alpha_tau(2, 0.2), 8);
  CHECK(!disc.diagnostics.empty());
}

TEST_CASE("trusted eigenvalue prefix stable under doubling") {
  const auto a = make_alpha_tau(1, 0.15);
  const auto coarse = build_discretization(a, 48);
  const auto fine = build_discretization(a, 96);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> sc(coarse.lambda_a, Eigen::EigenvaluesOnly);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> sf(fine.lambda_a, Eigen::EigenvaluesOnly);
  for (int k = 0; k <= 24; ++k) {
    CHECK(std::abs(sc.eigenvalues()[k] - sf.eigenvalues()[k]) < 1e-8);
  }
}

TEST_CASE("matrix_function: identity power and exact log on a diagonal") {
  const auto disc = build_discretization(make_alpha_tau(1, 0.1), 32);
  const Eigen::MatrixXcd back = matrix_function(disc.lambda_a, ScalarFunction::power(1.0));
  CHECK((back - disc.lambda_a).cwiseAbs().maxCoeff() < 1e-12);

  Eigen::MatrixXcd diag = Eigen::MatrixXcd::Zero(2, 2);
  diag(0, 0) = 1.0;
  diag(1, 1) = 2.0;
  const Eigen::MatrixXcd lg = matrix_function(diag, ScalarFunction::log());
  CHECK(std::abs(lg(0, 0)) < 1e-14);
  CHECK(std::abs(lg(1, 1) - std::log(2.0)) < 1e-14);
  CHECK(std::abs(lg(0, 1)) < 1e-14);
}

TEST_CASE("matrix_function: exp of log round trip") {
  const auto disc = build_discretization(make_alpha_tau(1, 0.1), 24);
  const Eigen::MatrixXcd A = disc.lambda_a + disc.p0;
  const Eigen::MatrixXcd logA = matrix_function(A, ScalarFunction::log());
  const Eigen::MatrixXcd back = logA.exp();  // independent Pade route
  CHECK((back - A).cwiseAbs().maxCoeff() / A.cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("matrix_function: rejects bad operators") {
  Eigen::MatrixXcd skew = Eigen::MatrixXcd::Zero(2, 2);
  skew(0, 1) = 1.0;
  skew(1, 0) = 3.0;
  CHECK_THROWS_AS(matrix_function(skew, ScalarFunction::power(1.0)), std::invalid_argument);

  Eigen::MatrixXcd indef = Eigen::MatrixXcd::Zero(2, 2);
  indef(0, 0) = -1.0;
  indef(1, 1) = 1.0;
  CHECK_THROWS_AS(matrix_function(indef, ScalarFunction::log()), std::invalid_argument);
}

TEST_CASE("quadratic_form: orthonormality and the power estimate (2.10)") {
  const int N = 48;
  const auto disc = build_discretization(make_alpha_tau(1, 0.12), N);
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(disc.dim(), disc.dim());
  CHECK(std::abs(quadratic_form(id, disc.phi(1), disc.phi(1)) - Complex(1.0, 0.0)) < 1e-10);

  const Eigen::MatrixXcd A = disc.lambda_a + disc.p0;
  for (double s : {1.0, 2.0}) {
    const Eigen::MatrixXcd As = matrix_function(A, ScalarFunction::power(s));
    for (int n = -N / 4; n <= N / 4; ++n) {
      const double value = quadratic_form(As, disc.phi(n), disc.phi(n)).real();
      const double bound = std::pow(std::max(std::abs(n), 1), s);
      CHECK(value >= bound - 1e-6);
    }
  }

  const auto disk = build_discretization(FourierFunction::constant(1.0), 8);
  const Eigen::MatrixXcd L1 = disk.lambda_a;
  CHECK(quadratic_form(L1, disk.phi(1), disk.phi(1)).real() == doctest::Approx(1.0));

  Eigen::VectorXcd bad(3);
  CHECK_THROWS_AS(quadratic_form(id, bad, disc.phi(0)), std::invalid_argument);
}

TEST_CASE("trace_smoothing_product vanishes at the disk") {
  const auto disc = build_discretization(FourierFunction::constant(1.0), 24);
  double tail = 1.0;
  const double tr = trace_smoothing_product(disc, ScalarFunction::power_log(-1.0, 1), &tail);
  CHECK(std::abs(tr) < 1e-12);
  CHECK(tail < 1e-12);
}

TEST_CASE("dump_matrix round trip") {
  Eigen::MatrixXcd m(2, 2);
  m << Complex(1.0, 2.0), Complex(3.0, 4.0), Complex(5.0, 6.0), Complex(7.0, 8.0);
  const std::string path = "dump_test.bin";
  dump_matrix(m, path);
  std::ifstream in(path, std::ios::binary);
  std::vector<double> vals(8);
  in.read(reinterpret_cast<char*>(vals.data()), 8 * sizeof(double));
  CHECK(in.gcount() == 8 * sizeof(double));
  CHECK(vals[0] == 1.0);
  CHECK(vals[1] == 2.0);
  CHECK(vals[6] == 7.0);
  CHECK(vals[7] == 8.0);
  std::remove(path.c_str());
}
