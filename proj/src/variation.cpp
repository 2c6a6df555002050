#include "steklov/variation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "steklov/zeta.hpp"

namespace steklov {
namespace {

void require_zero_mean(const FourierFunction& beta, const char* who) {
  double scale = 0.0;
  for (int k = -beta.grid_order(); k <= beta.grid_order(); ++k) {
    scale = std::max(scale, std::abs(beta.coeff(k)));
  }
  if (std::abs(beta.coeff(0)) > 1e-12 * std::max(1.0, scale)) {
    throw std::invalid_argument(std::string(who) + ": beta must have zero mean");
  }
}

// Gauss-Legendre nodes/weights on [-1, 1] by Newton iteration.
void gauleg(int n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(static_cast<size_t>(n), 0.0);
  w.assign(static_cast<size_t>(n), 0.0);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1.0);
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::abs(z - z1) < 1e-15) break;
    }
    x[static_cast<size_t>(i)] = -z;
    x[static_cast<size_t>(n - 1 - i)] = z;
    w[static_cast<size_t>(i)] = 2.0 / ((1.0 - z * z) * pp * pp);
    w[static_cast<size_t>(n - 1 - i)] = w[static_cast<size_t>(i)];
  }
}

template <typename F>
double integrate(F&& f, double a, double b, double rel_tol = 1e-13) {
  static thread_local std::vector<double> nodes, weights;
  if (nodes.empty()) gauleg(16, nodes, weights);
  double prev = 0.0;
  for (int panels = 4; panels <= 8192; panels *= 2) {
    double acc = 0.0;
    const double h = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
      const double lo = a + p * h;
      for (size_t i = 0; i < nodes.size(); ++i) {
        acc += 0.5 * h * weights[i] * f(lo + 0.5 * h * (nodes[i] + 1.0));
      }
    }
    if (panels > 4 && std::abs(acc - prev) <= rel_tol * (1.0 + std::abs(acc))) return acc;
    prev = acc;
  }
  return prev;
}

// x(1-x)/(2x-1) * (x^{-s} - (1-x)^{-s}) without cancellation near x = 1/2.
double m55_integrand(double x, double s) {
  if (std::abs(2.0 * x - 1.0) < 1e-14) return -s * std::pow(2.0, s - 1.0);
  const double L = std::log1p((1.0 - 2.0 * x) / x);  // ln((1-x)/x)
  const double diff = -std::pow(x, -s) * std::expm1(-s * L);
  return x * (1.0 - x) / (2.0 * x - 1.0) * diff;
}

}  // namespace

DeformationFamily DeformationFamily::single_mode(int r) {
  if (r < 1) throw std::invalid_argument("single_mode: r must be a positive integer");
  return {FourierFunction::cosine(2 * r + 1, 2.0)};
}

DeformationFamily DeformationFamily::general(const FourierFunction& beta) {
  if (!beta.is_real()) throw std::invalid_argument("DeformationFamily: beta must be real");
  require_zero_mean(beta, "DeformationFamily");
  return {beta};
}

FourierFunction DeformationFamily::weight_at(double tau) const {
  const int B = std::max(beta.grid_order(), 1);
  if (tau == 0.0) return FourierFunction::constant(1.0);
  const double bmax = std::max(std::abs(beta.max_real()), std::abs(beta.min_real()));
  const double g = std::abs(tau) * bmax;
  if (g >= 1.0 - 1e-6) {
    throw std::domain_error("DeformationFamily: tau too large, 1 - tau*beta loses positivity");
  }
  const int harmonics =
      std::max(4, static_cast<int>(std::ceil(std::log(1e-17) / std::log(g))));
  const int order = std::min(harmonics * B, 4096);
  const int n = 2 * order + 1;
  std::vector<double> vals(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j) {
    const double theta = 2.0 * std::numbers::pi * j / n;
    vals[static_cast<size_t>(j)] = 1.0 / (1.0 - tau * beta.evaluate(theta).real());
  }
  return normalize(FourierFunction::from_samples(vals));
}

VariationReport VariationReport::make(double closed_form, double fd, double tau_step) {
  VariationReport report;
  report.closed_form = closed_form;
  report.finite_difference = fd;
  report.tau_step = tau_step;
  report.relative_error = std::abs(closed_form - fd) / std::max(1.0, std::abs(closed_form));
  return report;
}

double second_variation_zeta(const FourierFunction& beta, double z) {
  require_zero_mean(beta, "second_variation_zeta");
  const int B = beta.grid_order();
  double scale = 0.0;
  for (int k = 1; k <= B; ++k) scale = std::max(scale, std::abs(beta.coeff(k)));
  double cross = 0.0, diagonal = 0.0;
  for (int L = 2; L <= B; ++L) {
    const double w = std::norm(beta.coeff(L));
    if (w <= 1e-30 * scale * scale) continue;
    for (int n = 1; n < L; ++n) {
      const int p = L - n;
      if (p == n) continue;
      cross += (std::pow(n, -z) - std::pow(p, -z)) / static_cast<double>(p * p - n * n) *
               static_cast<double>(p) * n * w;
    }
    if (L % 2 == 0) {
      diagonal += std::pow(L / 2, -z) * w;
    }
  }
  return 4.0 * z * cross + 2.0 * z * z * diagonal;
}

double second_variation_zeta_prime(int r, double s) {
  if (r < 1) throw std::invalid_argument("second_variation_zeta_prime: r must be positive");
  const int mode = 2 * r + 1;
  double total = 0.0;
  for (int p = r + 1; p <= 2 * r; ++p) {
    const int q = mode - p;
    total += static_cast<double>(p) * q / (2 * p - mode) *
             (std::pow(p, -s) * (-1.0 + s * std::log(p)) -
              std::pow(q, -s) * (-1.0 + s * std::log(q)));
  }
  return 8.0 * total / mode;
}

double asymptotic_coefficient(double s) {
  if (!(s > 0.0 && s < 2.0)) {
    throw std::domain_error("asymptotic_coefficient: s must lie in (0, 2)");
  }
  constexpr double kDelta = 1e-3;
  const double smooth = integrate([s](double x) { return m55_integrand(x, s); }, 0.5,
                                  1.0 - kDelta);
  // near x = 1 substitute u = 1-x and peel off the u^{1-s} weight:
  // int_0^d (1-u) u (1-u)^{-s}/(1-2u) du  -  int_0^d (1-u) u^{1-s}/(1-2u) du
  const double regular = integrate(
      [s](double u) {
        return (1.0 - u) * u * std::pow(1.0 - u, -s) / (1.0 - 2.0 * u);
      },
      0.0, kDelta);
  // (1-u)/(1-2u) = 1 + sum_{j>=1} 2^{j-1} u^j, integrated against u^{1-s}
  double singular = std::pow(kDelta, 2.0 - s) / (2.0 - s);
  double coeff = 0.5;
  for (int j = 1; j <= 24; ++j) {
    coeff *= 2.0;
    const double term = coeff * std::pow(kDelta, 2.0 - s + j) / (2.0 - s + j);
    singular += term;
    if (term < 1e-25) break;
  }
  return s * (smooth + regular - singular);
}

double coefficient_gamma(int p, int m) {
  if (p < 1 || m < 1) throw std::invalid_argument("coefficient_gamma: p, m must be positive");
  if (p == m) throw std::invalid_argument("coefficient_gamma: p = m is excluded");
  const double pd = p, md = m;
  return pd * md * (2.0 * std::log(pd / md) * md * pd + (pd + md) * (md - pd)) /
         ((md - pd) * (md - pd) * (md + pd) * (md + pd));
}

double coefficient_rho(int n, int p, double s) {
  if (!(s > 0.0)) throw std::invalid_argument("coefficient_rho: s must be positive");
  const double A = std::max(std::abs(n), 1);
  const double B = std::max(std::abs(p), 1);
  if (A == B) return s * std::pow(B, s);
  return (std::pow(A, s) - std::pow(B, s)) / (std::log(A) - std::log(B));
}

double coefficient_h(int m, int p) {
  if (m < 1) throw std::invalid_argument("coefficient_h: m must be positive");
  const double md = m;
  const double q = std::max(std::abs(p), 1);
  if (q == md) return 1.0 / (2.0 * md * md);
  return (std::log(md) - std::log(q)) / ((md - q) * (md - q)) - 1.0 / (md * (md - q));
}

double log_diag_expansion(int m, const FourierFunction& beta) {
  if (m < 1) throw std::invalid_argument("log_diag_expansion: m must be positive");
  require_zero_mean(beta, "log_diag_expansion");
  const int B = beta.grid_order();
  double total = 0.0;
  for (int p = 1; p + m <= B; ++p) {
    if (p == m) continue;
    const double w = std::norm(beta.coeff(m + p));
    if (w == 0.0) continue;
    total += coefficient_gamma(p, m) * w;
  }
  return total;
}

double log_diag_numeric(const SteklovDiscretization& disc, int m) {
  if (m < 1 || m > disc.order) {
    throw std::invalid_argument("log_diag_numeric: mode outside truncation");
  }
  const Eigen::MatrixXcd logA = matrix_function(disc.lambda_a + disc.p0, ScalarFunction::log());
  const Complex val = quadratic_form(logA, disc.phi(m), disc.phi(m));
  if (std::abs(val.imag()) > 1e-8 * (1.0 + std::abs(val.real()))) {
    throw std::runtime_error("log_diag_numeric: non-real diagonal value");
  }
  return val.real();
}

double log_diag_numeric(const FourierFunction& a, int m, int N) {
  if (m < 1 || 4 * m > N) {
    throw std::invalid_argument("log_diag_numeric: need 1 <= m <= N/4");
  }
  return log_diag_numeric(build_discretization(a, N), m);
}

double second_variation_fd(const FourierFunction& beta, double z, double tau_step, int N) {
  const DeformationFamily family = DeformationFamily::general(beta);
  auto value_at = [&](double tau) {
    return zeta_diff_deriv(family.weight_at(tau), z, 0, N).value;
  };
  auto second_diff = [&](double h) {
    // (zeta_{alpha_tau} - 2 zeta_R)(z) vanishes at tau = 0
    return (value_at(h) + value_at(-h)) / (h * h);
  };
  const double coarse = second_diff(tau_step);
  const double fine = second_diff(0.5 * tau_step);
  return (4.0 * fine - coarse) / 3.0;
}

CounterexampleReport counterexample_search(double s, int r_max, double tau, int N) {
  if (!(s > 0.0 && s < 2.0)) {
    throw std::domain_error("counterexample_search: s must lie in (0, 2)");
  }
  if (!(tau > 0.0 && tau <= 0.02)) {
    throw std::domain_error("counterexample_search: tau must lie in (0, 0.02]");
  }
  int r_found = 0;
  double d2 = 0.0;
  for (int r = 1; r <= r_max; ++r) {
    d2 = second_variation_zeta_prime(r, s);
    if (d2 < 0.0) {
      r_found = r;
      break;
    }
  }
  if (r_found == 0) {
    std::ostringstream msg;
    msg << "counterexample_search: no r <= " << r_max
        << " with negative second variation at s = " << s << "; raise r_max";
    throw std::runtime_error(msg.str());
  }

  const int mode = 2 * r_found + 1;
  const int trunc = N > 0 ? N : std::min(1024, std::max(96, 8 * mode));
  const FourierFunction weight = make_alpha_tau(r_found, tau);
  const SpectrumResult spectrum = steklov_spectrum(weight, trunc);

  CounterexampleReport report;
  report.r_found = r_found;
  report.diff2_value = d2;
  report.tau = tau;
  report.truncation_order = trunc;
  report.spectral_zeta1_diff = zeta_diff_deriv(spectrum, s, 1).value;
  report.zeta1_diff_at_zero = zeta_diff_deriv(spectrum, 0.0, 1).value;
  // alpha_{-tau} is a rotation of alpha_tau, so the centered second
  // difference in tau collapses to 2 g(tau)/tau^2
  const double fd2 = 2.0 * report.spectral_zeta1_diff / (tau * tau);
  report.quadratic_mismatch = std::abs(fd2 - d2) / std::abs(d2);
  if (report.quadratic_mismatch > 0.2) {
    std::ostringstream msg;
    msg << "counterexample_search: quadratic-regime mismatch "
        << report.quadratic_mismatch << " at tau = " << tau << "; lower tau";
    throw std::runtime_error(msg.str());
  }
  if (report.spectral_zeta1_diff >= 0.0) {
    throw std::runtime_error(
        "counterexample_search: spectral derivative not negative at the witness");
  }
  return report;
}

}  // namespace steklov
