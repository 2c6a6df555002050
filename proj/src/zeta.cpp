#include "steklov/zeta.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

namespace steklov {
namespace {

// Second-order Taylor arithmetic in the zeta argument: every elementary
// piece of the Euler-Maclaurin formula and of the reflection formula is
// carried with its first two derivatives, so m = 0, 1, 2 come out of one
// evaluation.
struct Jet {
  double v = 0.0, d1 = 0.0, d2 = 0.0;
};

Jet operator+(Jet a, Jet b) { return {a.v + b.v, a.d1 + b.d1, a.d2 + b.d2}; }
Jet operator-(Jet a, Jet b) { return {a.v - b.v, a.d1 - b.d1, a.d2 - b.d2}; }
Jet operator*(Jet a, Jet b) {
  return {a.v * b.v, a.d1 * b.v + a.v * b.d1, a.d2 * b.v + 2.0 * a.d1 * b.d1 + a.v * b.d2};
}
Jet operator*(double c, Jet a) { return {c * a.v, c * a.d1, c * a.d2}; }
Jet inverse(Jet a) {
  const double iv = 1.0 / a.v;
  return {iv, -a.d1 * iv * iv, (2.0 * a.d1 * a.d1 - a.v * a.d2) * iv * iv * iv};
}
Jet exp_jet(Jet a) {
  const double e = std::exp(a.v);
  return {e, e * a.d1, e * (a.d2 + a.d1 * a.d1)};
}
Jet log_jet(Jet a) {
  const double iv = 1.0 / a.v;
  return {std::log(a.v), a.d1 * iv, (a.d2 * a.v - a.d1 * a.d1) * iv * iv};
}
Jet sin_jet(Jet a) {
  const double s = std::sin(a.v), c = std::cos(a.v);
  return {s, c * a.d1, c * a.d2 - s * a.d1 * a.d1};
}
// base^{e} for constant base > 0 and jet exponent
Jet pow_jet(double base, Jet e) {
  const double ln = std::log(base);
  return exp_jet({e.v * ln, e.d1 * ln, e.d2 * ln});
}

constexpr std::array<double, 8> kBernoulli = {
    1.0 / 6.0,  -1.0 / 30.0,     1.0 / 42.0, -1.0 / 30.0,
    5.0 / 66.0, -691.0 / 2730.0, 7.0 / 6.0,  -3617.0 / 510.0};

constexpr int kCutoff = 50;

// Euler-Maclaurin with the jet carrying x as the active variable; x > -2
// keeps the partial sums free of catastrophic cancellation in doubles.
Jet zeta_direct(double x) {
  const Jet s{x, 1.0, 0.0};
  Jet total{0.0, 0.0, 0.0};
  for (int n = 1; n < kCutoff; ++n) {
    total = total + pow_jet(n, -1.0 * s);
  }
  total = total + 0.5 * pow_jet(kCutoff, -1.0 * s);
  // N^{1-s}/(s-1)
  total = total + pow_jet(kCutoff, s * Jet{-1.0, 0.0, 0.0} + Jet{1.0, 0.0, 0.0}) *
                      inverse(s - Jet{1.0, 0.0, 0.0});
  double factorial = 1.0;
  for (int k = 1; k <= static_cast<int>(kBernoulli.size()); ++k) {
    factorial *= (2.0 * k - 1.0) * (2.0 * k);
    Jet poch{1.0, 0.0, 0.0};
    for (int i = 0; i < 2 * k - 1; ++i) {
      poch = poch * (s + Jet{static_cast<double>(i), 0.0, 0.0});
    }
    const Jet tail = pow_jet(kCutoff, -1.0 * s + Jet{static_cast<double>(-(2 * k - 1)), 0.0, 0.0});
    total = total + (kBernoulli[static_cast<size_t>(k - 1)] / factorial) * (poch * tail);
  }
  return total;
}

// ln Gamma(u) for jet u with u.v >= 1: shift by 8 and use the Stirling series.
Jet lgamma_jet(Jet u) {
  Jet shift_log{0.0, 0.0, 0.0};
  for (int j = 0; j < 8; ++j) {
    shift_log = shift_log + log_jet(u + Jet{static_cast<double>(j), 0.0, 0.0});
  }
  const Jet w = u + Jet{8.0, 0.0, 0.0};
  const Jet lw = log_jet(w);
  Jet out = (w - Jet{0.5, 0.0, 0.0}) * lw - w +
            Jet{0.5 * std::log(2.0 * std::numbers::pi), 0.0, 0.0};
  for (int k = 1; k <= static_cast<int>(kBernoulli.size()); ++k) {
    const double c = kBernoulli[static_cast<size_t>(k - 1)] / ((2.0 * k) * (2.0 * k - 1.0));
    out = out + c * exp_jet(static_cast<double>(-(2 * k - 1)) * lw);
  }
  return out - shift_log;
}

Jet zeta_jet(double x) {
  if (x > -2.0) return zeta_direct(x);
  // zeta(x) = 2^x pi^{x-1} sin(pi x/2) Gamma(1-x) zeta(1-x)
  const Jet s{x, 1.0, 0.0};
  const Jet two_pow = pow_jet(2.0, s);
  const Jet pi_pow = pow_jet(std::numbers::pi, s - Jet{1.0, 0.0, 0.0});
  const Jet sine = sin_jet(0.5 * std::numbers::pi * s);
  // Gamma(1-x) and zeta(1-x): chain rule flips odd derivatives
  const Jet refl = zeta_direct(1.0 - x);
  const Jet z_refl{refl.v, -refl.d1, refl.d2};
  Jet lg = lgamma_jet(Jet{1.0 - x, 1.0, 0.0});
  lg = Jet{lg.v, -lg.d1, lg.d2};
  return two_pow * pi_pow * sine * exp_jet(lg);
}

double pick(const Jet& j, int m) {
  switch (m) {
    case 0: return j.v;
    case 1: return j.d1;
    case 2: return j.d2;
    default: throw std::invalid_argument("riemann_zeta_deriv: m must be 0, 1 or 2");
  }
}

// g(x) = x^{-s} (-ln x)^m, the paired summand, and its x-derivative.
double paired_term(double x, double s, int m) {
  double v = std::pow(x, -s);
  for (int i = 0; i < m; ++i) v *= -std::log(x);
  return v;
}

double paired_term_deriv(double x, double s, int m) {
  const double l = -std::log(x);
  double lm1 = 1.0;
  for (int i = 0; i < m - 1; ++i) lm1 *= l;
  const double lm = m > 0 ? lm1 * l : 1.0;
  return -std::pow(x, -s - 1.0) * (s * lm + m * lm1);
}

}  // namespace

double riemann_zeta_deriv(double x, int m) {
  if (m < 0 || m > 2) throw std::invalid_argument("riemann_zeta_deriv: m must be 0, 1 or 2");
  if (x == 1.0) throw std::domain_error("riemann_zeta_deriv: pole at x = 1");
  return pick(zeta_jet(x), m);
}

ZetaEvaluation zeta_diff_deriv(const SpectrumResult& spectrum, double s, int m) {
  if (m < 0 || m > 2) throw std::invalid_argument("zeta_diff_deriv: m must be 0, 1 or 2");
  const int K = spectrum.trusted_count;
  ZetaEvaluation eval;
  eval.s = s;
  eval.deriv_order = m;
  eval.truncation_index = K;

  double lam_max = 1.0;
  for (int k = 1; k <= K; ++k) lam_max = std::max(lam_max, spectrum.lambda(k));

  double total = 0.0;
  std::vector<double> gaps(static_cast<size_t>(K) + 1, 0.0);
  for (int k = 1; k <= K; ++k) {
    const double lam = spectrum.lambda(k);
    const double mu = static_cast<double>(disk_eigenvalue(k));
    if (lam <= 0.0) throw std::domain_error("zeta_diff_deriv: nonpositive trusted eigenvalue");
    total += paired_term(lam, s, m) - paired_term(mu, s, m);
    gaps[static_cast<size_t>(k)] = std::abs(lam - mu);
  }
  eval.value = total;

  // Tail model: |lambda_k - mu_k| decays superpolynomially; fit a geometric
  // law on the last points above the eigenvalue noise floor and integrate
  // it against |g'(mu_k)|.
  const double floor = 1e-12 * lam_max;
  std::vector<std::pair<int, double>> pts;
  for (int k = 3; k <= K; ++k) {
    if (gaps[static_cast<size_t>(k)] > floor) {
      pts.emplace_back(k, std::log(gaps[static_cast<size_t>(k)]));
    }
  }
  if (pts.size() > 20) pts.erase(pts.begin(), pts.end() - 20);
  if (pts.size() < 4) {
    // already at the floor: the true gaps keep decaying below it
    eval.tail_estimate = pts.empty() ? 0.0 : floor;
  } else {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (auto& [xk, yk] : pts) {
      sx += xk;
      sy += yk;
      sxx += static_cast<double>(xk) * xk;
      sxy += xk * yk;
    }
    const double npts = static_cast<double>(pts.size());
    const double q = -(npts * sxy - sx * sy) / (npts * sxx - sx * sx);
    const double c = (sy + q * sx) / npts;
    if (q <= 0.0) {
      std::ostringstream msg;
      msg << "zeta_diff_deriv: eigenvalue pairing gaps are not decaying at K = " << K
          << "; raise N";
      eval.tail_estimate = std::numeric_limits<double>::infinity();
      throw TailToleranceError(msg.str(), eval);
    }
    double tail = 0.0;
    for (int k = K + 1; k <= K + 4000; ++k) {
      const double gap_k = std::exp(c - q * k);
      tail += std::abs(paired_term_deriv(disk_eigenvalue(k), s, m)) * gap_k;
      if (gap_k < 1e-300) break;
    }
    // geometric remainder past the explicit window
    const double last = std::exp(c - q * (K + 4000));
    tail += std::abs(paired_term_deriv(disk_eigenvalue(K + 4000), s, m)) * last /
            std::max(q, 1e-3);
    eval.tail_estimate = tail;
  }

  if (eval.tail_estimate > 1e-6 * std::max(1.0, std::abs(eval.value))) {
    std::ostringstream msg;
    msg << "zeta_diff_deriv: tail estimate " << eval.tail_estimate
        << " above tolerance at s = " << s << ", m = " << m << "; raise N";
    throw TailToleranceError(msg.str(), eval);
  }
  return eval;
}

ZetaEvaluation zeta_diff_deriv(const FourierFunction& a, double s, int m, int N) {
  return zeta_diff_deriv(steklov_spectrum(a, N), s, m);
}

std::vector<ScanRow> convexity_scan(const SpectrumResult& spectrum,
                                    std::span<const double> s_grid) {
  std::vector<ScanRow> rows;
  rows.reserve(s_grid.size());
  for (double s : s_grid) {
    ScanRow row;
    row.s = s;
    const ZetaEvaluation e0 = zeta_diff_deriv(spectrum, s, 0);
    const ZetaEvaluation e1 = zeta_diff_deriv(spectrum, s, 1);
    const ZetaEvaluation e2 = zeta_diff_deriv(spectrum, s, 2);
    row.diff = e0.value;
    row.diff1 = e1.value;
    row.diff2 = e2.value;
    row.tail = std::max({e0.tail_estimate, e1.tail_estimate, e2.tail_estimate});
    rows.push_back(row);
  }
  return rows;
}

std::vector<ScanRow> convexity_scan(const FourierFunction& a, std::span<const double> s_grid,
                                    int N) {
  return convexity_scan(steklov_spectrum(a, N), s_grid);
}

double s0_root() {
  auto g = [](double s) {
    return riemann_zeta_deriv(s - 1.0, 0) + s * riemann_zeta_deriv(s - 1.0, 1);
  };
  double lo = 2.5, hi = 4.0;
  if (!(g(lo) < 0.0 && g(hi) > 0.0)) {
    throw std::logic_error("s0_root: bracket [2.5, 4] lost the sign change");
  }
  for (int it = 0; it < 200 && hi - lo > 1e-14; ++it) {
    const double mid = 0.5 * (lo + hi);
    (g(mid) < 0.0 ? lo : hi) = mid;
  }
  const double root = 0.5 * (lo + hi);
  if (std::abs(g(root)) > 1e-10) {
    throw std::logic_error("s0_root: residual above 1e-10 after bisection");
  }
  return root;
}

double estimate_s_a(const FourierFunction& a, int N) {
  const SpectrumResult spectrum = steklov_spectrum(a, N);
  const double gap = 1.0 - spectrum.lambda(1);
  if (gap < 1e-6) {
    throw std::domain_error(
        "estimate_s_a: weight is numerically conformally equivalent to 1 (no Weinstock gap)");
  }
  constexpr double kStep = 0.25;
  constexpr double kWindow = 10.0;
  constexpr double kMax = 60.0;
  const int total = static_cast<int>(kMax / kStep) + 1;
  std::vector<double> d2(static_cast<size_t>(total));
  for (int i = 0; i < total; ++i) {
    d2[static_cast<size_t>(i)] = zeta_diff_deriv(spectrum, i * kStep, 2).value;
  }
  const int window_pts = static_cast<int>(kWindow / kStep);
  for (int i = 0; i + window_pts < total; ++i) {
    bool all_positive = true;
    for (int j = i; j <= i + window_pts; ++j) {
      if (d2[static_cast<size_t>(j)] <= 0.0) {
        all_positive = false;
        break;
      }
    }
    if (all_positive) return i * kStep;
  }
  throw std::runtime_error("estimate_s_a: no positive window found below s = 60");
}

}  // namespace steklov
