#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include "steklov/spectrum.hpp"

namespace steklov {

/// d^m/dx^m of the Riemann zeta function at real x != 1, m in {0,1,2}.
/// Euler-Maclaurin summation (cutoff 50, eight Bernoulli corrections) for
/// x > -2; the functional equation for x <= -2, where the direct sum loses
/// absolute accuracy to cancellation in double precision.
double riemann_zeta_deriv(double x, int m);

/// Value of (d/ds)^m (zeta_a - 2 zeta_R)(s), summed eigenvalue-by-eigenvalue
/// in the paired order over the trusted prefix.
struct ZetaEvaluation {
  double s = 0.0;
  int deriv_order = 0;
  double value = 0.0;
  int truncation_index = 0;
  double tail_estimate = 0.0;
};

/// Raised when the extrapolated tail exceeds the acceptance tolerance
/// 1e-6 * max(1, |value|); the fix is a larger truncation order.
class TailToleranceError : public std::runtime_error {
 public:
  TailToleranceError(const std::string& what, ZetaEvaluation rejected)
      : std::runtime_error(what), evaluation(rejected) {}
  ZetaEvaluation evaluation;
};

ZetaEvaluation zeta_diff_deriv(const SpectrumResult& spectrum, double s, int m);
ZetaEvaluation zeta_diff_deriv(const FourierFunction& a, double s, int m, int N);

struct ScanRow {
  double s = 0.0;
  double diff = 0.0;
  double diff1 = 0.0;
  double diff2 = 0.0;
  double tail = 0.0;
};

/// diff, diff', diff'' of zeta_a - 2 zeta_R on a grid of real s values,
/// all from one shared spectrum.
std::vector<ScanRow> convexity_scan(const FourierFunction& a, std::span<const double> s_grid,
                                    int N);
std::vector<ScanRow> convexity_scan(const SpectrumResult& spectrum,
                                    std::span<const double> s_grid);

/// Smallest root s0 > 2 of g(s) = zeta_R(s-1) + s zeta_R'(s-1), by bisection
/// on the sign change in (3, 4); |g(s0)| < 1e-10.
double s0_root();

/// Smallest grid point (step 0.25) past which diff'' stays positive on a
/// 10-wide window. Requires weinstock_gap(a) above tolerance: the leading
/// large-s term lambda_1^{-s} ln^2(lambda_1) needs lambda_1 < 1.
double estimate_s_a(const FourierFunction& a, int N);

}  // namespace steklov
