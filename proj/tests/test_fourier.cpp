#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "steklov/fourier.hpp"

using namespace steklov;

namespace {
constexpr double kPi = std::numbers::pi;

std::vector<double> sample_closed_form(int n, auto&& f) {
  std::vector<double> v(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j) v[static_cast<size_t>(j)] = f(2.0 * kPi * j / n);
  return v;
}
}  // namespace

TEST_CASE("from_samples: constant and single cosine") {
  const auto c = FourierFunction::from_samples(std::vector<double>(9, 1.0));
  CHECK(c.coeff(0).real() == doctest::Approx(1.0).epsilon(1e-14));
  for (int k = 1; k <= 4; ++k) {
    CHECK(std::abs(c.coeff(k)) < 1e-14);
  }

  const auto cosv = sample_closed_form(9, [](double t) { return std::cos(t); });
  const auto f = FourierFunction::from_samples(cosv);
  CHECK(f.coeff(1).real() == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(f.coeff(-1).real() == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(std::abs(f.coeff(0)) < 1e-15);
  CHECK(std::abs(f.coeff(2)) < 1e-15);
}

TEST_CASE("from_samples: analytic weight, geometric decay and round trip") {
  auto w = [](double t) { return 1.0 / (1.0 - 0.2 * std::cos(3.0 * t)); };
  const int n = 61;
  const auto f = FourierFunction::from_samples(sample_closed_form(n, w));

  // high-resolution reference transform as the oracle; the outermost
  // coefficients of the coarse transform carry the first alias image
  const auto ref = FourierFunction::from_samples(sample_closed_form(257, w));
  for (int k = -24; k <= 24; ++k) {
    CHECK(std::abs(f.coeff(k) - ref.coeff(k)) < 1e-12);
  }
  // geometric decay across the harmonics of cos(3 theta)
  CHECK(std::abs(ref.coeff(6)) < 0.2 * std::abs(ref.coeff(3)));
  CHECK(std::abs(ref.coeff(9)) < 0.2 * std::abs(ref.coeff(6)));

  const auto values = f.grid_values();
  const auto inputs = sample_closed_form(n, w);
  for (size_t j = 0; j < values.size(); ++j) {
    CHECK(std::abs(values[j] - inputs[j]) < 1e-12);
  }
}

TEST_CASE("from_samples: rejects bad input") {
  CHECK_THROWS_AS(FourierFunction::from_samples(std::vector<double>(8, 1.0)),
                  std::invalid_argument);
  std::vector<double> bad(9, 1.0);
  bad[4] = std::nan("");
  CHECK_THROWS_AS(FourierFunction::from_samples(bad), std::invalid_argument);
}

TEST_CASE("pointwise_power: constants, exact inverse, off-grid oracle") {
  const auto two = pointwise_power(FourierFunction::constant(4.0), 0.5);
  CHECK(two.coeff(0).real() == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(two.effective_bandwidth() == 0);

  // (1 - 2 tau cos(11 theta))^{-1} inverted back to three coefficients
  const auto alpha = make_alpha_tau(5, 0.1);
  const auto inv = pointwise_power(alpha, -1.0);
  CHECK(inv.coeff(0).real() == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(inv.coeff(11).real() == doctest::Approx(-0.1).epsilon(1e-12));
  CHECK(inv.coeff(-11).real() == doctest::Approx(-0.1).epsilon(1e-12));
  for (int k = 1; k <= inv.grid_order(); ++k) {
    if (k == 11) continue;
    CHECK(std::abs(inv.coeff(k)) < 1e-13);
  }

  const auto base = FourierFunction::constant(1.0) + FourierFunction::cosine(1, 0.3);
  const auto root = pointwise_power(base, 0.5);
  for (int i = 0; i < 64; ++i) {
    const double theta = 2.0 * kPi * (i + 0.37) / 64.0;
    CHECK(std::abs(root(theta) - std::sqrt(1.0 + 0.3 * std::cos(theta))) < 1e-10);
  }

  CHECK_THROWS_AS(pointwise_power(FourierFunction::cosine(1, 2.0), 0.5), std::domain_error);
}

TEST_CASE("pointwise_power round trips") {
  const auto base = FourierFunction::constant(1.0) + FourierFunction::cosine(1, 0.3);
  const auto alpha = make_alpha_tau(1, 0.1);
  for (double p : {2.0, 0.5, -1.0}) {
    CHECK(sup_distance(pointwise_power(pointwise_power(base, p), 1.0 / p), base) < 1e-9);
    CHECK(sup_distance(pointwise_power(pointwise_power(alpha, p), 1.0 / p), alpha) < 1e-9);
  }
}

TEST_CASE("normalize: constants, fixed point, closed-form mean") {
  CHECK(sup_distance(normalize(FourierFunction::constant(7.3)), FourierFunction::constant(1.0)) <
        1e-14);

  const auto alpha = make_alpha_tau(2, 0.17);
  CHECK(sup_distance(normalize(alpha), alpha) < 1e-13);

  // mean of (1 + b cos)^{-1} is 1/sqrt(1-b^2)
  const auto f = FourierFunction::constant(1.0) + FourierFunction::cosine(1, 0.3);
  const double mu = 1.0 / std::sqrt(1.0 - 0.09);
  const auto g = normalize(f);
  CHECK(sup_distance(g, f * mu) < 1e-12);
  CHECK(normalization_residual(g) < 1e-12);

  const auto again = normalize(g);
  CHECK(sup_distance(again, g) < 1e-12);

  CHECK_THROWS_AS(normalize(FourierFunction::cosine(2, 1.0)), std::domain_error);
}

TEST_CASE("hilbert_transform: multiplier action") {
  const auto zero = hilbert_transform(FourierFunction::constant(1.0));
  CHECK(std::abs(zero.coeff(0)) == 0.0);

  const auto e3 = FourierFunction::mode(3, Complex(1.0, 0.0));
  const auto he3 = hilbert_transform(e3);
  CHECK(std::abs(he3.coeff(3) - Complex(1.0, 0.0)) < 1e-15);

  const auto hcos = hilbert_transform(FourierFunction::cosine(1, 1.0));
  // i sin(theta) = (e^{i theta} - e^{-i theta})/2
  CHECK(std::abs(hcos.coeff(1) - Complex(0.5, 0.0)) < 1e-15);
  CHECK(std::abs(hcos.coeff(-1) - Complex(-0.5, 0.0)) < 1e-15);
}

TEST_CASE("hilbert_transform twice = identity minus mean") {
  std::mt19937 rng(42);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  std::vector<double> vals(33);
  for (double& v : vals) v = unif(rng);
  const auto f = FourierFunction::from_samples(vals);
  const auto hh = hilbert_transform(hilbert_transform(f));
  auto expected = f;
  expected.set_coeff(0, Complex(0.0, 0.0));
  CHECK(sup_distance(hh, expected) < 1e-12);
}

TEST_CASE("mobius_pullback: identity map, closed form at a = 1") {
  const auto alpha = make_alpha_tau(1, 0.2);
  const auto same = mobius_pullback(alpha, {Complex(0.0, 0.0)});
  CHECK(sup_distance(same, alpha) < 1e-12);

  const auto b = mobius_pullback(FourierFunction::constant(1.0), {Complex(0.3, 0.0)});
  for (int i = 0; i < 32; ++i) {
    const double theta = 2.0 * kPi * i / 32.0;
    const double expected = std::norm(1.0 - 0.3 * std::polar(1.0, theta)) / 0.91;
    CHECK(std::abs(b(theta) - expected) < 1e-12);
  }
  CHECK(normalization_residual(b) < 1e-12);

  CHECK_THROWS_AS(mobius_pullback(alpha, {Complex(1.0, 0.2)}), std::domain_error);
}

TEST_CASE("mobius_pullback: preserves normalization, anticonformal reflects") {
  const auto alpha = make_alpha_tau(1, 0.2);
  const auto b = mobius_pullback(alpha, {Complex(0.2, 0.1)});
  CHECK(normalization_residual(b) < 1e-12);

  const auto refl = mobius_pullback(alpha, {Complex(0.0, 0.0),
                                            MobiusMap::Orientation::anticonformal});
  for (int i = 0; i < 16; ++i) {
    const double theta = 2.0 * kPi * i / 16.0;
    CHECK(std::abs(refl(theta) - alpha(-theta)) < 1e-12);
  }
}

TEST_CASE("make_alpha_tau: closed-form extrema and tau derivative") {
  const auto one = make_alpha_tau(3, 0.0);
  CHECK(sup_distance(one, FourierFunction::constant(1.0)) < 1e-14);

  const auto alpha = make_alpha_tau(1, 0.1);
  CHECK(alpha.min_real(4096) == doctest::Approx(1.0 / 1.2).epsilon(1e-10));
  CHECK(alpha.max_real(4096) == doctest::Approx(1.25).epsilon(1e-10));
  CHECK(normalization_residual(alpha) < 1e-14);

  const double h = 1e-5;
  const auto plus = make_alpha_tau(2, h);
  const auto minus = make_alpha_tau(2, -h);
  const auto fd = (plus - minus) * (1.0 / (2.0 * h));
  const auto beta = FourierFunction::cosine(5, 2.0);
  CHECK(sup_distance(fd, beta) < 1e-8);

  CHECK_THROWS_AS(make_alpha_tau(1, 0.5), std::domain_error);
  CHECK_THROWS_AS(make_alpha_tau(0, 0.1), std::invalid_argument);
}

TEST_CASE("pointwise_product: trig identity") {
  const auto c = FourierFunction::cosine(1, 1.0);
  const auto prod = pointwise_product(c, c);
  const auto expected = FourierFunction::constant(0.5) + FourierFunction::cosine(2, 0.5);
  CHECK(sup_distance(prod, expected) < 1e-14);
}
