#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "steklov/spectrum.hpp"

using namespace steklov;

TEST_CASE("disk_eigenvalue pairing") {
  CHECK(disk_eigenvalue(0) == 0);
  CHECK(disk_eigenvalue(1) == 1);
  CHECK(disk_eigenvalue(2) == 1);
  CHECK(disk_eigenvalue(6) == 3);
  CHECK_THROWS_AS(disk_eigenvalue(-1), std::invalid_argument);
}

TEST_CASE("steklov_spectrum: the disk") {
  const auto result = steklov_spectrum(FourierFunction::constant(1.0), 32);
  CHECK(result.trusted_count == 32);
  CHECK(result.truncation_order == 32);
  CHECK(result.lambda(0) == 0.0);
  for (int k = 0; k <= result.trusted_count; ++k) {
    CHECK(std::abs(result.lambda(k) - disk_eigenvalue(k)) < 1e-12);
  }
  CHECK(result.tail_residual < 1e-12);

  const auto diffs = pair_differences(result);
  CHECK(diffs.size() == 32);
  for (double d : diffs) CHECK(std::abs(d) < 1e-12);
}

TEST_CASE("steklov_spectrum: conformal image of the disk") {
  // the pulled-back eigenfunctions spread proportionally to the mode
  // number, so the convention trusted_count = N over-trusts here; refine
  // with the doubling test before comparing to the disk
  const auto b = mobius_pullback(FourierFunction::constant(1.0), {Complex(0.3, 0.0)});
  const auto coarse = steklov_spectrum(b, 128);
  const auto fine = steklov_spectrum(b, 256);
  const int refined = agreeing_prefix(coarse, fine, 1e-8);
  CHECK(refined >= 96);
  for (int k = 0; k <= refined; ++k) {
    CHECK(std::abs(coarse.lambda(k) - disk_eigenvalue(k)) < 1e-7);
  }
}

TEST_CASE("steklov_spectrum: pairing gaps decay superpolynomially") {
  const auto a = make_alpha_tau(2, 0.2);
  const auto fine = steklov_spectrum(a, 256);
  const auto result = steklov_spectrum(a, 128);
  // convergence oracle: doubled truncation agrees on the k <= N/2 prefix
  for (int k = 0; k <= 64; ++k) {
    CHECK(std::abs(result.lambda(k) - fine.lambda(k)) < 1e-8);
  }
  // geometric envelope measured in the N=256 study: about a factor 13
  // per 20 indices, below 1e-10 past k = 190
  const auto diffs = pair_differences(fine);
  for (int k = 60; k <= 200; k += 20) {
    CHECK(std::abs(diffs[static_cast<size_t>(k - 1)]) <
          0.2 * std::abs(diffs[static_cast<size_t>(k - 21)]));
  }
  for (int k = 190; k <= fine.trusted_count; ++k) {
    CHECK(std::abs(diffs[static_cast<size_t>(k - 1)]) < 1e-10);
  }
  // Weinstock at the first eigenvalue
  CHECK(diffs[0] < 0.0);
}

TEST_CASE("spectrum invariance under mobius reparametrization") {
  const auto base = normalize(FourierFunction::constant(1.0) + FourierFunction::cosine(1, 0.15) +
                              FourierFunction::cosine(3, 0.2));
  const auto pulled = mobius_pullback(base, {Complex(0.3, 0.2)});
  const int N = 160;
  const auto sa = steklov_spectrum(base, N);
  const auto sb = steklov_spectrum(pulled, N);
  for (int k = 0; k <= 96; ++k) {
    CHECK(std::abs(sa.lambda(k) - sb.lambda(k)) < 1e-6);
  }
}

TEST_CASE("scaling law: spectrum of the normalized weight ignores scale") {
  const auto a = make_alpha_tau(1, 0.15);
  const auto sa = steklov_spectrum(a, 96);
  for (double c : {0.2, 5.0}) {
    const auto sc = steklov_spectrum(normalize(a * c), 96);
    for (int k = 0; k <= sa.trusted_count; ++k) {
      CHECK(std::abs(sa.lambda(k) - sc.lambda(k)) < 1e-10);
    }
  }
}

TEST_CASE("weinstock_gap") {
  CHECK(std::abs(weinstock_gap(FourierFunction::constant(1.0), 32)) < 1e-10);

  const auto b = mobius_pullback(FourierFunction::constant(1.0), {Complex(0.4, 0.0)});
  CHECK(std::abs(weinstock_gap(b, 128)) < 1e-7);

  const double gap = weinstock_gap(make_alpha_tau(1, 0.2), 96);
  CHECK(gap > 0.01);

  // lambda_1 <= 1 across weights
  for (const auto& weight :
       {make_alpha_tau(1, 0.1), make_alpha_tau(2, 0.2), make_alpha_tau(3, 0.05)}) {
    CHECK(weinstock_gap(weight, 128) > -1e-8);
  }
}
