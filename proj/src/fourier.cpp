#include "steklov/fourier.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace steklov {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kPositivityMargin = 1e-10;

// FFTW planning is not thread safe; execution on per-thread buffers is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct PlanEntry {
  int n = 0;
  fftw_complex* in = nullptr;
  fftw_complex* out = nullptr;
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;

  explicit PlanEntry(int size) : n(size) {
    std::lock_guard<std::mutex> lock(planner_mutex());
    in = fftw_alloc_complex(static_cast<size_t>(n));
    out = fftw_alloc_complex(static_cast<size_t>(n));
    fwd = fftw_plan_dft_1d(n, in, out, FFTW_FORWARD, FFTW_ESTIMATE);
    bwd = fftw_plan_dft_1d(n, in, out, FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  PlanEntry(const PlanEntry&) = delete;
  PlanEntry& operator=(const PlanEntry&) = delete;
  ~PlanEntry() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(fwd);
    fftw_destroy_plan(bwd);
    fftw_free(in);
    fftw_free(out);
  }
};

PlanEntry& plan_for(int n) {
  thread_local std::map<int, std::unique_ptr<PlanEntry>> cache;
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<PlanEntry>(n);
  return *slot;
}

// Natural-order coefficients (k = -M..M at index k+M) from n samples;
// n arbitrary, band M = (n-1)/2 rounded down for even n.
std::vector<Complex> dft_forward(std::span<const Complex> samples) {
  const int n = static_cast<int>(samples.size());
  PlanEntry& plan = plan_for(n);
  std::copy(samples.begin(), samples.end(), reinterpret_cast<Complex*>(plan.in));
  fftw_execute_dft(plan.fwd, plan.in, plan.out);
  const Complex* raw = reinterpret_cast<const Complex*>(plan.out);
  const int M = (n - 1) / 2;
  std::vector<Complex> coeffs(static_cast<size_t>(2 * M + 1));
  for (int k = -M; k <= M; ++k) {
    coeffs[static_cast<size_t>(k + M)] = raw[(k % n + n) % n] / static_cast<double>(n);
  }
  return coeffs;
}

// n samples from natural-order coefficients; requires n >= coeffs.size().
std::vector<Complex> dft_synthesize(std::span<const Complex> coeffs, int n) {
  const int size = static_cast<int>(coeffs.size());
  if (n < size) throw std::logic_error("dft_synthesize: target grid smaller than band");
  const int M = (size - 1) / 2;
  PlanEntry& plan = plan_for(n);
  Complex* in = reinterpret_cast<Complex*>(plan.in);
  std::fill(in, in + n, Complex(0.0, 0.0));
  for (int k = -M; k <= M; ++k) {
    in[(k % n + n) % n] = coeffs[static_cast<size_t>(k + M)];
  }
  fftw_execute_dft(plan.bwd, plan.in, plan.out);
  const Complex* raw = reinterpret_cast<const Complex*>(plan.out);
  return std::vector<Complex>(raw, raw + n);
}

}  // namespace

namespace detail {

int next_fft_size(int n) {
  auto smooth = [](int v) {
    for (int p : {2, 3, 5, 7}) {
      while (v % p == 0) v /= p;
    }
    return v == 1;
  };
  while (!smooth(n)) ++n;
  return n;
}

int next_odd_fft_size(int n) {
  if (n % 2 == 0) ++n;
  auto smooth = [](int v) {
    for (int p : {3, 5, 7}) {
      while (v % p == 0) v /= p;
    }
    return v == 1;
  };
  while (!smooth(n)) n += 2;
  return n;
}

}  // namespace detail

using detail::next_fft_size;
using detail::next_odd_fft_size;

FourierFunction::FourierFunction(std::vector<Complex> coeffs) {
  if (coeffs.empty() || coeffs.size() % 2 == 0) {
    throw std::invalid_argument("FourierFunction: coefficient count must be odd");
  }
  order_ = static_cast<int>((coeffs.size() - 1) / 2);
  coeffs_ = std::move(coeffs);
}

FourierFunction FourierFunction::constant(double value) {
  return FourierFunction(std::vector<Complex>{Complex(value, 0.0)});
}

FourierFunction FourierFunction::cosine(int k, double amplitude) {
  if (k < 0) throw std::invalid_argument("cosine: k must be nonnegative");
  std::vector<Complex> c(static_cast<size_t>(2 * k + 1), Complex(0.0, 0.0));
  if (k == 0) {
    c[0] = amplitude;
  } else {
    c.front() = amplitude / 2.0;
    c.back() = amplitude / 2.0;
  }
  return FourierFunction(std::move(c));
}

FourierFunction FourierFunction::mode(int k, Complex amplitude) {
  const int M = std::abs(k);
  std::vector<Complex> c(static_cast<size_t>(2 * M + 1), Complex(0.0, 0.0));
  c[static_cast<size_t>(k + M)] = amplitude;
  return FourierFunction(std::move(c));
}

FourierFunction FourierFunction::from_samples(std::span<const double> values) {
  if (values.empty() || values.size() % 2 == 0) {
    throw std::invalid_argument("from_samples: sample count must be odd");
  }
  std::vector<Complex> buf(values.size());
  for (size_t j = 0; j < values.size(); ++j) {
    if (!std::isfinite(values[j])) {
      std::ostringstream msg;
      msg << "from_samples: non-finite value at node " << j;
      throw std::invalid_argument(msg.str());
    }
    buf[j] = Complex(values[j], 0.0);
  }
  std::vector<Complex> coeffs = dft_forward(buf);
  // real input: enforce the Hermitian pairing exactly
  const int M = static_cast<int>((coeffs.size() - 1) / 2);
  for (int k = 1; k <= M; ++k) {
    const Complex avg = 0.5 * (coeffs[static_cast<size_t>(M + k)] +
                               std::conj(coeffs[static_cast<size_t>(M - k)]));
    coeffs[static_cast<size_t>(M + k)] = avg;
    coeffs[static_cast<size_t>(M - k)] = std::conj(avg);
  }
  coeffs[static_cast<size_t>(M)] = Complex(coeffs[static_cast<size_t>(M)].real(), 0.0);
  return FourierFunction(std::move(coeffs));
}

FourierFunction FourierFunction::from_complex_samples(std::span<const Complex> values) {
  if (values.empty() || values.size() % 2 == 0) {
    throw std::invalid_argument("from_complex_samples: sample count must be odd");
  }
  for (size_t j = 0; j < values.size(); ++j) {
    if (!std::isfinite(values[j].real()) || !std::isfinite(values[j].imag())) {
      std::ostringstream msg;
      msg << "from_complex_samples: non-finite value at node " << j;
      throw std::invalid_argument(msg.str());
    }
  }
  return FourierFunction(dft_forward(values));
}

Complex FourierFunction::coeff(int k) const {
  if (std::abs(k) > order_) return Complex(0.0, 0.0);
  return coeffs_[static_cast<size_t>(k + order_)];
}

void FourierFunction::set_coeff(int k, Complex value) {
  if (std::abs(k) > order_) throw std::out_of_range("set_coeff: index outside band");
  coeffs_[static_cast<size_t>(k + order_)] = value;
}

Complex FourierFunction::evaluate(double theta) const {
  Complex acc(0.0, 0.0);
  for (int k = -order_; k <= order_; ++k) {
    acc += coeffs_[static_cast<size_t>(k + order_)] * std::polar(1.0, k * theta);
  }
  return acc;
}

std::vector<Complex> FourierFunction::sampled(int n) const {
  if (n < size()) throw std::invalid_argument("sampled: grid smaller than band");
  return dft_synthesize(coeffs_, n);
}

std::vector<double> FourierFunction::sampled_real(int n) const {
  std::vector<Complex> vals = sampled(n);
  std::vector<double> out(vals.size());
  for (size_t i = 0; i < vals.size(); ++i) out[i] = vals[i].real();
  return out;
}

double FourierFunction::min_real(int n) const {
  if (n == 0) n = next_fft_size(std::max(2 * size() + 1, 513));
  std::vector<double> vals = sampled_real(n);
  return *std::min_element(vals.begin(), vals.end());
}

double FourierFunction::max_real(int n) const {
  if (n == 0) n = next_fft_size(std::max(2 * size() + 1, 513));
  std::vector<double> vals = sampled_real(n);
  return *std::max_element(vals.begin(), vals.end());
}

bool FourierFunction::is_real(double tol) const {
  double scale = 0.0;
  for (const Complex& c : coeffs_) scale = std::max(scale, std::abs(c));
  const double bound = tol * std::max(1.0, scale);
  for (int k = 0; k <= order_; ++k) {
    if (std::abs(coeff(k) - std::conj(coeff(-k))) > bound) return false;
  }
  return true;
}

FourierFunction FourierFunction::realified() const {
  std::vector<Complex> c(coeffs_.size());
  for (int k = -order_; k <= order_; ++k) {
    c[static_cast<size_t>(k + order_)] = 0.5 * (coeff(k) + std::conj(coeff(-k)));
  }
  return FourierFunction(std::move(c));
}

FourierFunction FourierFunction::truncated(int M) const {
  if (M < 0) throw std::invalid_argument("truncated: negative order");
  std::vector<Complex> c(static_cast<size_t>(2 * M + 1), Complex(0.0, 0.0));
  for (int k = -std::min(M, order_); k <= std::min(M, order_); ++k) {
    c[static_cast<size_t>(k + M)] = coeff(k);
  }
  return FourierFunction(std::move(c));
}

int FourierFunction::effective_bandwidth(double rel_tol) const {
  double scale = 0.0;
  for (const Complex& c : coeffs_) scale = std::max(scale, std::abs(c));
  if (scale == 0.0) return 0;
  for (int k = order_; k >= 1; --k) {
    if (std::abs(coeff(k)) > rel_tol * scale || std::abs(coeff(-k)) > rel_tol * scale) {
      return k;
    }
  }
  return 0;
}

FourierFunction& FourierFunction::operator*=(double scale) {
  for (Complex& c : coeffs_) c *= scale;
  return *this;
}

FourierFunction& FourierFunction::operator+=(const FourierFunction& other) {
  if (other.order_ > order_) *this = truncated(other.order_);
  for (int k = -other.order_; k <= other.order_; ++k) {
    coeffs_[static_cast<size_t>(k + order_)] += other.coeff(k);
  }
  return *this;
}

FourierFunction& FourierFunction::operator-=(const FourierFunction& other) {
  if (other.order_ > order_) *this = truncated(other.order_);
  for (int k = -other.order_; k <= other.order_; ++k) {
    coeffs_[static_cast<size_t>(k + order_)] -= other.coeff(k);
  }
  return *this;
}

FourierFunction pointwise_power(const FourierFunction& f, double p) {
  if (!f.is_real()) throw std::invalid_argument("pointwise_power: function must be real-valued");
  // Evaluate on an oversampled grid and keep the alias-clean half of the
  // band; grow the grid until the kept band has absorbed the decay of the
  // result (powers of band-limited functions are not band-limited).
  int n = next_odd_fft_size(std::max(4 * f.grid_order() + 5, 129));
  for (int attempt = 0;; ++attempt) {
    std::vector<double> vals = f.sampled_real(n);
    for (size_t j = 0; j < vals.size(); ++j) {
      if (vals[j] <= kPositivityMargin) {
        std::ostringstream msg;
        msg << "pointwise_power: non-positive sample " << vals[j] << " at node " << j << " of "
            << n;
        throw std::domain_error(msg.str());
      }
    }
    for (double& v : vals) v = std::pow(v, p);
    const FourierFunction full = FourierFunction::from_samples(vals);
    const int capacity = full.grid_order();
    const int kept = capacity / 2;
    double scale = 0.0, tail = 0.0;
    for (int k = 0; k <= capacity; ++k) {
      scale = std::max(scale, std::abs(full.coeff(k)));
      if (k > kept) tail = std::max(tail, std::abs(full.coeff(k)));
    }
    if (tail <= 1e-15 * scale || attempt >= 6) {
      const FourierFunction trimmed = full.truncated(kept);
      return trimmed.truncated(std::max(trimmed.effective_bandwidth(1e-15), 1));
    }
    n = next_odd_fft_size(2 * n);
  }
}

double inverse_mean(const FourierFunction& a) {
  if (!a.is_real()) throw std::invalid_argument("inverse_mean: weight must be real-valued");
  const int n = next_fft_size(std::max(4 * a.size() + 1, 257));
  std::vector<double> vals = a.sampled_real(n);
  double acc = 0.0;
  for (size_t j = 0; j < vals.size(); ++j) {
    if (vals[j] <= kPositivityMargin) {
      std::ostringstream msg;
      msg << "inverse_mean: non-positive sample " << vals[j] << " at node " << j;
      throw std::domain_error(msg.str());
    }
    acc += 1.0 / vals[j];
  }
  return acc / static_cast<double>(n);
}

double normalization_residual(const FourierFunction& a) {
  return std::abs(inverse_mean(a) - 1.0);
}

FourierFunction normalize(const FourierFunction& a) {
  FourierFunction out = a;
  out *= inverse_mean(a);
  return out;
}

FourierFunction hilbert_transform(const FourierFunction& f) {
  const int M = f.grid_order();
  std::vector<Complex> c(static_cast<size_t>(2 * M + 1), Complex(0.0, 0.0));
  for (int k = 1; k <= M; ++k) {
    c[static_cast<size_t>(k + M)] = f.coeff(k);
    c[static_cast<size_t>(-k + M)] = -f.coeff(-k);
  }
  return FourierFunction(std::move(c));
}

FourierFunction mobius_pullback(const FourierFunction& a, const MobiusMap& map) {
  if (!a.is_real()) throw std::invalid_argument("mobius_pullback: weight must be real-valued");
  const double aw = std::abs(map.w);
  if (aw >= 1.0) throw std::domain_error("mobius_pullback: |w| must be < 1");
  const bool anti = map.orientation == MobiusMap::Orientation::anticonformal;

  const double growth = (1.0 + aw) / (1.0 - aw);
  const int n = next_odd_fft_size(
      std::max(513, 4 * static_cast<int>(std::ceil((a.grid_order() + 9) * growth))));
  std::vector<double> b(static_cast<size_t>(n));
  double psi_prev = 0.0;
  for (int j = 0; j < n; ++j) {
    const double theta = kTwoPi * j / n;
    const Complex z = std::polar(1.0, anti ? -theta : theta);
    const Complex t = (z - map.w) / (1.0 - std::conj(map.w) * z);
    double psi = std::arg(t);
    if (j == 0) {
      psi_prev = psi;
    } else {
      // continuous unwrap from theta = 0
      double delta = psi - std::fmod(psi_prev, kTwoPi);
      delta -= kTwoPi * std::round(delta / kTwoPi);
      psi = psi_prev + delta;
    }
    psi_prev = psi;
    const double dpsi = (1.0 - aw * aw) / std::norm(1.0 - std::conj(map.w) * z);
    b[static_cast<size_t>(j)] = a.evaluate(psi).real() / dpsi;
  }
  FourierFunction full = FourierFunction::from_samples(b);
  const int M_out = std::max(full.effective_bandwidth(1e-15), 1);
  return full.truncated(M_out);
}

FourierFunction make_alpha_tau(int r, double tau) {
  if (r < 1) throw std::invalid_argument("make_alpha_tau: r must be a positive integer");
  if (std::abs(tau) >= 0.5) {
    throw std::domain_error("make_alpha_tau: |tau| >= 1/2 loses positivity");
  }
  const int mode = 2 * r + 1;
  int order = 4 * mode;
  if (tau != 0.0) {
    const double at = std::abs(tau);
    const double q = (1.0 - std::sqrt(1.0 - 4.0 * at * at)) / (2.0 * at);
    const int harmonics =
        std::max(4, static_cast<int>(std::ceil(std::log(1e-17) / std::log(q))));
    order = std::min(mode * harmonics, 4096);
  }
  const int n = 2 * order + 1;
  std::vector<double> vals(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j) {
    const double theta = kTwoPi * j / n;
    vals[static_cast<size_t>(j)] = 1.0 / (1.0 - 2.0 * tau * std::cos(mode * theta));
  }
  return FourierFunction::from_samples(vals);
}

FourierFunction pointwise_product(const FourierFunction& f, const FourierFunction& g) {
  const int M_out = f.grid_order() + g.grid_order();
  const int n = next_odd_fft_size(2 * M_out + 1);
  const std::vector<Complex> fv = f.sampled(n);
  const std::vector<Complex> gv = g.sampled(n);
  std::vector<Complex> prod(fv.size());
  for (size_t j = 0; j < prod.size(); ++j) prod[j] = fv[j] * gv[j];
  return FourierFunction::from_complex_samples(prod).truncated(M_out);
}

double sup_distance(const FourierFunction& f, const FourierFunction& g) {
  const int n = next_fft_size(2 * std::max(f.size(), g.size()) + 255);
  std::vector<Complex> fv = f.sampled(n);
  std::vector<Complex> gv = g.sampled(n);
  double sup = 0.0;
  for (int j = 0; j < n; ++j) {
    sup = std::max(sup, std::abs(fv[static_cast<size_t>(j)] - gv[static_cast<size_t>(j)]));
  }
  return sup;
}

}  // namespace steklov
