#pragma once

#include <complex>
#include <span>
#include <vector>

namespace steklov {

using Complex = std::complex<double>;

/// Function on the unit circle stored as a truncated Fourier series,
/// coefficients indexed k = -M..M with M = grid_order(). Real-valued
/// functions (the usual case: weights a, perturbations beta) satisfy the
/// Hermitian symmetry c_{-k} = conj(c_k); the Hilbert transform produces
/// genuinely complex coefficient sets, so the symmetry is not a class
/// invariant but can be queried with is_real().
class FourierFunction {
 public:
  FourierFunction() : order_(0), coeffs_(1, Complex(0.0, 0.0)) {}

  /// coeffs.size() must be odd; index i holds the coefficient of
  /// e^{i(i-M)theta} with M = (size-1)/2.
  explicit FourierFunction(std::vector<Complex> coeffs);

  static FourierFunction constant(double value);
  /// amplitude * cos(k theta)
  static FourierFunction cosine(int k, double amplitude);
  /// single complex mode: amplitude * e^{ik theta}
  static FourierFunction mode(int k, Complex amplitude);

  /// Forward DFT of real samples at the 2M+1 uniform angles 2*pi*j/(2M+1).
  /// The sample count must be odd and every value finite.
  static FourierFunction from_samples(std::span<const double> values);
  /// Forward DFT of complex samples; no symmetry is enforced.
  static FourierFunction from_complex_samples(std::span<const Complex> values);

  int grid_order() const { return order_; }
  int size() const { return 2 * order_ + 1; }
  /// Coefficient of e^{ik theta}; zero outside the stored band.
  Complex coeff(int k) const;
  void set_coeff(int k, Complex value);

  Complex evaluate(double theta) const;
  double operator()(double theta) const { return evaluate(theta).real(); }

  /// Values at n uniform nodes (n >= size) via zero-padded inverse DFT.
  std::vector<Complex> sampled(int n) const;
  std::vector<double> sampled_real(int n) const;
  /// Values at the native 2M+1 nodes.
  std::vector<double> grid_values() const { return sampled_real(size()); }

  double min_real(int n = 0) const;
  double max_real(int n = 0) const;
  /// c_0, which equals (1/2pi) \int f for the stored series.
  Complex mean() const { return coeff(0); }

  bool is_real(double tol = 1e-12) const;
  /// Symmetrize c_{-k} <- conj(c_k) average and drop imaginary dust.
  FourierFunction realified() const;
  FourierFunction truncated(int M) const;
  /// Largest |k| with |c_k| > rel_tol * max|c|; 0 for the zero function.
  int effective_bandwidth(double rel_tol = 1e-12) const;

  FourierFunction& operator*=(double scale);
  FourierFunction& operator+=(const FourierFunction& other);
  FourierFunction& operator-=(const FourierFunction& other);
  friend FourierFunction operator*(FourierFunction f, double s) { return f *= s; }
  friend FourierFunction operator*(double s, FourierFunction f) { return f *= s; }
  friend FourierFunction operator+(FourierFunction a, const FourierFunction& b) { return a += b; }
  friend FourierFunction operator-(FourierFunction a, const FourierFunction& b) { return a -= b; }

 private:
  int order_;
  std::vector<Complex> coeffs_;
};

/// Disk automorphism parameter for conformal reparametrizations of the circle.
struct MobiusMap {
  enum class Orientation { conformal, anticonformal };
  Complex w;
  Orientation orientation = Orientation::conformal;
};

/// theta -> f(theta)^p for strictly positive f, evaluated on a 2x
/// oversampled grid and transformed back (band doubles).
FourierFunction pointwise_power(const FourierFunction& f, double p);

/// (1/2pi) \int a^{-1} d(theta), by trapezoid on an oversampled uniform grid.
double inverse_mean(const FourierFunction& a);
/// |inverse_mean(a) - 1|
double normalization_residual(const FourierFunction& a);
/// a * inverse_mean(a); the result has inverse mean 1 (perimeter
/// normalization of the weight).
FourierFunction normalize(const FourierFunction& a);

/// Fourier multiplier sgn(k); kills the mean.
FourierFunction hilbert_transform(const FourierFunction& f);

/// b = |dpsi/dtheta|^{-1} a(psi) for the disk automorphism
/// Psi_w(z) = (z-w)/(1 - conj(w) z), with psi the continuous argument of
/// Psi_w(e^{i theta}); anticonformal maps compose with conjugation.
/// Preserves the normalization residual.
FourierFunction mobius_pullback(const FourierFunction& a, const MobiusMap& map);

/// alpha_tau(theta) = (1 - 2 tau cos((2r+1) theta))^{-1}; requires |tau| < 1/2.
/// Exactly satisfies the perimeter normalization.
FourierFunction make_alpha_tau(int r, double tau);

/// Exact (dealiased) pointwise product; the band is the sum of the bands.
FourierFunction pointwise_product(const FourierFunction& f, const FourierFunction& g);

/// max |f - g| over a dense common grid.
double sup_distance(const FourierFunction& f, const FourierFunction& g);

namespace detail {
/// Smallest 7-smooth size >= n (keeps FFTW off large primes).
int next_fft_size(int n);
/// Smallest odd 7-smooth size >= n.
int next_odd_fft_size(int n);
}  // namespace detail

}  // namespace steklov
