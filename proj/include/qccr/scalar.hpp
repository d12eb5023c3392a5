#pragma once

// Coefficient rings for the Wick engine.
//
// Exact mode: rational functions of an indeterminate q with Gaussian-rational
// coefficients. Float mode: std::complex<double> with a fixed numeric q.

#include <gmpxx.h>

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace qccr {

using Complex = std::complex<double>;

/// Correctly rounded (nearest, ties-to-even) conversion of an exact rational.
double to_double(const mpq_class& x);

class GaussianRational {
 public:
  GaussianRational() = default;
  GaussianRational(long n) : re_(n) {}  // NOLINT(google-explicit-constructor)
  GaussianRational(mpq_class re, mpq_class im = 0);

  /// Exact binary value of the doubles.
  static GaussianRational from_double(double re, double im = 0.0);
  static GaussianRational from_complex(Complex z) { return from_double(z.real(), z.imag()); }

  const mpq_class& re() const { return re_; }
  const mpq_class& im() const { return im_; }
  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }
  bool is_one() const { return re_ == 1 && sgn(im_) == 0; }

  GaussianRational conj() const { return {re_, -im_}; }
  Complex to_complex() const { return {to_double(re_), to_double(im_)}; }

  GaussianRational operator-() const { return {-re_, -im_}; }
  GaussianRational& operator+=(const GaussianRational& o);
  GaussianRational& operator-=(const GaussianRational& o);
  GaussianRational& operator*=(const GaussianRational& o);
  GaussianRational& operator/=(const GaussianRational& o);
  /// *this += a * b without temporaries.
  void add_product(const GaussianRational& a, const GaussianRational& b);
  void sub_product(const GaussianRational& a, const GaussianRational& b);

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

 private:
  mpq_class re_{0};
  mpq_class im_{0};
};

/// Dense polynomial in q, coefficients low to high, no trailing zeros.
class QPolynomial {
 public:
  QPolynomial() = default;
  QPolynomial(GaussianRational c);  // NOLINT(google-explicit-constructor)
  explicit QPolynomial(std::vector<GaussianRational> coeffs);

  static QPolynomial monomial(GaussianRational c, int power);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<GaussianRational>& coefficients() const { return coeffs_; }
  const GaussianRational& operator[](std::size_t k) const { return coeffs_[k]; }
  std::size_t size() const { return coeffs_.size(); }

  /// Number of leading (low-order) zero coefficients.
  int low_order() const;

  QPolynomial shifted(int k) const;  // times q^k, k >= 0
  QPolynomial conj() const;
  QPolynomial reversed(int n) const;  // q^n p(1/q), n >= degree()
  Complex evaluate(Complex q) const;

  QPolynomial& operator+=(const QPolynomial& o);
  QPolynomial& operator-=(const QPolynomial& o);
  QPolynomial operator-() const;
  friend QPolynomial operator+(QPolynomial a, const QPolynomial& b) { return a += b; }
  friend QPolynomial operator-(QPolynomial a, const QPolynomial& b) { return a -= b; }
  friend QPolynomial operator*(const QPolynomial& a, const QPolynomial& b);
  QPolynomial& operator*=(const GaussianRational& c);
  friend bool operator==(const QPolynomial& a, const QPolynomial& b) { return a.coeffs_ == b.coeffs_; }

  /// Quotient if `divisor` (monic) divides exactly, otherwise false.
  bool divide_exact_monic(const QPolynomial& divisor, QPolynomial& quotient) const;

 private:
  void trim();
  std::vector<GaussianRational> coeffs_;
};

/// Phi_n(q) with integer coefficients; cached.
const QPolynomial& cyclotomic(int n);
int euler_phi(int n);

/// numerator / (q^m * prod_d Phi_d(q)^{e_d}), kept in lowest terms.
class RationalFunction {
 public:
  RationalFunction() = default;
  RationalFunction(long n) : num_(GaussianRational(n)) {}  // NOLINT(google-explicit-constructor)
  RationalFunction(GaussianRational c) : num_(std::move(c)) {}  // NOLINT(google-explicit-constructor)
  explicit RationalFunction(QPolynomial numerator);

  /// The indeterminate.
  static RationalFunction q();
  static RationalFunction q_power(int k);  // k may be negative

  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return q_order_ == 0 && cyclo_.empty(); }
  /// True when the value does not depend on q.
  bool is_constant() const { return is_polynomial() && num_.degree() <= 0; }
  GaussianRational constant_value() const;

  const QPolynomial& numerator() const { return num_; }
  QPolynomial denominator() const;
  int denominator_q_order() const { return q_order_; }
  const std::map<int, int>& cyclotomic_exponents() const { return cyclo_; }

  RationalFunction conj() const;
  RationalFunction substitute_inverse_q() const;
  Complex evaluate(Complex q) const;

  RationalFunction operator-() const;
  /// Sum over a single common denominator, canonicalized once.
  static RationalFunction sum(const std::vector<RationalFunction>& terms);
  RationalFunction& operator+=(const RationalFunction& o);
  RationalFunction& operator-=(const RationalFunction& o);
  RationalFunction& operator*=(const RationalFunction& o);
  RationalFunction& operator/=(const RationalFunction& o);
  friend RationalFunction operator+(RationalFunction a, const RationalFunction& b) { return a += b; }
  friend RationalFunction operator-(RationalFunction a, const RationalFunction& b) { return a -= b; }
  friend RationalFunction operator*(RationalFunction a, const RationalFunction& b) { return a *= b; }
  friend RationalFunction operator/(RationalFunction a, const RationalFunction& b) { return a /= b; }
  friend bool operator==(const RationalFunction& a, const RationalFunction& b);

 private:
  void canonicalize();
  QPolynomial num_;
  int q_order_ = 0;
  std::map<int, int> cyclo_;
};

RationalFunction pow(const RationalFunction& x, int k);

// Text forms used by the polynomial printer: "1-q^2", "3/2", "(1/2,-1)".
std::string to_string(const mpq_class& x);
std::string to_string(const GaussianRational& c);
std::string to_string(const QPolynomial& p);
std::string to_string(const RationalFunction& r);

/// Per-ring operations needed by the generic Wick code.
template <class R>
struct ScalarTraits;

template <>
struct ScalarTraits<RationalFunction> {
  static constexpr bool exact = true;
  static bool is_zero(const RationalFunction& x, double /*tol*/) { return x.is_zero(); }
  static RationalFunction conj(const RationalFunction& x) { return x.conj(); }
  static Complex to_complex(const RationalFunction& x, Complex q) { return x.evaluate(q); }
};

template <>
struct ScalarTraits<Complex> {
  static constexpr bool exact = false;
  static bool is_zero(const Complex& x, double tol) { return std::abs(x) <= tol; }
  static Complex conj(const Complex& x) { return std::conj(x); }
  static Complex to_complex(const Complex& x, Complex /*q*/) { return x; }
};

}  // namespace qccr
