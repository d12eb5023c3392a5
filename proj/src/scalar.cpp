#include "qccr/scalar.hpp"

#include <cmath>
#include <cstring>
#include <limits>
#include <mutex>
#include <stdexcept>

namespace qccr {

double to_double(const mpq_class& x) {
  const double truncated = x.get_d();
  if (!std::isfinite(truncated)) return truncated;
  double best = truncated;
  mpq_class best_err = abs(mpq_class(truncated) - x);
  if (sgn(best_err) == 0) return best;
  auto odd_mantissa = [](double v) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, sizeof bits);
    return (bits & 1u) != 0;
  };
  constexpr double inf = std::numeric_limits<double>::infinity();
  for (double candidate : {std::nextafter(truncated, inf), std::nextafter(truncated, -inf)}) {
    if (!std::isfinite(candidate)) continue;
    mpq_class err = abs(mpq_class(candidate) - x);
    if (err < best_err || (err == best_err && odd_mantissa(best) && !odd_mantissa(candidate))) {
      best = candidate;
      best_err = err;
    }
  }
  return best;
}

// ---------------------------------------------------------------------------
// GaussianRational

GaussianRational::GaussianRational(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {
  re_.canonicalize();
  im_.canonicalize();
}

GaussianRational GaussianRational::from_double(double re, double im) {
  if (!std::isfinite(re) || !std::isfinite(im)) throw std::invalid_argument("non-finite scalar");
  return {mpq_class(re), mpq_class(im)};
}

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
  re_ += o.re_;
  if (sgn(o.im_) != 0) im_ += o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
  re_ -= o.re_;
  if (sgn(o.im_) != 0) im_ -= o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
  if (is_real() && o.is_real()) {
    re_ *= o.re_;
    return *this;
  }
  mpq_class re = re_ * o.re_ - im_ * o.im_;
  mpq_class im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

void GaussianRational::add_product(const GaussianRational& a, const GaussianRational& b) {
  thread_local mpq_class t;
  mpq_mul(t.get_mpq_t(), a.re_.get_mpq_t(), b.re_.get_mpq_t());
  re_ += t;
  if (a.is_real() && b.is_real()) return;
  mpq_mul(t.get_mpq_t(), a.im_.get_mpq_t(), b.im_.get_mpq_t());
  re_ -= t;
  mpq_mul(t.get_mpq_t(), a.re_.get_mpq_t(), b.im_.get_mpq_t());
  im_ += t;
  mpq_mul(t.get_mpq_t(), a.im_.get_mpq_t(), b.re_.get_mpq_t());
  im_ += t;
}

void GaussianRational::sub_product(const GaussianRational& a, const GaussianRational& b) {
  thread_local mpq_class t;
  mpq_mul(t.get_mpq_t(), a.re_.get_mpq_t(), b.re_.get_mpq_t());
  re_ -= t;
  if (a.is_real() && b.is_real()) return;
  mpq_mul(t.get_mpq_t(), a.im_.get_mpq_t(), b.im_.get_mpq_t());
  re_ += t;
  mpq_mul(t.get_mpq_t(), a.re_.get_mpq_t(), b.im_.get_mpq_t());
  im_ -= t;
  mpq_mul(t.get_mpq_t(), a.im_.get_mpq_t(), b.re_.get_mpq_t());
  im_ -= t;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
  if (o.is_zero()) throw std::domain_error("division by zero");
  if (o.is_real()) {
    re_ /= o.re_;
    if (sgn(im_) != 0) im_ /= o.re_;
    return *this;
  }
  const mpq_class norm = o.re_ * o.re_ + o.im_ * o.im_;
  mpq_class re = (re_ * o.re_ + im_ * o.im_) / norm;
  mpq_class im = (im_ * o.re_ - re_ * o.im_) / norm;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

// ---------------------------------------------------------------------------
// QPolynomial

QPolynomial::QPolynomial(GaussianRational c) {
  if (!c.is_zero()) coeffs_.push_back(std::move(c));
}

QPolynomial::QPolynomial(std::vector<GaussianRational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

QPolynomial QPolynomial::monomial(GaussianRational c, int power) {
  if (power < 0) throw std::invalid_argument("negative power");
  if (c.is_zero()) return {};
  std::vector<GaussianRational> coeffs(static_cast<std::size_t>(power) + 1);
  coeffs.back() = std::move(c);
  return QPolynomial(std::move(coeffs));
}

void QPolynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

int QPolynomial::low_order() const {
  int k = 0;
  while (k < static_cast<int>(coeffs_.size()) && coeffs_[k].is_zero()) ++k;
  return k;
}

QPolynomial QPolynomial::shifted(int k) const {
  if (is_zero() || k == 0) return *this;
  QPolynomial out;
  out.coeffs_.resize(coeffs_.size() + static_cast<std::size_t>(k));
  std::copy(coeffs_.begin(), coeffs_.end(), out.coeffs_.begin() + k);
  return out;
}

QPolynomial QPolynomial::conj() const {
  QPolynomial out = *this;
  for (auto& c : out.coeffs_) c = c.conj();
  return out;
}

QPolynomial QPolynomial::reversed(int n) const {
  if (n < degree()) throw std::invalid_argument("reversal length below degree");
  QPolynomial out;
  out.coeffs_.resize(static_cast<std::size_t>(n) + 1);
  for (std::size_t k = 0; k < coeffs_.size(); ++k) out.coeffs_[static_cast<std::size_t>(n) - k] = coeffs_[k];
  out.trim();
  return out;
}

Complex QPolynomial::evaluate(Complex q) const {
  Complex acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * q + it->to_complex();
  return acc;
}

QPolynomial& QPolynomial::operator+=(const QPolynomial& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
  trim();
  return *this;
}

QPolynomial& QPolynomial::operator-=(const QPolynomial& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
  trim();
  return *this;
}

QPolynomial QPolynomial::operator-() const {
  QPolynomial out = *this;
  for (auto& c : out.coeffs_) c = -c;
  return out;
}

QPolynomial operator*(const QPolynomial& a, const QPolynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<GaussianRational> out(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
      if (b.coeffs_[j].is_zero()) continue;
      out[i + j].add_product(a.coeffs_[i], b.coeffs_[j]);
    }
  }
  return QPolynomial(std::move(out));
}

QPolynomial& QPolynomial::operator*=(const GaussianRational& c) {
  if (c.is_zero()) {
    coeffs_.clear();
    return *this;
  }
  for (auto& x : coeffs_) x *= c;
  return *this;
}

bool QPolynomial::divide_exact_monic(const QPolynomial& divisor, QPolynomial& quotient) const {
  if (divisor.is_zero() || !divisor.coeffs_.back().is_one()) throw std::invalid_argument("divisor must be monic");
  if (is_zero()) {
    quotient = {};
    return true;
  }
  const int n = degree();
  const int m = divisor.degree();
  if (n < m) return false;
  std::vector<GaussianRational> rem = coeffs_;
  std::vector<GaussianRational> quo(static_cast<std::size_t>(n - m) + 1);
  for (int k = n - m; k >= 0; --k) {
    GaussianRational lead = rem[static_cast<std::size_t>(k + m)];
    if (lead.is_zero()) continue;
    for (int j = 0; j <= m; ++j) {
      const auto& dj = divisor.coeffs_[static_cast<std::size_t>(j)];
      if (!dj.is_zero()) rem[static_cast<std::size_t>(k + j)].sub_product(lead, dj);
    }
    quo[static_cast<std::size_t>(k)] = std::move(lead);
  }
  for (int k = 0; k < m; ++k)
    if (!rem[static_cast<std::size_t>(k)].is_zero()) return false;
  quotient = QPolynomial(std::move(quo));
  return true;
}

// ---------------------------------------------------------------------------
// Cyclotomic polynomials

int euler_phi(int n) {
  int result = n;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    while (n % p == 0) n /= p;
    result -= result / p;
  }
  if (n > 1) result -= result / n;
  return result;
}

const QPolynomial& cyclotomic(int n) {
  if (n < 1) throw std::invalid_argument("cyclotomic index must be positive");
  static std::recursive_mutex mutex;
  static std::map<int, QPolynomial> cache;
  std::lock_guard lock(mutex);
  if (auto it = cache.find(n); it != cache.end()) return it->second;
  // q^n - 1 divided by Phi_d for every proper divisor d.
  QPolynomial p = QPolynomial::monomial(1, n) - QPolynomial(1);
  for (int d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    QPolynomial quo;
    if (!p.divide_exact_monic(cyclotomic(d), quo)) throw std::logic_error("cyclotomic construction failed");
    p = std::move(quo);
  }
  return cache.emplace(n, std::move(p)).first->second;
}

// ---------------------------------------------------------------------------
// RationalFunction

namespace {

QPolynomial drop_low(const QPolynomial& p, int k) {
  if (k == 0) return p;
  std::vector<GaussianRational> c(p.coefficients().begin() + k, p.coefficients().end());
  return QPolynomial(std::move(c));
}

QPolynomial power_of(const QPolynomial& p, int e) {
  QPolynomial out(1);
  for (int i = 0; i < e; ++i) out = out * p;
  return out;
}

// Numerator of r over the common denominator q^common_q * prod Phi_d^{e_d}.
QPolynomial lift_numerator(const QPolynomial& num, int q_order, const std::map<int, int>& own, int common_q,
                           const std::map<int, int>& common) {
  QPolynomial multiplier(1);
  for (const auto& [d, e] : common) {
    auto it = own.find(d);
    const int have = it == own.end() ? 0 : it->second;
    for (int k = have; k < e; ++k) multiplier = multiplier * cyclotomic(d);
  }
  return (num * multiplier).shifted(common_q - q_order);
}

mpq_class norm2(const GaussianRational& c) { return c.re() * c.re() + c.im() * c.im(); }

// Cheap necessary condition for Phi_n | p: p must vanish at exp(2 pi i / n).
// A floating-point value far above the Horner error bound rules that out;
// anything else falls through to the exact division.
bool may_vanish_at_root(const QPolynomial& p, int n) {
  const Complex root = std::polar(1.0, 2.0 * std::acos(-1.0) / n);
  Complex acc = 0.0;
  double scale = 0.0;
  const auto& c = p.coefficients();
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    const Complex x(it->re().get_d(), it->im().get_d());
    acc = acc * root + x;
    scale += std::abs(x);
  }
  if (!std::isfinite(scale) || scale == 0.0) return true;
  const double bound = 64.0 * static_cast<double>(c.size() + 1) * std::numeric_limits<double>::epsilon() * scale;
  return std::abs(acc) <= bound;
}

}  // namespace

RationalFunction::RationalFunction(QPolynomial numerator) : num_(std::move(numerator)) {}

RationalFunction RationalFunction::q() { return RationalFunction(QPolynomial::monomial(1, 1)); }

RationalFunction RationalFunction::q_power(int k) {
  if (k >= 0) return RationalFunction(QPolynomial::monomial(1, k));
  RationalFunction r(1);
  r.q_order_ = -k;
  return r;
}

GaussianRational RationalFunction::constant_value() const {
  if (!is_constant()) throw std::logic_error("rational function depends on q");
  return num_.is_zero() ? GaussianRational(0) : num_[0];
}

QPolynomial RationalFunction::denominator() const {
  QPolynomial den = QPolynomial::monomial(1, q_order_);
  for (const auto& [d, e] : cyclo_) den = den * power_of(cyclotomic(d), e);
  return den;
}

void RationalFunction::canonicalize() {
  if (num_.is_zero()) {
    q_order_ = 0;
    cyclo_.clear();
    return;
  }
  if (q_order_ > 0) {
    const int take = std::min(num_.low_order(), q_order_);
    num_ = drop_low(num_, take);
    q_order_ -= take;
  }
  for (auto it = cyclo_.begin(); it != cyclo_.end();) {
    QPolynomial quo;
    while (it->second > 0 && may_vanish_at_root(num_, it->first) &&
           num_.divide_exact_monic(cyclotomic(it->first), quo)) {
      num_ = std::move(quo);
      --it->second;
    }
    it = it->second == 0 ? cyclo_.erase(it) : std::next(it);
  }
}

RationalFunction RationalFunction::conj() const {
  RationalFunction r = *this;
  r.num_ = num_.conj();
  return r;
}

RationalFunction RationalFunction::substitute_inverse_q() const {
  if (is_zero()) return *this;
  // Phi_d(1/q) = q^{-phi(d)} Phi_d(q) for d >= 2 and Phi_1(1/q) = -q^{-1} Phi_1(q).
  const int n = num_.degree();
  RationalFunction r(num_.reversed(n));
  int exponent = q_order_ - n;
  bool negate = false;
  for (const auto& [d, e] : cyclo_) {
    exponent += euler_phi(d) * e;
    if (d == 1 && (e % 2) == 1) negate = !negate;
  }
  r.cyclo_ = cyclo_;
  if (exponent >= 0) {
    r.num_ = r.num_.shifted(exponent);
  } else {
    r.q_order_ = -exponent;
  }
  if (negate) r.num_ = -r.num_;
  r.canonicalize();
  return r;
}

Complex RationalFunction::evaluate(Complex q) const {
  if (is_zero()) return 0.0;
  Complex den = std::pow(q, q_order_);
  for (const auto& [d, e] : cyclo_) den *= std::pow(cyclotomic(d).evaluate(q), e);
  if (den == Complex(0.0)) throw std::domain_error("rational function has a pole at this q");
  return num_.evaluate(q) / den;
}

RationalFunction RationalFunction::operator-() const {
  RationalFunction r = *this;
  r.num_ = -num_;
  return r;
}

RationalFunction& RationalFunction::operator+=(const RationalFunction& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  if (q_order_ == o.q_order_ && cyclo_ == o.cyclo_) {
    num_ += o.num_;
    canonicalize();
    return *this;
  }
  const int common_q = std::max(q_order_, o.q_order_);
  std::map<int, int> common = cyclo_;
  for (const auto& [d, e] : o.cyclo_) common[d] = std::max(common[d], e);
  num_ = lift_numerator(num_, q_order_, cyclo_, common_q, common) +
         lift_numerator(o.num_, o.q_order_, o.cyclo_, common_q, common);
  q_order_ = common_q;
  cyclo_ = std::move(common);
  canonicalize();
  return *this;
}

RationalFunction RationalFunction::sum(const std::vector<RationalFunction>& terms) {
  RationalFunction out;
  std::map<int, int> common;
  int common_q = 0;
  for (const auto& t : terms) {
    if (t.is_zero()) continue;
    common_q = std::max(common_q, t.q_order_);
    for (const auto& [d, e] : t.cyclo_) common[d] = std::max(common[d], e);
  }
  for (const auto& t : terms) {
    if (t.is_zero()) continue;
    out.num_ += lift_numerator(t.num_, t.q_order_, t.cyclo_, common_q, common);
  }
  out.q_order_ = common_q;
  out.cyclo_ = std::move(common);
  out.canonicalize();
  return out;
}

RationalFunction& RationalFunction::operator-=(const RationalFunction& o) { return *this += -o; }

RationalFunction& RationalFunction::operator*=(const RationalFunction& o) {
  if (is_zero()) return *this;
  if (o.is_zero()) return *this = RationalFunction();
  num_ = num_ * o.num_;
  q_order_ += o.q_order_;
  for (const auto& [d, e] : o.cyclo_) cyclo_[d] += e;
  canonicalize();
  return *this;
}

RationalFunction& RationalFunction::operator/=(const RationalFunction& o) {
  if (o.is_zero()) throw std::domain_error("division by zero");
  // Factor the divisor's numerator as c * q^m * prod Phi_n^{k_n}.
  QPolynomial p = o.num_;
  const int m = p.low_order();
  p = drop_low(p, m);
  std::map<int, int> factors;
  const int initial_degree = p.degree();
  const long limit = 2L * initial_degree * initial_degree + 2;
  for (int n = 1; p.degree() > 0; ++n) {
    // Roots of a product of cyclotomics lie on the unit circle.
    if (norm2(p[0]) != norm2(p.coefficients().back()) || n > limit)
      throw std::domain_error("divisor is not a product of q and cyclotomic polynomials");
    if (euler_phi(n) > p.degree()) continue;
    QPolynomial quo;
    while (p.divide_exact_monic(cyclotomic(n), quo)) {
      p = std::move(quo);
      ++factors[n];
    }
  }
  GaussianRational c = p[0];
  RationalFunction inverse(o.denominator());
  inverse.num_ *= GaussianRational(1) / c;
  inverse.q_order_ = m;
  inverse.cyclo_ = std::move(factors);
  inverse.canonicalize();
  return *this *= inverse;
}

bool operator==(const RationalFunction& a, const RationalFunction& b) {
  return a.q_order_ == b.q_order_ && a.cyclo_ == b.cyclo_ && a.num_ == b.num_;
}

RationalFunction pow(const RationalFunction& x, int k) {
  if (k < 0) return RationalFunction(1) / pow(x, -k);
  RationalFunction out(1);
  for (int i = 0; i < k; ++i) out *= x;
  return out;
}

// ---------------------------------------------------------------------------
// Text

std::string to_string(const mpq_class& x) { return x.get_str(); }

std::string to_string(const GaussianRational& c) {
  if (c.is_real()) return to_string(c.re());
  return "(" + to_string(c.re()) + "," + to_string(c.im()) + ")";
}

std::string to_string(const QPolynomial& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (std::size_t k = 0; k < p.size(); ++k) {
    const auto& c = p[k];
    if (c.is_zero()) continue;
    std::string power = k == 0 ? "" : (k == 1 ? "q" : "q^" + std::to_string(k));
    if (c.is_real()) {
      const bool negative = sgn(c.re()) < 0;
      const mpq_class mag = abs(c.re());
      std::string body;
      if (k == 0) {
        body = to_string(mag);
      } else {
        body = (mag == 1 ? "" : to_string(mag) + "*") + power;
      }
      if (first) {
        out += negative ? "-" + body : body;
      } else {
        out += (negative ? "-" : "+") + body;
      }
    } else {
      std::string body = to_string(c) + (k == 0 ? "" : "*" + power);
      out += first ? body : "+" + body;
    }
    first = false;
  }
  return out;
}

std::string to_string(const RationalFunction& r) {
  if (r.is_polynomial()) return to_string(r.numerator());
  return "(" + to_string(r.numerator()) + ")/(" + to_string(r.denominator()) + ")";
}

}  // namespace qccr
