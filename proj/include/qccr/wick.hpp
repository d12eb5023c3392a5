#pragma once

// Symbolic algebra over the q-relations
//
//     a_i c_j = (1 - q) delta_ij + q c_j a_i,      c_i = a(e_i)^*,
//
// where c_i / a_i are the creator / annihilator for the i-th basis vector of
// a d-dimensional one-particle space. Polynomials are finite maps from words
// to coefficients in one of the rings of scalar.hpp.

#include <cmath>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "qccr/scalar.hpp"

namespace qccr {

/// Numeric q in [-1, 1] or the symbolic indeterminate.
class QParam {
 public:
  static QParam symbolic() { return QParam(); }
  static QParam numeric(double q);

  bool is_symbolic() const { return !value_; }
  double value() const;
  /// Throws std::domain_error unless numeric with |q| < 1.
  void require_open_interval() const;

 private:
  QParam() = default;
  std::optional<double> value_;
};

namespace wick {

enum class Kind : std::uint8_t { Creator = 0, Annihilator = 1 };

struct Symbol {
  Kind kind = Kind::Creator;
  std::uint16_t mode = 0;  // zero-based

  bool is_creator() const { return kind == Kind::Creator; }
  Symbol flipped() const { return {is_creator() ? Kind::Annihilator : Kind::Creator, mode}; }
  auto operator<=>(const Symbol&) const = default;
};

inline Symbol creator(std::size_t mode) { return {Kind::Creator, static_cast<std::uint16_t>(mode)}; }
inline Symbol annihilator(std::size_t mode) { return {Kind::Annihilator, static_cast<std::uint16_t>(mode)}; }

using Word = std::vector<Symbol>;

/// Length first, then lexicographic with creators before annihilators.
struct WordOrder {
  bool operator()(const Word& a, const Word& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

bool is_normal(const Word& w);
/// Number of (annihilator, creator) pairs with the annihilator to the left.
std::size_t inversions(const Word& w);
Word creator_word(const std::vector<std::size_t>& modes);

template <class R>
using ModeVector = std::vector<R>;

/// <f, g> = sum conj(f_i) g_i.
template <class R>
R inner(const ModeVector<R>& f, const ModeVector<R>& g) {
  if (f.size() != g.size()) throw std::invalid_argument("mode vectors differ in dimension");
  R acc{};
  for (std::size_t i = 0; i < f.size(); ++i) acc += ScalarTraits<R>::conj(f[i]) * g[i];
  return acc;
}

inline double norm(const ModeVector<Complex>& f) {
  double acc = 0.0;
  for (const Complex& x : f) acc += std::norm(x);
  return std::sqrt(acc);
}

template <class R>
class WickPolynomial {
 public:
  using Scalar = R;
  using TermMap = std::map<Word, R, WordOrder>;

  explicit WickPolynomial(std::size_t modes) : modes_(modes) {
    if (modes == 0) throw std::invalid_argument("a polynomial needs at least one mode");
  }

  static WickPolynomial constant(std::size_t modes, const R& c) {
    WickPolynomial p(modes);
    p.add_term({}, c);
    return p;
  }
  static WickPolynomial unit(std::size_t modes) { return constant(modes, R(1)); }
  static WickPolynomial word(std::size_t modes, Word w, const R& c = R(1)) {
    WickPolynomial p(modes);
    p.add_term(std::move(w), c);
    return p;
  }
  /// a^dagger(f) = sum_i f_i c_i.
  static WickPolynomial creator(const ModeVector<R>& f) {
    WickPolynomial p(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) p.add_term({wick::creator(i)}, f[i]);
    return p;
  }
  /// a(f) = a^dagger(f)^* = sum_i conj(f_i) a_i.
  static WickPolynomial annihilator(const ModeVector<R>& f) {
    WickPolynomial p(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) p.add_term({wick::annihilator(i)}, ScalarTraits<R>::conj(f[i]));
    return p;
  }

  std::size_t modes() const { return modes_; }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  std::size_t degree() const { return terms_.empty() ? 0 : terms_.rbegin()->first.size(); }
  bool is_normal() const {
    for (const auto& [w, c] : terms_)
      if (!wick::is_normal(w)) return false;
    return true;
  }
  /// Coefficient of `w`, zero when absent.
  R coefficient(const Word& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? R{} : it->second;
  }

  void add_term(Word w, const R& c) {
    for (const Symbol& s : w)
      if (s.mode >= modes_) throw std::out_of_range("mode index out of range");
    auto [it, inserted] = terms_.try_emplace(std::move(w), c);
    if (!inserted) it->second += c;
    if (ScalarTraits<R>::is_zero(it->second, 0.0)) terms_.erase(it);
  }

  /// Drops coefficients with |c| <= tol (float ring only; exact zeros are never stored).
  void prune(double tol) {
    std::erase_if(terms_, [tol](const auto& kv) { return ScalarTraits<R>::is_zero(kv.second, tol); });
  }

  WickPolynomial& operator+=(const WickPolynomial& o) {
    check_modes(o);
    for (const auto& [w, c] : o.terms_) add_term(w, c);
    return *this;
  }
  WickPolynomial& operator-=(const WickPolynomial& o) {
    check_modes(o);
    for (const auto& [w, c] : o.terms_) add_term(w, -c);
    return *this;
  }
  WickPolynomial& operator*=(const R& s) {
    if (ScalarTraits<R>::is_zero(s, 0.0)) {
      terms_.clear();
      return *this;
    }
    for (auto& [w, c] : terms_) c *= s;
    prune(0.0);
    return *this;
  }
  WickPolynomial operator-() const {
    WickPolynomial out = *this;
    for (auto& [w, c] : out.terms_) c = -c;
    return out;
  }

  friend WickPolynomial operator+(WickPolynomial a, const WickPolynomial& b) { return a += b; }
  friend WickPolynomial operator-(WickPolynomial a, const WickPolynomial& b) { return a -= b; }
  friend WickPolynomial operator*(WickPolynomial a, const R& s) { return a *= s; }
  friend WickPolynomial operator*(const R& s, WickPolynomial a) { return a *= s; }
  /// Word concatenation; no rewriting.
  friend WickPolynomial operator*(const WickPolynomial& a, const WickPolynomial& b) {
    a.check_modes(b);
    WickPolynomial out(a.modes_);
    for (const auto& [wa, ca] : a.terms_) {
      for (const auto& [wb, cb] : b.terms_) {
        Word w = wa;
        w.insert(w.end(), wb.begin(), wb.end());
        out.add_term(std::move(w), ca * cb);
      }
    }
    return out;
  }
  friend bool operator==(const WickPolynomial& a, const WickPolynomial& b) {
    return a.modes_ == b.modes_ && a.terms_ == b.terms_;
  }

 private:
  void check_modes(const WickPolynomial& o) const {
    if (o.modes_ != modes_) throw std::invalid_argument("polynomials over different numbers of modes");
  }

  std::size_t modes_;
  TermMap terms_;
};

using ExactPolynomial = WickPolynomial<RationalFunction>;
using FloatPolynomial = WickPolynomial<Complex>;

inline constexpr double kFloatPruneTolerance = 1e-12;

/// Unique normal form: every creator left of every annihilator. Rewrites the
/// leftmost (annihilator_i, creator_j) adjacency to
/// (1-q) delta_ij (pair deleted) + q (pair swapped) until none remain.
template <class R>
WickPolynomial<R> normalize(const WickPolynomial<R>& p, const R& q, double prune_tol = 0.0);

/// Exact mode with the symbolic q.
ExactPolynomial normalize(const ExactPolynomial& p);
ExactPolynomial normalize(const ExactPolynomial& p, QParam q);
FloatPolynomial normalize(const FloatPolynomial& p, QParam q, double prune_tol = kFloatPruneTolerance);

/// Reverse words, flip creator/annihilator, conjugate coefficients.
template <class R>
WickPolynomial<R> adjoint(const WickPolynomial<R>& p);

/// Value of the state omega_phi on p, where omega_phi(c_i X) = conj(phi_i) omega_phi(X)
/// and omega_phi(X a_j) = phi_j omega_phi(X).
template <class R>
R coherent_expectation(const WickPolynomial<R>& p, const ModeVector<R>& phi, const R& q);

RationalFunction coherent_expectation(const ExactPolynomial& p, const ModeVector<RationalFunction>& phi);
Complex coherent_expectation(const FloatPolynomial& p, const ModeVector<Complex>& phi, QParam q);

/// Square matrix stored row-major.
template <class R>
struct ScalarMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<R> data;

  ScalarMatrix() = default;
  ScalarMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c) {}
  R& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  const R& operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
};

/// G[u,v] = omega_phi(adjoint(word_u) * word_v); each entry of `words` must be
/// creator-only (the empty word is the cyclic vector).
template <class R>
ScalarMatrix<R> coherent_gram(const std::vector<WickPolynomial<R>>& words, const ModeVector<R>& phi, const R& q);

ScalarMatrix<Complex> coherent_gram(const std::vector<FloatPolynomial>& words, const ModeVector<Complex>& phi,
                                    QParam q);

/// All creator words of length <= max_length over `modes` modes, length-then-lex order.
std::vector<std::vector<std::size_t>> creator_words(std::size_t modes, int max_length);

/// Image under q -> 1/q together with c_i <-> a_i (word order kept).
ExactPolynomial dual_q_map(const ExactPolynomial& p);

struct FloatDualImage {
  FloatPolynomial polynomial;
  double q;
};
/// Float mode cannot substitute into numeric coefficients: swaps symbols and reports q' = 1/q.
FloatDualImage dual_q_map(const FloatPolynomial& p, QParam q);

/// a_i c_j - (1-q) delta_ij - q c_j a_i.
template <class R>
WickPolynomial<R> relation_polynomial(std::size_t modes, std::size_t i, std::size_t j, const R& q) {
  WickPolynomial<R> r = WickPolynomial<R>::word(modes, {annihilator(i), creator(j)});
  if (i == j) r -= WickPolynomial<R>::constant(modes, R(1) - q);
  r -= WickPolynomial<R>::word(modes, {creator(j), annihilator(i)}, q);
  return r;
}

/// Exact polynomial with every coefficient evaluated at numeric q.
FloatPolynomial evaluate_at(const ExactPolynomial& p, double q);
/// Float polynomial lifted to exact constants (binary-exact).
ExactPolynomial to_exact(const FloatPolynomial& p);

extern template class WickPolynomial<RationalFunction>;
extern template class WickPolynomial<Complex>;

}  // namespace wick
}  // namespace qccr
