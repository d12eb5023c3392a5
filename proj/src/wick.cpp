#include "qccr/wick.hpp"

#include <cmath>
#include <tuple>

namespace qccr {

QParam QParam::numeric(double q) {
  if (!std::isfinite(q) || q < -1.0 || q > 1.0) throw std::domain_error("q must lie in [-1, 1]");
  QParam p;
  p.value_ = q;
  return p;
}

double QParam::value() const {
  if (!value_) throw std::logic_error("symbolic q has no numeric value");
  return *value_;
}

void QParam::require_open_interval() const {
  if (!value_ || std::abs(*value_) >= 1.0) throw std::domain_error("operation requires numeric |q| < 1");
}

namespace wick {

template class WickPolynomial<RationalFunction>;
template class WickPolynomial<Complex>;

bool is_normal(const Word& w) {
  bool seen_annihilator = false;
  for (const Symbol& s : w) {
    if (!s.is_creator()) {
      seen_annihilator = true;
    } else if (seen_annihilator) {
      return false;
    }
  }
  return true;
}

std::size_t inversions(const Word& w) {
  std::size_t annihilators = 0;
  std::size_t count = 0;
  for (const Symbol& s : w) {
    if (s.is_creator()) {
      count += annihilators;
    } else {
      ++annihilators;
    }
  }
  return count;
}

Word creator_word(const std::vector<std::size_t>& modes) {
  Word w;
  w.reserve(modes.size());
  for (std::size_t m : modes) w.push_back(creator(m));
  return w;
}

namespace {

// Words are popped in decreasing (length, inversions); every rewrite strictly
// lowers that key, so all contributions to a word are merged before it is
// rewritten and each word is processed once.
struct RewriteKey {
  std::size_t length;
  std::size_t inversions;
  Word word;

  bool operator<(const RewriteKey& o) const {
    return std::tie(o.length, o.inversions) < std::tie(length, inversions) ||
           (length == o.length && inversions == o.inversions && word < o.word);
  }
};

template <class R>
void accumulate(std::map<RewriteKey, R>& pending, Word w, const R& c) {
  RewriteKey key{w.size(), inversions(w), std::move(w)};
  auto [it, inserted] = pending.try_emplace(std::move(key), c);
  if (!inserted) it->second += c;
}

}  // namespace

template <class R>
WickPolynomial<R> normalize(const WickPolynomial<R>& p, const R& q, double prune_tol) {
  const R one_minus_q = R(1) - q;
  std::map<RewriteKey, R> pending;
  for (const auto& [w, c] : p.terms()) accumulate(pending, w, c);

  WickPolynomial<R> out(p.modes());
  while (!pending.empty()) {
    auto node = pending.extract(pending.begin());
    const Word& w = node.key().word;
    const R& c = node.mapped();
    if (ScalarTraits<R>::is_zero(c, prune_tol)) continue;
    std::size_t k = 0;
    while (k + 1 < w.size() && !(!w[k].is_creator() && w[k + 1].is_creator())) ++k;
    if (k + 1 >= w.size()) {
      out.add_term(w, c);
      continue;
    }
    Word swapped = w;
    std::swap(swapped[k], swapped[k + 1]);
    accumulate(pending, std::move(swapped), q * c);
    if (w[k].mode == w[k + 1].mode) {
      Word contracted;
      contracted.reserve(w.size() - 2);
      contracted.insert(contracted.end(), w.begin(), w.begin() + static_cast<std::ptrdiff_t>(k));
      contracted.insert(contracted.end(), w.begin() + static_cast<std::ptrdiff_t>(k + 2), w.end());
      accumulate(pending, std::move(contracted), one_minus_q * c);
    }
  }
  out.prune(prune_tol);
  return out;
}

template WickPolynomial<RationalFunction> normalize(const WickPolynomial<RationalFunction>&, const RationalFunction&,
                                                    double);
template WickPolynomial<Complex> normalize(const WickPolynomial<Complex>&, const Complex&, double);

ExactPolynomial normalize(const ExactPolynomial& p) { return normalize(p, RationalFunction::q()); }

namespace {

RationalFunction exact_q(QParam q) {
  return q.is_symbolic() ? RationalFunction::q() : RationalFunction(GaussianRational::from_double(q.value()));
}

}  // namespace

ExactPolynomial normalize(const ExactPolynomial& p, QParam q) { return normalize(p, exact_q(q)); }

FloatPolynomial normalize(const FloatPolynomial& p, QParam q, double prune_tol) {
  return normalize(p, Complex(q.value()), prune_tol);
}

template <class R>
WickPolynomial<R> adjoint(const WickPolynomial<R>& p) {
  WickPolynomial<R> out(p.modes());
  for (const auto& [w, c] : p.terms()) {
    Word r(w.rbegin(), w.rend());
    for (Symbol& s : r) s = s.flipped();
    out.add_term(std::move(r), ScalarTraits<R>::conj(c));
  }
  return out;
}

template WickPolynomial<RationalFunction> adjoint(const WickPolynomial<RationalFunction>&);
template WickPolynomial<Complex> adjoint(const WickPolynomial<Complex>&);

template <class R>
R coherent_expectation(const WickPolynomial<R>& p, const ModeVector<R>& phi, const R& q) {
  if (phi.size() != p.modes()) throw std::invalid_argument("state vector dimension does not match polynomial");
  std::vector<R> conj_phi(phi.size());
  for (std::size_t i = 0; i < phi.size(); ++i) conj_phi[i] = ScalarTraits<R>::conj(phi[i]);
  const WickPolynomial<R> normal = normalize(p, q);
  R total{};
  for (const auto& [w, c] : normal.terms()) {
    R value = c;
    for (const Symbol& s : w) {
      value *= s.is_creator() ? conj_phi[s.mode] : phi[s.mode];
      if (ScalarTraits<R>::is_zero(value, 0.0)) break;
    }
    total += value;
  }
  return total;
}

template RationalFunction coherent_expectation(const WickPolynomial<RationalFunction>&,
                                               const ModeVector<RationalFunction>&, const RationalFunction&);
template Complex coherent_expectation(const WickPolynomial<Complex>&, const ModeVector<Complex>&, const Complex&);

RationalFunction coherent_expectation(const ExactPolynomial& p, const ModeVector<RationalFunction>& phi) {
  return coherent_expectation(p, phi, RationalFunction::q());
}

Complex coherent_expectation(const FloatPolynomial& p, const ModeVector<Complex>& phi, QParam q) {
  return coherent_expectation(p, phi, Complex(q.value()));
}

template <class R>
ScalarMatrix<R> coherent_gram(const std::vector<WickPolynomial<R>>& words, const ModeVector<R>& phi, const R& q) {
  for (const auto& w : words) {
    for (const auto& [word, c] : w.terms()) {
      for (const Symbol& s : word)
        if (!s.is_creator()) throw std::invalid_argument("gram words must be creator-only");
    }
  }
  const std::size_t n = words.size();
  ScalarMatrix<R> g(n, n);
  for (std::size_t u = 0; u < n; ++u) {
    const WickPolynomial<R> left = adjoint(words[u]);
    for (std::size_t v = u; v < n; ++v) {
      g(u, v) = coherent_expectation(left * words[v], phi, q);
      if (v != u) g(v, u) = ScalarTraits<R>::conj(g(u, v));
    }
  }
  return g;
}

template ScalarMatrix<RationalFunction> coherent_gram(const std::vector<WickPolynomial<RationalFunction>>&,
                                                      const ModeVector<RationalFunction>&, const RationalFunction&);
template ScalarMatrix<Complex> coherent_gram(const std::vector<WickPolynomial<Complex>>&, const ModeVector<Complex>&,
                                             const Complex&);

ScalarMatrix<Complex> coherent_gram(const std::vector<FloatPolynomial>& words, const ModeVector<Complex>& phi,
                                    QParam q) {
  return coherent_gram(words, phi, Complex(q.value()));
}

std::vector<std::vector<std::size_t>> creator_words(std::size_t modes, int max_length) {
  if (modes == 0 || max_length < 0) throw std::invalid_argument("invalid word family");
  std::vector<std::vector<std::size_t>> out{{}};
  std::size_t begin = 0;
  for (int len = 1; len <= max_length; ++len) {
    const std::size_t end = out.size();
    for (std::size_t k = begin; k < end; ++k) {
      for (std::size_t m = 0; m < modes; ++m) {
        auto w = out[k];
        w.push_back(m);
        out.push_back(std::move(w));
      }
    }
    begin = end;
  }
  return out;
}

namespace {

Word swap_kinds(const Word& w) {
  Word out = w;
  for (Symbol& s : out) s = s.flipped();
  return out;
}

}  // namespace

ExactPolynomial dual_q_map(const ExactPolynomial& p) {
  ExactPolynomial out(p.modes());
  for (const auto& [w, c] : p.terms()) out.add_term(swap_kinds(w), c.substitute_inverse_q());
  return out;
}

FloatDualImage dual_q_map(const FloatPolynomial& p, QParam q) {
  if (q.is_symbolic() || q.value() == 0.0) throw std::domain_error("q -> 1/q is undefined at q = 0");
  FloatPolynomial out(p.modes());
  for (const auto& [w, c] : p.terms()) out.add_term(swap_kinds(w), c);
  return {std::move(out), 1.0 / q.value()};
}

FloatPolynomial evaluate_at(const ExactPolynomial& p, double q) {
  FloatPolynomial out(p.modes());
  for (const auto& [w, c] : p.terms()) out.add_term(w, c.evaluate(q));
  return out;
}

ExactPolynomial to_exact(const FloatPolynomial& p) {
  ExactPolynomial out(p.modes());
  for (const auto& [w, c] : p.terms()) out.add_term(w, RationalFunction(GaussianRational::from_complex(c)));
  return out;
}

}  // namespace wick
}  // namespace qccr
