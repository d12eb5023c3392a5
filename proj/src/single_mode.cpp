#include "qccr/single_mode.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace qccr::single_mode {

namespace {

double open_q(QParam q) {
  q.require_open_interval();
  return q.value();
}

// prod_{k >= 0} (1 - x^(first + step k)) for |x| < 1, stopped once the
// certified error drops below tol. With t = |x|^e the tail of |log(1 - t)| is
// at most sum t/(1-t) <= t_next / ((1 - t_next)(1 - |x|^step)).
ProductValue certified_product(double x, int first, int step, double tol) {
  ProductValue out;
  out.value = 1.0;
  if (x == 0.0) return out;
  const double ratio = std::pow(std::abs(x), step);
  for (int e = first;; e += step) {
    const double t_next = std::pow(std::abs(x), e);
    const double tail = t_next / ((1.0 - t_next) * (1.0 - ratio));
    const double err = std::abs(out.value) * std::expm1(tail);
    // Past tol, keep multiplying while the factors still change the double.
    if ((err <= tol && t_next < 0.5 * std::numeric_limits<double>::epsilon()) ||
        t_next < std::numeric_limits<double>::min()) {
      out.error_bound = err;
      return out;
    }
    out.value *= 1.0 - std::pow(x, e);
    ++out.terms;
  }
}

}  // namespace

Eigen::MatrixXd shift_matrix(QParam q, int N) {
  const double qv = open_q(q);
  if (N < 1) throw std::invalid_argument("N must be at least 1");
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(N + 1, N + 1);
  for (int n = 0; n < N; ++n) a(n, n + 1) = std::sqrt(1.0 - std::pow(qv, n + 1));
  return a;
}

ShiftNorm shift_norm(QParam q, int N) {
  const Eigen::MatrixXd a = shift_matrix(q, N);
  ShiftNorm out;
  out.numeric = Eigen::JacobiSVD<Eigen::MatrixXd>(a).singularValues()(0);
  out.closed_form = q.value() >= 0.0 ? 1.0 : std::sqrt(1.0 - q.value());
  return out;
}

BetaBounds beta_bounds(QParam q, double tol) {
  const double qv = open_q(q);
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
  BetaBounds b;
  if (qv >= 0.0) {
    b.plus.value = 1.0;
    b.minus = certified_product(qv, 1, 1, tol);
  } else {
    // The factors 1 - q^k exceed 1 exactly for odd k.
    b.plus = certified_product(qv, 1, 2, tol);
    b.minus = certified_product(qv, 2, 2, tol);
  }
  return b;
}

PowerBoundReport verify_power_bounds(QParam q, int N, int n_max, double tol) {
  if (n_max < 1 || N <= n_max) throw std::invalid_argument("need 1 <= n_max < N");
  PowerBoundReport r;
  r.bounds = beta_bounds(q, 1e-15);
  const Eigen::MatrixXd a = shift_matrix(q, N);
  const int keep = N - n_max + 1;  // degrees 0..N-n_max
  r.min_eigenvalue = std::numeric_limits<double>::infinity();
  r.max_eigenvalue = -std::numeric_limits<double>::infinity();
  Eigen::MatrixXd an = Eigen::MatrixXd::Identity(N + 1, N + 1);
  bool ok = true;
  for (int n = 1; n <= n_max; ++n) {
    an = an * a;
    const Eigen::MatrixXd block = (an * an.transpose()).topLeftCorner(keep, keep);
    const Eigen::VectorXd ev = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(block).eigenvalues();
    r.min_eigenvalue = std::min(r.min_eigenvalue, ev.minCoeff());
    r.max_eigenvalue = std::max(r.max_eigenvalue, ev.maxCoeff());
    const double root = std::pow(Eigen::JacobiSVD<Eigen::MatrixXd>(an).singularValues()(0), 1.0 / n);
    r.root_norms.push_back(root);
    // ||a^n||^2 is an eigenvalue of a^n (a^*)^n, so the n-th root is squeezed towards 1.
    const double lo = std::pow(r.bounds.minus.value, 0.5 / n) - tol;
    const double hi = std::pow(r.bounds.plus.value, 0.5 / n) + tol;
    if (root < lo || root > hi) ok = false;
  }
  r.passed = ok && r.min_eigenvalue >= r.bounds.minus.value - tol && r.max_eigenvalue <= r.bounds.plus.value + tol;
  return r;
}

ProductValue epsilon_product(double s, double tol) {
  if (!(s >= 0.0 && s < 1.0)) throw std::domain_error("epsilon needs 0 <= s < 1");
  ProductValue out;
  out.value = 1.0;
  if (s == 0.0) return out;
  // |log((1-t)/(1+t))| = 2 artanh(t) <= 2t / (1 - t^2).
  for (int k = 1;; ++k) {
    const double t = std::pow(s, k);
    const double tail = 2.0 * t / ((1.0 - s) * (1.0 - t * t));
    const double err = out.value * std::expm1(tail);
    if ((err <= tol && t < 0.25 * std::numeric_limits<double>::epsilon()) || t < std::numeric_limits<double>::min()) {
      out.error_bound = err;
      return out;
    }
    out.value *= (1.0 - t) / (1.0 + t);
    ++out.terms;
  }
}

ProductValue epsilon_theta(double s, double tol) {
  if (!(s >= 0.0 && s < 1.0)) throw std::domain_error("epsilon needs 0 <= s < 1");
  ProductValue out;
  out.value = 1.0;
  if (s == 0.0) return out;
  double sum = 0.0;
  for (int k = 1;; ++k) {
    // Alternating with decreasing magnitude: the tail is below the first omitted term.
    // Terms are cheap, so keep going past tol down to double resolution.
    const double next = 2.0 * std::pow(s, static_cast<double>(k) * k);
    if (next <= std::min(tol, 1e-18) || next == 0.0) {
      out.error_bound = next;
      break;
    }
    sum += (k % 2 ? -next : next);
    ++out.terms;
  }
  out.value = 1.0 + sum;
  return out;
}

ProductValue epsilon(double s, double tol) {
  const ProductValue product = epsilon_product(s, tol);
  const ProductValue theta = epsilon_theta(s, tol);
  const double agree = 10.0 * std::max(tol, 4.0 * std::numeric_limits<double>::epsilon());
  if (std::abs(product.value - theta.value) > agree)
    throw std::runtime_error("epsilon: product and theta series disagree");
  return theta;
}

double epsilon_threshold(double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
  auto f = [](double q) { return epsilon(q).value - q * q; };
  double lo = 0.3;
  double hi = 0.6;
  double flo = f(lo);
  if (!(flo > 0.0 && f(hi) < 0.0)) throw std::runtime_error("epsilon threshold not bracketed by [0.3, 0.6]");
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm > 0.0) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

template <class R>
PowerSeries<R> v_series(const R& alpha, const R& beta, const R& q, int K) {
  if (K < 0) throw std::invalid_argument("K must be non-negative");
  PowerSeries<R> s{alpha, beta, q, {}};
  s.c.reserve(static_cast<std::size_t>(K) + 1);
  s.c.push_back(R(1));
  R qk(1);  // q^k
  for (int k = 0; k < K; ++k) {
    const R denom = R(1) - qk * q;
    if (ScalarTraits<R>::is_zero(denom, 0.0)) throw std::domain_error("v_series: 1 - q^{k+1} vanishes");
    s.c.push_back((alpha - qk * beta) / denom * s.c.back());
    qk *= q;
  }
  return s;
}

template <class R>
std::vector<R> functional_equation_residual(const PowerSeries<R>& s) {
  const std::size_t n = s.c.size();
  std::vector<R> out(n);
  R qk(1);
  std::vector<R> scaled(n);  // coefficients of V(qz)
  for (std::size_t k = 0; k < n; ++k) {
    scaled[k] = qk * s.c[k];
    qk *= s.q;
  }
  for (std::size_t k = 0; k < n; ++k) {
    R v = scaled[k] - s.c[k];
    if (k > 0) v += s.alpha * s.c[k - 1] - s.beta * scaled[k - 1];
    out[k] = v;
  }
  return out;
}

namespace {

Complex sum_of(const std::vector<Complex>& terms) {
  Complex acc = 0.0;
  for (const Complex& t : terms) acc += t;
  return acc;
}

RationalFunction sum_of(const std::vector<RationalFunction>& terms) { return RationalFunction::sum(terms); }

}  // namespace

template <class R>
std::vector<R> cauchy_product(const std::vector<R>& a, const std::vector<R>& b, std::size_t terms) {
  std::vector<R> out(terms);
  std::vector<R> products;
  for (std::size_t k = 0; k < terms; ++k) {
    products.clear();
    for (std::size_t i = 0; i <= k; ++i) {
      if (i < a.size() && k - i < b.size()) products.push_back(a[i] * b[k - i]);
    }
    out[k] = sum_of(products);
  }
  return out;
}

template struct PowerSeries<RationalFunction>;
template struct PowerSeries<Complex>;
template PowerSeries<RationalFunction> v_series(const RationalFunction&, const RationalFunction&,
                                                const RationalFunction&, int);
template PowerSeries<Complex> v_series(const Complex&, const Complex&, const Complex&, int);
template std::vector<RationalFunction> functional_equation_residual(const PowerSeries<RationalFunction>&);
template std::vector<Complex> functional_equation_residual(const PowerSeries<Complex>&);
template std::vector<RationalFunction> cauchy_product(const std::vector<RationalFunction>&,
                                                      const std::vector<RationalFunction>&, std::size_t);
template std::vector<Complex> cauchy_product(const std::vector<Complex>&, const std::vector<Complex>&, std::size_t);

namespace {

using IntPoly = std::vector<mpz_class>;

void add_product(IntPoly& acc, const IntPoly& a, const IntPoly& b) {
  if (a.empty() || b.empty()) return;
  if (acc.size() < a.size() + b.size() - 1) acc.resize(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (sgn(a[i]) == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) mpz_addmul(acc[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
  }
}

void trim(IntPoly& p) {
  while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

// P_k(x, y) = prod_{j<k} (x - y q^j) for k = 0..K.
std::vector<IntPoly> pochhammer_numerators(const mpz_class& x, const mpz_class& y, int K) {
  std::vector<IntPoly> out{IntPoly{1}};
  for (int k = 0; k < K; ++k) {
    const IntPoly& p = out.back();
    IntPoly next(p.size() + static_cast<std::size_t>(k), 0);
    for (std::size_t n = 0; n < p.size(); ++n) {
      next[n] += x * p[n];
      next[n + static_cast<std::size_t>(k)] -= y * p[n];
    }
    trim(next);
    out.push_back(std::move(next));
  }
  return out;
}

}  // namespace

ChainCheck v_chain_check(const mpq_class& alpha, const mpq_class& beta, const mpq_class& gamma, int K) {
  if (K < 0) throw std::invalid_argument("K must be non-negative");
  mpz_class D = 1;
  for (const mpq_class* x : {&alpha, &beta, &gamma}) mpz_lcm(D.get_mpz_t(), D.get_mpz_t(), x->get_den_mpz_t());
  auto scaled = [&D](const mpq_class& x) { return mpz_class(x.get_num() * (D / x.get_den())); };
  const mpz_class a = scaled(alpha);
  const mpz_class b = scaled(beta);
  const mpz_class c = scaled(gamma);
  // c_k of V_{xy} is D^{-k} P_k(x, y) / (q;q)_k, so order k of the chain times D^k (q;q)_k reads
  // sum_i [k choose i]_q P_i(a, b) P_{k-i}(b, c) = P_k(a, c).
  const auto ab = pochhammer_numerators(a, b, K);
  const auto bc = pochhammer_numerators(b, c, K);
  const auto ac = pochhammer_numerators(a, c, K);
  std::vector<IntPoly> binom{IntPoly{1}};  // row k of the Gaussian binomials
  ChainCheck out;
  out.passed = true;
  for (int k = 0; k <= K; ++k) {
    if (k > 0) {
      std::vector<IntPoly> row(static_cast<std::size_t>(k) + 1);
      row[0] = IntPoly{1};
      row[static_cast<std::size_t>(k)] = IntPoly{1};
      for (int i = 1; i < k; ++i) {
        // [k, i] = [k-1, i-1] + q^i [k-1, i]
        IntPoly r = binom[static_cast<std::size_t>(i) - 1];
        const IntPoly& up = binom[static_cast<std::size_t>(i)];
        if (r.size() < up.size() + static_cast<std::size_t>(i)) r.resize(up.size() + static_cast<std::size_t>(i));
        for (std::size_t n = 0; n < up.size(); ++n) r[n + static_cast<std::size_t>(i)] += up[n];
        row[static_cast<std::size_t>(i)] = std::move(r);
      }
      binom = std::move(row);
    }
    IntPoly lhs;
    for (int i = 0; i <= k; ++i) {
      IntPoly term;
      add_product(term, ab[static_cast<std::size_t>(i)], bc[static_cast<std::size_t>(k - i)]);
      add_product(lhs, binom[static_cast<std::size_t>(i)], term);
    }
    trim(lhs);
    if (lhs != ac[static_cast<std::size_t>(k)]) {
      out.passed = false;
      out.max_deviation = std::numeric_limits<double>::infinity();
      break;
    }
  }
  return out;
}

ChainCheck v_chain_check(double alpha, double beta, double gamma, QParam q, int K) {
  const Complex qv(q.value());
  const auto ab = v_series<Complex>(alpha, beta, qv, K);
  const auto bg = v_series<Complex>(beta, gamma, qv, K);
  const auto ag = v_series<Complex>(alpha, gamma, qv, K);
  const auto prod = cauchy_product(ab.c, bg.c, ag.c.size());
  ChainCheck out;
  for (std::size_t k = 0; k < prod.size(); ++k) out.max_deviation = std::max(out.max_deviation, std::abs(prod[k] - ag.c[k]));
  out.passed = out.max_deviation <= 1e-12;
  return out;
}

QExponential q_exponential(Complex z, QParam q, int K) {
  const double qv = open_q(q);
  // V_{10} has radius 1, so Exp_q converges for |z| < 1/(1-q).
  if (std::abs((1.0 - qv) * z) >= 1.0) throw std::domain_error("q_exponential: z at or beyond the radius");
  const auto s = v_series<Complex>(Complex(1.0), Complex(0.0), Complex(qv), K);
  auto eval = [&](Complex w) {
    const Complex x = (1.0 - qv) * w;
    Complex acc = 0.0;
    for (auto it = s.c.rbegin(); it != s.c.rend(); ++it) acc = acc * x + *it;
    return acc;
  };
  QExponential out;
  out.value = eval(z);
  if (z != Complex(0.0)) {
    const Complex dq = (out.value - eval(qv * z)) / (z - qv * z);
    out.dq_residual = std::abs(dq - out.value);
  }
  return out;
}

namespace {

std::vector<Complex> v10_coefficients(double q, int N) {
  return v_series<Complex>(Complex(1.0), Complex(0.0), Complex(q), N).c;
}

}  // namespace

RadonNikodym::RadonNikodym(const fock::TruncatedRep& rep, wick::ModeVector<Complex> phi, wick::ModeVector<Complex> psi)
    : rep_(&rep), phi_(std::move(phi)), psi_(std::move(psi)) {
  if (phi_.size() != rep.d || psi_.size() != rep.d) throw std::invalid_argument("mode vector dimension mismatch");
  if (wick::norm(phi_) >= 1.0 || wick::norm(psi_) >= 1.0)
    throw std::domain_error("radon_nikodym needs ||phi||, ||psi|| < 1; peripheral states admit no intertwiner");
  series_ = v10_coefficients(rep.q, rep.N);
  const auto& space = rep.space;
  const fock::Vector omega = space.vacuum();
  const double n_phi = space.norm(space.series(series_, phi_, omega));
  const double n_psi = space.norm(space.series(series_, psi_, omega));
  scale_ = n_psi / n_phi;
}

fock::Vector RadonNikodym::apply(const fock::Vector& x) const {
  const auto& space = rep_->space;
  const auto& basis = space.basis();
  // Solve V_{10}(A^+(psi)) y = x degree by degree: the operator is unit lower
  // triangular in the grading, so y_n = x_n - sum_{k>=1} c_k (P^k y)_n.
  fock::Vector y = fock::Vector::Zero(x.size());
  for (int n = 0; n <= rep_->N; ++n) {
    const auto lo = static_cast<Eigen::Index>(basis.offset(n));
    const auto len = static_cast<Eigen::Index>(basis.block_size(n));
    // P^k y_{n-k} for k = 1..n: accumulate the lower degrees through Horner.
    fock::Vector acc = fock::Vector::Zero(x.size());
    for (int m = 0; m < n; ++m) {
      fock::Vector part = fock::Vector::Zero(x.size());
      const auto mlo = static_cast<Eigen::Index>(basis.offset(m));
      const auto mlen = static_cast<Eigen::Index>(basis.block_size(m));
      part.segment(mlo, mlen) = y.segment(mlo, mlen);
      for (int k = 0; k < n - m; ++k) part = space.create(psi_, part);
      acc += series_[static_cast<std::size_t>(n - m)] * part;
    }
    y.segment(lo, len) = x.segment(lo, len) - acc.segment(lo, len);
  }
  return space.series(series_, phi_, y);
}

Complex RadonNikodym::transported_expectation(const wick::FloatPolynomial& x) const {
  const auto& space = rep_->space;
  const fock::Vector omega = space.vacuum();
  fock::Vector omega_psi = space.series(series_, psi_, omega);
  omega_psi /= space.norm(omega_psi);
  const fock::Vector moved = scale_ * apply(omega_psi);
  return space.inner(moved, space.apply(x, moved));
}

Eigen::MatrixXcd RadonNikodym::matrix() const {
  rep_->require_matrices();
  const auto n = static_cast<Eigen::Index>(rep_->dim());
  Eigen::MatrixXcd v(n, n);
  for (Eigen::Index j = 0; j < n; ++j) v.col(j) = rep_->to_orthonormal(apply(rep_->transform.col(j)));
  return v;
}

RadonNikodym radon_nikodym(const fock::TruncatedRep& rep, const wick::ModeVector<Complex>& phi,
                           const wick::ModeVector<Complex>& psi) {
  return RadonNikodym(rep, phi, psi);
}

}  // namespace qccr::single_mode
