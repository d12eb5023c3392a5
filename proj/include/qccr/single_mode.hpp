#pragma once

// One generator: the weighted shift, its norm, the beta/epsilon products,
// the V_{alpha beta} series and the q-exponential.

#include <Eigen/Dense>

#include <vector>

#include "qccr/fock.hpp"
#include "qccr/wick.hpp"

namespace qccr::single_mode {

/// Truncated infinite product or series with a certified bound on |value - exact|.
struct ProductValue {
  double value = 0.0;
  int terms = 0;
  double error_bound = 0.0;
};

/// a_0 on |0>..|N>: entry (n, n+1) = sqrt(1 - q^{n+1}); the creator is its transpose.
Eigen::MatrixXd shift_matrix(QParam q, int N);

struct ShiftNorm {
  double numeric = 0.0;
  double closed_form = 0.0;
};
ShiftNorm shift_norm(QParam q, int N);

struct BetaBounds {
  ProductValue minus;
  ProductValue plus;
};
/// Uniform bounds beta_- <= a^n (a^*)^n <= beta_+.
BetaBounds beta_bounds(QParam q, double tol);

struct PowerBoundReport {
  BetaBounds bounds;
  double min_eigenvalue = 0.0;
  double max_eigenvalue = 0.0;
  /// ||a^n||^{1/n} for n = 1..n_max.
  std::vector<double> root_norms;
  bool passed = false;
};
PowerBoundReport verify_power_bounds(QParam q, int N, int n_max, double tol = 1e-12);

ProductValue epsilon_product(double s, double tol);
ProductValue epsilon_theta(double s, double tol);
/// prod (1-s^k)/(1+s^k) = sum_k (-1)^k s^{k^2}; both are evaluated and must agree.
ProductValue epsilon(double s, double tol = 1e-14);

/// Root of epsilon(q) = q^2, bisected on [0.3, 0.6] to width tol.
double epsilon_threshold(double tol = 1e-12);

template <class R>
struct PowerSeries {
  R alpha;
  R beta;
  R q;
  std::vector<R> c;  // c_0 .. c_K
};

/// c_0 = 1, c_{k+1} = (alpha - q^k beta) / (1 - q^{k+1}) c_k.
template <class R>
PowerSeries<R> v_series(const R& alpha, const R& beta, const R& q, int K);

/// Coefficients 0..K of V(qz)(1 - beta z) - (1 - alpha z) V(z).
template <class R>
std::vector<R> functional_equation_residual(const PowerSeries<R>& s);

template <class R>
std::vector<R> cauchy_product(const std::vector<R>& a, const std::vector<R>& b, std::size_t terms);

struct ChainCheck {
  bool passed = false;
  double max_deviation = 0.0;  // 0 in exact mode when passed
};
/// V_{alpha beta} V_{beta gamma} = V_{alpha gamma} through order K, exactly in the symbolic q.
/// Order k is checked after clearing (q;q)_k and the common denominator of alpha, beta, gamma,
/// which leaves an identity between integer polynomials in q.
ChainCheck v_chain_check(const mpq_class& alpha, const mpq_class& beta, const mpq_class& gamma, int K);
/// Numeric q, coefficients compared within 1e-12.
ChainCheck v_chain_check(double alpha, double beta, double gamma, QParam q, int K);

struct QExponential {
  Complex value;
  /// |(E(z) - E(qz)) / (z - qz) - E(z)|; zero at z = 0 where the quotient is undefined.
  double dq_residual = 0.0;
};
/// Exp_q(z) = sum z^k / [k]_q!, evaluated as V_{10}((1-q) z).
QExponential q_exponential(Complex z, QParam q, int K);

/// v = V_{10}(A^+(phi)) V_{10}(A^+(psi))^{-1} on a truncated Fock space, with
/// scale = ||Omega_psi|| / ||Omega_phi|| so that omega_phi(X) = omega_psi((scale v)^* X (scale v)).
class RadonNikodym {
 public:
  RadonNikodym(const fock::TruncatedRep& rep, wick::ModeVector<Complex> phi, wick::ModeVector<Complex> psi);

  /// v x in word coordinates.
  fock::Vector apply(const fock::Vector& x) const;
  double scale() const { return scale_; }
  /// omega_psi((scale v)^* X (scale v)) evaluated in the truncated space.
  Complex transported_expectation(const wick::FloatPolynomial& x) const;
  /// Dense matrix of v in the orthonormal basis; needs a rep with matrices.
  Eigen::MatrixXcd matrix() const;

 private:
  const fock::TruncatedRep* rep_;
  wick::ModeVector<Complex> phi_;
  wick::ModeVector<Complex> psi_;
  std::vector<Complex> series_;  // V_{10} coefficients
  double scale_ = 1.0;
};

RadonNikodym radon_nikodym(const fock::TruncatedRep& rep, const wick::ModeVector<Complex>& phi,
                           const wick::ModeVector<Complex>& psi);

}  // namespace qccr::single_mode
