#pragma once

// Degree-truncated representations for d generators.
//
// Two layers share one basis of creator words (length <= N, length-then-lex):
//  * FockWordSpace works in word coordinates with matrix-free creation,
//    annihilation and Gram products, so it scales to large N;
//  * TruncatedRep adds dense orthonormalized matrices A_i, A^+_i when the
//    basis is small enough to afford them.

#include <Eigen/Dense>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qccr/wick.hpp"

namespace qccr::fock {

using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

inline constexpr std::size_t kDefaultBudget = 200'000;
inline constexpr std::size_t kDefaultDenseLimit = 4096;
inline constexpr double kSpectralCutoff = 1e-10;

class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(std::size_t requested, std::size_t budget);
  std::size_t requested() const { return requested_; }
  std::size_t budget() const { return budget_; }

 private:
  std::size_t requested_;
  std::size_t budget_;
};

/// Raised when a coherent Gram matrix is indefinite, i.e. no state has those moments.
class StateViolation : public std::domain_error {
 public:
  StateViolation(double min_eigenvalue, double phi_norm);
  double min_eigenvalue() const { return min_eigenvalue_; }

 private:
  double min_eigenvalue_;
};

/// All words of length <= N over d letters; index arithmetic only.
class WordBasis {
 public:
  WordBasis(std::size_t d, int N);

  std::size_t letters() const { return d_; }
  int max_length() const { return N_; }
  std::size_t size() const { return offsets_.back(); }
  /// Number of words of length <= m.
  std::size_t size_upto(int m) const { return offsets_[static_cast<std::size_t>(m) + 1]; }
  /// Index of the first word of length n.
  std::size_t offset(int n) const { return offsets_[static_cast<std::size_t>(n)]; }
  std::size_t block_size(int n) const { return offset(n + 1) - offset(n); }
  int length(std::size_t index) const;
  std::vector<std::size_t> word(std::size_t index) const;
  std::size_t index(const std::vector<std::size_t>& word) const;
  /// Index of letter+word, for `index` of length < N.
  std::size_t prepend(std::size_t letter, std::size_t index) const;

  static std::size_t count(std::size_t d, int N);

 private:
  std::size_t d_;
  int N_;
  std::vector<std::size_t> offsets_;
  std::vector<std::size_t> powers_;
};

/// Truncated q-Fock space in word coordinates.
class FockWordSpace {
 public:
  FockWordSpace(std::size_t d, double q, int N, std::size_t budget = kDefaultBudget);

  const WordBasis& basis() const { return basis_; }
  std::size_t modes() const { return basis_.letters(); }
  int max_degree() const { return basis_.max_length(); }
  double q() const { return q_; }
  std::size_t size() const { return basis_.size(); }

  Vector vacuum() const;
  /// c_i x; the component pushed above degree N is dropped.
  Vector create(std::size_t i, const Vector& x) const;
  /// a_i x, exact on the truncated space.
  Vector annihilate(std::size_t i, const Vector& x) const;
  Vector create(const wick::ModeVector<Complex>& f, const Vector& x) const;
  Vector annihilate(const wick::ModeVector<Complex>& f, const Vector& x) const;
  /// sum_k c[k] A^+(f)^k x.
  Vector series(const std::vector<Complex>& c, const wick::ModeVector<Complex>& f, const Vector& x) const;
  /// p x with every word applied right to left.
  Vector apply(const wick::FloatPolynomial& p, const Vector& x) const;

  /// G x for the Fock Gram matrix G[u, v] = omega_0(u^* v).
  Vector gram_apply(const Vector& x) const;
  Complex inner(const Vector& x, const Vector& y) const;
  double norm(const Vector& x) const;

  /// Degree-n block of the Gram matrix.
  Eigen::MatrixXd gram_block(int n) const;

 private:
  Vector annihilate_upto(std::size_t i, const Vector& x, int m) const;
  Vector gram_apply_upto(const Vector& x, int m) const;

  WordBasis basis_;
  double q_;
};

struct BuildOptions {
  std::size_t budget = kDefaultBudget;
  /// Dense matrices are built only when the basis has at most this many words.
  std::size_t dense_limit = kDefaultDenseLimit;
  double spectral_cutoff = kSpectralCutoff;
};

struct TruncatedRep {
  TruncatedRep(std::size_t d_, int N_, double q_, FockWordSpace space_)
      : d(d_), N(N_), q(q_), space(std::move(space_)) {}

  std::size_t d = 0;
  int N = 0;
  double q = 0.0;
  FockWordSpace space;

  // Dense layer (empty when the basis exceeds the dense limit).
  std::vector<Eigen::MatrixXd> gram_blocks;
  /// Word coordinates -> orthonormal coordinates: x |-> F x, with F = W^* G.
  Matrix to_orthonormal_map;
  /// Columns are the orthonormal vectors in word coordinates (W).
  Matrix transform;
  std::vector<int> grading;
  std::vector<Matrix> A;
  std::vector<Matrix> Adag;
  bool used_spectral_fallback = false;
  std::size_t discarded = 0;

  bool has_matrices() const { return !A.empty(); }
  std::size_t dim() const { return static_cast<std::size_t>(transform.cols()); }
  Matrix gram() const;
  Vector vacuum() const;
  Vector to_orthonormal(const Vector& word_coords) const;
  Matrix creator(const wick::ModeVector<Complex>& f) const;
  Matrix annihilator(const wick::ModeVector<Complex>& f) const;
  Matrix evaluate(const wick::FloatPolynomial& p) const;
  /// Orthogonal projection onto degrees <= m.
  Matrix degree_projector(int m) const;
  void require_matrices() const;
};

TruncatedRep build_fock_rep(std::size_t d, QParam q, int N, const BuildOptions& options = {});

struct RelationResidual {
  double compressed = 0.0;    // degrees <= N-1
  double uncompressed = 0.0;  // truncation signature at the top degree
};
RelationResidual relation_residual(const TruncatedRep& rep);

struct CoherentVector {
  Vector words;  // unnormalized, word coordinates
  double norm = 0.0;
  /// max over basis vectors f of ||A(f) Omega - <f,phi> Omega||.
  double residual = 0.0;
  /// residual / ||phi||^{N+1}.
  double constant = 0.0;
};
/// Omega_phi = sum_{k<=N} c_k A^+(phi)^k Omega with c_k the V_{10} coefficients.
CoherentVector coherent_vector(const TruncatedRep& rep, const wick::ModeVector<Complex>& phi);

struct GNSSpace {
  std::size_t d = 0;
  int L = 0;
  double q = 0.0;
  wick::ModeVector<Complex> phi;
  std::vector<std::vector<std::size_t>> words;
  Matrix gram;
  double min_gram_eigenvalue = 0.0;
  double cutoff = kSpectralCutoff;
  Matrix transform;  // words x retained
  std::size_t retained = 0;
  std::vector<Matrix> A;
  std::vector<Matrix> Adag;
  Vector omega;

  Matrix creator(const wick::ModeVector<Complex>& f) const;
  Matrix annihilator(const wick::ModeVector<Complex>& f) const;
  Matrix evaluate(const wick::FloatPolynomial& p) const;
};

/// Creators are compressions (adjoints of the exact annihilators).
GNSSpace gns_from_state(const wick::ModeVector<Complex>& phi, QParam q, int L, const BuildOptions& options = {});

struct Projector {
  Matrix P;
  std::size_t rank = 0;
};
/// Orthogonal projector onto the joint kernel of the annihilators.
Projector fock_projector(const std::vector<Matrix>& annihilators, double cutoff = 1e-8);
Projector fock_projector(const TruncatedRep& rep);
Projector fock_projector(const GNSSpace& gns);

/// (1/n) sum_{k=1}^n creator^k.
Matrix cesaro_mean(const Matrix& creator, int n);
Matrix cesaro_mean(const TruncatedRep& rep, const wick::ModeVector<Complex>& phi, int n);
Matrix cesaro_mean(const GNSSpace& gns, const wick::ModeVector<Complex>& phi, int n);

struct CesaroScalar {
  double value = 0.0;  // |(1/n) sum_{k=1}^n z^k|
  double bound = 0.0;  // 2 / (n |1 - z|)
};
CesaroScalar cesaro_scalar(Complex z, int n);

struct RhoReport {
  Matrix rho;
  std::size_t rho_rank = 0;
  std::vector<Matrix> V;
  double min_block_eigenvalue = 0.0;
  double bound = 0.0;  // (1-q)/(1-|q|) epsilon(|q|)
  double isometry_residual = 0.0;
};
RhoReport rho_and_isometries(const TruncatedRep& rep);

}  // namespace qccr::fock
