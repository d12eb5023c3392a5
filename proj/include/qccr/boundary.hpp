#pragma once

// The endpoints q = 1 (commutative, evaluation at phi) and q = -1, where a
// symmetric bilinear form theta fixes a Clifford algebra through the real
// quadratic form 2 Theta(f, g) = Re(<f, g> + theta(f, g)).

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <vector>

#include "qccr/wick.hpp"

namespace qccr::boundary {

using Matrix = Eigen::MatrixXcd;

inline constexpr double kAdmissibleTolerance = 1e-12;
inline constexpr double kRankCutoff = 1e-10;

/// Value at q = 1: c_i -> conj(phi_i), a_i -> phi_i, order ignored.
Complex q1_coherent_eval(const wick::FloatPolynomial& p, const wick::ModeVector<Complex>& phi);
/// Coefficients evaluated at q = 1 (a pole there is a domain_error).
Complex q1_coherent_eval(const wick::ExactPolynomial& p, const wick::ModeVector<Complex>& phi);

/// theta(f, g) = f^T theta g; symmetric.
struct BilinearForm {
  Matrix theta;
  std::size_t modes() const { return static_cast<std::size_t>(theta.rows()); }
  Complex operator()(const wick::ModeVector<Complex>& f, const wick::ModeVector<Complex>& g) const;
};

/// Realification x = (Re f, Im f) in R^{2d}.
Eigen::VectorXd realify(const wick::ModeVector<Complex>& f);
wick::ModeVector<Complex> complexify(const Eigen::VectorXd& x);

struct RealForm {
  Eigen::MatrixXd Theta;
  Eigen::VectorXd eigenvalues;  // ascending
  Eigen::MatrixXd eigenvectors;
  std::size_t rank = 0;
  bool admissible = false;
  /// Admissible only within tolerance: min eigenvalue in (-1e-12, 0).
  std::optional<std::string> warning;
  /// Unit vectors f = -i (a + i b) for the null directions (a, b) of Theta.
  std::vector<wick::ModeVector<Complex>> null_directions;
};

RealForm theta_to_real_form(const BilinearForm& theta);

struct CliffordRep {
  std::size_t modes = 0;
  std::size_t r = 0;
  std::size_t dim = 0;
  /// Hermitian unitaries with s_i s_j + s_j s_i = 2 delta_ij.
  std::vector<Matrix> s;
  /// 2d x r; column k is sqrt(Theta_k) u_k, so s(x) = sum_k (column_k . x) s_k.
  Eigen::MatrixXd directions;
  /// Eigenvalue of the central element on this summand (irreducible summands of odd r only).
  std::optional<Complex> label;

  Matrix s_of(const Eigen::VectorXd& x) const;
  Matrix s_of(const wick::ModeVector<Complex>& f) const;
  /// a^+(f) = s(f) - i s(if).
  Matrix creator(const wick::ModeVector<Complex>& f) const;
  Matrix annihilator(const wick::ModeVector<Complex>& f) const;
};

struct CliffordReps {
  CliffordRep full;  // dimension 2^{ceil(r/2)}
  /// full itself for even r; the two summands of dimension 2^{(r-1)/2} for odd r.
  std::vector<CliffordRep> irreducible;
};

/// Anticommuting Hermitian unitaries on ceil(r/2) qubits: pairs Z..Z X I.., Z..Z Y I..,
/// and for odd r the diagonal Z..Z as the last generator.
std::vector<Matrix> clifford_generators(std::size_t r);

CliffordReps clifford_rep(const BilinearForm& theta);

struct CentralElement {
  Matrix s_hat;
  int square_sign = 0;  // s_hat^2 = square_sign * I
  double unitarity_residual = 0.0;
  double square_residual = 0.0;
  double commutator_residual = 0.0;
  std::vector<Complex> labels;
};
/// s_hat = s_1 ... s_r; odd r only.
CentralElement central_element(const CliffordRep& rep);

/// theta(f, g) = <phi, f><phi, g>.
BilinearForm coherent_theta(const wick::ModeVector<Complex>& phi);

/// Dimension of {M : [M, g] = 0 for all g}.
std::size_t commutant_dimension(const std::vector<Matrix>& generators, double cutoff = 1e-9);

}  // namespace qccr::boundary
