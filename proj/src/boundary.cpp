#include "qccr/boundary.hpp"

#include <cmath>
#include <stdexcept>

namespace qccr::boundary {

namespace {

void require_unit_ball(const wick::ModeVector<Complex>& phi) {
  if (wick::norm(phi) > 1.0 + kAdmissibleTolerance)
    throw std::domain_error("q = 1 evaluation needs ||phi|| <= 1 (the spectrum is the unit ball)");
}

template <class Coef>
Complex evaluate_commutative(const wick::WickPolynomial<Coef>& p, const wick::ModeVector<Complex>& phi,
                             Complex (*coef)(const Coef&)) {
  if (phi.size() != p.modes()) throw std::invalid_argument("mode vector dimension mismatch");
  require_unit_ball(phi);
  Complex total = 0.0;
  for (const auto& [w, c] : p.terms()) {
    Complex v = coef(c);
    for (const auto& s : w) v *= s.is_creator() ? std::conj(phi[s.mode]) : phi[s.mode];
    total += v;
  }
  return total;
}

Complex float_coef(const Complex& c) { return c; }
Complex exact_coef(const RationalFunction& c) { return c.evaluate(Complex(1.0)); }

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Matrix pauli(char which) {
  Matrix m(2, 2);
  switch (which) {
    case 'X': m << 0, 1, 1, 0; break;
    case 'Y': m << 0, Complex(0, -1), Complex(0, 1), 0; break;
    case 'Z': m << 1, 0, 0, -1; break;
    default: m = Matrix::Identity(2, 2);
  }
  return m;
}

Matrix pauli_word(const std::string& letters) {
  Matrix out = Matrix::Identity(1, 1);
  for (char c : letters) out = kron(out, pauli(c));
  return out;
}

}  // namespace

Complex q1_coherent_eval(const wick::FloatPolynomial& p, const wick::ModeVector<Complex>& phi) {
  return evaluate_commutative<Complex>(p, phi, float_coef);
}

Complex q1_coherent_eval(const wick::ExactPolynomial& p, const wick::ModeVector<Complex>& phi) {
  return evaluate_commutative<RationalFunction>(p, phi, exact_coef);
}

Complex BilinearForm::operator()(const wick::ModeVector<Complex>& f, const wick::ModeVector<Complex>& g) const {
  if (f.size() != modes() || g.size() != modes()) throw std::invalid_argument("mode vector dimension mismatch");
  Complex acc = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i)
    for (std::size_t j = 0; j < g.size(); ++j)
      acc += f[i] * theta(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) * g[j];
  return acc;
}

Eigen::VectorXd realify(const wick::ModeVector<Complex>& f) {
  const auto d = static_cast<Eigen::Index>(f.size());
  Eigen::VectorXd x(2 * d);
  for (Eigen::Index k = 0; k < d; ++k) {
    x(k) = f[static_cast<std::size_t>(k)].real();
    x(d + k) = f[static_cast<std::size_t>(k)].imag();
  }
  return x;
}

wick::ModeVector<Complex> complexify(const Eigen::VectorXd& x) {
  const Eigen::Index d = x.size() / 2;
  wick::ModeVector<Complex> f(static_cast<std::size_t>(d));
  for (Eigen::Index k = 0; k < d; ++k) f[static_cast<std::size_t>(k)] = Complex(x(k), x(d + k));
  return f;
}

RealForm theta_to_real_form(const BilinearForm& form) {
  const Matrix& t = form.theta;
  if (t.rows() != t.cols() || t.rows() == 0) throw std::invalid_argument("theta must be a non-empty square matrix");
  if ((t - t.transpose()).cwiseAbs().maxCoeff() > 1e-14 * std::max(1.0, t.cwiseAbs().maxCoeff()))
    throw std::invalid_argument("theta must be symmetric");
  const Eigen::Index d = t.rows();
  const Eigen::MatrixXd R = t.real();
  const Eigen::MatrixXd S = t.imag();
  // Re(f^T theta g) on (Re f, Im f) x (Re g, Im g) is [[R, -S], [-S, -R]].
  Eigen::MatrixXd m(2 * d, 2 * d);
  m << R, -S, -S, -R;
  RealForm out;
  out.Theta = 0.5 * (Eigen::MatrixXd::Identity(2 * d, 2 * d) + m);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(out.Theta);
  out.eigenvalues = es.eigenvalues();
  out.eigenvectors = es.eigenvectors();
  const double low = out.eigenvalues.minCoeff();
  out.admissible = low >= -kAdmissibleTolerance;
  if (out.admissible && low < 0.0)
    out.warning = "real form has eigenvalue " + std::to_string(low) + " within tolerance of zero; treated as admissible";
  for (Eigen::Index k = 0; k < out.eigenvalues.size(); ++k) {
    if (out.eigenvalues(k) > kRankCutoff) {
      ++out.rank;
    } else {
      wick::ModeVector<Complex> f = complexify(out.eigenvectors.col(k));
      for (auto& x : f) x *= Complex(0, -1);
      out.null_directions.push_back(std::move(f));
    }
  }
  return out;
}

std::vector<Matrix> clifford_generators(std::size_t r) {
  const std::size_t m = (r + 1) / 2;
  std::vector<Matrix> out;
  for (std::size_t k = 0; k < r; ++k) {
    std::string letters(m, 'I');
    const std::size_t site = k / 2;
    for (std::size_t j = 0; j < site; ++j) letters[j] = 'Z';
    if (r % 2 == 1 && k + 1 == r) {
      letters[site] = 'Z';
    } else {
      letters[site] = k % 2 == 0 ? 'X' : 'Y';
    }
    out.push_back(pauli_word(letters));
  }
  return out;
}

Matrix CliffordRep::s_of(const Eigen::VectorXd& x) const {
  if (x.size() != directions.rows()) throw std::invalid_argument("vector dimension mismatch");
  Matrix out = Matrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::size_t k = 0; k < r; ++k) out += directions.col(static_cast<Eigen::Index>(k)).dot(x) * s[k];
  return out;
}

Matrix CliffordRep::s_of(const wick::ModeVector<Complex>& f) const { return s_of(realify(f)); }

Matrix CliffordRep::creator(const wick::ModeVector<Complex>& f) const {
  wick::ModeVector<Complex> if_ = f;
  for (auto& x : if_) x *= Complex(0, 1);
  return s_of(f) - Complex(0, 1) * s_of(if_);
}

Matrix CliffordRep::annihilator(const wick::ModeVector<Complex>& f) const { return creator(f).adjoint(); }

CliffordReps clifford_rep(const BilinearForm& theta) {
  const RealForm rf = theta_to_real_form(theta);
  if (!rf.admissible) throw std::domain_error("theta is not admissible: its real form is not positive semidefinite");
  CliffordRep full;
  full.modes = theta.modes();
  full.r = rf.rank;
  full.s = clifford_generators(full.r);
  full.dim = std::size_t{1} << ((full.r + 1) / 2);
  // Null directions are dropped: the corresponding generators vanish.
  full.directions = Eigen::MatrixXd(rf.Theta.rows(), static_cast<Eigen::Index>(full.r));
  Eigen::Index col = 0;
  for (Eigen::Index k = 0; k < rf.eigenvalues.size(); ++k) {
    if (rf.eigenvalues(k) > kRankCutoff)
      full.directions.col(col++) = std::sqrt(rf.eigenvalues(k)) * rf.eigenvectors.col(k);
  }

  CliffordReps out;
  out.full = full;
  if (full.r % 2 == 0) {
    out.irreducible.push_back(full);
    return out;
  }
  // With the diagonal last generator the central element is diagonal, so its
  // eigenspaces are coordinate subsets.
  const CentralElement c = central_element(full);
  for (const Complex label : c.labels) {
    std::vector<Eigen::Index> idx;
    for (Eigen::Index k = 0; k < c.s_hat.rows(); ++k)
      if (std::abs(c.s_hat(k, k) - label) < 1e-12) idx.push_back(k);
    CliffordRep part = full;
    part.dim = idx.size();
    part.label = label;
    for (auto& g : part.s) {
      Matrix sub(static_cast<Eigen::Index>(idx.size()), static_cast<Eigen::Index>(idx.size()));
      for (std::size_t a = 0; a < idx.size(); ++a)
        for (std::size_t b = 0; b < idx.size(); ++b)
          sub(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = g(idx[a], idx[b]);
      g = std::move(sub);
    }
    out.irreducible.push_back(std::move(part));
  }
  return out;
}

CentralElement central_element(const CliffordRep& rep) {
  if (rep.r % 2 == 0) throw std::domain_error("the product of the generators is central only for odd r");
  const auto n = static_cast<Eigen::Index>(rep.dim);
  const Matrix I = Matrix::Identity(n, n);
  CentralElement c;
  c.s_hat = I;
  for (const auto& g : rep.s) c.s_hat = c.s_hat * g;
  // s_1...s_r squared reorders into (-1)^{r(r-1)/2}.
  c.square_sign = (rep.r * (rep.r - 1) / 2) % 2 == 0 ? 1 : -1;
  c.unitarity_residual = (c.s_hat.adjoint() * c.s_hat - I).cwiseAbs().maxCoeff();
  c.square_residual = (c.s_hat * c.s_hat - static_cast<double>(c.square_sign) * I).cwiseAbs().maxCoeff();
  for (const auto& g : rep.s)
    c.commutator_residual = std::max(c.commutator_residual, (c.s_hat * g - g * c.s_hat).cwiseAbs().maxCoeff());
  const Complex root = c.square_sign > 0 ? Complex(1.0) : Complex(0.0, 1.0);
  c.labels = {root, -root};
  return c;
}

BilinearForm coherent_theta(const wick::ModeVector<Complex>& phi) {
  const auto d = static_cast<Eigen::Index>(phi.size());
  BilinearForm b;
  b.theta = Matrix(d, d);
  for (Eigen::Index j = 0; j < d; ++j)
    for (Eigen::Index k = 0; k < d; ++k)
      b.theta(j, k) = std::conj(phi[static_cast<std::size_t>(j)]) * std::conj(phi[static_cast<std::size_t>(k)]);
  return b;
}

std::size_t commutant_dimension(const std::vector<Matrix>& generators, double cutoff) {
  if (generators.empty()) throw std::invalid_argument("no generators");
  const Eigen::Index n = generators.front().rows();
  const Matrix I = Matrix::Identity(n, n);
  // vec(M g - g M) = (g^T (x) I - I (x) g) vec(M) in column-major vec.
  Matrix stacked(n * n * static_cast<Eigen::Index>(generators.size()), n * n);
  for (std::size_t k = 0; k < generators.size(); ++k)
    stacked.middleRows(static_cast<Eigen::Index>(k) * n * n, n * n) =
        kron(generators[k].transpose(), I) - kron(I, generators[k]);
  Eigen::BDCSVD<Matrix> svd(stacked);
  std::size_t null = 0;
  const auto& s = svd.singularValues();
  for (Eigen::Index k = 0; k < n * n; ++k)
    if (k >= s.size() || s(k) <= cutoff) ++null;
  return null;
}

}  // namespace qccr::boundary
