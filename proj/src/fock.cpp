#include "qccr/fock.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qccr/single_mode.hpp"

namespace qccr::fock {

BudgetExceeded::BudgetExceeded(std::size_t requested, std::size_t budget)
    : std::runtime_error("basis of " + std::to_string(requested) + " words exceeds the budget of " +
                         std::to_string(budget)),
      requested_(requested),
      budget_(budget) {}

StateViolation::StateViolation(double min_eigenvalue, double phi_norm)
    : std::domain_error("coherent Gram matrix has eigenvalue " + std::to_string(min_eigenvalue) + " for ||phi|| = " +
                        std::to_string(phi_norm) + ": no state satisfies the coherent-state condition"),
      min_eigenvalue_(min_eigenvalue) {}

// ---------------------------------------------------------------- WordBasis

std::size_t WordBasis::count(std::size_t d, int N) {
  if (d == 0 || N < 0) throw std::invalid_argument("word basis needs d >= 1 and N >= 0");
  std::size_t total = 0;
  std::size_t block = 1;
  for (int n = 0; n <= N; ++n) {
    total += block;
    if (n < N && block > std::numeric_limits<std::size_t>::max() / d / 2) return std::numeric_limits<std::size_t>::max();
    block *= d;
  }
  return total;
}

WordBasis::WordBasis(std::size_t d, int N) : d_(d), N_(N) {
  if (count(d, N) == std::numeric_limits<std::size_t>::max()) throw std::overflow_error("word basis too large");
  offsets_.push_back(0);
  std::size_t block = 1;
  for (int n = 0; n <= N; ++n) {
    powers_.push_back(block);
    offsets_.push_back(offsets_.back() + block);
    block *= d;
  }
  powers_.push_back(block);
}

int WordBasis::length(std::size_t index) const {
  if (index >= size()) throw std::out_of_range("word index out of range");
  const auto it = std::upper_bound(offsets_.begin(), offsets_.end(), index);
  return static_cast<int>(it - offsets_.begin()) - 1;
}

std::vector<std::size_t> WordBasis::word(std::size_t index) const {
  const int n = length(index);
  std::size_t r = index - offset(n);
  std::vector<std::size_t> w(static_cast<std::size_t>(n));
  for (int k = n - 1; k >= 0; --k) {
    w[static_cast<std::size_t>(k)] = r % d_;
    r /= d_;
  }
  return w;
}

std::size_t WordBasis::index(const std::vector<std::size_t>& word) const {
  if (word.size() > static_cast<std::size_t>(N_)) throw std::out_of_range("word longer than the truncation");
  std::size_t r = 0;
  for (std::size_t letter : word) {
    if (letter >= d_) throw std::out_of_range("letter out of range");
    r = r * d_ + letter;
  }
  return offset(static_cast<int>(word.size())) + r;
}

std::size_t WordBasis::prepend(std::size_t letter, std::size_t index) const {
  const int n = length(index);
  if (n >= N_) throw std::out_of_range("prepend beyond the truncation");
  return offset(n + 1) + letter * powers_[static_cast<std::size_t>(n)] + (index - offset(n));
}

// ------------------------------------------------------------ FockWordSpace

FockWordSpace::FockWordSpace(std::size_t d, double q, int N, std::size_t budget) : basis_(1, 0), q_(q) {
  if (!(q >= -1.0 && q <= 1.0)) throw std::domain_error("q must lie in [-1, 1]");
  if (N < 0) throw std::invalid_argument("N must be non-negative");
  const std::size_t n = WordBasis::count(d, N);
  if (n > budget) throw BudgetExceeded(n, budget);
  basis_ = WordBasis(d, N);
}

Vector FockWordSpace::vacuum() const {
  Vector v = Vector::Zero(static_cast<Eigen::Index>(size()));
  v(0) = 1.0;
  return v;
}

Vector FockWordSpace::create(std::size_t i, const Vector& x) const {
  if (i >= modes()) throw std::out_of_range("mode index out of range");
  Vector out = Vector::Zero(x.size());
  const int N = max_degree();
  for (int n = 0; n < N; ++n) {
    const auto len = static_cast<Eigen::Index>(basis_.block_size(n));
    const auto dst = static_cast<Eigen::Index>(basis_.offset(n + 1) + i * basis_.block_size(n));
    out.segment(dst, len) = x.segment(static_cast<Eigen::Index>(basis_.offset(n)), len);
  }
  return out;
}

Vector FockWordSpace::annihilate_upto(std::size_t i, const Vector& x, int m) const {
  const std::size_t d = modes();
  Vector out = Vector::Zero(static_cast<Eigen::Index>(basis_.size_upto(m - 1)));
  std::vector<double> weight(static_cast<std::size_t>(m));  // (1-q) q^k
  for (int k = 0; k < m; ++k) weight[static_cast<std::size_t>(k)] = (1.0 - q_) * std::pow(q_, k);
  for (int n = 1; n <= m; ++n) {
    const std::size_t src = basis_.offset(n);
    const std::size_t dst = basis_.offset(n - 1);
    const std::size_t block = basis_.block_size(n);
    for (std::size_t r = 0; r < block; ++r) {
      const Complex v = x(static_cast<Eigen::Index>(src + r));
      if (v == Complex(0.0)) continue;
      // Position k counts from the left; p = d^{n-1-k} is its place value.
      std::size_t p = block / d;
      for (int k = 0; k < n; ++k, p /= d) {
        if ((r / p) % d != i) continue;
        const std::size_t reduced = (r / (p * d)) * p + r % p;
        out(static_cast<Eigen::Index>(dst + reduced)) += weight[static_cast<std::size_t>(k)] * v;
      }
    }
  }
  return out;
}

Vector FockWordSpace::annihilate(std::size_t i, const Vector& x) const {
  if (i >= modes()) throw std::out_of_range("mode index out of range");
  Vector out = Vector::Zero(x.size());
  const int N = max_degree();
  if (N == 0) return out;
  const Vector low = annihilate_upto(i, x, N);
  out.head(low.size()) = low;
  return out;
}

Vector FockWordSpace::create(const wick::ModeVector<Complex>& f, const Vector& x) const {
  if (f.size() != modes()) throw std::invalid_argument("mode vector dimension mismatch");
  Vector out = Vector::Zero(x.size());
  for (std::size_t i = 0; i < f.size(); ++i)
    if (f[i] != Complex(0.0)) out += f[i] * create(i, x);
  return out;
}

Vector FockWordSpace::annihilate(const wick::ModeVector<Complex>& f, const Vector& x) const {
  if (f.size() != modes()) throw std::invalid_argument("mode vector dimension mismatch");
  Vector out = Vector::Zero(x.size());
  for (std::size_t i = 0; i < f.size(); ++i)
    if (f[i] != Complex(0.0)) out += std::conj(f[i]) * annihilate(i, x);
  return out;
}

Vector FockWordSpace::series(const std::vector<Complex>& c, const wick::ModeVector<Complex>& f,
                             const Vector& x) const {
  if (c.empty()) return Vector::Zero(x.size());
  Vector acc = c.back() * x;
  for (std::size_t k = c.size() - 1; k-- > 0;) acc = c[k] * x + create(f, acc);
  return acc;
}

Vector FockWordSpace::apply(const wick::FloatPolynomial& p, const Vector& x) const {
  if (p.modes() != modes()) throw std::invalid_argument("polynomial over a different number of modes");
  Vector out = Vector::Zero(x.size());
  for (const auto& [w, c] : p.terms()) {
    Vector y = x;
    for (auto it = w.rbegin(); it != w.rend(); ++it) y = it->is_creator() ? create(it->mode, y) : annihilate(it->mode, y);
    out += c * y;
  }
  return out;
}

// G = e_0 e_0^T + sum_i M_i G R_i, where M_i prepends letter i and R_i is the
// word-coordinate annihilator; the recursion shrinks by one degree per level.
Vector FockWordSpace::gram_apply_upto(const Vector& x, int m) const {
  Vector z = Vector::Zero(x.size());
  z(0) = x(0);
  if (m == 0) return z;
  for (std::size_t i = 0; i < modes(); ++i) {
    const Vector s = gram_apply_upto(annihilate_upto(i, x, m), m - 1);
    for (int n = 0; n < m; ++n) {
      const auto len = static_cast<Eigen::Index>(basis_.block_size(n));
      const auto dst = static_cast<Eigen::Index>(basis_.offset(n + 1) + i * basis_.block_size(n));
      z.segment(dst, len) += s.segment(static_cast<Eigen::Index>(basis_.offset(n)), len);
    }
  }
  return z;
}

Vector FockWordSpace::gram_apply(const Vector& x) const {
  if (static_cast<std::size_t>(x.size()) != size()) throw std::invalid_argument("vector size does not match basis");
  return gram_apply_upto(x, max_degree());
}

Complex FockWordSpace::inner(const Vector& x, const Vector& y) const { return x.dot(gram_apply(y)); }

double FockWordSpace::norm(const Vector& x) const { return std::sqrt(std::max(0.0, inner(x, x).real())); }

Eigen::MatrixXd FockWordSpace::gram_block(int n) const {
  const std::size_t d = modes();
  Eigen::MatrixXd g = Eigen::MatrixXd::Ones(1, 1);
  std::size_t block = 1;
  for (int len = 1; len <= n; ++len) {
    const std::size_t prev = block;
    block *= d;
    Eigen::MatrixXd next = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(block), static_cast<Eigen::Index>(block));
    for (std::size_t u = 0; u < block; ++u) {
      const std::size_t first = u / prev;
      const std::size_t rest = u % prev;
      for (std::size_t v = 0; v < block; ++v) {
        double acc = 0.0;
        std::size_t p = prev;
        double w = 1.0 - q_;
        for (int k = 0; k < len; ++k, p /= d, w *= q_) {
          if ((v / p) % d != first) continue;
          const std::size_t reduced = (v / (p * d)) * p + v % p;
          acc += w * g(static_cast<Eigen::Index>(rest), static_cast<Eigen::Index>(reduced));
        }
        next(static_cast<Eigen::Index>(u), static_cast<Eigen::Index>(v)) = acc;
      }
    }
    g = std::move(next);
  }
  return g;
}

// ------------------------------------------------------------- TruncatedRep

void TruncatedRep::require_matrices() const {
  if (!has_matrices())
    throw std::logic_error("representation was built without dense matrices (basis above the dense limit)");
}

Matrix TruncatedRep::gram() const {
  require_matrices();
  const auto n = static_cast<Eigen::Index>(space.size());
  Matrix g = Matrix::Zero(n, n);
  for (int k = 0; k <= N; ++k) {
    const auto lo = static_cast<Eigen::Index>(space.basis().offset(k));
    const auto len = static_cast<Eigen::Index>(space.basis().block_size(k));
    g.block(lo, lo, len, len) = gram_blocks[static_cast<std::size_t>(k)].cast<Complex>();
  }
  return g;
}

Vector TruncatedRep::vacuum() const {
  require_matrices();
  return to_orthonormal(space.vacuum());
}

Vector TruncatedRep::to_orthonormal(const Vector& word_coords) const {
  require_matrices();
  return to_orthonormal_map * word_coords;
}

Matrix TruncatedRep::creator(const wick::ModeVector<Complex>& f) const {
  require_matrices();
  if (f.size() != d) throw std::invalid_argument("mode vector dimension mismatch");
  Matrix m = Matrix::Zero(static_cast<Eigen::Index>(dim()), static_cast<Eigen::Index>(dim()));
  for (std::size_t i = 0; i < d; ++i) m += f[i] * Adag[i];
  return m;
}

Matrix TruncatedRep::annihilator(const wick::ModeVector<Complex>& f) const { return creator(f).adjoint(); }

namespace {

template <class Rep>
Matrix evaluate_words(const Rep& rep, const wick::FloatPolynomial& p, std::size_t d, Eigen::Index n) {
  if (p.modes() != d) throw std::invalid_argument("polynomial over a different number of modes");
  Matrix out = Matrix::Zero(n, n);
  for (const auto& [w, c] : p.terms()) {
    Matrix m = Matrix::Identity(n, n);
    for (const auto& s : w) m = m * (s.is_creator() ? rep.Adag[s.mode] : rep.A[s.mode]);
    out += c * m;
  }
  return out;
}

double operator_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  const Matrix gram = m.adjoint() * m;
  const double top = Eigen::SelfAdjointEigenSolver<Matrix>(gram, Eigen::EigenvaluesOnly).eigenvalues().maxCoeff();
  return std::sqrt(std::max(0.0, top));
}

}  // namespace

Matrix TruncatedRep::evaluate(const wick::FloatPolynomial& p) const {
  require_matrices();
  return evaluate_words(*this, p, d, static_cast<Eigen::Index>(dim()));
}

Matrix TruncatedRep::degree_projector(int m) const {
  require_matrices();
  const auto n = static_cast<Eigen::Index>(dim());
  Matrix P = Matrix::Zero(n, n);
  for (Eigen::Index k = 0; k < n; ++k)
    if (grading[static_cast<std::size_t>(k)] <= m) P(k, k) = 1.0;
  return P;
}

TruncatedRep build_fock_rep(std::size_t d, QParam q, int N, const BuildOptions& options) {
  q.require_open_interval();
  if (d == 0) throw std::invalid_argument("d must be at least 1");
  if (N < 1) throw std::invalid_argument("N must be at least 1");
  TruncatedRep rep(d, N, q.value(), FockWordSpace(d, q.value(), N, options.budget));
  if (rep.space.size() > options.dense_limit) return rep;

  const WordBasis& basis = rep.space.basis();
  // Per degree: W_n (orthonormal vectors as columns) and F_n = W_n^* G_n.
  std::vector<Matrix> W(static_cast<std::size_t>(N) + 1);
  std::vector<Matrix> F(static_cast<std::size_t>(N) + 1);
  for (int n = 0; n <= N; ++n) {
    Eigen::MatrixXd g = rep.space.gram_block(n);
    Eigen::LLT<Eigen::MatrixXd> llt(g);
    const bool ok = llt.info() == Eigen::Success &&
                    llt.matrixL().toDenseMatrix().diagonal().minCoeff() > std::sqrt(options.spectral_cutoff);
    if (ok) {
      const Eigen::MatrixXd L = llt.matrixL();
      const auto b = L.rows();
      W[static_cast<std::size_t>(n)] =
          L.transpose().triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(b, b)).cast<Complex>();
      F[static_cast<std::size_t>(n)] = L.transpose().cast<Complex>();
    } else {
      rep.used_spectral_fallback = true;
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g);
      std::vector<Eigen::Index> keep;
      for (Eigen::Index k = es.eigenvalues().size(); k-- > 0;)
        if (es.eigenvalues()(k) > options.spectral_cutoff) keep.push_back(k);
      rep.discarded += static_cast<std::size_t>(g.rows()) - keep.size();
      Matrix w(g.rows(), static_cast<Eigen::Index>(keep.size()));
      Matrix f(static_cast<Eigen::Index>(keep.size()), g.rows());
      for (std::size_t j = 0; j < keep.size(); ++j) {
        const double lambda = es.eigenvalues()(keep[j]);
        const Eigen::VectorXd u = es.eigenvectors().col(keep[j]);
        w.col(static_cast<Eigen::Index>(j)) = (u / std::sqrt(lambda)).cast<Complex>();
        f.row(static_cast<Eigen::Index>(j)) = (u.transpose() * std::sqrt(lambda)).cast<Complex>();
      }
      W[static_cast<std::size_t>(n)] = std::move(w);
      F[static_cast<std::size_t>(n)] = std::move(f);
    }
    rep.gram_blocks.push_back(std::move(g));
  }

  std::vector<Eigen::Index> on_offset{0};
  for (int n = 0; n <= N; ++n) on_offset.push_back(on_offset.back() + W[static_cast<std::size_t>(n)].cols());
  const Eigen::Index dim = on_offset.back();
  const auto words = static_cast<Eigen::Index>(basis.size());
  rep.transform = Matrix::Zero(words, dim);
  rep.to_orthonormal_map = Matrix::Zero(dim, words);
  for (int n = 0; n <= N; ++n) {
    const auto& w = W[static_cast<std::size_t>(n)];
    const auto lo = static_cast<Eigen::Index>(basis.offset(n));
    rep.transform.block(lo, on_offset[static_cast<std::size_t>(n)], w.rows(), w.cols()) = w;
    rep.to_orthonormal_map.block(on_offset[static_cast<std::size_t>(n)], lo, w.cols(), w.rows()) =
        F[static_cast<std::size_t>(n)];
    for (Eigen::Index k = 0; k < w.cols(); ++k) rep.grading.push_back(n);
  }

  // A^+_i maps degree n to n+1: F_{n+1} M_i W_n, where M_i selects the columns
  // of words starting with i.
  for (std::size_t i = 0; i < d; ++i) {
    Matrix adag = Matrix::Zero(dim, dim);
    for (int n = 0; n < N; ++n) {
      const auto block = static_cast<Eigen::Index>(basis.block_size(n));
      const auto& f_next = F[static_cast<std::size_t>(n) + 1];
      const auto& w = W[static_cast<std::size_t>(n)];
      adag.block(on_offset[static_cast<std::size_t>(n) + 1], on_offset[static_cast<std::size_t>(n)], f_next.rows(),
                 w.cols()) = f_next.middleCols(static_cast<Eigen::Index>(i) * block, block) * w;
    }
    rep.A.push_back(adag.adjoint());
    rep.Adag.push_back(std::move(adag));
  }
  return rep;
}

RelationResidual relation_residual(const TruncatedRep& rep) {
  rep.require_matrices();
  const auto n = static_cast<Eigen::Index>(rep.dim());
  Eigen::Index below = 0;  // orthonormal vectors of degree <= N-1 come first
  while (below < n && rep.grading[static_cast<std::size_t>(below)] < rep.N) ++below;
  RelationResidual out;
  for (std::size_t i = 0; i < rep.d; ++i) {
    for (std::size_t j = 0; j < rep.d; ++j) {
      Matrix r = rep.A[i] * rep.Adag[j] - rep.q * rep.Adag[j] * rep.A[i];
      if (i == j) r -= (1.0 - rep.q) * Matrix::Identity(n, n);
      out.uncompressed = std::max(out.uncompressed, operator_norm(r));
      out.compressed = std::max(out.compressed, operator_norm(r.topLeftCorner(below, below)));
    }
  }
  return out;
}

CoherentVector coherent_vector(const TruncatedRep& rep, const wick::ModeVector<Complex>& phi) {
  if (phi.size() != rep.d) throw std::invalid_argument("mode vector dimension mismatch");
  const double phi_norm = wick::norm(phi);
  if (phi_norm >= 1.0)
    throw std::domain_error("no coherent vector in Fock space for ||phi|| >= 1: peripheral and larger states have no "
                            "implementing vector");
  const auto& space = rep.space;
  const auto c =
      single_mode::v_series<Complex>(Complex(1.0), Complex(0.0), Complex(rep.q), rep.N).c;
  CoherentVector out;
  out.words = space.series(c, phi, space.vacuum());
  out.norm = space.norm(out.words);
  std::vector<wick::ModeVector<Complex>> probes;
  for (std::size_t i = 0; i < rep.d; ++i) {
    wick::ModeVector<Complex> e(rep.d, 0.0);
    e[i] = 1.0;
    probes.push_back(std::move(e));
  }
  if (phi_norm > 0.0) {
    wick::ModeVector<Complex> u = phi;
    for (auto& x : u) x /= phi_norm;
    probes.push_back(std::move(u));
  }
  for (const auto& f : probes) {
    const Complex eigen = wick::inner(f, phi);
    const Vector r = space.annihilate(f, out.words) - eigen * out.words;
    out.residual = std::max(out.residual, space.norm(r));
  }
  out.constant = phi_norm > 0.0 ? out.residual / std::pow(phi_norm, rep.N + 1) : 0.0;
  return out;
}

// --------------------------------------------------------------------- GNS

Matrix GNSSpace::creator(const wick::ModeVector<Complex>& f) const {
  if (f.size() != d) throw std::invalid_argument("mode vector dimension mismatch");
  const auto n = static_cast<Eigen::Index>(retained);
  Matrix m = Matrix::Zero(n, n);
  for (std::size_t i = 0; i < d; ++i) m += f[i] * Adag[i];
  return m;
}

Matrix GNSSpace::annihilator(const wick::ModeVector<Complex>& f) const { return creator(f).adjoint(); }

Matrix GNSSpace::evaluate(const wick::FloatPolynomial& p) const {
  return evaluate_words(*this, p, d, static_cast<Eigen::Index>(retained));
}

GNSSpace gns_from_state(const wick::ModeVector<Complex>& phi, QParam q, int L, const BuildOptions& options) {
  if (phi.empty()) throw std::invalid_argument("phi must have at least one mode");
  if (L < 0) throw std::invalid_argument("L must be non-negative");
  const std::size_t d = phi.size();
  const std::size_t count = WordBasis::count(d, L);
  if (count > options.budget) throw BudgetExceeded(count, options.budget);

  GNSSpace g;
  g.d = d;
  g.L = L;
  g.q = q.value();
  g.phi = phi;
  g.cutoff = options.spectral_cutoff;
  g.words = wick::creator_words(d, L);
  const WordBasis basis(d, L);

  std::vector<wick::FloatPolynomial> polys;
  polys.reserve(g.words.size());
  for (const auto& w : g.words) polys.push_back(wick::FloatPolynomial::word(d, wick::creator_word(w)));
  const auto sg = wick::coherent_gram(polys, phi, q);
  const auto n = static_cast<Eigen::Index>(g.words.size());
  g.gram = Matrix(n, n);
  for (Eigen::Index u = 0; u < n; ++u)
    for (Eigen::Index v = 0; v < n; ++v) g.gram(u, v) = sg(static_cast<std::size_t>(u), static_cast<std::size_t>(v));

  Eigen::SelfAdjointEigenSolver<Matrix> es(g.gram);
  g.min_gram_eigenvalue = es.eigenvalues().minCoeff();
  if (g.min_gram_eigenvalue < -options.spectral_cutoff) throw StateViolation(g.min_gram_eigenvalue, wick::norm(phi));

  std::vector<Eigen::Index> keep;
  for (Eigen::Index k = n; k-- > 0;)
    if (es.eigenvalues()(k) > options.spectral_cutoff) keep.push_back(k);
  g.retained = keep.size();
  const auto r = static_cast<Eigen::Index>(keep.size());
  g.transform = Matrix(n, r);
  Matrix F(r, n);  // W^* G
  for (Eigen::Index j = 0; j < r; ++j) {
    const double lambda = es.eigenvalues()(keep[static_cast<std::size_t>(j)]);
    const Vector u = es.eigenvectors().col(keep[static_cast<std::size_t>(j)]);
    g.transform.col(j) = u / std::sqrt(lambda);
    F.row(j) = u.adjoint() * std::sqrt(lambda);
  }
  g.omega = F.col(0);

  // a_i c_w in normal form is a combination of c_u a_v; on the cyclic space
  // the trailing annihilators act by the scalars phi_v.
  for (std::size_t i = 0; i < d; ++i) {
    Matrix R = Matrix::Zero(n, n);
    for (Eigen::Index col = 0; col < n; ++col) {
      wick::Word w{wick::annihilator(i)};
      for (std::size_t m : g.words[static_cast<std::size_t>(col)]) w.push_back(wick::creator(m));
      const auto normal = wick::normalize(wick::FloatPolynomial::word(d, std::move(w)), q);
      for (const auto& [word, c] : normal.terms()) {
        Complex value = c;
        std::vector<std::size_t> head;
        for (const auto& s : word) {
          if (s.is_creator()) {
            head.push_back(s.mode);
          } else {
            value *= phi[s.mode];
          }
        }
        R(static_cast<Eigen::Index>(basis.index(head)), col) += value;
      }
    }
    Matrix a = F * R * g.transform;
    g.Adag.push_back(a.adjoint());
    g.A.push_back(std::move(a));
  }
  return g;
}

// ------------------------------------------------------- projector, Cesaro

Projector fock_projector(const std::vector<Matrix>& annihilators, double cutoff) {
  if (annihilators.empty()) throw std::invalid_argument("no annihilators given");
  const Eigen::Index n = annihilators.front().cols();
  Projector out;
  out.P = Matrix::Zero(n, n);
  if (n == 0) return out;
  Matrix stacked(n * static_cast<Eigen::Index>(annihilators.size()), n);
  for (std::size_t i = 0; i < annihilators.size(); ++i)
    stacked.middleRows(static_cast<Eigen::Index>(i) * n, n) = annihilators[i];
  Eigen::BDCSVD<Matrix> svd(stacked, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const double scale = std::max(1.0, s.size() ? s(0) : 0.0);
  for (Eigen::Index k = 0; k < n; ++k) {
    const double sigma = k < s.size() ? s(k) : 0.0;
    if (sigma <= cutoff * scale) {
      const Vector v = svd.matrixV().col(k);
      out.P += v * v.adjoint();
      ++out.rank;
    }
  }
  return out;
}

Projector fock_projector(const TruncatedRep& rep) {
  rep.require_matrices();
  return fock_projector(rep.A);
}

Projector fock_projector(const GNSSpace& gns) { return fock_projector(gns.A); }

Matrix cesaro_mean(const Matrix& creator, int n) {
  if (n < 1) throw std::invalid_argument("n must be at least 1");
  Matrix power = creator;
  Matrix sum = creator;
  for (int k = 2; k <= n; ++k) {
    power = power * creator;
    sum += power;
  }
  return sum / static_cast<double>(n);
}

Matrix cesaro_mean(const TruncatedRep& rep, const wick::ModeVector<Complex>& phi, int n) {
  return cesaro_mean(rep.creator(phi), n);
}

Matrix cesaro_mean(const GNSSpace& gns, const wick::ModeVector<Complex>& phi, int n) {
  return cesaro_mean(gns.creator(phi), n);
}

CesaroScalar cesaro_scalar(Complex z, int n) {
  if (n < 1) throw std::invalid_argument("n must be at least 1");
  Complex sum = 0.0;
  Complex power = 1.0;
  for (int k = 1; k <= n; ++k) {
    power *= z;
    sum += power;
  }
  CesaroScalar out;
  out.value = std::abs(sum) / n;
  const double gap = std::abs(1.0 - z);
  out.bound = gap > 0.0 ? 2.0 / (n * gap) : std::numeric_limits<double>::infinity();
  return out;
}

// ---------------------------------------------------------------- rho, V_i

RhoReport rho_and_isometries(const TruncatedRep& rep) {
  rep.require_matrices();
  const auto n = static_cast<Eigen::Index>(rep.dim());
  Eigen::Index below = 0;
  while (below < n && rep.grading[static_cast<std::size_t>(below)] < rep.N) ++below;

  Matrix rho2 = Matrix::Zero(n, n);
  for (std::size_t i = 0; i < rep.d; ++i) rho2 += rep.Adag[i] * rep.A[i];
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho2);
  Eigen::VectorXd root(n);
  Eigen::VectorXd pinv(n);
  RhoReport out;
  for (Eigen::Index k = 0; k < n; ++k) {
    const double lambda = es.eigenvalues()(k) > -kSpectralCutoff ? std::max(0.0, es.eigenvalues()(k))
                                                                   : es.eigenvalues()(k);
    if (lambda < 0.0) throw std::runtime_error("sum of A^+_i A_i has a negative eigenvalue");
    root(k) = std::sqrt(lambda);
    pinv(k) = lambda > kSpectralCutoff ? 1.0 / root(k) : 0.0;
    if (lambda > kSpectralCutoff) ++out.rho_rank;
  }
  const Matrix& U = es.eigenvectors();
  out.rho = U * root.cast<Complex>().asDiagonal() * U.adjoint();
  const Matrix rho_pinv = U * pinv.cast<Complex>().asDiagonal() * U.adjoint();
  for (std::size_t i = 0; i < rep.d; ++i) out.V.push_back(rep.A[i] * rho_pinv);

  const auto d = static_cast<Eigen::Index>(rep.d);
  Matrix X(d * below, d * below);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      X.block(i * below, j * below, below, below) =
          (rep.A[static_cast<std::size_t>(i)] * rep.Adag[static_cast<std::size_t>(j)]).topLeftCorner(below, below);
      Matrix r = (out.V[static_cast<std::size_t>(i)] * out.V[static_cast<std::size_t>(j)].adjoint())
                     .topLeftCorner(below, below);
      if (i == j) r -= Matrix::Identity(below, below);
      out.isometry_residual = std::max(out.isometry_residual, operator_norm(r));
    }
  }
  out.min_block_eigenvalue = Eigen::SelfAdjointEigenSolver<Matrix>(X, Eigen::EigenvaluesOnly).eigenvalues().minCoeff();
  const double aq = std::abs(rep.q);
  out.bound = (1.0 - rep.q) / (1.0 - aq) * single_mode::epsilon(aq).value;
  return out;
}

}  // namespace qccr::fock
