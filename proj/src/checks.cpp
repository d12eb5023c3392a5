#include "qccr/checks.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <map>

#include "qccr/fock.hpp"
#include "qccr/parse.hpp"
#include "qccr/single_mode.hpp"

namespace qccr::checks {

Measurement at_most(std::string label, double measured, double bound, double tolerance) {
  return {std::move(label), measured, bound, tolerance, Relation::AtMost, measured <= bound + tolerance};
}

Measurement at_least(std::string label, double measured, double bound, double tolerance) {
  return {std::move(label), measured, bound, tolerance, Relation::AtLeast, measured >= bound - tolerance};
}

bool CheckResult::passed() const {
  return std::all_of(measurements.begin(), measurements.end(), [](const Measurement& m) { return m.passed; });
}

std::optional<Suite> parse_suite(const std::string& name) {
  static const std::map<std::string, Suite> names{{"wick", Suite::Wick},
                                                  {"fock", Suite::Fock},
                                                  {"single-mode", Suite::SingleMode},
                                                  {"boundary", Suite::Boundary},
                                                  {"acceptance", Suite::Acceptance}};
  const auto it = names.find(name);
  if (it == names.end()) return std::nullopt;
  return it->second;
}

std::string suite_name(Suite s) {
  switch (s) {
    case Suite::Wick: return "wick";
    case Suite::Fock: return "fock";
    case Suite::SingleMode: return "single-mode";
    case Suite::Boundary: return "boundary";
    case Suite::Acceptance: return "acceptance";
  }
  return "unknown";
}

double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

Complex random_complex(Rng& rng) { return {uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0)}; }

wick::ModeVector<Complex> random_mode_vector(Rng& rng, std::size_t d, double norm) {
  wick::ModeVector<Complex> f(d);
  double n = 0.0;
  while (n < 1e-3) {
    for (auto& x : f) x = random_complex(rng);
    n = wick::norm(f);
  }
  for (auto& x : f) x *= norm / n;
  return f;
}

namespace {

wick::Word random_word(Rng& rng, std::size_t d, int max_degree) {
  const int len = std::uniform_int_distribution<int>(0, max_degree)(rng);
  wick::Word w;
  for (int k = 0; k < len; ++k) {
    const std::size_t mode = std::uniform_int_distribution<std::size_t>(0, d - 1)(rng);
    w.push_back(std::uniform_int_distribution<int>(0, 1)(rng) ? wick::creator(mode) : wick::annihilator(mode));
  }
  return w;
}

}  // namespace

wick::FloatPolynomial random_float_polynomial(Rng& rng, std::size_t d, int max_degree, int terms) {
  wick::FloatPolynomial p(d);
  for (int t = 0; t < terms; ++t) p.add_term(random_word(rng, d, max_degree), random_complex(rng));
  return p;
}

wick::ExactPolynomial random_exact_polynomial(Rng& rng, std::size_t d, int max_degree, int terms) {
  wick::ExactPolynomial p(d);
  auto small = [&rng] {
    return mpq_class(std::uniform_int_distribution<int>(-9, 9)(rng), std::uniform_int_distribution<int>(1, 8)(rng));
  };
  for (int t = 0; t < terms; ++t) {
    mpq_class re = small();
    mpq_class im = small();
    re.canonicalize();
    im.canonicalize();
    p.add_term(random_word(rng, d, max_degree), RationalFunction(GaussianRational(re, im)));
  }
  return p;
}

namespace {

using fock::Matrix;
using wick::ExactPolynomial;
using wick::FloatPolynomial;
using wick::ModeVector;

constexpr double kPsdTolerance = 1e-10;

Matrix to_matrix(const wick::ScalarMatrix<Complex>& g) {
  Matrix m(static_cast<Eigen::Index>(g.rows), static_cast<Eigen::Index>(g.cols));
  for (std::size_t i = 0; i < g.rows; ++i)
    for (std::size_t j = 0; j < g.cols; ++j) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = g(i, j);
  return m;
}

double min_eigenvalue(const Matrix& h) {
  return Eigen::SelfAdjointEigenSolver<Matrix>(h, Eigen::EigenvaluesOnly).eigenvalues().minCoeff();
}

std::vector<FloatPolynomial> creator_word_polynomials(std::size_t d, int L) {
  std::vector<FloatPolynomial> out;
  for (const auto& w : wick::creator_words(d, L)) out.push_back(FloatPolynomial::word(d, wick::creator_word(w)));
  return out;
}

double coherent_gram_min(std::size_t d, int L, const ModeVector<Complex>& phi, double q) {
  return min_eigenvalue(to_matrix(wick::coherent_gram(creator_word_polynomials(d, L), phi, QParam::numeric(q))));
}

/// Fixed unit direction used when no phi is configured.
ModeVector<Complex> default_direction(std::size_t d) {
  ModeVector<Complex> f(d, 0.0);
  f[0] = 0.6;
  if (d > 1) {
    f[1] = Complex(0.0, 0.8);
  } else {
    f[0] = 1.0;
  }
  return f;
}

ModeVector<Complex> scaled(ModeVector<Complex> f, double s) {
  for (auto& x : f) x *= s;
  return f;
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", x);
  return buf;
}

Matrix random_unitary(Rng& rng, std::size_t d) {
  Matrix m(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = random_complex(rng);
  return Eigen::HouseholderQR<Matrix>(m).householderQ();
}

/// d = ceil(r/2) modes: zero form on full pairs plus a rank-one corner for odd r,
/// moved by a random unitary change of basis.
boundary::BilinearForm theta_of_rank(std::size_t r, Rng& rng) {
  const std::size_t d = (r + 1) / 2;
  Matrix t = Matrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  if (r % 2 == 1) t(static_cast<Eigen::Index>(d) - 1, static_cast<Eigen::Index>(d) - 1) = 1.0;
  const Matrix u = random_unitary(rng, d);
  boundary::BilinearForm b;
  b.theta = u.transpose() * t * u;
  b.theta = 0.5 * (b.theta + b.theta.transpose()).eval();
  return b;
}

// ------------------------------------------------------------------ wick

// One rewrite of the adjacency at `pos`, which must be (annihilator, creator).
ExactPolynomial rewrite_at(const wick::Word& w, std::size_t pos, std::size_t d) {
  const RationalFunction q = RationalFunction::q();
  ExactPolynomial out(d);
  wick::Word swapped = w;
  std::swap(swapped[pos], swapped[pos + 1]);
  out.add_term(swapped, q);
  if (w[pos].mode == w[pos + 1].mode) {
    wick::Word contracted(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(pos));
    contracted.insert(contracted.end(), w.begin() + static_cast<std::ptrdiff_t>(pos) + 2, w.end());
    out.add_term(contracted, RationalFunction(1) - q);
  }
  return out;
}

void wick_checks(const SuiteConfig& cfg, std::vector<CheckResult>& out) {
  Rng rng(cfg.seed);
  const std::size_t d = cfg.d;

  {
    CheckResult r{"wick.rewrite_examples", "a1 c1 and a1 c1 c1 normal forms match the iterated relation", {}};
    const bool one = wick::normalize(parse_polynomial("a1 c1", d)) == parse_polynomial("(1-q)*I + q*c1 a1", d);
    const bool two =
        wick::normalize(parse_polynomial("a1 c1 c1", d)) == parse_polynomial("(1-q^2)*c1 + q^2*c1 c1 a1", d);
    r.measurements.push_back(at_most("mismatches", (one ? 0 : 1) + (two ? 0 : 1), 0));
    out.push_back(std::move(r));
  }
  {
    CheckResult r{"wick.normal_form_properties",
                  "idempotence, adjoint compatibility and confluence on random exact polynomials", {}};
    int idem = 0;
    int adj = 0;
    int confl = 0;
    for (int t = 0; t < 25; ++t) {
      const ExactPolynomial p = random_exact_polynomial(rng, d, 4, 4);
      const ExactPolynomial n = wick::normalize(p);
      if (!(wick::normalize(n) == n) || !n.is_normal()) ++idem;
      if (!(wick::normalize(wick::adjoint(p)) == wick::adjoint(n))) ++adj;
      for (const auto& [w, c] : p.terms()) {
        std::vector<ExactPolynomial> results;
        for (std::size_t k = 0; k + 1 < w.size(); ++k) {
          if (!w[k].is_creator() && w[k + 1].is_creator()) results.push_back(wick::normalize(rewrite_at(w, k, d)));
        }
        for (std::size_t k = 1; k < results.size(); ++k)
          if (!(results[k] == results[0])) ++confl;
      }
    }
    r.measurements.push_back(at_most("idempotence failures", idem, 0));
    r.measurements.push_back(at_most("adjoint failures", adj, 0));
    r.measurements.push_back(at_most("confluence failures", confl, 0));
    out.push_back(std::move(r));
  }
  {
    CheckResult r{"wick.dual_map", "q -> 1/q with c <-> a sends each relation to -1/q times the transposed relation",
                  {}};
    int bad = 0;
    const RationalFunction q = RationalFunction::q();
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) {
        const auto image = wick::dual_q_map(wick::relation_polynomial<RationalFunction>(d, i, j, q));
        const auto expect = wick::relation_polynomial<RationalFunction>(d, j, i, q) * (RationalFunction(-1) / q);
        if (!(image == expect)) ++bad;
      }
    }
    r.measurements.push_back(at_most("mismatches", bad, 0));
    out.push_back(std::move(r));
  }
  {
    CheckResult r{"wick.peripheral", "||phi|| = 1: omega_phi((a+(phi) - 1)(a(phi) - 1)) vanishes exactly", {}};
    ModeVector<RationalFunction> phi(d, RationalFunction(0));
    if (d == 1) {
      phi[0] = RationalFunction(1);
    } else {
      phi[0] = RationalFunction(GaussianRational(mpq_class(3, 5)));
      phi[1] = RationalFunction(GaussianRational(0, mpq_class(4, 5)));
    }
    const auto one = ExactPolynomial::unit(d);
    const auto x = (ExactPolynomial::creator(phi) - one) * (ExactPolynomial::annihilator(phi) - one);
    const bool zero = wick::coherent_expectation(x, phi).is_zero();
    r.measurements.push_back(at_most("nonzero", zero ? 0 : 1, 0));
    out.push_back(std::move(r));
  }
  for (double qv : cfg.q_values) {
    const QParam q = QParam::numeric(qv);
    const std::string tag = " (q=" + fmt(qv) + ")";
    {
      CheckResult r{"wick.state_axioms", "omega(1) = 1, omega(p^*) = conj omega(p), Fock-state pairing" + tag, {}};
      const ModeVector<Complex> phi = cfg.phi.value_or(scaled(default_direction(d), 0.5));
      double unit_err = std::abs(wick::coherent_expectation(FloatPolynomial::unit(d), phi, q) - 1.0);
      double conj_err = 0.0;
      double fock_err = 0.0;
      for (int t = 0; t < 20; ++t) {
        const FloatPolynomial p = random_float_polynomial(rng, d, 4, 4);
        const Complex v = wick::coherent_expectation(p, phi, q);
        conj_err = std::max(conj_err, std::abs(wick::coherent_expectation(wick::adjoint(p), phi, q) - std::conj(v)));
        const auto f = random_mode_vector(rng, d, 1.0);
        const auto g = random_mode_vector(rng, d, 1.0);
        const ModeVector<Complex> zero(d, 0.0);
        const Complex fock =
            wick::coherent_expectation(FloatPolynomial::annihilator(f) * FloatPolynomial::creator(g), zero, q);
        fock_err = std::max(fock_err, std::abs(fock - (1.0 - qv) * wick::inner(f, g)));
      }
      r.measurements.push_back(at_most("|omega(1) - 1|", unit_err, 0.0, cfg.tol));
      r.measurements.push_back(at_most("max |omega(p^*) - conj omega(p)|", conj_err, 0.0, 1e-10));
      r.measurements.push_back(at_most("max |omega_0(a(f)a+(g)) - (1-q)<f,g>|", fock_err, 0.0, cfg.tol));
      out.push_back(std::move(r));
    }
    {
      const ModeVector<Complex> phi = cfg.phi.value_or(default_direction(d));
      const double n = wick::norm(phi);
      CheckResult r{"wick.positivity",
                    "coherent Gram over creator words of length <= " + std::to_string(cfg.L) + ", ||phi|| = " + fmt(n) +
                        tag,
                    {}};
      const double low = coherent_gram_min(d, cfg.L, phi, qv);
      if (n <= 1.0 + 1e-12) {
        r.measurements.push_back(at_least("min eigenvalue", low, 0.0, kPsdTolerance));
      } else {
        r.description += " (no state exists: indefinite Gram expected)";
        r.measurements.push_back(at_most("min eigenvalue", low, 0.0));
      }
      out.push_back(std::move(r));
    }
  }
}

// ----------------------------------------------------------- single mode

void single_mode_checks(const SuiteConfig& cfg, std::vector<CheckResult>& out) {
  using namespace single_mode;
  Rng rng(cfg.seed + 1);
  {
    CheckResult r{"single_mode.threshold", "root of epsilon(q) = q^2 near 0.44", {}};
    r.measurements.push_back(at_most("|q* - 0.44|", std::abs(epsilon_threshold(1e-12) - 0.44), 0.01));
    out.push_back(std::move(r));
  }
  {
    CheckResult r{"single_mode.v_series_exact", "V_{alpha beta} functional equation vanishes identically in q", {}};
    int bad = 0;
    const RationalFunction q = RationalFunction::q();
    for (auto [a, b] : {std::pair{1, 0}, std::pair{2, -1}, std::pair{0, 1}, std::pair{3, 3}}) {
      const auto s = v_series<RationalFunction>(RationalFunction(a), RationalFunction(b), q, 12);
      for (const auto& c : functional_equation_residual(s))
        if (!c.is_zero()) ++bad;
    }
    r.measurements.push_back(at_most("nonzero coefficients", bad, 0));
    out.push_back(std::move(r));
  }
  for (double qv : cfg.q_values) {
    const QParam q = QParam::numeric(qv);
    const std::string tag = " (q=" + fmt(qv) + ")";
    const int N = std::max(cfg.N, 2);
    {
      CheckResult r{"single_mode.shift", "weighted shift relation and norm, N = " + std::to_string(N) + tag, {}};
      const Eigen::MatrixXd a = shift_matrix(q, N);
      const Eigen::MatrixXd rel = a * a.transpose() - (1.0 - qv) * Eigen::MatrixXd::Identity(N + 1, N + 1) -
                                  qv * a.transpose() * a;
      r.measurements.push_back(at_most("relation residual below top", rel.topLeftCorner(N, N).cwiseAbs().maxCoeff(),
                                       0.0, cfg.tol));
      const ShiftNorm sn = shift_norm(q, N);
      const double expect = qv < 0.0 ? std::sqrt(1.0 - qv) : std::sqrt(1.0 - std::pow(qv, N));
      r.measurements.push_back(at_most("|numeric - max weight|", std::abs(sn.numeric - expect), 0.0, cfg.tol));
      r.measurements.push_back(at_most("numeric norm", sn.numeric, sn.closed_form, cfg.tol));
      out.push_back(std::move(r));
    }
    {
      CheckResult r{"single_mode.power_bounds", "beta_- <= a^n a*^n <= beta_+ on retained degrees" + tag, {}};
      const int n_max = std::min(5, N - 1);
      const PowerBoundReport p = verify_power_bounds(q, N + n_max, n_max);
      r.measurements.push_back(at_least("min eigenvalue", p.min_eigenvalue, p.bounds.minus.value, cfg.tol));
      r.measurements.push_back(at_most("max eigenvalue", p.max_eigenvalue, p.bounds.plus.value, cfg.tol));
      r.measurements.push_back(at_most("root-norm violations", p.passed ? 0 : 1, 0));
      out.push_back(std::move(r));
    }
    {
      CheckResult r{"single_mode.epsilon", "epsilon(|q|) product and theta series agree" + tag, {}};
      const double s = std::abs(qv);
      r.measurements.push_back(at_most(
          "|product - theta|", std::abs(epsilon_product(s, 1e-15).value - epsilon_theta(s, 1e-15).value), 0.0, 1e-12));
      out.push_back(std::move(r));
    }
    {
      CheckResult r{"single_mode.v_series", "V chain relation and functional equation in floating point" + tag, {}};
      double dev = 0.0;
      double fe = 0.0;
      for (int t = 0; t < 10; ++t) {
        const double a = uniform(rng, -1, 1);
        const double b = uniform(rng, -1, 1);
        const double c = uniform(rng, -1, 1);
        dev = std::max(dev, v_chain_check(a, b, c, q, 30).max_deviation);
        const auto s = v_series<Complex>(a, b, qv, 30);
        for (const Complex& x : functional_equation_residual(s)) fe = std::max(fe, std::abs(x));
      }
      r.measurements.push_back(at_most("max chain deviation", dev, 1e-12));
      r.measurements.push_back(at_most("max functional-equation residual", fe, 1e-12));
      out.push_back(std::move(r));
    }
    {
      CheckResult r{"single_mode.q_exponential", "D_q Exp_q = Exp_q at z = 0.3, K = 60" + tag, {}};
      r.measurements.push_back(at_most("D_q residual", q_exponential(0.3, q, 60).dq_residual, 1e-10));
      out.push_back(std::move(r));
    }
  }
}

// ------------------------------------------------------------------ fock

double vacuum_oracle_error(const fock::TruncatedRep& rep, Rng& rng, int count) {
  const fock::Vector omega = rep.vacuum();
  double worst = 0.0;
  for (int t = 0; t < count; ++t) {
    const ExactPolynomial p = random_exact_polynomial(rng, rep.d, 3, 4);
    const FloatPolynomial normal = wick::evaluate_at(wick::normalize(p), rep.q);
    const Complex exact = normal.coefficient({});
    const Complex matrix = omega.dot(rep.evaluate(wick::evaluate_at(p, rep.q)) * omega);
    worst = std::max(worst, std::abs(exact - matrix));
  }
  return worst;
}

void fock_checks(const SuiteConfig& cfg, std::vector<CheckResult>& out) {
  Rng rng(cfg.seed + 2);
  const std::size_t d = cfg.d;
  for (double qv : cfg.q_values) {
    const QParam q = QParam::numeric(qv);
    const std::string tag = " (d=" + std::to_string(d) + ", N=" + std::to_string(cfg.N) + ", q=" + fmt(qv) + ")";
    fock::BuildOptions opts;
    opts.budget = cfg.budget;
    const fock::TruncatedRep rep = fock::build_fock_rep(d, q, cfg.N, opts);

    const ModeVector<Complex> phi = cfg.phi.value_or(scaled(default_direction(d), 0.5));
    if (wick::norm(phi) < 1.0) {
      CheckResult r{"fock.coherent_vector", "A(f) Omega_phi = <f,phi> Omega_phi up to ||phi||^{N+1}" + tag, {}};
      const auto cv = fock::coherent_vector(rep, phi);
      r.measurements.push_back(at_most("eigen residual", cv.residual, 10.0 * std::pow(wick::norm(phi), cfg.N + 1)));
      out.push_back(std::move(r));
    }
    if (!rep.has_matrices()) {
      CheckResult r{"fock.dense_layer", "matrix checks skipped: basis above the dense limit" + tag, {}};
      r.measurements.push_back(at_least("basis size", static_cast<double>(rep.space.size()),
                                        static_cast<double>(fock::kDefaultDenseLimit)));
      out.push_back(std::move(r));
      continue;
    }
    {
      CheckResult r{"fock.relations", "A_i A+_j - (1-q) delta_ij - q A+_j A_i below the top degree" + tag, {}};
      const auto res = fock::relation_residual(rep);
      r.measurements.push_back(at_most("compressed residual", res.compressed, 0.0, cfg.tol));
      out.push_back(std::move(r));
    }
    {
      CheckResult r{"fock.gram", "Fock Gram blocks are positive semidefinite" + tag, {}};
      double low = std::numeric_limits<double>::infinity();
      for (const auto& g : rep.gram_blocks)
        low = std::min(low, Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(g, Eigen::EigenvaluesOnly).eigenvalues()(0));
      r.measurements.push_back(at_least("min eigenvalue", low, 0.0, kPsdTolerance));
      out.push_back(std::move(r));
    }
    {
      CheckResult r{"fock.grading", "A+_i raises degree by exactly one" + tag, {}};
      double leak = 0.0;
      for (const auto& m : rep.Adag)
        for (Eigen::Index i = 0; i < m.rows(); ++i)
          for (Eigen::Index j = 0; j < m.cols(); ++j)
            if (rep.grading[static_cast<std::size_t>(i)] != rep.grading[static_cast<std::size_t>(j)] + 1)
              leak = std::max(leak, std::abs(m(i, j)));
      r.measurements.push_back(at_most("off-grade magnitude", leak, 0.0));
      out.push_back(std::move(r));
    }
    if (cfg.N >= 3) {
      CheckResult r{"fock.oracle", "vacuum expectations match the exact engine for random degree <= 3 polynomials" + tag,
                    {}};
      r.measurements.push_back(at_most("max deviation", vacuum_oracle_error(rep, rng, 20), 1e-10));
      out.push_back(std::move(r));
    }
    {
      CheckResult r{"fock.soundness", "p and its normal form agree on degrees <= N - deg p" + tag, {}};
      double worst = 0.0;
      for (int t = 0; t < 10; ++t) {
        const ExactPolynomial p = random_exact_polynomial(rng, d, std::min(3, cfg.N), 3);
        const int keep = cfg.N - static_cast<int>(p.degree());
        if (keep < 0) continue;
        const Matrix diff =
            rep.evaluate(wick::evaluate_at(p, qv)) - rep.evaluate(wick::evaluate_at(wick::normalize(p), qv));
        Eigen::Index cols = 0;
        while (cols < diff.cols() && rep.grading[static_cast<std::size_t>(cols)] <= keep) ++cols;
        if (cols > 0) worst = std::max(worst, diff.leftCols(cols).cwiseAbs().maxCoeff());
      }
      r.measurements.push_back(at_most("max deviation", worst, 1e-10));
      out.push_back(std::move(r));
    }
    {
      CheckResult r{"fock.projector", "joint kernel of the annihilators is the vacuum line" + tag, {}};
      const auto P = fock::fock_projector(rep);
      r.measurements.push_back(at_most("|rank - 1|", std::abs(static_cast<double>(P.rank) - 1.0), 0));
      out.push_back(std::move(r));
    }
    if (d >= 2 && std::abs(qv) < 1.0) {
      CheckResult r{"fock.block_bound", "min eig of [A_i A+_j] below the top >= (1-q)/(1-|q|) epsilon(|q|)" + tag, {}};
      const auto rho = fock::rho_and_isometries(rep);
      r.measurements.push_back(at_least("min eigenvalue", rho.min_block_eigenvalue, rho.bound, 1e-8));
      out.push_back(std::move(r));
    }
    if (cfg.phi && wick::norm(*cfg.phi) <= 1.0 + 1e-12) {
      const auto& gphi = *cfg.phi;
      CheckResult r{"fock.gns", "GNS space of omega_phi: cyclic vector is a joint eigenvector" + tag, {}};
      const auto g = fock::gns_from_state(gphi, q, cfg.L, {cfg.budget});
      double eig = 0.0;
      for (std::size_t i = 0; i < d; ++i) {
        ModeVector<Complex> e(d, 0.0);
        e[i] = 1.0;
        eig = std::max(eig, (g.annihilator(e) * g.omega - wick::inner(e, gphi) * g.omega).norm());
      }
      r.measurements.push_back(at_most("eigen residual", eig, 1e-10));
      if (std::abs(wick::norm(gphi) - 1.0) < 1e-12) {
        double ces = 0.0;
        for (int n = 1; n <= 6; ++n)
          ces = std::max(ces, std::abs(g.omega.dot(fock::cesaro_mean(g, gphi, n) * g.omega) - 1.0));
        r.measurements.push_back(at_most("max |<Omega, M_n Omega> - 1|", ces, 1e-10));
        r.measurements.push_back(at_most("Fock projector rank", static_cast<double>(fock::fock_projector(g).rank), 0));
      }
      out.push_back(std::move(r));
    }
  }
}

// -------------------------------------------------------------- boundary

CheckResult clifford_check(const std::string& id, const boundary::BilinearForm& theta, Rng& rng,
                           std::optional<std::size_t> expected_rank) {
  const std::size_t d = theta.modes();
  const auto rf = boundary::theta_to_real_form(theta);
  const auto reps = boundary::clifford_rep(theta);
  const std::size_t r = reps.full.r;
  CheckResult res{id, "Clifford representation for r(theta) = " + std::to_string(r), {}};
  if (expected_rank) {
    res.measurements.push_back(
        at_most("|rank - expected|", std::abs(static_cast<double>(r) - static_cast<double>(*expected_rank)), 0));
  }
  res.measurements.push_back(
      at_most("|dim - 2^ceil(r/2)|",
              std::abs(static_cast<double>(reps.full.dim) - std::ldexp(1.0, static_cast<int>((r + 1) / 2))), 0));
  double anti = 0.0;
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j) {
      const auto& si = reps.full.s[i];
      const auto& sj = reps.full.s[j];
      Matrix m = si * sj + sj * si;
      if (i == j) m -= 2.0 * Matrix::Identity(si.rows(), si.cols());
      anti = std::max(anti, m.cwiseAbs().maxCoeff());
    }
  }
  res.measurements.push_back(at_most("anticommutator residual (exact)", anti, 0.0));
  double car = 0.0;
  double center = 0.0;
  for (const auto& rep : reps.irreducible) {
    const auto I = Matrix::Identity(static_cast<Eigen::Index>(rep.dim), static_cast<Eigen::Index>(rep.dim));
    for (int t = 0; t < 100; ++t) {
      const auto f = random_mode_vector(rng, d, uniform(rng, 0.2, 1.5));
      const auto g = random_mode_vector(rng, d, uniform(rng, 0.2, 1.5));
      const Matrix af = rep.annihilator(f);
      const Matrix cg = rep.creator(g);
      const Matrix cf = rep.creator(f);
      car = std::max(car, (af * cg + cg * af - 2.0 * wick::inner(f, g) * I).cwiseAbs().maxCoeff());
      center = std::max(center, (cf * cg + cg * cf - 2.0 * theta(f, g) * I).cwiseAbs().maxCoeff());
    }
  }
  res.measurements.push_back(at_most("a(f)a+(g) + a+(g)a(f) - 2<f,g>", car, 1e-12));
  res.measurements.push_back(at_most("a+(f)a+(g) + a+(g)a+(f) - 2 theta(f,g)", center, 1e-12));
  if (r % 2 == 1) {
    const auto c = boundary::central_element(reps.full);
    const int expect = r % 4 == 1 ? 1 : -1;
    res.measurements.push_back(at_most("s_hat^2 sign mismatch", c.square_sign == expect ? 0 : 1, 0));
    res.measurements.push_back(at_most("s_hat^2 residual", c.square_residual, 0.0));
    res.measurements.push_back(at_most("s_hat commutator residual", c.commutator_residual, 0.0));
    res.measurements.push_back(at_most("irreducible summands - 2", static_cast<double>(reps.irreducible.size()) - 2, 0));
  } else if (r > 0) {
    res.measurements.push_back(at_most(
        "|commutant dimension - 1|", std::abs(static_cast<double>(boundary::commutant_dimension(reps.full.s)) - 1.0), 0));
  }
  (void)rf;
  return res;
}

void boundary_checks(const SuiteConfig& cfg, std::vector<CheckResult>& out) {
  Rng rng(cfg.seed + 3);
  const std::size_t d = cfg.d;
  {
    CheckResult r{"boundary.q1", "q = 1 evaluation: multiplicative, kills commutators, matches the engine at q = 1", {}};
    double mult = 0.0;
    double comm = 0.0;
    double engine = 0.0;
    for (int t = 0; t < 50; ++t) {
      const auto phi = random_mode_vector(rng, d, uniform(rng, 0.0, 1.0));
      const auto p = random_float_polynomial(rng, d, 3, 3);
      const auto s = random_float_polynomial(rng, d, 3, 3);
      const Complex ep = boundary::q1_coherent_eval(p, phi);
      const Complex es = boundary::q1_coherent_eval(s, phi);
      mult = std::max(mult, std::abs(boundary::q1_coherent_eval(p * s, phi) - ep * es));
      comm = std::max(comm, std::abs(boundary::q1_coherent_eval(p * s - s * p, phi)));
      engine = std::max(engine, std::abs(wick::coherent_expectation(p * s, phi, QParam::numeric(1.0)) - ep * es));
    }
    r.measurements.push_back(at_most("multiplicativity", mult, 1e-12));
    r.measurements.push_back(at_most("commutator value", comm, 1e-12));
    r.measurements.push_back(at_most("engine at q=1 vs evaluation", engine, 1e-12));
    out.push_back(std::move(r));
  }
  {
    CheckResult r{"boundary.q1_bound", "sum_i value(c_i a_i) = ||phi||^2 <= 1 over a norm grid", {}};
    double dev = 0.0;
    double top = 0.0;
    FloatPolynomial number(d);
    for (std::size_t i = 0; i < d; ++i) number.add_term({wick::creator(i), wick::annihilator(i)}, 1.0);
    for (double n : {0.0, 0.25, 0.5, 0.75, 1.0}) {
      for (int t = 0; t < 5; ++t) {
        const auto phi = random_mode_vector(rng, d, n);
        const double v = boundary::q1_coherent_eval(number, phi).real();
        dev = std::max(dev, std::abs(v - n * n));
        top = std::max(top, v);
      }
    }
    r.measurements.push_back(at_most("|sum - ||phi||^2|", dev, 1e-12));
    r.measurements.push_back(at_most("max sum", top, 1.0, 1e-12));
    out.push_back(std::move(r));
  }
  {
    CheckResult r{"boundary.real_form", "rank and admissibility of reference forms", {}};
    boundary::BilinearForm zero{Matrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d))};
    const auto unit = default_direction(d);
    const auto rf0 = boundary::theta_to_real_form(zero);
    const auto rf1 = boundary::theta_to_real_form(boundary::coherent_theta(unit));
    const auto rfh = boundary::theta_to_real_form(boundary::coherent_theta(scaled(unit, 0.5)));
    boundary::BilinearForm twice = boundary::coherent_theta(unit);
    twice.theta *= 2.0;
    const auto rf2 = boundary::theta_to_real_form(twice);
    r.measurements.push_back(at_most("|r(0) - 2d|", std::abs(static_cast<double>(rf0.rank) - 2.0 * d), 0));
    r.measurements.push_back(at_most("|r(peripheral) - (2d-1)|", std::abs(static_cast<double>(rf1.rank) - (2.0 * d - 1)), 0));
    r.measurements.push_back(at_most("|r(||phi||=0.5) - 2d|", std::abs(static_cast<double>(rfh.rank) - 2.0 * d), 0));
    r.measurements.push_back(at_most("doubled rank-one form admissible", rf2.admissible ? 1 : 0, 0));
    out.push_back(std::move(r));
  }
  if (cfg.theta) {
    out.push_back(clifford_check("boundary.clifford_config", *cfg.theta, rng, std::nullopt));
  } else {
    for (std::size_t r = 1; r <= 6; ++r)
      out.push_back(clifford_check("boundary.clifford_r" + std::to_string(r), theta_of_rank(r, rng), rng, r));
  }
}

// ------------------------------------------------------------ acceptance

using Criterion = void (*)(std::vector<CheckResult>&);

// Each criterion seeds its own generator so any one can run alone.
void c1(std::vector<CheckResult>& out) {
  using namespace single_mode;
  {
    CheckResult r{"C1", "threshold q* of epsilon(q) = q^2 is within 0.01 of 0.44", {}};
    const double t = epsilon_threshold(1e-12);
    r.measurements.push_back(at_most("|q* - 0.44|, q* = " + fmt(t), std::abs(t - 0.44), 0.01));
    out.push_back(std::move(r));
  }
}

void c2(std::vector<CheckResult>& out) {
  using namespace single_mode;
  {
    CheckResult r{"C2", "shift norm: sqrt(1.5) at q=-0.5, N=10 and 1 at q=0.5, N=60", {}};
    r.measurements.push_back(
        at_most("|norm - sqrt(1.5)|", std::abs(shift_norm(QParam::numeric(-0.5), 10).numeric - std::sqrt(1.5)), 1e-12));
    r.measurements.push_back(
        at_most("|norm - 1|", std::abs(shift_norm(QParam::numeric(0.5), 60).numeric - 1.0), 1e-8));
    out.push_back(std::move(r));
  }
}

void c3(std::vector<CheckResult>& out) {
  using namespace single_mode;
  {
    CheckResult r{"C3", "epsilon product and theta series agree for s in {0.1, 0.5, 0.9}", {}};
    for (double s : {0.1, 0.5, 0.9}) {
      const double diff = std::abs(epsilon_product(s, 1e-15).value - epsilon_theta(s, 1e-15).value);
      r.measurements.push_back(at_most("s=" + fmt(s), diff, 1e-12));
    }
    out.push_back(std::move(r));
  }
}

void c4(std::vector<CheckResult>& out) {
  using namespace single_mode;
  {
    CheckResult r{"C4", "d=2, N=8: min eig of compressed [A_i A+_j] >= (1-q)/(1-|q|) epsilon(|q|) - 1e-8", {}};
    for (double q : {0.5, -0.5}) {
      const auto rep = fock::build_fock_rep(2, QParam::numeric(q), 8);
      const auto rho = fock::rho_and_isometries(rep);
      r.measurements.push_back(at_least("q=" + fmt(q), rho.min_block_eigenvalue, rho.bound, 1e-8));
    }
    out.push_back(std::move(r));
  }
}

void c5(std::vector<CheckResult>& out) {
  using namespace single_mode;
  {
    CheckResult r{"C5", "relation residual < 1e-12 for d=2, N=6 on the q grid", {}};
    for (double q : {-0.9, -0.5, 0.0, 0.5, 0.9}) {
      const auto rep = fock::build_fock_rep(2, QParam::numeric(q), 6);
      r.measurements.push_back(at_most("q=" + fmt(q), fock::relation_residual(rep).compressed, 1e-12));
    }
    out.push_back(std::move(r));
  }
}

void c6(std::vector<CheckResult>& out) {
  using namespace single_mode;
  {
    CheckResult r{"C6", "coherent Gram positivity for ||phi|| <= 1 and the ||phi|| = 1.2 violation (d=2, q=0.5)", {}};
    const auto u = default_direction(2);
    for (double n : {0.0, 0.5, 1.0})
      r.measurements.push_back(at_least("min eig ||phi||=" + fmt(n), coherent_gram_min(2, 4, scaled(u, n), 0.5), 0.0,
                                        kPsdTolerance));
    const auto big = scaled(u, 1.2);
    const double beta_plus = beta_bounds(QParam::numeric(0.5), 1e-15).plus.value;
    int first = 0;
    FloatPolynomial create = FloatPolynomial::creator(u);
    FloatPolynomial annihilate = FloatPolynomial::annihilator(u);
    FloatPolynomial cn = FloatPolynomial::unit(2);
    FloatPolynomial an = FloatPolynomial::unit(2);
    double formula = 0.0;  // omega equals ||phi||^{2N} for f along phi
    for (int N = 1; N <= 40 && (first == 0 || N <= 4); ++N) {
      cn = cn * create;
      an = an * annihilate;
      const double v = std::abs(wick::coherent_expectation(cn * an, big, QParam::numeric(0.5)));
      formula = std::max(formula, std::abs(v / std::pow(1.2, 2 * N) - 1.0));
      if (v > beta_plus && first == 0) first = N;
    }
    r.measurements.push_back(at_most("max relative |omega - ||phi||^{2N}|", formula, 1e-12));
    r.measurements.push_back(at_least("violation found (1 = yes)", first > 0 ? 1 : 0, 1));
    r.measurements.push_back(at_most("first N with omega > beta_+", first, 40));
    r.measurements.push_back(at_most("min eig ||phi||=1.2", coherent_gram_min(2, 4, big, 0.5), 0.0));
    out.push_back(std::move(r));
  }
}

void c7(std::vector<CheckResult>& out) {
  using namespace single_mode;
  {
    CheckResult r{"C7", "coherent vector residual <= 10 ||phi||^{N+1} (d=2, ||phi||=0.5, q=0.5)", {}};
    const auto phi = scaled(default_direction(2), 0.5);
    std::vector<double> res;
    for (int N : {8, 12}) {
      const auto rep = fock::build_fock_rep(2, QParam::numeric(0.5), N);
      const auto cv = fock::coherent_vector(rep, phi);
      res.push_back(cv.residual);
      r.measurements.push_back(at_most("N=" + std::to_string(N), cv.residual, 10.0 * std::pow(0.5, N + 1)));
    }
    r.measurements.push_back(at_most("residual ratio N=12 / N=8", res[1] / res[0], 2.0 * std::pow(0.5, 4)));
    out.push_back(std::move(r));
  }
}

void c8(std::vector<CheckResult>& out) {
  using namespace single_mode;
  Rng rng(20240611 + 8);
  {
    CheckResult r{"C8", "V chain relation exact through order 20 (symbolic q); D_q residual of Exp_q", {}};
    int bad = 0;
    auto rational = [&rng] {
      const int den = std::uniform_int_distribution<int>(1, 12)(rng);
      const int num = std::uniform_int_distribution<int>(-den, den)(rng);
      mpq_class x(num, den);
      x.canonicalize();
      return x;
    };
    for (int t = 0; t < 10; ++t) {
      const auto a = rational();
      const auto b = rational();
      const auto c = rational();
      if (!v_chain_check(a, b, c, 20).passed) ++bad;
    }
    r.measurements.push_back(at_most("inexact chains of 10", bad, 0));
    r.measurements.push_back(
        at_most("D_q residual z=0.3 q=0.5 K=60", q_exponential(0.3, QParam::numeric(0.5), 60).dq_residual, 1e-10));
    out.push_back(std::move(r));
  }
}

void c9(std::vector<CheckResult>& out) {
  using namespace single_mode;
  Rng rng(20240611 + 9);
  {
    CheckResult r{"C9", "Radon-Nikodym transport |omega_phi(X) - omega_psi(v*Xv)| < 1e-6 (d=2, N=14)", {}};
    const auto rep = fock::build_fock_rep(2, QParam::numeric(0.5), 14);
    const std::vector<std::pair<ModeVector<Complex>, ModeVector<Complex>>> pairs{
        {{0.4, 0.0}, {0.0, 0.3}}, {random_mode_vector(rng, 2, 0.5), random_mode_vector(rng, 2, 0.45)}};
    double worst = 0.0;
    for (const auto& [phi, psi] : pairs) {
      const auto v = radon_nikodym(rep, phi, psi);
      for (int t = 0; t < 20; ++t) {
        const auto x = random_float_polynomial(rng, 2, 3, 4);
        const Complex lhs = wick::coherent_expectation(x, phi, QParam::numeric(0.5));
        worst = std::max(worst, std::abs(lhs - v.transported_expectation(x)));
      }
    }
    r.measurements.push_back(at_most("max deviation over 2 x 20 polynomials", worst, 1e-6));
    out.push_back(std::move(r));
  }
}

void c10(std::vector<CheckResult>& out) {
  using namespace single_mode;
  Rng rng(20240611 + 10);
  {
    CheckResult r{"C10", "Clifford representations for r = 1..6 and the peripheral form at d = 2", {}};
    for (std::size_t rank = 1; rank <= 6; ++rank) {
      const auto c = clifford_check("r", theta_of_rank(rank, rng), rng, rank);
      for (auto m : c.measurements) {
        m.label = "r=" + std::to_string(rank) + ": " + m.label;
        r.measurements.push_back(std::move(m));
      }
    }
    const auto rf = boundary::theta_to_real_form(boundary::coherent_theta(random_mode_vector(rng, 2, 1.0)));
    r.measurements.push_back(at_least("peripheral r odd (1 = yes), r = " + std::to_string(rf.rank),
                                      rf.rank % 2 == 1 ? 1 : 0, 1));
    out.push_back(std::move(r));
  }
}

void c11(std::vector<CheckResult>& out) {
  {
    SuiteConfig cfg;
    cfg.d = 2;
    std::vector<CheckResult> tmp;
    boundary_checks(cfg, tmp);
    CheckResult r{"C11", "q = 1: evaluation multiplicative on 50 pairs, commutators vanish, sum of values = ||phi||^2 <= 1",
                  {}};
    for (const auto& c : tmp) {
      if (c.id != "boundary.q1" && c.id != "boundary.q1_bound") continue;
      for (const auto& m : c.measurements) r.measurements.push_back(m);
    }
    out.push_back(std::move(r));
  }
}

void c12(std::vector<CheckResult>& out) {
  Rng rng(20240611 + 12);
  {
    CheckResult r{"C12", "exact engine vs truncated vacuum expectations on 100 random polynomials (d=2, N=6)", {}};
    const std::vector<double> grid{-0.9, -0.5, 0.0, 0.5, 0.9};
    for (double q : grid) {
      const auto rep = fock::build_fock_rep(2, QParam::numeric(q), 6);
      r.measurements.push_back(at_most("q=" + fmt(q) + " (20 polynomials)", vacuum_oracle_error(rep, rng, 20), 1e-10));
    }
    out.push_back(std::move(r));
  }
}

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all{c1, c2, c3, c4, c5, c6, c7, c8, c9, c10, c11, c12};
  return all;
}

void acceptance_checks(std::vector<CheckResult>& out) {
  for (Criterion c : criteria()) c(out);
}

}  // namespace

std::size_t acceptance_count() { return criteria().size(); }

void run_criterion(std::size_t index, std::vector<CheckResult>& out) {
  if (index >= criteria().size()) throw std::out_of_range("no acceptance criterion " + std::to_string(index + 1));
  criteria()[index](out);
}

void run_suite(Suite suite, const SuiteConfig& config, std::vector<CheckResult>& out) {
  switch (suite) {
    case Suite::Wick: wick_checks(config, out); break;
    case Suite::Fock: fock_checks(config, out); break;
    case Suite::SingleMode: single_mode_checks(config, out); break;
    case Suite::Boundary: boundary_checks(config, out); break;
    case Suite::Acceptance: acceptance_checks(out); break;
  }
}

void run_acceptance(std::vector<CheckResult>& out) { acceptance_checks(out); }

}  // namespace qccr::checks
