#include <gtest/gtest.h>

#include <cmath>

#include "qccr/boundary.hpp"
#include "qccr/checks.hpp"
#include "qccr/parse.hpp"

namespace {

using namespace qccr;
using namespace qccr::boundary;
using wick::ModeVector;

Matrix anticommutator(const Matrix& x, const Matrix& y) { return x * y + y * x; }

double car_residual(const CliffordRep& rep, const BilinearForm& theta, checks::Rng& rng) {
  // {a(f), a+(g)} = 2 <f, g> and {a+(f), a+(g)} = 2 theta(f, g).
  const auto id = Matrix::Identity(rep.dim, rep.dim);
  double worst = 0.0;
  for (int t = 0; t < 20; ++t) {
    const auto f = checks::random_mode_vector(rng, rep.modes, 1.0);
    const auto g = checks::random_mode_vector(rng, rep.modes, 1.0);
    worst = std::max(worst, (anticommutator(rep.annihilator(f), rep.creator(g)) - 2.0 * wick::inner(f, g) * id).norm());
    worst = std::max(worst, (anticommutator(rep.creator(f), rep.creator(g)) - 2.0 * theta(f, g) * id).norm());
  }
  return worst;
}

TEST(QOne, EvaluationIsACharacter) {
  checks::Rng rng(31);
  for (int t = 0; t < 10; ++t) {
    const auto phi = checks::random_mode_vector(rng, 2, 0.9);
    const auto f = checks::random_mode_vector(rng, 2, 1.0);
    const auto g = checks::random_mode_vector(rng, 2, 1.0);
    const auto p = wick::FloatPolynomial::annihilator(f) * wick::FloatPolynomial::creator(g);
    const Complex expect = wick::inner(f, phi) * wick::inner(phi, g);
    EXPECT_LT(std::abs(q1_coherent_eval(p, phi) - expect), 1e-15);
  }
}

TEST(QOne, CommutatorsVanish) {
  const ModeVector<Complex> phi{0.3, Complex(0.1, -0.5)};
  const auto p = parse_float_polynomial("c1 a2 - a2 c1 + a1 c2 c1 - c1 a1 c2", 0.3, 2);
  EXPECT_LT(std::abs(q1_coherent_eval(p, phi)), 1e-15);
  EXPECT_THROW(q1_coherent_eval(p, {1.0, 1.0}), std::domain_error);
}

TEST(QOne, ExactPoleIsAnError) {
  const ModeVector<Complex> phi{0.5};
  EXPECT_THROW(q1_coherent_eval(parse_polynomial("1/(1-q)*c1"), phi), std::domain_error);
  EXPECT_NEAR(std::abs(q1_coherent_eval(parse_polynomial("(1+q)*c1 a1"), phi) - 0.5), 0.0, 1e-15);
}

TEST(RealForm, ZeroFormIsHalfIdentity) {
  for (std::size_t d : {1, 2, 3}) {
    const auto rf = theta_to_real_form({Matrix::Zero(d, d)});
    EXPECT_EQ(rf.Theta, 0.5 * Eigen::MatrixXd::Identity(2 * d, 2 * d));
    EXPECT_EQ(rf.rank, 2 * d);
    EXPECT_TRUE(rf.admissible);
    EXPECT_TRUE(rf.null_directions.empty());
  }
}

TEST(RealForm, RealificationRoundTrip) {
  checks::Rng rng(32);
  const auto f = checks::random_mode_vector(rng, 3, 1.0);
  const auto back = complexify(realify(f));
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(back[i], f[i]);
}

TEST(RealForm, QuadraticFormMatchesDefinition) {
  // x^T Theta x = (|f|^2 + Re theta(f, f)) / 2.
  checks::Rng rng(33);
  const auto theta = coherent_theta(checks::random_mode_vector(rng, 2, 0.8));
  const auto rf = theta_to_real_form(theta);
  for (int t = 0; t < 10; ++t) {
    const auto f = checks::random_mode_vector(rng, 2, 1.0);
    const Eigen::VectorXd x = realify(f);
    EXPECT_NEAR(x.dot(rf.Theta * x), 0.5 * (1.0 + theta(f, f).real()), 1e-14);
  }
}

TEST(RealForm, DoubledRankOneFormIsInadmissible) {
  Matrix t = Matrix::Zero(2, 2);
  t(0, 0) = -2.0;
  const auto rf = theta_to_real_form({t});
  EXPECT_FALSE(rf.admissible);
  EXPECT_THROW(clifford_rep({t}), std::domain_error);
}

TEST(RealForm, NonSymmetricFormIsRejected) {
  Matrix t = Matrix::Zero(2, 2);
  t(0, 1) = 0.5;
  EXPECT_THROW(theta_to_real_form({t}), std::invalid_argument);
}

TEST(CoherentTheta, RanksFollowTheNorm) {
  EXPECT_EQ(coherent_theta({0.0, 0.0}).theta, Matrix::Zero(2, 2));
  EXPECT_EQ(theta_to_real_form(coherent_theta({0.6, Complex(0, 0.8)})).rank, 3u);
  EXPECT_EQ(theta_to_real_form(coherent_theta({0.5})).rank, 2u);
  // theta(f, g) = <phi, f><phi, g>
  const ModeVector<Complex> phi{0.6, Complex(0, 0.8)}, f{1.0, 0.5}, g{Complex(0, 1), 2.0};
  EXPECT_LT(std::abs(coherent_theta(phi)(f, g) - wick::inner(phi, f) * wick::inner(phi, g)), 1e-15);
}

TEST(Generators, PauliStringsAnticommute) {
  for (std::size_t r = 1; r <= 7; ++r) {
    const auto s = clifford_generators(r);
    const std::size_t dim = std::size_t{1} << ((r + 1) / 2);
    ASSERT_EQ(s.size(), r);
    for (std::size_t i = 0; i < r; ++i) {
      EXPECT_EQ(s[i].rows(), static_cast<Eigen::Index>(dim));
      for (std::size_t j = 0; j < r; ++j) {
        const Matrix expect = (i == j ? 2.0 : 0.0) * Matrix::Identity(dim, dim);
        EXPECT_EQ(anticommutator(s[i], s[j]), expect) << "r=" << r << " i=" << i << " j=" << j;
      }
    }
  }
}

TEST(Clifford, EvenRankIsIrreducible) {
  checks::Rng rng(34);
  const auto theta = coherent_theta({0.5});
  const auto reps = clifford_rep(theta);
  EXPECT_EQ(reps.full.r, 2u);
  EXPECT_EQ(reps.full.dim, 2u);
  ASSERT_EQ(reps.irreducible.size(), 1u);
  EXPECT_EQ(commutant_dimension(reps.full.s), 1u);
  EXPECT_LT(car_residual(reps.full, theta, rng), 1e-13);
}

TEST(Clifford, OddRankSplitsByCentralElement) {
  checks::Rng rng(35);
  const auto theta = coherent_theta({0.6, Complex(0, 0.8)});
  const auto reps = clifford_rep(theta);
  EXPECT_EQ(reps.full.r, 3u);
  EXPECT_EQ(reps.full.dim, 4u);
  ASSERT_EQ(reps.irreducible.size(), 2u);
  const auto c = central_element(reps.full);
  EXPECT_EQ(c.square_sign, -1);  // (s1 s2 s3)^2 = -1
  EXPECT_LT((c.s_hat * c.s_hat + Matrix::Identity(4, 4)).norm(), 1e-14);
  for (const auto& s : reps.full.s) EXPECT_LT((c.s_hat * s - s * c.s_hat).norm(), 1e-14);
  std::vector<Complex> labels;
  for (const auto& rep : reps.irreducible) {
    EXPECT_EQ(rep.dim, 2u);
    ASSERT_TRUE(rep.label.has_value());
    labels.push_back(*rep.label);
    EXPECT_LT(car_residual(rep, theta, rng), 1e-13);
    EXPECT_EQ(commutant_dimension(rep.s), 1u);
  }
  EXPECT_LT(std::abs(labels[0] * labels[1] - 1.0), 1e-14);  // {i, -i}
  EXPECT_LT(std::abs(std::abs(labels[0].imag()) - 1.0), 1e-14);
  EXPECT_GT(commutant_dimension(reps.full.s), 1u);
}

TEST(Clifford, ZeroFormGivesNilpotentCreators) {
  checks::Rng rng(36);
  const BilinearForm theta{Matrix::Zero(1, 1)};
  const auto reps = clifford_rep(theta);
  EXPECT_EQ(reps.full.r, 2u);
  const Matrix c = reps.full.creator({1.0});
  EXPECT_LT((c * c).norm(), 1e-15);
  EXPECT_LT(car_residual(reps.full, theta, rng), 1e-13);
}

TEST(Clifford, NullDirectionsAreKilled) {
  const auto theta = coherent_theta({0.6, Complex(0, 0.8)});
  const auto rf = theta_to_real_form(theta);
  ASSERT_EQ(rf.null_directions.size(), 1u);
  const auto reps = clifford_rep(theta);
  ModeVector<Complex> x = rf.null_directions[0];
  for (auto& v : x) v *= Complex(0, 1);  // back to the real null vector
  EXPECT_LT(reps.full.s_of(x).norm(), 1e-13);
}

}  // namespace
