#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "qccr/checks.hpp"
#include "qccr/fock.hpp"

namespace {

using namespace qccr;
using namespace qccr::fock;

wick::FloatPolynomial creator_word_poly(std::size_t d, const std::vector<std::size_t>& letters) {
  return wick::FloatPolynomial::word(d, wick::creator_word(letters));
}

TEST(WordBasis, LengthThenLexOrder) {
  const WordBasis b(2, 3);
  EXPECT_EQ(b.size(), 15u);
  EXPECT_EQ(b.size_upto(1), 3u);
  EXPECT_EQ(b.word(0), std::vector<std::size_t>{});
  EXPECT_EQ(b.word(3), (std::vector<std::size_t>{0, 0}));
  EXPECT_EQ(b.word(6), (std::vector<std::size_t>{1, 1}));
  for (std::size_t i = 0; i < b.size(); ++i) EXPECT_EQ(b.index(b.word(i)), i);
}

TEST(GramBlock, MatchesVacuumExpectationsFromWickEngine) {
  const std::size_t d = 2;
  for (double q : {-0.6, 0.4}) {
    const FockWordSpace space(d, q, 3);
    for (int n = 1; n <= 3; ++n) {
      std::vector<wick::FloatPolynomial> words;
      for (std::size_t i = space.basis().size_upto(n - 1); i < space.basis().size_upto(n); ++i)
        words.push_back(creator_word_poly(d, space.basis().word(i)));
      const auto oracle = wick::coherent_gram(words, wick::ModeVector<Complex>(d, 0.0), QParam::numeric(q));
      const Eigen::MatrixXd g = space.gram_block(n);
      for (std::size_t u = 0; u < words.size(); ++u)
        for (std::size_t v = 0; v < words.size(); ++v)
          EXPECT_NEAR(g(static_cast<Eigen::Index>(u), static_cast<Eigen::Index>(v)), oracle(u, v).real(), 1e-14);
    }
  }
}

TEST(GramBlock, IdentityAtZero) {
  const FockWordSpace space(3, 0.0, 4);
  for (int n = 0; n <= 4; ++n) {
    const Eigen::MatrixXd g = space.gram_block(n);
    EXPECT_EQ(g, Eigen::MatrixXd::Identity(g.rows(), g.cols())) << "n=" << n;
  }
}

TEST(GramBlock, PositiveDefiniteAcrossGrid) {
  for (double q : {-0.95, -0.5, 0.0, 0.5, 0.95}) {
    const FockWordSpace space(2, q, 5);
    for (int n = 0; n <= 5; ++n) {
      const Eigen::VectorXd ev = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(space.gram_block(n)).eigenvalues();
      EXPECT_GT(ev.minCoeff(), 0.0) << "q=" << q << " n=" << n;
    }
  }
}

TEST(GramApply, AgreesWithBlockDiagonalProduct) {
  const FockWordSpace space(2, -0.3, 4);
  checks::Rng rng(21);
  Vector x(static_cast<Eigen::Index>(space.size()));
  for (Eigen::Index i = 0; i < x.size(); ++i) x(i) = checks::random_complex(rng);
  Vector expect(x.size());
  for (int n = 0; n <= 4; ++n) {
    const auto lo = static_cast<Eigen::Index>(n == 0 ? 0 : space.basis().size_upto(n - 1));
    const auto len = static_cast<Eigen::Index>(space.basis().size_upto(n)) - lo;
    expect.segment(lo, len) = space.gram_block(n).cast<Complex>() * x.segment(lo, len);
  }
  EXPECT_LT((space.gram_apply(x) - expect).norm(), 1e-13);
}

TEST(Limits, BudgetIsEnforcedBeforeAllocation) {
  try {
    FockWordSpace space(2, 0.5, 20, 1000);
    FAIL() << "no exception";
  } catch (const BudgetExceeded& e) {
    EXPECT_EQ(e.requested(), (std::size_t{1} << 21) - 1);
    EXPECT_EQ(e.budget(), 1000u);
  }
}

TEST(Limits, DenseLayerSkippedAboveLimit) {
  BuildOptions opts;
  opts.dense_limit = 10;
  const auto rep = build_fock_rep(2, QParam::numeric(0.5), 4, opts);
  EXPECT_FALSE(rep.has_matrices());
  EXPECT_THROW(rep.require_matrices(), std::logic_error);
  // Matrix-free operations still work.
  EXPECT_NEAR(rep.space.norm(rep.space.create(0, rep.space.vacuum())), std::sqrt(0.5), 1e-15);
}

TEST(Limits, IndefiniteStateIsRejected) {
  EXPECT_THROW(gns_from_state({1.2, 0.0}, QParam::numeric(0.5), 4), StateViolation);
  EXPECT_NO_THROW(gns_from_state({0.6, Complex(0, 0.8)}, QParam::numeric(0.5), 4));
}

TEST(Representation, SingleModeSingularValues) {
  const double q = -0.4;
  const auto rep = build_fock_rep(1, QParam::numeric(q), 8);
  Eigen::VectorXd sv = Eigen::JacobiSVD<Matrix>(rep.A[0]).singularValues();
  std::vector<double> got(sv.data(), sv.data() + sv.size());
  std::vector<double> expect{0.0};
  for (int n = 1; n <= 8; ++n) expect.push_back(std::sqrt(1 - std::pow(q, n)));
  std::sort(got.begin(), got.end());
  std::sort(expect.begin(), expect.end());
  for (std::size_t i = 0; i < got.size(); ++i) EXPECT_NEAR(got[i], expect[i], 1e-14);
}

TEST(Representation, RelationsBelowTopDegree) {
  const auto rep = build_fock_rep(2, QParam::numeric(0.7), 5);
  EXPECT_LT(relation_residual(rep).compressed, 1e-12);
  EXPECT_GT(relation_residual(rep).uncompressed, 1e-3);
  for (std::size_t i = 0; i < 2; ++i) EXPECT_LT((rep.Adag[i] - rep.A[i].adjoint()).norm(), 1e-15);
}

TEST(Representation, VacuumIsTheOnlyJointKernelVector) {
  for (double q : {-0.5, 0.0, 0.5}) {
    const auto rep = build_fock_rep(2, QParam::numeric(q), 4);
    const auto p = fock_projector(rep);
    EXPECT_EQ(p.rank, 1u);
    const Vector o = rep.vacuum();
    EXPECT_LT((p.P - o * o.adjoint()).norm(), 1e-12);
  }
}

TEST(Representation, CuntzProjectorIdentityAtZero) {
  const auto rep = build_fock_rep(2, QParam::numeric(0.0), 4);
  Matrix sum = Matrix::Zero(rep.dim(), rep.dim());
  for (std::size_t i = 0; i < 2; ++i) sum += rep.Adag[i] * rep.A[i];
  const Matrix lower = rep.degree_projector(3);
  const Vector o = rep.vacuum();
  const Matrix p0 = o * o.adjoint();
  EXPECT_LT((lower * (Matrix::Identity(rep.dim(), rep.dim()) - sum) * lower - p0).norm(), 1e-14);
}

TEST(CoherentVector, ZeroStateIsVacuum) {
  const auto rep = build_fock_rep(2, QParam::numeric(0.5), 4);
  const auto cv = coherent_vector(rep, {0.0, 0.0});
  EXPECT_EQ(cv.words, rep.space.vacuum());
  EXPECT_EQ(cv.residual, 0.0);
}

TEST(CoherentVector, GeometricAtZero) {
  // At q = 0 the V_10 coefficients are 1 and the words are orthonormal.
  const int N = 10;
  const double r = 0.6;
  const auto rep = build_fock_rep(1, QParam::numeric(0.0), N);
  const auto cv = coherent_vector(rep, {r});
  double norm2 = 0.0;
  for (int k = 0; k <= N; ++k) norm2 += std::pow(r, 2 * k);
  EXPECT_NEAR(cv.norm, std::sqrt(norm2), 1e-14);
  for (int k = 0; k <= N; ++k) EXPECT_NEAR(std::abs(cv.words(k) - std::pow(r, k)), 0.0, 1e-15);
  // A Omega_phi - phi Omega_phi = -r^{N+1} e_N on the truncation.
  EXPECT_NEAR(cv.residual, std::pow(r, N + 1), 1e-15);
  EXPECT_THROW(coherent_vector(rep, {1.0}), std::domain_error);
}

TEST(CoherentVector, ResidualShrinksWithTruncation) {
  const wick::ModeVector<Complex> phi{0.3, Complex(0, 0.4)};
  double last = 1.0;
  for (int N : {4, 6, 8}) {
    const auto cv = coherent_vector(build_fock_rep(2, QParam::numeric(0.5), N), phi);
    EXPECT_LT(cv.residual, last);
    last = cv.residual;
  }
}

TEST(Cesaro, ScalarMeanObeysGeometricBound) {
  for (double angle : {0.1, 1.0, 3.0}) {
    const Complex z = std::polar(1.0, angle);
    for (int n : {1, 5, 50, 500}) {
      const auto c = cesaro_scalar(z, n);
      EXPECT_LE(c.value, c.bound + 1e-15);
      EXPECT_NEAR(c.bound, 2.0 / (n * std::abs(1.0 - z)), 1e-15);
    }
  }
  EXPECT_EQ(cesaro_scalar(1.0, 7).value, 1.0);
}

TEST(Cesaro, MatrixMeanMatchesPowers) {
  const auto rep = build_fock_rep(1, QParam::numeric(0.2), 5);
  const Matrix c = rep.Adag[0];
  const Matrix expect = (c + c * c + c * c * c) / 3.0;
  EXPECT_LT((cesaro_mean(c, 3) - expect).norm(), 1e-15);
}

TEST(Gns, PeripheralStateHasNoVacuumComponent) {
  const wick::ModeVector<Complex> phi{0.6, Complex(0, 0.8)};
  const auto gns = gns_from_state(phi, QParam::numeric(0.5), 4);
  EXPECT_EQ(fock_projector(gns).rank, 0u);
  // A(phi) Omega = Omega.
  EXPECT_LT((gns.annihilator(phi) * gns.omega - gns.omega).norm(), 1e-10);
}

}  // namespace
