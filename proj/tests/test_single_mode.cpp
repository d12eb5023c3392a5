#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "qccr/checks.hpp"
#include "qccr/fock.hpp"
#include "qccr/single_mode.hpp"

namespace {

using namespace qccr;
using namespace qccr::single_mode;

const std::vector<double> kGrid{-0.9, -0.7, -0.5, -0.2, 0.0, 0.2, 0.5, 0.7, 0.9};

TEST(Shift, MatchesSingleModeFockRepresentation) {
  for (double q : {-0.6, 0.0, 0.4}) {
    const auto s = shift_matrix(QParam::numeric(q), 7);
    const auto rep = fock::build_fock_rep(1, QParam::numeric(q), 7);
    ASSERT_EQ(rep.A[0].rows(), s.rows());
    EXPECT_LT((rep.A[0] - s.cast<Complex>()).norm(), 1e-13) << "q=" << q;
  }
}

TEST(Shift, NormOnTruncation) {
  // Largest weight among sqrt(1 - q^{n+1}), n < N.
  for (double q : kGrid) {
    double expect = 0.0;
    for (int n = 1; n <= 12; ++n) expect = std::max(expect, std::sqrt(1 - std::pow(q, n)));
    EXPECT_NEAR(shift_norm(QParam::numeric(q), 12).numeric, expect, 1e-12) << "q=" << q;
  }
  EXPECT_NEAR(shift_norm(QParam::numeric(-0.5), 12).closed_form, std::sqrt(1.5), 1e-15);
  EXPECT_DOUBLE_EQ(shift_norm(QParam::numeric(0.5), 12).closed_form, 1.0);
}

TEST(BetaBounds, BracketEveryFiniteProduct) {
  // a^n (a*)^n |m> = prod_{j=m+1}^{m+n} (1 - q^j) |m>; scan m, n directly.
  for (double q : kGrid) {
    double lo = 1.0, hi = 1.0;
    for (int m = 0; m <= 60; ++m) {
      double p = 1.0;
      for (int n = 1; n <= 200; ++n) {
        p *= 1 - std::pow(q, m + n);
        lo = std::min(lo, p);
        hi = std::max(hi, p);
      }
    }
    const auto b = beta_bounds(QParam::numeric(q), 1e-15);
    EXPECT_LE(b.minus.value, lo + 1e-12) << "q=" << q;
    EXPECT_GE(b.plus.value, hi - 1e-12) << "q=" << q;
    if (q >= 0) {
      EXPECT_NEAR(b.minus.value, lo, 1e-12) << "lower bound attained as m = 0, n -> infinity";
      EXPECT_EQ(b.plus.value, 1.0);
    }
  }
  EXPECT_NEAR(beta_bounds(QParam::numeric(0.5), 1e-15).minus.value, 0.288788095086602, 1e-14);
  EXPECT_EQ(beta_bounds(QParam::numeric(0.0), 1e-15).minus.value, 1.0);
}

TEST(BetaBounds, EigenvaluesOfPowersStayInside) {
  for (double q : kGrid) EXPECT_TRUE(verify_power_bounds(QParam::numeric(q), 40, 5).passed) << "q=" << q;
}

TEST(Epsilon, ProductAndThetaSeriesAgreeWithPartialProducts) {
  for (double s : {0.0, 0.1, 0.3, 0.5, 0.8}) {
    double p = 1.0;
    for (int k = 1; k <= 2000; ++k) p *= (1 - std::pow(s, k)) / (1 + std::pow(s, k));
    EXPECT_NEAR(epsilon(s).value, p, 1e-13) << "s=" << s;
    EXPECT_NEAR(epsilon_product(s, 1e-15).value, epsilon_theta(s, 1e-15).value, 1e-14);
  }
  EXPECT_NEAR(epsilon(0.5).value, 0.1211242080025805, 1e-15);
}

TEST(Epsilon, ThresholdSolvesFixedPointEquation) {
  const double t = epsilon_threshold();
  EXPECT_NEAR(epsilon(t).value, t * t, 1e-11);
  EXPECT_GT(epsilon(t - 1e-3).value, (t - 1e-3) * (t - 1e-3));
  EXPECT_LT(epsilon(t + 1e-3).value, (t + 1e-3) * (t + 1e-3));
}

TEST(VSeries, RecursionClosedForms) {
  const double q = 0.35;
  // alpha = 1, beta = 0: 1 / (q;q)_k
  auto s = v_series<Complex>(1.0, 0.0, q, 10);
  double poch = 1.0;
  for (int k = 0; k <= 10; ++k) {
    if (k > 0) poch *= 1 - std::pow(q, k);
    EXPECT_NEAR(std::abs(s.c[k] - 1.0 / poch), 0.0, 1e-12);
  }
  // alpha = beta: the k = 0 factor alpha (1 - q^0) vanishes, so V = 1.
  s = v_series<Complex>(0.7, 0.7, q, 10);
  EXPECT_EQ(s.c[0], Complex(1.0));
  for (int k = 1; k <= 10; ++k) EXPECT_EQ(s.c[k], Complex(0.0));
  // q = 0: (1 - beta z)/(1 - alpha z)
  s = v_series<Complex>(0.6, -0.3, 0.0, 10);
  EXPECT_EQ(s.c[0], Complex(1.0));
  for (int k = 1; k <= 10; ++k) EXPECT_NEAR(std::abs(s.c[k] - std::pow(0.6, k - 1) * 0.9), 0.0, 1e-14);
}

TEST(VSeries, FunctionalEquationHoldsExactly) {
  const auto q = RationalFunction::q();
  const auto s = v_series<RationalFunction>(RationalFunction(GaussianRational(mpq_class(2, 3))),
                                            RationalFunction(GaussianRational(mpq_class(-1, 4))), q, 10);
  for (const auto& r : functional_equation_residual(s)) EXPECT_TRUE(r.is_zero());
}

TEST(VChain, IntegerIdentityAgreesWithRationalFunctionProduct) {
  const auto q = RationalFunction::q();
  checks::Rng rng(11);
  for (int t = 0; t < 4; ++t) {
    auto pick = [&] { return mpq_class(static_cast<long>(rng() % 19) - 9, static_cast<long>(rng() % 7) + 1); };
    mpq_class a = pick(), b = pick(), c = pick();
    a.canonicalize();
    b.canonicalize();
    c.canonicalize();
    const int K = 8;
    auto rf = [](const mpq_class& x) { return RationalFunction(GaussianRational(x)); };
    const auto ab = v_series<RationalFunction>(rf(a), rf(b), q, K);
    const auto bc = v_series<RationalFunction>(rf(b), rf(c), q, K);
    const auto ac = v_series<RationalFunction>(rf(a), rf(c), q, K);
    const auto prod = cauchy_product(ab.c, bc.c, K + 1);
    bool oracle = true;
    for (int k = 0; k <= K; ++k) oracle = oracle && prod[k] == ac.c[k];
    EXPECT_TRUE(oracle);
    EXPECT_EQ(v_chain_check(a, b, c, K).passed, oracle);
  }
}

TEST(VChain, FloatModeRandomTriples) {
  checks::Rng rng(12);
  for (double q : {-0.7, 0.7}) {
    for (int t = 0; t < 10; ++t) {
      const double a = checks::uniform(rng, -1, 1), b = checks::uniform(rng, -1, 1), c = checks::uniform(rng, -1, 1);
      EXPECT_TRUE(v_chain_check(a, b, c, QParam::numeric(q), 30).passed);
    }
  }
  EXPECT_TRUE(v_chain_check(0.0, 0.0, 0.0, QParam::numeric(0.3), 10).passed);
}

TEST(QExponential, MatchesFactorialSeries) {
  for (double q : {-0.5, 0.0, 0.5}) {
    for (Complex z : {Complex(0.3), Complex(-0.2, 0.4), Complex(0.0)}) {
      Complex sum = 0.0, term = 1.0;
      for (int k = 0; k <= 60; ++k) {
        if (k > 0) term *= z / ((1 - std::pow(q, k)) / (1 - q));
        sum += term;
      }
      const auto e = q_exponential(z, QParam::numeric(q), 60);
      EXPECT_LT(std::abs(e.value - sum), 1e-13);
      EXPECT_LT(e.dq_residual, 1e-10);
    }
  }
}

TEST(RadonNikodym, TransportsStatesOnSmallTruncation) {
  const double q = 0.3;
  const auto rep = fock::build_fock_rep(1, QParam::numeric(q), 24);
  const wick::ModeVector<Complex> phi{0.3}, psi{Complex(0, -0.25)};
  const auto v = radon_nikodym(rep, phi, psi);
  checks::Rng rng(13);
  for (int t = 0; t < 10; ++t) {
    const auto x = checks::random_float_polynomial(rng, 1, 3, 4);
    EXPECT_LT(std::abs(wick::coherent_expectation(x, phi, QParam::numeric(q)) - v.transported_expectation(x)), 1e-8);
  }
  // phi = psi gives v = identity.
  const auto same = radon_nikodym(rep, phi, phi);
  EXPECT_LT((same.matrix() - fock::Matrix::Identity(rep.dim(), rep.dim())).norm(), 1e-10);
}

}  // namespace
