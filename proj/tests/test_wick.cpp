#include <gtest/gtest.h>

#include <random>

#include "qccr/checks.hpp"
#include "qccr/parse.hpp"
#include "qccr/wick.hpp"

namespace {

using namespace qccr;
using wick::ExactPolynomial;
using wick::FloatPolynomial;
using wick::ModeVector;

const RationalFunction kQ = RationalFunction::q();

ExactPolynomial P(const char* text, std::size_t modes = 2) { return parse_polynomial(text, modes); }

// ----------------------------------------------------------------- scalars

TEST(RationalFunction, CancelsCyclotomicFactors) {
  const RationalFunction one(1);
  const auto r = (one - kQ * kQ) / (one - kQ);
  EXPECT_TRUE(r.is_polynomial());
  EXPECT_EQ(r, one + kQ);
}

TEST(RationalFunction, SumMatchesIteratedAddition) {
  const RationalFunction one(1);
  std::vector<RationalFunction> terms;
  RationalFunction acc;
  for (int k = 1; k <= 6; ++k) {
    terms.push_back(RationalFunction(k) / (one - pow(kQ, k)));
    acc += terms.back();
  }
  EXPECT_EQ(RationalFunction::sum(terms), acc);
  EXPECT_EQ(RationalFunction::sum({}), RationalFunction());
}

TEST(RationalFunction, EvaluatesAgainstDirectFormula) {
  const RationalFunction one(1);
  const auto r = (one + RationalFunction(3) * kQ) / ((one - kQ) * (one + kQ * kQ));
  for (double q : {-0.7, 0.2, 0.5}) {
    const double expect = (1 + 3 * q) / ((1 - q) * (1 + q * q));
    EXPECT_NEAR(r.evaluate(q).real(), expect, 1e-14);
  }
}

TEST(RationalFunction, InverseSubstitution) {
  const RationalFunction one(1);
  const auto r = kQ / (one - kQ);
  // (1/q) / (1 - 1/q) = 1 / (q - 1)
  EXPECT_EQ(r.substitute_inverse_q(), RationalFunction(-1) / (one - kQ));
}

TEST(RationalFunction, RejectsNonCyclotomicDivisor) {
  const RationalFunction one(1);
  EXPECT_THROW(one / (one - RationalFunction(2) * kQ), std::domain_error);
  EXPECT_THROW(one / RationalFunction(), std::domain_error);
}

TEST(RationalFunction, PoleIsReported) {
  const auto r = RationalFunction(1) / (RationalFunction(1) - kQ);
  EXPECT_THROW(r.evaluate(1.0), std::domain_error);
}

TEST(GaussianRational, ExactDoubleConversion) {
  const auto g = GaussianRational::from_double(0.1, -2.5);
  EXPECT_EQ(g.to_complex(), Complex(0.1, -2.5));
  EXPECT_THROW(GaussianRational::from_double(std::nan(""), 0), std::invalid_argument);
}

// ------------------------------------------------------------------ parser

TEST(Parser, RoundTripsExactNormalForms) {
  for (const char* text : {"a1 c1", "a1 c1 c1", "c2 a1 - (1,2)*c1 c2 a2", "3/2*I + q*c1"}) {
    const auto n = wick::normalize(P(text));
    EXPECT_EQ(parse_polynomial(to_string(n), 2), n) << text;
  }
}

TEST(Parser, RoundTripsFloatNormalForms) {
  const auto p = wick::normalize(parse_float_polynomial("a1 c2 c1 + 0.25*a2", 0.3), QParam::numeric(0.3));
  const auto back = parse_float_polynomial(to_string(p), 0.3, 2);
  EXPECT_EQ(back.terms(), p.terms());
}

TEST(Parser, ReportsErrorColumn) {
  try {
    parse_polynomial("a1 c1 * * c1");
    FAIL() << "no error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.column(), 9u);
  }
  EXPECT_THROW(parse_polynomial("a0"), ParseError);
  EXPECT_THROW(parse_polynomial("c3", 2), ParseError);
  EXPECT_THROW(parse_polynomial("c1 / a1"), ParseError);
}

TEST(Parser, InfersModeCount) { EXPECT_EQ(parse_polynomial("c1 a3").modes(), 3u); }

// ------------------------------------------------------------- normal form

TEST(Normalize, SingleRelation) {
  EXPECT_EQ(to_string(wick::normalize(P("a1 c1", 1))), "(1-q)*I + q*c1 a1");
}

TEST(Normalize, NormalWordIsFixed) { EXPECT_EQ(wick::normalize(P("c1 a2")), P("c1 a2")); }

TEST(Normalize, IteratedRelationAgreesWithClosedForm) {
  // a (a*)^k = q^k (a*)^k a + (1 - q^k)/(1 - q) (1 - q) (a*)^{k-1}, assembled independently.
  for (int k = 1; k <= 5; ++k) {
    ExactPolynomial word = ExactPolynomial::word(1, {wick::annihilator(0)});
    wick::Word creators;
    for (int j = 0; j < k; ++j) {
      word = word * ExactPolynomial::word(1, {wick::creator(0)});
      creators.push_back(wick::creator(0));
    }
    ExactPolynomial expect(1);
    wick::Word top = creators;
    top.push_back(wick::annihilator(0));
    expect.add_term(top, pow(kQ, k));
    expect.add_term(wick::Word(creators.begin(), creators.end() - 1), RationalFunction(1) - pow(kQ, k));
    EXPECT_EQ(wick::normalize(word), expect) << "k=" << k;
  }
}

TEST(Normalize, ConfluenceOfBothAdjacencies) {
  // a_i c_j a_k c_l has two annihilator-creator adjacencies; resolving either one first
  // must give the same normal form.
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t k = 0; k < 2; ++k)
        for (std::size_t l = 0; l < 2; ++l) {
          auto a = [](std::size_t m) { return ExactPolynomial::word(2, {wick::annihilator(m)}); };
          auto c = [](std::size_t m) { return ExactPolynomial::word(2, {wick::creator(m)}); };
          const auto left = wick::normalize(wick::normalize(a(i) * c(j)) * a(k) * c(l));
          const auto right = wick::normalize(a(i) * c(j) * wick::normalize(a(k) * c(l)));
          EXPECT_EQ(left, right);
          // a_i c_j c_k associated both ways.
          EXPECT_EQ(wick::normalize(wick::normalize(a(i) * c(j)) * c(k)),
                    wick::normalize(a(i) * wick::normalize(c(j) * c(k))));
        }
}

TEST(Normalize, IdempotentAndAdjointCompatible) {
  checks::Rng rng(7);
  for (int t = 0; t < 30; ++t) {
    const auto p = checks::random_exact_polynomial(rng, 2, 4, 4);
    const auto n = wick::normalize(p);
    EXPECT_TRUE(n.is_normal());
    EXPECT_EQ(wick::normalize(n), n);
    EXPECT_EQ(wick::normalize(wick::adjoint(p)), wick::adjoint(n));
    EXPECT_EQ(wick::adjoint(wick::adjoint(p)), p);
  }
}

TEST(Normalize, FloatModeMatchesExactModeAtNumericQ) {
  checks::Rng rng(8);
  for (double q : {-0.9, -0.3, 0.0, 0.6}) {
    for (int t = 0; t < 10; ++t) {
      const auto p = checks::random_exact_polynomial(rng, 2, 4, 4);
      const auto exact = wick::evaluate_at(wick::normalize(p), q);
      const auto fl = wick::normalize(wick::evaluate_at(p, q), QParam::numeric(q));
      const auto diff = exact - fl;
      for (const auto& [w, c] : diff.terms()) EXPECT_LT(std::abs(c), 1e-12);
    }
  }
}

TEST(Normalize, CuntzRelationsAtZero) {
  const auto p = wick::normalize(wick::evaluate_at(P("a1 c2 + a2 c2"), 0.0), QParam::numeric(0.0));
  EXPECT_EQ(p.terms(), FloatPolynomial::unit(2).terms());
}

TEST(Adjoint, Examples) {
  EXPECT_EQ(wick::adjoint(P("c1 a2")), P("c2 a1"));
  EXPECT_EQ(wick::adjoint(P("(2,1)*a1")), P("(2,-1)*c1"));
}

// ------------------------------------------------------------------ states

TEST(CoherentExpectation, UnitAndFockState) {
  const ModeVector<Complex> zero(2, 0.0);
  const QParam q = QParam::numeric(0.4);
  EXPECT_EQ(wick::coherent_expectation(FloatPolynomial::unit(2), {0.3, Complex(0, 0.2)}, q), Complex(1.0));
  checks::Rng rng(3);
  for (int t = 0; t < 10; ++t) {
    const auto f = checks::random_mode_vector(rng, 2, 1.3);
    const auto g = checks::random_mode_vector(rng, 2, 0.7);
    EXPECT_LT(std::abs(wick::coherent_expectation(FloatPolynomial::creator(f) * FloatPolynomial::annihilator(g), zero, q)),
              1e-15);
    const Complex v = wick::coherent_expectation(FloatPolynomial::annihilator(f) * FloatPolynomial::creator(g), zero, q);
    EXPECT_NEAR(std::abs(v - 0.6 * wick::inner(f, g)), 0.0, 1e-14);
  }
}

TEST(CoherentExpectation, HandExpansionOfOneRewrite) {
  checks::Rng rng(4);
  for (double qv : {-0.8, 0.0, 0.5}) {
    for (int t = 0; t < 10; ++t) {
      const auto f = checks::random_mode_vector(rng, 3, 1.0);
      const auto g = checks::random_mode_vector(rng, 3, 0.6);
      const auto phi = checks::random_mode_vector(rng, 3, 0.9);
      const Complex expect = (1 - qv) * wick::inner(f, g) + qv * wick::inner(phi, g) * wick::inner(f, phi);
      const Complex got = wick::coherent_expectation(FloatPolynomial::annihilator(f) * FloatPolynomial::creator(g), phi,
                                                     QParam::numeric(qv));
      EXPECT_LT(std::abs(got - expect), 1e-14);
    }
  }
}

TEST(CoherentExpectation, FourPointFockFunction) {
  // omega_0(a_i a_j c_k c_l) = (1-q)^2 (d_jk d_il + q d_jl d_ik)
  const double q = 0.35;
  const ModeVector<Complex> zero(2, 0.0);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t k = 0; k < 2; ++k)
        for (std::size_t l = 0; l < 2; ++l) {
          const auto w = FloatPolynomial::word(
              2, {wick::annihilator(i), wick::annihilator(j), wick::creator(k), wick::creator(l)});
          const double expect = (1 - q) * (1 - q) * ((j == k && i == l) + q * (j == l && i == k));
          EXPECT_NEAR(wick::coherent_expectation(w, zero, QParam::numeric(q)).real(), expect, 1e-15);
        }
}

TEST(CoherentExpectation, AdjointGivesConjugate) {
  checks::Rng rng(5);
  const auto phi = checks::random_mode_vector(rng, 2, 0.8);
  for (int t = 0; t < 20; ++t) {
    const auto p = checks::random_float_polynomial(rng, 2, 4, 5);
    const QParam q = QParam::numeric(-0.4);
    EXPECT_LT(std::abs(wick::coherent_expectation(wick::adjoint(p), phi, q) -
                       std::conj(wick::coherent_expectation(p, phi, q))),
              1e-13);
  }
}

TEST(CoherentExpectation, PeripheralCharacterizationIsExact) {
  ModeVector<RationalFunction> phi{RationalFunction(GaussianRational(mpq_class(3, 5))),
                                   RationalFunction(GaussianRational(0, mpq_class(-4, 5)))};
  const auto one = ExactPolynomial::unit(2);
  // omega((a(phi) - 1)(a*(phi) - 1)) = (1-q)|phi|^2 + q|phi|^4 - 1 vanishes for every q only on the sphere.
  const auto x = (ExactPolynomial::annihilator(phi) - one) * (ExactPolynomial::creator(phi) - one);
  EXPECT_TRUE(wick::coherent_expectation(x, phi).is_zero());
  ModeVector<RationalFunction> inside{RationalFunction(GaussianRational(mpq_class(1, 2))), RationalFunction()};
  const auto y = (ExactPolynomial::annihilator(inside) - one) * (ExactPolynomial::creator(inside) - one);
  EXPECT_FALSE(wick::coherent_expectation(y, inside).is_zero());
}

// -------------------------------------------------------------------- gram

TEST(CoherentGram, SingleModeFockWeights) {
  const double q = 0.3;
  std::vector<FloatPolynomial> words;
  for (int n = 0; n <= 5; ++n) words.push_back(FloatPolynomial::word(1, wick::creator_word(std::vector<std::size_t>(n, 0))));
  const auto g = wick::coherent_gram(words, ModeVector<Complex>{0.0}, QParam::numeric(q));
  double weight = 1.0;
  for (std::size_t n = 0; n <= 5; ++n) {
    if (n > 0) weight *= 1 - std::pow(q, static_cast<double>(n));
    for (std::size_t m = 0; m <= 5; ++m) EXPECT_NEAR(std::abs(g(n, m)), n == m ? weight : 0.0, 1e-15);
  }
}

TEST(CoherentGram, PeripheralRankOne) {
  const ModeVector<Complex> phi{0.6, Complex(0, 0.8)};
  const std::vector<FloatPolynomial> words{FloatPolynomial::unit(2), FloatPolynomial::creator(phi)};
  const auto g = wick::coherent_gram(words, phi, QParam::numeric(0.5));
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) EXPECT_NEAR(std::abs(g(i, j) - 1.0), 0.0, 1e-15);
}

// ---------------------------------------------------------------- dual map

TEST(DualMap, RelationGoesToScaledTransposedRelation) {
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      const auto image = wick::dual_q_map(wick::relation_polynomial<RationalFunction>(2, i, j, kQ));
      EXPECT_EQ(image, wick::relation_polynomial<RationalFunction>(2, j, i, kQ) * (RationalFunction(-1) / kQ));
    }
  }
}

TEST(DualMap, TrivialExamples) {
  EXPECT_EQ(wick::dual_q_map(ExactPolynomial::unit(2)), ExactPolynomial::unit(2));
  EXPECT_EQ(wick::dual_q_map(P("c1")), P("a1"));
  EXPECT_EQ(wick::dual_q_map(wick::dual_q_map(P("q*c1 a2 + a1"))), P("q*c1 a2 + a1"));
}

TEST(Modes, MismatchIsRejected) {
  EXPECT_THROW(P("c1", 1) + P("c1", 2), std::invalid_argument);
  EXPECT_THROW(QParam::numeric(1.5), std::domain_error);
}

}  // namespace
