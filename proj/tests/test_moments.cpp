#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "qcf/moments.hpp"

using qcf::Params;
using cd = std::complex<double>;

namespace {

const Params<double> kRef{0.4, 0.3, -0.25, 0.2};

cd poly(const std::vector<cd>& coeffs, const cd& t) {
  cd s(0);
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) s = s * t + *it;
  return s;
}

}  // namespace

// ---------------------------------------------------------------------------
// q-integral
// ---------------------------------------------------------------------------

TEST(QIntegral, Examples) {
  const double q = 0.45;
  const qcf::QIntegrand<cd> same{[](const cd& t) { return std::exp(t); }, cd(0.3, 0.2), cd(0.3, 0.2)};
  EXPECT_EQ(qcf::qintegral(same, q), cd(0));
  const qcf::QIntegrand<cd> id{[](const cd& t) { return t; }, cd(0), cd(1)};
  EXPECT_LT(std::abs(qcf::qintegral(id, q) - 1 / (1 + q)), 1e-15);
  for (int n = 0; n <= 6; ++n) {
    const qcf::QIntegrand<cd> mono{[n](const cd& t) { return oracle::power(t, n); }, cd(0), cd(1)};
    EXPECT_LT(std::abs(qcf::qintegral(mono, q) - (1 - q) / (1 - std::pow(q, n + 1))), 1e-15);
  }
  EXPECT_THROW(qcf::qintegral(qcf::QIntegrand<cd>{{}, cd(0), cd(1)}, q), qcf::domain_error);
  EXPECT_THROW(qcf::qintegral(id, 1.0), qcf::domain_error);
}

TEST(QIntegral, ByPartsOnMonomials) {
  // int_0^1 f(t) g(qt) d_q t = (1/q) int_0^1 g(t) f(t/q) d_q t + (1-q)/q (a g(a) f(a/q) - b g(b) f(b/q)).
  const double q = 0.6;
  const auto f = [](const cd& t) { return t; };
  const auto g = [](const cd& t) { return t * t; };
  const cd lhs = qcf::qintegral(qcf::QIntegrand<cd>{[&](const cd& t) { return f(t) * g(q * t); }, cd(0), cd(1)}, q);
  const cd rhs = qcf::qintegral(qcf::QIntegrand<cd>{[&](const cd& t) { return g(t) * f(t / q); }, cd(0), cd(1)}, q) / q +
                 (1 - q) / q * (cd(0) - g(cd(1)) * f(cd(1 / q)));
  EXPECT_LT(std::abs(lhs - rhs), 1e-12);
  EXPECT_LT(std::abs(lhs - q * q * (1 - q) / (1 - std::pow(q, 4))), 1e-15);
}

TEST(QIntegral, ByPartsAndLinearityOnRandomPolynomials) {
  std::mt19937_64 rng(71);
  std::uniform_real_distribution<double> u(-1, 1), uq(0.1, 0.8);
  std::uniform_int_distribution<int> udeg(0, 5);
  for (int draw = 0; draw < 40; ++draw) {
    const double q = (draw % 2 ? 1 : -1) * uq(rng);
    std::vector<cd> fc(static_cast<std::size_t>(udeg(rng)) + 1), gc(static_cast<std::size_t>(udeg(rng)) + 1);
    for (auto& v : fc) v = cd(u(rng), u(rng));
    for (auto& v : gc) v = cd(u(rng), u(rng));
    const cd a(u(rng), u(rng)), b(u(rng), u(rng));
    const auto f = [&](const cd& t) { return poly(fc, t); };
    const auto g = [&](const cd& t) { return poly(gc, t); };
    const cd lhs = qcf::qintegral(qcf::QIntegrand<cd>{[&](const cd& t) { return f(t) * g(q * t); }, a, b}, q);
    const cd inner = qcf::qintegral(qcf::QIntegrand<cd>{[&](const cd& t) { return g(t) * f(t / q); }, a, b}, q) / q;
    const cd ends = (1 - q) / q * (a * g(a) * f(a / q) - b * g(b) * f(b / q));
    // f(t/q) with small |q| makes both right-hand pieces large; rounding scales with them.
    const double scale = 1 + std::abs(inner) + std::abs(ends);
    EXPECT_LT(std::abs(lhs - inner - ends), 1e-13 * scale);
    const cd both = qcf::qintegral(qcf::QIntegrand<cd>{[&](const cd& t) { return 2.0 * f(t) - g(t); }, a, b}, q);
    const cd split = 2.0 * qcf::qintegral(qcf::QIntegrand<cd>{f, a, b}, q) - qcf::qintegral(qcf::QIntegrand<cd>{g, a, b}, q);
    EXPECT_LT(std::abs(both - split), 1e-13 * std::max(1.0, std::abs(both)));
  }
}

// ---------------------------------------------------------------------------
// Weight
// ---------------------------------------------------------------------------

TEST(WeightF, VanishesJustOutsideTheEndpoints) {
  const double theta = 1.1, q = kRef.q;
  const cd t1 = std::polar(0.5, -theta), t2 = std::polar(0.5, theta);
  EXPECT_LT(std::abs(qcf::weight_f(cd(t1 / q), theta, kRef)), 1e-12);
  EXPECT_LT(std::abs(qcf::weight_f(cd(t2 / q), theta, kRef)), 1e-12);
  EXPECT_GT(std::abs(qcf::weight_f(t1, theta, kRef)), 1e-6);
}

TEST(WeightF, FunctionalEquation) {
  std::mt19937_64 rng(72);
  std::uniform_real_distribution<double> ur(0.05, 0.5), uarg(-3.1, 3.1);
  const double theta = 0.8, x = std::cos(theta), q = kRef.q, c = kRef.c();
  for (int i = 0; i < 10; ++i) {
    const cd t = std::polar(ur(rng), uarg(rng));
    const cd lhs = qcf::weight_f(t, theta, kRef) * (x - t - 1.0 / (4.0 * t));
    const cd rhs = qcf::weight_f(cd(t / q), theta, kRef) * (c / q + kRef.lambda / (4 * kRef.b * t));
    EXPECT_LT(std::abs(lhs - rhs), 1e-11 * std::max(1.0, std::abs(lhs)));
  }
  // The integration rays t = e^{+-i theta} q^n / 2.
  for (int n = 0; n < 10; ++n) {
    for (double sgn : {-1.0, 1.0}) {
      const cd t = std::polar(0.5 * std::pow(q, n), sgn * theta);
      const cd lhs = qcf::weight_f(t, theta, kRef) * (x - t - 1.0 / (4.0 * t));
      const cd rhs = qcf::weight_f(cd(t / q), theta, kRef) * (c / q + kRef.lambda / (4 * kRef.b * t));
      EXPECT_LT(std::abs(lhs - rhs), 1e-11 * std::max(1.0, std::abs(lhs)));
    }
  }
}

TEST(WeightF, MatchesDefinitionWithThetaProducts) {
  // f(t) = (2q e^{i theta} t, 2q e^{-i theta} t; q)_inf h(t) / (-4bct/lambda;q)_inf,
  // h(t) = <At;q>/<Bt;q>, and h(t)/h(tq) = A/B = -b/lambda.
  const double theta = 0.6, q = kRef.q, c = kRef.c();
  const cd A(-4 * kRef.b * c / kRef.lambda), B(4 * c);
  const auto h = [&](const cd& t) { return qcf::theta(cd(A * t), q) / qcf::theta(cd(B * t), q); };
  for (const cd t : {cd(0.2, 0.1), cd(-0.3, 0.05), cd(0.05, -0.4)}) {
    EXPECT_LT(std::abs(h(t) / h(t * q) - (-kRef.b / kRef.lambda)), 1e-12);
    const cd e1 = std::polar(1.0, theta);
    const cd direct = oracle::poch_long(cd(2 * q * e1 * t), q, 200) * oracle::poch_long(cd(2 * q * t / e1), q, 200) *
                      h(t) / oracle::poch_long(cd(-4 * kRef.b * c * t / kRef.lambda), q, 200);
    const cd got = qcf::weight_f(t, theta, kRef);
    EXPECT_LT(std::abs(got - direct), 1e-11 * std::abs(direct));
  }
}

TEST(WeightF, DomainErrors) {
  EXPECT_THROW(qcf::weight_f(cd(0.1), 0.5, Params<double>{0.4, 0.0, -0.25, 0.2}), qcf::domain_error);
  EXPECT_THROW(qcf::weight_f(cd(0.1), 0.5, Params<double>{0.4, 0.3, -0.25, 0.0}), qcf::domain_error);
  EXPECT_THROW(qcf::weight_f(cd(0), 0.5, kRef), qcf::domain_error);
  // Bt = 1 puts a zero in (Bt;q)_inf.
  EXPECT_THROW(qcf::weight_f(cd(1 / (4 * kRef.c())), 0.5, kRef), qcf::domain_error);
}

// ---------------------------------------------------------------------------
// Moment solutions
// ---------------------------------------------------------------------------

TEST(Moments, IntegralFormSatisfiesRecurrence) {
  const double x = 0.3, q = kRef.q, c = kRef.c();
  std::vector<cd> p;
  for (long k = 0; k <= 16; ++k) p.push_back(qcf::moment_pk_integral(k, x, kRef));
  for (long k = 1; k <= 15; ++k) {
    const auto i = static_cast<std::size_t>(k);
    const cd r = x * p[i] - p[i + 1] - c * std::pow(q, k) * p[i] - 0.25 * (1 + kRef.lambda * std::pow(q, k) / kRef.b) * p[i - 1];
    EXPECT_LT(std::abs(r), 1e-10) << "k=" << k;
  }
}

TEST(Moments, ClosedFormSatisfiesRecurrence) {
  const double q = kRef.q, c = kRef.c();
  for (const cd x : {cd(0.3), cd(-0.7), cd(1.6, 0.4), cd(0.2, -0.9)}) {
    std::vector<cd> p;
    for (long k = 0; k <= 11; ++k) p.push_back(qcf::moment_pk_closed(k, x, kRef));
    for (long k = 1; k <= 10; ++k) {
      const auto i = static_cast<std::size_t>(k);
      const cd r = x * p[i] - p[i + 1] - c * std::pow(q, k) * p[i] -
                   0.25 * (1 + kRef.lambda * std::pow(q, k) / kRef.b) * p[i - 1];
      EXPECT_LT(std::abs(r), 1e-10 * std::max(1.0, std::abs(p[i]))) << "x=" << x << " k=" << k;
    }
  }
}

TEST(Moments, IntegralEqualsClosedForm) {
  for (double x : {0.3, -0.45, 0.8}) {
    for (long k = 0; k <= 15; ++k) {
      const cd a = qcf::moment_pk_integral(k, x, kRef);
      const cd b = qcf::moment_pk_closed(k, cd(x), kRef);
      EXPECT_LT(std::abs(a - b), 1e-10 * std::max(1.0, std::abs(b))) << "x=" << x << " k=" << k;
    }
  }
}

TEST(Moments, BEqualsMinusLambdaGivesThePolynomials) {
  const Params<double> p{0.4, 0.3, -0.25, 0.25};
  const double x = 0.35;
  const auto P = qcf::run_monic(p, x, 10, qcf::Seed::P);
  const cd p0 = qcf::moment_pk_closed(0, cd(x), p);
  const cd i0 = qcf::moment_pk_integral(0, x, p);
  EXPECT_LT(std::abs(qcf::moment_pk_closed(1, cd(x), p) / p0 - (x - p.c())), 1e-12);
  for (long k = 0; k <= 10; ++k) {
    const double want = P[static_cast<std::size_t>(k)];
    EXPECT_LT(std::abs(qcf::moment_pk_closed(k, cd(x), p) / p0 - want), 1e-10) << "k=" << k;
    EXPECT_LT(std::abs(qcf::moment_pk_integral(k, x, p) / i0 - want), 1e-10) << "k=" << k;
  }
}

TEST(Moments, BranchesAgreeOnTheRealSegment) {
  for (double x : {-0.9, -0.2, 0.3, 0.75}) {
    for (long k = 0; k <= 8; ++k) {
      const cd minus = qcf::moment_pk_closed(k, cd(x), kRef, {}, qcf::MomentBranch::minus);
      const cd plus = qcf::moment_pk_closed(k, cd(x), kRef, {}, qcf::MomentBranch::plus);
      EXPECT_LT(std::abs(minus - plus), 1e-12 * std::max(1.0, std::abs(minus))) << "x=" << x << " k=" << k;
    }
  }
}

TEST(Moments, DomainErrors) {
  EXPECT_THROW(qcf::moment_pk_closed(2, cd(0.3), Params<double>{0.4, 0.0, -0.25, 0.2}), qcf::domain_error);
  EXPECT_THROW(qcf::moment_pk_closed(2, cd(0.3), Params<double>{0.4, 0.3, -0.25, 0.0}), qcf::domain_error);
  // |lambda q / (2bc)| = 0.18 / 0.15 > 1.
  EXPECT_THROW(qcf::moment_pk_closed(2, cd(0.3), Params<double>{0.6, 0.3, -0.25, -0.3}), qcf::domain_error);
  EXPECT_THROW(qcf::moment_pk_closed(-1, cd(0.3), kRef), qcf::domain_error);
  // |lambda q / b| = 1.2.
  EXPECT_THROW(qcf::moment_pk_integral(2, 0.3, Params<double>{0.6, 0.3, -0.1, -0.2}), qcf::domain_error);
  EXPECT_THROW(qcf::moment_pk_integral(2, 1.3, kRef), qcf::domain_error);
  EXPECT_THROW(qcf::moment_pk_integral(-1, 0.3, kRef), qcf::domain_error);
}
