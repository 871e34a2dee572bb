#include <gtest/gtest.h>

#include <numbers>
#include <random>

#include "oracles.hpp"
#include "qcf/measure.hpp"

using qcf::Params;
using cd = std::complex<double>;

namespace {

const Params<double> kRef{0.4, 0.3, -0.25, 0.2};
const double kPi = std::numbers::pi;

cd markov_ratio(const Params<double>& p, const cd& x, long k) {
  const auto P = qcf::run_monic(p, x, k, qcf::Seed::P);
  const auto Ps = qcf::run_monic(p, x, k, qcf::Seed::Pstar);
  return Ps.back() / P.back();
}

}  // namespace

TEST(Quadrature, GaussLegendreIsExactToDegreeTwoNMinusOne) {
  for (int n : {1, 2, 5, 16}) {
    const auto rule = qcf::gauss_legendre(n);
    for (int deg = 0; deg <= 2 * n - 1; ++deg) {
      double s = 0;
      for (std::size_t i = 0; i < rule.nodes.size(); ++i) s += rule.weights[i] * std::pow(rule.nodes[i], deg);
      EXPECT_NEAR(s, deg % 2 ? 0.0 : 2.0 / (deg + 1), 1e-14) << "n=" << n << " deg=" << deg;
    }
  }
  const auto panels = qcf::composite_gauss_legendre(0.0, kPi, 4, 16);
  double s = 0;
  for (std::size_t i = 0; i < panels.nodes.size(); ++i) s += panels.weights[i] * std::sin(panels.nodes[i]);
  EXPECT_NEAR(s, 2.0, 1e-14);
  EXPECT_THROW(qcf::gauss_legendre(0), qcf::domain_error);
}

// ---------------------------------------------------------------------------
// rho and the F, G, R series
// ---------------------------------------------------------------------------

TEST(RhoSelect, Examples) {
  EXPECT_EQ(qcf::rho_select(cd(1)).value, cd(1));
  EXPECT_NEAR(qcf::rho_select(cd(2)).value.real(), 2 - std::sqrt(3.0), 1e-15);
  EXPECT_NEAR(qcf::rho_select(cd(2)).value.imag(), 0.0, 1e-15);
  for (double y : {0.1, 1.0, 30.0}) {
    const cd x(0, y);
    const cd rho = qcf::rho_select(x).value;
    EXPECT_LT(std::abs(rho - (x - std::sqrt(x * x - 1.0))), 1e-15);
    EXPECT_LT(std::abs(rho), 1.0);
  }
  const auto on_cut = qcf::rho_select(cd(std::cos(1.0)));
  EXPECT_LT(std::abs(on_cut.value - std::polar(1.0, -1.0)), 1e-15);
  EXPECT_LT(std::abs(on_cut.conj_pair - std::polar(1.0, 1.0)), 1e-15);
}

TEST(RhoSelect, InverseMapAndModulus) {
  std::mt19937_64 rng(61);
  std::uniform_real_distribution<double> u(-5, 5);
  for (int i = 0; i < 200; ++i) {
    const cd x(u(rng), u(rng));
    const auto r = qcf::rho_select(x);
    EXPECT_LT(std::abs((r.value + 1.0 / r.value) / 2.0 - x), 1e-12 * (1 + std::abs(x)));
    EXPECT_LE(std::abs(r.value), 1.0);
    EXPECT_LT(std::abs(r.value * r.conj_pair - 1.0), 1e-13);
  }
}

TEST(SeriesFG, TrivialWhenAAndLambdaVanish) {
  const Params<double> p{0.4, 0.0, -0.25, 0.0};
  const cd rho(0.3, 0.2);
  EXPECT_EQ(qcf::series_F(rho, p), cd(1));
  EXPECT_EQ(qcf::series_G(rho, p), cd(1));
}

TEST(SeriesFG, MatchesWrittenOutPochhammerForm) {
  // F and G with the (-lambda q rho/2bc;q)_m (-2c rho)^m Pochhammer quotient kept as written.
  const double q = kRef.q, c = kRef.c();
  const cd rho(0.26, 0.11);
  const cd A = -kRef.lambda * q * rho / (2 * kRef.b * c);
  cd F(0), G(0);
  for (long m = 0; m < 80; ++m) {
    const cd common = oracle::poch(A, q, m) / (oracle::poch(cd(q), q, m) * oracle::poch(cd(q * rho * rho), q, m)) *
                      oracle::power(cd(-2 * c * rho), m);
    G += common * std::pow(q, m * (m - 1) / 2.0);
    F += common * std::pow(q, m * (m + 1) / 2.0);
  }
  EXPECT_LT(std::abs(qcf::series_F(rho, kRef) - F), 1e-14);
  EXPECT_LT(std::abs(qcf::series_G(rho, kRef) - G), 1e-14);
}

TEST(SeriesFG, SelfConvergence) {
  const cd rho(2 - std::sqrt(3.0));
  const qcf::SeriesControl loose{1e-12L, 3, 100};
  const qcf::SeriesControl tight{1e-30L, 5, 200};
  EXPECT_NEAR(std::abs(qcf::series_F(rho, kRef, loose) - qcf::series_F(rho, kRef, tight)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(qcf::series_G(rho, kRef, loose) - qcf::series_G(rho, kRef, tight)), 0.0, 1e-14);
}

TEST(SeriesR, TrivialWhenAAndLambdaVanish) {
  const Params<double> p{0.4, 0.0, -0.25, 0.0};
  for (double theta : {0.3, kPi / 2, 2.9}) {
    const auto r = qcf::series_R(theta, p);
    EXPECT_LT(std::abs(r.value - (-1.0 / cd(0, std::sin(theta)))), 1e-15);
    EXPECT_NEAR(r.modulus, 1 / std::sin(theta), 1e-14);
  }
}

TEST(SeriesR, CrossIdentityWithG) {
  std::mt19937_64 rng(62);
  std::uniform_real_distribution<double> uq(0.05, 0.9), ua(-0.6, 0.6), ub(-0.9, -0.05), ul(-0.5, 0.5),
      ut(0.05, 3.09);
  int checked = 0;
  while (checked < 30) {
    const Params<double> p{(rng() & 1 ? 1.0 : -1.0) * uq(rng), ua(rng), ub(rng), ul(rng)};
    try {
      p.validate_monic();
    } catch (const qcf::domain_error&) {
      continue;
    }
    const double theta = ut(rng);
    const auto r = qcf::series_R(theta, p);
    const cd g = qcf::series_G(std::polar(1.0, theta), p);
    EXPECT_LT(std::abs(g - cd(0, -std::sin(theta)) * r.value), 1e-12 * std::max(1.0, std::abs(g)));
    EXPECT_NEAR(r.modulus * std::sin(theta), std::abs(g), 1e-12 * std::max(1.0, std::abs(g)));
    EXPECT_NEAR(r.phase, std::arg(r.value), 1e-15);
    ++checked;
  }
}

TEST(SeriesR, StableUnderTighterControl) {
  const auto a = qcf::series_R(kPi / 2, kRef, qcf::SeriesControl{1e-12L, 3, 10000});
  const auto b = qcf::series_R(kPi / 2, kRef, qcf::SeriesControl{1e-14L, 3, 10000});
  EXPECT_LT(std::abs(a.value - b.value), 1e-12);
  EXPECT_THROW(qcf::series_R(0.0, kRef), qcf::domain_error);
  EXPECT_THROW(qcf::series_R(kPi, kRef), qcf::domain_error);
}

// ---------------------------------------------------------------------------
// Densities
// ---------------------------------------------------------------------------

TEST(Density, SemicircleWhenAAndLambdaVanish) {
  const Params<double> p{0.4, 0.0, -0.25, 0.0};
  for (double x : {-0.9, -0.3, 0.0, 0.55}) {
    const double want = 2 / kPi * std::sqrt(1 - x * x);
    EXPECT_NEAR(qcf::density_nevai(x, p).density, want, 1e-14);
    EXPECT_NEAR(qcf::density_inversion(x, p).density, want, 1e-14);
  }
}

TEST(Density, NevaiEqualsInversionOnGrid) {
  for (int i = 0; i < 101; ++i) {
    const double x = -0.99 + 1.98 * i / 100;
    const double nevai = qcf::density_nevai(x, kRef).density;
    const cd inv = qcf::inversion_value(x, kRef);
    EXPECT_NEAR(nevai, inv.real(), 1e-8) << "x=" << x;
    EXPECT_LT(std::abs(inv.imag()), 1e-12);
    EXPECT_GT(nevai, 0.0);
  }
  EXPECT_NEAR(qcf::density_nevai(0.0, kRef).density, qcf::density_inversion(0.0, kRef).density, 1e-8);
}

TEST(Density, NevaiEqualsInversionForAZeroLambdaNonzero) {
  const Params<double> p{-0.6, 0.0, -0.3, 0.25};
  for (double x : {-0.8, -0.1, 0.35, 0.9})
    EXPECT_NEAR(qcf::density_nevai(x, p).density, qcf::density_inversion(x, p).density, 1e-10);
}

TEST(Density, IntegratesToUnitMassBySimpson) {
  // Substituting x = cos theta removes the endpoint singularity.
  const double mass = oracle::simpson(
      [](double theta) {
        if (theta <= 0 || theta >= kPi) return 0.0;
        return qcf::density_nevai(std::cos(theta), kRef).density * std::sin(theta);
      },
      0.0, kPi, 400);
  EXPECT_NEAR(mass, 1.0, 1e-8);
}

TEST(Density, DomainErrors) {
  EXPECT_THROW(qcf::density_nevai(1.0, kRef), qcf::domain_error);
  EXPECT_THROW(qcf::density_inversion(-1.2, kRef), qcf::domain_error);
  EXPECT_THROW(qcf::density_nevai(0.1, Params<double>{0.4, 0.3, 0.25, 0.2}), qcf::domain_error);
}

// ---------------------------------------------------------------------------
// Stieltjes transform
// ---------------------------------------------------------------------------

TEST(Stieltjes, LargeXBehavesLikeUnitMass) {
  const double x = 1e6;
  const cd X = qcf::stieltjes_transform(cd(x), kRef);
  EXPECT_LT(std::abs(X * x - 1.0), 1e-6);
  // Next order: the first moment of the measure is alpha_0 = c.
  EXPECT_LT(std::abs(X * x - (1.0 + kRef.c() / x)), 1e-9);
}

TEST(Stieltjes, MatchesMarkovLimit) {
  EXPECT_LT(std::abs(qcf::stieltjes_transform(cd(2), kRef) - markov_ratio(kRef, cd(2), 200)), 1e-10);
  const Params<double> a0{0.4, 0.0, -0.25, 0.2};
  EXPECT_LT(std::abs(qcf::stieltjes_transform(cd(2), a0) - markov_ratio(a0, cd(2), 200)), 1e-10);
  for (const cd x : {cd(2), cd(-2), cd(1.2, 0.5)}) {
    EXPECT_LT(std::abs(qcf::stieltjes_transform(x, kRef) - markov_ratio(kRef, x, 300)), 1e-9);
  }
}

TEST(Stieltjes, ConjugateSymmetry) {
  const cd x(1.5, 0.7);
  EXPECT_LT(std::abs(qcf::stieltjes_transform(std::conj(x), kRef) - std::conj(qcf::stieltjes_transform(x, kRef))),
            1e-14);
  std::mt19937_64 rng(63);
  std::uniform_real_distribution<double> u(-3, 3);
  int checked = 0;
  while (checked < 20) {
    const cd z(u(rng), u(rng));
    if (std::abs(z.imag()) < 1e-3 && std::abs(z.real()) <= 1.0) continue;
    const cd lhs = qcf::stieltjes_transform(std::conj(z), kRef);
    const cd rhs = std::conj(qcf::stieltjes_transform(z, kRef));
    EXPECT_LT(std::abs(lhs - rhs), 1e-13 * std::max(1.0, std::abs(rhs)));
    ++checked;
  }
}

TEST(Stieltjes, DensityIsJumpAcrossTheCut) {
  // -(1/pi) Im X(x + i eps) -> mu'(x) as eps -> 0.
  const double x = 0.3, eps = 1e-7;
  const cd X = qcf::stieltjes_transform(cd(x, eps), kRef);
  EXPECT_NEAR(-X.imag() / kPi, qcf::density_nevai(x, kRef).density, 1e-6);
}

TEST(Stieltjes, DomainErrors) {
  EXPECT_THROW(qcf::stieltjes_transform(cd(0.5), kRef), qcf::domain_error);
  EXPECT_NO_THROW(qcf::stieltjes_transform(cd(0.5, 1e-3), kRef));
}

// ---------------------------------------------------------------------------
// Norms and orthogonality
// ---------------------------------------------------------------------------

TEST(NormSquared, Examples) {
  EXPECT_EQ(qcf::norm_squared(0, kRef), 1.0);
  EXPECT_DOUBLE_EQ(qcf::norm_squared(1, kRef), (1 + kRef.lambda * kRef.q / kRef.b) / 4);
  const qcf::MonicFamily<double> fam(kRef);
  double prod = 1;
  for (long k = 1; k <= 5; ++k) prod *= fam.beta(k);
  EXPECT_NEAR(qcf::norm_squared(5, kRef), prod, 1e-16);
}

TEST(Orthogonality, GramMatrixAtReferenceParams) {
  const auto gram = qcf::gram_matrix(5, kRef);
  ASSERT_LT(std::abs(gram[0][0] - 1.0), 1e-6) << "reference params carry no discrete mass";
  for (std::size_t n = 0; n <= 5; ++n) {
    for (std::size_t m = 0; m <= 5; ++m) {
      const double want = n == m ? qcf::norm_squared(static_cast<long>(n), kRef) : 0.0;
      EXPECT_NEAR(gram[n][m], want, 1e-6 * (n == m ? want : 1.0)) << n << "," << m;
      EXPECT_EQ(gram[n][m], gram[m][n]);
    }
  }
  EXPECT_NEAR(qcf::orthogonality_integral(1, 0, kRef), 0.0, 1e-6);
  EXPECT_NEAR(qcf::orthogonality_integral(3, 3, kRef), qcf::norm_squared(3, kRef), 1e-6);
}

TEST(Orthogonality, LargeShiftLeavesMassOffTheInterval) {
  // alpha_0 = c = 3 pushes part of the measure outside [-1, 1].
  const Params<double> p{0.4, 3.0, -0.25, 0.2};
  const double g00 = qcf::orthogonality_integral(0, 0, p);
  EXPECT_LT(g00, 1.0 - 1e-3);
  EXPECT_GT(g00, 0.0);
}

TEST(Orthogonality, NodeRequirements) {
  EXPECT_THROW(qcf::gram_matrix(3, kRef, 48), qcf::domain_error);
  EXPECT_THROW(qcf::gram_matrix(3, kRef, 100), qcf::domain_error);
  EXPECT_THROW(qcf::gram_matrix(-1, kRef), qcf::domain_error);
  EXPECT_THROW(qcf::orthogonality_integral(-1, 0, kRef), qcf::domain_error);
  EXPECT_NEAR(qcf::orthogonality_integral(2, 2, kRef, 64), qcf::orthogonality_integral(2, 2, kRef, 512), 1e-8);
}
