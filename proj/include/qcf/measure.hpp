#pragma once

/// \file
/// The spectral side of the monic family
///   x P_k = P_{k+1} + c q^k P_k + (1 + lambda q^k / b)/4 P_{k-1}.
///
/// Two independent descriptions of the absolutely continuous part of the
/// orthogonality measure live here: the Nevai/Darboux density built from
/// the R series, and the Stieltjes-inversion density built from the F and G
/// series of the continued-fraction value X(x) = 2 rho F(rho) / G(rho).
///
/// The Pochhammer quotients (-lambda q rho / 2bc; q)_m (-2c rho)^m are
/// always multiplied out as prod_j (-2c rho - lambda rho^2 q^{j+1} / b), whose
/// c -> 0 limit is the correct a = 0 series.

#include <algorithm>
#include <cmath>
#include <vector>

#include <boost/math/constants/constants.hpp>

#include "qcf/core.hpp"
#include "qcf/quadrature.hpp"
#include "qcf/qseries.hpp"
#include "qcf/recurrence.hpp"

namespace qcf {

/// Root rho of t^2 - 2xt + 1 with |rho| <= 1, and its partner 1/rho.
template <class Cx>
struct Rho {
  Cx value;
  Cx conj_pair;
};

template <class Real>
struct DensitySample {
  Real x{};
  Real density{};
};

/// Branch selection for x = (rho + 1/rho)/2. Off (-1,1) this is the root of
/// smaller modulus (e^{-i theta} in the upper half plane, e^{i theta} in the
/// lower one); on (-1,1) it is e^{-i theta} with theta = arccos x in (0, pi).
template <class Cx>
Rho<Cx> rho_select(const Cx& x) {
  using R = real_t<Cx>;
  using std::real;
  using std::imag;
  using std::sqrt;
  const R xr = R(real(x));
  const R xi = R(imag(x));
  if (xi == 0 && xr == R(1)) return {Cx(1), Cx(1)};
  if (xi == 0 && xr == R(-1)) return {Cx(-1), Cx(-1)};
  if (xi == 0 && magnitude(xr) < R(1)) {
    const R s = R(sqrt(R(1) - xr * xr));
    return {Cx(xr, -s), Cx(xr, s)};
  }
  const Cx s = Cx(sqrt(x * x - Cx(1)));
  // Take the large root without cancellation; rho is its reciprocal.
  const Cx plus = x + s;
  const Cx minus = x - s;
  const Cx big = magnitude(plus) >= magnitude(minus) ? plus : minus;
  return {Cx(1) / big, big};
}

namespace detail {

template <class Cx>
struct SeriesValue {
  Cx value;
  real_t<Cx> abs_sum;  // sum of |terms|, the scale for pole detection
};

/// sum_m prod_{j<m}(-2c rho - lambda rho^2 q^{j+1}/b) q^(m choose 2 + shift m)
///       / ((q;q)_m (q rho^2;q)_m)
/// with shift 1 for F and 0 for G.
template <class Real>
SeriesValue<complex_t<Real>> fg_series(const complex_t<Real>& rho, const Params<Real>& p, int shift,
                                       const SeriesControl& ctrl) {
  using Cx = complex_t<Real>;
  detail::require_base_in_unit_disc(p.q, "series_F/G");
  const Real c = p.c();
  const Real& q = p.q;
  const Cx rho2 = rho * rho;
  const Cx lin = Cx(Real(-2) * c) * rho;
  const Cx quad = Cx(-p.lambda / p.b) * rho2;

  Cx sum(1);
  Real abs_sum(1);
  Cx term(1);
  Real qm(1);  // q^m
  SmallTermCounter counter(ctrl);
  for (long m = 0;; ++m) {
    if (counter.exhausted(m)) throw truncation_error("series_F/G: no convergence within max_terms");
    const Real qm1 = qm * q;
    const Cx den = Cx(Real(1) - qm1) * (Cx(1) - rho2 * qm1);
    if (negligible(den, 1)) throw domain_error("series_F/G: (q rho^2; q)_m vanishes");
    // term_{m+1} / term_m carries q^m (G) or q^{m+1} (F).
    term *= (lin + quad * qm1) / den * Cx(shift == 1 ? qm1 : qm);
    sum += term;
    abs_sum += magnitude(term);
    if (counter.small(term, sum)) return {sum, abs_sum};
    qm = qm1;
  }
}

}  // namespace detail

/// F(rho) = sum_m (-lambda q rho/2bc;q)_m / (q, q rho^2;q)_m (-2c rho)^m q^((m+1) choose 2).
template <class Real>
complex_t<Real> series_F(const complex_t<Real>& rho, const Params<Real>& p, const SeriesControl& ctrl = {}) {
  return detail::fg_series<Real>(rho, p, 1, ctrl).value;
}

/// G(rho): as F with q^(m choose 2).
template <class Real>
complex_t<Real> series_G(const complex_t<Real>& rho, const Params<Real>& p, const SeriesControl& ctrl = {}) {
  return detail::fg_series<Real>(rho, p, 0, ctrl).value;
}

/// R(theta) = -1/(i sin theta) sum_m (-lambda q e^{i theta}/2bc;q)_m / (q, q e^{2i theta};q)_m
///            (-2c)^m e^{i m theta} q^(m choose 2),
/// with modulus |R| and phase phi = arg R.
template <class Real>
struct RValue {
  complex_t<Real> value;
  Real modulus;
  Real phase;
};

template <class Real>
RValue<Real> series_R(const Real& theta, const Params<Real>& p, const SeriesControl& ctrl = {}) {
  using Cx = complex_t<Real>;
  using std::sin;
  using std::cos;
  using std::arg;
  const Real s = Real(sin(theta));
  if (negligible(s, 1)) throw domain_error("series_R: sin(theta) = 0");
  const Real c = p.c();
  const Real& q = p.q;
  const Cx e1 = Cx(Real(cos(theta)), s);  // e^{i theta}
  const Cx e2 = e1 * e1;

  Cx sum(1);
  Cx term(1);
  Real qm(1);
  SmallTermCounter counter(ctrl);
  for (long m = 0;; ++m) {
    if (counter.exhausted(m)) throw truncation_error("series_R: no convergence within max_terms");
    const Real qm1 = qm * q;
    const Cx den = Cx(Real(1) - qm1) * (Cx(1) - e2 * qm1);
    if (negligible(den, 1)) throw domain_error("series_R: (q e^{2i theta}; q)_m vanishes");
    Cx num;
    if (c != Real(0)) {
      // (1 + lambda q^{m+1} e^{i theta}/(2bc)) * (-2c) e^{i theta}
      const Cx poch_factor = Cx(1) - Cx(-p.lambda * qm1 / (Real(2) * p.b * c)) * e1;
      num = poch_factor * Cx(Real(-2) * c) * e1;
    } else {
      num = Cx(-p.lambda * qm1 / p.b) * e2;
    }
    term *= num / den * Cx(qm);
    sum += term;
    if (counter.small(term, sum)) break;
    qm = qm1;
  }
  const Cx value = Cx(Real(-1)) / (Cx(Real(0), s)) * sum;
  return {value, magnitude(value), Real(arg(value))};
}

/// mu'(x) = (2/pi) (-lambda q/b;q)_inf / (|R|^2 sqrt(1-x^2)), x = cos theta.
template <class Real>
DensitySample<Real> density_nevai(const Real& x, const Params<Real>& p, const SeriesControl& ctrl = {}) {
  using std::acos;
  using std::sqrt;
  p.validate_monic();
  if (!(magnitude(x) < Real(1))) throw domain_error("density_nevai: x must lie in (-1, 1)");
  const auto r = series_R(Real(acos(x)), p, ctrl);
  const Real mass = qpochhammer_inf(Real(-p.lambda * p.q / p.b), p.q, ctrl);
  const Real pi = boost::math::constants::pi<Real>();
  return {x, Real(2) / pi * mass / (r.modulus * r.modulus * Real(sqrt(Real(1) - x * x)))};
}

/// X(x) = 2 rho F(rho) / G(rho) for x off (-1, 1). Throws pole_error when
/// G(rho) vanishes (a candidate discrete mass point).
template <class Real>
complex_t<Real> stieltjes_transform(const complex_t<Real>& x, const Params<Real>& p,
                                    const SeriesControl& ctrl = {}) {
  using Cx = complex_t<Real>;
  using std::real;
  using std::imag;
  p.validate_monic();
  if (Real(imag(x)) == 0 && magnitude(Real(real(x))) < Real(1))
    throw domain_error("stieltjes_transform: x lies on the cut (-1, 1)");
  const Cx rho = rho_select(x).value;
  const auto f = detail::fg_series<Real>(rho, p, 1, ctrl);
  const auto g = detail::fg_series<Real>(rho, p, 0, ctrl);
  if (negligible(g.value, g.abs_sum)) throw pole_error("stieltjes_transform: G(rho) vanishes", 0);
  return Cx(2) * rho * f.value / g.value;
}

/// (1/(pi i)) (rho2 F(rho2)/G(rho2) - rho1 F(rho1)/G(rho1)) with
/// rho1 = e^{-i theta}, rho2 = e^{i theta}. The imaginary part is a
/// numerical residual.
template <class Real>
complex_t<Real> inversion_value(const Real& x, const Params<Real>& p, const SeriesControl& ctrl = {}) {
  using Cx = complex_t<Real>;
  p.validate_monic();
  if (!(magnitude(x) < Real(1))) throw domain_error("density_inversion: x must lie in (-1, 1)");
  const auto rho = rho_select(Cx(x));
  const Cx& rho1 = rho.value;
  const Cx& rho2 = rho.conj_pair;
  const Cx x1 = rho1 * series_F(rho1, p, ctrl) / series_G(rho1, p, ctrl);
  const Cx x2 = rho2 * series_F(rho2, p, ctrl) / series_G(rho2, p, ctrl);
  const Real pi = boost::math::constants::pi<Real>();
  return (x2 - x1) / Cx(Real(0), pi);
}

template <class Real>
DensitySample<Real> density_inversion(const Real& x, const Params<Real>& p, const SeriesControl& ctrl = {}) {
  using std::real;
  return {x, Real(real(inversion_value(x, p, ctrl)))};
}

/// h_n = 4^{-n} (-lambda q/b; q)_n = beta_1 ... beta_n.
template <class Real>
Real norm_squared(long n, const Params<Real>& p) {
  p.validate_monic();
  return qpochhammer(Real(-p.lambda * p.q / p.b), p.q, n) / ipow(Real(4), n);
}

/// Gram matrix G_nm = (2 (-lambda q/b;q)_inf / pi) int_0^pi P_n P_m / |R|^2 d theta
/// for n, m <= nmax, by composite Gauss-Legendre in theta with `nodes`
/// points (16 per panel; nodes must be a multiple of 16 and >= 64).
inline std::vector<std::vector<double>> gram_matrix(long nmax, const Params<double>& p, int nodes = 512,
                                                    const SeriesControl& ctrl = {}) {
  p.validate_monic();
  if (nodes < 64 || nodes % 16 != 0) throw domain_error("gram_matrix: nodes must be a multiple of 16, >= 64");
  if (nmax < 0) throw domain_error("gram_matrix: nmax must be nonnegative");
  const double pi = boost::math::constants::pi<double>();
  const QuadratureRule rule = composite_gauss_legendre(0.0, pi, nodes / 16, 16);
  const double mass = qpochhammer_inf(-p.lambda * p.q / p.b, p.q, ctrl);
  const auto n1 = static_cast<std::size_t>(nmax) + 1;
  std::vector<std::vector<double>> gram(n1, std::vector<double>(n1, 0.0));
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double theta = rule.nodes[i];
    const auto r = series_R(theta, p, ctrl);
    const auto poly = run_monic(p, std::cos(theta), std::max<long>(nmax, 1), Seed::P);
    const double w = rule.weights[i] * 2.0 * mass / (pi * r.modulus * r.modulus);
    for (std::size_t n = 0; n < n1; ++n)
      for (std::size_t m = 0; m <= n; ++m) gram[n][m] += w * poly[n] * poly[m];
  }
  for (std::size_t n = 0; n < n1; ++n)
    for (std::size_t m = n + 1; m < n1; ++m) gram[n][m] = gram[m][n];
  return gram;
}

inline double orthogonality_integral(long n, long m, const Params<double>& p, int nodes = 512,
                                     const SeriesControl& ctrl = {}) {
  if (n < 0 || m < 0) throw domain_error("orthogonality_integral: indices must be nonnegative");
  const auto gram = gram_matrix(std::max(n, m), p, nodes, ctrl);
  return gram[static_cast<std::size_t>(n)][static_cast<std::size_t>(m)];
}

}  // namespace qcf
