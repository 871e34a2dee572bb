#pragma once

/// \file
/// Large-degree behaviour of the polynomial families.
///
/// Monic family, x = cos theta in (-1, 1):
///   P_k(x) ~ |R| / 2^k sin((k+1) theta - phi + pi/2),  phi = arg R.
/// b = 0 family, fixed x off the support:
///   Q_n(x)  ~ x^n     (-a/x;q)_inf  0phi1(-; -a/x;  q, lambda q / x^2),
///   Q*_n(x) ~ x^{n-1} (-aq/x;q)_inf 0phi1(-; -aq/x; q, lambda q^2 / x^2).

#include <cmath>

#include <boost/math/constants/constants.hpp>

#include "qcf/core.hpp"
#include "qcf/measure.hpp"
#include "qcf/qseries.hpp"
#include "qcf/recurrence.hpp"

namespace qcf {

template <class Real>
Real asymptotic_P(long k, const Real& x, const Params<Real>& p, const SeriesControl& ctrl = {}) {
  using std::acos;
  using std::sin;
  if (k < 0) throw domain_error("asymptotic_P: k must be nonnegative");
  if (!(magnitude(x) < Real(1))) throw domain_error("asymptotic_P: x must lie in (-1, 1)");
  p.validate_monic();
  const Real theta = Real(acos(x));
  const auto r = series_R(theta, p, ctrl);
  const Real half_pi = boost::math::constants::half_pi<Real>();
  return r.modulus / ipow(Real(2), k) * Real(sin(Real(k + 1) * theta - r.phase + half_pi));
}

/// 2^k P_k(x) - |R| sin((k+1) theta - phi + pi/2), with P_k from the recurrence.
template <class Real>
Real darboux_residual(long k, const Real& x, const Params<Real>& p, const SeriesControl& ctrl = {}) {
  const Real approx = asymptotic_P(k, x, p, ctrl);
  const Real pk = run_monic(p, x, std::max<long>(k, 1), Seed::P)[static_cast<std::size_t>(k)];
  return ipow(Real(2), k) * (pk - approx);
}

namespace detail {

template <class Real>
void require_b0(const Params<Real>& p, const char* who) {
  p.validate();
  if (p.b != Real(0)) throw domain_error(std::string(who) + ": requires b = 0");
}

/// 0phi1(-; lower; q, z).
template <class Real>
Real phi01(const Real& lower, const Real& q, const Real& z, const SeriesControl& ctrl) {
  return phi(make_phi<Real, Real>({}, {lower}, q, z), ctrl);
}

}  // namespace detail

template <class Real>
Real asymptotic_Q(long n, const Real& x, const Params<Real>& p, const SeriesControl& ctrl = {}) {
  detail::require_b0(p, "asymptotic_Q");
  if (x == Real(0)) throw domain_error("asymptotic_Q: x must be nonzero");
  const Real low = -p.a / x;
  return ipow(x, n) * qpochhammer_inf(low, p.q, ctrl) * detail::phi01(low, p.q, p.lambda * p.q / (x * x), ctrl);
}

template <class Real>
Real asymptotic_Qstar(long n, const Real& x, const Params<Real>& p, const SeriesControl& ctrl = {}) {
  detail::require_b0(p, "asymptotic_Qstar");
  if (x == Real(0)) throw domain_error("asymptotic_Qstar: x must be nonzero");
  const Real low = -p.a * p.q / x;
  return ipow(x, n - 1) * qpochhammer_inf(low, p.q, ctrl) *
         detail::phi01(low, p.q, p.lambda * p.q * p.q / (x * x), ctrl);
}

/// Half-width bound for the support of the b = 0 measure:
/// 2 (sup |a q^k| + 2 sup_{k>=1} sqrt|lambda q^k|).
template <class Real>
Real b0_exclusion_radius(const Params<Real>& p) {
  using std::sqrt;
  return Real(2) * (magnitude(p.a) + Real(2) * Real(sqrt(magnitude(p.lambda * p.q))));
}

/// Stieltjes transform of the b = 0 measure,
///   (1/(x+a)) 0phi1(-; -aq/x; q, lambda q^2/x^2) / 0phi1(-; -a/x; q, lambda q/x^2),
/// for lambda <= 0 and |x| beyond b0_exclusion_radius.
template <class Real>
Real stieltjes_b0(const Real& x, const Params<Real>& p, const SeriesControl& ctrl = {}) {
  detail::require_b0(p, "stieltjes_b0");
  if (p.lambda > Real(0)) throw domain_error("stieltjes_b0: requires lambda <= 0");
  if (magnitude(x) < b0_exclusion_radius(p))
    throw domain_error("stieltjes_b0: x lies inside the exclusion zone around the support");
  const Real x2 = x * x;
  const Real num = detail::phi01(Real(-p.a * p.q / x), p.q, Real(p.lambda * p.q * p.q / x2), ctrl);
  const Real den = detail::phi01(Real(-p.a / x), p.q, Real(p.lambda * p.q / x2), ctrl);
  const Real lead = x + p.a;
  if (negligible(den, 1) || negligible(lead, magnitude(x)))
    throw pole_error("stieltjes_b0: vanishing denominator", 0);
  return num / (lead * den);
}

}  // namespace qcf
