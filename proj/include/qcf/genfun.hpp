#pragma once

/// \file
/// Closed-form generating functions of the recurrence families, evaluated
/// as convergent sums. They are independent oracles for the coefficient
/// sequences produced by run_jfraction / run_monic.
///
/// Every family here satisfies a first-order q-difference equation
///   Y(t) = [s(t) + v(t) Y(qt)] / ((1 - alpha t)(1 - beta t)),
/// which iterates to
///   Y(t) = sum_k [prod_{j<k} v(q^j t)] s(q^k t) / (alpha t, beta t; q)_{k+1}.
/// Writing the products in this form (rather than with the (-lambda t q/a;q)_k
/// Pochhammer quotient) keeps a = 0 and c = 0 regular.

#include <algorithm>
#include <limits>
#include <tuple>
#include <utility>

#include "qcf/core.hpp"
#include "qcf/qseries.hpp"
#include "qcf/recurrence.hpp"

namespace qcf {

enum class GfKind { P, Pstar, D, N, Q, Qstar };

namespace detail {

template <class Cx>
struct QDifference {
  Cx alpha;      // roots of the quadratic denominator 1 - s t + p t^2
  Cx beta;
  Cx v1, v2;     // v(t) = v1 t + v2 t^2
  Cx seed_coef;  // s(t) = seed_coef * t^seed_pow
  int seed_pow;
};

template <class Cx>
std::pair<Cx, Cx> reciprocal_roots(const Cx& s, const Cx& p) {
  // 1 - s t + p t^2 = (1 - alpha t)(1 - beta t): alpha + beta = s, alpha beta = p.
  using std::sqrt;
  const Cx disc = Cx(sqrt(s * s - Cx(4) * p));
  return {(s + disc) / Cx(2), (s - disc) / Cx(2)};
}

template <class Real>
QDifference<complex_t<Real>> q_difference(GfKind kind, const complex_t<Real>& x, const Params<Real>& p) {
  using Cx = complex_t<Real>;
  QDifference<Cx> d;
  switch (kind) {
    case GfKind::P:
    case GfKind::Pstar: {
      p.validate_monic();
      const Real c = p.c();
      std::tie(d.alpha, d.beta) = reciprocal_roots(x, Cx(Real(1) / Real(4)));
      d.v1 = Cx(-c);
      d.v2 = Cx(-p.lambda * p.q / (Real(4) * p.b));
      d.seed_coef = Cx(1);
      d.seed_pow = kind == GfKind::P ? 0 : 1;
      break;
    }
    case GfKind::D:
    case GfKind::N:
    case GfKind::Q:
    case GfKind::Qstar: {
      p.validate();
      const bool b0 = kind == GfKind::Q || kind == GfKind::Qstar;
      if (b0 && p.b != Real(0)) throw domain_error("gf_eval: Q and Qstar need b = 0");
      std::tie(d.alpha, d.beta) = reciprocal_roots(Cx((Real(1) - p.b)) * x, Cx(-p.b));
      d.v1 = Cx(p.a);
      d.v2 = Cx(p.lambda * p.q);
      const bool numerator = kind == GfKind::N || kind == GfKind::Qstar;
      d.seed_coef = numerator ? Cx(Real(1) - p.b) : Cx(1);
      d.seed_pow = numerator ? 1 : 0;
      break;
    }
  }
  return d;
}

}  // namespace detail

/// Radius of convergence of the generating function in t (distance to the
/// nearest pole 1/alpha or 1/beta). Infinite radius is reported as +inf.
template <class Real>
Real gf_radius(GfKind kind, const complex_t<Real>& x, const Params<Real>& p) {
  const auto d = detail::q_difference<Real>(kind, x, p);
  const Real m = std::max(magnitude(d.alpha), magnitude(d.beta));
  if (m == 0) return std::numeric_limits<Real>::infinity();
  return Real(1) / m;
}

/// Value of the generating function sum_k y_k(x) t^k of family `kind`:
/// P / Pstar for the monic polynomials, D / N for Hirschhorn's J-fraction,
/// Q / Qstar for the b = 0 family. `t` must lie within 0.9 of the radius.
template <class Real>
complex_t<Real> gf_eval(GfKind kind, const complex_t<Real>& t, const complex_t<Real>& x, const Params<Real>& p,
                        const SeriesControl& ctrl = {}) {
  using Cx = complex_t<Real>;
  const auto d = detail::q_difference<Real>(kind, x, p);
  const Real reach = std::max(magnitude(d.alpha), magnitude(d.beta));
  if (magnitude(t) * reach >= Real(0.9))
    throw domain_error("gf_eval: |t| is not inside 0.9 of the radius of convergence");

  const Real& q = p.q;
  Cx value(0);
  Cx prod(1);    // prod_{j<k} v(q^j t)
  Cx denom(1);   // (alpha t, beta t; q)_{k+1}
  Cx tk = t;     // q^k t
  SmallTermCounter counter(ctrl);
  for (long k = 0;; ++k) {
    if (counter.exhausted(k)) throw truncation_error("gf_eval: series did not converge within max_terms");
    denom *= (Cx(1) - d.alpha * tk) * (Cx(1) - d.beta * tk);
    const Cx seed = d.seed_pow == 0 ? d.seed_coef : d.seed_coef * tk;
    const Cx term = prod * seed / denom;
    value += term;
    if (counter.small(term, value)) return value;
    prod *= d.v1 * tk + d.v2 * tk * tk;
    tk *= q;
  }
}

}  // namespace qcf
