#pragma once

/// \file
/// Solutions of the monic recurrence written as moments: a Jackson
/// q-integral of t^k against a weight f(t) between the complex endpoints
/// e^{-i theta}/2 and e^{i theta}/2, and the equivalent 2phi1 closed form.

#include <cmath>
#include <functional>

#include "qcf/core.hpp"
#include "qcf/measure.hpp"
#include "qcf/qseries.hpp"
#include "qcf/recurrence.hpp"

namespace qcf {

template <class Cx>
struct QIntegrand {
  std::function<Cx(const Cx&)> evaluator;
  Cx lower;
  Cx upper;
};

/// Jackson integral int_lower^upper f d_q t
///   = upper (1-q) sum_n q^n f(upper q^n) - lower (1-q) sum_n q^n f(lower q^n).
template <class Cx, class Q>
Cx qintegral(const QIntegrand<Cx>& f, const Q& q, const SeriesControl& ctrl = {}) {
  detail::require_base_in_unit_disc(q, "qintegral");
  if (!f.evaluator) throw domain_error("qintegral: empty integrand");
  auto one_sided = [&](const Cx& end) {
    Cx sum(0);
    if (end == Cx(0)) return sum;
    Cx point = end;
    Q qn(1);
    SmallTermCounter counter(ctrl);
    for (long n = 0;; ++n) {
      if (counter.exhausted(n)) throw truncation_error("qintegral: no convergence within max_terms");
      const Cx term = Cx(qn) * f.evaluator(point);
      sum += term;
      if (counter.small(term, sum)) break;
      qn *= q;
      point *= Cx(q);
    }
    return Cx(end) * Cx(Q(1) - q) * sum;
  };
  if (f.lower == f.upper) return Cx(0);
  return one_sided(f.upper) - one_sided(f.lower);
}

/// Weight solving f(t)(x - t - 1/(4t)) = f(t/q)(c/q + lambda/(4bt)) with
/// x = cos theta:
///   f(t) = (2q e^{i theta} t, 2q e^{-i theta} t; q)_inf (At, q/(At); q)_inf
///          / ((-4bct/lambda, Bt, q/(Bt); q)_inf),   A = -4bc/lambda, B = 4c.
/// Since At = -4bct/lambda, the evaluation uses
///   prod_j (1 - q^{j+1}/(At)) / (1 - q^{j+1}/(Bt)) / (Bt;q)_inf.
template <class Real>
complex_t<Real> weight_f(const complex_t<Real>& t, const Real& theta, const Params<Real>& p,
                         const SeriesControl& ctrl = {}) {
  using Cx = complex_t<Real>;
  using std::cos;
  using std::sin;
  p.validate();
  const Real c = p.c();
  if (c == Real(0) || p.lambda == Real(0)) throw domain_error("weight_f: requires a != 0 and lambda != 0");
  if (t == Cx(0)) throw domain_error("weight_f: t must be nonzero");
  const Real& q = p.q;
  const Cx e1(Real(cos(theta)), Real(sin(theta)));
  const Cx A = Cx(Real(-4) * p.b * c / p.lambda);
  const Cx B = Cx(Real(4) * c);

  const Cx twoq_t = Cx(Real(2) * q) * t;
  Cx value = qpochhammer_inf(Cx(twoq_t * e1), q, ctrl) * qpochhammer_inf(Cx(twoq_t / e1), q, ctrl);
  const Cx bt_poch = qpochhammer_inf(Cx(B * t), q, ctrl);
  if (negligible(bt_poch, 1)) throw domain_error("weight_f: (Bt;q)_inf vanishes");
  value /= bt_poch;

  const Cx inv_at = Cx(1) / (A * t);
  const Cx inv_bt = Cx(1) / (B * t);
  const Real tol = Real(ctrl.rel_tol);
  Real qj = q;
  int run = 0;
  for (long j = 0;; ++j) {
    if (j >= ctrl.max_terms) throw truncation_error("weight_f: product did not converge within max_terms");
    const Cx num = Cx(1) - inv_at * qj;
    const Cx den = Cx(1) - inv_bt * qj;
    if (negligible(den, 1)) throw domain_error("weight_f: (q/(Bt);q)_inf vanishes");
    value *= num / den;
    if (magnitude(Cx(num - den)) <= tol * magnitude(den)) {
      if (++run >= ctrl.consecutive_small) break;
    } else {
      run = 0;
    }
    qj *= q;
  }
  return value;
}

/// p_k(x) = 4(-i sin theta)/(1-q) (2c e^{i theta}, 2c e^{-i theta}; q)_inf
///          / (q, e^{2i theta}, e^{-2i theta}; q)_inf
///          * int_{e^{-i theta}/2}^{e^{i theta}/2} t^k f(t) d_q t.
template <class Real>
complex_t<Real> moment_pk_integral(long k, const Real& x, const Params<Real>& p, const SeriesControl& ctrl = {}) {
  using Cx = complex_t<Real>;
  using std::acos;
  using std::cos;
  using std::sin;
  if (k < 0) throw domain_error("moment_pk_integral: k must be nonnegative");
  p.validate_monic();
  if (!(magnitude(p.lambda * p.q / p.b) < Real(1)))
    throw domain_error("moment_pk_integral: requires |lambda q / b| < 1");
  if (!(magnitude(x) < Real(1))) throw domain_error("moment_pk_integral: x must lie in (-1, 1)");
  const Real theta = Real(acos(x));
  const Real c = p.c();
  const Real& q = p.q;
  const Cx e1(Real(cos(theta)), Real(sin(theta)));
  const Cx e_1 = Cx(1) / e1;

  const Cx pre_num = qpochhammer_inf(Cx(Real(2) * c * e1), q, ctrl) * qpochhammer_inf(Cx(Real(2) * c * e_1), q, ctrl);
  const Cx pre_den = Cx(qpochhammer_inf(q, q, ctrl)) * qpochhammer_inf(Cx(e1 * e1), q, ctrl) *
                     qpochhammer_inf(Cx(e_1 * e_1), q, ctrl);
  const Cx pre = Cx(Real(0), Real(-4) * Real(sin(theta)) / (Real(1) - q)) * pre_num / pre_den;

  QIntegrand<Cx> integrand{
      [&](const Cx& t) { return ipow(t, k) * weight_f(t, theta, p, ctrl); },
      e_1 / Cx(2),
      e1 / Cx(2),
  };
  return pre * qintegral(integrand, q, ctrl);
}

/// Which root s of s^2 - 2xs + 1 enters the closed form: the one of modulus
/// <= 1 (automatic), or e^{-i theta} / e^{i theta} with theta = arccos x.
enum class MomentBranch { automatic, minus, plus };

/// p_k(x) = s^{-k} (2cs;q)_k (-lambda q s/(2bc);q)_inf / (2^k (qs/(2c);q)_inf)
///          * 2phi1(-b q^{-k}/lambda, 0; q^{1-k}/(2cs); q, -lambda q s/(2bc)).
template <class Real>
complex_t<Real> moment_pk_closed(long k, const complex_t<Real>& x, const Params<Real>& p,
                                 const SeriesControl& ctrl = {}, MomentBranch branch = MomentBranch::automatic) {
  using Cx = complex_t<Real>;
  using std::acos;
  using std::exp;
  if (k < 0) throw domain_error("moment_pk_closed: k must be nonnegative");
  p.validate_monic();
  const Real c = p.c();
  if (c == Real(0)) throw domain_error("moment_pk_closed: requires c != 0 (a != 0)");
  if (p.lambda == Real(0)) throw domain_error("moment_pk_closed: requires lambda != 0");
  const Real z_scale = -p.lambda * p.q / (Real(2) * p.b * c);
  if (!(magnitude(z_scale) < Real(1))) throw domain_error("moment_pk_closed: requires |lambda q / (2bc)| < 1");
  const Real& q = p.q;

  Cx s;
  if (branch == MomentBranch::automatic) {
    s = rho_select(x).value;
  } else {
    const Cx theta = Cx(acos(x));
    const Cx i_theta = Cx(Real(0), Real(1)) * theta;
    s = branch == MomentBranch::minus ? Cx(exp(-i_theta)) : Cx(exp(i_theta));
  }

  const Cx z = Cx(z_scale) * s;
  const Cx two_cs = Cx(Real(2) * c) * s;
  const Cx den = qpochhammer_inf(Cx(Cx(q) * s / Cx(Real(2) * c)), q, ctrl);
  if (negligible(den, 1)) throw domain_error("moment_pk_closed: (qs/(2c);q)_inf vanishes");
  const Cx pre = qpochhammer(two_cs, q, k) * qpochhammer_inf(z, q, ctrl) / (den * ipow(Cx(2) * s, k));
  const auto spec = make_phi<Cx, Real>({Cx(-p.b * ipow(q, -k) / p.lambda), Cx(0)},
                                       {Cx(ipow(q, 1 - k)) / two_cs}, q, z);
  return pre * phi(spec, ctrl);
}

}  // namespace qcf
