#pragma once

/// \file
/// q-calculus kernel: q-Pochhammer symbols, q-binomial and q-multinomial
/// coefficients, theta products and basic hypergeometric partial sums.
///
/// Everything here is a template over the scalar type. Finite objects
/// (qpochhammer, qbinomial, qmultinomial) work over any field, including
/// exact rationals; the infinite ones need a floating type.

#include <algorithm>
#include <initializer_list>
#include <span>
#include <vector>

#include "qcf/core.hpp"

namespace qcf {

namespace detail {

template <class Q>
void require_base_in_unit_disc(const Q& q, const char* who) {
  const auto m = magnitude(q);
  if (!(m > 0 && m < 1)) throw domain_error(std::string(who) + ": need 0 < |q| < 1");
}

}  // namespace detail

/// (a;q)_n = (1-a)(1-aq)...(1-aq^{n-1}); (a;q)_0 = 1.
template <class T, class Q>
T qpochhammer(const T& a, const Q& q, long n) {
  if (n < 0) throw domain_error("qpochhammer: n must be nonnegative");
  T result(1);
  T aqj = a;
  for (long j = 0; j < n; ++j) {
    result *= T(1) - aqj;
    aqj *= q;
  }
  return result;
}

/// (a;q)_inf for 0 < |q| < 1. The product stops once the tail bound
/// |a q^k| / (1 - |q|) has been below rel_tol for consecutive_small factors.
template <class T, class Q>
T qpochhammer_inf(const T& a, const Q& q, const SeriesControl& ctrl = {}) {
  detail::require_base_in_unit_disc(q, "qpochhammer_inf");
  ctrl.validate();
  using R = real_t<T>;
  const R tail_scale = R(1) - R(magnitude(q));
  const R tol = R(ctrl.rel_tol) * tail_scale;
  T result(1);
  T aqk = a;
  int run = 0;
  for (long k = 0; k < ctrl.max_terms; ++k) {
    if (magnitude(aqk) <= tol) {
      if (++run >= ctrl.consecutive_small) return result;
    } else {
      run = 0;
    }
    result *= T(1) - aqk;
    aqk *= q;
  }
  throw truncation_error("qpochhammer_inf: product did not converge within max_terms");
}

/// Gaussian binomial [n choose k]_q in product form
/// prod_{j=1}^{k} (1 - q^{n-k+j}) / (1 - q^j). Zero when k < 0, n < 0 or
/// n < k. Throws domain_error when q^j = 1 for some j <= k.
template <class T>
T qbinomial(long n, long k, const T& q) {
  if (k < 0 || n < 0 || n < k) return T(0);
  k = std::min(k, n - k);
  T result(1);
  T qj(1);
  T q_top = ipow(q, n - k);
  for (long j = 1; j <= k; ++j) {
    qj *= q;
    q_top *= q;
    const T den = T(1) - qj;
    if (negligible(den, 1)) throw domain_error("qbinomial: q is a root of unity of small order");
    result *= (T(1) - q_top) / den;
  }
  return result;
}

/// q-multinomial [n; k1,...,kr]_q, zero when any k_i < 0 or n < sum k_i.
template <class T>
T qmultinomial(long n, std::span<const long> ks, const T& q) {
  long total = 0;
  for (long k : ks) {
    if (k < 0) return T(0);
    total += k;
  }
  if (n < total || n < 0) return T(0);
  T result(1);
  long remaining = n;
  for (long k : ks) {
    result *= qbinomial(remaining, k, q);
    remaining -= k;
  }
  return result;
}

template <class T>
T qmultinomial(long n, std::initializer_list<long> ks, const T& q) {
  return qmultinomial(n, std::span<const long>(ks.begin(), ks.size()), q);
}

/// Theta product <z;q> = (z;q)_inf (q/z;q)_inf. Satisfies
/// <z;q> / <zq;q> = -z.
template <class T, class Q>
T theta(const T& z, const Q& q, const SeriesControl& ctrl = {}) {
  if (magnitude(z) == 0) throw domain_error("theta: z must be nonzero");
  return qpochhammer_inf(z, q, ctrl) * qpochhammer_inf(T(q) / z, q, ctrl);
}

/// Description of an r-phi-s series
///   sum_k (a_1..a_r;q)_k / (q,b_1..b_s;q)_k ((-1)^k q^(k choose 2))^(1+s-r) z^k.
template <class C, class Q>
struct PhiSpec {
  std::vector<C> upper;
  std::vector<C> lower;
  Q base;
  C argument;
};

template <class C, class Q>
PhiSpec<C, Q> make_phi(std::vector<C> upper, std::vector<C> lower, Q base, C argument) {
  return PhiSpec<C, Q>{std::move(upper), std::move(lower), std::move(base), std::move(argument)};
}

/// Partial sum of a basic hypergeometric series. Terminates exactly when an
/// upper factor (1 - a_i q^k) vanishes; otherwise stops per `ctrl`.
/// Throws domain_error if a lower parameter is q^{-m}.
template <class C, class Q>
C phi(const PhiSpec<C, Q>& spec, const SeriesControl& ctrl = {}) {
  const Q& q = spec.base;
  detail::require_base_in_unit_disc(q, "phi");
  const long extra = 1 + static_cast<long>(spec.lower.size()) - static_cast<long>(spec.upper.size());

  C sum(1);
  C term(1);
  Q qk(1);
  SmallTermCounter counter(ctrl);
  for (long k = 0;; ++k) {
    if (counter.exhausted(k)) throw truncation_error("phi: series did not converge within max_terms");
    C ratio = spec.argument;
    for (const C& a : spec.upper) {
      const C aqk = a * qk;
      const C f = C(1) - aqk;
      if (negligible(f, 1 + magnitude(aqk))) return sum;  // terminating series
      ratio *= f;
    }
    for (const C& b : spec.lower) {
      const C bqk = b * qk;
      const C f = C(1) - bqk;
      if (negligible(f, 1 + magnitude(bqk)))
        throw domain_error("phi: lower parameter of the form q^{-m}");
      ratio /= f;
    }
    const Q qk1 = qk * q;
    ratio /= C(Q(1) - qk1);
    if (extra != 0) ratio *= C(ipow(Q(-qk), extra));
    term *= ratio;
    sum += term;
    if (counter.small(term, sum)) return sum;
    qk = qk1;
  }
}

}  // namespace qcf
