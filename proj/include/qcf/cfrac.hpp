#pragma once

/// \file
/// Continued-fraction evaluation. Forward convergents come from the
/// recurrence engine; eval_backward folds a truncated fraction from its
/// innermost level outward and serves as the independent route.

#include <span>

#include "qcf/core.hpp"
#include "qcf/recurrence.hpp"

namespace qcf {

/// Evaluates b_0 + a_1/(b_1 + a_2/(b_2 + ... + a_depth/b_depth)) with
/// `numer(k)` giving a_k (k >= 1) and `denom(k)` giving b_k (k >= 0).
/// Throws pole_error naming the level whose denominator vanished.
template <class T, class NumerFn, class DenomFn>
T eval_backward_fn(NumerFn&& numer, DenomFn&& denom, long depth) {
  if (depth < 0) throw domain_error("eval_backward: depth must be >= 0");
  T tail = T(denom(depth));
  for (long k = depth; k >= 1; --k) {
    const T a = T(numer(k));
    if (a == T(0)) {
      // A zero partial numerator cuts the fraction; the tail is irrelevant.
      tail = T(denom(k - 1));
      continue;
    }
    if (negligible(tail, 1)) throw pole_error("eval_backward: vanishing denominator", k);
    tail = T(denom(k - 1)) + a / tail;
  }
  return tail;
}

/// Span form: numers[k] = a_k for k = 1..depth (numers[0] is ignored),
/// denoms[k] = b_k for k = 0..depth.
template <class T>
T eval_backward(std::span<const T> numers, std::span<const T> denoms, long depth) {
  if (depth < 0 || static_cast<std::size_t>(depth) >= numers.size() ||
      static_cast<std::size_t>(depth) >= denoms.size())
    throw domain_error("eval_backward: depth exceeds the supplied coefficients");
  return eval_backward_fn<T>([&](long k) { return numers[static_cast<std::size_t>(k)]; },
                             [&](long k) { return denoms[static_cast<std::size_t>(k)]; }, depth);
}

/// Convergent n of a family, N/D from the forward recurrence.
template <class Family, class X>
X convergent(const Family& family, const X& x, long n) {
  const long level = n + Family::shift;
  if (level == 0) return X(0);
  const auto seq = run_jfraction(family, x, level);
  const X& d = seq.D.back();
  if (negligible(d, 1)) throw pole_error("convergent: D_n(x) vanishes", n);
  return seq.N.back() / d;
}

/// Convergent n of a family by backward evaluation of the J-fraction
///   0 + A_0/(A_0x+B_0) - C_1/(A_1x+B_1) - ...
template <class Family, class X>
X backward_convergent(const Family& family, const X& x, long n) {
  const long level = n + Family::shift;
  return eval_backward_fn<X>(
      [&](long k) {
        return k == 1 ? X(family.coeffs(0).A) : X(-family.coeffs(k - 1).C);
      },
      [&](long k) {
        if (k == 0) return X(0);
        const auto c = family.coeffs(k - 1);
        return X(c.A) * x + X(c.B);
      },
      level);
}

// ---------------------------------------------------------------------------
// The specific fractions, written out term by term as displayed.
// ---------------------------------------------------------------------------

/// 1/(1-b+a) + (b+lambda q)/(1-b+aq) + ... + (b+lambda q^n)/(1-b+aq^n).
template <class T>
T hirschhorn_fraction(const Params<T>& p, long n) {
  return eval_backward_fn<T>(
      [&](long k) { return k == 1 ? T(1) : p.b + p.lambda * ipow(p.q, k - 1); },
      [&](long k) { return k == 0 ? T(0) : T(1) - p.b + p.a * ipow(p.q, k - 1); }, n + 1);
}

/// Hirschhorn's fraction truncated after the b + lambda q^depth term,
/// evaluated as H(1)/(1-b) through the J-fraction machinery.
template <class T>
T hirschhorn_cf(const Params<T>& p, long depth) {
  p.validate();
  return backward_convergent(HirschhornFamily<T>{p}, T(1), depth + 1) / (T(1) - p.b);
}

/// Rogers-Ramanujan: 1/(1 + lambda q/(1 + ... + lambda q^n/1)).
template <class T>
T entry16_fraction(const T& lambda, const T& q, long n) {
  return eval_backward_fn<T>([&](long k) { return k == 1 ? T(1) : lambda * ipow(q, k - 1); },
                             [&](long k) { return k == 0 ? T(0) : T(1); }, n + 1);
}

/// 1/(1-b) + (b+lambda q)/(1-b) + ... + (b+lambda q^n)/(1-b).
template <class T>
T a0_fraction(const T& b, const T& lambda, const T& q, long n) {
  return eval_backward_fn<T>([&](long k) { return k == 1 ? T(1) : b + lambda * ipow(q, k - 1); },
                             [&](long k) { return k == 0 ? T(0) : T(1) - b; }, n + 1);
}

/// 1+a + lambda q/(1+aq) + ... + lambda q^n/(1+aq^n).
template <class T>
T entry15_fraction(const T& a, const T& lambda, const T& q, long n) {
  return eval_backward_fn<T>([&](long k) { return lambda * ipow(q, k); },
                             [&](long k) { return T(1) + a * ipow(q, k); }, n);
}

/// R(x) = 1/(x+a) + lambda q/(x+aq) + ... truncated after lambda q^n.
template <class T, class X>
X b0_fraction(const T& a, const T& lambda, const T& q, const X& x, long n) {
  return eval_backward_fn<X>([&](long k) { return k == 1 ? X(1) : X(lambda * ipow(q, k - 1)); },
                             [&](long k) { return k == 0 ? X(0) : x + X(a * ipow(q, k - 1)); }, n + 1);
}

}  // namespace qcf
