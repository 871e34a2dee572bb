#pragma once

/// \file
/// Closed-form numerators and denominators of the Rogers-Ramanujan family
/// of continued fractions, as finite q-binomial sums. Each sum runs while
/// its q-binomial factors are nonzero, so the bounds follow from the
/// vanishing convention rather than from a fixed cutoff.
///
/// Every formula is generic over the scalar: double, std::complex, exact
/// rationals and multiprecision floats all work.

#include <algorithm>

#include "qcf/core.hpp"
#include "qcf/qseries.hpp"
#include "qcf/recurrence.hpp"

namespace qcf {

template <class T>
struct ConvergentPair {
  T N{};
  T D{};

  T ratio() const {
    if (negligible(D, 1)) throw pole_error("ConvergentPair: denominator vanishes", 0);
    return N / D;
  }
};

namespace detail {

inline void require_nonnegative(long n, const char* who) {
  if (n < 0) throw domain_error(std::string(who) + ": n must be nonnegative");
}

}  // namespace detail

/// Rogers-Ramanujan convergents:
///   N_n = sum_k q^{k^2+k} lambda^k [n-k, k],  D_n = sum_k q^{k^2} lambda^k [n-k+1, k].
/// N_n / D_n = 1/(1 + lambda q/(1 + ... + lambda q^n/1)).
template <class T>
ConvergentPair<T> entry16(long n, const T& lambda, const T& q) {
  detail::require_nonnegative(n, "entry16");
  ConvergentPair<T> out{T(0), T(0)};
  for (long k = 0; 2 * k <= n + 1; ++k) {
    const T w = ipow(lambda, k) * ipow(q, static_cast<long long>(k) * k);
    out.N += w * ipow(q, k) * qbinomial(n - k, k, q);
    out.D += w * qbinomial(n - k + 1, k, q);
  }
  return out;
}

/// Numerator and denominator polynomials of Hirschhorn's J-fraction at x = 1,
///   D_n(1) = sum_{j,k,l} [k+l; j,l] [n-j-l, k] a^{k-j} (-b)^l lambda^j q^{C(k,2)+C(j,2)+j},
///   N_n(1) = (1-b) sum_{j,k,l} [k+l; j,l] [n-j-l-1, k] a^{k-j} (-b)^l lambda^j q^{C(k,2)+k+C(j,2)+j}.
/// N_{n+1}(1) / ((1-b) D_{n+1}(1)) is the fraction truncated after b + lambda q^n.
template <class T>
ConvergentPair<T> hirschhorn_closed(long n, const Params<T>& p) {
  detail::require_nonnegative(n, "hirschhorn_closed");
  const T& q = p.q;
  T num(0), den(0);
  // [k+l; j,l] vanishes unless j <= k; [n-j-l, k] unless j+k+l <= n.
  for (long l = 0; l <= n; ++l) {
    const T bl = ipow(T(-p.b), l);
    for (long j = 0; j + l <= n; ++j) {
      const T lj = ipow(p.lambda, j) * ipow(q, choose2(j) + j);
      for (long k = j; j + k + l <= n; ++k) {
        const T common = qmultinomial(k + l, {j, l}, q) * ipow(p.a, k - j) * bl * lj * ipow(q, choose2(k));
        den += common * qbinomial(n - j - l, k, q);
        num += common * ipow(q, k) * qbinomial(n - j - l - 1, k, q);
      }
    }
  }
  return {(T(1) - p.b) * num, den};
}

/// Convergents of the a = 0 fraction 1/(1-b) + (b+lambda q)/(1-b) + ... + (b+lambda q^n)/(1-b):
///   N'_n = sum_{k,j} q^{k^2+k} lambda^k [k+j, k] [n-k-j, k] (-b)^j,
///   D'_n = sum_{k,j} q^{k^2} lambda^k [k+j, k] [n-k-j+1, k] (-b)^j.
template <class T>
ConvergentPair<T> a0_closed(long n, const T& b, const T& lambda, const T& q) {
  detail::require_nonnegative(n, "a0_closed");
  ConvergentPair<T> out{T(0), T(0)};
  for (long j = 0; j <= n + 1; ++j) {
    const T bj = ipow(T(-b), j);
    for (long k = 0; 2 * k + j <= n + 1; ++k) {
      const T w = ipow(lambda, k) * ipow(q, static_cast<long long>(k) * k) * qbinomial(k + j, k, q) * bj;
      out.N += w * ipow(q, k) * qbinomial(n - k - j, k, q);
      out.D += w * qbinomial(n - k - j + 1, k, q);
    }
  }
  return out;
}

/// Denominator polynomial Q_n(x) of the b = 0 fraction
/// 1/(x+a) + lambda q/(x+aq) + ..., in the form
///   sum_j [n-j, j] (-a/x;q)_{n-j} / (-a/x;q)_j lambda^j x^{n-2j} q^{j^2}
/// with the Pochhammer quotient multiplied out as prod_{i=j}^{n-j-1} (x + a q^i),
/// which stays finite at x = 0.
template <class T>
T ram_Q(long n, const T& x, const T& a, const T& lambda, const T& q) {
  detail::require_nonnegative(n, "ram_Q");
  T sum(0);
  for (long j = 0; 2 * j <= n; ++j) {
    T prod(1);
    for (long i = j; i < n - j; ++i) prod *= x + a * ipow(q, i);
    sum += qbinomial(n - j, j, q) * prod * ipow(lambda, j) * ipow(q, static_cast<long long>(j) * j);
  }
  return sum;
}

/// Numerator polynomial Q*_n(x):
///   sum_j [n-j-1, j] (-a/x;q)_{n-j} / (-a/x;q)_{j+1} lambda^j x^{n-2j-1} q^{j^2+j}.
template <class T>
T ram_Qstar(long n, const T& x, const T& a, const T& lambda, const T& q) {
  detail::require_nonnegative(n, "ram_Qstar");
  T sum(0);
  for (long j = 0; 2 * j + 1 <= n; ++j) {
    T prod(1);
    for (long i = j + 1; i < n - j; ++i) prod *= x + a * ipow(q, i);
    sum += qbinomial(n - j - 1, j, q) * prod * ipow(lambda, j) * ipow(q, static_cast<long long>(j) * j + j);
  }
  return sum;
}

/// Q_n(x) as the polynomial double sum
///   sum_{j,k} [k, j] [n-j, k] a^{k-j} x^{n-j-k} lambda^j q^{C(k,2)+C(j,2)+j}.
template <class T>
T ram_Q_double_sum(long n, const T& x, const T& a, const T& lambda, const T& q) {
  detail::require_nonnegative(n, "ram_Q_double_sum");
  T sum(0);
  for (long j = 0; 2 * j <= n; ++j)
    for (long k = j; j + k <= n; ++k)
      sum += qbinomial(k, j, q) * qbinomial(n - j, k, q) * ipow(a, k - j) * ipow(x, n - j - k) *
             ipow(lambda, j) * ipow(q, choose2(k) + choose2(j) + j);
  return sum;
}

/// Q*_n(x) as sum_{j,k} [k, j] [n-1-j, k] a^{k-j} x^{n-1-j-k} lambda^j q^{C(k,2)+k+C(j,2)+j}.
template <class T>
T ram_Qstar_double_sum(long n, const T& x, const T& a, const T& lambda, const T& q) {
  detail::require_nonnegative(n, "ram_Qstar_double_sum");
  T sum(0);
  for (long j = 0; 2 * j + 1 <= n; ++j)
    for (long k = j; j + k + 1 <= n; ++k)
      sum += qbinomial(k, j, q) * qbinomial(n - 1 - j, k, q) * ipow(a, k - j) * ipow(x, n - 1 - j - k) *
             ipow(lambda, j) * ipow(q, choose2(k) + k + choose2(j) + j);
  return sum;
}

/// Convergents of 1+a + lambda q/(1+aq) + ... + lambda q^n/(1+aq^n), which
/// equals (1+a) N^_n / D^_n:
///   N^_n = sum_j q^{j^2} lambda^j [n+1-j, j] (-aq;q)_{n-j} / (-a;q)_j,
///   D^_n = sum_j q^{j^2+j} lambda^j [n-j, j] (-aq;q)_{n-j} / (-aq;q)_j.
template <class T>
ConvergentPair<T> entry15(long n, const T& a, const T& lambda, const T& q) {
  if (n < 1) throw domain_error("entry15: n must be >= 1");
  ConvergentPair<T> out{T(0), T(0)};
  const T aq = -a * q;
  for (long j = 0; 2 * j <= n + 1; ++j) {
    const T top = qpochhammer(aq, q, n - j);
    const T low_n = qpochhammer(T(-a), q, j);
    const T low_d = qpochhammer(aq, q, j);
    if (negligible(low_n, 1) || negligible(low_d, 1))
      throw domain_error("entry15: -a is of the form q^{-m}");
    const T w = ipow(lambda, j) * ipow(q, static_cast<long long>(j) * j);
    out.N += w * qbinomial(n + 1 - j, j, q) * top / low_n;
    out.D += w * ipow(q, j) * qbinomial(n - j, j, q) * top / low_d;
  }
  return out;
}

/// g(b, lambda) = sum_k lambda^k q^{k^2} / ((q;q)_k (-bq;q)_k).
template <class T, class Q>
T g_function(const T& b, const T& lambda, const Q& q, const SeriesControl& ctrl = {}) {
  detail::require_base_in_unit_disc(q, "g_function");
  T sum(1);
  T term(1);
  Q qk(1);
  SmallTermCounter counter(ctrl);
  for (long k = 0;; ++k) {
    if (counter.exhausted(k)) throw truncation_error("g_function: no convergence within max_terms");
    const Q qk1 = qk * q;
    const T den = T(Q(1) - qk1) * (T(1) + b * qk1);
    if (negligible(den, 1)) throw domain_error("g_function: (-bq;q)_k vanishes");
    // term_{k+1}/term_k = lambda q^{2k+1} / ((1-q^{k+1})(1+bq^{k+1}))
    term *= lambda * T(qk * qk1) / den;
    sum += term;
    if (counter.small(term, sum)) return sum;
    qk = qk1;
  }
}

}  // namespace qcf
