#pragma once

/// \file
/// Three-term recurrences behind the continued fractions.
///
/// A J-fraction
///   A_0/(A_0 x + B_0) - C_1/(A_1 x + B_1) - C_2/(A_2 x + B_2) - ...
/// has numerators N_k and denominators D_k solving
///   y_{k+1} = (A_k x + B_k) y_k - C_k y_{k-1}
/// with D_0 = 1, D_1 = A_0 x + B_0, N_0 = 0, N_1 = A_0.
///
/// Families are small value types exposing `coeffs(k)` and a `shift`, the
/// offset between the family's own convergent index and the J-fraction
/// level (Ramanujan's Entry 16 indexes its convergents from the first
/// partial numerator, so its shift is 1).

#include <cmath>
#include <vector>

#include "qcf/core.hpp"
#include "qcf/qseries.hpp"

namespace qcf {

/// The quadruple (q, a, b, lambda) of Hirschhorn's continued fraction
///   1/(1-b+a) + (b+lambda q)/(1-b+aq) + (b+lambda q^2)/(1-b+aq^2) + ...
template <class Real>
struct Params {
  Real q{};
  Real a{};
  Real b{};
  Real lambda{};

  /// Positive root of gamma^2 = -4b/(1-b)^2. Needs b < 0.
  Real gamma() const {
    using std::sqrt;
    require_negative_b("gamma");
    return Real(sqrt(Real(-4) * b)) / (Real(1) - b);
  }

  /// c = a / (2 sqrt(-b)), the limit scale of alpha_k = c q^k.
  Real c() const {
    using std::sqrt;
    require_negative_b("c");
    return a / (Real(2) * Real(sqrt(-b)));
  }

  /// Hypotheses shared by every family: 0 < |q| < 1 and b != 1.
  void validate() const {
    detail::require_base_in_unit_disc(q, "Params");
    if (b == Real(1)) throw domain_error("Params: b must differ from 1");
  }

  /// Hypotheses of the monic (Nevai-class) family: b < 0 and
  /// 1 + lambda q^k / b > 0 for every k >= 1.
  void validate_monic() const {
    validate();
    require_negative_b("monic family");
    // Once |lambda q^k / b| < 1 every later factor is positive, so the scan
    // is finite.
    Real qk = q;
    for (long k = 1;; ++k) {
      const Real v = lambda * qk / b;
      if (!(Real(1) + v > 0))
        throw domain_error("Params: 1 + lambda q^k / b must be positive (k = " + std::to_string(k) + ")");
      if (magnitude(v) < Real(1)) break;
      qk *= q;
    }
  }

 private:
  void require_negative_b(const char* who) const {
    if (!(b < Real(0))) throw domain_error(std::string(who) + ": requires b < 0");
  }
};

template <class T>
struct JCoeffs {
  T A{};
  T B{};
  T C{};
};

/// Hirschhorn's J-fraction H(x): A_k = 1-b, B_k = a q^k, C_k = -(b + lambda q^k).
template <class T>
JCoeffs<T> hirschhorn_coeffs(const Params<T>& p, long k) {
  const T qk = ipow(p.q, k);
  return {T(1) - p.b, p.a * qk, -(p.b + p.lambda * qk)};
}

/// The b = 0 family R(x): A_k = 1, B_k = a q^k, C_k = -lambda q^k.
template <class T>
JCoeffs<T> b0_coeffs(const Params<T>& p, long k) {
  if (p.b != T(0)) throw domain_error("b0_coeffs: requires b = 0");
  const T qk = ipow(p.q, k);
  return {T(1), p.a * qk, -p.lambda * qk};
}

template <class T>
struct HirschhornFamily {
  Params<T> params;
  static constexpr long shift = 0;
  JCoeffs<T> coeffs(long k) const { return hirschhorn_coeffs(params, k); }
};

template <class T>
struct B0Family {
  Params<T> params;
  static constexpr long shift = 0;
  JCoeffs<T> coeffs(long k) const { return b0_coeffs(params, k); }
};

/// Rogers-Ramanujan fraction 1/(x + lambda q/(x + lambda q^2/(x + ...))),
/// indexed like Ramanujan's Entry 16: convergent n ends at lambda q^n.
template <class T>
struct Entry16Family {
  T lambda{};
  T q{};
  static constexpr long shift = 1;
  JCoeffs<T> coeffs(long k) const { return {T(1), T(0), -lambda * ipow(q, k)}; }
};

/// Monic rescaling P_k(x) = D_k(gamma x) / (gamma (1-b))^k:
///   x P_k = P_{k+1} + alpha_k P_k + beta_k P_{k-1},
///   alpha_k = c q^k, beta_k = (1 + lambda q^k / b) / 4.
template <class T>
struct MonicFamily {
  Params<T> params;
  T c;
  static constexpr long shift = 0;

  explicit MonicFamily(const Params<T>& p) : params(p), c((p.validate_monic(), p.c())) {}

  T alpha(long k) const { return c * ipow(params.q, k); }
  T beta(long k) const { return (T(1) + params.lambda * ipow(params.q, k) / params.b) / T(4); }
  JCoeffs<T> coeffs(long k) const { return {T(1), -alpha(k), beta(k)}; }
};

/// Numerator/denominator values of a J-fraction at one point.
template <class X>
struct ConvergentSeq {
  std::vector<X> N;
  std::vector<X> D;
  X x{};
};

/// N_0..N_depth and D_0..D_depth by forward recurrence.
template <class Family, class X>
ConvergentSeq<X> run_jfraction(const Family& family, const X& x, long depth) {
  if (depth < 1) throw domain_error("run_jfraction: depth must be >= 1");
  ConvergentSeq<X> seq;
  seq.x = x;
  seq.N.resize(static_cast<std::size_t>(depth) + 1);
  seq.D.resize(static_cast<std::size_t>(depth) + 1);
  const auto c0 = family.coeffs(0);
  seq.N[0] = X(0);
  seq.D[0] = X(1);
  seq.N[1] = X(c0.A);
  seq.D[1] = X(c0.A) * x + X(c0.B);
  for (long k = 1; k < depth; ++k) {
    const auto ck = family.coeffs(k);
    const X lin = X(ck.A) * x + X(ck.B);
    const X cc = X(ck.C);
    const auto i = static_cast<std::size_t>(k);
    seq.N[i + 1] = lin * seq.N[i] - cc * seq.N[i - 1];
    seq.D[i + 1] = lin * seq.D[i] - cc * seq.D[i - 1];
  }
  return seq;
}

/// Same recurrence with a power-of-two exponent ledger: the true values are
/// N[k] * 2^exponent[k] and D[k] * 2^exponent[k]. Mantissas are kept below
/// 2^256 so depth is not limited by overflow.
template <class X>
struct ScaledConvergentSeq {
  std::vector<X> N;
  std::vector<X> D;
  std::vector<long> exponent;
  X x{};
};

template <class Family, class X>
ScaledConvergentSeq<X> run_jfraction_scaled(const Family& family, const X& x, long depth) {
  static_assert(!is_exact_v<X>, "exponent scaling is for floating types");
  if (depth < 1) throw domain_error("run_jfraction_scaled: depth must be >= 1");
  using R = real_t<X>;
  constexpr int kStep = 256;
  const R big = R(std::ldexp(1.0, kStep));
  const R shrink = R(std::ldexp(1.0, -kStep));

  ScaledConvergentSeq<X> seq;
  seq.x = x;
  const auto n = static_cast<std::size_t>(depth) + 1;
  seq.N.resize(n);
  seq.D.resize(n);
  seq.exponent.assign(n, 0);
  const auto c0 = family.coeffs(0);
  seq.N[0] = X(0);
  seq.D[0] = X(1);
  seq.N[1] = X(c0.A);
  seq.D[1] = X(c0.A) * x + X(c0.B);
  // prev_* are the k-1 values expressed at the exponent of index k.
  X prev_n = seq.N[0], prev_d = seq.D[0];
  for (long k = 1; k < depth; ++k) {
    const auto i = static_cast<std::size_t>(k);
    X cur_n = seq.N[i], cur_d = seq.D[i];
    long e = seq.exponent[i];
    if (magnitude(cur_n) > big || magnitude(cur_d) > big) {
      cur_n *= shrink;
      cur_d *= shrink;
      prev_n *= shrink;
      prev_d *= shrink;
      e += kStep;
      // Rewrite index k at the new exponent so the ledger stays consistent.
      seq.N[i] = cur_n;
      seq.D[i] = cur_d;
      seq.exponent[i] = e;
    }
    const auto ck = family.coeffs(k);
    const X lin = X(ck.A) * x + X(ck.B);
    const X cc = X(ck.C);
    seq.N[i + 1] = lin * cur_n - cc * prev_n;
    seq.D[i + 1] = lin * cur_d - cc * prev_d;
    seq.exponent[i + 1] = e;
    prev_n = cur_n;
    prev_d = cur_d;
  }
  return seq;
}

enum class Seed { P, Pstar };

/// Monic polynomials P_k(x) (seed P: P_0 = 1, P_1 = x - c) or the
/// numerator polynomials P*_k(x) (seed Pstar: P*_0 = 0, P*_1 = 1), k = 0..depth.
template <class T, class X>
std::vector<X> run_monic(const Params<T>& p, const X& x, long depth, Seed seed) {
  const MonicFamily<T> family(p);
  auto seq = run_jfraction(family, x, depth);
  return seed == Seed::P ? std::move(seq.D) : std::move(seq.N);
}

}  // namespace qcf
