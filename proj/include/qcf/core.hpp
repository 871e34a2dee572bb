#pragma once

/// \file
/// Shared vocabulary for the qcf library: error types, the truncation
/// contract used by every infinite sum and product, and scalar traits that
/// let the same templates run over double, std::complex<double>, exact
/// rationals and Boost.Multiprecision floats.

#include <complex>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <type_traits>

#include <boost/multiprecision/number.hpp>

namespace qcf {

namespace mp = boost::multiprecision;

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Arguments outside the hypotheses of a formula (zero theta argument,
/// radius violations, invalid parameter quadruples, ...).
class domain_error : public error {
 public:
  using error::error;
};

/// A denominator vanished. `level()` is the continued-fraction level or
/// series index where it happened.
class pole_error : public error {
 public:
  pole_error(const std::string& what, long level)
      : error(what + " (level " + std::to_string(level) + ")"), level_(level) {}
  long level() const noexcept { return level_; }

 private:
  long level_;
};

/// An infinite sum or product did not meet its stopping rule within
/// SeriesControl::max_terms.
class truncation_error : public error {
 public:
  using error::error;
};

// ---------------------------------------------------------------------------
// Truncation policy
// ---------------------------------------------------------------------------

/// Stopping rule for infinite sums and products: a sum stops once
/// `consecutive_small` successive terms satisfy
/// |term| <= rel_tol * (1 + |partial sum|). Products stop on the analogous
/// condition for |factor - 1|.
///
/// rel_tol is long double so that multiprecision callers can ask for
/// tolerances far below the double range.
struct SeriesControl {
  long double rel_tol = 1e-15L;
  int consecutive_small = 3;
  int max_terms = 10000;

  void validate() const {
    if (!(rel_tol > 0)) throw domain_error("SeriesControl: rel_tol must be positive");
    if (consecutive_small < 1) throw domain_error("SeriesControl: consecutive_small must be >= 1");
    if (max_terms < consecutive_small)
      throw domain_error("SeriesControl: max_terms must be >= consecutive_small");
  }

  /// Control tuned to the working precision of `Real`.
  template <class Real>
  static SeriesControl for_precision() {
    SeriesControl c;
    const long double eps = static_cast<long double>(std::numeric_limits<Real>::epsilon());
    c.rel_tol = eps > 1e-15L ? eps : eps * 4;
    c.max_terms = 20000;
    return c;
  }
};

// ---------------------------------------------------------------------------
// Scalar traits
// ---------------------------------------------------------------------------

template <class T, class Enable = void>
struct scalar_traits {
  using real_type = T;
  static constexpr bool is_complex = false;
};

template <class R>
struct scalar_traits<std::complex<R>> {
  using real_type = R;
  static constexpr bool is_complex = true;
};

template <class Backend, mp::expression_template_option ET>
struct scalar_traits<mp::number<Backend, ET>,
                     std::enable_if_t<mp::number_category<mp::number<Backend, ET>>::value ==
                                      mp::number_kind_complex>> {
  using real_type = typename mp::component_type<mp::number<Backend, ET>>::type;
  static constexpr bool is_complex = true;
};

/// Complex counterpart of a real scalar type.
template <class R>
struct complex_of {
  using type = std::complex<R>;
};

template <class Backend, mp::expression_template_option ET>
struct complex_of<mp::number<Backend, ET>> {
  using type = typename mp::complex_result_from_scalar<mp::number<Backend, ET>>::type;
};

template <class T>
using real_t = typename scalar_traits<T>::real_type;
template <class R>
using complex_t = typename complex_of<R>::type;

template <class T>
inline constexpr bool is_exact_v = std::numeric_limits<real_t<T>>::is_exact;

/// |x| for any supported scalar, always returned as the matching real type.
template <class T>
real_t<T> magnitude(const T& x) {
  using std::abs;
  return real_t<T>(abs(x));
}

/// Real and imaginary parts for any supported scalar (real scalars have
/// zero imaginary part).
template <class T>
real_t<T> re(const T& z) {
  using std::real;
  return real_t<T>(real(z));
}

template <class T>
real_t<T> im(const T& z) {
  using std::imag;
  return real_t<T>(imag(z));
}

/// Zero test used for pole and degenerate-parameter detection. Exact types
/// compare with 0; floating types treat |x| <= 64 eps * scale as zero.
template <class T, class S>
bool negligible(const T& x, const S& scale) {
  if constexpr (is_exact_v<T>) {
    return x == T(0);
  } else {
    using R = real_t<T>;
    const R eps = std::numeric_limits<R>::epsilon();
    return magnitude(x) <= R(64) * eps * R(scale);
  }
}

/// Integer power with negative exponents allowed.
template <class T>
T ipow(T base, long long e) {
  if (e < 0) return T(1) / ipow(base, -e);
  T result(1);
  while (e > 0) {
    if (e & 1) result *= base;
    base *= base;
    e >>= 1;
  }
  return result;
}

/// k choose 2, the exponent of the Gaussian factor q^(k choose 2).
constexpr long long choose2(long long k) noexcept { return k * (k - 1) / 2; }

/// Running state for the SeriesControl stopping rule.
class SmallTermCounter {
 public:
  explicit SmallTermCounter(const SeriesControl& ctrl) : ctrl_(ctrl) { ctrl.validate(); }

  /// Records a term; returns true once the stopping rule is met. A non-finite
  /// term means the series diverged and throws truncation_error.
  template <class T, class U>
  bool small(const T& term, const U& partial) {
    using R = real_t<T>;
    if constexpr (!is_exact_v<T>) {
      using std::isfinite;
      if (!isfinite(magnitude(term))) throw truncation_error("series diverged: non-finite term");
    }
    if (magnitude(term) <= R(ctrl_.rel_tol) * (R(1) + magnitude(partial)))
      ++run_;
    else
      run_ = 0;
    return run_ >= ctrl_.consecutive_small;
  }

  bool exhausted(long index) const noexcept { return index >= ctrl_.max_terms; }

 private:
  SeriesControl ctrl_;
  int run_ = 0;
};

}  // namespace qcf
