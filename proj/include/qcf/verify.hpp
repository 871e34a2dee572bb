#pragma once

/// \file
/// Self-verification suites. Each check compares two independent routes to
/// the same quantity (closed form against recurrence or backward
/// evaluation, one density formula against another, exact against
/// floating) and reports pass/fail with the worst observed discrepancy.
///
/// Random draws use fixed seeds, so a run is reproducible.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "qcf/qcf.hpp"
#include "qcf/precision.hpp"

namespace qcf::verify {

struct CheckResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0;
};

/// The parameter point used by the measure, moment and asymptotic checks.
inline Params<double> reference_params() { return {0.4, 0.3, -0.25, 0.2}; }

namespace detail {

using cd = std::complex<double>;

inline std::string fmt(double v) {
  std::ostringstream os;
  os.precision(3);
  os << v;
  return os.str();
}

inline double rel_err(double got, double want) {
  return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

inline double rel_err(const cd& got, const cd& want) {
  return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

/// Runs `body`, timing it and converting library errors into failures.
/// `body` returns pass and fills `detail`; a runtime budget, when given, is
/// part of the verdict.
inline CheckResult timed(int id, std::string name, double budget_seconds,
                         const std::function<bool(std::string&)>& body) {
  CheckResult r;
  r.id = id;
  r.name = std::move(name);
  const auto start = std::chrono::steady_clock::now();
  try {
    r.pass = body(r.detail);
  } catch (const std::exception& e) {
    r.pass = false;
    r.detail = std::string("exception: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (budget_seconds > 0 && r.seconds > budget_seconds) {
    r.pass = false;
    r.detail += "; runtime " + fmt(r.seconds) + " s exceeds " + fmt(budget_seconds) + " s";
  }
  return r;
}

class Draws {
 public:
  explicit Draws(std::uint64_t seed) : rng_(seed) {}
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  /// |q| in (lo, hi) with a random sign.
  double signed_base(double lo, double hi) { return (coin() ? 1.0 : -1.0) * uniform(lo, hi); }
  bool coin() { return std::uniform_int_distribution<int>(0, 1)(rng_) == 1; }
  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }
  rational fraction(long max_num, long den_lo, long den_hi) {
    return rational(integer(-max_num, max_num), integer(den_lo, den_hi));
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace detail

// ---------------------------------------------------------------------------
// convergents
// ---------------------------------------------------------------------------

/// Rogers-Ramanujan closed form against backward evaluation.
inline CheckResult check_entry16() {
  return detail::timed(1, "Entry 16 closed form vs backward continued fraction", 5.0, [](std::string& out) {
    detail::Draws draws(0x5eed0001);
    double worst = 0;
    for (int draw = 0; draw < 100; ++draw) {
      const double q = draws.signed_base(0.05, 0.9);
      const double lambda = draws.uniform(-0.2, 1.0);
      for (long n = 0; n <= 30; ++n)
        worst = std::max(worst, detail::rel_err(entry16(n, lambda, q).ratio(), entry16_fraction(lambda, q, n)));
    }
    long exact_mismatch = 0;
    for (int draw = 0; draw < 20; ++draw) {
      rational q = draws.fraction(9, 10, 20);
      if (q == 0) q = rational(1, 3);
      const rational lambda = draws.fraction(20, 10, 20);
      for (long n = 0; n <= 12; ++n) {
        const auto pair = entry16(n, lambda, q);
        if (pair.D == 0) continue;
        if (pair.N / pair.D != entry16_fraction(lambda, q, n)) ++exact_mismatch;
      }
    }
    out = "max rel err " + detail::fmt(worst) + " (tol 1e-11); exact mismatches " + std::to_string(exact_mismatch);
    return worst < 1e-11 && exact_mismatch == 0;
  });
}

/// Hirschhorn's triple sums against the truncated fraction.
inline CheckResult check_hirschhorn() {
  return detail::timed(2, "Hirschhorn closed form vs truncated fraction", 10.0, [](std::string& out) {
    detail::Draws draws(0x5eed0002);
    double worst = 0;
    for (int draw = 0; draw < 50; ++draw) {
      const Params<double> p{draws.signed_base(0.05, 0.9), draws.uniform(-0.4, 0.4), draws.uniform(-0.4, 0.4),
                             draws.uniform(-0.5, 1.0)};
      for (long n = 0; n <= 20; ++n) {
        const auto pair = hirschhorn_closed(n + 1, p);
        const double closed = pair.N / ((1 - p.b) * pair.D);
        worst = std::max(worst, detail::rel_err(closed, hirschhorn_fraction(p, n)));
      }
    }
    out = "max rel err " + detail::fmt(worst) + " (tol 1e-11)";
    return worst < 1e-11;
  });
}

/// Entry 15 and the a = 0 formulas against recurrence convergents, plus the
/// exact link between the b = 0 recurrence at x = 1 and Entry 15.
inline CheckResult check_entry15_a0() {
  return detail::timed(3, "Entry 15 and a = 0 closed forms vs recurrence", 0, [](std::string& out) {
    detail::Draws draws(0x5eed0003);
    double worst15 = 0, worst_a0 = 0;
    for (int draw = 0; draw < 50; ++draw) {
      const double q = draws.signed_base(0.05, 0.9);
      const double a = draws.uniform(-0.5, 0.5);
      const double b = draws.uniform(-0.5, 0.5);
      const double lambda = draws.uniform(-0.5, 1.0);
      const auto b0_seq = run_jfraction(B0Family<double>{{q, a, 0.0, lambda}}, 1.0, 26);
      const auto h_seq = run_jfraction(HirschhornFamily<double>{{q, 0.0, b, lambda}}, 1.0, 26);
      for (long n = 1; n <= 25; ++n) {
        const auto e = entry15(n, a, lambda, q);
        const auto i = static_cast<std::size_t>(n + 1);
        worst15 = std::max({worst15, detail::rel_err((1 + a) * e.N, b0_seq.D[i]), detail::rel_err(e.D, b0_seq.N[i]),
                            detail::rel_err((1 + a) * e.N / e.D, b0_seq.D[i] / b0_seq.N[i])});
      }
      for (long n = 0; n <= 25; ++n) {
        const auto g = a0_closed(n, b, lambda, q);
        const auto i = static_cast<std::size_t>(n + 1);
        worst_a0 = std::max({worst_a0, detail::rel_err(g.N, h_seq.N[i] / (1 - b)), detail::rel_err(g.D, h_seq.D[i]),
                             detail::rel_err(g.ratio(), h_seq.N[i] / ((1 - b) * h_seq.D[i]))});
      }
    }
    long exact_mismatch = 0;
    for (int draw = 0; draw < 10; ++draw) {
      rational q = draws.fraction(9, 10, 16);
      if (q == 0) q = rational(1, 2);
      const rational a = draws.fraction(8, 10, 16);
      const rational lambda = draws.fraction(16, 10, 16);
      const auto seq = run_jfraction(B0Family<rational>{{q, a, rational(0), lambda}}, rational(1), 11);
      for (long n = 1; n <= 10; ++n) {
        const auto e = entry15(n, a, lambda, q);
        const auto i = static_cast<std::size_t>(n + 1);
        if ((1 + a) * e.N != seq.D[i] || e.D != seq.N[i]) ++exact_mismatch;
      }
    }
    out = "entry15 max rel err " + detail::fmt(worst15) + ", a=0 max rel err " + detail::fmt(worst_a0) +
          " (tol 1e-11); exact mismatches " + std::to_string(exact_mismatch);
    return worst15 < 1e-11 && worst_a0 < 1e-11 && exact_mismatch == 0;
  });
}

/// g(b, lambda q)/g(b, lambda) against the depth-200 a = 0 fraction, and the
/// limit of N'_n.
inline CheckResult check_limit_identity() {
  return detail::timed(9, "g-function limit identity", 0, [](std::string& out) {
    const double q = 0.4, b = -0.3, lambda = 0.5;
    const double ratio = g_function(b, lambda * q, q) / g_function(b, lambda, q);
    const double cf_err = std::abs(ratio - a0_fraction(b, lambda, q, 200));
    const double n_err = std::abs(a0_closed(60, b, lambda, q).N - g_function(b, lambda * q, q) / (1 + b));
    out = "|g ratio - CF_200| = " + detail::fmt(cf_err) + " (tol 1e-12); |N'_60 - limit| = " + detail::fmt(n_err) +
          " (tol 1e-8)";
    return cf_err < 1e-12 && n_err < 1e-8;
  });
}

// ---------------------------------------------------------------------------
// measure
// ---------------------------------------------------------------------------

inline CheckResult check_density_agreement() {
  return detail::timed(4, "Nevai density vs Stieltjes inversion", 2.0, [](std::string& out) {
    const auto p = reference_params();
    double worst = 0, min_density = 1e300;
    for (int i = 0; i <= 100; ++i) {
      const double x = -0.99 + 1.98 * i / 100.0;
      const double nevai = density_nevai(x, p).density;
      worst = std::max(worst, std::abs(nevai - density_inversion(x, p).density));
      min_density = std::min(min_density, nevai);
    }
    out = "max abs diff " + detail::fmt(worst) + " over 101 points (tol 1e-8); min density " + detail::fmt(min_density);
    return worst < 1e-8 && min_density >= -1e-12;
  });
}

/// Markov's theorem: P*_k/P_k approaches the Stieltjes transform. The
/// monotone decrease is measured in 440-digit arithmetic because the error
/// falls below double epsilon by k = 50.
inline CheckResult check_markov_limit() {
  return detail::timed(5, "Markov limit P*_k/P_k -> X(x)", 0, [](std::string& out) {
    const auto p = reference_params();
    const std::vector<detail::cd> points{{2, 0}, {-2, 0}, {1.2, 0.5}};
    bool ok = true;
    std::ostringstream os;
    const Params<hp_real> php{hp_real(p.q), hp_real(p.a), hp_real(p.b), hp_real(p.lambda)};
    const auto ctrl = SeriesControl::for_precision<hp_real>();
    for (const auto& x : points) {
      const auto X = stieltjes_transform(x, p);
      const auto P = run_monic(p, x, 300, Seed::P);
      const auto Ps = run_monic(p, x, 300, Seed::Pstar);
      const double err_double = std::abs(Ps[300] / P[300] - X);

      const hp_complex xh(hp_real(x.real()), hp_real(x.imag()));
      const auto Xh = stieltjes_transform(xh, php, ctrl);
      const auto Ph = run_monic(php, xh, 300, Seed::P);
      const auto Psh = run_monic(php, xh, 300, Seed::Pstar);
      std::vector<hp_real> errs;
      for (std::size_t k : {50u, 100u, 200u, 300u}) errs.push_back(magnitude(Psh[k] / Ph[k] - Xh));
      bool decreasing = true;
      for (std::size_t i = 1; i < errs.size(); ++i) decreasing = decreasing && errs[i] < errs[i - 1];
      ok = ok && err_double < 1e-9 && errs.back() < hp_real(1e-9) && decreasing;
      os << "x=" << x.real() << (x.imag() != 0 ? "+" + detail::fmt(x.imag()) + "i" : "") << ": err300 "
         << detail::fmt(err_double) << ", errs(50..300) " << errs.front().str(3, std::ios::scientific) << " > ... > "
         << errs.back().str(3, std::ios::scientific) << (decreasing ? "" : " NOT DECREASING") << "; ";
    }
    out = os.str();
    out.resize(out.size() - 2);
    return ok;
  });
}

/// Orthogonality of P_0..P_5 against the absolutely continuous density. The
/// Gram assertions apply only when the density carries the full unit mass;
/// otherwise the deficit points at an unresolved discrete part.
inline CheckResult check_orthogonality() {
  return detail::timed(6, "Orthogonality Gram matrix", 0, [](std::string& out) {
    const auto p = reference_params();
    const auto gram = gram_matrix(5, p, 512);
    const double deficit = 1 - gram[0][0];
    if (std::abs(deficit) >= 1e-6) {
      out = "discrete mass suspected: deficit = " + detail::fmt(deficit) + "; Gram assertions skipped";
      return true;
    }
    double off = 0, diag = 0;
    for (long n = 0; n <= 5; ++n)
      for (long m = 0; m <= 5; ++m) {
        const double g = gram[static_cast<std::size_t>(n)][static_cast<std::size_t>(m)];
        if (n == m)
          diag = std::max(diag, std::abs(g - norm_squared(n, p)));
        else
          off = std::max(off, std::abs(g));
      }
    out = "G00 = 1 " + std::string(deficit >= 0 ? "- " : "+ ") + detail::fmt(std::abs(deficit)) +
          "; max off-diagonal " + detail::fmt(off) + ", max diagonal error " + detail::fmt(diag) + " (tol 1e-6)";
    return off < 1e-6 && diag < 1e-6;
  });
}

// ---------------------------------------------------------------------------
// moments
// ---------------------------------------------------------------------------

inline CheckResult check_moments() {
  return detail::timed(7, "Moment solutions of the recurrence", 0, [](std::string& out) {
    const auto p = reference_params();
    const double x = 0.3;
    const MonicFamily<double> fam(p);
    std::vector<detail::cd> closed, integral;
    for (long k = 0; k <= 16; ++k) {
      closed.push_back(moment_pk_closed(k, detail::cd(x), p));
      integral.push_back(moment_pk_integral(k, x, p));
    }
    double residual = 0, cross = 0;
    for (long k = 1; k <= 15; ++k) {
      const auto i = static_cast<std::size_t>(k);
      residual = std::max(residual, std::abs(x * closed[i] - closed[i + 1] - fam.alpha(k) * closed[i] -
                                             fam.beta(k) * closed[i - 1]));
    }
    for (std::size_t k = 0; k <= 15; ++k) cross = std::max(cross, std::abs(closed[k] - integral[k]));

    // b = -lambda: the moment solution has the initial values of P_k.
    const Params<double> ps{0.4, 0.6, -0.25, 0.25};
    double special = 0;
    const double xs = 0.3;
    const auto P = run_monic(ps, xs, 10, Seed::P);
    const auto p0 = moment_pk_closed(0, detail::cd(xs), ps);
    for (long k = 0; k <= 10; ++k)
      special = std::max(special, std::abs(moment_pk_closed(k, detail::cd(xs), ps) / p0 -
                                           P[static_cast<std::size_t>(k)]));
    out = "recurrence residual " + detail::fmt(residual) + ", integral vs 2phi1 " + detail::fmt(cross) +
          ", b=-lambda vs P_k " + detail::fmt(special) + " (tol 1e-10)";
    return residual < 1e-10 && cross < 1e-10 && special < 1e-10;
  });
}

// ---------------------------------------------------------------------------
// asymptotics
// ---------------------------------------------------------------------------

/// Darboux residual decreases from k = 25 to k = 100 (measured in 440-digit
/// arithmetic), and the b = 0 asymptotic ratios are close to 1 at n = 100.
inline CheckResult check_asymptotics() {
  return detail::timed(8, "Darboux asymptotics and b = 0 ratios", 0, [](std::string& out) {
    const auto p = reference_params();
    const Params<hp_real> php{hp_real(p.q), hp_real(p.a), hp_real(p.b), hp_real(p.lambda)};
    const auto ctrl = SeriesControl::for_precision<hp_real>();
    bool darboux_ok = true;
    hp_real worst_ratio = 0;
    for (int i = 0; i < 9; ++i) {
      const hp_real x = hp_real(-0.8 + 0.2 * i);
      const hp_real e25 = abs(darboux_residual(25, x, php, ctrl));
      const hp_real e100 = abs(darboux_residual(100, x, php, ctrl));
      darboux_ok = darboux_ok && e100 < e25;
      worst_ratio = std::max(worst_ratio, hp_real(e100 / e25));
    }
    const Params<double> pb{0.4, 0.3, 0.0, -0.5};
    const auto seq = run_jfraction(B0Family<double>{pb}, 3.0, 100);
    const double rq = seq.D[100] / asymptotic_Q(100, 3.0, pb);
    const double rqs = seq.N[100] / asymptotic_Qstar(100, 3.0, pb);
    const bool ratio_ok = std::abs(rq - 1) < 1e-6 && std::abs(rqs - 1) < 1e-6;
    out = "max |e100|/|e25| over 9 points " + worst_ratio.str(3, std::ios::scientific) + "; Q ratio - 1 = " +
          detail::fmt(rq - 1) + ", Q* ratio - 1 = " + detail::fmt(rqs - 1) + " (tol 1e-6)";
    return darboux_ok && ratio_ok;
  });
}

// ---------------------------------------------------------------------------
// qseries
// ---------------------------------------------------------------------------

/// Pochhammer splitting, q-Pascal, theta quasiperiodicity and q-integration
/// by parts over random draws.
inline CheckResult check_qseries_kernel() {
  return detail::timed(10, "q-series kernel identities", 0, [](std::string& out) {
    detail::Draws draws(0x5eed0010);
    double split = 0, pascal = 0, quasi = 0, parts = 0;
    for (int draw = 0; draw < 100; ++draw) {
      const double q = draws.signed_base(0.05, 0.9);
      const detail::cd a(draws.uniform(-2, 2), draws.uniform(-2, 2));
      const long m = draws.integer(0, 20), n = draws.integer(0, 20);
      const auto lhs = qpochhammer(a, q, m + n);
      const auto rhs = qpochhammer(a, q, m) * qpochhammer(detail::cd(a * ipow(q, m)), q, n);
      split = std::max(split, std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs)));

      const long nn = draws.integer(2, 20), k = draws.integer(1, nn - 1);
      const double whole = qbinomial(nn, k, q);
      const double parts_sum = qbinomial(nn - 1, k - 1, q) + ipow(q, k) * qbinomial(nn - 1, k, q);
      pascal = std::max(pascal, std::abs(whole - parts_sum) / std::max(1.0, std::abs(whole)));

      const detail::cd z = std::polar(draws.uniform(0.2, 2.0), draws.uniform(0.3, 2.8));
      const auto ratio = theta(z, q) / theta(detail::cd(z * q), q);
      quasi = std::max(quasi, std::abs(ratio + z) / std::abs(z));

      // int_a^b f(t) g(qt) d_q t = (1/q) int_a^b g(t) f(t/q) d_q t + (1-q)/q (a g(a) f(a/q) - b g(b) f(b/q))
      std::vector<double> fc(static_cast<std::size_t>(draws.integer(0, 5)) + 1),
          gc(static_cast<std::size_t>(draws.integer(0, 5)) + 1);
      for (auto& c : fc) c = draws.uniform(-1, 1);
      for (auto& c : gc) c = draws.uniform(-1, 1);
      auto poly = [](const std::vector<double>& c, const detail::cd& t) {
        detail::cd v(0);
        for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * t + *it;
        return v;
      };
      const double qp = draws.uniform(0.3, 0.9);
      const detail::cd lo(draws.uniform(-1, 1)), hi(draws.uniform(-1, 1));
      auto f = [&](const detail::cd& t) { return poly(fc, t); };
      auto g = [&](const detail::cd& t) { return poly(gc, t); };
      const auto left = qintegral<detail::cd>({[&](const detail::cd& t) { return f(t) * g(qp * t); }, lo, hi}, qp);
      const auto right_int =
          qintegral<detail::cd>({[&](const detail::cd& t) { return g(t) * f(t / qp); }, lo, hi}, qp) / qp;
      const auto boundary = (1 - qp) / qp * (lo * g(lo) * f(lo / qp) - hi * g(hi) * f(hi / qp));
      const double scale = std::max({1.0, std::abs(left), std::abs(right_int), std::abs(boundary)});
      parts = std::max(parts, std::abs(left - right_int - boundary) / scale);
    }
    out = "splitting " + detail::fmt(split) + ", Pascal " + detail::fmt(pascal) + ", theta " + detail::fmt(quasi) +
          ", by-parts " + detail::fmt(parts) + " (tol 1e-12)";
    return split < 1e-12 && pascal < 1e-12 && quasi < 1e-12 && parts < 1e-12;
  });
}

// ---------------------------------------------------------------------------
// Suites
// ---------------------------------------------------------------------------

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"qseries", "convergents", "measure", "moments", "asymptotics", "all"};
  return names;
}

/// Runs a named suite ("all" runs every check in id order). Throws
/// domain_error on an unknown name.
inline std::vector<CheckResult> run_suite(std::string_view suite) {
  using Check = CheckResult (*)();
  struct Entry {
    std::string_view suite;
    Check check;
  };
  static const Entry table[] = {
      {"convergents", check_entry16},        {"convergents", check_hirschhorn},
      {"convergents", check_entry15_a0},     {"measure", check_density_agreement},
      {"measure", check_markov_limit},       {"measure", check_orthogonality},
      {"moments", check_moments},            {"asymptotics", check_asymptotics},
      {"convergents", check_limit_identity}, {"qseries", check_qseries_kernel},
  };
  if (std::find(suite_names().begin(), suite_names().end(), suite) == suite_names().end())
    throw domain_error("verify: unknown suite '" + std::string(suite) + "'");
  std::vector<CheckResult> results;
  for (const auto& e : table)
    if (suite == "all" || e.suite == suite) results.push_back(e.check());
  return results;
}

inline bool all_passed(const std::vector<CheckResult>& results) {
  return std::all_of(results.begin(), results.end(), [](const CheckResult& r) { return r.pass; });
}

}  // namespace qcf::verify
