// Command-line front end: continued-fraction values, convergent tables,
// density curves, Gram matrices, moment solutions and the verification
// suites.
//
// Exit codes: 0 success, 1 verification failure, 2 usage or domain error.

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qcf/qcf.hpp"
#include "qcf/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;

using cd = std::complex<double>;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Shortest round-trip formatting for doubles.
std::string num(double v) {
  if (std::isnan(v)) return "nan";
  std::ostringstream os;
  os << std::setprecision(std::numeric_limits<double>::max_digits10) << v;
  return os.str();
}

struct ParamOptions {
  double q = 0.4, a = 0.3, b = -0.25, lambda = 0.2;
  std::string file;
  CLI::Option* opt_q = nullptr;
  CLI::Option* opt_a = nullptr;
  CLI::Option* opt_b = nullptr;
  CLI::Option* opt_lambda = nullptr;

  void attach(CLI::App& cmd) {
    opt_q = cmd.add_option("--q", q, "base q, 0 < |q| < 1");
    opt_a = cmd.add_option("--a", a, "parameter a");
    opt_b = cmd.add_option("--b", b, "parameter b");
    opt_lambda = cmd.add_option("--lambda", lambda, "parameter lambda");
    cmd.add_option("--params-file", file, "file of key=value lines (q, a, b, lambda); flags override it");
  }

  /// File values first, explicit flags on top.
  qcf::Params<double> resolve() const {
    qcf::Params<double> p{0.4, 0.3, -0.25, 0.2};
    if (!file.empty()) {
      std::ifstream in(file);
      if (!in) throw UsageError("cannot read params file '" + file + "'");
      std::string line;
      int line_no = 0;
      while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
          throw UsageError(file + ":" + std::to_string(line_no) + ": expected key=value");
        const std::string key = CLI::detail::trim_copy(line.substr(0, eq));
        const std::string value = CLI::detail::trim_copy(line.substr(eq + 1));
        double v = 0;
        try {
          std::size_t used = 0;
          v = std::stod(value, &used);
          if (used != value.size()) throw std::invalid_argument(value);
        } catch (const std::exception&) {
          throw UsageError(file + ":" + std::to_string(line_no) + ": '" + value + "' is not a number");
        }
        if (key == "q")
          p.q = v;
        else if (key == "a")
          p.a = v;
        else if (key == "b")
          p.b = v;
        else if (key == "lambda")
          p.lambda = v;
        else
          throw UsageError(file + ":" + std::to_string(line_no) + ": unknown key '" + key + "'");
      }
    }
    if (opt_q->count()) p.q = q;
    if (opt_a->count()) p.a = a;
    if (opt_b->count()) p.b = b;
    if (opt_lambda->count()) p.lambda = lambda;
    return p;
  }
};

const std::vector<std::string> kFamilies{"hirschhorn", "entry16", "a0", "entry15", "b0"};

// ---------------------------------------------------------------------------
// eval
// ---------------------------------------------------------------------------

struct EvalOptions {
  std::string family = "hirschhorn";
  long depth = 50;
  double x = 1.0;
};

/// Value of the truncated fraction by backward evaluation and by the
/// forward recurrence.
std::pair<double, double> eval_family(const EvalOptions& o, const qcf::Params<double>& p) {
  using namespace qcf;
  if (o.family == "hirschhorn") {
    p.validate();
    return {hirschhorn_fraction(p, o.depth), convergent(HirschhornFamily<double>{p}, 1.0, o.depth + 1) / (1 - p.b)};
  }
  if (o.family == "entry16") {
    detail::require_base_in_unit_disc(p.q, "entry16");
    return {entry16_fraction(p.lambda, p.q, o.depth), convergent(Entry16Family<double>{p.lambda, p.q}, 1.0, o.depth)};
  }
  if (o.family == "a0") {
    const Params<double> pa{p.q, 0.0, p.b, p.lambda};
    pa.validate();
    return {a0_fraction(p.b, p.lambda, p.q, o.depth),
            convergent(HirschhornFamily<double>{pa}, 1.0, o.depth + 1) / (1 - p.b)};
  }
  const Params<double> pb{p.q, p.a, 0.0, p.lambda};
  pb.validate();
  if (o.family == "entry15") {
    if (o.depth < 1) throw domain_error("entry15: depth must be >= 1");
    const auto seq = run_jfraction(B0Family<double>{pb}, 1.0, o.depth + 1);
    const auto i = static_cast<std::size_t>(o.depth + 1);
    if (negligible(seq.N[i], 1)) throw pole_error("entry15: vanishing numerator polynomial", o.depth);
    return {entry15_fraction(p.a, p.lambda, p.q, o.depth), seq.D[i] / seq.N[i]};
  }
  return {b0_fraction(p.a, p.lambda, p.q, o.x, o.depth), convergent(B0Family<double>{pb}, o.x, o.depth + 1)};
}

int cmd_eval(const EvalOptions& o, const qcf::Params<double>& p) {
  if (o.depth < 0) throw UsageError("--depth must be nonnegative");
  const auto [backward, forward] = eval_family(o, p);
  std::cout << "family " << o.family << "\n"
            << "depth " << o.depth << "\n"
            << "backward " << num(backward) << "\n"
            << "convergent " << num(forward) << "\n"
            << "abs_diff " << num(std::abs(backward - forward)) << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// convergents
// ---------------------------------------------------------------------------

int cmd_convergents(const EvalOptions& o, const qcf::Params<double>& p) {
  using namespace qcf;
  if (o.depth < 0) throw UsageError("--n must be nonnegative");
  detail::require_base_in_unit_disc(p.q, "convergents");
  std::cout << "n,N,D,ratio\n";
  for (long n = o.family == "entry15" ? 1 : 0; n <= o.depth; ++n) {
    ConvergentPair<double> pair;
    if (o.family == "entry16")
      pair = entry16(n, p.lambda, p.q);
    else if (o.family == "hirschhorn")
      pair = hirschhorn_closed(n, p);
    else if (o.family == "a0")
      pair = a0_closed(n, p.b, p.lambda, p.q);
    else if (o.family == "entry15")
      pair = entry15(n, p.a, p.lambda, p.q);
    else
      pair = {ram_Qstar(n, o.x, p.a, p.lambda, p.q), ram_Q(n, o.x, p.a, p.lambda, p.q)};
    const double ratio = pair.D == 0 ? std::numeric_limits<double>::quiet_NaN() : pair.N / pair.D;
    std::cout << n << "," << num(pair.N) << "," << num(pair.D) << "," << num(ratio) << "\n";
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// density
// ---------------------------------------------------------------------------

struct DensityOptions {
  std::string method = "both";
  std::string format = "csv";
  int grid = 101;
  double xmin = -0.99, xmax = 0.99;
};

nlohmann::json params_json(const qcf::Params<double>& p) {
  return {{"q", p.q}, {"a", p.a}, {"b", p.b}, {"lambda", p.lambda}};
}

int cmd_density(const DensityOptions& o, const qcf::Params<double>& p) {
  if (o.grid < 1) throw UsageError("--grid must be >= 1");
  if (!(o.xmin > -1 && o.xmax < 1 && o.xmin <= o.xmax)) throw UsageError("need -1 < xmin <= xmax < 1");
  p.validate_monic();
  const bool nevai = o.method != "inversion";
  const bool inversion = o.method != "nevai";
  struct Row {
    double x, nevai, inversion;
  };
  std::vector<Row> rows;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (int i = 0; i < o.grid; ++i) {
    const double x = o.grid == 1 ? 0.5 * (o.xmin + o.xmax) : o.xmin + (o.xmax - o.xmin) * i / (o.grid - 1);
    rows.push_back({x, nevai ? qcf::density_nevai(x, p).density : nan,
                    inversion ? qcf::density_inversion(x, p).density : nan});
  }
  if (o.format == "csv") {
    std::cout << "x,density_nevai,density_inversion,abs_diff\n";
    for (const auto& r : rows) {
      std::cout << num(r.x) << "," << (nevai ? num(r.nevai) : "") << "," << (inversion ? num(r.inversion) : "")
                << "," << (nevai && inversion ? num(std::abs(r.nevai - r.inversion)) : "") << "\n";
    }
    return kExitOk;
  }
  nlohmann::json out;
  out["params"] = params_json(p);
  out["method"] = o.method;
  auto samples = nlohmann::json::array();
  for (const auto& r : rows) samples.push_back({r.x, nevai ? r.nevai : r.inversion});
  out["samples"] = samples;
  if (nevai && inversion) {
    auto inv = nlohmann::json::array();
    double diff = 0;
    for (const auto& r : rows) {
      inv.push_back({r.x, r.inversion});
      diff = std::max(diff, std::abs(r.nevai - r.inversion));
    }
    out["samples_inversion"] = inv;
    out["max_abs_diff"] = diff;
  }
  std::cout << out.dump(2) << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// orthogonality / moments / verify
// ---------------------------------------------------------------------------

int cmd_orthogonality(long nmax, int nodes, const qcf::Params<double>& p) {
  if (nmax < 0) throw UsageError("--nmax must be nonnegative");
  const auto gram = qcf::gram_matrix(nmax, p, nodes);
  std::cout << "n,m,integral,norm_squared\n";
  for (long n = 0; n <= nmax; ++n)
    for (long m = 0; m <= nmax; ++m)
      std::cout << n << "," << m << "," << num(gram[static_cast<std::size_t>(n)][static_cast<std::size_t>(m)]) << ","
                << (n == m ? num(qcf::norm_squared(n, p)) : "0") << "\n";
  const double deficit = 1 - gram[0][0];
  if (std::abs(deficit) >= 1e-6) std::cerr << "discrete mass suspected: deficit = " << num(deficit) << "\n";
  return kExitOk;
}

int cmd_moments(long kmax, double x, const qcf::Params<double>& p) {
  if (kmax < 0) throw UsageError("--kmax must be nonnegative");
  std::cout << "k,integral_re,integral_im,closed_re,closed_im,abs_diff\n";
  for (long k = 0; k <= kmax; ++k) {
    const cd integral = qcf::moment_pk_integral(k, x, p);
    const cd closed = qcf::moment_pk_closed(k, cd(x), p);
    std::cout << k << "," << num(integral.real()) << "," << num(integral.imag()) << "," << num(closed.real()) << ","
              << num(closed.imag()) << "," << num(std::abs(integral - closed)) << "\n";
  }
  return kExitOk;
}

int cmd_verify(const std::string& suite) {
  const auto results = qcf::verify::run_suite(suite);
  for (const auto& r : results) {
    std::cout << (r.pass ? "PASS" : "FAIL") << " [" << r.id << "] " << r.name << ": " << r.detail << " ("
              << std::fixed << std::setprecision(2) << r.seconds << " s)" << std::defaultfloat << "\n";
  }
  const bool ok = qcf::verify::all_passed(results);
  std::cout << (ok ? "all checks passed" : "verification FAILED") << "\n";
  return ok ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"q-series continued fractions and orthogonal polynomials"};
  app.require_subcommand(1);

  ParamOptions eval_params, conv_params, dens_params, orth_params, mom_params;
  EvalOptions eval_opts, conv_opts;
  conv_opts.depth = 10;
  DensityOptions dens_opts;
  long nmax = 5, kmax = 10;
  int nodes = 512;
  double moment_x = 0.3;
  std::string suite = "all";

  auto* eval = app.add_subcommand("eval", "value of a truncated continued fraction");
  eval_params.attach(*eval);
  eval->add_option("--family", eval_opts.family, "fraction family")->check(CLI::IsMember(kFamilies));
  eval->add_option("--depth", eval_opts.depth, "truncation depth (last partial numerator index)");
  eval->add_option("--x", eval_opts.x, "evaluation point (b0 family)");

  auto* conv = app.add_subcommand("convergents", "table of closed-form numerators and denominators");
  conv_params.attach(*conv);
  conv->add_option("--family", conv_opts.family, "fraction family")->check(CLI::IsMember(kFamilies));
  conv->add_option("--n", conv_opts.depth, "largest index");
  conv->add_option("--x", conv_opts.x, "evaluation point (b0 family)");

  auto* dens = app.add_subcommand("density", "orthogonality density on a grid in (-1, 1)");
  dens_params.attach(*dens);
  dens->add_option("--method", dens_opts.method, "density formula")
      ->check(CLI::IsMember({"nevai", "inversion", "both"}));
  dens->add_option("--grid", dens_opts.grid, "number of grid points");
  dens->add_option("--xmin", dens_opts.xmin, "first grid point");
  dens->add_option("--xmax", dens_opts.xmax, "last grid point");
  dens->add_option("--format", dens_opts.format, "output format")->check(CLI::IsMember({"csv", "json"}));

  auto* orth = app.add_subcommand("orthogonality", "Gram matrix of P_0..P_nmax against the density");
  orth_params.attach(*orth);
  orth->add_option("--nmax", nmax, "largest degree");
  orth->add_option("--nodes", nodes, "quadrature nodes (multiple of 16, >= 64)");

  auto* mom = app.add_subcommand("moments", "moment solutions p_k(x), q-integral and 2phi1 forms");
  mom_params.attach(*mom);
  mom->add_option("--kmax", kmax, "largest k");
  mom->add_option("--x", moment_x, "point in (-1, 1)");

  auto* ver = app.add_subcommand("verify", "run verification suites");
  ver->add_option("--suite", suite, "suite name")->check(CLI::IsMember(qcf::verify::suite_names()));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << app.help();
    return kExitUsage;
  }

  try {
    if (*eval) return cmd_eval(eval_opts, eval_params.resolve());
    if (*conv) return cmd_convergents(conv_opts, conv_params.resolve());
    if (*dens) return cmd_density(dens_opts, dens_params.resolve());
    if (*orth) return cmd_orthogonality(nmax, nodes, orth_params.resolve());
    if (*mom) return cmd_moments(kmax, moment_x, mom_params.resolve());
    if (*ver) return cmd_verify(suite);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  } catch (const qcf::error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
