#include "qes/cli/commands.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "qes/magyari.hpp"
#include "qes/verify.hpp"
#include "qes/zeroorder.hpp"

namespace qes::cli {

namespace {

constexpr int kMaxTableN = 12;

int require_N(const RunConfig& c) {
  if (!c.N) throw UsageError("--N is required for '" + c.command + "'");
  if (*c.N < 0) throw UsageError("--N must be non-negative");
  return *c.N;
}

int branch_or_default(const RunConfig& c, int N) {
  const int n = c.n.value_or(N / 2);
  if (n < 0 || n > N / 2) throw UsageError("--n must lie in 0..floor(N/2)");
  return n;
}

Rational rational_flag(const std::optional<std::string>& text, const char* name) {
  if (!text) throw UsageError(std::string("--") + name + " is required");
  try {
    return parse_rational(*text);
  } catch (const Error&) {
    throw UsageError(std::string("--") + name + " is not a number: '" + *text + "'");
  }
}

bool physical_mode(const RunConfig& c) { return c.A || c.B || c.C || c.G; }
bool formal_mode(const RunConfig& c) { return c.lambda || c.b || c.g; }

json real_json(const RealValue& v, int digits) {
  json j = {{"value", format_real(v.value(), digits)}};
  j["exact"] = v.is_exact() ? to_json(*v.exact()) : json(nullptr);
  return j;
}

json real_json(const Real& v, int digits) { return format_real(v, digits); }

std::string pad(const std::string& s, int width) {
  std::ostringstream os;
  os << std::setw(width) << s;
  return os.str();
}

std::string int_str(const Rational& q) { return to_string(q); }

// --- Table 1 -------------------------------------------------------------

struct Table1Entry {
  Integer p;
  Integer q_abs;
  bool paired;
};

std::vector<Table1Entry> table1_entries(const std::vector<RootPair>& roots) {
  std::vector<Table1Entry> entries;
  for (const auto& r : roots) {
    if (r.s.q() < 0) continue;  // merged into the +q entry
    const bool paired = r.s.q() != 0;
    entries.push_back({r.s.p(), r.s.q(), paired});
  }
  std::sort(entries.begin(), entries.end(), [](const Table1Entry& a, const Table1Entry& b) {
    if (a.p != b.p) return a.p > b.p;
    return a.q_abs < b.q_abs;
  });
  return entries;
}

std::string table1_text(int N, const std::vector<RootPair>& roots) {
  const auto entries = table1_entries(roots);
  std::ostringstream os;
  os << "N = " << N << "  (" << roots.size() << " roots)\n";
  os << pad("2 Re s", 14);
  for (const auto& e : entries) os << pad(to_string(e.p), 5);
  os << "\n" << pad("2 Im s/sqrt3", 14);
  for (const auto& e : entries) os << pad((e.paired ? "+-" : "") + to_string(e.q_abs), 5);
  os << "\n";
  return os.str();
}

json roots_json(const RootEnumeration& e, int N) {
  json j = {{"N", N}, {"count", e.roots.size()}, {"numeric_roots", e.numeric_roots}};
  j["roots"] = json::array();
  for (const auto& r : e.roots) j["roots"].push_back(to_json(r));
  return j;
}

// --- Table 2 -------------------------------------------------------------

std::string vector_cells(const Vector<Rational>& v, int width) {
  std::string out;
  for (const auto& x : v) out += pad(int_str(x), width);
  return out;
}

}  // namespace

Output cmd_roots(const RunConfig& config) {
  const int N = require_N(config);
  EnumerateOptions options;
  options.seed = config.seed;
  const RootEnumeration e = enumerate_roots_checked(N, options);
  Output out;
  out.document = roots_json(e, N);
  out.table = table1_text(N, e.roots);
  std::ostringstream csv;
  csv << "N,s_p,s_q,t_p,t_q,real,branch\n";
  for (const auto& r : e.roots) {
    csv << N << "," << r.s.p() << "," << r.s.q() << "," << r.t.p() << "," << r.t.q() << ","
        << (r.is_real() ? 1 : 0) << "," << (r.branch ? std::to_string(*r.branch) : "") << "\n";
  }
  out.csv = csv.str();
  return out;
}

Output cmd_coeffs(const RunConfig& config) {
  const int N = require_N(config);
  std::vector<int> branches;
  if (config.n) {
    branches.push_back(branch_or_default(config, N));
  } else {
    for (int n = 0; n <= N / 2; ++n) branches.push_back(n);
  }
  Output out;
  out.document = {{"N", N}, {"branches", json::array()}};
  std::ostringstream table, csv;
  table << pad("N", 3) << pad("s0", 5) << "   u_0 .. u_N\n";
  csv << "N,n,s0";
  for (int k = 0; k <= N; ++k) csv << ",u" << k;
  csv << "\n";
  for (int n : branches) {
    const CoefficientVector cv = zero_coefficients(real_root(N, n));
    const UniPoly closed = closed_form_wavefunction(N, n);
    const Rational s0 = cv.root.s.real_part();
    out.document["branches"].push_back({{"n", n},
                                        {"s0", to_json(s0)},
                                        {"u", to_json(cv.entries)},
                                        {"closed_form", closed.str()},
                                        {"node_multiplicity", closed.multiplicity(1)}});
    table << pad(std::to_string(N), 3) << pad(int_str(s0), 5) << "  " << vector_cells(cv.entries, 6) << "\n";
    csv << N << "," << n << "," << int_str(s0);
    for (const auto& x : cv.entries) csv << "," << int_str(x);
    csv << "\n";
  }
  out.table = table.str();
  out.csv = csv.str();
  return out;
}

Output cmd_pascal(const RunConfig& config) {
  const int K = config.K.value_or(6);
  if (K < 0) throw UsageError("--K must be non-negative");
  const auto rows = pascal_ground(K);
  Output out;
  out.document = {{"K", K}, {"rows", json::array()}};
  std::ostringstream table, csv;
  csv << "K,k,value\n";
  const int width = std::max<int>(4, static_cast<int>(to_string(rows.back()[static_cast<std::size_t>(K)]).size()) + 2);
  for (int k = 0; k <= K; ++k) {
    const auto& row = rows[static_cast<std::size_t>(k)];
    json jr = json::array();
    table << pad(std::to_string(k), 3) << " |" << std::string(static_cast<std::size_t>((K - k) * width), ' ');
    for (std::size_t i = 0; i < row.size(); ++i) {
      jr.push_back(to_string(row[i]));
      table << pad(to_string(row[i]), width);
      csv << k << "," << i << "," << row[i] << "\n";
    }
    table << "\n";
    out.document["rows"].push_back(jr);
  }
  out.table = table.str();
  out.csv = csv.str();
  return out;
}

Output cmd_leftvecs(const RunConfig& config) {
  const int N = require_N(config);
  Output out;
  out.document = {{"N", N}, {"branches", json::array()}};
  std::ostringstream table;
  for (int n = 0; n <= N / 2; ++n) {
    const RootPair root = real_root(N, n);
    const CoefficientVector u0 = zero_coefficients(root);
    const LeftNullPair pair = left_null_pair(root, u0);
    const CompactLeftPair compact = compact_left_pair(root);
    json j = to_json(pair);
    j["n"] = n;
    j["s"] = to_json(root.s.real_part());
    j["sigma"] = to_json(compact.sigma);
    j["theta"] = to_json(compact.theta);
    j["compact_dependent"] = compact.dependent;
    out.document["branches"].push_back(j);
    const std::string s = int_str(root.s.real_part());
    table << pad(std::to_string(N), 3) << pad(s, 4) << "  v+ " << vector_cells(pair.v_plus, 4) << "   sigma "
          << vector_cells(compact.sigma, 4) << "   <v|Ju> " << int_str(pair.c_plus) << "\n";
    table << pad("", 7) << "  v- " << vector_cells(pair.v_minus, 4) << "   theta " << vector_cells(compact.theta, 4)
          << "   <v|Ju> " << int_str(pair.c_minus) << "\n";
  }
  out.table = table.str();
  return out;
}

Output cmd_series(const RunConfig& config) {
  const int N = require_N(config);
  const int n = branch_or_default(config, N);
  if (config.order < 0) throw UsageError("--order must be non-negative");
  const PerturbationSeries series = run_series(N, n, config.order, config.gauge);
  Output out;
  out.document = to_json(series);
  std::ostringstream table;
  table << "N = " << N << ", n = " << n << ", gauge = " << gauge_name(config.gauge) << "\n";
  for (int k = 0; k <= series.K_max; ++k) {
    const auto uk = static_cast<std::size_t>(k);
    table << "k = " << k << "\n  s: " << series.s_corr[uk].str() << "\n  t: " << series.t_corr[uk].str() << "\n";
    for (int i = 0; i <= N; ++i) table << "  u" << i << ": " << series.u_corr[uk](i).str() << "\n";
  }
  if (formal_mode(config)) {
    const Rational lambda = rational_flag(config.lambda, "lambda");
    const Rational b = rational_flag(config.b, "b"), g = rational_flag(config.g, "g");
    const auto v = evaluate_series<Rational>(series, lambda, b, g);
    out.document["lambda"] = to_json(lambda);
    out.document["b"] = to_json(b);
    out.document["g"] = to_json(g);
    out.document["evaluated"] = {{"s", to_json(v.s)}, {"t", to_json(v.t)}, {"u", to_json(v.u)}};
    table << "at lambda = " << to_string(lambda) << ", b = " << to_string(b) << ", g = " << to_string(g)
          << ":\n  s = " << format_real(convert<Real>(v.s), config.precision)
          << "\n  t = " << format_real(convert<Real>(v.t), config.precision) << "\n";
  }
  out.table = table.str();
  return out;
}

Output cmd_spectrum(const RunConfig& config) {
  const int N = require_N(config);
  const int n = branch_or_default(config, N);
  const int digits = config.precision;
  if (physical_mode(config) == formal_mode(config)) {
    throw UsageError("give either --A --B --C --G (physical) or --lambda --b --g (formal)");
  }
  AnsatzParams ansatz;
  json inputs;
  if (physical_mode(config)) {
    PhysicalParams p;
    p.A = RealValue(rational_flag(config.A, "A"));
    p.B = RealValue(rational_flag(config.B, "B"));
    p.C = RealValue(rational_flag(config.C, "C"));
    p.G = RealValue(rational_flag(config.G, "G"));
    p.ell = config.ell;
    ansatz = derive_ansatz(p, N);
    inputs = {{"mode", "physical"}, {"A", *config.A}, {"B", *config.B}, {"C", *config.C}, {"G", *config.G}};
  } else {
    const Rational lambda = rational_flag(config.lambda, "lambda");
    ansatz = ansatz_from_formal(lambda, rational_flag(config.b, "b"), rational_flag(config.g, "g"), N, config.ell);
    inputs = {{"mode", "formal"}, {"lambda", *config.lambda}, {"b", *config.b}, {"g", *config.g}};
  }
  inputs["ell"] = config.ell;
  inputs["N"] = N;
  inputs["n"] = n;
  inputs["order"] = config.order;

  const PerturbationSeries series = run_series(N, n, config.order, config.gauge);

  // Series values, exact whenever λ, b and g are.
  RealValue s, t;
  Vector<Real> u(N + 1);
  json u_json;
  if (ansatz.lambda.is_exact() && ansatz.b.is_exact() && ansatz.g.is_exact()) {
    const auto v = evaluate_series<Rational>(series, *ansatz.lambda.exact(), *ansatz.b.exact(), *ansatz.g.exact());
    s = RealValue(v.s);
    t = RealValue(v.t);
    for (int i = 0; i <= N; ++i) u(i) = convert<Real>(v.u(i));
    u_json = to_json(v.u);
  } else {
    const auto v = evaluate_series<Real>(series, ansatz.lambda.value(), ansatz.b.value(), ansatz.g.value());
    s = RealValue::inexact(v.s);
    t = RealValue::inexact(v.t);
    u = v.u;
    u_json = json::array();
    for (const auto& x : u) u_json.push_back(format_real(x, digits));
  }
  const PhysicalSpectrum phys = backout_physical(s, t, ansatz);
  const RealValue D = ansatz.D(N);
  const auto grid = log_grid(Real("0.01"), Real(10), 50);
  const OdeResidual series_ode = ode_residual(u, ansatz, phys.E.value(), phys.F.value(), N, grid);

  json oracle;
  try {
    const auto sol = newton_full<Real>(N, ansatz.lambda.value(), ansatz.b.value(), ansatz.g.value(), s.value(),
                                       t.value(), u);
    const PhysicalSpectrum nphys =
        backout_physical(RealValue::inexact(sol.s), RealValue::inexact(sol.t), ansatz);
    const OdeResidual newton_ode = ode_residual(sol.u, ansatz, nphys.E.value(), nphys.F.value(), N, grid);
    oracle = {{"converged", sol.converged},
              {"iterations", sol.iterations},
              {"residual", real_json(sol.residual_norm, 6)},
              {"s", real_json(sol.s, digits)},
              {"t", real_json(sol.t, digits)},
              {"E", real_json(nphys.E.value(), digits)},
              {"F", real_json(nphys.F.value(), digits)},
              {"delta_s", real_json(Real(abs(sol.s - s.value())), 6)},
              {"delta_t", real_json(Real(abs(sol.t - t.value())), 6)},
              {"delta_E", real_json(Real(abs(nphys.E.value() - phys.E.value())), 6)},
              {"delta_F", real_json(Real(abs(nphys.F.value() - phys.F.value())), 6)},
              {"ode_residual", real_json(newton_ode.relative, 6)},
              {"ode_residual_normalized", real_json(newton_ode.normalized, 6)}};
  } catch (const SingularJacobianError& e) {
    oracle = {{"converged", false}, {"error", e.what()}};
  }

  Output out;
  out.document = {{"inputs", inputs},
                  {"ansatz",
                   {{"alpha", real_json(ansatz.alpha, digits)},
                    {"beta", real_json(ansatz.beta, digits)},
                    {"gamma", real_json(ansatz.gamma, digits)},
                    {"l", real_json(ansatz.l_eff, digits)},
                    {"Omega", real_json(ansatz.Omega, digits)},
                    {"mu", real_json(ansatz.mu, digits)},
                    {"tau", real_json(ansatz.tau, digits)},
                    {"lambda", real_json(ansatz.lambda, digits)},
                    {"b", real_json(ansatz.b, digits)},
                    {"g", real_json(ansatz.g, digits)}}},
                  {"branch", {{"N", N}, {"n", n}, {"s0", to_json(series.root.s.real_part())},
                              {"t0", to_json(series.root.t.real_part())}}},
                  {"series", to_json(series)},
                  {"s", real_json(s, digits)},
                  {"t", real_json(t, digits)},
                  {"u", u_json},
                  {"E", real_json(phys.E, digits)},
                  {"F", real_json(phys.F, digits)},
                  {"D", real_json(D, digits)},
                  {"ode_residual", real_json(series_ode.relative, 6)},
                  {"ode_residual_normalized", real_json(series_ode.normalized, 6)},
                  {"oracle", oracle}};

  std::ostringstream table;
  auto line = [&](const std::string& name, const RealValue& v) {
    table << pad(name, 8) << " = " << format_real(v.value(), digits);
    if (v.is_exact()) table << "   (exact " << to_string(*v.exact()) << ")";
    table << "\n";
  };
  table << "branch N = " << N << ", n = " << n << ", s0 = t0 = " << N - 3 * n << ", order " << config.order << "\n";
  line("lambda", ansatz.lambda);
  line("b", ansatz.b);
  line("g", ansatz.g);
  line("s", s);
  line("t", t);
  line("E", phys.E);
  line("F", phys.F);
  line("D", D);
  table << pad("ODE res", 8) << " = " << format_real(series_ode.relative, 6) << "\n";
  out.table = table.str();
  return out;
}

Output cmd_verify(const RunConfig& config) {
  const int N = require_N(config);
  const int n = branch_or_default(config, N);
  const int K = config.order > 0 ? config.order : 3;
  const Rational b = config.b ? rational_flag(config.b, "b") : Rational(1);
  const Rational g = config.g ? rational_flag(config.g, "g") : Rational(1, 2);

  Output out;
  json checks = json::array();
  auto check = [&](const std::string& name, bool pass, json detail = nullptr) {
    checks.push_back({{"check", name}, {"pass", pass}, {"detail", detail}});
    out.ok = out.ok && pass;
  };

  const PerturbationSeries down = run_series(N, n, K, Gauge::first_component_zero);
  const PerturbationSeries up = run_series(N, n, K, Gauge::last_component_zero);
  check("order residuals vanish (both gauges)", true);
  check("gauges agree on s, t and differ by a scalar series in u", !gauge_factor(down, up).empty());
  const Integer factorial = [&] {
    Integer f = 1;
    for (int i = 2; i <= N; ++i) f *= i;
    return f;
  }();
  const Rational det_down = determinant<Rational>(r_star(down.root, Gauge::first_component_zero));
  const Rational det_up = determinant<Rational>(r_star(down.root, Gauge::last_component_zero));
  check("det R* = N!", det_down == Rational(factorial) && det_up == Rational(factorial),
        {{"down", to_json(det_down)}, {"up", to_json(det_up)}});
  bool degree_ok = true;
  for (int k = 0; k <= K; ++k) {
    degree_ok = degree_ok && down.s_corr[static_cast<std::size_t>(k)].total_degree() <= k &&
                down.t_corr[static_cast<std::size_t>(k)].total_degree() <= k;
  }
  check("deg s_k, t_k <= k", degree_ok);
  if (N == 1) {
    const CubicSeries cubic = cubic_oracle_n1(K);
    check("series equals the N=1 cubic expansion", cubic.s == down.s_corr && cubic.t == down.t_corr);
  }

  std::vector<Rational> grid{Rational(1, 100), Rational(1, 1000), Rational(1, 10000)};
  if (config.lambda) grid = {rational_flag(config.lambda, "lambda")};
  json convergence;
  std::ostringstream csv;
  csv << "order,lambda,error\n";
  if (grid.size() >= 2) {
    const ConvergenceReport report = convergence_report(N, n, K, grid, b, g);
    convergence = {{"lambda_grid", report.lambda_grid},
                   {"errors_per_order", report.errors_per_order},
                   {"fitted_slopes", report.fitted_slopes},
                   {"worst_newton_residual", report.worst_newton_residual}};
    bool slopes_ok = true;
    for (int k = 0; k <= K; ++k) {
      const double slope = report.fitted_slopes[static_cast<std::size_t>(k)];
      slopes_ok = slopes_ok && (std::isnan(slope) || slope >= k + 0.5);
      for (std::size_t i = 0; i < grid.size(); ++i) {
        csv << k << "," << report.lambda_grid[i] << "," << report.errors_per_order[static_cast<std::size_t>(k)][i]
            << "\n";
      }
    }
    check("log-log slope of order-K error >= K + 1/2", slopes_ok);
  }

  // ODE residual of the Newton solution at the largest λ.
  const Rational lambda0 = *std::max_element(grid.begin(), grid.end());
  const AnsatzParams ansatz = ansatz_from_formal(lambda0, b, g, N, config.ell);
  const auto seed = evaluate_series<Real>(down, convert<Real>(lambda0), convert<Real>(b), convert<Real>(g));
  const auto sol = newton_full<Real>(N, convert<Real>(lambda0), convert<Real>(b), convert<Real>(g), seed.s, seed.t,
                                     seed.u);
  const PhysicalSpectrum phys = backout_physical(RealValue::inexact(sol.s), RealValue::inexact(sol.t), ansatz);
  const OdeResidual ode =
      ode_residual(sol.u, ansatz, phys.E.value(), phys.F.value(), N, log_grid(Real("0.01"), Real(10), 50));
  check("Newton converged", sol.converged, {{"residual", format_real(sol.residual_norm, 6)}});
  check("ODE residual <= 1e-10", ode.relative <= Real("1e-10") && ode.normalized <= Real("1e-10"),
        {{"relative", format_real(ode.relative, 6)}, {"normalized", format_real(ode.normalized, 6)}});

  out.document = {{"N", N}, {"n", n}, {"order", K}, {"b", to_json(b)}, {"g", to_json(g)},
                  {"checks", checks}, {"convergence", convergence}, {"ok", out.ok}};
  std::ostringstream table;
  for (const auto& c : checks) {
    table << (c["pass"].get<bool>() ? "PASS  " : "FAIL  ") << c["check"].get<std::string>() << "\n";
  }
  if (!convergence.is_null()) {
    table << "slopes:";
    for (double x : convergence["fitted_slopes"]) table << " " << std::setprecision(4) << x;
    table << "\n";
  }
  out.table = table.str();
  out.csv = csv.str();
  return out;
}

Output cmd_tables(const RunConfig& config) {
  if (!config.which || *config.which < 1 || *config.which > 4) throw UsageError("tables: id must be 1, 2, 3 or 4");
  const int which = *config.which;
  Output out;
  std::ostringstream table;
  auto check_range = [](int N) {
    if (N < 0 || N > kMaxTableN) throw UsageError("tables support 0 <= N <= " + std::to_string(kMaxTableN));
  };
  if (which == 1) {
    const int N_max = config.N.value_or(5);
    check_range(N_max);
    out.document = {{"table", 1}, {"blocks", json::array()}};
    for (int N = 1; N <= N_max; ++N) {
      RunConfig c = config;
      c.N = N;
      Output block = cmd_roots(c);
      out.document["blocks"].push_back(block.document);
      table << block.table << "\n";
      out.csv += N == 1 ? block.csv : block.csv.substr(block.csv.find('\n') + 1);
    }
  } else if (which == 2) {
    const int N_max = config.N.value_or(6);
    check_range(N_max);
    out.document = {{"table", 2}, {"blocks", json::array()}};
    table << pad("N", 3) << pad("s0", 5) << "   u_0 .. u_N\n";
    for (int N = 0; N <= N_max; ++N) {
      RunConfig c = config;
      c.N = N;
      c.n.reset();
      Output block = cmd_coeffs(c);
      out.document["blocks"].push_back(block.document);
      table << block.table.substr(block.table.find('\n') + 1);
      out.csv += N == 0 ? block.csv : block.csv.substr(block.csv.find('\n') + 1);
    }
  } else if (which == 3) {
    RunConfig c = config;
    c.K = config.K.value_or(config.N.value_or(6));
    Output block = cmd_pascal(c);
    out.document = {{"table", 3}, {"K", *c.K}, {"rows", block.document["rows"]}};
    table << block.table;
    out.csv = block.csv;
  } else {
    const int N_max = config.N.value_or(4);
    check_range(N_max);
    out.document = {{"table", 4}, {"blocks", json::array()}};
    for (int N = 0; N <= N_max; ++N) {
      RunConfig c = config;
      c.N = N;
      Output block = cmd_leftvecs(c);
      out.document["blocks"].push_back(block.document);
      table << block.table;
    }
    out.csv.clear();
  }
  out.table = table.str();
  return out;
}

Output dispatch(const RunConfig& config) {
  const std::string& c = config.command;
  if (c == "roots") return cmd_roots(config);
  if (c == "coeffs") return cmd_coeffs(config);
  if (c == "pascal") return cmd_pascal(config);
  if (c == "leftvecs") return cmd_leftvecs(config);
  if (c == "series") return cmd_series(config);
  if (c == "spectrum") return cmd_spectrum(config);
  if (c == "verify") return cmd_verify(config);
  if (c == "tables") return cmd_tables(config);
  throw UsageError("unknown command '" + c + "'");
}

std::string render(const Output& output, OutputFormat format) {
  switch (format) {
    case OutputFormat::json: return output.document.dump(2) + "\n";
    case OutputFormat::csv:
      if (output.csv.empty()) throw UsageError("this command has no flat table for CSV output");
      return output.csv;
    case OutputFormat::table: break;
  }
  return output.table;
}

json error_document(const std::string& kind, const std::string& message) {
  return {{"error", {{"kind", kind}, {"message", message}}}};
}

int run(const RunConfig& config, std::ostream& out) {
  std::string text;
  int code = 0;
  try {
    const Output output = dispatch(config);
    text = render(output, config.format);
    code = output.ok ? 0 : 1;
  } catch (const UsageError& e) {
    text = error_document(std::string(e.kind()), e.what()).dump() + "\n";
    code = 2;
  } catch (const Error& e) {
    text = error_document(std::string(e.kind()), e.what()).dump() + "\n";
    code = 1;
  } catch (const std::exception& e) {
    text = error_document("internal", e.what()).dump() + "\n";
    code = 1;
  }
  if (!config.out.empty() && code == 0) {
    std::ofstream file(config.out);
    if (!file) {
      out << error_document("io", "cannot write " + config.out).dump() << "\n";
      return 1;
    }
    file << text;
  } else {
    out << text;
  }
  return code;
}

}  // namespace qes::cli
