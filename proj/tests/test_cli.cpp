#include <set>
#include <sstream>

#include "doctest.h"
#include "oracles.hpp"
#include "qes/cli/commands.hpp"
#include "qes/verify.hpp"

using namespace qes;
using namespace qes::cli;

namespace {

RunConfig config_for(const std::string& command) {
  RunConfig c;
  c.command = command;
  return c;
}

Rational rat(const json& j) { return rational_from_json(j); }

}  // namespace

TEST_CASE("JSON encodings round-trip") {
  oracle::Gen gen(4);
  for (int i = 0; i < 50; ++i) {
    const Rational q = gen.rational(1000000, 999);
    CHECK(rational_from_json(json::parse(to_json(q).dump())) == q);
    const BivariatePoly p = gen.bipoly();
    CHECK(bipoly_from_json(json::parse(to_json(p).dump())) == p);
  }
  const HalfEisenstein z(Integer(-3), Integer(5));
  CHECK(half_eisenstein_from_json(to_json(z)) == z);
  CHECK(to_json(Rational(-3, 4)) == json{{"num", "-3"}, {"den", "4"}});
}

TEST_CASE("series documents round-trip") {
  for (Gauge gauge : {Gauge::first_component_zero, Gauge::last_component_zero}) {
    const PerturbationSeries s = run_series(4, 1, 3, gauge);
    const json doc = to_json(s);
    for (const char* key : {"s0", "t0", "s_corr", "t_corr", "u_corr"}) CHECK(doc.contains(key));
    const PerturbationSeries back = series_from_json(json::parse(doc.dump()));
    CHECK(back.s_corr == s.s_corr);
    CHECK(back.t_corr == s.t_corr);
    CHECK(back.u_corr == s.u_corr);
    CHECK(back.gauge == s.gauge);
    CHECK(to_json(back) == doc);
  }
}

TEST_CASE("every command emits a document that survives parse(dump())") {
  std::vector<RunConfig> configs;
  for (const char* cmd : {"roots", "coeffs", "leftvecs", "series"}) {
    RunConfig c = config_for(cmd);
    c.N = 3;
    c.order = 2;
    configs.push_back(c);
  }
  RunConfig p = config_for("pascal");
  p.K = 3;
  configs.push_back(p);
  RunConfig sp = config_for("spectrum");
  sp.N = 2;
  sp.lambda = "1/50";
  sp.b = "1";
  sp.g = "-1/2";
  sp.order = 2;
  configs.push_back(sp);
  for (int which = 1; which <= 4; ++which) {
    RunConfig t = config_for("tables");
    t.which = which;
    t.N = 3;
    configs.push_back(t);
  }
  for (const auto& c : configs) {
    const Output out = dispatch(c);
    CHECK(json::parse(out.document.dump()) == out.document);
    CHECK_FALSE(out.table.empty());
  }
}

TEST_CASE("table 3 and table 1 contents") {
  RunConfig c = config_for("tables");
  c.which = 3;
  c.K = 6;
  const Output t3 = dispatch(c);
  const auto row6 = t3.document["rows"][6];
  CHECK(row6.size() == 13);
  CHECK(row6[6] == "141");
  CHECK(row6[7] == "126");
  CHECK(row6[10] == "21");

  RunConfig r = config_for("tables");
  r.which = 1;
  r.N = 2;
  const Output t1 = dispatch(r);
  const json& block = t1.document["blocks"][1];
  CHECK(block["N"] == 2);
  std::multiset<std::pair<std::string, std::string>> seen;
  for (const auto& root : block["roots"]) seen.emplace(root["s"]["p"].get<std::string>(), root["s"]["q"].get<std::string>());
  CHECK(seen == std::multiset<std::pair<std::string, std::string>>{
                    {"4", "0"}, {"1", "1"}, {"1", "-1"}, {"-2", "0"}, {"-2", "2"}, {"-2", "-2"}});
  CHECK(t1.table.find("+-2") != std::string::npos);

  RunConfig z = config_for("tables");
  z.which = 2;
  z.N = 0;
  const Output t2 = dispatch(z);
  CHECK(t2.document["blocks"].size() == 1);
  CHECK(t2.document["blocks"][0]["branches"][0]["u"].size() == 1);
}

TEST_CASE("text tables are deterministic") {
  RunConfig c = config_for("tables");
  c.which = 4;
  CHECK(dispatch(c).table == dispatch(c).table);
  c.which = 1;
  CHECK(dispatch(c).table == dispatch(c).table);
}

TEST_CASE("strong-core example through the spectrum command") {
  RunConfig c = config_for("spectrum");
  c.N = 4;
  c.n = 2;
  c.A = "1";
  c.B = "0";
  c.C = "1";
  c.G = "4032";
  const Output out = dispatch(c);
  CHECK(rat(out.document["E"]["exact"]) == Rational(-65, 4));
  CHECK(rat(out.document["F"]["exact"]) == 0);
  CHECK(rat(out.document["D"]["exact"]) == -138);
  CHECK(rat(out.document["ansatz"]["Omega"]["exact"]) == 64);
  CHECK(out.document["oracle"]["converged"] == true);
}

TEST_CASE("spectrum at N=0 is exact") {
  RunConfig c = config_for("spectrum");
  c.N = 0;
  c.A = "2";
  c.B = "1";
  c.C = "3";
  c.G = "5";
  const Output out = dispatch(c);
  CHECK(out.document["u"].size() == 1);
  // sqrt(2) makes the couplings inexact; s = t = 0 still comes out as plain zero.
  CHECK(out.document["s"]["exact"].is_null());
  CHECK(out.document["s"]["value"] == "0");
  CHECK(out.document["t"]["value"] == "0");
}

TEST_CASE("spectrum matches the cubic back-out at N=1") {
  RunConfig c = config_for("spectrum");
  c.N = 1;
  c.n = 0;
  c.order = 3;
  c.lambda = "1e-3";
  c.b = "1";
  c.g = "2";
  c.precision = 40;
  const Output out = dispatch(c);
  const AnsatzParams a = ansatz_from_formal(Rational(1, 1000), 1, 2, 1);
  const auto root = cubic_oracle_n1<Real>(Real("1e-3"), Real(1), Real(2));
  const auto ph = backout_physical(RealValue::inexact(root.s), RealValue::inexact(root.t), a);
  const Real E(out.document["E"]["value"].get<std::string>()), F(out.document["F"]["value"].get<std::string>());
  CHECK(abs(E - ph.E.value()) <= Real("1e-10") * abs(ph.E.value()));
  CHECK(abs(F - ph.F.value()) <= Real("1e-10") * abs(ph.F.value()));
}

TEST_CASE("errors become machine-readable objects with nonzero exit codes") {
  std::ostringstream os;
  RunConfig bad = config_for("tables");
  bad.which = 7;
  CHECK(run(bad, os) == 2);
  const json err = json::parse(os.str());
  CHECK(err["error"]["kind"] == "usage");

  std::ostringstream os2;
  RunConfig dom = config_for("spectrum");
  dom.N = 1;
  dom.A = "-1";
  dom.B = "0";
  dom.C = "0";
  dom.G = "1";
  CHECK(run(dom, os2) == 1);
  CHECK(json::parse(os2.str())["error"]["kind"] == "domain");

  std::ostringstream os3;
  RunConfig csv = config_for("leftvecs");
  csv.N = 2;
  csv.format = OutputFormat::csv;
  CHECK(run(csv, os3) == 2);

  std::ostringstream os4;
  RunConfig unknown = config_for("frobnicate");
  CHECK(run(unknown, os4) == 2);

  std::ostringstream os5;
  RunConfig branch = config_for("series");
  branch.N = 2;
  branch.n = 2;
  CHECK(run(branch, os5) == 2);
}

TEST_CASE("csv output for flat tables") {
  RunConfig c = config_for("pascal");
  c.K = 2;
  c.format = OutputFormat::csv;
  std::ostringstream os;
  CHECK(run(c, os) == 0);
  CHECK(os.str().rfind("K,k,value\n0,0,1\n", 0) == 0);
  RunConfig r = config_for("roots");
  r.N = 1;
  r.format = OutputFormat::csv;
  std::ostringstream os2;
  CHECK(run(r, os2) == 0);
  CHECK(os2.str().find("1,2,0,2,0,1,0") != std::string::npos);
}

TEST_CASE("verify command passes its checks") {
  RunConfig c = config_for("verify");
  c.N = 4;
  c.n = 1;
  c.order = 3;
  const Output out = dispatch(c);
  CHECK(out.ok);
  for (const auto& chk : out.document["checks"]) {
    INFO(chk.dump());
    CHECK(chk["pass"] == true);
  }
}
