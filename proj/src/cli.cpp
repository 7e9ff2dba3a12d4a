#include "bohrlab/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"

#include "bohrlab/bohr.hpp"
#include "bohrlab/errors.hpp"
#include "bohrlab/parallel.hpp"

namespace bohrlab {

namespace {

struct Table {
  std::vector<std::string> columns;
  std::vector<Json> rows;
};

struct Output {
  Json result;
  std::optional<Table> table;
  int status = 0;
};

std::string join(const std::vector<std::string>& items, char sep = ';') {
  std::string s;
  for (std::size_t k = 0; k < items.size(); ++k) {
    if (k) s += sep;
    s += items[k];
  }
  return s;
}

std::string join_ints(std::span<const int> v) {
  std::vector<std::string> parts;
  for (int x : v) parts.push_back(std::to_string(x));
  return join(parts);
}

Json table_json(const Table& t) {
  Json rows = Json::array();
  for (const auto& r : t.rows) rows.push_back(r);
  return rows;
}

int single(const std::vector<int>& v, const char* name) {
  require(v.size() == 1, std::string("--") + name + " takes a single value here");
  return v.front();
}

Exponent exp_p(const RunConfig& c) { return Exponent::parse(c.p); }
Exponent exp_q(const RunConfig& c) { return Exponent::parse(c.q); }
ExponentPair pair_of(const RunConfig& c) { return {exp_p(c), exp_q(c)}; }

Json read_json_file(const std::string& path) {
  require(!path.empty(), "an input file is required");
  std::ifstream in(path);
  require(static_cast<bool>(in), "cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("cannot parse " + path + ": " + e.what());
  }
}

double parse_beta(const std::string& text) {
  const auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return std::stod(text);
    return std::stod(text.substr(0, slash)) / std::stod(text.substr(slash + 1));
  } catch (const std::exception&) {
    throw ValidationError("cannot parse beta '" + text + "'");
  }
}

OptimizerConfig optimizer_of(const RunConfig& c) {
  require(c.restarts >= 1 && c.max_iters >= 1, "restarts and max-iters must be positive");
  return {c.restarts, c.max_iters, 1e-12, c.seed, c.workers};
}

BracketConfig bracket_of(const RunConfig& c) {
  BracketConfig b;
  b.sign_budget = c.budget;
  b.seed = c.seed;
  b.brute_samples = c.samples;
  b.slack = c.slack;
  b.workers = c.workers;
  return b;
}

Json bracket_row(const BoundBracket& b) {
  return {{"m", b.m},
          {"n", b.n},
          {"p", b.p.str()},
          {"q", b.q.str()},
          {"lower", b.lower},
          {"lower_src", b.lower_src},
          {"upper", b.upper},
          {"upper_src", b.upper_src},
          {"flags", join(b.flags)},
          {"lower_raw", b.lower_raw}};
}

Json radius_row(int n, const ExponentPair& e, const RadiusBracket& r) {
  return {{"n", n},
          {"p", e.p.str()},
          {"q", e.q.str()},
          {"m", r.m == 0 ? Json("all") : Json(r.m)},
          {"lower", r.lower},
          {"lower_src", r.lower_src},
          {"upper", r.upper},
          {"upper_src", r.upper_src},
          {"flags", join(r.flags)}};
}

const std::vector<std::string> kBracketColumns{"m", "n", "p", "q", "lower", "lower_src",
                                               "upper", "upper_src", "flags", "lower_raw"};
const std::vector<std::string> kRadiusColumns{"n", "p", "q", "m", "lower", "lower_src",
                                              "upper", "upper_src", "flags"};
const std::vector<std::string> kBoundColumns{"m", "n", "p", "q", "value", "regime", "flags", "provenance"};

// ---------------------------------------------------------------------------

Output cmd_enumerate(const RunConfig& c) {
  const int m = single(c.m, "m");
  const int n = single(c.n, "n");
  Table t;
  const bool tuples = c.set == "j";
  t.columns = {"index", tuples ? "indices" : "exponents", "multiplicity", "provenance"};
  std::size_t index = 0;
  auto add = [&](std::span<const int> label, const BigInt& mult) {
    t.rows.push_back({{"index", ++index},
                      {t.columns[1], join_ints(label)},
                      {"multiplicity", to_string(mult)},
                      {"provenance", "exact"}});
  };
  if (c.set == "lambda") {
    for (const auto& a : enumerate_lambda(m, n)) add(a.exponents(), multiplicity(a));
  } else if (c.set == "lambda_k") {
    for (const auto& a : enumerate_lambda_k(m, n, c.k)) add(a.exponents(), multiplicity(a));
  } else if (tuples) {
    for (const auto& j : enumerate_j(m, n)) add(j.indices(), multiplicity(tuple_to_alpha(j, n)));
  } else {
    throw ValidationError("unknown set '" + c.set + "'");
  }
  Output o;
  o.result = {{"set", c.set}, {"m", m}, {"n", n}, {"count", index}, {"rows", table_json(t)}};
  o.table = std::move(t);
  return o;
}

Table poly_table(const HomPoly& poly) {
  Table t;
  t.columns = {"alpha", "re", "im", "exact"};
  for (const auto& [alpha, v] : poly.terms()) {
    Json row = {{"alpha", join_ints(alpha.exponents())}, {"re", v.real()}, {"im", v.imag()}};
    row["exact"] = poly.exact() ? Json(to_string(poly.exact()->at(alpha))) : Json(nullptr);
    t.rows.push_back(std::move(row));
  }
  return t;
}

Output cmd_poly(const RunConfig& c) {
  Output o;
  if (c.action == "moebius") {
    o.result = to_json(moebius_series(c.a, c.degree));
    return o;
  }
  const int m = single(c.m, "m");
  const int n = single(c.n, "n");
  if (c.action == "random") {
    const HomPoly poly = random_hom_poly(m, n, c.seed);
    o.result = to_json(poly);
    o.table = poly_table(poly);
    return o;
  }
  std::vector<int> signs;
  if (c.signs.empty()) {
    SignSearchConfig sc;
    sc.workers = c.workers;
    signs = sign_search(m, n, exp_p(c), c.budget, c.seed, sc).signs;
  } else {
    for (char ch : c.signs) {
      require(ch == '+' || ch == '-', "signs must be a string of '+' and '-'");
      signs.push_back(ch == '+' ? 1 : -1);
    }
  }
  const HomPoly poly = sign_polynomial(m, n, signs);
  o.result = to_json(poly);
  o.table = poly_table(poly);
  return o;
}

Output cmd_norm(const RunConfig& c) {
  const HomPoly poly = poly_from_json(read_json_file(c.poly_path));
  const OptimizerConfig oc = optimizer_of(c);
  const NormEstimate est = c.majorant ? majorant_sup(poly, exp_q(c), oc) : sup_norm(poly, exp_p(c), oc);
  Output o;
  o.result = to_json(est);
  o.result["provenance"] = "estimate";
  Table t;
  t.columns = {"value", "converged", "restarts", "gap", "provenance"};
  t.rows.push_back({{"value", est.value},
                    {"converged", est.converged},
                    {"restarts", est.restarts},
                    {"gap", est.gap},
                    {"provenance", "estimate"}});
  o.table = std::move(t);
  return o;
}

Json region_json(const Exponent& p, const Exponent& q) {
  const RegionReport r = region_classify(p, q);
  return {{"p", p.str()},
          {"q", q.str()},
          {"region", to_string(r.region)},
          {"rate", r.rate},
          {"n_exponent", to_string(r.n_exponent)},
          {"log_exponent", to_string(r.log_exponent)},
          {"flags", join(r.flags())},
          {"provenance", "exact"}};
}

Output cmd_bound(const RunConfig& c) {
  Output o;
  const ExponentPair e = pair_of(c);
  if (c.action == "region") {
    o.result = region_json(e.p, e.q);
    Table t;
    t.columns = {"p", "q", "region", "rate", "n_exponent", "log_exponent", "flags", "provenance"};
    t.rows.push_back(o.result);
    o.table = std::move(t);
    return o;
  }
  Table t;
  t.columns = kBoundColumns;
  for (int m : c.m) {
    for (int n : c.n) {
      Json row = {{"m", m}, {"n", n}, {"p", e.p.str()}, {"q", e.q.str()}};
      std::string regime, flags, prov = "closed-form";
      double value = 0.0;
      if (c.action == "jsum") {
        value = c.beta_override.empty() ? j_sum(m, n, e) : j_sum_beta(m, n, parse_beta(c.beta_override));
        if (!c.beta_override.empty()) flags = "beta-override";
        prov = "exact-sum";
      } else if (c.action == "chiupper") {
        const ChiUpper u = chi_upper_best(m, n, e);
        value = u.value;
        regime = u.source;
      } else if (c.action == "envelope") {
        const Envelope env = envelope_constant(m, n, e);
        value = env.constant;
        regime = env.regime();
      } else if (c.action == "bayart") {
        const BayartShape b = bayart_bound(m, n, e.p);
        value = b.value;
        if (b.log_substituted) flags = "log-substituted";
      } else if (c.action == "rate") {
        const RegionReport r = region_classify(e.p, e.q);
        row["m"] = nullptr;
        value = rate(e.p, e.q, static_cast<double>(n));
        regime = to_string(r.region);
        flags = join(r.flags());
      } else {
        throw ValidationError("unknown bound '" + c.action + "'");
      }
      row["value"] = value;
      row["regime"] = regime;
      row["flags"] = flags;
      row["provenance"] = prov;
      t.rows.push_back(std::move(row));
    }
    if (c.action == "rate") break;
  }
  o.result = table_json(t);
  o.table = std::move(t);
  return o;
}

Output cmd_witness(const RunConfig& c) {
  Output o;
  const ExponentPair e = pair_of(c);
  Table t;
  if (c.action == "search") {
    const int m = single(c.m, "m");
    const int n = single(c.n, "n");
    SignSearchConfig sc;
    sc.workers = c.workers;
    const SignSearchResult r = sign_search(m, n, e.p, c.budget, c.seed, sc);
    std::string signs;
    for (int s : r.signs) signs += s > 0 ? '+' : '-';
    const double flat = chi_lower_flat(m, n, e.q, r.norm.value);
    const char* prov = r.exact_norm ? "exact" : "estimate";
    o.result = {{"m", m}, {"n", n}, {"p", e.p.str()}, {"q", e.q.str()}, {"signs", signs},
                {"norm", to_json(r.norm)}, {"surrogate", r.surrogate}, {"exact_norm", r.exact_norm},
                {"chi_lower_flat", flat}, {"provenance", prov}};
    t.columns = {"m", "n", "p", "q", "signs", "norm", "surrogate", "chi_lower_flat", "provenance"};
    t.rows.push_back({{"m", m}, {"n", n}, {"p", e.p.str()}, {"q", e.q.str()}, {"signs", signs},
                      {"norm", r.norm.value}, {"surrogate", r.surrogate}, {"chi_lower_flat", flat},
                      {"provenance", prov}});
  } else if (c.action == "bracket") {
    t.columns = kBracketColumns;
    const BracketConfig bc = bracket_of(c);
    for (int m : c.m) {
      for (int n : c.n) t.rows.push_back(bracket_row(chi_bracket(m, n, e, bc)));
    }
    o.result = t.rows.size() == 1 ? t.rows.front() : table_json(t);
  } else if (c.action == "brute") {
    const int m = single(c.m, "m");
    const int n = single(c.n, "n");
    BruteConfig bc;
    bc.slack = c.slack;
    bc.screen.workers = c.workers;
    const BruteChi b = brute_chi(m, n, e, c.samples, c.seed, bc);
    o.result = {{"m", m}, {"n", n}, {"p", e.p.str()}, {"q", e.q.str()}, {"raw", b.raw},
                {"deflated", b.deflated}, {"ensemble", b.ensemble}, {"best", to_json(b.best)},
                {"provenance", "estimate"}};
    t.columns = {"m", "n", "p", "q", "raw", "deflated", "ensemble", "provenance"};
    t.rows.push_back({{"m", m}, {"n", n}, {"p", e.p.str()}, {"q", e.q.str()}, {"raw", b.raw},
                      {"deflated", b.deflated}, {"ensemble", b.ensemble}, {"provenance", "estimate"}});
  } else {
    throw ValidationError("unknown witness action '" + c.action + "'");
  }
  o.table = std::move(t);
  return o;
}

Json tail_json(const RadiusBracket& r) {
  Json grid = Json::array();
  for (const auto& [m, v] : r.tail_grid) grid.push_back({{"m", m}, {"value", v}});
  return grid;
}

Output cmd_bohr(const RunConfig& c) {
  Output o;
  Table t;
  if (c.action == "oned") {
    OneDConfig oc;
    oc.seed = c.seed;
    oc.series = c.samples;
    const OneDBracket b = bohr_1d_bracket(c.tol, oc);
    o.result = {{"lower", b.bracket.lower},         {"lower_src", b.bracket.lower_src},
                {"upper", b.bracket.upper},         {"upper_src", b.bracket.upper_src},
                {"width", b.bracket.upper - b.bracket.lower},
                {"moebius_a", b.moebius_a},         {"checked", b.checked},
                {"failures", b.failures},           {"flags", join(b.bracket.flags)}};
    t.columns = {"lower", "upper", "width", "moebius_a", "checked", "failures", "flags"};
    t.rows.push_back(o.result);
    o.table = std::move(t);
    return o;
  }
  if (c.action == "wiener") {
    const TruncatedSeries f = series_from_json(read_json_file(c.series_path));
    const WienerReport rep = wiener_check(f, exp_p(c), c.slack, optimizer_of(c));
    t.columns = {"m", "norm", "reduced", "bound", "pass", "provenance"};
    for (const auto& r : rep.rows) {
      t.rows.push_back({{"m", r.m}, {"norm", r.norm}, {"reduced", r.reduced}, {"bound", r.bound},
                        {"pass", r.pass}, {"provenance", "estimate"}});
    }
    o.result = {{"input_norm", rep.input_norm}, {"all_pass", rep.all_pass}, {"rows", table_json(t)}};
    o.table = std::move(t);
    return o;
  }
  const ExponentPair e = pair_of(c);
  const BracketConfig bc = bracket_of(c);
  if (c.action == "bracket") {
    const int n = single(c.n, "n");
    const RadiusBracket k = k_bracket(n, e, c.mmax, bc);
    t.columns = kRadiusColumns;
    for (int m = 1; m <= c.mmax; ++m) t.rows.push_back(radius_row(n, e, k_m_bracket(m, n, e, bc)));
    t.rows.push_back(radius_row(n, e, k));
    o.result = radius_row(n, e, k);
    o.result["tail_bound"] = k.tail_bound;
    o.result["tail_grid"] = tail_json(k);
    o.result["per_m"] = table_json(t);
    o.table = std::move(t);
    return o;
  }
  if (c.action == "table") {
    const RegionReport reg = region_classify(e.p, e.q);
    t.columns = {"n", "lower", "upper", "region", "rate", "lower_src", "upper_src", "provenance"};
    for (int n : c.n_grid) {
      const RadiusBracket k = k_bracket(n, e, c.mmax, bc);
      t.rows.push_back({{"n", n},
                        {"lower", k.lower},
                        {"upper", k.upper},
                        {"region", to_string(reg.region)},
                        {"rate", n >= 2 ? Json(rate(e.p, e.q, n)) : Json(nullptr)},
                        {"lower_src", k.lower_src},
                        {"upper_src", k.upper_src},
                        {"provenance", "bracket"}});
    }
    o.result = table_json(t);
    o.table = std::move(t);
    return o;
  }
  throw ValidationError("unknown bohr action '" + c.action + "'");
}

Output cmd_sweep(const RunConfig& c) {
  RunConfig inner = c;
  if (c.kind == "envelope") {
    inner.action = "envelope";
    return cmd_bound(inner);
  }
  const ExponentPair e = pair_of(c);
  const BracketConfig bc = bracket_of(c);
  Output o;
  Table t;
  if (c.kind == "bracket") {
    t.columns = kBracketColumns;
    for (int m : c.m) {
      for (int n : c.n) t.rows.push_back(bracket_row(chi_bracket(m, n, e, bc)));
    }
  } else if (c.kind == "radius") {
    t.columns = kRadiusColumns;
    for (int n : c.n) {
      for (int m : c.m) t.rows.push_back(radius_row(n, e, k_m_bracket(m, n, e, bc)));
      t.rows.push_back(radius_row(n, e, k_bracket(n, e, c.mmax, bc)));
    }
  } else {
    throw ValidationError("unknown sweep kind '" + c.kind + "'");
  }
  o.result = table_json(t);
  o.table = std::move(t);
  return o;
}

// Quick property suite; every check is deterministic.
Output cmd_selftest(const RunConfig& c) {
  Table t;
  t.columns = {"check", "pass", "value"};
  bool all = true;
  auto record = [&](const std::string& name, bool pass, double value) {
    all = all && pass;
    t.rows.push_back({{"check", name}, {"pass", pass}, {"value", value}});
  };

  {
    bool ok = true;
    for (int m = 1; m <= 5; ++m) {
      for (int n = 1; n <= 5; ++n) {
        BigInt total = 0, count = 0;
        LambdaStream s(m, n);
        while (s.next()) {
          total += multiplicity(s.exponents());
          ++count;
        }
        ok = ok && count == binomial(n + m - 1, m) && total == BigInt(boost::multiprecision::pow(BigInt(n), m));
      }
    }
    record("lambda-identities", ok, 0.0);
  }
  {
    bool ok = true;
    for (const auto& a : enumerate_lambda(3, 4)) ok = ok && tuple_to_alpha(alpha_to_tuple(a), 4) == a;
    for (const auto& j : enumerate_j(3, 4)) ok = ok && alpha_to_tuple(tuple_to_alpha(j, 4)) == j;
    record("tuple-roundtrip", ok, 0.0);
  }
  {
    double worst = 0.0;
    for (int m = 1; m <= 5; ++m) {
      for (int n = 1; n <= 6; ++n) {
        for (double beta : {0.0, 0.5, 1.0, 2.0}) {
          const double a = j_sum_beta(m, n, beta, JSumMethod::Naive);
          const double b = j_sum_beta(m, n, beta, JSumMethod::Partition);
          worst = std::max(worst, std::abs(a - b) / std::abs(a));
        }
      }
    }
    record("jsum-naive-vs-partition", worst <= 1e-12, worst);
  }
  {
    const RegionReport r = region_classify(Exponent::infinity(), Exponent::infinity());
    record("region-inf-inf", r.region == Region::II && r.rate == "sqrt(log n)/sqrt(n)", 0.0);
    const RegionReport r1 = region_classify(Exponent::integer(3), Exponent::integer(1));
    record("region-q1", r1.region == Region::Q1 && r1.rate == "1", 0.0);
  }
  {
    const HomPoly p(2, 2, {{MultiIndex({1, 1}), Complex(1.0)}});
    const double v = sup_norm(p, Exponent::integer(2), {8, 200, 1e-12, c.seed, 1}).value;
    record("sup-norm-z1z2-l2", std::abs(v - 0.5) <= 1e-8, v);
  }
  {
    const double a = 0.5;
    const double r = 1.0 / (1.0 + 2.0 * a);
    const double v = bohr_sum(moebius_series(a, 60), r, Exponent::infinity()).value;
    record("moebius-bohr-sum", std::abs(v - 1.0) <= 1e-9, v);
  }
  {
    const RadiusBracket k = k_m_bracket(1, 3, {Exponent::integer(2), Exponent::integer(2)}, bracket_of(c));
    record("k1-linear", std::abs(k.lower - 1.0) <= 1e-12 && std::abs(k.upper - 1.0) <= 1e-12, k.lower);
  }
  {
    BracketConfig bc = bracket_of(c);
    bc.sign_budget = 20;
    bc.brute_samples = 40;
    const BoundBracket b = chi_bracket(2, 2, {Exponent::integer(2), Exponent::ratio(3, 2)}, bc);
    record("bracket-order", b.lower <= b.upper, b.upper - b.lower);
  }
  {
    const double a = 0.5;
    const WienerReport w =
        wiener_check(moebius_series(a, 40), Exponent::integer(2), 1.0 + 1e-9, {8, 200, 1e-12, c.seed, 1}, 1);
    const double gap = std::abs(w.rows.front().norm - (1.0 - a * a));
    record("wiener-moebius-equality", w.all_pass && gap <= 1e-9, gap);
  }
  Output o;
  o.result = {{"all_pass", all}, {"checks", table_json(t)}};
  o.table = std::move(t);
  o.status = all ? 0 : 1;
  return o;
}

// ---------------------------------------------------------------------------

std::string timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream s;
  s << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return s.str();
}

void emit(const RunConfig& c, const Output& o, std::ostream& out) {
  if (c.format == "json") {
    Json doc;
    doc["config"] = to_json(c);
    doc["result"] = o.result;
    out << doc.dump(2) << '\n';
    return;
  }
  require(o.table.has_value(), "this command has no CSV form; use --format json");
  out << "# config: " << to_json(c).dump() << '\n';
  std::vector<std::string> header;
  for (const auto& col : o.table->columns) header.push_back(csv_cell(Json(col)));
  out << join(header, ',') << '\n';
  for (const auto& row : o.table->rows) {
    std::vector<std::string> cells;
    for (const auto& col : o.table->columns) cells.push_back(csv_cell(row.contains(col) ? row.at(col) : Json()));
    out << join(cells, ',') << '\n';
  }
}

Output dispatch(const RunConfig& c) {
  if (c.command == "enumerate") return cmd_enumerate(c);
  if (c.command == "poly") return cmd_poly(c);
  if (c.command == "norm") return cmd_norm(c);
  if (c.command == "bound") return cmd_bound(c);
  if (c.command == "witness") return cmd_witness(c);
  if (c.command == "bohr") return cmd_bohr(c);
  if (c.command == "sweep") return cmd_sweep(c);
  if (c.command == "selftest") return cmd_selftest(c);
  throw ValidationError("unknown command '" + c.command + "'");
}

std::uint64_t env_seed() {
  const char* s = std::getenv("BOHRLAB_SEED");
  if (!s || !*s) return 0;
  try {
    return std::stoull(s);
  } catch (const std::exception&) {
    throw ValidationError("BOHRLAB_SEED must be a nonnegative integer");
  }
}

}  // namespace

Json to_json(const RunConfig& c) {
  Json j;
  j["command"] = c.command;
  j["action"] = c.action;
  j["m"] = c.m;
  j["n"] = c.n;
  j["p"] = c.p;
  j["q"] = c.q;
  j["set"] = c.set;
  j["k"] = c.k;
  j["beta_override"] = c.beta_override;
  j["poly"] = c.poly_path;
  j["series"] = c.series_path;
  j["majorant"] = c.majorant;
  j["signs"] = c.signs;
  j["a"] = c.a;
  j["degree"] = c.degree;
  j["restarts"] = c.restarts;
  j["max_iters"] = c.max_iters;
  j["budget"] = c.budget;
  j["samples"] = c.samples;
  j["tol"] = c.tol;
  j["mmax"] = c.mmax;
  j["n_grid"] = c.n_grid;
  j["kind"] = c.kind;
  j["seed"] = c.seed;
  j["workers"] = c.workers;
  j["format"] = c.format;
  j["output"] = c.output;
  j["slack"] = c.slack;
  return j;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig c;
  c.workers = default_workers();
  try {
    c.seed = env_seed();
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  CLI::App app{"Numerical toolkit for mixed Bohr radii and unconditional constants", "bohrlab"};
  app.fallthrough();
  app.require_subcommand(1);
  app.set_config("--config", "", "Read options from a TOML file");
  app.add_option("--seed", c.seed, "Base random seed (default: $BOHRLAB_SEED or 0)");
  app.add_option("--workers", c.workers, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--format", c.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--output", c.output, "Write the artifact to this file");
  app.add_option("--budget", c.budget, "Search budget (annealing sweeps per chain)");
  app.add_option("--restarts", c.restarts, "Optimizer restarts");
  app.add_option("--max-iters", c.max_iters, "Optimizer iterations per restart");
  app.add_option("--samples", c.samples, "Random samples (brute oracle, Monte Carlo series)");
  app.add_option("--slack", c.slack, "Slack factor for estimate-based checks");

  auto dims = [&](CLI::App* s) {
    s->add_option("--m", c.m, "Degree(s), comma separated")->delimiter(',');
    s->add_option("--n", c.n, "Dimension(s), comma separated")->delimiter(',');
  };
  auto exps = [&](CLI::App* s) {
    s->add_option("--p", c.p, "Exponent p (integer, a/b, decimal or inf)");
    s->add_option("--q", c.q, "Exponent q (integer, a/b, decimal or inf)");
  };
  auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& help) {
    CLI::App* s = parent->add_subcommand(name, help);
    s->callback([&c, s, parent] {
      c.action = s->get_name();
      c.command = parent->get_name();
    });
    return s;
  };
  auto flat = [&](const std::string& name, const std::string& help) {
    CLI::App* s = app.add_subcommand(name, help);
    s->callback([&c, s] { c.command = s->get_name(); });
    return s;
  };

  auto* en = flat("enumerate", "List Lambda(m,n), J(m,n) or the k-bounded subset");
  dims(en);
  en->add_option("--set", c.set)->check(CLI::IsMember({"lambda", "j", "lambda_k"}));
  en->add_option("--k", c.k, "Bound for lambda_k");

  auto* po = app.add_subcommand("poly", "Emit a polynomial or series as JSON");
  po->require_subcommand(1);
  auto* pr = leaf(po, "random", "Standard complex Gaussian coefficients");
  dims(pr);
  auto* pm = leaf(po, "moebius", "Truncated Moebius series (a - z)/(1 - a z)");
  pm->add_option("--a", c.a);
  pm->add_option("--degree", c.degree);
  auto* ps = leaf(po, "sign", "Sign polynomial; signs from --signs or a search");
  dims(ps);
  exps(ps);
  ps->add_option("--signs", c.signs, "String of + and - in colex order");

  auto* no = flat("norm", "Estimate sup |P| on the l_p ball, or the majorant sup on the l_q ball");
  exps(no);
  no->add_option("--poly", c.poly_path)->required();
  no->add_flag("--majorant", c.majorant);

  auto* bo = app.add_subcommand("bound", "Closed-form bounds and the region map");
  bo->require_subcommand(1);
  for (const char* name : {"jsum", "chiupper", "envelope", "region", "rate", "bayart"}) {
    auto* s = leaf(bo, name, std::string("Bound: ") + name);
    dims(s);
    exps(s);
    if (std::string(name) == "jsum") s->add_option("--beta-override", c.beta_override);
  }

  auto* wi = app.add_subcommand("witness", "Sign search, brute oracle and brackets");
  wi->require_subcommand(1);
  for (const char* name : {"search", "bracket", "brute"}) {
    auto* s = leaf(wi, name, std::string("Witness: ") + name);
    dims(s);
    exps(s);
  }

  auto* bh = app.add_subcommand("bohr", "Bohr radius brackets");
  bh->require_subcommand(1);
  auto* bb = leaf(bh, "bracket", "K and K_m brackets");
  dims(bb);
  exps(bb);
  bb->add_option("--mmax", c.mmax);
  auto* b1 = leaf(bh, "oned", "One-variable radius bracket");
  b1->add_option("--tol", c.tol);
  auto* bw = leaf(bh, "wiener", "Wiener coefficient inequality check");
  exps(bw);
  bw->add_option("--series", c.series_path)->required();
  auto* bt = leaf(bh, "table", "K brackets over an n grid");
  exps(bt);
  bt->add_option("--n-grid", c.n_grid)->delimiter(',');
  bt->add_option("--mmax", c.mmax);

  auto* sw = flat("sweep", "Batch sweeps over m and n lists");
  dims(sw);
  exps(sw);
  sw->add_option("--kind", c.kind)->check(CLI::IsMember({"envelope", "bracket", "radius"}));
  sw->add_option("--mmax", c.mmax);

  flat("selftest", "Quick property suite");

  bool oned_samples_default = true;
  try {
    app.parse(argc, argv);
    oned_samples_default = app.get_option("--samples")->count() == 0;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    if (code == 0) return 0;
    err << app.help();
    return 2;
  }
  if (c.command == "bohr" && c.action == "oned" && oned_samples_default) c.samples = 10000;

  try {
    const Output o = dispatch(c);
    if (c.output.empty()) {
      emit(c, o, out);
    } else {
      std::ofstream f(c.output, std::ios::binary);
      require(static_cast<bool>(f), "cannot write " + c.output);
      emit(c, o, f);
      std::ofstream meta(c.output + ".meta.json", std::ios::binary);
      meta << Json{{"created", timestamp()}, {"artifact", c.output}}.dump(2) << '\n';
    }
    return o.status;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace bohrlab
