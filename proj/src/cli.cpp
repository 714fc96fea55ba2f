#include "cyclolab/cli.hpp"

#include <openssl/evp.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "cyclolab/equidist.hpp"
#include "cyclolab/flatsums.hpp"
#include "cyclolab/heights.hpp"
#include "cyclolab/kummer.hpp"
#include "cyclolab/parallel.hpp"
#include "cyclolab/radical.hpp"

#ifndef CYCLOLAB_VERSION
#define CYCLOLAB_VERSION "0.0.0"
#endif

namespace cyclolab::cli {

using json = nlohmann::json;
namespace fs = std::filesystem;

std::string version() { return CYCLOLAB_VERSION; }

namespace {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void dump_into(const json& j, std::ostringstream& os, int indent, int level) {
  const std::string pad = indent > 0 ? std::string(static_cast<std::size_t>(indent * (level + 1)), ' ') : "";
  const std::string close_pad = indent > 0 ? std::string(static_cast<std::size_t>(indent * level), ' ') : "";
  const char* nl = indent > 0 ? "\n" : "";
  const char* colon = indent > 0 ? ": " : ":";
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << "{" << nl;
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) os << "," << nl;
        first = false;
        os << pad << json(it.key()).dump() << colon;
        dump_into(it.value(), os, indent, level + 1);
      }
      os << nl << close_pad << "}";
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      os << "[" << nl;
      bool first = true;
      for (const auto& v : j) {
        if (!first) os << "," << nl;
        first = false;
        os << pad;
        dump_into(v, os, indent, level + 1);
      }
      os << nl << close_pad << "]";
      return;
    }
    case json::value_t::number_float: {
      double v = j.get<double>();
      os << (std::isfinite(v) ? format_double(v) : "null");
      return;
    }
    default:
      os << j.dump();
  }
}

}  // namespace

std::string dump_json(const json& j, int indent) {
  std::ostringstream os;
  dump_into(j, os, indent, 0);
  return os.str();
}

std::string cache_key(const json& record) {
  json key = {{"command", record.at("command")}, {"inputs", record.at("inputs")}, {"version", record.at("version")}};
  std::string text = dump_json(key, 0);
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(text.data(), text.size(), digest, &length, EVP_sha256(), nullptr) != 1)
    throw InternalInconsistency("SHA-256 failed");
  std::ostringstream hex;
  for (unsigned int i = 0; i < length; ++i) hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
  return hex.str();
}

int exit_code_for(const std::string& status) {
  return (status == "unresolved" || status == "inconclusive") ? kExitInconclusive : kExitOk;
}

namespace {

// --- argument access ----------------------------------------------------------

struct Args {
  std::map<std::string, std::string> values;
  int threads = 1;

  bool has(const std::string& name) const {
    auto it = values.find(name);
    return it != values.end() && !it->second.empty();
  }
  const std::string& str(const std::string& name) const {
    auto it = values.find(name);
    if (it == values.end() || it->second.empty()) throw Error("missing required flag --" + name);
    return it->second;
  }
  bool flag(const std::string& name) const { return has(name) && values.at(name) == "true"; }
  i64 integer(const std::string& name) const {
    const std::string& s = str(name);
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(s, &used);
    } catch (const std::exception&) {
      throw Error("--" + name + " expects an integer, got '" + s + "'");
    }
    if (used != s.size()) throw Error("--" + name + " expects an integer, got '" + s + "'");
    return v;
  }
  double real(const std::string& name) const {
    const std::string& s = str(name);
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      throw Error("--" + name + " expects a number, got '" + s + "'");
    }
    if (used != s.size()) throw Error("--" + name + " expects a number, got '" + s + "'");
    return v;
  }
  Rational rational(const std::string& name) const { return parse_rational(str(name)); }
  std::vector<i64> ints(const std::string& name) const { return parse_int_list(str(name)); }
};

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<json>> rows;
};

struct Outcome {
  std::string status = "ok";
  json results = json::object();
  json witness = nullptr;
  json residual = nullptr;
  json certificate = nullptr;
  Table table;
};

struct OptionSpec {
  std::string name;
  std::string help;
  std::optional<std::string> default_value;
  bool flag = false;

  OptionSpec(std::string n, std::string h, std::optional<std::string> def = std::nullopt, bool is_flag = false)
      : name(std::move(n)), help(std::move(h)), default_value(std::move(def)), flag(is_flag) {}
};

struct CommandSpec {
  std::string name;
  std::string help;
  std::vector<OptionSpec> options;
  std::function<Outcome(const Args&)> handler;
};

// --- serialization helpers ------------------------------------------------------

json rat(const Rational& q) { return format_rational(q); }

json complex_json(std::complex<double> z) { return json::array({z.real(), z.imag()}); }

json exact_sum_json(const flatsums::ExactSum& f) {
  json coeffs = json::array();
  for (const auto& a : f.coeffs) coeffs.push_back(a.to_string());
  return {{"d", f.d}, {"exponents", f.exponents}, {"coeffs", coeffs}, {"mu", rat(f.mu)}};
}

json int_matrix_json(const IntMatrix& m) {
  json out = json::array();
  for (const auto& row : m) {
    json r = json::array();
    for (const auto& x : row) r.push_back(x.get_str());
    out.push_back(r);
  }
  return out;
}

std::vector<std::string> split(const std::string& text, const std::string& separators) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : text) {
    if (separators.find(ch) != std::string::npos) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  out.push_back(cur);
  return out;
}

struct Histogram {
  double lo = 0.0, hi = 0.0;
  std::vector<i64> counts;
};

Histogram histogram(const std::vector<double>& values, int bins) {
  if (bins < 1) throw Error("--bins must be positive");
  Histogram h;
  h.counts.assign(static_cast<std::size_t>(bins), 0);
  h.lo = *std::min_element(values.begin(), values.end());
  h.hi = *std::max_element(values.begin(), values.end());
  if (h.hi - h.lo <= 1e-12 * std::max(1.0, std::abs(h.hi))) {
    h.lo -= 0.5;
    h.hi += 0.5;
  }
  for (double v : values) {
    auto b = static_cast<i64>((v - h.lo) / (h.hi - h.lo) * bins);
    b = std::clamp<i64>(b, 0, bins - 1);
    ++h.counts[static_cast<std::size_t>(b)];
  }
  return h;
}

json histogram_json(const Histogram& h) { return {{"lo", h.lo}, {"hi", h.hi}, {"counts", h.counts}}; }

Table histogram_table(const Histogram& h) {
  Table t{{"bin", "lo", "hi", "count"}, {}};
  const double width = (h.hi - h.lo) / static_cast<double>(h.counts.size());
  for (std::size_t b = 0; b < h.counts.size(); ++b)
    t.rows.push_back({static_cast<i64>(b), h.lo + width * static_cast<double>(b), h.lo + width * static_cast<double>(b + 1), h.counts[b]});
  return t;
}

Table key_value_table(const json& results) {
  Table t{{"key", "value"}, {}};
  for (auto it = results.begin(); it != results.end(); ++it)
    if (!it.value().is_structured()) t.rows.push_back({it.key(), it.value()});
  return t;
}

// --- flatsums -------------------------------------------------------------------

flatsums::ExactSum exact_sum_from(const Args& a) {
  const i64 d = a.integer("d");
  if (a.flag("chirp")) return flatsums::chirp(d);
  auto b = a.ints("exponents");
  std::vector<CyclotomicNumber> coeffs;
  for (const auto& text : split(a.str("coeffs"), ",;")) coeffs.push_back(CyclotomicNumber::parse(text));
  return flatsums::ExactSum(d, std::move(b), std::move(coeffs), a.rational("mu"));
}

Outcome cmd_flat_verify(const Args& a) {
  auto f = exact_sum_from(a);
  Outcome o;
  auto flat = flatsums::is_flat(f);
  auto numeric = flatsums::is_flat(flatsums::to_numeric(f));
  auto profile = flatsums::grouped_autocorrelation(f);
  o.status = flat.flat ? "flat" : "not_flat";
  o.witness = flat.witness ? json(*flat.witness) : json(nullptr);
  o.residual = numeric.max_deviation;
  o.results["sum"] = exact_sum_json(f);
  o.results["flat"] = flat.flat;
  o.results["numeric_max_deviation"] = numeric.max_deviation;
  json ac = json::array();
  o.table.columns = {"rho", "A"};
  for (std::size_t rho = 0; rho < profile.values.size(); ++rho) {
    ac.push_back(profile.values[rho].to_string());
    o.table.rows.push_back({static_cast<i64>(rho), profile.values[rho].to_string()});
  }
  o.results["autocorrelation"] = ac;
  if (f.size() <= 20) {
    auto v = flatsums::validate_definition(f);
    o.results["validity"] = {{"has_zero_exponent", v.has_zero_exponent},
                             {"gcd_is_one", v.gcd_is_one},
                             {"subset_sums_nonzero", v.subset_sums_nonzero},
                             {"vanishing_subset", v.vanishing_subset ? json(*v.vanishing_subset) : json(nullptr)}};
  } else {
    o.results["validity"] = nullptr;
  }
  return o;
}

Outcome cmd_flat_search(const Args& a) {
  auto b = a.ints("exponents");
  auto r = flatsums::flat_search(b, a.integer("d"), a.real("mu"), static_cast<int>(a.integer("restarts")),
                                 static_cast<std::uint64_t>(a.integer("seed")));
  Outcome o;
  o.status = r.verdict == flatsums::SearchVerdict::numeric_member       ? "numeric_member"
             : r.verdict == flatsums::SearchVerdict::numeric_infeasible ? "numeric_infeasible"
                                                                        : "unresolved";
  json coeffs = json::array();
  o.table.columns = {"j", "exponent", "re", "im"};
  for (Eigen::Index j = 0; j < r.coeffs.size(); ++j) {
    coeffs.push_back(complex_json(r.coeffs[j]));
    o.table.rows.push_back({static_cast<i64>(j), b[static_cast<std::size_t>(j)], r.coeffs[j].real(), r.coeffs[j].imag()});
  }
  o.witness = coeffs;
  o.residual = r.residual;
  o.results = {{"coeffs", coeffs}, {"residual", r.residual}, {"restarts_run", r.restarts_run}};
  return o;
}

Outcome cmd_sn_survey(const Args& a) {
  const int N = static_cast<int>(a.integer("N"));
  flatsums::SurveyOptions opts;
  opts.d_min = a.integer("dmin");
  opts.restarts = static_cast<int>(a.integer("restarts"));
  opts.seed = static_cast<std::uint64_t>(a.integer("seed"));
  opts.threads = a.threads;
  auto rows = flatsums::sn_survey(N, a.integer("dmax"), opts);
  Outcome o;
  json table = json::array(), members = json::array();
  bool unresolved = false;
  o.table.columns = {"d", "status", "patterns", "excluded_exactly", "numeric_infeasible", "best_residual", "evidence"};
  for (const auto& r : rows) {
    json row = {{"d", r.d},
                {"status", flatsums::to_string(r.status)},
                {"evidence", r.evidence},
                {"patterns", r.patterns},
                {"excluded_exactly", r.excluded_exactly},
                {"numeric_infeasible", r.numeric_infeasible},
                {"best_residual", r.best_residual},
                {"exact_witness", r.exact_witness ? exact_sum_json(*r.exact_witness) : json(nullptr)},
                {"numeric_pattern", r.numeric_pattern ? json(*r.numeric_pattern) : json(nullptr)},
                {"numeric_witness_valid", r.numeric_witness_valid ? json(*r.numeric_witness_valid) : json(nullptr)}};
    table.push_back(row);
    if (r.status == flatsums::SurveyStatus::member) members.push_back(r.d);
    if (r.status == flatsums::SurveyStatus::unresolved) unresolved = true;
    o.table.rows.push_back({r.d, flatsums::to_string(r.status), r.patterns, r.excluded_exactly, r.numeric_infeasible,
                            r.best_residual, r.evidence});
  }
  o.status = unresolved ? "unresolved" : "complete";
  o.results = {{"N", N}, {"rows", table}, {"members", members}, {"upper_bound", flatsums::sn_upper_bound(N)}};
  o.witness = members;
  return o;
}

Outcome cmd_reduce(const Args& a) {
  auto f = exact_sum_from(a);
  auto c = flatsums::reduce_instance(f);
  Outcome o;
  o.status = "certified";
  json groups = json::array();
  for (const auto& g : c.groups) groups.push_back(g);
  o.certificate = {{"b", c.b},
                   {"d", c.d},
                   {"q", c.q},
                   {"q_prime", c.q_prime},
                   {"e", c.e},
                   {"d_prime", c.d_prime},
                   {"p", c.p},
                   {"c", c.c},
                   {"groups", groups},
                   {"g", exact_sum_json(c.g)},
                   {"input_subset_condition", c.input_subset_condition},
                   {"output_subset_condition", c.output_subset_condition}};
  o.witness = exact_sum_json(c.g);
  o.results = {{"d_prime", c.d_prime}, {"terms", c.c.size()}};
  o.table.columns = {"k", "c_k", "u_k", "E_k"};
  for (std::size_t k = 0; k < c.c.size(); ++k) {
    std::string members;
    for (std::size_t j : c.groups[k]) members += (members.empty() ? "" : " ") + std::to_string(j);
    o.table.rows.push_back({static_cast<i64>(k), c.c[k], c.g.coeffs[k].to_string(), members});
  }
  return o;
}

// --- equidist -------------------------------------------------------------------

Outcome cmd_arc_count(const Args& a) {
  equidist::RootTupleOrbit orbit(a.integer("m"), a.ints("k"));
  auto box = equidist::parse_arc_box(a.str("arcs"));
  auto r = equidist::arc_count(orbit, box, a.threads);
  const int bins = static_cast<int>(a.integer("bins"));
  if (bins < 1) throw Error("--bins must be positive");
  Outcome o;
  o.results = {{"count", r.count},
               {"m", r.m},
               {"ratio", rat(r.ratio)},
               {"ratio_value", r.ratio.get_d()},
               {"haar", r.haar},
               {"bound", r.bound ? json(*r.bound) : json(nullptr)},
               {"meets_bound", r.meets_bound ? json(*r.meets_bound) : json(nullptr)}};
  o.witness = r.count;
  if (r.meets_bound) o.status = *r.meets_bound ? "meets_bound" : "below_bound";
  // angle histograms of the orbit, one per coordinate
  json hists = json::array();
  o.table.columns = {"coordinate", "bin", "lo", "hi", "count"};
  for (std::size_t j = 0; j < orbit.k.size(); ++j) {
    std::vector<i64> counts(static_cast<std::size_t>(bins), 0);
    const i64 step = mod_floor(orbit.k[j], orbit.m);
    for (i64 s = 1; s <= orbit.m; ++s) {
      auto res = static_cast<__int128>(s) * step % orbit.m;
      ++counts[static_cast<std::size_t>(res * bins / orbit.m)];
    }
    const double width = 2 * std::numbers::pi / bins;
    for (int b = 0; b < bins; ++b)
      o.table.rows.push_back({static_cast<i64>(j), b, width * b, width * (b + 1), counts[static_cast<std::size_t>(b)]});
    hists.push_back({{"lo", 0.0}, {"hi", 2 * std::numbers::pi}, {"counts", counts}});
  }
  o.results["angle_histograms"] = hists;
  return o;
}

Outcome cmd_weyl(const Args& a) {
  equidist::RootTupleOrbit orbit(a.integer("m"), a.ints("k"));
  auto n = a.ints("n");
  if (n.size() != orbit.k.size()) throw Error("--n must have the same length as --k");
  Rational v = equidist::weyl_sum(orbit, n);
  bool member = lattice_contains(equidist::relation_lattice(orbit.m, orbit.k), to_big(n));
  Outcome o;
  o.results = {{"value", rat(v)}, {"in_relation_lattice", member}, {"period", equidist::orbit_period(orbit)}};
  o.witness = rat(v);
  o.table = key_value_table(o.results);
  return o;
}

Outcome cmd_strict_check(const Args& a) {
  auto ms = a.ints("m");
  auto ktexts = split(a.str("k"), ";");
  if (ktexts.size() != 1 && ktexts.size() != ms.size()) throw Error("--k needs one vector or one per modulus");
  std::vector<equidist::RootTupleOrbit> window;
  for (std::size_t i = 0; i < ms.size(); ++i) window.emplace_back(ms[i], parse_int_list(ktexts[ktexts.size() == 1 ? 0 : i]));
  std::optional<i64> radius;
  if (a.has("radius")) radius = a.integer("radius");
  auto v = equidist::strictness_window(window, radius);
  Outcome o;
  o.status = v.obstructed ? "obstructed" : "no_obstruction";
  o.witness = v.relation ? json(*v.relation) : json(nullptr);
  o.results = {{"verdict", v.to_string()},
               {"obstructed", v.obstructed},
               {"search_radius", v.search_radius},
               {"common_lattice", int_matrix_json(v.common_lattice)},
               {"heuristic", true}};
  o.table = key_value_table(o.results);
  return o;
}

// --- radical --------------------------------------------------------------------

radical::RadicalSum radical_from(const Args& a) {
  std::optional<std::vector<i64>> failures;
  if (a.has("c")) failures = a.ints("c");
  return radical::parse_radical_sum(a.str("x"), a.integer("D"), failures);
}

json context_json(const radical::RadicalContext& ctx) {
  json gens = json::array();
  for (const auto& g : ctx.generators) gens.push_back(rat(g));
  return {{"generators", gens},
          {"d", ctx.d},
          {"c", ctx.c},
          {"D", ctx.D},
          {"user_failures", ctx.user_failures},
          {"group_order", ctx.group_order()}};
}

inline constexpr std::size_t kMaxListedModuli = 4096;

Outcome cmd_orbit(const Args& a) {
  auto x = radical_from(a);
  auto moduli = radical::orbit_moduli(x);
  auto h = histogram(moduli, static_cast<int>(a.integer("bins")));
  Outcome o;
  o.results = {{"x", x.to_string()},
               {"context", context_json(x.context)},
               {"orbit_size", moduli.size()},
               {"min", *std::min_element(moduli.begin(), moduli.end())},
               {"max", *std::max_element(moduli.begin(), moduli.end())},
               {"histogram", histogram_json(h)}};
  o.results["moduli"] = moduli.size() <= kMaxListedModuli ? json(moduli) : json(nullptr);
  o.table = histogram_table(h);
  return o;
}

Outcome cmd_dgamma(const Args& a) {
  auto x = radical_from(a);
  const double eps = a.real("eps");
  auto g = radical::d_gamma_eps(x, eps);
  auto moduli = radical::orbit_moduli(x);
  auto h = histogram(moduli, static_cast<int>(a.integer("bins")));
  auto energy = radical::term_energy_profile(x, eps, a.real("gamma"));
  Outcome o;
  o.witness = rat(g.fraction);
  o.results = {{"x", x.to_string()},
               {"context", context_json(x.context)},
               {"fraction", rat(g.fraction)},
               {"fraction_value", g.fraction.get_d()},
               {"concyclic", g.concyclic},
               {"histogram", histogram_json(h)},
               {"energy", {{"energy", energy.energy},
                           {"term_moduli", energy.term_moduli},
                           {"identity_plus", {energy.plus.lhs, energy.plus.rhs}},
                           {"identity_minus", {energy.minus.lhs, energy.minus.rhs}},
                           {"identity_holds", energy.identity_holds}}}};
  if (a.flag("marginal")) {
    auto m = radical::marginal_orbit_stats(x, eps);
    json rows = json::array();
    for (std::size_t i = 0; i < m.units.size(); ++i) rows.push_back({{"t", m.units[i]}, {"d", rat(m.rows[i])}});
    o.results["marginal"] = {{"rows", rows},
                             {"max", rat(m.max)},
                             {"average", rat(m.average)},
                             {"full_group", rat(m.full_group)},
                             {"eq0", m.eq0}};
    o.certificate = {{"eq0", m.eq0}, {"average", rat(m.average)}, {"full_group", rat(m.full_group)}};
  }
  o.table = histogram_table(h);
  return o;
}

Outcome cmd_sigma_search(const Args& a) {
  auto x = radical_from(a);
  auto box = equidist::parse_arc_box(a.str("arcs"));
  auto found = radical::sigma_search(x, box, a.real("eps"));
  Outcome o;
  json elements = json::array();
  o.table.columns = {"t", "r"};
  for (const auto& s : found) {
    elements.push_back({{"t", s.t}, {"r", s.r}});
    std::string r;
    for (i64 v : s.r) r += (r.empty() ? "" : " ") + std::to_string(v);
    o.table.rows.push_back({s.t, r});
  }
  o.witness = elements;
  o.results = {{"x", x.to_string()},
               {"context", context_json(x.context)},
               {"elements", elements},
               {"count", found.size()},
               {"group_order", x.context.group_order()}};
  return o;
}

Outcome cmd_factor_out(const Args& a) {
  auto x = radical_from(a);
  auto f = radical::factor_out_division_point(x);
  Outcome o;
  o.results = {{"x", x.to_string()},
               {"y", f.y.to_string()},
               {"z", f.z.to_string()},
               {"divisors", f.divisors},
               {"y_context", context_json(f.y.context)},
               {"terms", f.y.terms.size()}};
  o.witness = {{"y", f.y.to_string()}, {"z", f.z.to_string()}};
  o.residual = std::abs(f.y.value() * f.z.value() - x.value());
  o.table = key_value_table(o.results);
  return o;
}

// --- heights and kummer -----------------------------------------------------------

Outcome cmd_height(const Args& a) {
  Outcome o;
  if (a.has("radical") == a.has("minpoly")) throw Error("give exactly one of --minpoly and --radical");
  if (a.has("radical")) {
    Rational base = a.rational("radical");
    const i64 n = a.integer("n");
    auto h = heights::radical_height(base, n);
    i64 e = 1;
    for (i64 t : divisors(n))
      if (kummer::rational_root(base, t)) e = t;
    const i64 degree = n / e;
    o.results = {{"height", h.height},
                 {"degree", degree},
                 {"mahler_measure", std::exp(static_cast<double>(degree) * h.height)},
                 {"cross_checked", h.cross_checked}};
  } else {
    heights::AlgebraicNumber alpha(parse_polynomial(a.str("minpoly")), static_cast<int>(a.integer("index")));
    o.results = {{"height", heights::weil_height(alpha)},
                 {"degree", alpha.degree()},
                 {"minpoly", alpha.minpoly.to_string()},
                 {"mahler_measure", std::exp(heights::log_mahler_measure(alpha.minpoly))},
                 {"root", complex_json(alpha.value())},
                 {"is_root_of_unity", heights::is_root_of_unity(alpha)}};
  }
  o.witness = o.results["height"];
  o.table = key_value_table(o.results);
  return o;
}

Outcome cmd_kummer(const Args& a) {
  auto as = split(a.str("a"), ",");
  auto ds = a.ints("d");
  const i64 m = a.integer("m");
  Outcome o;
  if (as.size() != ds.size()) throw Error("--a and --d need the same length");
  if (as.size() > 1) {
    std::vector<Rational> gens;
    for (const auto& s : as) gens.push_back(parse_rational(s));
    auto t = kummer::tower_degrees(gens, ds, m);
    o.results = {{"c", t.c}, {"shape", t.shape}, {"order", t.order()}};
    o.witness = t.c;
    o.table.columns = {"a", "d", "c", "degree"};
    for (std::size_t l = 0; l < gens.size(); ++l) o.table.rows.push_back({as[l], ds[l], t.c[l], t.shape[l]});
    return o;
  }
  const Rational q = parse_rational(as[0]);
  auto r = kummer::rank1_failure(q, ds[0], m);
  o.results = {{"c", r.c}, {"degree", r.degree}, {"odd_part", r.odd_part}, {"two_part", r.two_part}};
  o.witness = r.c;
  if (r.c * euler_phi(m) <= 64) {
    auto cert = kummer::root_membership_oracle(q, r.c, m);
    json v = json::array();
    for (const auto& x : cert.v) v.push_back(rat(x));
    o.certificate = {{"e", r.c},
                     {"verdict", kummer::to_string(cert.verdict)},
                     {"root", cert.root ? json(cert.root->to_string()) : json(nullptr)},
                     {"v", v},
                     {"candidate", cert.candidate},
                     {"scale_used", cert.scale_used}};
    if (cert.verdict != kummer::OracleVerdict::yes) o.status = "inconclusive";
  }
  o.table = key_value_table(o.results);
  return o;
}

// --- registry ---------------------------------------------------------------------

std::vector<CommandSpec> commands() {
  const OptionSpec d{"d", "root-of-unity order d"};
  const OptionSpec exps{"exponents", "exponents, e.g. 0,1,5"};
  const OptionSpec coeffs{"coeffs", "coefficients in cyclotomic text form, separated by ';' or ','"};
  const OptionSpec mu_exact{"mu", "target squared modulus (rational)", "1"};
  const OptionSpec chirp{"chirp", "use the quadratic-phase sum of order d", std::nullopt, true};
  const OptionSpec seed{"seed", "random seed", "0"};
  const OptionSpec restarts{"restarts", "random restarts", "20"};
  const OptionSpec x{"x", "radical sum, e.g. \"(1/2) * z8^1 * 2^(3/6) + 1\""};
  const OptionSpec D{"D", "minimal cyclotomic order of the coefficients", "1"};
  const OptionSpec c{"c", "Kummer failures c_l (default: computed)"};
  const OptionSpec bins{"bins", "histogram bins", "20"};
  const OptionSpec eps{"eps", "band half-width epsilon"};
  return {
      {"flat-verify", "exact flatness of a sparse exponential sum", {d, exps, coeffs, mu_exact, chirp}, cmd_flat_verify},
      {"flat-search", "numeric search for flat coefficients", {d, exps, {"mu", "target squared modulus", "1"}, restarts, seed}, cmd_flat_search},
      {"sn-survey", "survey of S_N over d", {{"N", "number of terms (1..3)"}, {"dmax", "largest d"}, {"dmin", "smallest d", "1"}, restarts, seed}, cmd_sn_survey},
      {"reduce", "Dirichlet reduction certificate", {d, exps, coeffs, mu_exact, chirp}, cmd_reduce},
      {"arc-count", "count orbit points in a box of arcs", {{"m", "modulus m"}, {"k", "exponents k"}, {"arcs", "box x1:eps1,x2:eps2"}, {"bins", "angle histogram bins", "32"}}, cmd_arc_count},
      {"weyl", "exact Weyl sum of a character over an orbit", {{"m", "modulus m"}, {"k", "exponents k"}, {"n", "character n"}}, cmd_weyl},
      {"strict-check", "common relations over a window of orbits", {{"m", "moduli, e.g. 7,11,13"}, {"k", "one exponent vector, or one per modulus separated by ';'"}, {"radius", "sup-norm search radius"}}, cmd_strict_check},
      {"orbit", "Kummer orbit moduli |sigma x|^2", {x, D, c, bins}, cmd_orbit},
      {"dgamma", "fraction of the orbit in the band [1-eps, 1+eps]", {x, eps, D, c, bins, {"gamma", "gamma in sin(gamma eps)", "1"}, {"marginal", "add the per-t marginal table", std::nullopt, true}}, cmd_dgamma},
      {"sigma-search", "Kummer elements in a box with |sigma x|^2 in the band", {x, {"arcs", "box over the rotation coordinates"}, eps, D, c}, cmd_sigma_search},
      {"factor-out", "factor a division point out of a radical sum", {x, D, c}, cmd_factor_out},
      {"height", "Weil height", {{"minpoly", "minimal polynomial, e.g. x^3-2"}, {"index", "root index", "0"}, {"radical", "positive rational a of a^(1/n)"}, {"n", "root order n"}}, cmd_height},
      {"kummer", "Kummer failure of a^(1/d) over Q(zeta_m)", {{"a", "generator(s)"}, {"d", "radical denominator(s)"}, {"m", "cyclotomic order"}}, cmd_kummer},
  };
}

// --- cache ----------------------------------------------------------------------

fs::path prepare_cache_dir(const std::string& dir) {
  fs::path p(dir);
  std::error_code ec;
  fs::create_directories(p, ec);
  if (ec || !fs::is_directory(p)) throw Error("cache directory '" + dir + "' cannot be created");
  fs::path probe = p / ".write-probe";
  {
    std::ofstream f(probe);
    if (!f) throw Error("cache directory '" + dir + "' is not writable");
  }
  fs::remove(probe, ec);
  return p;
}

std::optional<json> load_cached(const fs::path& file, const json& record, std::ostream& err) {
  std::ifstream in(file);
  if (!in) return std::nullopt;
  try {
    json stored = json::parse(in);
    if (stored.is_object() && stored.value("command", "") == record["command"] && stored.contains("inputs") &&
        stored["inputs"] == record["inputs"] && stored.contains("status") && stored["status"].is_string() &&
        stored.contains("results"))
      return stored;
  } catch (const json::exception&) {
  }
  err << "warning: corrupt cache entry " << file.string() << "; recomputing\n";
  return std::nullopt;
}

void store_cached(const fs::path& file, const json& record) {
  fs::path tmp = file;
  tmp += ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw Error("cannot write cache entry " + file.string());
    out << dump_json(record) << "\n";
  }
  fs::rename(tmp, file);
}

// --- output ---------------------------------------------------------------------

std::string csv_cell(const json& v) {
  std::string s;
  if (v.is_string())
    s = v.get<std::string>();
  else if (v.is_number_float())
    s = format_double(v.get<double>());
  else if (v.is_null())
    s = "";
  else
    s = v.dump();
  if (s.find_first_of(",\"\n") != std::string::npos) {
    std::string q = "\"";
    for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return q + "\"";
  }
  return s;
}

std::string to_csv(const json& record) {
  std::ostringstream os;
  const json& table = record.at("table");
  bool first = true;
  for (const auto& c : table.at("columns")) {
    os << (first ? "" : ",") << csv_cell(c);
    first = false;
  }
  os << "\n";
  for (const auto& row : table.at("rows")) {
    first = true;
    for (const auto& v : row) {
      os << (first ? "" : ",") << csv_cell(v);
      first = false;
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"cyclolab: exact and numeric experiments on cyclotomic sums, radicals and heights", "cyclolab"};
  app.require_subcommand(1);
  app.set_version_flag("--version", version());
  auto specs = commands();
  std::map<std::string, std::map<std::string, std::string>> storage;
  std::map<std::string, std::map<std::string, bool>> flags;
  struct Meta {
    std::string format = "json", out_file, cache;
    int threads = default_threads();
  };
  std::map<std::string, Meta> meta;
  for (const auto& spec : specs) {
    auto* sub = app.add_subcommand(spec.name, spec.help);
    auto& store = storage[spec.name];
    for (const auto& opt : spec.options) {
      if (opt.flag) {
        sub->add_flag("--" + opt.name, flags[spec.name][opt.name], opt.help);
      } else {
        store[opt.name] = opt.default_value.value_or("");
        auto* o = sub->add_option("--" + opt.name, store[opt.name], opt.help);
        if (opt.default_value) o->capture_default_str();
      }
    }
    auto& m = meta[spec.name];
    sub->add_option("--format", m.format, "json or csv")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
    sub->add_option("--out", m.out_file, "write the record to FILE");
    sub->add_option("--cache", m.cache, "cache directory (default: $CYCLOLAB_CACHE)");
    sub->add_option("--threads", m.threads, "worker threads (default: logical cores)");
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << version() << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kExitInput;
  }

  const CommandSpec* spec = nullptr;
  for (const auto& s : specs)
    if (app.got_subcommand(s.name)) spec = &s;
  if (!spec) {
    err << app.help();
    return kExitInput;
  }
  const Meta& m = meta[spec->name];

  Args a;
  a.threads = std::max(1, m.threads);
  json inputs = json::object();
  for (const auto& opt : spec->options) {
    std::string value = opt.flag ? (flags[spec->name][opt.name] ? "true" : "false") : storage[spec->name][opt.name];
    a.values[opt.name] = value;
    if (!value.empty()) inputs[opt.name] = value;
  }
  bool seeded = std::any_of(spec->options.begin(), spec->options.end(), [](const OptionSpec& o) { return o.name == "seed"; });

  json record = {{"command", spec->name}, {"inputs", inputs}, {"version", version()}};
  auto emit = [&](const json& rec) -> int {
    std::string text = m.format == "csv" ? to_csv(rec) : dump_json(rec) + "\n";
    if (m.out_file.empty()) {
      out << text;
    } else {
      std::ofstream f(m.out_file);
      if (!f) {
        err << "error: cannot write " << m.out_file << "\n";
        return kExitInput;
      }
      f << text;
    }
    return exit_code_for(rec.at("status").get<std::string>());
  };

  try {
    std::string cache_dir = m.cache;
    if (cache_dir.empty())
      if (const char* env = std::getenv("CYCLOLAB_CACHE")) cache_dir = env;
    std::optional<fs::path> cache_file;
    if (!cache_dir.empty()) {
      cache_file = prepare_cache_dir(cache_dir) / (cache_key(record) + ".json");
      if (auto stored = load_cached(*cache_file, record, err)) {
        (*stored)["cached"] = true;
        return emit(*stored);
      }
    }

    auto start = std::chrono::steady_clock::now();
    Outcome o = spec->handler(a);
    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

    record["status"] = o.status;
    record["results"] = o.results;
    record["witness"] = o.witness;
    record["residual"] = o.residual;
    record["certificate"] = o.certificate;
    json rows = json::array();
    for (const auto& row : o.table.rows) rows.push_back(row);
    record["table"] = {{"columns", o.table.columns}, {"rows", rows}};
    record["wall_time_ms"] = ms;
    record["seed"] = seeded ? json(a.integer("seed")) : json(nullptr);
    record["cached"] = false;
    if (cache_file) store_cached(*cache_file, record);
    return emit(record);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const InternalInconsistency& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }
}

}  // namespace cyclolab::cli
