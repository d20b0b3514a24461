#pragma once

// Command-line frontend. `run` is the whole program minus process setup, so
// tests can drive it with in-memory streams.
//
// Exit codes: 0 pass, 1 a verified claim failed, 2 budget exceeded,
// 3 internal consistency violation, 4 invalid input.

#include <charconv>
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dtorus/dtorus.hpp"
#include "json.hpp"

namespace dtorus::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitClaimFailed = 1;
inline constexpr int kExitBudget = 2;
inline constexpr int kExitConsistency = 3;
inline constexpr int kExitInput = 4;

using Json = nlohmann::ordered_json;

struct RunConfig {
  std::size_t budget = kDefaultBudget;
  int bits = 128;
  std::string format = "text";
};

/// One command's result: a JSON document plus the same content as a
/// summary (key/value) and an optional table for csv and text output.
struct Report {
  Json doc;
  std::vector<std::pair<std::string, std::string>> summary;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  int exit_code = kExitPass;
};

namespace detail {

inline std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

template <class T>
std::string join_ints(const std::vector<T>& v, const std::string& sep = " ") {
  std::vector<std::string> parts;
  for (const auto& x : v) parts.push_back(std::to_string(x));
  return join(parts, sep);
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

/// Value of an exact key to 30 significant digits, certified to 2^-bits.
inline std::string decimal(const CycContext& ctx, const CycElt& key, int bits) {
  return approx_value(ctx, key, std::max(bits, 112)).real.to_string(30);
}

inline Angle parse_angle(const std::string& text) {
  auto parse_int = [&](std::string_view s) {
    std::int64_t v = 0;
    const auto* end = s.data() + s.size();
    auto [p, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc() || p != end) throw PreconditionViolated("malformed angle '" + text + "'");
    return v;
  };
  const auto slash = text.find('/');
  const std::string_view sv(text);
  if (slash == std::string::npos) return Angle(parse_int(sv));
  const auto den = parse_int(sv.substr(slash + 1));
  if (den == 0) throw PreconditionViolated("zero denominator in angle '" + text + "'");
  return Angle(parse_int(sv.substr(0, slash)), den);
}

inline Json key_json(const CycElt& k) { return Json(k.coeffs); }

}  // namespace detail

// ---- commands ---------------------------------------------------------------

inline Report cmd_spectrum(int n, int d, const RunConfig& cfg) {
  const auto table = torus_spectrum(n, d, cfg.budget);
  const auto& ctx = context(n);
  Report r;
  r.doc = {{"schema", 1}, {"command", "spectrum"}, {"N", n}, {"d", d},
           {"total", table.total_count().str()}, {"distinct", table.size()}};
  r.summary = {{"N", std::to_string(n)}, {"d", std::to_string(d)},
               {"total", table.total_count().str()}, {"distinct", std::to_string(table.size())}};
  r.header = {"value_decimal", "multiplicity", "representative", "key_coeffs"};
  Json rows = Json::array();
  for (const auto& row : sorted_rows(table, std::max(cfg.bits, 128))) {
    const auto value = detail::decimal(ctx, *row.key, cfg.bits);
    const auto count = row.entry->count.str();
    rows.push_back({{"value_decimal", value},
                    {"key_coeffs", detail::key_json(*row.key)},
                    {"multiplicity", count},
                    {"representative", row.entry->representative}});
    r.rows.push_back({value, count, detail::join_ints(row.entry->representative),
                      detail::join_ints(row.key->coeffs)});
  }
  r.doc["rows"] = std::move(rows);
  return r;
}

inline Report cmd_mult(int n, int d, const std::vector<int>& tuple, const RunConfig& cfg) {
  check_tuple(n, d, tuple);
  const auto& ctx = context(n);
  const auto key = tuple_key(ctx, tuple);
  TorusTower tower(n, cfg.budget);
  const auto m = tower.multiplicity(key, d);
  Report r;
  r.doc = {{"schema", 1}, {"command", "mult"}, {"N", n}, {"d", d}, {"tuple", tuple},
           {"value_decimal", detail::decimal(ctx, key, cfg.bits)}, {"multiplicity", m.str()}};
  r.summary = {{"N", std::to_string(n)}, {"d", std::to_string(d)},
               {"tuple", detail::join_ints(tuple, ",")},
               {"value_decimal", detail::decimal(ctx, key, cfg.bits)}, {"multiplicity", m.str()}};
  if (d == 2) {
    const auto closed = d2_closed_form(n, tuple[0], tuple[1]);
    if (closed) {
      const bool agree = BigInt(*closed) == m;
      r.doc["closed_form"] = std::to_string(*closed);
      r.doc["closed_form_agrees"] = agree;
      r.summary.push_back({"closed_form", std::to_string(*closed)});
      r.summary.push_back({"closed_form_agrees", agree ? "true" : "false"});
      if (!agree) r.exit_code = kExitConsistency;
    } else {
      r.doc["closed_form"] = nullptr;
      r.summary.push_back({"closed_form", "not applicable"});
    }
  }
  return r;
}

inline void add_growth(Report& r, const GrowthClass& g) {
  r.doc["class"] = to_string(g.tag);
  r.summary.push_back({"class", to_string(g.tag)});
  if (g.tag != GrowthTag::LinearGrowth) return;
  r.doc["r"] = g.r;
  r.doc["residual_dim"] = g.residual_dim;
  r.doc["witness"] = {{"primes", g.witness->primes},
                      {"coeffs", g.witness->coeffs},
                      {"doubled_prime", g.witness->primes[g.witness->flagged]}};
  r.summary.push_back({"r", std::to_string(g.r)});
  r.summary.push_back({"residual_dim", std::to_string(g.residual_dim)});
  std::vector<std::string> terms;
  for (std::size_t l = 0; l < g.witness->primes.size(); ++l) {
    if (g.witness->coeffs[l] != 0) {
      terms.push_back(std::to_string(g.witness->coeffs[l]) + "*" + std::to_string(g.witness->primes[l]));
    }
  }
  r.summary.push_back({"witness", std::to_string(2 * g.r) + " = " + detail::join(terms, " + ")});
}

inline Report cmd_growth(int n, int d, const std::vector<int>& tuple, const RunConfig& cfg) {
  Report r;
  r.doc = {{"schema", 1}, {"command", "growth"}, {"N", n}, {"d", d}, {"tuple", tuple}};
  r.summary = {{"N", std::to_string(n)}, {"d", std::to_string(d)}, {"tuple", detail::join_ints(tuple, ",")}};
  add_growth(r, eigenvalue_growth(n, d, tuple, cfg.budget));
  return r;
}

inline Report cmd_zero(int n, int d, const RunConfig& cfg) {
  const bool criterion = is_zero_eigenvalue(n, d);
  TorusTower tower(n, cfg.budget);
  const auto zero = zero_elt(tower.ctx());
  const auto m = tower.multiplicity(zero, d);
  const bool exact = m > 0;
  Report r;
  r.doc = {{"schema", 1}, {"command", "zero"}, {"N", n}, {"d", d}, {"criterion", criterion},
           {"exact", exact}, {"multiplicity", m.str()}};
  r.summary = {{"N", std::to_string(n)}, {"d", std::to_string(d)},
               {"criterion", criterion ? "true" : "false"}, {"exact", exact ? "true" : "false"},
               {"multiplicity", m.str()}};
  if (criterion != exact) {
    r.exit_code = kExitConsistency;
    return r;
  }
  if (criterion) add_growth(r, zero_growth(n, d));
  return r;
}

inline Report cmd_cos4(const std::vector<std::string>& angles) {
  if (angles.size() != 4) throw PreconditionViolated("cos4 takes exactly four angles");
  Quadruple q;
  for (std::size_t i = 0; i < 4; ++i) q[i] = detail::parse_angle(angles[i]);
  const auto c = classify_cos4(q);
  std::vector<std::string> params, also;
  for (const auto& a : c.parameters) params.push_back(to_string(a));
  for (auto f : c.also_matches) also.push_back(to_string(f));
  std::vector<std::string> input;
  for (const auto& a : q) input.push_back(to_string(a));
  Report r;
  r.doc = {{"schema", 1}, {"command", "cos4"}, {"angles", input}, {"family", to_string(c.family)},
           {"parameters", params}, {"also_matches", also}};
  r.summary = {{"angles", detail::join(input, " ")}, {"family", to_string(c.family)}};
  if (!params.empty()) r.summary.push_back({"parameters", detail::join(params, " ")});
  if (c.family != Cos4Family::I && c.family != Cos4Family::II && c.family != Cos4Family::NotVanishing) {
    r.doc["variant"] = c.variant;
    r.summary.push_back({"variant", std::to_string(c.variant)});
  }
  if (!also.empty()) r.summary.push_back({"also_matches", detail::join(also, " ")});
  return r;
}

inline Report cmd_vanishing(int n, int max_len, bool all, const RunConfig& cfg) {
  const auto sums = minimal_vanishing_sums(n, max_len, cfg.budget);
  Report r;
  r.doc = {{"schema", 1}, {"command", "vanishing"}, {"N", n}, {"max_len", max_len}};
  r.header = {"size", "exponents", "minimal", "symmetric"};
  Json rows = Json::array();
  std::size_t minimal = 0;
  for (const auto& s : sums) {
    minimal += s.minimal;
    if (!all && !s.minimal) continue;
    std::string sym = "-";
    Json jsym = nullptr;
    try {
      if (auto rot = is_symmetric_rotation(s.roots)) {
        sym = "p=" + std::to_string(rot->prime) + " a=" + std::to_string(rot->rotation);
        jsym = {{"prime", rot->prime}, {"rotation", rot->rotation}};
      } else {
        sym = "no";
        jsym = false;
      }
    } catch (const NotApplicable&) {
    }
    rows.push_back({{"size", s.roots.size()}, {"exponents", s.roots.exponents},
                    {"minimal", s.minimal}, {"symmetric", jsym}});
    r.rows.push_back({std::to_string(s.roots.size()), detail::join_ints(s.roots.exponents),
                      s.minimal ? "true" : "false", sym});
  }
  r.doc["vanishing_count"] = sums.size();
  r.doc["minimal_count"] = minimal;
  r.doc["rows"] = std::move(rows);
  r.summary = {{"N", std::to_string(n)}, {"max_len", std::to_string(max_len)},
               {"vanishing_count", std::to_string(sums.size())}, {"minimal_count", std::to_string(minimal)}};
  return r;
}

inline Report cmd_zeta(const std::vector<int>& moduli, int d, double s, std::int64_t cutoff, const RunConfig& cfg) {
  Report r;
  r.doc = {{"schema", 1}, {"command", "zeta"}, {"s", s}, {"d", d}};
  r.header = {"kind", "N", "value_decimal", "radius"};
  Json rows = Json::array();
  for (int n : moduli) {
    const auto z = zeta_discrete(n, d, s, cfg.budget, std::max(cfg.bits, 128));
    const auto v = z.value.to_string(30), rad = z.radius.to_string(3);
    rows.push_back({{"kind", "discrete"}, {"N", n}, {"value_decimal", v}, {"radius", rad}});
    r.rows.push_back({"discrete", std::to_string(n), v, rad});
  }
  if (cutoff > 0) {
    const auto c = zeta_continuum_partial(s, cutoff, std::max(cfg.bits, 128));
    const auto v = c.to_string(30);
    rows.push_back({{"kind", "continuum"}, {"cutoff", cutoff}, {"value_decimal", v}});
    r.rows.push_back({"continuum", "-", v, "-"});
  }
  r.doc["rows"] = std::move(rows);
  std::ostringstream ss;
  ss << s;
  r.summary = {{"s", ss.str()}, {"d", std::to_string(d)}};
  return r;
}

// ---- verify -----------------------------------------------------------------

inline void finish_verify(Report& r, const std::string& what, const std::vector<std::string>& failures) {
  r.doc["check"] = what;
  r.doc["pass"] = failures.empty();
  r.doc["failures"] = failures;
  r.summary.insert(r.summary.begin(), {"check", what});
  r.summary.push_back({"result", failures.empty() ? "PASS" : "FAIL"});
  for (const auto& f : failures) r.summary.push_back({"failure", f});
  r.exit_code = failures.empty() ? kExitPass : kExitClaimFailed;
}

inline Report verify_bound24_range(int nmin, int nmax, const RunConfig& cfg) {
  Report r;
  r.doc = {{"schema", 1}, {"command", "verify"}, {"nmin", nmin}, {"nmax", nmax}};
  r.header = {"N", "max_multiplicity", "attaining"};
  std::vector<std::string> failures;
  BigInt best = 0;
  int best_n = 0;
  Json rows = Json::array();
  for (int n = nmin; n <= nmax; ++n) {
    try {
      const auto rep = verify_bound24(n, cfg.budget);
      if (rep.max_multiplicity > best) {
        best = rep.max_multiplicity;
        best_n = n;
      }
      rows.push_back({{"N", n}, {"max_multiplicity", rep.max_multiplicity.str()}, {"attaining", rep.attaining.size()}});
      r.rows.push_back({std::to_string(n), rep.max_multiplicity.str(), std::to_string(rep.attaining.size())});
    } catch (const Bound24Violated& e) {
      failures.push_back("N=" + std::to_string(n) + ": " + e.what());
    }
  }
  if (nmin <= 60 && 60 <= nmax) {
    const auto rep = verify_bound24(60, cfg.budget);
    const auto& ctx = context(60);
    std::vector<CycElt> expect{cos_key(ctx, 6), -cos_key(ctx, 6), cos_key(ctx, 12), -cos_key(ctx, 12)};
    auto got = rep.attaining;
    std::sort(expect.begin(), expect.end());
    std::sort(got.begin(), got.end());
    if (rep.max_multiplicity != 24 || got != expect) {
      failures.push_back("N=60 does not attain 24 exactly at +-2cos(pi/5), +-2cos(2pi/5)");
    }
  }
  r.doc["max"] = best.str();
  r.doc["argmax"] = best_n;
  r.doc["rows"] = std::move(rows);
  r.summary = {{"range", std::to_string(nmin) + ".." + std::to_string(nmax)},
               {"max", best.str()}, {"argmax", std::to_string(best_n)}};
  finish_verify(r, "bound24", failures);
  return r;
}

inline Report verify_table60_report(const RunConfig& cfg) {
  const auto chk = verify_table60(cfg.budget);
  const auto table = torus_spectrum(60, 2, cfg.budget);
  const auto& ctx = context(60);
  Report r;
  r.doc = {{"schema", 1}, {"command", "verify"}};
  r.header = {"status", "multiplicity", "value_decimal", "key_coeffs"};
  std::vector<std::string> failures;
  Json rows = Json::array();
  for (const auto& row : table60_reference()) {
    for (const auto& k : row.keys) {
      const auto c = table.count_of(k);
      const std::string status = c == row.multiplicity ? "listed" : "listed-mismatch";
      rows.push_back({{"status", status}, {"multiplicity", c.str()},
                      {"value_decimal", detail::decimal(ctx, k, cfg.bits)}, {"key_coeffs", k.coeffs}});
      r.rows.push_back({status, c.str(), detail::decimal(ctx, k, cfg.bits), detail::join_ints(k.coeffs)});
    }
  }
  for (const auto& [k, c] : chk.row_mismatches) {
    failures.push_back("listed value " + detail::decimal(ctx, k, cfg.bits) + " has multiplicity " + c.str());
  }
  for (const auto& [k, c] : chk.unlisted) {
    rows.push_back({{"status", "unlisted"}, {"multiplicity", c.str()},
                    {"value_decimal", detail::decimal(ctx, k, cfg.bits)}, {"key_coeffs", k.coeffs}});
    r.rows.push_back({"unlisted", c.str(), detail::decimal(ctx, k, cfg.bits), detail::join_ints(k.coeffs)});
  }
  if (!chk.unlisted.empty()) {
    failures.push_back(std::to_string(chk.unlisted.size()) + " eigenvalues with multiplicity > 8 are not in the reference table");
  }
  std::vector<std::string> mults;
  for (const auto& m : chk.computed_multiplicities) mults.push_back(m.str());
  r.doc["rows_match"] = chk.rows_match();
  r.doc["complete"] = chk.complete();
  r.doc["multiplicities"] = mults;
  r.doc["rows"] = std::move(rows);
  r.summary = {{"rows_match", chk.rows_match() ? "true" : "false"},
               {"complete", chk.complete() ? "true" : "false"},
               {"multiplicities", detail::join(mults, " ")}};
  finish_verify(r, "table60", failures);
  return r;
}

inline Report verify_zero_range(int nmax, int dmax, const RunConfig& cfg) {
  Report r;
  r.doc = {{"schema", 1}, {"command", "verify"}, {"nmax", nmax}, {"dmax", dmax}};
  std::vector<std::string> failures;
  std::size_t cases = 0, positive = 0;
  for (int n = 3; n <= nmax; ++n) {
    TorusTower tower(n, cfg.budget);
    const auto zero = zero_elt(tower.ctx());
    for (int d = 1; d <= dmax; ++d) {
      const bool crit = is_zero_eigenvalue(n, d), exact = tower.contains(zero, d);
      ++cases;
      positive += exact;
      if (crit != exact) {
        failures.push_back("N=" + std::to_string(n) + " d=" + std::to_string(d) + ": criterion " +
                           (crit ? "true" : "false") + ", exact " + (exact ? "true" : "false"));
      }
    }
  }
  r.doc["cases"] = cases;
  r.doc["zero_is_eigenvalue"] = positive;
  r.summary = {{"range", "N<=" + std::to_string(nmax) + " d<=" + std::to_string(dmax)},
               {"cases", std::to_string(cases)}, {"zero_is_eigenvalue", std::to_string(positive)}};
  finish_verify(r, "zero", failures);
  return r;
}

inline Report verify_cjk(double s, std::int64_t cutoff, const std::vector<int>& moduli, double gap,
                         const RunConfig& cfg) {
  const auto t = cjk_table(s, moduli, cutoff, cfg.budget, std::max(cfg.bits, 128));
  Report r;
  r.doc = {{"schema", 1}, {"command", "verify"}, {"s", s}, {"cutoff", cutoff},
           {"reference", t.reference.to_string(30)}};
  r.header = {"N", "value_decimal", "distance", "relative_gap"};
  std::vector<std::string> failures;
  Json rows = Json::array();
  std::optional<BigReal> prev;
  for (const auto& row : t.rows) {
    const BigReal dist = (row.value - t.reference).abs();
    const BigReal rel = dist / t.reference;
    if (prev && !(dist < *prev)) failures.push_back("distance does not decrease at N=" + std::to_string(row.modulus));
    prev = dist;
    rows.push_back({{"N", row.modulus}, {"value_decimal", row.value.to_string(30)},
                    {"distance", dist.to_string(6)}, {"relative_gap", rel.to_string(6)}});
    r.rows.push_back({std::to_string(row.modulus), row.value.to_string(30), dist.to_string(6), rel.to_string(6)});
  }
  if (!t.rows.empty()) {
    const double last = ((t.rows.back().value - t.reference).abs() / t.reference).to_double();
    if (!(last < gap)) failures.push_back("final relative gap " + std::to_string(last) + " >= " + std::to_string(gap));
  }
  r.doc["rows"] = std::move(rows);
  r.summary = {{"reference", t.reference.to_string(30)}};
  finish_verify(r, "cjk", failures);
  return r;
}

inline Report verify_semigroup(int nmax, int lmax, const RunConfig& cfg) {
  Report r;
  r.doc = {{"schema", 1}, {"command", "verify"}, {"nmax", nmax}, {"lmax", lmax}};
  std::vector<std::string> failures;
  std::size_t cases = 0;
  for (int n = 2; n <= nmax; ++n) {
    const auto exists = vanishing_lengths(n, lmax, cfg.budget);
    for (int len = 0; len <= lmax; ++len) {
      ++cases;
      const bool w = w_membership(n, len).has_value();
      if (w != exists[static_cast<std::size_t>(len)]) {
        failures.push_back("N=" + std::to_string(n) + " L=" + std::to_string(len));
      }
    }
  }
  r.doc["cases"] = cases;
  r.summary = {{"range", "N<=" + std::to_string(nmax) + " L<=" + std::to_string(lmax)},
               {"cases", std::to_string(cases)}};
  finish_verify(r, "semigroup", failures);
  return r;
}

// ---- output -----------------------------------------------------------------

inline void emit(const Report& r, const std::string& format, std::ostream& out) {
  if (format == "json") {
    out << r.doc.dump(2) << "\n";
    return;
  }
  if (format == "csv") {
    if (!r.header.empty()) {
      std::vector<std::string> h;
      for (const auto& x : r.header) h.push_back(detail::csv_field(x));
      out << detail::join(h, ",") << "\n";
      for (const auto& row : r.rows) {
        std::vector<std::string> f;
        for (const auto& x : row) f.push_back(detail::csv_field(x));
        out << detail::join(f, ",") << "\n";
      }
    } else {
      out << "key,value\n";
      for (const auto& [k, v] : r.summary) out << detail::csv_field(k) << "," << detail::csv_field(v) << "\n";
    }
    return;
  }
  for (const auto& [k, v] : r.summary) out << k << ": " << v << "\n";
  if (r.header.empty()) return;
  std::vector<std::size_t> width(r.header.size());
  for (std::size_t i = 0; i < width.size(); ++i) width[i] = r.header[i].size();
  for (const auto& row : r.rows)
    for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
  auto line = [&](const std::vector<std::string>& row) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      out << (i ? "  " : "");
      if (i + 1 == row.size()) {
        out << row[i];
      } else {
        out << std::left << std::setw(static_cast<int>(width[i])) << row[i];
      }
    }
    out << "\n";
  };
  line(r.header);
  for (const auto& row : r.rows) line(row);
}

// ---- entry point ------------------------------------------------------------

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact spectra of discrete tori"};
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig cfg;
  long long budget = static_cast<long long>(kDefaultBudget);
  app.add_option("--budget", budget, "max distinct keys per table")->envname("DTORUS_BUDGET");
  app.add_option("--bits", cfg.bits, "precision bits for printed values")->envname("DTORUS_BITS");
  app.add_option("--format", cfg.format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));

  int n = 0, d = 0;
  std::vector<int> tuple;
  auto needs_nd = [&](CLI::App* sub) {
    sub->add_option("--n", n, "modulus N")->required();
    sub->add_option("--d", d, "dimension d")->required();
  };
  auto* spectrum = app.add_subcommand("spectrum", "eigenvalue table of T^d_N");
  needs_nd(spectrum);
  auto* mult = app.add_subcommand("mult", "multiplicity of the eigenvalue at a tuple");
  needs_nd(mult);
  mult->add_option("--tuple", tuple, "k_1,...,k_d")->required()->delimiter(',');
  auto* growth = app.add_subcommand("growth", "Bounded or LinearGrowth class of an eigenvalue");
  needs_nd(growth);
  growth->add_option("--tuple", tuple, "k_1,...,k_d")->required()->delimiter(',');
  auto* zero = app.add_subcommand("zero", "zero eigenvalue: criterion, exact check, multiplicity");
  needs_nd(zero);
  std::vector<std::string> angles;
  auto* cos4 = app.add_subcommand("cos4", "classify a vanishing sum of four cosines");
  cos4->add_option("angles", angles, "four rational angles in units of pi")->required()->expected(4);
  int max_len = 6;
  bool all = false;
  auto* vanishing = app.add_subcommand("vanishing", "vanishing sums of N-th roots of unity");
  vanishing->add_option("--n", n, "modulus N")->required();
  vanishing->add_option("--max-len", max_len, "largest multiset size (<= 12)");
  vanishing->add_flag("--all", all, "include decomposable sums");
  double s = 2;
  std::vector<int> moduli;
  std::int64_t cutoff = 0;
  int zd = 2;
  auto* zeta = app.add_subcommand("zeta", "spectral zeta values");
  zeta->add_option("--n", moduli, "moduli N (comma separated)")->delimiter(',');
  zeta->add_option("--d", zd, "dimension d");
  zeta->add_option("--s", s, "real exponent s")->required();
  zeta->add_option("--cutoff", cutoff, "continuum partial sum over M <= cutoff");

  auto* verify = app.add_subcommand("verify", "check a claim over a range");
  verify->require_subcommand(1);
  verify->fallthrough();
  int nmin = 3, nmax = 420, dmax = 6, lmax = 8;
  auto* v_bound = verify->add_subcommand("bound24", "max nonzero multiplicity of T^2_N is at most 24");
  v_bound->add_option("--nmin", nmin);
  v_bound->add_option("--nmax", nmax);
  verify->add_subcommand("table60", "high-multiplicity table of T^2_60");
  auto* v_zero = verify->add_subcommand("zero", "zero-eigenvalue criterion against exact membership");
  v_zero->add_option("--nmax", nmax)->default_val(60);
  v_zero->add_option("--dmax", dmax);
  auto* v_cjk = verify->add_subcommand("cjk", "rescaled T^2_N zeta approaching the continuum");
  std::int64_t v_cutoff = 1'000'000;
  std::vector<int> v_moduli{16, 32, 64, 128};
  double gap = 0.02;
  v_cjk->add_option("--s", s);
  v_cjk->add_option("--cutoff", v_cutoff);
  v_cjk->add_option("--n", v_moduli)->delimiter(',');
  v_cjk->add_option("--gap", gap, "tolerance on the final relative gap");
  auto* v_semi = verify->add_subcommand("semigroup", "vanishing lengths against the prime semigroup");
  v_semi->add_option("--nmax", nmax)->default_val(30);
  v_semi->add_option("--lmax", lmax);

  std::vector<const char*> argv{"dtorus"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitInput;
  }
  // Checked here so that environment values are rejected, not silently ignored.
  if (budget <= 0 || cfg.bits < 64) {
    err << "invalid input: budget must be > 0 and bits >= 64\n";
    return kExitInput;
  }
  cfg.budget = static_cast<std::size_t>(budget);

  try {
    Report r;
    if (spectrum->parsed()) {
      r = cmd_spectrum(n, d, cfg);
    } else if (mult->parsed()) {
      r = cmd_mult(n, d, tuple, cfg);
    } else if (growth->parsed()) {
      r = cmd_growth(n, d, tuple, cfg);
    } else if (zero->parsed()) {
      r = cmd_zero(n, d, cfg);
    } else if (cos4->parsed()) {
      r = cmd_cos4(angles);
    } else if (vanishing->parsed()) {
      r = cmd_vanishing(n, max_len, all, cfg);
    } else if (zeta->parsed()) {
      r = cmd_zeta(moduli, zd, s, cutoff, cfg);
    } else if (v_bound->parsed()) {
      r = verify_bound24_range(nmin, nmax, cfg);
    } else if (v_zero->parsed()) {
      r = verify_zero_range(nmax, dmax, cfg);
    } else if (v_cjk->parsed()) {
      r = verify_cjk(s, v_cutoff, v_moduli, gap, cfg);
    } else if (v_semi->parsed()) {
      r = verify_semigroup(nmax, lmax, cfg);
    } else {
      r = verify_table60_report(cfg);
    }
    emit(r, cfg.format, out);
    return r.exit_code;
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << "\n";
    return kExitBudget;
  } catch (const std::logic_error& e) {
    // ConsistencyError, Bound24Violated and overflow of exact arithmetic.
    if (dynamic_cast<const std::invalid_argument*>(&e) || dynamic_cast<const std::domain_error*>(&e)) {
      err << "invalid input: " << e.what() << "\n";
      return kExitInput;
    }
    err << "internal consistency violation: " << e.what() << "\n";
    return kExitConsistency;
  } catch (const std::overflow_error& e) {
    err << "resource limit: " << e.what() << "\n";
    return kExitBudget;
  }
}

}  // namespace dtorus::cli
