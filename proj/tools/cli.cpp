#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include "kmoment/char_sums.hpp"
#include "kmoment/codes.hpp"
#include "kmoment/family.hpp"
#include "kmoment/field.hpp"
#include "kmoment/moments.hpp"
#include "kmoment/symplectic.hpp"
#include "kmoment/verification.hpp"

namespace kmoment::cli {

namespace {

using Json = nlohmann::ordered_json;

struct Report {
  std::string command;
  Json parameters = Json::object();
  Json results = Json::object();
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  std::vector<Check> checks;
  double elapsed_seconds = 0;

  bool all_pass() const {
    for (const Check& c : checks) {
      if (!c.pass) return false;
    }
    return true;
  }
};

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void write_csv_row(std::ostream& out, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) out << (i ? "," : "") << csv_field(fields[i]);
  out << "\n";
}

void write_report(const Report& report, const std::string& format, bool with_elapsed, std::ostream& out) {
  if (format == "csv") {
    if (!report.columns.empty()) {
      write_csv_row(out, report.columns);
      for (const auto& row : report.rows) write_csv_row(out, row);
    }
    if (!report.checks.empty()) {
      if (!report.columns.empty()) out << "\n";
      write_csv_row(out, {"check", "expected", "actual", "pass"});
      for (const Check& c : report.checks) write_csv_row(out, {c.name, c.expected, c.actual, c.pass ? "true" : "false"});
    }
    return;
  }
  Json doc = Json::object();
  doc["command"] = report.command;
  doc["parameters"] = report.parameters;
  doc["results"] = report.results;
  Json checks = Json::array();
  for (const Check& c : report.checks) {
    checks.push_back(Json{{"name", c.name}, {"expected", c.expected}, {"actual", c.actual}, {"pass", c.pass}});
  }
  doc["checks"] = std::move(checks);
  if (with_elapsed) {
    std::ostringstream seconds;
    seconds << std::fixed << std::setprecision(3) << report.elapsed_seconds;
    doc["elapsed_seconds"] = seconds.str();
  }
  out << doc.dump(2) << "\n";
}

std::string str(const Int& value) { return value.get_str(); }

Json str_list(const std::vector<Int>& values) {
  Json out = Json::array();
  for (const Int& v : values) out.push_back(v.get_str());
  return out;
}

Fq parse_element(const Field& field, long value, const char* name) {
  if (value < 0 || value >= static_cast<long>(field.q())) {
    throw InvalidArgument(std::string(name) + "=" + std::to_string(value) + " is not an element of F_" +
                          std::to_string(field.q()));
  }
  return Fq(static_cast<std::uint32_t>(value));
}

// ---------------------------------------------------------------------------

struct Options {
  std::string format = "json";
  std::string out_path;
  bool no_elapsed = false;
  std::uint64_t budget = 0;
  std::uint64_t matrix_budget = 0;

  int r = 0;
  int n = 1;
  int m = 1;
  int h_max = 8;
  long a = -1;
  long c = 1;
  std::optional<int> coset;
  std::string mode = "enumerated";
  std::string family;
  std::string oracle = "both";
  std::string weight_method = "closed_form";
  std::string method = "all";
  std::string source = "auto";
  bool weights = false;
  std::size_t j_max = 10;
  bool all_fields = false;
  std::string suite = "all";
  bool degenerate = false;
};

Report field_command(const Options& o) {
  Report report;
  report.command = "field";
  report.parameters["r"] = o.all_fields || o.r == 0 ? "all" : std::to_string(o.r);
  report.columns = {"r", "q", "modulus", "modulus_bits", "primitive_element"};
  Json table = Json::array();
  const int first = o.all_fields || o.r == 0 ? 1 : o.r;
  const int last = o.all_fields || o.r == 0 ? kMaxFieldExponent : o.r;
  for (int r = first; r <= last; ++r) {
    const Field field(r);
    const std::string q = std::to_string(field.q());
    const std::string bits = std::to_string(field.modulus());
    const std::string generator = std::to_string(field.primitive_element().bits);
    table.push_back(Json{{"r", std::to_string(r)}, {"q", q}, {"modulus", field.modulus_string()},
                         {"modulus_bits", bits}, {"primitive_element", generator}});
    report.rows.push_back({std::to_string(r), q, field.modulus_string(), bits, generator});
    const auto image = field.artin_schreier_image();
    std::size_t kernel = 0;
    for (Fq x : field.elements()) kernel += field.trace(x) == 0;
    report.checks.push_back(make_check("|ker tr| = q/2, r=" + std::to_string(r), Int(field.q() / 2),
                                       Int(static_cast<unsigned long>(kernel))));
    report.checks.push_back(make_check("|Artin-Schreier image| = q/2, r=" + std::to_string(r), Int(field.q() / 2),
                                       Int(static_cast<unsigned long>(image.size()))));
  }
  report.results["fields"] = std::move(table);
  return report;
}

Report ksum_command(const Options& o, const Budget& budget) {
  const Field field(o.r);
  Report report;
  report.command = "ksum";
  report.parameters = Json{{"r", std::to_string(o.r)}, {"q", std::to_string(field.q())}, {"m", std::to_string(o.m)},
                           {"a", o.a < 0 ? "all" : std::to_string(o.a)}, {"c", std::to_string(o.c)}};
  const Fq c = parse_element(field, o.c, "c");
  std::vector<Fq> targets;
  if (o.a < 0) {
    targets = field.units();
  } else {
    targets.push_back(parse_element(field, o.a, "a"));
  }
  report.columns = {"a", "value"};
  Json values = Json::array();
  for (Fq a : targets) {
    const Int value = kloosterman_m(field, o.m, a, c, budget);
    values.push_back(Json{{"a", std::to_string(a.bits)}, {"value", str(value)}});
    report.rows.push_back({std::to_string(a.bits), str(value)});
    if (o.m == 1) {
      const bool weil = value * value <= 4 * static_cast<long>(field.q());
      report.checks.push_back(make_check("Weil bound a=" + std::to_string(a.bits), "true", weil ? "true" : "false"));
    } else if (o.m == 2) {
      const Int k = kloosterman(field, a, c);
      report.checks.push_back(
          make_check("K_2 = K^2 - q, a=" + std::to_string(a.bits), k * k - field.q(), value));
    }
  }
  report.results["values"] = std::move(values);
  return report;
}

Report hist_command(const Options& o) {
  const Field field(o.r);
  Report report;
  report.command = "hist";
  report.parameters = Json{{"r", std::to_string(o.r)}, {"q", std::to_string(field.q())}};
  const IntHistogram hist = value_histogram(field);
  report.columns = {"value", "count"};
  Json counts = Json::array();
  std::vector<Int> keys;
  for (const auto& [tau, count] : hist.counts) {
    counts.push_back(Json{{"value", std::to_string(tau)}, {"count", std::to_string(count)}});
    report.rows.push_back({std::to_string(tau), std::to_string(count)});
    keys.push_back(Int(static_cast<long>(tau)));
  }
  report.results["histogram"] = std::move(counts);
  std::vector<Int> range;
  const long q = field.q();
  for (long tau = -2 * q; tau <= 2 * q; ++tau) {
    if (tau * tau < 4 * q && ((tau % 4) + 4) % 4 == 3) range.push_back(tau);
  }
  report.checks.push_back(make_check("range = {tau = -1 mod 4, tau^2 < 4q}", range, keys));
  report.checks.push_back(make_check("total = q - 1", Int(q - 1), Int(static_cast<unsigned long>(hist.total()))));
  return report;
}

WeightMethod parse_weight_method(const std::string& text) {
  if (text == "direct") return WeightMethod::Direct;
  if (text == "macwilliams") return WeightMethod::MacWilliams;
  if (text == "closed_form" || text == "closed") return WeightMethod::ClosedForm;
  throw InvalidArgument("unknown weight method '" + text + "'");
}

Report moments_command(const Options& o, const Budget& budget) {
  const Field field(o.r);
  Report report;
  report.command = "moments";
  if (o.family.empty()) {
    // Plain brute-force moments of K_m.
    report.parameters = Json{{"r", std::to_string(o.r)}, {"q", std::to_string(field.q())},
                             {"m", std::to_string(o.m)}, {"h_max", std::to_string(o.h_max)}};
    const MomentTable table = brute_moments(field, o.m, o.h_max, budget);
    report.columns = {"h", "brute"};
    for (int h = 0; h <= o.h_max; ++h) report.rows.push_back({std::to_string(h), str(table.values[h])});
    report.results["brute"] = str_list(table.values);
    report.checks.push_back(make_check("MK^0 = q - 1", Int(field.q() - 1), table.values[0]));
    return report;
  }

  const Family family = parse_family(o.family);
  const WeightMethod method = parse_weight_method(o.weight_method);
  report.parameters = Json{{"family", to_string(family)}, {"n", std::to_string(o.n)}, {"r", std::to_string(o.r)},
                           {"q", std::to_string(field.q())}, {"h_max", std::to_string(o.h_max)},
                           {"oracle", o.oracle}, {"weights_method", to_string(method)}};
  if (o.oracle != "brute" && o.oracle != "recursion" && o.oracle != "both") {
    throw InvalidArgument("unknown oracle '" + o.oracle + "'");
  }
  const bool want_brute = o.oracle != "recursion";
  const bool want_recursion = o.oracle != "brute";

  std::vector<std::pair<MomentKind, std::vector<Int>>> brute;
  std::vector<std::pair<MomentKind, std::vector<Int>>> recursive;
  std::vector<MomentKind> kinds;
  if (family == Family::Minus) {
    kinds = {MomentKind::MkMinus};
  } else {
    kinds = {MomentKind::Mk2Plus, MomentKind::MkEvenPlus};
  }

  if (want_recursion) {
    BuildOptions build{.budget = budget};
    if (o.source == "enumerated") build.source = BuildOptions::Source::Enumerated;
    if (o.source == "predicted") build.source = BuildOptions::Source::Predicted;
    const CodeInstance code = build_code(field, family, o.n, build);
    const RecursionInput input = make_recursion_input(code, o.h_max, method, budget);
    report.results["A"] = str(input.a);
    report.results["B"] = str(input.b);
    report.results["N"] = str(input.length);
    report.results["C_j"] = str_list(input.weights);
    for (MomentKind kind : kinds) recursive.emplace_back(kind, recursive_moments(input, kind, o.degenerate).values);
  }
  if (want_brute) {
    for (MomentKind kind : kinds) {
      if (kind == MomentKind::Mk2Plus) {
        brute.emplace_back(kind, brute_moments(field, 2, o.h_max, budget).values);
      } else if (kind == MomentKind::MkEvenPlus) {
        const auto all = brute_moments(field, 1, 2 * o.h_max, budget).values;
        std::vector<Int> even;
        for (std::size_t h = 0; h < all.size(); h += 2) even.push_back(all[h]);
        brute.emplace_back(kind, std::move(even));
      } else {
        brute.emplace_back(kind, brute_moments(field, 1, o.h_max, budget).values);
      }
    }
  }

  report.columns = {"kind", "h"};
  if (want_brute) report.columns.push_back("brute");
  if (want_recursion) report.columns.push_back("recursion");
  Json tables = Json::object();
  for (std::size_t i = 0; i < kinds.size(); ++i) {
    Json entry = Json::object();
    if (want_brute) entry["brute"] = str_list(brute[i].second);
    if (want_recursion) entry["recursion"] = str_list(recursive[i].second);
    tables[to_string(kinds[i])] = std::move(entry);
    for (int h = 0; h <= o.h_max; ++h) {
      std::vector<std::string> row = {to_string(kinds[i]), std::to_string(h)};
      if (want_brute) row.push_back(str(brute[i].second[h]));
      if (want_recursion) row.push_back(str(recursive[i].second[h]));
      report.rows.push_back(std::move(row));
    }
    if (want_brute && want_recursion) {
      report.checks.push_back(make_check(to_string(kinds[i]) + " recursion = brute force", brute[i].second,
                                         recursive[i].second));
    }
  }
  report.results["moments"] = std::move(tables);
  return report;
}

Json size_report_json(const SizeReport& s) {
  Json out = Json::object();
  out["n"] = std::to_string(s.n);
  out["q"] = std::to_string(s.q);
  out["gl_orders"] = str_list(s.gl_orders);
  out["q_binomials"] = str_list(s.q_binomials);
  out["parabolic_order"] = str(s.parabolic_order);
  out["stabilizer_orders"] = str_list(s.stabilizer_orders);
  out["transversal_sizes"] = str_list(s.transversal_sizes);
  out["double_coset_sizes"] = str_list(s.double_coset_sizes);
  if (s.dc_minus) out["dc_minus"] = str(*s.dc_minus);
  if (s.dc_plus) out["dc_plus"] = str(*s.dc_plus);
  out["symplectic_order"] = str(s.symplectic_order);
  out["alternating_counts"] = str_list(s.alternating_counts);
  out["alternating_counts_as_printed"] = str_list(s.alternating_counts_printed);
  out["q_binomial_theorem_holds"] = s.q_binomial_theorem_holds;
  out["partition_holds"] = s.partition_holds;
  return out;
}

Report group_command(const Options& o, const Budget& budget) {
  const Field field(o.r);
  const long q = field.q();
  if (o.mode != "enumerated" && o.mode != "predicted") throw InvalidArgument("unknown mode '" + o.mode + "'");
  const bool enumerated = o.mode == "enumerated";
  Report report;
  report.command = "group";
  report.parameters = Json{{"n", std::to_string(o.n)}, {"r", std::to_string(o.r)}, {"q", std::to_string(q)},
                           {"coset", o.coset ? std::to_string(*o.coset) : "all"}, {"mode", o.mode}};
  const SizeReport sizes = predicted_sizes(o.n, q);
  report.results["sizes"] = size_report_json(sizes);
  report.checks.push_back(make_check("q-binomial theorem at x=-q", "true", sizes.q_binomial_theorem_holds ? "true" : "false"));
  report.checks.push_back(make_check("|A_r| |A_r\\P| = |P|", "true", sizes.stabilizer_index_holds ? "true" : "false"));

  report.columns = {"coset", "beta", "count"};
  std::vector<int> cosets;
  if (o.coset) {
    if (*o.coset < 0 || *o.coset > o.n) throw InvalidArgument("coset index outside 0..n");
    cosets.push_back(*o.coset);
  } else {
    for (int r = 0; r <= o.n; ++r) cosets.push_back(r);
  }

  Json per_coset = Json::array();
  Int enumerated_total = 0;
  for (int r : cosets) {
    Json entry = Json::object();
    entry["coset"] = std::to_string(r);
    entry["predicted_size"] = str(sizes.double_coset_sizes[r]);
    std::optional<FqHistogram> histogram;
    if (enumerated) {
      const DoubleCosetTraces traces = enumerate_double_coset(field, o.n, r, budget);
      entry["enumerated_size"] = str(traces.size);
      enumerated_total += traces.size;
      report.checks.push_back(make_check("|P sigma_r P| r=" + std::to_string(r), sizes.double_coset_sizes[r], traces.size));
      histogram = traces.histogram;
    } else if ((o.n % 2 == 1 && r == o.n - 1) || (o.n % 2 == 0 && r == o.n - 2)) {
      histogram = predicted_trace_histogram(field, o.n, r);
    }
    if (histogram) {
      entry["trace_histogram"] = str_list(histogram->counts);
      for (Fq beta : field.elements()) {
        report.rows.push_back({std::to_string(r), std::to_string(beta.bits), str(histogram->at(beta))});
      }
    }
    Json sums = Json::array();
    for (Fq a : field.units()) {
      const Int predicted = predicted_dc_character_sum(field, o.n, r, a);
      Json s{{"a", std::to_string(a.bits)}, {"predicted", str(predicted)}};
      if (enumerated) {
        const Int measured = character_sum_from_histogram(field, *histogram, a);
        s["enumerated"] = str(measured);
        report.checks.push_back(
            make_check("character sum r=" + std::to_string(r) + " a=" + std::to_string(a.bits), predicted, measured));
      }
      sums.push_back(std::move(s));
    }
    entry["character_sums"] = std::move(sums);
    per_coset.push_back(std::move(entry));
  }
  report.results["cosets"] = std::move(per_coset);
  if (enumerated && !o.coset) {
    report.results["enumerated_symplectic_order"] = str(enumerated_total);
    report.checks.push_back(make_check("|Sp(2n,q)|", sizes.symplectic_order, enumerated_total));
  }
  return report;
}

Report code_command(const Options& o, const Budget& budget) {
  const Field field(o.r);
  const Family family = parse_family(o.family);
  Report report;
  report.command = "code";
  report.parameters = Json{{"family", to_string(family)}, {"n", std::to_string(o.n)}, {"r", std::to_string(o.r)},
                           {"q", std::to_string(field.q())}, {"source", o.source}};
  BuildOptions build{.budget = budget};
  if (o.source == "enumerated") {
    build.source = BuildOptions::Source::Enumerated;
  } else if (o.source == "predicted") {
    build.source = BuildOptions::Source::Predicted;
  } else if (o.source != "auto") {
    throw InvalidArgument("unknown source '" + o.source + "'");
  }
  const CodeInstance code = build_code(field, family, o.n, build);
  report.results["A"] = str(code.constants.a);
  report.results["B"] = str(code.constants.b);
  report.results["length"] = str(code.constants.length);
  report.results["histogram_source"] = code.source == HistogramSource::Enumerated ? "enumerated" : "predicted";
  report.results["trace_histogram"] = str_list(code.histogram.counts);
  report.results["dual_dimension"] = std::to_string(code.dual_dimension);
  report.checks.push_back(make_check("dual dimension", Int(expected_dual_dimension(family, o.n, field)),
                                     Int(code.dual_dimension)));

  Json weights = Json::array();
  for (Fq a : field.elements()) {
    const Int measured = dual_weight(code, a, Mode::Enumerated);
    const Int predicted = dual_weight(code, a, Mode::Predicted);
    weights.push_back(Json{{"a", std::to_string(a.bits)}, {"measured", str(measured)}, {"predicted", str(predicted)}});
    report.checks.push_back(make_check("dual weight a=" + std::to_string(a.bits), predicted, measured));
  }
  report.results["dual_weights"] = std::move(weights);

  if (o.weights) {
    std::vector<WeightMethod> methods;
    if (o.method == "all") {
      methods = {WeightMethod::Direct, WeightMethod::ClosedForm, WeightMethod::MacWilliams};
    } else {
      methods = {parse_weight_method(o.method)};
    }
    Json distributions = Json::object();
    std::vector<std::vector<Int>> computed;
    for (WeightMethod m : methods) {
      computed.push_back(weight_distribution(code, o.j_max, m, budget).counts);
      distributions[to_string(m)] = str_list(computed.back());
    }
    report.results["weight_distribution"] = std::move(distributions);
    report.columns = {"j"};
    for (WeightMethod m : methods) report.columns.push_back(to_string(m));
    for (std::size_t j = 0; j < computed.front().size(); ++j) {
      std::vector<std::string> row = {std::to_string(j)};
      for (const auto& counts : computed) row.push_back(str(counts[j]));
      report.rows.push_back(std::move(row));
    }
    for (std::size_t i = 1; i < methods.size(); ++i) {
      report.checks.push_back(
          make_check(to_string(methods[0]) + " = " + to_string(methods[i]), computed[0], computed[i]));
    }
    report.checks.push_back(make_check("C_0 = 1", Int(1), computed.front()[0]));
  } else {
    report.columns = {"a", "measured", "predicted"};
    for (Fq a : field.elements()) {
      report.rows.push_back({std::to_string(a.bits), str(dual_weight(code, a, Mode::Enumerated)),
                             str(dual_weight(code, a, Mode::Predicted))});
    }
  }
  return report;
}

Report verify_command(const Options& o, const Budget& budget) {
  Report report;
  report.command = "verify";
  report.parameters = Json{{"suite", o.suite}};
  report.columns = {"criterion", "key", "pass", "checks", "seconds", "limit_seconds"};
  Json list = Json::array();
  for (int id : select_criteria(o.suite)) {
    const CriterionResult result = run_criterion(id, budget);
    std::size_t passed = 0;
    for (const Check& c : result.checks) {
      passed += c.pass;
      report.checks.push_back(Check{std::to_string(id) + "/" + c.name, c.expected, c.actual, c.pass});
    }
    if (!result.error.empty()) report.checks.push_back(make_check(std::to_string(id) + "/error", "", result.error));
    report.checks.push_back(make_check(std::to_string(id) + "/runtime under " +
                                           std::to_string(static_cast<int>(result.criterion.limit_seconds)) + " s",
                                       "true", result.within_time() ? "true" : "false"));
    const std::string counted = std::to_string(passed) + "/" + std::to_string(result.checks.size());
    list.push_back(Json{{"criterion", std::to_string(id)},
                        {"key", result.criterion.key},
                        {"title", result.criterion.title},
                        {"pass", result.pass()},
                        {"checks", counted}});
    std::ostringstream seconds;
    seconds << std::fixed << std::setprecision(2) << result.seconds;
    report.rows.push_back({std::to_string(id), result.criterion.key, result.pass() ? "true" : "false", counted,
                           seconds.str(), std::to_string(static_cast<int>(result.criterion.limit_seconds))});
  }
  report.results["criteria"] = std::move(list);
  return report;
}

std::uint64_t env_budget() {
  if (const char* value = std::getenv("KMOMENT_BUDGET")) {
    try {
      return std::stoull(value);
    } catch (const std::exception&) {
      throw InvalidArgument(std::string("KMOMENT_BUDGET is not a number: ") + value);
    }
  }
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Kloosterman moments, symplectic double cosets and their binary codes", "kmoment"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--out", o.out_path, "write the report to a file");
    sub->add_option("--budget", o.budget, "inner-loop iteration budget");
    sub->add_option("--matrix-budget", o.matrix_budget, "stored-matrix budget");
    sub->add_flag("--no-elapsed", o.no_elapsed, "omit the elapsed time");
  };

  auto* field = app.add_subcommand("field", "field representation and modulus table");
  add_common(field);
  field->add_option("--r", o.r, "field exponent (q = 2^r); omit for the whole table");
  field->add_flag("--all", o.all_fields, "print every supported field");

  auto* ksum = app.add_subcommand("ksum", "Kloosterman sums K_m(lambda_c; a)");
  add_common(ksum);
  ksum->add_option("--r", o.r, "field exponent")->required();
  ksum->add_option("--m", o.m, "dimension");
  ksum->add_option("--a", o.a, "element encoding of a; omit for all a");
  ksum->add_option("--c", o.c, "character twist c");

  auto* hist = app.add_subcommand("hist", "value histogram of K(lambda; a)");
  add_common(hist);
  hist->add_option("--r", o.r, "field exponent")->required();

  auto* moments = app.add_subcommand("moments", "power moments, brute force and recursive");
  add_common(moments);
  moments->add_option("--r", o.r, "field exponent")->required();
  moments->add_option("--family", o.family, "minus or plus; omit for plain brute-force moments");
  moments->add_option("--n", o.n, "symplectic rank");
  moments->add_option("--m", o.m, "Kloosterman dimension for plain moments");
  moments->add_option("--h-max", o.h_max, "highest moment order");
  moments->add_option("--oracle", o.oracle, "brute, recursion or both");
  moments->add_option("--weights-method", o.weight_method, "closed_form, direct or macwilliams");
  moments->add_option("--source", o.source, "auto, enumerated or predicted trace histogram");
  moments->add_flag("--allow-degenerate", o.degenerate, "evaluate the recursion outside its range of validity");

  auto* group = app.add_subcommand("group", "Sp(2n,q) sizes, double cosets and exponential sums");
  add_common(group);
  group->add_option("--n", o.n, "symplectic rank")->required();
  group->add_option("--r", o.r, "field exponent")->required();
  group->add_option("--coset", o.coset, "Bruhat index of a single double coset");
  group->add_option("--mode", o.mode, "enumerated or predicted");
  std::vector<std::string> report_format;
  group->add_option("--report", report_format, "json or csv")->expected(0, 1);

  auto* code = app.add_subcommand("code", "binary codes C(DC-/+(n,q))");
  add_common(code);
  code->add_option("--family", o.family, "minus or plus")->required();
  code->add_option("--n", o.n, "symplectic rank")->required();
  code->add_option("--r", o.r, "field exponent")->required();
  code->add_flag("--weights", o.weights, "compute the weight distribution");
  code->add_option("--j-max", o.j_max, "highest weight to compute");
  code->add_option("--method", o.method, "direct, closed_form, macwilliams or all");
  code->add_option("--source", o.source, "auto, enumerated or predicted trace histogram");

  auto* verify = app.add_subcommand("verify", "run the acceptance criteria");
  add_common(verify);
  verify->add_option("--suite", o.suite, "all, a criterion number or key");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();  // program name
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kAllChecksPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  }
  if (!report_format.empty() && !report_format.front().empty()) o.format = report_format.front();
  if (o.format != "json" && o.format != "csv") {
    err << "error: unknown format '" << o.format << "'\n";
    return kUsageError;
  }

  try {
    Budget budget;
    if (const std::uint64_t from_env = env_budget()) budget.iterations = from_env;
    if (o.budget) budget.iterations = o.budget;
    if (o.matrix_budget) budget.stored_matrices = o.matrix_budget;

    const auto start = std::chrono::steady_clock::now();
    Report report;
    if (field->parsed()) {
      report = field_command(o);
    } else if (ksum->parsed()) {
      report = ksum_command(o, budget);
    } else if (hist->parsed()) {
      report = hist_command(o);
    } else if (moments->parsed()) {
      report = moments_command(o, budget);
    } else if (group->parsed()) {
      report = group_command(o, budget);
    } else if (code->parsed()) {
      report = code_command(o, budget);
    } else {
      report = verify_command(o, budget);
    }
    report.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    if (o.out_path.empty()) {
      write_report(report, o.format, !o.no_elapsed, out);
    } else {
      std::ofstream file(o.out_path);
      if (!file) throw InvalidArgument("cannot open " + o.out_path);
      write_report(report, o.format, !o.no_elapsed, file);
    }
    return report.all_pass() ? kAllChecksPass : kCheckFailed;
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << "\n";
    return kBudgetExceeded;
  } catch (const InternalInconsistency& e) {
    err << "inconsistency: " << e.what() << "\n";
    return kCheckFailed;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  }
}

}  // namespace kmoment::cli
