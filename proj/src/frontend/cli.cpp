#include "fqdyn/frontend/cli.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <thread>

#include "CLI11.hpp"

#include "fqdyn/errors.hpp"
#include "fqdyn/frontend/report.hpp"

namespace fqdyn::frontend {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A ParseError together with the option whose value it came from.
struct InputError {
  ParseError error;
  std::string option;
};

struct Outcome {
  int code = kExitOk;
  json report;
  std::string table;  // CSV body, or help text
  bool text = false;  // print table instead of the report
};

// Caps that may come from the environment.  Order of precedence: flag, then
// environment, then the module default.
struct Setting {
  const char* name;
  const char* env;
};

constexpr Setting kDegreeCap{"degree_cap", "FQDYN_DEGREE_CAP"};
constexpr Setting kNMax{"n", "FQDYN_N_MAX"};
constexpr Setting kPostcrit{"postcrit_bound", "FQDYN_POSTCRIT_BOUND"};
constexpr Setting kPrecision{"precision_cap", "FQDYN_PRECISION_CAP"};

class Config {
 public:
  std::int64_t resolve(const Setting& s, const std::optional<std::int64_t>& flag, std::int64_t fallback) {
    std::int64_t value = fallback;
    std::string source = "default";
    if (const char* env = std::getenv(s.env); env && *env) {
      try {
        std::size_t used = 0;
        value = std::stoll(env, &used);
        if (used != std::string(env).size()) throw std::invalid_argument(env);
      } catch (const std::exception&) {
        throw UsageError(std::string(s.env) + " is not an integer: '" + env + "'");
      }
      source = "env";
    }
    if (flag) {
      value = *flag;
      source = "flag";
    }
    if (value < 0) throw UsageError(std::string(s.name) + " must be nonnegative");
    echo_[s.name] = {{"value", value}, {"source", source}};
    return value;
  }
  json echo() const { return json(echo_); }

 private:
  std::map<std::string, json> echo_;
};

struct Common {
  std::string field = "GF(7)";
  std::string format = "json";
  std::optional<std::int64_t> degree_cap, n, postcrit, precision;
};

template <class T, class F>
T parse_input(const std::string& option, const std::string& text, F&& parse) {
  try {
    return parse(text);
  } catch (const ParseError& e) {
    throw InputError{e, option};
  }
}

Rational parse_rational(const std::string& option, const std::string& text) {
  try {
    Rational r(text);
    return r;
  } catch (const std::exception&) {
    throw UsageError(option + ": not a rational number: '" + text + "'");
  }
}

std::vector<std::size_t> parse_rows(const std::string& text) {
  std::vector<std::size_t> rows;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const long v = std::stol(item, &used);
      if (used != item.size() || v < 0) throw std::invalid_argument(item);
      rows.push_back(static_cast<std::size_t>(v));
    } catch (const std::exception&) {
      throw UsageError("--rows: not a row index: '" + item + "'");
    }
  }
  return rows;
}

json envelope(const std::string& command, json inputs, const Config& cfg, json result, const std::string& status) {
  return {{"schema_version", kSchemaVersion},
          {"command", command},
          {"inputs", std::move(inputs)},
          {"config", cfg.echo()},
          {"result", std::move(result)},
          {"status", status}};
}

json error_report(const std::string& command, const std::string& kind, const std::string& message) {
  return {{"schema_version", kSchemaVersion},
          {"command", command},
          {"status", "error"},
          {"error", {{"kind", kind}, {"message", message}}}};
}

json error_report(const std::string& command, const InputError& ie) {
  json j = error_report(command, "parse", ie.error.what());
  const Span& s = ie.error.span();
  j["error"]["option"] = ie.option;
  j["error"]["line"] = s.line;
  j["error"]["column"] = s.column;
  j["error"]["offset"] = s.offset;
  j["error"]["length"] = s.length;
  j["error"]["expected"] = ie.error.expected();
  return j;
}

void require_format(const Common& c, bool csv_ok) {
  if (c.format != "json" && c.format != "csv") throw UsageError("--format must be json or csv");
  if (c.format == "csv" && !csv_ok) throw UsageError("csv output is only available for orbit, scan, lattes and mahler");
}

void add_common(CLI::App* sub, Common& c, bool with_n) {
  sub->set_help_flag("--help", "print this help and exit");
  sub->add_option("--field", c.field, "base field, GF(p) or GF(q)=GF(p)[u]/(m)")->capture_default_str();
  sub->add_option("--format", c.format, "json or csv")->capture_default_str();
  sub->add_option("--degree-cap", c.degree_cap, "abort iteration past this t-degree");
  sub->add_option("--postcrit-bound", c.postcrit, "largest n tried for condition (2)");
  sub->add_option("--precision-cap", c.precision, "largest Laurent precision");
  if (with_n) sub->add_option("--n", c.n, "number of iterates");
}

Outcome execute(const std::vector<std::string>& args, int jobs_default);

Outcome run_batch(const std::string& path, std::size_t jobs, const Common& common) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open batch file '" + path + "'");
  std::vector<std::pair<std::size_t, std::vector<std::string>>> lines;
  std::string line;
  for (std::size_t no = 1; std::getline(in, line); ++no) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    try {
      auto words = split_command_line(line);
      if (!words.empty() && words[0] == "batch") throw UsageError("line " + std::to_string(no) + ": nested batch");
      lines.emplace_back(no, std::move(words));
    } catch (const std::invalid_argument& e) {
      throw UsageError("line " + std::to_string(no) + ": " + e.what());
    }
  }

  std::vector<Outcome> results(lines.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < lines.size();) results[i] = execute(lines[i].second, 1);
  };
  const std::size_t n_threads = std::max<std::size_t>(1, std::min(jobs, lines.size()));
  std::vector<std::thread> pool;
  for (std::size_t i = 1; i < n_threads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  Outcome out;
  json items = json::array();
  std::string table;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    out.code = std::max(out.code, results[i].code);
    items.push_back({{"line", lines[i].first}, {"exit_code", results[i].code}, {"report", results[i].report}});
    if (common.format == "csv") table += "# line " + std::to_string(lines[i].first) + "\n" + results[i].table;
  }
  Config cfg;
  out.report = envelope("batch", {{"file", path}, {"jobs", jobs}}, cfg, {{"commands", items}},
                        out.code == kExitOk ? "ok" : "partial");
  out.table = table;
  return out;
}

Outcome execute(const std::vector<std::string>& args, int jobs_default) {
  const auto t0 = std::chrono::steady_clock::now();
  std::string command = args.empty() ? "" : args[0];

  CLI::App app{"Exact dynamics of rational maps over F_q(t)", "fqdyn"};
  app.require_subcommand(1);
  // -h is free for the family's h(x).
  app.set_help_flag("--help", "print this help and exit");
  app.set_help_all_flag("--help-all");

  Common c;
  std::string map_text, alpha_text = "t", eps_text = "1/10", h_text = "t", A_text, B_text, curve_text, P_text;
  std::string rows_text, file;
  std::size_t d = 6;
  unsigned j = 3;
  std::size_t jobs = static_cast<std::size_t>(jobs_default);
  bool no_pi = false, full = false;

  auto* check = app.add_subcommand("check", "hypotheses (1) and (2) for a map");
  add_common(check, c, false);
  check->add_option("--map", map_text, "rational map in x")->required();

  auto* family = app.add_subcommand("family", "certificate for the sample family");
  add_common(family, c, false);
  family->add_option("--d", d, "degree, at least 5")->capture_default_str();
  family->add_option("--h", h_text, "h(x) over F_q[t], degree at most d-6")->capture_default_str();

  auto* orbit_cmd = app.add_subcommand("orbit", "orbit table of a point");
  auto* scan = app.add_subcommand("scan", "integrality scan with height statistics");
  for (auto* sub : {orbit_cmd, scan}) {
    add_common(sub, c, true);
    sub->add_option("--map", map_text, "rational map in x")->required();
    sub->add_option("--alpha", alpha_text, "base point, oo or an element of K")->capture_default_str();
    sub->add_option("--eps", eps_text, "epsilon in (0, 1/5]")->capture_default_str();
  }
  scan->add_flag("--no-pi", no_pi, "skip the pi-side orbit");

  auto* riccati = app.add_subcommand("riccati", "the linear system (M|R) and its verdict");
  add_common(riccati, c, false);
  riccati->add_option("--map", map_text, "rational map in x")->required();
  riccati->add_flag("--full", full, "all 2d+1 rows instead of the listed ones");
  riccati->add_option("--rows", rows_text, "six comma separated rows to solve uniquely");

  auto* lattes = app.add_subcommand("lattes", "duplication map identities and height brackets");
  add_common(lattes, c, true);
  auto* optA = lattes->add_option("--A", A_text, "coefficient A of y^2 = x^3 + A x + B");
  auto* optB = lattes->add_option("--B", B_text, "coefficient B");
  auto* optCurve = lattes->add_option("--curve", curve_text, "\"y^2 = x^3 + A*x + B\"");
  optA->needs(optB);
  optB->needs(optA);
  optCurve->excludes(optA)->excludes(optB);
  lattes->add_option("--P", P_text, "point (x, y) for the height estimate");

  auto* mahler = app.add_subcommand("mahler", "approximation exponent probe for sum t^(-q^j)");
  add_common(mahler, c, false);
  mahler->add_option("--j", j, "largest j")->capture_default_str();

  auto* batch = app.add_subcommand("batch", "run the commands in a file, one per line");
  batch->set_help_flag("--help", "print this help and exit");
  batch->add_option("--file", file, "batch file")->required();
  batch->add_option("--jobs", jobs, "worker threads")->capture_default_str();
  batch->add_option("--format", c.format, "json or csv")->capture_default_str();

  Outcome out;
  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
    command = app.get_subcommands().front()->get_name();

    Config cfg;
    json inputs;
    json result;
    std::string status = "ok";

    if (command == "batch") {
      require_format(c, true);
      out = run_batch(file, std::max<std::size_t>(1, jobs), c);
    } else {
      const FieldPtr f = parse_input<FieldPtr>("--field", c.field, [](const std::string& s) { return parse_field(s); });
      inputs["field"] = render_field(f);

      if (command == "check") {
        require_format(c, false);
        const auto phi = parse_input<RationalMap>("--map", map_text, [&](const std::string& s) { return parse_map(s, f); });
        inputs["map"] = render_map(phi);
        const auto cap = cfg.resolve(kDegreeCap, c.degree_cap, kDefaultDegreeCap);
        const auto bound = cfg.resolve(kPostcrit, c.postcrit, kDefaultPostcritBound);
        const auto rep = check_hypotheses(phi, static_cast<std::size_t>(bound), cap);
        result = to_json(rep);
        result["degree"] = phi.degree();
      } else if (command == "family") {
        require_format(c, false);
        const auto h = parse_input<XPoly>("--h", h_text, [&](const std::string& s) { return parse_xpoly(s, f); });
        inputs["d"] = d;
        inputs["h"] = render_xpoly(h);
        if (d < 5) throw DomainError("the family needs d >= 5");
        result = to_json(check_family_prop35(d, h, f));
      } else if (command == "orbit" || command == "scan") {
        require_format(c, true);
        const auto phi = parse_input<RationalMap>("--map", map_text, [&](const std::string& s) { return parse_map(s, f); });
        const auto alpha =
            parse_input<ProjPointK>("--alpha", alpha_text, [&](const std::string& s) { return parse_point(s, f); });
        const Rational eps = parse_rational("--eps", eps_text);
        inputs["map"] = render_map(phi);
        inputs["alpha"] = render_point(alpha);
        inputs["eps"] = eps.str();
        const auto n = cfg.resolve(kNMax, c.n, 6);
        const auto cap = cfg.resolve(kDegreeCap, c.degree_cap, kDefaultDegreeCap);
        if (command == "orbit") {
          if (eps <= 0) throw DomainError("epsilon must be positive");
          const auto orb = orbit(phi, alpha, static_cast<std::size_t>(n), cap, eps);
          json recs = json::array(), pts = json::array();
          std::vector<OrbitRecord> table;
          for (const auto& s : orb.steps) {
            recs.push_back(to_json(s.record));
            pts.push_back(render_point(s.point));
            table.push_back(s.record);
          }
          result = {{"records", recs},
                    {"points", pts},
                    {"status", orb.status == OrbitStatus::Complete ? "COMPLETE" : "CAPPED"}};
          if (orb.cycle) result["cycle"] = {orb.cycle->first, orb.cycle->second};
          out.table = records_csv(table);
        } else {
          inputs["pi_side"] = !no_pi;
          ScanConfig sc;
          sc.epsilon = eps;
          sc.n_max = static_cast<std::size_t>(n);
          sc.degree_cap = cap;
          sc.run_pi_side = !no_pi;
          const auto rep = integrality_scan(phi, alpha, sc);
          result = to_json(rep);
          out.table = records_csv(rep.records);
        }
      } else if (command == "riccati") {
        require_format(c, false);
        const auto phi = parse_input<RationalMap>("--map", map_text, [&](const std::string& s) { return parse_map(s, f); });
        inputs["map"] = render_map(phi);
        inputs["full"] = full;
        const auto m = MapCoefficients::of(phi);
        const auto sys = full ? build_system_full(m) : build_system_closed_form(m);
        result["system"] = to_json(sys);
        result["verdict"] = to_json(consistency_check(sys));
        if (!rows_text.empty()) {
          const auto rows = parse_rows(rows_text);
          if (rows.size() != kUnknowns) throw UsageError("--rows needs exactly six rows");
          std::array<std::size_t, kUnknowns> sel{};
          for (std::size_t i = 0; i < kUnknowns; ++i) {
            if (rows[i] >= sys.row_count()) throw UsageError("--rows: row " + std::to_string(rows[i]) + " out of range");
            sel[i] = rows[i];
          }
          inputs["rows"] = rows;
          result["subsystem"] = to_json(unique_subsystem_solution(sys, sel));
        }
      } else if (command == "lattes") {
        require_format(c, true);
        std::optional<EllipticCurveK> E;
        if (!curve_text.empty()) {
          E = parse_input<EllipticCurveK>("--curve", curve_text, [&](const std::string& s) { return parse_curve(s, f); });
        } else if (!A_text.empty()) {
          const auto A = parse_input<RatK>("--A", A_text, [&](const std::string& s) { return parse_ratfunc(s, f); });
          const auto B = parse_input<RatK>("--B", B_text, [&](const std::string& s) { return parse_ratfunc(s, f); });
          E = EllipticCurveK::make(A, B);
        } else {
          throw UsageError("lattes needs --A and --B or --curve");
        }
        inputs["curve"] = render_curve(*E);
        const auto cert = lattes_system_checks(*E);
        result["certificate"] = to_json(cert);
        if (!P_text.empty()) {
          const auto P =
              parse_input<PointE>("--P", P_text, [&](const std::string& s) { return parse_curve_point(s, *E); });
          inputs["P"] = render_curve_point(P);
          const auto n = cfg.resolve(kNMax, c.n, 4);
          const auto cap = cfg.resolve(kDegreeCap, c.degree_cap, kDefaultDegreeCap);
          const auto est = canonical_height_estimate(*E, P, static_cast<std::size_t>(n), cap);
          result["heights"] = to_json(est);
          out.table = heights_csv(est);
        } else if (c.format == "csv") {
          throw UsageError("csv output for lattes needs --P");
        }
        if (!cert.falsified.empty()) {
          status = "identity_falsified";
          out.code = kExitFalsified;
        }
      } else if (command == "mahler") {
        require_format(c, true);
        inputs["j"] = j;
        const auto cap = cfg.resolve(kPrecision, c.precision, kDefaultPrecisionCap);
        const auto rows = mahler_exponent_probe(f, j, cap);
        json table = json::array();
        for (const auto& r : rows) table.push_back(to_json(r));
        result = {{"rows", table}, {"q", f->q()}};
        out.table = mahler_csv(rows);
      }
      out.report = envelope(command, std::move(inputs), cfg, std::move(result), status);
    }
    out.text = c.format == "csv";
  } catch (const CLI::CallForHelp&) {
    out.code = kExitOk;
    out.report = nullptr;
    out.table = app.help();
    out.text = true;
    return out;
  } catch (const CLI::CallForAllHelp&) {
    out.code = kExitOk;
    out.report = nullptr;
    out.table = app.help("", CLI::AppFormatMode::All);
    out.text = true;
    return out;
  } catch (const CLI::ParseError& e) {
    out = {kExitUsage, error_report(command, "usage", e.what()), ""};
  } catch (const UsageError& e) {
    out = {kExitUsage, error_report(command, "usage", e.what()), ""};
  } catch (const InputError& e) {
    out = {kExitUsage, error_report(command, e), ""};
  } catch (const ParseError& e) {
    out = {kExitUsage, error_report(command, InputError{e, ""}), ""};
  } catch (const DomainError& e) {
    out = {kExitUsage, error_report(command, "domain", e.what()), ""};
  } catch (const FieldMismatch& e) {
    out = {kExitUsage, error_report(command, "field_mismatch", e.what()), ""};
  } catch (const PrecisionCapExceeded& e) {
    out = {kExitUsage, error_report(command, "precision_cap", e.what()), ""};
  } catch (const IdentityFalsified& e) {
    out = {kExitFalsified, error_report(command, "identity_falsified", e.what()), ""};
  }
  const auto t1 = std::chrono::steady_clock::now();
  out.report["timing_ms"] = std::chrono::duration<double, std::milli>(t1 - t0).count();
  if (out.code == kExitUsage) {
    out.table.clear();
    out.text = false;
  }
  return out;
}

}  // namespace

std::vector<std::string> split_command_line(const std::string& line) {
  std::vector<std::string> words;
  std::string cur;
  bool in_word = false;
  char quote = 0;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quote) {
      if (ch == quote) {
        quote = 0;
      } else if (ch == '\\' && quote == '"' && i + 1 < line.size()) {
        cur += line[++i];
      } else {
        cur += ch;
      }
    } else if (ch == '\'' || ch == '"') {
      quote = ch;
      in_word = true;
    } else if (ch == '\\' && i + 1 < line.size()) {
      cur += line[++i];
      in_word = true;
    } else if (std::isspace(static_cast<unsigned char>(ch))) {
      if (in_word) words.push_back(std::move(cur));
      cur.clear();
      in_word = false;
    } else {
      cur += ch;
      in_word = true;
    }
  }
  if (quote) throw std::invalid_argument("unterminated quote");
  if (in_word) words.push_back(std::move(cur));
  return words;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  const unsigned hw = std::thread::hardware_concurrency();
  Outcome o = execute(args, static_cast<int>(hw ? hw : 1));
  if (o.text) {
    out << o.table;
    return o.code;
  }
  if (o.report.value("status", "") == "error") err << "fqdyn: " << o.report["error"].value("message", "") << '\n';
  out << o.report.dump(2) << '\n';
  return o.code;
}

}  // namespace fqdyn::frontend
