#include "twistcheck/app.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "twistcheck/derivation.hpp"
#include "twistcheck/milnor.hpp"
#include "twistcheck/relations.hpp"

namespace twistcheck {

using nlohmann::json;

namespace {

struct Usage : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Usage("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json integer_json(const Integer& x) {
  if (x >= std::numeric_limits<long long>::min() && x <= std::numeric_limits<long long>::max()) {
    return x.convert_to<long long>();
  }
  return x.str();
}

json rational_json(const Rational& q) {
  if (denominator(q) == 1) return integer_json(numerator(q));
  return format_rational(q);
}

std::vector<Rational> parse_rational_list(const std::string& text) {
  std::vector<Rational> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(std::remove_if(item.begin(), item.end(), ::isspace), item.end());
    if (item.empty()) throw Usage("empty entry in list '" + text + "'");
    try {
      std::size_t slash = item.find('/');
      if (slash == std::string::npos) {
        out.emplace_back(Integer(item));
      } else {
        Integer den(item.substr(slash + 1));
        if (den == 0) throw Usage("zero denominator in '" + item + "'");
        out.emplace_back(Integer(item.substr(0, slash)), den);
      }
    } catch (const std::runtime_error&) {
      throw Usage("not a rational number: '" + item + "'");
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// verify

struct AssertJob {
  const Directive* directive;
  std::shared_ptr<const SurfaceModel> model;
  Engine engine;
};

std::string outcome_line(const VerificationReport& r) {
  std::string s;
  if (r.homology.outcome != Outcome::not_run) s += "homology " + outcome_name(r.homology.outcome);
  if (r.exact.outcome != Outcome::not_run || r.engine != Engine::homology) {
    if (!s.empty()) s += ", ";
    s += "exact " + outcome_name(r.exact.outcome);
  }
  return s;
}

int cmd_verify(const std::string& path, const std::optional<Engine>& override, bool as_json,
               int verbosity, unsigned jobs, std::ostream& out, std::ostream& err) {
  std::string text = read_file(path);
  std::vector<Directive> directives = parse_script(text);

  // Resolve and bind everything before running anything.
  std::vector<AssertJob> work;
  for (const Directive& d : directives) {
    if (d.kind != Directive::Kind::assert_) continue;
    auto model = resolve_surface(d.surface);
    try {
      bind(*model, *d.equation.lhs);
      bind(*model, *d.equation.rhs);
    } catch (const BindError& e) {
      throw BindError(e.name(), {d.line, e.position().column});
    }
    Engine engine = override.value_or(d.engine.value_or(Engine::both));
    if (engine == Engine::exact && !model->is_exact()) {
      throw UnsupportedError("line " + std::to_string(d.line) +
                             ": the exact engine is not available on " + model->name);
    }
    work.push_back({&d, model, engine});
  }
  if (work.empty()) throw Usage(path + ": no assertions");

  std::vector<VerificationReport> reports(work.size());
  std::vector<std::string> failures(work.size());
  jobs = std::max(1u, std::min<unsigned>(jobs, unsigned(work.size())));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < work.size(); i = next++) {
      try {
        reports[i] = verify(*work[i].model, work[i].directive->equation, work[i].engine);
      } catch (const std::exception& e) {
        failures[i] = e.what();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < jobs; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (std::size_t i = 0; i < work.size(); ++i) {
    if (!failures[i].empty()) {
      throw Error("line " + std::to_string(work[i].directive->line) + ": " + failures[i]);
    }
  }

  std::size_t verified = 0, necessary = 0, refuted = 0;
  json results = json::array();
  std::ostringstream text_out;
  for (std::size_t i = 0; i < work.size(); ++i) {
    const VerificationReport& r = reports[i];
    const Directive& d = *work[i].directive;
    if (r.refuted()) {
      ++refuted;
    } else if (r.verified()) {
      ++verified;
    } else {
      ++necessary;
    }
    if (as_json) {
      json j;
      j["line"] = d.line;
      j["surface"] = r.surface;
      j["statement"] = r.statement;
      j["engine"] = engine_name(r.engine);
      j["homology"] = outcome_name(r.homology.outcome);
      j["exact"] = outcome_name(r.exact.outcome);
      j["verdict"] = r.verdict();
      std::string w = r.homology.outcome == Outcome::fail ? r.homology.witness : r.exact.witness;
      j["witness"] = w.empty() ? json(nullptr) : json(w);
      if (verbosity >= 2) {
        std::string wd = r.homology.outcome == Outcome::fail ? r.homology.witness_detail
                                                             : r.exact.witness_detail;
        j["witness_detail"] = wd.empty() ? json(nullptr) : json(wd);
      }
      j["seconds"] = r.seconds;
      results.push_back(std::move(j));
    } else {
      text_out << "line " << d.line << ": " << r.verdict() << "  " << d.source << "  ["
               << r.surface << "; " << outcome_line(r);
      if (verbosity >= 1) text_out << "; " << std::fixed << std::setprecision(3) << r.seconds << " s";
      text_out << "]\n";
      if (r.refuted()) {
        const EngineResult& f = r.homology.outcome == Outcome::fail ? r.homology : r.exact;
        text_out << "  witness: " << f.witness << "\n";
        if (verbosity >= 2) {
          std::istringstream lines(f.witness_detail);
          std::string l;
          while (std::getline(lines, l)) text_out << "    " << l << "\n";
        }
      }
    }
  }
  int code = refuted > 0 ? kExitRefuted : kExitOk;
  if (as_json) {
    json doc;
    doc["script"] = path;
    doc["results"] = results;
    doc["summary"] = {{"total", work.size()},
                      {"verified", verified},
                      {"necessary_condition_only", necessary},
                      {"refuted", refuted}};
    doc["exit_code"] = code;
    out << doc.dump(2) << "\n";
  } else {
    out << text_out.str();
    out << work.size() << " assertion" << (work.size() == 1 ? "" : "s") << ": " << verified
        << " verified, " << necessary << " passed (necessary condition only), " << refuted
        << " refuted\n";
  }
  (void)err;
  return code;
}

// ---------------------------------------------------------------------------
// surface validate

int cmd_surface_validate(const std::string& target, bool as_json, int verbosity,
                         std::ostream& out) {
  std::shared_ptr<const SurfaceModel> model;
  bool is_path = target.find('/') != std::string::npos ||
                 (target.size() > 5 && target.substr(target.size() - 5) == ".json");
  if (is_path) {
    read_file(target);  // distinguishes unreadable files from malformed ones
    model = std::make_shared<const SurfaceModel>(load_surface_file(target));
  } else {
    model = resolve_surface(target);
  }
  ValidationReport report = validate(*model);
  if (as_json) {
    json checks = json::array();
    for (const CheckResult& c : report.checks) {
      json j = {{"check", c.check}, {"subject", c.subject}, {"passed", c.passed}};
      j["witness"] = c.passed ? json(nullptr) : json(c.witness);
      checks.push_back(std::move(j));
    }
    json doc = {{"surface", report.surface},
                {"level", model->is_exact() ? "exact" : "homology"},
                {"passed", report.passed()},
                {"checks", checks}};
    out << doc.dump(2) << "\n";
  } else {
    auto failures = report.failures();
    out << "surface " << report.surface << " (" << (model->is_exact() ? "exact" : "homology")
        << " level): " << report.checks.size() << " checks, " << failures.size() << " failed\n";
    for (const CheckResult& c : report.checks) {
      if (c.passed && verbosity < 1) continue;
      out << "  " << (c.passed ? "ok   " : "FAIL ") << c.check;
      if (!c.subject.empty()) out << " [" << c.subject << "]";
      if (!c.passed) out << ": " << c.witness;
      out << "\n";
    }
  }
  return report.passed() ? kExitOk : kExitRefuted;
}

// ---------------------------------------------------------------------------
// derivation

int cmd_derivation(const std::string& path, bool as_json, std::ostream& out) {
  std::string text = read_file(path);
  DerivationScript script = parse_derivation(text);
  DerivationReport report = check_derivation(script);
  if (as_json) {
    json steps = json::array();
    for (const StepReport& s : report.steps) {
      json j = {{"index", s.index}, {"line", s.line}, {"rule", s.rule}, {"ok", s.result.ok}};
      j["message"] = s.result.ok ? json(nullptr) : json(s.result.message);
      steps.push_back(std::move(j));
    }
    json doc = {{"script", path},
                {"surface", report.surface},
                {"initial_verified", report.initial_verified},
                {"final_verified", report.final_verified},
                {"steps", steps},
                {"notes", report.notes},
                {"ok", report.ok()}};
    auto v = report.first_violation();
    doc["first_violation"] = v ? json(*v) : json(nullptr);
    out << doc.dump(2) << "\n";
  } else {
    out << "derivation on " << report.surface << "\n";
    out << "  initial equation: "
        << (report.initial_verified ? "verified" : "NOT verified: " + report.initial_message)
        << "\n";
    for (const StepReport& s : report.steps) {
      out << "  step " << s.index << " (line " << s.line << ") " << s.rule << ": "
          << (s.result.ok ? "ok" : "VIOLATION: " + s.result.message) << "\n";
    }
    out << "  final equation: "
        << (report.final_verified ? "verified" : "NOT verified: " + report.final_message) << "\n";
    for (const std::string& n : report.notes) out << "  note: " << n << "\n";
    out << (report.ok() ? "derivation checks" : "derivation FAILS") << "\n";
  }
  return report.ok() ? kExitOk : kExitRefuted;
}

// ---------------------------------------------------------------------------
// catalog

// With --json the script goes into a "script" field; -o still receives the
// plain script.
int cmd_catalog(const RelationStatement& s, const std::string& output, bool as_json,
                std::ostream& out) {
  std::string text = statement_script(s);
  bool to_stdout = output.empty() || output == "-";
  if (!to_stdout) {
    std::ofstream f(output);
    if (!f) throw Usage("cannot write " + output);
    f << text;
  }
  if (as_json) {
    json j;
    j["title"] = s.title;
    j["surface"] = s.surface;
    j["statement"] = format_equation(s.expanded());
    j["script"] = text;
    j["output"] = to_stdout ? json(nullptr) : json(output);
    out << j.dump(2) << "\n";
  } else if (to_stdout) {
    out << text;
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// milnor, fiber, count

int cmd_milnor(const std::string& poly_text, const std::string& weights_text,
               const std::string& degree_text, bool as_json, std::ostream& out) {
  Poly p = parse_poly(poly_text);
  if (p.variables == 0) throw Usage("polynomial has no variables");
  WeightData w;
  bool inferred = weights_text.empty();
  if (inferred) {
    if (!degree_text.empty()) throw Usage("--degree needs --weights");
    auto guess = infer_weights(p);
    if (!guess) throw Usage("no positive weights make " + format_poly(p) + " weighted homogeneous");
    w = *guess;
  } else {
    if (degree_text.empty()) throw Usage("--weights needs --degree");
    w.weights = parse_rational_list(weights_text);
    auto d = parse_rational_list(degree_text);
    if (d.size() != 1) throw Usage("--degree takes one number");
    w.degree = d[0];
    if (w.weights.size() != p.variables) {
      throw Usage("polynomial has " + std::to_string(p.variables) + " variables but " +
                  std::to_string(w.weights.size()) + " weights were given");
    }
    if (!check_weighted_homogeneous(p, w)) {
      if (as_json) {
        json ws = json::array();
        for (const Rational& x : w.weights) ws.push_back(rational_json(x));
        json doc = {{"polynomial", format_poly(p)},
                    {"variables", p.variables},
                    {"weights", ws},
                    {"degree", rational_json(w.degree)},
                    {"weights_inferred", false},
                    {"weighted_homogeneous", false},
                    {"milnor_number", nullptr}};
        out << doc.dump(2) << "\n";
      } else {
        out << "polynomial: " << format_poly(p) << "\n";
        out << "not weighted homogeneous for these weights\n";
      }
      return kExitRefuted;
    }
  }
  Integer mu = milnor_number(w);
  if (as_json) {
    json ws = json::array();
    for (const Rational& x : w.weights) ws.push_back(rational_json(x));
    json doc = {{"polynomial", format_poly(p)},
                {"variables", p.variables},
                {"weights", ws},
                {"degree", rational_json(w.degree)},
                {"weights_inferred", inferred},
                {"weighted_homogeneous", true},
                {"milnor_number", integer_json(mu)}};
    out << doc.dump(2) << "\n";
  } else {
    out << "polynomial: " << format_poly(p) << "\n";
    out << "variables: " << p.variables << "\n";
    out << "weights: ";
    for (std::size_t i = 0; i < w.weights.size(); ++i) {
      out << (i ? ", " : "") << format_rational(w.weights[i]);
    }
    out << (inferred ? " (inferred)" : "") << "\n";
    out << "degree: " << format_rational(w.degree) << "\n";
    out << "milnor number: " << mu << "\n";
  }
  return kExitOk;
}

int cmd_fiber(long k, bool as_json, std::ostream& out) {
  FiberTopology t = fiber_topology(k);
  if (as_json) {
    json doc = {{"genus", t.genus}, {"boundary", t.boundary}, {"euler", t.euler}, {"h1_rank", t.h1_rank}};
    out << doc.dump() << "\n";
  } else {
    out << "genus: " << t.genus << "\nboundary: " << t.boundary << "\neuler: " << t.euler
        << "\nh1_rank: " << t.h1_rank << "\n";
  }
  return kExitOk;
}

int cmd_count(long n, long k, bool as_json, std::ostream& out) {
  Integer total = twist_count(n, k), per = per_fiber_count(n, k);
  if (as_json) {
    json doc = {{"n", n}, {"k", k}, {"twist_count", integer_json(total)},
                {"per_fiber_count", integer_json(per)}};
    out << doc.dump() << "\n";
  } else {
    out << "twist_count: " << total << "\nper_fiber_count: " << per << "\n";
  }
  return kExitOk;
}

int cmd_powers(long k, bool as_json, std::ostream& out) {
  auto powers = fractional_powers(k);
  if (as_json) {
    json arr = json::array();
    for (const auto& p : powers) arr.push_back({{"divisor", p.divisor}, {"angle", format_rational(p.angle)}});
    out << json{{"k", k}, {"powers", arr}}.dump() << "\n";
  } else {
    for (const auto& p : powers) {
      out << p.divisor << "  (" << format_rational(p.angle) << " turn)\n";
    }
  }
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"twistcheck: verify Dehn twist relations and Milnor fiber invariants"};
  app.name("twistcheck");
  app.require_subcommand(1);
  std::string format;
  if (const char* env = std::getenv("TWISTCHECK_FORMAT")) format = env;
  bool json_flag = false;
  int verbosity = 0;
  std::vector<CLI::Option*> format_opts, json_opts, verbose_opts;
  format_opts.push_back(
      app.add_option("--format", "Output format: text or json (default from TWISTCHECK_FORMAT)"));
  json_opts.push_back(app.add_flag("--json", "Shorthand for --format json"));
  verbose_opts.push_back(app.add_flag("-v,--verbose", "More detail; twice for raw groupoid words"));

  auto* verify_cmd = app.add_subcommand("verify", "Verify the assertions of a relation script");
  std::string script_path, engine_text;
  unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
  verify_cmd->add_option("script", script_path, "Relation script")->required();
  verify_cmd->add_option("--engine", engine_text, "Override engine: homology, exact or both");
  verify_cmd->add_option("-j,--jobs", jobs, "Assertions verified concurrently");

  auto* catalog_cmd = app.add_subcommand("catalog", "Emit a catalogued relation as a script");
  catalog_cmd->require_subcommand(1);
  std::string output;
  catalog_cmd->add_option("-o,--output", output, "Write to a file instead of stdout");
  auto* chain_cmd = catalog_cmd->add_subcommand("chain", "Chain relation of length m");
  int m = 0;
  std::string variant = "standard";
  chain_cmd->add_option("--m", m, "Chain length")->required();
  chain_cmd->add_option("--variant", variant, "standard or squared_first");
  auto* star_cmd = catalog_cmd->add_subcommand("star", "Star relation on S_1_3");
  auto* corollary_cmd = catalog_cmd->add_subcommand("corollary", "Boundary twists of S_1_3 as a cube");
  auto* hkp_cmd = catalog_cmd->add_subcommand("hkp", "Monodromy factorization on F_k_k");
  int hk = 0;
  std::string order = "typographic";
  hkp_cmd->add_option("--k", hk, "Degree k")->required();
  hkp_cmd->add_option("--order", order, "typographic (default) or reversed");

  auto* milnor_cmd = app.add_subcommand("milnor", "Milnor number of a weighted homogeneous polynomial");
  std::string poly, weights, degree;
  milnor_cmd->add_option("--poly", poly, "Polynomial in z0, z1, ...")->required();
  milnor_cmd->add_option("--weights", weights, "Comma separated weights (inferred if omitted)");
  milnor_cmd->add_option("--degree", degree, "Weighted degree");

  auto* fiber_cmd = app.add_subcommand("fiber", "Topology of the Milnor fiber of z0^k + z1^k");
  long fk = 0;
  fiber_cmd->add_option("--k", fk, "Degree k")->required();

  auto* count_cmd = app.add_subcommand(
      "count", "Dehn twist counts k(k-1)^n; n is the number of variables minus one");
  long cn = 0, ck = 0;
  count_cmd->add_option("--n", cn, "n (variables z0..zn)")->required();
  count_cmd->add_option("--k", ck, "Degree k")->required();

  auto* powers_cmd = app.add_subcommand("powers", "Fractional twist powers available for degree k");
  long pk = 0;
  powers_cmd->add_option("--k", pk, "Degree k")->required();

  auto* surface_cmd = app.add_subcommand("surface", "Surface model commands");
  surface_cmd->require_subcommand(1);
  auto* validate_cmd = surface_cmd->add_subcommand("validate", "Run the model validation oracles");
  std::string target;
  validate_cmd->add_option("model", target, "Builtin name, F_k_k, or a .json file")->required();

  auto* derivation_cmd = app.add_subcommand("derivation", "Check a derivation script");
  std::string dv_path;
  derivation_cmd->add_option("script", dv_path, "Derivation script")->required();

  for (CLI::App* fam : {chain_cmd, star_cmd, corollary_cmd, hkp_cmd}) {
    fam->add_option("-o,--output", output, "Write to a file instead of stdout");
  }
  for (CLI::App* sub : {verify_cmd, milnor_cmd, fiber_cmd, count_cmd, powers_cmd, validate_cmd,
                        derivation_cmd, chain_cmd, star_cmd, corollary_cmd, hkp_cmd}) {
    format_opts.push_back(sub->add_option("--format", "Output format: text or json"));
    json_opts.push_back(sub->add_flag("--json", "Shorthand for --format json"));
    verbose_opts.push_back(sub->add_flag("-v,--verbose", "More detail; twice for raw groupoid words"));
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kExitOk;
    }
    err << "twistcheck: " << e.what() << "\n";
    return kExitError;
  }

  for (CLI::Option* o : format_opts) {
    if (o->count() > 0) format = o->as<std::string>();
  }
  for (CLI::Option* o : json_opts) json_flag = json_flag || o->count() > 0;
  for (CLI::Option* o : verbose_opts) verbosity += static_cast<int>(o->count());

  try {
    if (json_flag) format = "json";
    if (format.empty()) format = "text";
    if (format != "text" && format != "json") throw Usage("unknown output format '" + format + "'");
    bool as_json = format == "json";

    if (verify_cmd->parsed()) {
      std::optional<Engine> engine;
      if (!engine_text.empty()) {
        engine = parse_engine(engine_text);
        if (!engine) throw Usage("unknown engine '" + engine_text + "'");
      }
      return cmd_verify(script_path, engine, as_json, verbosity, jobs, out, err);
    }
    if (catalog_cmd->parsed()) {
      RelationStatement s;
      if (chain_cmd->parsed()) {
        if (variant != "standard" && variant != "squared_first") {
          throw Usage("unknown chain variant '" + variant + "'");
        }
        if (m < 1) throw Usage("--m must be at least 1");
        s = chain_relation(m, variant == "standard" ? ChainVariant::standard
                                                    : ChainVariant::squared_first);
      } else if (star_cmd->parsed()) {
        s = star_relation();
      } else if (corollary_cmd->parsed()) {
        s = corollary_relation();
      } else {
        if (order != "typographic" && order != "reversed") {
          throw Usage("unknown order '" + order + "'");
        }
        if (hk < 2) throw Usage("--k must be at least 2");
        s = hkp_relation(hk, order == "typographic" ? HkpOrder::typographic : HkpOrder::reversed);
      }
      return cmd_catalog(s, output, as_json, out);
    }
    if (milnor_cmd->parsed()) return cmd_milnor(poly, weights, degree, as_json, out);
    if (fiber_cmd->parsed()) {
      if (fk < 1) throw Usage("--k must be at least 1");
      return cmd_fiber(fk, as_json, out);
    }
    if (count_cmd->parsed()) {
      if (cn < 1 || ck < 1) throw Usage("--n and --k must be at least 1");
      return cmd_count(cn, ck, as_json, out);
    }
    if (powers_cmd->parsed()) {
      if (pk < 1) throw Usage("--k must be at least 1");
      return cmd_powers(pk, as_json, out);
    }
    if (validate_cmd->parsed()) return cmd_surface_validate(target, as_json, verbosity, out);
    if (derivation_cmd->parsed()) return cmd_derivation(dv_path, as_json, out);
  } catch (const std::exception& e) {
    err << "twistcheck: " << e.what() << "\n";
    return kExitError;
  }
  err << "twistcheck: no command\n";
  return kExitError;
}

}  // namespace twistcheck
