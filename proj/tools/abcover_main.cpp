// abcover: analyze abelian cover configurations, build gallery examples,
// run bounded searches and the self-test.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "abcover/error.hpp"
#include "abcover/gallery.hpp"
#include "abcover/search.hpp"
#include "abcover/selftest.hpp"

namespace {

using namespace abcover;

enum Exit { kOk = 0, kUsage = 1, kInvalid = 2, kAlerts = 3, kResource = 4 };

Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw MalformedInput(std::string("invalid JSON: ") + e.what(), "");
  }
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw std::runtime_error("cannot write " + out_path);
  out << text;
}

std::string report_text(const AnalysisReport& r, const std::string& format) {
  const Json j = to_json(r);
  return format == "json" ? j.dump(2) + "\n" : render_text(j);
}

int cmd_analyze(const std::string& path, const std::string& format, const std::string& out,
                const std::string& mode) {
  const auto config = config_from_json(read_json(path));
  AnalyzeOptions options;
  options.gate = parse_gate(mode);
  const auto report = analyze(config, options);
  emit(report_text(report, format), out);
  if (!report.valid()) {
    for (const auto& v : report.validation.violations) {
      std::cerr << "invalid: " << v.constraint << " at " << v.location << ": " << v.detail << '\n';
    }
    return kInvalid;
  }
  if (!report.alerts().empty()) {
    for (const auto& a : report.alerts()) std::cerr << "alert: " << a << '\n';
    return kAlerts;
  }
  return kOk;
}

int cmd_gallery(bool list, const std::string& name, const std::string& params_text, const std::string& what,
                const std::string& format, const std::string& out) {
  if (list) {
    std::ostringstream s;
    for (const auto& e : gallery()) s << e.name << "  " << e.default_params.dump() << "  " << e.summary << '\n';
    emit(s.str(), out);
    return kOk;
  }
  if (name.empty()) throw CLI::ValidationError("gallery", "--name is required unless --list is given");
  Json params = Json::object();
  if (!params_text.empty()) {
    try {
      params = Json::parse(params_text);
    } catch (const Json::parse_error& e) {
      throw ParameterError(std::string("--params is not JSON: ") + e.what());
    }
  }
  const auto config = build(name, params);
  if (what == "config") {
    emit(to_json(config).dump(2) + "\n", out);
    return kOk;
  }
  const auto report = analyze(config);
  emit(report_text(report, format), out);
  return report.alerts().empty() ? kOk : kAlerts;
}

int cmd_search(const std::string& spec_path, const std::string& out, unsigned jobs, const std::string& symmetry) {
  auto spec = search_spec_from_json(read_json(spec_path));
  if (symmetry == "on") spec.symmetry = SearchSymmetry::Full;
  if (symmetry == "off") spec.symmetry = SearchSymmetry::Off;
  const auto result = run_search(spec, jobs);
  std::ostringstream s;
  write_jsonl(result, s);
  emit(s.str(), out);
  std::cerr << result.examined << " examined, " << result.matched << " matched\n";
  return kOk;
}

int cmd_selftest(const std::optional<double>& budget, bool flip, unsigned jobs) {
  SelftestOptions options;
  options.time_budget_seconds = budget;
  options.flip_sign_convention = flip;
  options.jobs = jobs;
  const auto summary = run_selftest(options, &std::cout);
  const int pass = summary.count(CheckStatus::Pass);
  const int fail = summary.count(CheckStatus::Fail);
  const int skipped = summary.count(CheckStatus::Skipped);
  std::cout << pass << " passed, " << fail << " failed, " << skipped << " skipped\n";
  if (fail > 0) return kAlerts;
  return skipped > 0 ? kResource : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Invariants of abelian covers of abelian varieties"};
  app.require_subcommand(1);

  std::string path, format = "text", out, mode = "chi0";
  auto* analyze_cmd = app.add_subcommand("analyze", "Analyze a configuration file");
  analyze_cmd->add_option("config", path, "Configuration JSON")->required();
  analyze_cmd->add_option("--report", format, "Output format")->check(CLI::IsMember({"json", "text"}));
  analyze_cmd->add_option("--out", out, "Write the report here instead of stdout");
  analyze_cmd->add_option("--mode", mode, "Theorem gate")->check(CLI::IsMember({"rct", "chi0"}));

  bool list = false;
  std::string name, params, emit_what = "config";
  auto* gallery_cmd = app.add_subcommand("gallery", "Build a named example");
  gallery_cmd->add_flag("--list", list, "List the entries");
  gallery_cmd->add_option("--name", name, "Entry name");
  gallery_cmd->add_option("--params", params, "Parameters as a JSON object");
  gallery_cmd->add_option("--emit", emit_what, "config or report")->check(CLI::IsMember({"config", "report"}));
  gallery_cmd->add_option("--report", format, "Report format")->check(CLI::IsMember({"json", "text"}));
  gallery_cmd->add_option("--out", out, "Output file");

  std::string spec_path, symmetry;
  unsigned jobs = 1;
  auto* search_cmd = app.add_subcommand("search", "Enumerate configurations matching a spec");
  search_cmd->add_option("--spec", spec_path, "Search spec JSON")->required();
  search_cmd->add_option("--out", out, "JSONL output file");
  search_cmd->add_option("--jobs", jobs, "Worker threads")->check(CLI::Range(1u, 256u));
  search_cmd->add_option("--symmetry", symmetry, "Override the spec's symmetry reduction")
      ->check(CLI::IsMember({"on", "off"}));

  std::optional<double> budget;
  bool flip = false;
  auto* selftest_cmd = app.add_subcommand("selftest", "Run goldens and exhaustive sweeps");
  selftest_cmd->add_option("--time-budget", budget, "Seconds before remaining sweeps are skipped");
  selftest_cmd->add_flag("--flip-sign-convention", flip, "Negative control for the locus goldens");
  selftest_cmd->add_option("--jobs", jobs, "Worker threads")->check(CLI::Range(1u, 256u));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*analyze_cmd) return cmd_analyze(path, format, out, mode);
    if (*gallery_cmd) return cmd_gallery(list, name, params, emit_what == "report" ? "report" : "config", format, out);
    if (*search_cmd) return cmd_search(spec_path, out, jobs, symmetry);
    if (*selftest_cmd) return cmd_selftest(budget, flip, jobs);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const MalformedInput& e) {
    std::cerr << "error: " << e.what();
    if (!e.pointer().empty()) std::cerr << " at " << e.pointer();
    std::cerr << '\n';
    return kInvalid;
  } catch (const ValidationError& e) {
    std::cerr << "invalid: " << e.what() << '\n';
    return kInvalid;
  } catch (const ParameterError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ResourceExceeded& e) {
    std::cerr << "refused: " << e.what() << '\n';
    return kResource;
  } catch (const Unsupported& e) {
    std::cerr << "unsupported: " << e.what() << '\n';
    return kInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
