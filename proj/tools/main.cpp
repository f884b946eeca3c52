#include <CLI11.hpp>

#include <cctype>
#include <chrono>
#include <fstream>
#include <iostream>

#include "commands.hpp"

using canonica::cli::Options;

int main(int argc, char** argv) {
  CLI::App app{"canonica: semidualizing modules on determinantal rings and trivial-extension chains"};
  app.require_subcommand(1);
  Options opt;
  std::uint32_t field_p = 0;
  int scan = 0, ext_bound = 0;

  auto add_common = [&](CLI::App* sub) {
    // spec tokens are collected from the leftovers; a positional option would split "[x,y]" as an array
    sub->allow_extras();
    sub->footer("SPEC: a spec file, or inline text such as 'det 3 2 1' or 'chain [triv 2]'");
    sub->add_option("--json", opt.json_path, "write the JSON report to this path");
    sub->add_option("--threads", opt.threads, "worker threads")->default_val(1);
    sub->add_flag("--verify-gb", opt.verify_gb, "check every Groebner basis with the Buchberger criterion");
    sub->add_option("--field-p", field_p, "field characteristic; 0 selects the rationals");
  };
  auto* build = app.add_subcommand("build", "construct the ring and print its invariants");
  add_common(build);
  auto* classify = app.add_subcommand("classify", "find the semidualizing classes");
  add_common(classify);
  auto* verify = app.add_subcommand("verify", "run one verification suite");
  add_common(verify);
  for (auto* sub : {classify, verify}) {
    sub->add_option("--scan", scan, "class labels c with |c| <= scan are tried");
    sub->add_option("--ext-bound", ext_bound, "highest Ext index checked (default dim R + 1)");
  }
  verify->add_option("--suite", opt.suite, "beta0 | eq07 | prop22 | multmap | multiplicity | ordering | dagger")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return canonica::cli::kSchemaError;
  }

  CLI::App* sub = app.get_subcommands().front();
  opt.command = sub->get_name();
  opt.spec = sub->remaining();
  for (const auto& t : opt.spec)
    if (t.size() > 1 && t[0] == '-' && !std::isdigit(static_cast<unsigned char>(t[1]))) {
      std::cerr << "unknown option " << t << "\n";
      return canonica::cli::kSchemaError;
    }
  if (sub->count("--field-p")) opt.field_p = field_p;
  if (sub != build) {
    if (sub->count("--scan")) opt.scan = scan;
    if (sub->count("--ext-bound")) opt.ext_bound = ext_bound;
  }

  const auto t0 = std::chrono::steady_clock::now();
  auto outcome = canonica::cli::run_command(opt, std::cout, std::cerr);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!opt.json_path.empty() && !outcome.report.is_null()) {
    outcome.report["wall_time_seconds"] = secs;
    std::ofstream f(opt.json_path);
    if (!f) {
      std::cerr << "cannot write " << opt.json_path << "\n";
      return canonica::cli::kMismatch;
    }
    f << outcome.report.dump(2) << "\n";
  }
  return outcome.exit_code;
}
