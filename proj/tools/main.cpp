#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"

using namespace aswtower;
using namespace aswtower::cli;

int main(int argc, char** argv) {
  CLI::App app{"Higher a-numbers of Artin-Schreier-Witt towers"};
  app.require_subcommand(0, 1);
  app.fallthrough();

  RunContext ctx;
  for (int i = 1; i < argc; ++i) ctx.argv.emplace_back(argv[i]);
  std::string lift, lambda = "empirical", preset;
  bool json = false, no_timestamp = false;
  app.add_option("--seed", ctx.seed, "seed for randomized suites")->default_val(0);
  app.add_flag("--json", json, "JSON report on stdout (default)");
  app.add_flag("--csv", ctx.csv, "CSV report (path,value) on stdout");
  app.add_flag("--no-timestamp", no_timestamp, "omit timestamp and timings");
  app.add_option("--lift", lift, "coefficient lift convention")->check(CLI::IsMember({"teichmuller", "integer"}));
  app.add_option("--lambda", lambda, "lambda mode: empirical[:N] or safe");
  app.add_option("--preset", preset, "packaged run")->check(CLI::IsMember({"table1", "dp1sequence"}));
  app.add_option("--threads", ctx.threads, "worker threads, 0 = hardware");

  std::uint32_t p = 0, d = 0;
  unsigned r = 1, fn = 1;
  auto* formula = app.add_subcommand("formula", "combinatorial a-number formula and bounds");
  formula->add_option("-p", p, "prime")->required();
  formula->add_option("-d", d, "ramification invariant")->required();
  formula->add_option("-r", r, "iterate")->default_val(1);
  formula->add_option("-n", fn, "level")->default_val(1);

  std::string spec;
  std::optional<unsigned> n;
  unsigned rmax = 1, D = 2;
  std::size_t t = 8;
  std::string euler = "inverted", character = "inverse";
  std::vector<std::string> suites{"all"};

  auto* anumber = app.add_subcommand("anumber", "Cartier a-numbers of a tower");
  anumber->add_option("spec", spec, "tower spec file, - for stdin")->required();
  anumber->add_option("-n", n, "level (default: spec levels)");
  anumber->add_option("-r", rmax, "largest iterate")->default_val(1);

  auto* newton = app.add_subcommand("newton", "Newton polygon of the Frobenius Fredholm determinant");
  newton->add_option("spec", spec, "tower spec file, - for stdin")->required();
  newton->add_option("-n", n, "level (default: spec levels)");
  newton->add_option("-t", t, "matrix truncation")->default_val(8);
  newton->add_option("-D", D, "Euler product degree")->default_val(2);

  auto* lfun = app.add_subcommand("lfunction", "Euler product of the tower character");
  lfun->add_option("spec", spec, "tower spec file, - for stdin")->required();
  lfun->add_option("-n", n, "level (default: spec levels)");
  lfun->add_option("-D", D, "degree in s")->default_val(2);
  lfun->add_option("--euler", euler, "local factor convention")->check(CLI::IsMember({"inverted", "plain"}));
  lfun->add_option("--character", character, "character value used in local factors")
      ->check(CLI::IsMember({"inverse", "direct"}));

  auto* verify = app.add_subcommand("verify", "structural check suites");
  verify->add_option("spec", spec, "tower spec file, - for stdin")->required();
  verify->add_option("-n", n, "level (default: spec levels)");
  verify->add_option("--suite", suites, "taunit, triangular, trace, module or all")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (json && ctx.csv) throw InputError("--json and --csv are exclusive");
    ctx.timestamp = !no_timestamp;
    if (!lift.empty()) ctx.lift = parse_lift(lift);
    ctx.lambda = parse_lambda_mode(lambda);

    CommandResult res;
    if (!preset.empty()) {
      if (app.get_subcommands().size()) throw InputError("--preset does not take a subcommand");
      res = preset == "table1" ? preset_table1(ctx) : preset_dp1sequence(ctx);
    } else if (formula->parsed()) {
      res = cmd_formula(ctx, p, d, r, fn);
    } else if (anumber->parsed()) {
      res = cmd_anumber(ctx, {spec}, n, rmax);
    } else if (newton->parsed()) {
      res = cmd_newton(ctx, {spec}, n, t, D);
    } else if (lfun->parsed()) {
      res = cmd_lfunction(ctx, {spec}, n, D, parse_euler_convention(euler), character == "inverse");
    } else if (verify->parsed()) {
      res = cmd_verify(ctx, {spec}, n, suites);
    } else {
      std::cerr << app.help();
      return 2;
    }
    emit(res.report, ctx, std::cout);
    std::cerr << res.summary << '\n';
    return res.ok ? 0 : 1;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const MathError& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
