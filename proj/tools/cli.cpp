#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <ostream>
#include <stdexcept>

#include "CLI11.hpp"
#include "mpps/acceptance.hpp"
#include "mpps/commands.hpp"

namespace mpps {

namespace {

struct Flags {
  double alpha = 1.0;
  double beta = 1.0;
  double c = 1.0;
  std::string target;
  std::string grid;
  std::string n_range;
  int erlang_n = 1;
  std::string intensity = "1:1";
  double t = 1.0;
  std::optional<std::uint64_t> seed;
  std::size_t paths = 1;
  std::size_t events = 1;
  std::string output;
  std::string format = "csv";
  bool inject_fault = false;
  std::vector<int> criteria;
};

void add_params(CLI::App* cmd, Flags& f) {
  cmd->add_option("--alpha", f.alpha, "Stacy shape alpha > 0")->required();
  cmd->add_option("--beta", f.beta, "Stacy rate beta > 0")->required();
  cmd->add_option("--c", f.c, "Stacy power c != 0")->required();
}

void add_output(CLI::App* cmd, Flags& f) {
  cmd->add_option("--output", f.output, "Output file (default: standard output)");
  cmd->add_option("--format", f.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
}

void add_intensity(CLI::App* cmd, Flags& f) {
  cmd->add_option("--intensity", f.intensity, "lambda(t) = a * t^p, given as a:p");
  cmd->add_option("--t", f.t, "Time at which lambda is evaluated (mpps target)");
}

RunConfig make_config(Command command, const Flags& f) {
  RunConfig cfg;
  cfg.command = command;
  cfg.params = StacyParams(f.alpha, f.beta, f.c);
  if (!f.target.empty()) cfg.target = parse_target(f.target);
  if (!f.grid.empty()) cfg.grid = GridSpec::parse(f.grid);
  if (!f.n_range.empty()) cfg.n_range = CountRange::parse(f.n_range);
  cfg.intensity = IntensitySpec::parse(f.intensity);
  cfg.erlang_n = f.erlang_n;
  cfg.t = f.t;
  cfg.seed = f.seed;
  cfg.paths = f.paths;
  cfg.events_per_path = f.events;
  cfg.output = f.output;
  cfg.format = parse_format(f.format);
  return cfg;
}

// Writes to --output when given, else to `out`.
template <class Emit>
void emit(const std::string& path, std::ostream& out, Emit&& body) {
  if (path.empty() || path == "-") {
    body(out);
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::invalid_argument("cannot open output file '" + path + "'");
  body(file);
  file.flush();
  if (!file) throw std::invalid_argument("failed writing output file '" + path + "'");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Mixed Poisson process with Stacy mixing: densities, pmfs, regressions, simulation, verification"};
  app.name("mpps");
  app.require_subcommand(1);
  Flags f;

  struct Entry {
    Command command;
    CLI::App* app;
  };
  std::vector<Entry> table_commands;

  auto* pdf = app.add_subcommand("pdf", "Density on a grid (stacy, exp-stacy, erlang-stacy)");
  auto* cdf = app.add_subcommand("cdf", "Distribution function on a grid (stacy, exp-stacy, erlang-stacy)");
  for (auto* cmd : {pdf, cdf}) {
    add_params(cmd, f);
    cmd->add_option("--target", f.target, "stacy, exp-stacy or erlang-stacy")->required();
    cmd->add_option("--grid", f.grid, "lo:hi:n")->required();
    cmd->add_option("--erlang-n", f.erlang_n, "Erlang index n >= 1");
    add_output(cmd, f);
  }
  table_commands.push_back({Command::pdf, pdf});
  table_commands.push_back({Command::cdf, cdf});

  auto* pmf = app.add_subcommand("pmf", "Count probabilities (mpstacy, mpps)");
  add_params(pmf, f);
  pmf->add_option("--target", f.target, "mpstacy or mpps")->required();
  pmf->add_option("--n-range", f.n_range, "lo:hi, inclusive")->required();
  add_intensity(pmf, f);
  add_output(pmf, f);
  table_commands.push_back({Command::pmf, pmf});

  auto* regression = app.add_subcommand("regression", "E(xi | tau = t) on a grid or E(xi | N(t) = n) over a range");
  add_params(regression, f);
  regression->add_option("--target", f.target, "exp-stacy or mpps")->required();
  regression->add_option("--grid", f.grid, "lo:hi:n (exp-stacy)");
  regression->add_option("--n-range", f.n_range, "lo:hi (mpps)");
  add_intensity(regression, f);
  add_output(regression, f);
  table_commands.push_back({Command::regression, regression});

  auto* moments = app.add_subcommand("moments", "Mean and variance; divergent values print as inf");
  add_params(moments, f);
  moments->add_option("--target", f.target, "stacy, exp-stacy, erlang-stacy, mpstacy or mpps")->required();
  moments->add_option("--erlang-n", f.erlang_n, "Erlang index n >= 1");
  add_intensity(moments, f);
  add_output(moments, f);
  table_commands.push_back({Command::moments, moments});

  auto* simulate = app.add_subcommand("simulate", "Sample paths in long format path_id,event_index,event_time");
  add_params(simulate, f);
  simulate->add_option("--seed", f.seed, "Random seed (required)")->required();
  simulate->add_option("--paths", f.paths, "Number of paths")->check(CLI::PositiveNumber);
  simulate->add_option("--events", f.events, "Events per path")->check(CLI::PositiveNumber);
  simulate->add_option("--intensity", f.intensity, "lambda(t) = a * t^p, given as a:p");
  add_output(simulate, f);
  table_commands.push_back({Command::simulate, simulate});

  auto* verify = app.add_subcommand("verify", "Run the acceptance suite and print a JSON report");
  verify->add_option("--output", f.output, "Report file (default: standard output)");
  verify->add_option("--criteria", f.criteria, "Only these criterion ids")->check(CLI::Range(1, 9));
  verify->add_flag("--inject-fault", f.inject_fault)->group("");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "mpps: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (verify->parsed()) {
      AcceptanceOptions options;
      options.inject_fault = f.inject_fault;
      options.only = f.criteria;
      options.on_result = [&](const CriterionResult& r) { err << format_result_line(r) << '\n'; };
      const AcceptanceReport report = run_acceptance(options);
      emit(f.output, out, [&](std::ostream& os) { os << report.to_json().dump(2) << '\n'; });
      return report.all_pass() ? kExitOk : kExitVerifyFailed;
    }
    for (const Entry& e : table_commands) {
      if (!e.app->parsed()) continue;
      RunConfig cfg = make_config(e.command, f);
      if (e.command == Command::simulate) cfg.target = Target::mpps;
      Table table;
      switch (e.command) {
        case Command::pdf: table = cmd_pdf(cfg); break;
        case Command::cdf: table = cmd_cdf(cfg); break;
        case Command::pmf: table = cmd_pmf(cfg); break;
        case Command::regression: table = cmd_regression(cfg); break;
        case Command::moments: table = cmd_moments(cfg); break;
        case Command::simulate: table = cmd_simulate(cfg); break;
        case Command::verify: break;
      }
      emit(f.output, out, [&](std::ostream& os) { write_table(os, cfg, table); });
      return kExitOk;
    }
  } catch (const std::exception& e) {
    err << "mpps: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace mpps
