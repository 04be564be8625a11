#include "spinsim/cli.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <thread>

#include "CLI11.hpp"
#include "spinsim/bipartite.hpp"
#include "spinsim/spin.hpp"

namespace spinsim::cli {

namespace {

struct CommandName {
  Command command;
  const char* name;
  const char* help;
};

constexpr CommandName kCommands[] = {
    {Command::Exact, "exact", "Exact correlation for a context (one angle: theta_b with a=0; two: theta_a theta_b)"},
    {Command::Matrix, "matrix", "Conditional probability matrix for a context"},
    {Command::Sample, "sample", "Monte Carlo correlation per context angle, fresh phi stream each"},
    {Command::Sweep, "sweep", "Exact vs sampled agreement over a grid on [0, pi]"},
    {Command::Chsh, "chsh", "CHSH s value for the singlet (four angles: a a' b b')"},
    {Command::KsTest, "kstest", "Kolmogorov-Smirnov test of sampled phi against its CDF"},
};

std::pair<double, double> context_from_angles(const RunConfig& c) {
  if (c.angles.size() == 1) return {0.0, c.angles[0]};
  if (c.angles.size() == 2) return {c.angles[0], c.angles[1]};
  throw UsageError(std::string("--theta: ") + to_string(c.command) + " takes one or two angles");
}

std::string run_exact(const RunConfig& c) {
  const auto [ta, tb] = context_from_angles(c);
  const Direction<double> a(ta), b(tb);
  const double corr = c.mode == Mode::Single ? correlation_exact(a, b) : correlation_singlet(a, b);
  return serialize(ExactRecord{c.mode, ta, tb, corr, c.seed}, c.format);
}

std::string run_matrix(const RunConfig& c) {
  const auto [ta, tb] = context_from_angles(c);
  const Direction<double> a(ta), b(tb);
  MatrixRecord r{c.mode, ta, tb, cond_prob_matrix(a, b).matrix(), std::nullopt, c.seed};
  if (c.mode == Mode::Bipartite) r.singlet = cond_prob_matrix_singlet(a, b).matrix();
  return serialize(r, c.format);
}

std::string run_sample(const RunConfig& c) {
  if (c.angles.empty()) throw UsageError("--theta: sample needs at least one context angle");
  SampleRecord r{c.mode, c.n, c.seed, {}};
  // Same per-context seeds as fresh_context_estimates.
  for (std::size_t k = 0; k < c.angles.size(); ++k) {
    const PartitionSpec spec(c.mode, c.angles[k]);
    const std::uint64_t sub = substream_seed(c.seed, k);
    const auto pp = partition_probabilities(spec, c.n, sub, {c.workers});
    r.rows.push_back({spec.theta(), estimate_from_counts(pp.count_plus, c.n, sub), pp.p_plus, pp.p_minus});
  }
  return serialize(r, c.format);
}

std::string run_chsh(const RunConfig& c) {
  ChshAngles angles = canonical_chsh_angles();
  if (c.angles.size() == 4) {
    angles = {c.angles[0], c.angles[1], c.angles[2], c.angles[3]};
  } else if (!c.angles.empty()) {
    throw UsageError("--theta: chsh takes zero or four angles (a a' b b')");
  }
  return serialize(chsh(angles, c.engine, c.n, c.seed, c.shared_stream, {c.workers}), c.format);
}

}  // namespace

const char* to_string(Command c) {
  for (const auto& e : kCommands) {
    if (e.command == c) return e.name;
  }
  return "?";
}

RunConfig parse_args(const std::vector<std::string>& args) {
  RunConfig cfg;
  CLI::App app{"Spin correlation simulator", "spinsim"};
  app.require_subcommand(1, 1);

  std::vector<double> thetas;
  std::string mode = "single", engine = "exact", format = "json", output;
  bool degrees = false;

  app.add_option("--theta", thetas, "Angle in radians (repeatable)")->expected(1, -1);
  app.add_option("--mode", mode, "single | bipartite")->check(CLI::IsMember({"single", "bipartite"}));
  app.add_option("--n", cfg.n, "Samples per context")->capture_default_str();
  app.add_option("--seed", cfg.seed, "Base seed")->envname(kSeedEnvVar)->capture_default_str();
  app.add_option("--engine", engine, "exact | sampled (chsh)")->check(CLI::IsMember({"exact", "sampled"}));
  app.add_option("--format", format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--output", output, "Write to this file instead of stdout");
  app.add_flag("--degrees", degrees, "Interpret --theta values as degrees");
  app.add_option("--grid-size", cfg.grid_size, "Grid points for sweep")->capture_default_str();
  app.add_flag("--shared-stream", cfg.shared_stream,
               "chsh only: reuse one phi stream for all contexts (non-physical, for comparison)");

  for (const auto& e : kCommands) app.add_subcommand(e.name, e.help)->fallthrough();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested(app.help());
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  for (const auto& e : kCommands) {
    if (app.got_subcommand(e.name)) cfg.command = e.command;
  }
  for (double t : thetas) {
    if (!std::isfinite(t)) throw UsageError("--theta: angles must be finite");
    cfg.angles.push_back(degrees ? t * std::numbers::pi / 180.0 : t);
  }
  if (cfg.n == 0) throw UsageError("--n: must be at least 1");
  cfg.mode = parse_mode(mode);
  cfg.engine = parse_engine(engine);
  cfg.format = parse_format(format);
  if (!output.empty()) cfg.output_path = output;
  cfg.workers = std::max(1u, std::thread::hardware_concurrency());
  return cfg;
}

std::string execute(const RunConfig& c) {
  switch (c.command) {
    case Command::Exact:
      return run_exact(c);
    case Command::Matrix:
      return run_matrix(c);
    case Command::Sample:
      return run_sample(c);
    case Command::Sweep:
      return serialize(agreement_sweep(c.mode, c.grid_size, c.n, c.seed, {c.workers}), c.format);
    case Command::Chsh:
      return run_chsh(c);
    case Command::KsTest:
      return serialize(ks_test(c.n, c.seed), c.format);
  }
  throw std::logic_error("unhandled command");
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  try {
    cfg = parse_args(args);
  } catch (const HelpRequested& e) {
    out << e.what();
    return 0;
  } catch (const UsageError& e) {
    err << "spinsim: " << e.what() << "\n";
    return 2;
  }
  try {
    const std::string bytes = execute(cfg);
    if (cfg.output_path) {
      write_file_atomic(*cfg.output_path, bytes);
    } else {
      out << bytes;
    }
  } catch (const UsageError& e) {
    err << "spinsim: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "spinsim: " << to_string(cfg.command) << ": " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace spinsim::cli
