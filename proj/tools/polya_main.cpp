#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "polya/cli_dispatch.hpp"

namespace {

// Registers the flags shared by every subcommand. Precedence is
// flag > environment (POLYA_*) > built-in default.
void add_common(CLI::App* cmd, polya::CommandRequest& req, std::string& format,
                std::string& output) {
  cmd->add_option("--format", format, "output format: csv or json")
      ->envname("POLYA_FORMAT")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--output", output, "write the table to this path instead of stdout");
  cmd->callback([&req, cmd] { req.subcommand = cmd->get_name(); });
}

void add_param(CLI::App* cmd, polya::CommandRequest& req, const std::string& name,
               const std::string& help, const char* env = nullptr) {
  auto opt = cmd->add_option_function<std::string>(
      "--" + name, [&req, name](const std::string& v) { req.params[name] = v; }, help);
  if (env) opt->envname(env);
}

void add_field_toggle(CLI::App* cmd, polya::CommandRequest& req) {
  cmd->add_flag_callback(
      "--exact", [&req] { req.params["field"] = "exact"; },
      "compute in the exact rational field (default)");
  cmd->add_flag_callback(
      "--float", [&req] { req.params["field"] = "float"; },
      "compute in double precision");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Joint return/reset statistics of the reset lattice walk"};
  app.require_subcommand(1);

  polya::CommandRequest req;
  std::string format = "csv", output;

  auto* amplitudes = app.add_subcommand("amplitudes", "growth-rate amplitudes vs r");
  add_param(amplitudes, req, "r-min", "left end of the r grid");
  add_param(amplitudes, req, "r-max", "right end of the r grid");
  add_param(amplitudes, req, "points", "grid size");

  auto* decay = app.add_subcommand("decay", "cross amplitude and tail decay rate vs r");
  add_param(decay, req, "r-min", "left end of the r grid");
  add_param(decay, req, "r-max", "right end of the r grid");
  add_param(decay, req, "points", "grid size");

  auto* dist = app.add_subcommand("dist", "joint law of crosses and dots at time t");
  add_param(dist, req, "r", "resetting probability (exact fraction or decimal)");
  add_param(dist, req, "t", "horizon (<= 64 exact, <= 256 float)");
  add_field_toggle(dist, req);

  auto* dressed = app.add_subcommand("dressed", "dressed return-time distribution");
  add_param(dressed, req, "r", "resetting probability");
  add_param(dressed, req, "tau-max", "largest interarrival time");
  add_field_toggle(dressed, req);

  auto* cumulants = app.add_subcommand("cumulants", "joint cumulant amplitudes c_{k,l}");
  add_param(cumulants, req, "r", "resetting probability");
  add_param(cumulants, req, "order", "total expansion order (<= 12)");
  add_field_toggle(cumulants, req);

  auto* ldf = app.add_subcommand("ldf", "univariate large-deviation curves");
  add_param(ldf, req, "r", "resetting probability");
  add_param(ldf, req, "which", "dot, cross, sum or all");
  add_param(ldf, req, "points", "points per curve");

  auto* crossover = app.add_subcommand("crossover", "weak-resetting density f(zeta, u)");
  add_param(crossover, req, "u", "comma-separated list of u values");
  add_param(crossover, req, "zeta-max", "right end of the zeta grid");
  add_param(crossover, req, "points", "grid size");

  auto* moments = app.add_subcommand("moments", "crossover moments and cumulants vs u");
  add_param(moments, req, "u-min", "left end of the u grid");
  add_param(moments, req, "u-max", "right end of the u grid");
  add_param(moments, req, "points", "grid size");
  add_param(moments, req, "kmax", "highest moment order");

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo count histograms");
  add_param(simulate, req, "r", "resetting probability");
  add_param(simulate, req, "t", "horizon");
  add_param(simulate, req, "paths", "number of independent paths");
  add_param(simulate, req, "seed", "master seed", "POLYA_SEED");

  auto* stationary = app.add_subcommand("stationary", "stationary position histogram");
  add_param(stationary, req, "r", "resetting probability");
  add_param(stationary, req, "burn", "burn-in steps (0: derived from r)");
  add_param(stationary, req, "samples", "number of independent samples");
  add_param(stationary, req, "seed", "master seed", "POLYA_SEED");

  for (auto* cmd : {amplitudes, decay, dist, dressed, cumulants, ldf, crossover, moments,
                    simulate, stationary})
    add_common(cmd, req, format, output);

  CLI11_PARSE(app, argc, argv);

  req.format = format == "json" ? polya::OutputFormat::json : polya::OutputFormat::csv;
  req.output_path = output;

  try {
    auto table = polya::dispatch(req);
    polya::emit_request(req, table);
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  }
  return 0;
}
