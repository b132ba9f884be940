// govmine: mines governance documents out of git histories, parses them into
// institutional statements and reports longitudinal change metrics.

#include <cstdio>
#include <exception>
#include <string>

#include "CLI11.hpp"
#include "govmine/common/error.hpp"
#include "govmine/report/pipeline.hpp"
#include "govmine/report/run_config.hpp"
#include "govmine/report/tables.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitStage = 3;

struct CliOptions {
  std::string config_path;
  std::string out;
  std::string stage_input;
  std::uint64_t seed = 0;
  bool seed_set = false;
  double theta = 0.0;
  bool theta_set = false;
  long bootstrap_b = 0;
  bool bootstrap_set = false;
};

govmine::report::RunConfig load(const CliOptions& cli) {
  auto config = govmine::report::RunConfig::from_json_file(cli.config_path);
  if (!cli.out.empty()) config.out_dir = cli.out;
  if (cli.seed_set) config.seed = cli.seed;
  if (cli.theta_set) config.theta = cli.theta;
  if (cli.bootstrap_set) config.bootstrap.replicates = cli.bootstrap_b;
  config.validate();
  return config;
}

void add_common(CLI::App* cmd, CliOptions& cli) {
  cmd->add_option("--config", cli.config_path, "run config (JSON)")
      ->required();
  cmd->add_option("--out", cli.out, "output directory override");
  cmd->add_option("--seed", cli.seed, "global seed override")
      ->each([&cli](const std::string&) { cli.seed_set = true; });
  cmd->add_option("--theta", cli.theta, "clustering distance threshold")
      ->each([&cli](const std::string&) { cli.theta_set = true; });
  cmd->add_option("--bootstrap-b", cli.bootstrap_b,
                  "bootstrap replicate count")
      ->each([&cli](const std::string&) { cli.bootstrap_set = true; });
  cmd->add_option("--stage-input", cli.stage_input,
                  "directory holding upstream artifacts (replay)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"governance corpus mining and drift metrics"};
  app.require_subcommand(1);
  CliOptions cli;

  auto* mine = app.add_subcommand("mine", "discover and pair snapshots");
  auto* normalize = app.add_subcommand("normalize", "markup to plain text");
  auto* parse = app.add_subcommand("parse", "extract statements");
  auto* cluster = app.add_subcommand("cluster", "embed and group statements");
  auto* metrics = app.add_subcommand("metrics", "per-repository metrics");
  auto* report = app.add_subcommand("report", "aggregate and emit tables");
  auto* run = app.add_subcommand("run", "all stages in order");
  for (auto* cmd : {mine, normalize, parse, cluster, metrics, report, run})
    add_common(cmd, cli);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfig;
  }

  try {
    govmine::report::RunConfig config = load(cli);
    using namespace govmine::report;
    if (mine->parsed()) {
      stage_mine(config);
    } else if (normalize->parsed()) {
      stage_normalize(config, cli.stage_input);
    } else if (parse->parsed()) {
      stage_parse(config, cli.stage_input);
    } else if (cluster->parsed()) {
      stage_cluster(config, cli.stage_input);
    } else if (metrics->parsed()) {
      stage_metrics(config, cli.stage_input);
    } else if (report->parsed()) {
      ReportBundle bundle = stage_report(config, cli.stage_input);
      std::fputs(emit_tables(bundle).text.c_str(), stdout);
    } else if (run->parsed()) {
      ReportBundle bundle = run_all(config);
      std::fputs(emit_tables(bundle).text.c_str(), stdout);
    }
  } catch (const govmine::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfig;
  } catch (const govmine::StageError& e) {
    std::fprintf(stderr, "stage failed: %s\n", e.what());
    return kExitStage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitStage;
  }
  return kExitOk;
}
