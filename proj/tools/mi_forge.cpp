#include <cstdlib>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>
#include <spdlog/spdlog.h>

#include "miforge/core/errors.h"
#include "miforge/pipeline/config.h"
#include "miforge/pipeline/stages.h"

namespace mp = miforge::pipeline;

int main(int argc, char** argv) {
  using Command = mp::StageResult (*)(const mp::PipelineConfig&, const mp::CommandOptions&);
  const std::map<std::string, Command> commands{
      {"profile", mp::cmd_profile}, {"story", mp::cmd_story}, {"simulate", mp::cmd_simulate},
      {"eval", mp::cmd_eval},       {"judge", mp::cmd_judge}, {"stats", mp::cmd_stats},
      {"report", mp::cmd_report},   {"all", mp::cmd_all}};

  CLI::App app{"Generate, evaluate and report MI-coded counseling dialogues"};
  std::string command;
  std::string config_path;
  mp::CommandOptions options;
  std::uint64_t seed = 0;
  bool verbose = false;

  app.add_option("command", command, "profile | story | simulate | eval | judge | stats | report | all")
      ->required()
      ->check(CLI::IsMember(commands));
  app.add_option("--config", config_path, "pipeline config (JSON)")->required()->check(CLI::ExistingFile);
  app.add_flag("--no-story", options.no_story, "simulate without the situational story");
  app.add_flag("--no-mi-code", options.no_mi_code, "simulate without MI code selection");
  app.add_flag("--force", options.force, "redo records that already exist");
  auto* seed_opt = app.add_option("--seed", seed, "override the config seed");
  app.add_flag("-v,--verbose", verbose, "debug logging");
  CLI11_PARSE(app, argc, argv);

  spdlog::set_level(verbose ? spdlog::level::debug : spdlog::level::info);
  if (seed_opt->count() > 0) options.seed = seed;

  try {
    const auto config = mp::load_config(config_path);
    const auto result = commands.at(command)(config, options);
    std::cout << command << ": " << result.written << " written, " << result.skipped
              << " skipped, " << result.failed << " failed\n";
    return result.failed > 0 ? 1 : 0;
  } catch (const miforge::Error& e) {
    spdlog::error("{}", e.what());
    return 2;
  } catch (const std::exception& e) {
    spdlog::error("unexpected failure: {}", e.what());
    return 3;
  }
}
