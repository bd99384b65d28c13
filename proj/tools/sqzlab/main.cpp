#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sqz/types.hpp"
#include "sqzlab/config.hpp"
#include "sqzlab/runner.hpp"

namespace {

constexpr int kConfigError = 2;
constexpr int kInvariantError = 3;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Measurement-and-feedforward squeezer simulator"};
  std::string mode;
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;
  std::vector<std::string> overrides;
  app.add_option("mode", mode, "reproduce-paper | sweep | tomography | trajectory | compile")
      ->required()
      ->check(CLI::IsMember(sqzlab::kModes));
  app.add_option("--config", config_path, "YAML experiment config")->required();
  app.add_option("--seed", seed, "RNG seed (overrides sampling.seed)");
  app.add_option("--out", out_dir, "output directory (overrides output.dir)");
  app.add_option("--set", overrides, "dotted key=value override, repeatable")->take_all();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigError;
  }

  try {
    const sqzlab::ExperimentConfig config = sqzlab::load_config(config_path, mode, overrides, seed, out_dir);
    sqzlab::run(config, std::cout);
    std::cout << "wrote " << config.out_dir << " (config " << config.hash.substr(0, 12) << ", seed " << config.seed
              << ")\n";
  } catch (const sqzlab::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const sqz::InvariantError& e) {
    std::cerr << "invariant violated: " << e.what() << "\n";
    return kInvariantError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
