#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "stam/runner.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw stam::IOError("cannot read config file " + path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"STAM protocol synthesis and verification toolkit"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  unsigned long long seed = 0;
  bool seed_given = false;
  double grid_scale = 1.0;

  const std::vector<std::string> commands = {
      "compile", "simulate", "lindblad", "scan", "bound", "ramp", "figure"};
  for (const std::string& name : commands) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "run configuration file");
    sub->add_option("--out", out_dir, "output directory");
    sub->add_option("--seed", seed, "master seed")
        ->each([&](const std::string&) { seed_given = true; });
    sub->add_option("--grid-scale", grid_scale,
                    "multiplier applied to grid resolutions");
  }

  CLI11_PARSE(app, argc, argv);

  stam::RunConfig cfg;
  cfg.command = app.get_subcommands().front()->get_name();
  cfg.grid_scale = grid_scale;
  try {
    if (!config_path.empty()) {
      cfg.kv = stam::parse_config(read_file(config_path));
    }
    if (seed_given) {
      cfg.kv["seed"] = std::to_string(seed);
    }
    // Resolution order: environment override, --out, config, cwd.
    if (const char* env = std::getenv(stam::kOutDirEnv); env && *env) {
      cfg.out_dir = env;
    } else if (!out_dir.empty()) {
      cfg.out_dir = out_dir;
    } else {
      cfg.out_dir = cfg.get_str("out_dir", ".");
    }
  } catch (const stam::ConfigError& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return 2;
  } catch (const stam::IOError& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return 4;
  }
  return stam::run(cfg);
}
