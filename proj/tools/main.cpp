#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "selfgrav/cli.hpp"

namespace fs = std::filesystem;
using selfgrav::json;

namespace {

int run_sweep(const json& base, const json& patches, const fs::path& out, unsigned jobs, std::ostream& log) {
  std::vector<int> codes(patches.size(), 0);
  std::vector<std::string> logs(patches.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < patches.size(); i = next++) {
      json cfg = base;
      cfg.erase("sweep");
      cfg.merge_patch(patches[i]);
      char name[32];
      std::snprintf(name, sizeof name, "sweep_%03zu", i);
      std::ostringstream os;
      codes[i] = selfgrav::run(cfg, out / name, os).exit_code;
      logs[i] = os.str();
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < std::max(1u, jobs); ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  // logs in entry order keep the output deterministic
  for (std::size_t i = 0; i < logs.size(); ++i) log << "[" << i << "] " << logs[i];
  return *std::max_element(codes.begin(), codes.end());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Static self-gravitating elastic bodies"};
  std::string config_path;
  std::string output;
  unsigned jobs = 1;
  long long seed = 0;
  app.add_option("--config", config_path, "run configuration (JSON)")->required();
  app.add_option("--output", output, "output directory (overrides output.dir)");
  app.add_option("--jobs", jobs, "parallel sweep entries")->check(CLI::PositiveNumber);
  app.add_option("--seed", seed, "seed for randomized grids (recorded, reserved)");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  json config;
  {
    std::ifstream in(config_path);
    if (!in) {
      std::cerr << "error: cannot open " << config_path << '\n';
      return 1;
    }
    try {
      config = json::parse(in);
    } catch (const json::parse_error& e) {
      std::cerr << "error: " << e.what() << '\n';
      return 1;
    }
  }
  fs::path out = ".";
  if (!output.empty()) {
    out = output;
  } else if (config.is_object() && config.contains("output") && config["output"].is_object() &&
             config["output"].contains("dir") && config["output"]["dir"].is_string()) {
    out = config["output"]["dir"].get<std::string>();
  }
  if (config.is_object()) config["seed"] = seed;

  if (config.is_object() && config.contains("sweep")) {
    if (!config["sweep"].is_array() || config["sweep"].empty()) {
      std::cerr << "error: 'sweep' must be a non-empty array\n";
      return 1;
    }
    return run_sweep(config, config["sweep"], out, jobs, std::cout);
  }
  return selfgrav::run(config, out, std::cout).exit_code;
}
