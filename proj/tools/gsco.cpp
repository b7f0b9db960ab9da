// gsco: generate instances, run solvers and compare methods.
//
//   gsco generate --config run.cfg --out inst/
//   gsco solve    --config run.cfg --out run/ method=best_pgd
//   gsco compare  --config a.cfg --config b.cfg --out cmp/
//
// Exit codes: 0 ok, 2 config error, 3 numeric error, 4 size-cap refusal.

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gsco/error.hpp"
#include "gsco/harness.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitSize = 4;

using gsco::harness::RunConfig;

RunConfig make_config(const std::string& path, const std::vector<std::string>& overrides,
                      std::optional<std::uint64_t> seed, const std::string& out) {
  RunConfig config = path.empty() ? RunConfig{} : RunConfig::load(path);
  if (seed) config.set("seed", std::to_string(*seed));
  if (!out.empty()) config.set("out", out);
  for (const auto& kv : overrides) config.apply(kv);
  return config;
}

std::string output_dir(const RunConfig& config) {
  auto out = config.get("out");
  if (!out) throw gsco::ConfigError("no output directory (use --out or out=...)");
  return *out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Frank-Wolfe solvers over graph-structured support sets"};
  app.require_subcommand(1);

  std::vector<std::string> config_paths;
  std::vector<std::string> overrides;
  std::optional<std::uint64_t> seed;
  std::string out;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_paths, "key=value config file");
    sub->add_option("--seed", seed, "global seed");
    sub->add_option("--out", out, "output directory");
    sub->add_option("overrides", overrides, "key=value overrides");
  };
  auto* generate = app.add_subcommand("generate", "generate a problem instance");
  auto* solve = app.add_subcommand("solve", "run one method");
  auto* compare = app.add_subcommand("compare", "run several methods on one instance");
  add_common(generate);
  add_common(solve);
  add_common(compare);

  CLI11_PARSE(app, argc, argv);

  try {
    if (compare->parsed()) {
      std::vector<RunConfig> configs;
      for (const auto& path : config_paths) {
        configs.push_back(make_config(path, overrides, seed, ""));
      }
      RunConfig first = make_config("", overrides, seed, out);
      auto result = gsco::harness::cmd_compare(configs, output_dir(first));
      std::cout << "rank,method,best_objective,best_t,steps\n";
      for (std::size_t r = 0; r < result.ranking.size(); ++r) {
        const auto& run = result.runs[result.ranking[r]];
        std::printf("%zu,%s,%.17g,%zu,%zu\n", r + 1, run.label.c_str(), run.result.f_best,
                    run.result.trace.best_t, run.result.trace.steps());
      }
      return 0;
    }
    if (config_paths.size() > 1) {
      throw gsco::ConfigError("only compare accepts several --config files");
    }
    RunConfig config =
        make_config(config_paths.empty() ? "" : config_paths.front(), overrides, seed, out);
    if (generate->parsed()) {
      auto result = gsco::harness::cmd_generate(config, output_dir(config));
      std::printf("fingerprint %s\nobjective_at_truth %.17g\n", result.fingerprint.c_str(),
                  result.objective_at_truth);
    } else {
      auto run = gsco::harness::cmd_solve(config, output_dir(config));
      std::printf("%s: best_objective %.17g at t=%zu after %zu steps (%s)\n", run.label.c_str(),
                  run.result.f_best, run.result.trace.best_t, run.result.trace.steps(),
                  std::string(gsco::to_string(run.result.trace.termination)).c_str());
    }
    return 0;
  } catch (const gsco::SizeError& e) {
    std::cerr << "gsco: " << e.what() << '\n';
    return kExitSize;
  } catch (const gsco::NumericError& e) {
    std::cerr << "gsco: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const gsco::Error& e) {
    std::cerr << "gsco: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "gsco: " << e.what() << '\n';
    return kExitConfig;
  }
}
