// Command-line driver. Links only the C API.

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <string>

#include <CLI11.hpp>

#include "temporal/temporal.h"

int main(int argc, char** argv) {
  CLI::App app{"Weakly supervised temporal relation bootstrapping"};
  app.require_subcommand(1, 0);  // one or more stages, run in order

  std::string config_path;
  std::string run_dir;
  if (const char* env = std::getenv("TEMPORAL_RUN_DIR")) run_dir = env;
  std::uint64_t seed = 0;
  bool seed_set = false;
  int threads = 0;

  app.add_option("--config", config_path, "run configuration file")->required();
  app.add_option("--run-dir", run_dir,
                 "artifact directory (default: $TEMPORAL_RUN_DIR)");
  app.add_option("--seed", seed, "override the configured rng seed")
      ->each([&](const std::string&) { seed_set = true; });
  app.add_option("--threads", threads, "worker parallelism for corpus loading");

  for (const char* const* name = te_stage_names(); *name; ++name)
    app.add_subcommand(*name);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) ? TE_ERR_USAGE : TE_OK;
  }

  if (run_dir.empty()) {
    std::fprintf(stderr, "error: no run directory (--run-dir or TEMPORAL_RUN_DIR)\n");
    return TE_ERR_USAGE;
  }

  te_session* session = te_session_open(config_path.c_str(), run_dir.c_str());
  if (!session) {
    std::fprintf(stderr, "error: %s\n", te_last_open_error());
    return TE_ERR_USAGE;
  }
  if (seed_set) te_session_set_seed(session, seed);
  if (threads > 0 && te_session_set_threads(session, threads) != TE_OK) {
    std::fprintf(stderr, "error: %s\n", te_session_error(session));
    te_session_close(session);
    return TE_ERR_USAGE;
  }

  int status = TE_OK;
  for (const auto* sub : app.get_subcommands()) {
    status = te_session_run(session, sub->get_name().c_str());
    if (status != TE_OK) {
      std::fprintf(stderr, "error (%s): %s\n", sub->get_name().c_str(),
                   te_session_error(session));
      break;
    }
  }
  te_session_close(session);
  return status;
}
