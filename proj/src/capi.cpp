#include "temporal/temporal.h"

#include <string>

#include "pipeline.hpp"

using tre::DataError;
using tre::NumericError;
using tre::UsageError;

struct te_session {
  tre::RunConfig config;
  std::string run_dir;
  std::string last_error;
};

namespace {

thread_local std::string g_open_error;

int guard(te_session* s, int fallback, const auto& fn) {
  if (!s) return TE_ERR_USAGE;
  try {
    fn();
    s->last_error.clear();
    return TE_OK;
  } catch (const UsageError& e) {
    s->last_error = e.what();
    return TE_ERR_USAGE;
  } catch (const DataError& e) {
    s->last_error = e.what();
    return TE_ERR_DATA;
  } catch (const NumericError& e) {
    s->last_error = e.what();
    return TE_ERR_NUMERIC;
  } catch (const std::exception& e) {
    s->last_error = e.what();
    return fallback;
  }
}

}  // namespace

extern "C" {

te_session* te_session_open(const char* config_path, const char* run_dir) {
  if (!config_path || !run_dir) {
    g_open_error = "config_path and run_dir are required";
    return nullptr;
  }
  try {
    auto config = tre::parse_run_config(config_path);
    auto* s = new te_session{std::move(config), run_dir, {}};
    g_open_error.clear();
    return s;
  } catch (const std::exception& e) {
    g_open_error = e.what();
    return nullptr;
  }
}

const char* te_last_open_error(void) { return g_open_error.c_str(); }

int te_session_set_seed(te_session* s, uint64_t seed) {
  return guard(s, TE_ERR_USAGE, [&] { s->config.apply_seed(seed); });
}

int te_session_set_threads(te_session* s, int threads) {
  return guard(s, TE_ERR_USAGE, [&] {
    if (threads < 1) throw UsageError("threads must be >= 1");
    s->config.threads = threads;
  });
}

int te_session_run(te_session* s, const char* stage) {
  return guard(s, TE_ERR_DATA, [&] {
    if (!stage) throw UsageError("stage name required");
    // a fresh Pipeline per run keeps stages idempotent over artifacts
    tre::Pipeline pipeline(s->config, s->run_dir);
    pipeline.run(stage);
  });
}

const char* te_session_error(const te_session* s) {
  return s ? s->last_error.c_str() : "null session";
}

void te_session_close(te_session* s) { delete s; }

const char* const* te_stage_names(void) {
  static const char* names[] = {
      "mine-lexicon", "extract-events", "mine-pairs", "seeds",
      "build-instances", "train", "bootstrap", "predict",
      "score", "sample", "export-graph", nullptr};
  return names;
}

const char* te_version(void) { return "0.1.0"; }

}  // extern "C"
