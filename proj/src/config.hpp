#ifndef TRE_CONFIG_HPP
#define TRE_CONFIG_HPP

#include <string>
#include <vector>

#include "bootstrap.hpp"
#include "cnn.hpp"
#include "contexts.hpp"
#include "mining.hpp"

namespace tre {

// Whole-run configuration, parsed from a `key = value` file (# comments,
// `corpus` may repeat). Every threshold defaults to its stock value.
struct RunConfig {
  std::vector<std::string> corpus_paths;
  std::string noun_lexicon_path;
  std::string reporting_lexicon_path;
  std::string embeddings_path;  // empty: every token gets a seeded OOV vector
  std::string gold_path;

  MiningConfig mining;
  ContextConfig context;
  ModelConfig model;
  TrainConfig train;
  BootstrapConfig bootstrap;

  double sample_min_confidence = 0.8;
  long sample_n = 100;
  std::string graph_source = "final_pairs.tsv";
  std::string model_file = "model.ckpt";

  std::uint64_t rng_seed = 1;
  int threads = 1;

  void apply_seed(std::uint64_t seed) {
    rng_seed = seed;
    train.rng_seed = seed;
  }
};

RunConfig parse_run_config(const std::string& path);

// Serialized back out for run provenance.
std::string dump_run_config(const RunConfig& cfg);

}  // namespace tre

#endif
