#ifndef TRE_BOOTSTRAP_HPP
#define TRE_BOOTSTRAP_HPP

#include <map>
#include <set>
#include <string>
#include <vector>

#include "cnn.hpp"
#include "contexts.hpp"
#include "mining.hpp"

namespace tre {

struct PairVoteTally {
  long n_forward = 0;   // contexts voting that key.first precedes key.second
  long n_backward = 0;
  long n_other = 0;
  long total() const { return n_forward + n_backward + n_other; }
};

struct BootstrapConfig {
  long base_support = 15;     // minimum majority votes at iteration 0
  long support_step = 5;      // raised each iteration against semantic drift
  double majority = 0.6;      // inclusive
  double diff_ratio = 0.4;    // strict
  long stop_threshold = 100;  // stop when fewer new pairs are accepted
  int max_iterations = 10;
  long negative_ratio = 10;
  double vote_min_confidence = 0.0;  // optional cutoff; 0 = count all votes
};

struct IterationReport {
  int iteration = 0;
  long n_positive_instances = 0;
  long n_negative_instances = 0;
  long negative_shortfall = 0;
  std::map<std::string, long> labeled_counts;  // per predicted class
  long new_pairs = 0;
  std::map<std::string, long> rejections;  // reason -> count
  double val_accuracy = 0.0;
  int best_epoch = 0;
};

// Orientation vote for one labeled context: BEFORE means the textually
// first phrase precedes, so the vote direction depends on which key half
// came first.
void apply_vote(PairVoteTally& tally, Label label, bool first_textual);

std::map<PairKey, PairVoteTally> label_candidate_contexts(
    const ModelParams& model, const EmbeddingTable& table, const Corpus& corpus,
    const std::set<PairKey>& candidates, const std::set<PairKey>& accepted,
    const ReportingVerbLexicon& reporting, const NounEventLexicon& nouns,
    const ContextConfig& ctx_cfg, const BootstrapConfig& cfg,
    std::map<std::string, long>* labeled_counts = nullptr);

// The three acceptance rules at iteration k: majority >= 0.6 of all
// contexts, majority votes >= base + step*k, |fwd - bwd| > 0.4 * total.
std::vector<RegularPair> select_new_pairs(
    const std::map<PairKey, PairVoteTally>& tallies, int iteration,
    const BootstrapConfig& cfg, std::map<std::string, long>* rejections = nullptr);

struct BootstrapResult {
  std::vector<RegularPair> accepted;
  ModelParams final_model;
  std::string final_fingerprint;
  std::vector<IterationReport> reports;
};

struct BootstrapInputs {
  const Corpus& corpus;
  std::vector<RegularPair> seeds;
  std::set<PairKey> candidates;
  const EmbeddingTable& table;
  const ReportingVerbLexicon& reporting;
  const NounEventLexicon& nouns;
  ContextConfig ctx_cfg;
  ModelConfig model_cfg;
  TrainConfig train_cfg;
  BootstrapConfig cfg;
  std::string run_dir;  // per-iteration artifacts written here when non-empty
};

BootstrapResult run_bootstrap(const BootstrapInputs& in);

void write_tallies_tsv(const std::string& path,
                       const std::map<PairKey, PairVoteTally>& tallies);

}  // namespace tre

#endif
