#ifndef TRE_PIPELINE_HPP
#define TRE_PIPELINE_HPP

#include <memory>
#include <string>
#include <vector>

#include "config.hpp"

namespace tre {

// Stage runner over a run directory. Each subcommand reads the previous
// stage's artifacts and writes its own; the config is snapshotted into the
// run directory for provenance.
class Pipeline {
 public:
  Pipeline(RunConfig config, std::string run_dir);

  static const std::vector<std::string>& subcommands();

  // Throws UsageError / DataError / NumericError.
  void run(const std::string& subcommand);

  const RunConfig& config() const { return config_; }
  const std::string& run_dir() const { return run_dir_; }

 private:
  const Corpus& corpus();
  const EmbeddingTable& embeddings();
  const ReportingVerbLexicon& reporting();
  const NounEventLexicon& nouns();

  std::string artifact(const std::string& name) const;
  std::string require_artifact(const std::string& name,
                               const std::string& producing_stage) const;

  void mine_lexicon();
  void extract_events_stage();
  void mine_pairs();
  void seeds_stage();
  void build_instances();
  void train_stage();
  void bootstrap_stage();
  void predict_stage();
  void score_stage();
  void sample_stage();
  void export_graph_stage();

  RunConfig config_;
  std::string run_dir_;

  bool corpus_loaded_ = false;
  Corpus corpus_;
  bool table_loaded_ = false;
  std::unique_ptr<EmbeddingTable> table_;
  bool lexicons_loaded_ = false;
  ReportingVerbLexicon reporting_;
  NounEventLexicon nouns_;
};

}  // namespace tre

#endif
