#include "bootstrap.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>

#include <json.hpp>

namespace tre {

void apply_vote(PairVoteTally& tally, Label label, bool first_textual) {
  switch (label) {
    case Label::Before:
      (first_textual ? tally.n_forward : tally.n_backward)++;
      break;
    case Label::After:
      (first_textual ? tally.n_backward : tally.n_forward)++;
      break;
    case Label::Other:
      tally.n_other++;
      break;
    default:
      throw UsageError("cannot vote with UNLABELED");
  }
}

std::map<PairKey, PairVoteTally> label_candidate_contexts(
    const ModelParams& model, const EmbeddingTable& table, const Corpus& corpus,
    const std::set<PairKey>& candidates, const std::set<PairKey>& accepted,
    const ReportingVerbLexicon& reporting, const NounEventLexicon& nouns,
    const ContextConfig& ctx_cfg, const BootstrapConfig& cfg,
    std::map<std::string, long>* labeled_counts) {
  std::map<PairKey, PairVoteTally> tallies;
  corpus.for_each_sentence([&](const Sentence& s) {
    for (const auto& occ : pair_occurrences(s, reporting, nouns, ctx_cfg)) {
      if (!candidates.count(occ.key) || accepted.count(occ.key)) continue;
      auto ctx = build_context(s, occ.first_head, occ.second_head, ctx_cfg);
      if (!ctx) continue;
      Prediction pred = predict(model, table, *ctx);
      if (labeled_counts) (*labeled_counts)[label_name(pred.label)]++;
      if (pred.confidence <= cfg.vote_min_confidence &&
          cfg.vote_min_confidence > 0.0)
        continue;
      apply_vote(tallies[occ.key], pred.label, occ.first_is_key_first);
    }
  });
  return tallies;
}

std::vector<RegularPair> select_new_pairs(
    const std::map<PairKey, PairVoteTally>& tallies, int iteration,
    const BootstrapConfig& cfg, std::map<std::string, long>* rejections) {
  const long min_support = cfg.base_support + cfg.support_step * iteration;
  auto reject = [&](const char* reason) {
    if (rejections) (*rejections)[reason]++;
  };

  std::vector<RegularPair> out;
  for (const auto& [key, tally] : tallies) {
    long majority_votes = std::max(tally.n_forward, tally.n_backward);
    long total = tally.total();
    if (total == 0 || tally.n_forward == tally.n_backward) {
      // an orientation tie can never clear the difference-ratio rule
      reject("orientation_tie");
      continue;
    }
    if (static_cast<double>(majority_votes) <
        cfg.majority * static_cast<double>(total)) {
      reject("below_majority");
      continue;
    }
    if (majority_votes < min_support) {
      reject("below_support");
      continue;
    }
    if (!(static_cast<double>(std::labs(tally.n_forward - tally.n_backward)) >
          cfg.diff_ratio * static_cast<double>(total))) {
      reject("below_diff_ratio");
      continue;
    }
    RegularPair rp;
    rp.key = key;
    rp.orientation = tally.n_forward > tally.n_backward ? Orientation::Forward
                                                        : Orientation::Backward;
    rp.provenance = iteration + 1;
    rp.support_forward = tally.n_forward;
    rp.support_backward = tally.n_backward;
    out.push_back(std::move(rp));
  }
  return out;
}

void write_tallies_tsv(const std::string& path,
                       const std::map<PairKey, PairVoteTally>& tallies) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path);
  for (const auto& [key, t] : tallies)
    out << key.first << '\t' << key.second << '\t' << t.n_forward << '\t'
        << t.n_backward << '\t' << t.n_other << "\n";
}

namespace {

void write_report(const std::string& path, const IterationReport& r) {
  nlohmann::ordered_json j;
  j["iteration"] = r.iteration;
  j["positive_instances"] = r.n_positive_instances;
  j["negative_instances"] = r.n_negative_instances;
  j["negative_shortfall"] = r.negative_shortfall;
  j["labeled_counts"] = r.labeled_counts;
  j["new_pairs"] = r.new_pairs;
  j["rejections"] = r.rejections;
  j["val_accuracy"] = r.val_accuracy;
  j["best_epoch"] = r.best_epoch;
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path);
  out << j.dump(2) << "\n";
}

}  // namespace

BootstrapResult run_bootstrap(const BootstrapInputs& in) {
  if (in.seeds.empty()) throw UsageError("bootstrap needs a non-empty seed set");

  BootstrapResult result;
  result.accepted = in.seeds;
  std::set<PairKey> accepted_keys;
  for (const auto& rp : in.seeds) accepted_keys.insert(rp.key);

  const bool artifacts = !in.run_dir.empty();
  if (artifacts) {
    std::filesystem::create_directories(in.run_dir);
    write_pairs_tsv(in.run_dir + "/pairs_0.tsv", result.accepted);
  }

  for (int k = 0; k < in.cfg.max_iterations; ++k) {
    IterationReport report;
    report.iteration = k;

    auto positives = build_positive_instances(in.corpus, result.accepted,
                                              in.reporting, in.nouns, in.ctx_cfg);
    if (positives.empty()) throw DataError("no positive instances extractable");
    report.n_positive_instances = static_cast<long>(positives.size());

    std::set<PairKey> excluded = in.candidates;
    excluded.insert(accepted_keys.begin(), accepted_keys.end());
    auto negatives = sample_negative_instances(
        in.corpus, excluded, in.reporting, in.nouns, in.ctx_cfg,
        report.n_positive_instances, in.cfg.negative_ratio,
        in.train_cfg.rng_seed + static_cast<std::uint64_t>(k));
    report.n_negative_instances = static_cast<long>(negatives.instances.size());
    report.negative_shortfall = negatives.shortfall;

    std::vector<Instance> training = std::move(positives);
    training.insert(training.end(),
                    std::make_move_iterator(negatives.instances.begin()),
                    std::make_move_iterator(negatives.instances.end()));

    // fresh model each iteration on the accumulated positive set
    TrainResult trained = train(training, in.table, in.model_cfg, in.train_cfg);
    report.val_accuracy = trained.epochs.empty()
                              ? 0.0
                              : trained.epochs[trained.best_epoch - 1].val_accuracy;
    report.best_epoch = trained.best_epoch;
    result.final_model = trained.model;
    result.final_fingerprint = trained.data_fingerprint;

    auto tallies = label_candidate_contexts(
        trained.model, in.table, in.corpus, in.candidates, accepted_keys,
        in.reporting, in.nouns, in.ctx_cfg, in.cfg, &report.labeled_counts);

    auto new_pairs = select_new_pairs(tallies, k, in.cfg, &report.rejections);
    report.new_pairs = static_cast<long>(new_pairs.size());
    for (const auto& rp : new_pairs) {
      result.accepted.push_back(rp);
      accepted_keys.insert(rp.key);
    }

    if (artifacts) {
      write_tallies_tsv(in.run_dir + "/tallies_" + std::to_string(k) + ".tsv",
                        tallies);
      save_checkpoint(in.run_dir + "/model_" + std::to_string(k) + ".ckpt",
                      trained.model, in.train_cfg, trained.data_fingerprint);
      write_pairs_tsv(in.run_dir + "/pairs_" + std::to_string(k + 1) + ".tsv",
                      result.accepted);
      write_report(in.run_dir + "/report_" + std::to_string(k) + ".json", report);
    }
    result.reports.push_back(std::move(report));

    if (result.reports.back().new_pairs < in.cfg.stop_threshold) break;
  }
  return result;
}

}  // namespace tre
