#include "pipeline.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>

#include <json.hpp>

#include "bootstrap.hpp"
#include "eval.hpp"

namespace fs = std::filesystem;

namespace tre {

Pipeline::Pipeline(RunConfig config, std::string run_dir)
    : config_(std::move(config)), run_dir_(std::move(run_dir)) {
  if (run_dir_.empty()) throw UsageError("run directory required");
  fs::create_directories(run_dir_);
}

const std::vector<std::string>& Pipeline::subcommands() {
  static const std::vector<std::string> names = {
      "mine-lexicon", "extract-events", "mine-pairs",  "seeds",
      "build-instances", "train",       "bootstrap",   "predict",
      "score",        "sample",         "export-graph"};
  return names;
}

std::string Pipeline::artifact(const std::string& name) const {
  return run_dir_ + "/" + name;
}

std::string Pipeline::require_artifact(const std::string& name,
                                       const std::string& producing_stage) const {
  std::string path = artifact(name);
  if (!fs::exists(path))
    throw DataError("missing artifact " + name + " in " + run_dir_ +
                    "; run the '" + producing_stage + "' stage first");
  return path;
}

const Corpus& Pipeline::corpus() {
  if (!corpus_loaded_) {
    if (config_.corpus_paths.empty())
      throw UsageError("no corpus files configured (key 'corpus')");
    // documents parse independently; bounded fan-out over files
    int threads = std::max(1, config_.threads);
    std::vector<std::vector<Sentence>> docs(config_.corpus_paths.size());
    for (std::size_t base = 0; base < docs.size();
         base += static_cast<std::size_t>(threads)) {
      std::size_t end = std::min(docs.size(), base + threads);
      std::vector<std::future<std::vector<Sentence>>> running;
      for (std::size_t i = base; i < end; ++i)
        running.push_back(std::async(std::launch::async, parse_conllu_file,
                                     config_.corpus_paths[i]));
      for (std::size_t i = base; i < end; ++i)
        docs[i] = running[i - base].get();
    }
    corpus_.documents = std::move(docs);
    corpus_.source_paths = config_.corpus_paths;
    corpus_loaded_ = true;
  }
  return corpus_;
}

const EmbeddingTable& Pipeline::embeddings() {
  if (!table_loaded_) {
    if (config_.embeddings_path.empty())
      table_ = std::make_unique<EmbeddingTable>(config_.model.dim,
                                                config_.rng_seed);
    else
      table_ = std::make_unique<EmbeddingTable>(load_embeddings(
          config_.embeddings_path, config_.model.dim, config_.rng_seed));
    table_loaded_ = true;
  }
  return *table_;
}

const ReportingVerbLexicon& Pipeline::reporting() {
  if (!lexicons_loaded_) {
    if (!config_.reporting_lexicon_path.empty())
      reporting_ = load_lexicon(config_.reporting_lexicon_path);
    if (!config_.noun_lexicon_path.empty())
      nouns_ = load_lexicon(config_.noun_lexicon_path);
    lexicons_loaded_ = true;
  }
  return reporting_;
}

const NounEventLexicon& Pipeline::nouns() {
  reporting();
  return nouns_;
}

void Pipeline::run(const std::string& subcommand) {
  const auto& names = subcommands();
  if (std::find(names.begin(), names.end(), subcommand) == names.end())
    throw UsageError("unknown subcommand '" + subcommand + "'");

  // provenance snapshot
  std::ofstream snap(artifact("config_used.txt"));
  snap << dump_run_config(config_);
  snap.close();

  if (subcommand == "mine-lexicon") mine_lexicon();
  else if (subcommand == "extract-events") extract_events_stage();
  else if (subcommand == "mine-pairs") mine_pairs();
  else if (subcommand == "seeds") seeds_stage();
  else if (subcommand == "build-instances") build_instances();
  else if (subcommand == "train") train_stage();
  else if (subcommand == "bootstrap") bootstrap_stage();
  else if (subcommand == "predict") predict_stage();
  else if (subcommand == "score") score_stage();
  else if (subcommand == "sample") sample_stage();
  else if (subcommand == "export-graph") export_graph_stage();
}

void Pipeline::mine_lexicon() {
  auto candidates = mine_noun_event_candidates(corpus(), 20);
  std::ofstream out(artifact("noun_event_candidates.tsv"));
  if (!out) throw DataError("cannot write noun_event_candidates.tsv");
  for (const auto& [lemma, count] : candidates)
    out << lemma << '\t' << count << "\n";
}

void Pipeline::extract_events_stage() {
  std::ofstream out(artifact("events.tsv"));
  if (!out) throw DataError("cannot write events.tsv");
  corpus().for_each_sentence([&](const Sentence& s) {
    for (const auto& m : extract_events(s, reporting(), nouns()))
      out << s.doc_id() << '\t' << s.sent_id() << '\t' << m.head_index << '\t'
          << (m.kind == EventKind::Verb ? "VERB" : "NOUN") << '\t'
          << canonical_phrase(s, m, config_.context.generalize) << "\n";
  });
}

void Pipeline::mine_pairs() {
  auto stats = accumulate_pair_stats(corpus(), config_.mining, reporting(), nouns());
  write_stats_tsv(artifact("pair_stats.tsv"), stats);
}

void Pipeline::seeds_stage() {
  auto stats = read_stats_tsv(require_artifact("pair_stats.tsv", "mine-pairs"));
  auto pool = build_candidate_pool(stats, config_.mining);
  std::ofstream out(artifact("candidates.tsv"));
  for (const auto& key : pool) out << key.first << '\t' << key.second << "\n";
  write_pairs_tsv(artifact("pairs_0.tsv"), select_seeds(stats, config_.mining));
}

namespace {

std::set<PairKey> read_candidates(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);
  std::set<PairKey> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto cols = split(line, '\t');
    if (cols.size() != 2) throw DataError(path + ": expected 2 columns");
    out.insert(PairKey(cols[0], cols[1]));
  }
  return out;
}

}  // namespace

void Pipeline::build_instances() {
  auto seeds = read_pairs_tsv(require_artifact("pairs_0.tsv", "seeds"));
  auto candidates = read_candidates(require_artifact("candidates.tsv", "seeds"));
  auto positives = build_positive_instances(corpus(), seeds, reporting(),
                                            nouns(), config_.context);
  std::set<PairKey> excluded = candidates;
  for (const auto& rp : seeds) excluded.insert(rp.key);
  auto negatives = sample_negative_instances(
      corpus(), excluded, reporting(), nouns(), config_.context,
      static_cast<long>(positives.size()), config_.bootstrap.negative_ratio,
      config_.rng_seed);
  if (negatives.shortfall > 0)
    std::cerr << "warning: negative pool short by " << negatives.shortfall
              << " instances\n";
  positives.insert(positives.end(),
                   std::make_move_iterator(negatives.instances.begin()),
                   std::make_move_iterator(negatives.instances.end()));
  write_instances_jsonl(artifact("instances.jsonl"), positives);
}

void Pipeline::train_stage() {
  auto instances =
      read_instances_jsonl(require_artifact("instances.jsonl", "build-instances"));
  TrainResult result = train(instances, embeddings(), config_.model, config_.train);
  save_checkpoint(artifact(config_.model_file), result.model, config_.train,
                  result.data_fingerprint);
  nlohmann::ordered_json j;
  j["best_epoch"] = result.best_epoch;
  j["epochs"] = nlohmann::json::array();
  for (const auto& e : result.epochs)
    j["epochs"].push_back({{"epoch", e.epoch},
                           {"mean_train_loss", e.mean_train_loss},
                           {"val_accuracy", e.val_accuracy}});
  std::ofstream out(artifact("train_report.json"));
  out << j.dump(2) << "\n";
}

void Pipeline::bootstrap_stage() {
  BootstrapInputs in{corpus(),
                     read_pairs_tsv(require_artifact("pairs_0.tsv", "seeds")),
                     read_candidates(require_artifact("candidates.tsv", "seeds")),
                     embeddings(),
                     reporting(),
                     nouns(),
                     config_.context,
                     config_.model,
                     config_.train,
                     config_.bootstrap,
                     run_dir_};
  BootstrapResult result = run_bootstrap(in);
  write_pairs_tsv(artifact("final_pairs.tsv"), result.accepted);
  save_checkpoint(artifact(config_.model_file), result.final_model,
                  config_.train, result.final_fingerprint);
}

void Pipeline::predict_stage() {
  ModelParams model =
      load_checkpoint(require_artifact(config_.model_file, "train or bootstrap"));
  auto candidates = read_candidates(require_artifact("candidates.tsv", "seeds"));

  std::ofstream jl(artifact("predictions.jsonl"));
  if (!jl) throw DataError("cannot write predictions.jsonl");

  // aggregate per (doc, pair) for the scorer; ties abstain
  std::map<std::pair<std::string, PairKey>, PairVoteTally> doc_tallies;
  corpus().for_each_sentence([&](const Sentence& s) {
    for (const auto& occ :
         pair_occurrences(s, reporting(), nouns(), config_.context)) {
      if (!candidates.count(occ.key)) continue;
      auto ctx = build_context(s, occ.first_head, occ.second_head, config_.context);
      if (!ctx) continue;
      Prediction pred = predict(model, embeddings(), *ctx);

      nlohmann::ordered_json j;
      j["doc"] = s.doc_id();
      j["sent"] = s.sent_id();
      j["first"] = occ.key.first;
      j["second"] = occ.key.second;
      j["first_textual"] = occ.first_is_key_first;
      j["tokens"] = *ctx;
      j["label"] = label_name(pred.label);
      j["confidence"] = pred.confidence;
      jl << j.dump() << "\n";

      apply_vote(doc_tallies[{s.doc_id(), occ.key}], pred.label,
                 occ.first_is_key_first);
    }
  });

  std::ofstream tsv(artifact("predictions.tsv"));
  if (!tsv) throw DataError("cannot write predictions.tsv");
  for (const auto& [slot, tally] : doc_tallies) {
    if (tally.n_forward == tally.n_backward) continue;  // abstain
    bool fwd = tally.n_forward > tally.n_backward;
    tsv << slot.first << '\t' << slot.second.first << '\t' << slot.second.second
        << '\t' << (fwd ? "BEFORE" : "AFTER") << '\t'
        << std::max(tally.n_forward, tally.n_backward) << "\n";
  }
}

void Pipeline::score_stage() {
  if (config_.gold_path.empty())
    throw UsageError("score requires config key 'gold'");
  auto gold = read_gold_tsv(config_.gold_path);

  std::string path = require_artifact("predictions.tsv", "predict");
  std::ifstream in(path);
  std::vector<RelationAssertion> predictions;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto cols = split(line, '\t');
    if (cols.size() < 4) throw DataError(path + ": expected >= 4 columns");
    RelationAssertion a;
    a.doc_id = cols[0];
    a.first = cols[1];
    a.second = cols[2];
    a.relation = parse_label(cols[3]);
    predictions.push_back(std::move(a));
  }

  ScoreReport r = score_before_after(predictions, gold);
  nlohmann::ordered_json j;
  j["precision"] = r.precision;
  j["recall"] = r.recall;
  j["f1"] = r.f1;
  j["tp"] = r.tp;
  j["fp"] = r.fp;
  j["fn"] = r.fn;
  std::string dumped = j.dump(2);
  std::ofstream out(artifact("score.json"));
  out << dumped << "\n";
  std::cout << dumped << "\n";
}

void Pipeline::sample_stage() {
  std::string path = require_artifact("predictions.jsonl", "predict");
  std::ifstream in(path);
  std::vector<LabeledInstance> labeled;
  std::string line;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    auto j = nlohmann::json::parse(line);
    LabeledInstance li;
    li.instance.doc_id = j.at("doc").get<std::string>();
    li.instance.sent_id = j.at("sent").get<std::string>();
    li.instance.pair = PairKey(j.at("first").get<std::string>(),
                               j.at("second").get<std::string>());
    li.instance.first_textual = j.at("first_textual").get<bool>();
    li.instance.tokens = j.at("tokens").get<std::vector<std::string>>();
    li.predicted = parse_label(j.at("label").get<std::string>());
    li.confidence = j.at("confidence").get<double>();
    labeled.push_back(std::move(li));
  }
  auto rows = sample_high_confidence(labeled, config_.sample_min_confidence,
                                     config_.sample_n, config_.rng_seed);
  write_annotation_sheet(artifact("annotation_sheet.csv"), rows);
}

void Pipeline::export_graph_stage() {
  auto pairs =
      read_pairs_tsv(require_artifact(config_.graph_source, "bootstrap or seeds"));
  std::ofstream dot(artifact("graph.dot"));
  dot << export_graph(pairs, GraphFormat::Dot);
  std::ofstream json(artifact("graph.json"));
  json << export_graph(pairs, GraphFormat::Json);
}

}  // namespace tre
