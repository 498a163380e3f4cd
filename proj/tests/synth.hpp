#ifndef TRE_TEST_SYNTH_HPP
#define TRE_TEST_SYNTH_HPP

// Synthetic planted-pair corpus shared by the pipeline, C-API, and
// acceptance tests. Five noun->verb event pairs are planted with a
// consistent temporal direction; two get enough explicit pattern evidence
// to become seeds, the other three only enough to reach the candidate pool.

#include <fstream>
#include <set>
#include <string>
#include <vector>

#include "corpus.hpp"
#include "fixtures.hpp"

namespace synth {

struct PlantedPair {
  std::string noun;       // lexicon noun lemma, antecedent event
  std::string verb;       // verb lemma, consequent event
  bool seed = false;
  std::string phrase() const { return verb + "|pat:PERSON"; }
};

inline const std::vector<PlantedPair>& planted_pairs() {
  static const std::vector<PlantedPair> pairs = {
      {"attack", "arrest", true},
      {"storm", "evacuate", true},
      {"election", "celebrate", false},
      {"quake", "rebuild", false},
      {"wedding", "toast", false},
  };
  return pairs;
}

inline std::set<std::string> noun_lexicon() {
  std::set<std::string> out;
  for (const auto& p : planted_pairs()) out.insert(p.noun);
  return out;
}

// "happen" carries the forward template; keeping it out of the event set
// keeps those sentences down to exactly one event pair.
inline std::set<std::string> reporting_lexicon() { return {"happen", "say"}; }

// "Police <verb>ed them after <noun>s" -- explicit prep_after pattern.
inline tre::Sentence pattern_sentence(const PlantedPair& p,
                                      const std::string& sent_id) {
  return fix::make_sentence({{"Police", "police", "NOUN", 2, "nsubj"},
                             {p.verb + "ed", p.verb, "VERB", 0, "root"},
                             {"them", "they", "PRON", 2, "dobj"},
                             {"after", "after", "ADP", 5, "case"},
                             {p.noun + "s", p.noun, "NOUN", 2, "prep_after"}},
                            "synth", sent_id);
}

// "<noun>s happened and police subsequently <verb>ed them" -- plain
// co-occurrence in temporal order, cued by "subsequently".
inline tre::Sentence forward_sentence(const PlantedPair& p,
                                      const std::string& sent_id) {
  return fix::make_sentence(
      {{p.noun + "s", p.noun, "NOUN", 2, "nsubj"},
       {"happened", "happen", "VERB", 0, "root"},
       {"and", "and", "CCONJ", 6, "cc"},
       {"police", "police", "NOUN", 6, "nsubj"},
       {"subsequently", "subsequently", "ADV", 6, "advmod"},
       {p.verb + "ed", p.verb, "VERB", 2, "conj"},
       {"them", "they", "PRON", 6, "dobj"}},
      "synth", sent_id);
}

// "Police meanwhile <a>ed them and <b>ed them" -- unrelated verb pair,
// cued by "meanwhile"; never a candidate, so it feeds the negative pool.
inline tre::Sentence negative_sentence(const std::string& a,
                                       const std::string& b,
                                       const std::string& sent_id) {
  return fix::make_sentence({{"Police", "police", "NOUN", 3, "nsubj"},
                             {"meanwhile", "meanwhile", "ADV", 3, "advmod"},
                             {a + "ed", a, "VERB", 0, "root"},
                             {"them", "they", "PRON", 3, "dobj"},
                             {"and", "and", "CCONJ", 6, "cc"},
                             {b + "ed", b, "VERB", 3, "conj"},
                             {"them", "they", "PRON", 6, "dobj"}},
                            "synth", sent_id);
}

// single-event filler, contributes no pair
inline tre::Sentence filler_sentence(const std::string& sent_id) {
  return fix::make_sentence({{"It", "it", "PRON", 2, "nsubj"},
                             {"rained", "rain", "VERB", 0, "root"},
                             {"heavily", "heavily", "ADV", 2, "advmod"}},
                            "synth", sent_id);
}

struct CorpusSpec {
  int seed_pattern = 12;  // seed evidence (>= seed_min 10)
  int cand_pattern = 4;   // candidate evidence (>= pattern_min 3, < 10)
  int forward = 20;       // co-occurrence sentences per pair
  int negatives = 120;
  int total = 500;        // padded with filler
};

inline std::vector<tre::Sentence> build_sentences(const CorpusSpec& spec) {
  std::vector<tre::Sentence> sents;
  int n = 0;
  auto next_id = [&n] { return "s" + std::to_string(++n); };

  for (const auto& p : planted_pairs()) {
    int reps = p.seed ? spec.seed_pattern : spec.cand_pattern;
    for (int k = 0; k < reps; ++k) sents.push_back(pattern_sentence(p, next_id()));
    for (int k = 0; k < spec.forward; ++k)
      sents.push_back(forward_sentence(p, next_id()));
  }

  const std::vector<std::string> verbs = {"watch", "follow", "join",  "visit",
                                          "greet", "thank",  "help",  "call",
                                          "warn",  "teach",  "guide", "escort"};
  for (int k = 0; k < spec.negatives; ++k) {
    const auto& a = verbs[k % verbs.size()];
    const auto& b = verbs[(k + 1 + k / verbs.size()) % verbs.size()];
    sents.push_back(negative_sentence(a, b == a ? verbs[(k + 2) % verbs.size()] : b,
                                      next_id()));
  }

  while (static_cast<int>(sents.size()) < spec.total)
    sents.push_back(filler_sentence(next_id()));
  return sents;
}

inline void write_corpus_file(const std::string& path, const CorpusSpec& spec) {
  std::ofstream out(path);
  for (const auto& s : build_sentences(spec)) out << tre::emit_conllu(s);
}

inline void write_lines(const std::string& path,
                        const std::set<std::string>& lines) {
  std::ofstream out(path);
  for (const auto& l : lines) out << l << "\n";
}

inline void write_lexicons(const std::string& dir) {
  write_lines(dir + "/nouns.txt", noun_lexicon());
  write_lines(dir + "/reporting.txt", reporting_lexicon());
}

// gold: every planted pair, noun before verb
inline void write_gold(const std::string& path) {
  std::ofstream out(path);
  for (const auto& p : planted_pairs())
    out << "synth\t" << p.noun << '\t' << p.phrase() << "\tBEFORE\n";
}

// run config tuned for a fast, deterministic desk-scale bootstrap
inline void write_config(const std::string& path, const std::string& dir,
                         const std::string& extra = "") {
  std::ofstream out(path);
  out << "corpus = " << dir << "/corpus.conllu\n"
      << "noun_lexicon = " << dir << "/nouns.txt\n"
      << "reporting_lexicon = " << dir << "/reporting.txt\n"
      << "gold = " << dir << "/gold.tsv\n"
      << "dim = 16\n"
      << "n_filters = 16\n"
      << "filter_window = 3\n"
      << "minibatch = 10\n"
      << "epochs = 20\n"
      << "negative_ratio = 3\n"
      << "stop_threshold = 1\n"
      << "rng_seed = 7\n"
      << extra;
}

}  // namespace synth

#endif
