#ifndef TRE_CONTEXTS_HPP
#define TRE_CONTEXTS_HPP

#include <optional>
#include <string>
#include <vector>

#include "mining.hpp"

namespace tre {

enum class ContextKind { Window, DepPath };

enum class Label { Before, After, Other, Unlabeled };

const char* label_name(Label l);
Label parse_label(const std::string& s);

struct Instance {
  std::string doc_id;
  std::string sent_id;
  PairKey pair;
  bool first_textual = true;  // key.first appears first in the sentence
  std::vector<std::string> tokens;  // lowercased context forms
  Label label = Label::Unlabeled;
};

struct ContextConfig {
  ContextKind kind = ContextKind::Window;
  int max_gap = 10;       // tokens between the two event heads
  int window = 5;         // tokens kept either side of the pair
  int max_len = 40;       // dependency-path context bound
  bool generalize = true;
};

// 5 words before the first head, both heads, everything between, 5 after.
// Empty optional when the head gap exceeds max_gap.
std::optional<std::vector<std::string>> local_window_context(
    const Sentence& s, int i, int j, const ContextConfig& cfg);

// BFS path between the heads plus the direct children of every path node,
// deduplicated and sorted by textual order.
std::optional<std::vector<std::string>> dependency_path_context(
    const Sentence& s, int i, int j, const ContextConfig& cfg);

std::optional<std::vector<std::string>> build_context(const Sentence& s, int i,
                                                      int j,
                                                      const ContextConfig& cfg);

// Closest mention pair per phrase pair within a sentence.
struct PairOccurrence {
  PairKey key;
  int first_head = 0;   // head of the textually-first phrase mention
  int second_head = 0;
  bool first_is_key_first = true;
};

// All phrase pairs of the sentence satisfying the gap and argument rules.
std::vector<PairOccurrence> pair_occurrences(const Sentence& s,
                                             const ReportingVerbLexicon& reporting,
                                             const NounEventLexicon& nouns,
                                             const ContextConfig& cfg);

std::vector<Instance> build_positive_instances(
    const Corpus& corpus, const std::vector<RegularPair>& regular_pairs,
    const ReportingVerbLexicon& reporting, const NounEventLexicon& nouns,
    const ContextConfig& cfg);

struct NegativeSample {
  std::vector<Instance> instances;
  long shortfall = 0;  // requested minus available, when the pool ran dry
};

NegativeSample sample_negative_instances(
    const Corpus& corpus, const std::set<PairKey>& excluded,
    const ReportingVerbLexicon& reporting, const NounEventLexicon& nouns,
    const ContextConfig& cfg, long n_positives, long ratio,
    std::uint64_t rng_seed);

// JSON-lines {doc, sent, first, second, first_textual, tokens, label}
void write_instances_jsonl(const std::string& path,
                           const std::vector<Instance>& instances);
std::vector<Instance> read_instances_jsonl(const std::string& path);

}  // namespace tre

#endif
