#ifndef TRE_MINING_HPP
#define TRE_MINING_HPP

#include <map>
#include <set>
#include <string>
#include <vector>

#include "events.hpp"

namespace tre {

enum class PatternMode { Collapsed, Composite };
enum class Orientation { Forward, Backward };  // Forward: key.first precedes

// Canonical unordered pair of event phrases, first < second.
struct PairKey {
  std::string first;
  std::string second;

  PairKey() = default;
  PairKey(std::string a, std::string b);

  bool operator<(const PairKey& o) const {
    return first != o.first ? first < o.first : second < o.second;
  }
  bool operator==(const PairKey& o) const {
    return first == o.first && second == o.second;
  }
};

struct PairStats {
  long pattern_forward = 0;   // evidence that key.first precedes key.second
  long pattern_backward = 0;
  long cooccur = 0;

  long pattern_total() const { return pattern_forward + pattern_backward; }
  double dominance() const {
    long t = pattern_total();
    return t == 0 ? 0.0
                  : static_cast<double>(std::max(pattern_forward, pattern_backward)) / t;
  }
};

// provenance: 0 = seed, k >= 1 = accepted at bootstrap iteration k
struct RegularPair {
  PairKey key;
  Orientation orientation = Orientation::Forward;
  int provenance = 0;
  long support_forward = 0;
  long support_backward = 0;
};

enum class TemporalRelation { After, Before };

struct PatternInstance {
  std::string governor;  // event phrase of the pattern governor
  std::string dependent;
  TemporalRelation relation;  // After: governor temporally after dependent
  int gov_index = 0;
  int dep_index = 0;
};

struct MiningConfig {
  PatternMode mode = PatternMode::Collapsed;
  bool generalize = true;
  long cooccur_min = 100;    // strict >
  long pattern_min = 3;      // inclusive >=
  double dominance = 0.9;    // strict >
  long seed_min = 10;        // inclusive >=
  int max_gap = 10;          // tokens between event heads
};

// Explicit EV_A after/before EV_B pattern occurrences in one sentence.
std::vector<PatternInstance> extract_pattern_instances(
    const Sentence& s, PatternMode mode, const ReportingVerbLexicon& reporting,
    const NounEventLexicon& nouns, bool generalize);

// Temporal-orientation normalization against the lexicographic key:
// relation After means the dependent precedes the governor.
std::pair<PairKey, Orientation> normalize_pattern(const PatternInstance& p);

// Re-derive the temporal assertion (antecedent, consequent) from a key.
std::pair<std::string, std::string> oriented(const PairKey& key, Orientation o);

std::map<PairKey, PairStats> accumulate_pair_stats(
    const Corpus& corpus, const MiningConfig& config,
    const ReportingVerbLexicon& reporting, const NounEventLexicon& nouns);

std::set<PairKey> build_candidate_pool(const std::map<PairKey, PairStats>& stats,
                                       const MiningConfig& config);

std::vector<RegularPair> select_seeds(const std::map<PairKey, PairStats>& stats,
                                      const MiningConfig& config);

// TSV: first second orientation fwd bwd cooccur provenance
void write_pairs_tsv(const std::string& path, const std::vector<RegularPair>& pairs);
std::vector<RegularPair> read_pairs_tsv(const std::string& path);

void write_stats_tsv(const std::string& path,
                     const std::map<PairKey, PairStats>& stats);
std::map<PairKey, PairStats> read_stats_tsv(const std::string& path);

}  // namespace tre

#endif
