#ifndef TRE_EVAL_HPP
#define TRE_EVAL_HPP

#include <string>
#include <vector>

#include "contexts.hpp"
#include "mining.hpp"

namespace tre {

// relation is BEFORE/AFTER only; OTHER predictions are abstentions and
// never reach the scorer.
struct RelationAssertion {
  std::string doc_id;
  std::string first;   // event phrase or token anchor
  std::string second;
  Label relation = Label::Before;
};

struct ScoreReport {
  long tp = 0, fp = 0, fn = 0;
  double precision = 0.0, recall = 0.0, f1 = 0.0;
};

// Matching is by doc + unordered pair + temporally equivalent relation
// (BEFORE(a,b) == AFTER(b,a)).
ScoreReport score_before_after(const std::vector<RelationAssertion>& predictions,
                               const std::vector<RelationAssertion>& gold);

// TSV: doc <TAB> e1 <TAB> e2 <TAB> relation
std::vector<RelationAssertion> read_gold_tsv(const std::string& path);

struct LabeledInstance {
  Instance instance;
  Label predicted = Label::Other;
  double confidence = 0.0;
};

// Seeded uniform sample of BEFORE/AFTER predictions with confidence
// strictly above min_conf, for the human-audit annotation sheet.
std::vector<LabeledInstance> sample_high_confidence(
    const std::vector<LabeledInstance>& labeled, double min_conf, long n,
    std::uint64_t rng_seed);

// CSV: doc,sent,first,second,predicted,confidence,context,verdict(blank)
void write_annotation_sheet(const std::string& path,
                            const std::vector<LabeledInstance>& rows);

enum class GraphFormat { Dot, Json };

// Nodes are event phrases; a directed edge runs antecedent -> consequent.
std::string export_graph(const std::vector<RegularPair>& pairs,
                         GraphFormat format);

}  // namespace tre

#endif
