#include "mining.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <limits>

namespace tre {

PairKey::PairKey(std::string a, std::string b) {
  if (a == b) throw DataError("degenerate event pair: " + a);
  if (a < b) {
    first = std::move(a);
    second = std::move(b);
  } else {
    first = std::move(b);
    second = std::move(a);
  }
}

namespace {

bool is_rel2(const std::string& rel, const char* base) {
  std::size_t n = std::char_traits<char>::length(base);
  return rel.compare(0, n, base) == 0 &&
         (rel.size() == n || rel[n] == ':');
}

// Event test per the pattern-extraction footnote: any non-reporting,
// non-auxiliary verb, or a lexicon noun.
const EventMention* find_mention(const std::vector<EventMention>& mentions, int idx) {
  for (const auto& m : mentions)
    if (m.head_index == idx) return &m;
  return nullptr;
}

}  // namespace

std::vector<PatternInstance> extract_pattern_instances(
    const Sentence& s, PatternMode mode, const ReportingVerbLexicon& reporting,
    const NounEventLexicon& nouns, bool generalize) {
  auto mentions = extract_events(s, reporting, nouns);

  std::vector<std::pair<std::pair<int, int>, TemporalRelation>> hits;  // (gov, dep)
  for (int d = 1; d <= s.size(); ++d) {
    const std::string& rel = s.relation_of(d);
    int g = s.head_of(d);
    if (g == 0) continue;
    if (mode == PatternMode::Collapsed) {
      if (rel == "prep_after")
        hits.push_back({{g, d}, TemporalRelation::After});
      else if (rel == "prep_before")
        hits.push_back({{g, d}, TemporalRelation::Before});
    } else {
      if (is_rel2(rel, "nmod") || is_rel2(rel, "obl")) {
        for (int c : s.children_of(d)) {
          const std::string& crel = s.relation_of(c);
          if (crel != "case" && crel != "prep") continue;
          std::string p = lowercase(s.token(c).form);
          if (p == "after")
            hits.push_back({{g, d}, TemporalRelation::After});
          else if (p == "before")
            hits.push_back({{g, d}, TemporalRelation::Before});
          break;
        }
      } else if (rel == "prep") {
        // prep(gov, after) + pobj(after, dep) chains
        std::string p = lowercase(s.token(d).form);
        if (p != "after" && p != "before") continue;
        for (int c : s.children_of(d))
          if (s.relation_of(c) == "pobj")
            hits.push_back({{g, c}, p == "after" ? TemporalRelation::After
                                                 : TemporalRelation::Before});
      }
    }
  }

  std::vector<PatternInstance> out;
  for (auto& [pair, relation] : hits) {
    auto [g, d] = pair;
    const EventMention* gm = find_mention(mentions, g);
    const EventMention* dm = find_mention(mentions, d);
    if (!gm || !dm) continue;
    if (!has_argument(*gm) && !has_argument(*dm)) continue;
    PatternInstance inst;
    inst.governor = canonical_phrase(s, *gm, generalize);
    inst.dependent = canonical_phrase(s, *dm, generalize);
    if (inst.governor == inst.dependent) continue;
    inst.relation = relation;
    inst.gov_index = g;
    inst.dep_index = d;
    out.push_back(std::move(inst));
  }
  return out;
}

std::pair<PairKey, Orientation> normalize_pattern(const PatternInstance& p) {
  PairKey key(p.governor, p.dependent);
  const std::string& antecedent =
      p.relation == TemporalRelation::After ? p.dependent : p.governor;
  return {key, antecedent == key.first ? Orientation::Forward
                                       : Orientation::Backward};
}

std::pair<std::string, std::string> oriented(const PairKey& key, Orientation o) {
  return o == Orientation::Forward ? std::make_pair(key.first, key.second)
                                   : std::make_pair(key.second, key.first);
}

std::map<PairKey, PairStats> accumulate_pair_stats(
    const Corpus& corpus, const MiningConfig& config,
    const ReportingVerbLexicon& reporting, const NounEventLexicon& nouns) {
  std::map<PairKey, PairStats> stats;
  corpus.for_each_sentence([&](const Sentence& s) {
    auto mentions = extract_events(s, reporting, nouns);

    // phrase -> (mention head positions, has argument)
    struct Occ {
      std::vector<int> heads;
      bool has_arg = false;
    };
    std::map<std::string, Occ> occs;
    for (const auto& m : mentions) {
      auto& o = occs[canonical_phrase(s, m, config.generalize)];
      o.heads.push_back(m.head_index);
      o.has_arg = o.has_arg || has_argument(m);
    }

    // sentence-level co-occurrence: one count per qualifying phrase pair
    for (auto a = occs.begin(); a != occs.end(); ++a) {
      for (auto b = std::next(a); b != occs.end(); ++b) {
        if (!a->second.has_arg && !b->second.has_arg) continue;
        int best = std::numeric_limits<int>::max();
        for (int i : a->second.heads)
          for (int j : b->second.heads)
            best = std::min(best, std::abs(i - j) - 1);
        if (best > config.max_gap) continue;
        stats[PairKey(a->first, b->first)].cooccur++;
      }
    }

    for (const auto& inst :
         extract_pattern_instances(s, config.mode, reporting, nouns,
                                   config.generalize)) {
      auto [key, orient] = normalize_pattern(inst);
      auto& st = stats[key];
      (orient == Orientation::Forward ? st.pattern_forward
                                      : st.pattern_backward)++;
    }
  });
  return stats;
}

std::set<PairKey> build_candidate_pool(const std::map<PairKey, PairStats>& stats,
                                       const MiningConfig& config) {
  std::set<PairKey> pool;
  for (const auto& [key, st] : stats) {
    bool qualifies = st.cooccur > config.cooccur_min ||
                     st.pattern_total() >= config.pattern_min;
    if (!qualifies) continue;
    if (st.pattern_total() > 0 && !(st.dominance() > config.dominance))
      continue;
    pool.insert(key);
  }
  return pool;
}

std::vector<RegularPair> select_seeds(const std::map<PairKey, PairStats>& stats,
                                      const MiningConfig& config) {
  std::vector<RegularPair> seeds;
  for (const auto& [key, st] : stats) {
    if (st.pattern_total() < config.seed_min) continue;
    if (!(st.dominance() > config.dominance)) continue;
    RegularPair rp;
    rp.key = key;
    rp.orientation = st.pattern_forward >= st.pattern_backward
                         ? Orientation::Forward
                         : Orientation::Backward;
    rp.provenance = 0;
    rp.support_forward = st.pattern_forward;
    rp.support_backward = st.pattern_backward;
    seeds.push_back(std::move(rp));
  }
  return seeds;
}

namespace {

const char* orientation_name(Orientation o) {
  return o == Orientation::Forward ? "FORWARD" : "BACKWARD";
}

Orientation parse_orientation(const std::string& s) {
  if (s == "FORWARD") return Orientation::Forward;
  if (s == "BACKWARD") return Orientation::Backward;
  throw DataError("bad orientation: " + s);
}

std::string provenance_name(int p) {
  return p == 0 ? std::string("SEED") : std::to_string(p);
}

int parse_provenance(const std::string& s) {
  if (s == "SEED") return 0;
  return std::stoi(s);
}

}  // namespace

void write_pairs_tsv(const std::string& path,
                     const std::vector<RegularPair>& pairs) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path);
  auto sorted = pairs;
  std::sort(sorted.begin(), sorted.end(),
            [](const RegularPair& a, const RegularPair& b) {
              return a.key < b.key;
            });
  for (const auto& p : sorted)
    out << p.key.first << '\t' << p.key.second << '\t'
        << orientation_name(p.orientation) << '\t' << p.support_forward << '\t'
        << p.support_backward << "\t0\t" << provenance_name(p.provenance)
        << "\n";
}

std::vector<RegularPair> read_pairs_tsv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);
  std::vector<RegularPair> out;
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    auto cols = split(line, '\t');
    if (cols.size() != 7)
      throw DataError(path + ":" + std::to_string(line_no) +
                      ": expected 7 columns");
    RegularPair p;
    p.key = PairKey(cols[0], cols[1]);
    p.orientation = parse_orientation(cols[2]);
    p.support_forward = std::stol(cols[3]);
    p.support_backward = std::stol(cols[4]);
    p.provenance = parse_provenance(cols[6]);
    out.push_back(std::move(p));
  }
  return out;
}

void write_stats_tsv(const std::string& path,
                     const std::map<PairKey, PairStats>& stats) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path);
  for (const auto& [key, st] : stats)
    out << key.first << '\t' << key.second << '\t' << st.pattern_forward
        << '\t' << st.pattern_backward << '\t' << st.cooccur << "\n";
}

std::map<PairKey, PairStats> read_stats_tsv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);
  std::map<PairKey, PairStats> out;
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    auto cols = split(line, '\t');
    if (cols.size() != 5)
      throw DataError(path + ":" + std::to_string(line_no) +
                      ": expected 5 columns");
    PairStats st;
    st.pattern_forward = std::stol(cols[2]);
    st.pattern_backward = std::stol(cols[3]);
    st.cooccur = std::stol(cols[4]);
    out.emplace(PairKey(cols[0], cols[1]), st);
  }
  return out;
}

}  // namespace tre
