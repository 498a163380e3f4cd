#include "contexts.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <map>

#include <json.hpp>

namespace tre {

const char* label_name(Label l) {
  switch (l) {
    case Label::Before: return "BEFORE";
    case Label::After: return "AFTER";
    case Label::Other: return "OTHER";
    default: return "UNLABELED";
  }
}

Label parse_label(const std::string& s) {
  if (s == "BEFORE") return Label::Before;
  if (s == "AFTER") return Label::After;
  if (s == "OTHER") return Label::Other;
  if (s == "UNLABELED") return Label::Unlabeled;
  throw DataError("bad label: " + s);
}

std::optional<std::vector<std::string>> local_window_context(
    const Sentence& s, int i, int j, const ContextConfig& cfg) {
  if (i > j) std::swap(i, j);
  if (j - i - 1 > cfg.max_gap) return std::nullopt;
  int lo = std::max(1, i - cfg.window);
  int hi = std::min(s.size(), j + cfg.window);
  std::vector<std::string> out;
  out.reserve(hi - lo + 1);
  for (int t = lo; t <= hi; ++t) out.push_back(lowercase(s.token(t).form));
  return out;
}

std::optional<std::vector<std::string>> dependency_path_context(
    const Sentence& s, int i, int j, const ContextConfig& cfg) {
  if (i > j) std::swap(i, j);
  if (j - i - 1 > cfg.max_gap) return std::nullopt;

  std::vector<int> path = s.shortest_path(i, j);
  std::vector<bool> on_path(s.size() + 1, false);
  for (int p : path) on_path[p] = true;

  std::vector<int> selected = path;
  for (int p : path)
    for (int c : s.children_of(p))
      if (!on_path[c]) selected.push_back(c);
  std::sort(selected.begin(), selected.end());
  selected.erase(std::unique(selected.begin(), selected.end()), selected.end());

  // All children sit at tree distance 1 from the path, so the drop order
  // among them is tail-first.
  while (static_cast<int>(selected.size()) > cfg.max_len) {
    auto victim = std::find_if(selected.rbegin(), selected.rend(),
                               [&](int t) { return !on_path[t]; });
    if (victim == selected.rend()) break;
    selected.erase(std::next(victim).base());
  }
  if (static_cast<int>(selected.size()) > cfg.max_len) {
    // pure path overflow: keep the head, truncate the middle of the tail
    std::vector<int> kept(selected.begin(), selected.begin() + cfg.max_len - 1);
    if (std::find(kept.begin(), kept.end(), j) == kept.end()) kept.push_back(j);
    selected = std::move(kept);
  }

  std::vector<std::string> out;
  out.reserve(selected.size());
  for (int t : selected) out.push_back(lowercase(s.token(t).form));
  return out;
}

std::optional<std::vector<std::string>> build_context(const Sentence& s, int i,
                                                      int j,
                                                      const ContextConfig& cfg) {
  return cfg.kind == ContextKind::Window
             ? local_window_context(s, i, j, cfg)
             : dependency_path_context(s, i, j, cfg);
}

std::vector<PairOccurrence> pair_occurrences(const Sentence& s,
                                             const ReportingVerbLexicon& reporting,
                                             const NounEventLexicon& nouns,
                                             const ContextConfig& cfg) {
  auto mentions = extract_events(s, reporting, nouns);
  struct Occ {
    std::vector<int> heads;
    bool has_arg = false;
  };
  std::map<std::string, Occ> occs;
  for (const auto& m : mentions) {
    auto& o = occs[canonical_phrase(s, m, cfg.generalize)];
    o.heads.push_back(m.head_index);
    o.has_arg = o.has_arg || has_argument(m);
  }

  std::vector<PairOccurrence> out;
  for (auto a = occs.begin(); a != occs.end(); ++a) {
    for (auto b = std::next(a); b != occs.end(); ++b) {
      if (!a->second.has_arg && !b->second.has_arg) continue;
      // closest mention pair; ties resolved by position for determinism
      int best_gap = std::numeric_limits<int>::max();
      int bi = 0, bj = 0;
      for (int i : a->second.heads)
        for (int j : b->second.heads) {
          int lo = std::min(i, j), hi = std::max(i, j);
          int gap = hi - lo - 1;
          if (gap < best_gap ||
              (gap == best_gap && std::make_pair(lo, hi) < std::make_pair(bi, bj))) {
            best_gap = gap;
            bi = lo;
            bj = hi;
          }
        }
      if (best_gap > cfg.max_gap) continue;
      PairOccurrence occ;
      occ.key = PairKey(a->first, b->first);
      occ.first_head = bi;
      occ.second_head = bj;
      // which phrase owns the textually-first head?
      bool a_first = std::find(a->second.heads.begin(), a->second.heads.end(),
                               bi) != a->second.heads.end();
      const std::string& first_phrase = a_first ? a->first : b->first;
      occ.first_is_key_first = first_phrase == occ.key.first;
      out.push_back(std::move(occ));
    }
  }
  return out;
}

std::vector<Instance> build_positive_instances(
    const Corpus& corpus, const std::vector<RegularPair>& regular_pairs,
    const ReportingVerbLexicon& reporting, const NounEventLexicon& nouns,
    const ContextConfig& cfg) {
  std::map<PairKey, Orientation> oriented_pairs;
  for (const auto& rp : regular_pairs)
    oriented_pairs.emplace(rp.key, rp.orientation);

  std::vector<Instance> out;
  corpus.for_each_sentence([&](const Sentence& s) {
    for (const auto& occ : pair_occurrences(s, reporting, nouns, cfg)) {
      auto it = oriented_pairs.find(occ.key);
      if (it == oriented_pairs.end()) continue;
      auto ctx = build_context(s, occ.first_head, occ.second_head, cfg);
      if (!ctx) continue;
      const std::string& antecedent = oriented(occ.key, it->second).first;
      const std::string& textually_first =
          occ.first_is_key_first ? occ.key.first : occ.key.second;
      Instance inst;
      inst.doc_id = s.doc_id();
      inst.sent_id = s.sent_id();
      inst.pair = occ.key;
      inst.first_textual = occ.first_is_key_first;
      inst.tokens = std::move(*ctx);
      inst.label =
          textually_first == antecedent ? Label::Before : Label::After;
      out.push_back(std::move(inst));
    }
  });
  return out;
}

NegativeSample sample_negative_instances(
    const Corpus& corpus, const std::set<PairKey>& excluded,
    const ReportingVerbLexicon& reporting, const NounEventLexicon& nouns,
    const ContextConfig& cfg, long n_positives, long ratio,
    std::uint64_t rng_seed) {
  std::vector<Instance> pool;
  corpus.for_each_sentence([&](const Sentence& s) {
    for (const auto& occ : pair_occurrences(s, reporting, nouns, cfg)) {
      if (excluded.count(occ.key)) continue;
      auto ctx = build_context(s, occ.first_head, occ.second_head, cfg);
      if (!ctx) continue;
      Instance inst;
      inst.doc_id = s.doc_id();
      inst.sent_id = s.sent_id();
      inst.pair = occ.key;
      inst.first_textual = occ.first_is_key_first;
      inst.tokens = std::move(*ctx);
      inst.label = Label::Other;
      pool.push_back(std::move(inst));
    }
  });

  NegativeSample result;
  long target = ratio * n_positives;
  if (static_cast<long>(pool.size()) <= target) {
    result.instances = std::move(pool);
    result.shortfall = target - static_cast<long>(result.instances.size());
    return result;
  }
  std::vector<std::size_t> order(pool.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  Rng rng(rng_seed);
  rng.shuffle(order);
  order.resize(target);
  std::sort(order.begin(), order.end());  // corpus order in the output
  for (std::size_t k : order) result.instances.push_back(std::move(pool[k]));
  return result;
}

void write_instances_jsonl(const std::string& path,
                           const std::vector<Instance>& instances) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path);
  for (const auto& inst : instances) {
    nlohmann::ordered_json j;
    j["doc"] = inst.doc_id;
    j["sent"] = inst.sent_id;
    j["first"] = inst.pair.first;
    j["second"] = inst.pair.second;
    j["first_textual"] = inst.first_textual;
    j["tokens"] = inst.tokens;
    j["label"] = label_name(inst.label);
    out << j.dump() << "\n";
  }
}

std::vector<Instance> read_instances_jsonl(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);
  std::vector<Instance> out;
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw DataError(path + ":" + std::to_string(line_no) + ": " + e.what());
    }
    Instance inst;
    inst.doc_id = j.at("doc").get<std::string>();
    inst.sent_id = j.at("sent").get<std::string>();
    inst.pair = PairKey(j.at("first").get<std::string>(),
                        j.at("second").get<std::string>());
    inst.first_textual = j.at("first_textual").get<bool>();
    inst.tokens = j.at("tokens").get<std::vector<std::string>>();
    inst.label = parse_label(j.at("label").get<std::string>());
    out.push_back(std::move(inst));
  }
  return out;
}

}  // namespace tre
