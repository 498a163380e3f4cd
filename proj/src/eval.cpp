#include "eval.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

namespace tre {

namespace {

// canonical form: doc + ordered pair + relation remapped so first < second
std::string canonical_assertion(const RelationAssertion& a) {
  if (a.relation != Label::Before && a.relation != Label::After)
    throw UsageError("scorer accepts BEFORE/AFTER relations only");
  bool ordered = a.first <= a.second;
  const std::string& x = ordered ? a.first : a.second;
  const std::string& y = ordered ? a.second : a.first;
  Label rel = ordered ? a.relation
                      : (a.relation == Label::Before ? Label::After
                                                     : Label::Before);
  return a.doc_id + "\x1f" + x + "\x1f" + y + "\x1f" + label_name(rel);
}

std::string pair_slot(const RelationAssertion& a) {
  bool ordered = a.first <= a.second;
  return a.doc_id + "\x1f" + (ordered ? a.first : a.second) + "\x1f" +
         (ordered ? a.second : a.first);
}

}  // namespace

ScoreReport score_before_after(const std::vector<RelationAssertion>& predictions,
                               const std::vector<RelationAssertion>& gold) {
  std::set<std::string> seen_pairs;
  for (const auto& p : predictions)
    if (!seen_pairs.insert(pair_slot(p)).second)
      throw DataError("duplicate prediction for pair " + p.first + " / " +
                      p.second + " in " + p.doc_id);

  std::multiset<std::string> gold_set;
  for (const auto& g : gold) gold_set.insert(canonical_assertion(g));

  ScoreReport r;
  for (const auto& p : predictions) {
    auto it = gold_set.find(canonical_assertion(p));
    if (it != gold_set.end()) {
      ++r.tp;
      gold_set.erase(it);
    } else {
      ++r.fp;
    }
  }
  r.fn = static_cast<long>(gold_set.size());
  r.precision = r.tp + r.fp ? static_cast<double>(r.tp) / (r.tp + r.fp) : 0.0;
  r.recall = r.tp + r.fn ? static_cast<double>(r.tp) / (r.tp + r.fn) : 0.0;
  r.f1 = r.precision + r.recall > 0.0
             ? 2.0 * r.precision * r.recall / (r.precision + r.recall)
             : 0.0;
  return r;
}

std::vector<RelationAssertion> read_gold_tsv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open gold file " + path);
  std::vector<RelationAssertion> out;
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty() || line[0] == '#') continue;
    auto cols = split(line, '\t');
    if (cols.size() != 4)
      throw DataError(path + ":" + std::to_string(line_no) +
                      ": expected 4 columns (doc, e1, e2, relation)");
    RelationAssertion a;
    a.doc_id = cols[0];
    a.first = cols[1];
    a.second = cols[2];
    a.relation = parse_label(cols[3]);
    if (a.relation != Label::Before && a.relation != Label::After)
      throw DataError(path + ":" + std::to_string(line_no) +
                      ": gold relation must be BEFORE or AFTER");
    out.push_back(std::move(a));
  }
  return out;
}

std::vector<LabeledInstance> sample_high_confidence(
    const std::vector<LabeledInstance>& labeled, double min_conf, long n,
    std::uint64_t rng_seed) {
  std::vector<std::size_t> eligible;
  for (std::size_t i = 0; i < labeled.size(); ++i) {
    const auto& li = labeled[i];
    if ((li.predicted == Label::Before || li.predicted == Label::After) &&
        li.confidence > min_conf)
      eligible.push_back(i);
  }
  if (static_cast<long>(eligible.size()) > n) {
    Rng rng(rng_seed);
    rng.shuffle(eligible);
    eligible.resize(n);
    std::sort(eligible.begin(), eligible.end());
  }
  std::vector<LabeledInstance> out;
  out.reserve(eligible.size());
  for (std::size_t i : eligible) out.push_back(labeled[i]);
  return out;
}

namespace {

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

void write_annotation_sheet(const std::string& path,
                            const std::vector<LabeledInstance>& rows) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path);
  out << "doc,sent,first,second,predicted,confidence,context,verdict\n";
  for (const auto& li : rows) {
    std::string ctx;
    for (std::size_t i = 0; i < li.instance.tokens.size(); ++i) {
      if (i) ctx += ' ';
      ctx += li.instance.tokens[i];
    }
    std::ostringstream conf;
    conf << li.confidence;
    out << csv_quote(li.instance.doc_id) << ',' << csv_quote(li.instance.sent_id)
        << ',' << csv_quote(li.instance.pair.first) << ','
        << csv_quote(li.instance.pair.second) << ',' << label_name(li.predicted)
        << ',' << conf.str() << ',' << csv_quote(ctx) << ",\n";
  }
}

std::string export_graph(const std::vector<RegularPair>& pairs,
                         GraphFormat format) {
  // dedup oriented edges, keeping the first provenance seen
  std::map<std::pair<std::string, std::string>, const RegularPair*> edges;
  std::set<std::string> nodes;
  for (const auto& rp : pairs) {
    auto [from, to] = oriented(rp.key, rp.orientation);
    nodes.insert(from);
    nodes.insert(to);
    edges.try_emplace({from, to}, &rp);
  }

  if (format == GraphFormat::Dot) {
    std::ostringstream out;
    out << "digraph temporal {\n";
    for (const auto& n : nodes) {
      std::string esc;
      for (char c : n) {
        if (c == '"' || c == '\\') esc += '\\';
        esc += c;
      }
      out << "  \"" << esc << "\";\n";
    }
    for (const auto& [edge, rp] : edges) {
      auto esc = [](const std::string& s) {
        std::string e;
        for (char c : s) {
          if (c == '"' || c == '\\') e += '\\';
          e += c;
        }
        return e;
      };
      out << "  \"" << esc(edge.first) << "\" -> \"" << esc(edge.second)
          << "\" [label=\"before\"];\n";
    }
    out << "}\n";
    return out.str();
  }

  nlohmann::ordered_json j;
  j["nodes"] = nlohmann::json::array();
  for (const auto& n : nodes) j["nodes"].push_back(n);
  j["edges"] = nlohmann::json::array();
  for (const auto& [edge, rp] : edges) {
    nlohmann::ordered_json e;
    e["from"] = edge.first;
    e["to"] = edge.second;
    e["provenance"] = rp->provenance == 0 ? "SEED" : std::to_string(rp->provenance);
    e["support"] = rp->support_forward + rp->support_backward;
    j["edges"].push_back(std::move(e));
  }
  return j.dump(2) + "\n";
}

}  // namespace tre
