#include "events.hpp"

#include <algorithm>
#include <cstring>
#include <fstream>

namespace tre {

namespace {

const std::set<std::string> kPersonalPronouns = {
    "i", "you", "he", "she", "we", "they", "me", "him", "her", "us", "them"};

bool is_rel(const std::string& rel, const char* base) {
  // matches `base` and `base:subtype`
  return rel == base || (starts_with(rel, base) &&
                         rel.size() > std::strlen(base) &&
                         rel[std::strlen(base)] == ':');
}

bool is_auxiliary(const Sentence& s, int i) {
  const std::string& rel = s.relation_of(i);
  return is_rel(rel, "aux") || rel == "auxpass" || rel == "cop";
}

bool is_passive(const Sentence& s, int verb) {
  for (int c : s.children_of(verb)) {
    const std::string& rel = s.relation_of(c);
    if (rel == "nsubjpass" || rel == "nsubj:pass" || rel == "auxpass" ||
        rel == "aux:pass")
      return true;
  }
  return false;
}

// Prepositional objects of a head, textual order. Handles both collapsed
// (prep_X edges) and basic (case/prep child under nmod/obl) styles.
std::vector<std::pair<int, std::string>> prep_objects(const Sentence& s,
                                                      int head) {
  std::vector<std::pair<int, std::string>> out;
  for (int c : s.children_of(head)) {
    const std::string& rel = s.relation_of(c);
    if (starts_with(rel, "prep_")) {
      out.emplace_back(c, rel.substr(5));
      continue;
    }
    if (is_rel(rel, "nmod") || is_rel(rel, "obl")) {
      for (int cc : s.children_of(c)) {
        const std::string& crel = s.relation_of(cc);
        if (crel == "case" || crel == "prep") {
          out.emplace_back(c, lowercase(s.token(cc).form));
          break;
        }
      }
    }
  }
  return out;  // children_of is ascending, so textual order holds
}

int child_with_relation(const Sentence& s, int head, const char* base) {
  for (int c : s.children_of(head))
    if (is_rel(s.relation_of(c), base)) return c;
  return 0;
}

}  // namespace

std::set<std::string> load_lexicon(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open lexicon " + path);
  std::set<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    auto t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    out.insert(lowercase(t));
  }
  return out;
}

std::vector<EventMention> extract_verb_events(const Sentence& s,
                                              const ReportingVerbLexicon& reporting) {
  std::vector<EventMention> out;
  for (int i = 1; i <= s.size(); ++i) {
    const Token& tok = s.token(i);
    if (tok.upos != "VERB" || is_auxiliary(s, i)) continue;
    if (reporting.count(lowercase(tok.lemma))) continue;

    EventMention m;
    m.head_index = i;
    m.kind = EventKind::Verb;
    m.passive = is_passive(s, i);

    int arg = 0;
    if (m.passive) {
      arg = child_with_relation(s, i, "nsubjpass");
      if (!arg) arg = child_with_relation(s, i, "nsubj:pass");
    } else {
      arg = child_with_relation(s, i, "dobj");
      if (!arg) arg = child_with_relation(s, i, "obj");
    }
    if (arg) {
      m.arg_index = arg;
      m.arg_role = ArgRole::Patient;
      out.push_back(m);
      continue;
    }

    if (m.passive) {
      for (int c : s.children_of(i)) {
        const std::string& rel = s.relation_of(c);
        if (rel == "agent" || rel == "prep_by") {
          arg = c;
          break;
        }
      }
      if (!arg) {
        for (auto& [idx, prep] : prep_objects(s, i))
          if (prep == "by") {
            arg = idx;
            break;
          }
      }
    } else {
      arg = child_with_relation(s, i, "nsubj");
    }
    if (arg) {
      m.arg_index = arg;
      m.arg_role = ArgRole::Agent;
      out.push_back(m);
      continue;
    }

    auto preps = prep_objects(s, i);
    if (!preps.empty()) {
      m.arg_index = preps.front().first;
      m.arg_role = ArgRole::Prep;
      m.prep = preps.front().second;
    }
    out.push_back(m);
  }
  return out;
}

std::vector<EventMention> extract_noun_events(const Sentence& s,
                                              const NounEventLexicon& nouns) {
  std::vector<EventMention> out;
  for (int i = 1; i <= s.size(); ++i) {
    const Token& tok = s.token(i);
    if (tok.upos != "NOUN" && tok.upos != "NN" && tok.upos != "NNS") continue;
    if (!nouns.count(lowercase(tok.lemma))) continue;

    EventMention m;
    m.head_index = i;
    m.kind = EventKind::Noun;

    auto preps = prep_objects(s, i);
    auto pick = [&](const std::string& want) -> bool {
      for (auto& [idx, prep] : preps)
        if (prep == want) {
          m.arg_index = idx;
          m.arg_role = ArgRole::Prep;
          m.prep = prep;
          return true;
        }
      return false;
    };
    if (!pick("of") && !pick("by") && !preps.empty()) {
      m.arg_index = preps.front().first;
      m.arg_role = ArgRole::Prep;
      m.prep = preps.front().second;
    }
    out.push_back(m);
  }
  return out;
}

std::vector<std::pair<std::string, long>> mine_noun_event_candidates(
    const Corpus& corpus, long min_count) {
  if (min_count < 1) throw UsageError("min_count must be >= 1");
  std::map<std::string, long> counts;
  corpus.for_each_sentence([&](const Sentence& s) {
    for (int i = 1; i <= s.size(); ++i) {
      std::string lemma = lowercase(s.token(i).lemma);
      if (lemma != "participate" && lemma != "involve") continue;
      for (auto& [idx, prep] : prep_objects(s, i))
        if (prep == "in") counts[lowercase(s.token(idx).lemma)]++;
    }
  });
  std::vector<std::pair<std::string, long>> out;
  for (auto& [lemma, n] : counts)
    if (n >= min_count) out.emplace_back(lemma, n);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  });
  return out;
}

std::string generalize_argument(const Token& tok, bool enabled) {
  if (enabled) {
    if (tok.ner != "NONE") return tok.ner;
    if (kPersonalPronouns.count(lowercase(tok.form))) return "PERSON";
  }
  return lowercase(tok.lemma);
}

std::string canonical_phrase(const Sentence& s, const EventMention& m,
                             bool generalize) {
  std::string pred = lowercase(s.token(m.head_index).lemma);
  if (m.arg_role == ArgRole::None) return pred;
  std::string role;
  switch (m.arg_role) {
    case ArgRole::Patient: role = "pat"; break;
    case ArgRole::Agent: role = "agt"; break;
    case ArgRole::Prep: role = "p_" + m.prep; break;
    default: break;
  }
  return pred + "|" + role + ":" +
         generalize_argument(s.token(m.arg_index), generalize);
}

std::vector<EventMention> extract_events(const Sentence& s,
                                         const ReportingVerbLexicon& reporting,
                                         const NounEventLexicon& nouns) {
  auto out = extract_verb_events(s, reporting);
  auto nounish = extract_noun_events(s, nouns);
  out.insert(out.end(), nounish.begin(), nounish.end());
  std::sort(out.begin(), out.end(),
            [](const EventMention& a, const EventMention& b) {
              return a.head_index < b.head_index;
            });
  return out;
}

}  // namespace tre
