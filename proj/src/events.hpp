#ifndef TRE_EVENTS_HPP
#define TRE_EVENTS_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "corpus.hpp"

namespace tre {

enum class EventKind { Verb, Noun };
enum class ArgRole { None, Patient, Agent, Prep };

struct EventMention {
  int head_index = 0;
  EventKind kind = EventKind::Verb;
  int arg_index = 0;  // 0 = none
  ArgRole arg_role = ArgRole::None;
  std::string prep;  // set when arg_role == Prep
  bool passive = false;
};

// One lowercase lemma per line, `#` comments.
std::set<std::string> load_lexicon(const std::string& path);

using NounEventLexicon = std::set<std::string>;
using ReportingVerbLexicon = std::set<std::string>;

// One mention per non-auxiliary, non-reporting verb. Argument priority:
// patient (dobj of active / subject of passive), then agent (subject of
// active / by-agent of passive), then first prepositional object, else none.
std::vector<EventMention> extract_verb_events(const Sentence& s,
                                              const ReportingVerbLexicon& reporting);

// One mention per noun whose lemma is in the lexicon; prepositional object
// preferring "of", then "by", then any other.
std::vector<EventMention> extract_noun_events(const Sentence& s,
                                              const NounEventLexicon& nouns);

// Pre-curation noun-event candidates: objects of "participate in X" /
// "involve in X", pooled, count >= min_count, descending by count (ties by
// lemma).
std::vector<std::pair<std::string, long>> mine_noun_event_candidates(
    const Corpus& corpus, long min_count);

// NE type, PERSON for personal pronouns, else lowercased lemma.
std::string generalize_argument(const Token& tok, bool enabled);

// Canonical serialization: `pred` or `pred|role:arg` with role in
// {pat, agt, p_<prep>}.
std::string canonical_phrase(const Sentence& s, const EventMention& m,
                             bool generalize);

inline bool has_argument(const EventMention& m) {
  return m.arg_role != ArgRole::None;
}

// All event mentions of a sentence (verbs plus lexicon nouns).
std::vector<EventMention> extract_events(const Sentence& s,
                                         const ReportingVerbLexicon& reporting,
                                         const NounEventLexicon& nouns);

}  // namespace tre

#endif
