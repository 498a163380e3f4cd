#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>

#include "events.hpp"
#include "fixtures.hpp"

using namespace tre;

namespace {

Corpus corpus_of(std::vector<Sentence> sents) {
  Corpus c;
  c.documents.push_back(std::move(sents));
  return c;
}

Sentence participate_in(const std::string& verb, const std::string& noun,
                        const std::string& sid) {
  std::string lemma = verb.substr(0, 7) == "involve" || verb == "involved"
                          ? "involve"
                          : "participate";
  return fix::make_sentence({{"They", "they", "PRON", 2, "nsubj"},
                             {verb, lemma, "VERB", 0, "root"},
                             {"in", "in", "ADP", 4, "case"},
                             {noun, noun, "NOUN", 2, "nmod"}},
                            "d", sid);
}

}  // namespace

TEST_CASE("active verb takes its direct object as patient") {
  auto s = fix::make_sentence({{"They", "they", "PRON", 2, "nsubj"},
                               {"win", "win", "VERB", 0, "root"},
                               {"the", "the", "DET", 4, "det"},
                               {"lottery", "lottery", "NOUN", 2, "dobj"}});
  auto mentions = extract_verb_events(s, {});
  REQUIRE(mentions.size() == 1);
  CHECK(mentions[0].arg_role == ArgRole::Patient);
  CHECK(mentions[0].arg_index == 4);
  CHECK_FALSE(mentions[0].passive);
  CHECK(canonical_phrase(s, mentions[0], true) == "win|pat:lottery");
}

TEST_CASE("intransitive verb falls back to its agent") {
  auto s = fix::make_sentence({{"Water", "water", "NOUN", 2, "nsubj"},
                               {"evaporates", "evaporate", "VERB", 0, "root"}});
  auto mentions = extract_verb_events(s, {});
  REQUIRE(mentions.size() == 1);
  CHECK(mentions[0].arg_role == ArgRole::Agent);
  CHECK(canonical_phrase(s, mentions[0], true) == "evaporate|agt:water");
}

TEST_CASE("patient wins over agent when both exist") {
  auto s = fix::make_sentence({{"They", "they", "PRON", 2, "nsubj"},
                               {"win", "win", "VERB", 0, "root"},
                               {"games", "game", "NOUN", 2, "dobj"}});
  auto mentions = extract_verb_events(s, {});
  REQUIRE(mentions.size() == 1);
  CHECK(mentions[0].arg_role == ArgRole::Patient);
}

TEST_CASE("reporting verbs are excluded") {
  auto s = fix::make_sentence({{"He", "he", "PRON", 2, "nsubj"},
                               {"said", "say", "VERB", 0, "root"},
                               {"so", "so", "ADV", 2, "advmod"}});
  CHECK(extract_verb_events(s, {"say"}).empty());
  CHECK(extract_verb_events(s, {}).size() == 1);
}

TEST_CASE("auxiliaries are not events") {
  auto s = fix::make_sentence({{"men", "man", "NOUN", 3, "nsubjpass"},
                               {"were", "be", "VERB", 3, "auxpass"},
                               {"arrested", "arrest", "VERB", 0, "root"}});
  auto mentions = extract_verb_events(s, {});
  REQUIRE(mentions.size() == 1);
  CHECK(mentions[0].head_index == 3);
  CHECK(mentions[0].passive);
  CHECK(mentions[0].arg_role == ArgRole::Patient);
  CHECK(mentions[0].arg_index == 1);
}

TEST_CASE("passive without subject takes the by-agent") {
  SUBCASE("collapsed style") {
    auto s = fix::make_sentence({{"arrested", "arrest", "VERB", 0, "root"},
                                 {"was", "be", "VERB", 1, "auxpass"},
                                 {"police", "police", "NOUN", 1, "prep_by"}});
    auto mentions = extract_verb_events(s, {});
    REQUIRE(mentions.size() == 1);
    CHECK(mentions[0].arg_role == ArgRole::Agent);
    CHECK(mentions[0].arg_index == 3);
  }
  SUBCASE("basic style via obl + case by") {
    auto s = fix::make_sentence({{"arrested", "arrest", "VERB", 0, "root"},
                                 {"was", "be", "VERB", 1, "aux:pass"},
                                 {"by", "by", "ADP", 4, "case"},
                                 {"police", "police", "NOUN", 1, "obl"}});
    auto mentions = extract_verb_events(s, {});
    REQUIRE(mentions.size() == 1);
    CHECK(mentions[0].arg_role == ArgRole::Agent);
    CHECK(mentions[0].arg_index == 4);
  }
}

TEST_CASE("verb with neither patient nor agent takes first prep object") {
  auto s = fix::make_sentence({{"died", "die", "VERB", 0, "root"},
                               {"in", "in", "ADP", 3, "case"},
                               {"battle", "battle", "NOUN", 1, "nmod"}});
  auto mentions = extract_verb_events(s, {});
  REQUIRE(mentions.size() == 1);
  CHECK(mentions[0].arg_role == ArgRole::Prep);
  CHECK(mentions[0].prep == "in");
  CHECK(canonical_phrase(s, mentions[0], true) == "die|p_in:battle");
}

TEST_CASE("noun event with of-object") {
  auto s = fix::make_sentence({{"the", "the", "DET", 2, "det"},
                               {"invasion", "invasion", "NOUN", 0, "root"},
                               {"of", "of", "ADP", 4, "case"},
                               {"Kuwait", "Kuwait", "PROPN", 2, "nmod",
                                "LOCATION"}});
  auto mentions = extract_noun_events(s, {"invasion"});
  REQUIRE(mentions.size() == 1);
  CHECK(mentions[0].prep == "of");
  CHECK(canonical_phrase(s, mentions[0], true) == "invasion|p_of:LOCATION");
  CHECK(canonical_phrase(s, mentions[0], false) == "invasion|p_of:kuwait");
}

TEST_CASE("noun prep tier prefers by over other prepositions") {
  auto s = fix::make_sentence({{"attacks", "attack", "NOUN", 0, "root"},
                               {"by", "by", "ADP", 3, "case"},
                               {"militants", "militant", "NOUN", 1, "nmod"},
                               {"in", "in", "ADP", 5, "case"},
                               {"June", "June", "PROPN", 1, "nmod"}});
  auto mentions = extract_noun_events(s, {"attack"});
  REQUIRE(mentions.size() == 1);
  CHECK(mentions[0].prep == "by");
  CHECK(mentions[0].arg_index == 3);
}

TEST_CASE("noun event without prep object has no argument") {
  auto s = fix::make_sentence({{"the", "the", "DET", 2, "det"},
                               {"election", "election", "NOUN", 0, "root"}});
  auto mentions = extract_noun_events(s, {"election"});
  REQUIRE(mentions.size() == 1);
  CHECK(mentions[0].arg_role == ArgRole::None);
  CHECK(canonical_phrase(s, mentions[0], true) == "election");
}

TEST_CASE("non-lexicon nouns are not events") {
  auto s = fix::make_sentence({{"table", "table", "NOUN", 0, "root"}});
  CHECK(extract_noun_events(s, {"election"}).empty());
}

TEST_CASE("mine_noun_event_candidates thresholds and pooling") {
  std::vector<Sentence> sents;
  for (int i = 0; i < 20; ++i)
    sents.push_back(participate_in("participated", "election",
                                   "p" + std::to_string(i)));
  for (int i = 0; i < 12; ++i)
    sents.push_back(participate_in("involved", "fighting",
                                   "i" + std::to_string(i)));
  for (int i = 0; i < 8; ++i)
    sents.push_back(participate_in("participate", "fighting",
                                   "q" + std::to_string(i)));
  for (int i = 0; i < 19; ++i)
    sents.push_back(participate_in("participated", "riot",
                                   "r" + std::to_string(i)));
  auto corpus = corpus_of(std::move(sents));

  auto top = mine_noun_event_candidates(corpus, 20);
  REQUIRE(top.size() == 2);
  CHECK(top[0] == std::pair<std::string, long>{"election", 20});
  CHECK(top[1] == std::pair<std::string, long>{"fighting", 20});

  // monotone in min_count
  auto lower = mine_noun_event_candidates(corpus, 19);
  CHECK(lower.size() == 3);
  for (const auto& entry : top)
    CHECK(std::find(lower.begin(), lower.end(), entry) != lower.end());
  CHECK(mine_noun_event_candidates(corpus, 21).empty());
}

TEST_CASE("generalize_argument") {
  Token sudan{1, "Sudan", "Sudan", "PROPN", "LOCATION"};
  Token him{2, "him", "he", "PRON", "NONE"};
  Token it{3, "it", "it", "PRON", "NONE"};
  CHECK(generalize_argument(sudan, true) == "LOCATION");
  CHECK(generalize_argument(sudan, false) == "sudan");
  CHECK(generalize_argument(him, true) == "PERSON");
  CHECK(generalize_argument(him, false) == "he");
  CHECK(generalize_argument(it, true) == "it");  // "it" is not mapped
}

TEST_CASE("canonical pronoun patient becomes PERSON") {
  auto s = fix::make_sentence({{"arrest", "arrest", "VERB", 0, "root"},
                               {"them", "they", "PRON", 1, "dobj"}});
  auto mentions = extract_verb_events(s, {});
  REQUIRE(mentions.size() == 1);
  CHECK(canonical_phrase(s, mentions[0], true) == "arrest|pat:PERSON");
  CHECK(canonical_phrase(s, mentions[0], false) == "arrest|pat:they");
}

TEST_CASE("disabled generalization never yields NE tokens") {
  auto s = fix::arrest_after_attacks();
  for (const auto& m : extract_events(s, {}, {"attack"})) {
    std::string phrase = canonical_phrase(s, m, false);
    for (char c : phrase) CHECK_FALSE((c >= 'A' && c <= 'Z'));
  }
}

TEST_CASE("lexicon file loading") {
  std::filesystem::create_directories("fixtures_tmp");
  {
    std::ofstream out("fixtures_tmp/lex.txt");
    out << "# noun events\nElection\nwar\n\n";
  }
  auto lex = load_lexicon("fixtures_tmp/lex.txt");
  CHECK(lex == std::set<std::string>{"election", "war"});
  CHECK_THROWS_AS(load_lexicon("fixtures_tmp/missing.txt"), DataError);
}
