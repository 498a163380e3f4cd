#ifndef TRE_TEST_FIXTURES_HPP
#define TRE_TEST_FIXTURES_HPP

#include <string>
#include <vector>

#include "corpus.hpp"

namespace fix {

struct Tok {
  std::string form;
  std::string lemma;
  std::string upos;
  int head;
  std::string rel;
  std::string ner = "NONE";
};

inline tre::Sentence make_sentence(const std::vector<Tok>& toks,
                                   const std::string& doc = "doc",
                                   const std::string& sent = "s1") {
  std::vector<tre::Token> tokens;
  std::vector<tre::DependencyEdge> edges;
  int i = 0;
  for (const auto& t : toks) {
    ++i;
    tokens.push_back({i, t.form, t.lemma, t.upos, t.ner});
    edges.push_back({t.head, i, t.rel});
  }
  return tre::Sentence(std::move(tokens), std::move(edges), doc, sent);
}

// "Police arrested scores after attacks ." with a collapsed prep_after edge.
inline tre::Sentence arrest_after_attacks() {
  return make_sentence({
      {"Police", "police", "NOUN", 2, "nsubj"},
      {"arrested", "arrest", "VERB", 0, "root"},
      {"scores", "score", "NOUN", 2, "dobj"},
      {"after", "after", "ADP", 5, "case"},
      {"attacks", "attack", "NOUN", 2, "prep_after"},
  });
}

}  // namespace fix

#endif
