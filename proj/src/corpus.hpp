#ifndef TRE_CORPUS_HPP
#define TRE_CORPUS_HPP

#include <istream>
#include <string>
#include <vector>

#include "util.hpp"

namespace tre {

struct Token {
  int index = 0;  // 1-based sentence position
  std::string form;
  std::string lemma;
  std::string upos;
  std::string ner = "NONE";  // from MISC key NER=, uppercase, open set
};

struct DependencyEdge {
  int head = 0;  // 0 = root
  int dependent = 0;
  std::string relation;
};

// Immutable after construction; safe to share across threads.
class Sentence {
 public:
  Sentence(std::vector<Token> tokens, std::vector<DependencyEdge> edges,
           std::string doc_id, std::string sent_id);

  const std::vector<Token>& tokens() const { return tokens_; }
  const std::vector<DependencyEdge>& edges() const { return edges_; }
  const std::string& doc_id() const { return doc_id_; }
  const std::string& sent_id() const { return sent_id_; }

  int size() const { return static_cast<int>(tokens_.size()); }
  const Token& token(int index) const;  // 1-based
  int head_of(int index) const;
  const std::string& relation_of(int index) const;  // deprel of token's edge

  // Direct dependents of i, ascending by index.
  std::vector<int> children_of(int i) const;

  // Unique undirected path i..j in the dependency tree, inclusive.
  std::vector<int> shortest_path(int i, int j) const;

 private:
  void check_index(int i) const;

  std::vector<Token> tokens_;
  std::vector<DependencyEdge> edges_;    // indexed by dependent-1
  std::vector<std::vector<int>> kids_;   // indexed by head (0 unused slot ok)
  std::string doc_id_;
  std::string sent_id_;
};

struct Corpus {
  std::vector<std::vector<Sentence>> documents;
  std::vector<std::string> source_paths;

  std::size_t sentence_count() const {
    std::size_t n = 0;
    for (const auto& d : documents) n += d.size();
    return n;
  }
  template <typename F>
  void for_each_sentence(F&& f) const {
    for (const auto& d : documents)
      for (const Sentence& s : d) f(s);
  }
};

// CoNLL-U ingestion. Multiword ranges (3-4) and empty nodes (3.1) are
// skipped. NER comes from the MISC column key NER=<TYPE>, default NONE.
// Missing ids are synthesized as <source>:<ordinal>.
std::vector<Sentence> parse_conllu(std::istream& in,
                                   const std::string& source = "stream");

// Reads a file, transparently gunzipping when the path ends in .gz.
std::vector<Sentence> parse_conllu_file(const std::string& path);

Corpus load_corpus(const std::vector<std::string>& paths);

// Canonical re-emission of the retained fields (10 columns, NER in MISC).
std::string emit_conllu(const Sentence& s);

}  // namespace tre

#endif
