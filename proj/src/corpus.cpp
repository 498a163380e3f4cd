#include "corpus.hpp"

#include <zlib.h>

#include <algorithm>
#include <deque>
#include <fstream>
#include <sstream>

namespace tre {

Sentence::Sentence(std::vector<Token> tokens, std::vector<DependencyEdge> edges,
                   std::string doc_id, std::string sent_id)
    : tokens_(std::move(tokens)),
      edges_(std::move(edges)),
      doc_id_(std::move(doc_id)),
      sent_id_(std::move(sent_id)) {
  const int n = static_cast<int>(tokens_.size());
  if (static_cast<int>(edges_.size()) != n)
    throw DataError("sentence " + sent_id_ + ": edge count " +
                    std::to_string(edges_.size()) + " != token count " +
                    std::to_string(n));
  std::vector<const DependencyEdge*> by_dep(n + 1, nullptr);
  int roots = 0;
  for (const auto& e : edges_) {
    if (e.dependent < 1 || e.dependent > n || e.head < 0 || e.head > n ||
        e.head == e.dependent)
      throw DataError("sentence " + sent_id_ + ": bad edge " +
                      std::to_string(e.head) + "->" +
                      std::to_string(e.dependent));
    if (by_dep[e.dependent])
      throw DataError("sentence " + sent_id_ + ": token " +
                      std::to_string(e.dependent) + " has two heads");
    by_dep[e.dependent] = &e;
    if (e.head == 0) ++roots;
  }
  if (roots != 1)
    throw DataError("sentence " + sent_id_ + ": " + std::to_string(roots) +
                    " roots, expected 1");
  // reorder edges so edges_[i-1] belongs to token i
  std::vector<DependencyEdge> ordered(n);
  for (int i = 1; i <= n; ++i) ordered[i - 1] = *by_dep[i];
  edges_ = std::move(ordered);

  kids_.assign(n + 1, {});
  for (const auto& e : edges_)
    if (e.head > 0) kids_[e.head].push_back(e.dependent);
  for (auto& k : kids_) std::sort(k.begin(), k.end());

  // connectivity: walking head links from every token must reach the root
  for (int i = 1; i <= n; ++i) {
    int cur = i, steps = 0;
    while (cur != 0) {
      cur = edges_[cur - 1].head;
      if (++steps > n)
        throw DataError("sentence " + sent_id_ +
                        ": dependency cycle involving token " +
                        std::to_string(i));
    }
  }
}

void Sentence::check_index(int i) const {
  if (i < 1 || i > size())
    throw DataError("token index " + std::to_string(i) +
                    " out of range in sentence " + sent_id_);
}

const Token& Sentence::token(int index) const {
  check_index(index);
  return tokens_[index - 1];
}

int Sentence::head_of(int index) const {
  check_index(index);
  return edges_[index - 1].head;
}

const std::string& Sentence::relation_of(int index) const {
  check_index(index);
  return edges_[index - 1].relation;
}

std::vector<int> Sentence::children_of(int i) const {
  check_index(i);
  return kids_[i];
}

std::vector<int> Sentence::shortest_path(int i, int j) const {
  check_index(i);
  check_index(j);
  if (i == j) throw DataError("shortest_path: identical endpoints");
  // BFS over the undirected tree
  const int n = size();
  std::vector<int> prev(n + 1, -1);
  std::deque<int> queue{i};
  prev[i] = 0;
  while (!queue.empty()) {
    int cur = queue.front();
    queue.pop_front();
    if (cur == j) break;
    auto visit = [&](int next) {
      if (next >= 1 && prev[next] == -1) {
        prev[next] = cur;
        queue.push_back(next);
      }
    };
    visit(edges_[cur - 1].head);
    for (int child : kids_[cur]) visit(child);
  }
  std::vector<int> path;
  for (int cur = j; cur != 0; cur = prev[cur]) path.push_back(cur);
  std::reverse(path.begin(), path.end());
  return path;
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

std::string misc_ner(const std::string& misc) {
  for (const auto& part : split(misc, '|'))
    if (starts_with(part, "NER=")) return part.substr(4);
  return "NONE";
}

struct BlockState {
  std::vector<Token> tokens;
  std::vector<DependencyEdge> edges;
  std::string doc_id;
  std::string sent_id;
  bool any_line = false;
};

}  // namespace

std::vector<Sentence> parse_conllu(std::istream& in, const std::string& source) {
  std::vector<Sentence> sentences;
  BlockState block;
  int ordinal = 0;
  long line_no = 0;

  auto flush = [&]() {
    if (!block.any_line) return;
    ++ordinal;
    std::string doc = block.doc_id.empty()
                          ? source + ":" + std::to_string(ordinal)
                          : block.doc_id;
    std::string sid = block.sent_id.empty()
                          ? source + ":" + std::to_string(ordinal)
                          : block.sent_id;
    sentences.emplace_back(std::move(block.tokens), std::move(block.edges),
                           std::move(doc), std::move(sid));
    block = BlockState{};
  };

  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) {
      flush();
      continue;
    }
    if (line[0] == '#') {
      auto body = trim(std::string_view(line).substr(1));
      auto eq = body.find('=');
      if (eq != std::string_view::npos) {
        std::string key(trim(body.substr(0, eq)));
        std::string val(trim(body.substr(eq + 1)));
        if (key == "sent_id") block.sent_id = val;
        if (key == "doc_id" || key == "newdoc id") block.doc_id = val;
      }
      block.any_line = true;
      continue;
    }
    auto cols = split(line, '\t');
    if (cols.size() != 10)
      throw DataError(source + ":" + std::to_string(line_no) +
                      ": expected 10 tab-separated columns, got " +
                      std::to_string(cols.size()));
    block.any_line = true;
    const std::string& id = cols[0];
    if (id.find('-') != std::string::npos ||
        id.find('.') != std::string::npos)
      continue;  // multiword range / empty node
    if (!all_digits(id) || !all_digits(cols[6]))
      throw DataError(source + ":" + std::to_string(line_no) +
                      ": malformed ID or HEAD field");
    Token tok;
    tok.index = std::stoi(id);
    tok.form = cols[1];
    tok.lemma = cols[2];
    tok.upos = cols[3];
    tok.ner = misc_ner(cols[9]);
    if (tok.form.empty() || tok.lemma.empty())
      throw DataError(source + ":" + std::to_string(line_no) +
                      ": empty form or lemma");
    block.tokens.push_back(std::move(tok));
    block.edges.push_back(
        DependencyEdge{std::stoi(cols[6]), std::stoi(id), cols[7]});
  }
  flush();
  return sentences;
}

namespace {

std::string read_gz(const std::string& path) {
  gzFile f = gzopen(path.c_str(), "rb");
  if (!f) throw DataError("cannot open " + path);
  std::string out;
  char buf[1 << 16];
  int n;
  while ((n = gzread(f, buf, sizeof buf)) > 0) out.append(buf, n);
  bool bad = n < 0;
  gzclose(f);
  if (bad) throw DataError("gzip read error in " + path);
  return out;
}

}  // namespace

std::vector<Sentence> parse_conllu_file(const std::string& path) {
  if (path.size() > 3 && path.compare(path.size() - 3, 3, ".gz") == 0) {
    std::istringstream in(read_gz(path));
    return parse_conllu(in, path);
  }
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);
  return parse_conllu(in, path);
}

Corpus load_corpus(const std::vector<std::string>& paths) {
  Corpus corpus;
  for (const auto& p : paths) {
    corpus.documents.push_back(parse_conllu_file(p));
    corpus.source_paths.push_back(p);
  }
  // (doc_id, sent_id) uniqueness
  std::vector<std::string> keys;
  corpus.for_each_sentence(
      [&](const Sentence& s) { keys.push_back(s.doc_id() + "\x1f" + s.sent_id()); });
  std::sort(keys.begin(), keys.end());
  auto dup = std::adjacent_find(keys.begin(), keys.end());
  if (dup != keys.end()) throw DataError("duplicate (doc_id, sent_id): " + *dup);
  return corpus;
}

std::string emit_conllu(const Sentence& s) {
  std::ostringstream out;
  out << "# doc_id = " << s.doc_id() << "\n";
  out << "# sent_id = " << s.sent_id() << "\n";
  for (int i = 1; i <= s.size(); ++i) {
    const Token& t = s.token(i);
    out << t.index << '\t' << t.form << '\t' << t.lemma << '\t' << t.upos
        << "\t_\t_\t" << s.head_of(i) << '\t' << s.relation_of(i) << "\t_\t"
        << (t.ner == "NONE" ? std::string("_") : "NER=" + t.ner) << "\n";
  }
  out << "\n";
  return out.str();
}

}  // namespace tre
