#include "embeddings.hpp"

#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

namespace tre {

EmbeddingTable::EmbeddingTable(int dim, std::uint64_t oov_seed)
    : dim_(dim),
      oov_seed_(oov_seed),
      pad_(dim, 0.0),
      oov_mutex_(std::make_unique<std::mutex>()) {
  if (dim < 1) throw UsageError("embedding dim must be positive");
}

void EmbeddingTable::insert(const std::string& token, std::vector<double> vec) {
  if (static_cast<int>(vec.size()) != dim_)
    throw DataError("vector for '" + token + "' has dim " +
                    std::to_string(vec.size()) + ", expected " +
                    std::to_string(dim_));
  vectors_.emplace(token, std::move(vec));  // first occurrence wins
}

const std::vector<double>& EmbeddingTable::lookup(const std::string& token) const {
  if (token == kPadToken) return pad_;
  auto it = vectors_.find(token);
  if (it != vectors_.end()) return it->second;

  std::lock_guard<std::mutex> lock(*oov_mutex_);
  auto [cached, inserted] = oov_cache_.try_emplace(token);
  if (inserted) {
    Rng rng(oov_seed_ ^ fnv1a(token));
    cached->second.resize(dim_);
    for (double& v : cached->second) v = rng.next_range(-0.25, 0.25);
  }
  return cached->second;
}

namespace {

bool looks_like_binary_header(const std::string& line, long& count, int& dim) {
  std::istringstream ss(line);
  std::string extra;
  if (!(ss >> count >> dim)) return false;
  if (ss >> extra) return false;
  return count > 0 && dim > 0;
}

EmbeddingTable load_binary(std::ifstream& in, const std::string& path,
                           long count, int dim, int expected_dim,
                           std::uint64_t oov_seed) {
  if (dim != expected_dim)
    throw UsageError(path + ": embedding dim " + std::to_string(dim) +
                     " does not match configured " +
                     std::to_string(expected_dim));
  EmbeddingTable table(dim, oov_seed);
  std::vector<float> buf(dim);
  for (long e = 0; e < count; ++e) {
    std::string token;
    char c;
    while (in.get(c) && (c == '\n' || c == '\r')) {
    }
    if (!in) throw DataError(path + ": truncated at entry " + std::to_string(e));
    while (c != ' ') {
      token.push_back(c);
      if (!in.get(c))
        throw DataError(path + ": truncated token at entry " + std::to_string(e));
    }
    if (!in.read(reinterpret_cast<char*>(buf.data()), dim * sizeof(float)))
      throw DataError(path + ": truncated vector for '" + token + "'");
    std::vector<double> vec(buf.begin(), buf.end());
    table.insert(token, std::move(vec));
  }
  return table;
}

EmbeddingTable load_text(std::ifstream& in, const std::string& path,
                         const std::string& first_line, int expected_dim,
                         std::uint64_t oov_seed) {
  EmbeddingTable table(expected_dim, oov_seed);
  std::string line = first_line;
  long line_no = 1;
  do {
    if (trim(line).empty()) continue;
    std::istringstream ss(line);
    std::string token;
    ss >> token;
    std::vector<double> vec;
    double v;
    while (ss >> v) vec.push_back(v);
    if (static_cast<int>(vec.size()) != expected_dim)
      throw DataError(path + ":" + std::to_string(line_no) + ": " +
                      std::to_string(vec.size()) + " values, expected " +
                      std::to_string(expected_dim));
    table.insert(token, std::move(vec));
  } while (++line_no, std::getline(in, line));
  return table;
}

}  // namespace

EmbeddingTable load_embeddings(const std::string& path, int expected_dim,
                               std::uint64_t oov_seed) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open embeddings " + path);
  std::string first_line;
  if (!std::getline(in, first_line))
    throw DataError(path + ": empty embedding file");
  if (!first_line.empty() && first_line.back() == '\r') first_line.pop_back();

  long count;
  int dim;
  if (looks_like_binary_header(first_line, count, dim))
    return load_binary(in, path, count, dim, expected_dim, oov_seed);
  return load_text(in, path, first_line, expected_dim, oov_seed);
}

void write_embeddings_binary(
    const std::string& path,
    const std::vector<std::pair<std::string, std::vector<double>>>& entries,
    int dim) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path);
  out << entries.size() << " " << dim << "\n";
  for (const auto& [token, vec] : entries) {
    if (static_cast<int>(vec.size()) != dim)
      throw UsageError("vector for '" + token + "' has wrong dim");
    out << token << ' ';
    for (double v : vec) {
      float f = static_cast<float>(v);
      out.write(reinterpret_cast<const char*>(&f), sizeof f);
    }
    out << '\n';
  }
}

}  // namespace tre
