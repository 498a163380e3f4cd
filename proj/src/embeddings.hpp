#ifndef TRE_EMBEDDINGS_HPP
#define TRE_EMBEDDINGS_HPP

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "util.hpp"

namespace tre {

inline constexpr const char* kPadToken = "<PAD>";

// Frozen word-vector table. PAD maps to the zero vector; unknown tokens get
// a stable seeded random vector in [-0.25, 0.25] per coordinate.
class EmbeddingTable {
 public:
  EmbeddingTable(int dim, std::uint64_t oov_seed);

  int dim() const { return dim_; }
  std::size_t size() const { return vectors_.size(); }
  bool contains(const std::string& token) const {
    return vectors_.count(token) != 0;
  }

  void insert(const std::string& token, std::vector<double> vec);

  // Thread-safe; the OOV cache is guarded.
  const std::vector<double>& lookup(const std::string& token) const;

 private:
  int dim_;
  std::uint64_t oov_seed_;
  std::vector<double> pad_;
  std::map<std::string, std::vector<double>> vectors_;
  mutable std::unique_ptr<std::mutex> oov_mutex_;  // keeps the table movable
  mutable std::map<std::string, std::vector<double>> oov_cache_;
};

// Binary (ASCII "<count> <dim>\n" header, float32 little-endian payload) or
// text (token plus dim decimals per line) word-vector formats, detected from
// the first line. Duplicate tokens keep the first occurrence.
EmbeddingTable load_embeddings(const std::string& path, int expected_dim,
                               std::uint64_t oov_seed);

void write_embeddings_binary(const std::string& path,
                             const std::vector<std::pair<std::string, std::vector<double>>>& entries,
                             int dim);

}  // namespace tre

#endif
