#ifndef TRE_UTIL_HPP
#define TRE_UTIL_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tre {

// Error taxonomy maps onto process exit codes: usage=1, data=2, numeric=3.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Deterministic RNG. Wraps mt19937_64 but derives uniforms directly from
// the raw stream so results do not depend on the standard library's
// distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64();

  // uniform in [0, 1)
  double next_double();

  // uniform in [0, n), n > 0; rejection sampling, unbiased
  std::uint64_t next_below(std::uint64_t n);

  // uniform in [lo, hi)
  double next_range(double lo, double hi) {
    return lo + (hi - lo) * next_double();
  }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(next_below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::uint64_t splitmix();
  std::uint64_t state_;
};

std::vector<std::string> split(std::string_view s, char sep);
std::string lowercase(std::string_view s);
std::string_view trim(std::string_view s);
bool starts_with(std::string_view s, std::string_view prefix);

// FNV-1a, stable across platforms (std::hash is not).
std::uint64_t fnv1a(std::string_view s);

}  // namespace tre

#endif
