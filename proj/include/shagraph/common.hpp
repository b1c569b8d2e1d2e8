#ifndef SHAGRAPH_COMMON_HPP
#define SHAGRAPH_COMMON_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace shagraph {

/// Domain error with a stable machine-readable code ("not-normal",
/// "state-cap-exceeded", "unsupported-singularity", ...).
class Error : public std::runtime_error {
public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(what), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

private:
  std::string code_;
};

[[noreturn]] inline void fail(std::string code, const std::string& msg) {
  throw Error(std::move(code), msg);
}

/// Default guard for every tuple-space enumeration.  Exceeding a cap is a
/// hard "state-cap-exceeded" error, never silent truncation.
inline constexpr std::uint64_t kDefaultStateCap = 10'000'000;

/// Default cap on the order of permutation-generated groups.
inline constexpr std::uint64_t kDefaultOrderCap = 10'000;

/// FNV-1a, used for structural fingerprints.  Hash values enter reports,
/// so they must be identical across platforms and runs; std::hash is not.
inline std::uint64_t fnv1a64(std::string_view data,
                             std::uint64_t seed = 1469598103934665603ull) {
  std::uint64_t h = seed;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline std::string hex64(std::uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = digits[v & 0xf];
    v >>= 4;
  }
  return out;
}

} // namespace shagraph

#endif
