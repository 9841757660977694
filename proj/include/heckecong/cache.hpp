#pragma once

#include "heckecong/linalg.hpp"

#include <cstdint>
#include <filesystem>
#include <mutex>
#include <optional>
#include <string>

namespace heckecong {

// Bumped whenever basis normalization or matrix conventions change.
inline constexpr uint32_t kCacheFormatVersion = 1;

struct CacheKey {
  long N;
  long p;
  long k;
  std::string what;  // e.g. "newbasis", "hecke"
  long ell;
  uint64_t fingerprint() const;
  std::string filename() const;
};

// Content-addressed store of exact rational matrices. Files carry their own
// key fingerprint and checksum; anything that fails validation is treated
// as a miss and overwritten on the next store.
class MatrixCache {
 public:
  explicit MatrixCache(std::filesystem::path root);
  // Cache rooted at $HECKECONG_CACHE, if set.
  static std::optional<std::filesystem::path> root_from_env();

  const std::filesystem::path& root() const { return root_; }
  std::optional<QMatrix> load(const CacheKey& key);
  void store(const CacheKey& key, const QMatrix& m);

  long hits() const { return hits_; }
  long misses() const { return misses_; }
  long rejected() const { return rejected_; }

 private:
  std::filesystem::path root_;
  std::mutex mutex_;
  long hits_ = 0;
  long misses_ = 0;
  long rejected_ = 0;
};

// Byte-exact encoding of a matrix (exposed for tests).
std::string encode_matrix(const QMatrix& m, uint64_t fingerprint);
// Returns nullopt on any structural or checksum failure.
std::optional<QMatrix> decode_matrix(const std::string& bytes, uint64_t fingerprint);

uint64_t fnv1a64(const void* data, size_t size, uint64_t seed = 0xcbf29ce484222325ULL);

}  // namespace heckecong
