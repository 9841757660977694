#include "heckecong/cache.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace heckecong {

uint64_t fnv1a64(const void* data, size_t size, uint64_t seed) {
  const auto* bytes = static_cast<const unsigned char*>(data);
  uint64_t h = seed;
  for (size_t i = 0; i < size; ++i) {
    h ^= bytes[i];
    h *= 0x100000001b3ULL;
  }
  return h;
}

uint64_t CacheKey::fingerprint() const {
  std::string s = std::to_string(N) + "|" + std::to_string(p) + "|" + std::to_string(k) + "|" + what + "|" +
                  std::to_string(ell) + "|v" + std::to_string(kCacheFormatVersion);
  return fnv1a64(s.data(), s.size());
}

std::string CacheKey::filename() const {
  std::ostringstream os;
  os << "N" << N << "_p" << p << "_k" << k << "_" << what << "_" << ell << ".mat";
  return os.str();
}

namespace {

constexpr char kMagic[4] = {'H', 'K', 'C', 'M'};

void put_u64(std::string& out, uint64_t x) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((x >> (8 * i)) & 0xff));
}

bool get_u64(const std::string& in, size_t& pos, uint64_t& x) {
  if (pos + 8 > in.size()) return false;
  x = 0;
  for (int i = 0; i < 8; ++i) x |= static_cast<uint64_t>(static_cast<unsigned char>(in[pos + i])) << (8 * i);
  pos += 8;
  return true;
}

void put_integer(std::string& out, const Integer& z) {
  out.push_back(static_cast<char>(sgn(z) < 0 ? 1 : 0));
  size_t count = 0;
  std::string bytes;
  if (z != 0) {
    size_t n = (mpz_sizeinbase(z.get_mpz_t(), 2) + 7) / 8;
    bytes.resize(n);
    mpz_export(bytes.data(), &count, -1, 1, 0, 0, z.get_mpz_t());
    bytes.resize(count);
  }
  put_u64(out, bytes.size());
  out += bytes;
}

bool get_integer(const std::string& in, size_t& pos, Integer& z) {
  if (pos >= in.size()) return false;
  char neg = in[pos++];
  if (neg != 0 && neg != 1) return false;
  uint64_t n;
  if (!get_u64(in, pos, n) || pos + n > in.size()) return false;
  z = 0;
  if (n > 0) mpz_import(z.get_mpz_t(), n, -1, 1, 0, 0, in.data() + pos);
  pos += n;
  if (neg) z = -z;
  return true;
}

}  // namespace

std::string encode_matrix(const QMatrix& m, uint64_t fingerprint) {
  std::string out(kMagic, 4);
  put_u64(out, kCacheFormatVersion);
  put_u64(out, fingerprint);
  put_u64(out, m.rows());
  put_u64(out, m.cols());
  for (size_t r = 0; r < m.rows(); ++r) {
    for (size_t c = 0; c < m.cols(); ++c) {
      put_integer(out, m(r, c).get_num());
      put_integer(out, m(r, c).get_den());
    }
  }
  put_u64(out, fnv1a64(out.data(), out.size()));
  return out;
}

std::optional<QMatrix> decode_matrix(const std::string& bytes, uint64_t fingerprint) {
  if (bytes.size() < 4 + 8 * 5 || bytes.compare(0, 4, kMagic, 4) != 0) return std::nullopt;
  size_t body = bytes.size() - 8;
  size_t tail = body;
  uint64_t checksum;
  if (!get_u64(bytes, tail, checksum) || checksum != fnv1a64(bytes.data(), body)) return std::nullopt;
  size_t pos = 4;
  uint64_t version, fp, rows, cols;
  if (!get_u64(bytes, pos, version) || version != kCacheFormatVersion) return std::nullopt;
  if (!get_u64(bytes, pos, fp) || fp != fingerprint) return std::nullopt;
  if (!get_u64(bytes, pos, rows) || !get_u64(bytes, pos, cols)) return std::nullopt;
  if (rows > (1u << 20) || cols > (1u << 20)) return std::nullopt;
  QMatrix m(rows, cols);
  for (size_t r = 0; r < rows; ++r) {
    for (size_t c = 0; c < cols; ++c) {
      Integer num, den;
      if (!get_integer(bytes, pos, num) || !get_integer(bytes, pos, den) || den <= 0) return std::nullopt;
      m(r, c) = Rational(num, den);
      m(r, c).canonicalize();
    }
  }
  if (pos != body) return std::nullopt;
  return m;
}

MatrixCache::MatrixCache(std::filesystem::path root) : root_(std::move(root)) {
  std::filesystem::create_directories(root_);
}

std::optional<std::filesystem::path> MatrixCache::root_from_env() {
  const char* env = std::getenv("HECKECONG_CACHE");
  if (env == nullptr || *env == '\0') return std::nullopt;
  return std::filesystem::path(env);
}

std::optional<QMatrix> MatrixCache::load(const CacheKey& key) {
  std::lock_guard<std::mutex> lock(mutex_);
  std::ifstream in(root_ / key.filename(), std::ios::binary);
  if (!in) {
    ++misses_;
    return std::nullopt;
  }
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  auto m = decode_matrix(bytes, key.fingerprint());
  if (m) {
    ++hits_;
  } else {
    ++rejected_;
    ++misses_;
  }
  return m;
}

void MatrixCache::store(const CacheKey& key, const QMatrix& m) {
  std::lock_guard<std::mutex> lock(mutex_);
  std::filesystem::path target = root_ / key.filename();
  std::filesystem::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    std::string bytes = encode_matrix(m, key.fingerprint());
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  }
  std::filesystem::rename(tmp, target);
}

}  // namespace heckecong
