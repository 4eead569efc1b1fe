#include "homcx/cli/cache.hpp"

#include <openssl/evp.h>
#include <unistd.h>

#include <atomic>
#include <cstring>
#include <fstream>
#include <iterator>
#include <stdexcept>

namespace homcx::cli {

namespace {

constexpr char kMagic[4] = {'H', 'R', 'E', 'S'};
constexpr std::size_t kDigest = 32;

std::string sha256_raw(const std::string& bytes) {
  unsigned char out[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (!EVP_Digest(bytes.data(), bytes.size(), out, &len, EVP_sha256(), nullptr))
    throw std::runtime_error("SHA-256 failed");
  return std::string(reinterpret_cast<const char*>(out), len);
}

class Writer {
 public:
  void u32(std::uint32_t v) {
    for (int k = 0; k < 4; ++k) buf_.push_back(static_cast<char>((v >> (8 * k)) & 0xff));
  }
  void i32(int v) { u32(static_cast<std::uint32_t>(v)); }
  void str(const std::string& s) {
    u32(static_cast<std::uint32_t>(s.size()));
    buf_ += s;
  }
  void shifts(const Shifts& s) {
    u32(static_cast<std::uint32_t>(s.size()));
    for (int a : s) i32(a);
  }
  void map(const ModuleMap& f) {
    shifts(f.source());
    shifts(f.target());
    for (const auto& e : f.entries()) {
      u32(static_cast<std::uint32_t>(e.terms().size()));
      for (const auto& t : e.terms()) {
        for (int x : t.mono.exponents()) i32(x);
        u32(t.coef);
      }
    }
  }
  void raw(const std::string& s) { buf_ += s; }
  const std::string& bytes() const { return buf_; }

 private:
  std::string buf_;
};

struct Corrupt : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class Reader {
 public:
  Reader(const std::string& b, std::size_t end) : b_(b), end_(end) {}
  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int k = 0; k < 4; ++k) v |= static_cast<std::uint32_t>(static_cast<unsigned char>(b_[pos_++])) << (8 * k);
    return v;
  }
  int i32() { return static_cast<int>(u32()); }
  std::string str() {
    auto n = u32();
    need(n);
    auto s = b_.substr(pos_, n);
    pos_ += n;
    return s;
  }
  Shifts shifts() {
    auto n = u32();
    need(std::size_t{n} * 4);
    Shifts s(n);
    for (auto& a : s) a = i32();
    return s;
  }
  ModuleMap map(const RingPtr& A) {
    auto src = shifts();
    auto tgt = shifts();
    const auto& F = A->field();
    std::vector<Polynomial> entries;
    entries.reserve(src.size() * tgt.size());
    for (std::size_t k = 0; k < src.size() * tgt.size(); ++k) {
      auto n = u32();
      need(std::size_t{n} * 4 * (A->num_vars() + 1));
      std::vector<Term> terms;
      for (std::uint32_t t = 0; t < n; ++t) {
        std::vector<int> exps(A->num_vars());
        for (auto& x : exps) {
          x = i32();
          if (x < 0) throw Corrupt("negative exponent");
        }
        auto c = u32();
        if (c == 0 || c >= F.characteristic()) throw Corrupt("coefficient out of range");
        terms.push_back({Monomial(std::move(exps)), c});
      }
      entries.push_back(Polynomial::from_terms(F, std::move(terms)));
    }
    try {
      return ModuleMap(A, std::move(src), std::move(tgt), std::move(entries));
    } catch (const std::exception& e) {
      throw Corrupt(std::string("invalid map: ") + e.what());
    }
  }
  void skip(std::size_t n) {
    need(n);
    pos_ += n;
  }
  bool done() const { return pos_ == end_; }

 private:
  void need(std::size_t n) const {
    if (n > end_ - pos_) throw Corrupt("truncated file");
  }
  const std::string& b_;
  std::size_t end_, pos_ = 0;
};

std::string key_text(const GradedModule& m, int H, int max_degree) {
  return "homcx-cache/" + std::to_string(DiskCache::kVersion) + "\n" + canonical_text(m) + "\nH=" +
         std::to_string(H) + "\nD=" + std::to_string(max_degree);
}

}  // namespace

std::string sha256_hex(const std::string& bytes) {
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned char c : sha256_raw(bytes)) {
    out.push_back(hex[c >> 4]);
    out.push_back(hex[c & 15]);
  }
  return out;
}

DiskCache::DiskCache(std::filesystem::path dir) : dir_(std::move(dir)) { std::filesystem::create_directories(dir_); }

std::filesystem::path DiskCache::path_for(const GradedModule& m, int H, int max_degree) const {
  return dir_ / (sha256_hex(key_text(m, H, max_degree)) + ".hres");
}

std::optional<Resolution> DiskCache::load(const GradedModule& m, int H, int max_degree) {
  auto path = path_for(m, H, max_degree);
  std::lock_guard lock(mu_);
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    ++misses_;
    return std::nullopt;
  }
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  try {
    if (bytes.size() < sizeof kMagic + kDigest) throw Corrupt("truncated file");
    const std::size_t body = bytes.size() - kDigest;
    if (sha256_raw(bytes.substr(0, body)) != bytes.substr(body)) throw Corrupt("checksum mismatch");
    if (std::memcmp(bytes.data(), kMagic, sizeof kMagic) != 0) throw Corrupt("bad magic");
    Reader rd(bytes, body);
    rd.skip(sizeof kMagic);
    if (rd.u32() != kVersion) throw Corrupt("unsupported version");
    if (rd.str() != canonical_text(m)) throw Corrupt("stored module differs from the key");
    if (rd.i32() != H || rd.i32() != max_degree) throw Corrupt("stored bounds differ from the key");
    Resolution r;
    r.max_degree = rd.i32();
    r.module = GradedModule(rd.map(m.ring()));
    auto count = rd.u32();
    if (count > 100000) throw Corrupt("implausible length");
    for (std::uint32_t k = 0; k < count; ++k) r.diffs.push_back(rd.map(m.ring()));
    if (!rd.done()) throw Corrupt("trailing bytes");
    ++hits_;
    return r;
  } catch (const Corrupt& e) {
    warnings_.push_back("ignoring cache file " + path.filename().string() + ": " + e.what());
    ++misses_;
    return std::nullopt;
  }
}

void DiskCache::save(const GradedModule& m, int H, const Resolution& r) {
  Writer w;
  w.raw(std::string(kMagic, sizeof kMagic));
  w.u32(kVersion);
  w.str(canonical_text(m));
  w.i32(H);
  w.i32(r.max_degree);
  w.i32(r.max_degree);
  w.map(r.module.presentation());
  w.u32(static_cast<std::uint32_t>(r.diffs.size()));
  for (const auto& d : r.diffs) w.map(d);
  std::string bytes = w.bytes() + sha256_raw(w.bytes());

  static std::atomic<unsigned> counter{0};
  auto path = path_for(m, H, r.max_degree);
  auto tmp = path;
  tmp += ".tmp" + std::to_string(::getpid()) + "." + std::to_string(counter++);
  std::lock_guard lock(mu_);
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) {
      warnings_.push_back("could not write cache file " + tmp.string());
      return;
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    warnings_.push_back("could not rename cache file: " + ec.message());
    std::filesystem::remove(tmp, ec);
  }
}

long DiskCache::hits() const {
  std::lock_guard lock(mu_);
  return hits_;
}

long DiskCache::misses() const {
  std::lock_guard lock(mu_);
  return misses_;
}

std::vector<std::string> DiskCache::warnings() const {
  std::lock_guard lock(mu_);
  return warnings_;
}

}  // namespace homcx::cli
