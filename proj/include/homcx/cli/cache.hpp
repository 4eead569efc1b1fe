#pragma once

#include <filesystem>
#include <mutex>
#include <string>
#include <vector>

#include "homcx/resolution.hpp"

namespace homcx::cli {

/// Content-addressed resolution store. One file per (module, H, D), named
/// by the SHA-256 of the canonical module text and both bounds. Files are
/// versioned binary blobs:
///
///   "HRES" | u32 version | str canonical | i32 H | i32 D | i32 stored D
///   | map presentation | u32 count | map diffs... | 32-byte SHA-256 of all
///   preceding bytes
///
/// where str is u32 length + bytes, and a map is its shifts (source then
/// target, each u32 length + i32 values) followed by its entries, each as
/// u32 term count and per term the exponents (i32) and the coefficient (u32).
/// Little-endian throughout. A file that fails any check is ignored and a
/// warning is recorded; the resolution is then recomputed and rewritten.
class DiskCache : public ResolutionStore {
 public:
  static constexpr std::uint32_t kVersion = 1;

  explicit DiskCache(std::filesystem::path dir);

  std::optional<Resolution> load(const GradedModule& m, int H, int max_degree) override;
  void save(const GradedModule& m, int H, const Resolution& r) override;

  std::filesystem::path path_for(const GradedModule& m, int H, int max_degree) const;

  long hits() const;
  long misses() const;
  std::vector<std::string> warnings() const;

 private:
  std::filesystem::path dir_;
  mutable std::mutex mu_;
  long hits_ = 0, misses_ = 0;
  std::vector<std::string> warnings_;
};

/// Hex SHA-256 digest.
std::string sha256_hex(const std::string& bytes);

}  // namespace homcx::cli
