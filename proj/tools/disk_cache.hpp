// On-disk store of computed idempotents, keyed by (kind, n, ell, p).
#pragma once

#include <filesystem>
#include <optional>

#include "tl/serialize.hpp"

namespace tlcli {

class DiskCache {
 public:
  /// Directory from TL_CACHE, default ./.tl-cache. An empty TL_CACHE disables the cache.
  static DiskCache from_environment();

  explicit DiskCache(std::optional<std::filesystem::path> dir) : dir_(std::move(dir)) {}

  /// JW_n over Q(delta), preloading the largest stored JW_m with m <= n into the default cache.
  const tl::GenericMorphism& jw(int n);
  /// pJW_n, preloading a stored decomposition into the default cache.
  const tl::PljwDecomposition& pljw(int n, const tl::TorsionParams& t);

  std::filesystem::path file(const std::string& kind, int n, const std::optional<tl::TorsionParams>& t) const;

 private:
  std::optional<tl::Json> read(const std::filesystem::path& path) const;
  void write(const std::filesystem::path& path, const tl::Json& value) const;

  std::optional<std::filesystem::path> dir_;
};

}  // namespace tlcli
