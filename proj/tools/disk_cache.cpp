#include "disk_cache.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <unistd.h>

namespace tlcli {

namespace fs = std::filesystem;

DiskCache DiskCache::from_environment() {
  const char* env = std::getenv("TL_CACHE");
  if (env == nullptr) return DiskCache(fs::path(".tl-cache"));
  if (*env == '\0') return DiskCache(std::nullopt);
  return DiskCache(fs::path(env));
}

fs::path DiskCache::file(const std::string& kind, int n, const std::optional<tl::TorsionParams>& t) const {
  std::string ell = "generic";
  std::string p = "generic";
  if (t) {
    ell = std::to_string(t->ell);
    if (t->p) p = std::to_string(*t->p);
  }
  return dir_.value_or(fs::path()) / (kind + "-" + std::to_string(n) + "-" + ell + "-" + p + ".json");
}

std::optional<tl::Json> DiskCache::read(const fs::path& path) const {
  if (!dir_) return std::nullopt;
  std::ifstream in(path);
  if (!in) return std::nullopt;
  try {
    return tl::Json::parse(in);
  } catch (const tl::Json::exception&) {
    return std::nullopt;
  }
}

void DiskCache::write(const fs::path& path, const tl::Json& value) const {
  if (!dir_) return;
  std::error_code ec;
  fs::create_directories(*dir_, ec);
  if (ec) return;
  const fs::path tmp = path.string() + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp);
    if (!out) return;
    out << value.dump() << "\n";
    if (!out) {
      fs::remove(tmp, ec);
      return;
    }
  }
  fs::rename(tmp, path, ec);
  if (ec) fs::remove(tmp, ec);
}

const tl::GenericMorphism& DiskCache::jw(int n) {
  auto& cache = tl::default_jw_cache();
  if (!cache.contains(n) && dir_) {
    for (int m = n; m >= 2; --m) {
      if (cache.contains(m)) break;
      auto j = read(file("jw", m, std::nullopt));
      if (!j) continue;
      try {
        cache.insert(m, tl::decode_generic_morphism(*j));
        break;
      } catch (const tl::FormatError&) {
      }
    }
  }
  const bool stored = cache.contains(n);
  const tl::GenericMorphism& value = cache.get(n);
  if (!stored || !fs::exists(file("jw", n, std::nullopt))) write(file("jw", n, std::nullopt), tl::encode(value));
  return value;
}

const tl::PljwDecomposition& DiskCache::pljw(int n, const tl::TorsionParams& t) {
  const fs::path path = file("pljw", n, t);
  if (auto j = read(path)) {
    try {
      tl::PljwDecomposition d = tl::decode_pljw(*j);
      if (d.n == n && d.torsion == t) tl::default_pljw_cache().insert(std::move(d));
    } catch (const tl::FormatError&) {
    }
  }
  jw(n);
  const tl::PljwDecomposition& d = tl::build_pljw(n, t);
  if (dir_ && !fs::exists(path)) write(path, tl::encode(d));
  return d;
}

}  // namespace tlcli
