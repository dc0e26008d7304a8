#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>

#include "pnt/error.hpp"
#include "pnt/sieve.hpp"

namespace pnt {
namespace {

constexpr char kMagic[8] = {'P', 'N', 'T', 'O', 'M', 'E', 'G', 'A'};

template <typename T>
void put_le(std::ostream& out, T value) {
  unsigned char buf[sizeof(T)];
  for (std::size_t i = 0; i < sizeof(T); ++i) buf[i] = static_cast<unsigned char>(value >> (8 * i));
  out.write(reinterpret_cast<const char*>(buf), sizeof(T));
}

template <typename T>
T get_le(std::istream& in, const std::string& path) {
  unsigned char buf[sizeof(T)];
  if (!in.read(reinterpret_cast<char*>(buf), sizeof(T))) raise(ErrorKind::Io, "truncated header in " + path);
  T value = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) value |= static_cast<T>(buf[i]) << (8 * i);
  return value;
}

}  // namespace

void save_table(const ArithmeticTable& table, const std::string& path) {
  // Write to a sibling temp file and rename, so readers never see a partial table.
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) raise(ErrorKind::Io, "cannot open " + tmp + " for writing");
    out.write(kMagic, sizeof kMagic);
    put_le<std::uint32_t>(out, kTableCacheVersion);
    put_le<std::uint64_t>(out, table.lo());
    put_le<std::uint64_t>(out, table.hi());
    const auto omega = table.omega();
    out.write(reinterpret_cast<const char*>(omega.data()), static_cast<std::streamsize>(omega.size()));
    if (!out) raise(ErrorKind::Io, "write failed for " + tmp);
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) raise(ErrorKind::Io, "cannot rename " + tmp + ": " + ec.message());
}

ArithmeticTable load_table(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(ErrorKind::Io, "cannot open " + path);
  char magic[8];
  if (!in.read(magic, sizeof magic) || std::memcmp(magic, kMagic, sizeof magic) != 0) {
    raise(ErrorKind::Io, path + " is not an Omega table");
  }
  const auto version = get_le<std::uint32_t>(in, path);
  if (version != kTableCacheVersion) {
    raise(ErrorKind::Io, path + " has table version " + std::to_string(version));
  }
  const auto lo = get_le<std::uint64_t>(in, path);
  const auto hi = get_le<std::uint64_t>(in, path);
  if (lo < 1 || lo >= hi) raise(ErrorKind::Io, path + " has an invalid range");
  std::vector<std::uint8_t> omega(hi - lo);
  if (!in.read(reinterpret_cast<char*>(omega.data()), static_cast<std::streamsize>(omega.size()))) {
    raise(ErrorKind::Io, "truncated table body in " + path);
  }
  return ArithmeticTable(lo, hi, std::move(omega));
}

std::string resolve_cache_dir(const std::string& explicit_dir) {
  if (!explicit_dir.empty()) return explicit_dir;
  if (const char* env = std::getenv("PNT_CACHE_DIR"); env != nullptr) return env;
  return {};
}

ArithmeticTable cached_sieve_range(std::uint64_t lo, std::uint64_t hi, const SieveConfig& config,
                                   const std::string& cache_dir) {
  if (cache_dir.empty()) return sieve_range(lo, hi, config);
  const std::filesystem::path dir(cache_dir);
  const auto file = dir / ("omega_" + std::to_string(lo) + "_" + std::to_string(hi) + ".bin");
  if (std::filesystem::exists(file)) {
    try {
      return load_table(file.string());
    } catch (const Error&) {
      // Stale or damaged entry: rebuild below and overwrite it.
    }
  }
  auto table = sieve_range(lo, hi, config);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) raise(ErrorKind::Io, "cannot create cache directory " + cache_dir + ": " + ec.message());
  save_table(table, file.string());
  return table;
}

}  // namespace pnt
