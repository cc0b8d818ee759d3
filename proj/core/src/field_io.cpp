#include "anisolab/field_io.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "anisolab/errors.hpp"

namespace anisolab {
namespace {

constexpr std::array<char, 8> kMagic{'A', 'N', 'I', 'S', 'O', 'F', 'L', 'D'};
constexpr std::uint32_t kVersion = 1;

template <class T>
T to_little(T v) {
  if constexpr (std::endian::native == std::endian::little) {
    return v;
  } else {
    std::array<unsigned char, sizeof(T)> b;
    std::memcpy(b.data(), &v, sizeof(T));
    std::reverse(b.begin(), b.end());
    std::memcpy(&v, b.data(), sizeof(T));
    return v;
  }
}

template <class T>
void put(std::ofstream& os, T v) {
  v = to_little(v);
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
T get(std::ifstream& is, const std::filesystem::path& path) {
  T v{};
  is.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!is) throw IoError("read_field: truncated file " + path.string());
  return to_little(v);
}

}  // namespace

void write_field(const std::filesystem::path& path, const ScalarField& u) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw IoError("write_field: cannot open " + path.string());
  const Grid& g = u.grid();
  const auto n = static_cast<std::uint32_t>(g.dim());
  os.write(kMagic.data(), kMagic.size());
  put(os, kVersion);
  put(os, n);
  put(os, static_cast<std::uint32_t>(g.q()));
  put(os, std::uint32_t{0});
  for (int i = 0; i < g.dim(); ++i) put(os, static_cast<std::int64_t>(g.cells(i)));
  for (int i = 0; i < g.dim(); ++i) put(os, g.lower(i));
  for (int i = 0; i < g.dim(); ++i) put(os, g.upper(i));
  for (int i = 0; i < g.dim(); ++i) put(os, g.spacing(i));
  for (double v : u.values()) put(os, v);
  if (!os) throw IoError("write_field: write failed for " + path.string());
}

ScalarField read_field(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("read_field: cannot open " + path.string());
  std::array<char, 8> magic{};
  is.read(magic.data(), magic.size());
  if (!is || magic != kMagic) throw IoError("read_field: bad magic in " + path.string());
  if (get<std::uint32_t>(is, path) != kVersion) throw IoError("read_field: unsupported version in " + path.string());
  const auto n = get<std::uint32_t>(is, path);
  const auto q = get<std::uint32_t>(is, path);
  (void)get<std::uint32_t>(is, path);
  if (n < 2 || n > 16) throw IoError("read_field: implausible dimension in " + path.string());

  std::vector<Index> cells(n);
  std::vector<double> lower(n), upper(n);
  for (auto& c : cells) c = static_cast<Index>(get<std::int64_t>(is, path));
  for (auto& v : lower) v = get<double>(is, path);
  for (auto& v : upper) v = get<double>(is, path);
  Grid grid(lower, upper, cells, static_cast<int>(q));
  for (std::uint32_t i = 0; i < n; ++i) {
    const double h = get<double>(is, path);
    if (std::abs(h - grid.spacing(static_cast<int>(i))) > 1e-12 * std::abs(h))
      throw IoError("read_field: spacing header inconsistent with extents in " + path.string());
  }
  std::vector<double> values(static_cast<std::size_t>(grid.node_count()));
  for (auto& v : values) v = get<double>(is, path);
  return ScalarField(std::move(grid), std::move(values));
}

}  // namespace anisolab
