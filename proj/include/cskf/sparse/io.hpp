#pragma once

#include <cstdint>
#include <cstring>
#include <istream>
#include <ostream>
#include <vector>

#include "cskf/errors.hpp"
#include "cskf/sparse/lower_triangular.hpp"

namespace cskf::sparse {

// Factor blob layout (little-endian):
//   magic "CSKF" | version u32 | dim u64 | nnz u64 |
//   perm dim*u64 | col_ptr (dim+1)*u64 | row_idx nnz*u64 | values nnz*f64
inline constexpr std::uint32_t kFactorVersion = 1;

namespace io_detail {

template <typename T>
void write_raw(std::ostream& os, const T& v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T read_raw(std::istream& is) {
  T v{};
  is.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!is) throw FormatError("unexpected end of stream");
  return v;
}

template <typename T>
void write_vec(std::ostream& os, const std::vector<T>& v) {
  os.write(reinterpret_cast<const char*>(v.data()),
           static_cast<std::streamsize>(v.size() * sizeof(T)));
}

template <typename T>
void read_vec(std::istream& is, std::vector<T>& v, std::size_t count) {
  v.resize(count);
  is.read(reinterpret_cast<char*>(v.data()),
          static_cast<std::streamsize>(count * sizeof(T)));
  if (!is) throw FormatError("unexpected end of stream");
}

}  // namespace io_detail

inline void write_factor(std::ostream& os, const SparseLowerTriangular& g) {
  using namespace io_detail;
  os.write("CSKF", 4);
  write_raw(os, kFactorVersion);
  write_raw(os, static_cast<std::uint64_t>(g.dim));
  write_raw(os, static_cast<std::uint64_t>(g.nnz()));
  std::vector<std::uint64_t> tmp(g.perm.begin(), g.perm.end());
  write_vec(os, tmp);
  tmp.assign(g.col_ptr.begin(), g.col_ptr.end());
  write_vec(os, tmp);
  tmp.assign(g.row_idx.begin(), g.row_idx.end());
  write_vec(os, tmp);
  write_vec(os, g.values);
}

inline SparseLowerTriangular read_factor(std::istream& is) {
  using namespace io_detail;
  char magic[4];
  is.read(magic, 4);
  if (!is || std::memcmp(magic, "CSKF", 4) != 0)
    throw FormatError("factor blob: bad magic");
  const auto version = read_raw<std::uint32_t>(is);
  if (version != kFactorVersion)
    throw VersionMismatch("factor blob: version " + std::to_string(version));
  const auto dim = static_cast<Index>(read_raw<std::uint64_t>(is));
  const auto nnz = static_cast<Index>(read_raw<std::uint64_t>(is));
  if (dim <= 0 || nnz < dim) throw FormatError("factor blob: bad dimensions");
  SparseLowerTriangular g;
  g.dim = dim;
  std::vector<std::uint64_t> tmp;
  read_vec(is, tmp, static_cast<std::size_t>(dim));
  g.perm.assign(tmp.begin(), tmp.end());
  read_vec(is, tmp, static_cast<std::size_t>(dim) + 1);
  g.col_ptr.assign(tmp.begin(), tmp.end());
  read_vec(is, tmp, static_cast<std::size_t>(nnz));
  g.row_idx.assign(tmp.begin(), tmp.end());
  read_vec(is, g.values, static_cast<std::size_t>(nnz));
  g.validate();
  return g;
}

}  // namespace cskf::sparse
