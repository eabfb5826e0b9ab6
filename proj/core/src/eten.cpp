//
// Copyright (c) 2026 The ctmg authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "ctmg/eten.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>

namespace ctmg {

namespace {

constexpr std::array<char, 4> kMagic = {'E', 'T', 'E', 'N'};
constexpr std::uint32_t kVersion = 1;

void put_u32(std::ostream& os, std::uint32_t v) {
  std::array<unsigned char, 4> b{};
  for (int i = 0; i < 4; ++i) b[static_cast<std::size_t>(i)] = static_cast<unsigned char>(v >> (8 * i));
  os.write(reinterpret_cast<const char*>(b.data()), 4);
}

void put_u64(std::ostream& os, std::uint64_t v) {
  std::array<unsigned char, 8> b{};
  for (int i = 0; i < 8; ++i) b[static_cast<std::size_t>(i)] = static_cast<unsigned char>(v >> (8 * i));
  os.write(reinterpret_cast<const char*>(b.data()), 8);
}

void put_f64(std::ostream& os, double v) { put_u64(os, std::bit_cast<std::uint64_t>(v)); }

std::uint32_t get_u32(std::istream& is) {
  std::array<unsigned char, 4> b{};
  is.read(reinterpret_cast<char*>(b.data()), 4);
  std::uint32_t v = 0;
  for (int i = 3; i >= 0; --i) v = (v << 8) | b[static_cast<std::size_t>(i)];
  return v;
}

std::uint64_t get_u64(std::istream& is) {
  std::array<unsigned char, 8> b{};
  is.read(reinterpret_cast<char*>(b.data()), 8);
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | b[static_cast<std::size_t>(i)];
  return v;
}

double get_f64(std::istream& is) { return std::bit_cast<double>(get_u64(is)); }

void write_header(std::ostream& os, std::uint32_t order, std::span<const std::uint64_t> dims) {
  os.write(kMagic.data(), 4);
  put_u32(os, kVersion);
  put_u32(os, order);
  for (std::uint64_t d : dims) put_u64(os, d);
}

void write_payload(std::ostream& os, std::span<const double> values, const std::filesystem::path& path) {
  for (double v : values) put_f64(os, v);
  if (!os) throw io_error("eten: failed writing " + path.string());
}

struct Header {
  std::uint32_t order = 0;
  std::vector<std::uint64_t> dims;
};

Header read_header(std::istream& is, const std::filesystem::path& path) {
  std::array<char, 4> magic{};
  is.read(magic.data(), 4);
  if (!is || magic != kMagic) throw io_error("eten: bad magic in " + path.string());
  const std::uint32_t version = get_u32(is);
  if (version != kVersion)
    throw io_error("eten: unsupported version " + std::to_string(version) + " in " + path.string());
  Header h;
  h.order = get_u32(is);
  if (h.order != 3 && h.order != 6) throw io_error("eten: unsupported order in " + path.string());
  h.dims.resize(h.order);
  for (auto& d : h.dims) d = get_u64(is);
  if (!is) throw io_error("eten: truncated header in " + path.string());
  for (auto d : h.dims)
    if (d == 0 || d > (1u << 20)) throw io_error("eten: implausible dimension in " + path.string());
  return h;
}

std::vector<double> read_payload(std::istream& is, std::uint64_t count, const std::filesystem::path& path) {
  std::vector<double> values(count);
  for (auto& v : values) {
    v = get_f64(is);
    if (!is) throw io_error("eten: truncated payload in " + path.string());
    if (!std::isfinite(v)) throw io_error("eten: non-finite value in " + path.string());
  }
  // must be at end of file
  is.peek();
  if (!is.eof()) throw io_error("eten: trailing bytes in " + path.string());
  return values;
}

}  // namespace

void save_eten(const std::filesystem::path& path, const ImageTensor& t) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw io_error("eten: cannot open " + path.string() + " for writing");
  const Dims3 d = t.dims();
  const std::array<std::uint64_t, 3> dims = {static_cast<std::uint64_t>(d.n1),
                                             static_cast<std::uint64_t>(d.n2),
                                             static_cast<std::uint64_t>(d.n3)};
  write_header(os, 3, dims);
  write_payload(os, t.values(), path);
}

void save_eten(const std::filesystem::path& path, const Operator6& t) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw io_error("eten: cannot open " + path.string() + " for writing");
  const Dims3 d = t.dims();
  const std::array<std::uint64_t, 6> dims = {
      static_cast<std::uint64_t>(d.n1), static_cast<std::uint64_t>(d.n2),
      static_cast<std::uint64_t>(d.n3), static_cast<std::uint64_t>(d.n1),
      static_cast<std::uint64_t>(d.n2), static_cast<std::uint64_t>(d.n3)};
  write_header(os, 6, dims);
  write_payload(os, t.values(), path);
}

ImageTensor load_eten_image(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw io_error("eten: cannot open " + path.string());
  const Header h = read_header(is, path);
  if (h.order != 3) throw io_error("eten: expected order 3 in " + path.string());
  const Dims3 dims{static_cast<int>(h.dims[0]), static_cast<int>(h.dims[1]),
                   static_cast<int>(h.dims[2])};
  auto values = read_payload(is, h.dims[0] * h.dims[1] * h.dims[2], path);
  return ImageTensor(dims, std::move(values));
}

Operator6 load_eten_operator(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw io_error("eten: cannot open " + path.string());
  const Header h = read_header(is, path);
  if (h.order != 6) throw io_error("eten: expected order 6 in " + path.string());
  if (h.dims[0] != h.dims[3] || h.dims[1] != h.dims[4] || h.dims[2] != h.dims[5])
    throw io_error("eten: operator is not square in the Einstein sense in " + path.string());
  const Dims3 dims{static_cast<int>(h.dims[0]), static_cast<int>(h.dims[1]),
                   static_cast<int>(h.dims[2])};
  const std::uint64_t n = h.dims[0] * h.dims[1] * h.dims[2];
  auto values = read_payload(is, n * n, path);
  return Operator6(dims, std::move(values));
}

bool is_eten_file(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) return false;
  std::array<char, 4> magic{};
  is.read(magic.data(), 4);
  return is && magic == kMagic;
}

}  // namespace ctmg
