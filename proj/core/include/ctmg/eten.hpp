//
// Copyright (c) 2026 The ctmg authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef CTMG_ETEN_HPP
#define CTMG_ETEN_HPP

#include <filesystem>

#include "ctmg/tensor.hpp"

namespace ctmg {

// ETEN raw tensor interchange format, all little-endian:
//   bytes 0..3   magic "ETEN"
//   u32          version (1)
//   u32          order (3 or 6)
//   order * u64  dims
//   f64 payload  values in row-major order

void save_eten(const std::filesystem::path& path, const ImageTensor& t);
void save_eten(const std::filesystem::path& path, const Operator6& t);

ImageTensor load_eten_image(const std::filesystem::path& path);
Operator6 load_eten_operator(const std::filesystem::path& path);

/// True when the file starts with the ETEN magic bytes.
bool is_eten_file(const std::filesystem::path& path);

}  // namespace ctmg

#endif  // CTMG_ETEN_HPP
