//
// Copyright (c) 2026 The ctmg authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef CTMG_TOOLS_PNG_IO_HPP
#define CTMG_TOOLS_PNG_IO_HPP

#include <filesystem>

#include "ctmg/tensor.hpp"

namespace ctmg::cli {

/// Reads a PNG into a 3-channel tensor; 8-bit value v maps to v / 255
/// exactly. Palette, grayscale, 16-bit and alpha inputs are converted to
/// 8-bit RGB first.
ImageTensor read_png(const std::filesystem::path& path);

/// Writes an 8-bit PNG (RGB for 3 channels, grayscale for 1). Values are
/// clamped to [0, 1] and rounded half-up to 255ths, so a tensor of exact
/// 255ths round-trips losslessly.
void write_png(const std::filesystem::path& path, const ImageTensor& image);

}  // namespace ctmg::cli

#endif  // CTMG_TOOLS_PNG_IO_HPP
