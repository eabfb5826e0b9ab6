//
// Copyright (c) 2026 The ctmg authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef CTMG_SYNTHETIC_HPP
#define CTMG_SYNTHETIC_HPP

#include <string_view>

#include "ctmg/tensor.hpp"

namespace ctmg {

/// Deterministic three-channel test scenes in [0, 1].
///   "scene"  - gradients, shapes and multi-scale texture over the whole
///              frame (the default benchmark image)
///   "plain"  - gradients and shapes without texture
///   "edges"  - piecewise-constant shapes only
///   "smooth" - gradients and soft bumps, no hard edges
ImageTensor synthetic_scene(int rows, int cols, std::string_view variant = "scene");

}  // namespace ctmg

#endif  // CTMG_SYNTHETIC_HPP
