//
// Copyright (c) 2026 The ctmg authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "ctmg/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace ctmg {

namespace {

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

void paint_gradients(ImageTensor& img) {
  const Dims3 d = img.dims();
  for (int i = 0; i < d.n1; ++i)
    for (int j = 0; j < d.n2; ++j) {
      const double x = d.n2 > 1 ? static_cast<double>(j) / (d.n2 - 1) : 0.0;
      const double y = d.n1 > 1 ? static_cast<double>(i) / (d.n1 - 1) : 0.0;
      img(i, j, 0) = 0.25 + 0.5 * x;
      img(i, j, 1) = 0.25 + 0.5 * y;
      img(i, j, 2) = 0.15 + 0.35 * (x + y);
    }
}

void paint_shapes(ImageTensor& img) {
  const Dims3 d = img.dims();
  for (int i = 0; i < d.n1; ++i)
    for (int j = 0; j < d.n2; ++j) {
      const double x = d.n2 > 1 ? static_cast<double>(j) / (d.n2 - 1) : 0.0;
      const double y = d.n1 > 1 ? static_cast<double>(i) / (d.n1 - 1) : 0.0;
      if (x > 0.15 && x < 0.45 && y > 0.15 && y < 0.4) {
        img(i, j, 0) = 0.9;
        img(i, j, 1) = 0.2;
        img(i, j, 2) = 0.25;
      }
      const double dx = x - 0.3, dy = y - 0.68;
      if (dx * dx + dy * dy < 0.16 * 0.16) {
        img(i, j, 0) = 0.2;
        img(i, j, 1) = 0.85;
        img(i, j, 2) = 0.3;
      }
      if (std::abs(x - y) < 0.05 && x > 0.5) {
        img(i, j, 0) = 0.95;
        img(i, j, 1) = 0.95;
        img(i, j, 2) = 0.2;
      }
    }
}

// Multi-scale texture over the whole frame, in the spirit of foliage and
// brickwork: mid-frequency waves plus a fine weave.
void paint_texture(ImageTensor& img) {
  const Dims3 d = img.dims();
  constexpr double two_pi = 2.0 * std::numbers::pi;
  for (int i = 0; i < d.n1; ++i)
    for (int j = 0; j < d.n2; ++j) {
      const double x = d.n2 > 1 ? static_cast<double>(j) / (d.n2 - 1) : 0.0;
      const double y = d.n1 > 1 ? static_cast<double>(i) / (d.n1 - 1) : 0.0;
      const double mid = std::sin(two_pi * 10 * x) * std::sin(two_pi * 8 * y) +
                         std::sin(two_pi * 14 * (0.8 * x + 0.6 * y)) +
                         std::sin(two_pi * 18 * (x - 0.5 * y));
      const double fine = std::sin(two_pi * 30 * x + 3 * y) * std::cos(two_pi * 28 * y);
      for (int k = 0; k < 3; ++k) {
        const double weave =
            0.5 * std::sin(two_pi * 12 * y + 2.1 * k) * std::cos(two_pi * 6 * x + k);
        img(i, j, k) = clamp01(img(i, j, k) + 0.4 * (mid + weave) / 3.5 + 0.08 * fine);
      }
    }
}

void paint_bumps(ImageTensor& img) {
  const Dims3 d = img.dims();
  const double cx[3] = {0.3, 0.7, 0.5};
  const double cy[3] = {0.35, 0.6, 0.8};
  for (int i = 0; i < d.n1; ++i)
    for (int j = 0; j < d.n2; ++j) {
      const double x = d.n2 > 1 ? static_cast<double>(j) / (d.n2 - 1) : 0.0;
      const double y = d.n1 > 1 ? static_cast<double>(i) / (d.n1 - 1) : 0.0;
      for (int k = 0; k < 3; ++k) {
        const double dx = x - cx[k], dy = y - cy[k];
        img(i, j, k) = clamp01(img(i, j, k) + 0.35 * std::exp(-(dx * dx + dy * dy) / 0.02));
      }
    }
}

}  // namespace

ImageTensor synthetic_scene(int rows, int cols, std::string_view variant) {
  if (rows < 1 || cols < 1) throw parameter_error("synthetic_scene: shape must be positive");
  ImageTensor img({rows, cols, 3});
  if (variant == "scene") {
    paint_gradients(img);
    paint_shapes(img);
    paint_texture(img);
  } else if (variant == "plain") {
    paint_gradients(img);
    paint_shapes(img);
  } else if (variant == "edges") {
    for (double& v : img.values()) v = 0.35;
    paint_shapes(img);
  } else if (variant == "smooth") {
    paint_gradients(img);
    paint_bumps(img);
  } else {
    throw parameter_error("synthetic_scene: unknown variant '" + std::string(variant) + "'");
  }
  for (double& v : img.values()) v = clamp01(v);
  return img;
}

}  // namespace ctmg
