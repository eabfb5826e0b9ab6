//
// Copyright (c) 2026 The ctmg authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "ctmg/blur.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ctmg/rand.hpp"

namespace ctmg {

double gaussian_value(double sigma, int di, int dj, int dk) {
  const double norm = std::pow(std::sqrt(2.0 * std::numbers::pi) * sigma, 3.0);
  const double q = (static_cast<double>(di) * di + static_cast<double>(dj) * dj +
                    static_cast<double>(dk) * dk) /
                   (2.0 * sigma * sigma);
  return std::exp(-q) / norm;
}

int default_psf_radius(double sigma) {
  if (!(sigma > 0.0)) throw parameter_error("default_psf_radius: sigma must be positive");
  return std::max(1, static_cast<int>(std::ceil(6.0 * sigma)));
}

GaussianPsf gaussian_psf(double sigma, int radius) {
  if (!(sigma > 0.0)) throw parameter_error("gaussian_psf: sigma must be positive");
  if (radius < 1) throw parameter_error("gaussian_psf: radius must be >= 1");
  GaussianPsf psf;
  psf.sigma = sigma;
  psf.radius = radius;
  psf.channel_radius = std::min(radius, 2);
  const int w = 2 * radius + 1;
  const int c = 2 * psf.channel_radius + 1;
  psf.kernel.resize(static_cast<std::size_t>(w) * w * c);
  std::size_t idx = 0;
  for (int di = -radius; di <= radius; ++di)
    for (int dj = -radius; dj <= radius; ++dj)
      for (int dk = -psf.channel_radius; dk <= psf.channel_radius; ++dk)
        psf.kernel[idx++] = gaussian_value(sigma, di, dj, dk);
  return psf;
}

GaussianPsf gaussian_psf(double sigma) { return gaussian_psf(sigma, default_psf_radius(sigma)); }

Operator6 build_toeplitz(const GaussianPsf& psf, Dims3 dims, index_t cap) {
  if (!dims.positive()) throw dimension_error("build_toeplitz: dims must be positive");
  const index_t n = dims.count();
  if (n > cap)
    throw parameter_error("build_toeplitz: unfolded dimension " + std::to_string(n) +
                          " exceeds dense cap " + std::to_string(cap));

  // Entries depend only on the index offsets; tabulate S over the realizable
  // offset box once instead of calling exp per entry.
  const int o1 = dims.n1 - 1, o2 = dims.n2 - 1, o3 = dims.n3 - 1;
  const int w1 = 2 * o1 + 1, w2 = 2 * o2 + 1, w3 = 2 * o3 + 1;
  std::vector<double> table(static_cast<std::size_t>(w1) * w2 * w3);
  std::size_t idx = 0;
  for (int d1 = -o1; d1 <= o1; ++d1)
    for (int d2 = -o2; d2 <= o2; ++d2)
      for (int d3 = -o3; d3 <= o3; ++d3)
        table[idx++] = gaussian_value(psf.sigma, d1, d2, d3);
  const auto sample = [&](int d1, int d2, int d3) {
    return table[(static_cast<std::size_t>(d1 + o1) * w2 + (d2 + o2)) * w3 + (d3 + o3)];
  };

  Operator6 t(dims);
  double* tv = t.values().data();
  index_t pos = 0;
  for (int i1 = 0; i1 < dims.n1; ++i1)
    for (int i2 = 0; i2 < dims.n2; ++i2)
      for (int i3 = 0; i3 < dims.n3; ++i3)
        for (int j1 = 0; j1 < dims.n1; ++j1)
          for (int j2 = 0; j2 < dims.n2; ++j2)
            for (int j3 = 0; j3 < dims.n3; ++j3)
              tv[pos++] = sample(j1 - i1, j2 - i2, j3 - i3);
  return t;
}

Operator6 build_toeplitz_from_kernel(const GaussianPsf& psf, Dims3 dims, index_t cap) {
  if (!dims.positive()) throw dimension_error("build_toeplitz_from_kernel: dims must be positive");
  const index_t n = dims.count();
  if (n > cap)
    throw parameter_error("build_toeplitz_from_kernel: unfolded dimension " + std::to_string(n) +
                          " exceeds dense cap " + std::to_string(cap));
  const auto sample = [&](int d1, int d2, int d3) {
    if (std::abs(d1) > psf.radius || std::abs(d2) > psf.radius || std::abs(d3) > psf.channel_radius)
      return 0.0;
    return psf.at(d1, d2, d3);
  };
  Operator6 t(dims);
  double* tv = t.values().data();
  index_t pos = 0;
  for (int i1 = 0; i1 < dims.n1; ++i1)
    for (int i2 = 0; i2 < dims.n2; ++i2)
      for (int i3 = 0; i3 < dims.n3; ++i3)
        for (int j1 = 0; j1 < dims.n1; ++j1)
          for (int j2 = 0; j2 < dims.n2; ++j2)
            for (int j3 = 0; j3 < dims.n3; ++j3)
              tv[pos++] = sample(j1 - i1, j2 - i2, j3 - i3);
  return t;
}

GaussianPsf coarsen_psf(const GaussianPsf& fine) {
  GaussianPsf coarse;
  coarse.sigma = 0.5 * fine.sigma;  // effective width halves; informational
  coarse.radius = std::max(1, (fine.radius + 1) / 2);
  coarse.channel_radius = fine.channel_radius;
  const int w = 2 * coarse.radius + 1;
  const int c = 2 * coarse.channel_radius + 1;
  coarse.kernel.assign(static_cast<std::size_t>(w) * w * c, 0.0);

  const auto fine_at = [&](int di, int dj, int dk) {
    if (std::abs(di) > fine.radius || std::abs(dj) > fine.radius) return 0.0;
    return fine.at(di, dj, dk);
  };
  // per-axis weights {1/2, 1, 1/2} around the doubled offset
  const double w3[3] = {0.5, 1.0, 0.5};
  std::size_t idx = 0;
  for (int mi = -coarse.radius; mi <= coarse.radius; ++mi)
    for (int mj = -coarse.radius; mj <= coarse.radius; ++mj)
      for (int dk = -coarse.channel_radius; dk <= coarse.channel_radius; ++dk) {
        double acc = 0.0;
        for (int a = -1; a <= 1; ++a)
          for (int b = -1; b <= 1; ++b)
            acc += w3[a + 1] * w3[b + 1] * fine_at(2 * mi + a, 2 * mj + b, dk);
        coarse.kernel[idx++] = acc;
      }
  return coarse;
}

ImageTensor apply_blur(const GaussianPsf& psf, const ImageTensor& x) {
  const Dims3 d = x.dims();
  ImageTensor y(d);
  const int r = psf.radius;
  const int cr = psf.channel_radius;
  const int kw = 2 * r + 1;
  const int kc = 2 * cr + 1;
  const double* kv = psf.kernel.data();
  const double* xv = x.values().data();
  double* yv = y.values().data();

  for (int i1 = 0; i1 < d.n1; ++i1) {
    const int lo1 = std::max(-r, -i1), hi1 = std::min(r, d.n1 - 1 - i1);
    for (int i2 = 0; i2 < d.n2; ++i2) {
      const int lo2 = std::max(-r, -i2), hi2 = std::min(r, d.n2 - 1 - i2);
      for (int i3 = 0; i3 < d.n3; ++i3) {
        const int lo3 = std::max(-cr, -i3), hi3 = std::min(cr, d.n3 - 1 - i3);
        double acc = 0.0;
        for (int di = lo1; di <= hi1; ++di) {
          const double* xrow = xv + (static_cast<index_t>(i1 + di) * d.n2 + (i2 + lo2)) * d.n3;
          const double* krow = kv + (static_cast<std::size_t>(di + r) * kw + (lo2 + r)) * kc;
          for (int dj = lo2; dj <= hi2; ++dj) {
            const double* xs = xrow + i3 + lo3;
            const double* ks = krow + lo3 + cr;
            for (int dk = lo3; dk <= hi3; ++dk) acc += ks[dk - lo3] * xs[dk - lo3];
            xrow += d.n3;
            krow += kc;
          }
        }
        yv[x.flat(i1, i2, i3)] = acc;
      }
    }
  }
  return y;
}

ImageTensor degrade(const ImageTensor& f, const GaussianPsf& psf, const NoiseSpec& noise) {
  ImageTensor g = apply_blur(psf, f);
  if (noise.amplitude < 0.0) throw parameter_error("degrade: noise amplitude must be >= 0");
  if (noise.amplitude == 0.0) return g;
  UniformRng rng(noise.seed);
  for (double& v : g.values()) v += noise.amplitude * rng.next_unit();
  return g;
}

}  // namespace ctmg
