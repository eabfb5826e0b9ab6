//
// Copyright (c) 2026 The ctmg authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef CTMG_BLUR_HPP
#define CTMG_BLUR_HPP

#include <cstdint>
#include <vector>

#include "ctmg/tensor.hpp"

namespace ctmg {

/// Largest unfolded dimension for which a dense order-6 operator may be
/// materialized (16 x 16 x 3 by default). Bigger problems must use the
/// matrix-free convolution path.
inline constexpr index_t kDefaultOperatorCap = 16 * 16 * 3;

/// Raw 3D Gaussian sample (no normalization to unit mass):
///   (2*pi)^(-3/2) * sigma^(-3) * exp(-(di^2 + dj^2 + dk^2) / (2 sigma^2))
double gaussian_value(double sigma, int di, int dj, int dk);

/// Truncated 3D Gaussian point-spread function. Spatial offsets live in
/// [-radius, radius]^2; channel offsets are clamped to [-2, 2] since a
/// 3-channel image can never realize a larger channel distance.
struct GaussianPsf {
  double sigma = 0.0;
  int radius = 0;
  int channel_radius = 0;
  std::vector<double> kernel;  // (2r+1) x (2r+1) x (2cr+1), offset-indexed

  double at(int di, int dj, int dk) const {
    const int w = 2 * radius + 1;
    const int c = 2 * channel_radius + 1;
    return kernel[(static_cast<std::size_t>(di + radius) * w + (dj + radius)) * c + (dk + channel_radius)];
  }
};

/// ceil(6 sigma); leaves less than 1e-10 of relative kernel mass outside the
/// truncation for the sigma range used here.
int default_psf_radius(double sigma);

GaussianPsf gaussian_psf(double sigma, int radius);
GaussianPsf gaussian_psf(double sigma);

/// Dense order-6 Toeplitz operator T(i1,i2,i3,j1,j2,j3) = S(j1-i1, j2-i2, j3-i3)
/// with S evaluated exactly at every offset (no truncation). Refuses shapes
/// whose unfolded dimension exceeds the cap.
Operator6 build_toeplitz(const GaussianPsf& psf, Dims3 dims, index_t cap = kDefaultOperatorCap);

/// Dense Toeplitz operator built from the truncated kernel table (zero
/// outside the radius) instead of the closed-form Gaussian; this is the
/// dense form of coarsened kernels, which have no closed form.
Operator6 build_toeplitz_from_kernel(const GaussianPsf& psf, Dims3 dims,
                                     index_t cap = kDefaultOperatorCap);

/// Galerkin coarsening of the blur under 2x2 block-average restriction and
/// block-replication prolongation. A zero-padded Toeplitz operator stays
/// Toeplitz under these transfers; per spatial axis the kernel becomes
///   c[m] = k[2m] + (k[2m-1] + k[2m+1]) / 2
/// (channel axis untouched), which preserves the kernel mass and keeps the
/// coarse problem consistent with block-averaged data.
GaussianPsf coarsen_psf(const GaussianPsf& fine);

/// Zero-padded correlation Y[i] = sum_offsets S(offset) * X[i + offset] over
/// the truncated kernel; the channel axis participates in the stencil. This
/// is the matrix-free action of build_toeplitz up to the truncation tail.
ImageTensor apply_blur(const GaussianPsf& psf, const ImageTensor& x);

/// Additive uniform noise on [0, amplitude), drawn entrywise in flat order
/// from UniformRng(seed). amplitude = 0 produces exactly zero noise.
struct NoiseSpec {
  double amplitude = 0.0;
  std::uint64_t seed = 0;
};

/// G = apply_blur(psf, F) + N.
ImageTensor degrade(const ImageTensor& f, const GaussianPsf& psf, const NoiseSpec& noise);

}  // namespace ctmg

#endif  // CTMG_BLUR_HPP
