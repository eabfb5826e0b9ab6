//
// Copyright (c) 2026 The ctmg authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <doctest.h>

#include <cmath>
#include <cstring>
#include <numbers>

#include "ctmg/blur.hpp"
#include "test_support.hpp"

using namespace ctmg;
using test::random_tensor;

TEST_CASE("gaussian psf values match the closed form") {
  const GaussianPsf psf = gaussian_psf(0.7, 4);
  const double center = 1.0 / std::pow(std::sqrt(2.0 * std::numbers::pi) * 0.7, 3.0);
  CHECK(psf.at(0, 0, 0) == doctest::Approx(center).epsilon(1e-12));
  CHECK(psf.at(0, 0, 0) == doctest::Approx(0.185112).epsilon(1e-5));
  CHECK(psf.at(1, 0, 0) / psf.at(0, 0, 0) ==
        doctest::Approx(std::exp(-1.0 / (2.0 * 0.49))).epsilon(1e-12));
  CHECK(psf.at(1, 0, 0) / psf.at(0, 0, 0) == doctest::Approx(0.360447).epsilon(1e-5));
}

TEST_CASE("gaussian psf symmetry, positivity, center maximum") {
  const GaussianPsf psf = gaussian_psf(0.9, 3);
  for (int di = -3; di <= 3; ++di)
    for (int dj = -3; dj <= 3; ++dj)
      for (int dk = -2; dk <= 2; ++dk) {
        CHECK(psf.at(di, dj, dk) == psf.at(-di, -dj, -dk));
        CHECK(psf.at(di, dj, dk) > 0.0);
        CHECK(psf.at(di, dj, dk) <= psf.at(0, 0, 0));
      }
  CHECK_THROWS_AS(gaussian_psf(-1.0, 3), parameter_error);
  CHECK_THROWS_AS(gaussian_psf(0.7, 0), parameter_error);
}

TEST_CASE("default radius covers six sigmas") {
  CHECK(default_psf_radius(0.7) == 5);
  CHECK(default_psf_radius(0.8) == 5);
  CHECK(default_psf_radius(0.9) == 6);
}

TEST_CASE("build_toeplitz: single entry and symmetry") {
  const GaussianPsf psf = gaussian_psf(0.8);
  const Operator6 t1 = build_toeplitz(psf, Dims3{1, 1, 1});
  CHECK(t1(0, 0, 0, 0, 0, 0) == doctest::Approx(gaussian_value(0.8, 0, 0, 0)));

  const Dims3 d{4, 4, 3};
  const Operator6 t = build_toeplitz(psf, d);
  const DenseMatrix m = unfold_operator(t);
  for (int r = 0; r < m.rows; ++r)
    for (int c = r + 1; c < m.cols; ++c) CHECK(m(r, c) == m(c, r));
}

TEST_CASE("build_toeplitz row sums: interior rows equal, all below the full kernel sum") {
  const double sigma = 0.8;
  const Dims3 d{4, 4, 3};
  const Operator6 t = build_toeplitz(gaussian_psf(sigma), d);
  const DenseMatrix m = unfold_operator(t);

  // enumerate the full-space kernel sum over a generous offset box
  double full = 0.0;
  for (int di = -9; di <= 9; ++di)
    for (int dj = -9; dj <= 9; ++dj)
      for (int dk = -9; dk <= 9; ++dk) full += gaussian_value(sigma, di, dj, dk);

  double interior_sum = -1.0;
  for (int i1 = 0; i1 < d.n1; ++i1)
    for (int i2 = 0; i2 < d.n2; ++i2)
      for (int i3 = 0; i3 < d.n3; ++i3) {
        const int r = static_cast<int>((static_cast<index_t>(i1) * d.n2 + i2) * d.n3 + i3);
        double s = 0.0;
        for (int c = 0; c < m.cols; ++c) s += m(r, c);
        CHECK(s < full);
        // rows whose pixel sits in the spatial center with the middle channel
        if (i1 >= 1 && i1 <= 2 && i2 >= 1 && i2 <= 2 && i3 == 1) {
          if (interior_sum < 0)
            interior_sum = s;
          else
            CHECK(s == doctest::Approx(interior_sum).epsilon(1e-12));
        }
      }
  CHECK_THROWS_AS(build_toeplitz(gaussian_psf(sigma), Dims3{32, 32, 3}), parameter_error);
}

TEST_CASE("apply_blur: zero image and impulse response") {
  const GaussianPsf psf = gaussian_psf(0.7);
  const Dims3 d{9, 9, 3};
  CHECK(fro_norm(apply_blur(psf, ImageTensor(d))) == 0.0);

  ImageTensor impulse(d);
  impulse(4, 4, 1) = 1.0;
  const ImageTensor out = apply_blur(psf, impulse);
  for (int i = 0; i < d.n1; ++i)
    for (int j = 0; j < d.n2; ++j)
      for (int k = 0; k < d.n3; ++k) {
        const int di = i - 4, dj = j - 4, dk = k - 1;
        const double expected =
            (std::abs(di) <= psf.radius && std::abs(dj) <= psf.radius && std::abs(dk) <= psf.channel_radius)
                ? psf.at(di, dj, dk)
                : 0.0;
        CHECK(out(i, j, k) == doctest::Approx(expected).epsilon(1e-14));
      }
}

TEST_CASE("apply_blur matches the dense Toeplitz oracle") {
  UniformRng rng(99);
  // a truncated-radius instance first
  {
    const Dims3 d{4, 4, 3};
    const GaussianPsf psf = gaussian_psf(0.9, 4);
    const Operator6 t = build_toeplitz(psf, d);
    const ImageTensor x = random_tensor(d, rng);
    CHECK(fro_norm(subtract(apply_blur(psf, x), einstein_product(t, x))) / fro_norm(x) < 1e-10);
  }
  // sweep all dims <= (6,6,3) x sigma set
  for (const double sigma : {0.7, 0.8, 0.9}) {
    const GaussianPsf psf = gaussian_psf(sigma);
    for (int n1 = 1; n1 <= 6; ++n1)
      for (int n2 = 1; n2 <= 6; ++n2)
        for (int n3 = 1; n3 <= 3; ++n3) {
          const Dims3 d{n1, n2, n3};
          const Operator6 t = build_toeplitz(psf, d);
          const ImageTensor x = random_tensor(d, rng);
          const double rel =
              fro_norm(subtract(apply_blur(psf, x), einstein_product(t, x))) / fro_norm(x);
          CHECK(rel < 1e-10);
        }
  }
}

TEST_CASE("blur of a constant image: interior equals kernel sum, boundary smaller") {
  const double sigma = 0.7;
  const GaussianPsf psf = gaussian_psf(sigma);  // radius 5
  const double c = 0.6;
  // 5 channels so an interior channel exists for the +-2 channel stencil
  const Dims3 d{13, 13, 5};
  const ImageTensor out = apply_blur(psf, ImageTensor::constant(d, c));

  double kernel_sum = 0.0;
  for (double v : psf.kernel) kernel_sum += v;

  CHECK(out(6, 6, 2) == doctest::Approx(c * kernel_sum).epsilon(1e-12));
  // within the radius of the border, strictly smaller
  CHECK(out(0, 6, 2) < c * kernel_sum);
  CHECK(out(6, 0, 2) < c * kernel_sum);
  CHECK(out(6, 6, 0) < c * kernel_sum);
  CHECK(out(12, 12, 4) < c * kernel_sum);
}

TEST_CASE("apply_blur is linear and preserves non-negativity") {
  UniformRng rng(123);
  const GaussianPsf psf = gaussian_psf(0.8);
  const Dims3 d{7, 5, 3};
  const ImageTensor x = random_tensor(d, rng);
  const ImageTensor y = random_tensor(d, rng);

  ImageTensor combo(d);
  for (index_t i = 0; i < combo.size(); ++i)
    combo.values()[static_cast<std::size_t>(i)] = 1.5 * x.values()[static_cast<std::size_t>(i)] -
                                                  0.5 * y.values()[static_cast<std::size_t>(i)];
  ImageTensor expect = apply_blur(psf, x);
  const ImageTensor by = apply_blur(psf, y);
  for (index_t i = 0; i < expect.size(); ++i)
    expect.values()[static_cast<std::size_t>(i)] =
        1.5 * expect.values()[static_cast<std::size_t>(i)] -
        0.5 * by.values()[static_cast<std::size_t>(i)];
  CHECK(fro_norm(subtract(apply_blur(psf, combo), expect)) / fro_norm(expect) < 1e-12);

  const ImageTensor blurred = apply_blur(psf, x);
  for (double v : blurred.values()) CHECK(v >= 0.0);
}

TEST_CASE("degrade: zero amplitude, determinism, bound") {
  UniformRng rng(7);
  const GaussianPsf psf = gaussian_psf(0.7);
  const Dims3 d{6, 6, 3};
  const ImageTensor f = random_tensor(d, rng);

  const ImageTensor clean = degrade(f, psf, NoiseSpec{0.0, 12345});
  CHECK(test::max_abs_diff(clean, apply_blur(psf, f)) == 0.0);

  const ImageTensor g1 = degrade(f, psf, NoiseSpec{0.001, 42});
  const ImageTensor g2 = degrade(f, psf, NoiseSpec{0.001, 42});
  CHECK(std::memcmp(g1.values().data(), g2.values().data(),
                    sizeof(double) * static_cast<std::size_t>(g1.size())) == 0);

  const ImageTensor blurred = apply_blur(psf, f);
  for (index_t i = 0; i < g1.size(); ++i) {
    const double n = g1.values()[static_cast<std::size_t>(i)] -
                     blurred.values()[static_cast<std::size_t>(i)];
    CHECK(n >= 0.0);
    CHECK(n < 0.001);
  }
}

TEST_CASE("coarsen_psf matches the dense Galerkin triple product") {
  const double sigma = 0.9;
  const GaussianPsf fine_psf = gaussian_psf(sigma);
  const GaussianPsf coarse_psf = coarsen_psf(fine_psf);

  const Dims3 fine_dims{8, 6, 3};
  const Dims3 coarse_dims{4, 3, 3};
  const DenseMatrix tf = unfold_operator(build_toeplitz_from_kernel(fine_psf, fine_dims));
  const DenseMatrix tc = unfold_operator(build_toeplitz_from_kernel(coarse_psf, coarse_dims));

  // dense restriction (2x2 block average) and prolongation (replication)
  const int nf = static_cast<int>(fine_dims.count());
  const int nc = static_cast<int>(coarse_dims.count());
  auto cidx = [&](int i, int j, int k) { return (i * coarse_dims.n2 + j) * coarse_dims.n3 + k; };
  auto fidx = [&](int i, int j, int k) { return (i * fine_dims.n2 + j) * fine_dims.n3 + k; };
  DenseMatrix r(nc, nf), p(nf, nc);
  for (int i = 0; i < coarse_dims.n1; ++i)
    for (int j = 0; j < coarse_dims.n2; ++j)
      for (int k = 0; k < coarse_dims.n3; ++k)
        for (int a = 0; a < 2; ++a)
          for (int b = 0; b < 2; ++b) {
            r(cidx(i, j, k), fidx(2 * i + a, 2 * j + b, k)) = 0.25;
            p(fidx(2 * i + a, 2 * j + b, k), cidx(i, j, k)) = 1.0;
          }

  // R * Tf * P
  DenseMatrix rtp(nc, nc);
  for (int i = 0; i < nc; ++i)
    for (int j = 0; j < nc; ++j) {
      double acc = 0.0;
      for (int a = 0; a < nf; ++a) {
        if (r(i, a) == 0.0) continue;
        for (int b = 0; b < nf; ++b) acc += r(i, a) * tf(a, b) * p(b, j);
      }
      rtp(i, j) = acc;
    }

  double worst = 0.0;
  for (int i = 0; i < nc; ++i)
    for (int j = 0; j < nc; ++j) worst = std::max(worst, std::abs(rtp(i, j) - tc(i, j)));
  CHECK(worst < 1e-14);

  // kernel mass is preserved by coarsening
  double mf = 0.0, mc = 0.0;
  for (double v : fine_psf.kernel) mf += v;
  for (double v : coarse_psf.kernel) mc += v;
  CHECK(mc == doctest::Approx(mf).epsilon(1e-12));
}
