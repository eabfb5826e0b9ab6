//
// Copyright (c) 2026 The ctmg authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <doctest.h>

#include <cmath>
#include <limits>

#include "ctmg/blur.hpp"
#include "ctmg/krylov.hpp"
#include "ctmg/tensor.hpp"
#include "test_support.hpp"

using namespace ctmg;
using test::random_tensor;

namespace {

// Reference conjugate gradient, independent of the library's recurrences;
// used to pin BiCG's behavior on symmetric systems.
ImageTensor reference_cg(const OperatorAction& apply, const ImageTensor& g, const ImageTensor& f0,
                         int iters) {
  ImageTensor f = f0;
  ImageTensor r = subtract(g, apply(f));
  ImageTensor p = r;
  double rr = inner(r, r);
  for (int k = 0; k < iters; ++k) {
    const ImageTensor ap = apply(p);
    const double alpha = rr / inner(p, ap);
    add_scaled(f, alpha, p);
    add_scaled(r, -alpha, ap);
    const double rr_next = inner(r, r);
    scale_then_add(p, rr_next / rr, r);
    rr = rr_next;
  }
  return f;
}

OperatorAction scaling_action(double factor) {
  return [factor](const ImageTensor& x) {
    ImageTensor y = x;
    for (double& v : y.values()) v *= factor;
    return y;
  };
}

}  // namespace

TEST_CASE("smoother kinds parse and print") {
  CHECK(to_string(SmootherKind::cgs) == "cgs");
  CHECK(parse_smoother("bicg") == SmootherKind::bicg);
  CHECK(parse_smoother("cr") == SmootherKind::cr);
  CHECK_FALSE(parse_smoother("minres").has_value());
}

TEST_CASE("scalar system 2F = 6 converges in one iteration for every kind") {
  const Dims3 one{1, 1, 1};
  const ImageTensor g(one, {6.0});
  const ImageTensor f0(one);
  for (const auto kind : {SmootherKind::bicg, SmootherKind::cgs, SmootherKind::cr}) {
    const SolveOutcome out = smooth(kind, scaling_action(2.0), g, f0, SolveControl{10, 1e-14, true});
    CHECK(out.solution(0, 0, 0) == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(out.iters_done == 1);
    CHECK(out.final_rel_residual < 1e-12);
    CHECK_FALSE(out.breakdown.has_value());
  }
}

TEST_CASE("exact initial guess exits with zero iterations") {
  UniformRng rng(4);
  const Dims3 d{4, 4, 3};
  const GaussianPsf psf = gaussian_psf(0.7);
  const ImageTensor f = random_tensor(d, rng);
  const ImageTensor g = apply_blur(psf, f);
  const SolveOutcome out =
      smooth(SmootherKind::cr, make_operator_action(psf), g, f, SolveControl{100, 1e-8, false});
  CHECK(out.iters_done == 0);
  CHECK(out.final_rel_residual <= 1e-8);
}

TEST_CASE("all kinds match direct_solve on blur systems") {
  UniformRng rng(14);
  for (const double sigma : {0.7, 0.8, 0.9}) {
    const Dims3 d{8, 8, 3};
    const GaussianPsf psf = gaussian_psf(sigma);
    const Operator6 t = build_toeplitz(psf, d);
    const ImageTensor g = random_tensor(d, rng);
    const ImageTensor exact = direct_solve(t, g);
    for (const auto kind : {SmootherKind::bicg, SmootherKind::cgs, SmootherKind::cr}) {
      const SolveOutcome out =
          smooth(kind, make_operator_action(psf), g, g, SolveControl{20000, 1e-8, false});
      CHECK_FALSE(out.breakdown.has_value());
      const double rel = fro_norm(subtract(out.solution, exact)) / fro_norm(exact);
      INFO("kind ", to_string(kind), " sigma ", sigma, " rel ", rel);
      CHECK(rel < 1e-6);
    }
  }
}

TEST_CASE("smaller shapes also converge to the direct answer") {
  UniformRng rng(15);
  for (const Dims3 d : {Dims3{1, 1, 1}, Dims3{2, 3, 1}, Dims3{4, 4, 2}, Dims3{5, 7, 3}}) {
    const GaussianPsf psf = gaussian_psf(0.8);
    const Operator6 t = build_toeplitz(psf, d);
    const ImageTensor g = random_tensor(d, rng);
    const ImageTensor exact = direct_solve(t, g);
    for (const auto kind : {SmootherKind::bicg, SmootherKind::cgs, SmootherKind::cr}) {
      const SolveOutcome out =
          smooth(kind, make_operator_action(psf), g, ImageTensor(d), SolveControl{20000, 1e-8, false});
      CHECK(fro_norm(subtract(out.solution, exact)) / fro_norm(exact) < 1e-6);
    }
  }
}

TEST_CASE("cr residual history is monotone non-increasing on the symmetric blur system") {
  UniformRng rng(21);
  const Dims3 d{8, 8, 3};
  const GaussianPsf psf = gaussian_psf(0.9);
  const ImageTensor g = random_tensor(d, rng);
  const SolveOutcome out =
      smooth(SmootherKind::cr, make_operator_action(psf), g, g, SolveControl{2000, 1e-8, true});
  REQUIRE(out.residual_history.size() >= 2);
  for (std::size_t i = 1; i < out.residual_history.size(); ++i)
    CHECK(out.residual_history[i] <= out.residual_history[i - 1]);
  CHECK(out.final_rel_residual <= 1e-8);
}

TEST_CASE("bicg coincides with cg on symmetric systems for the first iterations") {
  UniformRng rng(31);
  const Dims3 d{6, 6, 3};
  const GaussianPsf psf = gaussian_psf(0.8);
  const OperatorAction action = make_operator_action(psf);
  const ImageTensor g = random_tensor(d, rng);
  const ImageTensor f0(d);
  for (int iters = 1; iters <= 5; ++iters) {
    const SolveOutcome out = smooth(SmootherKind::bicg, action, g, f0, SolveControl::fixed_count(iters));
    const ImageTensor cg = reference_cg(action, g, f0, iters);
    const double rel = fro_norm(subtract(out.solution, cg)) / fro_norm(cg);
    INFO("iters ", iters, " rel ", rel);
    CHECK(rel < 1e-10);
  }
}

TEST_CASE("fixed-count mode performs exactly the requested iterations") {
  UniformRng rng(41);
  const Dims3 d{6, 6, 3};
  const GaussianPsf psf = gaussian_psf(0.9);
  const ImageTensor g = random_tensor(d, rng);
  for (const auto kind : {SmootherKind::bicg, SmootherKind::cgs, SmootherKind::cr}) {
    const SolveOutcome out = smooth(kind, make_operator_action(psf), g, g, SolveControl::fixed_count(7));
    CHECK(out.iters_done == 7);
    CHECK_FALSE(out.breakdown.has_value());
  }
  const SolveOutcome zero = smooth(SmootherKind::cr, make_operator_action(psf), g, g,
                                   SolveControl::fixed_count(0));
  CHECK(zero.iters_done == 0);
}

TEST_CASE("final residual is freshly recomputed") {
  UniformRng rng(51);
  const Dims3 d{6, 6, 3};
  const GaussianPsf psf = gaussian_psf(0.7);
  const OperatorAction action = make_operator_action(psf);
  const ImageTensor g = random_tensor(d, rng);
  const SolveOutcome out = smooth(SmootherKind::cgs, action, g, g, SolveControl{200, 1e-9, false});
  const double fresh = fro_norm(subtract(g, action(out.solution))) / fro_norm(g);
  CHECK(out.final_rel_residual == doctest::Approx(fresh).epsilon(1e-8));
}

TEST_CASE("singular action breaks down without NaNs and returns the best iterate") {
  // action zeroes the first channel: singular, residual cannot vanish
  const Dims3 d{3, 3, 2};
  const OperatorAction action = [](const ImageTensor& x) {
    ImageTensor y = x;
    for (int i = 0; i < y.dims().n1; ++i)
      for (int j = 0; j < y.dims().n2; ++j) y(i, j, 0) = 0.0;
    return y;
  };
  ImageTensor g = ImageTensor::constant(d, 1.0);  // has energy in the null channel
  for (const auto kind : {SmootherKind::bicg, SmootherKind::cgs, SmootherKind::cr}) {
    const SolveOutcome out = smooth(kind, action, g, ImageTensor(d), SolveControl{500, 1e-12, true});
    INFO("kind ", to_string(kind));
    CHECK(out.breakdown.has_value());
    CHECK(all_finite(out.solution));
    CHECK(std::isfinite(out.final_rel_residual));
  }
}

TEST_CASE("cr never returns an iterate worse than the initial guess") {
  UniformRng rng(61);
  const Dims3 d{6, 6, 3};
  const GaussianPsf psf = gaussian_psf(0.9);
  const OperatorAction action = make_operator_action(psf);
  const ImageTensor f = random_tensor(d, rng);
  const ImageTensor g = apply_blur(psf, f);
  const double gn = fro_norm(g);
  for (const int iters : {1, 3, 10, 50}) {
    const SolveOutcome out = smooth(SmootherKind::cr, action, g, g, SolveControl::fixed_count(iters));
    const double initial = fro_norm(subtract(g, action(g))) / gn;
    CHECK(out.final_rel_residual <= initial * (1.0 + 1e-12));
  }
}

TEST_CASE("solve control validation") {
  const Dims3 d{2, 2, 1};
  const ImageTensor g = ImageTensor::constant(d, 1.0);
  CHECK_THROWS_AS(smooth(SmootherKind::cr, scaling_action(1.0), g, g, SolveControl{-1, 1e-6, false}),
                  parameter_error);
  CHECK_THROWS_AS(smooth(SmootherKind::cr, scaling_action(1.0), g, g, SolveControl{-2, -1.0, false}),
                  parameter_error);
  CHECK_THROWS_AS(smooth(SmootherKind::cr, scaling_action(1.0), g, g,
                         SolveControl{std::numeric_limits<int>::max(), 0.0, false}),
                  parameter_error);
  CHECK_THROWS_AS(smooth(SmootherKind::cr, scaling_action(1.0), g, ImageTensor(Dims3{2, 1, 1}),
                         SolveControl{10, 1e-6, false}),
                  dimension_error);
}

TEST_CASE("make_operator_action matches the dense operator and is linear") {
  UniformRng rng(71);
  const Dims3 d{4, 4, 3};
  const GaussianPsf psf = gaussian_psf(0.8);
  const OperatorAction action = make_operator_action(psf);

  CHECK(fro_norm(action(ImageTensor(d))) == 0.0);

  const Operator6 t = build_toeplitz(psf, d);
  const ImageTensor x = random_tensor(d, rng);
  CHECK(fro_norm(subtract(action(x), einstein_product(t, x))) / fro_norm(x) < 1e-10);

  const ImageTensor y = random_tensor(d, rng);
  ImageTensor combo(d);
  for (index_t i = 0; i < combo.size(); ++i)
    combo.values()[static_cast<std::size_t>(i)] =
        0.3 * x.values()[static_cast<std::size_t>(i)] + 0.7 * y.values()[static_cast<std::size_t>(i)];
  ImageTensor expect = action(x);
  const ImageTensor ay = action(y);
  for (index_t i = 0; i < expect.size(); ++i)
    expect.values()[static_cast<std::size_t>(i)] =
        0.3 * expect.values()[static_cast<std::size_t>(i)] +
        0.7 * ay.values()[static_cast<std::size_t>(i)];
  CHECK(fro_norm(subtract(action(combo), expect)) / fro_norm(expect) < 1e-12);
}
