//
// Copyright (c) 2026 The ctmg authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "oracle_suite.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

#include "ctmg/blur.hpp"
#include "ctmg/cascade.hpp"
#include "ctmg/rand.hpp"
#include "ctmg/tensor.hpp"

namespace ctmg::cli {

namespace {

ImageTensor random_tensor(Dims3 dims, UniformRng& rng) {
  ImageTensor t(dims);
  for (double& v : t.values()) v = rng.next_unit();
  return t;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << v;
  return os.str();
}

OracleCheck equivalence_check(double kernel_perturbation) {
  OracleCheck check{"dense-einstein-vs-convolution", false, ""};
  UniformRng rng(20260808);
  double worst = 0.0;
  for (const double sigma : {0.7, 0.8, 0.9}) {
    for (const Dims3 dims : {Dims3{4, 4, 3}, Dims3{6, 6, 3}, Dims3{8, 8, 3}}) {
      GaussianPsf psf = gaussian_psf(sigma);
      if (kernel_perturbation != 0.0) psf.kernel[psf.kernel.size() / 2] += kernel_perturbation;
      const Operator6 t = build_toeplitz(psf, dims);
      for (int rep = 0; rep < 4; ++rep) {
        const ImageTensor x = random_tensor(dims, rng);
        const ImageTensor via_conv = apply_blur(psf, x);
        const ImageTensor via_dense = einstein_product(t, x);
        worst = std::max(worst, fro_norm(subtract(via_conv, via_dense)) / fro_norm(x));
      }
    }
  }
  check.passed = worst < 1e-10;
  check.detail = "max rel diff " + fmt(worst);
  return check;
}

OracleCheck homomorphism_check() {
  OracleCheck check{"unfolding-homomorphism", false, ""};
  UniformRng rng(77);
  double worst = 0.0;
  for (int rep = 0; rep < 20; ++rep) {
    const Dims3 dims{1 + static_cast<int>(rng.next_u64() % 4), 1 + static_cast<int>(rng.next_u64() % 4),
                     1 + static_cast<int>(rng.next_u64() % 3)};
    Operator6 t(dims);
    for (double& v : t.values()) v = 2.0 * rng.next_unit() - 1.0;
    const ImageTensor x = random_tensor(dims, rng);
    const ImageTensor y = einstein_product(t, x);

    const DenseMatrix m = unfold_operator(t);
    const std::vector<double> xv = unfold_tensor(x);
    std::vector<double> yv(static_cast<std::size_t>(m.rows), 0.0);
    for (int r = 0; r < m.rows; ++r) {
      double acc = 0.0;
      for (int c = 0; c < m.cols; ++c) acc += m(r, c) * xv[static_cast<std::size_t>(c)];
      yv[static_cast<std::size_t>(r)] = acc;
    }
    const ImageTensor via_matrix = refold(yv, dims);
    const double denom = std::max(fro_norm(y), 1e-300);
    worst = std::max(worst, fro_norm(subtract(y, via_matrix)) / denom);
  }
  check.passed = worst < 1e-12;
  check.detail = "max rel diff " + fmt(worst);
  return check;
}

OracleCheck direct_solve_check() {
  OracleCheck check{"direct-solve-residual", false, ""};
  UniformRng rng(4242);
  double worst = 0.0;
  for (const double sigma : {0.7, 0.9}) {
    const Dims3 dims{8, 8, 3};
    const GaussianPsf psf = gaussian_psf(sigma);
    const Operator6 t = build_toeplitz(psf, dims);
    const ImageTensor g = random_tensor(dims, rng);
    const ImageTensor f = direct_solve(t, g);
    worst = std::max(worst, fro_norm(subtract(einstein_product(t, f), g)) / fro_norm(g));
  }
  check.passed = worst < 1e-10;
  check.detail = "max rel residual " + fmt(worst);
  return check;
}

OracleCheck stencil_check() {
  OracleCheck check{"prolongation-stencil-exactness", false, ""};
  // Sample one bivariate quadratic consistently on three nested grids and
  // compare the interpolant at interior fine nodes.
  const auto f = [](double x, double y) { return 0.7 + 0.3 * x - 0.2 * y + 0.1 * x * x - 0.15 * x * y + 0.05 * y * y; };
  const int qn = 5;  // coarser grid
  ImageTensor coarser({qn, qn, 1});
  ImageTensor coarse({2 * qn, 2 * qn, 1});
  for (int i = 0; i < qn; ++i)
    for (int j = 0; j < qn; ++j) coarser(i, j, 0) = f(i, j);
  for (int i = 0; i < 2 * qn; ++i)
    for (int j = 0; j < 2 * qn; ++j) coarse(i, j, 0) = f(0.5 * i, 0.5 * j);
  const ImageTensor fine = prolong_quadratic(coarse, coarser);
  double worst = 0.0;
  for (int i = 0; i + 5 <= 4 * qn; ++i)
    for (int j = 0; j + 5 <= 4 * qn; ++j)
      worst = std::max(worst, std::abs(fine(i, j, 0) - f(0.25 * i, 0.25 * j)));
  check.passed = worst < 1e-12;
  check.detail = "max abs err " + fmt(worst);
  return check;
}

OracleCheck schedule_check() {
  OracleCheck check{"schedule-arithmetic", false, ""};
  const auto classic = IterationSchedule::classic().counts_all(4);
  const auto economic = IterationSchedule::economic().counts_all(4);
  const bool classic_ok = classic == std::vector<int>{4, 9, 16};
  const bool economic_ok = economic == std::vector<int>{4, 16, 4};
  check.passed = classic_ok && economic_ok;
  std::ostringstream os;
  os << "classic";
  for (int c : classic) os << " " << c;
  os << ", economic";
  for (int c : economic) os << " " << c;
  check.detail = os.str();
  return check;
}

}  // namespace

std::vector<OracleCheck> run_oracle_checks(double kernel_perturbation) {
  std::vector<OracleCheck> checks;
  checks.push_back(equivalence_check(kernel_perturbation));
  checks.push_back(homomorphism_check());
  checks.push_back(direct_solve_check());
  checks.push_back(stencil_check());
  checks.push_back(schedule_check());
  return checks;
}

int report_oracle_checks(const std::vector<OracleCheck>& checks, std::ostream& os) {
  int failures = 0;
  for (const auto& c : checks) {
    os << (c.passed ? "[ok]   " : "[FAIL] ") << c.name << " (" << c.detail << ")\n";
    if (!c.passed) ++failures;
  }
  os << checks.size() - static_cast<std::size_t>(failures) << "/" << checks.size()
     << " oracle checks passed\n";
  return failures;
}

}  // namespace ctmg::cli
