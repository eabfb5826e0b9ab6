//
// Copyright (c) 2026 The ctmg authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "commands.hpp"
#include "ctmg/version.hpp"

namespace {

std::vector<std::string> split_list(const std::string& csv) {
  std::vector<std::string> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

std::vector<double> split_doubles(const std::string& csv) {
  std::vector<double> out;
  for (const auto& s : split_list(csv)) out.push_back(std::stod(s));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tensor-equation color image restoration: cascadic tensor multigrid "
               "(classic and economic schedules) with Krylov smoothers"};
  app.set_version_flag("--version", std::string(ctmg::kLibraryId));
  app.require_subcommand(1);

  ctmg::cli::BlurConfig blur;
  auto* blur_cmd = app.add_subcommand("blur", "Degrade an image: G = T *3 F + N");
  blur_cmd->add_option("--input", blur.input, "input PNG (or synthetic:<variant>[:<size>])")
      ->required();
  blur_cmd->add_option("--sigma", blur.sigma, "Gaussian blur width in pixels");
  blur_cmd->add_option("--noise", blur.noise, "uniform noise amplitude");
  blur_cmd->add_option("--seed", blur.seed, "noise seed");
  blur_cmd->add_option("--levels", blur.levels, "level count the output must support");
  blur_cmd->add_option("--out-png", blur.out_png, "degraded PNG (clamped to [0,1])");
  blur_cmd->add_option("--out-eten", blur.out_eten, "degraded ETEN tensor (exact float64)");

  ctmg::cli::RestoreConfig restore;
  auto* restore_cmd = app.add_subcommand("restore", "Restore a degraded image");
  restore_cmd->add_option("--input", restore.input, "degraded ETEN or PNG");
  restore_cmd->add_option("--load-raw", restore.load_raw, "degraded ETEN tensor (overrides --input)");
  restore_cmd->add_option("--reference", restore.reference, "original image for PSNR/RE");
  restore_cmd->add_option("--method", restore.method, "baseline|ctmg|ectmg");
  restore_cmd->add_option("--smoother", restore.smoother, "bicg|cgs|cr");
  restore_cmd->add_option("--levels", restore.levels, "grid levels (coarsest is solved directly)");
  restore_cmd->add_option("--sigma", restore.sigma, "blur width the image was degraded with");
  restore_cmd->add_option("--m-star", restore.m_star, "classic schedule multiplier");
  restore_cmd->add_option("--m0", restore.m0, "economic schedule multiplier");
  restore_cmd->add_option("--beta", restore.beta, "economic schedule decay");
  restore_cmd->add_option("--eps0", restore.eps0, "economic schedule constant");
  restore_cmd->add_option("--tau", restore.pm.tau, "denoising time step (0, 1/4]");
  restore_cmd->add_option("--pm-k", restore.pm.k, "denoising edge threshold (0 = auto)");
  restore_cmd->add_option("--pm-iters", restore.pm.iters, "denoising steps per level");
  restore_cmd->add_option("--rel-tol", restore.rel_tol, "baseline stopping tolerance");
  restore_cmd->add_option("--max-iters", restore.max_iters, "baseline iteration cap");
  restore_cmd->add_option("--out-png", restore.out_png, "restored PNG");
  restore_cmd->add_option("--out-eten,--save-raw", restore.out_eten, "restored ETEN tensor");
  restore_cmd->add_option("--report", restore.report, "report path (text; .json twin added)");
  restore_cmd->add_flag("--record-history", restore.record_history, "record residual histories");

  ctmg::cli::BenchmarkConfig bench;
  std::string bench_images = "synthetic:scene:128";
  std::string bench_sigmas = "0.7,0.8,0.9";
  std::string bench_methods = "baseline,ctmg,ectmg";
  std::string bench_smoothers = "bicg,cgs,cr";
  auto* bench_cmd = app.add_subcommand("benchmark", "Sweep sigma x method x smoother into a CSV");
  bench_cmd->add_option("--images", bench_images, "comma-separated PNGs or synthetic tokens");
  bench_cmd->add_option("--sigmas", bench_sigmas, "comma-separated blur widths");
  bench_cmd->add_option("--methods", bench_methods, "subset of baseline,ctmg,ectmg");
  bench_cmd->add_option("--smoothers", bench_smoothers, "subset of bicg,cgs,cr");
  bench_cmd->add_option("--levels", bench.levels, "grid levels");
  bench_cmd->add_option("--noise", bench.noise, "uniform noise amplitude");
  bench_cmd->add_option("--seed", bench.seed, "master seed");
  bench_cmd->add_option("--m-star", bench.m_star, "classic schedule multiplier");
  bench_cmd->add_option("--m0", bench.m0, "economic schedule multiplier");
  bench_cmd->add_option("--beta", bench.beta, "economic schedule decay");
  bench_cmd->add_option("--eps0", bench.eps0, "economic schedule constant");
  bench_cmd->add_option("--tau", bench.pm.tau, "denoising time step");
  bench_cmd->add_option("--pm-k", bench.pm.k, "denoising edge threshold (0 = auto)");
  bench_cmd->add_option("--pm-iters", bench.pm.iters, "denoising steps per level");
  bench_cmd->add_option("--rel-tol", bench.rel_tol, "baseline stopping tolerance");
  bench_cmd->add_option("--max-iters", bench.max_iters, "baseline iteration cap");
  bench_cmd->add_option("--out", bench.out, "output CSV")->required();
  bench_cmd->add_option("--traces", bench.traces, "residual trace CSV (default <out>.traces.csv)");

  ctmg::cli::OracleConfig oracle;
  auto* oracle_cmd = app.add_subcommand("oracle", "Run the cross-module oracle checks");
  oracle_cmd->add_option("--perturb-kernel", oracle.perturb_kernel,
                         "debug hook: perturb the blur kernel to prove the checks bite")
      ->group("");  // hidden

  CLI11_PARSE(app, argc, argv);

  try {
    if (blur_cmd->parsed()) return ctmg::cli::cmd_blur(blur, std::cout);
    if (restore_cmd->parsed()) return ctmg::cli::cmd_restore(restore, std::cout);
    if (bench_cmd->parsed()) {
      bench.images = split_list(bench_images);
      bench.sigmas = split_doubles(bench_sigmas);
      bench.methods = split_list(bench_methods);
      bench.smoothers = split_list(bench_smoothers);
      return ctmg::cli::cmd_benchmark(bench, std::cout);
    }
    if (oracle_cmd->parsed()) return ctmg::cli::cmd_oracle(oracle, std::cout);
  } catch (const ctmg::error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "unexpected error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
