//
// Copyright (c) 2026 The ctmg authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef CTMG_TOOLS_COMMANDS_HPP
#define CTMG_TOOLS_COMMANDS_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "ctmg/cascade.hpp"
#include "ctmg/tensor.hpp"

namespace ctmg::cli {

/// Loads an image from a "synthetic:<variant>[:<size>]" token, an ETEN file
/// (detected by magic bytes), or a PNG file.
ImageTensor load_image_any(const std::string& token);

struct PmConfig {
  double tau = 0.25;
  double k = 0.0;  // 0 -> auto threshold per channel
  int iters = 10;
};

PmParams to_pm_params(const PmConfig& c);

struct BlurConfig {
  std::string input;
  double sigma = 0.7;
  double noise = 0.0;
  std::uint64_t seed = 0;
  int levels = 4;  // divisibility pre-check so the output stays restorable
  std::string out_png;
  std::string out_eten;
};

struct RestoreConfig {
  std::string input;     // ETEN (preferred) or PNG
  std::string load_raw;  // explicit ETEN input; overrides `input`
  std::string reference;
  std::string method = "ctmg";
  std::string smoother = "cr";
  int levels = 4;
  double sigma = 0.9;
  int m_star = 1;
  int m0 = 1;
  double beta = 4.0;
  double eps0 = 0.5;
  PmConfig pm;
  double rel_tol = 1e-6;  // baseline stopping rule
  int max_iters = 1000;
  std::string out_png;
  std::string out_eten;  // also reachable as --save-raw
  std::string report;    // text report; a .json twin is written next to it
  bool record_history = false;
};

struct BenchmarkConfig {
  std::vector<std::string> images{"synthetic:scene:128"};
  std::vector<double> sigmas{0.7, 0.8, 0.9};
  std::vector<std::string> methods{"baseline", "ctmg", "ectmg"};
  std::vector<std::string> smoothers{"bicg", "cgs", "cr"};
  int levels = 4;
  double noise = 0.001;
  std::uint64_t seed = 1;
  int m_star = 1;
  int m0 = 1;
  double beta = 4.0;
  double eps0 = 0.5;
  PmConfig pm;
  double rel_tol = 1e-6;
  int max_iters = 1000;
  std::string out;
  std::string traces;  // empty -> "<out>.traces.csv"
};

struct OracleConfig {
  double perturb_kernel = 0.0;  // debug hook; nonzero must fail the suite
};

/// Runs a restoration and returns the report with quality filled when a
/// reference is available; used by cmd_restore and the benchmark loop.
RestorationReport run_restore(const RestoreConfig& config, const ImageTensor& degraded,
                              const ImageTensor* reference);

int cmd_blur(const BlurConfig& config, std::ostream& log);
int cmd_restore(const RestoreConfig& config, std::ostream& log);
int cmd_benchmark(const BenchmarkConfig& config, std::ostream& log);
int cmd_oracle(const OracleConfig& config, std::ostream& log);

}  // namespace ctmg::cli

#endif  // CTMG_TOOLS_COMMANDS_HPP
