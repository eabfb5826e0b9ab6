//
// Copyright (c) 2026 The ctmg authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "commands.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "ctmg/eten.hpp"
#include "ctmg/rand.hpp"
#include "ctmg/synthetic.hpp"
#include "ctmg/version.hpp"
#include "oracle_suite.hpp"
#include "png_io.hpp"

namespace ctmg::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// Shortest representation that parses back to the same double; "inf" for
// the +infinity PSNR sentinel.
std::string fmt_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

SmootherKind parse_smoother_or_throw(const std::string& name) {
  const auto kind = parse_smoother(name);
  if (!kind) throw parameter_error("unknown smoother '" + name + "' (expected bicg|cgs|cr)");
  return *kind;
}

void check_method(const std::string& method) {
  if (method != "baseline" && method != "ctmg" && method != "ectmg")
    throw parameter_error("unknown method '" + method + "' (expected baseline|ctmg|ectmg)");
}

std::optional<ImageTensor> load_synthetic_token(const std::string& token) {
  constexpr std::string_view prefix = "synthetic:";
  if (token.rfind(prefix, 0) != 0) return std::nullopt;
  std::string rest = token.substr(prefix.size());
  std::string variant = rest;
  int size = 128;
  if (const auto colon = rest.find(':'); colon != std::string::npos) {
    variant = rest.substr(0, colon);
    size = std::stoi(rest.substr(colon + 1));
  }
  return synthetic_scene(size, size, variant);
}

json dims_json(const Dims3& d) { return json::array({d.n1, d.n2, d.n3}); }

json quality_json(const QualityScore& q) {
  json j;
  j["psnr_db"] = std::isinf(q.psnr) ? json("inf") : json(q.psnr);
  j["re"] = q.re;
  j["f_max"] = q.f_max;
  return j;
}

json report_json(const RestorationReport& r) {
  json j;
  j["method"] = r.method;
  j["smoother"] = std::string(to_string(r.smoother));
  j["sigma"] = r.sigma;
  j["levels"] = r.levels;
  j["wall_seconds"] = r.wall_seconds;
  j["iters_per_level"] = r.iters_per_level();
  json stats = json::array();
  for (const auto& ls : r.level_stats) {
    json s;
    s["level"] = ls.level;
    s["dims"] = dims_json(ls.dims);
    s["iterations"] = ls.iterations;
    s["rel_residual"] = ls.rel_residual;
    s["operator_applies"] = ls.operator_applies;
    s["seconds"] = ls.seconds;
    if (ls.breakdown) s["breakdown"] = *ls.breakdown;
    stats.push_back(std::move(s));
  }
  j["level_stats"] = std::move(stats);
  if (r.quality) j["quality"] = quality_json(*r.quality);
  return j;
}

json restore_config_json(const RestoreConfig& c) {
  json j;
  j["input"] = c.input;
  j["load_raw"] = c.load_raw;
  j["reference"] = c.reference;
  j["method"] = c.method;
  j["smoother"] = c.smoother;
  j["levels"] = c.levels;
  j["sigma"] = c.sigma;
  j["m_star"] = c.m_star;
  j["m0"] = c.m0;
  j["beta"] = c.beta;
  j["eps0"] = c.eps0;
  j["tau"] = c.pm.tau;
  j["pm_k"] = c.pm.k;
  j["pm_iters"] = c.pm.iters;
  j["rel_tol"] = c.rel_tol;
  j["max_iters"] = c.max_iters;
  j["out_png"] = c.out_png;
  j["out_eten"] = c.out_eten;
  j["report"] = c.report;
  return j;
}

void write_text_report(const fs::path& path, const json& config, const RestorationReport& r) {
  std::ofstream os(path);
  if (!os) throw io_error("report: cannot open " + path.string());
  os << "tool: " << kLibraryId << "\n";
  os << "method: " << r.method << "  smoother: " << to_string(r.smoother) << "  sigma: " << r.sigma
     << "  levels: " << r.levels << "\n";
  os << "wall_seconds: " << fmt_double(r.wall_seconds) << "\n";
  os << "iters_per_level: " << r.iters_per_level() << "\n";
  for (const auto& ls : r.level_stats) {
    os << "  level " << ls.level << " " << to_string(ls.dims) << ": iters " << ls.iterations
       << ", rel_residual " << fmt_double(ls.rel_residual) << ", applies " << ls.operator_applies
       << ", seconds " << fmt_double(ls.seconds);
    if (ls.breakdown) os << ", breakdown: " << *ls.breakdown;
    os << "\n";
  }
  if (r.quality) {
    os << "psnr_db: " << fmt_double(r.quality->psnr) << "\n";
    os << "re: " << fmt_double(r.quality->re) << "\n";
  }
  os << "config: " << config.dump() << "\n";
  if (!os) throw io_error("report: failed writing " + path.string());
}

void write_json_report(const fs::path& path, const json& config, const RestorationReport& r) {
  json j;
  j["tool"] = std::string(kLibraryId);
  j["config"] = config;
  j["result"] = report_json(r);
  std::ofstream os(path);
  if (!os) throw io_error("report: cannot open " + path.string());
  os << j.dump(2) << "\n";
  if (!os) throw io_error("report: failed writing " + path.string());
}

}  // namespace

ImageTensor load_image_any(const std::string& token) {
  if (auto synth = load_synthetic_token(token)) return std::move(*synth);
  const fs::path path(token);
  if (!fs::exists(path)) throw io_error("input not found: " + token);
  if (is_eten_file(path)) return load_eten_image(path);
  return read_png(path);
}

PmParams to_pm_params(const PmConfig& c) {
  PmParams p;
  p.tau = c.tau;
  p.iters = c.iters;
  if (c.k > 0.0) p.k_threshold = c.k;
  return p;
}

int cmd_blur(const BlurConfig& config, std::ostream& log) {
  if (config.out_png.empty() && config.out_eten.empty())
    throw parameter_error("blur: need at least one of --out-png/--out-eten");
  const ImageTensor f = load_image_any(config.input);
  const int factor = 1 << (config.levels - 1);
  if (f.dims().n1 % factor != 0 || f.dims().n2 % factor != 0)
    throw dimension_error("blur: image dims " + to_string(f.dims()) + " not divisible by 2^" +
                          std::to_string(config.levels - 1) + "; it could not be restored at " +
                          std::to_string(config.levels) + " levels");

  const GaussianPsf psf = gaussian_psf(config.sigma);
  const ImageTensor g = degrade(f, psf, NoiseSpec{config.noise, config.seed});
  if (!config.out_eten.empty()) save_eten(config.out_eten, g);
  if (!config.out_png.empty()) write_png(config.out_png, g);
  log << "blur: " << config.input << " sigma " << config.sigma << " noise " << config.noise
      << " seed " << config.seed << " -> "
      << (config.out_eten.empty() ? config.out_png : config.out_eten) << "\n";
  return 0;
}

RestorationReport run_restore(const RestoreConfig& config, const ImageTensor& degraded,
                              const ImageTensor* reference) {
  check_method(config.method);
  const SmootherKind smoother = parse_smoother_or_throw(config.smoother);
  const PmParams pm = to_pm_params(config.pm);

  RestorationReport report;
  if (config.method == "baseline") {
    SolveControl control;
    control.max_iters = config.max_iters;
    control.rel_tol = config.rel_tol;
    control.record_history = config.record_history;
    report = baseline_restore(degraded, config.sigma, smoother, control,
                              CascadeOptions{config.record_history, 0, kDefaultOperatorCap});
  } else {
    IterationSchedule schedule = config.method == "ctmg"
                                     ? IterationSchedule::classic(config.m_star)
                                     : IterationSchedule::economic(config.m0, config.beta, config.eps0);
    const CascadeOptions opts{config.record_history, 0, kDefaultOperatorCap};
    report = config.method == "ctmg"
                 ? ctmg_restore(degraded, config.sigma, config.levels, smoother, pm, schedule, opts)
                 : ectmg_restore(degraded, config.sigma, config.levels, smoother, pm, schedule, opts);
  }
  if (reference) report.quality = quality_score(*reference, report.restored);
  return report;
}

int cmd_restore(const RestoreConfig& config, std::ostream& log) {
  const std::string input = config.load_raw.empty() ? config.input : config.load_raw;
  if (input.empty()) throw parameter_error("restore: no input given");
  const ImageTensor degraded = load_image_any(input);

  std::optional<ImageTensor> reference;
  if (!config.reference.empty()) reference = load_image_any(config.reference);

  const RestorationReport report =
      run_restore(config, degraded, reference ? &*reference : nullptr);

  if (!config.out_png.empty()) write_png(config.out_png, report.restored);
  if (!config.out_eten.empty()) save_eten(config.out_eten, report.restored);
  if (!config.report.empty()) {
    const json cfg = restore_config_json(config);
    write_text_report(config.report, cfg, report);
    write_json_report(config.report + ".json", cfg, report);
  }

  log << "restore: " << report.method << "-" << to_string(report.smoother) << " levels "
      << report.levels << " iters [" << report.iters_per_level() << "] wall "
      << fmt_double(report.wall_seconds) << "s";
  if (report.quality)
    log << " psnr " << fmt_double(report.quality->psnr) << " dB, re "
        << fmt_double(report.quality->re);
  log << "\n";
  return 0;
}

int cmd_benchmark(const BenchmarkConfig& config, std::ostream& log) {
  if (config.out.empty()) throw parameter_error("benchmark: --out is required");
  for (const auto& m : config.methods) check_method(m);
  for (const auto& s : config.smoothers) parse_smoother_or_throw(s);

  std::ofstream csv(config.out);
  if (!csv) throw io_error("benchmark: cannot open " + config.out);
  const std::string traces_path = config.traces.empty() ? config.out + ".traces.csv" : config.traces;
  std::ofstream traces(traces_path);
  if (!traces) throw io_error("benchmark: cannot open " + traces_path);

  csv << "image,sigma,method,smoother,levels,cpu_seconds,psnr_db,re,iters_per_level\n";
  traces << "image,sigma,method,smoother,level,iter,rel_residual\n";

  for (const auto& image_token : config.images) {
    const ImageTensor original = load_image_any(image_token);
    for (const double sigma : config.sigmas) {
      // One degraded realization per (image, sigma), shared by every method
      // so the comparison is apples to apples.
      const std::uint64_t row_seed =
          mix_seed(config.seed ^ mix_seed(fnv1a(image_token)) ^
                   mix_seed(std::bit_cast<std::uint64_t>(sigma)));
      const ImageTensor degraded =
          degrade(original, gaussian_psf(sigma), NoiseSpec{config.noise, row_seed});

      for (const auto& method : config.methods) {
        for (const auto& smoother : config.smoothers) {
          RestoreConfig rc;
          rc.method = method;
          rc.smoother = smoother;
          rc.levels = config.levels;
          rc.sigma = sigma;
          rc.m_star = config.m_star;
          rc.m0 = config.m0;
          rc.beta = config.beta;
          rc.eps0 = config.eps0;
          rc.pm = config.pm;
          rc.rel_tol = config.rel_tol;
          rc.max_iters = config.max_iters;
          rc.record_history = true;

          csv << image_token << "," << fmt_double(sigma) << "," << method << "," << smoother << ",";
          try {
            const RestorationReport report = run_restore(rc, degraded, &original);
            csv << report.levels << "," << fmt_double(report.wall_seconds) << ","
                << fmt_double(report.quality->psnr) << "," << fmt_double(report.quality->re) << ","
                << report.iters_per_level() << "\n";
            for (std::size_t li = 0; li < report.residual_histories.size(); ++li) {
              const auto& hist = report.residual_histories[li];
              for (std::size_t it = 0; it < hist.size(); ++it)
                traces << image_token << "," << fmt_double(sigma) << "," << method << ","
                       << smoother << "," << (report.method == "baseline" ? 1 : li + 1) << ","
                       << it << "," << fmt_double(hist[it]) << "\n";
            }
          } catch (const error& e) {
            csv << config.levels << ",nan,nan,nan,\n";
            log << "benchmark: row " << image_token << "/" << fmt_double(sigma) << "/" << method
                << "/" << smoother << " failed: " << e.what() << "\n";
          }
        }
      }
    }
  }
  if (!csv || !traces) throw io_error("benchmark: failed writing output");
  log << "benchmark: wrote " << config.out << " and " << traces_path << "\n";
  return 0;
}

int cmd_oracle(const OracleConfig& config, std::ostream& log) {
  const auto checks = run_oracle_checks(config.perturb_kernel);
  return report_oracle_checks(checks, log) == 0 ? 0 : 1;
}

}  // namespace ctmg::cli
