// sped: command-line front end for smoothness-penalized density deconvolution.
//
// Exit codes: 0 success, 2 data error, 64 usage, 65 precondition,
// 66 missing companion file.

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sped/csv.hpp"
#include "sped/estimator.hpp"
#include "sped/manifest.hpp"
#include "sped/seeding.hpp"
#include "sped/selection.hpp"
#include "sped/simulation.hpp"
#include "sped/svg.hpp"

namespace {

using nlohmann::ordered_json;
using namespace sped;

constexpr int kExitData = 2;
constexpr int kExitUsage = 64;
constexpr int kExitPrecondition = 65;
constexpr int kExitMissingCompanion = 66;

struct CliError : std::runtime_error {
  int code;
  CliError(int code_, const std::string& msg) : std::runtime_error(msg), code(code_) {}
};

[[noreturn]] void fail(int code, const std::string& msg) { throw CliError(code, msg); }

Sample load_sample(const std::string& path) {
  try {
    return make_sample(read_value_file(path));
  } catch (const std::exception& e) {
    fail(kExitData, e.what());
  }
}

struct XGrid {
  double lo = 0.0, hi = 0.0;
  std::size_t count = 0;
  std::vector<double> points() const {
    std::vector<double> xs(count);
    for (std::size_t i = 0; i < count; ++i) {
      xs[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
    }
    return xs;
  }
};

XGrid parse_xgrid(const std::string& text) {
  XGrid g;
  char extra = 0;
  long long count = 0;
  if (std::sscanf(text.c_str(), "%lf,%lf,%lld%c", &g.lo, &g.hi, &count, &extra) != 3 ||
      count < 2 || !(g.lo < g.hi)) {
    fail(kExitUsage, "invalid --xgrid, expected min,max,count with min < max and count >= 2");
  }
  g.count = static_cast<std::size_t>(count);
  return g;
}

XGrid default_xgrid(const Sample& sample) {
  const auto [mn, mx] = std::minmax_element(sample.values.begin(), sample.values.end());
  const double margin = 0.15 * (*mx - *mn) + 1.0;
  return XGrid{*mn - margin, *mx + margin, 512};
}

struct CommonSelection {
  int k = 1;
  int m = 1;
  double iota = 1e-3;
  double lambda = 1e3;
  int grid_size = 100;
  double quad_tol = 1e-10;
  std::size_t force_n1 = 0;

  SelectionConfig config() const {
    SelectionConfig cfg;
    cfg.rate.k = k;
    cfg.m = m;
    cfg.iota = iota;
    cfg.lambda = lambda;
    cfg.grid_size = grid_size;
    cfg.quad_tolerance = quad_tol;
    cfg.force_n1 = force_n1;
    return cfg;
  }
  void add_flags(CLI::App* cmd) {
    cmd->add_option("--k", k, "assumed derivative count of the target (rate model)");
    cmd->add_option("--m", m, "penalized derivative order");
    cmd->add_option("--iota", iota, "lower alpha-grid factor");
    cmd->add_option("--lambda", lambda, "upper alpha-grid factor");
    cmd->add_option("--gridsize", grid_size, "alpha grid size");
    cmd->add_option("--quad-tol", quad_tol, "quadrature tail tolerance");
    cmd->add_option("--force-n1", force_n1, "")->group("");  // test hook
  }
  ordered_json to_json() const {
    return {{"k", k},         {"m", m},
            {"iota", iota},   {"lambda", lambda},
            {"gridsize", grid_size}, {"quad_tol", quad_tol}};
  }
};

void check_selection_flags(const CommonSelection& sel) {
  if (sel.k < 1) fail(kExitUsage, "k must be >= 1");
  if (sel.m < 1) fail(kExitUsage, "m must be >= 1");
  if (!(sel.iota > 0.0) || !(sel.lambda > sel.iota)) {
    fail(kExitUsage, "need 0 < iota < lambda");
  }
  if (sel.grid_size < 2) fail(kExitUsage, "gridsize must be >= 2");
  if (!(sel.quad_tol > 0.0)) fail(kExitUsage, "quad-tol must be positive");
}

std::string curve_csv(const RiskCurve& curve) {
  std::string out = "alpha,criterion\n";
  for (std::size_t i = 0; i < curve.alphas.size(); ++i) {
    out += format_double(curve.alphas[i]);
    out += ',';
    out += format_double(curve.values[i]);
    out += '\n';
  }
  return out;
}

// ---------------------------------------------------------------- estimate

int cmd_estimate(const std::string& input, double noise_sd, std::optional<double> alpha,
                 std::string select, const CommonSelection& sel, const std::string& xgrid_text,
                 const std::string& out, const std::string& svg_path) {
  check_selection_flags(sel);
  if (!(noise_sd > 0.0)) fail(kExitUsage, "noise-sd must be positive");
  if (alpha && !(*alpha > 0.0)) fail(kExitUsage, "alpha must be positive");
  if (alpha.has_value() == !select.empty()) {
    fail(kExitUsage, "exactly one of --alpha or --select is required");
  }

  const Sample sample = load_sample(input);
  if (sample.n() == 0) fail(kExitData, input + ": no data values");
  const ErrorModel error = gaussian_error(noise_sd);
  const XGrid xgrid = xgrid_text.empty() ? default_xgrid(sample) : parse_xgrid(xgrid_text);

  double alpha_hat = 0.0;
  std::optional<SelectionResult> selection;
  if (alpha) {
    alpha_hat = *alpha;
  } else {
    const SelectionConfig cfg = sel.config();
    try {
      selection = select == "small-n" ? select_small_n(sample, error, cfg)
                                      : select_cv(sample, error, cfg);
    } catch (const std::domain_error& e) {
      fail(kExitPrecondition, e.what());
    }
    alpha_hat = selection->alpha_hat;
  }

  const PenaltyKernel kernel(alpha_hat, sel.m, error);
  GridSpec spec;
  spec.tolerance = sel.quad_tol;
  spec.oscillation_scale =
      std::max({sample.max_abs(), std::abs(xgrid.lo), std::abs(xgrid.hi), 1.0});
  const FrequencyGrid grid = build_frequency_grid(kernel, spec);
  const auto xs = xgrid.points();
  const auto fhat = estimate_density(sample, kernel, xs, grid);

  std::string csv = "x,f_hat\n";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    csv += format_double(xs[i]);
    csv += ',';
    csv += format_double(fhat[i]);
    csv += '\n';
  }
  write_text_file(out, csv);

  RunManifest manifest;
  manifest.command = "estimate";
  manifest.parameters = {{"input", input},
                         {"noise_sd", noise_sd},
                         {"m", sel.m},
                         {"xgrid", {{"min", xgrid.lo}, {"max", xgrid.hi}, {"count", xgrid.count}}},
                         {"out", out}};
  if (alpha) {
    manifest.parameters["alpha"] = *alpha;
  } else {
    manifest.parameters["select"] = select;
    manifest.parameters["selection"] = sel.to_json();
    manifest.parameters["alpha_hat"] = selection->alpha_hat;
    manifest.parameters["n1"] = selection->n1;
  }
  if (!svg_path.empty()) manifest.parameters["svg"] = svg_path;
  manifest.set_quadrature(grid);
  manifest.write(manifest_path_for(out));

  if (!svg_path.empty()) {
    SvgPlot plot;
    plot.series.push_back({xs, fhat, "#1f77b4", false});
    plot.title = "deconvolution density estimate";
    plot.x_label = "x";
    plot.y_label = "f_hat";
    write_line_svg(svg_path, plot);
  }
  return 0;
}

// ------------------------------------------------------------------ select

int cmd_select(const std::string& input, double noise_sd, const std::string& method,
               const CommonSelection& sel, const std::string& curve_out,
               const std::string& manifest_out) {
  check_selection_flags(sel);
  if (!(noise_sd > 0.0)) fail(kExitUsage, "noise-sd must be positive");

  const Sample sample = load_sample(input);
  const ErrorModel error = gaussian_error(noise_sd);
  const SelectionConfig cfg = sel.config();
  if (method == "small-n" && sample.n() < 4 && cfg.force_n1 == 0) {
    fail(kExitPrecondition, "sample too small for n1 rule (need n >= 4)");
  }

  // Build the sweep grid here so the manifest can echo the quadrature used.
  const std::size_t n_ref =
      method == "small-n"
          ? (cfg.force_n1 > 0 ? cfg.force_n1 : small_n_size(sample.n()))
          : sample.n();
  std::vector<double> alphas;
  try {
    alphas = make_alpha_grid(n_ref, cfg);
  } catch (const std::domain_error& e) {
    fail(kExitPrecondition, e.what());
  }
  const PenaltyKernel worst(alphas.front(), cfg.m, error);
  GridSpec spec;
  spec.tolerance = cfg.quad_tolerance;
  spec.oscillation_scale = std::max(sample.max_abs(), 1.0);
  spec.resolve_alpha = alphas.back();
  const FrequencyGrid grid = build_frequency_grid(worst, spec);

  SelectionResult result;
  try {
    const SampleSpectrum spectrum(sample, error, cfg.m, grid);
    result = method == "small-n" ? select_small_n(spectrum, cfg) : select_cv(spectrum, cfg);
  } catch (const std::domain_error& e) {
    fail(kExitPrecondition, e.what());
  }

  std::cout << "alpha_hat=" << format_double(result.alpha_hat) << "\n";

  if (!curve_out.empty()) write_text_file(curve_out, curve_csv(result.curve));

  RunManifest manifest;
  manifest.command = "select";
  manifest.parameters = {{"input", input},
                         {"noise_sd", noise_sd},
                         {"method", method},
                         {"selection", sel.to_json()},
                         {"n", sample.n()},
                         {"n1", result.n1},
                         {"alpha_hat", result.alpha_hat},
                         {"alpha_prime", result.alpha_prime}};
  if (sel.force_n1 > 0) manifest.parameters["force_n1"] = sel.force_n1;
  if (!curve_out.empty()) manifest.parameters["curve_out"] = curve_out;
  manifest.set_quadrature(grid);
  manifest.write(!manifest_out.empty()
                     ? manifest_out
                     : (!curve_out.empty() ? manifest_path_for(curve_out)
                                           : std::string("select.manifest.json")));
  return 0;
}

// ---------------------------------------------------------------- simulate

int cmd_simulate(int density, long long n, double p, long long nsim, std::uint64_t seed,
                 const std::string& methods_text, const CommonSelection& sel,
                 const std::string& out, long long threads) {
  check_selection_flags(sel);
  if (density < 1 || density > 8) fail(kExitUsage, "density must be in 1..8");
  if (!(p > 0.0 && p < 1.0)) fail(kExitUsage, "p must lie in (0, 1)");
  if (n < 4) fail(kExitUsage, "n must be >= 4");
  if (nsim < 1) fail(kExitUsage, "nsim must be >= 1");
  if (threads < 0) fail(kExitUsage, "threads must be >= 0");

  SimSetting setting;
  setting.density_index = density;
  setting.n = static_cast<std::size_t>(n);
  setting.p = p;
  setting.n_sim = static_cast<std::size_t>(nsim);
  setting.seed = seed;
  setting.config = sel.config();
  setting.max_threads = static_cast<std::size_t>(threads);
  setting.methods.clear();
  std::stringstream ss(methods_text);
  std::string token;
  while (std::getline(ss, token, ',')) {
    if (token.empty()) continue;
    try {
      setting.methods.push_back(parse_method(token));
    } catch (const std::invalid_argument& e) {
      fail(kExitUsage, e.what());
    }
  }
  if (setting.methods.empty()) fail(kExitUsage, "no methods requested");
  std::sort(setting.methods.begin(), setting.methods.end());
  setting.methods.erase(std::unique(setting.methods.begin(), setting.methods.end()),
                        setting.methods.end());

  const auto records = run_simulation(setting);

  std::string csv = "replicate,method,alpha_hat,ise,ise_oracle,loss_ratio\n";
  for (const auto& r : records) {
    csv += std::to_string(r.replicate);
    csv += ',';
    csv += method_name(r.method);
    csv += ',';
    csv += format_double(r.alpha_hat);
    csv += ',';
    csv += format_double(r.ise);
    csv += ',';
    csv += format_double(r.ise_oracle);
    csv += ',';
    csv += format_double(r.loss_ratio);
    csv += '\n';
  }
  write_text_file(out, csv);

  std::vector<std::string> method_names;
  for (const auto m : setting.methods) method_names.push_back(method_name(m));
  RunManifest manifest;
  manifest.command = "simulate";
  manifest.seed = seed;
  manifest.parameters = {{"density", density},    {"n", n},
                         {"p", p},                {"nsim", nsim},
                         {"methods", method_names}, {"selection", sel.to_json()},
                         {"threads", threads},    {"out", out}};
  manifest.write(manifest_path_for(out));
  return 0;
}

// ------------------------------------------------------------------ report

struct RecordsFile {
  int density = 0;
  long long n = 0;
  double p = 0.0;
  std::vector<SimRecord> records;
};

RecordsFile load_records(const std::string& path) {
  const std::string manifest_path = manifest_path_for(path);
  std::ifstream mf(manifest_path);
  if (!mf) fail(kExitMissingCompanion, "missing companion manifest: " + manifest_path);
  ordered_json manifest;
  try {
    mf >> manifest;
  } catch (const std::exception& e) {
    fail(kExitData, manifest_path + ": invalid JSON: " + e.what());
  }

  RecordsFile out;
  try {
    out.density = manifest.at("parameters").at("density").get<int>();
    out.n = manifest.at("parameters").at("n").get<long long>();
    out.p = manifest.at("parameters").at("p").get<double>();
  } catch (const std::exception&) {
    fail(kExitData, manifest_path + ": missing density/n/p parameters");
  }

  std::ifstream in(path);
  if (!in) fail(kExitData, "cannot open records file: " + path);
  std::string line;
  if (!std::getline(in, line) || line != "replicate,method,alpha_hat,ise,ise_oracle,loss_ratio") {
    fail(kExitData, path + ": unexpected records header");
  }
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string rep, method, alpha, ise, ise_oracle, ratio;
    if (!std::getline(ss, rep, ',') || !std::getline(ss, method, ',') ||
        !std::getline(ss, alpha, ',') || !std::getline(ss, ise, ',') ||
        !std::getline(ss, ise_oracle, ',') || !std::getline(ss, ratio)) {
      fail(kExitData, path + ": line " + std::to_string(lineno) + ": malformed row");
    }
    try {
      SimRecord r;
      r.replicate = std::stoull(rep);
      r.method = parse_method(method);
      r.alpha_hat = std::stod(alpha);
      r.ise = std::stod(ise);
      r.ise_oracle = std::stod(ise_oracle);
      r.loss_ratio = std::stod(ratio);
      out.records.push_back(r);
    } catch (const std::exception&) {
      fail(kExitData, path + ": line " + std::to_string(lineno) + ": malformed row");
    }
  }
  return out;
}

std::string fixed_decimals(double v, int places) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", places, v);
  return buf;
}

int cmd_report(const std::vector<std::string>& inputs, const std::string& metrics_text,
               const std::string& format, const std::string& out_path) {
  if (format != "csv" && format != "md") fail(kExitUsage, "format must be csv or md");
  std::vector<std::string> metrics;
  {
    std::stringstream ss(metrics_text);
    std::string token;
    while (std::getline(ss, token, ',')) {
      if (token.empty()) continue;
      if (token != "catastrophic" && token != "q99" && token != "mean-ratio" &&
          token != "mise-ratio") {
        fail(kExitUsage, "unknown metric name: " + token);
      }
      metrics.push_back(token);
    }
  }
  if (metrics.empty()) fail(kExitUsage, "no metrics requested");

  std::vector<RecordsFile> files;
  for (const auto& path : inputs) files.push_back(load_records(path));

  const std::vector<SelectionMethod> method_order = {SelectionMethod::SmallN,
                                                     SelectionMethod::CrossValidation,
                                                     SelectionMethod::Oracle};
  std::ostringstream doc;
  const bool md = format == "md";
  for (const auto& metric : metrics) {
    if (md) doc << "## " << metric << "\n\n";
    if (metric == "mise-ratio") {
      if (md) {
        doc << "| density | n | p | numerator | denominator | value |\n";
        doc << "|---|---|---|---|---|---|\n";
      } else {
        doc << "metric,density,n,p,numerator,denominator,value\n";
      }
      for (const auto& f : files) {
        std::vector<SelectionMethod> present;
        for (const auto method : method_order) {
          if (!filter_method(f.records, method).empty()) present.push_back(method);
        }
        // small-n against every other method; a lone method against itself.
        std::vector<std::pair<SelectionMethod, SelectionMethod>> pairs;
        if (present.size() == 1) {
          pairs.emplace_back(present[0], present[0]);
        } else {
          for (const auto method : present) {
            if (method != SelectionMethod::SmallN &&
                std::find(present.begin(), present.end(), SelectionMethod::SmallN) !=
                    present.end()) {
              pairs.emplace_back(SelectionMethod::SmallN, method);
            }
          }
        }
        for (const auto& [num, den] : pairs) {
          const auto a = filter_method(f.records, num);
          const auto b = filter_method(f.records, den);
          const std::string value = fixed_decimals(metric_mise_ratio(a, b), 2);
          if (md) {
            doc << "| " << f.density << " | " << f.n << " | " << f.p << " | "
                << method_name(num) << " | " << method_name(den) << " | " << value << " |\n";
          } else {
            doc << "mise-ratio," << f.density << ',' << f.n << ',' << f.p << ','
                << method_name(num) << ',' << method_name(den) << ',' << value << '\n';
          }
        }
      }
      if (md) doc << "\n";
      continue;
    }
    if (md) {
      doc << "| density | n | p | method | value |\n|---|---|---|---|---|\n";
    } else {
      doc << "metric,density,n,p,method,value,se\n";
    }
    for (const auto& f : files) {
      for (const auto method : method_order) {
        const auto recs = filter_method(f.records, method);
        if (recs.empty()) continue;
        std::string value, se;
        if (metric == "catastrophic") {
          value = fixed_decimals(100.0 * metric_catastrophic(recs), 1);
        } else if (metric == "q99") {
          value = fixed_decimals(metric_quantile(recs), 2);
        } else {
          const auto mr = metric_mean_ratio(recs);
          value = fixed_decimals(mr.mean, 3);
          se = fixed_decimals(mr.se, 3);
        }
        if (md) {
          doc << "| " << f.density << " | " << f.n << " | " << f.p << " | "
              << method_name(method) << " | " << value;
          if (!se.empty()) doc << " (" << se << ")";
          doc << " |\n";
        } else {
          doc << metric << ',' << f.density << ',' << f.n << ',' << f.p << ','
              << method_name(method) << ',' << value << ',' << se << '\n';
        }
      }
    }
    if (md) doc << "\n";
  }

  if (out_path.empty()) {
    std::cout << doc.str();
  } else {
    write_text_file(out_path, doc.str());
  }

  RunManifest manifest;
  manifest.command = "report";
  manifest.parameters = {{"in", inputs},
                         {"metrics", metrics},
                         {"format", format},
                         {"out", out_path.empty() ? "-" : out_path}};
  manifest.write(out_path.empty() ? std::string("report.manifest.json")
                                  : manifest_path_for(out_path));
  return 0;
}

// -------------------------------------------------------------- riskcurves

int cmd_riskcurves(int density, long long n, double p, long long realizations,
                   std::uint64_t seed, const CommonSelection& sel, const std::string& out,
                   const std::string& svg_path) {
  check_selection_flags(sel);
  if (density < 1 || density > 8) fail(kExitUsage, "density must be in 1..8");
  if (!(p > 0.0 && p < 1.0)) fail(kExitUsage, "p must lie in (0, 1)");
  if (n < 4) fail(kExitUsage, "n must be >= 4");
  if (realizations < 0) fail(kExitUsage, "realizations must be >= 0");

  const auto target = mw_density(density);
  const ErrorModel error = gaussian_error(calibrate_noise_sd(mixture_variance(target), p));
  const SelectionConfig cfg = sel.config();
  const auto nn = static_cast<std::size_t>(n);
  const std::size_t n1 = small_n_size(nn);
  const auto alphas = make_alpha_grid(nn, cfg);

  // Draw all realizations first so one shared grid can cover every |Y_j|.
  std::vector<Sample> samples;
  double osc = max_abs_component_mean(target) + 4.0 * (max_component_sd(target) + error.sd);
  for (long long r = 0; r < realizations; ++r) {
    auto rng = make_rng(replicate_seed(seed, static_cast<std::uint64_t>(r)));
    auto xs = sample_mixture(target, rng, nn);
    const auto es = sample_error(error, rng, nn);
    for (std::size_t i = 0; i < xs.size(); ++i) xs[i] += es[i];
    samples.push_back(make_sample(std::move(xs)));
    osc = std::max(osc, samples.back().max_abs());
  }

  const PenaltyKernel worst(alphas.front(), cfg.m, error);
  GridSpec spec;
  spec.tolerance = cfg.quad_tolerance;
  spec.oscillation_scale = osc;
  spec.resolve_alpha = alphas.back();
  const FrequencyGrid grid = build_frequency_grid(worst, spec);
  const SpectralModel model(error, cfg.m, grid);
  const TargetSpectrum tspec(target, grid);

  std::string csv = "realization,n1_kind,alpha,value\n";
  auto emit = [&](long long realization, const std::string& kind, const RiskCurve& curve) {
    for (std::size_t i = 0; i < curve.alphas.size(); ++i) {
      csv += std::to_string(realization);
      csv += ',';
      csv += kind;
      csv += ',';
      csv += format_double(curve.alphas[i]);
      csv += ',';
      csv += format_double(curve.values[i]);
      csv += '\n';
    }
  };

  SvgPlot plot;
  plot.log_x = true;
  plot.title = "estimated risk curves";
  plot.x_label = "alpha (log scale)";
  plot.y_label = "criterion";

  for (long long r = 0; r < realizations; ++r) {
    const SampleSpectrum spectrum(samples[static_cast<std::size_t>(r)], error, cfg.m, grid);
    const auto full = estimated_risk_curve(spectrum, alphas, nn);
    const auto sqrt_curve = estimated_risk_curve(spectrum, alphas, n1);
    emit(r, "full", full);
    emit(r, "sqrt", sqrt_curve);
    plot.series.push_back({full.alphas, full.values, "#9ecae8", false});
    plot.series.push_back({sqrt_curve.alphas, sqrt_curve.values, "#f4a6a0", false});
  }
  const auto true_full = true_risk_curve(model, tspec, alphas, nn);
  const auto true_sqrt = true_risk_curve(model, tspec, alphas, n1);
  emit(-1, "true_full", true_full);
  emit(-1, "true_sqrt", true_sqrt);
  plot.series.push_back({true_full.alphas, true_full.values, "#08519c", false});
  plot.series.push_back({true_sqrt.alphas, true_sqrt.values, "#a50f15", false});

  write_text_file(out, csv);
  if (!svg_path.empty()) write_line_svg(svg_path, plot);

  RunManifest manifest;
  manifest.command = "riskcurves";
  manifest.seed = seed;
  manifest.parameters = {{"density", density},
                         {"n", n},
                         {"p", p},
                         {"realizations", realizations},
                         {"selection", sel.to_json()},
                         {"out", out}};
  if (!svg_path.empty()) manifest.parameters["svg"] = svg_path;
  manifest.set_quadrature(grid);
  manifest.write(manifest_path_for(out));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"smoothness-penalized density deconvolution toolkit"};
  app.require_subcommand(1);

  // estimate
  auto* estimate = app.add_subcommand("estimate", "deconvolve a data file");
  std::string est_input, est_select, est_xgrid, est_out, est_svg;
  double est_noise_sd = 0.0;
  std::optional<double> est_alpha;
  CommonSelection est_sel;
  estimate->add_option("--input", est_input, "newline-delimited reals")->required();
  estimate->add_option("--noise-sd", est_noise_sd, "noise standard deviation")->required();
  estimate->add_option("--alpha", est_alpha, "penalty parameter");
  estimate->add_option("--select", est_select, "penalty selection method")
      ->check(CLI::IsMember({"small-n", "cv"}));
  estimate->add_option("--xgrid", est_xgrid, "evaluation grid min,max,count");
  estimate->add_option("--out", est_out, "output CSV path")->required();
  estimate->add_option("--svg", est_svg, "optional SVG plot path");
  est_sel.add_flags(estimate);

  // select
  auto* select = app.add_subcommand("select", "choose a penalty parameter");
  std::string sel_input, sel_method, sel_curve_out, sel_manifest_out;
  double sel_noise_sd = 0.0;
  CommonSelection sel_sel;
  select->add_option("--input", sel_input, "newline-delimited reals")->required();
  select->add_option("--noise-sd", sel_noise_sd, "noise standard deviation")->required();
  select->add_option("--method", sel_method, "small-n or cv")
      ->required()
      ->check(CLI::IsMember({"small-n", "cv"}));
  select->add_option("--curve-out", sel_curve_out, "criterion curve CSV path");
  select->add_option("--manifest", sel_manifest_out, "manifest path override");
  sel_sel.add_flags(select);

  // simulate
  auto* simulate = app.add_subcommand("simulate", "run a Monte Carlo study cell");
  int sim_density = 1;
  long long sim_n = 100, sim_nsim = 1, sim_threads = 0;
  double sim_p = 0.1;
  std::uint64_t sim_seed = 1;
  std::string sim_methods = "small-n,cv,oracle", sim_out;
  CommonSelection sim_sel;
  simulate->add_option("--density", sim_density, "target density index 1..8")->required();
  simulate->add_option("--n", sim_n, "sample size")->required();
  simulate->add_option("--p", sim_p, "noise share Var(E)/Var(Y)")->required();
  simulate->add_option("--nsim", sim_nsim, "replicate count")->required();
  simulate->add_option("--seed", sim_seed, "base seed");
  simulate->add_option("--methods", sim_methods, "comma list: small-n,cv,oracle");
  simulate->add_option("--out", sim_out, "records CSV path")->required();
  simulate->add_option("--threads", sim_threads, "max worker threads (0 = auto)");
  sim_sel.add_flags(simulate);

  // report
  auto* report = app.add_subcommand("report", "aggregate records into metric tables");
  std::vector<std::string> rep_inputs;
  std::string rep_metrics = "catastrophic,q99,mean-ratio,mise-ratio";
  std::string rep_format = "md", rep_out;
  report->add_option("--in", rep_inputs, "records CSV files")->required()->expected(-1);
  report->add_option("--metrics", rep_metrics, "comma list of metrics");
  report->add_option("--format", rep_format, "csv or md");
  report->add_option("--out", rep_out, "output path (default stdout)");

  // riskcurves
  auto* riskcurves = app.add_subcommand("riskcurves", "emit estimated risk curve realizations");
  int rc_density = 1;
  long long rc_n = 500, rc_realizations = 20;
  double rc_p = 0.1;
  std::uint64_t rc_seed = 1;
  std::string rc_out, rc_svg;
  CommonSelection rc_sel;
  riskcurves->add_option("--density", rc_density, "target density index 1..8")->required();
  riskcurves->add_option("--n", rc_n, "sample size")->required();
  riskcurves->add_option("--p", rc_p, "noise share Var(E)/Var(Y)")->required();
  riskcurves->add_option("--realizations", rc_realizations, "number of sample realizations");
  riskcurves->add_option("--seed", rc_seed, "base seed");
  riskcurves->add_option("--out", rc_out, "long-format CSV path")->required();
  riskcurves->add_option("--svg", rc_svg, "optional SVG overlay path");
  rc_sel.add_flags(riskcurves);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (estimate->parsed()) {
      return cmd_estimate(est_input, est_noise_sd, est_alpha, est_select, est_sel, est_xgrid,
                          est_out, est_svg);
    }
    if (select->parsed()) {
      return cmd_select(sel_input, sel_noise_sd, sel_method, sel_sel, sel_curve_out,
                        sel_manifest_out);
    }
    if (simulate->parsed()) {
      return cmd_simulate(sim_density, sim_n, sim_p, sim_nsim, sim_seed, sim_methods, sim_sel,
                          sim_out, sim_threads);
    }
    if (report->parsed()) {
      return cmd_report(rep_inputs, rep_metrics, rep_format, rep_out);
    }
    if (riskcurves->parsed()) {
      return cmd_riskcurves(rc_density, rc_n, rc_p, rc_realizations, rc_seed, rc_sel, rc_out,
                            rc_svg);
    }
  } catch (const CliError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kExitUsage;
}
