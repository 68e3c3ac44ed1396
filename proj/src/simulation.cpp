#include "sped/simulation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "sped/error_model.hpp"
#include "sped/seeding.hpp"

namespace sped {

namespace {

// Everything fixed across replicates of one setting.
struct SettingContext {
  NormalMixture target;
  ErrorModel error;
  std::vector<double> alpha_grid;  // b_n scale; shared by oracle and ISE grids
  double alpha_star = 0.0;         // minimizer of the true risk R(alpha, n)
  double osc_floor = 0.0;          // target-driven oscillation scale
  double extra_decay_sd = 0.0;
};

SettingContext make_context(const SimSetting& setting) {
  SettingContext ctx;
  ctx.target = mw_density(setting.density_index);
  ctx.error = gaussian_error(calibrate_noise_sd(mixture_variance(ctx.target), setting.p));
  ctx.alpha_grid = make_alpha_grid(setting.n, setting.config);
  ctx.alpha_star = select_oracle(ctx.target, ctx.error, setting.n, setting.config).alpha_hat;
  ctx.osc_floor = max_abs_component_mean(ctx.target) + 1.0;
  ctx.extra_decay_sd = min_component_sd(ctx.target);
  return ctx;
}

std::vector<SimRecord> run_replicate_ctx(const SimSetting& setting, const SettingContext& ctx,
                                         std::size_t replicate_index) {
  auto rng = make_rng(replicate_seed(setting.seed, replicate_index));
  auto xs = sample_mixture(ctx.target, rng, setting.n);
  const auto es = sample_error(ctx.error, rng, setting.n);
  for (std::size_t i = 0; i < xs.size(); ++i) xs[i] += es[i];
  const Sample sample = make_sample(std::move(xs));

  // One grid per replicate: tail controlled by the smallest alpha any sweep
  // can visit, spacing resolving the largest, target factors included for ISE.
  GridSpec spec;
  spec.tolerance = setting.config.quad_tolerance;
  spec.oscillation_scale = std::max({sample.max_abs(), ctx.osc_floor, 1.0});
  spec.extra_decay_sd = ctx.extra_decay_sd;
  spec.resolve_alpha = ctx.alpha_grid.back();
  const PenaltyKernel worst(ctx.alpha_grid.front(), setting.config.m, ctx.error);
  const auto grid = build_frequency_grid(worst, spec);

  const SampleSpectrum spectrum(sample, ctx.error, setting.config.m, grid);
  const TargetSpectrum target_spectrum(ctx.target, grid);
  const double ise_oracle = true_loss_ise(spectrum, target_spectrum, ctx.alpha_star);

  std::vector<SimRecord> records;
  records.reserve(setting.methods.size());
  for (const auto method : setting.methods) {
    SimRecord rec;
    rec.replicate = replicate_index;
    rec.method = method;
    switch (method) {
      case SelectionMethod::SmallN:
        rec.alpha_hat = select_small_n(spectrum, setting.config).alpha_hat;
        break;
      case SelectionMethod::CrossValidation:
        rec.alpha_hat = select_cv(spectrum, setting.config).alpha_hat;
        break;
      case SelectionMethod::Oracle:
        rec.alpha_hat = ctx.alpha_star;
        break;
    }
    rec.ise = method == SelectionMethod::Oracle
                  ? ise_oracle
                  : true_loss_ise(spectrum, target_spectrum, rec.alpha_hat);
    rec.ise_oracle = ise_oracle;
    rec.loss_ratio = rec.ise / rec.ise_oracle;
    records.push_back(rec);
  }
  std::sort(records.begin(), records.end(),
            [](const SimRecord& a, const SimRecord& b) { return a.method < b.method; });
  return records;
}

}  // namespace

std::string method_name(SelectionMethod method) {
  switch (method) {
    case SelectionMethod::SmallN: return "small-n";
    case SelectionMethod::CrossValidation: return "cv";
    case SelectionMethod::Oracle: return "oracle";
  }
  throw std::logic_error("method_name: unknown method");
}

SelectionMethod parse_method(const std::string& name) {
  if (name == "small-n") return SelectionMethod::SmallN;
  if (name == "cv") return SelectionMethod::CrossValidation;
  if (name == "oracle") return SelectionMethod::Oracle;
  throw std::invalid_argument("unknown method name: " + name);
}

void validate(const SimSetting& setting) {
  if (setting.density_index < 1 || setting.density_index > 8) {
    throw std::domain_error("SimSetting: density_index must be in 1..8");
  }
  if (setting.n < 4) throw std::domain_error("SimSetting: n must be >= 4");
  if (!(setting.p > 0.0 && setting.p < 1.0)) {
    throw std::domain_error("SimSetting: p must lie in (0, 1)");
  }
  if (setting.n_sim < 1) throw std::domain_error("SimSetting: n_sim must be >= 1");
  if (setting.methods.empty()) throw std::domain_error("SimSetting: no methods requested");
}

std::vector<SimRecord> run_replicate(const SimSetting& setting, std::size_t replicate_index) {
  validate(setting);
  const auto ctx = make_context(setting);
  return run_replicate_ctx(setting, ctx, replicate_index);
}

std::vector<SimRecord> run_simulation(const SimSetting& setting) {
  validate(setting);
  const auto ctx = make_context(setting);

  std::vector<std::vector<SimRecord>> slots(setting.n_sim);
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr first_error;
  std::size_t failed_index = 0;
  std::mutex error_mutex;

  auto worker = [&]() {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= setting.n_sim || failed.load()) return;
      try {
        slots[i] = run_replicate_ctx(setting, ctx, i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!failed.exchange(true)) {
          first_error = std::current_exception();
          failed_index = i;
        }
        return;
      }
    }
  };

  std::size_t threads = setting.max_threads > 0
                            ? setting.max_threads
                            : std::max<std::size_t>(1, std::thread::hardware_concurrency());
  threads = std::min(threads, setting.n_sim);
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (std::size_t i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failed.load()) {
    try {
      std::rethrow_exception(first_error);
    } catch (const std::exception& e) {
      throw std::runtime_error("replicate " + std::to_string(failed_index) +
                               " failed: " + e.what());
    }
  }

  std::vector<SimRecord> records;
  records.reserve(setting.n_sim * setting.methods.size());
  for (auto& slot : slots) {
    records.insert(records.end(), slot.begin(), slot.end());
  }
  return records;
}

std::vector<SimRecord> filter_method(std::span<const SimRecord> records, SelectionMethod method) {
  std::vector<SimRecord> out;
  for (const auto& r : records) {
    if (r.method == method) out.push_back(r);
  }
  return out;
}

double metric_catastrophic(std::span<const SimRecord> records, double threshold) {
  if (records.empty()) throw std::domain_error("metric_catastrophic: no records");
  std::size_t count = 0;
  for (const auto& r : records) {
    if (r.loss_ratio > threshold) ++count;
  }
  return static_cast<double>(count) / static_cast<double>(records.size());
}

double metric_quantile(std::span<const SimRecord> records, double q) {
  if (records.empty()) throw std::domain_error("metric_quantile: no records");
  if (!(q >= 0.0 && q <= 1.0)) throw std::domain_error("metric_quantile: q must be in [0, 1]");
  std::vector<double> ratios;
  ratios.reserve(records.size());
  for (const auto& r : records) ratios.push_back(r.loss_ratio);
  std::sort(ratios.begin(), ratios.end());
  const double h = q * static_cast<double>(ratios.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  if (lo + 1 >= ratios.size()) return ratios.back();
  const double frac = h - static_cast<double>(lo);
  return ratios[lo] + frac * (ratios[lo + 1] - ratios[lo]);
}

MeanRatio metric_mean_ratio(std::span<const SimRecord> records) {
  if (records.empty()) throw std::domain_error("metric_mean_ratio: no records");
  double mean = 0.0;
  for (const auto& r : records) mean += r.loss_ratio;
  mean /= static_cast<double>(records.size());
  if (records.size() == 1) return {mean, 0.0};
  double ss = 0.0;
  for (const auto& r : records) {
    const double d = r.loss_ratio - mean;
    ss += d * d;
  }
  const double var = ss / static_cast<double>(records.size() - 1);
  return {mean, std::sqrt(var / static_cast<double>(records.size()))};
}

double metric_mise_ratio(std::span<const SimRecord> records_a,
                         std::span<const SimRecord> records_b) {
  if (records_a.empty() || records_b.empty()) {
    throw std::domain_error("metric_mise_ratio: no records");
  }
  auto replicates = [](std::span<const SimRecord> records) {
    std::vector<std::size_t> ids;
    ids.reserve(records.size());
    for (const auto& r : records) ids.push_back(r.replicate);
    std::sort(ids.begin(), ids.end());
    return ids;
  };
  if (replicates(records_a) != replicates(records_b)) {
    throw std::domain_error("metric_mise_ratio: replicate sets do not match");
  }
  double mise_a = 0.0, mise_b = 0.0;
  for (const auto& r : records_a) mise_a += r.ise;
  for (const auto& r : records_b) mise_b += r.ise;
  return mise_a / mise_b;
}

}  // namespace sped
