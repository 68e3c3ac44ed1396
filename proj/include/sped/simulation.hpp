#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "sped/selection.hpp"

namespace sped {

// One cell of the factorial study: target density, sample size, noise share
// p = Var(E)/Var(Y), replicate count and base seed.
struct SimSetting {
  int density_index = 1;
  std::size_t n = 100;
  double p = 0.1;
  std::size_t n_sim = 1;
  std::uint64_t seed = 1;
  std::vector<SelectionMethod> methods = {SelectionMethod::SmallN,
                                          SelectionMethod::CrossValidation,
                                          SelectionMethod::Oracle};
  SelectionConfig config{};
  std::size_t max_threads = 0;  // 0 = hardware concurrency
};

struct SimRecord {
  std::size_t replicate = 0;
  SelectionMethod method = SelectionMethod::SmallN;
  double alpha_hat = 0.0;
  double ise = 0.0;         // realized loss at the chosen alpha
  double ise_oracle = 0.0;  // realized loss at alpha*_n on the same sample
  double loss_ratio = 0.0;  // ise / ise_oracle
};

std::string method_name(SelectionMethod method);
SelectionMethod parse_method(const std::string& name);

void validate(const SimSetting& setting);

// Records for one replicate, ordered by method. Deterministic in
// (setting.seed, replicate_index); independent of any parallel schedule.
std::vector<SimRecord> run_replicate(const SimSetting& setting, std::size_t replicate_index);

// All replicates, sorted by (replicate, method); identical output for any
// thread count. Any replicate failure fails the run.
std::vector<SimRecord> run_simulation(const SimSetting& setting);

std::vector<SimRecord> filter_method(std::span<const SimRecord> records, SelectionMethod method);

// Fraction of records with loss_ratio > threshold.
double metric_catastrophic(std::span<const SimRecord> records, double threshold = 10.0);

// Interpolated order statistics (type 7) quantile of loss_ratio.
double metric_quantile(std::span<const SimRecord> records, double q = 0.99);

// Mean loss ratio and its standard error.
struct MeanRatio {
  double mean;
  double se;
};
MeanRatio metric_mean_ratio(std::span<const SimRecord> records);

// mean(ise of a) / mean(ise of b); both must cover the same replicate set.
double metric_mise_ratio(std::span<const SimRecord> records_a,
                         std::span<const SimRecord> records_b);

}  // namespace sped
