#include <doctest.h>

#include <cmath>

#include "sped/simulation.hpp"
#include "test_util.hpp"

using namespace sped;

namespace {

bool identical(const SimRecord& a, const SimRecord& b) {
  return a.replicate == b.replicate && a.method == b.method && a.alpha_hat == b.alpha_hat &&
         a.ise == b.ise && a.ise_oracle == b.ise_oracle && a.loss_ratio == b.loss_ratio;
}

SimSetting small_setting() {
  SimSetting setting;
  setting.density_index = 6;
  setting.n = 50;
  setting.p = 0.1;
  setting.n_sim = 12;
  setting.seed = 4242;
  return setting;
}

}  // namespace

TEST_CASE("method names round-trip") {
  for (auto m : {SelectionMethod::SmallN, SelectionMethod::CrossValidation,
                 SelectionMethod::Oracle}) {
    CHECK(parse_method(method_name(m)) == m);
  }
  CHECK_THROWS_AS(parse_method("sure"), std::invalid_argument);
}

TEST_CASE("setting validation") {
  auto setting = small_setting();
  setting.density_index = 9;
  CHECK_THROWS_AS(validate(setting), std::domain_error);
  setting = small_setting();
  setting.p = 1.0;
  CHECK_THROWS_AS(validate(setting), std::domain_error);
  setting = small_setting();
  setting.n = 3;
  CHECK_THROWS_AS(validate(setting), std::domain_error);
  setting = small_setting();
  setting.methods.clear();
  CHECK_THROWS_AS(validate(setting), std::domain_error);
}

TEST_CASE("replicates are bit-identical given (seed, index)") {
  const auto setting = small_setting();
  const auto a = run_replicate(setting, 3);
  const auto b = run_replicate(setting, 3);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(identical(a[i], b[i]));

  const auto other = run_replicate(setting, 4);
  CHECK(a[0].ise != other[0].ise);
}

TEST_CASE("record invariants") {
  const auto setting = small_setting();
  const auto records = run_replicate(setting, 0);
  REQUIRE(records.size() == 3);
  for (const auto& r : records) {
    CHECK(r.loss_ratio >= 0.0);
    CHECK(r.ise >= 0.0);
    CHECK(r.loss_ratio == doctest::Approx(r.ise / r.ise_oracle).epsilon(1e-12));
    if (r.method == SelectionMethod::Oracle) CHECK(r.loss_ratio == 1.0);
  }
  CHECK(records[0].method == SelectionMethod::SmallN);
  CHECK(records[1].method == SelectionMethod::CrossValidation);
  CHECK(records[2].method == SelectionMethod::Oracle);
}

TEST_CASE("one-replicate simulation equals run_replicate") {
  auto setting = small_setting();
  setting.n_sim = 1;
  const auto sim = run_simulation(setting);
  const auto rep = run_replicate(setting, 0);
  REQUIRE(sim.size() == rep.size());
  for (std::size_t i = 0; i < sim.size(); ++i) CHECK(identical(sim[i], rep[i]));
}

TEST_CASE("parallel and serial execution agree exactly") {
  auto setting = small_setting();
  setting.max_threads = 1;
  const auto serial = run_simulation(setting);
  setting.max_threads = 4;
  const auto parallel = run_simulation(setting);
  REQUIRE(serial.size() == parallel.size());
  for (std::size_t i = 0; i < serial.size(); ++i) CHECK(identical(serial[i], parallel[i]));

  // sorted by (replicate, method)
  for (std::size_t i = 1; i < serial.size(); ++i) {
    const bool ordered =
        serial[i - 1].replicate < serial[i].replicate ||
        (serial[i - 1].replicate == serial[i].replicate &&
         serial[i - 1].method < serial[i].method);
    CHECK(ordered);
  }
}

TEST_CASE("catastrophic metric counts threshold crossings") {
  std::vector<SimRecord> records(10);
  for (std::size_t i = 0; i < records.size(); ++i) {
    records[i].replicate = i;
    records[i].loss_ratio = static_cast<double>(i + 1);  // 1..10
  }
  CHECK(metric_catastrophic(records, 10.0) == 0.0);
  CHECK(metric_catastrophic(records, 5.0) == doctest::Approx(0.5));
  CHECK(metric_catastrophic(records, 0.0) == 1.0);
  CHECK(metric_catastrophic(records, 1e300) == 0.0);
  CHECK_THROWS_AS(metric_catastrophic({}, 10.0), std::domain_error);
}

TEST_CASE("quantile metric uses interpolated order statistics") {
  std::vector<SimRecord> records(5);
  for (std::size_t i = 0; i < 5; ++i) {
    records[i].replicate = i;
    records[i].loss_ratio = static_cast<double>(i);  // 0,1,2,3,4
  }
  CHECK(metric_quantile(records, 0.5) == doctest::Approx(2.0));
  CHECK(metric_quantile(records, 0.25) == doctest::Approx(1.0));
  CHECK(metric_quantile(records, 1.0) == doctest::Approx(4.0));
  CHECK(metric_quantile(records, 0.99) == doctest::Approx(3.96));

  for (auto& r : records) r.loss_ratio = 7.25;
  CHECK(metric_quantile(records, 0.99) == 7.25);
  CHECK_THROWS_AS(metric_quantile({}, 0.5), std::domain_error);
}

TEST_CASE("mean-ratio metric") {
  std::vector<SimRecord> records(4);
  for (std::size_t i = 0; i < 4; ++i) {
    records[i].replicate = i;
    records[i].loss_ratio = 1.0;
  }
  const auto mr = metric_mean_ratio(records);
  CHECK(mr.mean == 1.0);
  CHECK(mr.se == 0.0);
  CHECK_THROWS_AS(metric_mean_ratio({}), std::domain_error);
}

TEST_CASE("mise-ratio metric") {
  const auto setting = small_setting();
  const auto records = run_replicate(setting, 0);
  const auto oracle = filter_method(records, SelectionMethod::Oracle);
  CHECK(metric_mise_ratio(oracle, oracle) == 1.0);

  auto mismatched = oracle;
  mismatched[0].replicate = 99;
  CHECK_THROWS_AS(metric_mise_ratio(oracle, mismatched), std::domain_error);
}
