#include "doctest.h"

#include "sidnc/errors.hpp"
#include "sidnc/experiment.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace sidnc;

namespace {

ExperimentSpec small_spec() {
  ExperimentSpec spec;
  spec.config = {8, 4, 0.2, 3, 40};
  spec.sweep = {3, 5};
  SchemeSpec fully;
  SchemeSpec semi;
  semi.scheme = SchemeKind::SemiOnlineS;
  semi.algorithm = AlgorithmKind::Heuristic;
  SchemeSpec rlnc;
  rlnc.scheme = SchemeKind::Rlnc;
  spec.schemes = {fully, semi, rlnc};
  spec.threads = 1;
  return spec;
}

} // namespace

TEST_CASE("experiment spec validation") {
  auto spec = small_spec();
  CHECK_NOTHROW(spec.validate());
  spec.sweep.clear();
  CHECK_THROWS_AS(spec.validate(), InvalidConfig);
  spec = small_spec();
  spec.schemes.clear();
  CHECK_THROWS_AS(spec.validate(), InvalidConfig);
  spec = small_spec();
  spec.confidence = true;
  spec.config.trials = 29;
  CHECK_THROWS_AS(spec.validate(), InvalidConfig);
  spec.config.trials = 30;
  CHECK_NOTHROW(spec.validate());
  spec = small_spec();
  spec.coded_erasure = 1.0;
  CHECK_THROWS_AS(spec.validate(), InvalidConfig);
}

TEST_CASE("rows are N-major in sweep order") {
  const auto result = run_experiment(small_spec());
  REQUIRE(result.rows.size() == 6);
  CHECK(result.rows[0].receivers == 3);
  CHECK(result.rows[2].receivers == 3);
  CHECK(result.rows[3].receivers == 5);
  CHECK(result.rows[0].scheme == "fully-online");
  CHECK(result.rows[0].algorithm == "optimal");
  CHECK(result.rows[1].algorithm == "heuristic");
  CHECK(result.rows[2].algorithm == "none");
  for (const auto& r : result.rows) {
    CHECK(r.trials == 40);
    CHECK(r.incomplete == 0);
    CHECK(r.violations == 0);
    CHECK(r.packets == 8);
  }
  CHECK(result.outcomes.size() == 6);
  CHECK(result.outcomes[0].size() == 40);
}

TEST_CASE("results do not depend on the thread count") {
  auto one = small_spec();
  auto four = small_spec();
  four.threads = 4;
  CHECK(format_csv(run_experiment(one).rows) == format_csv(run_experiment(four).rows));
}

TEST_CASE("stderr is the sample deviation over root n") {
  auto spec = small_spec();
  spec.sweep = {4};
  const auto result = run_experiment(spec);
  const auto& outs = result.outcomes[0];
  double mean = 0.0;
  for (const auto& o : outs) mean += static_cast<double>(o.completion_time);
  mean /= static_cast<double>(outs.size());
  double ss = 0.0;
  for (const auto& o : outs) ss += (static_cast<double>(o.completion_time) - mean) * (static_cast<double>(o.completion_time) - mean);
  const double se = std::sqrt(ss / static_cast<double>(outs.size() - 1)) / std::sqrt(static_cast<double>(outs.size()));
  CHECK(result.rows[0].mean_completion == doctest::Approx(mean).epsilon(1e-12));
  CHECK(result.rows[0].stderr_completion == doctest::Approx(se).epsilon(1e-12));
}

TEST_CASE("coded-phase erasure override") {
  auto spec = small_spec();
  spec.coded_erasure = 0.0;
  const auto result = run_experiment(spec);
  // RLNC without coded-phase erasures finishes in max |W_n| slots, so every
  // trial's completion time is at most K.
  for (const auto& o : result.outcomes[2]) CHECK(o.completion_time <= 8);
  // Semi-online without erasures is a single round.
  CHECK(result.rows[1].mean_rounds == doctest::Approx(1.0));
}

TEST_CASE("fixed initial matrix") {
  auto spec = small_spec();
  spec.initial_sfm = fig1_sfm();
  spec.coded_erasure = 0.0;
  const auto result = run_experiment(spec);
  REQUIRE(result.rows.size() == 3);
  CHECK(result.rows[0].receivers == 5);
  CHECK(result.rows[0].packets == 6);
  CHECK(result.rows[0].mean_completion == 3.0);
  CHECK(result.rows[2].mean_delay == doctest::Approx(2.5));
}

TEST_CASE("CSV round trip") {
  const auto rows = run_experiment(small_spec()).rows;
  std::istringstream in(format_csv(rows));
  CHECK(parse_csv(in) == rows);

  std::istringstream header_only(format_csv({}));
  CHECK(parse_csv(header_only).empty());
  CHECK(format_csv({}) == csv_header() + "\n");

  std::istringstream bad_header("nope\n");
  CHECK_THROWS_AS(parse_csv(bad_header), ParseError);
  std::istringstream short_line(csv_header() + "\na,b\n");
  CHECK_THROWS_AS(parse_csv(short_line), ParseError);
}

TEST_CASE("emit_csv writes and reports paths") {
  const auto path = std::filesystem::temp_directory_path() / "sidnc_emit_test.csv";
  emit_csv({}, path.string());
  std::ifstream in(path);
  std::string line;
  std::getline(in, line);
  CHECK(line == csv_header());
  std::filesystem::remove(path);

  try {
    emit_csv({}, "/nonexistent-dir/x.csv");
    FAIL("expected an exception");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()).find("/nonexistent-dir/x.csv") != std::string::npos);
  }
}

TEST_CASE("key=value config parsing") {
  std::istringstream in("# defaults\npackets = 12\n\nerasure=0.3 # trailing\n");
  const auto kv = parse_key_values(in);
  CHECK(kv.at("packets") == "12");
  CHECK(kv.at("erasure") == "0.3");
  CHECK(kv.size() == 2);
  std::istringstream bad("no equals sign\n");
  CHECK_THROWS_AS(parse_key_values(bad), ParseError);
}

TEST_CASE("sweep parsing") {
  CHECK(parse_sweep("5") == std::vector<std::size_t>{5});
  CHECK(parse_sweep("2,4:6") == std::vector<std::size_t>{2, 4, 5, 6});
  CHECK(parse_sweep("5:40:5") == std::vector<std::size_t>{5, 10, 15, 20, 25, 30, 35, 40});
  CHECK_THROWS_AS(parse_sweep(""), ParseError);
  CHECK_THROWS_AS(parse_sweep("0"), ParseError);
  CHECK_THROWS_AS(parse_sweep("6:2"), ParseError);
  CHECK_THROWS_AS(parse_sweep("x"), ParseError);
  CHECK_THROWS_AS(parse_sweep("1:2:3:4"), ParseError);
}
