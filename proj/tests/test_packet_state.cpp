#include "doctest.h"

#include "sidnc/errors.hpp"
#include "sidnc/packet_state.hpp"
#include "test_support.hpp"

#include <cmath>
#include <sstream>

using namespace sidnc;

TEST_CASE("config validation") {
  BroadcastConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.erasure = 1.0;
  CHECK_THROWS_AS(cfg.validate(), InvalidConfig);
  cfg = {};
  cfg.packets = 0;
  CHECK_THROWS_AS(cfg.validate(), InvalidConfig);
  cfg = {};
  cfg.receivers = 0;
  CHECK_THROWS_AS(cfg.validate(), InvalidConfig);
  cfg = {};
  cfg.trials = 0;
  CHECK_THROWS_AS(cfg.validate(), InvalidConfig);
  cfg = {};
  cfg.erasure = -0.1;
  CHECK_THROWS_AS(cfg.validate(), InvalidConfig);
}

TEST_CASE("fig1 matrix matches the worked example") {
  const auto a = fig1_sfm();
  CHECK(a.packets() == 6);
  CHECK(a.receivers() == 5);
  CHECK(to_indices(a.wants_set(0)) == std::vector<std::size_t>{0, 4, 5});
  CHECK(to_indices(a.target_set(2)) == std::vector<std::size_t>{2, 4});
  CHECK(a.target_size(2) == 2);
  CHECK(a.total_wants() == 12);
  CHECK(a.max_wants() == 3);
}

TEST_CASE("wants and target sets are transposes") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 100; ++i) {
    const auto a = testing::random_sfm(rng, 10, 8, 0.4);
    std::size_t ones = 0;
    for (std::size_t n = 0; n < a.receivers(); ++n)
      for (std::size_t k = 0; k < a.packets(); ++k) {
        CHECK(a.wants_set(n).test(k) == a.target_set(k).test(n));
        ones += a.wants(n, k) ? 1 : 0;
      }
    CHECK(ones == a.total_wants());
  }
}

TEST_CASE("systematic phase with no erasures leaves nothing wanted") {
  BroadcastConfig cfg{7, 4, 0.0, 1, 1};
  ErasureChannel ch(0.0, 1, 0);
  const auto a = systematic_phase(cfg, ch);
  CHECK(a.complete());
  CHECK(a.packets() == 7);
  CHECK(a.receivers() == 4);
}

TEST_CASE("systematic phase is deterministic per (seed, trial)") {
  BroadcastConfig cfg{15, 10, 0.3, 99, 1};
  ErasureChannel a(0.3, 99, 4);
  ErasureChannel b(0.3, 99, 4);
  ErasureChannel c(0.3, 99, 5);
  const auto sa = systematic_phase(cfg, a);
  CHECK(sa == systematic_phase(cfg, b));
  CHECK_FALSE(sa == systematic_phase(cfg, c));
}

TEST_CASE("systematic phase draws packet-major then receiver-ascending") {
  BroadcastConfig cfg{3, 4, 0.5, 11, 1};
  ErasureChannel ch(0.5, 11, 2);
  ErasureChannel replay(0.5, 11, 2);
  const auto a = systematic_phase(cfg, ch);
  for (std::size_t k = 0; k < 3; ++k)
    for (std::size_t n = 0; n < 4; ++n) CHECK(a.wants(n, k) == replay.erased());
}

TEST_CASE("systematic phase entry mean near Pe=0.999") {
  BroadcastConfig cfg{2, 1, 0.999, 5, 1};
  double ones = 0.0;
  const int trials = 100000;
  for (int t = 0; t < trials; ++t) {
    ErasureChannel ch(cfg.erasure, cfg.seed, static_cast<std::uint64_t>(t));
    ones += static_cast<double>(systematic_phase(cfg, ch).total_wants());
  }
  CHECK(std::abs(ones / (2.0 * trials) - 0.999) < 0.002);
}

TEST_CASE("mean T over trials matches K*N*Pe") {
  BroadcastConfig cfg{15, 10, 0.2, 17, 1};
  double sum = 0.0;
  const int trials = 10000;
  for (int t = 0; t < trials; ++t) {
    ErasureChannel ch(cfg.erasure, cfg.seed, static_cast<std::uint64_t>(t));
    sum += static_cast<double>(systematic_phase(cfg, ch).total_wants());
  }
  const double mean = sum / trials;
  CHECK(std::abs(mean - 30.0) / 30.0 < 0.01);
  // Entry mean within 3 binomial standard errors.
  const double draws = 150.0 * trials;
  CHECK(std::abs(sum / draws - 0.2) < 3.0 * std::sqrt(0.2 * 0.8 / draws));
}

TEST_CASE("apply_reception clears the unique wanted member") {
  const auto a = fig1_sfm();
  const auto b = apply_reception(a, CodingSet{0, 1}, make_index_set(5, {0, 1}));
  CHECK_FALSE(b.wants(0, 0));
  CHECK_FALSE(b.wants(1, 1));
  CHECK(b.total_wants() == 10);
  for (std::size_t n = 0; n < 5; ++n)
    for (std::size_t k = 0; k < 6; ++k)
      if (!((n == 0 && k == 0) || (n == 1 && k == 1))) CHECK(a.wants(n, k) == b.wants(n, k));
}

TEST_CASE("apply_reception with no receivers is the identity") {
  const auto a = fig1_sfm();
  CHECK(apply_reception(a, CodingSet{2, 5}, IndexSet(5)) == a);
}

TEST_CASE("apply_reception rejects conflicting sets") {
  const auto a = fig1_sfm();
  CHECK_THROWS_AS(apply_reception(a, CodingSet{2, 3}, make_index_set(5, {0})), ConflictingCodingSet);
  CHECK_THROWS_AS(apply_reception(a, CodingSet{2, 3}, IndexSet(5)), ConflictingCodingSet);
}

TEST_CASE("apply_reception is monotone and idempotent") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    const auto a = testing::random_sfm(rng, 8, 6, 0.3);
    // Single packets never conflict.
    const CodingSet m{rng() % a.packets()};
    IndexSet got(a.receivers());
    for (std::size_t n = 0; n < a.receivers(); ++n)
      if (rng() & 1) got.set(n);
    const auto b = apply_reception(a, m, got);
    CHECK(b.total_wants() <= a.total_wants());
    for (std::size_t n = 0; n < a.receivers(); ++n) CHECK(b.wants_set(n).is_subset_of(a.wants_set(n)));
    CHECK(apply_reception(b, m, got) == b);
  }
}

TEST_CASE("instant_decodes skips receivers wanting two members") {
  const auto a = fig1_sfm();
  // R3 wants p3 and p4; R1 wants neither; R4 and R5 want one each.
  const auto events = instant_decodes(a, CodingSet{0, 2, 3}, full_index_set(5));
  const std::vector<DecodeEvent> expected{{0, 0}, {3, 3}, {4, 2}};
  CHECK(events == expected);
}

TEST_CASE("SFM text format round trip and errors") {
  const auto a = fig1_sfm();
  std::istringstream in(format_sfm(a));
  CHECK(parse_sfm(in) == a);
  CHECK(format_sfm(a).substr(0, 4) == "6 5\n");

  std::istringstream bad_digit("2 1\n0 2\n");
  CHECK_THROWS_AS(parse_sfm(bad_digit), ParseError);
  std::istringstream short_rows("2 2\n0 1\n");
  CHECK_THROWS_AS(parse_sfm(short_rows), ParseError);
  std::istringstream trailing("1 1\n0\n1\n");
  CHECK_THROWS_AS(parse_sfm(trailing), ParseError);
  CHECK_THROWS_AS(load_sfm("/nonexistent/path.sfm"), ParseError);
}

TEST_CASE("all-zero matrix keeps its shape") {
  const StateFeedbackMatrix a(3, 5);
  CHECK(a.complete());
  CHECK(a.receivers() == 3);
  CHECK(a.wanted_packets().none());
}
