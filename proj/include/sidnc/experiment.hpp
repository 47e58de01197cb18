#pragma once

#include "sidnc/packet_state.hpp"
#include "sidnc/schemes.hpp"

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace sidnc {

struct ExperimentSpec {
  /// `config.receivers` is overridden by each sweep value.
  BroadcastConfig config;
  std::vector<std::size_t> sweep;
  std::vector<SchemeSpec> schemes;
  /// Erasure probability of the coded phase; defaults to `config.erasure`.
  std::optional<double> coded_erasure;
  /// Start every trial from this matrix instead of a systematic phase.
  std::optional<StateFeedbackMatrix> initial_sfm;
  bool confidence = false;
  /// 0 uses the hardware concurrency.
  std::size_t threads = 0;

  void validate() const;
};

struct ResultRow {
  std::string scheme;
  std::string algorithm;
  std::size_t receivers = 0;
  std::size_t packets = 0;
  double erasure = 0.0;
  std::size_t trials = 0;
  double mean_completion = 0.0;
  double stderr_completion = 0.0;
  double mean_delay = 0.0;
  double stderr_delay = 0.0;
  double mean_rounds = 0.0;
  double mean_solution_size = 0.0;
  std::size_t incomplete = 0;
  std::size_t violations = 0;

  bool operator==(const ResultRow&) const = default;
};

/// Per-trial outcome of one scheme; kept so callers can run paired tests.
struct TrialOutcome {
  bool complete = false;
  std::size_t completion_time = 0;
  std::optional<double> decoding_delay;
  std::size_t rounds = 0;
  double mean_solution_size = 0.0;
  std::size_t violations = 0;
};

struct ExperimentResult {
  std::vector<ResultRow> rows;
  /// outcomes[row][trial], rows in the same order as `rows`.
  std::vector<std::vector<TrialOutcome>> outcomes;
};

using ProgressCallback = std::function<void(const ResultRow& row, double seconds)>;

/// One row per (N, scheme), N-major in sweep order. Trials run in parallel;
/// every trial draws from streams seeded by (seed, trial index) so results
/// do not depend on the thread count. All schemes of a trial share the same
/// initial matrix and the same coded-phase reception stream.
ExperimentResult run_experiment(const ExperimentSpec& spec, const ProgressCallback& progress = {});

TrialOutcome summarize(const TransmissionLog& log);

std::string csv_header();
std::string format_csv(const std::vector<ResultRow>& rows);
std::vector<ResultRow> parse_csv(std::istream& in);
/// Writes header + rows; throws std::runtime_error naming the path on failure.
void emit_csv(const std::vector<ResultRow>& rows, const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

/// "key = value" lines; '#' starts a comment. Throws ParseError on malformed lines.
std::map<std::string, std::string> parse_key_values(std::istream& in);

/// Comma-separated list of integers and inclusive ranges "a:b" or "a:b:step".
std::vector<std::size_t> parse_sweep(const std::string& text);

} // namespace sidnc
