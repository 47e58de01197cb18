#include "sidnc/experiment.hpp"

#include "sidnc/errors.hpp"

#include <fmt/format.h>

#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>
#include <mutex>
#include <thread>

namespace sidnc {

void ExperimentSpec::validate() const {
  BroadcastConfig probe = config;
  if (initial_sfm) {
    probe.packets = initial_sfm->packets();
    probe.receivers = initial_sfm->receivers();
  }
  probe.validate();
  if (sweep.empty() && !initial_sfm) throw InvalidConfig("receiver sweep must not be empty");
  for (auto n : sweep)
    if (n < 1) throw InvalidConfig("sweep values must be at least 1");
  if (schemes.empty()) throw InvalidConfig("at least one scheme is required");
  if (coded_erasure && !(*coded_erasure >= 0.0 && *coded_erasure < 1.0))
    throw InvalidConfig("coded-phase erasure probability must lie in [0, 1)");
  if (confidence && config.trials < 30) throw InvalidConfig("confidence intervals need at least 30 trials");
}

TrialOutcome summarize(const TransmissionLog& log) {
  TrialOutcome out;
  out.complete = log.complete();
  out.completion_time = log.completion_time;
  if (out.complete && log.initial.total_wants() > 0) out.decoding_delay = log.decoding_delay();
  out.rounds = log.rounds;
  out.mean_solution_size = log.mean_solution_size();
  out.violations = log.violations.size();
  return out;
}

namespace {

struct MeanAndError {
  double mean = 0.0;
  double standard_error = 0.0;
};

MeanAndError mean_and_error(const std::vector<double>& xs) {
  MeanAndError out;
  if (xs.empty()) return out;
  double sum = 0.0;
  for (double x : xs) sum += x;
  out.mean = sum / static_cast<double>(xs.size());
  if (xs.size() > 1) {
    double ss = 0.0;
    for (double x : xs) ss += (x - out.mean) * (x - out.mean);
    out.standard_error = std::sqrt(ss / static_cast<double>(xs.size() - 1)) / std::sqrt(static_cast<double>(xs.size()));
  }
  return out;
}

ResultRow aggregate(const SchemeSpec& scheme, std::size_t receivers, std::size_t packets, double erasure,
                    const std::vector<TrialOutcome>& outcomes) {
  ResultRow row;
  row.scheme = std::string(to_string(scheme.scheme));
  const bool s_idnc = scheme.scheme == SchemeKind::FullyOnlineS || scheme.scheme == SchemeKind::SemiOnlineS;
  row.algorithm = s_idnc ? std::string(to_string(scheme.algorithm)) : "none";
  row.receivers = receivers;
  row.packets = packets;
  row.erasure = erasure;
  row.trials = outcomes.size();
  std::vector<double> completion;
  std::vector<double> delay;
  std::vector<double> rounds;
  std::vector<double> sizes;
  for (const auto& o : outcomes) {
    row.violations += o.violations;
    if (!o.complete) {
      ++row.incomplete;
      continue;
    }
    completion.push_back(static_cast<double>(o.completion_time));
    rounds.push_back(static_cast<double>(o.rounds));
    sizes.push_back(o.mean_solution_size);
    if (o.decoding_delay) delay.push_back(*o.decoding_delay);
  }
  const auto c = mean_and_error(completion);
  const auto d = mean_and_error(delay);
  row.mean_completion = c.mean;
  row.stderr_completion = c.standard_error;
  row.mean_delay = d.mean;
  row.stderr_delay = d.standard_error;
  row.mean_rounds = mean_and_error(rounds).mean;
  row.mean_solution_size = mean_and_error(sizes).mean;
  return row;
}

template <typename Fn>
void parallel_for(std::size_t count, std::size_t threads, Fn&& fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, count);
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (std::size_t t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

} // namespace

ExperimentResult run_experiment(const ExperimentSpec& spec, const ProgressCallback& progress) {
  spec.validate();
  const double coded_erasure = spec.coded_erasure.value_or(spec.config.erasure);
  std::vector<std::size_t> sweep = spec.sweep;
  if (spec.initial_sfm) sweep = {spec.initial_sfm->receivers()};

  ExperimentResult result;
  for (auto receivers : sweep) {
    const auto started = std::chrono::steady_clock::now();
    BroadcastConfig config = spec.config;
    config.receivers = receivers;
    if (spec.initial_sfm) config.packets = spec.initial_sfm->packets();

    // outcomes[scheme][trial]
    std::vector<std::vector<TrialOutcome>> outcomes(spec.schemes.size(), std::vector<TrialOutcome>(config.trials));
    parallel_for(config.trials, spec.threads, [&](std::size_t trial) {
      StateFeedbackMatrix sfm;
      if (spec.initial_sfm) {
        sfm = *spec.initial_sfm;
      } else {
        ErasureChannel systematic(config.erasure, config.seed, trial, 0);
        sfm = systematic_phase(config, systematic);
      }
      for (std::size_t s = 0; s < spec.schemes.size(); ++s) {
        ErasureChannel coded(coded_erasure, config.seed, trial, 1);
        try {
          outcomes[s][trial] = summarize(run_scheme(sfm, spec.schemes[s], coded));
        } catch (const ConflictingCodingSet&) {
          outcomes[s][trial] = TrialOutcome{};
          outcomes[s][trial].violations = 1;
        } catch (const Error&) {
          outcomes[s][trial] = TrialOutcome{};
        }
      }
    });

    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count() /
        static_cast<double>(spec.schemes.size());
    for (std::size_t s = 0; s < spec.schemes.size(); ++s) {
      result.rows.push_back(aggregate(spec.schemes[s], receivers, config.packets, config.erasure, outcomes[s]));
      result.outcomes.push_back(std::move(outcomes[s]));
      if (progress) progress(result.rows.back(), seconds);
    }
  }
  return result;
}

std::string csv_header() {
  return "scheme,algorithm,N,K,Pe,trials,mean_UT,stderr_UT,mean_DT,stderr_DT,mean_rounds,mean_Sm,incomplete,"
         "violations";
}

std::string format_csv(const std::vector<ResultRow>& rows) {
  std::string out = csv_header() + "\n";
  for (const auto& r : rows)
    out += fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n", r.scheme, r.algorithm, r.receivers, r.packets,
                       r.erasure, r.trials, r.mean_completion, r.stderr_completion, r.mean_delay, r.stderr_delay,
                       r.mean_rounds, r.mean_solution_size, r.incomplete, r.violations);
  return out;
}

std::vector<ResultRow> parse_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != csv_header()) throw ParseError("CSV header does not match the result schema");
  std::vector<ResultRow> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) f.push_back(cell);
    if (f.size() != 14) throw ParseError("CSV line " + std::to_string(line_no) + ": expected 14 fields");
    try {
      ResultRow r;
      r.scheme = f[0];
      r.algorithm = f[1];
      r.receivers = std::stoull(f[2]);
      r.packets = std::stoull(f[3]);
      r.erasure = std::stod(f[4]);
      r.trials = std::stoull(f[5]);
      r.mean_completion = std::stod(f[6]);
      r.stderr_completion = std::stod(f[7]);
      r.mean_delay = std::stod(f[8]);
      r.stderr_delay = std::stod(f[9]);
      r.mean_rounds = std::stod(f[10]);
      r.mean_solution_size = std::stod(f[11]);
      r.incomplete = std::stoull(f[12]);
      r.violations = std::stoull(f[13]);
      rows.push_back(std::move(r));
    } catch (const std::logic_error&) {
      throw ParseError("CSV line " + std::to_string(line_no) + ": malformed number");
    }
  }
  return rows;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << content;
  if (!out.flush()) throw std::runtime_error("failed writing " + path);
}

void emit_csv(const std::vector<ResultRow>& rows, const std::string& path) { write_text_file(path, format_csv(rows)); }

std::map<std::string, std::string> parse_key_values(std::istream& in) {
  std::map<std::string, std::string> out;
  auto trim = [](std::string s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return std::string{};
    return s.substr(first, s.find_last_not_of(" \t\r") - first + 1);
  };
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos || trim(line.substr(0, eq)).empty())
      throw ParseError("config line " + std::to_string(line_no) + ": expected key=value");
    out[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return out;
}

std::vector<std::size_t> parse_sweep(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    std::vector<long long> parts;
    std::stringstream is(item);
    for (std::string p; std::getline(is, p, ':');) {
      try {
        std::size_t used = 0;
        parts.push_back(std::stoll(p, &used));
        if (used != p.size()) throw std::invalid_argument(p);
      } catch (const std::logic_error&) {
        throw ParseError("malformed sweep item: " + item);
      }
    }
    if (parts.empty() || parts.size() > 3) throw ParseError("malformed sweep item: " + item);
    for (auto v : parts)
      if (v < 1) throw ParseError("sweep values must be positive: " + item);
    if (parts.size() == 1) {
      out.push_back(static_cast<std::size_t>(parts[0]));
      continue;
    }
    const long long step = parts.size() == 3 ? parts[2] : 1;
    if (parts[1] < parts[0]) throw ParseError("sweep range must be ascending: " + item);
    for (long long v = parts[0]; v <= parts[1]; v += step) out.push_back(static_cast<std::size_t>(v));
  }
  if (out.empty()) throw ParseError("empty sweep");
  return out;
}

} // namespace sidnc
