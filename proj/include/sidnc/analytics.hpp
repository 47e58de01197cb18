#pragma once

#include "sidnc/coding.hpp"
#include "sidnc/coding_set.hpp"
#include "sidnc/graph.hpp"
#include "sidnc/packet_state.hpp"

#include <cstddef>
#include <vector>

namespace sidnc {

/// Decoding slot u(n, k) for every 1-entry of a source matrix. Slot 0 means
/// "not decoded yet"; recorded slots start at 1.
class DecodingTimes {
public:
  DecodingTimes() = default;
  explicit DecodingTimes(const StateFeedbackMatrix& source);

  void record(std::size_t receiver, std::size_t packet, std::size_t slot);
  std::size_t at(std::size_t receiver, std::size_t packet) const;
  bool in_domain(std::size_t receiver, std::size_t packet) const;
  /// Every domain entry has a slot.
  bool complete() const { return recorded_ == total_; }
  std::size_t domain_size() const { return total_; }
  std::size_t recorded() const { return recorded_; }
  /// Sum of recorded slots.
  std::size_t slot_sum() const { return sum_; }

private:
  std::size_t packets_ = 0;
  std::size_t total_ = 0;
  std::size_t recorded_ = 0;
  std::size_t sum_ = 0;
  std::vector<IndexSet> domain_;
  std::vector<std::size_t> slots_;
};

/// Mean decoding slot over the domain. Throws EmptyDomain for T = 0 and
/// std::invalid_argument if some wanted entry was never decoded.
double apdd(const DecodingTimes& times);

/// Erasure-free decoding times: u(n, k) is the 1-based index of the first
/// coding set containing k.
DecodingTimes solution_decoding_times(const StateFeedbackMatrix& sfm, const Solution& solution);

/// (1/T) * sum_u T(u) * u, where T(u) counts the wants first served by set u.
/// Throws InvalidSolution unless the solution is valid for `sfm`.
double solution_apdd(const StateFeedbackMatrix& sfm, const Solution& solution);

std::size_t geller_lower_bound(std::size_t packets, std::size_t edges);
std::size_t staircase_upper_bound(std::size_t packets, std::size_t edges);
/// Max degree + 1 of the complement graph.
std::size_t degree_upper_bound(const Graph& complement_graph);
/// Exact clique number of the complement graph.
std::size_t clique_lower_bound(const Graph& complement_graph, std::size_t max_cliques = kDefaultCliqueCap);

/// Probability that two packets conflict: 1 - (1 - Pe^2)^N.
double conflict_probability(std::size_t receivers, double erasure);

/// Random-graph throughput model with o(1) = 0 and natural logarithms.
struct ThroughputModel {
  std::size_t packets;
  std::size_t receivers;
  double erasure;

  double conflict_probability() const;
  /// c(K, Pe) = K / (2 ln K) * ln(1 / (1 - Pe^2)).
  double slope() const;
  /// Predicted chromatic number of the complement: c(K, Pe) * N.
  double chromatic_number() const;
};

double expected_min_completion(const ThroughputModel& model);
double expected_edge_count(std::size_t packets, std::size_t receivers, double erasure);

struct RoundSuccess {
  double probability = 1.0;
  std::vector<std::size_t> diversity;
};

/// prod_k (1 - Pe^{d_k})^{T_k}. Throws InvalidSolution if a wanted packet is
/// not covered.
RoundSuccess round_success_probability(const StateFeedbackMatrix& sfm, const Solution& solution, double erasure);

/// (U + 1) / 2.
double apdd_upper_bound(std::size_t min_completion);

struct SolutionScore {
  double success_probability = 0.0;
  double apdd = 0.0;
};

/// P_s and erasure-free APDD (in the given set order) for every solution.
std::vector<SolutionScore> score_solutions(const StateFeedbackMatrix& sfm, const SolutionFamily& family,
                                           double erasure);

} // namespace sidnc
