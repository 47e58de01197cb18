#include "sidnc/analytics.hpp"

#include "sidnc/errors.hpp"

#include <cmath>
#include <stdexcept>

namespace sidnc {

DecodingTimes::DecodingTimes(const StateFeedbackMatrix& source)
    : packets_(source.packets()),
      total_(source.total_wants()),
      slots_(source.receivers() * source.packets(), 0) {
  domain_.reserve(source.receivers());
  for (std::size_t n = 0; n < source.receivers(); ++n) domain_.push_back(source.wants_set(n));
}

bool DecodingTimes::in_domain(std::size_t receiver, std::size_t packet) const {
  return receiver < domain_.size() && packet < packets_ && domain_[receiver].test(packet);
}

void DecodingTimes::record(std::size_t receiver, std::size_t packet, std::size_t slot) {
  if (!in_domain(receiver, packet)) throw std::invalid_argument("decode outside the wanted entries");
  if (slot == 0) throw std::invalid_argument("decoding slots start at 1");
  auto& cell = slots_[receiver * packets_ + packet];
  if (cell != 0) throw std::logic_error("packet decoded twice by the same receiver");
  cell = slot;
  ++recorded_;
  sum_ += slot;
}

std::size_t DecodingTimes::at(std::size_t receiver, std::size_t packet) const {
  if (!in_domain(receiver, packet)) throw std::out_of_range("entry outside the wanted entries");
  return slots_[receiver * packets_ + packet];
}

double apdd(const DecodingTimes& times) {
  if (times.domain_size() == 0) throw EmptyDomain("no wanted packets: decoding delay undefined");
  if (!times.complete()) throw std::invalid_argument("decoding times are incomplete");
  return static_cast<double>(times.slot_sum()) / static_cast<double>(times.domain_size());
}

namespace {

void require_valid(const StateFeedbackMatrix& sfm, const Solution& solution) {
  const auto report = validate_solution(sfm, solution);
  if (!report.ok()) throw InvalidSolution(report.violations.front());
}

} // namespace

DecodingTimes solution_decoding_times(const StateFeedbackMatrix& sfm, const Solution& solution) {
  require_valid(sfm, solution);
  DecodingTimes times(sfm);
  IndexSet served(sfm.packets());
  for (std::size_t u = 0; u < solution.size(); ++u)
    for (auto k : solution.coding_sets[u].packets()) {
      if (served.test(k)) continue;
      served.set(k);
      const auto& targets = sfm.target_set(k);
      for (auto n = targets.find_first(); n != npos; n = targets.find_next(n)) times.record(n, k, u + 1);
    }
  return times;
}

double solution_apdd(const StateFeedbackMatrix& sfm, const Solution& solution) {
  require_valid(sfm, solution);
  if (sfm.total_wants() == 0) throw EmptyDomain("no wanted packets: decoding delay undefined");
  IndexSet served(sfm.packets());
  double weighted = 0.0;
  for (std::size_t u = 0; u < solution.size(); ++u) {
    const IndexSet fresh = solution.coding_sets[u].to_set(sfm.packets()) - served;
    std::size_t receivers_served = 0;
    for (auto k = fresh.find_first(); k != npos; k = fresh.find_next(k)) receivers_served += sfm.target_size(k);
    served |= fresh;
    weighted += static_cast<double>(receivers_served) * static_cast<double>(u + 1);
  }
  return weighted / static_cast<double>(sfm.total_wants());
}

namespace {

void require_edge_range(std::size_t packets, std::size_t edges) {
  if (packets < 1) throw std::invalid_argument("packet count must be at least 1");
  if (edges > packets * (packets - 1) / 2) throw std::invalid_argument("edge count exceeds K(K-1)/2");
}

} // namespace

std::size_t geller_lower_bound(std::size_t packets, std::size_t edges) {
  require_edge_range(packets, edges);
  const std::size_t num = packets * packets;
  const std::size_t den = packets + 2 * edges;
  return (num + den - 1) / den;
}

std::size_t staircase_upper_bound(std::size_t packets, std::size_t edges) {
  require_edge_range(packets, edges);
  if (edges == 0) return packets;
  // Smallest j with edges <= jK - j(j+1)/2.
  std::size_t j = 1;
  while (edges > j * packets - j * (j + 1) / 2) ++j;
  return packets - j;
}

std::size_t degree_upper_bound(const Graph& complement_graph) {
  if (complement_graph.vertex_count() == 0) return 0;
  return complement_graph.max_degree() + 1;
}

std::size_t clique_lower_bound(const Graph& complement_graph, std::size_t max_cliques) {
  std::size_t best = 0;
  for (const auto& c : bron_kerbosch(complement_graph, max_cliques).cliques) best = std::max(best, c.size());
  return best;
}

double conflict_probability(std::size_t receivers, double erasure) {
  if (!(erasure >= 0.0 && erasure <= 1.0)) throw std::invalid_argument("erasure probability outside [0, 1]");
  return 1.0 - std::pow(1.0 - erasure * erasure, static_cast<double>(receivers));
}

double ThroughputModel::conflict_probability() const { return sidnc::conflict_probability(receivers, erasure); }

double ThroughputModel::slope() const {
  if (packets < 2) throw std::invalid_argument("throughput model needs K >= 2");
  const double k = static_cast<double>(packets);
  return k / (2.0 * std::log(k)) * -std::log1p(-erasure * erasure);
}

double ThroughputModel::chromatic_number() const { return slope() * static_cast<double>(receivers); }

double expected_min_completion(const ThroughputModel& model) { return model.chromatic_number(); }

double expected_edge_count(std::size_t packets, std::size_t receivers, double erasure) {
  const double pairs = static_cast<double>(packets) * static_cast<double>(packets - (packets ? 1 : 0)) / 2.0;
  return pairs * conflict_probability(receivers, erasure);
}

RoundSuccess round_success_probability(const StateFeedbackMatrix& sfm, const Solution& solution, double erasure) {
  RoundSuccess out;
  out.diversity = solution.diversity(sfm.packets());
  double log_p = 0.0;
  for (std::size_t k = 0; k < sfm.packets(); ++k) {
    const auto t = sfm.target_size(k);
    if (t == 0) continue;
    if (out.diversity[k] == 0)
      throw InvalidSolution("wanted packet p" + std::to_string(k + 1) + " is not covered");
    log_p += static_cast<double>(t) * std::log1p(-std::pow(erasure, static_cast<double>(out.diversity[k])));
  }
  out.probability = std::exp(log_p);
  return out;
}

double apdd_upper_bound(std::size_t min_completion) {
  if (min_completion < 1) throw std::invalid_argument("minimum completion time must be at least 1");
  return (static_cast<double>(min_completion) + 1.0) / 2.0;
}

std::vector<SolutionScore> score_solutions(const StateFeedbackMatrix& sfm, const SolutionFamily& family,
                                           double erasure) {
  std::vector<SolutionScore> out;
  out.reserve(family.solutions.size());
  for (const auto& s : family.solutions)
    out.push_back({round_success_probability(sfm, s, erasure).probability, solution_apdd(sfm, s)});
  return out;
}

} // namespace sidnc
