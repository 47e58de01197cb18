#include "sidnc/schemes.hpp"

#include "sidnc/coding.hpp"
#include "sidnc/errors.hpp"
#include "sidnc/graph.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace sidnc {

namespace {

constexpr std::array<std::pair<SchemeKind, std::string_view>, 5> kSchemeNames{{
    {SchemeKind::FullyOnlineS, "fully-online"},
    {SchemeKind::SemiOnlineS, "semi-online"},
    {SchemeKind::Rlnc, "rlnc"},
    {SchemeKind::FullyOnlineG, "gidnc-fully-online"},
    {SchemeKind::SemiOnlineG, "gidnc-semi-online"},
}};

constexpr std::array<std::pair<AlgorithmKind, std::string_view>, 3> kAlgorithmNames{{
    {AlgorithmKind::Optimal, "optimal"},
    {AlgorithmKind::Hybrid, "hybrid"},
    {AlgorithmKind::Heuristic, "heuristic"},
}};

} // namespace

std::string_view to_string(SchemeKind kind) {
  for (const auto& [k, name] : kSchemeNames)
    if (k == kind) return name;
  return "unknown";
}

std::string_view to_string(AlgorithmKind kind) {
  for (const auto& [k, name] : kAlgorithmNames)
    if (k == kind) return name;
  return "unknown";
}

SchemeKind parse_scheme(std::string_view name) {
  for (const auto& [k, n] : kSchemeNames)
    if (n == name) return k;
  throw std::invalid_argument("unknown scheme: " + std::string(name));
}

AlgorithmKind parse_algorithm(std::string_view name) {
  for (const auto& [k, n] : kAlgorithmNames)
    if (n == name) return k;
  throw std::invalid_argument("unknown algorithm: " + std::string(name));
}

std::string SchemeSpec::label() const {
  std::string out(to_string(scheme));
  if (scheme == SchemeKind::FullyOnlineS || scheme == SchemeKind::SemiOnlineS)
    out += "/" + std::string(to_string(algorithm));
  return out;
}

std::size_t TransmissionLog::decode_count() const {
  std::size_t count = 0;
  for (const auto& s : slots) count += s.decoded.size();
  return count;
}

double TransmissionLog::decoding_delay() const { return apdd(decoding_times); }

double TransmissionLog::mean_solution_size() const {
  if (solution_sizes.empty()) return 0.0;
  return static_cast<double>(std::accumulate(solution_sizes.begin(), solution_sizes.end(), std::size_t{0})) /
         static_cast<double>(solution_sizes.size());
}

std::string TransmissionLog::trace() const {
  std::ostringstream out;
  for (const auto& s : slots) {
    out << s.slot << '\t';
    for (std::size_t i = 0; i < s.coding_set.packets().size(); ++i)
      out << (i ? "," : "") << s.coding_set.packets()[i] + 1;
    out << '\t';
    for (std::size_t n = 0; n < s.received.size(); ++n) out << (s.received.test(n) ? '1' : '0');
    out << '\t';
    if (s.decoded.empty()) out << '-';
    for (std::size_t i = 0; i < s.decoded.size(); ++i)
      out << (i ? " " : "") << s.decoded[i].receiver + 1 << ':' << s.decoded[i].packet + 1;
    out << '\n';
  }
  return out.str();
}

Solution compute_solution(const StateFeedbackMatrix& sfm, AlgorithmKind algorithm, SecondaryCriterion criterion,
                          double erasure) {
  if (sfm.complete()) return {};
  const Graph g = build_sidnc_graph(sfm);
  switch (algorithm) {
  case AlgorithmKind::Heuristic:
    return heuristic_solution_search(g);
  case AlgorithmKind::Hybrid:
    return hybrid_solution_search(bron_kerbosch(g), sfm.wanted_packets());
  case AlgorithmKind::Optimal:
    break;
  }
  const SolutionFamily family = optimal_solution_search(bron_kerbosch(g), sfm.wanted_packets());
  std::size_t best = 0;
  double best_score = 0.0;
  for (std::size_t i = 0; i < family.solutions.size(); ++i) {
    const auto& s = family.solutions[i];
    // Higher is better for both branches.
    const double score = criterion == SecondaryCriterion::MaxSuccessProbability
                             ? round_success_probability(sfm, s, erasure).probability
                             : -solution_apdd(sfm, order_by_targets(sfm, s));
    if (i == 0 || score > best_score) {
      best = i;
      best_score = score;
    }
  }
  return family.solutions[best];
}

std::size_t targeted_receivers(const StateFeedbackMatrix& sfm, const CodingSet& coding_set) {
  const IndexSet members = coding_set.to_set(sfm.packets());
  std::size_t count = 0;
  for (std::size_t n = 0; n < sfm.receivers(); ++n)
    if ((members & sfm.wants_set(n)).count() == 1) ++count;
  return count;
}

Solution order_by_targets(const StateFeedbackMatrix& sfm, const Solution& solution) {
  std::vector<std::pair<std::size_t, CodingSet>> keyed;
  keyed.reserve(solution.size());
  for (const auto& m : solution.coding_sets) keyed.emplace_back(targeted_receivers(sfm, m), m);
  std::stable_sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });
  Solution out;
  for (auto& [t, m] : keyed) out.coding_sets.push_back(std::move(m));
  return out;
}

CodingSet most_wanted(const StateFeedbackMatrix& sfm, const Solution& solution) {
  if (solution.coding_sets.empty()) throw std::invalid_argument("empty solution has no most wanted coding set");
  return order_by_targets(sfm, solution).coding_sets.front();
}

namespace {

/// Shared slot bookkeeping: the receivers' true state, the log and the cap.
class Transmission {
public:
  Transmission(const StateFeedbackMatrix& sfm, const SchemeSpec& spec, ErasureChannel& channel,
               const SlotObserver& observer)
      : actual_(sfm), cap_(spec.effective_slot_cap(sfm.packets())), channel_(channel), observer_(observer) {
    log_.initial = sfm;
    log_.decoding_times = DecodingTimes(sfm);
  }

  const StateFeedbackMatrix& actual() const { return actual_; }
  bool done() const { return actual_.complete(); }
  bool at_cap() const { return log_.slots.size() >= cap_; }
  TransmissionLog& log() { return log_; }

  /// Broadcasts one coding set. `strict` rejects non-instantly-decodable sets.
  void send(const CodingSet& coding_set, std::size_t round, bool strict, const StateFeedbackMatrix& sender_view) {
    SlotRecord rec;
    rec.slot = log_.slots.size() + 1;
    rec.round = round;
    rec.coding_set = coding_set;
    rec.received = channel_.broadcast(actual_.receivers());
    rec.decoded = instant_decodes(actual_, coding_set, rec.received);
    actual_ = strict ? apply_reception(actual_, coding_set, rec.received) : actual_.without(rec.decoded);
    commit(std::move(rec), sender_view);
  }

  /// Records a slot whose decode events were determined by the caller.
  void send_with(SlotRecord rec, const StateFeedbackMatrix& sender_view) {
    rec.slot = log_.slots.size() + 1;
    actual_ = actual_.without(rec.decoded);
    commit(std::move(rec), sender_view);
  }

  IndexSet broadcast() { return channel_.broadcast(actual_.receivers()); }

  TransmissionLog finish() {
    log_.cap_exceeded = !done();
    if (log_.complete() && log_.decode_count() != log_.initial.total_wants())
      log_.violations.push_back("decode events do not match the initial want count");
    return std::move(log_);
  }

private:
  void commit(SlotRecord rec, const StateFeedbackMatrix& sender_view) {
    for (const auto& e : rec.decoded) log_.decoding_times.record(e.receiver, e.packet, rec.slot);
    if (!rec.decoded.empty()) log_.completion_time = rec.slot;
    log_.slots.push_back(std::move(rec));
    if (observer_) observer_(log_.slots.back(), sender_view);
  }

  StateFeedbackMatrix actual_;
  std::size_t cap_;
  ErasureChannel& channel_;
  const SlotObserver& observer_;
  TransmissionLog log_;
};

void check_solution(const SchemeSpec& spec, const StateFeedbackMatrix& sfm, const Solution& s, TransmissionLog& log) {
  if (!spec.validate) return;
  for (auto& v : validate_solution(sfm, s).violations) log.violations.push_back(std::move(v));
}

void require_s_idnc(const SchemeSpec& spec, SchemeKind expected) {
  if (spec.scheme != expected) throw std::invalid_argument("scheme runner called with mismatched spec");
}

} // namespace

TransmissionLog run_fully_online(const StateFeedbackMatrix& sfm, const SchemeSpec& spec, ErasureChannel& channel,
                                 const SlotObserver& observer) {
  require_s_idnc(spec, SchemeKind::FullyOnlineS);
  Transmission tx(sfm, spec, channel, observer);
  while (!tx.done() && !tx.at_cap()) {
    const StateFeedbackMatrix view = tx.actual();
    const Solution s =
        compute_solution(view, spec.algorithm, SecondaryCriterion::MinApdd, channel.erasure_probability());
    check_solution(spec, view, s, tx.log());
    tx.log().solution_sizes.push_back(s.size());
    ++tx.log().rounds;
    tx.send(most_wanted(view, s), tx.log().rounds, true, view);
  }
  return tx.finish();
}

TransmissionLog run_semi_online(const StateFeedbackMatrix& sfm, const SchemeSpec& spec, ErasureChannel& channel,
                                const SlotObserver& observer) {
  require_s_idnc(spec, SchemeKind::SemiOnlineS);
  Transmission tx(sfm, spec, channel, observer);
  while (!tx.done() && !tx.at_cap()) {
    // Feedback arrives only here; the whole round is planned from this view.
    const StateFeedbackMatrix view = tx.actual();
    const Solution s = order_by_targets(
        view, compute_solution(view, spec.algorithm, SecondaryCriterion::MaxSuccessProbability,
                               channel.erasure_probability()));
    check_solution(spec, view, s, tx.log());
    tx.log().solution_sizes.push_back(s.size());
    const std::size_t round = ++tx.log().rounds;
    for (const auto& m : s.coding_sets) {
      if (tx.at_cap()) break;
      tx.send(m, round, true, view);
    }
  }
  return tx.finish();
}

TransmissionLog run_rlnc(const StateFeedbackMatrix& sfm, const SchemeSpec& spec, ErasureChannel& channel,
                         const SlotObserver& observer) {
  if (spec.scheme != SchemeKind::Rlnc) throw std::invalid_argument("scheme runner called with mismatched spec");
  Transmission tx(sfm, spec, channel, observer);
  std::vector<std::size_t> outstanding(sfm.receivers());
  for (std::size_t n = 0; n < sfm.receivers(); ++n) outstanding[n] = sfm.wants_set(n).count();
  const CodingSet everything = CodingSet::from_set(sfm.wanted_packets());
  while (!tx.done() && !tx.at_cap()) {
    SlotRecord rec;
    rec.round = tx.log().slots.size() + 1;
    rec.coding_set = everything;
    rec.received = tx.broadcast();
    for (auto n = rec.received.find_first(); n != npos; n = rec.received.find_next(n)) {
      if (outstanding[n] == 0) continue;
      if (--outstanding[n] == 0)
        for (auto k : to_indices(sfm.wants_set(n))) rec.decoded.push_back({n, k});
    }
    tx.send_with(std::move(rec), sfm);
  }
  tx.log().rounds = tx.log().slots.size();
  return tx.finish();
}

namespace {

Solution greedy_gidnc_partition(const StateFeedbackMatrix& sfm) {
  const GIdncGraph gg = build_gidnc_graph(sfm);
  IndexSet remaining = gg.graph.all_vertices();
  Solution out;
  while (remaining.any()) {
    const IndexSet clique = heuristic_max_clique(gg.graph, remaining).to_set(gg.vertices.size());
    out.coding_sets.push_back(gg.packets_of(clique));
    remaining -= clique;
  }
  return out;
}

} // namespace

TransmissionLog run_gidnc(const StateFeedbackMatrix& sfm, const SchemeSpec& spec, ErasureChannel& channel,
                          const SlotObserver& observer) {
  if (spec.scheme != SchemeKind::FullyOnlineG && spec.scheme != SchemeKind::SemiOnlineG)
    throw std::invalid_argument("scheme runner called with mismatched spec");
  Transmission tx(sfm, spec, channel, observer);
  const bool fully = spec.scheme == SchemeKind::FullyOnlineG;
  while (!tx.done() && !tx.at_cap()) {
    const StateFeedbackMatrix view = tx.actual();
    const std::size_t round = ++tx.log().rounds;
    if (fully) {
      const GIdncGraph gg = build_gidnc_graph(view);
      const IndexSet clique = heuristic_max_clique(gg.graph).to_set(gg.vertices.size());
      tx.send(gg.packets_of(clique), round, false, view);
      continue;
    }
    const Solution s = order_by_targets(view, greedy_gidnc_partition(view));
    tx.log().solution_sizes.push_back(s.size());
    for (const auto& m : s.coding_sets) {
      if (tx.at_cap()) break;
      tx.send(m, round, false, view);
    }
  }
  return tx.finish();
}

TransmissionLog run_scheme(const StateFeedbackMatrix& sfm, const SchemeSpec& spec, ErasureChannel& channel,
                           const SlotObserver& observer) {
  switch (spec.scheme) {
  case SchemeKind::FullyOnlineS:
    return run_fully_online(sfm, spec, channel, observer);
  case SchemeKind::SemiOnlineS:
    return run_semi_online(sfm, spec, channel, observer);
  case SchemeKind::Rlnc:
    return run_rlnc(sfm, spec, channel, observer);
  case SchemeKind::FullyOnlineG:
  case SchemeKind::SemiOnlineG:
    return run_gidnc(sfm, spec, channel, observer);
  }
  throw std::invalid_argument("unknown scheme kind");
}

} // namespace sidnc
