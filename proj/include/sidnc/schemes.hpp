#pragma once

#include "sidnc/analytics.hpp"
#include "sidnc/coding_set.hpp"
#include "sidnc/packet_state.hpp"

#include <cstddef>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace sidnc {

enum class SchemeKind { FullyOnlineS, SemiOnlineS, Rlnc, FullyOnlineG, SemiOnlineG };
enum class AlgorithmKind { Optimal, Hybrid, Heuristic };

std::string_view to_string(SchemeKind kind);
std::string_view to_string(AlgorithmKind kind);
/// Accepts the names produced by to_string; throws std::invalid_argument otherwise.
SchemeKind parse_scheme(std::string_view name);
AlgorithmKind parse_algorithm(std::string_view name);

struct SchemeSpec {
  SchemeKind scheme = SchemeKind::FullyOnlineS;
  /// Ignored by RLNC and both G-IDNC baselines.
  AlgorithmKind algorithm = AlgorithmKind::Optimal;
  /// 0 selects the default of 50 * K slots.
  std::size_t slot_cap = 0;
  /// Validate every computed S-IDNC solution and record violations in the log.
  bool validate = false;

  std::size_t effective_slot_cap(std::size_t packets) const { return slot_cap ? slot_cap : 50 * packets; }
  std::string label() const;
};

struct SlotRecord {
  std::size_t slot = 0;  // 1-based within the coded phase
  std::size_t round = 0; // 1-based; equals slot for fully-online schemes
  CodingSet coding_set;
  IndexSet received;
  std::vector<DecodeEvent> decoded;
};

struct TransmissionLog {
  StateFeedbackMatrix initial;
  std::vector<SlotRecord> slots;
  DecodingTimes decoding_times;
  /// U_T: slot at which the last outstanding want was cleared.
  std::size_t completion_time = 0;
  std::size_t rounds = 0;
  /// Size of every S-IDNC solution (or G-IDNC partition) the sender computed.
  std::vector<std::size_t> solution_sizes;
  bool cap_exceeded = false;
  std::vector<std::string> violations;

  bool complete() const { return decoding_times.complete(); }
  std::size_t decode_count() const;
  /// D_T; throws std::invalid_argument when incomplete and EmptyDomain when T = 0.
  double decoding_delay() const;
  double mean_solution_size() const;
  /// One tab-separated line per slot: slot, 1-based packet list, reception
  /// bits in receiver order, "n:k" decode events (1-based, "-" when none).
  std::string trace() const;
};

/// Called after every slot with the sender's view of the receivers' state.
using SlotObserver = std::function<void(const SlotRecord&, const StateFeedbackMatrix& sender_view)>;

enum class SecondaryCriterion { MinApdd, MaxSuccessProbability };

/// S_m for the given matrix. For the optimal algorithm ties among minimum
/// solutions go to the secondary criterion, then to canonical order.
Solution compute_solution(const StateFeedbackMatrix& sfm, AlgorithmKind algorithm, SecondaryCriterion criterion,
                          double erasure);

/// Receivers for which `coding_set` is instantly decodable under `sfm`.
std::size_t targeted_receivers(const StateFeedbackMatrix& sfm, const CodingSet& coding_set);
/// Stable sort by descending targeted receivers, ties in lexicographic order.
Solution order_by_targets(const StateFeedbackMatrix& sfm, const Solution& solution);
/// Member of `solution` with the most targeted receivers, lexicographic ties.
CodingSet most_wanted(const StateFeedbackMatrix& sfm, const Solution& solution);

TransmissionLog run_fully_online(const StateFeedbackMatrix& sfm, const SchemeSpec& spec, ErasureChannel& channel,
                                 const SlotObserver& observer = {});
TransmissionLog run_semi_online(const StateFeedbackMatrix& sfm, const SchemeSpec& spec, ErasureChannel& channel,
                                const SlotObserver& observer = {});
TransmissionLog run_rlnc(const StateFeedbackMatrix& sfm, const SchemeSpec& spec, ErasureChannel& channel,
                         const SlotObserver& observer = {});
/// Fully- or semi-online by `spec.scheme`. Degree-greedy clique selection on
/// the G-IDNC graph; an approximation of published G-IDNC heuristics.
TransmissionLog run_gidnc(const StateFeedbackMatrix& sfm, const SchemeSpec& spec, ErasureChannel& channel,
                          const SlotObserver& observer = {});
TransmissionLog run_scheme(const StateFeedbackMatrix& sfm, const SchemeSpec& spec, ErasureChannel& channel,
                           const SlotObserver& observer = {});

} // namespace sidnc
