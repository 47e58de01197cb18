#pragma once

#include "sidnc/coding_set.hpp"
#include "sidnc/index_set.hpp"

#include <cstdint>
#include <iosfwd>
#include <random>
#include <string>
#include <vector>

namespace sidnc {

struct BroadcastConfig {
  std::size_t packets = 15;   // K
  std::size_t receivers = 10; // N
  double erasure = 0.2;       // Pe
  std::uint64_t seed = 1;
  std::size_t trials = 1000;

  /// Throws InvalidConfig unless K >= 1, N >= 1, 0 <= Pe < 1 and trials >= 1.
  void validate() const;
};

/// Receiver-side decode of one packet.
struct DecodeEvent {
  std::size_t receiver;
  std::size_t packet;
  bool operator==(const DecodeEvent&) const = default;
};

/// N x K binary matrix; entry (n, k) is set while receiver n still wants packet k.
///
/// Values are immutable: every update returns a new matrix. Wants sets (rows)
/// and Target sets (columns) are both materialised on construction.
class StateFeedbackMatrix {
public:
  StateFeedbackMatrix() = default;
  /// All-zero matrix.
  StateFeedbackMatrix(std::size_t receivers, std::size_t packets);
  /// One Wants set per receiver; every set must span `packets` bits.
  StateFeedbackMatrix(std::vector<IndexSet> wants, std::size_t packets);

  static StateFeedbackMatrix from_wants(std::size_t packets,
                                        const std::vector<std::vector<std::size_t>>& wants);

  std::size_t packets() const { return packets_; }
  std::size_t receivers() const { return wants_.size(); }

  bool wants(std::size_t receiver, std::size_t packet) const { return wants_[receiver].test(packet); }
  const IndexSet& wants_set(std::size_t receiver) const { return wants_[receiver]; }
  const IndexSet& target_set(std::size_t packet) const { return targets_[packet]; }
  std::size_t target_size(std::size_t packet) const { return targets_[packet].count(); }
  /// T: number of 1-entries.
  std::size_t total_wants() const { return total_; }
  /// Packets with a nonempty Target set.
  IndexSet wanted_packets() const;
  /// Largest Wants set size.
  std::size_t max_wants() const;
  /// True when no receiver wants anything.
  bool complete() const { return total_ == 0; }

  /// Copy with the given entries cleared.
  StateFeedbackMatrix without(const std::vector<DecodeEvent>& decoded) const;

  bool operator==(const StateFeedbackMatrix& other) const {
    return packets_ == other.packets_ && wants_ == other.wants_;
  }

private:
  std::size_t packets_ = 0;
  std::size_t total_ = 0;
  std::vector<IndexSet> wants_;
  std::vector<IndexSet> targets_;
};

/// Derives a per-trial engine seed from the master seed, the trial index and
/// a stream tag (0 = systematic phase, 1 = coded phase). SplitMix64 finaliser
/// applied to each input in turn.
std::uint64_t derive_stream_seed(std::uint64_t master_seed, std::uint64_t trial,
                                 std::uint64_t stream = 0);

/// Independent erasures with a fixed probability, driven by a seeded
/// mt19937_64. Uniforms are the top 53 bits of one engine output.
class ErasureChannel {
public:
  ErasureChannel(double erasure, std::uint64_t master_seed, std::uint64_t trial,
                 std::uint64_t stream = 0);

  double erasure_probability() const { return erasure_; }

  /// One Bernoulli(Pe) draw.
  bool erased();
  /// Receivers (0..N-1, drawn in ascending order) that got the transmission.
  IndexSet broadcast(std::size_t receivers);

private:
  double erasure_;
  std::mt19937_64 engine_;
};

/// Uncoded broadcast of each packet once: K*N draws, packet-major then
/// receiver-ascending.
StateFeedbackMatrix systematic_phase(const BroadcastConfig& config, ErasureChannel& channel);

/// Receivers with exactly one wanted packet in `coding_set` that are in
/// `received` decode it. Receivers with two or more wanted members are
/// skipped (they discard the packet).
std::vector<DecodeEvent> instant_decodes(const StateFeedbackMatrix& sfm, const CodingSet& coding_set,
                                         const IndexSet& received);

/// Strict S-IDNC reception; throws ConflictingCodingSet when some receiver
/// wants two packets of `coding_set`.
StateFeedbackMatrix apply_reception(const StateFeedbackMatrix& sfm, const CodingSet& coding_set,
                                    const IndexSet& received);

/// Five receivers, six packets:
/// R1={p1,p5,p6}, R2={p2,p6}, R3={p3,p4,p5}, R4={p4,p6}, R5={p3,p5}.
StateFeedbackMatrix fig1_sfm();

/// Text format: "K N" then N lines of K space-separated 0/1 digits.
StateFeedbackMatrix parse_sfm(std::istream& in);
StateFeedbackMatrix load_sfm(const std::string& path);
std::string format_sfm(const StateFeedbackMatrix& sfm);

} // namespace sidnc
