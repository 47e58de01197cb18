#pragma once

#include "sidnc/index_set.hpp"

#include <compare>
#include <cstddef>
#include <string>
#include <vector>

namespace sidnc {

/// A set of packet indices XOR-ed into one coded transmission.
///
/// Members are kept sorted and unique, so the natural ordering of two
/// coding sets is the lexicographic ordering of their sorted packet lists.
class CodingSet {
public:
  CodingSet() = default;
  CodingSet(std::initializer_list<std::size_t> packets);
  explicit CodingSet(std::vector<std::size_t> packets);
  static CodingSet from_set(const IndexSet& packets);

  const std::vector<std::size_t>& packets() const { return packets_; }
  std::size_t size() const { return packets_.size(); }
  bool empty() const { return packets_.empty(); }
  bool contains(std::size_t packet) const;
  IndexSet to_set(std::size_t packet_count) const;

  /// "(p1,p3)" with 1-based packet labels.
  std::string label() const;

  auto operator<=>(const CodingSet&) const = default;
  bool operator==(const CodingSet&) const = default;

private:
  std::vector<std::size_t> packets_;
};

/// Ordered family of coding sets; the order is the transmission order.
struct Solution {
  std::vector<CodingSet> coding_sets;

  std::size_t size() const { return coding_sets.size(); }
  /// Number of coding sets containing each packet.
  std::vector<std::size_t> diversity(std::size_t packet_count) const;
  IndexSet covered(std::size_t packet_count) const;
  /// Same members sorted lexicographically; used to compare solutions as sets.
  Solution canonical() const;
  std::string label() const;

  bool operator==(const Solution&) const = default;
};

} // namespace sidnc
