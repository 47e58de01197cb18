#include "sidnc/coding_set.hpp"

#include <algorithm>
#include <stdexcept>

namespace sidnc {

CodingSet::CodingSet(std::initializer_list<std::size_t> packets)
    : CodingSet(std::vector<std::size_t>(packets)) {}

CodingSet::CodingSet(std::vector<std::size_t> packets) : packets_(std::move(packets)) {
  std::sort(packets_.begin(), packets_.end());
  packets_.erase(std::unique(packets_.begin(), packets_.end()), packets_.end());
}

CodingSet CodingSet::from_set(const IndexSet& packets) {
  return CodingSet(to_indices(packets));
}

bool CodingSet::contains(std::size_t packet) const {
  return std::binary_search(packets_.begin(), packets_.end(), packet);
}

IndexSet CodingSet::to_set(std::size_t packet_count) const {
  IndexSet s(packet_count);
  for (auto k : packets_) {
    if (k >= packet_count) throw std::out_of_range("coding set packet index out of range");
    s.set(k);
  }
  return s;
}

std::string CodingSet::label() const {
  std::string out = "(";
  for (std::size_t i = 0; i < packets_.size(); ++i) {
    if (i) out += ',';
    out += 'p' + std::to_string(packets_[i] + 1);
  }
  return out + ')';
}

std::vector<std::size_t> Solution::diversity(std::size_t packet_count) const {
  std::vector<std::size_t> d(packet_count, 0);
  for (const auto& m : coding_sets)
    for (auto k : m.packets()) {
      if (k >= packet_count) throw std::out_of_range("solution packet index out of range");
      ++d[k];
    }
  return d;
}

IndexSet Solution::covered(std::size_t packet_count) const {
  IndexSet s(packet_count);
  for (const auto& m : coding_sets) s |= m.to_set(packet_count);
  return s;
}

Solution Solution::canonical() const {
  Solution out = *this;
  std::sort(out.coding_sets.begin(), out.coding_sets.end());
  return out;
}

std::string Solution::label() const {
  std::string out = "{";
  for (std::size_t i = 0; i < coding_sets.size(); ++i) {
    if (i) out += ',';
    out += coding_sets[i].label();
  }
  return out + '}';
}

} // namespace sidnc
