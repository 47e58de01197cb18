#pragma once

#include <boost/dynamic_bitset.hpp>

#include <cstddef>
#include <initializer_list>
#include <vector>

namespace sidnc {

/// Fixed-universe set of small indices (packets, receivers or graph vertices).
using IndexSet = boost::dynamic_bitset<>;

inline constexpr std::size_t npos = IndexSet::npos;

inline std::vector<std::size_t> to_indices(const IndexSet& s) {
  std::vector<std::size_t> out;
  out.reserve(s.count());
  for (auto i = s.find_first(); i != npos; i = s.find_next(i)) out.push_back(i);
  return out;
}

inline IndexSet make_index_set(std::size_t universe, const std::vector<std::size_t>& members) {
  IndexSet s(universe);
  for (auto m : members) s.set(m);
  return s;
}

inline IndexSet full_index_set(std::size_t universe) {
  IndexSet s(universe);
  s.set();
  return s;
}

} // namespace sidnc
