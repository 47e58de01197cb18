#include "sidnc/coding.hpp"

#include "sidnc/errors.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <set>
#include <stdexcept>

namespace sidnc {

namespace {

class BronKerbosch {
public:
  BronKerbosch(const Graph& g, std::size_t cap) : g_(g), cap_(cap) {}

  std::vector<CodingSet> run() {
    const std::size_t n = g_.vertex_count();
    if (n == 0) return {};
    IndexSet r(n);
    IndexSet x(n);
    expand(r, g_.all_vertices(), x);
    std::sort(out_.begin(), out_.end());
    return std::move(out_);
  }

private:
  void expand(IndexSet& r, IndexSet p, IndexSet x) {
    if (p.none()) {
      if (x.none()) {
        if (out_.size() >= cap_)
          throw SizeLimitExceeded("maximal clique count exceeds cap of " + std::to_string(cap_));
        out_.push_back(CodingSet::from_set(r));
      }
      return;
    }
    // Pivot maximising |P ∩ N(u)| over P ∪ X.
    const IndexSet px = p | x;
    std::size_t pivot = npos;
    std::size_t best = 0;
    for (auto u = px.find_first(); u != npos; u = px.find_next(u)) {
      const auto c = (p & g_.neighbors(u)).count();
      if (pivot == npos || c > best) {
        pivot = u;
        best = c;
      }
    }
    const IndexSet branch = p - g_.neighbors(pivot);
    for (auto v = branch.find_first(); v != npos; v = branch.find_next(v)) {
      r.set(v);
      expand(r, p & g_.neighbors(v), x & g_.neighbors(v));
      r.reset(v);
      p.reset(v);
      x.set(v);
    }
  }

  const Graph& g_;
  std::size_t cap_;
  std::vector<CodingSet> out_;
};

std::vector<IndexSet> clique_sets(const MaximalCliqueFamily& family) {
  std::vector<IndexSet> sets;
  sets.reserve(family.cliques.size());
  for (const auto& c : family.cliques) sets.push_back(c.to_set(family.vertex_count));
  return sets;
}

void require_coverable(const std::vector<IndexSet>& sets, const IndexSet& wanted) {
  IndexSet reach(wanted.size());
  for (const auto& s : sets) reach |= s;
  if (!wanted.is_subset_of(reach))
    throw std::invalid_argument("clique family does not cover every wanted packet");
}

} // namespace

MaximalCliqueFamily bron_kerbosch(const Graph& g, std::size_t max_cliques) {
  return {g.vertex_count(), BronKerbosch(g, max_cliques).run()};
}

namespace {

/// The branching tree walked depth-first, one depth bound at a time.
/// Every partial cover branches on the open packet of least diversity (lowest
/// index on ties) exactly as the level-by-level formulation does, so the
/// covers found at the first feasible depth are the same family. Subtrees
/// that cannot finish within the bound are cut: open packets that share no
/// clique pairwise each need a clique of their own.
class CoverSearch {
public:
  CoverSearch(const std::vector<IndexSet>& sets, const IndexSet& wanted, std::size_t cap)
      : sets_(sets), wanted_(wanted), cap_(cap), diversity_(wanted.size(), 0), together_(wanted.size()) {
    for (std::size_t k = 0; k < wanted.size(); ++k) together_[k] = IndexSet(wanted.size());
    for (const auto& c : sets)
      for (auto k = c.find_first(); k != npos; k = c.find_next(k)) {
        ++diversity_[k];
        together_[k] |= c;
      }
    for (auto k = wanted.find_first(); k != npos; k = wanted.find_next(k)) by_diversity_.push_back(k);
    std::stable_sort(by_diversity_.begin(), by_diversity_.end(),
                     [&](auto a, auto b) { return diversity_[a] < diversity_[b]; });
  }

  std::set<std::vector<std::size_t>> run() {
    for (std::size_t bound = lower_bound(wanted_);; ++bound) {
      seen_.clear();
      found_.clear();
      std::vector<std::size_t> partial;
      walk(partial, IndexSet(wanted_.size()), bound);
      if (!found_.empty()) return std::move(found_);
    }
  }

private:
  std::size_t lower_bound(const IndexSet& open) const {
    IndexSet blocked(open.size());
    std::size_t count = 0;
    for (auto k : by_diversity_) {
      if (!open.test(k) || blocked.test(k)) continue;
      ++count;
      blocked |= together_[k];
    }
    return count;
  }

  void walk(std::vector<std::size_t>& partial, const IndexSet& covered, std::size_t bound) {
    const IndexSet open = wanted_ - covered;
    if (open.none()) {
      found_.insert(partial);
      return;
    }
    if (partial.size() + lower_bound(open) > bound) return;
    if (!seen_.insert(partial).second) return;
    if (seen_.size() > cap_)
      throw BranchLimitExceeded("live branch count exceeds cap of " + std::to_string(cap_));

    std::size_t pick = npos;
    for (auto k = open.find_first(); k != npos; k = open.find_next(k))
      if (pick == npos || diversity_[k] < diversity_[pick]) pick = k;
    for (std::size_t i = 0; i < sets_.size(); ++i) {
      if (!sets_[i].test(pick)) continue;
      auto branch = partial;
      branch.insert(std::upper_bound(branch.begin(), branch.end(), i), i);
      walk(branch, covered | sets_[i], bound);
    }
  }

  const std::vector<IndexSet>& sets_;
  const IndexSet& wanted_;
  std::size_t cap_;
  std::vector<std::size_t> diversity_;
  std::vector<IndexSet> together_;
  std::vector<std::size_t> by_diversity_;
  std::set<std::vector<std::size_t>> seen_;
  std::set<std::vector<std::size_t>> found_;
};

} // namespace

SolutionFamily optimal_solution_search(const MaximalCliqueFamily& family, const IndexSet& wanted,
                                       std::size_t max_branches) {
  if (wanted.size() != family.vertex_count)
    throw std::invalid_argument("wanted-packet set width does not match the clique family");
  const auto sets = clique_sets(family);
  require_coverable(sets, wanted);

  SolutionFamily out;
  for (const auto& s : CoverSearch(sets, wanted, max_branches).run()) {
    Solution sol;
    for (auto i : s) sol.coding_sets.push_back(family.cliques[i]);
    out.solutions.push_back(std::move(sol));
  }
  return out;
}

Solution hybrid_solution_search(const MaximalCliqueFamily& family, const IndexSet& wanted) {
  if (wanted.size() != family.vertex_count)
    throw std::invalid_argument("wanted-packet set width does not match the clique family");
  const auto sets = clique_sets(family);
  require_coverable(sets, wanted);

  Solution out;
  IndexSet open = wanted;
  while (open.any()) {
    std::size_t best = 0;
    std::size_t best_gain = 0;
    for (std::size_t i = 0; i < sets.size(); ++i) {
      const auto gain = (sets[i] & open).count();
      if (gain > best_gain) {
        best = i;
        best_gain = gain;
      }
    }
    out.coding_sets.push_back(family.cliques[best]);
    open -= sets[best];
  }
  return out;
}

CodingSet heuristic_max_clique(const Graph& g, const IndexSet& candidates, CliqueSearchStats* stats) {
  IndexSet open = candidates;
  IndexSet keep(g.vertex_count());
  while (open.any()) {
    std::size_t best = npos;
    std::size_t best_inner = 0;
    std::size_t best_outer = 0;
    for (auto v = open.find_first(); v != npos; v = open.find_next(v)) {
      if (stats) ++stats->degree_evaluations;
      const auto inner = (g.neighbors(v) & open).count();
      const auto outer = g.degree(v);
      if (best == npos || inner > best_inner || (inner == best_inner && outer < best_outer)) {
        best = v;
        best_inner = inner;
        best_outer = outer;
      }
    }
    keep.set(best);
    open &= g.neighbors(best);
  }
  return CodingSet::from_set(keep);
}

CodingSet heuristic_max_clique(const Graph& g, CliqueSearchStats* stats) {
  return heuristic_max_clique(g, g.all_vertices(), stats);
}

Solution heuristic_solution_search(const Graph& g) {
  const std::size_t n = g.vertex_count();
  IndexSet covered(n);
  IndexSet working = g.all_vertices();
  Solution out;
  while (working.any()) {
    const CodingSet clique = heuristic_max_clique(g, working);
    IndexSet widen = covered;
    for (auto v : clique.packets()) widen &= g.neighbors(v);
    IndexSet members = clique.to_set(n);
    if (widen.any()) members |= heuristic_max_clique(g, widen).to_set(n);
    const IndexSet fresh = clique.to_set(n);
    covered |= fresh;
    working -= fresh;
    out.coding_sets.push_back(CodingSet::from_set(members));
  }
  return out;
}

namespace {

class DsaturBranchAndBound {
public:
  explicit DsaturBranchAndBound(const Graph& g)
      : g_(g), color_(g.vertex_count(), kUncolored), best_(g.vertex_count()) {}

  std::size_t solve() {
    if (g_.vertex_count() == 0) return 0;
    search(0, 0);
    return best_;
  }

private:
  static constexpr std::size_t kUncolored = std::numeric_limits<std::size_t>::max();

  std::uint64_t neighbour_colors(std::size_t v) const {
    std::uint64_t mask = 0;
    const auto& nb = g_.neighbors(v);
    for (auto u = nb.find_first(); u != npos; u = nb.find_next(u))
      if (color_[u] != kUncolored) mask |= std::uint64_t{1} << color_[u];
    return mask;
  }

  std::size_t next_vertex() const {
    std::size_t pick = npos;
    int best_sat = -1;
    std::size_t best_deg = 0;
    for (std::size_t v = 0; v < color_.size(); ++v) {
      if (color_[v] != kUncolored) continue;
      const int sat = __builtin_popcountll(neighbour_colors(v));
      const auto deg = g_.degree(v);
      if (sat > best_sat || (sat == best_sat && deg > best_deg)) {
        pick = v;
        best_sat = sat;
        best_deg = deg;
      }
    }
    return pick;
  }

  void search(std::size_t colored, std::size_t used) {
    if (used >= best_) return;
    if (colored == color_.size()) {
      best_ = used;
      return;
    }
    const std::size_t v = next_vertex();
    const std::uint64_t blocked = neighbour_colors(v);
    for (std::size_t c = 0; c < used; ++c) {
      if (blocked & (std::uint64_t{1} << c)) continue;
      color_[v] = c;
      search(colored + 1, used);
    }
    color_[v] = used;
    search(colored + 1, used + 1);
    color_[v] = kUncolored;
  }

  const Graph& g_;
  std::vector<std::size_t> color_;
  std::size_t best_;
};

} // namespace

std::size_t exact_chromatic_number(const Graph& g, std::size_t max_vertices) {
  if (g.vertex_count() > max_vertices || g.vertex_count() > 64)
    throw SizeLimitExceeded("exact colouring limited to " + std::to_string(std::min<std::size_t>(max_vertices, 64)) +
                            " vertices, got " + std::to_string(g.vertex_count()));
  return DsaturBranchAndBound(g).solve();
}

std::size_t min_clique_partition_size(const Graph& g, std::size_t max_vertices) {
  return exact_chromatic_number(g.complement(), max_vertices);
}

ApddOptimum brute_force_min_apdd(const StateFeedbackMatrix& sfm, std::size_t max_wanted_packets) {
  if (sfm.total_wants() == 0) throw EmptyDomain("no wanted packets: decoding delay undefined");
  const auto wanted = to_indices(sfm.wanted_packets());
  const std::size_t m = wanted.size();
  if (m > max_wanted_packets || m > 20)
    throw SizeLimitExceeded("minimum-delay oracle limited to " + std::to_string(max_wanted_packets) +
                            " wanted packets, got " + std::to_string(m));

  const Graph g = build_sidnc_graph(sfm);
  const std::uint32_t full = (std::uint32_t{1} << m) - 1;
  std::vector<char> is_clique_mask(full + 1, 0);
  std::vector<std::size_t> weight(full + 1, 0);
  is_clique_mask[0] = 1;
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    const unsigned low = static_cast<unsigned>(__builtin_ctz(mask));
    const std::uint32_t rest = mask & (mask - 1);
    weight[mask] = weight[rest] + sfm.target_size(wanted[low]);
    bool ok = is_clique_mask[rest] != 0;
    for (std::uint32_t r = rest; ok && r; r &= r - 1)
      ok = g.adjacent(wanted[low], wanted[static_cast<unsigned>(__builtin_ctz(r))]);
    is_clique_mask[mask] = ok ? 1 : 0;
  }

  // cost[covered]: least sum over remaining slots of the wants still open
  // before each slot; the total equals sum_u u * T(u).
  constexpr std::size_t kInf = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> cost(full + 1, kInf);
  std::vector<std::uint32_t> choice(full + 1, 0);
  cost[full] = 0;
  for (std::uint32_t covered = full; covered-- > 0;) {
    const std::uint32_t open = full & ~covered;
    for (std::uint32_t sub = open; sub; sub = (sub - 1) & open) {
      if (!is_clique_mask[sub]) continue;
      const std::size_t tail = cost[covered | sub];
      const std::size_t total = tail + weight[open];
      if (total < cost[covered]) {
        cost[covered] = total;
        choice[covered] = sub;
      }
    }
  }

  ApddOptimum out;
  out.value = static_cast<double>(cost[0]) / static_cast<double>(sfm.total_wants());
  for (std::uint32_t covered = 0; covered != full; covered |= choice[covered]) {
    std::vector<std::size_t> packets;
    for (std::uint32_t r = choice[covered]; r; r &= r - 1) packets.push_back(wanted[static_cast<unsigned>(__builtin_ctz(r))]);
    out.solution.coding_sets.emplace_back(std::move(packets));
  }
  return out;
}

} // namespace sidnc
