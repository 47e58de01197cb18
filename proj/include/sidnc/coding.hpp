#pragma once

#include "sidnc/coding_set.hpp"
#include "sidnc/graph.hpp"
#include "sidnc/packet_state.hpp"

#include <cstddef>
#include <vector>

namespace sidnc {

inline constexpr std::size_t kDefaultCliqueCap = 1'000'000;
inline constexpr std::size_t kDefaultBranchCap = 1'000'000;
inline constexpr std::size_t kDefaultColoringCap = 24;
inline constexpr std::size_t kDefaultApddOracleCap = 12;

/// All maximal cliques of a graph, sorted lexicographically.
struct MaximalCliqueFamily {
  std::size_t vertex_count = 0;
  std::vector<CodingSet> cliques;
};

/// Minimum-size covers drawn from a clique family, canonically ordered.
struct SolutionFamily {
  std::vector<Solution> solutions;
  std::size_t solution_size() const { return solutions.empty() ? 0 : solutions.front().size(); }
};

/// Bron-Kerbosch with Tomita pivoting. Throws SizeLimitExceeded once more
/// than `max_cliques` cliques have been found.
MaximalCliqueFamily bron_kerbosch(const Graph& g, std::size_t max_cliques = kDefaultCliqueCap);

/// Branching cover search: each partial cover branches on every clique
/// containing its lowest-diversity uncovered packet. Returns every minimum
/// cover of `wanted`, duplicates merged. Throws BranchLimitExceeded when more
/// than `max_branches` distinct partial covers are explored at one depth.
SolutionFamily optimal_solution_search(const MaximalCliqueFamily& family, const IndexSet& wanted,
                                       std::size_t max_branches = kDefaultBranchCap);

/// Greedy cover: repeatedly take the clique covering the most uncovered
/// wanted packets, first in lexicographic order on ties.
Solution hybrid_solution_search(const MaximalCliqueFamily& family, const IndexSet& wanted);

struct CliqueSearchStats {
  /// Candidate degree evaluations; bounded by K(K+1)/2.
  std::size_t degree_evaluations = 0;
};

/// Degree-greedy maximal clique among `candidates`: keep the candidate with
/// the most neighbours inside the candidate set, then drop its
/// non-neighbours. Ties go to the smaller degree in `g`, then the lower index.
CodingSet heuristic_max_clique(const Graph& g, const IndexSet& candidates,
                               CliqueSearchStats* stats = nullptr);
CodingSet heuristic_max_clique(const Graph& g, CliqueSearchStats* stats = nullptr);

/// Covers every vertex of `g` with heuristic cliques, widening each new
/// clique with a heuristic clique of already-covered vertices that are
/// adjacent to all of it.
Solution heuristic_solution_search(const Graph& g);

/// Exact chromatic number by DSATUR branch and bound.
std::size_t exact_chromatic_number(const Graph& g, std::size_t max_vertices = kDefaultColoringCap);

/// Size of a minimum partition of the vertices into cliques.
std::size_t min_clique_partition_size(const Graph& g, std::size_t max_vertices = kDefaultColoringCap);

struct ApddOptimum {
  double value = 0.0;
  Solution solution;
};

/// Minimum erasure-free average packet decoding delay over all ordered
/// S-IDNC solutions, by dynamic programming over covered-packet subsets.
ApddOptimum brute_force_min_apdd(const StateFeedbackMatrix& sfm,
                                 std::size_t max_wanted_packets = kDefaultApddOracleCap);

} // namespace sidnc
