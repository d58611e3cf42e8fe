#pragma once

#include <vector>

#include "hcg/graph.hpp"

namespace hcg {

// Repairs each set into an independent set (dropping the lightest conflicting
// node until no edge is violated), then greedily adds free positive-weight
// nodes in decreasing weight order. Ties go to the lowest index.
std::vector<BitSet> maximalize(const WeightedGraph& g, const std::vector<BitSet>& sets);
BitSet maximalize(const WeightedGraph& g, const BitSet& set);

struct MakeDiffResult {
  std::vector<BitSet> sets;
  std::vector<char> exhausted;  // every original member was dropped
  std::vector<char> duplicate;  // still equal to an earlier output
};

// De-duplicates a batch of independent sets by dropping the lightest members
// of repeats (accumulating the removals) and re-maximalizing on the reduced
// graph. Throws ConfigError on non-independent input.
MakeDiffResult make_diff(const WeightedGraph& g, const std::vector<BitSet>& sets);

}  // namespace hcg
