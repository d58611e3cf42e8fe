#pragma once

#include <vector>

#include "hcg/graph.hpp"
#include "hcg/master.hpp"

namespace hcg {

// Mean over samples of c_G(s) / opt. Requires opt > 0.
double approximation_ratio(const std::vector<BitSet>& samples, const WeightedGraph& g, double opt);

// Mean pairwise Hamming distance normalised by 2·s̄, with s̄ the mean set
// size. Requires at least two samples and s̄ > 0.
double diversity(const std::vector<BitSet>& samples);

// Column c encoded as (class one-hot ‖ tour bits).
BitSet column_vector(const Column& c, std::size_t class_count);

double pool_diversity(const ColumnPool& pool, std::size_t class_count);

// sampled / exact, clamped to [0, 1]. Requires exact > 0.
double psp_quality(double sampled_best_sigma, double exact_sigma);

}  // namespace hcg
