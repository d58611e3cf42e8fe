#include "hcg/metrics.hpp"

#include <algorithm>

#include "hcg/errors.hpp"

namespace hcg {

double approximation_ratio(const std::vector<BitSet>& samples, const WeightedGraph& g, double opt) {
  if (!(opt > 0.0)) throw ConfigError("approximation_ratio: optimum must be positive");
  if (samples.empty()) throw ConfigError("approximation_ratio: no samples");
  double total = 0.0;
  for (const auto& s : samples) total += set_weight(g, s) / opt;
  return total / static_cast<double>(samples.size());
}

double diversity(const std::vector<BitSet>& samples) {
  const std::size_t m = samples.size();
  if (m < 2) throw ConfigError("diversity: need at least two samples");
  double mean_size = 0.0;
  for (const auto& s : samples) {
    if (s.size() != samples.front().size()) throw ConfigError("diversity: samples differ in length");
    mean_size += static_cast<double>(s.count());
  }
  mean_size /= static_cast<double>(m);
  if (!(mean_size > 0.0)) throw ConfigError("diversity: all samples are empty");
  double total = 0.0;
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = a + 1; b < m; ++b) total += static_cast<double>(samples[a].xor_count(samples[b]));
  const double pairs = static_cast<double>(m) * static_cast<double>(m - 1) / 2.0;
  return total / (2.0 * mean_size * pairs);
}

BitSet column_vector(const Column& c, std::size_t class_count) {
  BitSet v(class_count + c.tours.size());
  v.set(static_cast<std::size_t>(c.class_id));
  for (std::size_t k = 0; k < c.tours.size(); ++k)
    if (c.tours.test(k)) v.set(class_count + k);
  return v;
}

double pool_diversity(const ColumnPool& pool, std::size_t class_count) {
  std::vector<BitSet> vectors;
  vectors.reserve(pool.size());
  for (const auto& c : pool) vectors.push_back(column_vector(c, class_count));
  return diversity(vectors);
}

double psp_quality(double sampled_best_sigma, double exact_sigma) {
  if (!(exact_sigma > 0.0)) throw ConfigError("psp_quality: exact sigma must be positive");
  return std::clamp(sampled_best_sigma / exact_sigma, 0.0, 1.0);
}

}  // namespace hcg
