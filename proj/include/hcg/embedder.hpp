#pragma once

#include <cstdint>
#include <numbers>
#include <vector>

#include "hcg/graph.hpp"

namespace hcg {

// C6/ħ for the |r⟩ level, rad/μs·μm^6.
inline constexpr double kDefaultC6 = 2.0 * std::numbers::pi * 137e3;
inline constexpr double kMinAtomDistance = 4.0;  // μm
inline constexpr double kMaxRegisterExtent = 100.0;  // μm
inline constexpr double kDefaultLayoutSpacing = 4.5;  // μm
inline constexpr double kOmegaMaxLow = 2.0 * std::numbers::pi * 0.5;   // rad/μs
inline constexpr double kOmegaMaxHigh = 2.0 * std::numbers::pi * 4.0;  // rad/μs

// R_b = (C6 / Ω_max)^{1/6}.
double blockade_radius(double omega_max, double c6 = kDefaultC6);
// Inverse of blockade_radius.
double omega_for_radius(double radius, double c6 = kDefaultC6);

// Largest admissible radius; set by the lowest allowed Ω_max.
double default_max_radius();

struct Layout {
  std::vector<Point> sites;
  double spacing = kDefaultLayoutSpacing;

  std::size_t size() const { return sites.size(); }
  // Site nearest the centroid of all sites; ties go to the lowest index.
  std::size_t central_site() const;
};

// max(n, ⌈n^1.85 / log2 n⌉).
std::size_t layout_site_count(std::size_t n);

// The `count` triangular-lattice points closest to the origin.
Layout triangular_layout(std::size_t count, double spacing = kDefaultLayoutSpacing);

// Layout sized for a graph of n nodes.
Layout layout_for_graph(std::size_t n, double spacing = kDefaultLayoutSpacing);

// Σ_i (missing edges at i) + λ·(extra edges at i). Every mismatched edge is
// seen from both endpoints.
double embedding_cost(const WeightedGraph& g, const WeightedGraph& gh, double lambda);

struct RadiusChoice {
  double radius = 0.0;
  bool capped = false;  // max degree not reachable below r_max
};

// Smallest radius giving the central site at least Δ(g) layout neighbours.
RadiusChoice choose_layout_radius(const WeightedGraph& g, const Layout& layout, double r_max);

struct SpringFreeParams {
  int iterations = 200;
  double lambda = 2.0;
};

struct SpringFreeResult {
  std::vector<Point> positions;
  double radius = 0.0;
  double cost = 0.0;
};

// Fruchterman-Reingold placement followed by a scan over candidate radii.
SpringFreeResult spring_free_embed(const WeightedGraph& g, std::uint64_t seed,
                                   const SpringFreeParams& params = {});

struct EmbedderParams {
  double lambda = 2.0;
  double beta_i = 0.1;
  double alpha_cool = 0.985;
  int n_it = 150;
  int k_max = 500;
  int dk = 40;
  double r_max = 0.0;  // 0 selects default_max_radius()
  // Compares incremental ΔC with a full recomputation every 50 moves.
  bool check_incremental = false;

  void validate() const;
};

struct Embedding {
  std::vector<int> assignment;  // node -> layout site
  std::vector<Point> positions;
  double radius = 0.0;
  bool radius_capped = false;
  WeightedGraph realized;
  double cost = 0.0;
  std::vector<double> best_history;  // best cost after each temperature step
  int temperature_steps = 0;
};

Embedding sa_embed(const WeightedGraph& g, const Layout& layout, const EmbedderParams& params,
                   std::uint64_t seed);

}  // namespace hcg
