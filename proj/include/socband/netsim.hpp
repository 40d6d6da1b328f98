#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "socband/model.hpp"

// Seeded Erdos-Renyi sampling and Monte Carlo estimators mirroring every
// analytic expectation of the model. All estimators come in a serial
// reference flavor and an OpenMP flavor with an identical per-replicate seed
// contract, so results are bit-identical across worker counts.
namespace socband {

enum class ExecutionPolicy { Serial, Parallel };

struct GraphSample {
  int n = 0;
  std::vector<std::pair<int, int>> edges;  // undirected, i < j
  std::vector<int> component_labels;       // per-vertex component id
  std::uint64_t seed = 0;

  int component_count() const;
  // Size of the component containing `v`.
  int component_size(int v) const;
};

struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::int64_t reps = 0;
  std::uint64_t seed = 0;
};

// One unordered pair per Bernoulli(p) draw; below kSparseSamplingCutoff the
// sampler switches to geometric edge skips (same distribution, distinct
// documented seed stream). Deterministic given (n, p, seed).
inline constexpr double kSparseSamplingCutoff = 0.1;
GraphSample sample_graph(int n, double p, std::uint64_t seed);

// Monte Carlo estimate of E[(1-beta)^M] where M is the number of explorers
// an evaluating agent observes (per regime) when k agents explore. With
// agent_explores the evaluating agent is one of the k and M counts the other
// k-1; otherwise all k explorers are drawn from the remaining agents.
// Replicate r uses a stream derived statelessly from (seed, r).
McEstimate estimate_expectation(int n, double p, int k, Regime regime,
                                double beta, bool agent_explores,
                                std::int64_t reps, std::uint64_t seed,
                                ExecutionPolicy policy = ExecutionPolicy::Parallel);

// Empirical pmf (indexed by size, entry 0 unused) of the component size of a
// uniformly chosen vertex, one graph sample per replicate.
std::vector<double> component_size_distribution(
    int n, double lambda, std::int64_t reps, std::uint64_t seed,
    ExecutionPolicy policy = ExecutionPolicy::Parallel);

// Exact law of |C| for a uniformly chosen vertex of G(n, p) via the
// connected-graph probability recursion. Returned vector has size n+1 with
// entry 0 unused. Requires n <= kGlobalExactMaxN.
std::vector<double> exact_component_pmf(int n, double p);

// Probability that G(k, p) is connected (same recursion, exposed for tests).
double connected_probability(int k, double p);

// Stateless splitmix64 step, the seed-derivation primitive of the replicate
// contract.
std::uint64_t splitmix64(std::uint64_t& state);

// Deterministic uniform(0,1) stream independent of platform distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}
  double uniform() {
    return static_cast<double>(splitmix64(state_) >> 11) * 0x1.0p-53;
  }
  std::uint64_t next_u64() { return splitmix64(state_); }
  // integer in [0, bound)
  std::uint64_t below(std::uint64_t bound);

 private:
  std::uint64_t state_;
};

// Replicate-r stream for a master seed (stateless split).
std::uint64_t derive_seed(std::uint64_t master, std::int64_t replicate);

// Pairwise (tree) summation; keeps parallel reductions order-independent.
double pairwise_sum(const std::vector<double>& values);

}  // namespace socband
