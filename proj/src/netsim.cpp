#include "socband/netsim.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace socband {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::int64_t replicate) {
  std::uint64_t s = master ^ (0xD1B54A32D192ED03ULL *
                              (static_cast<std::uint64_t>(replicate) + 1));
  return splitmix64(s);
}

std::uint64_t Rng::below(std::uint64_t bound) {
  return static_cast<std::uint64_t>(
      (static_cast<unsigned __int128>(next_u64()) * bound) >> 64);
}

double pairwise_sum(const std::vector<double>& values) {
  // Iterative pairwise reduction; result independent of how replicates were
  // produced.
  std::vector<double> buf(values);
  size_t m = buf.size();
  while (m > 1) {
    size_t half = m / 2;
    for (size_t i = 0; i < half; ++i) buf[i] = buf[2 * i] + buf[2 * i + 1];
    if (m % 2 == 1) {
      buf[half] = buf[m - 1];
      ++half;
    }
    m = half;
  }
  return m == 0 ? 0.0 : buf[0];
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(static_cast<size_t>(n)) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[static_cast<size_t>(x)] != x) {
      parent[static_cast<size_t>(x)] =
          parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
      x = parent[static_cast<size_t>(x)];
    }
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[static_cast<size_t>(b)] = a;
  }
};

void pair_from_index(std::uint64_t idx, int n, int& i, int& j) {
  // Row-major over i < j.
  std::uint64_t row = 0;
  std::uint64_t remaining = static_cast<std::uint64_t>(n) - 1;
  while (idx >= remaining) {
    idx -= remaining;
    --remaining;
    ++row;
  }
  i = static_cast<int>(row);
  j = static_cast<int>(row + 1 + idx);
}

}  // namespace

GraphSample sample_graph(int n, double p, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  if (!(p >= 0.0) || !(p <= 1.0))
    throw std::invalid_argument("p must lie in [0,1]");
  GraphSample g;
  g.n = n;
  g.seed = seed;
  Rng rng(seed);
  const std::uint64_t total =
      static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(n - 1) / 2;
  if (p >= kSparseSamplingCutoff) {
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (rng.uniform() < p) g.edges.emplace_back(i, j);
  } else if (p > 0.0) {
    // Geometric skips over the linear pair index.
    const double log1mp = std::log1p(-p);
    std::uint64_t idx = 0;
    while (true) {
      const double u = std::max(rng.uniform(), 1e-300);
      idx += static_cast<std::uint64_t>(std::log(u) / log1mp);
      if (idx >= total) break;
      int i, j;
      pair_from_index(idx, n, i, j);
      g.edges.emplace_back(i, j);
      ++idx;
    }
  }
  UnionFind uf(n);
  for (const auto& [a, b] : g.edges) uf.unite(a, b);
  g.component_labels.assign(static_cast<size_t>(n), -1);
  int next_label = 0;
  for (int v = 0; v < n; ++v) {
    const int root = uf.find(v);
    if (g.component_labels[static_cast<size_t>(root)] < 0)
      g.component_labels[static_cast<size_t>(root)] = next_label++;
    g.component_labels[static_cast<size_t>(v)] =
        g.component_labels[static_cast<size_t>(root)];
  }
  return g;
}

int GraphSample::component_count() const {
  int max_label = -1;
  for (int label : component_labels) max_label = std::max(max_label, label);
  return max_label + 1;
}

int GraphSample::component_size(int v) const {
  const int label = component_labels[static_cast<size_t>(v)];
  int size = 0;
  for (int other : component_labels) size += (other == label);
  return size;
}

namespace {

// One replicate of the decay estimator; everything derives from `seed`.
double decay_replicate(int n, double p, int k, Regime regime, double beta,
                       bool agent_explores, std::uint64_t seed,
                       std::vector<int>& scratch) {
  Rng rng(seed);
  const std::uint64_t graph_seed = rng.next_u64();
  const int agent = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
  // Draw the marked (explorer) set: `others` of them among the n-1 non-agent
  // vertices, via a partial Fisher-Yates over vertex ids.
  const int others = agent_explores ? k - 1 : k;
  scratch.resize(static_cast<size_t>(n));
  std::iota(scratch.begin(), scratch.end(), 0);
  std::swap(scratch[static_cast<size_t>(agent)],
            scratch[static_cast<size_t>(n - 1)]);
  std::vector<bool> marked(static_cast<size_t>(n), false);
  for (int t = 0; t < others; ++t) {
    const std::uint64_t pick =
        rng.below(static_cast<std::uint64_t>(n - 1 - t)) + static_cast<std::uint64_t>(t);
    std::swap(scratch[static_cast<size_t>(t)], scratch[pick]);
    marked[static_cast<size_t>(scratch[static_cast<size_t>(t)])] = true;
  }
  const GraphSample g = sample_graph(n, p, graph_seed);
  int m = 0;
  if (regime == Regime::Local) {
    for (const auto& [a, b] : g.edges) {
      if (a == agent && marked[static_cast<size_t>(b)]) ++m;
      if (b == agent && marked[static_cast<size_t>(a)]) ++m;
    }
  } else {
    const int label = g.component_labels[static_cast<size_t>(agent)];
    for (int v = 0; v < n; ++v)
      if (v != agent && marked[static_cast<size_t>(v)] &&
          g.component_labels[static_cast<size_t>(v)] == label)
        ++m;
  }
  return std::pow(1.0 - beta, m);
}

McEstimate summarize(const std::vector<double>& values, std::uint64_t seed) {
  McEstimate est;
  est.reps = static_cast<std::int64_t>(values.size());
  est.seed = seed;
  est.mean = pairwise_sum(values) / static_cast<double>(values.size());
  std::vector<double> sq(values.size());
  for (size_t i = 0; i < values.size(); ++i) {
    const double d = values[i] - est.mean;
    sq[i] = d * d;
  }
  const double var =
      pairwise_sum(sq) / static_cast<double>(values.size() - 1);
  est.std_error = std::sqrt(var / static_cast<double>(values.size()));
  return est;
}

}  // namespace

McEstimate estimate_expectation(int n, double p, int k, Regime regime,
                                double beta, bool agent_explores,
                                std::int64_t reps, std::uint64_t seed,
                                ExecutionPolicy policy) {
  if (reps < 2) throw std::invalid_argument("need at least 2 replicates");
  if (k < 0 || k > n) throw std::invalid_argument("need 0 <= k <= n");
  if (agent_explores && k < 1)
    throw std::invalid_argument("agent_explores requires k >= 1");
  if (!agent_explores && k > n - 1)
    throw std::invalid_argument(
        "an exploiting evaluator needs k <= n-1 explorers");
  std::vector<double> values(static_cast<size_t>(reps));
  if (policy == ExecutionPolicy::Parallel) {
#pragma omp parallel
    {
      std::vector<int> scratch;
#pragma omp for schedule(static)
      for (std::int64_t r = 0; r < reps; ++r)
        values[static_cast<size_t>(r)] = decay_replicate(
            n, p, k, regime, beta, agent_explores, derive_seed(seed, r),
            scratch);
    }
  } else {
    std::vector<int> scratch;
    for (std::int64_t r = 0; r < reps; ++r)
      values[static_cast<size_t>(r)] = decay_replicate(
          n, p, k, regime, beta, agent_explores, derive_seed(seed, r), scratch);
  }
  return summarize(values, seed);
}

std::vector<double> component_size_distribution(int n, double lambda,
                                                std::int64_t reps,
                                                std::uint64_t seed,
                                                ExecutionPolicy policy) {
  if (reps < 1) throw std::invalid_argument("need at least 1 replicate");
  const double p = lambda / static_cast<double>(n);
  std::vector<int> sizes(static_cast<size_t>(reps));
  auto one = [&](std::int64_t r) {
    Rng rng(derive_seed(seed, r));
    const std::uint64_t graph_seed = rng.next_u64();
    const int vertex =
        static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
    const GraphSample g = sample_graph(n, p, graph_seed);
    return g.component_size(vertex);
  };
  if (policy == ExecutionPolicy::Parallel) {
#pragma omp parallel for schedule(static)
    for (std::int64_t r = 0; r < reps; ++r)
      sizes[static_cast<size_t>(r)] = one(r);
  } else {
    for (std::int64_t r = 0; r < reps; ++r)
      sizes[static_cast<size_t>(r)] = one(r);
  }
  std::vector<double> pmf(static_cast<size_t>(n) + 1, 0.0);
  for (int s : sizes) pmf[static_cast<size_t>(s)] += 1.0;
  for (double& x : pmf) x /= static_cast<double>(reps);
  return pmf;
}

double connected_probability(int k, double p) {
  // P_conn(k) = 1 - sum_{j<k} C(k-1, j-1) P_conn(j) (1-p)^{j(k-j)}
  std::vector<double> conn(static_cast<size_t>(k) + 1, 0.0);
  conn[1] = 1.0;
  for (int s = 2; s <= k; ++s) {
    double sum = 0.0;
    double choose = 1.0;  // C(s-1, j-1) built incrementally
    for (int j = 1; j < s; ++j) {
      sum += choose * conn[static_cast<size_t>(j)] *
             std::pow(1.0 - p, static_cast<double>(j) * (s - j));
      choose *= static_cast<double>(s - j) / j;
    }
    conn[static_cast<size_t>(s)] = 1.0 - sum;
  }
  return conn[static_cast<size_t>(k)];
}

std::vector<double> exact_component_pmf(int n, double p) {
  if (n < 1 || n > kGlobalExactMaxN)
    throw std::invalid_argument("exact component pmf requires 1 <= n <= " +
                                std::to_string(kGlobalExactMaxN));
  std::vector<double> pmf(static_cast<size_t>(n) + 1, 0.0);
  auto lchoose = [](int a, int b) {
    return std::lgamma(a + 1.0) - std::lgamma(b + 1.0) -
           std::lgamma(a - b + 1.0);
  };
  for (int c = 1; c <= n; ++c) {
    const double isolated = (c == n) ? 1.0
                                     : std::pow(1.0 - p,
                                                static_cast<double>(c) * (n - c));
    pmf[static_cast<size_t>(c)] = std::exp(lchoose(n - 1, c - 1)) *
                                  connected_probability(c, p) * isolated;
  }
  return pmf;
}

}  // namespace socband
