#include <bit>
#include <cmath>
#include <cstdint>
#include <set>

#include "doctest.h"
#include "socband/netsim.hpp"

using namespace socband;

TEST_CASE("graph sampling determinism and edge-count statistics") {
  const GraphSample a = sample_graph(200, 0.05, 12345);
  const GraphSample b = sample_graph(200, 0.05, 12345);
  CHECK(a.edges == b.edges);
  CHECK(a.component_labels == b.component_labels);
  const GraphSample c = sample_graph(200, 0.05, 54321);
  CHECK(a.edges != c.edges);

  const GraphSample empty = sample_graph(50, 0.0, 7);
  CHECK(empty.edges.empty());
  CHECK(empty.component_count() == 50);
  const GraphSample complete = sample_graph(20, 1.0, 7);
  CHECK(static_cast<int>(complete.edges.size()) == 190);
  CHECK(complete.component_count() == 1);
}

TEST_CASE("edge probability matches p for both sampling methods") {
  // Mean edge count over samples within 4 SE of p * C(n,2), on both sides of
  // the dense/sparse cutoff.
  for (const double p : {0.03, 0.3}) {
    const int n = 60;
    const double pairs = n * (n - 1) / 2.0;
    const int samples = 400;
    double total = 0.0;
    for (int s = 0; s < samples; ++s)
      total += static_cast<double>(sample_graph(n, p, 1000 + s).edges.size());
    const double mean = total / samples;
    const double se = std::sqrt(pairs * p * (1.0 - p) / samples);
    CHECK(std::abs(mean - p * pairs) <= 4.0 * se);
  }
}

TEST_CASE("sparse sampler produces valid, sorted, duplicate-free pairs") {
  const GraphSample g = sample_graph(500, 0.004, 99);
  std::set<std::pair<int, int>> seen;
  for (const auto& [i, j] : g.edges) {
    CHECK(i < j);
    CHECK(i >= 0);
    CHECK(j < 500);
    CHECK(seen.insert({i, j}).second);
  }
}

TEST_CASE("component labels partition the vertex set") {
  const GraphSample g = sample_graph(300, 3.0 / 300, 2024);
  int total = 0;
  for (int label = 0; label < g.component_count(); ++label) {
    int size = 0;
    for (int v = 0; v < 300; ++v)
      if (g.component_labels[static_cast<size_t>(v)] == label) ++size;
    CHECK(size >= 1);
    total += size;
  }
  CHECK(total == 300);
  for (const auto& [i, j] : g.edges)
    CHECK(g.component_labels[static_cast<size_t>(i)] ==
          g.component_labels[static_cast<size_t>(j)]);
}

TEST_CASE("connected probability recursion") {
  CHECK(connected_probability(1, 0.3) == 1.0);
  CHECK(connected_probability(2, 0.3) == doctest::Approx(0.3).epsilon(1e-14));
  // k=3: 3 p^2 (1-p) + p^3.
  const double p = 0.45;
  CHECK(connected_probability(3, p) ==
        doctest::Approx(3 * p * p * (1 - p) + p * p * p).epsilon(1e-13));
  CHECK(connected_probability(3, 0.5) == doctest::Approx(0.5).epsilon(1e-13));
}

TEST_CASE("exact component pmf against exhaustive graph enumeration") {
  for (const int n : {2, 3, 4, 5}) {
    for (const double p : {0.2, 0.5, 0.8}) {
      const int edge_count = n * (n - 1) / 2;
      std::vector<double> truth(static_cast<size_t>(n) + 1, 0.0);
      for (std::uint32_t mask = 0; mask < (1u << edge_count); ++mask) {
        const double weight = std::pow(p, std::popcount(mask)) *
                              std::pow(1.0 - p, edge_count - std::popcount(mask));
        // Component of vertex 0 by label propagation.
        std::vector<int> comp(static_cast<size_t>(n));
        for (int v = 0; v < n; ++v) comp[static_cast<size_t>(v)] = v;
        int bit = 0;
        for (int i = 0; i < n; ++i)
          for (int j = i + 1; j < n; ++j, ++bit)
            if (mask & (1u << bit)) {
              const int a = comp[static_cast<size_t>(i)];
              const int b = comp[static_cast<size_t>(j)];
              for (int v = 0; v < n; ++v)
                if (comp[static_cast<size_t>(v)] == b)
                  comp[static_cast<size_t>(v)] = a;
            }
        int size = 0;
        for (int v = 0; v < n; ++v) size += (comp[static_cast<size_t>(v)] == comp[0]);
        truth[static_cast<size_t>(size)] += weight;
      }
      const std::vector<double> pmf = exact_component_pmf(n, p);
      double mass = 0.0;
      for (int size = 1; size <= n; ++size) {
        CHECK(pmf[static_cast<size_t>(size)] ==
              doctest::Approx(truth[static_cast<size_t>(size)]).epsilon(1e-11));
        mass += pmf[static_cast<size_t>(size)];
      }
      CHECK(mass == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
  CHECK(exact_component_pmf(3, 0.5)[1] == doctest::Approx(0.25).epsilon(1e-13));
  CHECK(exact_component_pmf(3, 0.5)[2] == doctest::Approx(0.25).epsilon(1e-13));
  CHECK(exact_component_pmf(3, 0.5)[3] == doctest::Approx(0.5).epsilon(1e-13));
}

TEST_CASE("decay estimator hits closed forms") {
  SUBCASE("local closed form") {
    const McEstimate est = estimate_expectation(50, 0.2, 49, Regime::Local, 0.3,
                                                false, 20000, 42);
    CHECK(std::abs(est.mean - std::pow(1.0 - 0.2 * 0.3, 49)) <=
          4.0 * est.std_error + 1e-12);
  }
  SUBCASE("complete graph, global regime, zero variance") {
    const McEstimate est = estimate_expectation(12, 1.0, 11, Regime::Global,
                                                0.3, false, 500, 42);
    CHECK(est.mean == doctest::Approx(std::pow(0.7, 11)).epsilon(1e-12));
    CHECK(est.std_error <= 1e-12);  // identical replicates up to rounding
  }
  SUBCASE("global regime against the exact pmf") {
    const NetworkSpec net{15, 0.12, Regime::Global};
    const double exact = decay_expectation(net, 9, 0.3);
    const McEstimate est = estimate_expectation(15, 0.12, 9, Regime::Global,
                                                0.3, false, 40000, 4242);
    CHECK(std::abs(est.mean - exact) <= 4.0 * est.std_error);
  }
  SUBCASE("agent_explores shifts the marked count by one") {
    const McEstimate with = estimate_expectation(40, 0.3, 10, Regime::Local,
                                                 0.3, true, 30000, 9);
    const double exact = std::pow(1.0 - 0.3 * 0.3, 9);
    CHECK(std::abs(with.mean - exact) <= 4.0 * with.std_error);
  }
}

TEST_CASE("serial and parallel estimates are bit-identical") {
  const McEstimate serial =
      estimate_expectation(100, 0.03, 40, Regime::Global, 0.3, false, 5000, 77,
                           ExecutionPolicy::Serial);
  const McEstimate parallel =
      estimate_expectation(100, 0.03, 40, Regime::Global, 0.3, false, 5000, 77,
                           ExecutionPolicy::Parallel);
  CHECK(serial.mean == parallel.mean);
  CHECK(serial.std_error == parallel.std_error);

  const std::vector<double> ds = component_size_distribution(
      500, 1.5, 2000, 11, ExecutionPolicy::Serial);
  const std::vector<double> dp = component_size_distribution(
      500, 1.5, 2000, 11, ExecutionPolicy::Parallel);
  CHECK(ds == dp);
}

TEST_CASE("component size distribution sanity") {
  const std::vector<double> pmf =
      component_size_distribution(400, 0.01, 3000, 5);
  CHECK(pmf[1] > 0.98);  // lambda near 0: almost everyone isolated
  double mass = 0.0;
  for (size_t s = 1; s < pmf.size(); ++s) mass += pmf[s];
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("empirical global decay decreases in lambda") {
  double prev = 2.0;
  for (const double lambda : {0.5, 1.0, 2.0, 4.0}) {
    const McEstimate est = estimate_expectation(
        300, lambda / 300, 150, Regime::Global, 0.3, false, 8000, 31);
    CHECK(est.mean < prev);
    prev = est.mean;
  }
}

TEST_CASE("pairwise sum and seed derivation basics") {
  std::vector<double> values;
  for (int i = 1; i <= 1001; ++i) values.push_back(1.0 / i);
  double naive = 0.0;
  for (const double v : values) naive += v;
  CHECK(pairwise_sum(values) == doctest::Approx(naive).epsilon(1e-12));
  CHECK(pairwise_sum({}) == 0.0);
  CHECK(derive_seed(1, 2) != derive_seed(1, 3));
  CHECK(derive_seed(1, 2) != derive_seed(2, 2));
  CHECK(derive_seed(1, 2) == derive_seed(1, 2));
}
