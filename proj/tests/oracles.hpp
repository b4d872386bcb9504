#pragma once

// Reference implementations used only by the tests. They share no code with
// the library beyond the basic value types.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <vector>

#include "bf/barcode.hpp"
#include "bf/tree.hpp"

namespace oracle {

// Superlevel-set persistence of the root-distance function by union-find:
// vertices enter in order of decreasing distance; when components meet at a
// vertex, all but the one with the largest maximum die there. A tie in the
// maximum goes to the component holding the smaller vertex id.
inline std::vector<bf::Bar> union_find_barcode(const bf::GeometricTree& t, const std::vector<double>& delta) {
  const std::size_t n = t.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return delta[a] > delta[b]; });

  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::vector<double> maxval(n);
  std::vector<std::size_t> minid(n);
  std::vector<bool> alive(n, false);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };

  std::vector<bf::Bar> bars;
  for (std::size_t v : order) {
    std::vector<std::size_t> nbrs(t.children(v).begin(), t.children(v).end());
    if (t.vertex(v).parent) nbrs.push_back(*t.vertex(v).parent);
    std::vector<std::size_t> comps;
    for (std::size_t w : nbrs)
      if (alive[w]) comps.push_back(find(w));
    std::sort(comps.begin(), comps.end());
    comps.erase(std::unique(comps.begin(), comps.end()), comps.end());
    alive[v] = true;
    if (comps.empty()) {
      maxval[v] = delta[v];
      minid[v] = v;
      continue;
    }
    std::size_t keep = comps[0];
    for (std::size_t c : comps)
      if (maxval[c] > maxval[keep] || (maxval[c] == maxval[keep] && minid[c] < minid[keep])) keep = c;
    for (std::size_t c : comps) {
      if (c == keep) continue;
      bars.push_back({delta[v], maxval[c]});
      parent[c] = keep;
      minid[keep] = std::min(minid[keep], minid[c]);
    }
    parent[v] = keep;
    minid[keep] = std::min(minid[keep], v);
  }
  const std::size_t last = find(t.root());
  bars.push_back({delta[t.root()], maxval[last]});
  std::sort(bars.begin(), bars.end());
  return bars;
}

// All maps f with f(i) < i and bar f(i) strictly containing bar i, by
// brute force over every f : {1..n} -> {0..n}.
inline std::vector<std::vector<int>> brute_force_attachments(const bf::StrictBarcode& b) {
  const std::size_t m = b.size();
  std::vector<std::vector<int>> out;
  std::vector<int> f(m, 0);
  f[0] = -1;
  for (;;) {
    bool ok = true;
    for (std::size_t i = 1; i < m && ok; ++i) {
      const auto j = static_cast<std::size_t>(f[i]);
      ok = j < i && b[j].birth < b[i].birth && b[i].death < b[j].death;
    }
    if (ok) out.push_back(f);
    std::size_t i = m;
    while (i > 1) {
      --i;
      if (++f[i] < static_cast<int>(m)) break;
      f[i] = 0;
      if (i == 1) return out;
    }
    if (m <= 1) return out;
  }
}

// Number of bars whose interval strictly contains bar i, by a full scan.
inline std::size_t containment_count(const bf::StrictBarcode& b, std::size_t i) {
  std::size_t c = 0;
  for (std::size_t j = 0; j < b.size(); ++j)
    if (j != i && b[j].birth < b[i].birth && b[i].death < b[j].death) ++c;
  return c;
}

// min over all bijections of bars 1..n (bar 0 fixed to bar 0) of the max L1 cost.
inline double brute_force_bottleneck(const bf::StrictBarcode& a, const bf::StrictBarcode& b) {
  auto cost = [](const bf::Bar& x, const bf::Bar& y) { return std::abs(x.birth - y.birth) + std::abs(x.death - y.death); };
  std::vector<std::size_t> perm(a.n());
  std::iota(perm.begin(), perm.end(), 1);
  double best = INFINITY;
  do {
    double worst = cost(a[0], b[0]);
    for (std::size_t i = 0; i < perm.size(); ++i) worst = std::max(worst, cost(a[i + 1], b[perm[i]]));
    best = std::min(best, worst);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

// Strict barcode with integer endpoints: births 1..n shuffled into place,
// deaths a random permutation, all inside (0, big).
inline bf::StrictBarcode random_integer_barcode(std::mt19937_64& rng, std::size_t n) {
  std::vector<int> deaths(n);
  std::iota(deaths.begin(), deaths.end(), static_cast<int>(n) + 1);
  std::shuffle(deaths.begin(), deaths.end(), rng);
  std::vector<bf::Bar> bars{{0.0, 2.0 * static_cast<double>(n) + 2.0}};
  for (std::size_t i = 0; i < n; ++i) bars.push_back({static_cast<double>(i + 1), static_cast<double>(deaths[i])});
  return bf::make_strict(bf::Barcode(std::move(bars)));
}

// Strict barcode with continuous endpoints.
inline bf::StrictBarcode random_real_barcode(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> birth(0.0, 50.0), death(50.0, 100.0);
  for (;;) {
    std::vector<bf::Bar> bars{{0.0, 100.0}};
    for (std::size_t i = 0; i < n; ++i) bars.push_back({birth(rng), death(rng)});
    try {
      return bf::make_strict(bf::Barcode(std::move(bars)));
    } catch (const bf::NotStrict&) {
    }
  }
}

}  // namespace oracle
