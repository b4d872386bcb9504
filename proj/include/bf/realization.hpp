#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "bf/barcode.hpp"
#include "bf/error.hpp"
#include "bf/tree.hpp"

namespace bf {

using BigInt = boost::multiprecision::cpp_int;

// f[i] is the bar that bar i attaches to; f[0] == -1.
using AttachmentMap = std::vector<int>;

// Number of bars strictly containing bar i (bars are sorted by birth, so
// these are the j < i with d_j > d_i).
inline std::size_t bar_index(const StrictBarcode& b, std::size_t i) {
  if (i == 0 || i > b.n()) throw InvalidArgument("bar index " + std::to_string(i) + " out of range 1.." + std::to_string(b.n()));
  std::size_t count = 0;
  for (std::size_t j = 0; j < i; ++j) count += b[i].death < b[j].death;
  return count;
}

inline std::vector<std::size_t> bar_indices(const StrictBarcode& b) {
  std::vector<std::size_t> out;
  out.reserve(b.n());
  for (std::size_t i = 1; i <= b.n(); ++i) out.push_back(bar_index(b, i));
  return out;
}

// Tree-realization number: the product of the bar indices.
inline BigInt trn(const StrictBarcode& b) {
  BigInt p = 1;
  for (std::size_t idx : bar_indices(b)) p *= idx;
  return p;
}

inline double log_trn(const StrictBarcode& b) {
  double s = 0.0;
  for (std::size_t idx : bar_indices(b)) s += std::log(static_cast<double>(idx));
  return s;
}

// Index of bar seq[k] read straight off a death-order sequence: the bars
// born earlier that die earlier in the sequence, i.e. earlier in seq.
inline std::uint64_t trn_u64(const std::vector<int>& sequence) {
  std::uint64_t p = 1;
  for (std::size_t k = 0; k < sequence.size(); ++k) {
    std::uint64_t idx = 1;
    for (std::size_t m = 0; m < k; ++m) idx += sequence[m] < sequence[k];
    if (p > std::numeric_limits<std::uint64_t>::max() / idx) throw CapExceeded("trn does not fit in 64 bits");
    p *= idx;
  }
  return p;
}

inline void validate_attachment(const StrictBarcode& b, const AttachmentMap& f) {
  if (f.size() != b.size()) throw InvalidArgument("attachment map has " + std::to_string(f.size()) + " entries, expected " + std::to_string(b.size()));
  if (f[0] != -1) throw InvalidArgument("bar 0 cannot attach to anything");
  for (std::size_t i = 1; i < f.size(); ++i) {
    const int j = f[i];
    if (j < 0 || static_cast<std::size_t>(j) >= i || !b[i].strictly_inside(b[static_cast<std::size_t>(j)])) {
      throw InvalidArgument("bar " + std::to_string(i) + " cannot attach to bar " + std::to_string(j));
    }
  }
}

// All valid attachment maps, in lexicographic order of (f(1), ..., f(n)).
inline std::vector<AttachmentMap> enumerate_attachments(const StrictBarcode& b, std::uint64_t cap) {
  const BigInt total = trn(b);
  if (total > cap) throw CapExceeded("trn " + total.str() + " exceeds enumeration cap " + std::to_string(cap));

  const std::size_t m = b.size();
  std::vector<std::vector<int>> choices(m);
  for (std::size_t i = 1; i < m; ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (b[i].death < b[j].death) choices[i].push_back(static_cast<int>(j));

  std::vector<AttachmentMap> out;
  out.reserve(static_cast<std::size_t>(total));
  std::vector<std::size_t> pos(m, 0);
  for (;;) {
    AttachmentMap f(m, -1);
    for (std::size_t i = 1; i < m; ++i) f[i] = choices[i][pos[i]];
    out.push_back(std::move(f));
    std::size_t i = m;
    while (i > 1) {
      --i;
      if (++pos[i] < choices[i].size()) break;
      pos[i] = 0;
      if (i == 1) return out;
    }
    if (m <= 1) return out;
  }
}

namespace detail {

// Coordinate c on the segment's axis such that the library's own path
// distance computation gives exactly `target` from a parent at coordinate p
// with distance delta_p, if one lies within a few hundred ulps of the guess.
inline std::optional<double> exact_coordinate(double p, double delta_p, double target) {
  const auto reached = [&](double c) {
    const Vec3 a{p, 0, 0}, e{c, 0, 0};
    return delta_p + segment_length(a, e);
  };
  const double guess = p + (target - delta_p);
  if (reached(guess) == target) return guess;
  double up = guess, down = guess;
  for (int k = 0; k < 256; ++k) {
    up = std::nextafter(up, std::numeric_limits<double>::infinity());
    if (reached(up) == target) return up;
    down = std::nextafter(down, -std::numeric_limits<double>::infinity());
    if (down > p && reached(down) == target) return down;
  }
  return std::nullopt;
}

}  // namespace detail

// Canonical tree realizing `b` with attachment map `f`.
//
// Branch 0 runs from the root at the origin along +z; every other branch
// leaves its parent branch along the next coordinate axis. Each branch is an
// axis-parallel polyline through its branch points, so path distances are
// exact: tmd(realize_tree(b, f)) == b bar for bar. Requires b_0 == 0.
inline GeometricTree realize_tree(const StrictBarcode& b, const AttachmentMap& f) {
  validate_attachment(b, f);
  if (b[0].birth != 0.0) throw InvalidArgument("realize_tree needs the first bar to be born at 0");

  const std::size_t m = b.size();
  std::vector<std::vector<std::size_t>> kids(m);
  for (std::size_t i = 1; i < m; ++i) kids[static_cast<std::size_t>(f[i])].push_back(i);  // increasing birth

  std::vector<Vertex> vs;
  std::vector<double> delta;
  vs.push_back(Vertex{{0, 0, 0}, std::nullopt, 1, 1.0});
  delta.push_back(0.0);

  // (branch, vertex it starts from, axis)
  struct Pending {
    std::size_t bar;
    VertexId start;
    int axis;
  };
  std::vector<Pending> todo{{0, 0, 2}};
  const auto coord = [](Vec3& v, int axis) -> double& { return axis == 0 ? v.x : axis == 1 ? v.y : v.z; };

  while (!todo.empty()) {
    const Pending cur = todo.back();
    todo.pop_back();
    VertexId at = cur.start;
    auto push = [&](Vec3 pos, double d) {
      vs.push_back(Vertex{pos, at, 3, 1.0});
      delta.push_back(d);
      at = vs.size() - 1;
    };
    auto extend = [&](double target) {
      Vec3 pos = vs[at].position;
      double& c = coord(pos, cur.axis);
      if (const auto hit = detail::exact_coordinate(c, delta[at], target)) {
        c = *hit;
        push(pos, target);
        return;
      }
      // Every candidate sum rounds past the target (ties to even). Go through
      // an intermediate vertex; one whose coordinate and distance share the
      // target's binade makes the last sum exact, so try points ever closer
      // to the end.
      const double p = c;
      std::vector<double> fracs{0.25, 0.125};
      for (int k = 1; k <= 52; ++k) fracs.push_back(1.0 - std::ldexp(1.0, -k));
      for (double frac : fracs) {
        double mid = p + frac * (target - delta[at]);
        for (int k = 0; k < 16; ++k, mid = std::nextafter(mid, p)) {
          const double d_mid = delta[at] + segment_length(Vec3{p, 0, 0}, Vec3{mid, 0, 0});
          if (!(d_mid > delta[at] && d_mid < target)) continue;
          if (const auto hit = detail::exact_coordinate(mid, d_mid, target)) {
            c = mid;
            push(pos, d_mid);
            c = *hit;
            push(pos, target);
            return;
          }
        }
      }
      throw Error("cannot place a vertex at path distance " + format_exact(target));
    };
    for (std::size_t child : kids[cur.bar]) {
      extend(b[child].birth);
      todo.push_back({child, at, (cur.axis + 1) % 3});
    }
    extend(b[cur.bar].death);
  }

  GeometricTree tree(std::move(vs));
  const auto check = distances(tree, DistanceMode::path);
  if (check != delta) throw Error("realized tree does not reproduce the barcode exactly");
  return tree;
}

struct AddBarResult {
  StrictBarcode barcode;
  std::size_t factor;  // trn(result) == trn(input) * factor
};

// Adds a bar born after every existing bar. The factor is the number of bars
// containing the new one.
inline AddBarResult add_bar(const StrictBarcode& b, const Bar& bar) {
  if (!(bar.birth > b[b.n()].birth)) throw InvalidArgument("new bar must be born after every existing bar");
  std::vector<Bar> bars(b.bars().begin(), b.bars().end());
  bars.push_back(bar);
  StrictBarcode out = make_strict(Barcode(std::move(bars)));
  const std::size_t k = bar_index(out, out.n());
  return {std::move(out), k};
}

struct TransposeResult {
  StrictBarcode barcode;
  BigInt predicted_trn;
};

// Swaps the k-th and (k+1)-th largest deaths among bars 1..n (1 <= k < n).
// Only the later-born of the two bars changes index: it loses the other bar
// as a container when it was the earlier death, and gains it otherwise.
inline TransposeResult transpose_deaths(const StrictBarcode& b, std::size_t k) {
  if (k < 1 || k >= b.n()) throw InvalidArgument("rank " + std::to_string(k) + " out of range 1.." + std::to_string(b.n() > 0 ? b.n() - 1 : 0));
  const BarcodeClass cls = barcode_class(b);
  const auto ik = static_cast<std::size_t>(cls.sequence[k - 1]);
  const auto ik1 = static_cast<std::size_t>(cls.sequence[k]);

  std::vector<Bar> bars(b.bars().begin(), b.bars().end());
  std::swap(bars[ik].death, bars[ik1].death);
  StrictBarcode out = make_strict(Barcode(std::move(bars)));

  const BigInt t = trn(b);
  const std::size_t idx = bar_index(b, std::max(ik, ik1));
  const BigInt predicted = ik < ik1 ? BigInt(t * (idx - 1) / idx) : BigInt(t * (idx + 1) / idx);
  return {std::move(out), predicted};
}

// Strict barcode of the class given by a death-order sequence:
// b_0 = 0, d_0 = (2n+2)s, b_i = i s, d_{i_k} = (2n+1-k)s.
inline StrictBarcode class_representative(const std::vector<int>& sequence, double spacing = 1.0) {
  const BarcodeClass cls = BarcodeClass::from_sequence(sequence);
  const std::size_t n = cls.n();
  std::vector<Bar> bars(n + 1);
  bars[0] = {0.0, static_cast<double>(2 * n + 2) * spacing};
  for (std::size_t i = 1; i <= n; ++i) bars[i].birth = static_cast<double>(i) * spacing;
  for (std::size_t k = 1; k <= n; ++k) bars[static_cast<std::size_t>(sequence[k - 1])].death = static_cast<double>(2 * n + 1 - k) * spacing;
  return make_strict(Barcode(std::move(bars)));
}

// Death-order sequences of S_n in lexicographic order.
inline std::vector<std::vector<int>> permutations(std::size_t n) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 1);
  std::vector<std::vector<int>> out;
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

struct CayleyEdge {
  std::size_t from;
  std::size_t to;
  std::size_t generator;  // swaps death ranks generator, generator + 1
};

struct CayleyGraph {
  std::size_t n = 0;
  std::vector<std::vector<int>> nodes;  // death-order sequences
  std::vector<std::uint64_t> trn;
  std::vector<CayleyEdge> edges;
};

inline CayleyGraph cayley_graph(std::size_t n, std::size_t cap = 7) {
  if (n < 2) throw InvalidArgument("cayley graph needs n >= 2");
  if (n > cap) throw CapExceeded("n = " + std::to_string(n) + " exceeds the cayley cap " + std::to_string(cap));
  CayleyGraph g;
  g.n = n;
  g.nodes = permutations(n);
  g.trn.reserve(g.nodes.size());
  for (const auto& p : g.nodes) g.trn.push_back(trn_u64(p));
  for (std::size_t u = 0; u < g.nodes.size(); ++u) {
    for (std::size_t k = 1; k < n; ++k) {
      auto q = g.nodes[u];
      std::swap(q[k - 1], q[k]);
      const auto v = static_cast<std::size_t>(std::lower_bound(g.nodes.begin(), g.nodes.end(), q) - g.nodes.begin());
      if (u < v) g.edges.push_back({u, v, k});
    }
  }
  return g;
}

inline std::string sequence_label(const std::vector<int>& seq) {
  std::string s;
  for (int v : seq) s += std::to_string(v);
  return s;
}

inline void write_dot(std::ostream& out, const CayleyGraph& g) {
  out << "graph cayley_S" << g.n << " {\n";
  for (std::size_t u = 0; u < g.nodes.size(); ++u) {
    out << "  n" << u << " [label=\"(" << sequence_label(g.nodes[u]) << ")\", trn=" << g.trn[u] << "];\n";
  }
  for (const auto& e : g.edges) {
    out << "  n" << e.from << " -- n" << e.to << " [label=\"(" << e.generator << ' ' << e.generator + 1 << ")\"];\n";
  }
  out << "}\n";
}

}  // namespace bf
