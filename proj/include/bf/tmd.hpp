#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "bf/barcode.hpp"
#include "bf/tree.hpp"

namespace bf {

// One branch of the Elder-rule decomposition.
struct Branch {
  Bar bar;
  // Vertex ids from the branch's leaf back to the vertex where it was killed
  // (its branch point, or the root for the surviving branch).
  std::vector<VertexId> path;
  // Decomposition index of the branch this one is attached to; -1 for the
  // surviving branch.
  int attached_to = -1;
};

struct TmdResult {
  Barcode barcode;
  // Branches in decomposition order: index 0 is the surviving branch,
  // the rest follow in order of increasing birth (ties by vertex id).
  std::vector<Branch> branches;
  // False when some vertex is not strictly farther from the root than its
  // parent under the chosen distance; the barcode is then outside the
  // setting where the Elder-rule decomposition is certified.
  bool certified = true;
  std::vector<std::string> warnings;
};

namespace detail {

struct ElderState {
  std::vector<double> mu;        // max leaf distance below v
  std::vector<VertexId> argleaf;  // leaf realizing mu
  std::vector<VertexId> minid;    // smallest vertex id in the subtree
};

inline ElderState elder_state(const GeometricTree& tree, const std::vector<double>& delta) {
  ElderState s{std::vector<double>(tree.size()), std::vector<VertexId>(tree.size()), std::vector<VertexId>(tree.size())};
  const auto order = tree.preorder();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const VertexId v = *it;
    const auto kids = tree.children(v);
    s.minid[v] = v;
    if (kids.empty()) {
      s.mu[v] = delta[v];
      s.argleaf[v] = v;
      continue;
    }
    VertexId best = kids[0];
    for (VertexId c : kids) {
      s.minid[v] = std::min(s.minid[v], s.minid[c]);
      if (s.mu[c] > s.mu[best] || (s.mu[c] == s.mu[best] && s.minid[c] < s.minid[best])) best = c;
    }
    s.mu[v] = s.mu[best];
    s.argleaf[v] = s.argleaf[best];
  }
  return s;
}

// Climbs from `leaf` to the first vertex whose elder child is not on the path
// (or to the root).
inline std::vector<VertexId> branch_path(const GeometricTree& tree, const ElderState& s, VertexId leaf) {
  std::vector<VertexId> path{leaf};
  VertexId v = leaf;
  while (auto p = tree.vertex(v).parent) {
    path.push_back(*p);
    if (s.argleaf[*p] != leaf) break;
    v = *p;
  }
  return path;
}

}  // namespace detail

// Elder-rule barcode of a geometric tree: one bar (delta(branch point),
// delta(leaf)) per child killed at each branch point, plus the surviving bar
// (delta(root), max leaf delta). Equal mu: the child whose subtree holds the
// smaller vertex id survives.
inline TmdResult tmd(const GeometricTree& tree, DistanceMode mode = DistanceMode::path) {
  const auto leaves = tree.leaves();
  if (leaves.empty()) throw InvalidTree("tree has no leaves");

  const std::vector<double> delta = distances(tree, mode);
  const auto s = detail::elder_state(tree, delta);

  TmdResult out;
  const auto bad = monotonicity_violations(tree, delta);
  if (!bad.empty()) {
    out.certified = false;
    out.warnings.push_back(std::to_string(bad.size()) + " vertex/vertices not farther from the root than their parent under " +
                           std::string(to_string(mode)) + " distance (first: vertex " + std::to_string(bad.front()) + ")");
  }

  std::vector<Branch> branches;
  branches.reserve(leaves.size());
  for (VertexId leaf : leaves) {
    Branch br;
    br.path = detail::branch_path(tree, s, leaf);
    br.bar = Bar{delta[br.path.back()], delta[leaf]};
    branches.push_back(std::move(br));
  }
  // Surviving branch first, then by birth; ties by the killing vertex id.
  const VertexId root = tree.root();
  std::sort(branches.begin(), branches.end(), [&](const Branch& a, const Branch& b) {
    const bool ar = a.path.back() == root, br = b.path.back() == root;
    if (ar != br) return ar;
    if (a.bar.birth != b.bar.birth) return a.bar.birth < b.bar.birth;
    return a.path.back() < b.path.back();
  });

  // Each branch point lies on exactly one surviving branch path (as an
  // interior vertex), which is the branch the killed child attaches to.
  std::vector<int> owner(tree.size(), -1);
  for (std::size_t k = 0; k < branches.size(); ++k) {
    const auto& p = branches[k].path;
    for (std::size_t i = 0; i + 1 < p.size(); ++i) owner[p[i]] = static_cast<int>(k);
    if (k == 0) owner[p.back()] = 0;
  }
  for (std::size_t k = 1; k < branches.size(); ++k) branches[k].attached_to = owner[branches[k].path.back()];

  std::vector<Bar> bars;
  bars.reserve(branches.size());
  for (const auto& br : branches) bars.push_back(br.bar);
  out.barcode = Barcode(std::move(bars));
  out.branches = std::move(branches);
  return out;
}

inline BarcodeClass tmd_class(const GeometricTree& tree, DistanceMode mode = DistanceMode::path) {
  return barcode_class(make_strict(tmd(tree, mode).barcode));
}

}  // namespace bf
