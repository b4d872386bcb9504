#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "bf/tmd.hpp"
#include "bf/tree.hpp"

namespace bf {

// Combinatorial type of a geometric tree, as an ASCII bracket string.
//
// The tree is cut into branches by the Elder rule; branches are ranked by
// birth (the surviving branch is rank 0) and each branch is written as
// "[rank child child ...]" with its attached branches in rank order. The code
// depends only on the order of root distances of branch points and leaves,
// so it is invariant under rigid motions, reflections and reordering of
// children, and two trees realizing the same barcode share a code exactly
// when they attach the same bars to the same bars.
struct CanonicalCode {
  std::string text;
  friend auto operator<=>(const CanonicalCode&, const CanonicalCode&) = default;
};

inline CanonicalCode canonical_code_from_attachments(const std::vector<int>& attached_to) {
  const std::size_t m = attached_to.size();
  std::vector<std::vector<std::size_t>> kids(m);
  for (std::size_t k = 1; k < m; ++k) kids.at(static_cast<std::size_t>(attached_to[k])).push_back(k);

  std::string out;
  // Iterative preorder; children are already in rank order.
  struct Frame {
    std::size_t node;
    std::size_t next;
  };
  std::vector<Frame> stack{{0, 0}};
  out += "[0";
  while (!stack.empty()) {
    auto& f = stack.back();
    if (f.next < kids[f.node].size()) {
      const std::size_t c = kids[f.node][f.next++];
      out += "[" + std::to_string(c);
      stack.push_back({c, 0});
    } else {
      out += "]";
      stack.pop_back();
    }
  }
  return CanonicalCode{std::move(out)};
}

inline CanonicalCode combinatorial_class(const GeometricTree& tree, DistanceMode mode = DistanceMode::path) {
  const TmdResult r = tmd(tree, mode);
  std::vector<int> parent(r.branches.size(), -1);
  for (std::size_t k = 1; k < r.branches.size(); ++k) parent[k] = r.branches[k].attached_to;
  return canonical_code_from_attachments(parent);
}

// Shape of the underlying rooted tree alone (degree-2 vertices suppressed):
// each vertex is "(" + sorted child codes + ")". Coarser than
// combinatorial_class: it forgets which branch is which.
inline std::string rooted_shape_code(const GeometricTree& tree) {
  std::vector<std::string> code(tree.size());
  const auto order = tree.preorder();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const VertexId v = *it;
    const auto kids = tree.children(v);
    if (kids.size() == 1) {
      code[v] = std::move(code[kids[0]]);
      continue;
    }
    std::vector<std::string> parts;
    for (VertexId c : kids) parts.push_back(std::move(code[c]));
    std::sort(parts.begin(), parts.end());
    std::string s = "(";
    for (auto& p : parts) s += p;
    code[v] = s + ")";
  }
  return code[tree.root()];
}

}  // namespace bf
