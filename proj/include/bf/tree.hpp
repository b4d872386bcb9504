#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bf/error.hpp"
#include "bf/geometry.hpp"

namespace bf {

using VertexId = std::size_t;

struct Vertex {
  Vec3 position;
  std::optional<VertexId> parent;
  // Carried through SWC round trips; no computation reads them.
  int swc_type = 0;
  double radius = 0.0;

  friend bool operator==(const Vertex&, const Vertex&) = default;
};

// Rooted tree embedded in R^3. Vertex ids are indices into vertices().
//
// Structural invariants checked on construction: exactly one root, root of
// degree 1, acyclic parent relation, at most two children per vertex. The
// monotonicity of the distance function is a property of (tree, mode) and is
// checked separately by monotonicity_violations().
class GeometricTree {
 public:
  GeometricTree() = default;

  explicit GeometricTree(std::vector<Vertex> vertices) : vertices_(std::move(vertices)) {
    if (vertices_.empty()) throw InvalidTree("tree has no vertices");
    children_.assign(vertices_.size(), {});
    std::optional<VertexId> root;
    for (VertexId v = 0; v < vertices_.size(); ++v) {
      const auto& p = vertices_[v].parent;
      if (!p) {
        if (root) throw InvalidTree("more than one root");
        root = v;
        continue;
      }
      if (*p >= vertices_.size()) throw InvalidTree("unknown parent");
      if (*p == v) throw InvalidTree("vertex is its own parent");
      children_[*p].push_back(v);
    }
    if (!root) throw InvalidTree("no root (cycle through every vertex)");
    root_ = *root;
    for (VertexId v = 0; v < vertices_.size(); ++v) {
      if (children_[v].size() > 2) {
        throw InvalidTree("vertex " + std::to_string(v) + " has " + std::to_string(children_[v].size()) +
                          " children (multifurcation)");
      }
    }
    if (children_[root_].size() != 1) {
      throw InvalidTree("root must have exactly one child, has " + std::to_string(children_[root_].size()));
    }

    order_.reserve(vertices_.size());
    std::vector<VertexId> stack{root_};
    while (!stack.empty()) {
      const VertexId v = stack.back();
      stack.pop_back();
      order_.push_back(v);
      for (auto it = children_[v].rbegin(); it != children_[v].rend(); ++it) stack.push_back(*it);
    }
    if (order_.size() != vertices_.size()) throw InvalidTree("cycle: not every vertex is reachable from the root");
  }

  std::size_t size() const { return vertices_.size(); }
  VertexId root() const { return root_; }
  const Vertex& vertex(VertexId v) const { return vertices_.at(v); }
  std::span<const Vertex> vertices() const { return vertices_; }
  std::span<const VertexId> children(VertexId v) const { return children_.at(v); }

  // Preorder from the root; parents always precede their children.
  std::span<const VertexId> preorder() const { return order_; }

  bool is_leaf(VertexId v) const { return v != root_ && children_[v].empty(); }
  bool is_branch_point(VertexId v) const { return children_[v].size() == 2; }

  std::vector<VertexId> leaves() const {
    std::vector<VertexId> out;
    for (VertexId v = 0; v < size(); ++v)
      if (is_leaf(v)) out.push_back(v);
    return out;
  }

  std::vector<VertexId> branch_points() const {
    std::vector<VertexId> out;
    for (VertexId v = 0; v < size(); ++v)
      if (is_branch_point(v)) out.push_back(v);
    return out;
  }

  friend bool operator==(const GeometricTree& a, const GeometricTree& b) { return a.vertices_ == b.vertices_; }

 private:
  std::vector<Vertex> vertices_;
  std::vector<std::vector<VertexId>> children_;
  std::vector<VertexId> order_;
  VertexId root_ = 0;
};

enum class DistanceMode { radial, path };

inline std::string_view to_string(DistanceMode m) { return m == DistanceMode::radial ? "radial" : "path"; }

inline DistanceMode parse_distance_mode(std::string_view s) {
  if (s == "radial") return DistanceMode::radial;
  if (s == "path") return DistanceMode::path;
  throw InvalidArgument("unknown distance mode '" + std::string(s) + "' (expected radial or path)");
}

// Distance from the root for every vertex, indexed by vertex id.
inline std::vector<double> distances(const GeometricTree& tree, DistanceMode mode = DistanceMode::path) {
  std::vector<double> delta(tree.size(), 0.0);
  const Vec3 origin = tree.vertex(tree.root()).position;
  if (mode == DistanceMode::radial) {
    for (VertexId v = 0; v < tree.size(); ++v) delta[v] = segment_length(origin, tree.vertex(v).position);
    return delta;
  }
  for (VertexId v : tree.preorder()) {
    const auto& vx = tree.vertex(v);
    if (vx.parent) delta[v] = delta[*vx.parent] + segment_length(tree.vertex(*vx.parent).position, vx.position);
  }
  return delta;
}

// Vertices whose distance does not strictly exceed their parent's.
inline std::vector<VertexId> monotonicity_violations(const GeometricTree& tree, std::span<const double> delta) {
  std::vector<VertexId> out;
  for (VertexId v = 0; v < tree.size(); ++v) {
    const auto& p = tree.vertex(v).parent;
    if (p && !(delta[*p] < delta[v])) out.push_back(v);
  }
  return out;
}

}  // namespace bf
