#pragma once

#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "bf/format.hpp"
#include "bf/tree.hpp"

namespace bf {

struct SwcOptions {
  // Split k-furcations (k > 2) into cascades of bifurcations joined by
  // zero-length edges, children attached in file order. A root with several
  // children gets a zero-length stem first.
  bool binarize = false;
};

namespace detail {

// Inserts zero-length vertices so every vertex has at most two children and
// the root exactly one. Children keep their file order.
inline void binarize_in_place(std::vector<Vertex>& vs, VertexId root) {
  std::vector<std::vector<VertexId>> kids(vs.size());
  for (VertexId v = 0; v < vs.size(); ++v)
    if (vs[v].parent) kids[*vs[v].parent].push_back(v);

  auto add_copy_of = [&](VertexId at, VertexId parent) {
    Vertex copy = vs[at];
    copy.parent = parent;
    vs.push_back(copy);
    kids.emplace_back();
    return vs.size() - 1;
  };

  if (kids[root].size() > 1) {
    const VertexId stem = add_copy_of(root, root);
    for (VertexId c : kids[root]) vs[c].parent = stem;
    kids[stem] = kids[root];
    kids[root] = {stem};
  }
  const std::size_t original = vs.size();
  for (VertexId v = 0; v < original; ++v) {
    const std::vector<VertexId> cs = kids[v];
    if (cs.size() <= 2) continue;
    // v -> {c0, j1}, j1 -> {c1, j2}, ..., last joint -> {c_{k-2}, c_{k-1}}
    VertexId host = v;
    for (std::size_t i = 0; i + 2 < cs.size(); ++i) {
      vs[cs[i]].parent = host;
      host = add_copy_of(v, host);
    }
    vs[cs[cs.size() - 2]].parent = host;
    vs[cs[cs.size() - 1]].parent = host;
  }
}

}  // namespace detail

inline GeometricTree parse_swc(std::istream& in, const SwcOptions& opts = {}) {
  std::vector<Vertex> vs;
  std::vector<long long> parent_ids;
  std::vector<int> lines;
  std::map<long long, VertexId> index_of;
  std::optional<VertexId> root;

  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const auto fields = split_ws(strip_comment(raw));
    if (fields.empty()) continue;
    if (fields.size() != 7) throw ParseError("expected 7 columns, got " + std::to_string(fields.size()), lineno);
    long long id = 0, parent = 0;
    int type = 0;
    double x, y, z, r;
    if (!parse_int(fields[0], id) || !parse_int(fields[1], type) || !parse_double(fields[2], x) ||
        !parse_double(fields[3], y) || !parse_double(fields[4], z) || !parse_double(fields[5], r) ||
        !parse_int(fields[6], parent)) {
      throw ParseError("malformed line '" + raw + "'", lineno);
    }
    if (!index_of.emplace(id, vs.size()).second) throw ParseError("duplicate id " + std::to_string(id), lineno);
    if (parent == -1) {
      if (root) throw ParseError("more than one root", lineno);
      root = vs.size();
    }
    vs.push_back(Vertex{{x, y, z}, std::nullopt, type, r});
    parent_ids.push_back(parent);
    lines.push_back(lineno);
  }
  if (vs.empty()) throw ParseError("no samples in SWC input", 0);
  if (!root) throw ParseError("no root (parent -1) in SWC input", 0);

  for (VertexId v = 0; v < vs.size(); ++v) {
    if (parent_ids[v] == -1) continue;
    const auto it = index_of.find(parent_ids[v]);
    if (it == index_of.end()) throw ParseError("unknown parent " + std::to_string(parent_ids[v]), lines[v]);
    vs[v].parent = it->second;
  }

  if (opts.binarize) detail::binarize_in_place(vs, *root);
  return GeometricTree(std::move(vs));
}

inline GeometricTree parse_swc(const std::string& text, const SwcOptions& opts = {}) {
  std::istringstream in(text);
  return parse_swc(in, opts);
}

// Writes vertices with ids 1..N in vertex-id order. Coordinates use the
// shortest exact decimal form, so parse_swc(write_swc(t)) == t.
inline void write_swc(std::ostream& out, const GeometricTree& tree) {
  for (VertexId v = 0; v < tree.size(); ++v) {
    const auto& vx = tree.vertex(v);
    out << (v + 1) << ' ' << vx.swc_type << ' ' << format_exact(vx.position.x) << ' ' << format_exact(vx.position.y)
        << ' ' << format_exact(vx.position.z) << ' ' << format_exact(vx.radius) << ' '
        << (vx.parent ? static_cast<long long>(*vx.parent) + 1 : -1LL) << '\n';
  }
}

inline std::string to_swc(const GeometricTree& tree) {
  std::ostringstream out;
  write_swc(out, tree);
  return out.str();
}

}  // namespace bf
