#pragma once

#include <compare>
#include <string>
#include <vector>

#include "replab/coloring.hpp"
#include "replab/graph.hpp"
#include "replab/tree.hpp"

namespace replab {

// Canonical byte string of a rooted connected graph with 0-2 colorings.
//
// Layout: kind byte ('T' tree, 'G' otherwise), number of colorings, varint body
// length, body. A tree body is the AHU encoding of the root: a vertex is
// '(' , one varint per coloring, the sorted codes of its children, ')'.
// For other graphs, pendant trees are folded into labels of the remaining core
// and the core is canonicalized by individualization-refinement; the body is the
// lexicographically least certificate (labels in order, then adjacency bits).
struct LocalCode {
  std::string bytes;
  bool is_tree = true;

  std::string hex() const;
  friend bool operator==(const LocalCode&, const LocalCode&) = default;
  friend auto operator<=>(const LocalCode& a, const LocalCode& b) { return a.bytes <=> b.bytes; }
};

struct CanonicalOptions {
  std::uint64_t max_leaves = 200'000;  // search leaves before CapacityError
};

// g connected (vertices unreachable from root are ignored); colorings indexed like g.
LocalCode canonical_code(const Graph& g, Vertex root, const std::vector<const Coloring*>& colorings = {},
                         const CanonicalOptions& options = {});
// Ball with colorings of the host graph.
LocalCode canonical_code(const RootedBall& b, const Coloring* sigma1 = nullptr, const Coloring* sigma2 = nullptr,
                         const CanonicalOptions& options = {});
LocalCode canonical_code(const RootedColoredTree& t);

// Per-vertex AHU body of each subtree; with_colors selects whether color tags
// (of however many colorings t carries) are included.
std::vector<std::string> subtree_codes(const RootedColoredTree& t, bool with_colors);

namespace detail {
void put_varint(std::string& out, std::uint64_t x);
std::string wrap_code(char kind, int colorings, const std::string& body);
}  // namespace detail

}  // namespace replab
