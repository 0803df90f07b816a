#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "replab/coloring.hpp"
#include "replab/graph.hpp"
#include "replab/rng.hpp"

namespace replab {

// Rooted tree on 0..size-1 with root 0 and parent[v] < v (BFS-compatible
// order), carrying zero, one or two colorings.
class RootedColoredTree {
 public:
  RootedColoredTree();  // a bare root
  explicit RootedColoredTree(std::vector<int> parent);

  int size() const { return static_cast<int>(parent_.size()); }
  int parent(int v) const { return parent_[v]; }
  int depth(int v) const { return depth_[v]; }
  const std::vector<int>& parents() const { return parent_; }
  const std::vector<int>& depths() const { return depth_; }
  int height() const;
  std::vector<std::vector<int>> children() const;
  Graph graph() const;

  // Colorings must be proper on the tree; slot is 1 or 2.
  void set_coloring(int slot, Coloring c);
  const std::optional<Coloring>& coloring(int slot) const { return slot == 1 ? colors1_ : colors2_; }
  int colorings() const { return colors1_ ? (colors2_ ? 2 : 1) : 0; }
  void clear_colorings();

  // Vertices at depth <= d, relabeled in the same relative order, colors kept.
  RootedColoredTree truncated(int d) const;

  // AHU-style code with color tags (see canonical.hpp); cached.
  const std::string& canonical_code() const;

 private:
  std::vector<int> parent_;
  std::vector<int> depth_;
  std::optional<Coloring> colors1_, colors2_;
  mutable std::optional<std::string> code_;
};

// Tree view of an acyclic ball; colorings are global and get restricted.
RootedColoredTree tree_from_ball(const RootedBall& b, const Coloring* sigma1 = nullptr,
                                 const Coloring* sigma2 = nullptr);

// Galton-Watson Po(d) tree explored to depth omega. Throws CapacityError past max_size vertices.
RootedColoredTree sample_gw_tree(double d, int omega, Rng& rng, int max_size = 1'000'000);

// Root uniform on [k], each child uniform on the k-1 colors its parent leaves free.
RootedColoredTree broadcast_coloring(const RootedColoredTree& t, int k, Rng& rng);
// Two independent broadcasts in slots 1 and 2.
RootedColoredTree broadcast_dicoloring(const RootedColoredTree& t, int k, Rng& rng);

// P[depth-omega truncation of T(d) is isomorphic to theta], colors ignored.
double gw_shape_probability(const RootedColoredTree& theta, double d, int omega);
// gw_shape_probability / Z_k(theta)^2.
double q_target(const RootedColoredTree& theta, const Coloring& tau1, const Coloring& tau2, double d, int omega,
                int k);

// Distribution of the colored code of the depth-omega0 truncation under a uniform
// proper k-coloring, by DP over subtrees. Existing colorings of t are ignored.
std::map<std::string, Rational> tree_ball_distribution(const RootedColoredTree& t, int omega0, int k);

namespace trees {
RootedColoredTree path(int n);  // rooted at an end
RootedColoredTree star(int leaves);
}  // namespace trees

}  // namespace replab
