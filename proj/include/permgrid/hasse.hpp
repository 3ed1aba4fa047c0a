#ifndef PERMGRID_HASSE_HPP
#define PERMGRID_HASSE_HPP

#include <compare>
#include <optional>
#include <span>
#include <vector>

#include "permgrid/perm.hpp"

namespace permgrid {

struct Point {
    int pos = 0;
    int val = 0;
    auto operator<=>(const Point&) const = default;
};

// Hasse decomposition of a 213-avoiding point set under the dominance order
// "u < v iff u is lower-left of v": a skew sum of plane trees, first tree
// leftmost and uppermost.  Nodes are indices into `points`, which is sorted by
// position; every tree and subtree occupies a contiguous index range.
struct PlaneForest {
    std::vector<Point> points;               // position-ascending
    std::vector<int> parent;                 // -1 at roots
    std::vector<std::vector<int>> children;  // per node, position order; child
                                             // value blocks strictly decrease
    std::vector<int> roots;                  // position order

    int size() const { return static_cast<int>(points.size()); }
    bool empty() const { return points.empty(); }

    // First component of the skew sum (the one with the highest values).
    int upper_tree() const { return roots.front(); }

    // Subtree node indices in position order (= preorder).
    std::vector<int> tree_nodes(int root) const;

    // Root, then repeatedly the first child.  The trunk is the set of
    // left-to-right maxima of the subtree and occupies its first positions.
    std::vector<int> trunk(int root) const;

    // Last trunk node; carries the subtree's maximum value.
    int tip(int root) const;

    // Deepest trunk node with >= 2 children ("uppermost" = nearest the tip);
    // absent when the subtree is a path.
    std::optional<int> uppermost_branching_point(int root) const;

    // Maximum-value vertex off the trunk; equivalently the tip of the first
    // subtree hanging off the uppermost branching point.  Absent for paths.
    std::optional<int> uppermost_non_trunk_vertex(int root) const;
};

// Decomposes a 213-avoiding point set (arbitrary distinct positions/values)
// into its Hasse forest: parent(v) = the lower-left point of v with maximal
// value.  Throws std::domain_error when the value pattern contains 213, since
// the lower-left sets are then no longer chains.
PlaneForest hasse_forest(std::vector<Point> pts);
PlaneForest hasse_forest(const Permutation& p);

// Builds the forest with the stated children lists and root order, laying out
// canonical coordinates (positions = preorder 1..m; each node's child blocks
// take the top remaining values in order).  This is the inverse bijection:
// every plane forest shape arises from exactly one 213-avoider.  Throws
// std::invalid_argument if the lists do not describe a forest.
PlaneForest forest_from_shape(const std::vector<std::vector<int>>& children,
                              const std::vector<int>& roots);

enum class Axis {
    horizontal,  // test the point's position against a position span
    vertical,    // test the point's value against a value span
};

// Strict interval test against the span of the given nodes.
bool splits(const Point& p, const PlaneForest& f, std::span<const int> nodes, Axis axis);
// Same, spanning the whole subtree at `root`.
bool splits(const Point& p, const PlaneForest& f, int root, Axis axis);

}  // namespace permgrid

#endif
