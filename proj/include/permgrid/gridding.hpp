#ifndef PERMGRID_GRIDDING_HPP
#define PERMGRID_GRIDDING_HPP

#include <vector>

#include "permgrid/hasse.hpp"
#include "permgrid/perm.hpp"

namespace permgrid {

// A permutation cut into the 2x2 grid [empty, Av(21); Av(21), Av(213)]:
// positions 1..c are the left points, values > r are the top points.  Valid
// when the upper-left cell is empty, left and top cells are increasing, and
// the lower-right cell avoids 213.
struct GriddedPermutation {
    Permutation perm;
    int c = 0;
    int r = 0;
    std::vector<Point> lefts;  // positions 1..c, value-increasing
    std::vector<Point> tops;   // values r+1..n in position order, value-increasing
    std::vector<Point> lower;  // the rest, position order
};

// True iff (c,r) cuts perm into legal cells.  Throws std::invalid_argument
// when c or r falls outside [0,n].
bool is_valid_gridding(const Permutation& perm, int c, int r);

// Materialises a validated gridding; throws std::invalid_argument when
// is_valid_gridding fails.
GriddedPermutation make_gridding(const Permutation& perm, int c, int r);

// Every valid (c,r), ascending lexicographically.
std::vector<GriddedPermutation> all_griddings(const Permutation& perm);

// A gridding together with the Hasse forest of its lower-right cell and the
// interleaving data that makes the decomposition reversible: each top point is
// assigned the nearest lower-cell point strictly to its left, each left point
// the nearest lower-cell point strictly below (index into forest.points, or
// -1 for "before/below all").
struct CanonicalGridding {
    GriddedPermutation gridded;
    PlaneForest forest;
    std::vector<int> top_anchor;
    std::vector<int> left_anchor;
};

// Canonical gridding with an empty left column: r is the largest valid row
// cut (fewest top points).  Succeeds exactly on Av(4213,2413,2143); throws
// std::domain_error otherwise.
CanonicalGridding canonical_gridding_H(const Permutation& perm);

// Canonical gridding with the smallest valid column cut, the remaining points
// cut as in canonical_gridding_H.  Succeeds exactly on Av(4213,2143); throws
// std::domain_error otherwise.
CanonicalGridding canonical_gridding_D(const Permutation& perm);

// The splitting test: true iff (a) no left point splits a tree below its
// uppermost non-trunk vertex, and (b) no tree is split by a left point while a
// top point splits its trunk.  Equivalent to 2143-avoidance of the underlying
// permutation.
bool gridding_avoids_2143(const GriddedPermutation& g);
bool gridding_avoids_2143(const CanonicalGridding& cg);

// Inverse of decomposition.  Only the forest shape and the anchor vectors are
// consulted, so synthesized structures (e.g. from the sampler) rebuild without
// reference coordinates; throws std::invalid_argument on inconsistent anchors.
Permutation rebuild(const CanonicalGridding& cg);

}  // namespace permgrid

#endif
