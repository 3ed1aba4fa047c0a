#include "permgrid/gridding.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace permgrid {

namespace {

const Permutation& pat213() {
    static const Permutation p = Permutation::parse("2 1 3");
    return p;
}

void check_cut_range(const Permutation& perm, int c, int r) {
    const int n = perm.size();
    if (c < 0 || c > n || r < 0 || r > n)
        throw std::invalid_argument("cut (" + std::to_string(c) + "," + std::to_string(r) +
                                    ") outside [0," + std::to_string(n) + "]^2");
}

}  // namespace

bool is_valid_gridding(const Permutation& perm, int c, int r) {
    check_cut_range(perm, c, r);
    const int n = perm.size();
    for (int i = 0; i < c; ++i) {
        if (perm[i] > r) return false;                 // upper-left must be empty
        if (i > 0 && perm[i - 1] > perm[i]) return false;  // left cell increasing
    }
    int last_top = 0;
    std::vector<int> low;
    low.reserve(static_cast<size_t>(n - c));
    for (int i = c; i < n; ++i) {
        if (perm[i] > r) {
            if (perm[i] < last_top) return false;  // top cell increasing by position
            last_top = perm[i];
        } else {
            low.push_back(perm[i]);
        }
    }
    return !contains(low, pat213().span());
}

GriddedPermutation make_gridding(const Permutation& perm, int c, int r) {
    if (!is_valid_gridding(perm, c, r))
        throw std::invalid_argument("(" + std::to_string(c) + "," + std::to_string(r) +
                                    ") is not a valid gridding of " + perm.str());
    GriddedPermutation g;
    g.perm = perm;
    g.c = c;
    g.r = r;
    for (int i = 0; i < perm.size(); ++i) {
        const Point p{i + 1, perm[i]};
        if (i < c)
            g.lefts.push_back(p);
        else if (p.val > r)
            g.tops.push_back(p);
        else
            g.lower.push_back(p);
    }
    return g;
}

std::vector<GriddedPermutation> all_griddings(const Permutation& perm) {
    std::vector<GriddedPermutation> out;
    const int n = perm.size();
    for (int c = 0; c <= n; ++c)
        for (int r = 0; r <= n; ++r)
            if (is_valid_gridding(perm, c, r)) out.push_back(make_gridding(perm, c, r));
    return out;
}

namespace {

CanonicalGridding decompose(GriddedPermutation g) {
    CanonicalGridding cg;
    cg.forest = hasse_forest(g.lower);
    const std::vector<Point>& lower = cg.forest.points;  // == g.lower (position-sorted)

    for (const Point& t : g.tops) {
        int a = -1;
        while (a + 1 < static_cast<int>(lower.size()) &&
               lower[static_cast<size_t>(a + 1)].pos < t.pos)
            ++a;
        cg.top_anchor.push_back(a);
    }
    // Nearest lower point strictly below each left point, by value.
    std::vector<int> by_val(lower.size());
    for (size_t i = 0; i < lower.size(); ++i) by_val[i] = static_cast<int>(i);
    std::sort(by_val.begin(), by_val.end(), [&](int a, int b) {
        return lower[static_cast<size_t>(a)].val < lower[static_cast<size_t>(b)].val;
    });
    for (const Point& l : g.lefts) {
        int best = -1;
        for (int u : by_val) {
            if (lower[static_cast<size_t>(u)].val > l.val) break;
            best = u;
        }
        cg.left_anchor.push_back(best);
    }
    cg.gridded = std::move(g);
    return cg;
}

}  // namespace

CanonicalGridding canonical_gridding_H(const Permutation& perm) {
    for (int r = perm.size(); r >= 0; --r)
        if (is_valid_gridding(perm, 0, r)) return decompose(make_gridding(perm, 0, r));
    throw std::domain_error("no empty-left-column gridding: " + perm.str() +
                            " is not in Av(4213,2413,2143)");
}

CanonicalGridding canonical_gridding_D(const Permutation& perm) {
    // Griddability alone admits 2143 (it has two valid griddings); class
    // membership needs the pattern test as well.
    static const Permutation pat2143 = Permutation::parse("2 1 4 3");
    if (contains(perm, pat2143))
        throw std::domain_error("contains 2143: " + perm.str() + " is not in Av(4213,2143)");
    const int n = perm.size();
    for (int c = 0; c <= n; ++c) {
        if (c >= 2 && perm[c - 2] > perm[c - 1]) break;  // prefix no longer increasing
        for (int r = n; r >= 0; --r)
            if (is_valid_gridding(perm, c, r)) return decompose(make_gridding(perm, c, r));
    }
    throw std::domain_error("no valid gridding: " + perm.str() + " is not in Av(4213,2143)");
}

namespace {

bool avoids_2143_impl(const GriddedPermutation& g, const PlaneForest& f) {
    for (int root : f.roots) {
        const std::vector<int> nodes = f.tree_nodes(root);
        // (a) a left point strictly between the root and the uppermost
        // non-trunk vertex in value splits the tree below that vertex.
        if (const auto u = f.uppermost_non_trunk_vertex(root)) {
            const int root_val = f.points[static_cast<size_t>(root)].val;
            const int u_val = f.points[static_cast<size_t>(*u)].val;
            for (const Point& l : g.lefts)
                if (root_val < l.val && l.val < u_val) return false;
        }
        // (b) a split tree must not have its trunk split by a top point.
        bool split = false;
        for (const Point& l : g.lefts)
            if (splits(l, f, nodes, Axis::vertical)) {
                split = true;
                break;
            }
        if (split) {
            const std::vector<int> tr = f.trunk(root);
            for (const Point& t : g.tops)
                if (splits(t, f, tr, Axis::horizontal)) return false;
        }
    }
    return true;
}

}  // namespace

bool gridding_avoids_2143(const GriddedPermutation& g) {
    return avoids_2143_impl(g, hasse_forest(g.lower));
}

bool gridding_avoids_2143(const CanonicalGridding& cg) {
    return avoids_2143_impl(cg.gridded, cg.forest);
}

Permutation rebuild(const CanonicalGridding& cg) {
    const PlaneForest& f = cg.forest;
    const int m = f.size();
    const int k = static_cast<int>(cg.top_anchor.size());
    const int c = static_cast<int>(cg.left_anchor.size());
    const int n = m + k + c;

    for (int a : cg.top_anchor)
        if (a < -1 || a >= m) throw std::invalid_argument("top assignment out of range");
    for (int a : cg.left_anchor)
        if (a < -1 || a >= m) throw std::invalid_argument("left assignment out of range");
    for (int i = 1; i < k; ++i)
        if (cg.top_anchor[static_cast<size_t>(i - 1)] > cg.top_anchor[static_cast<size_t>(i)])
            throw std::invalid_argument("top assignments out of position order");

    // Nodes by value; left anchors must be non-decreasing in anchor value.
    std::vector<int> by_val(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i) by_val[static_cast<size_t>(i)] = i;
    std::sort(by_val.begin(), by_val.end(), [&](int a, int b) {
        return f.points[static_cast<size_t>(a)].val < f.points[static_cast<size_t>(b)].val;
    });
    std::vector<int> val_rank(static_cast<size_t>(m), 0);  // 1-based rank
    for (int i = 0; i < m; ++i) val_rank[static_cast<size_t>(by_val[static_cast<size_t>(i)])] = i + 1;
    auto left_key = [&](int a) { return a < 0 ? 0 : val_rank[static_cast<size_t>(a)]; };
    for (int i = 1; i < c; ++i)
        if (left_key(cg.left_anchor[static_cast<size_t>(i - 1)]) >
            left_key(cg.left_anchor[static_cast<size_t>(i)]))
            throw std::invalid_argument("left assignments out of value order");

    // Values: sweep value ranks upward, inserting each left just above its
    // assigned node.  Lefts and lower points take 1..m+c, tops the rest.
    std::vector<int> val_left(static_cast<size_t>(c), 0);
    std::vector<int> val_node(static_cast<size_t>(m), 0);
    int vcur = 0, li = 0;
    while (li < c && cg.left_anchor[static_cast<size_t>(li)] < 0)
        val_left[static_cast<size_t>(li++)] = ++vcur;
    for (int u : by_val) {
        val_node[static_cast<size_t>(u)] = ++vcur;
        while (li < c && cg.left_anchor[static_cast<size_t>(li)] == u)
            val_left[static_cast<size_t>(li++)] = ++vcur;
    }
    if (li != c) throw std::invalid_argument("left assignments inconsistent");

    // Positions: lefts occupy 1..c, then lower points and tops interleave.
    std::vector<int> pos_top(static_cast<size_t>(k), 0);
    std::vector<int> pos_node(static_cast<size_t>(m), 0);
    int pcur = c, ti = 0;
    while (ti < k && cg.top_anchor[static_cast<size_t>(ti)] < 0)
        pos_top[static_cast<size_t>(ti++)] = ++pcur;
    for (int u = 0; u < m; ++u) {
        pos_node[static_cast<size_t>(u)] = ++pcur;
        while (ti < k && cg.top_anchor[static_cast<size_t>(ti)] == u)
            pos_top[static_cast<size_t>(ti++)] = ++pcur;
    }
    if (ti != k) throw std::invalid_argument("top assignments inconsistent");

    std::vector<int> one_line(static_cast<size_t>(n), 0);
    for (int i = 0; i < c; ++i) one_line[static_cast<size_t>(i)] = val_left[static_cast<size_t>(i)];
    for (int u = 0; u < m; ++u)
        one_line[static_cast<size_t>(pos_node[static_cast<size_t>(u)] - 1)] =
            val_node[static_cast<size_t>(u)];
    for (int i = 0; i < k; ++i)
        one_line[static_cast<size_t>(pos_top[static_cast<size_t>(i)] - 1)] = m + c + 1 + i;
    return Permutation(std::move(one_line));
}

}  // namespace permgrid
