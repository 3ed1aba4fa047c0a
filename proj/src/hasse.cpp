#include "permgrid/hasse.hpp"

#include <algorithm>
#include <stdexcept>

namespace permgrid {

std::vector<int> PlaneForest::tree_nodes(int root) const {
    std::vector<int> out, stack{root};
    while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        out.push_back(v);
        const auto& ch = children[static_cast<size_t>(v)];
        for (auto it = ch.rbegin(); it != ch.rend(); ++it) stack.push_back(*it);
    }
    std::sort(out.begin(), out.end());  // preorder equals position order anyway
    return out;
}

std::vector<int> PlaneForest::trunk(int root) const {
    std::vector<int> out{root};
    while (!children[static_cast<size_t>(out.back())].empty())
        out.push_back(children[static_cast<size_t>(out.back())].front());
    return out;
}

int PlaneForest::tip(int root) const { return trunk(root).back(); }

std::optional<int> PlaneForest::uppermost_branching_point(int root) const {
    const std::vector<int> t = trunk(root);
    for (auto it = t.rbegin(); it != t.rend(); ++it)
        if (children[static_cast<size_t>(*it)].size() >= 2) return *it;
    return std::nullopt;
}

std::optional<int> PlaneForest::uppermost_non_trunk_vertex(int root) const {
    const std::optional<int> b = uppermost_branching_point(root);
    if (!b) return std::nullopt;
    // Tip of the first subtree off the trunk: the branching point's second
    // child starts it, and its own trunk ends at its maximum.
    return tip(children[static_cast<size_t>(*b)][1]);
}

PlaneForest hasse_forest(std::vector<Point> pts) {
    std::sort(pts.begin(), pts.end());  // by position; positions are distinct
    {
        std::vector<int> vals;
        vals.reserve(pts.size());
        for (const Point& p : pts) vals.push_back(p.val);
        static const Permutation pat213 = Permutation::parse("2 1 3");
        if (contains(vals, pat213.span()))
            throw std::domain_error("point set is not 213-avoiding: no Hasse forest");
    }

    PlaneForest f;
    f.points = std::move(pts);
    const int m = f.size();
    f.parent.assign(static_cast<size_t>(m), -1);
    f.children.assign(static_cast<size_t>(m), {});
    for (int v = 0; v < m; ++v) {
        int best = -1;
        for (int u = 0; u < v; ++u)
            if (f.points[static_cast<size_t>(u)].val < f.points[static_cast<size_t>(v)].val &&
                (best < 0 ||
                 f.points[static_cast<size_t>(u)].val > f.points[static_cast<size_t>(best)].val))
                best = u;
        f.parent[static_cast<size_t>(v)] = best;
        if (best >= 0)
            f.children[static_cast<size_t>(best)].push_back(v);
        else
            f.roots.push_back(v);
    }
    return f;
}

PlaneForest hasse_forest(const Permutation& p) {
    std::vector<Point> pts;
    pts.reserve(static_cast<size_t>(p.size()));
    for (int i = 0; i < p.size(); ++i) pts.push_back({i + 1, p[i]});
    return hasse_forest(std::move(pts));
}

namespace {

int subtree_size(const std::vector<std::vector<int>>& children, int v,
                 std::vector<int>& memo) {
    if (memo[static_cast<size_t>(v)]) return memo[static_cast<size_t>(v)];
    int s = 1;
    for (int c : children[static_cast<size_t>(v)]) s += subtree_size(children, c, memo);
    return memo[static_cast<size_t>(v)] = s;
}

}  // namespace

PlaneForest forest_from_shape(const std::vector<std::vector<int>>& children,
                              const std::vector<int>& roots) {
    const int m = static_cast<int>(children.size());
    std::vector<int> indeg(static_cast<size_t>(m), 0);
    for (const auto& ch : children)
        for (int c : ch) {
            if (c < 0 || c >= m) throw std::invalid_argument("child index out of range");
            ++indeg[static_cast<size_t>(c)];
        }
    for (int rt : roots) {
        if (rt < 0 || rt >= m) throw std::invalid_argument("root index out of range");
        ++indeg[static_cast<size_t>(rt)];
    }
    for (int v = 0; v < m; ++v)
        if (indeg[static_cast<size_t>(v)] != 1)
            throw std::invalid_argument("shape is not a forest: node " + std::to_string(v) +
                                        " has " + std::to_string(indeg[static_cast<size_t>(v)]) +
                                        " parents");

    PlaneForest f;
    f.points.assign(static_cast<size_t>(m), {});
    f.parent.assign(static_cast<size_t>(m), -1);
    f.children = children;
    f.roots = roots;

    std::vector<int> memo(static_cast<size_t>(m), 0);
    int next_pos = 0;
    // assign(v, hi): v's block holds values hi-size+1 .. hi; the root takes the
    // bottom one and child blocks descend from the top in child order.
    auto assign = [&](auto&& self, int v, int hi) -> void {
        const int lo = hi - subtree_size(children, v, memo) + 1;
        f.points[static_cast<size_t>(v)] = {++next_pos, lo};
        int top = hi;
        for (int c : f.children[static_cast<size_t>(v)]) {
            self(self, c, top);
            top -= subtree_size(children, c, memo);
            f.parent[static_cast<size_t>(c)] = v;
        }
    };
    int hi = m;
    for (int rt : roots) {
        assign(assign, rt, hi);
        hi -= subtree_size(children, rt, memo);
    }
    if (next_pos != m) throw std::invalid_argument("shape is not a forest: unreachable nodes");

    // Canonical coordinates list nodes in preorder, so re-sorting by position
    // must be a no-op; renumber node ids to position order for the invariant
    // "index order = position order".
    std::vector<int> order(static_cast<size_t>(m));
    for (int v = 0; v < m; ++v)
        order[static_cast<size_t>(f.points[static_cast<size_t>(v)].pos - 1)] = v;
    PlaneForest g;
    g.points.resize(static_cast<size_t>(m));
    g.parent.assign(static_cast<size_t>(m), -1);
    g.children.assign(static_cast<size_t>(m), {});
    std::vector<int> rank(static_cast<size_t>(m), 0);
    for (int i = 0; i < m; ++i) rank[static_cast<size_t>(order[static_cast<size_t>(i)])] = i;
    for (int i = 0; i < m; ++i) {
        const int v = order[static_cast<size_t>(i)];
        g.points[static_cast<size_t>(i)] = f.points[static_cast<size_t>(v)];
        if (f.parent[static_cast<size_t>(v)] >= 0)
            g.parent[static_cast<size_t>(i)] =
                rank[static_cast<size_t>(f.parent[static_cast<size_t>(v)])];
        for (int c : f.children[static_cast<size_t>(v)])
            g.children[static_cast<size_t>(i)].push_back(rank[static_cast<size_t>(c)]);
    }
    for (int rt : roots) g.roots.push_back(rank[static_cast<size_t>(rt)]);
    return g;
}

bool splits(const Point& p, const PlaneForest& f, std::span<const int> nodes, Axis axis) {
    if (nodes.empty()) return false;
    int lo = 0, hi = 0;
    bool first = true;
    for (int v : nodes) {
        const Point& q = f.points[static_cast<size_t>(v)];
        const int x = (axis == Axis::horizontal) ? q.pos : q.val;
        if (first) {
            lo = hi = x;
            first = false;
        } else {
            lo = std::min(lo, x);
            hi = std::max(hi, x);
        }
    }
    const int y = (axis == Axis::horizontal) ? p.pos : p.val;
    return lo < y && y < hi;
}

bool splits(const Point& p, const PlaneForest& f, int root, Axis axis) {
    const std::vector<int> nodes = f.tree_nodes(root);
    return splits(p, f, nodes, axis);
}

}  // namespace permgrid
