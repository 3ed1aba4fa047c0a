#include "permgrid/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>
#include <string>
#include <utility>

#include "permgrid/gridding.hpp"
#include "permgrid/hasse.hpp"

namespace permgrid {

WeightTables build_tables(int n_max) {
    if (n_max < 1) throw std::invalid_argument("build_tables: n_max must be at least 1");
    const std::size_t sz = static_cast<std::size_t>(n_max) + 1;
    WeightTables t;
    t.n_max = n_max;
    for (auto* v : {&t.P, &t.T, &t.F, &t.SW, &t.UB, &t.U, &t.H, &t.SI, &t.SIL, &t.LmP, &t.Q,
                    &t.SP, &t.S, &t.G, &t.SG, &t.HS, &t.HSG, &t.D})
        v->assign(sz, Int(0));
    t.F[0] = 1;
    t.SW[0] = 1;
    t.SI[0] = 1;
    t.SP[0] = 1;
    t.SG[0] = 1;
    for (int n = 1; n <= n_max; ++n) {
        const auto N = static_cast<std::size_t>(n);
        t.P[N] = 1;
        for (int j = 1; j <= n; ++j)  // vertex with j-1 tops, then its subtrees
            t.T[N] += t.F[static_cast<std::size_t>(n - j)];
        for (int j = 1; j <= n; ++j)
            t.F[N] += t.T[static_cast<std::size_t>(j)] * t.F[static_cast<std::size_t>(n - j)];
        for (int j = 1; j <= n; ++j)  // trunk vertex with its subtrees, then the rest
            t.SW[N] += t.F[static_cast<std::size_t>(j - 1)] * t.SW[static_cast<std::size_t>(n - j)];
        for (int j = 2; j <= n; ++j)  // branching vertex with >= 1 subtrees, then SW
            t.UB[N] += t.F[static_cast<std::size_t>(j - 1)] * t.SW[static_cast<std::size_t>(n - j)];
        t.U[N] = t.P[N];
        for (int p = 1; p < n; ++p)
            t.U[N] += t.UB[static_cast<std::size_t>(n - p)];
        for (int j = 1; j <= n; ++j)
            t.H[N] += t.U[static_cast<std::size_t>(j)] * t.F[static_cast<std::size_t>(n - j)];
        for (int j = 1; j <= n; ++j)  // path vertex with j-1 gap lefts below it
            t.SI[N] += t.SI[static_cast<std::size_t>(n - j)];
        t.SIL[N] = t.SI[N] - 1;  // discard the one left-free object per size
        if (n >= 2) t.LmP[N] = t.SIL[N - 1];  // bottom vertex, then split items
        for (int j = 2; j <= n; ++j)          // remainder: tops right of the tip
            t.Q[N] += t.LmP[static_cast<std::size_t>(j)];
        for (int j = 1; j <= n; ++j)
            t.SP[N] += t.F[static_cast<std::size_t>(j)] * t.SW[static_cast<std::size_t>(n - j)];
        for (int a = 1; a <= n; ++a)
            t.S[N] += t.Q[static_cast<std::size_t>(a)] * t.SP[static_cast<std::size_t>(n - a)];
        for (int m = 1; m <= n; ++m)  // n - m lefts above a tree of size m
            t.G[N] += t.T[static_cast<std::size_t>(m)] + t.S[static_cast<std::size_t>(m)];
        for (int g = 1; g <= n; ++g)
            t.SG[N] += t.G[static_cast<std::size_t>(g)] * t.SG[static_cast<std::size_t>(n - g)];
        for (int a = 1; a <= n; ++a)
            t.HS[N] += t.H[static_cast<std::size_t>(a)] * t.S[static_cast<std::size_t>(n - a)];
        for (int j = 1; j <= n; ++j)
            t.HSG[N] += t.HS[static_cast<std::size_t>(j)] * t.SG[static_cast<std::size_t>(n - j)];
        t.D[N] = t.H[N];
        for (int m = 1; m <= n; ++m)  // n - m trailing lefts below everything
            t.D[N] += t.HSG[static_cast<std::size_t>(m)];
    }
    return t;
}

Int uniform_below(const Int& bound, std::mt19937_64& rng) {
    if (bound <= 0) throw std::invalid_argument("uniform_below: bound must be positive");
    const std::size_t bits = mpz_sizeinbase(bound.get_mpz_t(), 2);
    const std::size_t words = (bits + 63) / 64;
    const unsigned shift = static_cast<unsigned>(words * 64 - bits);
    Int r;
    for (;;) {
        r = 0;
        for (std::size_t i = 0; i < words; ++i) {
            std::uint64_t w = rng();
            if (i == 0) w >>= shift;
            r <<= 64;
            r += Int(static_cast<unsigned long>(w));
        }
        if (r < bound) return r;
    }
}

namespace {

// Index into w proportionally to the weights; the total must be positive.
int pick(const std::vector<Int>& w, std::mt19937_64& rng) {
    Int total = 0;
    for (const Int& x : w) total += x;
    Int r = uniform_below(total, rng);
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (r < w[i]) return static_cast<int>(i);
        r -= w[i];
    }
    throw std::logic_error("pick: weights inconsistent");
}

struct Node {
    std::vector<Node*> kids;
    int tops = 0;  // top points anchored at this vertex
    int id = -1;   // preorder index, assigned at assembly
};

// A run of left points with the vertex directly below them (nullptr when the
// run sits below every lower point).
struct LeftBatch {
    int count = 0;
    Node* anchor = nullptr;
};

// A sampled tree: root, trunk end, and the runs of lefts splitting it in
// bottom-up order.
struct STree {
    Node* root = nullptr;
    Node* tip = nullptr;
    std::vector<LeftBatch> gaps;
};

// One derivation.  Every choice is drawn proportionally to the exact tables,
// expanding the decomposition top-down and materialising the plane forest
// plus the marker runs directly; child lists are built in position order with
// the trunk continuation first, matching the canonical forest layout.
struct Build {
    const WeightTables& t;
    std::mt19937_64& rng;
    std::deque<Node> arena;

    Node* node() { return &arena.emplace_back(); }

    static Node* tip_of(Node* v) {
        while (!v->kids.empty()) v = v->kids.front();
        return v;
    }

    // T: a vertex carrying j-1 tops, then its subtree forest.
    Node* tree(int n) {
        std::vector<Int> w(static_cast<std::size_t>(n) + 1);
        for (int j = 1; j <= n; ++j) w[static_cast<std::size_t>(j)] = t.F[static_cast<std::size_t>(n - j)];
        const int j = pick(w, rng);
        Node* v = node();
        v->tops = j - 1;
        v->kids = forest(n - j);
        return v;
    }

    // Seq(T): split off the first tree while anything remains.
    std::vector<Node*> forest(int n) {
        std::vector<Node*> out;
        while (n > 0) {
            std::vector<Int> w(static_cast<std::size_t>(n) + 1);
            for (int j = 1; j <= n; ++j)
                w[static_cast<std::size_t>(j)] =
                    t.T[static_cast<std::size_t>(j)] * t.F[static_cast<std::size_t>(n - j)];
            const int j = pick(w, rng);
            out.push_back(tree(j));
            n -= j;
        }
        return out;
    }

    // Seq(z Seq(T)): trunk vertices below a branching point, highest first,
    // each with its subtree forest; the caller threads the chain.
    std::vector<std::pair<Node*, std::vector<Node*>>> trunk_below(int n) {
        std::vector<std::pair<Node*, std::vector<Node*>>> out;
        while (n > 0) {
            std::vector<Int> w(static_cast<std::size_t>(n) + 1);
            for (int j = 1; j <= n; ++j)
                w[static_cast<std::size_t>(j)] =
                    t.F[static_cast<std::size_t>(j - 1)] * t.SW[static_cast<std::size_t>(n - j)];
            const int j = pick(w, rng);
            Node* v = node();
            out.emplace_back(v, forest(j - 1));
            n -= j;
        }
        return out;
    }

    // Vertical chain of len bare vertices; returns its bottom (the root side).
    Node* chain(int len) {
        Node* cur = node();
        for (int i = 1; i < len; ++i) {
            Node* nx = node();
            nx->kids.push_back(cur);
            cur = nx;
        }
        return cur;
    }

    // Upper tree: a bare path, or c trunk vertices above a branching point
    // that roots >= 1 subtrees over a lower trunk.  No vertex carries tops:
    // the leftmost top of the whole permutation may not ride the upper trunk.
    Node* upper(int n) {
        std::vector<Int> w(static_cast<std::size_t>(n) + 1);
        w[0] = t.P[static_cast<std::size_t>(n)];
        for (int p = 1; p < n; ++p) w[static_cast<std::size_t>(p)] = t.UB[static_cast<std::size_t>(n - p)];
        const int c = pick(w, rng);
        if (c == 0) return chain(n);
        const int m = n - c;
        std::vector<Int> w2(static_cast<std::size_t>(m) + 1);
        for (int j = 2; j <= m; ++j)
            w2[static_cast<std::size_t>(j)] =
                t.F[static_cast<std::size_t>(j - 1)] * t.SW[static_cast<std::size_t>(m - j)];
        const int j = pick(w2, rng);
        Node* b = node();
        b->kids.push_back(chain(c));
        for (Node* s : forest(j - 1)) b->kids.push_back(s);
        Node* root = b;
        for (auto& [v, fr] : trunk_below(m - j)) {
            v->kids.push_back(root);
            for (Node* s : fr) v->kids.push_back(s);
            root = v;
        }
        return root;
    }

    // U Seq(T): the forest of an H-member, upper tree first.
    std::vector<Node*> h_forest(int n) {
        std::vector<Int> w(static_cast<std::size_t>(n) + 1);
        for (int j = 1; j <= n; ++j)
            w[static_cast<std::size_t>(j)] =
                t.U[static_cast<std::size_t>(j)] * t.F[static_cast<std::size_t>(n - j)];
        const int j = pick(w, rng);
        std::vector<Node*> roots{upper(j)};
        for (Node* s : forest(n - j)) roots.push_back(s);
        return roots;
    }

    struct GapItem {
        Node* v = nullptr;
        int lefts = 0;  // run in the gap directly below v
    };

    // Seq(z Seq(lz)): path vertices above the bottom one, bottom-up, each with
    // the run of lefts in the gap below it.
    std::vector<GapItem> gap_items(int m) {
        std::vector<GapItem> out;
        while (m > 0) {
            std::vector<Int> w(static_cast<std::size_t>(m) + 1);
            for (int j = 1; j <= m; ++j)
                w[static_cast<std::size_t>(j)] = t.SI[static_cast<std::size_t>(m - j)];
            const int j = pick(w, rng);
            out.push_back({node(), j - 1});
            m -= j;
        }
        return out;
    }

    // Same, conditioned on at least one left: either the first item already
    // carries lefts and the rest is free, or it is bare and the rest is still
    // conditioned.
    std::vector<GapItem> gap_items_split(int m) {
        std::vector<GapItem> out;
        for (;;) {
            std::vector<Int> w(static_cast<std::size_t>(m) + 1);
            w[1] = t.SIL[static_cast<std::size_t>(m - 1)];
            for (int j = 2; j <= m; ++j)
                w[static_cast<std::size_t>(j)] = t.SI[static_cast<std::size_t>(m - j)];
            const int j = pick(w, rng);
            out.push_back({node(), j - 1});
            m -= j;
            if (j >= 2) {
                for (const GapItem& it : gap_items(m)) out.push_back(it);
                return out;
            }
        }
    }

    // S = Q SP: a path split by at least one left, tops right of its tip, and
    // optionally a branching continuation at its foot, in which case the
    // path's bottom vertex is the uppermost branching point of the tree.
    STree split_tree(int n) {
        std::vector<Int> w(static_cast<std::size_t>(n) + 1);
        for (int a = 1; a <= n; ++a)
            w[static_cast<std::size_t>(a)] =
                t.Q[static_cast<std::size_t>(a)] * t.SP[static_cast<std::size_t>(n - a)];
        const int a = pick(w, rng);
        const int m = n - a;
        std::vector<Int> w2(static_cast<std::size_t>(a) + 1);
        for (int j = 2; j <= a; ++j) w2[static_cast<std::size_t>(j)] = t.LmP[static_cast<std::size_t>(j)];
        const int j = pick(w2, rng);
        const int tip_tops = a - j;

        Node* bottom = node();
        auto items = gap_items_split(j - 1);
        Node* prev = bottom;
        for (const GapItem& it : items) {
            prev->kids.push_back(it.v);
            prev = it.v;
        }
        STree out;
        out.tip = items.back().v;
        out.tip->tops += tip_tops;

        Node* first_anchor = bottom;
        Node* root = bottom;
        if (m > 0) {
            std::vector<Int> w3(static_cast<std::size_t>(m) + 1);
            for (int j2 = 1; j2 <= m; ++j2)
                w3[static_cast<std::size_t>(j2)] =
                    t.F[static_cast<std::size_t>(j2)] * t.SW[static_cast<std::size_t>(m - j2)];
            const int j2 = pick(w3, rng);
            auto bforest = forest(j2);
            for (Node* s : bforest) bottom->kids.push_back(s);
            for (auto& [v, fr] : trunk_below(m - j2)) {
                v->kids.push_back(root);
                for (Node* s : fr) v->kids.push_back(s);
                root = v;
            }
            // Lefts in the lowest gap sit above every subtree hanging off the
            // branching point, so the vertex directly below them is the trunk
            // end of the first subtree, not the branching point itself.
            first_anchor = tip_of(bforest.front());
        }
        out.root = root;

        Node* below = first_anchor;
        for (const GapItem& it : items) {
            if (it.lefts > 0) out.gaps.push_back({it.lefts, below});
            below = it.v;
        }
        return out;
    }

    struct Group {
        STree tree;
        int above = 0;  // lefts between this tree and the block above it
    };

    // Seq(Seq(lz) (T + S)): lower trees in position order, each with the run
    // of lefts directly above it.
    std::vector<Group> groups(int n) {
        std::vector<Group> out;
        while (n > 0) {
            std::vector<Int> w(static_cast<std::size_t>(n) + 1);
            for (int g = 1; g <= n; ++g)
                w[static_cast<std::size_t>(g)] =
                    t.G[static_cast<std::size_t>(g)] * t.SG[static_cast<std::size_t>(n - g)];
            const int g = pick(w, rng);
            std::vector<Int> w2(static_cast<std::size_t>(g));
            for (int k = 0; k < g; ++k)
                w2[static_cast<std::size_t>(k)] =
                    t.T[static_cast<std::size_t>(g - k)] + t.S[static_cast<std::size_t>(g - k)];
            const int k = pick(w2, rng);
            const int msz = g - k;
            Group gr;
            gr.above = k;
            const std::vector<Int> w3{t.T[static_cast<std::size_t>(msz)],
                                      t.S[static_cast<std::size_t>(msz)]};
            if (pick(w3, rng) == 0) {
                Node* r = tree(msz);
                gr.tree = {r, tip_of(r), {}};
            } else {
                gr.tree = split_tree(msz);
            }
            out.push_back(std::move(gr));
            n -= g;
        }
        return out;
    }

    struct Outcome {
        std::vector<Node*> roots;
        std::vector<LeftBatch> lefts;  // value-ascending
    };

    // D = H + H S Seq(Seq(lz) (T + S)) Seq(lz): either no lefts at all, or an
    // H-part, the tree split by the uppermost left, lower groups, and trailing
    // lefts below everything.
    Outcome class_D(int n) {
        Outcome o;
        const std::vector<Int> w{t.H[static_cast<std::size_t>(n)],
                                 t.D[static_cast<std::size_t>(n)] - t.H[static_cast<std::size_t>(n)]};
        if (pick(w, rng) == 0) {
            o.roots = h_forest(n);
            return o;
        }
        std::vector<Int> w2(static_cast<std::size_t>(n) + 1);
        for (int d = 0; d <= n; ++d)
            w2[static_cast<std::size_t>(d)] = t.HSG[static_cast<std::size_t>(n - d)];
        const int d = pick(w2, rng);
        const int m = n - d;
        std::vector<Int> w3(static_cast<std::size_t>(m) + 1);
        for (int j = 1; j <= m; ++j)
            w3[static_cast<std::size_t>(j)] =
                t.HS[static_cast<std::size_t>(j)] * t.SG[static_cast<std::size_t>(m - j)];
        const int j = pick(w3, rng);
        std::vector<Int> w4(static_cast<std::size_t>(j) + 1);
        for (int a = 1; a <= j; ++a)
            w4[static_cast<std::size_t>(a)] =
                t.H[static_cast<std::size_t>(a)] * t.S[static_cast<std::size_t>(j - a)];
        const int a = pick(w4, rng);

        o.roots = h_forest(a);
        STree s = split_tree(j - a);
        auto gs = groups(m - j);
        o.roots.push_back(s.root);
        for (const Group& g : gs) o.roots.push_back(g.tree.root);

        // Lefts, value-ascending: trailing run first, then the groups from the
        // bottom up (each tree's own splitting runs sit below the run above
        // it), and the uppermost splitting runs last.
        if (d > 0) o.lefts.push_back({d, nullptr});
        for (auto it = gs.rbegin(); it != gs.rend(); ++it) {
            for (const LeftBatch& b : it->tree.gaps) o.lefts.push_back(b);
            if (it->above > 0) o.lefts.push_back({it->above, it->tree.tip});
        }
        for (const LeftBatch& b : s.gaps) o.lefts.push_back(b);
        return o;
    }
};

// Number the forest in preorder (position order), emit the anchor vectors,
// and rebuild the permutation from the synthesized gridding structure.
SampleDraw assemble(const std::vector<Node*>& roots, const std::vector<LeftBatch>& lefts) {
    std::vector<Node*> order;
    std::vector<Node*> stack(roots.rbegin(), roots.rend());
    std::vector<int> top_anchor;
    int next = 0;
    while (!stack.empty()) {
        Node* v = stack.back();
        stack.pop_back();
        v->id = next++;
        order.push_back(v);
        for (int c = 0; c < v->tops; ++c) top_anchor.push_back(v->id);
        for (auto k = v->kids.rbegin(); k != v->kids.rend(); ++k) stack.push_back(*k);
    }
    std::vector<std::vector<int>> children(order.size());
    for (Node* v : order)
        for (Node* k : v->kids) children[static_cast<std::size_t>(v->id)].push_back(k->id);
    std::vector<int> root_ids;
    root_ids.reserve(roots.size());
    for (Node* r : roots) root_ids.push_back(r->id);
    std::vector<int> left_anchor;
    for (const LeftBatch& b : lefts)
        for (int c = 0; c < b.count; ++c) left_anchor.push_back(b.anchor ? b.anchor->id : -1);

    CanonicalGridding cg;
    cg.forest = forest_from_shape(children, root_ids);
    cg.top_anchor = std::move(top_anchor);
    cg.left_anchor = std::move(left_anchor);

    SampleDraw out;
    out.tops = static_cast<int>(cg.top_anchor.size());
    out.lefts = static_cast<int>(cg.left_anchor.size());
    out.in_H = out.lefts == 0;
    out.perm = rebuild(cg);
    return out;
}

}  // namespace

SampleDraw Sampler::sample_draw(int n, SampleClass cls) {
    if (n < 1) throw std::invalid_argument("sample: size must be positive");
    if (n > t_->n_max)
        throw std::invalid_argument("sample: size " + std::to_string(n) +
                                    " exceeds prepared tables (n_max " +
                                    std::to_string(t_->n_max) + ")");
    Build b{*t_, rng_, {}};
    if (cls == SampleClass::H) {
        const auto roots = b.h_forest(n);
        return assemble(roots, {});
    }
    const auto o = b.class_D(n);
    return assemble(o.roots, o.lefts);
}

Permutation Sampler::sample(int n, SampleClass cls) { return sample_draw(n, cls).perm; }

SampleSummary sample_stats(const WeightTables& tables, int n, long trials, std::uint64_t seed,
                           SampleClass cls) {
    if (trials < 1) throw std::invalid_argument("sample_stats: trials must be positive");
    Sampler s(tables, seed);
    long long st = 0, stt = 0, sl = 0, sll = 0;
    long hits = 0;
    for (long i = 0; i < trials; ++i) {
        const SampleDraw d = s.sample_draw(n, cls);
        st += d.tops;
        stt += 1LL * d.tops * d.tops;
        sl += d.lefts;
        sll += 1LL * d.lefts * d.lefts;
        if (d.in_H) ++hits;
    }
    SampleSummary out;
    out.n = n;
    out.trials = trials;
    const double T = static_cast<double>(trials);
    out.top_mean = static_cast<double>(st) / T;
    out.left_mean = static_cast<double>(sl) / T;
    if (trials > 1) {
        out.top_variance =
            std::max(0.0, (static_cast<double>(stt) - T * out.top_mean * out.top_mean) / (T - 1));
        out.left_variance =
            std::max(0.0, (static_cast<double>(sll) - T * out.left_mean * out.left_mean) / (T - 1));
    }
    out.top_mean_se = std::sqrt(out.top_variance / T);
    out.left_mean_se = std::sqrt(out.left_variance / T);
    out.fraction_in_H = static_cast<double>(hits) / T;
    out.fraction_in_H_se = std::sqrt(out.fraction_in_H * (1.0 - out.fraction_in_H) / T);
    return out;
}

}  // namespace permgrid
