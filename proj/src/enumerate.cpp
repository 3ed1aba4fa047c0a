#include "permgrid/enumerate.hpp"

#include <atomic>
#include <cstdint>
#include <stdexcept>
#include <thread>

namespace permgrid {

namespace {

// One step of the generating tree: append rank r to pattern `cur` in place
// (values >= r shift up by one).  Undone by shrink_rank.
void grow_rank(std::vector<int>& cur, int r) {
    for (int& x : cur)
        if (x >= r) ++x;
    cur.push_back(r);
}

void shrink_rank(std::vector<int>& cur, int r) {
    cur.pop_back();
    for (int& x : cur)
        if (x > r) --x;
}

bool extension_alive(const std::vector<int>& cur, const PatternBasis& basis) {
    for (const Permutation& p : basis.patterns())
        if (contains_ending_at_last(cur, p.values())) return false;
    return true;
}

// Counts every node of the subtree rooted at `cur` into tally[size].
void count_subtree(std::vector<int>& cur, const PatternBasis& basis, int n_max,
                   std::vector<std::uint64_t>& tally) {
    ++tally[cur.size()];
    if (static_cast<int>(cur.size()) == n_max) return;
    const int top = static_cast<int>(cur.size()) + 1;
    for (int r = 1; r <= top; ++r) {
        grow_rank(cur, r);
        if (extension_alive(cur, basis)) count_subtree(cur, basis, n_max, tally);
        shrink_rank(cur, r);
    }
}

// Collects the live nodes at depth `depth` (the strata roots for parallel
// counting); everything above them is tallied here, once.
void collect_strata(std::vector<int>& cur, const PatternBasis& basis, int depth,
                    std::vector<std::uint64_t>& tally, std::vector<std::vector<int>>& out) {
    if (static_cast<int>(cur.size()) == depth) {
        out.push_back(cur);
        return;
    }
    ++tally[cur.size()];
    const int top = static_cast<int>(cur.size()) + 1;
    for (int r = 1; r <= top; ++r) {
        grow_rank(cur, r);
        if (extension_alive(cur, basis)) collect_strata(cur, basis, depth, tally, out);
        shrink_rank(cur, r);
    }
}

void check_bound(int n, const EnumOptions& opt, const char* what) {
    if (n < 0) throw std::invalid_argument("size must be non-negative");
    if (n > opt.exhaustive_bound)
        throw std::runtime_error(std::string(what) +
                                 ": size exceeds the exhaustive bound (raise "
                                 "EnumOptions::exhaustive_bound deliberately)");
}

}  // namespace

CountTable enumerate_class(const PatternBasis& basis, int n_max, const EnumOptions& opt) {
    check_bound(n_max, opt, "enumerate_class");
    std::vector<std::uint64_t> tally(static_cast<size_t>(n_max) + 1, 0);
    std::vector<int> cur;

    const int workers = opt.threads;
    const int split = 5;  // strata depth; shallow enough to stay cheap to list
    if (workers <= 1 || n_max <= split) {
        count_subtree(cur, basis, n_max, tally);
    } else {
        std::vector<std::vector<int>> strata;
        collect_strata(cur, basis, split, tally, strata);
        std::atomic<size_t> next{0};
        std::vector<std::vector<std::uint64_t>> local(
            static_cast<size_t>(workers), std::vector<std::uint64_t>(tally.size(), 0));
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w)
            pool.emplace_back([&, w] {
                std::vector<int> mine;
                for (;;) {
                    const size_t i = next.fetch_add(1);
                    if (i >= strata.size()) break;
                    mine = strata[i];
                    count_subtree(mine, basis, n_max, local[static_cast<size_t>(w)]);
                }
            });
        for (auto& t : pool) t.join();
        for (const auto& l : local)
            for (size_t n = 0; n < tally.size(); ++n) tally[n] += l[n];
    }

    CountTable table;
    table.counts.reserve(tally.size());
    for (std::uint64_t c : tally) table.counts.emplace_back(static_cast<unsigned long>(c));
    return table;
}

namespace {

void visit_subtree(std::vector<int>& cur, std::vector<bool>& used, const PatternBasis& basis,
                   int n, const std::function<void(const Permutation&)>& fn) {
    if (static_cast<int>(cur.size()) == n) {
        fn(Permutation(cur));
        return;
    }
    for (int v = 1; v <= n; ++v) {
        if (used[static_cast<size_t>(v)]) continue;
        cur.push_back(v);
        used[static_cast<size_t>(v)] = true;
        if (extension_alive(cur, basis)) visit_subtree(cur, used, basis, n, fn);
        used[static_cast<size_t>(v)] = false;
        cur.pop_back();
    }
}

}  // namespace

void for_each_in_class(const PatternBasis& basis, int n,
                       const std::function<void(const Permutation&)>& fn,
                       const EnumOptions& opt) {
    check_bound(n, opt, "for_each_in_class");
    std::vector<int> cur;
    cur.reserve(static_cast<size_t>(n));
    std::vector<bool> used(static_cast<size_t>(n) + 1, false);
    visit_subtree(cur, used, basis, n, fn);
}

std::vector<Permutation> iterate_class(const PatternBasis& basis, int n, const EnumOptions& opt) {
    std::vector<Permutation> out;
    for_each_in_class(basis, n, [&](const Permutation& p) { out.push_back(p); }, opt);
    return out;
}

}  // namespace permgrid
