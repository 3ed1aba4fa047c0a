#ifndef PERMGRID_ENUMERATE_HPP
#define PERMGRID_ENUMERATE_HPP

#include <functional>
#include <gmpxx.h>
#include <vector>

#include "permgrid/perm.hpp"

namespace permgrid {

// Exact per-size counts.  counts[n] is the number of objects of size n; for an
// avoidance class counts[0] = 1 (the empty permutation avoids everything).
struct CountTable {
    std::vector<mpz_class> counts;

    int n_max() const { return static_cast<int>(counts.size()) - 1; }
    const mpz_class& at(int n) const { return counts[static_cast<size_t>(n)]; }
};

struct EnumOptions {
    // Hard ceiling for exhaustive work; 11! with pruning stays in minutes.
    int exhaustive_bound = 11;
    // Worker threads for the stratified search.  Results are independent of
    // this value (strata accumulate into commutative integer counters).
    int threads = 1;
};

// |Av_n(basis)| for every n <= n_max, by generating-tree search: partial
// patterns are extended one rank at a time and a branch dies on the first
// basis occurrence (which necessarily ends at the newest element).
// Throws std::runtime_error when n_max exceeds the exhaustive bound.
CountTable enumerate_class(const PatternBasis& basis, int n_max, const EnumOptions& opt = {});

// Visits every member of Av_n(basis) exactly once, in lexicographic order of
// one-line notation.
void for_each_in_class(const PatternBasis& basis, int n,
                       const std::function<void(const Permutation&)>& fn,
                       const EnumOptions& opt = {});

// Materialised convenience wrapper around for_each_in_class.
std::vector<Permutation> iterate_class(const PatternBasis& basis, int n,
                                       const EnumOptions& opt = {});

}  // namespace permgrid

#endif
