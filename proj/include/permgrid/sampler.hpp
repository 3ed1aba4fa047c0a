#ifndef PERMGRID_SAMPLER_HPP
#define PERMGRID_SAMPLER_HPP

#include <cstdint>
#include <random>
#include <vector>

#include "permgrid/perm.hpp"
#include "permgrid/rational.hpp"

namespace permgrid {

// Exact object counts by size for every symbol of the class-D grammar at unit
// markers.  Each table is indexed 0..n_max and is the coefficient table of
// the matching grammar symbol, so the full-class rows reproduce grammar_D and
// grammar_H exactly; the sampler draws every derivation choice proportionally
// to these counts and therefore uniformly over the class.
struct WeightTables {
    int n_max = 0;
    std::vector<Int> P;    // bare path Seq+(z): one object per positive size
    std::vector<Int> T;    // tree, every vertex carrying a run of top points
    std::vector<Int> F;    // Seq(T)
    std::vector<Int> SW;   // Seq(z Seq(T)): trunk below a branching point
    std::vector<Int> UB;   // (z Seq+(T)) SW: branching point and all below it
    std::vector<Int> U;    // upper tree: P + P UB (its trunk carries no tops)
    std::vector<Int> H;    // U Seq(T), the 2413-avoiding part
    std::vector<Int> SI;   // Seq(z Seq(lz)): path vertices, gap lefts below each
    std::vector<Int> SIL;  // SI objects containing at least one left
    std::vector<Int> LmP;  // L - P with L = z SI: path split by >= 1 left
    std::vector<Int> Q;    // (L - P) Seq(tz): tops ride right of the tip
    std::vector<Int> SP;   // 1 + Seq+(T) Seq(z Seq(T)): optional foot branching
    std::vector<Int> S;    // split tree: Q SP
    std::vector<Int> G;    // Seq(lz) (T + S): a lower tree with lefts above it
    std::vector<Int> SG;   // Seq(G)
    std::vector<Int> HS;   // H * S
    std::vector<Int> HSG;  // H * S * SG
    std::vector<Int> D;    // H + HSG Seq(lz), the full class
};

// Tables for all sizes up to n_max (>= 1) from the symbol recurrences.
WeightTables build_tables(int n_max);

// Uniform integer in [0, bound) by rejection: ceil(bits/64) words are drawn
// from the generator per attempt, the top word is right-shifted to the bit
// length of bound - 1 ... 0, and the assembled value is kept when it is below
// bound.  Word count and order are fixed, so a seed determines the result on
// every platform.  Throws std::invalid_argument when bound <= 0.
Int uniform_below(const Int& bound, std::mt19937_64& rng);

enum class SampleClass { D, H };

// One draw together with the statistics its derivation fixes: the number of
// top points (right of the 21-split) and left points (below it), and whether
// the permutation lies in the 2413-avoiding subclass, which holds exactly
// when the derivation used no left points.
struct SampleDraw {
    Permutation perm;
    int tops = 0;
    int lefts = 0;
    bool in_H = false;
};

// A sampling stream over shared immutable tables.  The generator is
// std::mt19937_64 seeded with seed + stream, so parallel streams obtain
// reproducible, distinct sequences from the same seed.  Each draw expands the
// class decomposition top-down - outer factorisation, then trees, then runs
// of tops and lefts - and rebuilds the permutation from the resulting
// canonical gridding structure.
class Sampler {
public:
    Sampler(const WeightTables& tables, std::uint64_t seed, std::uint64_t stream = 0)
        : t_(&tables), rng_(seed + stream) {}

    // Uniform over the class of size n; 1 <= n <= tables.n_max.
    Permutation sample(int n, SampleClass cls = SampleClass::D);
    SampleDraw sample_draw(int n, SampleClass cls = SampleClass::D);

private:
    const WeightTables* t_;
    std::mt19937_64 rng_;
};

// Empirical summaries over a fresh stream Sampler(tables, seed).  Variances
// are the unbiased sample variances; the mean standard errors are
// sqrt(variance/trials) and the fraction's is sqrt(p(1-p)/trials).
struct SampleSummary {
    int n = 0;
    long trials = 0;
    double top_mean = 0.0;
    double top_variance = 0.0;
    double top_mean_se = 0.0;
    double left_mean = 0.0;
    double left_variance = 0.0;
    double left_mean_se = 0.0;
    double fraction_in_H = 0.0;
    double fraction_in_H_se = 0.0;
};

SampleSummary sample_stats(const WeightTables& tables, int n, long trials,
                           std::uint64_t seed, SampleClass cls = SampleClass::D);

}  // namespace permgrid

#endif  // PERMGRID_SAMPLER_HPP
