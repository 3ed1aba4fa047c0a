#ifndef PERMGRID_PERM_HPP
#define PERMGRID_PERM_HPP

#include <compare>
#include <span>
#include <string>
#include <vector>

namespace permgrid {

// A permutation in one-line notation: values()[i] is the value at position i+1,
// and a length-n permutation holds each of 1..n exactly once.  Immutable after
// construction; the empty permutation is a valid object.
class Permutation {
public:
    Permutation() = default;
    explicit Permutation(std::vector<int> one_line);

    static Permutation identity(int n);
    static Permutation decreasing(int n);

    // Accepts comma- or space-separated positive integers ("2 4 1 3", "2,4,1,3").
    // Throws std::invalid_argument naming the first violation if the input is
    // not a bijection on 1..n.
    static Permutation parse(const std::string& text);

    int size() const { return static_cast<int>(v_.size()); }
    bool empty() const { return v_.empty(); }
    // 0-based position, 1-based value.
    int operator[](int i) const { return v_[static_cast<size_t>(i)]; }
    const std::vector<int>& values() const { return v_; }
    std::span<const int> span() const { return v_; }

    std::string str() const;  // "2 4 1 3"

    bool operator==(const Permutation&) const = default;
    std::strong_ordering operator<=>(const Permutation& o) const
    {
        return v_ <=> o.v_;
    }

private:
    std::vector<int> v_;
};

// Order-isomorphic subsequence test on injective integer sequences (the host
// need not be a permutation of 1..n; enumeration probes prefixes directly).
bool contains(std::span<const int> host, std::span<const int> pattern);
bool contains(const Permutation& host, const Permutation& pattern);

// True iff some occurrence of pattern uses the last host element as its final
// point.  This is the incremental test behind prefix-pruned enumeration: a
// sequence avoids a pattern iff every prefix avoids occurrences ending at its
// last element.
bool contains_ending_at_last(std::span<const int> host, std::span<const int> pattern);

// A non-empty antichain of forbidden patterns.  Construction rejects an empty
// set and any pair where one pattern contains another (the basis would not be
// minimal).
class PatternBasis {
public:
    explicit PatternBasis(std::vector<Permutation> patterns);

    // "4213,2143": comma-separated tokens, each either a digit string (one
    // digit per value, lengths up to 9) or a spaced permutation.
    static PatternBasis parse(const std::string& text);

    const std::vector<Permutation>& patterns() const { return pats_; }
    std::string str() const;

    bool operator==(const PatternBasis&) const = default;

private:
    std::vector<Permutation> pats_;  // sorted, for a canonical form
};

bool avoids_all(const Permutation& host, const PatternBasis& basis);
bool avoids_all(std::span<const int> host, const PatternBasis& basis);

}  // namespace permgrid

#endif
