#include "permgrid/perm.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace permgrid {

Permutation::Permutation(std::vector<int> one_line) : v_(std::move(one_line))
{
    const int n = size();
    std::vector<char> seen(static_cast<size_t>(n) + 1, 0);
    for (int i = 0; i < n; ++i) {
        const int x = v_[static_cast<size_t>(i)];
        if (x < 1 || x > n)
            throw std::invalid_argument("value " + std::to_string(x) + " out of range 1.." +
                                        std::to_string(n) + " (position " + std::to_string(i + 1) + ")");
        if (seen[static_cast<size_t>(x)])
            throw std::invalid_argument("value " + std::to_string(x) + " repeated (position " +
                                        std::to_string(i + 1) + ")");
        seen[static_cast<size_t>(x)] = 1;
    }
}

Permutation Permutation::identity(int n)
{
    std::vector<int> v(static_cast<size_t>(n));
    std::iota(v.begin(), v.end(), 1);
    return Permutation(std::move(v));
}

Permutation Permutation::decreasing(int n)
{
    std::vector<int> v(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) v[static_cast<size_t>(i)] = n - i;
    return Permutation(std::move(v));
}

Permutation Permutation::parse(const std::string& text)
{
    std::vector<int> v;
    size_t i = 0;
    const size_t len = text.size();
    while (i < len) {
        if (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == ',') {
            ++i;
            continue;
        }
        if (!std::isdigit(static_cast<unsigned char>(text[i])))
            throw std::invalid_argument(std::string("unexpected character '") + text[i] +
                                        "' in permutation text");
        long x = 0;
        while (i < len && std::isdigit(static_cast<unsigned char>(text[i]))) {
            x = x * 10 + (text[i] - '0');
            if (x > std::numeric_limits<int>::max() / 2)
                throw std::invalid_argument("permutation value too large");
            ++i;
        }
        if (x == 0)
            throw std::invalid_argument("permutation values must be positive (got 0 at position " +
                                        std::to_string(v.size() + 1) + ")");
        v.push_back(static_cast<int>(x));
    }
    return Permutation(std::move(v));
}

std::string Permutation::str() const
{
    std::string out;
    for (int i = 0; i < size(); ++i) {
        if (i) out += ' ';
        out += std::to_string(v_[static_cast<size_t>(i)]);
    }
    return out;
}

namespace {

// Backtracking matcher: pattern positions are placed left to right; a
// candidate host element must sit strictly between the largest host value
// already matched to a smaller pattern value and the smallest matched to a
// larger one.  Patterns here have length <= 4, so the bound computation is a
// short loop.  last_pinned forces the final pattern element onto the last
// host element.
bool match(std::span<const int> host, std::span<const int> pat, bool last_pinned)
{
    const int m = static_cast<int>(pat.size());
    const int n = static_cast<int>(host.size());
    if (m == 0) return !last_pinned;
    if (m > n) return false;

    int stack_idx[16];
    std::vector<int> heap_idx;
    int* idx = stack_idx;
    if (m > 16) {
        heap_idx.resize(static_cast<size_t>(m));
        idx = heap_idx.data();
    }
    auto bounds = [&](int k, int& lo, int& hi) {
        lo = std::numeric_limits<int>::min();
        hi = std::numeric_limits<int>::max();
        for (int j = 0; j < k; ++j) {
            const int hv = host[static_cast<size_t>(idx[j])];
            if (pat[static_cast<size_t>(j)] < pat[static_cast<size_t>(k)])
                lo = std::max(lo, hv);
            else
                hi = std::min(hi, hv);
        }
    };
    const int free_count = last_pinned ? m - 1 : m;  // elements placed by search

    // If pinned, the last host element must respect bounds against each
    // placement as it happens; fold it in by checking pattern element m-1
    // against host element n-1 inside the candidate test.
    const int last_host = n - 1;

    auto candidate_ok = [&](int k, int h) {
        int lo, hi;
        bounds(k, lo, hi);
        const int hv = host[static_cast<size_t>(h)];
        if (hv <= lo || hv >= hi) return false;
        if (last_pinned) {
            const int lv = host[static_cast<size_t>(last_host)];
            if ((pat[static_cast<size_t>(k)] < pat[static_cast<size_t>(m - 1)]) != (hv < lv))
                return false;
        }
        return true;
    };

    int k = 0;
    int h = 0;
    const int h_limit = last_pinned ? n - 1 : n;
    while (true) {
        if (k == free_count) return true;
        bool placed = false;
        // Leave room for the remaining free elements.
        for (; h <= h_limit - (free_count - k); ++h) {
            if (candidate_ok(k, h)) {
                idx[k] = h;
                ++k;
                ++h;
                placed = true;
                break;
            }
        }
        if (!placed) {
            if (k == 0) return false;
            --k;
            h = idx[k] + 1;
        }
    }
}

}  // namespace

bool contains(std::span<const int> host, std::span<const int> pattern)
{
    return match(host, pattern, false);
}

bool contains(const Permutation& host, const Permutation& pattern)
{
    return match(host.span(), pattern.span(), false);
}

bool contains_ending_at_last(std::span<const int> host, std::span<const int> pattern)
{
    if (pattern.empty() || host.empty()) return false;
    return match(host, pattern, true);
}

PatternBasis::PatternBasis(std::vector<Permutation> patterns) : pats_(std::move(patterns))
{
    if (pats_.empty()) throw std::invalid_argument("empty pattern basis");
    std::sort(pats_.begin(), pats_.end());
    pats_.erase(std::unique(pats_.begin(), pats_.end()), pats_.end());
    for (const auto& a : pats_)
        for (const auto& b : pats_)
            if (!(a == b) && contains(a, b))
                throw std::invalid_argument("basis is not an antichain: " + a.str() +
                                            " contains " + b.str());
}

PatternBasis PatternBasis::parse(const std::string& text)
{
    std::vector<Permutation> pats;
    std::string tok;
    std::stringstream ss(text);
    while (std::getline(ss, tok, ',')) {
        const size_t first = tok.find_first_not_of(" \t");
        if (first == std::string::npos) continue;
        tok = tok.substr(first, tok.find_last_not_of(" \t") - first + 1);
        const bool spaced = tok.find(' ') != std::string::npos || tok.find('\t') != std::string::npos;
        if (spaced) {
            pats.push_back(Permutation::parse(tok));
        } else {
            // Digit-string form, one value per character: "4213".
            std::vector<int> v;
            for (char ch : tok) {
                if (!std::isdigit(static_cast<unsigned char>(ch)) || ch == '0')
                    throw std::invalid_argument("bad pattern token '" + tok + "'");
                v.push_back(ch - '0');
            }
            pats.emplace_back(std::move(v));
        }
    }
    return PatternBasis(std::move(pats));
}

std::string PatternBasis::str() const
{
    std::string out;
    for (size_t i = 0; i < pats_.size(); ++i) {
        if (i) out += ',';
        std::string s = pats_[i].str();
        // Compact digit form when every value is a single digit.
        if (pats_[i].size() <= 9) {
            s.erase(std::remove(s.begin(), s.end(), ' '), s.end());
        }
        out += s;
    }
    return out;
}

bool avoids_all(std::span<const int> host, const PatternBasis& basis)
{
    for (const auto& p : basis.patterns())
        if (contains(host, p.span())) return false;
    return true;
}

bool avoids_all(const Permutation& host, const PatternBasis& basis)
{
    return avoids_all(host.span(), basis);
}

}  // namespace permgrid
