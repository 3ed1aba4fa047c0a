#ifndef PERMGRID_STATS_HPP
#define PERMGRID_STATS_HPP

#include <vector>

#include "permgrid/asymptotics.hpp"
#include "permgrid/series.hpp"

namespace permgrid {

enum class Marker { top, left };

struct Moments {
    Rat mean;
    Rat variance;
};

// Exact mean and variance of the chosen marker's exponent at size n, with the
// other marker specialised to 1: for c(x) = [z^n] F,
//   mean = c'(1)/c(1),  variance = c''(1)/c(1) + mean - mean^2.
// Throws std::domain_error when the size class is empty.
Moments moments(const Series& F, int n, Marker which);

// The same moments read off a jet run where the marker atom was 1 + eps
// truncated at eps^2: [z^n] = c0 + c1*eps + c2*eps^2 gives c'(1) = c1 and
// c''(1) = 2*c2 directly.
Moments moments_from_jet(const MPoly& coeff_n, Marker which);

// P(marker exponent = k) for k = 0..deg at size n, exact and normalised.
std::vector<Rat> distribution(const Series& F, int n, Marker which);

// Mean and variance of an exact lattice law with mass dist[k] at k.
Moments moments_of(const std::vector<Rat>& dist);

// Phi((x - mu)/sigma) via erf.
Real normal_cdf(const Real& x, const Real& mu, const Real& sigma);

// sup_x |F_dist(x) - Phi_{mean,variance}(x)| for a law supported on
// {0, ..., len-1}: the supremum is attained just before or at a lattice atom,
// so both gaps are checked at every atom.
Real kolmogorov_to_normal(const std::vector<Rat>& dist, const Rat& mean, const Rat& variance);

// The continuity-corrected variant for integer-valued laws:
// sup_k |F_dist(k) - Phi_{mean,variance}(k + 1/2)|.  The plain distance never
// falls below half the largest atom, ~ 1/(2 sigma sqrt(2 pi)) here; sampling
// the normal at cell midpoints removes that floor and measures shape alone.
Real kolmogorov_to_normal_lattice(const std::vector<Rat>& dist, const Rat& mean,
                                  const Rat& variance);

}  // namespace permgrid

#endif
