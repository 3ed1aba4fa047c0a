#include "permgrid/stats.hpp"

#include <stdexcept>

namespace permgrid {

namespace {

MPoly restrict_to(const MPoly& c, Marker which)
{
    return which == Marker::top ? c.specialize_l(Rat(1)) : c.specialize_t(Rat(1));
}

}  // namespace

Moments moments(const Series& F, int n, Marker which)
{
    MPoly s = restrict_to(F.coeff(n), which);
    Rat total = s.eval(Rat(1), Rat(1));
    if (total == 0) throw std::domain_error("moments: empty size class");
    MPoly d1 = which == Marker::top ? s.derivative_t() : s.derivative_l();
    MPoly d2 = which == Marker::top ? d1.derivative_t() : d1.derivative_l();
    Rat mean = d1.eval(Rat(1), Rat(1)) / total;
    Rat variance = d2.eval(Rat(1), Rat(1)) / total + mean - mean * mean;
    return {mean, variance};
}

Moments moments_from_jet(const MPoly& coeff_n, Marker which)
{
    Rat c0 = coeff_n.coeff(0, 0);
    Rat c1 = which == Marker::top ? coeff_n.coeff(1, 0) : coeff_n.coeff(0, 1);
    Rat c2 = which == Marker::top ? coeff_n.coeff(2, 0) : coeff_n.coeff(0, 2);
    if (c0 == 0) throw std::domain_error("moments_from_jet: empty size class");
    Rat mean = c1 / c0;
    Rat variance = 2 * c2 / c0 + mean - mean * mean;
    return {mean, variance};
}

std::vector<Rat> distribution(const Series& F, int n, Marker which)
{
    MPoly s = restrict_to(F.coeff(n), which);
    int deg = which == Marker::top ? s.deg_t() : s.deg_l();
    std::vector<Rat> p(static_cast<size_t>(deg) + 1);
    Rat total(0);
    for (int k = 0; k <= deg; ++k) {
        p[static_cast<size_t>(k)] = which == Marker::top ? s.coeff(k, 0) : s.coeff(0, k);
        total += p[static_cast<size_t>(k)];
    }
    if (total == 0) throw std::domain_error("distribution: empty size class");
    for (Rat& q : p) q /= total;
    return p;
}

Moments moments_of(const std::vector<Rat>& dist)
{
    Rat mean(0), second(0);
    for (size_t k = 0; k < dist.size(); ++k) {
        mean += dist[k] * static_cast<long>(k);
        second += dist[k] * static_cast<long>(k * k);
    }
    return {mean, second - mean * mean};
}

Real normal_cdf(const Real& x, const Real& mu, const Real& sigma)
{
    Real z = (x - mu) / (sigma * Real(2L).sqrt());
    return (Real(1L) + z.erf()) / Real(2L);
}

Real kolmogorov_to_normal(const std::vector<Rat>& dist, const Rat& mean, const Rat& variance)
{
    if (variance <= 0) throw std::domain_error("kolmogorov_to_normal: variance must be positive");
    Real mu(mean), sigma = Real(variance).sqrt();
    Real cum, best;
    for (size_t k = 0; k < dist.size(); ++k) {
        Real phi = normal_cdf(Real(static_cast<long>(k)), mu, sigma);
        Real before = (cum - phi).abs();  // lattice CDF just left of k
        cum = cum + Real(dist[k]);
        Real at = (cum - phi).abs();
        if (before > best) best = before;
        if (at > best) best = at;
    }
    return best;
}

Real kolmogorov_to_normal_lattice(const std::vector<Rat>& dist, const Rat& mean,
                                  const Rat& variance)
{
    if (variance <= 0)
        throw std::domain_error("kolmogorov_to_normal_lattice: variance must be positive");
    Real mu(mean), sigma = Real(variance).sqrt();
    Real half(rat(1, 2));
    Real cum, best;
    for (size_t k = 0; k < dist.size(); ++k) {
        cum = cum + Real(dist[k]);
        Real gap = (cum - normal_cdf(Real(static_cast<long>(k)) + half, mu, sigma)).abs();
        if (gap > best) best = gap;
    }
    return best;
}

}  // namespace permgrid
