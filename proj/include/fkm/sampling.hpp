#ifndef FKM_SAMPLING_HPP
#define FKM_SAMPLING_HPP

// Seeded sampling on spheres and conversions between Cayley vectors and flat
// real coordinates.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

#include "fkm/twisted.hpp"

namespace fkm {

using Rng = std::mt19937_64;
inline constexpr const char* rng_name = "mt19937_64";

inline std::vector<double> gaussian_vector(Rng& rng, std::size_t n) {
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<double> v(n);
    for (double& x : v) {
        x = g(rng);
    }
    return v;
}

inline double norm(std::span<const double> v) {
    double s = 0;
    for (double x : v) {
        s += x * x;
    }
    return std::sqrt(s);
}

inline void normalize(std::span<double> v) {
    const double n = norm(v);
    if (n == 0) {
        throw std::domain_error("normalize: zero vector");
    }
    for (double& x : v) {
        x /= n;
    }
}

/// Uniform point on the unit sphere in R^n.
inline std::vector<double> sample_sphere(Rng& rng, std::size_t n) {
    for (;;) {
        auto v = gaussian_vector(rng, n);
        if (norm(v) > 1e-12) {
            normalize(v);
            return v;
        }
    }
}

template <std::size_t D>
std::vector<double> flatten(const CayleyVector<double, D>& v) {
    std::vector<double> out;
    out.reserve(v.size() * D);
    for (const auto& c : v) {
        out.insert(out.end(), c.coords().begin(), c.coords().end());
    }
    return out;
}

template <std::size_t D>
CayleyVector<double, D> unflatten(std::span<const double> x) {
    if (x.size() % D != 0) {
        throw std::invalid_argument("unflatten: length " + std::to_string(x.size()) +
                                    " is not a multiple of " + std::to_string(D));
    }
    CayleyVector<double, D> out(x.size() / D);
    for (std::size_t i = 0; i < out.size(); ++i) {
        for (std::size_t j = 0; j < D; ++j) {
            out[i][j] = x[i * D + j];
        }
    }
    return out;
}

/// Unit vector z in K^k with Re z_k = 0.
template <std::size_t D>
CayleyVector<double, D> sample_equator(Rng& rng, int k) {
    const std::size_t n = static_cast<std::size_t>(k) * D;
    for (;;) {
        auto v = gaussian_vector(rng, n);
        v[n - D] = 0;
        if (norm(v) > 1e-12) {
            normalize(v);
            return unflatten<D>(v);
        }
    }
}

/// Unit vector in K^n.
template <std::size_t D>
CayleyVector<double, D> sample_unit(Rng& rng, int n) {
    return unflatten<D>(sample_sphere(rng, static_cast<std::size_t>(n) * D));
}

/// Unit vector in K^k with z_k kept at least 1e-6 away from +-1, the
/// singular points of the two trivializations.
template <std::size_t D>
CayleyVector<double, D> sample_off_poles(Rng& rng, int k) {
    for (;;) {
        auto z = sample_unit<D>(rng, k);
        const auto one = Cayley<double, D>::one();
        if ((one + z.back()).norm() > 1e-6 && (one - z.back()).norm() > 1e-6) {
            return z;
        }
    }
}

}  // namespace fkm

#endif
