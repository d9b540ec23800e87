#ifndef FKM_WITNESS_HPP
#define FKM_WITNESS_HPP

// Auxiliary maps on the equator {z in K^k : |z| = 1, Re z_k = 0} and the
// pairs among them whose sum never vanishes. A nowhere-vanishing f + g means
// f(z) and -g(z) are never antipodal, hence f and g are homotopic; sampling
// min |f + g| gives a numerical witness of that.

#include <cmath>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fkm/bundle.hpp"
#include "fkm/parallel.hpp"
#include "fkm/sampling.hpp"

namespace fkm {

/// Below this |z_1| the maps with a 1/|z_1| factor take their z_1 = 0 value.
inline constexpr double z1_guard = 1e-8;

template <std::size_t D>
using CVec = CayleyVector<double, D>;

/// The projected characteristic map (sigma for H, g for O).
template <std::size_t D>
CVec<D> sigma_map(const CVec<D>& z, int p) {
    return projected_map_closed_form<D>(z, TwistIndex(static_cast<int>(z.size()), p));
}

/// Hopf construction of (x_k, -conj(x_1) x_2, ...): (1 - 2|z_1|^2 + 2|z_1| z_k,
/// -2 conj(z_1) z_i). With `reflected` the z_k term enters with a minus sign.
template <std::size_t D>
CVec<D> split_hopf_map(const CVec<D>& z, bool reflected) {
    using C = Cayley<double, D>;
    const std::size_t k = z.size();
    const double r = z[0].norm();
    CVec<D> out(k - 1);
    out[0] = C::real(1 - 2 * r * r) + (reflected ? -2.0 : 2.0) * r * z[k - 1];
    for (std::size_t i = 1; i + 1 < k; ++i) {
        out[i] = -2.0 * (z[0].conj() * z[i]);
    }
    return out;
}

/// theta(z) = (1 - 2 conj(z_1)(1 + z_k)^{-2} z_1, -2 conj(z_1) z_i / (1 + |z_k|^2) for i <= p,
///             -2 z_1 z_j / (1 + |z_k|^2) for j > p).
template <std::size_t D>
CVec<D> theta_map(const CVec<D>& z, int p) {
    using C = Cayley<double, D>;
    const std::size_t k = z.size();
    const C s = C::one() + z[k - 1];
    const double q = 1.0 + z[k - 1].norm2();
    CVec<D> out(k - 1);
    out[0] = C::one() - 2.0 * ((z[0].conj() * (s * s).inverse()) * z[0]);
    for (std::size_t i = 1; i + 1 < k; ++i) {
        const C prod = static_cast<int>(i) < p ? z[0].conj() * z[i] : z[0] * z[i];
        out[i] = (-2.0 / q) * prod;
    }
    return out;
}

/// phi(z) = (1 - 2|z_1|^2 + 2 conj(z_1) z_k z_1 / |z_1|, -2 conj(z_1) z_i for i <= p,
///           -2 z_1 z_j for j > p); p = k-1 gives the definite map Phi.
template <std::size_t D>
CVec<D> phi_map(const CVec<D>& z, int p) {
    using C = Cayley<double, D>;
    const std::size_t k = z.size();
    const double r = z[0].norm();
    CVec<D> out(k - 1);
    out[0] = C::real(1 - 2 * r * r);
    if (r >= z1_guard) {
        out[0] += (2.0 / r) * ((z[0].conj() * z[k - 1]) * z[0]);
    }
    for (std::size_t i = 1; i + 1 < k; ++i) {
        const C prod = static_cast<int>(i) < p ? z[0].conj() * z[i] : z[0] * z[i];
        out[i] = -2.0 * prod;
    }
    return out;
}

/// tau(z_1, z_2) = 2|z_2|^2 - 1 + 2 conj(z_1) z_2 z_1 / |z_1| (k = 2).
template <std::size_t D>
CVec<D> tau_map(const CVec<D>& z) {
    using C = Cayley<double, D>;
    const double r = z[0].norm();
    C v = C::real(2 * z[1].norm2() - 1);
    if (r >= z1_guard) {
        v += (2.0 / r) * ((z[0].conj() * z[1]) * z[0]);
    }
    return {v};
}

/// b(z_1, z_2) = (z_1/|z_1|) exp(pi z_2) (conj z_1/|z_1|), and -1 at z_1 = 0.
template <std::size_t D>
CVec<D> b_map(const CVec<D>& z) {
    using C = Cayley<double, D>;
    const double r = z[0].norm();
    if (r < z1_guard) {
        return {C::real(-1)};
    }
    const double s = z[1].norm();
    C e = C::real(std::cos(std::numbers::pi * s));
    if (s > 0) {
        e += (std::sin(std::numbers::pi * s) / s) * z[1];
    }
    return {(z[0] * e) * z[0].conj() / (r * r)};
}

/// b'(z_1, z_2) = -b(conj z_1, -z_2)
///             = -cos(pi|z_2|) + sin(pi|z_2|) conj(z_1) z_2 z_1 / (|z_2| |z_1|^2).
template <std::size_t D>
CVec<D> b_prime_map(const CVec<D>& z) {
    using C = Cayley<double, D>;
    const double r = z[0].norm();
    if (r < z1_guard) {
        return {C::real(1)};
    }
    const double s = z[1].norm();
    C v = C::real(-std::cos(std::numbers::pi * s));
    if (s > 0) {
        v += (std::sin(std::numbers::pi * s) / (s * r * r)) * ((z[0].conj() * z[1]) * z[0]);
    }
    return {v};
}

// ---------------------------------------------------------------------------

enum class WitnessPair {
    sigma_hopf,   ///< sigma_{k,0} + H(f), p = 0
    sigma_theta,  ///< sigma_{k,p} + theta, 1 <= p <= k-2
    phi_theta,    ///< phi + theta, 1 <= p <= k-2
    phi_sigma,    ///< Phi + sigma_{k,k-1}, definite
    g2_tau,       ///< g_2 + tau, octonions, k = 2
    tau_bprime,   ///< tau + b', octonions, k = 2
};

struct WitnessPairInfo {
    WitnessPair pair;
    std::string_view id;
    int default_m;
    bool octonion_only;
};

inline constexpr WitnessPairInfo witness_pairs[] = {
    {WitnessPair::sigma_hopf, "sigma-hopf", 4, false},
    {WitnessPair::sigma_hopf, "g0-hopf", 8, false},
    {WitnessPair::sigma_theta, "sigma-theta", 4, false},
    {WitnessPair::sigma_theta, "g-upsilon", 8, false},
    {WitnessPair::phi_theta, "phi-theta", 4, false},
    {WitnessPair::phi_theta, "upsilon-psi", 8, false},
    {WitnessPair::phi_sigma, "Phi-g", 8, false},
    {WitnessPair::g2_tau, "g2-tau", 8, true},
    {WitnessPair::tau_bprime, "tau-bprime", 8, true},
};

inline const WitnessPairInfo& witness_pair_info(std::string_view id) {
    for (const auto& info : witness_pairs) {
        if (info.id == id) {
            return info;
        }
    }
    throw std::invalid_argument("unknown witness pair: " + std::string(id));
}

/// Whether (m, k, p) is in the domain where the pair is asserted to be
/// nowhere vanishing.
inline bool witness_applicable(WitnessPair pair, int m, int k, int p) {
    if ((m != 4 && m != 8) || k < 2 || p < 0 || p > k - 1) {
        return false;
    }
    switch (pair) {
        case WitnessPair::sigma_hopf: return p == 0;
        case WitnessPair::sigma_theta:
        case WitnessPair::phi_theta: return p >= 1 && p <= k - 2;
        case WitnessPair::phi_sigma: return p == k - 1;
        case WitnessPair::g2_tau:
        case WitnessPair::tau_bprime: return m == 8 && k == 2;
    }
    return false;
}

template <std::size_t D>
CVec<D> witness_sum(WitnessPair pair, const CVec<D>& z, int p) {
    CVec<D> a, b;
    switch (pair) {
        case WitnessPair::sigma_hopf:
            a = sigma_map<D>(z, 0);
            b = split_hopf_map<D>(z, true);
            break;
        case WitnessPair::sigma_theta:
            a = sigma_map<D>(z, p);
            b = theta_map<D>(z, p);
            break;
        case WitnessPair::phi_theta:
            a = phi_map<D>(z, p);
            b = theta_map<D>(z, p);
            break;
        case WitnessPair::phi_sigma:
            a = phi_map<D>(z, static_cast<int>(z.size()) - 1);
            b = sigma_map<D>(z, static_cast<int>(z.size()) - 1);
            break;
        case WitnessPair::g2_tau:
            a = sigma_map<D>(z, 1);
            b = tau_map<D>(z);
            break;
        case WitnessPair::tau_bprime:
            a = tau_map<D>(z);
            b = b_prime_map<D>(z);
            break;
    }
    for (std::size_t i = 0; i < a.size(); ++i) {
        a[i] += b[i];
    }
    return a;
}

struct WitnessResult {
    double min_random = 0;  ///< min |f + g| over random equator points
    double min_slice = 0;   ///< min |f + g| over the z_1 = 0 slice
    std::size_t n_random = 0;
    std::size_t n_slice = 0;
    double min() const { return std::min(min_random, min_slice); }
};

/// Points of the slice z_1 = 0 on the equator: every signed coordinate axis
/// allowed there, plus `n_random` random slice points.
template <std::size_t D>
std::vector<CVec<D>> z1_zero_slice(int k, std::size_t n_random, Rng& rng) {
    std::vector<CVec<D>> pts;
    const std::size_t kk = static_cast<std::size_t>(k);
    for (std::size_t b = 1; b < kk; ++b) {
        for (std::size_t c = (b + 1 == kk ? 1 : 0); c < D; ++c) {
            for (double s : {1.0, -1.0}) {
                CVec<D> z(kk);
                z[b][c] = s;
                pts.push_back(std::move(z));
            }
        }
    }
    for (std::size_t i = 0; i < n_random; ++i) {
        auto z = sample_equator<D>(rng, k);
        z[0] = Cayley<double, D>();
        const double n = std::sqrt(norm2(z));
        for (auto& c : z) {
            c /= n;
        }
        pts.push_back(std::move(z));
    }
    return pts;
}

/// Minimum of |f + g| over `n_samples` seeded equator points and the z_1 = 0
/// slice. Samples are drawn up front so the result is independent of `jobs`.
inline WitnessResult witness_min_norm(WitnessPair pair, int m, int k, int p, std::size_t n_samples,
                                      std::uint64_t seed, int jobs = 1) {
    if (!witness_applicable(pair, m, k, p)) {
        throw std::invalid_argument("witness pair not applicable for m=" + std::to_string(m) +
                                    " k=" + std::to_string(k) + " p=" + std::to_string(p));
    }
    return dispatch_dim(m, [&](auto tag) -> WitnessResult {
        constexpr std::size_t D = decltype(tag)::value;
        Rng rng(seed);
        std::vector<CVec<D>> pts;
        pts.reserve(n_samples);
        for (std::size_t i = 0; i < n_samples; ++i) {
            pts.push_back(sample_equator<D>(rng, k));
        }
        const auto slice = z1_zero_slice<D>(k, std::max<std::size_t>(n_samples / 100, 16), rng);
        auto eval = [&](const CVec<D>& z) { return std::sqrt(norm2(witness_sum<D>(pair, z, p))); };
        WitnessResult r;
        r.n_random = pts.size();
        r.n_slice = slice.size();
        r.min_random = parallel_reduce(pts.size(), jobs, Reduce::min, [&](std::size_t i) { return eval(pts[i]); });
        r.min_slice = parallel_reduce(slice.size(), jobs, Reduce::min, [&](std::size_t i) { return eval(slice[i]); });
        return r;
    });
}

}  // namespace fkm

#endif
