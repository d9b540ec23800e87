#ifndef FKM_TWISTED_HPP
#define FKM_TWISTED_HPP

// Twisted Hermitian product on K^k,
//   <z, w>_p = sum_{i <= p} z_i conj(w_i) + sum_{p < j < k} w_j conj(z_j) + z_k conj(w_k),
// and the twisted scalar action eps *_p W on K^{k-1}. Indices in code are
// 0-based, so "i <= p" becomes i < p and z_k is z[k - 1].

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "fkm/cayley.hpp"

namespace fkm {

template <typename T, std::size_t D>
using CayleyVector = std::vector<Cayley<T, D>>;

class TwistIndex {
public:
    TwistIndex(int k, int p) : k_(k), p_(p) {
        if (k < 1) {
            throw std::invalid_argument("TwistIndex: k must be >= 1, got " + std::to_string(k));
        }
        if (p < 0 || p > k - 1) {
            throw std::invalid_argument("TwistIndex: p must lie in [0, k-1], got p=" +
                                        std::to_string(p) + " for k=" + std::to_string(k));
        }
    }

    int k() const { return k_; }
    int p() const { return p_; }
    bool definite() const { return p_ == k_ - 1; }

private:
    int k_;
    int p_;
};

namespace detail {

inline void require_size(std::size_t got, std::size_t want, const char* what) {
    if (got != want) {
        throw std::invalid_argument(std::string(what) + ": expected length " + std::to_string(want) +
                                    ", got " + std::to_string(got));
    }
}

}  // namespace detail

/// <z, w>_p for z, w in K^k.
template <typename T, std::size_t D>
Cayley<T, D> twisted_inner(const CayleyVector<T, D>& z, const CayleyVector<T, D>& w, const TwistIndex& t) {
    const std::size_t k = static_cast<std::size_t>(t.k());
    const std::size_t p = static_cast<std::size_t>(t.p());
    detail::require_size(z.size(), k, "twisted_inner");
    detail::require_size(w.size(), k, "twisted_inner");
    Cayley<T, D> s;
    for (std::size_t i = 0; i < p; ++i) {
        s += z[i] * w[i].conj();
    }
    for (std::size_t j = p; j + 1 < k; ++j) {
        s += w[j] * z[j].conj();
    }
    s += z[k - 1] * w[k - 1].conj();
    return s;
}

/// <X, W>_p for X, W in K^{k-1}, read as vectors of K^k with last entry zero.
template <typename T, std::size_t D>
Cayley<T, D> twisted_inner_truncated(const CayleyVector<T, D>& x, const CayleyVector<T, D>& w,
                                     const TwistIndex& t) {
    const std::size_t n = static_cast<std::size_t>(t.k() - 1);
    detail::require_size(x.size(), n, "twisted_inner_truncated");
    detail::require_size(w.size(), n, "twisted_inner_truncated");
    const std::size_t p = static_cast<std::size_t>(t.p());
    Cayley<T, D> s;
    for (std::size_t i = 0; i < n; ++i) {
        s += i < p ? x[i] * w[i].conj() : w[i] * x[i].conj();
    }
    return s;
}

/// eps *_p W: left multiplication by eps on the first p entries and by
/// conj(eps) on the rest.
template <typename T, std::size_t D>
CayleyVector<T, D> star_p(const Cayley<T, D>& eps, const CayleyVector<T, D>& w, const TwistIndex& t) {
    detail::require_size(w.size(), static_cast<std::size_t>(t.k() - 1), "star_p");
    const std::size_t p = static_cast<std::size_t>(t.p());
    const Cayley<T, D> eps_bar = eps.conj();
    CayleyVector<T, D> out(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) {
        out[i] = (i < p ? eps : eps_bar) * w[i];
    }
    return out;
}

template <typename T, std::size_t D>
T real_inner(const CayleyVector<T, D>& a, const CayleyVector<T, D>& b) {
    detail::require_size(b.size(), a.size(), "real_inner");
    T s(0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        s += real_inner(a[i], b[i]);
    }
    return s;
}

template <typename T, std::size_t D>
T norm2(const CayleyVector<T, D>& a) {
    T s(0);
    for (const auto& x : a) {
        s += x.norm2();
    }
    return s;
}

/// |<eps *_p W, W>_p - eps |W|^2|.
template <typename T, std::size_t D>
T lemma_star_inner(const Cayley<T, D>& eps, const CayleyVector<T, D>& w, const TwistIndex& t) {
    return magnitude(twisted_inner_truncated(star_p(eps, w, t), w, t) - eps * norm2(w));
}

/// |<X, eps *_p W> - Re(alpha) |<X, W>_p|^2| with alpha = (1 + conj(z_k))^{-1}
/// and eps = <X, W>_p alpha. Requires z_k != -1.
template <typename T, std::size_t D>
T lemma_real_part(const CayleyVector<T, D>& x, const CayleyVector<T, D>& w, const Cayley<T, D>& zk,
                  const TwistIndex& t) {
    const Cayley<T, D> denom = Cayley<T, D>::one() + zk.conj();
    if (denom.is_zero()) {
        throw std::domain_error("lemma_real_part: 1 + conj(z_k) vanishes");
    }
    const Cayley<T, D> alpha = denom.inverse();
    const Cayley<T, D> xw = twisted_inner_truncated(x, w, t);
    const Cayley<T, D> eps = xw * alpha;
    return magnitude(real_inner(x, star_p(eps, w, t)) - alpha.re() * xw.norm2());
}

template <typename T>
struct OrthogonalitySplit {
    T re_part;       ///< Re <z, w>, the real Euclidean product.
    T imag_defect;   ///< |Im(sum_{i<=p} z conj(w) - sum_mid z conj(w) + z_k conj(w_k))|
};

/// <z, w>_p = 0 splits into a real condition and an imaginary one.
template <typename T, std::size_t D>
OrthogonalitySplit<T> orthogonality_split(const CayleyVector<T, D>& z, const CayleyVector<T, D>& w,
                                          const TwistIndex& t) {
    const std::size_t k = static_cast<std::size_t>(t.k());
    const std::size_t p = static_cast<std::size_t>(t.p());
    detail::require_size(z.size(), k, "orthogonality_split");
    detail::require_size(w.size(), k, "orthogonality_split");
    Cayley<T, D> s;
    for (std::size_t i = 0; i < k; ++i) {
        const Cayley<T, D> term = z[i] * w[i].conj();
        if (i >= p && i + 1 < k) {
            s -= term;
        } else {
            s += term;
        }
    }
    return {real_inner(z, w), magnitude(s.im())};
}

}  // namespace fkm

#endif
