#ifndef FKM_BUNDLE_HPP
#define FKM_BUNDLE_HPP

// For m in {1, 2, 4, 8} the map (z, w) -> z exhibits N_+ = sqrt(2) M_+ as a
// bundle of (D(k-1)-1)-spheres over the unit sphere of K^k, D = delta(m).
// Two local trivializations psi_1 (away from z_k = -1)
// and psi_2 (away from z_k = 1) glue along the equator Re z_k = 0 by the
// characteristic map chi = psi_1^{-1} psi_2.

#include <Eigen/Dense>

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "fkm/clifford.hpp"
#include "fkm/dispatch.hpp"
#include "fkm/sampling.hpp"
#include "fkm/twisted.hpp"

namespace fkm {

/// Tolerance for the "point lies on the stated sphere/equator" preconditions.
inline constexpr double precondition_tol = 1e-9;

namespace detail {

template <std::size_t D>
void require_unit(const CayleyVector<double, D>& z, const char* what) {
    if (std::abs(norm2(z) - 1.0) > precondition_tol) {
        throw std::invalid_argument(std::string(what) + ": basepoint is not a unit vector");
    }
}

template <std::size_t D>
void require_equator(const CayleyVector<double, D>& z, const char* what) {
    require_unit(z, what);
    if (std::abs(z.back().re()) > precondition_tol) {
        throw std::invalid_argument(std::string(what) + ": basepoint is off the equator Re z_k = 0");
    }
}

template <std::size_t D>
CayleyVector<double, D> head(const CayleyVector<double, D>& z) {
    return CayleyVector<double, D>(z.begin(), z.end() - 1);
}

}  // namespace detail

/// psi_1(z, X) = (X - (c alpha) *_p W, -c b) with W = (z_1..z_{k-1}),
/// c = <X, W>_p, alpha = (1 + conj z_k)^{-1}, b = (1 + z_k)(1 + conj z_k)^{-1}.
template <std::size_t D>
CayleyVector<double, D> psi1(const CayleyVector<double, D>& z, const CayleyVector<double, D>& x,
                             const TwistIndex& t) {
    detail::require_size(z.size(), static_cast<std::size_t>(t.k()), "psi1");
    detail::require_unit(z, "psi1");
    using C = Cayley<double, D>;
    const C one = C::one();
    const C den = one + z.back().conj();
    if (den.norm() < 1e-12) {
        throw std::domain_error("psi1: singular basepoint z_k = -1");
    }
    const auto w = detail::head(z);
    const C alpha = den.inverse();
    const C c = twisted_inner_truncated(x, w, t);
    const C b = (one + z.back()) * alpha;
    auto shift = star_p(c * alpha, w, t);
    CayleyVector<double, D> y(z.size());
    for (std::size_t i = 0; i + 1 < z.size(); ++i) {
        y[i] = x[i] - shift[i];
    }
    y.back() = -(c * b);
    return y;
}

/// psi_2(z, X) = (X - (c alpha') *_p W, c b') with alpha' = (1 - conj z_k)^{-1},
/// b' = (1 - z_k)(1 - conj z_k)^{-1}.
template <std::size_t D>
CayleyVector<double, D> psi2(const CayleyVector<double, D>& z, const CayleyVector<double, D>& x,
                             const TwistIndex& t) {
    detail::require_size(z.size(), static_cast<std::size_t>(t.k()), "psi2");
    detail::require_unit(z, "psi2");
    using C = Cayley<double, D>;
    const C one = C::one();
    const C den = one - z.back().conj();
    if (den.norm() < 1e-12) {
        throw std::domain_error("psi2: singular basepoint z_k = 1");
    }
    const auto w = detail::head(z);
    const C alpha = den.inverse();
    const C c = twisted_inner_truncated(x, w, t);
    const C b = (one - z.back()) * alpha;
    auto shift = star_p(c * alpha, w, t);
    CayleyVector<double, D> y(z.size());
    for (std::size_t i = 0; i + 1 < z.size(); ++i) {
        y[i] = x[i] - shift[i];
    }
    y.back() = c * b;
    return y;
}

/// Recovers X from Y = psi_1(z, X): X = Y' - ((y_k b^{-1}) alpha) *_p W.
template <std::size_t D>
CayleyVector<double, D> psi1_inverse(const CayleyVector<double, D>& z, const CayleyVector<double, D>& y,
                                     const TwistIndex& t) {
    detail::require_size(z.size(), static_cast<std::size_t>(t.k()), "psi1_inverse");
    detail::require_size(y.size(), static_cast<std::size_t>(t.k()), "psi1_inverse");
    using C = Cayley<double, D>;
    const C one = C::one();
    const C den = one + z.back().conj();
    if (den.norm() < 1e-12) {
        throw std::domain_error("psi1_inverse: singular basepoint z_k = -1");
    }
    const auto w = detail::head(z);
    const C alpha = den.inverse();
    const C b = (one + z.back()) * alpha;
    const C c = -(y.back() * b.inverse());
    auto shift = star_p(c * alpha, w, t);
    CayleyVector<double, D> x(z.size() - 1);
    for (std::size_t i = 0; i < x.size(); ++i) {
        x[i] = y[i] + shift[i];
    }
    return x;
}

/// chi(z) X = X - 2 (<X, W>_p (1 + z_k)^{-2}) *_p W for z on the equator.
template <std::size_t D>
CayleyVector<double, D> char_map_apply(const CayleyVector<double, D>& z, const CayleyVector<double, D>& x,
                                       const TwistIndex& t) {
    detail::require_size(z.size(), static_cast<std::size_t>(t.k()), "char_map_apply");
    detail::require_equator(z, "char_map_apply");
    using C = Cayley<double, D>;
    const C s = C::one() + z.back();
    const C inv2 = (s * s).inverse();
    const auto w = detail::head(z);
    const C eps = twisted_inner_truncated(x, w, t) * inv2;
    auto shift = star_p(eps, w, t);
    CayleyVector<double, D> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        out[i] = x[i] - 2.0 * shift[i];
    }
    return out;
}

/// Matrix of chi(z) acting on real coordinates of K^{k-1}; column j is chi(z) e_j.
template <std::size_t D>
Eigen::MatrixXd char_map_matrix(const CayleyVector<double, D>& z, const TwistIndex& t) {
    const std::size_t n = D * static_cast<std::size_t>(t.k() - 1);
    Eigen::MatrixXd a(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    std::vector<double> e(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        e[j] = 1.0;
        const auto col = flatten<D>(char_map_apply<D>(z, unflatten<D>(e), t));
        e[j] = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = col[i];
        }
    }
    return a;
}

/// chi(z) applied to (1, 0, ..., 0): the map S^{D(k-1)-1} -> S^{D(k-1)-1}
/// obtained by composing with the projection to the first column.
template <std::size_t D>
CayleyVector<double, D> projected_map(const CayleyVector<double, D>& z, const TwistIndex& t) {
    CayleyVector<double, D> x0(static_cast<std::size_t>(t.k() - 1));
    x0[0] = Cayley<double, D>::one();
    return char_map_apply<D>(z, x0, t);
}

/// Closed form of projected_map. With c = (1 + z_k)^{-2}:
///   p >= 1: (1 - 2(conj z_1 c) z_1, -2(conj z_1 c) z_i for i <= p, -2(conj c z_1) z_j for j > p)
///   p = 0:  (1 - 2(conj c conj z_1) z_1, -2(conj c conj z_1) z_j)
template <std::size_t D>
CayleyVector<double, D> projected_map_closed_form(const CayleyVector<double, D>& z, const TwistIndex& t) {
    detail::require_size(z.size(), static_cast<std::size_t>(t.k()), "projected_map_closed_form");
    detail::require_equator(z, "projected_map_closed_form");
    using C = Cayley<double, D>;
    const std::size_t k = z.size();
    const std::size_t p = static_cast<std::size_t>(t.p());
    const C s = C::one() + z.back();
    const C c = (s * s).inverse();
    const C z1b = z[0].conj();
    CayleyVector<double, D> out(k - 1);
    if (p >= 1) {
        const C a = z1b * c;
        const C b = c.conj() * z[0];
        for (std::size_t i = 0; i + 1 < k; ++i) {
            out[i] = -2.0 * ((i < p ? a : b) * z[i]);
        }
    } else {
        const C a = c.conj() * z1b;
        for (std::size_t i = 0; i + 1 < k; ++i) {
            out[i] = -2.0 * (a * z[i]);
        }
    }
    out[0] += C::one();
    return out;
}

/// -(1 + t z_2)^2 (1 - t z_2)^{-2}: a null-homotopy of the projected map for
/// k = 2, p = 0 (t = 1 recovers the map, t = 0 is constant -1).
template <std::size_t D>
Cayley<double, D> nullhomotopy_eval(const Cayley<double, D>& z2, double t) {
    if (std::abs(z2.re()) > precondition_tol) {
        throw std::invalid_argument("nullhomotopy_eval: z_2 must be purely imaginary");
    }
    if (t < 0.0 || t > 1.0) {
        throw std::invalid_argument("nullhomotopy_eval: t must lie in [0, 1]");
    }
    using C = Cayley<double, D>;
    const C a = C::one() + t * z2;
    const C b = C::one() - t * z2;
    return -((a * a) * (b * b).inverse());
}

// ---------------------------------------------------------------------------
// m = 1: stereographic trivializations of the real Stiefel manifold V_2(R^k).

struct RealFrame {
    std::vector<double> z;  ///< unit vector of R^k
    std::vector<double> y;  ///< unit vector of R^k orthogonal to z
};

namespace detail {

inline RealFrame stereo_frame(std::span<const double> x, std::span<const double> tvec, double sign) {
    if (x.size() != tvec.size()) {
        throw std::invalid_argument("stereographic chart: x and T differ in length");
    }
    const std::size_t n = x.size();
    const double r2 = dot(x, x);
    const double xt = dot(x, tvec);
    const double s = 1.0 / (1.0 + r2);
    RealFrame f{std::vector<double>(n + 1), std::vector<double>(n + 1)};
    for (std::size_t i = 0; i < n; ++i) {
        f.z[i] = 2 * x[i] * s;
        f.y[i] = ((1 + r2) * tvec[i] - 2 * xt * x[i]) * s;
    }
    f.z[n] = sign * (r2 - 1) * s;
    f.y[n] = sign * 2 * xt * s;
    return f;
}

}  // namespace detail

/// psi_1(x, T) = ((2x, |x|^2 - 1), ((1+|x|^2) T - 2<x,T> x, 2<x,T>)) / (1 + |x|^2).
inline RealFrame psi1_real(std::span<const double> x, std::span<const double> tvec) {
    return detail::stereo_frame(x, tvec, 1.0);
}

/// psi_2(x, T) = ((2x, 1 - |x|^2), ((1+|x|^2) T - 2<x,T> x, -2<x,T>)) / (1 + |x|^2).
inline RealFrame psi2_real(std::span<const double> x, std::span<const double> tvec) {
    return detail::stereo_frame(x, tvec, -1.0);
}

/// Inverse of psi1_real on frames with z != (0, ..., 0, 1).
inline std::pair<std::vector<double>, std::vector<double>> psi1_real_inverse(const RealFrame& f) {
    const std::size_t n = f.z.size() - 1;
    const double den = 1.0 - f.z[n];
    if (std::abs(den) < 1e-12) {
        throw std::domain_error("psi1_real_inverse: singular basepoint");
    }
    std::vector<double> x(n), tvec(n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = f.z[i] / den;
    }
    for (std::size_t i = 0; i < n; ++i) {
        tvec[i] = f.y[i] + f.y[n] * x[i];
    }
    return {std::move(x), std::move(tvec)};
}

// ---------------------------------------------------------------------------
// Runtime-dimension wrapper.

class CharMap {
public:
    CharMap(int m, int k, int p) : m_(m), k_(k), p_(p) {
        if (m != 1 && m != 2 && m != 4 && m != 8) {
            throw std::invalid_argument("CharMap: no characteristic map for m=" + std::to_string(m));
        }
        if (k < 2) {
            throw std::invalid_argument("CharMap: k must be >= 2");
        }
        TwistIndex(k, p);
        if (m <= 2) {
            p_ = k - 1;
        }
    }

    int m() const { return m_; }
    int k() const { return k_; }
    int p() const { return p_; }
    int d() const { return delta(m_); }
    TwistIndex twist() const { return {k_, p_}; }
    /// Real dimension of the fibre's ambient space K^{k-1}.
    std::size_t n() const { return static_cast<std::size_t>(d()) * static_cast<std::size_t>(k_ - 1); }
    /// chi lands in O(n) rather than SO(n) only for m = 1.
    bool orientation_reversing() const { return m_ == 1; }

    /// z is given by its D k real coordinates.
    Eigen::MatrixXd matrix(std::span<const double> z) const {
        return dispatch_dim(d(), [&](auto tag) {
            constexpr std::size_t D = decltype(tag)::value;
            return char_map_matrix<D>(unflatten<D>(z), twist());
        });
    }

    std::vector<double> projected(std::span<const double> z) const {
        return dispatch_dim(d(), [&](auto tag) {
            constexpr std::size_t D = decltype(tag)::value;
            return flatten<D>(projected_map<D>(unflatten<D>(z), twist()));
        });
    }

private:
    int m_;
    int k_;
    int p_;
};

// ---------------------------------------------------------------------------
// Membership in M_+.

struct MembershipReport {
    double twisted_residual = 0;    ///< from |z| = |w| = 1/sqrt2 and <z, w>_p = 0
    double quadratic_residual = 0;  ///< from |x| = 1 and <P_i x, x> = 0
    bool twisted_member = false;
    bool quadratic_member = false;
    bool agree() const { return twisted_member == quadratic_member; }
};

/// Tests x in R^{2l} against both descriptions of M_+. For m = 3 the twisted
/// description is |z| = |w| = 1/sqrt2, Im <z, w>_H = 0.
inline MembershipReport m_plus_membership(const CliffordSystem& sys, std::span<const double> x, double tol) {
    detail::require_ambient(sys, x.size());
    MembershipReport r;
    const std::size_t l = sys.l();
    const int m = sys.m();
    const int d = delta(m);
    const std::span<const double> zs = x.subspan(0, l);
    const std::span<const double> ws = x.subspan(l, l);
    double tw = std::max(std::abs(detail::dot(zs, zs) - 0.5), std::abs(detail::dot(ws, ws) - 0.5));
    dispatch_dim(d, [&](auto tag) {
        constexpr std::size_t D = decltype(tag)::value;
        const auto z = unflatten<D>(zs);
        const auto w = unflatten<D>(ws);
        const int p = (m == 4 || m == 8) ? sys.p() : sys.k() - 1;
        const auto ip = twisted_inner(z, w, TwistIndex(sys.k(), p));
        tw = std::max(tw, m == 3 ? ip.im().norm() : ip.norm());
        return 0;
    });
    r.twisted_residual = tw;

    double q = std::abs(detail::dot(x, x) - 1.0);
    for (const auto& p : sys.operators()) {
        const auto px = p.apply(x);
        q = std::max(q, std::abs(detail::dot(px, x)));
    }
    r.quadratic_residual = q;
    r.twisted_member = r.twisted_residual <= tol;
    r.quadratic_member = r.quadratic_residual <= tol;
    return r;
}

/// (z, psi(z, X)) / sqrt2 as a point of R^{2l}, with psi the trivialization
/// whose singular pole is farther from z: psi_1 when |1 + z_k| >= |1 - z_k|,
/// else psi_2. Rounding in psi grows like 1/|1 -+ z_k|, and one of the two
/// distances is always at least 1.
template <std::size_t D>
std::vector<double> m_plus_point(const CayleyVector<double, D>& z, const CayleyVector<double, D>& x,
                                 const TwistIndex& t) {
    const auto one = Cayley<double, D>::one();
    const bool first = (one + z.back()).norm2() >= (one - z.back()).norm2();
    auto out = flatten<D>(z);
    const auto y = flatten<D>(first ? psi1<D>(z, x, t) : psi2<D>(z, x, t));
    out.insert(out.end(), y.begin(), y.end());
    for (double& v : out) {
        v /= std::sqrt(2.0);
    }
    return out;
}

}  // namespace fkm

#endif
