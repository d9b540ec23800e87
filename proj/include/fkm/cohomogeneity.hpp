#ifndef FKM_COHOMOGENEITY_HPP
#define FKM_COHOMOGENEITY_HPP

// The m = 3 case: M_+ = {(x, y) in H^k x H^k : |x| = |y| = 1/sqrt2,
// Im <x, y> = 0} is an Sp(k)-space parametrized by
//   Phi(A, z) = (A_1, z A) / sqrt2,  A in Sp(k), z = (z_1, ..., z_k) unit with z_1 real,
// where A_1 is the first row and z A is a row vector times A. The function
// f(x, y) = 2<x, y> on M_+ is Sp(k)-invariant and f(Phi(A, z)) = z_1.

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "fkm/cayley.hpp"
#include "fkm/sampling.hpp"
#include "fkm/twisted.hpp"

namespace fkm {

using Quat = Quaternion<double>;
using QuatVector = CayleyVector<double, 4>;

/// Square quaternionic matrix, row-major.
class QuatMatrix {
public:
    explicit QuatMatrix(std::size_t n) : n_(n), a_(n * n) {}

    static QuatMatrix identity(std::size_t n) {
        QuatMatrix m(n);
        for (std::size_t i = 0; i < n; ++i) {
            m(i, i) = Quat::one();
        }
        return m;
    }

    std::size_t size() const { return n_; }
    Quat& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
    const Quat& operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

    QuatVector row(std::size_t i) const {
        return QuatVector(a_.begin() + static_cast<std::ptrdiff_t>(i * n_),
                          a_.begin() + static_cast<std::ptrdiff_t>((i + 1) * n_));
    }

    /// Conjugate transpose, the inverse of an element of Sp(k).
    QuatMatrix adjoint() const {
        QuatMatrix m(n_);
        for (std::size_t i = 0; i < n_; ++i) {
            for (std::size_t j = 0; j < n_; ++j) {
                m(j, i) = (*this)(i, j).conj();
            }
        }
        return m;
    }

    friend QuatMatrix operator*(const QuatMatrix& a, const QuatMatrix& b) {
        QuatMatrix c(a.n_);
        for (std::size_t i = 0; i < a.n_; ++i) {
            for (std::size_t j = 0; j < a.n_; ++j) {
                Quat s;
                for (std::size_t r = 0; r < a.n_; ++r) {
                    s += a(i, r) * b(r, j);
                }
                c(i, j) = s;
            }
        }
        return c;
    }

private:
    std::size_t n_;
    std::vector<Quat> a_;
};

/// Row vector times matrix: (x A)_j = sum_i x_i A_ij.
inline QuatVector row_times(const QuatVector& x, const QuatMatrix& a) {
    detail::require_size(x.size(), a.size(), "row_times");
    QuatVector out(a.size());
    for (std::size_t j = 0; j < a.size(); ++j) {
        for (std::size_t i = 0; i < a.size(); ++i) {
            out[j] += x[i] * a(i, j);
        }
    }
    return out;
}

/// Hermitian product sum_i a_i conj(b_i).
inline Quat hermitian(const QuatVector& a, const QuatVector& b) {
    detail::require_size(b.size(), a.size(), "hermitian");
    Quat s;
    for (std::size_t i = 0; i < a.size(); ++i) {
        s += a[i] * b[i].conj();
    }
    return s;
}

/// max |A A^* - I| entrywise.
inline double unitarity_residual(const QuatMatrix& a) {
    const QuatMatrix p = a * a.adjoint();
    double r = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < a.size(); ++j) {
            r = std::max(r, (p(i, j) - (i == j ? Quat::one() : Quat())).norm());
        }
    }
    return r;
}

/// Random element of Sp(k) from Gram-Schmidt on Gaussian rows.
inline QuatMatrix random_sp(Rng& rng, std::size_t k) {
    QuatMatrix a(k);
    for (std::size_t i = 0; i < k; ++i) {
        QuatVector r = unflatten<4>(gaussian_vector(rng, 4 * k));
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t j = 0; j < i; ++j) {
                const QuatVector rj = a.row(j);
                const Quat c = hermitian(r, rj);
                for (std::size_t t = 0; t < k; ++t) {
                    r[t] -= c * rj[t];
                }
            }
        }
        const double n = std::sqrt(norm2(r));
        if (n < 1e-12) {
            throw std::runtime_error("random_sp: degenerate Gaussian draw");
        }
        for (std::size_t t = 0; t < k; ++t) {
            a(i, t) = r[t] / n;
        }
    }
    return a;
}

struct QuatPair {
    QuatVector x;
    QuatVector y;
};

/// Phi(A, z) = (A_1, z A) / sqrt2.
inline QuatPair phi_cohomogeneity(const QuatMatrix& a, const QuatVector& z) {
    detail::require_size(z.size(), a.size(), "phi_cohomogeneity");
    if (std::abs(norm2(z) - 1.0) > 1e-9) {
        throw std::invalid_argument("phi_cohomogeneity: z is not a unit vector");
    }
    if (z[0].im().norm() > 1e-9) {
        throw std::invalid_argument("phi_cohomogeneity: z_1 must be real");
    }
    const double s = 1.0 / std::sqrt(2.0);
    QuatPair out{a.row(0), row_times(z, a)};
    for (auto& q : out.x) {
        q *= s;
    }
    for (auto& q : out.y) {
        q *= s;
    }
    return out;
}

/// Residual of (x, y) in M_+: max of ||x|^2 - 1/2|, ||y|^2 - 1/2|, |Im <x, y>|.
inline double m_plus_residual(const QuatPair& v) {
    return std::max({std::abs(norm2(v.x) - 0.5), std::abs(norm2(v.y) - 0.5), hermitian(v.x, v.y).im().norm()});
}

/// f(x, y) = 2 <x, y> (real part of the Hermitian product), for (x, y) in M_+.
inline double isoparametric_f(const QuatPair& v, double tol = 1e-9) {
    if (m_plus_residual(v) > tol) {
        throw std::invalid_argument("isoparametric_f: point is not on M_+");
    }
    return 2.0 * real_inner(v.x, v.y);
}

/// g . (x, y) = (x g^{-1}, y g^{-1}).
inline QuatPair act(const QuatMatrix& g, const QuatPair& v) {
    const QuatMatrix gi = g.adjoint();
    return {row_times(v.x, gi), row_times(v.y, gi)};
}

/// |Phi(A g^{-1}, z) - g . Phi(A, z)|.
inline double equivariance_residual(const QuatMatrix& a, const QuatMatrix& g, const QuatVector& z) {
    const QuatPair lhs = phi_cohomogeneity(a * g.adjoint(), z);
    const QuatPair rhs = act(g, phi_cohomogeneity(a, z));
    double r = 0;
    for (std::size_t i = 0; i < lhs.x.size(); ++i) {
        r = std::max({r, (lhs.x[i] - rhs.x[i]).norm(), (lhs.y[i] - rhs.y[i]).norm()});
    }
    return r;
}

/// Unit z in H^k with z_1 real.
inline QuatVector sample_cohomogeneity_slice(Rng& rng, std::size_t k) {
    auto v = gaussian_vector(rng, 4 * k);
    v[1] = v[2] = v[3] = 0;
    normalize(v);
    return unflatten<4>(v);
}

}  // namespace fkm

#endif
