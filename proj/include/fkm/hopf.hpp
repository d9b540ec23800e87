#ifndef FKM_HOPF_HPP
#define FKM_HOPF_HPP

// Hopf construction of a map f: S^a x S^b -> S^c,
//   H(f)(cos t x, sin t y) = (-cos^2 t + sin^2 t, 2 sin t cos t f(x, y)),
// and the seed maps it is applied to.

#include <Eigen/Dense>

#include <cmath>
#include <cstddef>
#include <functional>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "fkm/cayley.hpp"
#include "fkm/dispatch.hpp"
#include "fkm/sampling.hpp"

namespace fkm {

struct HopfSeed {
    std::string id;
    std::size_t x_dim = 0;    ///< x lies on the unit sphere of R^{x_dim}
    std::size_t y_dim = 0;    ///< y lies on the unit sphere of R^{y_dim}
    std::size_t out_dim = 0;  ///< f(x, y) lies on the unit sphere of R^{out_dim}
    std::function<std::vector<double>(std::span<const double>, std::span<const double>)> eval;
};

namespace detail {

inline void require_unit_real(std::span<const double> v, const char* what) {
    double s = 0;
    for (double x : v) {
        s += x * x;
    }
    if (std::abs(s - 1.0) > 1e-9) {
        throw std::invalid_argument(std::string(what) + ": argument is not a unit vector");
    }
}

template <std::size_t D>
Cayley<double, D> read_cayley(std::span<const double> v, std::size_t offset) {
    Cayley<double, D> c;
    for (std::size_t i = 0; i < D; ++i) {
        c[i] = v[offset + i];
    }
    return c;
}

template <std::size_t D>
Cayley<double, D> read_imaginary(std::span<const double> v, std::size_t offset) {
    Cayley<double, D> c;
    for (std::size_t i = 1; i < D; ++i) {
        c[i] = v[offset + i - 1];
    }
    return c;
}

template <std::size_t D>
void write_cayley(std::vector<double>& out, const Cayley<double, D>& c) {
    out.insert(out.end(), c.coords().begin(), c.coords().end());
}

template <std::size_t D>
void write_imaginary(std::vector<double>& out, const Cayley<double, D>& c) {
    out.insert(out.end(), c.coords().begin() + 1, c.coords().end());
}

/// Seeds of the form x_1, (x_2, ..., x_{k-1}, x_k) with x_k imaginary.
/// `first` maps (x_1, x_k) to the image of x_k; `slot` maps (x_1, x_i) for
/// 2 <= i <= k-1. When `first_leads` the image of x_k is written first.
template <std::size_t D, typename First, typename Slot>
HopfSeed imaginary_tail_seed(std::string id, int k, bool first_leads, First first, Slot slot) {
    HopfSeed s;
    s.id = std::move(id);
    s.x_dim = D;
    s.y_dim = D * static_cast<std::size_t>(k - 2) + (D - 1);
    s.out_dim = s.y_dim;
    s.eval = [k, first_leads, first, slot](std::span<const double> x, std::span<const double> y) {
        const auto x1 = read_cayley<D>(x, 0);
        const std::size_t tail = D * static_cast<std::size_t>(k - 2);
        const auto xk = read_imaginary<D>(y, tail);
        std::vector<double> out;
        out.reserve(tail + D - 1);
        if (first_leads) {
            write_imaginary<D>(out, first(x1, xk));
        }
        for (int i = 2; i <= k - 1; ++i) {
            write_cayley<D>(out, slot(i, x1, read_cayley<D>(y, D * static_cast<std::size_t>(i - 2))));
        }
        if (!first_leads) {
            write_imaginary<D>(out, first(x1, xk));
        }
        return out;
    };
    return s;
}

}  // namespace detail

/// H(f) at angle t in [0, pi/2], for unit x and y.
inline std::vector<double> hopf_construction(const HopfSeed& f, std::span<const double> x,
                                             std::span<const double> y, double t) {
    if (x.size() != f.x_dim || y.size() != f.y_dim) {
        throw std::invalid_argument("hopf_construction: argument lengths do not match seed " + f.id);
    }
    detail::require_unit_real(x, "hopf_construction");
    detail::require_unit_real(y, "hopf_construction");
    const double c = std::cos(t);
    const double s = std::sin(t);
    const auto fx = f.eval(x, y);
    std::vector<double> out;
    out.reserve(1 + fx.size());
    out.push_back(-c * c + s * s);
    for (double v : fx) {
        out.push_back(2 * s * c * v);
    }
    return out;
}

/// H(f) at a unit z = (cos t x, sin t y) of R^{x_dim + y_dim}. The poles
/// |x-part| = 0 and |y-part| = 0 map to (1, 0, ...) and (-1, 0, ...).
inline std::vector<double> hopf_at_point(const HopfSeed& f, std::span<const double> z) {
    if (z.size() != f.x_dim + f.y_dim) {
        throw std::invalid_argument("hopf_at_point: point length does not match seed " + f.id);
    }
    detail::require_unit_real(z, "hopf_at_point");
    std::vector<double> x(z.begin(), z.begin() + static_cast<std::ptrdiff_t>(f.x_dim));
    std::vector<double> y(z.begin() + static_cast<std::ptrdiff_t>(f.x_dim), z.end());
    const double cx = norm(x);
    const double sy = norm(y);
    std::vector<double> out(1 + f.out_dim, 0.0);
    if (cx == 0.0) {
        out[0] = 1.0;
        return out;
    }
    if (sy == 0.0) {
        out[0] = -1.0;
        return out;
    }
    for (double& v : x) {
        v /= cx;
    }
    for (double& v : y) {
        v /= sy;
    }
    return hopf_construction(f, x, y, std::atan2(sy, cx));
}

/// f(x_1; x_2..x_k) = (x_k, -conj(x_1) x_2, ..., -conj(x_1) x_{k-1}) with x_k
/// imaginary; with `reflected` the first slot is -x_k instead.
template <std::size_t D>
HopfSeed split_f_seed(int k, bool reflected = false) {
    if (k < 2) {
        throw std::invalid_argument("split_f_seed: k must be >= 2");
    }
    const double s = reflected ? -1.0 : 1.0;
    return detail::imaginary_tail_seed<D>(
        reflected ? "split-f-reflected" : "split-f", k, true,
        [s](const Cayley<double, D>&, const Cayley<double, D>& xk) { return s * xk; },
        [](int, const Cayley<double, D>& x1, const Cayley<double, D>& xi) { return -(x1.conj() * xi); });
}

/// omega(x_1)(x_2..x_k) = (conj(x_1) x_k x_1, -conj(x_1) x_2, ..., -conj(x_1) x_{k-1}).
template <std::size_t D>
HopfSeed omega_seed(int k) {
    if (k < 2) {
        throw std::invalid_argument("omega_seed: k must be >= 2");
    }
    return detail::imaginary_tail_seed<D>(
        "omega", k, true,
        [](const Cayley<double, D>& x1, const Cayley<double, D>& xk) { return (x1.conj() * xk) * x1; },
        [](int, const Cayley<double, D>& x1, const Cayley<double, D>& xi) { return -(x1.conj() * xi); });
}

/// omega_0(x_1)(x_2..x_k) = (conj(x_1) x_k x_1, x_2, ..., x_{k-1}) and, for
/// 1 <= i <= k-2, omega_i multiplies the entry x_{i+1} by -conj(x_1), keeping
/// the order (x_2, ..., x_k).
template <std::size_t D>
HopfSeed omega_i_seed(int k, int i) {
    if (k < 2 || i < 0 || i > k - 2) {
        throw std::invalid_argument("omega_i_seed: need 0 <= i <= k-2");
    }
    const std::string id = "omega-" + std::to_string(i);
    if (i == 0) {
        return detail::imaginary_tail_seed<D>(
            id, k, true,
            [](const Cayley<double, D>& x1, const Cayley<double, D>& xk) { return (x1.conj() * xk) * x1; },
            [](int, const Cayley<double, D>&, const Cayley<double, D>& xi) { return xi; });
    }
    return detail::imaginary_tail_seed<D>(
        id, k, false, [](const Cayley<double, D>&, const Cayley<double, D>& xk) { return xk; },
        [i](int slot, const Cayley<double, D>& x1, const Cayley<double, D>& xi) {
            return slot == i + 1 ? -(x1.conj() * xi) : xi;
        });
}

/// f(x, y) = x y conj(x) on S^{D-1} x S^{D-2}, y imaginary.
template <std::size_t D>
HopfSeed xy_conj_seed() {
    HopfSeed s;
    s.id = "xy-conj";
    s.x_dim = D;
    s.y_dim = D - 1;
    s.out_dim = D - 1;
    s.eval = [](std::span<const double> x, std::span<const double> y) {
        const auto a = detail::read_cayley<D>(x, 0);
        const auto b = detail::read_imaginary<D>(y, 0);
        std::vector<double> out;
        detail::write_imaginary<D>(out, (a * b) * a.conj());
        return out;
    };
    return s;
}

/// f(x_1; x_2..x_k) = (x_1 x_2, ..., x_1 x_{j+1}, conj(x_1) x_{j+2}, ..., conj(x_1) x_k).
template <std::size_t D>
HopfSeed split_j_seed(int k, int j) {
    if (k < 2 || j < 0 || j > k - 1) {
        throw std::invalid_argument("split_j_seed: need 0 <= j <= k-1");
    }
    HopfSeed s;
    s.id = "split-" + std::to_string(j);
    s.x_dim = D;
    s.y_dim = D * static_cast<std::size_t>(k - 1);
    s.out_dim = s.y_dim;
    s.eval = [k, j](std::span<const double> x, std::span<const double> y) {
        const auto x1 = detail::read_cayley<D>(x, 0);
        std::vector<double> out;
        for (int i = 1; i <= k - 1; ++i) {
            const auto xi = detail::read_cayley<D>(y, D * static_cast<std::size_t>(i - 1));
            detail::write_cayley<D>(out, (i <= j ? x1 : x1.conj()) * xi);
        }
        return out;
    };
    return s;
}

/// eta_i(x_1)(x_2..x_k) multiplies x_{i+1} by x_1 when i <= j and by conj(x_1)
/// otherwise, leaving the other entries fixed.
template <std::size_t D>
HopfSeed eta_i_seed(int k, int j, int i) {
    if (k < 2 || j < 0 || j > k - 1 || i < 1 || i > k - 1) {
        throw std::invalid_argument("eta_i_seed: need 0 <= j <= k-1 and 1 <= i <= k-1");
    }
    HopfSeed s;
    s.id = "eta-" + std::to_string(i);
    s.x_dim = D;
    s.y_dim = D * static_cast<std::size_t>(k - 1);
    s.out_dim = s.y_dim;
    s.eval = [k, j, i](std::span<const double> x, std::span<const double> y) {
        const auto x1 = detail::read_cayley<D>(x, 0);
        std::vector<double> out;
        for (int r = 1; r <= k - 1; ++r) {
            const auto xr = detail::read_cayley<D>(y, D * static_cast<std::size_t>(r - 1));
            if (r == i) {
                detail::write_cayley<D>(out, (i <= j ? x1 : x1.conj()) * xr);
            } else {
                detail::write_cayley<D>(out, xr);
            }
        }
        return out;
    };
    return s;
}

/// Registered seeds by id: split-f, split-f-reflected, omega, omega-<i>,
/// xy-conj, split-<j>, eta-<i> (the last uses `j` as the split index).
inline HopfSeed make_hopf_seed(const std::string& id, int d, int k, int j = 0) {
    return dispatch_dim(d, [&](auto tag) -> HopfSeed {
        constexpr std::size_t D = decltype(tag)::value;
        if constexpr (D < 4) {
            throw std::invalid_argument("make_hopf_seed: seeds are defined over H and O");
        } else {
            auto suffix = [&](const std::string& prefix) -> std::optional<int> {
                if (id.rfind(prefix, 0) != 0 || id.size() == prefix.size()) {
                    return std::nullopt;
                }
                try {
                    std::size_t used = 0;
                    const int v = std::stoi(id.substr(prefix.size()), &used);
                    if (used != id.size() - prefix.size()) {
                        return std::nullopt;
                    }
                    return v;
                } catch (const std::exception&) {
                    return std::nullopt;
                }
            };
            if (id == "split-f") return split_f_seed<D>(k, false);
            if (id == "split-f-reflected") return split_f_seed<D>(k, true);
            if (id == "omega") return omega_seed<D>(k);
            if (id == "xy-conj") return xy_conj_seed<D>();
            if (auto i = suffix("omega-")) return omega_i_seed<D>(k, *i);
            if (auto jj = suffix("split-")) return split_j_seed<D>(k, *jj);
            if (auto i = suffix("eta-")) return eta_i_seed<D>(k, j, *i);
            throw std::invalid_argument("unknown map id: " + id);
        }
    });
}

// ---------------------------------------------------------------------------
// Spherical Laplacian of a seed in each variable, by second differences along
// great circles: Delta_S g(x) = sum_v d^2/ds^2 g(cos s x + sin s v) at s = 0
// over an orthonormal basis v of the tangent space.

struct BiEigenvalues {
    double lambda_x = 0;    ///< Rayleigh quotient -<Delta_x f, f> / |f|^2
    double lambda_y = 0;
    double residual_x = 0;  ///< |Delta_x f + lambda_x f| / |f|
    double residual_y = 0;
};

namespace detail {

inline std::vector<std::vector<double>> tangent_basis(std::span<const double> x) {
    const Eigen::Index n = static_cast<Eigen::Index>(x.size());
    Eigen::VectorXd v(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        v(i) = x[static_cast<std::size_t>(i)];
    }
    Eigen::MatrixXd q = Eigen::HouseholderQR<Eigen::MatrixXd>(v).householderQ();
    std::vector<std::vector<double>> out;
    for (Eigen::Index c = 1; c < n; ++c) {
        out.emplace_back(q.col(c).data(), q.col(c).data() + n);
    }
    return out;
}

template <typename G>
std::vector<double> sphere_laplacian(std::span<const double> x, G g, double h) {
    const auto f0 = g(x);
    std::vector<double> lap(f0.size(), 0.0);
    std::vector<double> p(x.size()), m(x.size());
    for (const auto& v : tangent_basis(x)) {
        for (std::size_t i = 0; i < x.size(); ++i) {
            p[i] = std::cos(h) * x[i] + std::sin(h) * v[i];
            m[i] = std::cos(h) * x[i] - std::sin(h) * v[i];
        }
        const auto fp = g(p);
        const auto fm = g(m);
        for (std::size_t i = 0; i < f0.size(); ++i) {
            lap[i] += (fp[i] - 2 * f0[i] + fm[i]) / (h * h);
        }
    }
    return lap;
}

inline std::pair<double, double> rayleigh(const std::vector<double>& lap, const std::vector<double>& f) {
    double lf = 0, ff = 0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        lf += lap[i] * f[i];
        ff += f[i] * f[i];
    }
    const double lambda = -lf / ff;
    double r = 0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double e = lap[i] + lambda * f[i];
        r += e * e;
    }
    return {lambda, std::sqrt(r / ff)};
}

}  // namespace detail

inline std::vector<double> sphere_laplacian_x(const HopfSeed& f, std::span<const double> x,
                                              std::span<const double> y, double h = 1e-3) {
    return detail::sphere_laplacian(x, [&](std::span<const double> xx) { return f.eval(xx, y); }, h);
}

inline std::vector<double> sphere_laplacian_y(const HopfSeed& f, std::span<const double> x,
                                              std::span<const double> y, double h = 1e-3) {
    return detail::sphere_laplacian(y, [&](std::span<const double> yy) { return f.eval(x, yy); }, h);
}

/// Measured, not assumed: a seed is a bi-eigenmap exactly when both
/// residuals vanish at every point.
inline BiEigenvalues measure_bi_eigenvalues(const HopfSeed& f, std::span<const double> x,
                                            std::span<const double> y, double h = 1e-3) {
    const auto fxy = f.eval(x, y);
    BiEigenvalues b;
    std::tie(b.lambda_x, b.residual_x) = detail::rayleigh(sphere_laplacian_x(f, x, y, h), fxy);
    std::tie(b.lambda_y, b.residual_y) = detail::rayleigh(sphere_laplacian_y(f, x, y, h), fxy);
    return b;
}

}  // namespace fkm

#endif
