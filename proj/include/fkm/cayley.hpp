#ifndef FKM_CAYLEY_HPP
#define FKM_CAYLEY_HPP

// Normed division algebras R, C, H, O built by the Cayley-Dickson doubling
//   (a, b)(c, d) = (ac - conj(d) b, d a + b conj(c))
// starting from the reals. Coordinates of a D-dimensional element split into
// a lower and an upper half, so the basis 1, e1, ..., e7 satisfies
// e1 e2 = e3 and e4 = (0, 1).

#include <array>
#include <cmath>
#include <cstddef>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>

namespace fkm {

template <std::size_t D>
concept DivisionAlgebraDim = (D == 1 || D == 2 || D == 4 || D == 8);

template <typename T, std::size_t D>
    requires DivisionAlgebraDim<D>
class Cayley {
public:
    using value_type = T;
    static constexpr std::size_t dim = D;

    constexpr Cayley() {
        c_.fill(T(0));
    }

    explicit constexpr Cayley(const std::array<T, D>& coords) : c_(coords) {}

    static constexpr Cayley real(T r) {
        Cayley out;
        out.c_[0] = r;
        return out;
    }

    static constexpr Cayley one() {
        return real(T(1));
    }

    /// Basis element e_i, with e_0 = 1.
    static Cayley basis(std::size_t i) {
        if (i >= D) {
            throw std::out_of_range("Cayley::basis: index " + std::to_string(i) +
                                    " out of range for dimension " + std::to_string(D));
        }
        Cayley out;
        out.c_[i] = T(1);
        return out;
    }

    constexpr T& operator[](std::size_t i) {
        return c_[i];
    }
    constexpr const T& operator[](std::size_t i) const {
        return c_[i];
    }

    constexpr const std::array<T, D>& coords() const {
        return c_;
    }

    constexpr T re() const {
        return c_[0];
    }

    constexpr Cayley im() const {
        Cayley out = *this;
        out.c_[0] = T(0);
        return out;
    }

    constexpr Cayley conj() const {
        Cayley out;
        out.c_[0] = c_[0];
        for (std::size_t i = 1; i < D; ++i) {
            out.c_[i] = -c_[i];
        }
        return out;
    }

    constexpr T norm2() const {
        T s(0);
        for (const T& x : c_) {
            s += x * x;
        }
        return s;
    }

    T norm() const
        requires std::is_floating_point_v<T>
    {
        using std::sqrt;
        return sqrt(norm2());
    }

    Cayley inverse() const {
        const T n2 = norm2();
        if (n2 == T(0)) {
            throw std::domain_error("Cayley::inverse: zero element has no inverse");
        }
        Cayley out = conj();
        for (T& x : out.c_) {
            x /= n2;
        }
        return out;
    }

    constexpr bool is_zero() const {
        for (const T& x : c_) {
            if (x != T(0)) {
                return false;
            }
        }
        return true;
    }

    constexpr Cayley& operator+=(const Cayley& o) {
        for (std::size_t i = 0; i < D; ++i) {
            c_[i] += o.c_[i];
        }
        return *this;
    }
    constexpr Cayley& operator-=(const Cayley& o) {
        for (std::size_t i = 0; i < D; ++i) {
            c_[i] -= o.c_[i];
        }
        return *this;
    }
    constexpr Cayley& operator*=(const T& s) {
        for (T& x : c_) {
            x *= s;
        }
        return *this;
    }
    constexpr Cayley& operator/=(const T& s) {
        for (T& x : c_) {
            x /= s;
        }
        return *this;
    }

    friend constexpr Cayley operator+(Cayley a, const Cayley& b) {
        return a += b;
    }
    friend constexpr Cayley operator-(Cayley a, const Cayley& b) {
        return a -= b;
    }
    friend constexpr Cayley operator-(Cayley a) {
        for (T& x : a.c_) {
            x = -x;
        }
        return a;
    }
    friend constexpr Cayley operator*(Cayley a, const T& s) {
        return a *= s;
    }
    friend constexpr Cayley operator*(const T& s, Cayley a) {
        return a *= s;
    }
    friend constexpr Cayley operator/(Cayley a, const T& s) {
        return a /= s;
    }

    friend constexpr Cayley operator*(const Cayley& a, const Cayley& b) {
        Cayley out;
        multiply<D>(a.c_.data(), b.c_.data(), out.c_.data());
        return out;
    }

    friend constexpr bool operator==(const Cayley& a, const Cayley& b) {
        return a.c_ == b.c_;
    }

    friend std::ostream& operator<<(std::ostream& os, const Cayley& a) {
        os << '(';
        for (std::size_t i = 0; i < D; ++i) {
            os << (i ? ", " : "") << a.c_[i];
        }
        return os << ')';
    }

private:
    template <std::size_t N>
    static constexpr void conj_into(const T* a, T* out) {
        out[0] = a[0];
        for (std::size_t i = 1; i < N; ++i) {
            out[i] = -a[i];
        }
    }

    template <std::size_t N>
    static constexpr void multiply(const T* a, const T* b, T* out) {
        if constexpr (N == 1) {
            out[0] = a[0] * b[0];
        } else {
            constexpr std::size_t H = N / 2;
            const T* a0 = a;
            const T* a1 = a + H;
            const T* b0 = b;
            const T* b1 = b + H;
            std::array<T, H> b0c{}, b1c{}, t1{}, t2{};
            conj_into<H>(b0, b0c.data());
            conj_into<H>(b1, b1c.data());
            // lower half: a0 b0 - conj(b1) a1
            multiply<H>(a0, b0, t1.data());
            multiply<H>(b1c.data(), a1, t2.data());
            for (std::size_t i = 0; i < H; ++i) {
                out[i] = t1[i] - t2[i];
            }
            // upper half: b1 a0 + a1 conj(b0)
            multiply<H>(b1, a0, t1.data());
            multiply<H>(a1, b0c.data(), t2.data());
            for (std::size_t i = 0; i < H; ++i) {
                out[H + i] = t1[i] + t2[i];
            }
        }
    }

    std::array<T, D> c_;
};

template <typename T>
using Real = Cayley<T, 1>;
template <typename T>
using Complex = Cayley<T, 2>;
template <typename T>
using Quaternion = Cayley<T, 4>;
template <typename T>
using Octonion = Cayley<T, 8>;

/// Euclidean inner product of the underlying real coordinates, Re(a conj(b)).
template <typename T, std::size_t D>
constexpr T real_inner(const Cayley<T, D>& a, const Cayley<T, D>& b) {
    T s(0);
    for (std::size_t i = 0; i < D; ++i) {
        s += a[i] * b[i];
    }
    return s;
}

/// Size of a residual element: Euclidean norm for floating types, squared norm
/// otherwise (so exact backends never need a square root).
template <typename T, std::size_t D>
T magnitude(const Cayley<T, D>& a) {
    if constexpr (std::is_floating_point_v<T>) {
        return a.norm();
    } else {
        return a.norm2();
    }
}

template <typename T>
T magnitude(const T& x) {
    return x < T(0) ? -x : x;
}

template <typename T, std::size_t D>
Cayley<T, D> associator(const Cayley<T, D>& a, const Cayley<T, D>& b, const Cayley<T, D>& c) {
    return (a * b) * c - a * (b * c);
}

enum class Identity {
    re_commute,
    re_associate,
    norm_cancel,
    adjoint_shift,
    artin_left_alternative,
    artin_right_alternative,
    associative,
};

inline constexpr std::array<Identity, 7> all_identities{
    Identity::re_commute,
    Identity::re_associate,
    Identity::norm_cancel,
    Identity::adjoint_shift,
    Identity::artin_left_alternative,
    Identity::artin_right_alternative,
    Identity::associative,
};

inline std::string_view to_string(Identity id) {
    switch (id) {
        case Identity::re_commute: return "re-commute";
        case Identity::re_associate: return "re-associate";
        case Identity::norm_cancel: return "norm-cancel";
        case Identity::adjoint_shift: return "adjoint-shift";
        case Identity::artin_left_alternative: return "artin-left-alternative";
        case Identity::artin_right_alternative: return "artin-right-alternative";
        case Identity::associative: return "associative";
    }
    return "?";
}

inline Identity parse_identity(std::string_view name) {
    for (Identity id : all_identities) {
        if (to_string(id) == name) {
            return id;
        }
    }
    throw std::invalid_argument("unknown identity id: " + std::string(name));
}

/// |LHS - RHS| of the named identity at (a, b, c). Identities that only involve
/// two arguments ignore c. `associative` holds only for D <= 4.
template <typename T, std::size_t D>
T check_identity(Identity id, const Cayley<T, D>& a, const Cayley<T, D>& b, const Cayley<T, D>& c) {
    switch (id) {
        case Identity::re_commute:
            return magnitude((a * b).re() - (b * a).re());
        case Identity::re_associate:
            return magnitude((a * (b * c)).re() - ((a * b) * c).re());
        case Identity::norm_cancel:
            return magnitude((a * b) * b.conj() - a * b.norm2());
        case Identity::adjoint_shift:
            return magnitude(real_inner(a * b, c) - real_inner(a, c * b.conj()));
        case Identity::artin_left_alternative:
            return magnitude(a * (a * b) - (a * a) * b);
        case Identity::artin_right_alternative:
            return magnitude((a * b) * b - a * (b * b));
        case Identity::associative:
            return magnitude(associator(a, b, c));
    }
    throw std::invalid_argument("check_identity: bad identity");
}

template <typename T, std::size_t D>
T check_identity(std::string_view id, const Cayley<T, D>& a, const Cayley<T, D>& b,
                 const Cayley<T, D>& c) {
    return check_identity(parse_identity(id), a, b, c);
}

/// e1(e2(...(e7 z))), which equals -z for every octonion z.
template <typename T>
Octonion<T> seven_fold_left_mult(const Octonion<T>& z) {
    Octonion<T> acc = z;
    for (std::size_t i = 7; i >= 1; --i) {
        acc = Octonion<T>::basis(i) * acc;
    }
    return acc;
}

/// Left multiplication by e_i as a signed permutation of coordinates:
/// e_i e_j = sign[j] e_{target[j]}.
template <std::size_t D>
struct BasisProduct {
    std::array<std::size_t, D> target{};
    std::array<int, D> sign{};
};

template <std::size_t D>
BasisProduct<D> left_basis_product(std::size_t i) {
    BasisProduct<D> out;
    const auto ei = Cayley<int, D>::basis(i);
    for (std::size_t j = 0; j < D; ++j) {
        const auto prod = ei * Cayley<int, D>::basis(j);
        for (std::size_t r = 0; r < D; ++r) {
            if (prod[r] != 0) {
                out.target[j] = r;
                out.sign[j] = prod[r];
            }
        }
    }
    return out;
}

}  // namespace fkm

#endif
