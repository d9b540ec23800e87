#ifndef FKM_CLIFFORD_HPP
#define FKM_CLIFFORD_HPP

// Symmetric Clifford systems P_0, ..., P_m on R^{2l}, built from skew
// operators E_1, ..., E_{m-1} on R^l = K^k, together with the quartic
// F(x) = |x|^4 - 2 sum <P_i x, x>^2 they define.
//
// Every operator here acts on real coordinates as a signed permutation, so
// the defining relations are certified over the integers.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "fkm/cayley.hpp"
#include "fkm/int_matrix.hpp"

namespace fkm {

/// Real dimension of the algebra whose units drive the E-family for a given m.
inline int delta(int m) {
    switch (m) {
        case 1: return 1;
        case 2: return 2;
        case 3: return 4;
        case 4: return 4;
        case 8: return 8;
        default:
            throw std::invalid_argument("delta: unsupported m=" + std::to_string(m) +
                                        " (expected 1, 2, 3, 4 or 8)");
    }
}

/// Largest l accepted when building a system.
inline constexpr std::size_t max_l = 4096;
/// Largest l accepted by the dense integer certification.
inline constexpr std::size_t max_dense_l = 1024;

struct SkewOperator {
    SignedPermutation action;  ///< acts on R^l
    std::string description;
};

class CliffordSystem {
public:
    CliffordSystem(int m, int k, int p, std::vector<SignedPermutation> operators,
                   std::vector<SkewOperator> e_family)
        : m_(m), k_(k), p_(p), operators_(std::move(operators)), e_family_(std::move(e_family)) {
        if (operators_.empty()) {
            throw std::invalid_argument("CliffordSystem: no operators");
        }
        const std::size_t n = operators_.front().size();
        if (n % 2 != 0) {
            throw std::invalid_argument("CliffordSystem: ambient dimension must be even");
        }
        for (const auto& op : operators_) {
            if (op.size() != n) {
                throw std::invalid_argument("CliffordSystem: operators of different sizes");
            }
        }
        l_ = n / 2;
    }

    int m() const { return m_; }
    int k() const { return k_; }
    int p() const { return p_; }
    std::size_t l() const { return l_; }
    /// Multiplicities (m1, m2) = (m, l - m - 1) of the associated isoparametric family.
    int m1() const { return static_cast<int>(operators_.size()) - 1; }
    int m2() const { return static_cast<int>(l_) - m1() - 1; }
    const std::vector<SignedPermutation>& operators() const { return operators_; }
    const std::vector<SkewOperator>& e_family() const { return e_family_; }

    std::vector<IntMatrix> dense() const {
        if (l_ > max_dense_l) {
            throw std::length_error("CliffordSystem::dense: l=" + std::to_string(l_) +
                                    " exceeds the dense limit " + std::to_string(max_dense_l));
        }
        std::vector<IntMatrix> out;
        out.reserve(operators_.size());
        for (const auto& op : operators_) {
            out.push_back(op.to_matrix());
        }
        return out;
    }

private:
    int m_;
    int k_;
    int p_;
    std::size_t l_ = 0;
    std::vector<SignedPermutation> operators_;
    std::vector<SkewOperator> e_family_;
};

namespace detail {

template <std::size_t D>
SignedPermutation block_left_mult(std::size_t alpha, const std::vector<int>& block_signs) {
    const auto prod = left_basis_product<D>(alpha);
    const std::size_t l = D * block_signs.size();
    std::vector<std::size_t> src(l);
    std::vector<int> sg(l);
    for (std::size_t b = 0; b < block_signs.size(); ++b) {
        for (std::size_t j = 0; j < D; ++j) {
            const std::size_t row = b * D + prod.target[j];
            src[row] = b * D + j;
            sg[row] = prod.sign[j] * block_signs[b];
        }
    }
    return {std::move(src), std::move(sg)};
}

inline SignedPermutation block_left_mult(int d, std::size_t alpha, const std::vector<int>& block_signs) {
    switch (d) {
        case 1: return block_left_mult<1>(alpha, block_signs);
        case 2: return block_left_mult<2>(alpha, block_signs);
        case 4: return block_left_mult<4>(alpha, block_signs);
        case 8: return block_left_mult<8>(alpha, block_signs);
        default: throw std::invalid_argument("block_left_mult: bad dimension");
    }
}

inline void validate_mkp(int m, int k, int p) {
    delta(m);
    if (k < 1) {
        throw std::invalid_argument("k must be >= 1, got " + std::to_string(k));
    }
    if (p < 0 || p > k - 1) {
        throw std::invalid_argument("p must lie in [0, k-1], got p=" + std::to_string(p) +
                                    " for k=" + std::to_string(k));
    }
    if (static_cast<std::size_t>(k) * static_cast<std::size_t>(delta(m)) > max_l) {
        throw std::length_error("l = k * delta(m) exceeds " + std::to_string(max_l));
    }
}

}  // namespace detail

/// Signs (+ on blocks 1..p, - on blocks p+1..k-1, + on block k) used by the
/// quaternionic and octonionic families.
inline std::vector<int> twist_signs(int k, int p) {
    std::vector<int> s(static_cast<std::size_t>(k), -1);
    for (int i = 0; i < p; ++i) {
        s[static_cast<std::size_t>(i)] = 1;
    }
    s.back() = 1;
    return s;
}

/// The skew family E_1, ..., E_{m-1} on K^k. For m = 3 this returns left
/// multiplication by i, j, k on H^k, which pairs with P_0 alone.
inline std::vector<SkewOperator> build_e_family(int m, int k, int p) {
    detail::validate_mkp(m, k, p);
    std::vector<SkewOperator> out;
    const std::vector<int> plus(static_cast<std::size_t>(k), 1);
    switch (m) {
        case 1:
            break;
        case 2:
            out.push_back({detail::block_left_mult(2, 1, plus), "left multiplication by i"});
            break;
        case 3:
            for (std::size_t a = 1; a <= 3; ++a) {
                out.push_back({detail::block_left_mult(4, a, plus),
                               "left multiplication by e" + std::to_string(a)});
            }
            break;
        case 4:
        case 8: {
            const auto signs = twist_signs(k, p);
            for (std::size_t a = 1; a < static_cast<std::size_t>(m); ++a) {
                out.push_back({detail::block_left_mult(m, a, signs),
                               "signed left multiplication by e" + std::to_string(a) + " (p=" +
                                   std::to_string(p) + ")"});
            }
            break;
        }
        default:
            break;
    }
    return out;
}

/// (z, w) -> (E w, -E z) on R^{2l}.
inline SignedPermutation skew_to_symmetric(const SignedPermutation& e) {
    const std::size_t l = e.size();
    std::vector<std::size_t> src(2 * l);
    std::vector<int> sg(2 * l);
    for (std::size_t i = 0; i < l; ++i) {
        src[i] = l + e.source()[i];
        sg[i] = e.sign()[i];
        src[l + i] = e.source()[i];
        sg[l + i] = -e.sign()[i];
    }
    return {std::move(src), std::move(sg)};
}

/// P_0 (z, w) = (z, -w).
inline SignedPermutation p0_operator(std::size_t l) {
    std::vector<std::size_t> src(2 * l);
    std::vector<int> sg(2 * l);
    for (std::size_t i = 0; i < 2 * l; ++i) {
        src[i] = i;
        sg[i] = i < l ? 1 : -1;
    }
    return {std::move(src), std::move(sg)};
}

/// P_1 (z, w) = (w, z).
inline SignedPermutation p1_operator(std::size_t l) {
    std::vector<std::size_t> src(2 * l);
    for (std::size_t i = 0; i < l; ++i) {
        src[i] = l + i;
        src[l + i] = i;
    }
    return {std::move(src), std::vector<int>(2 * l, 1)};
}

/// The standard system for (m, k, p): l = k delta(m), P_0, P_1 = swap (absent
/// when m = 3), and P_{1+a} built from E_a. p only matters for m in {4, 8}.
inline CliffordSystem build_clifford_system(int m, int k, int p) {
    detail::validate_mkp(m, k, p);
    const std::size_t l = static_cast<std::size_t>(k) * static_cast<std::size_t>(delta(m));
    auto e_family = build_e_family(m, k, p);
    std::vector<SignedPermutation> ops;
    ops.push_back(p0_operator(l));
    if (m != 3) {
        ops.push_back(p1_operator(l));
    }
    for (const auto& e : e_family) {
        ops.push_back(skew_to_symmetric(e.action));
    }
    return {m, k, p, std::move(ops), std::move(e_family)};
}

/// Copy of `sys` with the sign of one row of operator `op` flipped.
inline CliffordSystem with_sign_fault(const CliffordSystem& sys, std::size_t op, std::size_t row) {
    auto ops = sys.operators();
    if (op >= ops.size() || row >= ops[op].size()) {
        throw std::out_of_range("with_sign_fault: operator or row out of range");
    }
    auto src = ops[op].source();
    auto sg = ops[op].sign();
    sg[row] = -sg[row];
    ops[op] = SignedPermutation(std::move(src), std::move(sg));
    return {sys.m(), sys.k(), sys.p(), std::move(ops), sys.e_family()};
}

struct CliffordResidual {
    std::int64_t anticommutation = 0;  ///< max |P_i P_j + P_j P_i - 2 delta_ij I|
    std::int64_t symmetry = 0;         ///< max |P_i - P_i^T|
    std::int64_t orthogonality = 0;    ///< max |P_i^T P_i - I|

    std::int64_t max() const { return std::max({anticommutation, symmetry, orthogonality}); }
    bool exact() const { return max() == 0; }
};

/// Dense integer certification of the Clifford relations.
inline CliffordResidual verify_clifford(std::span<const IntMatrix> ps) {
    CliffordResidual r;
    if (ps.empty()) {
        return r;
    }
    const std::size_t n = ps.front().size();
    const IntMatrix id = IntMatrix::identity(n);
    std::vector<IntMatrix> transposed;
    transposed.reserve(ps.size());
    for (const auto& p : ps) {
        transposed.push_back(p.transpose());
        r.symmetry = std::max(r.symmetry, (p - transposed.back()).max_abs());
        r.orthogonality = std::max(r.orthogonality, (transposed.back() * p - id).max_abs());
    }
    for (std::size_t i = 0; i < ps.size(); ++i) {
        for (std::size_t j = i; j < ps.size(); ++j) {
            IntMatrix s = ps[i] * ps[j] + ps[j] * ps[i];
            if (i == j) {
                s = s - id - id;
            }
            r.anticommutation = std::max(r.anticommutation, s.max_abs());
        }
    }
    return r;
}

inline CliffordResidual verify_clifford(const CliffordSystem& sys) {
    const auto dense = sys.dense();
    return verify_clifford(std::span<const IntMatrix>(dense));
}

namespace detail {

/// Max entry of |A - B| for signed permutations, without forming matrices.
inline std::int64_t signed_perm_distance(const SignedPermutation& a, const SignedPermutation& b) {
    std::int64_t d = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a.source()[i] != b.source()[i]) {
            d = std::max<std::int64_t>(d, 1);
        } else if (a.sign()[i] != b.sign()[i]) {
            d = 2;
        }
    }
    return d;
}

inline SignedPermutation transpose(const SignedPermutation& a) {
    std::vector<std::size_t> src(a.size());
    std::vector<int> sg(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        src[a.source()[i]] = i;
        sg[a.source()[i]] = a.sign()[i];
    }
    return {std::move(src), std::move(sg)};
}

}  // namespace detail

/// Same relations as verify_clifford, checked in signed-permutation form.
/// Reports 0 exactly when the dense check would; nonzero values are
/// indicative only.
inline CliffordResidual verify_clifford_structured(const CliffordSystem& sys) {
    CliffordResidual r;
    const auto& ps = sys.operators();
    const auto id = SignedPermutation::identity(ps.front().size());
    for (const auto& p : ps) {
        const auto pt = detail::transpose(p);
        r.symmetry = std::max(r.symmetry, detail::signed_perm_distance(p, pt));
        r.orthogonality = std::max(r.orthogonality, detail::signed_perm_distance(pt * p, id));
    }
    for (std::size_t i = 0; i < ps.size(); ++i) {
        for (std::size_t j = i; j < ps.size(); ++j) {
            const auto a = ps[i] * ps[j];
            const auto b = i == j ? id : -(ps[j] * ps[i]);
            r.anticommutation = std::max(r.anticommutation, detail::signed_perm_distance(a, b));
        }
    }
    return r;
}

/// P_0 P_1 ... P_m as a signed permutation.
inline SignedPermutation full_product(const CliffordSystem& sys) {
    SignedPermutation acc = SignedPermutation::identity(2 * sys.l());
    for (const auto& p : sys.operators()) {
        acc = acc * p;
    }
    return acc;
}

inline void require_m4_or_m8(int m, const char* what) {
    if (m != 4 && m != 8) {
        throw std::invalid_argument(std::string(what) + ": defined for m in {4, 8}, got m=" +
                                    std::to_string(m));
    }
}

/// tr(P_0 P_1 ... P_m), computed with dense integer matrices.
inline std::int64_t product_trace(const CliffordSystem& sys) {
    require_m4_or_m8(sys.m(), "product_trace");
    const auto dense = sys.dense();
    IntMatrix acc = dense.front();
    for (std::size_t i = 1; i < dense.size(); ++i) {
        acc = acc * dense[i];
    }
    return acc.trace();
}

/// -8(2p - k + 2) for m = 4 and -16(2p - k + 2) for m = 8.
inline std::int64_t product_trace_closed_form(int m, int k, int p) {
    require_m4_or_m8(m, "product_trace_closed_form");
    const std::int64_t base = 2 * p - k + 2;
    return (m == 4 ? -8 : -16) * base;
}

enum class Definiteness { definite_plus, definite_minus, indefinite, not_applicable };

inline const char* to_string(Definiteness d) {
    switch (d) {
        case Definiteness::definite_plus: return "definite_plus";
        case Definiteness::definite_minus: return "definite_minus";
        case Definiteness::indefinite: return "indefinite";
        case Definiteness::not_applicable: return "not_applicable";
    }
    return "?";
}

/// For m = 0 mod 4 the product P_0 ... P_m commutes with the system; it is
/// +-I for a definite system.
inline Definiteness classify_definiteness(const CliffordSystem& sys) {
    if (sys.m() % 4 != 0) {
        return Definiteness::not_applicable;
    }
    const auto prod = full_product(sys);
    const auto id = SignedPermutation::identity(prod.size());
    if (prod == id) {
        return Definiteness::definite_plus;
    }
    if (prod == -id) {
        return Definiteness::definite_minus;
    }
    return Definiteness::indefinite;
}

struct ExtensionResult {
    std::optional<SkewOperator> op;
    std::string reason;  ///< why no extension was produced; empty on success
};

/// For k = 2p + 2, the block map
///   z -> (z_{p+1..2p}, -z_{1..p}, z_{2p+2}, -z_{2p+1})
/// anticommutes with every E_a and squares to -I, so the system extends by one.
inline ExtensionResult extend_clifford(int m, int k, int p) {
    detail::validate_mkp(m, k, p);
    if (m != 4 && m != 8) {
        return {std::nullopt, "extension defined for m in {4, 8}"};
    }
    if (k != 2 * p + 2) {
        return {std::nullopt, "k ≠ 2p+2"};
    }
    const std::size_t d = static_cast<std::size_t>(m);
    const std::size_t pp = static_cast<std::size_t>(p);
    const std::size_t l = static_cast<std::size_t>(k) * d;
    std::vector<std::size_t> src(l);
    std::vector<int> sg(l);
    auto map_block = [&](std::size_t out_block, std::size_t in_block, int sign) {
        for (std::size_t c = 0; c < d; ++c) {
            src[out_block * d + c] = in_block * d + c;
            sg[out_block * d + c] = sign;
        }
    };
    for (std::size_t i = 0; i < pp; ++i) {
        map_block(i, pp + i, 1);
        map_block(pp + i, i, -1);
    }
    map_block(2 * pp, 2 * pp + 1, 1);
    map_block(2 * pp + 1, 2 * pp, -1);
    SkewOperator e{SignedPermutation(std::move(src), std::move(sg)), "block extension for k=2p+2"};

    const IntMatrix em = e.action.to_matrix();
    const IntMatrix id = IntMatrix::identity(l);
    bool ok = (em * em + id).max_abs() == 0 && (em + em.transpose()).max_abs() == 0;
    for (const auto& ea : build_e_family(m, k, p)) {
        const IntMatrix am = ea.action.to_matrix();
        ok = ok && (em * am + am * em).max_abs() == 0;
    }
    if (!ok) {
        throw std::logic_error("extend_clifford: certification failed");
    }
    return {std::move(e), {}};
}

/// The (m+1)-system obtained by adjoining (z, w) -> (E w, -E z).
inline CliffordSystem extended_system(const CliffordSystem& sys, const SkewOperator& e) {
    auto ops = sys.operators();
    auto family = sys.e_family();
    ops.push_back(skew_to_symmetric(e.action));
    family.push_back(e);
    return {sys.m() + 1, sys.k(), sys.p(), std::move(ops), std::move(family)};
}

// ---------------------------------------------------------------------------
// The quartic F(x) = |x|^4 - 2 sum_i <P_i x, x>^2.

namespace detail {

inline double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        s += a[i] * b[i];
    }
    return s;
}

inline void require_ambient(const CliffordSystem& sys, std::size_t n) {
    if (n != 2 * sys.l()) {
        throw std::invalid_argument("point has length " + std::to_string(n) + ", expected " +
                                    std::to_string(2 * sys.l()));
    }
}

}  // namespace detail

inline double fkm_value(const CliffordSystem& sys, std::span<const double> x) {
    detail::require_ambient(sys, x.size());
    const double r2 = detail::dot(x, x);
    double s = 0;
    for (const auto& p : sys.operators()) {
        const auto px = p.apply(x);
        const double q = detail::dot(px, x);
        s += q * q;
    }
    return r2 * r2 - 2 * s;
}

/// grad F = 4|x|^2 x - 8 sum_i <P_i x, x> P_i x.
inline std::vector<double> fkm_gradient(const CliffordSystem& sys, std::span<const double> x) {
    detail::require_ambient(sys, x.size());
    const double r2 = detail::dot(x, x);
    std::vector<double> g(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        g[i] = 4 * r2 * x[i];
    }
    for (const auto& p : sys.operators()) {
        const auto px = p.apply(x);
        const double q = detail::dot(px, x);
        for (std::size_t i = 0; i < x.size(); ++i) {
            g[i] -= 8 * q * px[i];
        }
    }
    return g;
}

/// Delta F = 4(n+2)|x|^2 - 2 sum_i (8 |P_i x|^2 + 4 <P_i x, x> tr P_i), n = 2l.
inline double fkm_laplacian(const CliffordSystem& sys, std::span<const double> x) {
    detail::require_ambient(sys, x.size());
    const double n = static_cast<double>(x.size());
    const double r2 = detail::dot(x, x);
    double s = 0;
    for (const auto& p : sys.operators()) {
        const auto px = p.apply(x);
        s += 8 * detail::dot(px, px) + 4 * detail::dot(px, x) * static_cast<double>(p.trace());
    }
    return 4 * (n + 2) * r2 - 2 * s;
}

/// c in Delta F = c |x|^2, namely 8(m2 - m1).
inline double cartan_munzner_constant(const CliffordSystem& sys) {
    return 8.0 * (sys.m2() - sys.m1());
}

struct CartanMunznerResidual {
    double gradient = 0;   ///< | |grad F|^2 - 16 |x|^6 |
    double laplacian = 0;  ///< | Delta F - 8(m2 - m1) |x|^2 |
};

inline CartanMunznerResidual verify_cartan_munzner(const CliffordSystem& sys, std::span<const double> x) {
    const double r2 = detail::dot(x, x);
    const auto g = fkm_gradient(sys, x);
    CartanMunznerResidual r;
    r.gradient = std::abs(detail::dot(g, g) - 16 * r2 * r2 * r2);
    r.laplacian = std::abs(fkm_laplacian(sys, x) - cartan_munzner_constant(sys) * r2);
    return r;
}

/// max_i |grad F_i - central difference of F| with step h.
inline double gradient_fd_residual(const CliffordSystem& sys, std::span<const double> x, double h = 1e-5) {
    const auto g = fkm_gradient(sys, x);
    std::vector<double> y(x.begin(), x.end());
    double worst = 0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        const double xi = y[i];
        y[i] = xi + h;
        const double fp = fkm_value(sys, y);
        y[i] = xi - h;
        const double fm = fkm_value(sys, y);
        y[i] = xi;
        worst = std::max(worst, std::abs((fp - fm) / (2 * h) - g[i]));
    }
    return worst;
}

}  // namespace fkm

#endif
