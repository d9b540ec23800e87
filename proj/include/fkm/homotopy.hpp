#ifndef FKM_HOMOTOPY_HPP
#define FKM_HOMOTOPY_HPP

// Homotopy classes of characteristic maps and the cross-section criterion.
//
// The projected characteristic map lands in
//   m = 1: pi_{k-2} S^{k-2} = Z        (k >= 3), class 1 + (-1)^{k-1}
//   m = 2: pi_{2k-2} S^{2k-3} = Z_2    (k >= 3), class k mod 2
//   m = 4: pi_{4k-2} S^{4k-5} = Z_24   (k >= 3), class k - 2 - 2p
//   m = 8: pi_{8k-2} S^{8k-9} = Z_240  (k >= 3), class k - 2 - 2p
// with k = 2 handled separately (unstable groups Z_12, Z_120 for p = 1).

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "fkm/clifford.hpp"

namespace fkm {

inline constexpr const char* unclassified_status = "unstable range, not classified";

/// James number c_4 = 2^7 3^4 5 7, kept as a reference constant only.
inline constexpr std::int64_t james_number_c4 = 128 * 81 * 5 * 7;

struct HomotopyClass {
    std::int64_t modulus = 0;  ///< 0 means the group is Z
    std::int64_t value = 0;    ///< reduced to [0, modulus) when modulus > 0
    std::string group;         ///< e.g. "pi_10 S^7"
    bool generator = false;    ///< value generates the group
    std::string status;        ///< "stable", "unstable", unclassified_status or "not_applicable"

    bool is_zero() const { return value == 0; }
};

inline std::int64_t reduce_mod(std::int64_t v, std::int64_t m) {
    if (m == 0) {
        return v;
    }
    const std::int64_t r = v % m;
    return r < 0 ? r + m : r;
}

namespace detail {

inline std::string pi_group(std::int64_t i, std::int64_t n) {
    return "pi_" + std::to_string(i) + " S^" + std::to_string(n);
}

inline HomotopyClass make_class(std::int64_t modulus, std::int64_t raw, std::string group, std::string status) {
    HomotopyClass c;
    c.modulus = modulus;
    c.value = reduce_mod(raw, modulus);
    c.group = std::move(group);
    c.status = std::move(status);
    c.generator = modulus == 0 ? (c.value == 1 || c.value == -1) : std::gcd(c.value, modulus) == 1;
    return c;
}

}  // namespace detail

/// Class of the projected characteristic map for (m, k, p), m in {1, 2, 4, 8}.
/// For k = 2 with m in {4, 8}: p = 1 gives a generator of pi_6 S^3 = Z_12 or
/// pi_14 S^7 = Z_120 (reported as value 1), p = 0 gives 0. For k = 2 with
/// m in {1, 2} the status is unclassified_status and the value is only the
/// formula's.
inline HomotopyClass homotopy_class(int m, int k, int p) {
    detail::validate_mkp(m, k, p);
    if (k < 2) {
        throw std::invalid_argument("homotopy_class: k must be >= 2");
    }
    const std::int64_t kk = k;
    switch (m) {
        case 1:
            return detail::make_class(0, 1 + ((k - 1) % 2 == 0 ? 1 : -1), detail::pi_group(kk - 2, kk - 2),
                                      k >= 3 ? "stable" : unclassified_status);
        case 2:
            return detail::make_class(2, kk, detail::pi_group(2 * kk - 2, 2 * kk - 3),
                                      k >= 3 ? "stable" : unclassified_status);
        case 4:
        case 8: {
            const std::int64_t d = m;
            const std::int64_t stable_order = m == 4 ? 24 : 240;
            const auto group = detail::pi_group(d * kk - 2, d * kk - d - 1);
            if (k == 2) {
                if (p == 1) {
                    return detail::make_class(stable_order / 2, 1, group, "unstable");
                }
                return detail::make_class(stable_order / 2, 0, group, "unstable");
            }
            return detail::make_class(stable_order, kk - 2 - 2 * p, group, "stable");
        }
        default:
            break;
    }
    HomotopyClass c;
    c.status = "not_applicable";
    return c;
}

/// Whether the sphere bundle over S^{Dk-1} has a cross-section. Evaluated
/// from the divisibility criteria directly rather than through
/// homotopy_class: m in {1, 2} iff k is even; m in {4, 8} iff 24 resp. 240
/// divides k - 2 - 2p (for k = 2: iff p = 0).
inline bool cross_section_exists(int m, int k, int p) {
    detail::validate_mkp(m, k, p);
    if (k < 2) {
        throw std::invalid_argument("cross_section_exists: k must be >= 2");
    }
    switch (m) {
        case 1:
        case 2: return k % 2 == 0;
        case 4:
        case 8:
            if (k == 2) {
                return p == 0;
            }
            return (k - 2 - 2 * p) % (m == 4 ? 24 : 240) == 0;
        default: throw std::invalid_argument("cross_section_exists: m must be 1, 2, 4 or 8");
    }
}

/// For k = 2p + 2 the Clifford system extends, which forces a section.
inline bool extension_implies_section(int m, int k, int p) {
    return extend_clifford(m, k, p).op.has_value() && cross_section_exists(m, k, p);
}

/// Order of pi_{4k-2} Sp(k-1): (2k-1)! for odd k, 2(2k-1)! for even k.
inline boost::multiprecision::cpp_int sp_homotopy_order(int k) {
    if (k < 2) {
        throw std::invalid_argument("sp_homotopy_order: k must be >= 2");
    }
    boost::multiprecision::cpp_int f = 1;
    for (int i = 2; i <= 2 * k - 1; ++i) {
        f *= i;
    }
    return k % 2 == 1 ? f : 2 * f;
}

/// Class of H(split-j) in pi_{8k-1} S^{8k-8} = Z_240: 2j - k + 1.
inline HomotopyClass harmonic_class(int k, int j) {
    if (k < 3 || j < 0 || j > k - 1) {
        throw std::invalid_argument("harmonic_class: need k >= 3 and 0 <= j <= k-1");
    }
    return detail::make_class(240, 2 * j - k + 1, detail::pi_group(8 * k - 1, 8 * k - 8), "stable");
}

// ---------------------------------------------------------------------------
// Formal sums of suspended J-homomorphism images.
//   zeta  = H(x, y -> x y),           pi_7 S^4,  suspension s: pi_{7+s} S^{4+s}
//   varrho = H(x, y -> x y conj x),   pi_6 S^3,  suspension s: pi_{6+s} S^{3+s}
//   sigma, rho: the octonionic analogues in pi_15 S^8 and pi_14 S^7.
// In the stable range Sigma zeta = 1 and Sigma^2 varrho = 2 in Z_24, and
// likewise sigma = 1, rho = 2 in Z_240.

enum class JGenerator { zeta, varrho, sigma, rho };

struct JTerm {
    JGenerator gen;
    int suspension;
    std::int64_t coeff;
};

using JExpression = std::vector<JTerm>;

namespace detail {

struct JInfo {
    int stem;
    int base_sphere;
    int modulus;
    int stable_value;
};

inline JInfo j_info(JGenerator g) {
    switch (g) {
        case JGenerator::zeta: return {3, 4, 24, 1};
        case JGenerator::varrho: return {3, 3, 24, 2};
        case JGenerator::sigma: return {7, 8, 240, 1};
        case JGenerator::rho: return {7, 7, 240, 2};
    }
    throw std::invalid_argument("bad generator");
}

}  // namespace detail

inline JGenerator parse_j_generator(const std::string& name) {
    if (name == "zeta") return JGenerator::zeta;
    if (name == "varrho") return JGenerator::varrho;
    if (name == "sigma") return JGenerator::sigma;
    if (name == "rho") return JGenerator::rho;
    throw std::invalid_argument("unregistered generator symbol: " + name);
}

/// Reduces a formal sum to its value in Z_24 or Z_240. All terms must live in
/// the same stable group pi_{n+stem} S^n, whose order must be target_modulus.
inline HomotopyClass j_reduce(const JExpression& expr, std::int64_t target_modulus) {
    if (expr.empty()) {
        throw std::invalid_argument("j_reduce: empty expression");
    }
    const auto first = detail::j_info(expr.front().gen);
    if (first.modulus != target_modulus) {
        throw std::invalid_argument("j_reduce: generators live in Z_" + std::to_string(first.modulus) +
                                    ", not Z_" + std::to_string(target_modulus));
    }
    const int sphere = first.base_sphere + expr.front().suspension;
    std::int64_t total = 0;
    for (const auto& t : expr) {
        const auto info = detail::j_info(t.gen);
        if (info.modulus != first.modulus) {
            throw std::invalid_argument("j_reduce: mixes quaternionic and octonionic generators");
        }
        if (t.suspension < 0 || info.base_sphere + t.suspension != sphere) {
            throw std::invalid_argument("j_reduce: terms lie in different homotopy groups");
        }
        total += t.coeff * info.stable_value;
    }
    if (sphere < first.stem + 2) {
        throw std::invalid_argument("j_reduce: " + detail::pi_group(sphere + first.stem, sphere) +
                                    " is outside the stable range");
    }
    return detail::make_class(first.modulus, total, detail::pi_group(sphere + first.stem, sphere), "stable");
}

/// Collects equal (generator, suspension) terms and drops zero coefficients.
inline JExpression j_simplify(const JExpression& expr) {
    std::map<std::pair<int, int>, std::int64_t> acc;
    for (const auto& t : expr) {
        acc[{static_cast<int>(t.gen), t.suspension}] += t.coeff;
    }
    JExpression out;
    for (const auto& [key, c] : acc) {
        if (c != 0) {
            out.push_back({static_cast<JGenerator>(key.first), key.second, c});
        }
    }
    return out;
}

/// [sigma_{k,p}] = -[S^{Dk-2D} rho'] - (p-1)[S^{Dk-2D-1} zeta'] + (k-1-p)[S^{Dk-2D-1} zeta'],
/// where (zeta', rho') = (zeta, varrho) for D = 4 and (sigma, rho) for D = 8.
inline JExpression characteristic_chain(int m, int k, int p) {
    require_m4_or_m8(m, "characteristic_chain");
    if (k < 3 || p < 0 || p > k - 1) {
        throw std::invalid_argument("characteristic_chain: need k >= 3 and 0 <= p <= k-1");
    }
    const JGenerator lin = m == 4 ? JGenerator::zeta : JGenerator::sigma;
    const JGenerator conj = m == 4 ? JGenerator::varrho : JGenerator::rho;
    const int s = m * k - 2 * m;
    return {{conj, s, -1}, {lin, s - 1, -(p - 1)}, {lin, s - 1, k - 1 - p}};
}

/// [H(split-j)] = j[S^{8k-16} sigma] - (k-j-1)[S^{8k-16} sigma].
inline JExpression harmonic_chain(int k, int j) {
    if (k < 3 || j < 0 || j > k - 1) {
        throw std::invalid_argument("harmonic_chain: need k >= 3 and 0 <= j <= k-1");
    }
    return {{JGenerator::sigma, 8 * k - 16, j}, {JGenerator::sigma, 8 * k - 16, -(k - j - 1)}};
}

}  // namespace fkm

#endif
