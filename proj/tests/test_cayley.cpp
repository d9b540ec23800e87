#include <gtest/gtest.h>

#include <boost/rational.hpp>

#include <cstdint>
#include <random>

#include "fkm/cayley.hpp"
#include "fkm/sampling.hpp"
#include "oracle_tables.hpp"

namespace {

using Q = boost::rational<std::int64_t>;

template <std::size_t D>
fkm::Cayley<double, D> random_element(fkm::Rng& rng) {
    return fkm::unflatten<D>(fkm::gaussian_vector(rng, D))[0];
}

fkm::Octonion<Q> random_rational(fkm::Rng& rng) {
    std::uniform_int_distribution<int> num(-20, 20), den(1, 9);
    fkm::Octonion<Q> o;
    for (std::size_t i = 0; i < 8; ++i) {
        o[i] = Q(num(rng), den(rng));
    }
    return o;
}

}  // namespace

TEST(Cayley, OctonionTableMatchesOracle) {
    for (std::size_t i = 0; i < 8; ++i) {
        for (std::size_t j = 0; j < 8; ++j) {
            const auto prod = fkm::Octonion<int>::basis(i) * fkm::Octonion<int>::basis(j);
            const int v = oracle::octonion_table[i][j];
            auto want = fkm::Octonion<int>::basis(static_cast<std::size_t>(std::abs(v) - 1));
            if (v < 0) {
                want = -want;
            }
            EXPECT_EQ(prod, want) << "e" << i << " e" << j;
        }
    }
}

TEST(Cayley, QuaternionsAreHamiltonQuaternions) {
    using H = fkm::Quaternion<int>;
    const H one = H::one(), i = H::basis(1), j = H::basis(2), k = H::basis(3);
    EXPECT_EQ(i * i, -one);
    EXPECT_EQ(j * j, -one);
    EXPECT_EQ(k * k, -one);
    EXPECT_EQ(i * j, k);
    EXPECT_EQ(j * k, i);
    EXPECT_EQ(k * i, j);
    EXPECT_EQ(j * i, -k);
    EXPECT_EQ((i * j) * k, -one);
}

TEST(Cayley, LowerAlgebrasEmbedAsFirstHalf) {
    // (a, 0)(c, 0) = (ac, 0): the quaternion table is the upper-left block.
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) {
            const auto h = fkm::Quaternion<int>::basis(i) * fkm::Quaternion<int>::basis(j);
            const auto o = fkm::Octonion<int>::basis(i) * fkm::Octonion<int>::basis(j);
            for (std::size_t r = 0; r < 4; ++r) {
                EXPECT_EQ(h[r], o[r]);
                EXPECT_EQ(0, o[r + 4]);
            }
        }
    }
    const auto c = fkm::Complex<int>::basis(1) * fkm::Complex<int>::basis(1);
    EXPECT_EQ(c, -fkm::Complex<int>::one());
}

TEST(Cayley, LeftBasisProductAgreesWithMultiplication) {
    for (std::size_t i = 0; i < 8; ++i) {
        const auto bp = fkm::left_basis_product<8>(i);
        for (std::size_t j = 0; j < 8; ++j) {
            const int v = oracle::octonion_table[i][j];
            EXPECT_EQ(bp.target[j], static_cast<std::size_t>(std::abs(v) - 1));
            EXPECT_EQ(bp.sign[j], v > 0 ? 1 : -1);
        }
    }
}

TEST(Cayley, SevenFoldLeftMultiplicationIsMinusIdentityOnBasis) {
    for (std::size_t i = 0; i < 8; ++i) {
        const auto e = fkm::Octonion<int>::basis(i);
        EXPECT_EQ(fkm::seven_fold_left_mult(e), -e) << "e" << i;
    }
}

TEST(Cayley, SevenFoldLeftMultiplicationExactOnRationals) {
    fkm::Rng rng(7);
    for (int n = 0; n < 200; ++n) {
        const auto z = random_rational(rng);
        EXPECT_EQ(fkm::seven_fold_left_mult(z), -z);
    }
}

TEST(Cayley, OctonionsAreNotAssociative) {
    using O = fkm::Octonion<int>;
    const auto a = fkm::associator(O::basis(1), O::basis(2), O::basis(4));
    EXPECT_EQ(a, 2 * O::basis(7));
    EXPECT_NE((O::basis(1) * O::basis(2)) * O::basis(4), O::basis(1) * (O::basis(2) * O::basis(4)));
}

TEST(Cayley, QuaternionsAreAssociativeExactly) {
    fkm::Rng rng(3);
    std::uniform_int_distribution<int> u(-9, 9);
    for (int n = 0; n < 200; ++n) {
        fkm::Quaternion<Q> a, b, c;
        for (std::size_t i = 0; i < 4; ++i) {
            a[i] = Q(u(rng), 1 + std::abs(u(rng)));
            b[i] = Q(u(rng), 1 + std::abs(u(rng)));
            c[i] = Q(u(rng), 1 + std::abs(u(rng)));
        }
        EXPECT_EQ(fkm::check_identity(fkm::Identity::associative, a, b, c), Q(0));
    }
}

TEST(Cayley, OctonionIdentitiesHoldExactlyOverRationals) {
    fkm::Rng rng(11);
    for (int n = 0; n < 100; ++n) {
        const auto a = random_rational(rng), b = random_rational(rng), c = random_rational(rng);
        for (fkm::Identity id : fkm::all_identities) {
            if (id == fkm::Identity::associative) {
                continue;
            }
            EXPECT_EQ(fkm::check_identity(id, a, b, c), Q(0)) << fkm::to_string(id);
        }
    }
}

TEST(Cayley, OctonionIdentitiesInDoubles) {
    fkm::Rng rng(5);
    double worst = 0;
    for (int n = 0; n < 10000; ++n) {
        const auto a = random_element<8>(rng), b = random_element<8>(rng), c = random_element<8>(rng);
        for (fkm::Identity id : fkm::all_identities) {
            if (id != fkm::Identity::associative) {
                worst = std::max(worst, fkm::check_identity(id, a / a.norm(), b / b.norm(), c / c.norm()));
            }
        }
    }
    EXPECT_LE(worst, 1e-13);
}

TEST(Cayley, NormIsMultiplicative) {
    fkm::Rng rng(9);
    for (int n = 0; n < 100; ++n) {
        const auto a = random_rational(rng), b = random_rational(rng);
        EXPECT_EQ((a * b).norm2(), a.norm2() * b.norm2());
    }
}

TEST(Cayley, InverseAndConjugate) {
    fkm::Rng rng(13);
    const auto a = random_rational(rng);
    EXPECT_EQ(a * a.inverse(), fkm::Octonion<Q>::one());
    EXPECT_EQ(a.inverse() * a, fkm::Octonion<Q>::one());
    EXPECT_EQ(a * a.conj(), fkm::Octonion<Q>::real(a.norm2()));
    EXPECT_EQ(a.re() * 2, (a + a.conj()).re());
    EXPECT_THROW(fkm::Octonion<Q>().inverse(), std::domain_error);
}

TEST(Cayley, IdentityNamesRoundTrip) {
    for (fkm::Identity id : fkm::all_identities) {
        EXPECT_EQ(fkm::parse_identity(fkm::to_string(id)), id);
    }
    EXPECT_THROW(fkm::parse_identity("commutative"), std::invalid_argument);
}
