#include <gtest/gtest.h>

#include <boost/rational.hpp>

#include <cstdint>
#include <random>

#include "fkm/sampling.hpp"
#include "fkm/twisted.hpp"

namespace {

using Q = boost::rational<std::int64_t>;

template <std::size_t D>
fkm::CayleyVector<Q, D> random_rational_vector(fkm::Rng& rng, std::size_t n) {
    std::uniform_int_distribution<int> num(-6, 6), den(1, 5);
    fkm::CayleyVector<Q, D> v(n);
    for (auto& c : v) {
        for (std::size_t i = 0; i < D; ++i) {
            c[i] = Q(num(rng), den(rng));
        }
    }
    return v;
}

template <std::size_t D>
void star_inner_exact(int k) {
    fkm::Rng rng(static_cast<std::uint64_t>(k) * 31 + D);
    for (int p = 0; p < k; ++p) {
        const fkm::TwistIndex t(k, p);
        for (int n = 0; n < 20; ++n) {
            const auto w = random_rational_vector<D>(rng, static_cast<std::size_t>(k - 1));
            const auto eps = random_rational_vector<D>(rng, 1)[0];
            EXPECT_EQ(fkm::lemma_star_inner(eps, w, t), Q(0)) << "k=" << k << " p=" << p;
        }
    }
}

template <std::size_t D>
void real_part_exact(int k) {
    fkm::Rng rng(static_cast<std::uint64_t>(k) * 17 + D);
    for (int p = 0; p < k; ++p) {
        const fkm::TwistIndex t(k, p);
        for (int n = 0; n < 20; ++n) {
            const auto x = random_rational_vector<D>(rng, static_cast<std::size_t>(k - 1));
            const auto w = random_rational_vector<D>(rng, static_cast<std::size_t>(k - 1));
            auto zk = random_rational_vector<D>(rng, 1)[0];
            if ((fkm::Cayley<Q, D>::one() + zk.conj()).is_zero()) {
                continue;
            }
            EXPECT_EQ(fkm::lemma_real_part(x, w, zk, t), Q(0)) << "k=" << k << " p=" << p;
        }
    }
}

}  // namespace

TEST(Twisted, DefiniteIndexIsHermitianProduct) {
    fkm::Rng rng(1);
    const auto z = random_rational_vector<8>(rng, 4);
    const auto w = random_rational_vector<8>(rng, 4);
    fkm::Octonion<Q> h;
    for (std::size_t i = 0; i < 4; ++i) {
        h += z[i] * w[i].conj();
    }
    EXPECT_EQ(fkm::twisted_inner(z, w, fkm::TwistIndex(4, 3)), h);
}

TEST(Twisted, MiddleSlotsAreConjugated) {
    // k = 3, p = 0: <z, w>_0 = w_1 conj(z_1) + w_2 conj(z_2) + z_3 conj(w_3).
    using H = fkm::Quaternion<Q>;
    const H i = H::basis(1), j = H::basis(2);
    fkm::CayleyVector<Q, 4> z{i, H(), H()};
    fkm::CayleyVector<Q, 4> w{j, H(), H()};
    EXPECT_EQ(fkm::twisted_inner(z, w, fkm::TwistIndex(3, 0)), j * i.conj());
    EXPECT_EQ(fkm::twisted_inner(z, w, fkm::TwistIndex(3, 1)), i * j.conj());
    EXPECT_NE(j * i.conj(), i * j.conj());
}

TEST(Twisted, RealPartIsEuclideanProduct) {
    fkm::Rng rng(2);
    for (int k = 1; k <= 5; ++k) {
        for (int p = 0; p < k; ++p) {
            const auto z = random_rational_vector<8>(rng, static_cast<std::size_t>(k));
            const auto w = random_rational_vector<8>(rng, static_cast<std::size_t>(k));
            const fkm::TwistIndex t(k, p);
            EXPECT_EQ(fkm::twisted_inner(z, w, t).re(), fkm::real_inner(z, w));
            EXPECT_EQ(fkm::orthogonality_split(z, w, t).re_part, fkm::real_inner(z, w));
        }
    }
}

TEST(Twisted, OrthogonalitySplitMatchesImaginaryPart) {
    fkm::Rng rng(4);
    for (int k = 2; k <= 5; ++k) {
        for (int p = 0; p < k; ++p) {
            const auto z = random_rational_vector<4>(rng, static_cast<std::size_t>(k));
            const auto w = random_rational_vector<4>(rng, static_cast<std::size_t>(k));
            const fkm::TwistIndex t(k, p);
            EXPECT_EQ(fkm::orthogonality_split(z, w, t).imag_defect, fkm::twisted_inner(z, w, t).im().norm2());
        }
    }
}

TEST(Twisted, StarInnerIdentityIsExact) {
    for (int k = 2; k <= 5; ++k) {
        star_inner_exact<1>(k);
        star_inner_exact<2>(k);
        star_inner_exact<4>(k);
        star_inner_exact<8>(k);
    }
}

TEST(Twisted, RealPartIdentityIsExact) {
    for (int k = 2; k <= 5; ++k) {
        real_part_exact<2>(k);
        real_part_exact<4>(k);
        real_part_exact<8>(k);
    }
}

TEST(Twisted, StarUsesConjugateAfterIndexP) {
    using O = fkm::Octonion<Q>;
    const O e = O::basis(3);
    fkm::CayleyVector<Q, 8> w{O::one(), O::one(), O::one()};
    const auto s = fkm::star_p(e, w, fkm::TwistIndex(4, 1));
    EXPECT_EQ(s[0], e);
    EXPECT_EQ(s[1], -e);
    EXPECT_EQ(s[2], -e);
}

TEST(Twisted, IndexValidation) {
    EXPECT_THROW(fkm::TwistIndex(0, 0), std::invalid_argument);
    EXPECT_THROW(fkm::TwistIndex(3, 3), std::invalid_argument);
    EXPECT_THROW(fkm::TwistIndex(3, -1), std::invalid_argument);
    EXPECT_TRUE(fkm::TwistIndex(3, 2).definite());
    EXPECT_FALSE(fkm::TwistIndex(3, 1).definite());
    fkm::CayleyVector<double, 4> a(3), b(2);
    EXPECT_THROW(fkm::twisted_inner(a, b, fkm::TwistIndex(3, 1)), std::invalid_argument);
}
