#ifndef FKM_INT_MATRIX_HPP
#define FKM_INT_MATRIX_HPP

// Exact integer linear algebra for certifying Clifford relations: dense
// square matrices over int64 and signed permutation matrices.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace fkm {

class IntMatrix {
public:
    IntMatrix() = default;
    explicit IntMatrix(std::size_t n) : n_(n), a_(n * n, 0) {}

    static IntMatrix identity(std::size_t n) {
        IntMatrix m(n);
        for (std::size_t i = 0; i < n; ++i) {
            m(i, i) = 1;
        }
        return m;
    }

    std::size_t size() const { return n_; }

    std::int64_t& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
    std::int64_t operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

    IntMatrix transpose() const {
        IntMatrix t(n_);
        for (std::size_t i = 0; i < n_; ++i) {
            for (std::size_t j = 0; j < n_; ++j) {
                t(j, i) = (*this)(i, j);
            }
        }
        return t;
    }

    std::int64_t trace() const {
        std::int64_t s = 0;
        for (std::size_t i = 0; i < n_; ++i) {
            s += (*this)(i, i);
        }
        return s;
    }

    /// Largest absolute entry; zero exactly when the matrix is zero.
    std::int64_t max_abs() const {
        std::int64_t m = 0;
        for (std::int64_t x : a_) {
            m = std::max(m, x < 0 ? -x : x);
        }
        return m;
    }

    friend IntMatrix operator+(const IntMatrix& a, const IntMatrix& b) {
        check_same(a, b);
        IntMatrix c(a.n_);
        for (std::size_t i = 0; i < a.a_.size(); ++i) {
            c.a_[i] = a.a_[i] + b.a_[i];
        }
        return c;
    }

    friend IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) {
        check_same(a, b);
        IntMatrix c(a.n_);
        for (std::size_t i = 0; i < a.a_.size(); ++i) {
            c.a_[i] = a.a_[i] - b.a_[i];
        }
        return c;
    }

    IntMatrix operator-() const {
        IntMatrix c(n_);
        for (std::size_t i = 0; i < a_.size(); ++i) {
            c.a_[i] = -a_[i];
        }
        return c;
    }

    // Skips zero entries of the left factor; the operators certified here
    // have one nonzero per row, which makes this close to O(n^2).
    friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
        check_same(a, b);
        const std::size_t n = a.n_;
        IntMatrix c(n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t r = 0; r < n; ++r) {
                const std::int64_t x = a(i, r);
                if (x == 0) {
                    continue;
                }
                const std::int64_t* brow = &b.a_[r * n];
                std::int64_t* crow = &c.a_[i * n];
                for (std::size_t j = 0; j < n; ++j) {
                    crow[j] += x * brow[j];
                }
            }
        }
        return c;
    }

    friend bool operator==(const IntMatrix& a, const IntMatrix& b) = default;

private:
    static void check_same(const IntMatrix& a, const IntMatrix& b) {
        if (a.n_ != b.n_) {
            throw std::invalid_argument("IntMatrix: size mismatch " + std::to_string(a.n_) + " vs " +
                                        std::to_string(b.n_));
        }
    }

    std::size_t n_ = 0;
    std::vector<std::int64_t> a_;
};

/// Linear map (Ax)_i = sign[i] * x[source[i]].
class SignedPermutation {
public:
    SignedPermutation() = default;

    SignedPermutation(std::vector<std::size_t> source, std::vector<int> sign)
        : source_(std::move(source)), sign_(std::move(sign)) {
        if (source_.size() != sign_.size()) {
            throw std::invalid_argument("SignedPermutation: source/sign length mismatch");
        }
        std::vector<bool> seen(source_.size(), false);
        for (std::size_t i = 0; i < source_.size(); ++i) {
            if (source_[i] >= source_.size() || seen[source_[i]]) {
                throw std::invalid_argument("SignedPermutation: source is not a permutation");
            }
            if (sign_[i] != 1 && sign_[i] != -1) {
                throw std::invalid_argument("SignedPermutation: signs must be +1 or -1");
            }
            seen[source_[i]] = true;
        }
    }

    static SignedPermutation identity(std::size_t n) {
        std::vector<std::size_t> src(n);
        for (std::size_t i = 0; i < n; ++i) {
            src[i] = i;
        }
        return {std::move(src), std::vector<int>(n, 1)};
    }

    std::size_t size() const { return source_.size(); }
    const std::vector<std::size_t>& source() const { return source_; }
    const std::vector<int>& sign() const { return sign_; }

    template <typename T>
    void apply(std::span<const T> x, std::span<T> out) const {
        if (x.size() != size() || out.size() != size()) {
            throw std::invalid_argument("SignedPermutation::apply: length mismatch");
        }
        for (std::size_t i = 0; i < size(); ++i) {
            out[i] = sign_[i] > 0 ? x[source_[i]] : -x[source_[i]];
        }
    }

    template <typename T>
    std::vector<T> apply(std::span<const T> x) const {
        std::vector<T> out(size());
        apply(x, std::span<T>(out));
        return out;
    }

    /// (A * B)x = A(Bx).
    friend SignedPermutation operator*(const SignedPermutation& a, const SignedPermutation& b) {
        if (a.size() != b.size()) {
            throw std::invalid_argument("SignedPermutation: size mismatch");
        }
        std::vector<std::size_t> src(a.size());
        std::vector<int> sg(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) {
            src[i] = b.source_[a.source_[i]];
            sg[i] = a.sign_[i] * b.sign_[a.source_[i]];
        }
        return {std::move(src), std::move(sg)};
    }

    SignedPermutation operator-() const {
        std::vector<int> sg(sign_);
        for (int& s : sg) {
            s = -s;
        }
        return {source_, std::move(sg)};
    }

    std::int64_t trace() const {
        std::int64_t t = 0;
        for (std::size_t i = 0; i < size(); ++i) {
            if (source_[i] == i) {
                t += sign_[i];
            }
        }
        return t;
    }

    IntMatrix to_matrix() const {
        IntMatrix m(size());
        for (std::size_t i = 0; i < size(); ++i) {
            m(i, source_[i]) = sign_[i];
        }
        return m;
    }

    friend bool operator==(const SignedPermutation& a, const SignedPermutation& b) = default;

private:
    std::vector<std::size_t> source_;
    std::vector<int> sign_;
};

}  // namespace fkm

#endif
