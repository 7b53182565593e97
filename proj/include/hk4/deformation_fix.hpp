#pragma once

// The fixed-space linear system: symmetric C and scalar c0 with
// (c0 I - 2 C A) mu = 0 for every mu in ker(s^T A). The expected answer is
// the span of (A^-1, 2) and (s s^T, 0).

#include "hk4/matrix.hpp"
#include "hk4/random.hpp"

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace hk4 {

struct FixInstance {
    Mat a;               // n x n symmetric invertible
    std::vector<Rat> s;  // nonzero

    std::size_t n() const { return a.rows(); }

    void validate() const {
        if (a.rows() != a.cols() || !(a == a.transpose()))
            throw std::invalid_argument("A must be square and symmetric");
        if (s.size() != a.rows())
            throw std::invalid_argument("s has the wrong length");
        bool zero = true;
        for (const auto& x : s)
            zero = zero && sgn(x) == 0;
        if (zero)
            throw std::invalid_argument("s must be nonzero");
        if (det(a) == 0)
            throw std::invalid_argument("A must be invertible");
    }
};

struct FixElement {
    Mat c;   // symmetric n x n
    Rat c0;
    friend bool operator==(const FixElement&, const FixElement&) = default;
};

struct FixSolution {
    std::vector<FixElement> basis;
    std::size_t dimension() const { return basis.size(); }
};

/// Basis of {mu : s^T A mu = 0}.
inline Mat kernel_mu(const FixInstance& inst) {
    inst.validate();
    Mat row(1, inst.n());
    auto sa = vec_mat(inst.s, inst.a);
    for (std::size_t j = 0; j < inst.n(); ++j)
        row(0, j) = sa[j];
    return nullspace(row);
}

namespace detail {

/// Unknown index of C_ij (i <= j) in the packed upper triangle; c0 is last.
inline std::size_t packed(std::size_t n, std::size_t i, std::size_t j) {
    if (i > j)
        std::swap(i, j);
    return i * n - i * (i - 1) / 2 + (j - i);
}

inline std::vector<Rat> pack(const FixElement& e) {
    const std::size_t n = e.c.rows();
    std::vector<Rat> v(n * (n + 1) / 2 + 1);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j)
            v[packed(n, i, j)] = e.c(i, j);
    v.back() = e.c0;
    return v;
}

inline FixElement unpack(const std::vector<Rat>& v, std::size_t n) {
    FixElement e{Mat(n, n), v.back()};
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            e.c(i, j) = v[packed(n, i, j)];
            e.c(j, i) = v[packed(n, i, j)];
        }
    return e;
}

inline Mat span_matrix(const std::vector<FixElement>& xs, std::size_t n) {
    Mat m(xs.size(), n * (n + 1) / 2 + 1);
    for (std::size_t k = 0; k < xs.size(); ++k) {
        auto v = pack(xs[k]);
        for (std::size_t j = 0; j < v.size(); ++j)
            m(k, j) = v[j];
    }
    return m;
}

}  // namespace detail

/// One rational linear system in n(n+1)/2 + 1 unknowns: for each kernel
/// vector mu and each row r, c0 mu_r - 2 sum_j C_rj (A mu)_j = 0.
inline Mat fix_system(const FixInstance& inst) {
    const std::size_t n = inst.n();
    Mat mus = kernel_mu(inst);
    const std::size_t unknowns = n * (n + 1) / 2 + 1;
    Mat sys(mus.rows() * n, unknowns);
    std::size_t eq = 0;
    for (std::size_t k = 0; k < mus.rows(); ++k) {
        auto mu = mus.row_vector(k);
        std::vector<Rat> amu(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (sgn(inst.a(i, j)) != 0 && sgn(mu[j]) != 0)
                    amu[i] += inst.a(i, j) * mu[j];
        for (std::size_t r = 0; r < n; ++r, ++eq) {
            sys(eq, unknowns - 1) = mu[r];
            for (std::size_t j = 0; j < n; ++j)
                if (sgn(amu[j]) != 0)
                    sys(eq, detail::packed(n, r, j)) -= 2 * amu[j];
        }
    }
    return sys;
}

/// Clears denominators row by row so the solve runs over the integers.
inline FixSolution solve_fix(const FixInstance& inst) {
    Mat sys = fix_system(inst);
    ZMat z(sys.rows(), sys.cols());
    for (std::size_t i = 0; i < sys.rows(); ++i) {
        Int d = common_denominator(sys.row(i));
        for (std::size_t j = 0; j < sys.cols(); ++j)
            z(i, j) = Int(sys(i, j) * d);
    }
    detail::integer_echelon(z);
    Mat ker = nullspace(to_rational(z));
    FixSolution sol;
    for (std::size_t k = 0; k < ker.rows(); ++k)
        sol.basis.push_back(detail::unpack(ker.row_vector(k), inst.n()));
    return sol;
}

/// (A^-1, 2) and (s s^T, 0).
inline std::vector<FixElement> expected_generators(const FixInstance& inst) {
    const std::size_t n = inst.n();
    FixElement first{inverse(inst.a), Rat(2)};
    FixElement second{Mat(n, n), Rat(0)};
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            second.c(i, j) = inst.s[i] * inst.s[j];
    return {first, second};
}

/// Equal rational spans (compared through reduced row echelon forms).
inline bool same_span(const std::vector<FixElement>& a, const std::vector<FixElement>& b,
                      std::size_t n) {
    return rref(detail::span_matrix(a, n)) == rref(detail::span_matrix(b, n));
}

inline bool verify_generators(const FixSolution& sol, const FixInstance& inst) {
    return same_span(sol.basis, expected_generators(inst), inst.n());
}

/// Residual check of one element against the full system.
inline bool satisfies_system(const FixElement& e, const FixInstance& inst) {
    Mat sys = fix_system(inst);
    auto v = detail::pack(e);
    for (std::size_t i = 0; i < sys.rows(); ++i)
        if (sgn(dot(sys.row_vector(i), v)) != 0)
            return false;
    return true;
}

/// A = M + M^T + 2n I with M uniform in [-3, 3]; s uniform in [-3, 3].
inline FixInstance random_fix_instance(Rng& rng, std::size_t n) {
    while (true) {
        FixInstance inst{Mat(n, n), std::vector<Rat>(n)};
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                long m = rng.uniform(-3, 3);
                inst.a(i, j) += m;
                inst.a(j, i) += m;
            }
        for (std::size_t i = 0; i < n; ++i)
            inst.a(i, i) += Rat(2 * static_cast<long>(n));
        bool zero = true;
        for (auto& x : inst.s) {
            x = rng.uniform(-3, 3);
            zero = zero && sgn(x) == 0;
        }
        if (zero || det(inst.a) == 0)
            continue;
        return inst;
    }
}

}  // namespace hk4
