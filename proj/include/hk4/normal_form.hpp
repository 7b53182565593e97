#pragma once

// Hermite and Smith normal forms over Z, and the finitely generated abelian
// groups they describe.

#include "hk4/matrix.hpp"

#include <algorithm>
#include <cstddef>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace hk4 {

/// Z^free_rank (+) Z/d1 (+) ... (+) Z/dk with d1 | d2 | ... | dk and each di >= 2.
struct FiniteAbelianGroup {
    std::vector<Int> invariant_factors;
    std::size_t free_rank = 0;
    /// Optional lifts of generators to an ambient rational space.
    std::vector<std::vector<Rat>> generator_lifts;

    static FiniteAbelianGroup from_factors(std::vector<Int> factors) {
        for (std::size_t i = 0; i < factors.size(); ++i) {
            if (factors[i] < 2)
                throw std::invalid_argument("invariant factor < 2");
            if (i > 0 && factors[i] % factors[i - 1] != 0)
                throw std::invalid_argument("invariant factors do not form a divisibility chain");
        }
        FiniteAbelianGroup g;
        g.invariant_factors = std::move(factors);
        return g;
    }

    bool is_finite() const { return free_rank == 0; }
    bool is_trivial() const { return free_rank == 0 && invariant_factors.empty(); }
    bool is_cyclic() const { return free_rank == 0 && invariant_factors.size() <= 1; }

    Int order() const {
        if (free_rank != 0)
            throw std::domain_error("group is infinite");
        Int n = 1;
        for (const auto& d : invariant_factors)
            n *= d;
        return n;
    }

    /// Largest element order (the exponent).
    Int exponent() const {
        if (free_rank != 0)
            throw std::domain_error("group is infinite");
        return invariant_factors.empty() ? Int(1) : invariant_factors.back();
    }

    std::string to_string() const {
        if (is_trivial())
            return "0";
        std::ostringstream os;
        bool first = true;
        auto sep = [&] {
            if (!first)
                os << " + ";
            first = false;
        };
        if (free_rank > 0) {
            sep();
            os << "Z^" << free_rank;
        }
        // Repeated factors as powers: (Z/2)^22 + Z/10.
        for (std::size_t i = 0; i < invariant_factors.size();) {
            std::size_t j = i;
            while (j < invariant_factors.size() && invariant_factors[j] == invariant_factors[i])
                ++j;
            sep();
            if (j - i == 1)
                os << "Z/" << invariant_factors[i].get_str();
            else
                os << "(Z/" << invariant_factors[i].get_str() << ")^" << (j - i);
            i = j;
        }
        return os.str();
    }

    friend bool operator==(const FiniteAbelianGroup& a, const FiniteAbelianGroup& b) {
        return a.free_rank == b.free_rank && a.invariant_factors == b.invariant_factors;
    }
};

namespace detail {

/// row_i -= q * row_r over columns [from, cols).
inline void sub_row_multiple(ZMat& m, std::size_t i, std::size_t r, const Int& q,
                             std::size_t from) {
    auto ri = m.row(i);
    auto rr = m.row(r);
    for (std::size_t j = from; j < m.cols(); ++j)
        if (rr[j] != 0)
            ri[j] -= q * rr[j];
}

/// Turns a list of diagonal entries (0 = free summand) into canonical
/// invariant factors.
inline FiniteAbelianGroup group_from_diagonal(std::vector<Int> diag, std::size_t extra_free) {
    FiniteAbelianGroup g;
    g.free_rank = extra_free;
    std::vector<Int> torsion;
    for (auto& d : diag) {
        if (d == 0)
            ++g.free_rank;
        else
            torsion.push_back(abs(d));
    }
    for (std::size_t i = 0; i < torsion.size(); ++i)
        for (std::size_t j = i + 1; j < torsion.size(); ++j) {
            Int gg = gcd(torsion[i], torsion[j]);
            Int ll = lcm(torsion[i], torsion[j]);
            torsion[i] = gg;
            torsion[j] = ll;
        }
    for (auto& d : torsion)
        if (d > 1)
            g.invariant_factors.push_back(d);
    return g;
}

}  // namespace detail

/// Row-style Hermite normal form: upper echelon, positive pivots, entries
/// above each pivot reduced into [0, pivot). Zero rows are removed, so the
/// result is a basis of the row span.
inline ZMat hnf(ZMat m) {
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        bool have_pivot = false;
        while (true) {
            std::size_t p = m.rows();
            for (std::size_t i = r; i < m.rows(); ++i)
                if (m(i, c) != 0 && (p == m.rows() || abs(m(i, c)) < abs(m(p, c))))
                    p = i;
            if (p == m.rows())
                break;
            have_pivot = true;
            m.swap_rows(r, p);
            bool clean = true;
            for (std::size_t i = r + 1; i < m.rows(); ++i) {
                if (m(i, c) == 0)
                    continue;
                Int q;
                mpz_tdiv_q(q.get_mpz_t(), m(i, c).get_mpz_t(), m(r, c).get_mpz_t());
                detail::sub_row_multiple(m, i, r, q, c);
                if (m(i, c) != 0)
                    clean = false;
            }
            if (clean)
                break;
        }
        if (!have_pivot)
            continue;
        if (m(r, c) < 0)
            for (std::size_t j = c; j < m.cols(); ++j)
                m(r, j) = -m(r, j);
        for (std::size_t i = 0; i < r; ++i)
            if (m(i, c) != 0) {
                Int q = floor_div(m(i, c), m(r, c));
                if (q != 0)
                    detail::sub_row_multiple(m, i, r, q, c);
            }
        ++r;
    }
    return m.row_block(0, r);
}

inline Mat hnf(const Mat& m) { return to_rational(hnf(to_integer(m))); }

namespace detail {

/// Diagonalises m in place by unimodular row and column operations. When
/// `modulus` is nonzero, entries are kept reduced modulo it; this is valid
/// whenever the row span of m contains modulus * Z^cols.
inline std::vector<Int> smith_diagonal(ZMat& m, const Int& modulus) {
    const std::size_t rows = m.rows(), cols = m.cols();
    auto reduce = [&](Int& x) {
        if (modulus != 0) {
            x = mod_floor(x, modulus);
            if (2 * x > modulus)
                x -= modulus;
        }
    };
    if (modulus != 0)
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j)
                reduce(m(i, j));

    std::vector<Int> diag;
    const std::size_t n = std::min(rows, cols);
    for (std::size_t t = 0; t < n; ++t) {
        // Smallest nonzero entry of the trailing block becomes the pivot.
        std::size_t pi = rows, pj = cols;
        for (std::size_t i = t; i < rows; ++i)
            for (std::size_t j = t; j < cols; ++j)
                if (m(i, j) != 0 && (pi == rows || abs(m(i, j)) < abs(m(pi, pj)))) {
                    pi = i;
                    pj = j;
                }
        if (pi == rows) {
            for (; t < n; ++t)
                diag.push_back(modulus);
            break;
        }
        m.swap_rows(t, pi);
        if (pj != t)
            for (std::size_t i = 0; i < rows; ++i)
                std::swap(m(i, t), m(i, pj));

        while (true) {
            bool dirty = false;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (m(i, t) == 0)
                    continue;
                Int q;
                mpz_tdiv_q(q.get_mpz_t(), m(i, t).get_mpz_t(), m(t, t).get_mpz_t());
                auto ri = m.row(i);
                auto rt = m.row(t);
                for (std::size_t j = t; j < cols; ++j)
                    if (rt[j] != 0) {
                        ri[j] -= q * rt[j];
                        reduce(ri[j]);
                    }
                if (m(i, t) != 0)
                    dirty = true;
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (m(t, j) == 0)
                    continue;
                Int q;
                mpz_tdiv_q(q.get_mpz_t(), m(t, j).get_mpz_t(), m(t, t).get_mpz_t());
                for (std::size_t i = t; i < rows; ++i)
                    if (m(i, t) != 0) {
                        m(i, j) -= q * m(i, t);
                        reduce(m(i, j));
                    }
                if (m(t, j) != 0)
                    dirty = true;
            }
            if (!dirty)
                break;
            // Move the smallest nonzero entry of row t / column t to the pivot.
            std::size_t bi = t, bj = t;
            for (std::size_t i = t + 1; i < rows; ++i)
                if (m(i, t) != 0 && (m(bi, bj) == 0 || abs(m(i, t)) < abs(m(bi, bj)))) {
                    bi = i;
                    bj = t;
                }
            for (std::size_t j = t + 1; j < cols; ++j)
                if (m(t, j) != 0 && (m(bi, bj) == 0 || abs(m(t, j)) < abs(m(bi, bj)))) {
                    bi = t;
                    bj = j;
                }
            if (bi != t)
                m.swap_rows(t, bi);
            if (bj != t)
                for (std::size_t i = 0; i < rows; ++i)
                    std::swap(m(i, t), m(i, bj));
            if (m(t, t) == 0) {
                // Everything in row and column t vanished modulo the modulus.
                break;
            }
        }
        diag.push_back(m(t, t) == 0 ? modulus : m(t, t));
    }
    if (modulus != 0)
        for (auto& d : diag)
            d = gcd(d, modulus);
    return diag;
}

}  // namespace detail

/// Structure of coker(m) = Z^cols / (row span of m). For a nonsingular
/// square input the elimination runs modulo |det m|.
inline FiniteAbelianGroup snf(const ZMat& m) {
    ZMat work = m;
    Int modulus = 0;
    if (m.rows() == m.cols() && m.rows() > 0) {
        Int d = bareiss_det(m);
        if (d != 0)
            modulus = abs(d);
    }
    std::size_t extra_free = m.cols() > m.rows() ? m.cols() - m.rows() : 0;
    auto diag = detail::smith_diagonal(work, modulus);
    return detail::group_from_diagonal(std::move(diag), extra_free);
}

inline FiniteAbelianGroup snf(const Mat& m) { return snf(to_integer(m)); }

/// Basis (k x k, in HNF) of the lattice {z in Z^k : z * r is integral} for a
/// rational k x m matrix r.
inline ZMat integral_combinations(const Mat& r) {
    const std::size_t k = r.rows();
    ZMat basis = ZMat::identity(k);
    for (std::size_t c = 0; c < r.cols(); ++c) {
        std::vector<Rat> t(k);
        bool any_fraction = false;
        for (std::size_t i = 0; i < k; ++i) {
            Rat s = 0;
            for (std::size_t l = 0; l < k; ++l)
                if (basis(i, l) != 0 && sgn(r(l, c)) != 0)
                    s += basis(i, l) * r(l, c);
            t[i] = s;
            any_fraction = any_fraction || !is_integer(s);
        }
        if (!any_fraction)
            continue;
        const Int den = common_denominator(t);
        // Rows (s_i | b_i) and (den | 0): the HNF's rows after the first have
        // a zero leading entry and span the kernel of z -> sum z_i s_i mod den.
        ZMat aug(k + 1, k + 1);
        for (std::size_t i = 0; i < k; ++i) {
            aug(i, 0) = mod_floor(Int(t[i] * den), den);
            for (std::size_t l = 0; l < k; ++l)
                aug(i, l + 1) = basis(i, l);
        }
        aug(k, 0) = den;
        ZMat h = hnf(std::move(aug));
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t l = 0; l < k; ++l)
                basis(i, l) = h(i + 1, l + 1);
    }
    return basis;
}

}  // namespace hk4
