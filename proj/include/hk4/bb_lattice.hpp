#pragma once

// The rank-23 lattice U^3 + E8(-1)^2 + <-2> and the class-level predicates
// used throughout: primitivity, parity, exceptional classes.
//
// Basis order (frozen):
//   0..5    e1 f1 e2 f2 e3 f3      three hyperbolic planes, b(ek, fk) = 1
//   6..13   first E8(-1), Bourbaki node order 1..8
//   14..21  second E8(-1)
//   22      delta0, b(delta0, delta0) = -2

#include "hk4/lattice.hpp"
#include "hk4/random.hpp"

#include <array>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace hk4 {

inline constexpr std::size_t kBBRank = 23;
inline constexpr std::size_t kK3Rank = 22;
inline constexpr std::size_t kDelta0 = 22;

inline constexpr std::size_t e_index(std::size_t k) { return 2 * (k - 1); }
inline constexpr std::size_t f_index(std::size_t k) { return 2 * (k - 1) + 1; }

class H2Class {
public:
    H2Class() : c_(kBBRank) {}
    explicit H2Class(std::vector<Int> coords) : c_(std::move(coords)) {
        if (c_.size() != kBBRank)
            throw std::invalid_argument("H2 class needs 23 coordinates");
    }
    static H2Class from_longs(const std::vector<long>& xs) {
        std::vector<Int> c;
        for (long x : xs)
            c.emplace_back(x);
        return H2Class(std::move(c));
    }
    static H2Class unit(std::size_t i) {
        H2Class a;
        a.c_.at(i) = 1;
        return a;
    }

    const Int& operator[](std::size_t i) const { return c_[i]; }
    Int& operator[](std::size_t i) { return c_[i]; }
    const std::vector<Int>& coords() const { return c_; }

    bool is_zero() const {
        for (const auto& x : c_)
            if (x != 0)
                return false;
        return true;
    }

    std::vector<Rat> to_rational() const { return {c_.begin(), c_.end()}; }

    H2Class& operator+=(const H2Class& o) {
        for (std::size_t i = 0; i < kBBRank; ++i)
            c_[i] += o.c_[i];
        return *this;
    }
    H2Class& operator-=(const H2Class& o) {
        for (std::size_t i = 0; i < kBBRank; ++i)
            c_[i] -= o.c_[i];
        return *this;
    }
    friend H2Class operator+(H2Class a, const H2Class& b) { return a += b; }
    friend H2Class operator-(H2Class a, const H2Class& b) { return a -= b; }
    friend H2Class operator-(H2Class a) {
        for (auto& x : a.c_)
            x = -x;
        return a;
    }
    friend H2Class operator*(const Int& s, H2Class a) {
        for (auto& x : a.c_)
            x *= s;
        return a;
    }
    friend H2Class operator*(long s, const H2Class& a) { return Int(s) * a; }
    friend bool operator==(const H2Class& a, const H2Class& b) { return a.c_ == b.c_; }

private:
    std::vector<Int> c_;
};

inline H2Class e_class(std::size_t k) { return H2Class::unit(e_index(k)); }
inline H2Class f_class(std::size_t k) { return H2Class::unit(f_index(k)); }
inline H2Class delta0() { return H2Class::unit(kDelta0); }

/// Negated Bourbaki Cartan matrix of E8 (diagonal -2).
inline ZMat e8_negative_gram() {
    static const std::array<std::pair<int, int>, 7> edges{
        {{1, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {7, 8}, {2, 4}}};
    ZMat g(8, 8);
    for (std::size_t i = 0; i < 8; ++i)
        g(i, i) = -2;
    for (auto [a, b] : edges) {
        g(a - 1, b - 1) = 1;
        g(b - 1, a - 1) = 1;
    }
    return g;
}

inline const ZMat& bb_gram() {
    static const ZMat g = [] {
        ZMat m(kBBRank, kBBRank);
        for (std::size_t k = 1; k <= 3; ++k) {
            m(e_index(k), f_index(k)) = 1;
            m(f_index(k), e_index(k)) = 1;
        }
        ZMat e8 = e8_negative_gram();
        for (std::size_t off : {std::size_t{6}, std::size_t{14}})
            for (std::size_t i = 0; i < 8; ++i)
                for (std::size_t j = 0; j < 8; ++j)
                    m(off + i, off + j) = e8(i, j);
        m(kDelta0, kDelta0) = -2;
        return m;
    }();
    return g;
}

inline const FormPtr& bb_form_ptr() {
    static const FormPtr f = make_form(to_rational(bb_gram()));
    return f;
}

/// Lambda itself as a Lattice (Z^23 with the BB form).
inline Lattice bb_lattice() { return Lattice::standard(bb_form_ptr()); }

/// Gram of the first 22 basis vectors (delta0-perp), even unimodular.
inline ZMat k3_gram() {
    const ZMat& g = bb_gram();
    ZMat a(kK3Rank, kK3Rank);
    for (std::size_t i = 0; i < kK3Rank; ++i)
        for (std::size_t j = 0; j < kK3Rank; ++j)
            a(i, j) = g(i, j);
    return a;
}

/// Coordinates of x -> b(x, -), i.e. gram * a.
inline std::vector<Int> bb_covector(const H2Class& a) {
    const ZMat& g = bb_gram();
    std::vector<Int> w(kBBRank);
    for (std::size_t i = 0; i < kBBRank; ++i)
        for (std::size_t j = 0; j < kBBRank; ++j)
            if (g(i, j) != 0 && a[j] != 0)
                w[i] += g(i, j) * a[j];
    return w;
}

inline Int bb_form(const H2Class& a, const H2Class& b) {
    auto w = bb_covector(a);
    Int s = 0;
    for (std::size_t i = 0; i < kBBRank; ++i)
        if (b[i] != 0)
            s += w[i] * b[i];
    return s;
}

inline Int bb_square(const H2Class& a) { return bb_form(a, a); }

inline Int content(const H2Class& a) {
    Int g = 0;
    for (std::size_t i = 0; i < kBBRank; ++i)
        g = gcd(g, a[i]);
    return g;
}

inline bool is_primitive(const H2Class& a) {
    if (a.is_zero())
        throw std::invalid_argument("primitivity of the zero class");
    return content(a) == 1;
}

/// Parity is defined for primitive classes only.
inline bool is_even(const H2Class& a) {
    if (!is_primitive(a))
        throw std::invalid_argument("parity of a non-primitive class");
    for (const auto& x : bb_covector(a))
        if (mpz_odd_p(x.get_mpz_t()))
            return false;
    return true;
}

inline bool is_odd(const H2Class& a) { return !is_even(a); }

inline bool is_exceptional(const H2Class& a) {
    if (a.is_zero() || !is_primitive(a))
        return false;
    return bb_square(a) == -2 && is_even(a);
}

class ExceptionalClass {
public:
    explicit ExceptionalClass(H2Class c) : c_(std::move(c)) {
        if (!is_exceptional(c_))
            throw std::invalid_argument("class is not exceptional");
    }
    static ExceptionalClass standard() { return ExceptionalClass(delta0()); }
    const H2Class& cls() const { return c_; }
    friend bool operator==(const ExceptionalClass& a, const ExceptionalClass& b) {
        return a.c_ == b.c_;
    }

private:
    H2Class c_;
};

/// 2 a_hat + c delta0 for a_hat in delta0-perp, c odd, 2 b(a_hat, a_hat) = c^2 - 1.
inline ExceptionalClass make_exceptional(const H2Class& a_hat, const Int& c) {
    if (a_hat[kDelta0] != 0)
        throw std::invalid_argument("a_hat must be orthogonal to delta0");
    if (mpz_even_p(c.get_mpz_t()))
        throw std::invalid_argument("c must be odd");
    if (2 * bb_square(a_hat) != c * c - 1)
        throw std::invalid_argument("norm condition 2 b(a,a) = c^2 - 1 fails");
    return ExceptionalClass(2 * a_hat + c * delta0());
}

/// Primitive with positive square, otherwise throws.
inline void require_polarization(const H2Class& l0) {
    if (!is_primitive(l0))
        throw std::invalid_argument("polarization must be primitive");
    if (bb_square(l0) <= 0)
        throw std::invalid_argument("polarization must have positive square");
}

inline bool assumption_holds(const H2Class& l0) {
    require_polarization(l0);
    if (is_odd(l0))
        return true;
    Int t = 10 + bb_square(l0);
    if (t % 8 != 0)
        return false;
    t /= 8;
    return mpz_even_p(t.get_mpz_t());
}

/// Saturated orthogonal complement of the given classes in Lambda.
inline Lattice orthogonal_complement(const std::vector<H2Class>& classes) {
    if (classes.empty())
        return bb_lattice();
    Mat rows(classes.size(), kBBRank);
    for (std::size_t i = 0; i < classes.size(); ++i) {
        auto w = bb_covector(classes[i]);
        for (std::size_t j = 0; j < kBBRank; ++j)
            rows(i, j) = w[j];
    }
    Mat ker = nullspace(rows);
    if (ker.rows() == 0)
        return Lattice(Mat(0, kBBRank), bb_form_ptr());
    return saturation(ker, bb_form_ptr());
}

inline std::vector<H2Class> basis_classes(const Lattice& lat) {
    std::vector<H2Class> out;
    for (std::size_t i = 0; i < lat.rank(); ++i) {
        auto v = lat.basis_vector(i);
        std::vector<Int> c(v.size());
        for (std::size_t j = 0; j < v.size(); ++j) {
            if (!is_integer(v[j]))
                throw std::domain_error("basis vector is not integral");
            c[j] = v[j].get_num();
        }
        out.emplace_back(std::move(c));
    }
    return out;
}

inline ZMat gram_of(const std::vector<H2Class>& xs) {
    ZMat g(xs.size(), xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        auto w = bb_covector(xs[i]);
        for (std::size_t j = 0; j < xs.size(); ++j) {
            Int s = 0;
            for (std::size_t k = 0; k < kBBRank; ++k)
                if (xs[j][k] != 0)
                    s += w[k] * xs[j][k];
            g(i, j) = s;
        }
    }
    return g;
}

/// HNF basis of d-perp; its Gram must be unimodular.
inline std::vector<H2Class> orth_complement_basis(const ExceptionalClass& d) {
    auto basis = basis_classes(orthogonal_complement({d.cls()}));
    if (basis.size() != kK3Rank || abs(bareiss_det(gram_of(basis))) != 1)
        throw std::domain_error("complement of an exceptional class is not unimodular");
    return basis;
}

inline std::vector<H2Class> orth_complement_basis(const H2Class& d) {
    return orth_complement_basis(ExceptionalClass(d));
}

/// Writes lambda = a + k d with a in d-perp (Lambda = Z d + d-perp).
inline std::pair<H2Class, Int> split_along(const H2Class& lambda, const ExceptionalClass& d) {
    Int pairing = bb_form(lambda, d.cls());
    // b(lambda, d) = -2k
    if (mpz_odd_p(pairing.get_mpz_t()))
        throw std::logic_error("exceptional class pairs oddly");
    Int k = -pairing / 2;
    return {lambda - k * d.cls(), k};
}

/// (a_hat, c) with lambda = 2 a_hat + (2c + 1) d and a_hat in d-perp, when
/// such a decomposition exists.
inline std::optional<std::pair<H2Class, Int>> even_decomposition(const H2Class& lambda,
                                                                 const ExceptionalClass& d) {
    auto [a, k] = split_along(lambda, d);
    if (mpz_even_p(k.get_mpz_t()))
        return std::nullopt;
    for (std::size_t i = 0; i < kBBRank; ++i)
        if (mpz_odd_p(a[i].get_mpz_t()))
            return std::nullopt;
    H2Class half;
    for (std::size_t i = 0; i < kBBRank; ++i)
        half[i] = a[i] / 2;
    return std::make_pair(half, Int((k - 1) / 2));
}

// ---------------------------------------------------------------------------
// Isometries and samplers.

/// x - (2 b(x,r) / b(r,r)) r for a root r of square +-2.
inline H2Class reflect(const H2Class& x, const H2Class& r) {
    Int rr = bb_square(r);
    if (rr != 2 && rr != -2)
        throw std::invalid_argument("reflection needs a root of square +-2");
    Int coeff = 2 * bb_form(x, r) / rr;
    return x - coeff * r;
}

namespace detail {

/// Random class supported on e2..f3 and both E8 copies.
inline H2Class random_filler(Rng& rng, long bound) {
    H2Class w;
    for (std::size_t i = e_index(2); i < kDelta0; ++i)
        w[i] = rng.uniform(-bound, bound);
    return w;
}

/// w + e1 + k f1 with the square forced to `target` (even).
inline H2Class with_square(const H2Class& w, const Int& target) {
    Int k = (target - bb_square(w)) / 2;
    return w + e_class(1) + k * f_class(1);
}

}  // namespace detail

/// A random root of square +-2 in delta0-perp.
inline H2Class random_root(Rng& rng, long bound = 1) {
    Int target = rng.coin() ? 2 : -2;
    return detail::with_square(detail::random_filler(rng, bound), target);
}

/// Image of the 23 basis vectors (as matrix rows) under a product of
/// `steps` random reflections. With fix_delta0 the roots are taken in
/// delta0-perp, so delta0 is fixed.
inline ZMat random_isometry(Rng& rng, int steps, bool fix_delta0 = true) {
    std::vector<H2Class> images;
    for (std::size_t i = 0; i < kBBRank; ++i)
        images.push_back(H2Class::unit(i));
    for (int s = 0; s < steps; ++s) {
        H2Class r = random_root(rng);
        if (!fix_delta0 && rng.coin()) {
            // w + e1 + k f1 + delta0 with square -2 or 2 moves delta0 too.
            Int target = bb_square(r) + 2;
            r = detail::with_square(detail::random_filler(rng, 1), target) + delta0();
        }
        for (auto& x : images)
            x = reflect(x, r);
    }
    ZMat m(kBBRank, kBBRank);
    for (std::size_t i = 0; i < kBBRank; ++i)
        for (std::size_t j = 0; j < kBBRank; ++j)
            m(i, j) = images[i][j];
    return m;
}

inline H2Class apply_isometry(const ZMat& m, const H2Class& x) {
    return H2Class(vec_mat(x.coords(), m));
}

inline ExceptionalClass sample_exceptional(Rng& rng) {
    static const std::array<long, 8> odd{-7, -5, -3, -1, 1, 3, 5, 7};
    Int c = odd[rng.uniform(0, odd.size() - 1)];
    Int target = (c * c - 1) / 2;
    H2Class a_hat = detail::with_square(detail::random_filler(rng, 1), target);
    ZMat g = random_isometry(rng, 2, true);
    return make_exceptional(apply_isometry(g, a_hat), c);
}

/// Odd primitive class of square 2s, s in [1, max_half_square].
inline H2Class sample_odd_polarization(Rng& rng, long max_half_square = 20) {
    Int target = 2 * rng.uniform(1, max_half_square);
    H2Class w = detail::random_filler(rng, 1);
    Int m = rng.uniform(-2, 2);
    // b(w + e1 + k f1 + m delta0) = b(w,w) + 2k - 2m^2
    H2Class l = detail::with_square(w, target + 2 * m * m) + m * delta0();
    ZMat g = random_isometry(rng, 2, false);
    return apply_isometry(g, l);
}

/// Even primitive class 2 a_hat + (2c+1) delta0 with positive square. With
/// require_assumption, b(a_hat, a_hat) = 2 mod 4, which makes (10 + square)/8
/// even.
inline H2Class sample_even_polarization(Rng& rng, bool require_assumption = false) {
    long c = rng.uniform(-2, 1);
    Int odd = 2 * c + 1;
    // Need 4N > 2 odd^2, N even.
    Int n_min = (odd * odd) / 2 + 1;
    Int n = 2 * rng.uniform(0, 6) + n_min;
    if (mpz_odd_p(n.get_mpz_t()))
        n += 1;
    if (require_assumption && n % 4 != 2)
        n += 2;
    H2Class a_hat = detail::with_square(detail::random_filler(rng, 1), n);
    ZMat g = random_isometry(rng, 2, true);
    return 2 * apply_isometry(g, a_hat) + odd * delta0();
}

}  // namespace hk4
