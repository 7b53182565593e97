#pragma once

// Lattices inside Q^n with a fixed symmetric bilinear form, stored in a
// canonical Hermite normal form so that structural equality is decidable.

#include "hk4/matrix.hpp"
#include "hk4/normal_form.hpp"

#include <cstddef>
#include <memory>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace hk4 {

using FormPtr = std::shared_ptr<const Mat>;

inline FormPtr make_form(Mat form) {
    if (form.rows() != form.cols())
        throw std::invalid_argument("bilinear form must be square");
    if (!(form == form.transpose()))
        throw std::invalid_argument("bilinear form must be symmetric");
    return std::make_shared<const Mat>(std::move(form));
}

/// Euclidean form, for lattices whose pairing is irrelevant.
inline FormPtr standard_form(std::size_t n) { return make_form(Mat::identity(n)); }

class Lattice {
public:
    /// Lattice spanned over Z by the rows of `generators` (which may be
    /// linearly dependent).
    Lattice(const Mat& generators, FormPtr form) : form_(std::move(form)) {
        if (!form_)
            throw std::invalid_argument("lattice without an ambient form");
        if (generators.cols() != form_->rows() && !generators.empty())
            throw std::invalid_argument("generator width does not match the ambient form");
        auto [d, z] = clear_denominators(generators);
        den_ = d;
        num_ = generators.empty() ? ZMat(0, form_->rows()) : hnf(std::move(z));
        normalize_denominator();
    }

    /// Z^n with the given form.
    static Lattice standard(FormPtr form) {
        const std::size_t n = form->rows();
        return Lattice(Mat::identity(n), std::move(form));
    }

    std::size_t ambient_dim() const { return form_->rows(); }
    std::size_t rank() const { return num_.rows(); }
    bool is_full_rank() const { return rank() == ambient_dim(); }

    const Mat& form() const { return *form_; }
    const FormPtr& form_ptr() const { return form_; }
    /// basis() == scaled_basis() / denominator().
    const ZMat& scaled_basis() const { return num_; }
    const Int& denominator() const { return den_; }
    const std::vector<std::size_t>& pivots() const { return pivots_; }

    Mat basis() const {
        Mat b = to_rational(num_);
        if (den_ != 1)
            for (std::size_t i = 0; i < b.rows(); ++i)
                for (std::size_t j = 0; j < b.cols(); ++j)
                    if (sgn(b(i, j)) != 0)
                        b(i, j) /= den_;
        return b;
    }

    std::vector<Rat> basis_vector(std::size_t i) const {
        std::vector<Rat> v(ambient_dim());
        for (std::size_t j = 0; j < v.size(); ++j)
            if (num_(i, j) != 0)
                v[j] = make_rat(num_(i, j), den_);
        return v;
    }

    /// Coordinates of v in the basis, or nullopt when v is outside the
    /// rational span.
    std::optional<std::vector<Rat>> coordinates(const std::vector<Rat>& v) const {
        if (v.size() != ambient_dim())
            throw std::invalid_argument("vector length does not match the ambient space");
        std::vector<Rat> w(v.size());
        for (std::size_t j = 0; j < v.size(); ++j)
            if (sgn(v[j]) != 0)
                w[j] = v[j] * den_;
        std::vector<Rat> c(rank());
        for (std::size_t k = 0; k < rank(); ++k) {
            const std::size_t p = pivots_[k];
            if (sgn(w[p]) == 0)
                continue;
            c[k] = w[p] / num_(k, p);
            auto row = num_.row(k);
            for (std::size_t j = p; j < w.size(); ++j)
                if (row[j] != 0)
                    w[j] -= c[k] * row[j];
        }
        for (const auto& x : w)
            if (sgn(x) != 0)
                return std::nullopt;
        return c;
    }

    bool in_span(const std::vector<Rat>& v) const { return coordinates(v).has_value(); }

    bool contains(const std::vector<Rat>& v) const {
        auto c = coordinates(v);
        if (!c)
            return false;
        for (const auto& x : *c)
            if (!is_integer(x))
                return false;
        return true;
    }

    /// Integer coordinates of a member vector; throws if v is not in the lattice.
    std::vector<Int> integer_coordinates(const std::vector<Rat>& v) const {
        auto c = coordinates(v);
        if (!c)
            throw std::domain_error("vector is outside the lattice span");
        std::vector<Int> z(c->size());
        for (std::size_t k = 0; k < z.size(); ++k) {
            if (!is_integer((*c)[k]))
                throw std::domain_error("vector is not in the lattice");
            z[k] = (*c)[k].get_num();
        }
        return z;
    }

    bool contains_lattice(const Lattice& other) const {
        if (other.ambient_dim() != ambient_dim() || other.rank() > rank())
            return false;
        for (std::size_t i = 0; i < other.rank(); ++i)
            if (!contains(other.basis_vector(i)))
                return false;
        return true;
    }

    Rat pair(const std::vector<Rat>& a, const std::vector<Rat>& b) const {
        return dot(vec_mat(a, *form_), b);
    }

    /// Gram matrix of the basis under the ambient form.
    Mat gram() const {
        Mat b = basis();
        return b * (*form_) * b.transpose();
    }

    friend bool operator==(const Lattice& a, const Lattice& b) {
        return a.den_ == b.den_ && a.num_ == b.num_ &&
               (a.form_ == b.form_ || *a.form_ == *b.form_);
    }

private:
    // The least common denominator of the basis is a lattice invariant; divide
    // out any common factor so that (num_, den_) is canonical.
    void normalize_denominator() {
        Int g = den_;
        for (const auto& x : num_.data())
            if (x != 0) {
                g = gcd(g, x);
                if (g == 1)
                    break;
            }
        if (g > 1) {
            den_ /= g;
            for (std::size_t i = 0; i < num_.rows(); ++i)
                for (auto& x : num_.row(i))
                    if (x != 0)
                        mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
        }
        pivots_.clear();
        for (std::size_t i = 0; i < num_.rows(); ++i) {
            std::size_t p = 0;
            while (num_(i, p) == 0)
                ++p;
            pivots_.push_back(p);
        }
    }

    FormPtr form_;
    Int den_ = 1;
    ZMat num_;
    std::vector<std::size_t> pivots_;
};

namespace detail {

inline void require_same_ambient(const Lattice& a, const Lattice& b) {
    if (a.ambient_dim() != b.ambient_dim() ||
        !(a.form_ptr() == b.form_ptr() || a.form() == b.form()))
        throw std::invalid_argument("lattices live in different ambient spaces");
}

inline Mat rows_of(const std::vector<std::vector<Rat>>& vs, std::size_t width) {
    Mat m(vs.size(), width);
    for (std::size_t i = 0; i < vs.size(); ++i) {
        if (vs[i].size() != width)
            throw std::invalid_argument("vector length does not match the ambient space");
        for (std::size_t j = 0; j < width; ++j)
            m(i, j) = vs[i][j];
    }
    return m;
}

/// Coordinates (as rows) of each row of m in the lattice basis.
inline Mat coordinate_matrix(const Lattice& lat, const Mat& m) {
    Mat c(m.rows(), lat.rank());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        auto coords = lat.coordinates(m.row_vector(i));
        if (!coords)
            throw std::domain_error("vector is outside the lattice span");
        for (std::size_t k = 0; k < coords->size(); ++k)
            c(i, k) = (*coords)[k];
    }
    return c;
}

}  // namespace detail

inline Lattice lattice_join(const Lattice& a, const Lattice& b) {
    detail::require_same_ambient(a, b);
    Mat stacked(a.rank() + b.rank(), a.ambient_dim());
    Mat ab = a.basis(), bb = b.basis();
    for (std::size_t i = 0; i < a.rank(); ++i)
        for (std::size_t j = 0; j < a.ambient_dim(); ++j)
            stacked(i, j) = ab(i, j);
    for (std::size_t i = 0; i < b.rank(); ++i)
        for (std::size_t j = 0; j < b.ambient_dim(); ++j)
            stacked(a.rank() + i, j) = bb(i, j);
    return Lattice(stacked, a.form_ptr());
}

/// lat ∩ span_Q(rows of w).
inline Lattice intersect_with_span(const Lattice& lat, const Mat& w) {
    if (w.cols() != lat.ambient_dim())
        throw std::invalid_argument("span vectors do not match the ambient space");
    Mat span;
    if (lat.is_full_rank()) {
        span = rref(w);
    } else {
        // (y, z) with y w = z B: the y-parts give span(w) ∩ span(B).
        Mat b = lat.basis();
        Mat stacked(w.rows() + b.rows(), w.cols());
        for (std::size_t i = 0; i < w.rows(); ++i)
            for (std::size_t j = 0; j < w.cols(); ++j)
                stacked(i, j) = w(i, j);
        for (std::size_t i = 0; i < b.rows(); ++i)
            for (std::size_t j = 0; j < b.cols(); ++j)
                stacked(w.rows() + i, j) = -b(i, j);
        Mat ker = nullspace(stacked.transpose());
        Mat y(ker.rows(), w.rows());
        for (std::size_t i = 0; i < ker.rows(); ++i)
            for (std::size_t j = 0; j < w.rows(); ++j)
                y(i, j) = ker(i, j);
        span = rref(y * w);
    }
    if (span.rows() == 0)
        return Lattice(Mat(0, lat.ambient_dim()), lat.form_ptr());
    // Integer points of the coordinate subspace: pivots of the RREF force
    // integer multipliers, the remaining columns are congruence conditions.
    Mat coords = rref(detail::coordinate_matrix(lat, span));
    ZMat z = integral_combinations(coords);
    Mat member_coords = to_rational(z) * coords;
    return Lattice(member_coords * lat.basis(), lat.form_ptr());
}

/// The dual lattice with respect to the standard dot product (full rank only).
inline Lattice dot_dual(const Lattice& lat) {
    if (!lat.is_full_rank())
        throw std::invalid_argument("dual of a lattice that is not of full rank");
    return Lattice(inverse(lat.basis()).transpose(), lat.form_ptr());
}

inline Lattice lattice_meet(const Lattice& a, const Lattice& b) {
    detail::require_same_ambient(a, b);
    if (b.contains_lattice(a))
        return a;
    if (a.contains_lattice(b))
        return b;
    if (a.is_full_rank() && b.is_full_rank())
        return dot_dual(lattice_join(dot_dual(a), dot_dual(b)));
    const Lattice& small = a.rank() <= b.rank() ? a : b;
    const Lattice& large = a.rank() <= b.rank() ? b : a;
    Lattice x = intersect_with_span(small, large.basis());
    if (x.rank() == 0)
        return x;
    Mat xb = x.basis();
    Mat coords = detail::coordinate_matrix(large, xb);
    ZMat y = integral_combinations(coords);
    return Lattice(to_rational(y) * xb, a.form_ptr());
}

/// Q-span of the given vectors intersected with Z^n.
inline Lattice saturation(const Mat& vectors, FormPtr form) {
    return intersect_with_span(Lattice::standard(std::move(form)), vectors);
}

/// [sup : sub] for sub ⊆ sup of equal rank.
inline Int sublattice_index(const Lattice& sub, const Lattice& sup) {
    detail::require_same_ambient(sub, sup);
    if (sub.rank() != sup.rank())
        throw std::invalid_argument("sublattice index: rank mismatch");
    if (!sup.contains_lattice(sub))
        throw std::domain_error("sublattice index: not a sublattice");
    // Same rational span, hence the same echelon pivots: the index is the
    // ratio of the pivot products.
    Rat ratio = 1;
    for (std::size_t k = 0; k < sub.rank(); ++k) {
        const std::size_t p = sub.pivots()[k];
        ratio *= make_rat(sub.scaled_basis()(k, p), sub.denominator());
        ratio /= make_rat(sup.scaled_basis()(k, p), sup.denominator());
    }
    if (!is_integer(ratio))
        throw std::logic_error("sublattice index is not an integer");
    return abs(ratio.get_num());
}

/// Integer matrix of sub's basis expressed in sup's basis.
inline ZMat relative_basis(const Lattice& sub, const Lattice& sup) {
    detail::require_same_ambient(sub, sup);
    ZMat c(sub.rank(), sup.rank());
    for (std::size_t i = 0; i < sub.rank(); ++i) {
        auto z = sup.integer_coordinates(sub.basis_vector(i));
        for (std::size_t k = 0; k < z.size(); ++k)
            c(i, k) = z[k];
    }
    return c;
}

/// Invariant factors of sup / sub (equal ranks, sub ⊆ sup).
inline FiniteAbelianGroup quotient_invariants(const Lattice& sub, const Lattice& sup) {
    if (sub.rank() != sup.rank())
        throw std::invalid_argument("quotient: rank mismatch");
    ZMat c;
    try {
        c = relative_basis(sub, sup);
    } catch (const std::domain_error&) {
        throw std::domain_error("quotient: not a sublattice");
    }
    return snf(c);
}

/// Structure of (sub + Z gens) / sub, with the generators recorded as lifts.
/// Every generator must lie in the rational span of sub.
inline FiniteAbelianGroup quotient_by_generators(const Lattice& sub,
                                                 const std::vector<std::vector<Rat>>& gens) {
    if (gens.empty())
        return {};
    Mat coords = detail::coordinate_matrix(sub, detail::rows_of(gens, sub.ambient_dim()));
    FiniteAbelianGroup g = snf(integral_combinations(coords));
    g.generator_lifts = gens;
    return g;
}

/// Order of v + sub in (span sub) / sub.
inline Int order_modulo(const Lattice& sub, const std::vector<Rat>& v) {
    auto c = sub.coordinates(v);
    if (!c)
        throw std::domain_error("vector is outside the lattice span");
    return common_denominator(*c);
}

/// Largest n >= 1 with v / n in lat.
inline Int divisibility(const std::vector<Rat>& v, const Lattice& lat) {
    auto z = lat.integer_coordinates(v);
    Int g = 0;
    for (const auto& x : z)
        g = gcd(g, x);
    if (g == 0)
        throw std::invalid_argument("divisibility of the zero vector");
    return g;
}

struct CosetResult {
    bool feasible = false;
    /// Nonnegative generator of the image functional(lat) = g Z.
    Rat image_generator;
    /// A lattice vector attaining the target, when feasible.
    std::optional<std::vector<Rat>> witness;
};

/// Decides whether functional(v) = target for some v in lat. The functional
/// is given by its values on the lattice basis.
inline CosetResult coset_feasible(const Lattice& lat, const std::vector<Rat>& functional,
                                  const Rat& target) {
    if (functional.size() != lat.rank())
        throw std::invalid_argument("functional length does not match the lattice rank");
    CosetResult res;
    res.image_generator = rational_gcd(functional);
    if (res.image_generator == 0) {
        res.feasible = (target == 0);
        if (res.feasible)
            res.witness = std::vector<Rat>(lat.ambient_dim());
        return res;
    }
    Rat multiple = target / res.image_generator;
    if (!is_integer(multiple))
        return res;
    res.feasible = true;
    // Bezout coefficients for g as a combination of the basis values.
    const Int den = common_denominator(functional);
    std::vector<Int> coeff(functional.size());
    Int g = 0;
    for (std::size_t k = 0; k < functional.size(); ++k) {
        Int val(functional[k] * den);
        if (val == 0)
            continue;
        Int s, t;
        Int ng = gcdext(g, val, s, t);
        for (std::size_t l = 0; l < k; ++l)
            coeff[l] *= s;
        coeff[k] = t;
        g = ng;
    }
    std::vector<Rat> w(lat.ambient_dim());
    const Int m = multiple.get_num();
    for (std::size_t k = 0; k < coeff.size(); ++k) {
        if (coeff[k] == 0)
            continue;
        auto b = lat.basis_vector(k);
        for (std::size_t j = 0; j < w.size(); ++j)
            if (sgn(b[j]) != 0)
                w[j] += m * coeff[k] * b[j];
    }
    res.witness = std::move(w);
    return res;
}

}  // namespace hk4
