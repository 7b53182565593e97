#pragma once

// Hodge-class lattices attached to Picard data (P, lambda0): the rank-2
// lattice V spanned rationally by lambda0^2 and q, the transcendental
// lattice, the minimality functional and the search for a class theta with
// (theta . a . b) = b(a, b) on transcendental pairs.

#include "hk4/h4_model.hpp"

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace hk4 {

class PicardData {
public:
    /// P is the saturation of the given classes; lambda0 must lie in it.
    PicardData(const std::vector<H2Class>& generators, H2Class lambda0)
        : p_(saturate(generators)), lambda0_(std::move(lambda0)) {
        require_polarization(lambda0_);
        if (!p_.contains(lambda0_.to_rational()))
            throw std::invalid_argument("polarization is not in the Picard lattice");
        t_ = orthogonal_complement(basis_classes(p_));
        if (t_.rank() == 0)
            throw std::invalid_argument("transcendental lattice has rank 0");
    }

    /// P = Z lambda0.
    static PicardData rank_one(const H2Class& lambda0) { return PicardData({lambda0}, lambda0); }

    const Lattice& picard() const { return p_; }
    const H2Class& lambda0() const { return lambda0_; }
    const Lattice& transcendental() const { return t_; }
    std::vector<H2Class> picard_basis() const { return basis_classes(p_); }

private:
    static Lattice saturate(const std::vector<H2Class>& gens) {
        if (gens.empty())
            throw std::invalid_argument("empty Picard lattice");
        Mat m(gens.size(), kBBRank);
        for (std::size_t i = 0; i < gens.size(); ++i)
            for (std::size_t j = 0; j < kBBRank; ++j)
                m(i, j) = gens[i][j];
        Lattice sat = saturation(m, bb_form_ptr());
        if (sat.rank() == 0)
            throw std::invalid_argument("Picard lattice has rank 0");
        return sat;
    }

    Lattice p_;
    H2Class lambda0_;
    Lattice t_{Mat(0, kBBRank), bb_form_ptr()};
};

inline Lattice transcendental(const PicardData& p) { return p.transcendental(); }

/// span_Q{lambda0^2, q} intersected with L.
inline Lattice v_lambda0(const H2Class& l0) {
    require_polarization(l0);
    return intersect_with_span(standard_L().lattice, rows_from({square(l0), build_q()}));
}

/// The scalar m with (v . a . b) = m b(a, b) on all pairs of a basis of T.
inline Rat minimality_functional(const H4Class& v, const Lattice& t) {
    if (t.rank() < 2)
        throw std::invalid_argument("minimality functional needs a transcendental rank >= 2");
    auto basis = basis_classes(t);
    std::optional<Rat> m;
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = i; j < basis.size(); ++j) {
            Rat value = fujiki_pair(v, sym2_embed(basis[i], basis[j]));
            Int b = bb_form(basis[i], basis[j]);
            if (b == 0) {
                if (sgn(value) != 0)
                    throw std::domain_error("class is not proportional to b on T");
                continue;
            }
            Rat ratio = value / Rat(b);
            if (!m)
                m = ratio;
            else if (*m != ratio)
                throw std::domain_error("class is not proportional to b on T");
        }
    if (!m)
        throw std::domain_error("b vanishes identically on T");
    return *m;
}

struct MinimalityReport {
    Lattice search_lattice;
    /// m(search_lattice) = g Z with g >= 0.
    Rat image_generator;
    bool feasible = false;
    std::optional<H4Class> witness;
};

/// L intersected with span_Q(Sym^2 P, q), then a coset search for m = 1.
inline MinimalityReport minimal_class_search(const PicardData& p) {
    const Lattice& t = p.transcendental();
    if (t.rank() < 2)
        throw std::invalid_argument("minimal class search needs a transcendental rank >= 2");
    auto pb = p.picard_basis();
    std::vector<H4Class> span;
    for (std::size_t i = 0; i < pb.size(); ++i)
        for (std::size_t j = i; j < pb.size(); ++j)
            span.push_back(sym2_embed(pb[i], pb[j]));
    span.push_back(build_q());
    Lattice search = intersect_with_span(standard_L().lattice, rows_from(span));
    std::vector<Rat> values;
    for (std::size_t k = 0; k < search.rank(); ++k)
        values.push_back(minimality_functional(H4Class(search.basis_vector(k)), t));
    auto res = coset_feasible(search, values, Rat(1));
    MinimalityReport rep{search, res.image_generator, res.feasible, std::nullopt};
    if (res.witness)
        rep.witness = H4Class(*res.witness);
    return rep;
}

/// Image of V in T4 = L / Sym^2.
inline FiniteAbelianGroup hodge_image_in_T4(const H2Class& l0) {
    Lattice v = v_lambda0(l0);
    std::vector<std::vector<Rat>> gens;
    for (std::size_t k = 0; k < v.rank(); ++k)
        gens.push_back(v.basis_vector(k));
    return quotient_by_generators(sym2_lattice(), gens);
}

/// V / <lambda0^2, c2>.
inline FiniteAbelianGroup z4_quotient_bound(const H2Class& l0) {
    Lattice v = v_lambda0(l0);
    Lattice sub(rows_from({square(l0), second_chern_class(ExceptionalClass::standard())}),
                fujiki_form_ptr());
    return quotient_invariants(sub, v);
}

/// The six equivalent characterisations of an even primitive class, using
/// two exceptional classes for the "some"/"all" variants.
struct EvenCriteria {
    bool is_even = false;
    bool div2_first = false, div2_second = false;
    bool div8_first = false, div8_second = false;
    bool vbar_vanishes = false;

    bool agree() const {
        return div2_first == is_even && div2_second == is_even && div8_first == is_even &&
               div8_second == is_even && vbar_vanishes == is_even;
    }
};

inline EvenCriteria even_criteria(const H2Class& l0, const ExceptionalClass& d1,
                                  const ExceptionalClass& d2) {
    const Lattice& L = standard_L().lattice;
    auto divides = [&](const ExceptionalClass& d, long n) {
        H4Class diff = square(l0) - square(d.cls());
        return divisibility(diff.coords(), L) % n == 0;
    };
    EvenCriteria c;
    c.is_even = is_even(l0);
    c.div2_first = divides(d1, 2);
    c.div2_second = divides(d2, 2);
    c.div8_first = divides(d1, 8);
    c.div8_second = divides(d2, 8);
    c.vbar_vanishes = vbar(d1, l0).is_integral();
    return c;
}

}  // namespace hk4
