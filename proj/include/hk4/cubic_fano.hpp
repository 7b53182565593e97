#pragma once

// Fano variety of lines on a cubic fourfold: the Pluecker class g1 (even,
// square 6), g2 = (5/8) g1^2 - (3/20) q, and the Pfaffian polarization.

#include "hk4/hodge_classes.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace hk4 {

struct CubicModel {
    H2Class g1;
    H4Class g2;

    /// (1/3)(g1^2 - g2).
    H4Class third_class() const { return Rat(1, 3) * (square(g1) - g2); }
};

struct CubicChecks {
    Rat g1_fourth;        // 108
    Rat g2_g1_squared;    // 45
    bool g2_kills_transcendental = false;
    bool g2_in_L = false;
    bool third_in_L = false;
    bool third_primitive = false;
    bool eighth_matches_third = false;

    bool ok() const {
        return g1_fourth == 108 && g2_g1_squared == 45 && g2_kills_transcendental && g2_in_L &&
               third_in_L && third_primitive && eighth_matches_third;
    }
};

inline CubicChecks check_cubic_model(const CubicModel& m) {
    const Lattice& L = standard_L().lattice;
    H4Class g1sq = square(m.g1);
    CubicChecks c;
    c.g1_fourth = fujiki_pair(g1sq, g1sq);
    c.g2_g1_squared = fujiki_pair(m.g2, g1sq);
    c.g2_kills_transcendental = true;
    auto t = basis_classes(orthogonal_complement({m.g1}));
    for (std::size_t i = 0; i < t.size() && c.g2_kills_transcendental; ++i)
        for (std::size_t j = i; j < t.size(); ++j)
            if (sgn(fujiki_pair(m.g2, sym2_embed(t[i], t[j]))) != 0) {
                c.g2_kills_transcendental = false;
                break;
            }
    H4Class third = m.third_class();
    c.g2_in_L = L.contains(m.g2.coords());
    c.third_in_L = L.contains(third.coords());
    c.third_primitive = c.third_in_L && divisibility(third.coords(), L) == 1;
    c.eighth_matches_third = Rat(1, 8) * (two_fifths_q() + g1sq) == third;
    return c;
}

/// g1 must be even, primitive and of square 6; throws domain_error if a
/// model invariant fails.
inline CubicModel build_cubic_model(const H2Class& g1) {
    if (g1.is_zero() || !is_primitive(g1))
        throw std::invalid_argument("g1 must be primitive");
    if (bb_square(g1) != 6)
        throw std::invalid_argument("g1 must have square 6");
    if (!is_even(g1))
        throw std::invalid_argument("g1 must be even");
    CubicModel m{g1, Rat(5, 8) * square(g1) - Rat(3, 20) * build_q()};
    if (!check_cubic_model(m).ok())
        throw std::domain_error("cubic model invariants fail");
    return m;
}

/// 2(e1 + f1) + delta0.
inline H2Class standard_pluecker_class() {
    return Int(2) * (e_class(1) + f_class(1)) + delta0();
}

inline Lattice lines_hodge_basis(const CubicModel& m) {
    return Lattice(rows_from({m.g2, m.third_class()}), fujiki_form_ptr());
}

struct PfaffianReport {
    H2Class b_class;
    H2Class lambda0;
    Int square;
    bool even = false;
    bool assumption = false;

    bool ok() const { return square == 6 && even && assumption; }
};

/// lambda0 = 2b - 5 delta0 with b = e1 + 7 f1 of square 14.
inline PfaffianReport pfaffian_check() {
    H2Class b = e_class(1) + Int(7) * f_class(1);
    if (bb_square(b) != 14 || !is_primitive(b) || bb_form(b, delta0()) != 0)
        throw std::domain_error("Pfaffian class has the wrong shape");
    H2Class l0 = Int(2) * b - Int(5) * delta0();
    return {b, l0, bb_square(l0), is_even(l0), assumption_holds(l0)};
}

/// (1/3) c2 = (2/5) q and 8 v0 = (2/5) q + delta^2 for the given delta.
inline bool c2_consistency(const ExceptionalClass& d) {
    H4Class tq = two_fifths_q();
    return Rat(1, 3) * second_chern_class(d) == tq &&
           Rat(8) * build_v0(d) == tq + square(d.cls());
}

}  // namespace hk4
