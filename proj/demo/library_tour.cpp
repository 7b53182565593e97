// Builds H4, prints its torsion, then walks through V for an odd and an even
// polarization and the minimal-class search for each.

#include "hk4/cubic_fano.hpp"

#include <iostream>

using namespace hk4;

int main() {
    const auto& L = standard_L();
    std::cout << "[L : Sym2] = " << sublattice_index(sym2_lattice(), L.lattice) << "\n";
    std::cout << "T4 = " << quotient_invariants(sym2_lattice(), L.lattice).to_string() << "\n";

    H2Class odd = e_class(1) + f_class(1);
    H2Class even = Int(2) * odd + delta0();
    for (const H2Class& l : {odd, even}) {
        auto rep = minimal_class_search(PicardData::rank_one(l));
        std::cout << (is_even(l) ? "even" : "odd") << " polarization of square " << bb_square(l)
                  << ": image of V in T4 has order " << hodge_image_in_T4(l).order()
                  << ", m(V) = " << rep.image_generator << "Z, minimal class "
                  << (rep.feasible ? "exists" : "does not exist") << "\n";
    }

    auto cubic = build_cubic_model(standard_pluecker_class());
    auto checks = check_cubic_model(cubic);
    std::cout << "lines on a cubic: g1^4 = " << checks.g1_fourth
              << ", g2 g1^2 = " << checks.g2_g1_squared << ", Hodge basis equals V: "
              << (lines_hodge_basis(cubic) == v_lambda0(cubic.g1) ? "yes" : "no") << "\n";
}
