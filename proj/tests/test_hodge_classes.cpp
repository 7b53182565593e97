#include "hk4/hodge_classes.hpp"

#include <gtest/gtest.h>

using namespace hk4;

namespace {

H2Class ef(long e1, long f1) { return Int(e1) * e_class(1) + Int(f1) * f_class(1); }

Lattice lattice_of(const std::vector<H4Class>& xs) {
    return Lattice(rows_from(xs), fujiki_form_ptr());
}

// Expected V from the closed forms: odd -> <l^2, (2/5)q>, even -> <l^2, (l^2 + (2/5)q)/8>.
Lattice expected_v(const H2Class& l) {
    H4Class l2 = square(l), tq = two_fifths_q();
    if (is_even(l))
        return lattice_of({l2, Rat(1, 8) * (l2 + tq)});
    return lattice_of({l2, tq});
}

H2Class random_primitive(Rng& rng) {
    while (true) {
        H2Class a;
        for (std::size_t i = 0; i < kBBRank; ++i)
            a[i] = rng.uniform(-3, 3);
        if (!a.is_zero() && is_primitive(a))
            return a;
    }
}

}  // namespace

TEST(Transcendental, Examples) {
    Lattice t = orthogonal_complement({delta0()});
    Mat first22(22, kBBRank);
    for (std::size_t i = 0; i < 22; ++i)
        first22(i, i) = 1;
    EXPECT_EQ(t, Lattice(first22, bb_form_ptr()));

    auto p = PicardData::rank_one(ef(1, 1));
    const Lattice& tr = p.transcendental();
    EXPECT_EQ(tr.rank(), 22u);
    for (const auto& a : basis_classes(tr))
        EXPECT_EQ(bb_form(a, ef(1, 1)), 0);
    // Saturated: the complement contains e1 - f1 itself, not only a multiple.
    EXPECT_TRUE(tr.contains(ef(1, -1).to_rational()));

    std::vector<H2Class> everything;
    for (std::size_t i = 0; i < kBBRank; ++i)
        everything.push_back(H2Class::unit(i));
    EXPECT_THROW(PicardData(everything, ef(1, 1)), std::invalid_argument);
}

TEST(PicardData, SaturatesGenerators) {
    H2Class l = 2 * ef(1, 1) + delta0();
    PicardData p({delta0(), l}, l);
    EXPECT_TRUE(p.picard().contains(ef(1, 1).to_rational()));
    EXPECT_THROW(PicardData({delta0()}, ef(1, 1)), std::invalid_argument);
}

TEST(VLambda, ClosedForms) {
    EXPECT_EQ(v_lambda0(ef(1, 1)), lattice_of({square(ef(1, 1)), two_fifths_q()}));
    H2Class even = 2 * ef(1, 1) + delta0();
    H4Class l2 = square(even);
    EXPECT_EQ(v_lambda0(even), lattice_of({l2, Rat(1, 8) * (l2 + two_fifths_q())}));
    EXPECT_EQ(divisibility((l2 + two_fifths_q()).coords(), standard_L().lattice), 8);
}

TEST(VLambda, GramAndRandomSamples) {
    Rng rng(21);
    for (int t = 0; t < 6; ++t) {
        H2Class l = t % 2 ? sample_even_polarization(rng) : sample_odd_polarization(rng);
        Int b0 = bb_square(l);
        Lattice v = v_lambda0(l);
        EXPECT_EQ(v.rank(), 2u);
        EXPECT_EQ(v, expected_v(l));
        H4Class l2 = square(l), tq = two_fifths_q();
        EXPECT_EQ(fujiki_pair(l2, l2), Rat(3 * b0 * b0));
        EXPECT_EQ(fujiki_pair(l2, tq), Rat(10 * b0));
        EXPECT_EQ(fujiki_pair(tq, tq), 92);
        Rat d = fujiki_pair(l2, l2) * fujiki_pair(tq, tq) - fujiki_pair(l2, tq) * fujiki_pair(l2, tq);
        EXPECT_EQ(d, Rat(176 * b0 * b0));
    }
}

TEST(MinimalityFunctional, Examples) {
    H2Class l = 2 * ef(1, 1) + delta0();
    PicardData p({delta0(), l}, l);
    const Lattice& t = p.transcendental();
    EXPECT_EQ(minimality_functional(square(l), t), Rat(bb_square(l)));
    EXPECT_EQ(minimality_functional(two_fifths_q(), t), 10);
    EXPECT_EQ(minimality_functional(build_v0(ExceptionalClass::standard()), t), 1);
    // A class outside the admissible span.
    EXPECT_THROW(minimality_functional(square(e_class(2)), t), std::domain_error);
}

TEST(MinimalClassSearch, OddRankOne) {
    auto rep = minimal_class_search(PicardData::rank_one(ef(1, 1)));
    EXPECT_FALSE(rep.feasible);
    EXPECT_EQ(rep.image_generator, 2);
    EXPECT_EQ(rep.search_lattice, v_lambda0(ef(1, 1)));
}

TEST(MinimalClassSearch, PositiveControl) {
    H2Class l = 2 * ef(1, 1) + delta0();
    PicardData p({delta0(), l}, l);
    auto rep = minimal_class_search(p);
    ASSERT_TRUE(rep.feasible);
    ASSERT_TRUE(rep.witness.has_value());
    EXPECT_EQ(minimality_functional(*rep.witness, p.transcendental()), 1);
    EXPECT_TRUE(standard_L().lattice.contains(rep.witness->coords()));
    H4Class v0 = build_v0(ExceptionalClass::standard());
    EXPECT_TRUE(rep.search_lattice.contains(v0.coords()));
}

TEST(MinimalClassSearch, AssumptionForcesEvenImage) {
    Rng rng(22);
    for (int t = 0; t < 8; ++t) {
        H2Class l = t % 2 ? sample_even_polarization(rng, true) : sample_odd_polarization(rng);
        ASSERT_TRUE(assumption_holds(l));
        auto rep = minimal_class_search(PicardData::rank_one(l));
        EXPECT_FALSE(rep.feasible);
        ASSERT_TRUE(is_integer(rep.image_generator));
        EXPECT_TRUE(mpz_even_p(rep.image_generator.get_num_mpz_t()));
    }
}

TEST(MinimalClassSearch, EvenClassFailingAssumptionIsFeasible) {
    // Square 14: (10 + 14) / 8 = 3 is odd, and the image is all of Z.
    H2Class l = 2 * ef(1, 2) + delta0();
    ASSERT_FALSE(assumption_holds(l));
    auto rep = minimal_class_search(PicardData::rank_one(l));
    EXPECT_TRUE(rep.feasible);
    EXPECT_EQ(rep.image_generator, 1);
}

TEST(MinimalClassSearch, InvariantUnderIsometries) {
    Rng rng(23);
    for (int t = 0; t < 3; ++t) {
        H2Class l = 2 * ef(1, 1) + delta0();
        PicardData p({delta0(), l}, l);
        ZMat g = random_isometry(rng, 3, false);
        H2Class gl = apply_isometry(g, l), gd = apply_isometry(g, delta0());
        PicardData q({gd, gl}, gl);
        auto a = minimal_class_search(p), b = minimal_class_search(q);
        EXPECT_EQ(a.feasible, b.feasible);
        EXPECT_EQ(a.image_generator, b.image_generator);
    }
}

TEST(HodgeImage, OrdersFiveAndTen) {
    auto odd = hodge_image_in_T4(ef(1, 1));
    EXPECT_TRUE(odd.is_cyclic());
    EXPECT_EQ(odd.order(), 5);
    auto even = hodge_image_in_T4(2 * ef(1, 1) + delta0());
    EXPECT_TRUE(even.is_cyclic());
    EXPECT_EQ(even.order(), 10);
    EXPECT_TRUE(square(ef(3, 7)).is_integral());
}

TEST(Z4Quotient, ThreeAndTwentyFour) {
    EXPECT_EQ(z4_quotient_bound(ef(1, 1)).invariant_factors, (std::vector<Int>{3}));
    EXPECT_EQ(z4_quotient_bound(2 * ef(1, 1) + delta0()).invariant_factors,
              (std::vector<Int>{24}));
    H2Class l = 2 * ef(1, 1) + delta0();
    Lattice v = v_lambda0(l);
    EXPECT_TRUE(v.contains(square(l).coords()));
    EXPECT_TRUE(v.contains(second_chern_class(ExceptionalClass::standard()).coords()));
}

TEST(EvenCriteria, AgreeOnRandomPrimitiveClasses) {
    Rng rng(24);
    for (int t = 0; t < 40; ++t) {
        H2Class l;
        switch (t % 3) {
            case 0: l = random_primitive(rng); break;
            case 1: l = sample_even_polarization(rng); break;
            default: l = sample_odd_polarization(rng); break;
        }
        auto c = even_criteria(l, sample_exceptional(rng), sample_exceptional(rng));
        EXPECT_TRUE(c.agree());
    }
}
