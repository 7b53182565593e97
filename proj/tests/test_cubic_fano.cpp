#include "hk4/cubic_fano.hpp"

#include <gtest/gtest.h>

using namespace hk4;

namespace {

H2Class random_class(Rng& rng) {
    H2Class a;
    for (std::size_t i = 0; i < kBBRank; ++i)
        a[i] = rng.uniform(-3, 3);
    return a;
}

}  // namespace

TEST(CubicModel, StandardNumbers) {
    auto m = build_cubic_model(standard_pluecker_class());
    auto c = check_cubic_model(m);
    EXPECT_EQ(c.g1_fourth, 108);
    EXPECT_EQ(c.g2_g1_squared, 45);
    EXPECT_TRUE(c.g2_kills_transcendental);
    EXPECT_TRUE(c.g2_in_L);
    EXPECT_TRUE(c.third_in_L);
    EXPECT_TRUE(c.third_primitive);
    EXPECT_TRUE(c.eighth_matches_third);
    // Solving the q-relation back: (1/6) g1^2 - (4/15) g2 = q / 25.
    EXPECT_EQ(Rat(1, 6) * square(m.g1) - Rat(4, 15) * m.g2, Rat(1, 25) * build_q());
}

TEST(CubicModel, PairingClosedForm) {
    // g2.a.b = (5/8)(6 b(a,b) + 2 b(g1,a) b(g1,b)) - (3/20) 25 b(a,b).
    auto m = build_cubic_model(standard_pluecker_class());
    Rng rng(41);
    for (int t = 0; t < 20; ++t) {
        H2Class a = random_class(rng), b = random_class(rng);
        Rat expected = Rat(5, 8) * Rat(6 * bb_form(a, b) + 2 * bb_form(m.g1, a) * bb_form(m.g1, b)) -
                       Rat(15, 4) * Rat(bb_form(a, b));
        EXPECT_EQ(fujiki_pair(m.g2, sym2_embed(a, b)), expected);
    }
}

TEST(CubicModel, RejectsWrongInputs) {
    EXPECT_THROW(build_cubic_model(e_class(1) + Int(3) * f_class(1)), std::invalid_argument);
    EXPECT_THROW(build_cubic_model(Int(2) * (e_class(1) + Int(2) * f_class(1)) + delta0()),
                 std::invalid_argument);
    EXPECT_THROW(build_cubic_model(Int(2) * standard_pluecker_class()), std::invalid_argument);
}

TEST(CubicModel, EmbeddingIndependent) {
    Rng rng(42);
    for (int t = 0; t < 10; ++t) {
        H2Class g1 = apply_isometry(random_isometry(rng, 4, false), standard_pluecker_class());
        ASSERT_EQ(bb_square(g1), 6);
        auto m = build_cubic_model(g1);
        EXPECT_EQ(lines_hodge_basis(m), v_lambda0(g1));
    }
}

TEST(LinesHodgeBasis, EqualsVLambda) {
    auto m = build_cubic_model(standard_pluecker_class());
    H4Class g1sq = square(m.g1);
    Lattice expected(rows_from({g1sq, Rat(1, 8) * (g1sq + two_fifths_q())}), fujiki_form_ptr());
    EXPECT_EQ(lines_hodge_basis(m), expected);
    EXPECT_EQ(lines_hodge_basis(m), v_lambda0(m.g1));
}

TEST(LinesHodgeBasis, NoMinimalClass) {
    auto rep = minimal_class_search(PicardData::rank_one(standard_pluecker_class()));
    EXPECT_FALSE(rep.feasible);
    EXPECT_EQ(rep.image_generator, 2);
}

TEST(Pfaffian, SquareParityAssumption) {
    auto r = pfaffian_check();
    EXPECT_EQ(bb_square(r.b_class), 14);
    EXPECT_EQ(r.square, 6);
    EXPECT_TRUE(r.even);
    EXPECT_TRUE(r.assumption);
    EXPECT_TRUE(r.ok());
    EXPECT_NO_THROW(build_cubic_model(r.lambda0));
}

TEST(SecondChern, ConsistentForAllDeltas) {
    EXPECT_TRUE(c2_consistency(ExceptionalClass::standard()));
    Rng rng(43);
    for (int t = 0; t < 3; ++t)
        EXPECT_TRUE(c2_consistency(sample_exceptional(rng)));
}
