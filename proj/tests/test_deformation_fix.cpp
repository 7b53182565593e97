#include "hk4/deformation_fix.hpp"

#include <gtest/gtest.h>

#include <chrono>

using namespace hk4;

namespace {

FixInstance identity2() {
    Mat a = Mat::identity(2);
    return {a, {Rat(1), Rat(0)}};
}

}  // namespace

TEST(KernelMu, HandExample) {
    Mat k = kernel_mu(identity2());
    ASSERT_EQ(k.rows(), 1u);
    EXPECT_EQ(k(0, 0), 0);
    EXPECT_NE(k(0, 1), 0);
}

TEST(KernelMu, RandomInstancesSatisfyEquation) {
    Rng rng(31);
    for (std::size_t n = 3; n <= 8; ++n) {
        auto inst = random_fix_instance(rng, n);
        Mat k = kernel_mu(inst);
        EXPECT_EQ(k.rows(), n - 1);
        EXPECT_EQ(rank(k), n - 1);
        auto sa = vec_mat(inst.s, inst.a);
        for (std::size_t i = 0; i < k.rows(); ++i)
            EXPECT_EQ(dot(sa, k.row_vector(i)), 0);
    }
}

TEST(KernelMu, RejectsBadInstances) {
    FixInstance zero{Mat::identity(2), {Rat(0), Rat(0)}};
    EXPECT_THROW(kernel_mu(zero), std::invalid_argument);
    Mat asym = Mat::identity(2);
    asym(0, 1) = 1;
    EXPECT_THROW(kernel_mu(FixInstance{asym, {Rat(1), Rat(0)}}), std::invalid_argument);
    EXPECT_THROW(kernel_mu(FixInstance{Mat(2, 2), {Rat(1), Rat(0)}}), std::invalid_argument);
}

TEST(SolveFix, HandEliminationOracle) {
    // mu = (0, 1): row 1 gives c0 = 2 C_11, row 0 gives C_01 = 0; C_00 is free.
    auto inst = identity2();
    auto sol = solve_fix(inst);
    ASSERT_EQ(sol.dimension(), 2u);
    FixElement first{Mat::identity(2), Rat(2)};
    FixElement second{Mat(2, 2), Rat(0)};
    second.c(0, 0) = 1;
    EXPECT_TRUE(same_span(sol.basis, {first, second}, 2));
    EXPECT_TRUE(verify_generators(sol, inst));
}

TEST(SolveFix, FiftyRandomInstances) {
    Rng rng(7);
    for (int t = 0; t < 50; ++t) {
        std::size_t n = static_cast<std::size_t>(rng.uniform(3, 10));
        auto inst = random_fix_instance(rng, n);
        auto sol = solve_fix(inst);
        EXPECT_EQ(sol.dimension(), 2u) << "n=" << n;
        EXPECT_TRUE(verify_generators(sol, inst));
        for (const auto& e : sol.basis) {
            EXPECT_TRUE(e.c == e.c.transpose());
            EXPECT_TRUE(satisfies_system(e, inst));
        }
        // Expected generators are solutions without going through the solver.
        for (const auto& e : expected_generators(inst))
            EXPECT_TRUE(satisfies_system(e, inst));
    }
}

TEST(SolveFix, InverseGeneratorSatisfiesScalarIdentity) {
    Rng rng(32);
    auto inst = random_fix_instance(rng, 6);
    auto gen = expected_generators(inst).front();
    Mat lhs = Rat(2) * (gen.c * inst.a);
    EXPECT_EQ(lhs, gen.c0 * Mat::identity(6));
}

TEST(SolveFix, PerturbedGeneratorFails) {
    Rng rng(33);
    auto inst = random_fix_instance(rng, 5);
    auto sol = solve_fix(inst);
    auto gens = expected_generators(inst);
    gens[0].c0 += 1;
    EXPECT_FALSE(same_span(sol.basis, gens, 5));
    EXPECT_FALSE(satisfies_system(gens[0], inst));
    gens = expected_generators(inst);
    gens[1].c(0, 1) += 1;
    gens[1].c(1, 0) += 1;
    EXPECT_FALSE(same_span(sol.basis, gens, 5));
}

TEST(SolveFix, ScalingInvariance) {
    Rng rng(34);
    auto inst = random_fix_instance(rng, 5);
    FixInstance scaled = inst;
    for (auto& x : scaled.s)
        x *= Rat(-7, 3);
    auto a = solve_fix(inst), b = solve_fix(scaled);
    EXPECT_TRUE(same_span(a.basis, b.basis, 5));
    EXPECT_TRUE(verify_generators(b, inst));
}

TEST(SolveFix, SpecialSAndA) {
    // Isotropic s and a non-definite A still give dimension 2.
    Mat a(3, 3);
    a(0, 1) = a(1, 0) = 1;
    a(2, 2) = -2;
    FixInstance inst{a, {Rat(1), Rat(0), Rat(0)}};
    auto sol = solve_fix(inst);
    EXPECT_EQ(sol.dimension(), 2u);
    EXPECT_TRUE(verify_generators(sol, inst));
}

TEST(SolveFix, RankTwentyOne) {
    Rng rng(35);
    auto inst = random_fix_instance(rng, 21);
    auto start = std::chrono::steady_clock::now();
    auto sol = solve_fix(inst);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    EXPECT_EQ(sol.dimension(), 2u);
    EXPECT_TRUE(verify_generators(sol, inst));
    EXPECT_LT(secs, 120.0);
}
