#include "hk4/suites.hpp"

#include <gtest/gtest.h>

using namespace hk4;

TEST(JsonIo, RationalRoundTrip) {
    for (const Rat& r : {Rat(0), Rat(-7), Rat(3, 8), make_rat(Int(-50), Int(4))})
        EXPECT_EQ(rat_from_json(to_json(r)), r);
    EXPECT_EQ(rat_from_json(Json(12)), 12);
    EXPECT_EQ(to_json(make_rat(Int(-50), Int(4))), "-25/2");
    EXPECT_THROW(rat_from_json(Json(1.5)), std::invalid_argument);
    EXPECT_THROW(int_from_json(Json("1/2")), std::invalid_argument);
}

TEST(JsonIo, MatrixRoundTrip) {
    Mat m(2, 3);
    m(0, 1) = Rat(1, 3);
    m(1, 2) = -4;
    EXPECT_EQ(mat_from_json(to_json(m)), m);
    EXPECT_THROW(mat_from_json(Json::parse(R"([["1"],["1","2"]])")), std::invalid_argument);
}

TEST(JsonIo, ClassRoundTrip) {
    Rng rng(51);
    for (int t = 0; t < 5; ++t) {
        H2Class a = sample_odd_polarization(rng);
        EXPECT_EQ(h2_from_json(to_json(a)), a);
    }
    H4Class v0 = build_v0(ExceptionalClass::standard());
    EXPECT_EQ(h4_from_json(to_json(v0)), v0);
    EXPECT_EQ(h4_from_json(Json::parse(R"j({"(3,1)": "1/2"})j")).at(1, 3), Rat(1, 2));
    EXPECT_THROW(h4_from_json(Json::parse(R"j({"(3,23)": "1"})j")), std::invalid_argument);
    EXPECT_THROW(h2_from_json(Json::parse("[1,2]")), std::invalid_argument);
}

TEST(JsonIo, PicardData) {
    H2Class l = Int(2) * (e_class(1) + f_class(1)) + delta0();
    Json j{{"picard", {to_json(delta0()), to_json(l)}}, {"lambda0", to_json(l)}};
    auto p = picard_from_json(j);
    EXPECT_EQ(p.picard().rank(), 2u);
    EXPECT_EQ(p.lambda0(), l);
    auto r = picard_from_json(Json{{"lambda0", to_json(e_class(1) + f_class(1))}});
    EXPECT_EQ(r.picard().rank(), 1u);
    EXPECT_THROW(picard_from_json(Json::object()), std::invalid_argument);
}

TEST(Suites, ReportsAreSortedAndReproducible) {
    SuiteOptions opt;
    opt.seed = 11;
    auto a = run_suite("blowup", opt), b = run_suite("blowup", opt);
    EXPECT_TRUE(a.ok());
    EXPECT_EQ(a.to_json(false).dump(), b.to_json(false).dump());
    EXPECT_TRUE(std::is_sorted(a.checks.begin(), a.checks.end(),
                               [](const Check& x, const Check& y) { return x.name < y.name; }));
    auto j = a.to_json();
    EXPECT_EQ(j["schema_version"], kReportSchemaVersion);
    EXPECT_TRUE(j.contains("elapsed_ms"));
    EXPECT_FALSE(a.to_json(false).contains("elapsed_ms"));
    for (const auto& c : j["checks"]) {
        EXPECT_EQ(c["status"], c["expected"] == c["actual"] ? "pass" : "fail");
        EXPECT_FALSE(c["paper_anchor"].get<std::string>().empty());
    }
}

TEST(Suites, DeformationTrialsAndConvention) {
    SuiteOptions opt;
    opt.trials = 4;
    auto r = run_suite("deformation", opt);
    EXPECT_EQ(r.checks.size(), 6u);
    EXPECT_TRUE(r.ok());
    opt.convention = ResidueConvention::PaperLiteral;
    EXPECT_TRUE(run_suite("blowup", opt).ok());
    EXPECT_THROW(run_suite("bogus", opt), std::invalid_argument);
    EXPECT_FALSE(is_suite_name("bogus"));
    EXPECT_TRUE(is_suite_name("all"));
}

TEST(Suites, FailingCheckIsReported) {
    SuiteReport r;
    r.checks.push_back({"x", "1", "2", "anchor"});
    EXPECT_FALSE(r.ok());
    EXPECT_NE(r.to_text().find("FAIL  x"), std::string::npos);
}
