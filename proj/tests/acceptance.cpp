// Acceptance gate: one PASS/FAIL line per criterion, exact arithmetic
// throughout. Exit code 0 iff every criterion passes.

#include "hk4/suites.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

using namespace hk4;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) {
    return std::chrono::duration<double>(Clock::now() - t).count();
}

H2Class random_primitive(Rng& rng) { return suite_detail::random_primitive(rng); }

Lattice lattice_of(const std::vector<H4Class>& xs) {
    return Lattice(rows_from(xs), fujiki_form_ptr());
}

struct Outcome {
    bool pass;
    std::string detail;
};

// [L : Sym^2] = 5 * 2^23 with invariant factors (2 x22, 10), from a fresh build.
Outcome torsion_order() {
    auto t0 = Clock::now();
    H4Lattice L = build_L();
    Int index = sublattice_index(sym2_lattice(), L.lattice);
    FiniteAbelianGroup g = quotient_invariants(sym2_lattice(), L.lattice);
    double secs = seconds_since(t0);
    bool ok = index == Int(41943040) && g == suite_detail::expected_t4() && secs < 60;
    return {ok, "index " + index.get_str() + ", " + g.to_string() + ", " +
                    std::to_string(secs).substr(0, 5) + " s"};
}

Outcome m_rho_det() {
    auto t0 = Clock::now();
    Int d = bareiss_det(build_M_rho_tilde());
    double secs = seconds_since(t0);
    return {d == Int(5) * pow2(45) && secs < 10,
            "det " + d.get_str() + ", " + std::to_string(secs).substr(0, 5) + " s"};
}

Outcome fujiki_constants() {
    Rng rng(301);
    H4Class q = build_q(), tq = two_fifths_q();
    int good_pairs = 0;
    for (int t = 0; t < 100; ++t) {
        H2Class a = random_primitive(rng), b = random_primitive(rng);
        good_pairs += fujiki_pair(q, sym2_embed(a, b)) == Rat(25 * bb_form(a, b));
    }
    bool square92 = fujiki_pair(tq, tq) == 92;
    int good_gram = 0;
    for (int t = 0; t < 10; ++t) {
        H2Class l = t % 2 ? sample_even_polarization(rng) : sample_odd_polarization(rng);
        Int b0 = bb_square(l);
        H4Class l2 = square(l);
        Rat a = fujiki_pair(l2, l2), c = fujiki_pair(l2, tq), d = fujiki_pair(tq, tq);
        good_gram += a == Rat(3 * b0 * b0) && c == Rat(10 * b0) && d == 92 &&
                     a * d - c * c == Rat(176 * b0 * b0);
    }
    return {good_pairs == 100 && square92 && good_gram == 10,
            std::to_string(good_pairs) + "/100 pairs, (2/5 q)^2 = " + fujiki_pair(tq, tq).get_str() +
                ", " + std::to_string(good_gram) + "/10 Gram matrices"};
}

Outcome unimodularity() {
    const Lattice& L = standard_L().lattice;
    Rat d = det(fujiki_gram(L));
    Rng rng(401);
    int same = 0;
    for (int t = 0; t < 5; ++t)
        same += build_L(sample_exceptional(rng)).lattice == L;
    return {abs(d) == 1 && same == 5,
            "det Gram(L) = " + d.get_str() + ", " + std::to_string(same) + "/5 equal lattices"};
}

Outcome divisibility_suite() {
    Rng rng(501);
    const Lattice& L = standard_L().lattice;
    int good = 0;
    for (int t = 0; t < 50; ++t) {
        H2Class a = random_primitive(rng);
        auto d1 = sample_exceptional(rng), d2 = sample_exceptional(rng);
        H2Class diff = d1.cls() - d2.cls();
        bool half = true;
        for (const auto& x : diff.coords())
            half = half && mpz_even_p(x.get_mpz_t());
        good += half && L.contains((Rat(1, 8) * (square(d1.cls()) - square(d2.cls()))).coords()) &&
                L.contains(build_v_delta(d1, a).coords());
    }
    int agree = 0, evens = 0;
    for (int t = 0; t < 200; ++t) {
        H2Class l;
        switch (t % 3) {
            case 0: l = random_primitive(rng); break;
            case 1: l = sample_even_polarization(rng); break;
            default: l = sample_odd_polarization(rng); break;
        }
        auto c = even_criteria(l, sample_exceptional(rng), sample_exceptional(rng));
        agree += c.agree();
        evens += c.is_even;
    }
    return {good == 50 && agree == 200,
            std::to_string(good) + "/50 triples, " + std::to_string(agree) + "/200 classes agree (" +
                std::to_string(evens) + " even)"};
}

Outcome v_structure() {
    Rng rng(601);
    H4Class tq = two_fifths_q();
    int odd = 0, even = 0;
    for (int t = 0; t < 20; ++t) {
        H2Class o = sample_odd_polarization(rng);
        odd += is_odd(o) && v_lambda0(o) == lattice_of({square(o), tq});
        H2Class e = sample_even_polarization(rng);
        H4Class e2 = square(e);
        even += is_even(e) && v_lambda0(e) == lattice_of({e2, Rat(1, 8) * (e2 + tq)});
    }
    return {odd == 20 && even == 20,
            std::to_string(odd) + "/20 odd, " + std::to_string(even) + "/20 even"};
}

Outcome minimal_class() {
    Rng rng(701);
    int good = 0;
    for (int t = 0; t < 20; ++t) {
        H2Class l = t % 2 ? sample_even_polarization(rng, true) : sample_odd_polarization(rng);
        auto rep = minimal_class_search(PicardData::rank_one(l));
        good += assumption_holds(l) && !rep.feasible && is_integer(rep.image_generator) &&
                mpz_even_p(rep.image_generator.get_num_mpz_t());
    }
    H2Class l = Int(2) * (e_class(1) + f_class(1)) + delta0();
    PicardData p({delta0(), l}, l);
    auto pos = minimal_class_search(p);
    H4Class v0 = build_v0(ExceptionalClass::standard());
    bool control = pos.feasible && pos.witness &&
                   minimality_functional(*pos.witness, p.transcendental()) == 1 &&
                   pos.search_lattice.contains(v0.coords()) &&
                   minimality_functional(v0, p.transcendental()) == 1;
    return {good == 20 && control, std::to_string(good) + "/20 infeasible with even image, control " +
                                       (control ? "m(v0) = 1" : "failed")};
}

Outcome t4_maps() {
    const auto& L = standard_L();
    T4Group t = torsion_T4(L);
    const auto& d = L.delta_used;
    Mat kgens(kBBRank + 1, kBBRank);
    for (std::size_t i = 0; i < kBBRank; ++i)
        kgens(i, i) = 2;
    kgens(kBBRank, kDelta0) = 1;
    bool kernel = vbar_kernel(d) == Lattice(kgens, bb_form_ptr());
    auto s = psi_summary(L, t);
    bool w0_in_kernel = true;
    for (int bit : psi_map(t.w0bar_lift, d))
        w0_in_kernel = w0_in_kernel && bit == 0;
    int rows = 0;
    for (std::size_t k = 0; k < kBBRank; ++k) {
        auto bits = psi_map(t.vbar_lifts[k], d);
        bool row = true;
        for (std::size_t j = 0; j < kBBRank; ++j)
            row = row && bits[j] == (mpz_odd_p(bb_gram()(k, j).get_mpz_t()) ? 1 : 0);
        rows += row;
    }
    bool ok = t4_order(t.v0bar_lift) == 10 && t4_order(t.w0bar_lift) == 5 && kernel &&
              s.kernel_order == 5 && w0_in_kernel && rows == 23;
    return {ok, "ord v0 = " + t4_order(t.v0bar_lift).get_str() + ", |ker psi| = " +
                    s.kernel_order.get_str() + ", psi v-bar = b mod 2 on " + std::to_string(rows) +
                    "/23"};
}

Outcome hodge_image() {
    H2Class odd = e_class(1) + f_class(1);
    H2Class even = Int(2) * odd + delta0();
    Int io = hodge_image_in_T4(odd).order(), ie = hodge_image_in_T4(even).order();
    auto zo = z4_quotient_bound(odd), ze = z4_quotient_bound(even);
    bool ok = io == 5 && ie == 10 && zo == FiniteAbelianGroup::from_factors({Int(3)}) &&
              ze == FiniteAbelianGroup::from_factors({Int(24)});
    return {ok, "image orders " + io.get_str() + "/" + ie.get_str() + ", quotients " + zo.to_string() +
                    " / " + ze.to_string()};
}

Outcome cubic() {
    auto m = build_cubic_model(standard_pluecker_class());
    auto c = check_cubic_model(m);
    bool basis = lines_hodge_basis(m) == v_lambda0(m.g1);
    auto pf = pfaffian_check();
    bool ok = c.ok() && basis && pf.ok();
    return {ok, "g1^4 = " + c.g1_fourth.get_str() + ", g2 g1^2 = " + c.g2_g1_squared.get_str() +
                    ", Pfaffian square " + pf.square.get_str() + (pf.even ? " even" : " odd")};
}

Outcome deformation() {
    Rng rng(7);
    int good = 0;
    for (int t = 0; t < 50; ++t) {
        auto n = static_cast<std::size_t>(rng.uniform(3, 10));
        auto inst = random_fix_instance(rng, n);
        auto sol = solve_fix(inst);
        good += sol.dimension() == 2 && verify_generators(sol, inst);
    }
    auto big = random_fix_instance(rng, 21);
    auto t0 = Clock::now();
    auto sol = solve_fix(big);
    bool big_ok = sol.dimension() == 2 && verify_generators(sol, big);
    double secs = seconds_since(t0);
    return {good == 50 && big_ok && secs < 120,
            std::to_string(good) + "/50 instances, n = 21 " + (big_ok ? "ok" : "failed") + " in " +
                std::to_string(secs).substr(0, 5) + " s"};
}

Outcome blowup_suite() {
    FourfoldH4 y{ZMat(2, 2), ZMat(1, 2)};
    y.gram(0, 0) = 1;
    y.gram(1, 1) = 3;
    y.transcendental(0, 1) = 1;
    auto p = blowup_h4(y, blowup::Point{});
    auto c = blowup_h4(y, blowup::Curve{5});
    ZMat h(2, 2);
    h(0, 0) = 2;
    h(0, 1) = h(1, 0) = 1;
    h(1, 1) = -2;
    auto s = blowup_h4(y, blowup::Surface{h, ZMat(0, 2)});
    bool blocks = p.gram(2, 2) == -1 && c.gram(2, 2) == 5 && c.gram(2, 3) == -1 &&
                  c.gram(3, 2) == -1 && c.gram(3, 3) == 0 && s.gram(2, 2) == -2 &&
                  s.gram(2, 3) == -1 && s.gram(3, 3) == 2;
    for (const auto* z : {&p, &c, &s})
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 2; j < z->rank(); ++j)
                blocks = blocks && z->gram(i, j) == 0 && z->gram(j, i) == 0;
    auto same_t = [&](const FourfoldH4& z) {
        if (z.transcendental.rows() != 1)
            return false;
        for (std::size_t j = 0; j < z.rank(); ++j)
            if (z.transcendental(0, j) != (j < 2 ? y.transcendental(0, j) : Int(0)))
                return false;
        return true;
    };
    bool trans = same_t(p) && same_t(c);
    bool parity = true;
    for (long e0 : {1, 3, 5})
        for (long e : {2, 3, 4})
            for (auto conv : {ResidueConvention::Quadratic, ResidueConvention::PaperLiteral})
                parity = parity && mpz_odd_p(residue_transform(e0, e, conv).get_mpz_t());
    auto one = potential_jacobian_search({Int(1)}, Int(3));
    auto two = potential_jacobian_search({Int(2)}, Int(5));
    bool search = !one.solutions.empty() && two.solutions.empty() && two.parity_certificate;
    return {blocks && trans && parity && search,
            std::string("blocks ") + (blocks ? "ok" : "bad") + ", transcendental " +
                (trans ? "kept" : "changed") + ", parity " + (parity ? "odd" : "broken") +
                ", search " + (search ? "ok" : "bad")};
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"torsion order of H4 over Sym2", torsion_order},
        {"determinant of the pull-back matrix", m_rho_det},
        {"Fujiki constants", fujiki_constants},
        {"unimodularity and independence of delta", unimodularity},
        {"divisibility and even-class criteria", divisibility_suite},
        {"structure of V_lambda0", v_structure},
        {"minimal-class obstruction", minimal_class},
        {"T4 structure maps", t4_maps},
        {"Hodge image and quotient bounds", hodge_image},
        {"cubic fourfold suite", cubic},
        {"deformation suite", deformation},
        {"blow-up suite", blowup_suite},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failures += !o.pass;
        std::printf("%s %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                    o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%zu/%zu criteria passed\n", criteria.size() - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
