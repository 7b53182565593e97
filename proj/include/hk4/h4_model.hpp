#pragma once

// Degree-4 classes as rational vectors in Sym^2(Lambda) (x) Q, the Fujiki
// intersection form, the overlattice L of integral classes and its torsion
// quotient L / Sym^2(Lambda).
//
// Coordinates: monomials x_i x_j (i <= j) of the 23 basis vectors of Lambda,
// in lexicographic order, so (0,0), (0,1), ..., (0,22), (1,1), ..., (22,22).

#include "hk4/bb_lattice.hpp"

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hk4 {

inline constexpr std::size_t kSym2Dim = kBBRank * (kBBRank + 1) / 2;  // 276

inline std::size_t monomial_index(std::size_t i, std::size_t j) {
    if (i > j)
        std::swap(i, j);
    if (j >= kBBRank)
        throw std::out_of_range("monomial index");
    // Rows before i hold 23 + 22 + ... + (23 - i + 1) monomials.
    return i * kBBRank - i * (i - 1) / 2 + (j - i);
}

inline const std::vector<std::pair<std::size_t, std::size_t>>& monomial_pairs() {
    static const auto table = [] {
        std::vector<std::pair<std::size_t, std::size_t>> t;
        for (std::size_t i = 0; i < kBBRank; ++i)
            for (std::size_t j = i; j < kBBRank; ++j)
                t.emplace_back(i, j);
        return t;
    }();
    return table;
}

class H4Class {
public:
    H4Class() : c_(kSym2Dim) {}
    explicit H4Class(std::vector<Rat> coords) : c_(std::move(coords)) {
        if (c_.size() != kSym2Dim)
            throw std::invalid_argument("H4 class needs 276 coordinates");
    }

    const Rat& operator[](std::size_t i) const { return c_[i]; }
    Rat& operator[](std::size_t i) { return c_[i]; }
    const Rat& at(std::size_t i, std::size_t j) const { return c_[monomial_index(i, j)]; }
    const std::vector<Rat>& coords() const { return c_; }

    bool is_zero() const {
        for (const auto& x : c_)
            if (sgn(x) != 0)
                return false;
        return true;
    }
    bool is_integral() const {
        for (const auto& x : c_)
            if (!is_integer(x))
                return false;
        return true;
    }

    H4Class& operator+=(const H4Class& o) {
        for (std::size_t i = 0; i < kSym2Dim; ++i)
            if (sgn(o.c_[i]) != 0)
                c_[i] += o.c_[i];
        return *this;
    }
    H4Class& operator-=(const H4Class& o) {
        for (std::size_t i = 0; i < kSym2Dim; ++i)
            if (sgn(o.c_[i]) != 0)
                c_[i] -= o.c_[i];
        return *this;
    }
    friend H4Class operator+(H4Class a, const H4Class& b) { return a += b; }
    friend H4Class operator-(H4Class a, const H4Class& b) { return a -= b; }
    friend H4Class operator-(H4Class a) {
        for (auto& x : a.c_)
            x = -x;
        return a;
    }
    friend H4Class operator*(const Rat& s, H4Class a) {
        for (auto& x : a.c_)
            if (sgn(x) != 0)
                x *= s;
        return a;
    }
    friend bool operator==(const H4Class& a, const H4Class& b) { return a.c_ == b.c_; }

private:
    std::vector<Rat> c_;
};

/// The product a * b in Sym^2.
inline H4Class sym2_embed(const H2Class& a, const H2Class& b) {
    H4Class out;
    for (std::size_t i = 0; i < kBBRank; ++i) {
        if (a[i] == 0 && b[i] == 0)
            continue;
        for (std::size_t j = i; j < kBBRank; ++j) {
            Int v = (i == j) ? Int(a[i] * b[i]) : Int(a[i] * b[j] + a[j] * b[i]);
            if (v != 0)
                out[monomial_index(i, j)] = v;
        }
    }
    return out;
}

inline H4Class square(const H2Class& a) { return sym2_embed(a, a); }

// ---------------------------------------------------------------------------
// Fujiki form: (x_a x_b).(x_c x_d) = g_ab g_cd + g_ac g_bd + g_ad g_bc.

struct SparseIntForm {
    std::vector<std::vector<std::pair<std::size_t, Int>>> rows;
};

inline const SparseIntForm& fujiki_sparse() {
    static const SparseIntForm f = [] {
        const ZMat& g = bb_gram();
        const auto& mp = monomial_pairs();
        SparseIntForm s;
        s.rows.resize(kSym2Dim);
        for (std::size_t m = 0; m < kSym2Dim; ++m) {
            auto [a, b] = mp[m];
            for (std::size_t n = 0; n < kSym2Dim; ++n) {
                auto [c, d] = mp[n];
                Int v = g(a, b) * g(c, d) + g(a, c) * g(b, d) + g(a, d) * g(b, c);
                if (v != 0)
                    s.rows[m].emplace_back(n, v);
            }
        }
        return s;
    }();
    return f;
}

inline const FormPtr& fujiki_form_ptr() {
    static const FormPtr f = [] {
        Mat m(kSym2Dim, kSym2Dim);
        const auto& s = fujiki_sparse();
        for (std::size_t i = 0; i < kSym2Dim; ++i)
            for (const auto& [j, v] : s.rows[i])
                m(i, j) = v;
        return make_form(std::move(m));
    }();
    return f;
}

inline Rat fujiki_pair(const std::vector<Rat>& u, const std::vector<Rat>& v) {
    const auto& s = fujiki_sparse();
    Rat total = 0;
    for (std::size_t m = 0; m < kSym2Dim; ++m) {
        if (sgn(u[m]) == 0)
            continue;
        Rat row = 0;
        for (const auto& [n, f] : s.rows[m])
            if (sgn(v[n]) != 0)
                row += f * v[n];
        if (sgn(row) != 0)
            total += u[m] * row;
    }
    return total;
}

inline Rat fujiki_pair(const H4Class& u, const H4Class& v) {
    return fujiki_pair(u.coords(), v.coords());
}

/// Gram of a lattice in the 276-dimensional space under the Fujiki form,
/// computed on the integer scaled basis.
inline Mat fujiki_gram(const Lattice& lat) {
    const ZMat& num = lat.scaled_basis();
    const auto& s = fujiki_sparse();
    const std::size_t r = num.rows();
    ZMat nf(r, kSym2Dim);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t m = 0; m < kSym2Dim; ++m) {
            if (num(i, m) == 0)
                continue;
            for (const auto& [n, f] : s.rows[m])
                nf(i, n) += num(i, m) * f;
        }
    const Int den2 = lat.denominator() * lat.denominator();
    Mat g(r, r);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = i; j < r; ++j) {
            Int acc = 0;
            for (std::size_t n = 0; n < kSym2Dim; ++n)
                if (nf(i, n) != 0 && num(j, n) != 0)
                    acc += nf(i, n) * num(j, n);
            g(i, j) = make_rat(acc, den2);
            g(j, i) = g(i, j);
        }
    return g;
}

// ---------------------------------------------------------------------------
// Distinguished classes.

struct ComplementData {
    std::vector<H2Class> basis;  // basis of delta-perp
    ZMat gram;                   // A
    Mat inverse_gram;            // B = A^-1 (integral)
};

inline ComplementData complement_data(const ExceptionalClass& d) {
    ComplementData c;
    c.basis = orth_complement_basis(d);
    c.gram = gram_of(c.basis);
    c.inverse_gram = inverse(to_rational(c.gram));
    if (!is_integral(c.inverse_gram))
        throw std::logic_error("inverse Gram of delta-perp is not integral");
    return c;
}

/// sum_{i,j} B_ij a_i a_j over a basis of delta-perp.
inline H4Class inverse_form_class(const ComplementData& c) {
    H4Class s;
    const std::size_t n = c.basis.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (sgn(c.inverse_gram(i, j)) != 0)
                s += c.inverse_gram(i, j) * sym2_embed(c.basis[i], c.basis[j]);
    return s;
}

/// q = sum B_ij a_i a_j - (1/2) delta^2.
inline H4Class build_q(const ExceptionalClass& d) {
    return inverse_form_class(complement_data(d)) - Rat(1, 2) * square(d.cls());
}

inline H4Class build_q() { return build_q(ExceptionalClass::standard()); }

/// (2/5) q, the primitive integral multiple.
inline H4Class two_fifths_q() { return Rat(2, 5) * build_q(); }

/// v_delta(a) = a (a - delta) / 2.
inline H4Class build_v_delta(const ExceptionalClass& d, const H2Class& a) {
    return Rat(1, 2) * (square(a) - sym2_embed(a, d.cls()));
}

/// v0(delta) = (delta^2 + (1/2) sum B_ij a_i a_j) / 10.
inline H4Class build_v0(const ExceptionalClass& d) {
    auto c = complement_data(d);
    return Rat(1, 10) * (square(d.cls()) + Rat(1, 2) * inverse_form_class(c));
}

/// c2 = 24 v0 - 3 delta^2.
inline H4Class second_chern_class(const ExceptionalClass& d) {
    return Rat(24) * build_v0(d) - Rat(3) * square(d.cls());
}

// ---------------------------------------------------------------------------
// The lattice L.

inline Lattice sym2_lattice() { return Lattice::standard(fujiki_form_ptr()); }

struct H4Lattice {
    Lattice lattice;
    ExceptionalClass delta_used;
};

inline Mat rows_from(const std::vector<H4Class>& xs) {
    Mat m(xs.size(), kSym2Dim);
    for (std::size_t i = 0; i < xs.size(); ++i)
        for (std::size_t j = 0; j < kSym2Dim; ++j)
            m(i, j) = xs[i][j];
    return m;
}

/// Sym^2 joined with v_delta(a_i) over a basis of delta-perp and v0(delta).
inline H4Lattice build_L(const ExceptionalClass& d) {
    auto c = complement_data(d);
    std::vector<H4Class> extra;
    for (const auto& a : c.basis)
        extra.push_back(build_v_delta(d, a));
    extra.push_back(Rat(1, 10) * (square(d.cls()) + Rat(1, 2) * inverse_form_class(c)));
    Mat gens(kSym2Dim + extra.size(), kSym2Dim);
    for (std::size_t i = 0; i < kSym2Dim; ++i)
        gens(i, i) = 1;
    for (std::size_t k = 0; k < extra.size(); ++k)
        for (std::size_t j = 0; j < kSym2Dim; ++j)
            gens(kSym2Dim + k, j) = extra[k][j];
    Lattice lat(gens, fujiki_form_ptr());
    if (lat.rank() != kSym2Dim)
        throw std::logic_error("L has a rank defect");
    return {std::move(lat), d};
}

inline H4Lattice build_L() { return build_L(ExceptionalClass::standard()); }

/// L built once from delta0 and shared.
inline const H4Lattice& standard_L() {
    static const H4Lattice l = build_L();
    return l;
}

// ---------------------------------------------------------------------------
// The torsion group T4 = L / Sym^2. Elements are represented by lifts in L;
// since Sym^2 is Z^276 in these coordinates, two lifts agree iff their
// difference is integral and the order of a lift is its denominator.

inline Int t4_order(const H4Class& lift) { return common_denominator(lift.coords()); }

inline bool t4_equal(const H4Class& a, const H4Class& b) { return (a - b).is_integral(); }

struct T4Group {
    FiniteAbelianGroup group;
    /// v_delta(x_k) for the 23 basis vectors of Lambda.
    std::vector<H4Class> vbar_lifts;
    H4Class v0bar_lift;
    H4Class w0bar_lift;
};

inline T4Group torsion_T4(const H4Lattice& L) {
    T4Group t;
    t.group = quotient_invariants(sym2_lattice(), L.lattice);
    for (std::size_t k = 0; k < kBBRank; ++k)
        t.vbar_lifts.push_back(build_v_delta(L.delta_used, H2Class::unit(k)));
    t.v0bar_lift = build_v0(L.delta_used);
    t.w0bar_lift = Rat(2) * t.v0bar_lift;
    return t;
}

/// v-bar_delta(a) as an element of T4, via its lift.
inline H4Class vbar(const ExceptionalClass& d, const H2Class& a) { return build_v_delta(d, a); }

/// {z in Z^23 : sum z_k v-bar(x_k) = 0 in T4}.
inline Lattice vbar_kernel(const ExceptionalClass& d) {
    Mat m(kBBRank, kSym2Dim);
    for (std::size_t k = 0; k < kBBRank; ++k) {
        auto v = build_v_delta(d, H2Class::unit(k));
        for (std::size_t j = 0; j < kSym2Dim; ++j)
            m(k, j) = v[j];
    }
    return Lattice(to_rational(integral_combinations(m)), bb_form_ptr());
}

/// psi(theta)(x_k) = (x_k . delta . theta) mod 2 for the 23 basis vectors.
/// The lift must be an integral class.
inline std::vector<int> psi_map(const H4Class& theta_lift, const ExceptionalClass& d) {
    std::vector<int> bits(kBBRank);
    for (std::size_t k = 0; k < kBBRank; ++k) {
        Rat v = fujiki_pair(sym2_embed(H2Class::unit(k), d.cls()), theta_lift);
        if (!is_integer(v))
            throw std::domain_error("psi: lift is not an integral class");
        bits[k] = mpz_odd_p(v.get_num_mpz_t()) ? 1 : 0;
    }
    return bits;
}

inline std::size_t f2_rank(std::vector<std::vector<int>> rows) {
    std::size_t rank = 0;
    const std::size_t cols = rows.empty() ? 0 : rows.front().size();
    for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
        std::size_t p = rank;
        while (p < rows.size() && rows[p][c] == 0)
            ++p;
        if (p == rows.size())
            continue;
        std::swap(rows[p], rows[rank]);
        for (std::size_t i = 0; i < rows.size(); ++i)
            if (i != rank && rows[i][c] != 0)
                for (std::size_t j = c; j < cols; ++j)
                    rows[i][j] ^= rows[rank][j];
        ++rank;
    }
    return rank;
}

struct PsiSummary {
    std::size_t image_rank = 0;  // |im psi| = 2^image_rank
    Int kernel_order;
};

/// psi evaluated on lifts of a generating set of T4 (the basis of L).
inline PsiSummary psi_summary(const H4Lattice& L, const T4Group& t) {
    std::vector<std::vector<int>> rows;
    for (std::size_t i = 0; i < L.lattice.rank(); ++i) {
        H4Class lift(L.lattice.basis_vector(i));
        if (lift.is_integral())
            continue;
        rows.push_back(psi_map(lift, L.delta_used));
    }
    PsiSummary s;
    s.image_rank = f2_rank(std::move(rows));
    s.kernel_order = t.group.order() / pow2(s.image_rank);
    return s;
}

// ---------------------------------------------------------------------------
// The 276 x 276 matrix of the pull-back to the blown-up square of the K3
// surface, in the basis a_i^2, a_i a_j (i<j), D^2, a_i D (rows) against
// e_i, e_ij, e_0, u'_i (columns).

inline ZMat build_M_rho_tilde() {
    const std::size_t n = kK3Rank;
    ZMat a = k3_gram();
    ZMat b = to_integer(inverse(to_rational(a)));
    ZMat m(kSym2Dim, kSym2Dim);
    const std::size_t off_ij = n, e0 = n + n * (n - 1) / 2, off_u = e0 + 1;
    std::size_t r = 0;
    for (std::size_t i = 0; i < n; ++i, ++r) {
        m(r, i) = 2;
        m(r, e0) = a(i, i);
    }
    std::size_t c = off_ij;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j, ++r, ++c) {
            m(r, c) = 1;
            m(r, e0) = a(i, j);
        }
    for (std::size_t i = 0; i < n; ++i)
        m(r, i) = -b(i, i);
    c = off_ij;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j, ++c)
            m(r, c) = -b(i, j);
    m(r, e0) = -1;
    ++r;
    for (std::size_t i = 0; i < n; ++i, ++r)
        m(r, off_u + i) = 2;
    return m;
}

// ---------------------------------------------------------------------------
// The explicit basis in the S^[2] dictionary:
//   v_i = v_delta(a_i) - (a_ii / 2) v0,  u_i = delta a_i,  v_ij = a_i a_j - a_ij v0.

struct ExplicitBasisReport {
    bool ok = true;
    std::vector<std::string> failures;
    /// det of the 276 classes in a basis of L (+-1 for a basis).
    Int basis_det;
    /// v0 coefficient in the delta^2 formula, 10 - tr(BA)/2.
    Rat v0_coefficient;
};

inline ExplicitBasisReport explicit_basis_check(const H4Lattice& L) {
    ExplicitBasisReport rep;
    const auto& d = L.delta_used;
    auto c = complement_data(d);
    const std::size_t n = c.basis.size();
    const auto& A = c.gram;
    const auto& B = c.inverse_gram;
    H4Class v0 = build_v0(d);

    auto fail = [&](const std::string& what) {
        rep.ok = false;
        rep.failures.push_back(what);
    };

    std::vector<H4Class> vi, ui;
    std::vector<std::vector<H4Class>> vij(n, std::vector<H4Class>(n));
    for (std::size_t i = 0; i < n; ++i) {
        if (mpz_odd_p(A(i, i).get_mpz_t()))
            fail("odd diagonal entry in the K3 Gram");
        vi.push_back(build_v_delta(d, c.basis[i]) - make_rat(A(i, i), 2) * v0);
        ui.push_back(sym2_embed(c.basis[i], d.cls()));
        for (std::size_t j = i + 1; j < n; ++j)
            vij[i][j] = sym2_embed(c.basis[i], c.basis[j]) - Rat(A(i, j)) * v0;
    }

    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j)
            if (!(sym2_embed(c.basis[i], c.basis[j]) == vij[i][j] + Rat(A(i, j)) * v0))
                fail("a_i a_j formula at (" + std::to_string(i) + "," + std::to_string(j) + ")");
        if (!(square(c.basis[i]) == Rat(2) * vi[i] + ui[i] + Rat(A(i, i)) * v0))
            fail("a_i^2 formula at " + std::to_string(i));
        if (!(sym2_embed(c.basis[i], d.cls()) == ui[i]))
            fail("a_i delta formula at " + std::to_string(i));
    }

    Rat tr = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            tr += B(i, j) * A(j, i);
    rep.v0_coefficient = Rat(10) - tr / 2;

    H4Class rhs = Rat(-1) * v0;
    for (std::size_t i = 0; i < n; ++i) {
        rhs -= B(i, i) * vi[i];
        rhs -= (B(i, i) / 2) * ui[i];
        for (std::size_t j = i + 1; j < n; ++j)
            rhs -= B(i, j) * vij[i][j];
    }
    if (!(square(d.cls()) == rhs))
        fail("delta^2 formula");
    if (rep.v0_coefficient != -1)
        fail("v0 coefficient of delta^2");

    std::vector<H4Class> all{v0};
    for (std::size_t i = 0; i < n; ++i)
        all.push_back(vi[i]);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            all.push_back(vij[i][j]);
    for (std::size_t i = 0; i < n; ++i)
        all.push_back(ui[i]);
    ZMat coords(all.size(), L.lattice.rank());
    for (std::size_t k = 0; k < all.size(); ++k) {
        if (!L.lattice.contains(all[k].coords())) {
            fail("basis class " + std::to_string(k) + " is not in L");
            return rep;
        }
        auto z = L.lattice.integer_coordinates(all[k].coords());
        for (std::size_t j = 0; j < z.size(); ++j)
            coords(k, j) = z[j];
    }
    rep.basis_det = bareiss_det(coords);
    if (abs(rep.basis_det) != 1)
        fail("the 276 classes do not form a basis of L");
    return rep;
}

}  // namespace hk4
