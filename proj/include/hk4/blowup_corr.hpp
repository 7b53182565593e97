#pragma once

// Blow-ups of a fourfold's H^4 lattice and the scalar bookkeeping for
// correspondences: receiving multipliers, the residue transform and
// combinations of correspondences over disjoint surfaces.

#include "hk4/matrix.hpp"

#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace hk4 {

/// H^4 with its integral pairing (Gram matrix in the chosen basis) and the
/// transcendental sublattice as integer row vectors in that basis.
struct FourfoldH4 {
    ZMat gram;
    ZMat transcendental;

    std::size_t rank() const { return gram.rows(); }

    void validate() const {
        if (gram.rows() != gram.cols() || !(gram == gram.transpose()))
            throw std::invalid_argument("H4 Gram must be square and symmetric");
        if (transcendental.rows() > 0 && transcendental.cols() != gram.rows())
            throw std::invalid_argument("transcendental rows have the wrong length");
    }
};

namespace blowup {
struct Point {};
struct Curve {
    Int normal_degree;
};
struct Surface {
    ZMat h2_gram;
    ZMat transcendental_sub;  // rows in the basis of h2_gram
};
}  // namespace blowup

using BlowupCenter = std::variant<blowup::Point, blowup::Curve, blowup::Surface>;

/// Gram of the new summand contributed by the exceptional divisor.
inline ZMat exceptional_block(const BlowupCenter& c) {
    if (std::holds_alternative<blowup::Point>(c)) {
        ZMat g(1, 1);
        g(0, 0) = -1;
        return g;
    }
    if (auto* cv = std::get_if<blowup::Curve>(&c)) {
        ZMat g(2, 2);
        g(0, 0) = cv->normal_degree;
        g(0, 1) = g(1, 0) = -1;
        return g;
    }
    const auto& s = std::get<blowup::Surface>(c);
    if (s.h2_gram.rows() != s.h2_gram.cols() || !(s.h2_gram == s.h2_gram.transpose()))
        throw std::invalid_argument("surface H2 Gram must be symmetric");
    ZMat g = s.h2_gram;
    for (std::size_t i = 0; i < g.rows(); ++i)
        for (std::size_t j = 0; j < g.cols(); ++j)
            g(i, j) = -g(i, j);
    return g;
}

inline FourfoldH4 blowup_h4(const FourfoldH4& y, const BlowupCenter& c) {
    y.validate();
    ZMat block = exceptional_block(c);
    const std::size_t n = y.rank(), k = block.rows();
    FourfoldH4 out{ZMat(n + k, n + k), ZMat(0, n + k)};
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            out.gram(i, j) = y.gram(i, j);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            out.gram(n + i, n + j) = block(i, j);

    std::vector<std::vector<Int>> rows;
    for (std::size_t r = 0; r < y.transcendental.rows(); ++r) {
        std::vector<Int> v(n + k);
        for (std::size_t j = 0; j < n; ++j)
            v[j] = y.transcendental(r, j);
        rows.push_back(std::move(v));
    }
    if (auto* s = std::get_if<blowup::Surface>(&c)) {
        if (s->transcendental_sub.rows() > 0 && s->transcendental_sub.cols() != k)
            throw std::invalid_argument("surface transcendental rows have the wrong length");
        for (std::size_t r = 0; r < s->transcendental_sub.rows(); ++r) {
            std::vector<Int> v(n + k);
            for (std::size_t j = 0; j < k; ++j)
                v[n + j] = s->transcendental_sub(r, j);
            rows.push_back(std::move(v));
        }
    }
    out.transcendental = ZMat(rows.size(), n + k);
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t j = 0; j < n + k; ++j)
            out.transcendental(r, j) = rows[r][j];
    return out;
}

/// Receiving index e on the cubic (against -(x.y)) is the multiplier e
/// against b on the variety of lines, since b(Phi x, Phi y) = -(x.y).
inline Int receiving_multiplier_on_F(const Int& e_on_x) { return e_on_x; }

enum class ResidueConvention { Quadratic, PaperLiteral };

inline std::string to_string(ResidueConvention c) {
    return c == ResidueConvention::Quadratic ? "quadratic" : "paper";
}

inline ResidueConvention parse_convention(const std::string& s) {
    if (s == "quadratic")
        return ResidueConvention::Quadratic;
    if (s == "paper")
        return ResidueConvention::PaperLiteral;
    throw std::invalid_argument("unknown convention: " + s);
}

/// The correspondence is (3 - 2e) times the old one. Quadratic scales the
/// pairing by (2e - 3)^2, PaperLiteral by (2e - 3).
inline Int residue_transform(const Int& e0, const Int& e, ResidueConvention conv) {
    if (e < 2)
        throw std::invalid_argument("residue transform needs curve degree e >= 2");
    Int k = 2 * e - 3;
    return conv == ResidueConvention::Quadratic ? Int(k * k * e0) : Int(k * e0);
}

struct Correspondence {
    std::string label;
    Int multiplier;
};

struct Combination {
    std::vector<std::pair<Int, Correspondence>> terms;
};

/// sum c_i^2 e_i; labels must be distinct (disjoint surfaces).
inline Int combine_pairing(const Combination& c) {
    std::set<std::string> seen;
    Int total = 0;
    for (const auto& [coef, corr] : c.terms) {
        if (!seen.insert(corr.label).second)
            throw std::invalid_argument("repeated correspondence label: " + corr.label);
        total += coef * coef * corr.multiplier;
    }
    return total;
}

struct JacobianSearchReport {
    std::vector<std::vector<Int>> solutions;  // coefficient vectors
    std::uint64_t examined = 0;
    /// Set when every multiplier is even: sum c^2 e is even, never 1.
    bool parity_certificate = false;
    Int bound;
};

/// All coefficient vectors with |c_i| <= bound and sum c_i^2 e_i = 1.
inline JacobianSearchReport potential_jacobian_search(const std::vector<Int>& multipliers,
                                                      const Int& bound) {
    if (bound < 1)
        throw std::invalid_argument("coefficient bound must be at least 1");
    JacobianSearchReport rep;
    rep.bound = bound;
    rep.parity_certificate = !multipliers.empty();
    for (const auto& e : multipliers)
        rep.parity_certificate = rep.parity_certificate && mpz_even_p(e.get_mpz_t());

    const std::size_t n = multipliers.size();
    if (n == 0)
        return rep;
    std::vector<Int> c(n, -bound);
    while (true) {
        ++rep.examined;
        Int total = 0;
        for (std::size_t i = 0; i < n; ++i)
            total += c[i] * c[i] * multipliers[i];
        if (total == 1)
            rep.solutions.push_back(c);
        std::size_t i = 0;
        while (i < n && c[i] == bound)
            c[i++] = -bound;
        if (i == n)
            break;
        ++c[i];
    }
    return rep;
}

inline Combination to_combination(const std::vector<Int>& coefs, const std::vector<Int>& mults) {
    Combination c;
    for (std::size_t i = 0; i < coefs.size(); ++i)
        c.terms.push_back({coefs[i], {"S" + std::to_string(i + 1), mults[i]}});
    return c;
}

/// Indices of the two rational maps attached to a K3 surface S: -1 and 1.
inline std::pair<int, int> rational_map_indices() { return {-1, 1}; }

}  // namespace hk4
