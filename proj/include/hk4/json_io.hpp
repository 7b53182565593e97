#pragma once

// JSON encodings. Rationals are "p/q" strings (integers as "n"), matrices
// are arrays of rows, H2 classes are arrays of 23 integers (strings or
// numbers on input), H4 classes are sparse objects {"(i,j)": "p/q"}.

#include "hk4/blowup_corr.hpp"
#include "hk4/deformation_fix.hpp"
#include "hk4/hodge_classes.hpp"

#include <json.hpp>

#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace hk4 {

using Json = nlohmann::ordered_json;

inline Json to_json(const Rat& r) { return r.get_str(); }
inline Json to_json(const Int& n) { return n.get_str(); }

inline Rat rat_from_json(const Json& j) {
    if (j.is_number_integer())
        return Rat(Int(std::to_string(j.get<long long>())));
    if (j.is_string())
        return parse_rat(j.get<std::string>());
    throw std::invalid_argument("expected a rational as string or integer: " + j.dump());
}

inline Int int_from_json(const Json& j) {
    Rat r = rat_from_json(j);
    if (!is_integer(r))
        throw std::invalid_argument("expected an integer: " + j.dump());
    return r.get_num();
}

template <typename T>
Json to_json(const Matrix<T>& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j)
            row.push_back(m(i, j).get_str());
        rows.push_back(std::move(row));
    }
    return rows;
}

inline Mat mat_from_json(const Json& j) {
    if (!j.is_array())
        throw std::invalid_argument("matrix must be an array of rows");
    const std::size_t rows = j.size();
    const std::size_t cols = rows ? j[0].size() : 0;
    Mat m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        if (!j[i].is_array() || j[i].size() != cols)
            throw std::invalid_argument("ragged matrix");
        for (std::size_t k = 0; k < cols; ++k)
            m(i, k) = rat_from_json(j[i][k]);
    }
    return m;
}

inline Json to_json(const H2Class& a) {
    Json arr = Json::array();
    for (const auto& x : a.coords()) {
        if (x.fits_slong_p())
            arr.push_back(x.get_si());
        else
            arr.push_back(x.get_str());
    }
    return arr;
}

inline H2Class h2_from_json(const Json& j) {
    if (!j.is_array() || j.size() != kBBRank)
        throw std::invalid_argument("H2 class must be an array of 23 integers");
    H2Class a;
    for (std::size_t i = 0; i < kBBRank; ++i)
        a[i] = int_from_json(j[i]);
    return a;
}

inline Json to_json(const H4Class& x) {
    Json obj = Json::object();
    const auto& pairs = monomial_pairs();
    for (std::size_t k = 0; k < kSym2Dim; ++k)
        if (sgn(x[k]) != 0)
            obj["(" + std::to_string(pairs[k].first) + "," + std::to_string(pairs[k].second) + ")"] =
                x[k].get_str();
    return obj;
}

inline H4Class h4_from_json(const Json& j) {
    if (j.is_array()) {
        if (j.size() != kSym2Dim)
            throw std::invalid_argument("dense H4 class needs 276 entries");
        std::vector<Rat> c;
        for (const auto& x : j)
            c.push_back(rat_from_json(x));
        return H4Class(std::move(c));
    }
    if (!j.is_object())
        throw std::invalid_argument("H4 class must be an object or an array");
    H4Class x;
    for (const auto& [key, value] : j.items()) {
        std::size_t a = 0, b = 0;
        char open = 0, comma = 0, close = 0;
        std::istringstream is(key);
        if (!(is >> open >> a >> comma >> b >> close) || open != '(' || comma != ',' ||
            close != ')' || a >= kBBRank || b >= kBBRank)
            throw std::invalid_argument("bad H4 key: " + key);
        if (a > b)
            std::swap(a, b);
        x[monomial_index(a, b)] += rat_from_json(value);
    }
    return x;
}

inline Json to_json(const FiniteAbelianGroup& g) {
    Json f = Json::array();
    for (const auto& d : g.invariant_factors)
        f.push_back(d.get_str());
    return {{"invariant_factors", f}, {"free_rank", g.free_rank}, {"text", g.to_string()}};
}

/// Lattice basis as rows (HNF order).
inline Json lattice_to_json(const Lattice& lat) { return to_json(lat.basis()); }

inline Json to_json(const PicardData& p) {
    Json basis = Json::array();
    for (const auto& b : p.picard_basis())
        basis.push_back(to_json(b));
    return {{"picard_basis", basis}, {"lambda0", to_json(p.lambda0())}};
}

/// {"picard": [[...],...], "lambda0": [...]} or just {"lambda0": [...]}.
inline PicardData picard_from_json(const Json& j) {
    if (!j.contains("lambda0"))
        throw std::invalid_argument("Picard data needs lambda0");
    H2Class l0 = h2_from_json(j.at("lambda0"));
    if (!j.contains("picard"))
        return PicardData::rank_one(l0);
    std::vector<H2Class> gens;
    for (const auto& g : j.at("picard"))
        gens.push_back(h2_from_json(g));
    return PicardData(gens, l0);
}

inline Json to_json(const MinimalityReport& r) {
    Json basis = Json::array();
    for (std::size_t k = 0; k < r.search_lattice.rank(); ++k)
        basis.push_back(to_json(H4Class(r.search_lattice.basis_vector(k))));
    Json j{{"feasible", r.feasible},
           {"g", r.image_generator.get_str()},
           {"search_lattice", basis}};
    j["witness"] = r.witness ? to_json(*r.witness) : Json(nullptr);
    return j;
}

inline Json to_json(const FixInstance& inst) {
    Json s = Json::array();
    for (const auto& x : inst.s)
        s.push_back(x.get_str());
    return {{"n", inst.n()}, {"A", to_json(inst.a)}, {"s", s}};
}

inline Json to_json(const FixSolution& sol) {
    Json basis = Json::array();
    for (const auto& e : sol.basis)
        basis.push_back({{"C", to_json(e.c)}, {"c0", e.c0.get_str()}});
    return {{"dimension", sol.dimension()}, {"basis", basis}};
}

inline Json to_json(const JacobianSearchReport& r, const std::vector<Int>& multipliers) {
    Json sols = Json::array();
    for (const auto& s : r.solutions) {
        Json c = Json::array();
        for (const auto& x : s)
            c.push_back(x.get_str());
        sols.push_back(c);
    }
    Json m = Json::array();
    for (const auto& x : multipliers)
        m.push_back(x.get_str());
    return {{"multipliers", m},
            {"bound", r.bound.get_str()},
            {"examined", r.examined},
            {"solutions", sols},
            {"parity_certificate", r.parity_certificate}};
}

}  // namespace hk4
