#pragma once

// JSON encodings: multivectors (rationals as "p/q" strings, floats as
// numbers), symbolic rational functions, operator fixtures, contours, and
// Clifford matrices.

#include <json.hpp>

#include "finespec/cliffpoly.hpp"
#include "finespec/opcalc.hpp"

namespace finespec {

using nlohmann::json;

inline json mv_to_json(const Multivector<Rational>& m) {
    json coeffs = json::array();
    for (const auto& c : m.c) coeffs.push_back(rat_str(c));
    return {{"n", m.n}, {"coeffs", coeffs}};
}

inline json mv_to_json(const Multivector<double>& m) {
    json coeffs = json::array();
    for (double c : m.c) coeffs.push_back(c);
    return {{"n", m.n}, {"coeffs", coeffs}};
}

template <typename S>
Multivector<S> mv_from_json(const json& j) {
    Multivector<S> m(j.at("n").get<int>());
    const auto& coeffs = j.at("coeffs");
    if (coeffs.size() != m.c.size()) throw std::invalid_argument("mv_from_json: bad coeff count");
    for (std::size_t i = 0; i < m.c.size(); ++i) {
        if constexpr (std::is_same_v<S, Rational>)
            m.c[i] = coeffs[i].is_string() ? rat_parse(coeffs[i].get<std::string>())
                                           : Rational(coeffs[i].get<long>());
        else
            m.c[i] = coeffs[i].is_string() ? rat_parse(coeffs[i].get<std::string>()).get_d()
                                           : coeffs[i].get<double>();
    }
    return m;
}

template <typename S>
json paravector_to_json(const Paravector<S>& p) {
    json a = json::array();
    if constexpr (std::is_same_v<S, Rational>) {
        a.push_back(rat_str(p.x0));
        for (const auto& v : p.xv) a.push_back(rat_str(v));
    } else {
        a.push_back(p.x0);
        for (const auto& v : p.xv) a.push_back(v);
    }
    return a;
}

template <typename S>
Paravector<S> paravector_from_json(const json& j) {
    if (!j.is_array() || j.empty()) throw std::invalid_argument("paravector: expected [x0, x1, ...]");
    auto get = [&](const json& e) -> S {
        if constexpr (std::is_same_v<S, Rational>)
            return e.is_string() ? rat_parse(e.get<std::string>()) : Rational(e.get<long>());
        else
            return e.is_string() ? S(rat_parse(e.get<std::string>()).get_d()) : e.get<double>();
    };
    Paravector<S> p;
    p.x0 = get(j[0]);
    for (std::size_t i = 1; i < j.size(); ++i) p.xv.push_back(get(j[i]));
    return p;
}

inline json crf_to_json(const CliffordRationalFn& f) {
    const int nvars = f.num.n + 1;
    json num = json::array();
    for (const auto& tm : f.num.t) {
        json exps = json::array();
        for (int v = 0; v < nvars; ++v) exps.push_back(exp_get(tm.e, v));
        Multivector<Rational> mv(f.num.n);
        mv.c[tm.blade] = tm.c;
        num.push_back({{"exp", exps}, {"coeff", mv_to_json(mv)}});
    }
    CliffordPoly den = f.den_exp == 0 ? cp_const_scalar(f.num.n, 1)
                                      : cp_pow(f.den_base, f.den_exp);
    json denj = json::array();
    for (const auto& tm : den.t) {
        json exps = json::array();
        for (int v = 0; v < nvars; ++v) exps.push_back(exp_get(tm.e, v));
        denj.push_back({{"exp", exps}, {"coeff", rat_str(tm.c)}});
    }
    return {{"n", f.num.n}, {"num", num}, {"den", denj}};
}

template <typename S>
json op_to_json(const CommutingParavectorOp<S>& T) {
    json mats = json::array();
    for (const auto& m : T.mats) {
        json rows = json::array();
        for (int i = 0; i < T.d; ++i) {
            json row = json::array();
            for (int j = 0; j < T.d; ++j) {
                if constexpr (std::is_same_v<S, Rational>)
                    row.push_back(rat_str(m[std::size_t(i) * T.d + j]));
                else
                    row.push_back(m[std::size_t(i) * T.d + j]);
            }
            rows.push_back(row);
        }
        mats.push_back(rows);
    }
    json cert;
    if (T.eigenparavectors) {
        json eig = json::array();
        for (const auto& lam : *T.eigenparavectors) eig.push_back(paravector_to_json(lam));
        cert = {{"eigenparavectors", eig}};
    } else {
        cert = nullptr;
    }
    return {{"n", T.n}, {"d", T.d}, {"mats", mats}, {"certificate", cert}};
}

template <typename S>
CommutingParavectorOp<S> op_from_json(const json& j) {
    CommutingParavectorOp<S> T;
    T.n = j.at("n").get<int>();
    T.d = j.at("d").get<int>();
    const auto& mats = j.at("mats");
    if (int(mats.size()) != T.n + 1)
        throw std::invalid_argument("operator fixture: need n+1 component matrices");
    for (const auto& mj : mats) {
        std::vector<S> m;
        m.reserve(std::size_t(T.d) * T.d);
        for (const auto& row : mj)
            for (const auto& e : row) {
                if constexpr (std::is_same_v<S, Rational>)
                    m.push_back(e.is_string() ? rat_parse(e.get<std::string>())
                                              : Rational(e.get<long>()));
                else
                    m.push_back(e.is_string() ? S(rat_parse(e.get<std::string>()).get_d())
                                              : e.get<double>());
            }
        if (int(m.size()) != T.d * T.d) throw std::invalid_argument("operator fixture: bad matrix");
        T.mats.push_back(std::move(m));
    }
    if (j.contains("certificate") && !j.at("certificate").is_null()) {
        std::vector<Paravector<S>> eig;
        for (const auto& e : j.at("certificate").at("eigenparavectors"))
            eig.push_back(paravector_from_json<S>(e));
        T.eigenparavectors = std::move(eig);
    }
    return T;
}

inline json contour_to_json(const SliceContour& c) {
    return {{"I", c.unit},
            {"center", c.center},
            {"radius", c.radius},
            {"nodes", c.nodes},
            {"orientation", c.orientation}};
}

inline std::vector<SliceContour> contours_from_json(const json& j) {
    auto one = [](const json& e) {
        SliceContour c;
        c.unit = e.at("I").get<std::vector<double>>();
        c.center = e.at("center").get<double>();
        c.radius = e.at("radius").get<double>();
        c.nodes = e.at("nodes").get<long>();
        if (e.contains("orientation")) c.orientation = e.at("orientation").get<int>();
        validate_contour(c);
        return c;
    };
    std::vector<SliceContour> out;
    if (j.is_array())
        for (const auto& e : j) out.push_back(one(e));
    else
        out.push_back(one(j));
    return out;
}

template <typename S>
json cm_to_json(const CliffordMatrix<S>& m) {
    json rows = json::array();
    for (int i = 0; i < m.d; ++i) {
        json row = json::array();
        for (int j = 0; j < m.d; ++j) row.push_back(mv_to_json(m.at(i, j)));
        rows.push_back(row);
    }
    return {{"n", m.n}, {"d", m.d}, {"entries", rows}};
}

}  // namespace finespec
