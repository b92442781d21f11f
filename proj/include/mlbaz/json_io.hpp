#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "mlbaz/function_classes.hpp"
#include "mlbaz/ml_operator.hpp"
#include "mlbaz/series.hpp"
#include "mlbaz/theorems.hpp"

namespace mlbaz::io {

using json = nlohmann::json;  // keys serialize in sorted order (canonical form)

inline json to_json(Cplx z) { return json::array({z.real(), z.imag()}); }

inline Cplx complex_from_json(const json& j) {
    if (j.is_number()) return Cplx(j.get<double>(), 0.0);
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return Cplx(j[0].get<double>(), j[1].get<double>());
    throw std::invalid_argument("expected a number or [re, im] pair");
}

// --- series ---------------------------------------------------------------

inline json to_json(const TruncatedSeries& s) {
    json coeffs = json::array();
    for (std::size_t n = 0; n <= s.order(); ++n) {
        if (!std::isfinite(s[n].real()) || !std::isfinite(s[n].imag()))
            throw std::invalid_argument("series has non-finite coefficients");
        coeffs.push_back(to_json(s[n]));
    }
    return json{{"order", s.order()}, {"coeffs", std::move(coeffs)}};
}

inline TruncatedSeries series_from_json(const json& j) {
    if (!j.is_object() || !j.contains("order") || !j.contains("coeffs"))
        throw std::invalid_argument("series JSON must carry \"order\" and \"coeffs\"");
    const auto order = j.at("order").get<std::size_t>();
    const json& coeffs = j.at("coeffs");
    if (!coeffs.is_array() || coeffs.size() != order + 1)
        throw std::invalid_argument("series JSON: coeffs length must equal order + 1");
    TruncatedSeries s(order);
    for (std::size_t n = 0; n <= order; ++n) {
        s[n] = complex_from_json(coeffs[n]);
        if (!std::isfinite(s[n].real()) || !std::isfinite(s[n].imag()))
            throw std::invalid_argument("series JSON: non-finite coefficient");
    }
    return s;
}

// --- parameters -----------------------------------------------------------

inline json to_json(const OperatorParams& p) {
    return json{{"m", p.m},
                {"lambda", p.lambda},
                {"alpha", to_json(p.alpha)},
                {"beta", to_json(p.beta)}};
}

inline OperatorParams operator_params_from_json(const json& j) {
    OperatorParams p;
    p.m = j.at("m").get<int>();
    p.lambda = j.at("lambda").get<double>();
    p.alpha = complex_from_json(j.at("alpha"));
    p.beta = complex_from_json(j.at("beta"));
    validate(p);
    return p;
}

inline json to_json(const BernardiParams& b) { return json{{"sigma", b.sigma}}; }

inline BernardiParams bernardi_params_from_json(const json& j) {
    BernardiParams b{j.at("sigma").get<double>()};
    validate(b);
    return b;
}

inline json to_json(const ClassParams& cp) {
    return json{{"k", cp.k},
                {"rho", cp.rho},
                {"vartheta", cp.vartheta},
                {"gamma", to_json(cp.gamma)}};
}

// --- measures -------------------------------------------------------------

inline json to_json(const HerglotzMeasure& mu) {
    json atoms = json::array();
    for (const auto& a : mu.atoms) atoms.push_back(json{{"theta", a.theta}, {"w", a.weight}});
    return json{{"atoms", std::move(atoms)}};
}

inline HerglotzMeasure measure_from_json(const json& j) {
    HerglotzMeasure mu;
    for (const auto& a : j.at("atoms"))
        mu.atoms.push_back({a.at("theta").get<double>(), a.at("w").get<double>()});
    return mu;
}

// --- results --------------------------------------------------------------

inline json to_json(const PointwiseResult& r) {
    return json{{"verdict", to_string(r.verdict)}, {"margin", r.margin}};
}

inline json to_json(const IntegralResult& r) {
    return json{{"verdict", to_string(r.verdict)},
                {"margin", r.margin},
                {"max_integral", r.max_integral}};
}

inline json to_json(const TheoremReport& rep, json params = json::object()) {
    return json{{"theorem", rep.theorem_id},
                {"trials", rep.trials},
                {"failures", rep.failures},
                {"min_margin", rep.min_margin},
                {"max_residual", rep.max_residual},
                {"seed", rep.seed},
                {"params", std::move(params)}};
}

inline json to_json(const RadiusResult& r) {
    return json{{"r_formula", r.r_formula}, {"r_empirical", r.r_empirical}, {"gap", r.gap}};
}

}  // namespace mlbaz::io
