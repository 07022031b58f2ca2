#pragma once

#include <json.hpp>

#include "tw/potential.hpp"

namespace tw {

using ordered_json = nlohmann::ordered_json;

inline cplx complex_from_json(const nlohmann::json& j) {
    if (j.is_number()) return cplx(j.get<double>(), 0.0);
    return cplx(j.value("re", 0.0), j.value("im", 0.0));
}

inline ordered_json complex_to_json(cplx z) {
    ordered_json j;
    j["re"] = z.real();
    j["im"] = z.imag();
    return j;
}

inline BoundaryParam boundary_from_json(const nlohmann::json& j) {
    if (j.is_string() && j.get<std::string>() == "inf") return BoundaryParam::inf();
    return BoundaryParam::finite(complex_from_json(j));
}

inline ordered_json boundary_to_json(const BoundaryParam& b) {
    if (b.infinite) return ordered_json("inf");
    return complex_to_json(b.alpha);
}

inline Problem problem_from_json(const nlohmann::json& j) {
    Problem p;
    const auto& pj = j.at("potential");
    std::string kind = pj.at("kind").get<std::string>();
    if (kind == "zero") {
        p.potential = Potential::zero();
    } else if (kind == "constant") {
        p.potential = Potential::constant(complex_from_json(pj.at("value")));
    } else if (kind == "step") {
        std::vector<Potential::Segment> segs;
        for (const auto& s : pj.at("segments"))
            segs.push_back({s.at("x_lo").get<double>(), s.at("x_hi").get<double>(),
                            complex_from_json(s.at("value"))});
        p.potential = Potential::step(std::move(segs));
    } else if (kind == "exp_decay") {
        p.potential = Potential::exp_decay(complex_from_json(pj.at("amplitude")),
                                           pj.at("rate").get<double>());
    } else if (kind == "table") {
        std::vector<double> xs = pj.at("xs").get<std::vector<double>>();
        std::vector<cplx> vals;
        for (const auto& v : pj.at("values")) vals.push_back(complex_from_json(v));
        p.potential = Potential::table(std::move(xs), std::move(vals));
    } else {
        throw Error("unknown potential kind: " + kind);
    }
    if (pj.contains("offset")) p.potential = p.potential.with_offset(complex_from_json(pj.at("offset")));
    if (j.contains("domain_length"))
        p.potential = p.potential.with_domain_length(j.at("domain_length").get<double>());

    p.alpha = boundary_from_json(j.at("alpha"));
    if (j.contains("beta")) p.beta = boundary_from_json(j.at("beta"));
    if (p.potential.domain_finite() != p.beta.has_value())
        throw Error("beta must be present exactly when domain_length is finite");

    if (j.contains("truncation")) {
        const auto& t = j.at("truncation");
        p.truncation.b_min = t.value("b_min", p.truncation.b_min);
        p.truncation.b_max = t.value("b_max", p.truncation.b_max);
        p.truncation.growth = t.value("growth", p.truncation.growth);
        if (!(p.truncation.b_min < p.truncation.b_max) || !(p.truncation.growth > 1.0))
            throw Error("truncation: need b_min < b_max and growth > 1");
    }
    if (j.contains("ode_step")) {
        const auto& s = j.at("ode_step");
        p.ode_step.h_max = s.value("h_max", p.ode_step.h_max);
        p.ode_step.c = s.value("c", p.ode_step.c);
        if (!(p.ode_step.h_max > 0.0) || !(p.ode_step.c > 0.0))
            throw Error("ode_step: h_max and c must be positive");
    }
    return p;
}

inline ordered_json problem_to_json(const Problem& p) {
    ordered_json j;
    ordered_json pj;
    const Potential& pot = p.potential;
    switch (pot.kind()) {
        case Potential::Kind::Zero:
            pj["kind"] = "zero";
            break;
        case Potential::Kind::Constant:
            pj["kind"] = "constant";
            pj["value"] = complex_to_json(pot.const_value());
            break;
        case Potential::Kind::Step: {
            pj["kind"] = "step";
            ordered_json segs = ordered_json::array();
            for (const auto& seg : pot.segments()) {
                ordered_json s;
                s["x_lo"] = seg.x_lo;
                s["x_hi"] = seg.x_hi;
                s["value"] = complex_to_json(seg.value);
                segs.push_back(s);
            }
            pj["segments"] = segs;
            break;
        }
        case Potential::Kind::ExpDecay:
            pj["kind"] = "exp_decay";
            pj["amplitude"] = complex_to_json(pot.amplitude());
            pj["rate"] = pot.rate();
            break;
        case Potential::Kind::Table: {
            pj["kind"] = "table";
            pj["xs"] = pot.table_xs();
            ordered_json vals = ordered_json::array();
            for (const cplx& v : pot.table_values()) vals.push_back(complex_to_json(v));
            pj["values"] = vals;
            break;
        }
        case Potential::Kind::GeneralHermitian:
            throw Error("callback potentials have no JSON form");
    }
    if (pot.offset() != cplx(0.0)) pj["offset"] = complex_to_json(pot.offset());
    j["potential"] = pj;
    j["alpha"] = boundary_to_json(p.alpha);
    if (p.beta) j["beta"] = boundary_to_json(*p.beta);
    if (pot.domain_finite()) j["domain_length"] = pot.domain_length();
    j["truncation"] = {{"b_min", p.truncation.b_min},
                       {"b_max", p.truncation.b_max},
                       {"growth", p.truncation.growth}};
    j["ode_step"] = {{"h_max", p.ode_step.h_max}, {"c", p.ode_step.c}};
    return j;
}

}  // namespace tw
