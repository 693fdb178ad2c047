#pragma once

#include <array>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "p2bundle/bundle.hpp"
#include "p2bundle/errors.hpp"
#include "p2bundle/field.hpp"
#include "p2bundle/ideal.hpp"
#include "p2bundle/scheme.hpp"
#include "p2bundle/verify.hpp"

namespace p2b {

using json = nlohmann::ordered_json;

// --- scheme files ---------------------------------------------------------
//
// { "field": {"type":"fp","p":2147483647} | {"type":"q"},
//   "points": [["a","b","c"], ...],
//   "arcs": [{"base":[...], "v":[...], "w":[...], "length": 2}, ...] }
//
// Coordinates are decimal strings; rationals may be written "p/q".

inline FieldSpec field_spec_from_json(const json& j) {
    if (!j.is_object() || !j.contains("type"))
        throw SchemeError("field descriptor must be an object with a \"type\"");
    const std::string type = j.at("type").get<std::string>();
    if (type == "fp") {
        std::uint64_t p = kDefaultPrime;
        if (j.contains("p")) {
            if (j.at("p").is_string())
                p = std::stoull(j.at("p").get<std::string>());
            else
                p = j.at("p").get<std::uint64_t>();
        }
        auto spec = FieldSpec::fp(p);
        spec.validate();
        return spec;
    }
    if (type == "q") return FieldSpec::rationals();
    throw SchemeError("unknown field type \"" + type + "\"");
}

inline json field_spec_to_json(const FieldSpec& s) {
    if (s.kind == FieldSpec::Kind::Fp) return {{"type", "fp"}, {"p", s.p}};
    return {{"type", "q"}};
}

namespace detail {

template <field_context F>
typename F::Elem elem_from_json(const F& f, const json& j) {
    if (j.is_string()) return f.from_string(j.get<std::string>());
    if (j.is_number_integer()) return f.from_int(j.get<long long>());
    throw SchemeError("coordinates must be decimal strings");
}

template <field_context F>
std::array<typename F::Elem, 3> triple_from_json(const F& f, const json& j) {
    if (!j.is_array() || j.size() != 3)
        throw SchemeError("a coordinate triple must be an array of three entries");
    return {elem_from_json(f, j[0]), elem_from_json(f, j[1]),
            elem_from_json(f, j[2])};
}

template <field_context F>
json triple_to_json(const F& f, const std::array<typename F::Elem, 3>& t) {
    return json::array({f.to_string(t[0]), f.to_string(t[1]), f.to_string(t[2])});
}

}  // namespace detail

template <field_context F>
ZeroDimScheme<F> scheme_from_json(const F& f, const json& doc) {
    std::vector<ProjPoint<F>> points;
    std::vector<Arc<F>> arcs;
    if (doc.contains("points"))
        for (const auto& pj : doc.at("points"))
            points.push_back(make_point(f, detail::triple_from_json(f, pj)));
    if (doc.contains("arcs"))
        for (const auto& aj : doc.at("arcs")) {
            Arc<F> arc{make_point(f, detail::triple_from_json(f, aj.at("base"))),
                       detail::triple_from_json(f, aj.at("v")),
                       detail::triple_from_json(f, aj.at("w")),
                       aj.at("length").get<int>()};
            arcs.push_back(std::move(arc));
        }
    return ZeroDimScheme<F>(f, std::move(points), std::move(arcs));
}

template <field_context F>
json scheme_to_json(const ZeroDimScheme<F>& z) {
    const F& f = z.field();
    json doc;
    doc["field"] = field_spec_to_json(spec_of(f));
    doc["points"] = json::array();
    for (const auto& p : z.points())
        doc["points"].push_back(detail::triple_to_json(f, p.coords));
    doc["arcs"] = json::array();
    for (const auto& a : z.arcs()) {
        json aj;
        aj["base"] = detail::triple_to_json(f, a.base.coords);
        aj["v"] = detail::triple_to_json(f, a.dir);
        aj["w"] = detail::triple_to_json(f, a.second);
        aj["length"] = a.length;
        doc["arcs"].push_back(std::move(aj));
    }
    return doc;
}

// --- classification output -------------------------------------------------

template <field_context F>
json classification_json(const ZeroDimScheme<F>& z) {
    const long long u = z.degree();
    const auto gb = graded_betti(z);
    json out;
    out["u"] = u;
    if (u >= 1 && u <= 5)
        out["label"] = classify_resolution(z).label();
    else
        out["label"] = nullptr;
    out["generators"] = gb.generators;
    out["syzygies"] = gb.syzygies;
    out["hilbert"] = ideal_hilbert_values(z);
    return out;
}

inline std::string classification_text(const json& c) {
    std::ostringstream os;
    os << "u: " << c.at("u").get<long long>() << "\n";
    os << "label: "
       << (c.at("label").is_null() ? std::string("(none: degree above 5)")
                                   : c.at("label").get<std::string>())
       << "\n";
    os << "generators: " << c.at("generators").dump() << "\n";
    os << "syzygies: " << c.at("syzygies").dump() << "\n";
    os << "hilbert h0(I_Z(d)), d = 0..: " << c.at("hilbert").dump() << "\n";
    return os.str();
}

// --- cohomology tables ------------------------------------------------------

template <field_context F>
json table_json(const SerreBundle<F>& e, const CohomologyTable& t) {
    json out;
    out["c1"] = e.c1();
    out["c2"] = e.c2();
    out["r"] = e.r();
    out["stable"] = e.stable();
    out["rows"] = json::array();
    for (int k = t.k_min; k <= t.k_max; ++k) {
        const auto& row = t.row(k);
        out["rows"].push_back({{"k", k},
                               {"h0", row.h0},
                               {"h1", row.h1},
                               {"h2", row.h2},
                               {"chi", row.chi}});
    }
    return out;
}

inline std::string table_text(const CohomologyTable& t) {
    const auto width = [&](int k) {
        std::size_t w = std::to_string(k).size();
        const auto& row = t.row(k);
        for (long long v : {row.h0, row.h1, row.h2})
            w = std::max(w, std::to_string(v).size());
        return w;
    };
    std::ostringstream os;
    const std::array<std::string, 4> names = {"k ", "h0", "h1", "h2"};
    for (int line = 0; line < 4; ++line) {
        os << names[static_cast<std::size_t>(line)];
        for (int k = t.k_min; k <= t.k_max; ++k) {
            long long v = 0;
            const auto& row = t.row(k);
            switch (line) {
                case 0: v = k; break;
                case 1: v = row.h0; break;
                case 2: v = row.h1; break;
                case 3: v = row.h2; break;
            }
            os << " " << std::setw(static_cast<int>(width(k))) << v;
        }
        os << "\n";
    }
    return os.str();
}

// --- verifier summaries -----------------------------------------------------

inline std::string status_label(CheckReport::Status s) {
    switch (s) {
        case CheckReport::Status::Pass: return "pass";
        case CheckReport::Status::Fail: return "fail";
        case CheckReport::Status::Flag: return "flag";
    }
    return "?";
}

inline json report_json(const CheckReport& r) {
    json details;
    for (const auto& [k, v] : r.details) details[k] = v;
    return {{"id", r.check_id},
            {"instance", r.instance_digest},
            {"status", status_label(r.status)},
            {"details", details}};
}

inline json summary_json(const EnsembleSummary& s) {
    json config;
    config["trials"] = s.config.trials;
    config["u_range"] = json::array({s.config.u_min, s.config.u_max});
    config["stability_mix"] = mix_label(s.config.mix);
    config["field"] = field_spec_to_json(s.config.field);
    config["seed"] = s.config.seed;

    json checks = json::array();
    for (const auto& [id, c] : s.checks)
        checks.push_back({{"id", id}, {"pass", c.pass}, {"fail", c.fail}, {"flag", c.flag}});

    json failures = json::array();
    for (const auto& r : s.failures) failures.push_back(report_json(r));

    return {{"config", config}, {"checks", checks}, {"failures", failures}};
}

}  // namespace p2b
