#pragma once

/// JSON wire formats. Rationals always travel as "num/den" strings; no
/// floating point appears anywhere in I/O.
///
/// Presentation schema:
///   {"finite": ["1/2", "2/3"]}
///   {"family": "prime_complement", "truncation": 25}
///   {"family": "geometric", "ratio": "2/3"}
///   {"family": "constructed", "j": 1, "steps": 8}

#include <json.hpp>

#include <string>
#include <vector>

#include "puiseux/constructions.hpp"
#include "puiseux/engine.hpp"
#include "puiseux/errors.hpp"
#include "puiseux/invariants.hpp"
#include "puiseux/presentation.hpp"
#include "puiseux/rational.hpp"

namespace puiseux {

using Json = nlohmann::json;

inline Json to_json(const PosRational& q) { return q.to_string(); }

inline PosRational rational_from_json(const Json& j) {
    if (!j.is_string())
        throw parse_error("rational must be a \"num/den\" string");
    return PosRational::parse(j.get<std::string>());
}

inline Json to_json(const Presentation& p) {
    Json out;
    if (p.is_finite()) {
        Json gens = Json::array();
        for (const auto& g : p.generators()) gens.push_back(to_json(g));
        out["finite"] = std::move(gens);
        return out;
    }
    const FamilySpec& spec = p.family_spec();
    out["family"] = std::string(family_name(spec.kind));
    if (spec.kind == Family::geometric) out["ratio"] = to_json(spec.ratio);
    if (spec.kind == Family::constructed) out["j"] = spec.index;
    out["truncation"] = p.default_truncation();
    return out;
}

inline Presentation presentation_from_json(const Json& j) {
    if (!j.is_object())
        throw parse_error("presentation must be a JSON object");
    if (j.contains("finite")) {
        if (!j["finite"].is_array())
            throw parse_error("\"finite\" must be an array of rationals");
        std::vector<PosRational> gens;
        for (const auto& item : j["finite"]) gens.push_back(rational_from_json(item));
        return Presentation::finite(std::move(gens));
    }
    if (!j.contains("family"))
        throw parse_error("presentation needs \"finite\" or \"family\"");
    auto kind = family_from_name(j["family"].get<std::string>());
    if (!kind)
        throw parse_error("unknown family \"" + j["family"].get<std::string>() + "\"");
    FamilySpec spec;
    if (*kind == Family::geometric) {
        if (!j.contains("ratio"))
            throw parse_error("geometric family needs a \"ratio\"");
        spec = FamilySpec::geometric(rational_from_json(j["ratio"]));
    } else if (*kind == Family::constructed) {
        if (!j.contains("j"))
            throw parse_error("constructed family needs an index \"j\"");
        spec = FamilySpec::constructed(j["j"].get<std::uint32_t>());
    } else {
        spec = FamilySpec::primes(*kind);
    }
    std::uint32_t truncation = 20;
    if (*kind == Family::constructed && j.contains("steps"))
        truncation = 1 + 2 * j["steps"].get<std::uint32_t>();
    if (j.contains("truncation")) truncation = j["truncation"].get<std::uint32_t>();
    return Presentation::family(std::move(spec), truncation);
}

inline Presentation presentation_from_string(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw parse_error(std::string("invalid JSON: ") + e.what(),
                          static_cast<std::size_t>(e.byte));
    }
    return presentation_from_json(j);
}

inline Json to_json(const TriState& t) {
    switch (t.kind()) {
        case TriState::Kind::certified: return Json{{"certified", t.value()}};
        case TriState::Kind::checked_up_to:
            return Json{{"checked_up_to", t.level()}, {"observed", t.value()}};
        case TriState::Kind::unknown: return Json("unknown");
    }
    return Json();
}

inline Json to_json(const MonoidFlags& f) {
    return Json{{"atomic", to_json(f.atomic)},
                {"bounded", to_json(f.bounded)},
                {"strongly_bounded", to_json(f.strongly_bounded)},
                {"primary", to_json(f.primary)},
                {"zero_limit_point", to_json(f.zero_limit_point)},
                {"has_stable_atom", to_json(f.has_stable_atom)}};
}

inline Json to_json(const Factorization& z) {
    Json atoms = Json::array();
    for (const auto& a : z.atoms()) atoms.push_back(to_json(a));
    return Json{{"atoms", std::move(atoms)},
                {"exponents", z.exponents()},
                {"length", z.length()},
                {"value", to_json(z.value())}};
}

inline Json to_json(const WitnessCertificate& c) {
    return Json{{"x", to_json(c.x)}, {"z1", to_json(c.z1)}, {"z2", to_json(c.z2)}};
}

inline Json to_json(const LengthSet& ls) {
    return Json{{"lengths", ls.lengths}, {"exact", ls.exact}};
}

inline Json status_json(UkStatus status, std::uint32_t truncation) {
    if (status == UkStatus::exact) return Json("exact");
    return Json{{"under_approx_at", truncation}};
}

inline Json to_json(const UnionOfLengths& u) {
    Json out{{"k", u.k},
             {"lengths", u.lengths},
             {"status", status_json(u.status, u.truncation)}};
    if (u.bound) out["bound"] = to_json(*u.bound);
    return out;
}

inline Json to_json(const ConstructionState& state) {
    Json gens = Json::array();
    for (const auto& g : state.generators()) gens.push_back(to_json(g));
    Json history = Json::array();
    for (const auto& rec : state.history())
        history.push_back(Json{{"a", to_json(rec.base_atom)},
                               {"q", rec.q.str()},
                               {"b1", to_json(rec.b1)},
                               {"b2", to_json(rec.b2)}});
    return Json{{"j", state.index()},
                {"generators", std::move(gens)},
                {"history", std::move(history)}};
}

inline Json to_json(const StableAtomReport& report) {
    Json classes = Json::array();
    for (const auto& [num, members] : report.classes) {
        Json atoms = Json::array();
        for (const auto& a : members) atoms.push_back(to_json(a));
        classes.push_back(Json{{"numerator", num.str()}, {"atoms", std::move(atoms)}});
    }
    Json out{{"classes", std::move(classes)},
             {"stable", to_json(report.stable)},
             {"largest_class", report.largest_class}};
    if (report.stable_numerator) out["stable_numerator"] = report.stable_numerator->str();
    return out;
}

} // namespace puiseux
