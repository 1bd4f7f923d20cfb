#include "porolab/report.hpp"

#include "porolab/dsl.hpp"
#include "porolab/gapseq.hpp"
#include "porolab/porosity.hpp"

#include <regex>
#include <sstream>

namespace porolab {

using nlohmann::json;
using nlohmann::ordered_json;

ordered_json verdict_json(const TailVerdict& v) {
    ordered_json j;
    j["status"] = to_string(v.status);
    j["depth"] = v.depth;
    if (!v.law_tag.empty()) j["law_tag"] = v.law_tag;
    if (v.tail_stat) j["tail_stat"] = v.tail_stat->str();
    if (v.witness_index) j["witness_index"] = *v.witness_index;
    if (!v.note.empty()) j["note"] = v.note;
    return j;
}

namespace {

ordered_json finite_report(const SetSpec& spec, const FiniteSet& e, std::size_t depth) {
    ordered_json rep;
    rep["tool"] = kToolName;
    rep["version"] = kToolVersion;
    ordered_json setj;
    setj["name"] = spec.name;
    setj["shape"] = shape_name(spec.shape);
    setj["origin_in_set"] = spec.origin_in_set;
    setj["spec"] = print_spec(spec);
    setj["accumulates_at_zero"] = false;
    rep["set"] = std::move(setj);
    ordered_json depthj;
    depthj["requested"] = depth;
    depthj["blocks_used"] = e.blocks().size();
    depthj["gaps_used"] = e.blocks().size() > 1 ? e.blocks().size() - 1 : 0;
    depthj["clamped"] = false;
    rep["depth"] = std::move(depthj);

    PorosityValue p = porosity_at_zero(e);
    ordered_json por;
    por["p_plus_lower"] = p.lower.str();
    por["p_plus_upper"] = p.upper.str();
    por["exact"] = p.exact;
    por["strongly_porous"] = verdict_json(p.is_strongly_porous);
    rep["porosity"] = std::move(por);

    ordered_json gapsj;
    gapsj["note"] = "0 is not an accumulation point: the I~_E machinery is vacuous";
    rep["gaps"] = std::move(gapsj);

    CspCertificate cert = csp_certify(e);
    ordered_json cspj;
    cspj["status"] = to_string(cert.status);
    cspj["mechanism"] = cert.mechanism;
    cspj["verdict"] = verdict_json(cert.verdict);
    rep["csp"] = std::move(cspj);

    ordered_json consts;
    consts["C_E"] = "0";
    consts["C_E_verdict"] = verdict_json(uniform_strong_porosity(e));
    consts["uniform"] = verdict_json(uniform_strong_porosity(e));
    rep["constants"] = std::move(consts);
    return rep;
}

}  // namespace

ordered_json analyze_set(const SetSpec& spec, std::size_t depth) {
    AnySet any = elaborate(spec);
    if (const auto* f = std::get_if<FiniteSet>(&any)) return finite_report(spec, *f, depth);
    const GermSet& e = std::get<GermSet>(any);

    ordered_json rep;
    rep["tool"] = kToolName;
    rep["version"] = kToolVersion;

    ordered_json setj;
    setj["name"] = spec.name;
    setj["shape"] = shape_name(spec.shape);
    setj["origin_in_set"] = spec.origin_in_set;
    setj["spec"] = print_spec(spec);
    setj["accumulates_at_zero"] = true;
    setj["structure"] = e.structure_tag();
    rep["set"] = std::move(setj);

    std::size_t blocks_used = e.usable_depth(depth + 1);
    ordered_json depthj;
    depthj["requested"] = depth;
    depthj["blocks_used"] = blocks_used;
    depthj["gaps_used"] = blocks_used > 1 ? blocks_used - 1 : 0;
    depthj["clamped"] = blocks_used < depth + 1;
    rep["depth"] = std::move(depthj);

    PorosityValue p = porosity_at_zero(e, depth);
    PorosityProfile prof = porosity_profile(e, depth);
    ordered_json por;
    por["p_plus_lower"] = p.lower.str();
    por["p_plus_upper"] = p.upper.str();
    por["exact"] = p.exact;
    por["strongly_porous"] = verdict_json(p.is_strongly_porous);
    por["profile_window_max"] = prof.window_max.str();
    por["profile_tail_max"] = prof.tail_max.str();
    rep["porosity"] = std::move(por);

    UniversalityReport uni = universality_certificate(e, depth);
    ordered_json gapsj;
    gapsj["full_stream_in_IE"] = verdict_json(is_IE_member(e, GapSequence::all_gaps(e, depth), depth));
    ordered_json unij;
    unij["verdict"] = verdict_json(uni.verdict);
    unij["mechanism"] = uni.mechanism;
    if (uni.c) unij["c"] = uni.c->str();
    unij["M"] = uni.M_value.str();
    unij["M_verdict"] = verdict_json(uni.M_verdict);
    ordered_json sched = ordered_json::array();
    for (const auto& [bigK, t] : uni.t_schedule) {
        ordered_json entry;
        entry["K"] = bigK.str();
        entry["t"] = t.str();
        sched.push_back(std::move(entry));
    }
    unij["t_schedule"] = std::move(sched);
    ordered_json percs = ordered_json::array();
    for (const auto& st : uni.per_c) {
        ordered_json entry;
        entry["c"] = st.c.str();
        entry["below"] = st.below;
        entry["above"] = st.above;
        if (st.max_below) entry["max_below"] = st.max_below->str();
        if (st.min_above) entry["min_above"] = st.min_above->str();
        percs.push_back(std::move(entry));
    }
    unij["per_c"] = std::move(percs);
    if (uni.universal_sequence) {
        ordered_json us;
        const GapSequence& u = *uni.universal_sequence;
        us["size"] = u.size();
        us["in_IE"] = verdict_json(is_IE_member(e, u, depth));
        us["strictly_decreasing"] = verdict_json(u.almost_strictly_decreasing());
        ordered_json head = ordered_json::array();
        for (std::size_t k = 1; k <= u.size() && k <= 8; ++k) {
            ordered_json g;
            g["a"] = u.entry(k).a.str();
            g["b"] = u.entry(k).b.str();
            g["ratio"] = u.entry(k).ratio().str();
            head.push_back(std::move(g));
        }
        us["head"] = std::move(head);
        unij["universal_sequence"] = std::move(us);
    }
    gapsj["universality"] = std::move(unij);
    rep["gaps"] = std::move(gapsj);

    CspCertificate cert = csp_certify(e, depth);
    ordered_json cspj;
    cspj["status"] = to_string(cert.status);
    cspj["mechanism"] = cert.mechanism;
    cspj["verdict"] = verdict_json(cert.verdict);
    if (cert.p_plus) cspj["p_plus"] = cert.p_plus->str();
    if (cert.q) cspj["q"] = cert.q->str();
    if (cert.t) cspj["t"] = cert.t->str();
    if (!cert.centers.empty()) {
        ordered_json cs = ordered_json::array();
        for (std::size_t i = 0; i < cert.centers.size() && i < 16; ++i)
            cs.push_back(cert.centers[i].str());
        cspj["centers"] = std::move(cs);
        cspj["centers_total"] = cert.centers.size();
        cspj["centers_vanish"] = verdict_json(cert.centers_vanish);
        std::string why;
        ordered_json recheck;
        recheck["inclusion"] = recheck_certificate(e, cert, depth, &why);
        recheck["centers_in_set"] = recheck_centers_in_set(e, cert, &why);
        cspj["recheck"] = std::move(recheck);
    }
    ordered_json clus;
    clus["count"] = cert.window_clusters.clusters.size();
    clus["q_estimate"] = cert.window_clusters.q_estimate.str();
    clus["threshold_final"] = cert.window_clusters.threshold_final.str();
    cspj["window_clusters"] = std::move(clus);
    rep["csp"] = std::move(cspj);

    ordered_json consts;
    consts["M"] = uni.M_value.str();
    consts["M_verdict"] = verdict_json(uni.M_verdict);
    auto [ce, cev] = C_E(e, depth);
    consts["C_E"] = ce.str();
    consts["C_E_verdict"] = verdict_json(cev);
    ExtRat c_out;
    consts["uniform"] = verdict_json(uniform_strong_porosity(e, depth, &c_out));
    ordered_json ctau = ordered_json::array();
    for (const TestSequence& tau : canonical_tau_family(e, depth, &uni)) {
        auto [cv, cvv] = C_of_tau(e, tau, depth, &uni);
        ordered_json entry;
        entry["tau"] = tau.label();
        entry["C"] = cv.str();
        entry["verdict"] = verdict_json(cvv);
        ctau.push_back(std::move(entry));
    }
    consts["C_tau"] = std::move(ctau);
    rep["constants"] = std::move(consts);
    return rep;
}

std::string report_to_text(const ordered_json& rep) {
    std::ostringstream os;
    os << rep["tool"].get<std::string>() << " " << rep["version"].get<std::string>() << " — set "
       << rep["set"]["name"].get<std::string>() << " (" << rep["set"]["shape"].get<std::string>()
       << ")\n";
    os << "depth: requested " << rep["depth"]["requested"] << ", gaps used "
       << rep["depth"]["gaps_used"] << (rep["depth"]["clamped"].get<bool>() ? " (clamped)" : "")
       << "\n";
    os << "p+: [" << rep["porosity"]["p_plus_lower"].get<std::string>() << ", "
       << rep["porosity"]["p_plus_upper"].get<std::string>() << "]"
       << (rep["porosity"]["exact"].get<bool>() ? " exact" : " bracket") << "; strongly porous: "
       << rep["porosity"]["strongly_porous"]["status"].get<std::string>() << "\n";
    if (rep["gaps"].contains("universality")) {
        const auto& u = rep["gaps"]["universality"];
        os << "universal element: " << u["verdict"]["status"].get<std::string>() << ", M = "
           << u["M"].get<std::string>() << "\n";
    }
    os << "csp: " << rep["csp"]["status"].get<std::string>();
    if (rep["csp"].contains("q"))
        os << " (q = " << rep["csp"]["q"].get<std::string>() << ", t = "
           << rep["csp"]["t"].get<std::string>() << ")";
    os << "\n  " << rep["csp"]["mechanism"].get<std::string>() << "\n";
    os << "constants: C_E = " << rep["constants"]["C_E"].get<std::string>() << " ("
       << rep["constants"]["C_E_verdict"]["status"].get<std::string>() << ")\n";
    return os.str();
}

// ---------------------------------------------------------------------------
// schema

const std::string& report_schema_text() {
    static const std::string text = R"SCHEMA({
  "$schema": "http://json-schema.org/draft-07/schema#",
  "title": "porolab report",
  "type": "object",
  "required": ["tool", "version", "set", "depth", "porosity", "gaps", "csp", "constants"],
  "additionalProperties": false,
  "definitions": {
    "rational": { "type": "string", "pattern": "^(-?[0-9]+(/[0-9]+)?|inf)$" },
    "verdict": {
      "type": "object",
      "required": ["status", "depth"],
      "properties": {
        "status": { "enum": ["certified_true", "certified_false", "empirical_true", "empirical_false", "inconclusive"] },
        "depth": { "type": "integer" },
        "law_tag": { "type": "string" },
        "tail_stat": { "$ref": "#/definitions/rational" },
        "witness_index": { "type": "integer" },
        "note": { "type": "string" }
      },
      "additionalProperties": false
    }
  },
  "properties": {
    "tool": { "enum": ["porolab"] },
    "version": { "type": "string" },
    "set": {
      "type": "object",
      "required": ["name", "shape", "origin_in_set", "spec", "accumulates_at_zero"],
      "properties": {
        "name": { "type": "string" },
        "shape": { "enum": ["blocks", "points", "thicken", "bands", "ratio_gaps"] },
        "origin_in_set": { "type": "boolean" },
        "spec": { "type": "string" },
        "accumulates_at_zero": { "type": "boolean" },
        "structure": { "type": "string" }
      },
      "additionalProperties": false
    },
    "depth": {
      "type": "object",
      "required": ["requested", "blocks_used", "gaps_used", "clamped"],
      "properties": {
        "requested": { "type": "integer" },
        "blocks_used": { "type": "integer" },
        "gaps_used": { "type": "integer" },
        "clamped": { "type": "boolean" }
      },
      "additionalProperties": false
    },
    "porosity": {
      "type": "object",
      "required": ["p_plus_lower", "p_plus_upper", "exact", "strongly_porous"],
      "properties": {
        "p_plus_lower": { "$ref": "#/definitions/rational" },
        "p_plus_upper": { "$ref": "#/definitions/rational" },
        "exact": { "type": "boolean" },
        "strongly_porous": { "$ref": "#/definitions/verdict" },
        "profile_window_max": { "$ref": "#/definitions/rational" },
        "profile_tail_max": { "$ref": "#/definitions/rational" }
      },
      "additionalProperties": false
    },
    "gaps": { "type": "object" },
    "csp": {
      "type": "object",
      "required": ["status", "mechanism", "verdict"],
      "properties": {
        "status": { "enum": ["CSP_Certified", "CSP_Refuted", "TriviallyCSP", "Empirical"] },
        "mechanism": { "type": "string" },
        "verdict": { "$ref": "#/definitions/verdict" },
        "p_plus": { "$ref": "#/definitions/rational" },
        "q": { "$ref": "#/definitions/rational" },
        "t": { "$ref": "#/definitions/rational" },
        "centers": { "type": "array", "items": { "$ref": "#/definitions/rational" } },
        "centers_total": { "type": "integer" },
        "centers_vanish": { "$ref": "#/definitions/verdict" },
        "recheck": {
          "type": "object",
          "required": ["inclusion", "centers_in_set"],
          "properties": {
            "inclusion": { "type": "boolean" },
            "centers_in_set": { "type": "boolean" }
          },
          "additionalProperties": false
        },
        "window_clusters": {
          "type": "object",
          "required": ["count", "q_estimate", "threshold_final"],
          "properties": {
            "count": { "type": "integer" },
            "q_estimate": { "$ref": "#/definitions/rational" },
            "threshold_final": { "$ref": "#/definitions/rational" }
          },
          "additionalProperties": false
        }
      },
      "additionalProperties": false
    },
    "constants": {
      "type": "object",
      "required": ["C_E", "C_E_verdict", "uniform"],
      "properties": {
        "M": { "$ref": "#/definitions/rational" },
        "M_verdict": { "$ref": "#/definitions/verdict" },
        "C_E": { "$ref": "#/definitions/rational" },
        "C_E_verdict": { "$ref": "#/definitions/verdict" },
        "uniform": { "$ref": "#/definitions/verdict" },
        "C_tau": {
          "type": "array",
          "items": {
            "type": "object",
            "required": ["tau", "C", "verdict"],
            "properties": {
              "tau": { "type": "string" },
              "C": { "$ref": "#/definitions/rational" },
              "verdict": { "$ref": "#/definitions/verdict" }
            },
            "additionalProperties": false
          }
        }
      },
      "additionalProperties": false
    }
  }
})SCHEMA";
    return text;
}

json report_schema() { return json::parse(report_schema_text()); }

namespace {

const json* resolve_ref(const json& root, const std::string& ref) {
    // supports "#/definitions/<name>" only
    const std::string prefix = "#/definitions/";
    if (ref.rfind(prefix, 0) != 0) return nullptr;
    std::string name = ref.substr(prefix.size());
    auto it = root.find("definitions");
    if (it == root.end()) return nullptr;
    auto def = it->find(name);
    return def == it->end() ? nullptr : &*def;
}

bool check(const json& root, const json& schema, const json& doc, const std::string& path,
           std::string* why) {
    auto fail = [&](const std::string& msg) {
        if (why) *why = path + ": " + msg;
        return false;
    };
    if (schema.contains("$ref")) {
        const json* target = resolve_ref(root, schema["$ref"].get<std::string>());
        if (!target) return fail("unresolvable $ref");
        return check(root, *target, doc, path, why);
    }
    if (schema.contains("enum")) {
        for (const auto& v : schema["enum"])
            if (v == doc) return true;
        return fail("value not in enum");
    }
    if (schema.contains("type")) {
        const std::string t = schema["type"].get<std::string>();
        bool ok = (t == "object" && doc.is_object()) || (t == "array" && doc.is_array()) ||
                  (t == "string" && doc.is_string()) || (t == "boolean" && doc.is_boolean()) ||
                  (t == "integer" && doc.is_number_integer()) || (t == "number" && doc.is_number());
        if (!ok) return fail("expected type " + t);
    }
    if (schema.contains("pattern") && doc.is_string()) {
        const std::string pat = schema["pattern"].get<std::string>();
        const std::string val = doc.get<std::string>();
        // the rational pattern is matched by hand: backtracking regex engines
        // choke on the multi-thousand-digit numerators exact arithmetic produces
        if (pat == "^(-?[0-9]+(/[0-9]+)?|inf)$") {
            auto digits = [](std::string_view s) {
                if (s.empty()) return false;
                for (char c : s)
                    if (c < '0' || c > '9') return false;
                return true;
            };
            std::string_view v = val;
            bool ok = v == "inf";
            if (!ok) {
                if (!v.empty() && v.front() == '-') v.remove_prefix(1);
                auto slash = v.find('/');
                ok = slash == std::string_view::npos
                         ? digits(v)
                         : digits(v.substr(0, slash)) && digits(v.substr(slash + 1));
            }
            if (!ok) return fail("pattern mismatch");
        } else {
            std::regex re(pat);
            if (!std::regex_search(val, re)) return fail("pattern mismatch");
        }
    }
    if (doc.is_object()) {
        if (schema.contains("required")) {
            for (const auto& key : schema["required"])
                if (!doc.contains(key.get<std::string>()))
                    return fail("missing required key '" + key.get<std::string>() + "'");
        }
        const json* props = schema.contains("properties") ? &schema["properties"] : nullptr;
        bool extra_ok = true;
        if (schema.contains("additionalProperties") && schema["additionalProperties"].is_boolean())
            extra_ok = schema["additionalProperties"].get<bool>();
        for (auto it = doc.begin(); it != doc.end(); ++it) {
            if (props && props->contains(it.key())) {
                if (!check(root, (*props)[it.key()], it.value(), path + "/" + it.key(), why))
                    return false;
            } else if (!extra_ok) {
                return fail("unexpected key '" + it.key() + "'");
            }
        }
    }
    if (doc.is_array() && schema.contains("items")) {
        std::size_t i = 0;
        for (const auto& el : doc) {
            if (!check(root, schema["items"], el, path + "/" + std::to_string(i), why))
                return false;
            ++i;
        }
    }
    return true;
}

}  // namespace

bool validate_schema(const json& doc, const json& schema, std::string* why) {
    return check(schema, schema, doc, "$", why);
}

bool validate_report(const json& report, std::string* why) {
    static const json schema = report_schema();
    return validate_schema(report, schema, why);
}

}  // namespace porolab
