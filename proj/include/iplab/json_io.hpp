#pragma once

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <string>

#include "iplab/dirichlet.hpp"
#include "iplab/event_log.hpp"
#include "iplab/generator_matrix.hpp"
#include "iplab/mixing.hpp"
#include "iplab/theorems.hpp"

namespace iplab {

using nlohmann::json;

// ---------------------------------------------------------------------------
// hypergraph file format
// {"n": int, "edges": [{"vertices": [int], "rate": float,
//   "law": "uniform" | "transposition" | {"explicit": [{"perm": [int], "p": float}]}]}
// "perm" lists images of the sorted vertex list.  Round-trips bit-exactly.
// ---------------------------------------------------------------------------

inline json law_to_json(const PermutationLaw& law) {
    switch (law.kind) {
    case LawKind::Uniform: return "uniform";
    case LawKind::Transposition: return "transposition";
    case LawKind::Explicit: {
        json atoms = json::array();
        for (const auto& a : law.atoms) atoms.push_back({{"perm", a.images}, {"p", a.prob}});
        return {{"explicit", atoms}};
    }
    }
    throw std::logic_error("unknown law kind");
}

inline PermutationLaw law_from_json(const json& j) {
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        if (s == "uniform") return PermutationLaw::uniform();
        if (s == "transposition") return PermutationLaw::transposition();
        throw std::invalid_argument("unknown law name: " + s);
    }
    if (j.is_object() && j.contains("explicit")) {
        std::vector<ExplicitAtom> atoms;
        for (const auto& a : j.at("explicit"))
            atoms.push_back({a.at("perm").get<std::vector<int>>(), a.at("p").get<double>()});
        return PermutationLaw::explicit_law(std::move(atoms));
    }
    throw std::invalid_argument("malformed law");
}

inline json instance_to_json(const HypergraphInstance& g) {
    json edges = json::array();
    for (const auto& e : g.edges)
        edges.push_back({{"vertices", e.vertices}, {"rate", e.rate}, {"law", law_to_json(e.law)}});
    json out = {{"n", g.n}, {"edges", edges}};
    if (g.allow_small) out["allow_small"] = true;
    return out;
}

inline HypergraphInstance instance_from_json(const json& j) {
    HypergraphInstance g;
    g.n = j.at("n").get<int>();
    g.allow_small = j.value("allow_small", false);
    for (const auto& je : j.at("edges")) {
        Hyperedge e;
        e.vertices = je.at("vertices").get<std::vector<int>>();
        std::sort(e.vertices.begin(), e.vertices.end());
        e.rate = je.at("rate").get<double>();
        e.law = law_from_json(je.at("law"));
        g.edges.push_back(std::move(e));
    }
    return g;
}

inline void save_instance(const HypergraphInstance& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << instance_to_json(g).dump(2) << "\n";
}

inline HypergraphInstance load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    json j;
    in >> j;
    return instance_from_json(j);
}

// ---------------------------------------------------------------------------
// event-log dump (JSON lines, one ring per line)
// ---------------------------------------------------------------------------

inline std::string event_log_to_jsonl(const EventLog& log) {
    std::ostringstream out;
    for (const auto& r : log.rings) {
        json j = {{"t", r.time}, {"edge", r.edge}, {"perm", r.perm}};
        out << j.dump() << "\n";
    }
    return out.str();
}

inline EventLog event_log_from_jsonl(std::istream& in, double horizon) {
    EventLog log;
    log.horizon = horizon;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        json j = json::parse(line);
        log.rings.push_back(
            {j.at("t").get<double>(), j.at("edge").get<int>(), j.at("perm").get<std::vector<int>>()});
    }
    return log;
}

// ---------------------------------------------------------------------------
// reports
// ---------------------------------------------------------------------------

inline json report_to_json(const VerificationReport& r) {
    json j = {{"check", r.check},     {"lhs", r.lhs},
              {"rhs", r.rhs},         {"margin", r.margin},
              {"pass", r.pass},       {"applicable", r.applicable},
              {"provenance", r.provenance}};
    if (!r.notes.empty()) j["notes"] = r.notes;
    json params = json::object();
    for (const auto& [k, v] : r.params) params[k] = v;
    j["params"] = params;
    return j;
}

inline json dirichlet_report_to_json(const DirichletComparisonReport& rep) {
    json arr = json::array();
    for (const auto& i : rep.inequalities)
        arr.push_back({{"name", i.name},
                       {"constant", i.constant},
                       {"worst_ratio", i.worst_ratio},
                       {"witness_available", i.witness_available},
                       {"pass", i.pass}});
    return {{"inequalities", arr},
            {"generalized_worst_ratio", rep.generalized_worst_ratio},
            {"trials", rep.trials},
            {"pass", rep.pass()}};
}

inline json breakdown_to_json(const FormBreakdown& b) {
    json terms = json::object();
    for (const auto& [k, v] : b.terms) terms[k] = v;
    return {{"total", b.total}, {"terms", terms}};
}

// ---------------------------------------------------------------------------
// CSV and coordinate-list exports
// ---------------------------------------------------------------------------

inline void write_tv_curve_csv(const TVCurve& curve, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << (curve.bar_dk.empty() ? "t,d\n" : "t,d,bar_d_k\n");
    for (std::size_t i = 0; i < curve.times.size(); ++i) {
        out << format_double(curve.times[i]) << "," << format_double(curve.d[i]);
        if (!curve.bar_dk.empty()) out << "," << format_double(curve.bar_dk[i]);
        out << "\n";
    }
}

/// Generator as coordinate-list text plus a state-index legend.
inline void export_generator(const GeneratorMatrix& gen, const std::string& prefix) {
    {
        std::ofstream out(prefix + ".coo");
        if (!out) throw std::runtime_error("cannot write " + prefix + ".coo");
        for (std::int64_t r = 0; r < gen.size(); ++r)
            for (SparseRates::InnerIterator it(gen.rates, r); it; ++it)
                out << r << " " << it.col() << " " << format_double(it.value()) << "\n";
    }
    {
        std::ofstream out(prefix + ".states");
        if (!out) throw std::runtime_error("cannot write " + prefix + ".states");
        LabeledConfig s(gen.space.k());
        for (std::int64_t r = 0; r < gen.size(); ++r) {
            gen.space.unrank(r, s);
            out << r;
            for (int v : s) out << " " << v;
            out << "\n";
        }
    }
}

// ---------------------------------------------------------------------------
// manifest: everything needed to reproduce a run
// ---------------------------------------------------------------------------

inline std::uint64_t fnv1a64(const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

inline json make_manifest(const std::string& command, const json& config, std::uint64_t seed,
                          const std::vector<std::string>& outputs) {
    std::ostringstream hex;
    hex << std::hex << fnv1a64(config.dump());
    return {{"version", "interchange-lab 0.1.0"},
            {"command", command},
            {"config", config},
            {"config_hash", hex.str()},
            {"seed", seed},
            {"outputs", outputs}};
}

inline void write_json(const json& j, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << j.dump(2) << "\n";
}

} // namespace iplab
