#pragma once

#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "constructions.hpp"
#include "duality.hpp"

namespace combinorm {

using nlohmann::json;
using nlohmann::ordered_json;

inline ordered_json to_json(const Rational& r) { return to_string(r); }

inline Rational rational_from_json(const json& j) {
    if (j.is_number_integer()) return Rational(j.get<long long>());
    if (j.is_string()) return parse_rational(j.get<std::string>());
    throw std::invalid_argument("rational must be an integer or a \"p/q\" string");
}

inline ordered_json to_json(const IndexSet& a) { return ordered_json(a); }

inline IndexSet index_set_from_json(const json& j) {
    if (!j.is_array()) throw std::invalid_argument("index set must be an array");
    IndexSet out;
    for (const auto& e : j) {
        if (!e.is_number_integer()) throw std::invalid_argument("index must be an integer");
        out.push_back(e.get<int>());
    }
    if (!is_canonical(out)) out = canonical(std::move(out));
    return out;
}

inline ordered_json to_json(const SetFamily& f) {
    ordered_json sets = ordered_json::array();
    for (const auto& a : f.sets()) sets.push_back(to_json(a));
    return ordered_json{{"window", f.window()}, {"sets", std::move(sets)}};
}

inline SetFamily family_from_json(const json& j) {
    if (!j.is_object() || !j.contains("window") || !j.contains("sets"))
        throw std::invalid_argument("family JSON needs \"window\" and \"sets\"");
    std::vector<IndexSet> sets;
    for (const auto& e : j.at("sets")) sets.push_back(index_set_from_json(e));
    return SetFamily::from_sets(j.at("window").get<int>(), std::move(sets));
}

inline ordered_json to_json(const SparseVector& v) {
    ordered_json entries = ordered_json::object();
    for (const auto& [k, val] : v.entries()) entries[std::to_string(k)] = to_string(val);
    return ordered_json{{"entries", std::move(entries)}};
}

inline SparseVector vector_from_json(const json& j) {
    if (!j.is_object() || !j.contains("entries"))
        throw std::invalid_argument("vector JSON needs \"entries\"");
    SparseVector out;
    for (const auto& [key, val] : j.at("entries").items()) {
        std::size_t used = 0;
        int k = std::stoi(key, &used);
        if (used != key.size() || k < 1)
            throw std::invalid_argument("vector index must be a positive integer");
        out.set(k, rational_from_json(val));
    }
    return out;
}

inline ordered_json to_json(const PartitionCertificate& c) {
    ordered_json pieces = ordered_json::array();
    for (const auto& p : c.pieces) pieces.push_back(to_json(p));
    return ordered_json{{"value", to_string(c.value)}, {"pieces", std::move(pieces)}};
}

inline ordered_json to_json(const ExtremePoint& e) {
    return ordered_json{{"set", to_json(e.base)}, {"signs", ordered_json(e.signs)}};
}

inline ordered_json to_json(const IntervalSet& s) {
    ordered_json runs = ordered_json::array();
    for (const auto& r : s.runs()) runs.push_back(ordered_json{r.lo, r.hi});
    return runs;
}

inline ordered_json to_json(const SchreierWitness& w) {
    ordered_json nodes = ordered_json::array();
    for (const auto& s : w.order)
        nodes.push_back(ordered_json{{"node", ordered_json(s)},
                                     {"set", to_json(w.node_set.at(s))}});
    ordered_json branches = ordered_json::array();
    for (const auto& b : w.branch_sets) branches.push_back(to_json(b));
    ordered_json levels = ordered_json::object();
    for (const auto& [r, a] : w.levels) levels[std::to_string(r)] = to_json(a);
    return ordered_json{{"N", w.N},
                        {"nodes", std::move(nodes)},
                        {"branches", std::move(branches)},
                        {"levels", std::move(levels)}};
}

inline ordered_json to_json(const WitnessPropertyReport& r) {
    return ordered_json{{"interval_order", r.interval_order},
                        {"levels_partition", r.levels_partition},
                        {"size_dominance", r.size_dominance},
                        {"branches_schreier", r.branches_schreier},
                        {"values_dyadic", r.values_dyadic},
                        {"phi_growth", r.phi_growth},
                        {"phi_values", ordered_json(r.phi_values)},
                        {"all", r.all()}};
}

inline ordered_json to_json(const GrowthReport& r) {
    return ordered_json{{"certificate_valid", r.certificate_valid},
                        {"chain_ok", r.chain_ok},
                        {"piece_counts", ordered_json(r.piece_counts)},
                        {"certificate_cost", to_string(r.certificate_cost)},
                        {"proof_bound", to_string(r.proof_bound)},
                        {"consistent_with_cap", r.consistent_with_cap}};
}

inline json read_json_source(const std::string& path) {
    if (path == "-") return json::parse(std::cin);
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    return json::parse(in);
}

}  // namespace combinorm
