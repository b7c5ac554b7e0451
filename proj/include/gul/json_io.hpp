#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "model.hpp"

namespace gul {

// Configuration rejection carrying the JSON path of the offending field.
class config_error : public std::runtime_error {
  public:
    config_error(std::string field, const std::string& message)
        : std::runtime_error(field + ": " + message), field_(std::move(field)) {}
    const std::string& field() const { return field_; }

  private:
    std::string field_;
};

namespace json_detail {

using nlohmann::json;

inline const json& require(const json& j, const char* key, const std::string& path) {
    if (!j.is_object()) throw config_error(path, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) throw config_error(path + "." + key, "missing");
    return *it;
}

inline long long require_int(const json& j, const std::string& path) {
    if (!j.is_number_integer()) throw config_error(path, "expected an integer");
    return j.get<long long>();
}

inline double require_number(const json& j, const std::string& path) {
    if (!j.is_number()) throw config_error(path, "expected a number");
    return j.get<double>();
}

inline const json& require_array(const json& j, const std::string& path) {
    if (!j.is_array()) throw config_error(path, "expected an array");
    return j;
}

}  // namespace json_detail

// Parse the exact ModelSpec schema:
// {"n":int, "m":int, "kind":{"fixed_graphs":[...]|"bernoulli_yq":{...}|"clique_sizes":{...}}}
inline ModelSpec model_spec_from_json(const nlohmann::json& j, const std::string& path = "spec") {
    using json_detail::require;
    using json_detail::require_array;
    using json_detail::require_int;
    using json_detail::require_number;

    ModelSpec spec;
    spec.n = require_int(require(j, "n", path), path + ".n");
    spec.m = require_int(require(j, "m", path), path + ".m");
    const auto& kind = require(j, "kind", path);
    const std::string kpath = path + ".kind";
    if (!kind.is_object() || kind.size() != 1)
        throw config_error(kpath, "expected exactly one of fixed_graphs/bernoulli_yq/clique_sizes");

    if (kind.contains("fixed_graphs")) {
        FixedGraphs fg;
        const auto& arr = require_array(kind["fixed_graphs"], kpath + ".fixed_graphs");
        for (size_t i = 0; i < arr.size(); ++i) {
            const std::string tpath = kpath + ".fixed_graphs[" + std::to_string(i) + "]";
            const auto& tj = arr[i];
            GraphTemplate t;
            t.vertices = static_cast<int>(require_int(require(tj, "vertices", tpath),
                                                      tpath + ".vertices"));
            const auto& edges = require_array(require(tj, "edges", tpath), tpath + ".edges");
            for (size_t e = 0; e < edges.size(); ++e) {
                const std::string epath = tpath + ".edges[" + std::to_string(e) + "]";
                const auto& ej = edges[e];
                if (!ej.is_array() || ej.size() != 2)
                    throw config_error(epath, "expected a [u,v] pair");
                long long u = require_int(ej[0], epath + "[0]");
                long long v = require_int(ej[1], epath + "[1]");
                if (u < 1 || v < 1) throw config_error(epath, "vertices are 1-based");
                t.edges.emplace_back(static_cast<VertexId>(u), static_cast<VertexId>(v));
            }
            fg.templates.push_back(std::move(t));
        }
        spec.kind = std::move(fg);
    } else if (kind.contains("bernoulli_yq")) {
        BernoulliYQ by;
        const std::string bpath = kpath + ".bernoulli_yq";
        const auto& sup = require_array(require(kind["bernoulli_yq"], "support", bpath),
                                        bpath + ".support");
        for (size_t i = 0; i < sup.size(); ++i) {
            const std::string apath = bpath + ".support[" + std::to_string(i) + "]";
            const auto& aj = sup[i];
            BernoulliYQAtom atom;
            atom.y = require_int(require(aj, "y", apath), apath + ".y");
            atom.q = require_number(require(aj, "q", apath), apath + ".q");
            atom.w = require_number(require(aj, "w", apath), apath + ".w");
            by.support.push_back(atom);
        }
        spec.kind = std::move(by);
    } else if (kind.contains("clique_sizes")) {
        CliqueSizes cs;
        const std::string cpath = kpath + ".clique_sizes";
        const auto& sup = require_array(require(kind["clique_sizes"], "support", cpath),
                                        cpath + ".support");
        for (size_t i = 0; i < sup.size(); ++i) {
            const std::string apath = cpath + ".support[" + std::to_string(i) + "]";
            const auto& aj = sup[i];
            CliqueSizeAtom atom;
            atom.size = require_int(require(aj, "size", apath), apath + ".size");
            atom.w = require_number(require(aj, "w", apath), apath + ".w");
            cs.support.push_back(atom);
        }
        spec.kind = std::move(cs);
    } else {
        throw config_error(kpath, "unknown kind (expected fixed_graphs/bernoulli_yq/clique_sizes)");
    }
    return spec;
}

inline nlohmann::ordered_json model_spec_to_json(const ModelSpec& spec) {
    nlohmann::ordered_json j;
    j["n"] = spec.n;
    j["m"] = spec.m;
    nlohmann::ordered_json kind;
    if (const auto* fg = std::get_if<FixedGraphs>(&spec.kind)) {
        auto arr = nlohmann::ordered_json::array();
        for (const auto& t : fg->templates) {
            nlohmann::ordered_json tj;
            tj["vertices"] = t.vertices;
            auto edges = nlohmann::ordered_json::array();
            for (const auto& [u, v] : t.edges) edges.push_back({u, v});
            tj["edges"] = std::move(edges);
            arr.push_back(std::move(tj));
        }
        kind["fixed_graphs"] = std::move(arr);
    } else if (const auto* by = std::get_if<BernoulliYQ>(&spec.kind)) {
        auto sup = nlohmann::ordered_json::array();
        for (const auto& a : by->support)
            sup.push_back({{"y", a.y}, {"q", a.q}, {"w", a.w}});
        kind["bernoulli_yq"] = {{"support", std::move(sup)}};
    } else if (const auto* cs = std::get_if<CliqueSizes>(&spec.kind)) {
        auto sup = nlohmann::ordered_json::array();
        for (const auto& a : cs->support) sup.push_back({{"size", a.size}, {"w", a.w}});
        kind["clique_sizes"] = {{"support", std::move(sup)}};
    }
    j["kind"] = std::move(kind);
    return j;
}

}  // namespace gul
