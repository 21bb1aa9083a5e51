#pragma once

#include "pairsum/bounds.hpp"
#include "pairsum/duality.hpp"
#include "pairsum/linalg.hpp"
#include "pairsum/lp.hpp"
#include "pairsum/norms.hpp"
#include "pairsum/rational.hpp"
#include "pairsum/search.hpp"

#include <json.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace pairsum {

using Json = nlohmann::json;

class ParseError : public std::invalid_argument {
  public:
    explicit ParseError(const std::string& what) : std::invalid_argument(what) {}
};

// Rationals travel as "p/q" strings (or "p" for integers), never as
// decimals, so values survive the wire exactly.

inline Json rational_to_json(const Rational& q) { return to_string(q); }

inline Rational rational_from_json(const Json& j) {
    if (!j.is_string()) throw ParseError("expected a rational string, got " + j.dump());
    return parse_rational(j.get<std::string>());
}

inline Json vector_to_json(const QVector& v) {
    Json arr = Json::array();
    for (const auto& c : v) arr.push_back(rational_to_json(c));
    return arr;
}

inline QVector vector_from_json(const Json& j) {
    if (!j.is_array()) throw ParseError("expected a vector array, got " + j.dump());
    QVector v;
    v.reserve(j.size());
    for (const auto& e : j) v.push_back(rational_from_json(e));
    return v;
}

inline Json vector_list_to_json(const std::vector<QVector>& vs) {
    Json arr = Json::array();
    for (const auto& v : vs) arr.push_back(vector_to_json(v));
    return arr;
}

inline std::vector<QVector> vector_list_from_json(const Json& j) {
    if (!j.is_array()) throw ParseError("expected an array of vectors, got " + j.dump());
    std::vector<QVector> vs;
    vs.reserve(j.size());
    for (const auto& e : j) vs.push_back(vector_from_json(e));
    return vs;
}

inline Json norm_to_json(const Norm& n) {
    Json j;
    switch (n.kind) {
        case Norm::Kind::LInf: j["kind"] = "linf"; break;
        case Norm::Kind::L1: j["kind"] = "l1"; break;
        case Norm::Kind::Polytope: j["kind"] = "polytope"; break;
    }
    j["dimension"] = n.dimension;
    if (n.kind == Norm::Kind::Polytope) j["generators"] = vector_list_to_json(n.generators);
    return j;
}

inline Norm norm_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("kind") || !j.contains("dimension")) {
        throw ParseError("norm needs 'kind' and 'dimension'");
    }
    const std::string kind = j.at("kind").get<std::string>();
    const std::size_t d = j.at("dimension").get<std::size_t>();
    if (kind == "linf") return Norm::linf(d);
    if (kind == "l1") return Norm::l1(d);
    if (kind == "polytope") {
        if (!j.contains("generators")) throw ParseError("polytope norm needs 'generators'");
        Norm n = Norm::polytope(vector_list_from_json(j.at("generators")));
        if (n.dimension != d) throw ParseError("polytope generators disagree with 'dimension'");
        return n;
    }
    throw ParseError("unknown norm kind '" + kind + "'");
}

/// On-disk / on-pipe form of an instance: the vectors and delta, plus an
/// optional norm and an optional witness riding along.
struct InstanceFile {
    Instance instance;
    std::optional<Norm> norm;
    std::optional<Witness> witness;

    bool operator==(const InstanceFile&) const = default;
};

inline Json instance_file_to_json(const InstanceFile& f) {
    Json j;
    j["dimension"] = f.instance.dimension();
    j["delta"] = rational_to_json(f.instance.delta);
    j["vectors"] = vector_list_to_json(f.instance.vectors);
    if (f.norm) j["norm"] = norm_to_json(*f.norm);
    if (f.witness) j["witness"] = vector_list_to_json(f.witness->duals);
    return j;
}

inline InstanceFile instance_file_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("delta") || !j.contains("vectors")) {
        throw ParseError("instance needs 'delta' and 'vectors'");
    }
    auto vectors = vector_list_from_json(j.at("vectors"));
    Instance inst(rational_from_json(j.at("delta")), std::move(vectors));
    if (j.contains("dimension") &&
        j.at("dimension").get<std::size_t>() != inst.dimension()) {
        throw ParseError("'dimension' disagrees with the vectors");
    }
    InstanceFile f{std::move(inst), std::nullopt, std::nullopt};
    if (j.contains("norm") && !j.at("norm").is_null()) {
        f.norm = norm_from_json(j.at("norm"));
    }
    if (j.contains("witness") && !j.at("witness").is_null()) {
        f.witness = Witness{vector_list_from_json(j.at("witness"))};
    }
    return f;
}

inline Json witness_result_to_json(const WitnessResult& r) {
    Json j;
    if (r.status == WitnessResult::Status::Feasible) {
        j["status"] = "feasible";
        j["witness"] = vector_list_to_json(r.witness.duals);
    } else {
        j["status"] = "infeasible";
        j["index"] = r.failing_index;
        j["farkas"] = vector_to_json(r.farkas);
    }
    return j;
}

inline WitnessResult witness_result_from_json(const Json& j) {
    WitnessResult r;
    const std::string status = j.at("status").get<std::string>();
    if (status == "feasible") {
        r.status = WitnessResult::Status::Feasible;
        r.witness = Witness{vector_list_from_json(j.at("witness"))};
    } else if (status == "infeasible") {
        r.status = WitnessResult::Status::Infeasible;
        r.failing_index = j.at("index").get<std::size_t>();
        r.farkas = vector_from_json(j.at("farkas"));
    } else {
        throw ParseError("unknown witness status '" + status + "'");
    }
    return r;
}

inline Json additivity_report_to_json(const AdditivityReport& r) {
    Json j;
    j["pass"] = r.pass;
    j["unit_violations"] = Json::array();
    for (const auto& v : r.unit_violations) {
        j["unit_violations"].push_back({{"index", v.index}, {"gauge", rational_to_json(v.gauge_value)}});
    }
    j["pair_violations"] = Json::array();
    for (const auto& v : r.pair_violations) {
        j["pair_violations"].push_back(
            {{"i", v.i}, {"j", v.j}, {"gauge", rational_to_json(v.gauge_value)}});
    }
    j["tight_pairs"] = Json::array();
    for (const auto& [a, b] : r.tight_pairs) j["tight_pairs"].push_back({a, b});
    return j;
}

inline AdditivityReport additivity_report_from_json(const Json& j) {
    AdditivityReport r;
    r.pass = j.at("pass").get<bool>();
    for (const auto& v : j.at("unit_violations")) {
        r.unit_violations.push_back(
            {v.at("index").get<std::size_t>(), rational_from_json(v.at("gauge"))});
    }
    for (const auto& v : j.at("pair_violations")) {
        r.pair_violations.push_back({v.at("i").get<std::size_t>(), v.at("j").get<std::size_t>(),
                                     rational_from_json(v.at("gauge"))});
    }
    for (const auto& p : j.at("tight_pairs")) {
        r.tight_pairs.emplace_back(p.at(0).get<std::size_t>(), p.at(1).get<std::size_t>());
    }
    return r;
}

inline Json bound_report_to_json(const BoundReport& r) {
    Json j;
    j["closed_form"] = r.closed_form.str();
    j["sharp"] = r.sharp ? Json(r.sharp->str()) : Json(nullptr);
    j["radius_used"] = rational_to_json(r.radius_used);
    j["agreement"] = r.agreement;
    return j;
}

inline BoundReport bound_report_from_json(const Json& j) {
    BoundReport r;
    r.closed_form = BigInt(j.at("closed_form").get<std::string>());
    if (!j.at("sharp").is_null()) r.sharp = BigInt(j.at("sharp").get<std::string>());
    r.radius_used = rational_from_json(j.at("radius_used"));
    r.agreement = j.at("agreement").get<bool>();
    return r;
}

inline Json clique_result_to_json(const CliqueResult& r) {
    Json j;
    j["size"] = r.size;
    j["members"] = r.members;
    j["exhaustive"] = r.exhaustive;
    return j;
}

inline CliqueResult clique_result_from_json(const Json& j) {
    CliqueResult r;
    r.size = j.at("size").get<std::size_t>();
    r.members = j.at("members").get<std::vector<std::size_t>>();
    r.exhaustive = j.at("exhaustive").get<bool>();
    return r;
}

// Debug serialization for linear programs and solver results.

inline Json linear_program_to_json(const LinearProgram& lp) {
    Json j;
    j["num_vars"] = lp.num_vars;
    j["constraints"] = Json::array();
    for (const auto& c : lp.constraints) {
        const char* rel = c.relation == Relation::LessEq   ? "<="
                          : c.relation == Relation::Equal ? "=="
                                                          : ">=";
        j["constraints"].push_back(
            {{"coeffs", vector_to_json(c.coeffs)}, {"relation", rel}, {"rhs", rational_to_json(c.rhs)}});
    }
    if (lp.objective) {
        j["objective"] = {{"coeffs", vector_to_json(lp.objective->coeffs)},
                          {"direction",
                           lp.objective->direction == Direction::Minimize ? "min" : "max"}};
    }
    if (!lp.nonnegative.empty()) j["nonnegative"] = lp.nonnegative;
    return j;
}

inline Json lp_result_to_json(const LPResult& r) {
    Json j;
    switch (r.status) {
        case LPResult::Status::Optimal:
            j["status"] = "optimal";
            j["point"] = vector_to_json(r.point);
            j["value"] = rational_to_json(r.value);
            j["duals"] = vector_to_json(r.duals);
            break;
        case LPResult::Status::Feasible:
            j["status"] = "feasible";
            j["point"] = vector_to_json(r.point);
            break;
        case LPResult::Status::Infeasible:
            j["status"] = "infeasible";
            j["farkas"] = vector_to_json(r.farkas);
            break;
        case LPResult::Status::Unbounded:
            j["status"] = "unbounded";
            j["point"] = vector_to_json(r.point);
            j["ray"] = vector_to_json(r.ray);
            break;
    }
    return j;
}

} // namespace pairsum
