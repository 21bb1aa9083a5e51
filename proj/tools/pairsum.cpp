// Command-line front end: constructs, certifies, and bounds families of unit
// vectors with small pairwise sums. All numeric I/O is exact "p/q" strings.

#include "pairsum/bounds.hpp"
#include "pairsum/constructions.hpp"
#include "pairsum/duality.hpp"
#include "pairsum/json_io.hpp"
#include "pairsum/lp.hpp"
#include "pairsum/norms.hpp"
#include "pairsum/search.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

namespace {

using namespace pairsum;

Json read_input_json(const std::string& path) {
    if (path.empty() || path == "-") {
        std::ostringstream buf;
        buf << std::cin.rdbuf();
        return Json::parse(buf.str());
    }
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open input file '" + path + "'");
    Json j;
    in >> j;
    return j;
}

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

int run_verify(const std::string& in_path, const std::string& delta_text,
               const std::string& norm_text) {
    const InstanceFile file = instance_file_from_json(read_input_json(in_path));
    std::optional<Norm> norm = file.norm;
    if (!norm_text.empty()) norm = norm_from_json(Json::parse(norm_text));
    if (!norm) throw ParseError("no norm: provide one in the instance file or via --norm");
    const Rational delta =
        delta_text.empty() ? file.instance.delta : parse_rational(delta_text);
    const AdditivityReport report = verify_additive_set(*norm, file.instance.vectors, delta);
    emit(additivity_report_to_json(report));
    return report.pass ? 0 : 1;
}

int run_witness(const std::string& in_path) {
    const InstanceFile file = instance_file_from_json(read_input_json(in_path));
    const WitnessResult result = find_witness(file.instance);
    emit(witness_result_to_json(result));
    return result.status == WitnessResult::Status::Feasible ? 0 : 1;
}

int run_synth(const std::string& in_path) {
    const InstanceFile file = instance_file_from_json(read_input_json(in_path));
    const WitnessResult result = find_witness(file.instance);
    if (result.status != WitnessResult::Status::Feasible) {
        emit(witness_result_to_json(result));
        return 1;
    }
    const Norm realized = build_norm(file.instance, result.witness);
    Json out = norm_to_json(realized);
    out["witness"] = vector_list_to_json(result.witness.duals);
    emit(out);
    return 0;
}

int run_bound(std::size_t d, const std::string& delta_text, const std::string& radius_text) {
    const Rational delta = parse_rational(delta_text);
    const Rational radius = radius_text.empty() ? Rational(2) : parse_rational(radius_text);
    Json out = bound_report_to_json(bound_report(d, delta, radius));
    const auto trivial = trivial_bound(delta);
    out["trivial"] = trivial ? Json(*trivial) : Json(nullptr);
    const Rational cap = inner_product_bound(d, delta);
    out["inner_product_bound"] = rational_to_json(cap);
    const auto gram = gram_bound(cap);
    out["gram"] = gram ? Json(gram->str()) : Json(nullptr);
    emit(out);
    return 0;
}

int run_search(const std::string& norm_text, unsigned resolution,
               const std::string& delta_text, std::uint64_t budget) {
    const Norm norm = norm_from_json(Json::parse(norm_text));
    const Rational delta = parse_rational(delta_text);
    const auto candidates = enumerate_candidates(norm, resolution);
    const AdditivityGraph graph = build_graph(norm, candidates, delta);
    const CliqueResult clique = max_clique(graph, budget);
    Json out = clique_result_to_json(clique);
    out["candidate_count"] = graph.size();
    Json members = Json::array();
    for (auto idx : clique.members) members.push_back(vector_to_json(graph.vertices[idx]));
    out["member_vectors"] = members;
    emit(out);
    return 0;
}

int run_erratum(int count) {
    // Identity table for the dual blend coefficient of the lifted-code
    // construction. The corrected value (6 - delta)/4 satisfies both
    // identities; the widely quoted alternative 2/3 - delta/4 does not.
    Json rows = Json::array();
    std::vector<Rational> deltas = {Rational(1)}; // the canonical failing point
    for (int k = 1; k <= count; ++k) {
        const Rational d = Rational(2, 3) + Rational(4 * k, 3 * (count + 1));
        if (d != 1) deltas.push_back(d);
    }
    for (const Rational& delta : deltas) {
        const Rational cap = inner_product_cap(delta);
        const Rational blend = lift_blend(delta);
        const Rational variant = lift_blend_variant(delta);
        Json row;
        row["delta"] = rational_to_json(delta);
        row["cap"] = rational_to_json(cap);
        row["blend"] = rational_to_json(blend);
        row["upper_identity_lhs"] = rational_to_json(blend * cap + 1 - blend);
        row["upper_identity_rhs"] = rational_to_json(delta - 1);
        row["upper_identity_holds"] = (blend * cap + 1 - blend == delta - 1);
        row["lower_identity_lhs"] = rational_to_json(1 - blend * (1 + cap));
        row["lower_identity_rhs"] = rational_to_json(-delta / 2);
        row["lower_identity_holds"] = (1 - blend * (1 + cap) == -delta / 2);
        row["variant_blend"] = rational_to_json(variant);
        row["variant_upper_lhs"] = rational_to_json(variant * cap + 1 - variant);
        row["variant_upper_holds"] = (variant * cap + 1 - variant == delta - 1);
        rows.push_back(std::move(row));
    }
    emit(Json{{"rows", rows}});
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact certification of unit-vector families with small pairwise sums"};
    app.require_subcommand(1);

    std::string in_path, delta_text, norm_text, radius_text, margin_text;
    std::size_t dim = 0;
    unsigned resolution = 3;
    std::uint64_t budget = 0, seed = 1;
    std::size_t target = 8, max_tries = 5000;
    int erratum_count = 20;

    auto* verify = app.add_subcommand("verify", "check a vector family against a norm and delta");
    verify->add_option("--in", in_path, "instance file (default: stdin)");
    verify->add_option("--delta", delta_text, "override the instance delta");
    verify->add_option("--norm", norm_text, "norm JSON overriding the instance norm");

    auto* witness = app.add_subcommand("witness", "decide existence of a realizing norm");
    witness->add_option("--in", in_path, "instance file (default: stdin)");

    auto* synth = app.add_subcommand("synth", "construct a realizing polytope norm");
    synth->add_option("--in", in_path, "instance file (default: stdin)");

    auto* bound = app.add_subcommand("bound", "cardinality bounds for a dimension and delta");
    bound->add_option("--d", dim, "dimension")->required();
    bound->add_option("--delta", delta_text, "pairwise sum budget")->required();
    bound->add_option("--radius", radius_text, "packing radius (default 2)");

    auto* search = app.add_subcommand("search", "maximum additive subset of a candidate grid");
    search->add_option("--norm", norm_text, "norm JSON")->required();
    search->add_option("--resolution", resolution, "grid denominator (default 3)");
    search->add_option("--delta", delta_text, "pairwise sum budget")->required();
    search->add_option("--budget", budget, "search node budget, 0 = exhaustive");

    auto* erratum = app.add_subcommand("erratum", "identity table for the lift blend coefficient");
    erratum->add_option("--count", erratum_count, "number of delta samples (default 20)");

    auto* construct = app.add_subcommand("construct", "emit a known family as an instance file");
    construct->require_subcommand(1);
    auto* cube = construct->add_subcommand("cube", "coordinate family on the unit cube");
    cube->add_option("--d", dim, "dimension")->required();
    cube->add_option("--delta", delta_text, "delta recorded in the file (default 2/3)");
    auto* octa = construct->add_subcommand("octahedron", "four face centroids in l1^3");
    auto* wyner = construct->add_subcommand("wyner", "seeded lifted spherical code");
    wyner->add_option("--d", dim, "base dimension of the sampled unit vectors")->required();
    wyner->add_option("--delta", delta_text, "pairwise sum budget, in (2/3, 2)")->required();
    wyner->add_option("--seed", seed, "sampling seed (default 1)");
    wyner->add_option("--target", target, "vector count to aim for (default 8)");
    wyner->add_option("--max-tries", max_tries, "sampling attempts (default 5000)");
    wyner->add_option("--margin", margin_text, "slack below the inner product cap");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(verify)) return run_verify(in_path, delta_text, norm_text);
        if (app.got_subcommand(witness)) return run_witness(in_path);
        if (app.got_subcommand(synth)) return run_synth(in_path);
        if (app.got_subcommand(bound)) return run_bound(dim, delta_text, radius_text);
        if (app.got_subcommand(search)) return run_search(norm_text, resolution, delta_text, budget);
        if (app.got_subcommand(erratum)) return run_erratum(erratum_count);
        if (app.got_subcommand(construct)) {
            if (construct->got_subcommand(cube)) {
                const Family fam = cube_family(dim);
                const Rational delta =
                    delta_text.empty() ? Rational(2, 3) : parse_rational(delta_text);
                emit(instance_file_to_json({Instance(delta, fam.vectors), fam.norm, {}}));
                return 0;
            }
            if (construct->got_subcommand(octa)) {
                const Family fam = octahedron_instance();
                emit(instance_file_to_json({Instance(Rational(2, 3), fam.vectors), fam.norm, {}}));
                return 0;
            }
            if (construct->got_subcommand(wyner)) {
                SphericalCodeParams params;
                params.dimension = dim;
                params.delta = parse_rational(delta_text);
                params.seed = seed;
                params.target_count = target;
                params.max_tries = max_tries;
                if (!margin_text.empty()) params.margin = parse_rational(margin_text);
                const LiftResult lift = spherical_code_lift(params);
                Json out = instance_file_to_json({lift.instance, {}, lift.witness});
                out["shortfall"] = lift.shortfall;
                out["tries_used"] = lift.tries_used;
                emit(out);
                return 0;
            }
        }
        std::cerr << "no subcommand dispatched\n";
        return 2;
    } catch (const std::exception& e) {
        emit(Json{{"error", e.what()}});
        return 2;
    }
}
