#include "pairsum/duality.hpp"

#include "pairsum/constructions.hpp"
#include "support.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace pairsum;

namespace {

Instance cube_instance(std::size_t d) {
    return Instance(Rational(2, 3), cube_family(d).vectors);
}

Instance octa_instance() {
    return Instance(Rational(2, 3), octahedron_instance().vectors);
}

/// The duals forced at delta = 2/3 for the octahedron set are three times
/// the vectors themselves.
Witness octa_witness() {
    Witness w;
    for (const auto& x : octahedron_instance().vectors) w.duals.push_back(scaled(x, Rational(3)));
    return w;
}

QVector random_linf_unit(std::mt19937_64& rng, std::size_t d) {
    QVector v = testsupport::random_nonzero_vector(rng, d, 20);
    const Rational g = gauge(Norm::linf(d), v);
    for (auto& c : v) c /= g;
    return v;
}

} // namespace

TEST_CASE("standard basis duals certify the cube family", "[duality]") {
    for (std::size_t d : {3u, 4u, 5u}) {
        const Instance inst = cube_instance(d);
        Witness w;
        for (std::size_t i = 0; i < d; ++i) w.duals.push_back(unit_vector(d, i));
        CHECK(verify_witness(inst, w));
    }
}

TEST_CASE("perturbing one dual breaks the witness", "[duality]") {
    const Instance inst = cube_instance(3);
    Witness w;
    for (std::size_t i = 0; i < 3; ++i) w.duals.push_back(unit_vector(3, i));
    w.duals[0][0] += Rational(1, 100);
    CHECK_FALSE(verify_witness(inst, w));
}

TEST_CASE("octahedron duals read off the forced pairings", "[duality]") {
    const Instance inst = octa_instance();
    const Witness w = octa_witness();
    CHECK(verify_witness(inst, w));
    const auto forced = forced_dual_values(inst, w);
    REQUIRE(forced.has_value());
    CHECK(*forced);
}

TEST_CASE("find_witness is feasible on the known families", "[duality]") {
    for (std::size_t d : {2u, 3u, 4u, 5u}) {
        const Instance inst = cube_instance(d);
        const WitnessResult r = find_witness(inst);
        REQUIRE(r.status == WitnessResult::Status::Feasible);
        CHECK(verify_witness(inst, r.witness));
    }
    const Instance octa = octa_instance();
    const WitnessResult r = find_witness(octa);
    REQUIRE(r.status == WitnessResult::Status::Feasible);
    CHECK(verify_witness(octa, r.witness));
}

TEST_CASE("single vector instance is feasible", "[duality]") {
    const Instance inst(Rational(1), {unit_vector(2, 0)});
    const WitnessResult r = find_witness(inst);
    REQUIRE(r.status == WitnessResult::Status::Feasible);
    CHECK(verify_witness(inst, r.witness));
    CHECK(dot(inst.vectors[0], r.witness.duals[0]) == 1);
}

TEST_CASE("forced dual pairings at the threshold", "[duality]") {
    // Any witness the solver finds at delta = 2/3 with at least three
    // vectors must pair every off-index at exactly -1/3.
    for (std::size_t d : {3u, 4u, 5u, 6u}) {
        const Instance inst = cube_instance(d);
        const WitnessResult r = find_witness(inst);
        REQUIRE(r.status == WitnessResult::Status::Feasible);
        const auto forced = forced_dual_values(inst, r.witness);
        REQUIRE(forced.has_value());
        CHECK(*forced);
    }
}

TEST_CASE("forced dual check does not apply below three vectors", "[duality]") {
    const Instance inst = cube_instance(2);
    const WitnessResult r = find_witness(inst);
    REQUIRE(r.status == WitnessResult::Status::Feasible);
    CHECK_FALSE(forced_dual_values(inst, r.witness).has_value());
}

TEST_CASE("three unit vectors below the threshold are always infeasible", "[duality]") {
    std::mt19937_64 rng(31);
    const Rational delta(3, 5);
    for (int trial = 0; trial < 25; ++trial) {
        std::vector<QVector> xs;
        while (xs.size() < 3) {
            QVector v = random_linf_unit(rng, 3);
            bool fresh = true;
            for (const auto& u : xs) fresh = fresh && u != v;
            if (fresh) xs.push_back(std::move(v));
        }
        const Instance inst(delta, xs);
        const WitnessResult r = find_witness(inst);
        REQUIRE(r.status == WitnessResult::Status::Infeasible);
        // The Farkas certificate must verify against the failing subsystem.
        LPResult cert;
        cert.status = LPResult::Status::Infeasible;
        cert.farkas = r.farkas;
        CHECK(check_certificate(witness_subproblem(inst, r.failing_index), cert));
    }
}

TEST_CASE("round trip: build_norm realizes the instance", "[duality]") {
    std::vector<Instance> corpus;
    for (std::size_t d : {2u, 3u, 4u, 5u}) corpus.push_back(cube_instance(d));
    corpus.push_back(octa_instance());
    for (const auto& inst : corpus) {
        const WitnessResult r = find_witness(inst);
        REQUIRE(r.status == WitnessResult::Status::Feasible);
        const Norm realized = build_norm(inst, r.witness);
        const auto report = verify_additive_set(realized, inst.vectors, inst.delta);
        CHECK(report.pass);
        for (const auto& x : inst.vectors) CHECK(gauge(realized, x) == 1);
    }
}

TEST_CASE("octahedron hull reproduces the l1 norm", "[duality]") {
    const Instance inst = octa_instance();
    const Norm realized = build_norm(inst, octa_witness());
    const Norm l1 = Norm::l1(3);
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 30; ++trial) {
        const QVector x = testsupport::random_vector(rng, 3, 50);
        CHECK(gauge(realized, x) == gauge(l1, x));
    }
}

TEST_CASE("thickening: a single vector in the plane yields the cross polytope", "[duality]") {
    const Instance inst(Rational(1), {unit_vector(2, 0)});
    Witness w{{unit_vector(2, 0)}};
    REQUIRE(verify_witness(inst, w));
    const Norm n = build_norm(inst, w);
    REQUIRE(n.generators.size() == 2); // e_1 plus one complement direction
    CHECK(gauge(n, {Rational(1), Rational(1)}) == 2);
    CHECK(gauge(n, unit_vector(2, 0)) == 1);
}

TEST_CASE("build_norm rejects invalid witnesses", "[duality]") {
    const Instance inst = cube_instance(3);
    Witness w;
    for (std::size_t i = 0; i < 3; ++i) w.duals.push_back(scaled(unit_vector(3, i), Rational(2)));
    CHECK_THROWS_AS(build_norm(inst, w), InvalidWitnessError);
}

TEST_CASE("antipodal pairs contribute no sum generator", "[duality]") {
    const Instance inst(Rational(1), {unit_vector(2, 0), negated(unit_vector(2, 0))});
    const WitnessResult r = find_witness(inst);
    REQUIRE(r.status == WitnessResult::Status::Feasible);
    const Norm n = build_norm(inst, r.witness);
    CHECK(verify_additive_set(n, inst.vectors, inst.delta).pass);
}

TEST_CASE("feasible families at 2/3 with m != 4 are linearly independent", "[duality]") {
    for (std::size_t d : {3u, 5u, 6u}) {
        const Instance inst = cube_instance(d);
        REQUIRE(find_witness(inst).status == WitnessResult::Status::Feasible);
        CHECK(rank(inst.vectors) == inst.size());
    }
}

TEST_CASE("the four-vector case: zero sum and a basis from the pair sums", "[duality]") {
    const Instance inst = octa_instance();
    QVector sum = zero_vector(3);
    for (const auto& x : inst.vectors) sum = add(sum, x);
    CHECK(is_zero_vector(sum));
    std::vector<QVector> z;
    for (std::size_t i = 0; i < 3; ++i) {
        z.push_back(scaled(add(inst.vectors[i], inst.vectors[3]), Rational(3, 2)));
    }
    CHECK(rank(z) == 3);
}

TEST_CASE("a linear image of the four-set keeps its structure", "[duality]") {
    // Push the configuration through an invertible map; existence of a
    // realizing norm is coordinate free, so the transformed instance stays
    // feasible, still sums to zero, and its scaled pair sums still span.
    const QMatrix m = {{Rational(1), Rational(1), Rational(0)},
                       {Rational(0), Rational(1), Rational(0)},
                       {Rational(2), Rational(0), Rational(1)}};
    const auto apply = [&m](const QVector& v) {
        QVector out(3, Rational(0));
        for (std::size_t r = 0; r < 3; ++r) out[r] = dot(m[r], v);
        return out;
    };
    std::vector<QVector> xs;
    for (const auto& x : octa_instance().vectors) xs.push_back(apply(x));
    const Instance inst(Rational(2, 3), xs);

    const WitnessResult r = find_witness(inst);
    REQUIRE(r.status == WitnessResult::Status::Feasible);
    const auto forced = forced_dual_values(inst, r.witness);
    REQUIRE(forced.has_value());
    CHECK(*forced);

    QVector sum = zero_vector(3);
    for (const auto& x : xs) sum = add(sum, x);
    CHECK(is_zero_vector(sum));
    std::vector<QVector> z;
    for (std::size_t i = 0; i < 3; ++i) z.push_back(scaled(add(xs[i], xs[3]), Rational(3, 2)));
    CHECK(rank(z) == 3);

    const Norm realized = build_norm(inst, r.witness);
    CHECK(verify_additive_set(realized, xs, inst.delta).pass);
}

TEST_CASE("kernel coefficient equality", "[duality]") {
    CHECK(kernel_equal_coefficients(octa_instance().vectors));
    CHECK(kernel_equal_coefficients({unit_vector(2, 0), unit_vector(2, 1)}));
    CHECK_FALSE(kernel_equal_coefficients(
        {unit_vector(2, 0), negated(unit_vector(2, 0)), unit_vector(2, 1)}));
}

TEST_CASE("instance validation", "[duality]") {
    CHECK_THROWS_AS(Instance(Rational(2, 3), {}), std::invalid_argument);
    CHECK_THROWS_AS(Instance(Rational(2, 3), {zero_vector(2)}), std::invalid_argument);
    CHECK_THROWS_AS(Instance(Rational(2, 3), {unit_vector(2, 0), unit_vector(2, 0)}),
                    DuplicateInputError);
    CHECK_THROWS_AS(Instance(Rational(5, 2), {unit_vector(2, 0)}), DeltaRangeError);
    CHECK_NOTHROW(Instance(Rational(2), {unit_vector(2, 0)})); // delta = 2 is allowed here
}
