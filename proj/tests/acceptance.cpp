// Acceptance suite: one pass/fail line per criterion, with wall-clock limits
// enforced. Exits nonzero if any criterion fails.

#include "pairsum/bounds.hpp"
#include "pairsum/constructions.hpp"
#include "pairsum/duality.hpp"
#include "pairsum/lp.hpp"
#include "pairsum/norms.hpp"
#include "pairsum/search.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

using namespace pairsum;

namespace {

struct Checker {
    bool ok = true;
    std::vector<std::string> failures;

    void expect(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            failures.push_back(what);
        }
    }
};

QVector random_point(std::mt19937_64& rng, std::size_t d, int num_bound, int den_bound) {
    std::uniform_int_distribution<int> num(-num_bound, num_bound);
    std::uniform_int_distribution<int> den(1, den_bound);
    QVector v(d);
    for (auto& c : v) c = Rational(num(rng), den(rng));
    return v;
}

// ---- criterion bodies ------------------------------------------------------

void cube_family_exactness(Checker& c) {
    for (std::size_t d : {2u, 4u, 5u, 8u}) {
        const Family fam = cube_family(d);
        const auto report = verify_additive_set(fam.norm, fam.vectors, Rational(2, 3));
        c.expect(report.pass, "cube family d=" + std::to_string(d) + " fails verification");
        c.expect(report.unit_violations.empty(), "cube family has a non-unit vector");
        c.expect(report.tight_pairs.size() == d * (d - 1) / 2,
                 "cube family d=" + std::to_string(d) + " pair sums not all exactly 2/3");
    }
}

void octahedron_configuration(Checker& c) {
    const Family fam = octahedron_instance();
    const auto report = verify_additive_set(fam.norm, fam.vectors, Rational(2, 3));
    c.expect(report.pass && report.tight_pairs.size() == 6,
             "octahedron four-set fails exact verification");
    QVector total = zero_vector(3);
    for (const auto& x : fam.vectors) total = add(total, x);
    c.expect(is_zero_vector(total), "octahedron vectors do not sum to zero");
    c.expect(rank(fam.vectors) == 3, "octahedron vectors do not have rank 3");
    for (std::size_t i = 0; i < 3; ++i) {
        const QVector z = scaled(add(fam.vectors[i], fam.vectors[3]), Rational(3, 2));
        c.expect(z == unit_vector(3, i),
                 "scaled pair sum " + std::to_string(i) + " does not recover the basis");
    }
}

std::vector<Instance> threshold_corpus() {
    std::vector<Instance> corpus;
    for (std::size_t d = 2; d <= 6; ++d) {
        corpus.emplace_back(Rational(2, 3), cube_family(d).vectors);
    }
    corpus.emplace_back(Rational(2, 3), octahedron_instance().vectors);
    return corpus;
}

std::vector<Instance> lifted_corpus() {
    std::vector<Instance> corpus;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        SphericalCodeParams p;
        p.dimension = 5;
        p.delta = Rational(1);
        p.target_count = 5;
        p.max_tries = 5000;
        p.seed = seed;
        corpus.push_back(spherical_code_lift(p).instance);
    }
    return corpus;
}

void duality_round_trip(Checker& c, std::vector<Witness>& threshold_witnesses) {
    std::vector<Instance> corpus = threshold_corpus();
    const std::size_t threshold_count = corpus.size();
    for (auto& inst : lifted_corpus()) corpus.push_back(std::move(inst));
    for (std::size_t k = 0; k < corpus.size(); ++k) {
        const Instance& inst = corpus[k];
        const WitnessResult r = find_witness(inst);
        if (r.status != WitnessResult::Status::Feasible) {
            c.expect(false, "corpus instance " + std::to_string(k) + " unexpectedly infeasible");
            continue;
        }
        if (k < threshold_count) threshold_witnesses.push_back(r.witness);
        const Norm realized = build_norm(inst, r.witness);
        const auto report = verify_additive_set(realized, inst.vectors, inst.delta);
        c.expect(report.pass, "realized norm fails verification on instance " + std::to_string(k));
        for (const auto& x : inst.vectors) {
            c.expect(gauge(realized, x) == 1,
                     "gauge not exactly 1 on instance " + std::to_string(k));
        }
    }
}

void infeasible_below_threshold(Checker& c) {
    std::mt19937_64 rng(424242);
    const Norm linf = Norm::linf(3);
    const Rational delta(3, 5);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<QVector> xs;
        while (xs.size() < 3) {
            QVector v = random_point(rng, 3, 20, 20);
            if (is_zero_vector(v)) continue;
            const Rational g = gauge(linf, v);
            for (auto& coord : v) coord /= g;
            bool fresh = true;
            for (const auto& u : xs) fresh = fresh && u != v;
            if (fresh) xs.push_back(std::move(v));
        }
        const Instance inst(delta, xs);
        const WitnessResult r = find_witness(inst);
        if (r.status != WitnessResult::Status::Infeasible) {
            c.expect(false, "triple " + std::to_string(trial) + " not infeasible at 3/5");
            continue;
        }
        LPResult cert;
        cert.status = LPResult::Status::Infeasible;
        cert.farkas = r.farkas;
        c.expect(check_certificate(witness_subproblem(inst, r.failing_index), cert),
                 "Farkas certificate fails on triple " + std::to_string(trial));
    }
}

void forced_dual_structure(Checker& c, const std::vector<Witness>& threshold_witnesses) {
    const std::vector<Instance> corpus = threshold_corpus();
    c.expect(threshold_witnesses.size() == corpus.size(),
             "missing witnesses from the round-trip corpus");
    for (std::size_t k = 0; k < corpus.size() && k < threshold_witnesses.size(); ++k) {
        if (corpus[k].size() < 3) continue; // d = 2 cube family: not applicable
        const auto forced = forced_dual_values(corpus[k], threshold_witnesses[k]);
        c.expect(forced.has_value() && *forced,
                 "witness " + std::to_string(k) + " escapes the forced -1/3 pairings");
    }
}

void octahedron_norm_recovery(Checker& c) {
    const Family fam = octahedron_instance();
    const Instance inst(Rational(2, 3), fam.vectors);
    const WitnessResult r = find_witness(inst);
    c.expect(r.status == WitnessResult::Status::Feasible, "octahedron instance infeasible");
    if (r.status != WitnessResult::Status::Feasible) return;
    const Norm realized = build_norm(inst, r.witness);
    const Norm l1 = Norm::l1(3);
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 100; ++trial) {
        const QVector x = random_point(rng, 3, 100, 50);
        if (gauge(realized, x) != gauge(l1, x)) {
            c.expect(false, "gauge disagrees with the l1 closed form at trial " +
                                std::to_string(trial));
            return;
        }
    }
}

void bound_values_and_monotonicity(Checker& c) {
    c.expect(closed_form_bound(3, Rational(2, 3)) == 6, "closed form at (3, 2/3) != 6");
    const auto sharp = sharp_bound(3, Rational(2, 3), Rational(2));
    c.expect(sharp.has_value() && *sharp == 6, "sharp bound at (3, 2/3, 2) != 6");
    const auto gram = gram_bound(inner_product_bound(3, Rational(2, 3)));
    c.expect(gram.has_value() && *gram == 4, "gram pipeline at (3, 2/3) != 4");
    const auto trivial = trivial_bound(Rational(1, 2));
    c.expect(trivial.has_value() && *trivial == 2, "triangle-inequality bound at 1/2 != 2");
}

void bound_monotone_sweep(Checker& c) {
    std::vector<Rational> deltas;
    for (int k = 1; k <= 50; ++k) deltas.push_back(Rational(2 * k, 51));
    std::vector<std::vector<BigInt>> closed(11), sharp(11);
    for (std::size_t d = 1; d <= 10; ++d) {
        for (const auto& delta : deltas) {
            closed[d].push_back(closed_form_bound(d, delta));
            const auto s = sharp_bound(d, delta);
            if (!s) {
                c.expect(false, "sharp bound vanished inside the sweep");
                return;
            }
            sharp[d].push_back(*s);
        }
    }
    for (std::size_t d = 1; d <= 10; ++d) {
        for (std::size_t k = 1; k < deltas.size(); ++k) {
            c.expect(closed[d][k] >= closed[d][k - 1], "closed form not monotone in delta");
            c.expect(sharp[d][k] >= sharp[d][k - 1], "sharp bound not monotone in delta");
        }
    }
    for (std::size_t d = 2; d <= 10; ++d) {
        for (std::size_t k = 0; k < deltas.size(); ++k) {
            c.expect(closed[d][k] >= closed[d - 1][k], "closed form not monotone in dimension");
            c.expect(sharp[d][k] >= sharp[d - 1][k], "sharp bound not monotone in dimension");
        }
    }
}

void search_l1_oracle(Checker& c) {
    const Norm l1 = Norm::l1(3);
    const auto candidates = enumerate_candidates(l1, 3);
    const auto graph = build_graph(l1, candidates, Rational(2, 3));
    const CliqueResult r = max_clique(graph);
    c.expect(r.exhaustive, "l1 search was not exhaustive");
    c.expect(r.size == 4, "l1 maximum clique size is " + std::to_string(r.size) + ", not 4");
    if (r.size != 4) return;
    // Signed-permutation image of the tetrahedron set: all coordinates have
    // magnitude 1/3 and each pair of members differs in exactly two of the
    // three sign positions.
    std::vector<QVector> members;
    for (auto idx : r.members) members.push_back(graph.vertices[idx]);
    for (const auto& x : members) {
        for (const auto& coord : x) {
            c.expect(detail::abs_rational(coord) == Rational(1, 3),
                     "clique member coordinate magnitude is not 1/3");
        }
    }
    for (std::size_t i = 0; i < members.size(); ++i) {
        for (std::size_t j = i + 1; j < members.size(); ++j) {
            int differing = 0;
            for (std::size_t k = 0; k < 3; ++k) {
                if (members[i][k] != members[j][k]) ++differing;
            }
            c.expect(differing == 2, "clique members do not differ in exactly two signs");
        }
    }
    c.expect(verify_additive_set(l1, members, Rational(2, 3)).pass,
             "reported clique fails additive verification");
}

void search_sup_oracle(Checker& c, std::size_t d) {
    const Norm linf = Norm::linf(d);
    const auto candidates = enumerate_candidates(linf, 3);
    const auto graph = build_graph(linf, candidates, Rational(2, 3));
    const CliqueResult r = max_clique(graph);
    c.expect(r.exhaustive, "sup-norm search d=" + std::to_string(d) + " not exhaustive");
    c.expect(r.size == d, "sup-norm maximum clique at d=" + std::to_string(d) + " is " +
                              std::to_string(r.size) + ", not " + std::to_string(d));
    std::vector<QVector> members;
    for (auto idx : r.members) members.push_back(graph.vertices[idx]);
    c.expect(verify_additive_set(linf, members, Rational(2, 3)).pass,
             "reported clique fails additive verification");
}

void lifted_codes_at_scale(Checker& c) {
    const auto mean_count = [&](std::size_t d) {
        std::size_t total = 0;
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
            SphericalCodeParams p;
            p.dimension = d;
            p.delta = Rational(1);
            p.target_count = 25;
            p.max_tries = 2000;
            p.seed = seed;
            const LiftResult lift = spherical_code_lift(p);
            c.expect(verify_witness(lift.instance, lift.witness),
                     "lift at d=" + std::to_string(d) + " seed " + std::to_string(seed) +
                         " fails exact verification");
            if (d == 16) {
                c.expect(lift.instance.size() >= 3,
                         "lift at d=16 seed " + std::to_string(seed) + " kept fewer than 3");
            }
            total += lift.instance.size();
        }
        return total;
    };
    const std::size_t total16 = mean_count(16);
    const std::size_t total48 = mean_count(48);
    c.expect(total48 >= total16, "mean kept count did not grow from d=16 to d=48");
}

void blend_identities(Checker& c) {
    for (int k = 1; k <= 20; ++k) {
        const Rational delta = Rational(2, 3) + Rational(4 * k, 63);
        const Rational cap = inner_product_cap(delta);
        const Rational blend = lift_blend(delta);
        c.expect(blend * cap + 1 - blend == delta - 1,
                 "upper blend identity fails at delta " + to_string(delta));
        c.expect(1 - blend * (1 + cap) == -delta / 2,
                 "lower blend identity fails at delta " + to_string(delta));
    }
    // The alternative coefficient misses the upper identity at delta = 1:
    // the left side lands on 2/3 where 0 is required.
    const Rational delta(1);
    const Rational cap = inner_product_cap(delta);
    const Rational variant = lift_blend_variant(delta);
    c.expect(variant * cap + 1 - variant == Rational(2, 3),
             "variant blend value at delta 1 is not the expected 2/3");
    c.expect(variant * cap + 1 - variant != delta - 1,
             "variant blend unexpectedly satisfies the identity");
    const Rational blend = lift_blend(delta);
    c.expect(blend * cap + 1 - blend == 0, "corrected blend fails at delta 1");
}

// ---- harness ---------------------------------------------------------------

struct Criterion {
    int id;
    std::string description;
    double limit_seconds;
    std::function<void(Checker&)> body;
};

} // namespace

int main() {
    std::vector<Witness> threshold_witnesses;

    const std::vector<Criterion> criteria = {
        {1, "cube family exact at 2/3 for d in {2,4,5,8}", 1.0, cube_family_exactness},
        {2, "octahedron four-set: exact, zero sum, rank 3, basis recovery", 1.0,
         octahedron_configuration},
        {3, "round trip: witness then realizing norm on the corpus", 30.0,
         [&](Checker& c) { duality_round_trip(c, threshold_witnesses); }},
        {4, "100 random triples at delta 3/5 infeasible with verified certificates", 30.0,
         infeasible_below_threshold},
        {5, "witnesses at 2/3 with m >= 3 pair off-index at exactly -1/3", 30.0,
         [&](Checker& c) { forced_dual_structure(c, threshold_witnesses); }},
        {6, "octahedron hull gauge equals the l1 closed form on 100 points", 5.0,
         octahedron_norm_recovery},
        {7, "bound values 6 / 6 / 4 / 2 and monotone sweep d<=10 x 50 deltas", 120.0,
         [](Checker& c) {
             const auto t0 = std::chrono::steady_clock::now();
             bound_values_and_monotonicity(c);
             const double point_time =
                 std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
             c.expect(point_time < 1.0, "point bound values exceeded 1 s");
             bound_monotone_sweep(c);
         }},
        {8, "search oracle: l1 tetrahedron and sup-norm cliques of size d", 300.0,
         [](Checker& c) {
             const auto timed = [&c](const std::string& label, auto&& fn) {
                 const auto t0 = std::chrono::steady_clock::now();
                 fn();
                 const double dt =
                     std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
                 c.expect(dt < 60.0, label + " exceeded 60 s");
             };
             timed("l1 search", [&] { search_l1_oracle(c); });
             for (std::size_t d = 2; d <= 5; ++d) {
                 timed("sup-norm search d=" + std::to_string(d),
                       [&] { search_sup_oracle(c, d); });
             }
         }},
        {9, "lifted codes: m >= 3 at d=16, mean growth to d=48, exact witnesses", 60.0,
         lifted_codes_at_scale},
        {10, "blend-coefficient identities, corrected versus printed variant", 1.0,
         blend_identities},
    };

    bool all_ok = true;
    for (const auto& criterion : criteria) {
        Checker checker;
        const auto t0 = std::chrono::steady_clock::now();
        criterion.body(checker);
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (seconds > criterion.limit_seconds) {
            checker.expect(false, "time limit exceeded: " + std::to_string(seconds) + " s > " +
                                      std::to_string(criterion.limit_seconds) + " s");
        }
        std::printf("criterion %2d: %s (%.2f s) %s\n", criterion.id,
                    checker.ok ? "PASS" : "FAIL", seconds, criterion.description.c_str());
        for (const auto& msg : checker.failures) std::printf("    - %s\n", msg.c_str());
        all_ok = all_ok && checker.ok;
    }
    return all_ok ? 0 : 1;
}
