#pragma once

#include "pairsum/linalg.hpp"
#include "pairsum/norms.hpp"
#include "pairsum/rational.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace pairsum {

class InvalidCandidateError : public std::invalid_argument {
  public:
    explicit InvalidCandidateError(const std::string& what) : std::invalid_argument(what) {}
};

/// Finite restriction of the pairwise-sum condition to candidate unit
/// vectors: vertices of gauge exactly 1, an edge where the sum stays within
/// delta. Cliques are exactly the admissible subsets.
struct AdditivityGraph {
    Norm norm;
    Rational delta;
    std::vector<QVector> vertices;
    std::vector<std::vector<std::uint64_t>> adjacency; // bitset rows

    std::size_t size() const { return vertices.size(); }

    bool edge(std::size_t i, std::size_t j) const {
        return (adjacency[i][j >> 6] >> (j & 63)) & 1u;
    }
};

struct CliqueResult {
    std::size_t size = 0;
    std::vector<std::size_t> members; // ascending vertex indices
    bool exhaustive = false;

    bool operator==(const CliqueResult&) const = default;
};

/// All grid points with coordinates of denominator dividing `resolution` in
/// [-1, 1]^d, scaled onto the unit sphere of the norm and deduplicated.
/// Output is sorted lexicographically, so downstream results are
/// reproducible.
inline std::vector<QVector> enumerate_candidates(const Norm& norm, unsigned resolution) {
    if (resolution == 0) throw std::invalid_argument("resolution must be positive");
    const std::size_t d = norm.dimension;
    const long r = static_cast<long>(resolution);
    std::set<QVector, bool (*)(const QVector&, const QVector&)> seen(&lex_less);
    std::vector<long> counter(d, -r);
    for (;;) {
        bool zero = true;
        for (long c : counter) {
            if (c != 0) {
                zero = false;
                break;
            }
        }
        if (!zero) {
            QVector x(d);
            for (std::size_t i = 0; i < d; ++i) x[i] = Rational(counter[i], r);
            const Rational g = gauge(norm, x);
            QVector unit(d);
            for (std::size_t i = 0; i < d; ++i) unit[i] = x[i] / g;
            seen.insert(std::move(unit));
        }
        std::size_t pos = 0;
        while (pos < d && counter[pos] == r) {
            counter[pos] = -r;
            ++pos;
        }
        if (pos == d) break;
        ++counter[pos];
    }
    return {seen.begin(), seen.end()};
}

namespace detail {

inline void set_edge(std::vector<std::vector<std::uint64_t>>& adj, std::size_t i,
                     std::size_t j) {
    adj[i][j >> 6] |= std::uint64_t(1) << (j & 63);
    adj[j][i >> 6] |= std::uint64_t(1) << (i & 63);
}

/// Exact pair test with per-coordinate short circuit for the closed-form
/// norms; the polytope case needs the full gauge.
inline bool pair_within(const Norm& norm, const QVector& u, const QVector& v,
                        const Rational& delta) {
    switch (norm.kind) {
        case Norm::Kind::LInf: {
            for (std::size_t c = 0; c < u.size(); ++c) {
                if (abs_rational(u[c] + v[c]) > delta) return false;
            }
            return true;
        }
        case Norm::Kind::L1: {
            Rational sum(0);
            for (std::size_t c = 0; c < u.size(); ++c) {
                sum += abs_rational(u[c] + v[c]);
                if (sum > delta) return false;
            }
            return true;
        }
        case Norm::Kind::Polytope:
            return gauge(norm, add(u, v)) <= delta;
    }
    return false;
}

/// When every coordinate fits a small common denominator, the whole edge
/// computation runs on machine integers: scale by the lcm and compare
/// against delta cross-multiplied. Returns false when int64 cannot hold the
/// scaled values safely.
inline bool try_scaled_int_edges(const Norm& norm, const std::vector<QVector>& vertices,
                                 const Rational& delta,
                                 std::vector<std::vector<std::uint64_t>>& adj) {
    if (norm.kind == Norm::Kind::Polytope) return false;
    BigInt lcm_den(1);
    for (const auto& v : vertices) {
        for (const auto& c : v) {
            lcm_den = lcm(lcm_den, denominator(c));
            if (lcm_den > (BigInt(1) << 20)) return false;
        }
    }
    const BigInt delta_num_big = numerator(delta), delta_den_big = denominator(delta);
    if (delta_den_big > (BigInt(1) << 20)) return false;
    const std::int64_t scale = lcm_den.convert_to<std::int64_t>();
    const std::int64_t dnum = delta_num_big.convert_to<std::int64_t>();
    const std::int64_t dden = delta_den_big.convert_to<std::int64_t>();
    const std::size_t n = vertices.size();
    const std::size_t d = norm.dimension;
    std::vector<std::int64_t> scaled(n * d);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t c = 0; c < d; ++c) {
            const BigInt s = numerator(vertices[i][c]) * (lcm_den / denominator(vertices[i][c]));
            // Unit vectors have coordinates in [-1, 1], so this fits easily,
            // but guard anyway.
            if (s > (BigInt(1) << 40) || s < -(BigInt(1) << 40)) return false;
            scaled[i * d + c] = s.convert_to<std::int64_t>();
        }
    }
    // |u + v| <= delta per coordinate (sup) or summed (l1), scaled:
    // dden * |su + sv| vs dnum * scale.
    const std::int64_t rhs = dnum * scale;
    const bool sup = norm.kind == Norm::Kind::LInf;
    for (std::size_t i = 0; i < n; ++i) {
        const std::int64_t* ui = &scaled[i * d];
        for (std::size_t j = i + 1; j < n; ++j) {
            const std::int64_t* vj = &scaled[j * d];
            bool within = true;
            std::int64_t acc = 0;
            for (std::size_t c = 0; c < d; ++c) {
                std::int64_t s = ui[c] + vj[c];
                if (s < 0) s = -s;
                if (sup) {
                    if (dden * s > rhs) {
                        within = false;
                        break;
                    }
                } else {
                    acc += s;
                    if (dden * acc > rhs) {
                        within = false;
                        break;
                    }
                }
            }
            if (within) set_edge(adj, i, j);
        }
    }
    return true;
}

} // namespace detail

/// Builds the graph over validated candidates. Every candidate must have
/// gauge exactly 1.
inline AdditivityGraph build_graph(const Norm& norm, std::vector<QVector> candidates,
                                   const Rational& delta) {
    require_delta_in_open_range(delta);
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        if (gauge(norm, candidates[i]) != 1) {
            throw InvalidCandidateError("candidate " + std::to_string(i) +
                                        " does not have gauge 1");
        }
    }
    AdditivityGraph g{norm, delta, std::move(candidates), {}};
    const std::size_t n = g.vertices.size();
    const std::size_t words = (n + 63) / 64;
    g.adjacency.assign(n, std::vector<std::uint64_t>(words, 0));
    if (!detail::try_scaled_int_edges(norm, g.vertices, delta, g.adjacency)) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                if (detail::pair_within(norm, g.vertices[i], g.vertices[j], delta)) {
                    detail::set_edge(g.adjacency, i, j);
                }
            }
        }
    }
    return g;
}

namespace detail {

using Bitset = std::vector<std::uint64_t>;

inline bool bit_test(const Bitset& b, std::size_t i) {
    return (b[i >> 6] >> (i & 63)) & 1u;
}
inline void bit_clear(Bitset& b, std::size_t i) {
    b[i >> 6] &= ~(std::uint64_t(1) << (i & 63));
}
inline std::size_t bit_count(const Bitset& b) {
    std::size_t n = 0;
    for (auto w : b) n += static_cast<std::size_t>(__builtin_popcountll(w));
    return n;
}
inline void bit_and(Bitset& out, const Bitset& a, const Bitset& b) {
    for (std::size_t w = 0; w < out.size(); ++w) out[w] = a[w] & b[w];
}

struct CliqueSearch {
    const AdditivityGraph& g;
    std::uint64_t budget;     // 0 = unlimited
    std::uint64_t nodes = 0;
    bool exhausted_budget = false;
    std::vector<std::size_t> best;
    std::vector<std::size_t> current;
    std::vector<std::size_t> order; // degeneracy order, used for coloring

    explicit CliqueSearch(const AdditivityGraph& graph, std::uint64_t node_budget)
        : g(graph), budget(node_budget) {
        degeneracy_order();
    }

    void degeneracy_order() {
        const std::size_t n = g.size();
        std::vector<std::size_t> degree(n, 0);
        std::vector<bool> removed(n, false);
        for (std::size_t i = 0; i < n; ++i) degree[i] = bit_count(g.adjacency[i]);
        order.reserve(n);
        for (std::size_t step = 0; step < n; ++step) {
            std::size_t pick = n;
            for (std::size_t i = 0; i < n; ++i) {
                if (removed[i]) continue;
                if (pick == n || degree[i] < degree[pick]) pick = i;
            }
            removed[pick] = true;
            order.push_back(pick);
            for (std::size_t i = 0; i < n; ++i) {
                if (!removed[i] && g.edge(pick, i) && degree[i] > 0) --degree[i];
            }
        }
    }

    /// Greedy coloring bound on the candidate set; vertices returned most
    /// colorful last so the branch loop peels them first.
    std::vector<std::pair<std::size_t, std::size_t>> color(const Bitset& cand) const {
        std::vector<std::pair<std::size_t, std::size_t>> colored; // (vertex, color)
        std::vector<Bitset> classes;
        for (std::size_t v : order) {
            if (!bit_test(cand, v)) continue;
            std::size_t c = 0;
            for (; c < classes.size(); ++c) {
                bool clash = false;
                for (std::size_t w = 0; w < classes[c].size(); ++w) {
                    if (classes[c][w] & g.adjacency[v][w]) {
                        clash = true;
                        break;
                    }
                }
                if (!clash) break;
            }
            if (c == classes.size()) classes.emplace_back(cand.size(), 0);
            classes[c][v >> 6] |= std::uint64_t(1) << (v & 63);
            colored.emplace_back(v, c + 1);
        }
        std::stable_sort(colored.begin(), colored.end(),
                         [](const auto& a, const auto& b) { return a.second < b.second; });
        return colored;
    }

    bool out_of_budget() {
        if (budget != 0 && nodes > budget) {
            exhausted_budget = true;
            return true;
        }
        return false;
    }

    void expand(const Bitset& cand) {
        ++nodes;
        if (out_of_budget()) return;
        auto colored = color(cand);
        Bitset remaining = cand;
        for (auto it = colored.rbegin(); it != colored.rend(); ++it) {
            const auto [v, bound] = *it;
            if (current.size() + bound <= best.size()) return;
            current.push_back(v);
            Bitset next(remaining.size());
            bit_and(next, remaining, g.adjacency[v]);
            if (bit_count(next) == 0) {
                if (current.size() > best.size()) best = current;
            } else {
                expand(next);
            }
            current.pop_back();
            if (exhausted_budget) return;
            bit_clear(remaining, v);
        }
    }

    /// Does the candidate set contain a clique of the given size?
    bool exists(const Bitset& cand, std::size_t want) {
        if (want == 0) return true;
        ++nodes;
        if (out_of_budget()) return false;
        auto colored = color(cand);
        if (colored.size() < want) return false;
        if (colored.empty() || colored.back().second < want) return false;
        Bitset remaining = cand;
        for (auto it = colored.rbegin(); it != colored.rend(); ++it) {
            const auto [v, bound] = *it;
            if (bound < want) return false;
            Bitset next(remaining.size());
            bit_and(next, remaining, g.adjacency[v]);
            if (exists(next, want - 1)) return true;
            if (exhausted_budget) return false;
            bit_clear(remaining, v);
        }
        return false;
    }
};

} // namespace detail

/// Exhaustive branch and bound (degeneracy order, greedy-coloring bound).
/// With a node budget the search may stop early and report a nonexhaustive
/// lower bound. Exhaustive results are canonical: the lexicographically
/// smallest maximum clique by vertex index.
inline CliqueResult max_clique(const AdditivityGraph& g, std::uint64_t node_budget = 0) {
    CliqueResult out;
    const std::size_t n = g.size();
    if (n == 0) {
        out.exhaustive = true;
        return out;
    }
    const std::size_t words = (n + 63) / 64;
    detail::Bitset all(words, 0);
    for (std::size_t i = 0; i < n; ++i) all[i >> 6] |= std::uint64_t(1) << (i & 63);

    detail::CliqueSearch search(g, node_budget);
    search.expand(all);
    std::vector<std::size_t> members = search.best;
    const bool exhaustive = !search.exhausted_budget;

    if (exhaustive && members.size() > 1) {
        // Lexicographic minimization: rebuild the clique choosing the
        // smallest viable vertex at each step.
        detail::Bitset remaining = all;
        std::vector<std::size_t> lex;
        for (std::size_t need = members.size(); need > 0; --need) {
            for (std::size_t v = 0; v < n; ++v) {
                if (!detail::bit_test(remaining, v)) continue;
                detail::Bitset next(words);
                detail::bit_and(next, remaining, g.adjacency[v]);
                if (search.exists(next, need - 1)) {
                    lex.push_back(v);
                    remaining = next;
                    break;
                }
            }
        }
        if (lex.size() == members.size() && !search.exhausted_budget) members = lex;
    }

    std::sort(members.begin(), members.end());
    out.size = members.size();
    out.members = std::move(members);
    out.exhaustive = exhaustive && !search.exhausted_budget;
    return out;
}

} // namespace pairsum
