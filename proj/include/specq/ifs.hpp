#pragma once

#include <map>
#include <optional>
#include <queue>

#include "specq/algebraic.hpp"

namespace specq {

// Homogeneous IFS {x -> rho x + b_i} with 0 = b_0 < ... < b_m = 1 - rho.
struct HomogeneousIFS {
    AlgebraicReal ctx;
    FieldElement rho;
    FieldElement rho_inv;
    std::vector<FieldElement> translations; // b_0 .. b_m
    bool covering = false;                  // b_{i+1} - b_i <= rho for all i

    int m() const { return static_cast<int>(translations.size()) - 1; }
};

inline bool covering_check(const HomogeneousIFS& f) {
    for (size_t i = 0; i + 1 < f.translations.size(); ++i)
        if ((f.translations[i + 1] - f.translations[i]).compare(f.rho) > 0) return false;
    return true;
}

// Validates 0 < rho < 1 and 0 = b_0 < ... < b_m = 1 - rho exactly.
inline HomogeneousIFS make_ifs(const AlgebraicReal& ctx, const FieldElement& rho,
                               std::vector<FieldElement> translations) {
    if (rho.compare_rational(Rat(0)) <= 0 || rho.compare_rational(Rat(1)) >= 0)
        throw OutOfRange("contraction ratio must lie in (0,1)");
    if (translations.size() < 2) throw OutOfRange("need at least two maps (m >= 1)");
    if (!translations.front().is_zero()) throw OutOfRange("b_0 must be 0");
    if (!(FieldElement::one(ctx) - rho).equals(translations.back()))
        throw OutOfRange("b_m must equal 1 - rho");
    for (size_t i = 0; i + 1 < translations.size(); ++i)
        if (translations[i].compare(translations[i + 1]) >= 0)
            throw OutOfRange("translations must be strictly increasing");
    HomogeneousIFS f{ctx, rho, FieldElement::one(ctx) / rho, std::move(translations), false};
    f.covering = covering_check(f);
    return f;
}

// The paper's special family: rho = 1/q, b_i = i(1-1/q)/m, for 1 < q <= m+1.
inline HomogeneousIFS ifs_from_q_m(const AlgebraicReal& q, int m) {
    if (m < 1) throw OutOfRange("m must be a positive integer");
    if (q.compare_rational(Rat(1)) <= 0 || q.compare_rational(Rat(m + 1)) > 0)
        throw OutOfRange("ifs_from_q_m requires 1 < q <= m+1");
    FieldElement one = FieldElement::one(q);
    FieldElement rho = one / FieldElement::generator(q);
    FieldElement span = one - rho;
    std::vector<FieldElement> bs;
    for (int i = 0; i <= m; ++i) bs.push_back(make_rat(i, m) * span);
    return make_ifs(q, rho, std::move(bs));
}

// Sorted difference set B = {b_s - b_t}, deduplicated exactly. Symmetric.
inline std::vector<FieldElement> difference_set(const HomogeneousIFS& f) {
    std::vector<FieldElement> all;
    for (const auto& bs : f.translations)
        for (const auto& bt : f.translations) all.push_back(bs - bt);
    std::sort(all.begin(), all.end(),
              [](const FieldElement& a, const FieldElement& b) { return a.compare(b) < 0; });
    std::vector<FieldElement> out;
    for (auto& d : all)
        if (out.empty() || out.back().compare(d) != 0) out.push_back(std::move(d));
    return out;
}

struct TransitionResult {
    bool exit = false;
    FieldElement node; // |v'| when not exit
};

// One digit step of the normalized-difference recursion d' = (d + delta)/rho;
// |d'| >= 1 exits, otherwise |d'| is the successor node.
inline TransitionResult transition(const FieldElement& v, const FieldElement& delta,
                                   const HomogeneousIFS& f) {
    if (v.sign() < 0 || v.compare_rational(Rat(1)) >= 0)
        throw OutOfRange("transition requires 0 <= v < 1");
    bool in_B = false;
    for (const auto& d : difference_set(f))
        if (d.equals(delta)) { in_B = true; break; }
    if (!in_B) throw DeltaNotInB("delta is not a translation difference");
    FieldElement next = (v + delta) * f.rho_inv;
    if (next.sign() < 0) next = -next;
    if (next.compare_rational(Rat(1)) >= 0) return {true, FieldElement::zero(f.ctx)};
    return {false, std::move(next)};
}

// Directed graph on the absolute values of exactly represented normalized
// differences in [0,1). Finiteness of the closure is the finite type
// condition with Gamma = node set.
struct NeighborGraph {
    HomogeneousIFS ifs;
    std::vector<FieldElement> deltas; // sorted B
    std::vector<FieldElement> nodes;  // discovery order; nodes[0] = 0
    std::vector<double> node_floats;
    // edges[i][k]: successor of nodes[i] under deltas[k]; -1 encodes Exit,
    // -2 a node left unexplored because the budget was exhausted
    std::vector<std::vector<int>> edges;
    bool complete = false;
    int budget = 0;
};

namespace detail {

struct NodeKey {
    FieldElement v;
    double lo, hi;
};

struct NodeKeyLess {
    bool operator()(const NodeKey& a, const NodeKey& b) const {
        if (a.hi < b.lo) return true;  // certified disjoint hulls
        if (b.hi < a.lo) return false;
        return a.v.compare(b.v) < 0;   // overlap: decide exactly
    }
};

} // namespace detail

// Deterministic BFS closure from node 0: frontier processed in ascending
// value order, deltas in ascending order, deduplication by exact equality.
inline NeighborGraph build_neighbor_graph(const HomogeneousIFS& f, int budget = 100000) {
    NeighborGraph g{f, difference_set(f), {}, {}, {}, false, budget};
    std::map<detail::NodeKey, int, detail::NodeKeyLess> index;

    auto add_node = [&](const FieldElement& v) -> int {
        auto hull = v.approx_hull();
        detail::NodeKey key{v, hull.first, hull.second};
        auto it = index.find(key);
        if (it != index.end()) return it->second;
        int id = static_cast<int>(g.nodes.size());
        index.emplace(std::move(key), id);
        g.nodes.push_back(v);
        g.node_floats.push_back((hull.first + hull.second) / 2);
        return id;
    };

    add_node(FieldElement::zero(f.ctx));
    std::vector<int> frontier = {0};
    bool exceeded = false;
    while (!frontier.empty() && !exceeded) {
        std::sort(frontier.begin(), frontier.end(), [&](int a, int b) {
            return g.nodes[static_cast<size_t>(a)].compare(g.nodes[static_cast<size_t>(b)]) < 0;
        });
        std::vector<int> next;
        for (int id : frontier) {
            g.edges.resize(g.nodes.size());
            auto& row = g.edges[static_cast<size_t>(id)];
            row.assign(g.deltas.size(), -2);
            for (size_t k = 0; k < g.deltas.size(); ++k) {
                FieldElement img = (g.nodes[static_cast<size_t>(id)] + g.deltas[k]) * f.rho_inv;
                if (img.sign() < 0) img = -img;
                if (img.compare_rational(Rat(1)) >= 0) {
                    row[k] = -1;
                    continue;
                }
                size_t before = g.nodes.size();
                int target = add_node(img);
                row[k] = target;
                if (g.nodes.size() > before) {
                    next.push_back(target);
                    if (g.nodes.size() > static_cast<size_t>(budget)) {
                        exceeded = true;
                        break;
                    }
                }
            }
            if (exceeded) break;
        }
        frontier = std::move(next);
    }
    g.edges.resize(g.nodes.size());
    g.complete = !exceeded;
    return g;
}

// Minimal positive node value: a valid weak separation constant. For the
// trivial graph {0} every nonzero normalized difference is >= 1, so c = 1.
inline FieldElement wsc_constant(const NeighborGraph& g) {
    if (!g.complete) throw IncompleteGraph("WSC constant requires a terminated graph");
    if (g.nodes.size() == 1) return FieldElement::one(g.ifs.ctx);
    FieldElement best = g.nodes[1];
    for (size_t i = 2; i < g.nodes.size(); ++i)
        if (g.nodes[i].compare(best) < 0) best = g.nodes[i];
    return best;
}

// Smallest k such that every node reaches node 0 within k transitions;
// absent when some node cannot reach 0.
inline std::optional<int> completion_depth(const NeighborGraph& g) {
    if (!g.complete) throw IncompleteGraph("completion depth requires a terminated graph");
    size_t n = g.nodes.size();
    std::vector<std::vector<int>> rev(n);
    for (size_t i = 0; i < n; ++i)
        for (int t : g.edges[i])
            if (t >= 0) rev[static_cast<size_t>(t)].push_back(static_cast<int>(i));
    std::vector<int> dist(n, -1);
    std::queue<int> bfs;
    dist[0] = 0;
    bfs.push(0);
    while (!bfs.empty()) {
        int u = bfs.front();
        bfs.pop();
        for (int w : rev[static_cast<size_t>(u)])
            if (dist[static_cast<size_t>(w)] < 0) {
                dist[static_cast<size_t>(w)] = dist[static_cast<size_t>(u)] + 1;
                bfs.push(w);
            }
    }
    int depth = 0;
    for (size_t i = 0; i < n; ++i) {
        if (dist[i] < 0) return std::nullopt;
        depth = std::max(depth, dist[i]);
    }
    return depth;
}

// Exhaustive oracle: the exact set of |rho^{-k}(phi_I(0) - phi_J(0))| < 1
// over all same-length word pairs with k <= n, computed from the direct
// point formula (independent of the transition recursion).
inline std::vector<FieldElement> brute_force_differences(const HomogeneousIFS& f, int n) {
    if (n < 1) throw OutOfRange("depth must be positive");
    double pairs = std::pow(static_cast<double>(f.m() + 1), 2.0 * n);
    if (pairs > 1e8) throw TooLarge("(m+1)^(2n) exceeds the oracle guard");

    auto less = [](const FieldElement& a, const FieldElement& b) { return a.compare(b) < 0; };
    std::vector<FieldElement> result{FieldElement::zero(f.ctx)};

    std::vector<FieldElement> points{FieldElement::zero(f.ctx)}; // phi_I(0) values, dedup
    FieldElement rho_pow = FieldElement::one(f.ctx);             // rho^k
    FieldElement rho_inv_pow = FieldElement::one(f.ctx);         // rho^{-k}
    for (int k = 1; k <= n; ++k) {
        // extend words by one digit: phi_{I i}(0) = phi_I(0) + rho^{k-1} b_i
        std::vector<FieldElement> extended;
        extended.reserve(points.size() * f.translations.size());
        for (const auto& v : points)
            for (const auto& b : f.translations)
                extended.push_back(b.is_zero() ? v : v + rho_pow * b);
        std::sort(extended.begin(), extended.end(), less);
        points.clear();
        for (auto& v : extended)
            if (points.empty() || points.back().compare(v) != 0) points.push_back(std::move(v));
        rho_pow = rho_pow * f.rho;
        rho_inv_pow = rho_inv_pow * f.rho_inv;

        // all pairwise differences below rho^k, normalized by rho^{-k}
        for (size_t i = 0; i < points.size(); ++i) {
            for (size_t j = i + 1; j < points.size(); ++j) {
                FieldElement d = points[j] - points[i];
                if (d.compare(rho_pow) >= 0) break; // sorted: larger j only grows
                result.push_back(d * rho_inv_pow);
            }
        }
    }
    std::sort(result.begin(), result.end(), less);
    std::vector<FieldElement> dedup;
    for (auto& v : result)
        if (dedup.empty() || dedup.back().compare(v) != 0) dedup.push_back(std::move(v));
    return dedup;
}

// Max number of distinct depth-n points phi_I(0) in a closed window of
// length rho^n (the pigeonhole quantity of the WSC proof).
inline long overlap_multiplicity(const HomogeneousIFS& f, int n) {
    if (n < 1) throw OutOfRange("depth must be positive");
    if (f.m() == 0) return 1;
    double count = std::pow(static_cast<double>(f.m() + 1), n);
    if (count > 1e8) throw TooLarge("(m+1)^n exceeds the enumeration guard");

    auto less = [](const FieldElement& a, const FieldElement& b) { return a.compare(b) < 0; };
    std::vector<FieldElement> points{FieldElement::zero(f.ctx)};
    FieldElement rho_pow = FieldElement::one(f.ctx);
    for (int k = 1; k <= n; ++k) {
        std::vector<FieldElement> extended;
        extended.reserve(points.size() * f.translations.size());
        for (const auto& v : points)
            for (const auto& b : f.translations)
                extended.push_back(b.is_zero() ? v : v + rho_pow * b);
        std::sort(extended.begin(), extended.end(), less);
        points.clear();
        for (auto& v : extended)
            if (points.empty() || points.back().compare(v) != 0) points.push_back(std::move(v));
        rho_pow = rho_pow * f.rho;
    }
    long best = 1;
    size_t j = 0;
    for (size_t i = 0; i < points.size(); ++i) {
        if (j < i) j = i;
        while (j + 1 < points.size() &&
               (points[j + 1] - points[i]).compare(rho_pow) <= 0)
            ++j;
        best = std::max(best, static_cast<long>(j - i + 1));
    }
    return best;
}

} // namespace specq
