#pragma once

// Shared deterministic generators for the test suites. All randomness uses
// fixed-seed mt19937 so every run sees identical inputs.

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "colog/ast.hpp"
#include "colog/parser.hpp"
#include "colog/types.hpp"

namespace testsupport {

using colog::Row;
using colog::Value;

inline std::mt19937 rng(std::uint32_t seed) { return std::mt19937(seed); }

/// Random column values; domain controls duplication, skew forces ~90% of
/// the values onto a single key.
inline std::vector<Value> random_values(std::mt19937& g, std::size_t n, Value domain,
                                        bool skew = false) {
    std::uniform_int_distribution<Value> dist(0, domain);
    std::vector<Value> out(n);
    for (auto& v : out) v = dist(g);
    if (skew && n > 0) {
        const Value hot = dist(g);
        std::uniform_int_distribution<int> pct(0, 99);
        for (auto& v : out)
            if (pct(g) < 90) v = hot;
    }
    return out;
}

inline std::vector<Row> random_rows(std::mt19937& g, std::size_t n, std::size_t arity,
                                    Value domain) {
    std::uniform_int_distribution<Value> dist(0, domain);
    std::vector<Row> rows(n, Row(arity));
    for (auto& r : rows)
        for (auto& v : r) v = dist(g);
    return rows;
}

// --- Graphs --------------------------------------------------------------

inline std::vector<Row> path_graph(std::size_t nodes) {
    std::vector<Row> edges;
    for (std::size_t i = 0; i + 1 < nodes; ++i)
        edges.push_back({static_cast<Value>(i), static_cast<Value>(i + 1)});
    return edges;
}

inline std::vector<Row> cycle_graph(std::size_t nodes) {
    std::vector<Row> edges;
    for (std::size_t i = 0; i < nodes; ++i)
        edges.push_back({static_cast<Value>(i), static_cast<Value>((i + 1) % nodes)});
    return edges;
}

inline std::vector<Row> erdos_renyi(std::mt19937& g, std::size_t nodes, double p) {
    std::bernoulli_distribution coin(p);
    std::vector<Row> edges;
    for (std::size_t u = 0; u < nodes; ++u)
        for (std::size_t v = 0; v < nodes; ++v)
            if (u != v && coin(g))
                edges.push_back({static_cast<Value>(u), static_cast<Value>(v)});
    return edges;
}

/// Balanced binary tree with parent->child edges; nodes numbered from 1 in
/// heap order, depth counted in edge levels.
inline std::vector<Row> binary_tree(std::size_t depth) {
    std::vector<Row> edges;
    const std::size_t nodes = (std::size_t(1) << (depth + 1)) - 1;
    for (std::size_t child = 2; child <= nodes; ++child)
        edges.push_back({static_cast<Value>(child / 2), static_cast<Value>(child)});
    return edges;
}

/// Deterministic 3-regular mesh: `components` disjoint brick-wall tori of
/// width x height nodes each. Every node has one horizontal ring neighbour
/// on each side plus exactly one vertical edge, giving undirected degree 3;
/// both directions of every undirected edge are emitted, so the directed
/// edge count is 3 * components * width * height.
inline std::vector<Row> mesh_graph(std::size_t components, std::size_t width,
                                   std::size_t height) {
    std::vector<Row> edges;
    auto node = [&](std::size_t c, std::size_t x, std::size_t y) {
        return static_cast<Value>(c * width * height + y * width + x);
    };
    for (std::size_t c = 0; c < components; ++c) {
        for (std::size_t y = 0; y < height; ++y) {
            for (std::size_t x = 0; x < width; ++x) {
                const Value a = node(c, x, y);
                const Value right = node(c, (x + 1) % width, y);
                edges.push_back({a, right});
                edges.push_back({right, a});
                if ((x + y) % 2 == 0) {
                    const Value up = node(c, x, (y + 1) % height);
                    edges.push_back({a, up});
                    edges.push_back({up, a});
                }
            }
        }
    }
    return edges;
}

// --- Programs ------------------------------------------------------------

inline colog::Program tc_program() {
    return colog::parse_program("reach(x, y) :- edge(x, y).\n"
                                "reach(x, z) :- edge(x, y), reach(y, z).\n");
}

inline colog::Program sg_program() {
    return colog::parse_program("sg(x, y) :- edge(p, x), edge(p, y), x != y.\n"
                                "sg(x, y) :- edge(a, x), sg(a, b), edge(b, y), x != y.\n");
}

inline std::set<Row> to_set(const std::vector<Row>& rows) {
    return std::set<Row>(rows.begin(), rows.end());
}

inline std::string format_rows(const std::set<Row>& rows) {
    std::ostringstream os;
    for (const Row& r : rows) {
        for (std::size_t j = 0; j < r.size(); ++j) {
            if (j) os << '\t';
            os << r[j];
        }
        os << '\n';
    }
    return os.str();
}

} // namespace testsupport
