#pragma once

#include <utility>
#include <vector>

#include "visrdv/geometry/contraction.hpp"
#include "visrdv/geometry/point.hpp"

namespace visrdv {

using Edge = std::pair<int, int>;  // always first < second

// Undirected graph on robots 0..n-1 with a sorted, duplicate-free edge list.
struct ProximityGraph {
    int n = 0;
    std::vector<Edge> edges;

    ProximityGraph() = default;
    ProximityGraph(int count, std::vector<Edge> e);

    bool has_edge(int i, int j) const;
    std::vector<std::vector<int>> adjacency() const;
    std::vector<int> neighbors(int i) const;
};

// Which notion of "p sees q" a graph builder uses.
enum class Visibility {
    exact,      // segment keeps epsilon clearance from the environment walls
    polygonal,  // segment lies in the polygonal contracted region (stricter)
};

ProximityGraph visibility_graph(const std::vector<Point>& pts, const ContractedRegion& region,
                                Visibility rule = Visibility::exact);
ProximityGraph disk_graph(const std::vector<Point>& pts, double r);
ProximityGraph range_visibility_graph(const std::vector<Point>& pts, const ContractedRegion& region, double r,
                                      Visibility rule = Visibility::exact);

// Components as sorted member lists, ordered by smallest member.
std::vector<std::vector<int>> connected_components(const ProximityGraph& g);

// Minimum spanning forest over the complete Euclidean graph of each component
// of g.  Ties between equal lengths break on (i, j).
ProximityGraph euclidean_mst(const std::vector<Point>& pts, const ProximityGraph& g);

// Minimum spanning tree of the complete Euclidean graph on `members`.
std::vector<Edge> euclidean_mst_of(const std::vector<Point>& pts, const std::vector<int>& members);

// All maximal cliques of g that contain the edge (i, j), members sorted.
std::vector<std::vector<int>> maximal_cliques_of_edge(const ProximityGraph& g, int i, int j);

// Keeps an edge of g when it belongs to the Euclidean MST of every maximal
// clique of g containing it.
ProximityGraph locally_cliqueless(const std::vector<Point>& pts, const ProximityGraph& g);

bool is_subgraph(const ProximityGraph& small, const ProximityGraph& big);

}  // namespace visrdv
