#include "visrdv/graphs/proximity.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <tuple>

namespace visrdv {

ProximityGraph::ProximityGraph(int count, std::vector<Edge> e) : n(count), edges(std::move(e)) {
    for (Edge& x : edges) {
        if (x.first == x.second || x.first < 0 || x.second < 0 || x.first >= n || x.second >= n)
            throw std::invalid_argument("graph edge out of range");
        if (x.first > x.second) std::swap(x.first, x.second);
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
}

bool ProximityGraph::has_edge(int i, int j) const {
    if (i > j) std::swap(i, j);
    return std::binary_search(edges.begin(), edges.end(), Edge{i, j});
}

std::vector<std::vector<int>> ProximityGraph::adjacency() const {
    std::vector<std::vector<int>> adj(n);
    for (auto [a, b] : edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    for (auto& row : adj) std::sort(row.begin(), row.end());
    return adj;
}

std::vector<int> ProximityGraph::neighbors(int i) const {
    std::vector<int> out;
    for (auto [a, b] : edges) {
        if (a == i) out.push_back(b);
        if (b == i) out.push_back(a);
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

bool sees(const ContractedRegion& region, Point p, Point q, Visibility rule) {
    return rule == Visibility::exact ? region.robustly_visible(p, q) : region.sees(p, q);
}

struct DisjointSets {
    std::vector<int> parent;
    explicit DisjointSets(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (a > b) std::swap(a, b);
        parent[b] = a;
        return true;
    }
};

}  // namespace

ProximityGraph visibility_graph(const std::vector<Point>& pts, const ContractedRegion& region, Visibility rule) {
    int n = static_cast<int>(pts.size());
    std::vector<Edge> e;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (sees(region, pts[i], pts[j], rule)) e.push_back({i, j});
    return {n, std::move(e)};
}

ProximityGraph disk_graph(const std::vector<Point>& pts, double r) {
    int n = static_cast<int>(pts.size());
    std::vector<Edge> e;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (dist(pts[i], pts[j]) <= r) e.push_back({i, j});
    return {n, std::move(e)};
}

ProximityGraph range_visibility_graph(const std::vector<Point>& pts, const ContractedRegion& region, double r,
                                      Visibility rule) {
    int n = static_cast<int>(pts.size());
    std::vector<Edge> e;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (dist(pts[i], pts[j]) <= r && sees(region, pts[i], pts[j], rule)) e.push_back({i, j});
    return {n, std::move(e)};
}

std::vector<std::vector<int>> connected_components(const ProximityGraph& g) {
    DisjointSets ds(g.n);
    for (auto [a, b] : g.edges) ds.unite(a, b);
    std::vector<std::vector<int>> out;
    std::vector<int> slot(g.n, -1);
    for (int i = 0; i < g.n; ++i) {
        int root = ds.find(i);
        if (slot[root] < 0) {
            slot[root] = static_cast<int>(out.size());
            out.push_back({});
        }
        out[slot[root]].push_back(i);
    }
    return out;
}

std::vector<Edge> euclidean_mst_of(const std::vector<Point>& pts, const std::vector<int>& members) {
    std::vector<std::tuple<double, int, int>> cand;
    for (size_t a = 0; a < members.size(); ++a)
        for (size_t b = a + 1; b < members.size(); ++b) {
            int i = std::min(members[a], members[b]), j = std::max(members[a], members[b]);
            cand.emplace_back(dist(pts[i], pts[j]), i, j);
        }
    std::sort(cand.begin(), cand.end());
    DisjointSets ds(static_cast<int>(pts.size()));
    std::vector<Edge> out;
    for (auto [d, i, j] : cand)
        if (ds.unite(i, j)) out.push_back({i, j});
    std::sort(out.begin(), out.end());
    return out;
}

ProximityGraph euclidean_mst(const std::vector<Point>& pts, const ProximityGraph& g) {
    std::vector<Edge> all;
    for (const auto& comp : connected_components(g)) {
        auto t = euclidean_mst_of(pts, comp);
        all.insert(all.end(), t.begin(), t.end());
    }
    return {g.n, std::move(all)};
}

namespace {

void bron_kerbosch(const std::vector<std::vector<int>>& adj, std::vector<int>& r, std::vector<int> p, std::vector<int> x,
                   std::vector<std::vector<int>>& out) {
    if (p.empty() && x.empty()) {
        std::vector<int> c = r;
        std::sort(c.begin(), c.end());
        out.push_back(std::move(c));
        return;
    }
    auto in = [&](int v, int u) { return std::binary_search(adj[v].begin(), adj[v].end(), u); };
    int pivot = !p.empty() ? p[0] : x[0];
    size_t best = 0;
    for (const auto* set : {&p, &x})
        for (int u : *set) {
            size_t cnt = 0;
            for (int v : p) cnt += in(u, v);
            if (cnt > best) {
                best = cnt;
                pivot = u;
            }
        }
    std::vector<int> candidates;
    for (int v : p)
        if (!in(pivot, v)) candidates.push_back(v);
    for (int v : candidates) {
        std::vector<int> np, nx;
        for (int u : p)
            if (in(v, u)) np.push_back(u);
        for (int u : x)
            if (in(v, u)) nx.push_back(u);
        r.push_back(v);
        bron_kerbosch(adj, r, np, nx, out);
        r.pop_back();
        p.erase(std::find(p.begin(), p.end(), v));
        x.push_back(v);
    }
}

}  // namespace

std::vector<std::vector<int>> maximal_cliques_of_edge(const ProximityGraph& g, int i, int j) {
    if (!g.has_edge(i, j)) throw std::invalid_argument("edge is not in the graph");
    auto adj = g.adjacency();
    std::vector<int> common;
    std::set_intersection(adj[i].begin(), adj[i].end(), adj[j].begin(), adj[j].end(), std::back_inserter(common));
    std::vector<int> r{i, j};
    std::vector<std::vector<int>> out;
    bron_kerbosch(adj, r, common, {}, out);
    std::sort(out.begin(), out.end());
    return out;
}

ProximityGraph locally_cliqueless(const std::vector<Point>& pts, const ProximityGraph& g) {
    std::vector<Edge> keep;
    for (auto [i, j] : g.edges) {
        bool ok = true;
        for (const auto& clique : maximal_cliques_of_edge(g, i, j)) {
            auto t = euclidean_mst_of(pts, clique);
            if (!std::binary_search(t.begin(), t.end(), Edge{i, j})) {
                ok = false;
                break;
            }
        }
        if (ok) keep.push_back({i, j});
    }
    return {g.n, std::move(keep)};
}

bool is_subgraph(const ProximityGraph& small, const ProximityGraph& big) {
    if (small.n != big.n) return false;
    for (const Edge& e : small.edges)
        if (!big.has_edge(e.first, e.second)) return false;
    return true;
}

}  // namespace visrdv
