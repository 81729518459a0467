#include "uop/hdbscan.hpp"

#include "uop/error.hpp"
#include "uop/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace uop {

namespace {

constexpr double kMaxLambda = 1e12; // stands in for 1/0 on coincident points

struct MstEdge {
    int u, v;
    double weight;
};

// Prim over the implicit complete mutual-reachability graph; ties broken by
// lowest vertex index so the tree is input-order deterministic.
std::vector<MstEdge> mutual_reachability_mst(std::span<const GeoPoint> pts,
                                             std::span<const double> core) {
    size_t n = pts.size();
    std::vector<double> key(n, std::numeric_limits<double>::infinity());
    std::vector<int> parent(n, -1);
    std::vector<bool> in_tree(n, false);
    key[0] = 0.0;
    std::vector<MstEdge> edges;
    edges.reserve(n - 1);
    for (size_t iter = 0; iter < n; ++iter) {
        int u = -1;
        for (size_t i = 0; i < n; ++i)
            if (!in_tree[i] && (u < 0 || key[i] < key[u]))
                u = static_cast<int>(i);
        in_tree[u] = true;
        if (parent[u] >= 0)
            edges.push_back({std::min(u, parent[u]), std::max(u, parent[u]), key[u]});
        for (size_t v = 0; v < n; ++v) {
            if (in_tree[v])
                continue;
            double d = haversine_m(pts[u], pts[v]);
            double mr = std::max({core[u], core[v], d});
            if (mr < key[v]) {
                key[v] = mr;
                parent[v] = u;
            }
        }
    }
    return edges;
}

struct Dendrogram {
    // nodes 0..n-1 are leaves; internal nodes follow in merge order
    std::vector<int> left, right;
    std::vector<double> dist;
    std::vector<int> size;
    int root = -1;
};

Dendrogram single_linkage(std::vector<MstEdge> edges, int n) {
    std::sort(edges.begin(), edges.end(), [](const MstEdge& a, const MstEdge& b) {
        if (a.weight != b.weight)
            return a.weight < b.weight;
        if (a.u != b.u)
            return a.u < b.u;
        return a.v < b.v;
    });
    Dendrogram d;
    int total = 2 * n - 1;
    d.left.assign(total, -1);
    d.right.assign(total, -1);
    d.dist.assign(total, 0.0);
    d.size.assign(total, 1);
    std::vector<int> find_parent(n);
    std::vector<int> component_node(n);
    for (int i = 0; i < n; ++i) {
        find_parent[i] = i;
        component_node[i] = i;
    }
    auto find = [&](int x) {
        while (find_parent[x] != x)
            x = find_parent[x] = find_parent[find_parent[x]];
        return x;
    };
    int next = n;
    for (const auto& e : edges) {
        int ra = find(e.u), rb = find(e.v);
        d.left[next] = component_node[ra];
        d.right[next] = component_node[rb];
        d.dist[next] = e.weight;
        d.size[next] = d.size[component_node[ra]] + d.size[component_node[rb]];
        find_parent[ra] = rb;
        component_node[find(rb)] = next;
        ++next;
    }
    d.root = next - 1;
    return d;
}

struct CondensedTree {
    std::vector<int> cluster_parent;       // -1 for root
    std::vector<double> cluster_birth;     // lambda at creation
    std::vector<int> cluster_size;         // points under the cluster at birth
    std::vector<std::vector<int>> cluster_children;
    std::vector<int> point_cluster;        // cluster each point fell out of
    std::vector<double> point_lambda;
};

void collect_leaves(const Dendrogram& d, int node, std::vector<int>& out) {
    std::vector<int> stack{node};
    while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        if (d.left[x] < 0) {
            out.push_back(x);
        } else {
            stack.push_back(d.left[x]);
            stack.push_back(d.right[x]);
        }
    }
}

CondensedTree condense(const Dendrogram& d, int n, int min_cluster_size) {
    CondensedTree t;
    t.point_cluster.assign(n, 0);
    t.point_lambda.assign(n, 0.0);
    auto lambda_of = [](double dist) {
        return dist > 0.0 ? std::min(1.0 / dist, kMaxLambda) : kMaxLambda;
    };
    auto new_cluster = [&](int parent, double birth, int size) {
        t.cluster_parent.push_back(parent);
        t.cluster_birth.push_back(birth);
        t.cluster_size.push_back(size);
        t.cluster_children.emplace_back();
        int id = static_cast<int>(t.cluster_parent.size()) - 1;
        if (parent >= 0)
            t.cluster_children[parent].push_back(id);
        return id;
    };
    int root_cluster = new_cluster(-1, 0.0, d.size[d.root]);

    std::vector<int> leaves;
    struct Item {
        int node;
        int cluster;
    };
    std::vector<Item> stack{{d.root, root_cluster}};
    while (!stack.empty()) {
        auto [node, cluster] = stack.back();
        stack.pop_back();
        int l = d.left[node], r = d.right[node];
        double lam = lambda_of(d.dist[node]);
        bool l_big = d.size[l] >= min_cluster_size;
        bool r_big = d.size[r] >= min_cluster_size;
        auto shed = [&](int child) {
            leaves.clear();
            collect_leaves(d, child, leaves);
            for (int p : leaves) {
                t.point_cluster[p] = cluster;
                t.point_lambda[p] = lam;
            }
        };
        // only internal nodes are pushed: any "big" child has
        // size >= min_cluster_size >= 2
        if (l_big && r_big) {
            int cl = new_cluster(cluster, lam, d.size[l]);
            int cr = new_cluster(cluster, lam, d.size[r]);
            stack.push_back({l, cl});
            stack.push_back({r, cr});
        } else if (!l_big && !r_big) {
            shed(l);
            shed(r);
        } else {
            shed(l_big ? r : l);
            stack.push_back({l_big ? l : r, cluster});
        }
    }
    return t;
}

} // namespace

HdbscanResult hdbscan_geo(std::span<const GeoPoint> points, int min_cluster_size) {
    if (min_cluster_size < 2)
        throw Error("min_cluster_size must be >= 2");
    size_t n = points.size();
    HdbscanResult res;
    res.labels.assign(n, -1);
    if (n < static_cast<size_t>(min_cluster_size))
        return res;

    std::vector<double> lats(n), lons(n);
    for (size_t i = 0; i < n; ++i) {
        lats[i] = points[i].lat;
        lons[i] = points[i].lon;
    }
    auto core = kernels::core_distances_parallel(lats, lons, min_cluster_size);
    auto mst = mutual_reachability_mst(points, core);
    auto dendro = single_linkage(std::move(mst), static_cast<int>(n));
    auto tree = condense(dendro, static_cast<int>(n), min_cluster_size);

    size_t n_clusters_all = tree.cluster_parent.size();
    std::vector<double> stability(n_clusters_all, 0.0);
    for (size_t p = 0; p < n; ++p) {
        int c = tree.point_cluster[p];
        stability[c] += tree.point_lambda[p] - tree.cluster_birth[c];
    }
    for (size_t c = 1; c < n_clusters_all; ++c) {
        int parent = tree.cluster_parent[c];
        stability[parent] +=
            (tree.cluster_birth[c] - tree.cluster_birth[parent]) * tree.cluster_size[c];
    }

    // excess of mass, children first; the root cluster stays unselected
    std::vector<bool> selected(n_clusters_all, false);
    for (size_t c = 1; c < n_clusters_all; ++c)
        selected[c] = true;
    for (size_t ci = n_clusters_all; ci-- > 1;) {
        double subtree = 0.0;
        for (int ch : tree.cluster_children[ci])
            subtree += stability[ch];
        if (!tree.cluster_children[ci].empty() && stability[ci] < subtree) {
            stability[ci] = subtree;
            selected[ci] = false;
        } else if (selected[ci]) {
            // deselect everything below
            std::vector<int> stack(tree.cluster_children[ci].begin(),
                                   tree.cluster_children[ci].end());
            while (!stack.empty()) {
                int x = stack.back();
                stack.pop_back();
                selected[x] = false;
                stack.insert(stack.end(), tree.cluster_children[x].begin(),
                             tree.cluster_children[x].end());
            }
        }
    }

    std::vector<int> out_label(n_clusters_all, -1);
    int next_label = 0;
    for (size_t c = 1; c < n_clusters_all; ++c)
        if (selected[c])
            out_label[c] = next_label++;
    res.n_clusters = next_label;

    for (size_t p = 0; p < n; ++p) {
        int c = tree.point_cluster[p];
        while (c >= 0 && !selected[c])
            c = tree.cluster_parent[c];
        res.labels[p] = c >= 0 ? out_label[c] : -1;
    }
    return res;
}

} // namespace uop
