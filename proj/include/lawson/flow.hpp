#pragma once

// Willmore gradient descent with symmetry enforced after every step, and the
// handle-neck diagnostic used by the degeneration probe.

#include <cmath>
#include <limits>
#include <optional>
#include <queue>
#include <string>
#include <unordered_map>
#include <vector>

#include "energy.hpp"
#include "lawson.hpp"
#include "mesh.hpp"
#include "symmetry.hpp"

namespace lawson {

// Shortest non-separating edge cycle.

struct NeckReport {
    double length = std::numeric_limits<double>::infinity(); // inf for genus 0
    int sources = 0;
    int basis_size = 0; // 2g
};

namespace detail {

struct EdgeGraph {
    std::vector<std::pair<int, int>> edges;
    std::vector<double> length;
    std::vector<std::vector<std::pair<int, int>>> adj; // (neighbour, edge id)
    std::vector<std::array<int, 2>> edge_faces;         // -1 if missing
};

inline EdgeGraph edge_graph(const TriMesh& mesh)
{
    EdgeGraph g;
    std::unordered_map<EdgeKey, int> id;
    g.adj.resize(mesh.vertices.size());
    for (int f = 0; f < static_cast<int>(mesh.faces.size()); ++f) {
        for (int i = 0; i < 3; ++i) {
            const int a = mesh.faces[f][i], b = mesh.faces[f][(i + 1) % 3];
            const EdgeKey k = edge_key(a, b);
            auto it = id.find(k);
            if (it == id.end()) {
                const int e = static_cast<int>(g.edges.size());
                id.emplace(k, e);
                g.edges.push_back({a, b});
                g.length.push_back((mesh.vertices[a] - mesh.vertices[b]).norm());
                g.adj[a].push_back({b, e});
                g.adj[b].push_back({a, e});
                g.edge_faces.push_back({f, -1});
            } else {
                g.edge_faces[it->second][1] = f;
            }
        }
    }
    return g;
}

// Cocycle basis from a tree-cotree decomposition: for every leftover edge,
// the primal edges crossed by its dual loop.
inline std::vector<std::vector<char>> cocycle_basis(const TriMesh& mesh, const EdgeGraph& g)
{
    const int nv = static_cast<int>(mesh.vertices.size());
    const int nf = static_cast<int>(mesh.faces.size());
    const int ne = static_cast<int>(g.edges.size());
    std::vector<char> in_tree(ne, 0), in_cotree(ne, 0);
    {
        std::vector<char> seen(nv, 0);
        std::queue<int> q;
        q.push(mesh.faces.empty() ? 0 : mesh.faces[0][0]);
        seen[q.front()] = 1;
        while (!q.empty()) {
            const int v = q.front();
            q.pop();
            for (auto [u, e] : g.adj[v])
                if (!seen[u]) {
                    seen[u] = 1;
                    in_tree[e] = 1;
                    q.push(u);
                }
        }
    }
    // Dual BFS tree over non-tree edges; parent links for path recovery.
    std::vector<std::vector<std::pair<int, int>>> dadj(nf);
    for (int e = 0; e < ne; ++e) {
        if (in_tree[e] || g.edge_faces[e][1] < 0) continue;
        dadj[g.edge_faces[e][0]].push_back({g.edge_faces[e][1], e});
        dadj[g.edge_faces[e][1]].push_back({g.edge_faces[e][0], e});
    }
    std::vector<int> parent_edge(nf, -1), parent(nf, -1), depth(nf, -1);
    {
        std::queue<int> q;
        q.push(0);
        depth[0] = 0;
        while (!q.empty()) {
            const int f = q.front();
            q.pop();
            for (auto [h, e] : dadj[f])
                if (depth[h] < 0) {
                    depth[h] = depth[f] + 1;
                    parent[h] = f;
                    parent_edge[h] = e;
                    in_cotree[e] = 1;
                    q.push(h);
                }
        }
    }
    std::vector<std::vector<char>> basis;
    for (int e = 0; e < ne; ++e) {
        if (in_tree[e] || in_cotree[e] || g.edge_faces[e][1] < 0) continue;
        std::vector<char> s(ne, 0);
        s[e] = 1;
        int a = g.edge_faces[e][0], b = g.edge_faces[e][1];
        while (a != b) {
            if (depth[a] < depth[b]) std::swap(a, b);
            s[parent_edge[a]] ^= 1;
            a = parent[a];
        }
        basis.push_back(std::move(s));
    }
    return basis;
}

} // namespace detail

/// Length of the shortest non-separating cycle in the edge graph, searched
/// through fundamental cycles of shortest-path trees rooted at every
/// `stride`-th vertex (stride 1 gives the exact graph minimum).
inline NeckReport neck_length(const TriMesh& mesh, int stride = 1)
{
    NeckReport rep;
    if (mesh.faces.empty()) return rep;
    const auto g = detail::edge_graph(mesh);
    const auto basis = detail::cocycle_basis(mesh, g);
    rep.basis_size = static_cast<int>(basis.size());
    if (basis.empty()) return rep;
    const int nv = static_cast<int>(mesh.vertices.size());
    const int ne = static_cast<int>(g.edges.size());
    const int nb = static_cast<int>(basis.size());
    std::vector<double> dist(nv);
    std::vector<int> pedge(nv);
    std::vector<std::vector<char>> parity(nb, std::vector<char>(nv));
    std::vector<int> order;
    order.reserve(nv);
    for (int s = 0; s < nv; s += std::max(1, stride)) {
        if (g.adj[s].empty()) continue;
        ++rep.sources;
        std::fill(dist.begin(), dist.end(), std::numeric_limits<double>::infinity());
        std::fill(pedge.begin(), pedge.end(), -1);
        order.clear();
        using Item = std::pair<double, int>;
        std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
        dist[s] = 0;
        pq.push({0, s});
        std::vector<char> done(nv, 0);
        while (!pq.empty()) {
            auto [d, v] = pq.top();
            pq.pop();
            if (done[v]) continue;
            done[v] = 1;
            order.push_back(v);
            for (auto [u, e] : g.adj[v]) {
                const double nd = d + g.length[e];
                if (nd < dist[u]) {
                    dist[u] = nd;
                    pedge[u] = e;
                    pq.push({nd, u});
                }
            }
        }
        for (int b = 0; b < nb; ++b) {
            auto& par = parity[b];
            for (int v : order) {
                if (v == s) {
                    par[v] = 0;
                    continue;
                }
                const int e = pedge[v];
                const int p = g.edges[e].first == v ? g.edges[e].second : g.edges[e].first;
                par[v] = par[p] ^ basis[b][e];
            }
        }
        for (int e = 0; e < ne; ++e) {
            const auto [a, c] = g.edges[e];
            if (pedge[a] == e || pedge[c] == e) continue;
            const double len = dist[a] + dist[c] + g.length[e];
            if (len >= rep.length) continue;
            for (int b = 0; b < nb; ++b) {
                if (parity[b][a] ^ parity[b][c] ^ basis[b][e]) {
                    rep.length = len;
                    break;
                }
            }
        }
    }
    return rep;
}

// Flow.

struct FlowConfig {
    // Symmetry group; GroupName::Custom with an empty generator list means trivial.
    GroupName group = GroupName::Gtilde;
    int m = 1;
    int k = 1;
    std::vector<Isometry> custom_generators;

    // Initial mesh: a Lawson build (variant, n), a geodesic sphere, or a supplied mesh.
    std::string source = "lawson"; // lawson | sphere | mesh
    Variant variant = Variant::standard;
    int n = 8;
    double sphere_radius = pi / 2;
    int sphere_level = 4;
    double perturbation = 0.0;
    std::uint64_t seed = 1;

    double initial_step_factor = 0.05; // times (mean edge)^2
    double armijo = 1e-4;
    double growth = 1.2;
    int growth_after = 5;
    int max_failures = 50;

    double gradient_tol = 1e-6;
    int max_iters = 2000;
    double degeneration_fraction = 1e-3; // min edge below this times the initial mean edge
    double min_angle_deg = 1.0;

    int neck_every = 10;  // 0 disables the neck diagnostic
    int neck_stride = 1;
};

struct FlowRecord {
    int iter = 0;
    double W = 0;
    double area = 0;
    double grad_norm = 0;
    double min_edge = 0;
    double neck = 0;
    double sym_dev = 0;
};

enum class FlowStatus { converged, max_iters, degenerated, quality_collapse, stagnated };

inline std::string_view to_string(FlowStatus s)
{
    switch (s) {
    case FlowStatus::converged: return "converged";
    case FlowStatus::max_iters: return "max_iters";
    case FlowStatus::degenerated: return "degenerated";
    case FlowStatus::quality_collapse: return "quality_collapse";
    case FlowStatus::stagnated: return "stagnated";
    }
    return "?";
}

struct FlowTrace {
    std::vector<FlowRecord> records;
    FlowStatus status = FlowStatus::max_iters;
    std::string message;
};

struct FlowResult {
    FlowTrace trace;
    TriMesh mesh;
};

inline SymmetryGroup flow_group(const FlowConfig& c)
{
    if (c.group != GroupName::Custom) return build_named_group(c.group, c.m, c.k);
    return generate_group(c.custom_generators, default_max_order(c.m, c.k), GroupName::Custom, c.m, c.k);
}

/// Initial mesh for a config whose source is not "mesh".
inline TriMesh flow_initial_mesh(const FlowConfig& c)
{
    TriMesh mesh;
    if (c.source == "lawson") {
        mesh = build(c.m, c.k, c.n, c.variant).mesh;
    } else if (c.source == "sphere") {
        mesh = geodesic_sphere(c.sphere_radius, c.sphere_level);
    } else {
        throw precondition_error("flow: source '" + c.source + "' needs an explicit mesh");
    }
    // Orbit map taken before the perturbation, which can exceed the weld scale.
    mesh.orbit_map = compute_orbit_map(mesh, flow_group(c), 1e-2 * min_edge_length(mesh));
    if (c.perturbation < 0) throw precondition_error("flow: perturbation amplitude must be >= 0");
    if (c.perturbation > 0) mesh = perturb(mesh, c.perturbation, c.seed);
    return mesh;
}

/// Symmetry-constrained Willmore descent. The step direction is the normal
/// part of the Willmore gradient; positions are projected to S^3 and
/// symmetrized after every trial step.
inline FlowResult descend(const FlowConfig& c, TriMesh mesh)
{
    if (c.gradient_tol <= 0 || c.armijo <= 0 || c.degeneration_fraction <= 0)
        throw precondition_error("flow: tolerances must be positive");
    if (!is_closed(mesh)) throw precondition_error("flow: initial mesh must be closed");
    if (!is_orientable(mesh)) throw precondition_error("flow: initial mesh must be orientable");
    mesh.boundary.assign(mesh.vertices.size(), 0);
    const SymmetryGroup group = flow_group(c);
    // An attached orbit map of matching order is taken as the group action.
    if (!mesh.orbit_map || mesh.orbit_map->elements.size() != group.order())
        mesh.orbit_map = compute_orbit_map(mesh, group, 1e-2 * min_edge_length(mesh));
    mesh = symmetrize(mesh);

    const EnergyEvaluator ev(mesh);
    std::vector<Vec4> x = mesh.vertices;
    const double h0 = mean_edge_length(mesh);
    double step = c.initial_step_factor * h0 * h0;

    auto enforce = [&](std::vector<Vec4>& y) {
        const auto& om = *mesh.orbit_map;
        std::vector<Vec4> z(y.size());
        for (std::size_t v = 0; v < y.size(); ++v) {
            Vec4 acc = Vec4::Zero();
            for (std::size_t e = 0; e < om.elements.size(); ++e)
                acc += om.elements[e].matrix().transpose() * y[om.image[e][v]];
            z[v] = acc.normalized();
        }
        y.swap(z);
    };
    auto gradient = [&](const std::vector<Vec4>& p) {
        auto g = ev.willmore_gradient(p);
        ev.project_normal(p, g);
        return g;
    };

    FlowResult res;
    auto& tr = res.trace;
    double W = ev.willmore_value(x);
    std::vector<Vec4> g = gradient(x);
    double gn = gradient_norm(g);
    double neck = std::numeric_limits<double>::infinity();
    auto record = [&](int it) {
        mesh.vertices = x;
        if (c.neck_every > 0 && it % c.neck_every == 0) neck = neck_length(mesh, c.neck_stride).length;
        tr.records.push_back({it, W, ev.area(x), gn, min_edge_length(mesh), neck, symmetry_deviation(mesh)});
    };
    record(0);

    int accepted_run = 0;
    for (int it = 1;; ++it) {
        if (gn < c.gradient_tol) {
            tr.status = FlowStatus::converged;
            break;
        }
        if (it > c.max_iters) {
            tr.status = FlowStatus::max_iters;
            break;
        }
        int failures = 0;
        std::vector<Vec4> y(x.size());
        double Wy = 0;
        bool ok = true;
        for (;;) {
            for (std::size_t v = 0; v < x.size(); ++v) y[v] = (x[v] - step * g[v]).normalized();
            enforce(y);
            bool valid = true;
            try {
                Wy = ev.willmore_value(y);
            } catch (const numerical_error&) {
                valid = false;
            }
            if (valid && Wy <= W - c.armijo * step * gn * gn) break;
            step *= 0.5;
            accepted_run = 0;
            if (++failures >= c.max_failures) {
                ok = false;
                break;
            }
        }
        if (!ok) {
            tr.status = FlowStatus::stagnated;
            tr.message = "line search failed " + std::to_string(c.max_failures) + " consecutive times";
            break;
        }
        x.swap(y);
        W = Wy;
        if (++accepted_run >= c.growth_after) {
            step *= c.growth;
            accepted_run = 0;
        }
        g = gradient(x);
        gn = gradient_norm(g);
        record(it);
        const auto& last = tr.records.back();
        if (last.min_edge < c.degeneration_fraction * h0) {
            tr.status = FlowStatus::degenerated;
            tr.message = "min edge below degeneration threshold";
            break;
        }
        if (min_triangle_angle(mesh) < c.min_angle_deg * pi / 180) {
            tr.status = FlowStatus::quality_collapse;
            tr.message = "min triangle angle below threshold";
            break;
        }
    }
    mesh.vertices = x;
    res.mesh = std::move(mesh);
    return res;
}

inline FlowResult descend(const FlowConfig& c) { return descend(c, flow_initial_mesh(c)); }

struct ProbeResult {
    FlowResult flow;
    double initial_neck = 0;
    double final_neck = 0;
    bool neck_trending_to_zero = false; // last neck below a tenth of the first
};

/// Default order-4 group of the probe: <R_Q^{(k+1)/2}, gamma_{0,0}> for odd k.
inline std::vector<Isometry> probe_generators(int m, int k)
{
    if (k % 2 == 0) throw precondition_error("probe: default order-4 group needs odd k");
    Isometry rq = Isometry();
    for (int i = 0; i < (k + 1) / 2; ++i) rq = rotation_RQ(k) * rq;
    return {rq, halfturn_gamma(0, 0, m, k)};
}

/// Descent with neck tracking on a genus-2 input. Reports the trend only.
inline ProbeResult degeneration_probe(const FlowConfig& c, TriMesh mesh)
{
    if (c.neck_every <= 0) throw precondition_error("probe: neck tracking must be enabled");
    if (genus(mesh) != 2) throw precondition_error("probe: input must have genus 2");
    ProbeResult p;
    p.flow = descend(c, std::move(mesh));
    const auto& rs = p.flow.trace.records;
    p.initial_neck = rs.front().neck;
    p.final_neck = rs.back().neck;
    p.neck_trending_to_zero = p.final_neck < 0.1 * p.initial_neck;
    return p;
}

inline ProbeResult degeneration_probe(const FlowConfig& c) { return degeneration_probe(c, flow_initial_mesh(c)); }

/// Default probe configuration: perturbed xi_{2,1} under <R_Q, gamma_{0,0}>.
inline FlowConfig default_probe_config()
{
    FlowConfig c;
    c.m = 2;
    c.k = 1;
    c.group = GroupName::Custom;
    c.custom_generators = probe_generators(2, 1);
    c.perturbation = 5e-3;
    c.max_iters = 300;
    return c;
}

} // namespace lawson
