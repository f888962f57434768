// One PASS/FAIL line per acceptance criterion. Exit status is the number of
// failed criteria.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>

#include <lawson/cli.hpp>

using namespace lawson;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

struct Criterion {
    int id;
    std::string name;
    double budget_s;
    std::function<Outcome()> body;
};

std::string fmt(const char* f, auto... args)
{
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

std::map<std::pair<int, int>, LawsonSurface>& surfaces()
{
    static std::map<std::pair<int, int>, LawsonSurface> cache;
    return cache;
}

const LawsonSurface& extrapolated(int m, int k)
{
    auto& c = surfaces();
    auto it = c.find({m, k});
    if (it == c.end()) it = c.emplace(std::pair{m, k}, build_extrapolated(m, k, 32)).first;
    return it->second;
}

Outcome group_orders()
{
    int checked = 0;
    for (int m = 1; m <= 4; ++m) {
        for (int k = 1; k <= m; ++k) {
            const std::size_t r = static_cast<std::size_t>((m + 1) * (k + 1));
            const std::map<GroupName, std::size_t> want{
                {GroupName::R, r},          {GroupName::G, 2 * r},  {GroupName::Gstar, 2 * r},
                {GroupName::Gtilde, 4 * r}, {GroupName::GP, 4 * r}, {GroupName::GQ, 4 * r},
                {GroupName::Rhat, 4 * r},   {GroupName::Ghat, 8 * r}};
            std::map<GroupName, SymmetryGroup> gs;
            for (auto n : standard_group_names()) gs.emplace(n, build_named_group(n, m, k));
            for (const auto& [n, o] : want) {
                if (gs.at(n).order() != o)
                    return {false, fmt("|%s_{%d,%d}| = %zu, want %zu", std::string(to_string(n)).c_str(), m, k,
                                       gs.at(n).order(), o)};
                ++checked;
            }
            for (const auto& e : lattice_edges()) {
                const auto& h = gs.at(e.sub);
                const auto& g = gs.at(e.super);
                if (!is_subgroup(h, g) || index(h, g) != e.stated_index || !is_normal(h, g))
                    return {false, fmt("lattice edge %s < %s fails at (%d,%d)", std::string(to_string(e.sub)).c_str(),
                                       std::string(to_string(e.super)).c_str(), m, k)};
                ++checked;
            }
        }
    }
    return {true, fmt("%d order/lattice checks over 1<=k<=m<=4", checked)};
}

Outcome clifford()
{
    const auto& s = extrapolated(1, 1);
    const int g = genus(s.mesh);
    const double target = 2 * pi * pi;
    const double raw = std::abs(s.area - target) / target;
    const double ext = std::abs(s.best_area() - target) / target;
    return {g == 1 && raw < 0.01 && ext < 0.002,
            fmt("genus %d, area(n=32) %.6f (rel %.2e < 1e-2), extrapolated %.6f (rel %.2e < 2e-3)", g, s.area, raw,
                s.best_area(), ext)};
}

Outcome willmore_oracle()
{
    bool ok = true;
    std::string d;
    for (double r : {pi / 6, pi / 4, pi / 3}) {
        const double w = willmore(geodesic_sphere(r, 5)).willmore;
        const double rel = std::abs(w - 4 * pi) / (4 * pi);
        ok = ok && rel < 0.01;
        d += fmt("r=%.4f W=%.5f (rel %.2e) ", r, w, rel);
    }
    return {ok, d + "vs 4pi within 1e-2"};
}

Outcome genus_and_bounds()
{
    bool ok = true;
    std::string d;
    for (auto [m, k] : {std::pair{2, 1}, {3, 1}, {2, 2}}) {
        const auto& s = extrapolated(m, k);
        const auto r = verify(s);
        ok = ok && r.genus == m * k;
        d += fmt("xi_{%d,%d}: g=%d A=%.4f+-%.4f", m, k, r.genus, r.area, r.area_error);
        for (const auto& b : r.bounds) {
            ok = ok && b.holds;
            d += fmt(" [%s margin %.3f]", b.name.c_str(), b.margin);
        }
        d += "; ";
    }
    return {ok, d};
}

Outcome area_comparison()
{
    const auto& a = extrapolated(2, 2);
    const auto& b = extrapolated(4, 1);
    const double margin = a.best_area() - b.best_area();
    const double err = a.area_error + b.area_error;
    return {margin > err, fmt("area(xi_{2,2}) %.4f - area(xi_{4,1}) %.4f = %.4f > error bars %.4f", a.best_area(),
                              b.best_area(), margin, err)};
}

Outcome gradient_check()
{
    std::mt19937_64 rng(2024);
    std::normal_distribution<double> nd;
    double worst = 0;
    const double h = 1e-5;
    for (int t = 0; t < 20; ++t) {
        TriMesh base;
        switch (t % 3) {
        case 0: base = geodesic_sphere(0.4 + 0.1 * t / 3, 2); break;
        case 1: base = flat_torus(10 + t % 4, 8, 0.5 + 0.02 * t); break;
        default: base = octahedron_sphere(2); break;
        }
        const auto mesh = perturb(base, 0.05, rng());
        const EnergyEvaluator ev(mesh);
        std::vector<Vec4> dir;
        for (const auto& x : mesh.vertices) {
            Vec4 d(nd(rng), nd(rng), nd(rng), nd(rng));
            dir.push_back(d - d.dot(x) * x);
        }
        auto shifted = [&](double s) {
            auto y = mesh.vertices;
            for (std::size_t i = 0; i < y.size(); ++i) y[i] += s * dir[i];
            return y;
        };
        auto directional = [&](const std::vector<Vec4>& g) {
            double s = 0;
            for (std::size_t i = 0; i < g.size(); ++i) s += g[i].dot(dir[i]);
            return s;
        };
        const double fa = (ev.area(shifted(h)) - ev.area(shifted(-h))) / (2 * h);
        const double fw = (ev.willmore_value(shifted(h)) - ev.willmore_value(shifted(-h))) / (2 * h);
        worst = std::max(worst, std::abs(directional(ev.area_gradient(mesh.vertices)) - fa) / std::abs(fa));
        worst = std::max(worst, std::abs(directional(ev.willmore_gradient(mesh.vertices)) - fw) / std::abs(fw));
    }
    return {worst <= 1e-4, fmt("20 meshes, worst relative error %.2e <= 1e-4", worst)};
}

Outcome flow_recovery()
{
    FlowConfig c;
    c.group = GroupName::Gtilde;
    c.m = c.k = 1;
    c.perturbation = 5e-3;
    c.max_iters = 300;
    const auto res = descend(c);
    const auto& rs = res.trace.records;
    bool monotone = true;
    for (std::size_t i = 1; i < rs.size(); ++i) monotone = monotone && rs[i].W <= rs[i - 1].W;
    const double rel = std::abs(rs.back().W - 2 * pi * pi) / (2 * pi * pi);
    return {monotone && rel < 0.01, fmt("W %.5f -> %.5f in %d iterations (%s), rel %.2e < 1e-2, monotone %s",
                                        rs.front().W, rs.back().W, rs.back().iter,
                                        std::string(to_string(res.trace.status)).c_str(), rel, monotone ? "yes" : "no")};
}

Outcome classification()
{
    int patterns = 0, cases = 0;
    for (int m = 1; m <= 6; ++m) {
        for (int k = 1; k <= m; ++k) {
            for (int g = 2; g <= m * k + k; ++g) {
                ++cases;
                const auto t = distinct_triples(classify(m, k, g));
                const bool ok = g == m * k ? t == std::set<std::tuple<int, int, int>>{{0, 2, 2}} : t.empty();
                if (!ok) return {false, fmt("classify(%d,%d,%d) gave %s", m, k, g, triples_string(classify(m, k, g)).c_str())};
                for (int hg = 0; hg <= g; ++hg)
                    for (int v1 = 0; v1 <= 2 * g + 2; v1 += 2)
                        for (int v2 = 0; v2 <= 2 * g + 2; v2 += 2) {
                            const OrbifoldPattern p{m, k, hg, v1, v2};
                            ++patterns;
                            if (Rational(2) - Rational(2) * genus_rational(p) != Rational((m + 1) * (k + 1)) * chi_orbifold(p))
                                return {false, fmt("Euler identity fails at %s", to_string(p).c_str())};
                        }
            }
        }
    }
    return {true, fmt("%d (m,k,g) cases, Euler identity on %d patterns", cases, patterns)};
}

Outcome probe()
{
    const FlowConfig c = default_probe_config();
    const auto p = degeneration_probe(c);
    const auto& rs = p.flow.trace.records;
    const auto path = std::filesystem::temp_directory_path() / "lawson_probe_trace.csv";
    {
        std::ofstream f(path);
        cli::write_trace_csv(f, p.flow.trace);
    }
    const bool full = !rs.empty() && (p.flow.trace.status != FlowStatus::max_iters || rs.back().iter == c.max_iters);
    return {full, fmt("%zu records, status %s, neck %.4f -> %.4f (trend to zero: %s; not asserted), trace %s", rs.size(),
                      std::string(to_string(p.flow.trace.status)).c_str(), p.initial_neck, p.final_neck,
                      p.neck_trending_to_zero ? "yes" : "no", path.string().c_str())};
}

} // namespace

int main()
{
    const std::vector<Criterion> criteria{
        {1, "group orders and lattice", 10, group_orders},
        {2, "Clifford torus", 120, clifford},
        {3, "analytic Willmore oracle", 60, willmore_oracle},
        {4, "Lawson genus and area bounds", 900, genus_and_bounds},
        {5, "area(xi_{2,2}) > area(xi_{4,1})", 1200, area_comparison},
        {6, "gradient correctness", 60, gradient_check},
        {7, "symmetric flow recovery", 300, flow_recovery},
        {8, "genus classification by exhaustion", 5, classification},
        {9, "degeneration probe", 600, probe},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.body();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool in_budget = dt < c.budget_s;
        const bool pass = o.pass && in_budget;
        failed += !pass;
        std::printf("%s %d %s: %s [%.1fs / %.0fs]\n", pass ? "PASS" : "FAIL", c.id, c.name.c_str(), o.detail.c_str(), dt,
                    c.budget_s);
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed;
}
