#pragma once

// Command-line front end: subcommand dispatch, config parsing, manifests.

#include <chrono>
#include <filesystem>
#include <functional>
#include <map>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>
#include <toml.hpp>

#include "energy.hpp"
#include "flow.hpp"
#include "lawson.hpp"
#include "mesh_io.hpp"
#include "orbifold.hpp"
#include "plateau.hpp"
#include "symmetry.hpp"
#include "tiling.hpp"

#ifndef LAWSON_VERSION
#define LAWSON_VERSION "0.1.0"
#endif

namespace lawson::cli {

using json = nlohmann::json;

inline json to_json(const Vec4& x) { return json::array({x[0], x[1], x[2], x[3]}); }

inline Vec4 parse_pole(const std::string& s, const TriMesh& mesh)
{
    if (s == "auto") return auto_pole(mesh);
    std::string t = s;
    std::replace(t.begin(), t.end(), ',', ' ');
    std::istringstream is(t);
    Vec4 p;
    if (!(is >> p[0] >> p[1] >> p[2] >> p[3])) throw precondition_error("pole must be 'auto' or x,y,z,w");
    if (p.norm() < 1e-12) throw precondition_error("pole must be nonzero");
    return p.normalized();
}

// Flow configuration. TOML first, JSON as fallback.

inline json toml_to_json(const toml::node& n)
{
    if (auto t = n.as_table()) {
        json j = json::object();
        for (const auto& [k, v] : *t) j[std::string(k.str())] = toml_to_json(v);
        return j;
    }
    if (auto a = n.as_array()) {
        json j = json::array();
        for (const auto& v : *a) j.push_back(toml_to_json(v));
        return j;
    }
    if (auto v = n.as_string()) return v->get();
    if (auto v = n.as_integer()) return v->get();
    if (auto v = n.as_floating_point()) return v->get();
    if (auto v = n.as_boolean()) return v->get();
    throw precondition_error("config: unsupported TOML value type");
}

inline json load_config(const std::string& path)
{
    std::ifstream f(path);
    if (!f) throw io_error("cannot read " + path);
    std::stringstream buf;
    buf << f.rdbuf();
    const std::string text = buf.str();
    const bool json_ext = path.size() >= 5 && path.substr(path.size() - 5) == ".json";
    if (!json_ext) {
        try {
            return toml_to_json(toml::parse(text, path));
        } catch (const toml::parse_error& e) {
            try {
                return json::parse(text);
            } catch (const json::parse_error&) {
                std::ostringstream os;
                os << "config: " << path << " is neither TOML nor JSON (" << e.description() << " at line "
                   << e.source().begin.line << ")";
                throw precondition_error(os.str());
            }
        }
    }
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw precondition_error("config: " + path + ": " + e.what());
    }
}

struct FlowJob {
    FlowConfig config;
    std::string group = "Gtilde";
    std::string mesh_path;
    bool probe = false;
    std::string trace = "flow_trace.csv";
    std::string out = "flow.off";
    std::string pole = "auto";
};

inline FlowJob parse_flow_config(const json& j)
{
    FlowJob job;
    auto& c = job.config;
    for (const auto& [key, v] : j.items()) {
        if (key == "group") job.group = v.get<std::string>();
        else if (key == "m") c.m = v.get<int>();
        else if (key == "k") c.k = v.get<int>();
        else if (key == "source") c.source = v.get<std::string>();
        else if (key == "mesh") job.mesh_path = v.get<std::string>();
        else if (key == "variant") c.variant = variant_from_string(v.get<std::string>());
        else if (key == "n") c.n = v.get<int>();
        else if (key == "sphere_radius") c.sphere_radius = v.get<double>();
        else if (key == "sphere_level") c.sphere_level = v.get<int>();
        else if (key == "perturbation") c.perturbation = v.get<double>();
        else if (key == "seed") c.seed = v.get<std::uint64_t>();
        else if (key == "initial_step_factor") c.initial_step_factor = v.get<double>();
        else if (key == "armijo") c.armijo = v.get<double>();
        else if (key == "growth") c.growth = v.get<double>();
        else if (key == "growth_after") c.growth_after = v.get<int>();
        else if (key == "max_failures") c.max_failures = v.get<int>();
        else if (key == "gradient_tol") c.gradient_tol = v.get<double>();
        else if (key == "max_iters") c.max_iters = v.get<int>();
        else if (key == "degeneration_fraction") c.degeneration_fraction = v.get<double>();
        else if (key == "min_angle_deg") c.min_angle_deg = v.get<double>();
        else if (key == "neck_every") c.neck_every = v.get<int>();
        else if (key == "neck_stride") c.neck_stride = v.get<int>();
        else if (key == "probe") job.probe = v.get<bool>();
        else if (key == "trace") job.trace = v.get<std::string>();
        else if (key == "out") job.out = v.get<std::string>();
        else if (key == "pole") job.pole = v.get<std::string>();
        else throw precondition_error("config: unknown key '" + key + "'");
    }
    if (job.group == "trivial") {
        c.group = GroupName::Custom;
        c.custom_generators.clear();
    } else if (job.group == "probe") {
        c.group = GroupName::Custom;
        c.custom_generators = probe_generators(c.m, c.k);
    } else if (auto g = group_name_from_string(job.group); g && *g != GroupName::Custom) {
        c.group = *g;
    } else {
        throw precondition_error("config: unknown group '" + job.group + "'");
    }
    if (c.source == "mesh" && job.mesh_path.empty()) throw precondition_error("config: source = \"mesh\" needs mesh");
    if (c.source != "lawson" && c.source != "sphere" && c.source != "mesh")
        throw precondition_error("config: source must be lawson, sphere or mesh");
    return job;
}

inline json flow_job_json(const FlowJob& job)
{
    const auto& c = job.config;
    return {{"group", job.group},
            {"m", c.m},
            {"k", c.k},
            {"source", c.source},
            {"mesh", job.mesh_path},
            {"variant", std::string(to_string(c.variant))},
            {"n", c.n},
            {"sphere_radius", c.sphere_radius},
            {"sphere_level", c.sphere_level},
            {"perturbation", c.perturbation},
            {"seed", c.seed},
            {"initial_step_factor", c.initial_step_factor},
            {"armijo", c.armijo},
            {"growth", c.growth},
            {"growth_after", c.growth_after},
            {"max_failures", c.max_failures},
            {"gradient_tol", c.gradient_tol},
            {"max_iters", c.max_iters},
            {"degeneration_fraction", c.degeneration_fraction},
            {"min_angle_deg", c.min_angle_deg},
            {"neck_every", c.neck_every},
            {"neck_stride", c.neck_stride},
            {"probe", job.probe},
            {"trace", job.trace},
            {"out", job.out},
            {"pole", job.pole}};
}

inline void write_trace_csv(std::ostream& out, const FlowTrace& t)
{
    out.precision(17);
    out << "iter,W,area,grad_norm,min_edge,neck,sym_dev\n";
    for (const auto& r : t.records)
        out << r.iter << "," << r.W << "," << r.area << "," << r.grad_norm << "," << r.min_edge << "," << r.neck << ","
            << r.sym_dev << "\n";
}

// Reports.

inline json groups_report(int m, int k)
{
    check_mk(m, k);
    json j{{"m", m}, {"k", k}};
    std::map<GroupName, SymmetryGroup> gs;
    auto names = standard_group_names();
    if (m == k) names.push_back(GroupName::Gbar);
    for (auto n : names) {
        const auto g = build_named_group(n, m, k);
        j["groups"].push_back({{"name", std::string(to_string(n))},
                               {"order", g.order()},
                               {"predicted_order", predicted_order(n, m, k)},
                               {"max_element_order", max_element_order(g)}});
        gs.emplace(n, g);
    }
    for (const auto& e : lattice_edges()) {
        const auto& h = gs.at(e.sub);
        const auto& g = gs.at(e.super);
        const bool sub = is_subgroup(h, g);
        json row{{"sub", std::string(to_string(e.sub))},
                 {"super", std::string(to_string(e.super))},
                 {"stated_index", e.stated_index},
                 {"subgroup", sub}};
        if (sub) {
            const bool normal = is_normal(h, g);
            row["index"] = index(h, g);
            row["normal"] = normal;
            if (normal) {
                const auto q = quotient_group(g, h);
                row["quotient"] = {{"order", q.order()}, {"abelian", q.is_abelian()}, {"exponent", q.exponent()}};
            }
        }
        j["lattice"].push_back(row);
    }
    j["full_order_element"] = has_full_order_element(m, k);
    return j;
}

inline json tiling_report(int m, int k, std::size_t samples, std::uint64_t seed)
{
    const auto mp = marked_points(m, k);
    json j{{"m", m}, {"k", k}, {"tile_count", tile_count(m, k)}};
    auto pts = [](const std::vector<S3Point>& v) {
        json a = json::array();
        for (const auto& p : v) a.push_back(to_json(p.vec()));
        return a;
    };
    j["marked_points"] = {{"P", pts(mp.P)}, {"Q", pts(mp.Q)}, {"Pstar", pts(mp.Pstar)}, {"Qstar", pts(mp.Qstar)}};
    const auto cover = tiles_cover_check(m, k, samples, seed);
    j["cover_check"] = {{"samples", cover.samples},
                        {"covered", cover.covered},
                        {"interior", cover.interior},
                        {"interior_exactly_one", cover.interior_exactly_one},
                        {"max_multiplicity", cover.max_multiplicity},
                        {"ok", cover.ok()}};
    const auto dom = fundamental_domain_check(build_named_group(GroupName::R, m, k), m, k, samples, seed + 1);
    j["fundamental_domain_check"] = {{"group", "R"},
                                     {"samples", dom.samples},
                                     {"covered", dom.covered},
                                     {"overlap_violations", dom.overlap_violations},
                                     {"ok", dom.ok()}};
    return j;
}

inline json plateau_json(const PlateauResult& r)
{
    return {{"initial_area", r.initial_area},
            {"area", r.area},
            {"residual", r.residual},
            {"gradient_norm", r.gradient_norm},
            {"iterations", r.iterations},
            {"converged", r.converged},
            {"vertices", r.mesh.vertices.size()},
            {"faces", r.mesh.faces.size()},
            {"min_angle_deg", min_triangle_angle(r.mesh) * 180 / pi}};
}

inline json lawson_json(const LawsonSurface& s, const LawsonReport& r)
{
    json j{{"m", s.m},
           {"k", s.k},
           {"n", s.n},
           {"variant", std::string(to_string(s.variant))},
           {"vertices", s.mesh.vertices.size()},
           {"faces", s.mesh.faces.size()},
           {"genus", r.genus},
           {"expected_genus", r.expected_genus},
           {"genus_ok", r.genus_ok},
           {"closed", r.closed},
           {"area", s.area},
           {"best_area", r.area},
           {"area_error", r.area_error},
           {"invariance_deviation", r.invariance_deviation},
           {"residual", r.residual},
           {"faces_in_wrong_parity", r.faces_in_wrong_parity},
           {"disk", plateau_json(s.disk)}};
    if (s.area_extrapolated) j["area_extrapolated"] = *s.area_extrapolated;
    for (const auto& [n, a] : s.area_levels) j["area_levels"].push_back({{"n", n}, {"area", a}});
    for (const auto& b : r.bounds)
        j["bounds"].push_back({{"name", b.name},
                               {"lhs", b.lhs},
                               {"rhs", b.rhs},
                               {"margin", b.margin},
                               {"error_bar", b.error_bar},
                               {"holds", b.holds}});
    return j;
}

inline json pattern_json(const OrbifoldPattern& p)
{
    std::ostringstream chi;
    chi << chi_orbifold(p);
    return {{"m", p.m},
            {"k", p.k},
            {"hat_g", p.hat_g},
            {"v1", p.v1},
            {"v2", p.v2},
            {"l_relation", std::string(to_string(p.l_relation))},
            {"chi_orbifold", chi.str()},
            {"genus", genus_from_pattern(p)}};
}

// Dispatch.

struct Session {
    std::ostream& out;
    std::ostream& err;
    std::filesystem::path out_dir = ".";
    std::uint64_t seed = 1;
    json config = json::object();
    json outputs = json::array();
    json timings = json::object();

    std::string path(const std::string& p) const
    {
        const std::filesystem::path q(p);
        return q.is_absolute() ? q.string() : (out_dir / q).string();
    }

    void write_text(const std::string& p, const std::string& text)
    {
        std::ofstream f(p);
        if (!f) throw io_error("cannot write " + p);
        f << text;
        outputs.push_back(p);
    }

    void write_json(const std::string& p, const json& j) { write_text(p, j.dump(2) + "\n"); }
};

inline std::string usage()
{
    return "usage: lawson [--out-dir DIR] [--seed N] <subcommand> [options]\n"
           "subcommands:\n"
           "  groups        --m --k\n"
           "  tiling        --m --k [--samples]\n"
           "  plateau       --m --k --j --l --n --tol --max-iters [--out] [--report]\n"
           "  build-lawson  --m --k --n --variant [--extrapolate] --out mesh.off --report report.json\n"
           "  flow          --config flow.toml\n"
           "  orbifold      classify --m --k --g | table --max-m --max-k  [--format markdown|csv|json]\n"
           "  export        --mesh in.off --out out.{off,obj,csv} [--pole auto|x,y,z,w]\n";
}

inline json error_json(const std::string& type, const std::string& message)
{
    return {{"error", {{"type", type}, {"message", message}}}};
}

/// Runs one command line. Returns the process exit code: 0 success, 1 runtime
/// failure, 2 usage error.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr)
{
    const auto t0 = std::chrono::steady_clock::now();
    Session s{out, err};
    CLI::App app{"Lawson surfaces in S^3", "lawson"};
    app.set_help_flag("-h,--help");
    app.option_defaults()->always_capture_default();
    std::string out_dir = ".";
    std::uint64_t seed = 1;
    app.add_option("--out-dir", out_dir, "directory for outputs and the manifest");
    app.add_option("--seed", seed, "seed for randomized diagnostics");
    app.require_subcommand(1);

    int m = 2, k = 1, j = 0, l = 0, n = 16, g = 2, max_m = 6, max_k = 6, max_iters = 200000;
    double tol = 1e-6;
    std::size_t samples = 20000;
    std::string variant = "standard", mesh_out, report_out, config_path, mesh_in, pole = "auto", format = "markdown";
    bool extrapolate = false;

    auto* groups = app.add_subcommand("groups", "group orders, lattice indices and normality (JSON)");
    groups->add_option("--m", m)->required();
    groups->add_option("--k", k)->required();

    auto* tiling = app.add_subcommand("tiling", "tile counts, marked points and sampled cover checks (JSON)");
    tiling->add_option("--m", m)->required();
    tiling->add_option("--k", k)->required();
    tiling->add_option("--samples", samples);

    auto* plateau = app.add_subcommand("plateau", "least-area disk spanning P_j Q_l P_{j+1} Q_{l+1}");
    plateau->add_option("--m", m)->required();
    plateau->add_option("--k", k)->required();
    plateau->add_option("--j", j);
    plateau->add_option("--l", l);
    plateau->add_option("--n", n);
    plateau->add_option("--tol", tol);
    plateau->add_option("--max-iters", max_iters);
    plateau->add_option("--out", mesh_out);
    plateau->add_option("--report", report_out);
    plateau->add_option("--pole", pole);

    auto* buildc = app.add_subcommand("build-lawson", "assemble xi_{m,k} from its Plateau disk");
    buildc->add_option("--m", m)->required();
    buildc->add_option("--k", k)->required();
    buildc->add_option("--n", n);
    buildc->add_option("--variant", variant);
    buildc->add_flag("--extrapolate", extrapolate, "also solve at n/2 and Richardson-extrapolate the area");
    buildc->add_option("--tol", tol);
    buildc->add_option("--out", mesh_out);
    buildc->add_option("--report", report_out);
    buildc->add_option("--pole", pole);

    auto* flowc = app.add_subcommand("flow", "symmetric Willmore descent");
    flowc->add_option("--config", config_path)->required();

    auto* orb = app.add_subcommand("orbifold", "orbifold Euler bookkeeping");
    orb->require_subcommand(1);
    auto* classify_c = orb->add_subcommand("classify", "feasible quotient patterns of genus g");
    classify_c->add_option("--m", m)->required();
    classify_c->add_option("--k", k)->required();
    classify_c->add_option("--g", g)->required();
    classify_c->add_option("--format", format)->check(CLI::IsMember({"markdown", "csv", "json"}));
    auto* table_c = orb->add_subcommand("table", "classification over a range of (m, k)");
    table_c->add_option("--max-m", max_m);
    table_c->add_option("--max-k", max_k);
    table_c->add_option("--format", format)->check(CLI::IsMember({"markdown", "csv", "json"}));

    auto* exportc = app.add_subcommand("export", "convert a mesh (OFF + sidecar CSV) to OFF, OBJ or CSV");
    exportc->add_option("--mesh", mesh_in)->required();
    exportc->add_option("--out", mesh_out)->required();
    exportc->add_option("--pole", pole);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << error_json("usage_error", e.what()).dump() << "\n" << usage();
        return 2;
    }

    const std::string cmd = app.get_subcommands().front()->get_name();
    json config{{"subcommand", cmd}, {"out_dir", out_dir}, {"seed", seed}};
    std::function<void(const CLI::App*)> capture = [&](const CLI::App* sub) {
        for (const auto* opt : sub->get_options()) {
            if (opt->get_name() == "--help") continue;
            const auto r = opt->results();
            const std::string key = opt->get_lnames().empty() ? opt->get_name() : opt->get_lnames().front();
            config[key] = r.empty() ? json(opt->get_default_str()) : json(r.back());
        }
        for (const auto* c : sub->get_subcommands()) capture(c);
    };
    capture(app.get_subcommands().front());
    try {
        s.out_dir = out_dir;
        s.seed = seed;
        std::filesystem::create_directories(s.out_dir);
        json result;
        const auto tw = std::chrono::steady_clock::now();
        if (cmd == "groups") {
            result = groups_report(m, k);
            result["seed"] = seed;
            s.write_json(s.path("groups.json"), result);
            out << result.dump(2) << "\n";
        } else if (cmd == "tiling") {
            result = tiling_report(m, k, samples, seed);
            result["seed"] = seed;
            s.write_json(s.path("tiling.json"), result);
            out << result.dump(2) << "\n";
        } else if (cmd == "plateau") {
            auto p = make_plateau_problem(m, k, j, l, n);
            p.tolerance = tol;
            p.max_iters = max_iters;
            const auto r = solve_report(p);
            const std::string mp = s.path(mesh_out.empty() ? "plateau.off" : mesh_out);
            write_mesh(mp, r.mesh, Stereographic(parse_pole(pole, r.mesh)));
            s.outputs.push_back(mp);
            s.outputs.push_back(sidecar_path(mp));
            result = plateau_json(r);
            result.update({{"m", m}, {"k", k}, {"j", j}, {"l", l}, {"n", n}, {"seed", seed}});
            s.write_json(s.path(report_out.empty() ? "plateau.json" : report_out), result);
            out << result.dump(2) << "\n";
        } else if (cmd == "build-lawson") {
            const Variant v = variant_from_string(variant);
            BuildOptions opt;
            opt.tolerance = tol;
            const auto surf = extrapolate ? build_extrapolated(m, k, n, v, opt) : build(m, k, n, v, opt);
            const auto rep = verify(surf);
            const std::string mp = s.path(mesh_out.empty() ? "lawson.off" : mesh_out);
            write_mesh(mp, surf.mesh, Stereographic(parse_pole(pole, surf.mesh)));
            s.outputs.push_back(mp);
            s.outputs.push_back(sidecar_path(mp));
            result = lawson_json(surf, rep);
            result["seed"] = seed;
            s.write_json(s.path(report_out.empty() ? "lawson.json" : report_out), result);
            out << result.dump(2) << "\n";
        } else if (cmd == "flow") {
            const json cj = load_config(config_path);
            FlowJob job = parse_flow_config(cj);
            if (!cj.contains("seed")) job.config.seed = seed;
            config["flow"] = flow_job_json(job);
            TriMesh init;
            if (job.config.source == "mesh") {
                init = read_mesh(job.mesh_path);
                if (job.config.perturbation > 0) {
                    init.orbit_map = compute_orbit_map(init, flow_group(job.config), 1e-2 * min_edge_length(init));
                    init = perturb(init, job.config.perturbation, job.config.seed);
                }
            } else {
                init = flow_initial_mesh(job.config);
            }
            FlowResult fr;
            json extra;
            if (job.probe) {
                auto pr = degeneration_probe(job.config, std::move(init));
                extra = {{"initial_neck", pr.initial_neck},
                         {"final_neck", pr.final_neck},
                         {"neck_trending_to_zero", pr.neck_trending_to_zero}};
                fr = std::move(pr.flow);
            } else {
                fr = descend(job.config, std::move(init));
            }
            std::ostringstream csv;
            write_trace_csv(csv, fr.trace);
            s.write_text(s.path(job.trace), csv.str());
            const std::string mp = s.path(job.out);
            write_mesh(mp, fr.mesh, Stereographic(parse_pole(job.pole, fr.mesh)));
            s.outputs.push_back(mp);
            s.outputs.push_back(sidecar_path(mp));
            const auto& first = fr.trace.records.front();
            const auto& last = fr.trace.records.back();
            result = {{"status", std::string(to_string(fr.trace.status))},
                      {"message", fr.trace.message},
                      {"iterations", last.iter},
                      {"initial_W", first.W},
                      {"final_W", last.W},
                      {"final_area", last.area},
                      {"final_grad_norm", last.grad_norm},
                      {"genus", genus(fr.mesh)},
                      {"seed", job.config.seed}};
            if (!extra.is_null()) result["probe"] = extra;
            s.write_json(s.path("flow.json"), result);
            out << result.dump(2) << "\n";
        } else if (cmd == "orbifold") {
            const auto* sub = orb->get_subcommands().front();
            std::vector<TableRow> rows;
            if (sub->get_name() == "classify") {
                rows.push_back({m, k, g, classify(m, k, g)});
                config["orbifold"] = "classify";
            } else {
                rows = table(max_m, max_k);
                config["orbifold"] = "table";
            }
            std::string text;
            if (format == "json") {
                json a = json::array();
                for (const auto& r : rows) {
                    json pj = json::array();
                    for (const auto& p : r.patterns) pj.push_back(pattern_json(p));
                    a.push_back({{"m", r.m}, {"k", r.k}, {"g", r.g}, {"patterns", pj}});
                }
                text = json{{"rows", a}, {"seed", seed}}.dump(2) + "\n";
            } else {
                text = format == "csv" ? table_csv(rows) : table_markdown(rows);
            }
            const std::string ext = format == "json" ? "json" : format == "csv" ? "csv" : "md";
            s.write_text(s.path("orbifold_" + sub->get_name() + "." + ext), text);
            out << text;
        } else if (cmd == "export") {
            const TriMesh mesh = read_mesh(mesh_in);
            const std::string op = s.path(mesh_out);
            const auto dot = op.find_last_of('.');
            const std::string ext = dot == std::string::npos ? "" : op.substr(dot + 1);
            if (ext == "csv") {
                write_coords_csv(op, mesh);
                s.outputs.push_back(op);
            } else {
                write_mesh(op, mesh, Stereographic(parse_pole(pole, mesh)));
                s.outputs.push_back(op);
                s.outputs.push_back(sidecar_path(op));
            }
            result = {{"vertices", mesh.vertices.size()}, {"faces", mesh.faces.size()}, {"genus", genus(mesh)}};
            out << result.dump(2) << "\n";
        }
        s.timings["run_s"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - tw).count();
    } catch (const precondition_error& e) {
        err << error_json("precondition_error", e.what()).dump() << "\n";
        return 1;
    } catch (const numerical_error& e) {
        err << error_json("numerical_error", e.what()).dump() << "\n";
        return 1;
    } catch (const topology_error& e) {
        err << error_json("topology_error", e.what()).dump() << "\n";
        return 1;
    } catch (const io_error& e) {
        err << error_json("io_error", e.what()).dump() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << error_json("error", e.what()).dump() << "\n";
        return 1;
    }

    s.timings["total_s"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    json argv_j = json::array();
    for (int i = 0; i < argc; ++i) argv_j.push_back(argv[i]);
    const json manifest{{"subcommand", cmd},
                        {"argv", argv_j},
                        {"config", config},
                        {"version", LAWSON_VERSION},
                        {"seed", seed},
                        {"timings", s.timings},
                        {"outputs", s.outputs}};
    try {
        std::ofstream f(s.path(cmd + ".manifest.json"));
        if (!f) throw io_error("cannot write manifest");
        f << manifest.dump(2) << "\n";
    } catch (const std::exception& e) {
        err << error_json("io_error", e.what()).dump() << "\n";
        return 1;
    }
    return 0;
}

} // namespace lawson::cli
