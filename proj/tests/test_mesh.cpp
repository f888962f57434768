#include <filesystem>
#include <sstream>

#include <gtest/gtest.h>

#include <lawson/energy.hpp>
#include <lawson/lawson.hpp>
#include <lawson/mesh.hpp>
#include <lawson/mesh_io.hpp>

using namespace lawson;

namespace {

const LawsonSurface& xi11()
{
    static const LawsonSurface s = build(1, 1, 8);
    return s;
}

double max_move(const TriMesh& a, const TriMesh& b)
{
    double d = 0;
    for (std::size_t v = 0; v < a.vertices.size(); ++v) d = std::max(d, (a.vertices[v] - b.vertices[v]).norm());
    return d;
}

} // namespace

TEST(Topology, Octahedron)
{
    const auto m = octahedron_sphere(0);
    EXPECT_EQ(euler_characteristic(m), 2);
    EXPECT_EQ(genus(m), 0);
    EXPECT_TRUE(is_closed(m));
    EXPECT_NO_THROW(validate(m));
}

TEST(Topology, TorusGrid)
{
    const auto m = flat_torus(8, 8);
    EXPECT_EQ(euler_characteristic(m), 0);
    EXPECT_EQ(genus(m), 1);
}

TEST(Topology, GenusRejectsBadInput)
{
    auto disk = octahedron_sphere(1);
    disk.faces.pop_back();
    EXPECT_THROW(genus(disk), topology_error);
    EXPECT_THROW(genus(mesh_union(octahedron_sphere(0), geodesic_sphere(0.5, 0))), topology_error);
}

TEST(Topology, NonOrientableGridIsDetected)
{
    // Moebius band closed up as a Klein-bottle-style grid in S^3: orientation
    // fails regardless of embedding.
    const int nu = 6, nv = 4;
    TriMesh m = flat_torus(nu, nv);
    auto id = [&](int i, int j) { return ((i + nu) % nu) * nv + (j + nv) % nv; };
    m.faces.clear();
    for (int i = 0; i < nu; ++i) {
        for (int j = 0; j < nv; ++j) {
            const bool last = i == nu - 1;
            const int a = id(i, j), d = id(i, j + 1);
            const int b = last ? id(0, nv - 1 - j) : id(i + 1, j);
            const int c = last ? id(0, nv - 1 - (j + 1)) : id(i + 1, j + 1);
            m.faces.push_back({a, b, c});
            m.faces.push_back({a, c, d});
        }
    }
    EXPECT_FALSE(is_orientable(m));
    EXPECT_THROW(genus(m), topology_error);
}

TEST(Validate, RejectsDegenerateAndOffSphere)
{
    auto m = octahedron_sphere(0);
    m.faces.push_back({0, 0, 1});
    EXPECT_THROW(validate(m), topology_error);
    auto n = octahedron_sphere(0);
    n.vertices[0] *= 1.01;
    EXPECT_THROW(validate(n), precondition_error);
    auto p = octahedron_sphere(0);
    p.faces.push_back({0, 2, 4});
    EXPECT_THROW(validate(p), topology_error);
}

TEST(OrbitMesh, TrivialGroupReturnsPatch)
{
    const auto patch = solve(make_plateau_problem(1, 1, 0, 0, 4));
    const auto out = orbit_mesh(patch, SymmetryGroup());
    EXPECT_EQ(out.vertices.size(), patch.vertices.size());
    EXPECT_EQ(out.faces.size(), patch.faces.size());
    EXPECT_EQ(max_move(out, patch), 0.0);
}

TEST(OrbitMesh, CliffordAssembly)
{
    const auto& s = xi11();
    EXPECT_TRUE(is_closed(s.mesh));
    EXPECT_EQ(euler_characteristic(s.mesh), 0);
    EXPECT_EQ(genus(s.mesh), 1);
    const std::size_t copies = build_named_group(GroupName::G, 1, 1).order();
    EXPECT_EQ(s.mesh.faces.size(), copies * s.disk.mesh.faces.size());
}

TEST(OrbitMesh, InvariantUnderGenerators)
{
    const auto& s = xi11();
    const auto g = build_named_group(GroupName::G, 1, 1);
    EXPECT_LT(invariance_deviation(s.mesh, g.generators()), default_weld_tol);
    EXPECT_LT(symmetry_deviation(s.mesh), 1e-12);
}

TEST(OrbitMesh, GenusTwoForXi21)
{
    EXPECT_EQ(genus(build(2, 1, 8).mesh), 2);
}

TEST(Symmetrize, FixedPointAndIdempotent)
{
    const auto& s = xi11();
    const auto a = symmetrize(s.mesh);
    EXPECT_LT(max_move(a, s.mesh), 1e-12);
    const auto p = perturb(s.mesh, 1e-3, 7);
    const auto b = symmetrize(p);
    const auto c = symmetrize(b);
    EXPECT_LT(max_move(b, c), 1e-12);
}

TEST(Symmetrize, PerturbedXi11BecomesInvariant)
{
    const auto& s = xi11();
    const auto p = perturb(s.mesh, 1e-3, 3);
    EXPECT_GT(symmetry_deviation(p), 1e-4);
    EXPECT_LT(symmetry_deviation(symmetrize(p)), 1e-12);
}

TEST(Symmetrize, MoveBoundedByOrbitSpread)
{
    const auto& s = xi11();
    const auto p = perturb(s.mesh, 1e-3, 5);
    const auto q = symmetrize(p);
    const auto& om = *p.orbit_map;
    for (std::size_t v = 0; v < p.vertices.size(); ++v) {
        double spread = 0;
        for (std::size_t e = 0; e < om.elements.size(); ++e)
            spread = std::max(spread, (om.elements[e].inverse()(p.vertices[om.image[e][v]]) - p.vertices[v]).norm());
        EXPECT_LE((q.vertices[v] - p.vertices[v]).norm(), spread + 1e-14);
    }
}

TEST(Symmetrize, RequiresOrbitMap)
{
    EXPECT_THROW(symmetrize(octahedron_sphere(1)), precondition_error);
}

TEST(Refine, CountsAndTopology)
{
    const auto m = flat_torus(6, 5);
    const auto r = refine(m);
    EXPECT_EQ(r.faces.size(), 4 * m.faces.size());
    EXPECT_EQ(euler_characteristic(r), euler_characteristic(m));
    EXPECT_EQ(genus(r), genus(m));
    const auto& s = xi11();
    EXPECT_EQ(genus(refine(s.mesh)), 1);
}

TEST(Refine, BoundaryDoubles)
{
    const auto disk = init_disk(make_plateau_problem(1, 1, 0, 0, 6));
    const auto r = refine(disk);
    const auto nb = [](const TriMesh& m) {
        const auto f = compute_boundary_flags(m);
        return std::count(f.begin(), f.end(), 1);
    };
    EXPECT_EQ(nb(r), 2 * nb(disk));
    // Boundary midpoints of a geodesic boundary stay on the quadrilateral.
    const auto q = quadrilateral(0, 0, 1, 1);
    const auto f = compute_boundary_flags(r);
    for (std::size_t v = 0; v < r.vertices.size(); ++v) {
        if (!f[v]) continue;
        double best = 1;
        for (int i = 0; i <= 4000; ++i) best = std::min(best, (q.at(i / 4000.0) - r.vertices[v]).norm());
        EXPECT_LT(best, 1e-3);
    }
}

TEST(Refine, OctahedronAreaConverges)
{
    std::vector<double> err;
    for (int level = 1; level <= 5; ++level) err.push_back(std::abs(area(octahedron_sphere(level)) - 4 * pi));
    for (std::size_t i = 1; i < err.size(); ++i) {
        const double ratio = err[i - 1] / err[i];
        EXPECT_GT(ratio, 3.5);
        EXPECT_LT(ratio, 4.5);
    }
}

TEST(Separation, ConcentricSpheres)
{
    // Chord distance between geodesic spheres of radii r1 < r2 about the same
    // centre is 2 sin((r2 - r1)/2). The gap is kept below the within-sphere
    // distance of triangles three hops apart.
    const double r1 = 0.9, r2 = 1.0;
    const auto m = mesh_union(geodesic_sphere(r1, 3), geodesic_sphere(r2, 3));
    const double chord = 2 * std::sin((r2 - r1) / 2);
    const auto rep = min_separation_diagnostic(m);
    EXPECT_FALSE(rep.budget_exhausted);
    EXPECT_NEAR(rep.min_distance, chord, 0.05 * chord);
    EXPECT_LE(rep.min_distance, chord + 1e-12);
}

TEST(Separation, AdjacentTrianglesExcluded)
{
    TriMesh m;
    m.vertices = {Vec4(1, 0, 0, 0), Vec4(0, 1, 0, 0), Vec4(0, 0, 1, 0), Vec4(0, 0, 0, 1)};
    m.faces = {{0, 1, 2}, {0, 2, 3}};
    const auto rep = min_separation_diagnostic(m);
    EXPECT_TRUE(std::isinf(rep.min_distance));
}

TEST(Separation, Xi11Positive)
{
    EXPECT_GT(min_separation_diagnostic(xi11().mesh).min_distance, 0.0);
}

TEST(Distance, TriangleHelpers)
{
    const Vec4 a(0, 0, 0, 0), b(1, 0, 0, 0), c(0, 1, 0, 0);
    EXPECT_NEAR((closest_point_on_triangle(Vec4(0.2, 0.2, 3, 1), a, b, c) - Vec4(0.2, 0.2, 0, 0)).norm(), 0, 1e-15);
    EXPECT_NEAR((closest_point_on_triangle(Vec4(2, 2, 0, 0), a, b, c) - Vec4(0.5, 0.5, 0, 0)).norm(), 0, 1e-15);
    EXPECT_NEAR(segment_segment_distance(Vec4(0, 0, 0, 0), Vec4(1, 0, 0, 0), Vec4(0.5, 1, 1, 0), Vec4(0.5, -1, 1, 0)), 1.0, 1e-15);
    const std::array<Vec4, 3> t1{a, b, c};
    const std::array<Vec4, 3> t2{Vec4(0, 0, 0, 2), Vec4(1, 0, 0, 2), Vec4(0, 1, 0, 2)};
    EXPECT_NEAR(triangle_distance(t1, t2), 2.0, 1e-15);
}

TEST(MeshIO, OffRoundTripWithSidecar)
{
    const auto& s = xi11();
    const auto dir = std::filesystem::temp_directory_path() / "lawson_test_mesh_io";
    std::filesystem::create_directories(dir);
    const std::string path = (dir / "xi11.off").string();
    const Stereographic proj(auto_pole(s.mesh));
    write_mesh(path, s.mesh, proj);
    EXPECT_TRUE(std::filesystem::exists(dir / "xi11.csv"));
    const auto back = read_mesh(path, proj);
    EXPECT_EQ(back.faces, s.mesh.faces);
    EXPECT_LT(max_move(back, s.mesh), 1e-14);
    EXPECT_EQ(genus(back), 1);

    std::filesystem::remove(dir / "xi11.csv");
    const auto proj_back = read_mesh(path, proj);
    EXPECT_LT(max_move(proj_back, s.mesh), 1e-12);
    std::filesystem::remove_all(dir);
}

TEST(MeshIO, StereographicInverse)
{
    std::mt19937_64 rng(9);
    const Stereographic p(Vec4(0.5, -0.5, 0.5, 0.5));
    for (int i = 0; i < 200; ++i) {
        const Vec4 x = uniform_s3(rng);
        EXPECT_LT((p.inverse(p(x)) - x).norm(), 1e-10);
    }
    EXPECT_THROW(p(p.pole()), numerical_error);
    EXPECT_THROW(Stereographic(Vec4(1, 1, 0, 0)), precondition_error);
}

TEST(MeshIO, FormatsAndErrors)
{
    const auto m = octahedron_sphere(0);
    const Stereographic p(Vec4(0.5, 0.5, 0.5, 0.5));
    std::ostringstream off, obj, csv;
    write_off(off, m, p);
    write_obj(obj, m, p);
    write_coords_csv(csv, m);
    EXPECT_EQ(off.str().rfind("OFF\n6 8 0\n", 0), 0u);
    EXPECT_NE(obj.str().find("f 1 3 5"), std::string::npos);
    EXPECT_EQ(csv.str().rfind("x,y,z,w\n", 0), 0u);
    std::istringstream in(off.str());
    const auto m3 = read_off(in);
    EXPECT_EQ(m3.vertices.size(), 6u);
    EXPECT_EQ(m3.faces, m.faces);
    std::istringstream bad("OFF\n3 1 0\n0 0 0\n1 0 0\n0 1 0\n4 0 1 2 0\n");
    EXPECT_THROW(read_off(bad), io_error);
    std::istringstream bad_csv("a,b\n1,2\n");
    EXPECT_THROW(read_coords_csv(bad_csv), io_error);
    EXPECT_EQ(sidecar_path("/tmp/a.b/mesh.off"), "/tmp/a.b/mesh.csv");
    EXPECT_EQ(sidecar_path("/tmp/a.b/mesh"), "/tmp/a.b/mesh.csv");
    EXPECT_THROW(write_mesh("/tmp/x.ply", m), precondition_error);
}
