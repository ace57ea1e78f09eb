#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "umbilic/errors.hpp"
#include "umbilic/surface.hpp"
#include "umbilic/util.hpp"

using namespace umb;

namespace {

std::vector<SurfaceSpec> full_gallery() {
    std::vector<SurfaceSpec> out;
    out.push_back(builtin("paraboloid"));
    out.push_back(builtin("saddle"));
    out.push_back(builtin("monkey_saddle"));
    out.push_back(builtin("plane"));
    out.push_back(builtin("catenoid"));
    out.push_back(builtin("sphere_patch"));
    for (int k : {4, 6, 8}) out.push_back(builtin("re_zk", {static_cast<double>(k)}));
    return out;
}

}  // namespace

TEST_CASE("graph jets match hand computations") {
    SUBCASE("f = u^2") {
        const SurfaceSpec s = make_graph(parse_expression("u^2"), Rect{-4, 4, -4, 4});
        const Jet2 j = eval_jet2(s, {3.0, 1.7});
        CHECK(j.pos.z == 9.0);
        CHECK(j.xu.z == 6.0);
        CHECK(j.xuu.z == 2.0);
        CHECK(j.xv.z == 0.0);
        CHECK(j.xuv.z == 0.0);
        CHECK(j.xvv.z == 0.0);
        // First two coordinates carry exactly zero second partials.
        CHECK(j.xuu.x == 0.0);
        CHECK(j.xuv.y == 0.0);
    }
    SUBCASE("f = u*v has constant unit mixed hessian") {
        const SurfaceSpec s = make_graph(parse_expression("u*v"), Rect{-2, 2, -2, 2});
        for (double u : {-1.5, 0.0, 0.8})
            for (double v : {-0.4, 1.1}) {
                const Jet2 j = eval_jet2(s, {u, v});
                CHECK(j.xuu.z == 0.0);
                CHECK(j.xuv.z == 1.0);
                CHECK(j.xvv.z == 0.0);
            }
    }
}

TEST_CASE("AD jets agree with central finite differences on the gallery") {
    Rng rng(11);
    for (const SurfaceSpec& spec : full_gallery()) {
        CAPTURE(spec.name);
        for (int trial = 0; trial < 100; ++trial) {
            const Vec2 p{rng.uniform(spec.domain.u_min + 0.05, spec.domain.u_max - 0.05),
                         rng.uniform(spec.domain.v_min + 0.05, spec.domain.v_max - 0.05)};
            const Jet2 ad = eval_jet2(spec, p);
            const oracle::JetOracle fd = oracle::fd_jet(spec, p);
            const std::pair<Vec3, Vec3> pairs[] = {
                {ad.xu, fd.xu}, {ad.xv, fd.xv}, {ad.xuu, fd.xuu},
                {ad.xuv, fd.xuv}, {ad.xvv, fd.xvv}};
            for (const auto& [got, want] : pairs) {
                CHECK(oracle::close_rel(got.x, want.x, 1e-5, 1e-8));
                CHECK(oracle::close_rel(got.y, want.y, 1e-5, 1e-8));
                CHECK(oracle::close_rel(got.z, want.z, 1e-5, 1e-8));
            }
        }
    }
}

TEST_CASE("gallery definitions") {
    SUBCASE("monkey saddle equals re_zk(3)") {
        CHECK(expr_equal(builtin("monkey_saddle").f, builtin("re_zk", {3}).f));
    }
    SUBCASE("re_zk(4) is the expanded quartic") {
        CHECK(expr_equal(builtin("re_zk", {4}).f,
                         parse_expression("u^4 - 6*u^2*v^2 + v^4")));
    }
    SUBCASE("re_zk(5) expansion") {
        CHECK(expr_equal(builtin("re_zk", {5}).f,
                         parse_expression("u^5 - 10*u^3*v^2 + 5*u*v^4")));
    }
    SUBCASE("invalid parameters") {
        CHECK_THROWS_AS(builtin("re_zk", {1}), InvalidInputError);
        CHECK_THROWS_AS(builtin("re_zk", {2.5}), InvalidInputError);
        CHECK_THROWS_AS(builtin("re_zk", {}), InvalidInputError);
        CHECK_THROWS_AS(builtin("sphere_patch", {-1.0}), InvalidInputError);
        CHECK_THROWS_AS(builtin("sphere_patch", {0.0}), InvalidInputError);
        CHECK_THROWS_AS(builtin("nonsense"), InvalidInputError);
        CHECK_THROWS_AS(builtin("plane", {1.0}), InvalidInputError);
    }
    SUBCASE("gallery expressions re-parse to equal trees") {
        for (const SurfaceSpec& spec : full_gallery()) {
            CAPTURE(spec.name);
            for (const ExprPtr& e : {spec.f, spec.x, spec.y, spec.z}) {
                if (!e) continue;
                CHECK(expr_equal(e, parse_expression(to_string(e))));
            }
        }
    }
}

TEST_CASE("domain handling") {
    const SurfaceSpec s = builtin("saddle");
    CHECK_THROWS_AS(eval_jet2(s, {1.5, 0.0}), DomainError);
    CHECK_THROWS_AS(make_graph(parse_expression("u"), Rect{1, 1, 0, 2}), DomainError);
    // log undefined inside the declared domain: reported at evaluation.
    const SurfaceSpec bad = make_graph(parse_expression("log(u)"), Rect{-1, 1, -1, 1});
    CHECK_THROWS_AS(eval_jet2(bad, {-0.5, 0.0}), EvalError);
}

TEST_CASE("sphere inversion") {
    SUBCASE("inverting twice is the identity") {
        const SurfaceSpec monkey = builtin("monkey_saddle");
        const Vec3 center{0.3, -0.2, 2.0};
        const SurfaceSpec twice =
            sphere_inversion(sphere_inversion(monkey, center, 1.3), center, 1.3);
        Rng rng(5);
        for (int i = 0; i < 100; ++i) {
            const Vec2 p{rng.uniform(-0.95, 0.95), rng.uniform(-0.95, 0.95)};
            const Vec3 d = eval_jet2(twice, p).pos - eval_jet2(monkey, p).pos;
            CHECK(d.norm() < 1e-12);
        }
    }
    SUBCASE("plane z=1 maps onto the sphere of radius 1/2 at (0,0,1/2)") {
        const SurfaceSpec plane =
            make_graph(parse_expression("1"), Rect{-2, 2, -2, 2}, "shifted_plane");
        const SurfaceSpec image = sphere_inversion(plane, {0, 0, 0}, 1.0);
        Rng rng(6);
        for (int i = 0; i < 50; ++i) {
            const Vec2 p{rng.uniform(-1.9, 1.9), rng.uniform(-1.9, 1.9)};
            const Vec3 q = eval_jet2(image, p).pos - Vec3{0.0, 0.0, 0.5};
            CHECK(q.norm() == doctest::Approx(0.5).epsilon(1e-12));
        }
    }
    SUBCASE("surface through the center is rejected") {
        const SurfaceSpec saddle = builtin("saddle");
        CHECK_THROWS_AS(sphere_inversion(saddle, {0.0, 0.0, 0.0}, 1.0), InvalidInputError);
    }
    SUBCASE("inverted jets still match finite differences") {
        const SurfaceSpec inv = sphere_inversion(builtin("monkey_saddle"), {0, 0, 2}, 1.0);
        Rng rng(7);
        for (int i = 0; i < 50; ++i) {
            const Vec2 p{rng.uniform(-0.9, 0.9), rng.uniform(-0.9, 0.9)};
            const Jet2 ad = eval_jet2(inv, p);
            const oracle::JetOracle fd = oracle::fd_jet(inv, p);
            CHECK(oracle::close_rel(ad.xuu.z, fd.xuu.z, 1e-5, 1e-8));
            CHECK(oracle::close_rel(ad.xuv.x, fd.xuv.x, 1e-5, 1e-8));
            CHECK(oracle::close_rel(ad.xv.y, fd.xv.y, 1e-5, 1e-8));
        }
    }
}

TEST_CASE("surface definition files") {
    SUBCASE("graph surface") {
        const SurfaceSpec s = parse_surface_file(
            "[surface]\n"
            "kind = \"graph\"\n"
            "f = \"u^3 - 3*u*v^2\"\n"
            "\n"
            "[domain]\n"
            "u = [-1, 1]\n"
            "v = [-1, 1]\n");
        CHECK(s.is_graph());
        CHECK(expr_equal(s.f, builtin("monkey_saddle").f));
        CHECK(s.domain.u_min == -1.0);
        CHECK(s.domain.v_max == 1.0);
    }
    SUBCASE("parametric surface with comments and whitespace") {
        const SurfaceSpec s = parse_surface_file(
            "# a catenoid patch\n"
            "[surface]\n"
            "  kind = \"parametric\"  \n"
            "x = \"((exp(v) + exp(-v))/2)*cos(u)\"\n"
            "y = \"((exp(v) + exp(-v))/2)*sin(u)\"\n"
            "z = \"v\"   # height\n"
            "[domain]\n"
            "u = [-3, 3]\n"
            "v = [-1, 1]\n");
        CHECK(!s.is_graph());
        const Jet2 j = eval_jet2(s, {0.0, 0.0});
        CHECK(j.pos.x == doctest::Approx(1.0));
    }
    SUBCASE("builtin with params and domain override") {
        const SurfaceSpec s = parse_surface_file(
            "[surface]\n"
            "kind = \"builtin\"\n"
            "name = \"re_zk\"\n"
            "params = [4]\n"
            "[domain]\n"
            "u = [-0.5, 0.5]\n"
            "v = [-0.5, 0.5]\n");
        CHECK(s.name == "re_zk(4)");
        CHECK(s.domain.u_max == 0.5);
    }
    SUBCASE("malformed files are rejected") {
        CHECK_THROWS_AS(parse_surface_file("[surface]\nkind = \"graph\"\n"), InvalidInputError);
        CHECK_THROWS_AS(parse_surface_file("kind = \"graph\"\n"), InvalidInputError);
        CHECK_THROWS_AS(parse_surface_file("[surface]\nkind = \"weird\"\n"), InvalidInputError);
        CHECK_THROWS_AS(parse_surface_file("[surface]\nkind\n"), InvalidInputError);
        CHECK_THROWS_AS(
            parse_surface_file("[surface]\nkind = \"graph\"\nf = \"u +\"\n[domain]\nu = [-1, "
                               "1]\nv = [-1, 1]\n"),
            ParseError);
    }
}
