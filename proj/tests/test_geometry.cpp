#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "umbilic/errors.hpp"
#include "umbilic/geometry.hpp"
#include "umbilic/surface.hpp"
#include "umbilic/util.hpp"

using namespace umb;

namespace {

std::vector<SurfaceSpec> curved_gallery() {
    std::vector<SurfaceSpec> out;
    out.push_back(builtin("paraboloid"));
    out.push_back(builtin("saddle"));
    out.push_back(builtin("monkey_saddle"));
    out.push_back(builtin("catenoid"));
    out.push_back(builtin("sphere_patch", {2.0}));
    for (int k : {4, 5, 7}) out.push_back(builtin("re_zk", {static_cast<double>(k)}));
    return out;
}

Vec2 random_interior(Rng& rng, const Rect& d, double margin = 0.05) {
    return {rng.uniform(d.u_min + margin, d.u_max - margin),
            rng.uniform(d.v_min + margin, d.v_max - margin)};
}

}  // namespace

TEST_CASE("frames at simple surfaces") {
    SUBCASE("graph with vanishing gradient has the identity frame") {
        const SurfaceSpec monkey = builtin("monkey_saddle");
        const FrameData fr = frame_at(eval_jet2(monkey, {0.0, 0.0}));
        CHECK(fr.e1.x == 1.0);
        CHECK(fr.e1.y == 0.0);
        CHECK(fr.e1.z == 0.0);
        CHECK(fr.e2.y == 1.0);
        CHECK(fr.normal.z == 1.0);
    }
    SUBCASE("tilted plane z = u + v") {
        const SurfaceSpec plane = make_graph(parse_expression("u + v"), Rect{-2, 2, -2, 2});
        const FrameData fr = frame_at(eval_jet2(plane, {0.7, -0.4}));
        const double s = 1.0 / std::sqrt(3.0);
        CHECK(fr.normal.x == doctest::Approx(-s).epsilon(1e-14));
        CHECK(fr.normal.y == doctest::Approx(-s).epsilon(1e-14));
        CHECK(fr.normal.z == doctest::Approx(s).epsilon(1e-14));
    }
}

TEST_CASE("frame invariants at random gallery points") {
    Rng rng(21);
    for (const SurfaceSpec& spec : curved_gallery()) {
        CAPTURE(spec.name);
        for (int i = 0; i < 40; ++i) {
            const Vec2 p = random_interior(rng, spec.domain);
            const FrameData fr = frame_at(eval_jet2(spec, p));
            CHECK(std::fabs(fr.e1.norm() - 1.0) < 1e-12);
            CHECK(std::fabs(fr.e2.norm() - 1.0) < 1e-12);
            CHECK(std::fabs(fr.normal.norm() - 1.0) < 1e-12);
            CHECK(std::fabs(fr.e1.dot(fr.e2)) < 1e-12);
            CHECK(std::fabs(fr.e1.dot(fr.normal)) < 1e-12);
            CHECK(std::fabs(fr.e2.dot(fr.normal)) < 1e-12);
            // Positive orientation: det(e1, e2, normal) = +1.
            const double det = fr.e1.cross(fr.e2).dot(fr.normal);
            CHECK(det == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("rank deficiency is reported") {
    // x = (u, u, v): X_u and X_v stay independent, but x = (u+v, u+v, 1) drops rank.
    const SurfaceSpec degenerate = make_parametric(
        parse_expression("u + v"), parse_expression("u + v"), parse_expression("1"),
        Rect{-1, 1, -1, 1});
    CHECK_THROWS_AS(frame_at(eval_jet2(degenerate, {0.1, 0.2})), RankError);
}

TEST_CASE("shape operator sign convention and basics") {
    SUBCASE("paraboloid umbilic with lambda = mu = +1") {
        const SurfaceSpec parab = builtin("paraboloid");
        const SurfacePoint sp = surface_point(parab, {0.0, 0.0});
        CHECK(sp.shape.s11 == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(sp.shape.s22 == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(sp.shape.s12 == doctest::Approx(0.0).epsilon(1e-14));
        CHECK(sp.shape.gauss() == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(sp.traceless.magnitude() < 1e-14);
    }
    SUBCASE("plane has the zero tensor") {
        const SurfacePoint sp = surface_point(builtin("plane"), {0.3, -0.6});
        CHECK(sp.shape.s11 == 0.0);
        CHECK(sp.shape.s12 == 0.0);
        CHECK(sp.shape.s22 == 0.0);
        CHECK(sp.shape.gauss() == 0.0);
    }
    SUBCASE("monkey saddle is negatively curved off the origin") {
        const SurfacePoint sp = surface_point(builtin("monkey_saddle"), {0.3, 0.1});
        CHECK(sp.shape.gauss() < 0.0);
        const double k_forms = (sp.forms.L * sp.forms.N - sp.forms.M * sp.forms.M) /
                               (sp.forms.E * sp.forms.G - sp.forms.F * sp.forms.F);
        CHECK(sp.shape.gauss() == doctest::Approx(k_forms).epsilon(1e-10));
    }
    SUBCASE("sphere patch is totally umbilic with K = 1/rho^2") {
        const SurfaceSpec sphere = builtin("sphere_patch", {2.0});
        Rng rng(3);
        for (int i = 0; i < 20; ++i) {
            const SurfacePoint sp = surface_point(sphere, random_interior(rng, sphere.domain));
            CHECK(sp.traceless.magnitude() < 1e-13);
            CHECK(std::fabs(sp.shape.gauss()) == doctest::Approx(0.25).epsilon(1e-12));
        }
    }
}

TEST_CASE("curvature identities at random gallery points") {
    Rng rng(31);
    for (const SurfaceSpec& spec : curved_gallery()) {
        CAPTURE(spec.name);
        for (int i = 0; i < 125; ++i) {  // 8 surfaces x 125 = 1000 points
            const SurfacePoint sp = surface_point(spec, random_interior(rng, spec.domain));
            const double K = sp.shape.gauss();
            const double k_forms = (sp.forms.L * sp.forms.N - sp.forms.M * sp.forms.M) /
                                   (sp.forms.E * sp.forms.G - sp.forms.F * sp.forms.F);
            CHECK(oracle::close_rel(K, k_forms, 1e-10, 1e-10, 1e-6));

            // |X|^2 + H^2 = (lambda^2 + mu^2)/2.
            const double lhs = sp.traceless.magnitude() * sp.traceless.magnitude() +
                               sp.shape.mean() * sp.shape.mean();
            const double lam = sp.shape.lambda(), mu = sp.shape.mu();
            const double rhs = 0.5 * (lam * lam + mu * mu);
            CHECK(oracle::close_rel(lhs, rhs, 1e-10, 1e-12, 1e-6));

            // lambda >= mu, and |X| = (lambda - mu)/2.
            CHECK(lam >= mu);
            CHECK(oracle::close_rel(sp.traceless.magnitude(), 0.5 * (lam - mu), 1e-10, 1e-12,
                                    1e-6));
        }
    }
}

TEST_CASE("re_zk surfaces match the negative-curvature hypothesis") {
    Rng rng(41);
    for (int k : {3, 4, 5, 6, 7, 8}) {
        const SurfaceSpec spec = builtin("re_zk", {static_cast<double>(k)});
        CAPTURE(k);
        // K < 0 at sampled points away from the origin...
        for (int i = 0; i < 200; ++i) {
            const Vec2 p = random_interior(rng, spec.domain);
            if (p.norm() < 1e-2) continue;
            CHECK(surface_point(spec, p).shape.gauss() < 0.0);
        }
        // ...and the curvature vanishes at the umbilic itself.
        CHECK(std::fabs(surface_point(spec, {0.0, 0.0}).shape.gauss()) < 1e-12);
    }
}

TEST_CASE("umbilic scan") {
    SUBCASE("monkey saddle has exactly one umbilic at the origin") {
        const SurfaceSpec monkey = builtin("monkey_saddle");
        const std::vector<UmbilicHit> hits = umbilic_scan(monkey, 64);
        REQUIRE(hits.size() == 1);
        CHECK(std::fabs(hits[0].location.x) < 1e-6);
        CHECK(std::fabs(hits[0].location.y) < 1e-6);
        CHECK(hits[0].residual < 1e-9);
        CHECK(hits[0].isolation_radius > 0.1);
    }
    SUBCASE("dense-grid oracle confirms the unique zero") {
        // Brute-force |(a,b)| minimization on a 1000x1000 grid: the minimum
        // sits in the cell containing the origin and nowhere else gets small.
        const SurfaceSpec monkey = builtin("monkey_saddle");
        const int n = 1000;
        double best = 1e300, second_band = 1e300;
        Vec2 best_at;
        for (int j = 0; j < n; ++j) {
            for (int i = 0; i < n; ++i) {
                const Vec2 p{-1.0 + 2.0 * i / (n - 1), -1.0 + 2.0 * j / (n - 1)};
                const double m = surface_point(monkey, p).traceless.magnitude();
                if (m < best) {
                    best = m;
                    best_at = p;
                }
                if (p.norm() > 0.05) second_band = std::min(second_band, m);
            }
        }
        CHECK(best_at.norm() < 3e-3);   // grid pitch is 2e-3
        CHECK(best < 2e-2);
        CHECK(second_band > 0.1);       // no other near-zeros anywhere
    }
    SUBCASE("saddle has no umbilics") {
        CHECK(umbilic_scan(builtin("saddle"), 32).empty());
    }
    SUBCASE("sphere patch reports a non-isolated locus") {
        CHECK_THROWS_AS(umbilic_scan(builtin("sphere_patch"), 32), NonIsolatedUmbilicError);
    }
    SUBCASE("grid resolution precondition") {
        CHECK_THROWS_AS(umbilic_scan(builtin("saddle"), 8), InvalidInputError);
    }
    SUBCASE("re_zk(5) umbilic found with clean isolation") {
        const std::vector<UmbilicHit> hits = umbilic_scan(builtin("re_zk", {5}), 64);
        REQUIRE(hits.size() == 1);
        CHECK(hits[0].location.norm() < 1e-6);
    }
}
