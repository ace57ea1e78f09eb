#include "umbilic/height.hpp"

#include <algorithm>
#include <cmath>

#include "umbilic/errors.hpp"

namespace umb {

namespace {

constexpr double kCosGuard = 1e-9;     // distance from the open bounds of (0,1)
constexpr double kFlatTolerance = 1e-12;

Vec3 axis_vector(int axis) {
    switch (axis) {
        case 0: return {1.0, 0.0, 0.0};
        case 1: return {0.0, 1.0, 0.0};
        default: return {0.0, 0.0, 1.0};
    }
}

double checked_cos(const Vec3& a, const Vec3& normal) {
    const double c = a.dot(normal);
    if (c <= kCosGuard || c >= 1.0 - kCosGuard)
        throw InvalidInputError(
            "height direction inadmissible: <a, normal> left (0, 1) at an evaluated point");
    return c;
}

}  // namespace

HeightData make_height_data(const SurfaceSpec& spec, const Vec2& q, double tilt_degrees,
                            int axis) {
    const Vec3 n = surface_point(spec, q).frame.normal;
    if (axis < 0) {
        // Least-aligned coordinate axis, ties broken toward x.
        const double ax = std::fabs(n.x), ay = std::fabs(n.y), az = std::fabs(n.z);
        axis = (ax <= ay && ax <= az) ? 0 : (ay <= az ? 1 : 2);
    }
    Vec3 t = axis_vector(axis);
    if (std::fabs(t.dot(n)) > 0.9) t = axis_vector((axis + 1) % 3);
    t = (t - n * t.dot(n)).normalized();

    const double rad = tilt_degrees * M_PI / 180.0;
    const Vec3 a = (n * std::cos(rad) + t * std::sin(rad)).normalized();
    return make_height_data_from(spec, q, a);
}

HeightData make_height_data_from(const SurfaceSpec& spec, const Vec2& q, const Vec3& a) {
    const Vec3 unit = a.normalized();
    checked_cos(unit, surface_point(spec, q).frame.normal);
    return {unit, q};
}

double height_cos(const SurfaceSpec& spec, const HeightData& hd, const Vec2& p) {
    return checked_cos(hd.a, surface_point(spec, p).frame.normal);
}

TangentSample grad_f(const SurfaceSpec& spec, const HeightData& hd, const Vec2& p) {
    const SurfacePoint sp = surface_point(spec, p);
    const double c = checked_cos(hd.a, sp.frame.normal);
    const Vec3 g = hd.a - sp.frame.normal * c;
    return {{g.dot(sp.frame.e1), g.dot(sp.frame.e2)}, g};
}

TangentSample grad_h(const SurfaceSpec& spec, const HeightData& hd, const Vec2& p) {
    const SurfacePoint sp = surface_point(spec, p);
    const double c = checked_cos(hd.a, sp.frame.normal);
    const Vec3 g = hd.a - sp.frame.normal * c;
    const Vec2 gf{g.dot(sp.frame.e1), g.dot(sp.frame.e2)};
    const Vec2 gh{c * (sp.shape.s11 * gf.x + sp.shape.s12 * gf.y),
                  c * (sp.shape.s12 * gf.x + sp.shape.s22 * gf.y)};
    return {gh, sp.frame.e1 * gh.x + sp.frame.e2 * gh.y};
}

double h_value(const SurfaceSpec& spec, const HeightData& hd, const Vec2& p) {
    const double c = height_cos(spec, hd, p);
    return 0.5 * (1.0 - c * c);
}

ThirdIndexReport verify_third_index(const SurfaceSpec& spec, const HeightData& hd,
                                    const LoopSpec& loop) {
    ThirdIndexReport r;
    r.j_tensor = index_of_tensor(
        [&spec](const Vec2& p) {
            const TracelessComponents t = surface_point(spec, p).traceless;
            return Vec2{t.a, t.b};
        },
        loop);
    r.j_grad_f = winding_of_vector_field(
        [&spec, &hd](const Vec2& p) { return grad_f(spec, hd, p).frame; }, loop);
    r.j_grad_h = winding_of_vector_field(
        [&spec, &hd](const Vec2& p) { return grad_h(spec, hd, p).frame; }, loop);
    r.holds = (2 * r.j_tensor == r.j_grad_h + r.j_grad_f);
    return r;
}

CriticalPointReport gradient_index_check(const ExprPtr& g, const RiemannianPatch& patch,
                                         const Vec2& p0, const LoopSpec& loop) {
    CriticalPointReport report;
    report.index = winding_of_vector_field(
        [&g, &patch](const Vec2& p) { return patch.metric_gradient(g, p); }, loop);

    const double g0 = eval_value(g, p0.x, p0.y);
    const double tol = kFlatTolerance * (1.0 + std::fabs(g0));
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (const double r : {0.5 * loop.radius, loop.radius}) {
        constexpr int kSamples = 256;
        for (int i = 0; i < kSamples; ++i) {
            const double t = 2.0 * M_PI * i / kSamples;
            const double value =
                eval_value(g, p0.x + r * std::cos(t), p0.y + r * std::sin(t));
            lo = std::min(lo, value);
            hi = std::max(hi, value);
        }
    }

    if (hi < g0 - tol)
        report.extremum = ExtremumClass::Maximum;
    else if (lo > g0 + tol)
        report.extremum = ExtremumClass::Minimum;
    else if (hi > g0 + tol && lo < g0 - tol)
        report.extremum = ExtremumClass::None;
    else
        report.extremum = ExtremumClass::Degenerate;

    const bool is_extremum = report.extremum == ExtremumClass::Minimum ||
                             report.extremum == ExtremumClass::Maximum;
    report.consistent = report.index.twice <= 2 && ((report.index.twice == 2) == is_extremum);
    return report;
}

ProbeReport extremum_probe(const SurfaceSpec& spec, const HeightData& hd,
                           const std::vector<double>& radii) {
    ProbeReport report;
    const double hq = h_value(spec, hd, hd.q);
    const double tol = kFlatTolerance * (1.0 + std::fabs(hq));

    bool any_variation = false;
    bool all_pass = true;
    for (const double r : radii) {
        ProbeCircle circle;
        circle.radius = r;
        circle.h_center = hq;
        circle.h_min = std::numeric_limits<double>::infinity();
        circle.h_max = -std::numeric_limits<double>::infinity();
        constexpr int kSamples = 512;
        for (int i = 0; i < kSamples; ++i) {
            const double t = 2.0 * M_PI * i / kSamples;
            const double value =
                h_value(spec, hd, {hd.q.x + r * std::cos(t), hd.q.y + r * std::sin(t)});
            circle.h_min = std::min(circle.h_min, value);
            circle.h_max = std::max(circle.h_max, value);
        }
        circle.pass = circle.h_min < hq - tol && circle.h_max > hq + tol;
        if (circle.h_max - circle.h_min > tol) any_variation = true;
        all_pass = all_pass && circle.pass;
        report.circles.push_back(circle);
    }
    report.applicable = any_variation;
    report.all_pass = report.applicable && all_pass;
    return report;
}

}  // namespace umb
