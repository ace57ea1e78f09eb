#ifndef UMBILIC_HEIGHT_HPP
#define UMBILIC_HEIGHT_HPP

#include <vector>

#include "umbilic/geometry.hpp"
#include "umbilic/tensor_field.hpp"
#include "umbilic/winding.hpp"

namespace umb {

// A height direction a with 0 < <a, normal(q)> < 1 at the base point. The
// bound is re-checked at every evaluation point; leaving it means the loop
// or domain must shrink.
struct HeightData {
    Vec3 a;
    Vec2 q;
};

// Default admissible direction: the normal at q tilted by tilt_degrees
// toward the coordinate axis least aligned with it (or toward the given
// axis 0/1/2), then renormalized.
HeightData make_height_data(const SurfaceSpec& spec, const Vec2& q, double tilt_degrees = 30.0,
                            int axis = -1);

// Explicit direction; validates the bound at q.
HeightData make_height_data_from(const SurfaceSpec& spec, const Vec2& q, const Vec3& a);

// <a, normal(p)>, enforcing 0 < c < 1.
double height_cos(const SurfaceSpec& spec, const HeightData& hd, const Vec2& p);

struct TangentSample {
    Vec2 frame;    // components in the orthonormal frame (e1, e2)
    Vec3 ambient;  // the same vector in R^3
};

// Intrinsic gradient of the height function f(x) = <x, a>: the tangential
// projection a - <a, normal> normal.
TangentSample grad_f(const SurfaceSpec& spec, const HeightData& hd, const Vec2& p);

// Gradient of h = |grad f|^2 / 2, computed as c(p) A(p) grad f(p).
TangentSample grad_h(const SurfaceSpec& spec, const HeightData& hd, const Vec2& p);

// h(p) = (1 - c(p)^2)/2 = |grad f(p)|^2 / 2.
double h_value(const SurfaceSpec& spec, const HeightData& hd, const Vec2& p);

struct ThirdIndexReport {
    HalfIndex j_tensor;   // j(A)
    HalfIndex j_grad_h;
    HalfIndex j_grad_f;
    bool holds = false;   // 2 j(A) == j(grad h) + j(grad f), exact
};

// The index identity that expresses the umbilic's index through two gradient
// windings along the same loop.
ThirdIndexReport verify_third_index(const SurfaceSpec& spec, const HeightData& hd,
                                    const LoopSpec& loop);

enum class ExtremumClass { Minimum, Maximum, None, Degenerate };

struct CriticalPointReport {
    HalfIndex index;
    ExtremumClass extremum = ExtremumClass::Degenerate;
    bool consistent = false;  // index <= 1 and (index == 1 iff extremum)
};

// Gradient-index bound check for a function with an isolated critical point:
// winding of the metric gradient around p0, plus a circle-sampling
// classification of the critical point.
CriticalPointReport gradient_index_check(const ExprPtr& g, const RiemannianPatch& patch,
                                         const Vec2& p0, const LoopSpec& loop);

struct ProbeCircle {
    double radius;
    double h_min, h_max, h_center;
    bool pass;  // h_min < h(q) < h_max strictly beyond tolerance
};

struct ProbeReport {
    std::vector<ProbeCircle> circles;
    bool applicable = false;  // false when h is flat (plane-like)
    bool all_pass = false;
};

// Samples h on circles around q and checks that q is neither a local
// maximum nor a local minimum of h.
ProbeReport extremum_probe(const SurfaceSpec& spec, const HeightData& hd,
                           const std::vector<double>& radii);

}  // namespace umb

#endif
