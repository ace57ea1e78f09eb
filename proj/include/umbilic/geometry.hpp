#ifndef UMBILIC_GEOMETRY_HPP
#define UMBILIC_GEOMETRY_HPP

#include <vector>

#include "umbilic/surface.hpp"
#include "umbilic/vec.hpp"

namespace umb {

// Continuous orthonormal frame: e1 along X_u, e2 its Gram-Schmidt complement,
// normal = (X_u x X_v)/|X_u x X_v|. (e1, e2, normal) is positively oriented.
struct FrameData {
    Vec3 e1, e2, normal;
};

struct FundamentalForms {
    double E, F, G;  // first form
    double L, M, N;  // second form against the unit normal
};

// Matrix of the shape operator in the orthonormal frame (symmetric there).
// Convention: the graph paraboloid z = (u^2+v^2)/2 has s11 = s22 = +1 at the
// origin with the upward normal.
struct ShapeTensor {
    double s11, s12, s22;

    double mean() const { return 0.5 * (s11 + s22); }
    double gauss() const { return s11 * s22 - s12 * s12; }
    double traceless_norm() const { return std::hypot(0.5 * (s11 - s22), s12); }
    double lambda() const { return mean() + traceless_norm(); }  // larger curvature
    double mu() const { return mean() - traceless_norm(); }
};

// (a, b) with B = A - (tr A / 2) I = [[a, b], [b, -a]] in the frame.
// |(a,b)| = (lambda - mu)/2 vanishes exactly at umbilics.
struct TracelessComponents {
    double a, b;
    double magnitude() const { return std::hypot(a, b); }
};

struct SurfacePoint {
    Jet2 jet;
    FrameData frame;
    FundamentalForms forms;
    ShapeTensor shape;
    TracelessComponents traceless;
};

FrameData frame_at(const Jet2& jet);  // throws RankError on EG - F^2 <= eps

SurfacePoint shape_operator(const Jet2& jet);

// Jet evaluation plus the full frame/shape decomposition at p.
SurfacePoint surface_point(const SurfaceSpec& spec, const Vec2& p);

struct UmbilicHit {
    Vec2 location;
    double residual;          // |(a,b)| at the refined location
    double isolation_radius;  // largest tested circle radius clear of umbilics
};

// Grid scan for zeros of the traceless shape components, refined by shrinking
// grids to parameter accuracy 1e-8. grid_n is the number of samples per side
// (>= 16). Throws NonIsolatedUmbilicError when a whole grid cell sits below
// the umbilic threshold (sphere-like locus).
std::vector<UmbilicHit> umbilic_scan(const SurfaceSpec& spec, int grid_n);

}  // namespace umb

#endif
