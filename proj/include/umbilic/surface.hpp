#ifndef UMBILIC_SURFACE_HPP
#define UMBILIC_SURFACE_HPP

#include <string>
#include <vector>

#include "umbilic/expr.hpp"
#include "umbilic/vec.hpp"

namespace umb {

struct Rect {
    double u_min = -1.0, u_max = 1.0;
    double v_min = -1.0, v_max = 1.0;

    bool contains(const Vec2& p, double margin = 0.0) const {
        return p.x >= u_min - margin && p.x <= u_max + margin && p.y >= v_min - margin &&
               p.y <= v_max + margin;
    }
    double u_span() const { return u_max - u_min; }
    double v_span() const { return v_max - v_min; }
    // Distance from p to the rectangle boundary (positive inside).
    double boundary_distance(const Vec2& p) const;
    void validate() const;  // throws DomainError if degenerate
};

enum class SurfaceKind { Graph, Parametric, Builtin };

// A concrete immersion patch. Graph surfaces store f with X = (u, v, f(u,v));
// parametric surfaces store all three coordinate expressions. Builtin gallery
// entries keep their name for labeling but are materialized to one of the two
// storage forms on construction.
struct SurfaceSpec {
    SurfaceKind kind = SurfaceKind::Graph;
    std::string name = "graph";
    ExprPtr f;        // graph form
    ExprPtr x, y, z;  // parametric form
    Rect domain;

    bool is_graph() const { return f != nullptr; }
};

// Position and first/second partials of the immersion at a parameter point.
struct Jet2 {
    Vec3 pos, xu, xv, xuu, xuv, xvv;
};

SurfaceSpec make_graph(ExprPtr f, Rect domain, std::string name = "graph");
SurfaceSpec make_parametric(ExprPtr x, ExprPtr y, ExprPtr z, Rect domain,
                            std::string name = "parametric");

// Evaluates the full second-order jet by forward AD. Throws DomainError when
// p leaves the declared rectangle and EvalError on non-finite intermediates.
Jet2 eval_jet2(const SurfaceSpec& spec, const Vec2& p);

// Gallery of built-in surfaces. Names: paraboloid, saddle, monkey_saddle,
// re_zk (params = {k}, k >= 2), sphere_patch (params = {radius}, default 1),
// plane, catenoid.
SurfaceSpec builtin(const std::string& name, const std::vector<double>& params = {});

// p -> center + radius^2 (p - center)/|p - center|^2, composed symbolically so
// jets of the image surface are still exact. Rejects surfaces that meet the
// inversion center inside the domain (checked on a sample grid).
SurfaceSpec sphere_inversion(const SurfaceSpec& spec, const Vec3& center, double radius);

// Reads the key/value surface definition format:
//   [surface] kind/f/x/y/z/name/params, [domain] u = [min, max], v = [min, max]
SurfaceSpec parse_surface_file(const std::string& text);
SurfaceSpec load_surface_file(const std::string& path);

}  // namespace umb

#endif
