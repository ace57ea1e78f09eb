#ifndef UMBILIC_TENSOR_FIELD_HPP
#define UMBILIC_TENSOR_FIELD_HPP

#include <functional>
#include <string>

#include "umbilic/expr.hpp"
#include "umbilic/geometry.hpp"
#include "umbilic/surface.hpp"
#include "umbilic/winding.hpp"

namespace umb {

// Pointwise value of a symmetric (1,1) tensor in an orthonormal frame.
struct SymTensor {
    double a11, a12, a22;

    double mean() const { return 0.5 * (a11 + a22); }
    Vec2 traceless() const { return {0.5 * (a11 - a22), a12}; }
    double lambda() const { return mean() + traceless().norm(); }
    double mu() const { return mean() - traceless().norm(); }
};

using TensorField = std::function<SymTensor(const Vec2&)>;

// Metric coefficients over a rectangle. Tensor components are stored in the
// pointwise-orthonormalized frame, so the metric's role here is validity
// checking and the gradient raising used by the critical-point checks.
struct RiemannianPatch {
    ExprPtr g11, g12, g22;
    Rect domain;

    static RiemannianPatch euclidean(Rect domain = Rect{});
    static RiemannianPatch conformal(ExprPtr factor, Rect domain = Rect{});

    // Throws InvalidInputError unless the metric is positive-definite at p.
    void check_at(const Vec2& p) const;

    // Metric gradient of g at p: G^{-1} (dg/du, dg/dv) in coordinates.
    Vec2 metric_gradient(const ExprPtr& g, const Vec2& p) const;
};

// Expression-backed symmetric tensor field with one marked singular point.
struct SymTensorField {
    ExprPtr a11, a12, a22;
    Vec2 singular_point;
    RiemannianPatch patch;

    SymTensor eval(const Vec2& p) const;
    TensorField field() const;
};

Vec2 traceless_part(const SymTensor& t);
PlaneField traceless_field(const TensorField& A);
TensorField tensor_field_of_surface(const SurfaceSpec& spec);

// Test line field stored by its doubled-angle vector, which removes the
// mod-pi branch ambiguity from every downstream computation.
struct TestLineField {
    PlaneField doubled;
    std::string label;

    static TestLineField constant(double direction_angle);
    static TestLineField polar_power(int m, const Vec2& center);
    static TestLineField eigenfield_of(const TensorField& A);
    static TestLineField from_direction_exprs(const ExprPtr& dx, const ExprPtr& dy);
};

// B applied to a line field via the rotation identity: if (a,b) has angle
// 2*theta and xi has direction angle phi, B*xi has direction angle
// 2*theta - phi. Evaluated in closed form to keep the doubled angle
// continuous; the matrix-product route exists separately for cross-checks.
TestLineField apply_to_linefield(const PlaneField& traceless, const TestLineField& xi);

// Full tensor applied to a line field by matrix product on a local
// representative direction, re-doubled afterwards (sign-independent).
TestLineField apply_full_tensor(const TensorField& A, const TestLineField& xi);

struct IndexFormulaReport {
    HalfIndex j_tensor;      // j(A)
    HalfIndex j_b_xi;        // j(B xi)
    HalfIndex j_xi;          // j(xi)
    bool holds = false;      // 2 j(A) == j(B xi) + j(xi), exact
};

IndexFormulaReport verify_index_formula(const TensorField& A, const TestLineField& xi,
                                        const LoopSpec& loop);

struct HomotopyReport {
    int steps;
    double min_abs_entry;    // smallest |diagonal entry| over loop x homotopy grid
    HalfIndex j_a_eta;       // j(A eta)
    HalfIndex j_b_eta;       // j(B eta)
    bool corollary_holds = false;
};

// Checks that A - (t/2)(tr A) I stays invertible for t in [0,1] along the
// loop (requires lambda > 0 > mu there) and that consequently
// j(A eta) == j(B eta) for the supplied test field.
HomotopyReport homotopy_invertibility(const TensorField& A, const LoopSpec& loop, int steps,
                                      const TestLineField& eta);

}  // namespace umb

#endif
