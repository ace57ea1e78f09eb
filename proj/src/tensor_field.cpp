#include "umbilic/tensor_field.hpp"

#include <cmath>

#include "umbilic/errors.hpp"

namespace umb {

RiemannianPatch RiemannianPatch::euclidean(Rect domain) {
    return {ast::num(1.0), ast::num(0.0), ast::num(1.0), domain};
}

RiemannianPatch RiemannianPatch::conformal(ExprPtr factor, Rect domain) {
    return {factor, ast::num(0.0), factor, domain};
}

void RiemannianPatch::check_at(const Vec2& p) const {
    const double m11 = eval_value(g11, p.x, p.y);
    const double m12 = eval_value(g12, p.x, p.y);
    const double m22 = eval_value(g22, p.x, p.y);
    if (!(m11 > 0.0) || !(m11 * m22 - m12 * m12 > 0.0))
        throw InvalidInputError("metric is not positive-definite at the evaluated point");
}

Vec2 RiemannianPatch::metric_gradient(const ExprPtr& g, const Vec2& p) const {
    check_at(p);
    const double m11 = eval_value(g11, p.x, p.y);
    const double m12 = eval_value(g12, p.x, p.y);
    const double m22 = eval_value(g22, p.x, p.y);
    const Dual2 gd = eval_dual2(g, p.x, p.y);
    const double det = m11 * m22 - m12 * m12;
    return {(m22 * gd.du - m12 * gd.dv) / det, (m11 * gd.dv - m12 * gd.du) / det};
}

SymTensor SymTensorField::eval(const Vec2& p) const {
    patch.check_at(p);
    return {eval_value(a11, p.x, p.y), eval_value(a12, p.x, p.y), eval_value(a22, p.x, p.y)};
}

TensorField SymTensorField::field() const {
    return [copy = *this](const Vec2& p) { return copy.eval(p); };
}

Vec2 traceless_part(const SymTensor& t) { return t.traceless(); }

PlaneField traceless_field(const TensorField& A) {
    return [A](const Vec2& p) { return A(p).traceless(); };
}

TensorField tensor_field_of_surface(const SurfaceSpec& spec) {
    return [spec](const Vec2& p) {
        const ShapeTensor s = surface_point(spec, p).shape;
        return SymTensor{s.s11, s.s12, s.s22};
    };
}

TestLineField TestLineField::constant(double direction_angle) {
    const Vec2 w{std::cos(2.0 * direction_angle), std::sin(2.0 * direction_angle)};
    return {[w](const Vec2&) { return w; }, "constant"};
}

TestLineField TestLineField::polar_power(int m, const Vec2& center) {
    return {[m, center](const Vec2& p) {
                const Vec2 d = p - center;
                const double phi = std::atan2(d.y, d.x);
                return Vec2{std::cos(m * phi), std::sin(m * phi)};
            },
            "polar(" + std::to_string(m) + ")"};
}

TestLineField TestLineField::eigenfield_of(const TensorField& A) {
    // The doubled-angle vector of the larger-eigenvalue direction is exactly
    // the traceless component pair.
    return {[A](const Vec2& p) { return A(p).traceless(); }, "eigenfield"};
}

TestLineField TestLineField::from_direction_exprs(const ExprPtr& dx, const ExprPtr& dy) {
    return {[dx, dy](const Vec2& p) {
                return angle_double(Vec2{eval_value(dx, p.x, p.y), eval_value(dy, p.x, p.y)});
            },
            "exprs"};
}

TestLineField apply_to_linefield(const PlaneField& traceless, const TestLineField& xi) {
    PlaneField doubled = [traceless, w = xi.doubled](const Vec2& p) {
        const Vec2 c = traceless(p);
        return cmul(cmul(c, c), conj(w(p)));
    };
    return {std::move(doubled), "B*" + xi.label};
}

TestLineField apply_full_tensor(const TensorField& A, const TestLineField& xi) {
    PlaneField doubled = [A, w = xi.doubled](const Vec2& p) {
        const Vec2 wd = w(p);
        const double half_angle = 0.5 * std::atan2(wd.y, wd.x);
        const Vec2 rep{std::cos(half_angle), std::sin(half_angle)};
        const SymTensor t = A(p);
        const Vec2 image{t.a11 * rep.x + t.a12 * rep.y, t.a12 * rep.x + t.a22 * rep.y};
        return angle_double(image);
    };
    return {std::move(doubled), "A*" + xi.label};
}

IndexFormulaReport verify_index_formula(const TensorField& A, const TestLineField& xi,
                                        const LoopSpec& loop) {
    IndexFormulaReport r;
    r.j_tensor = index_of_tensor(traceless_field(A), loop);
    r.j_xi = index_of_doubled_field(xi.doubled, loop);
    r.j_b_xi = index_of_doubled_field(apply_to_linefield(traceless_field(A), xi).doubled, loop);
    r.holds = (2 * r.j_tensor == r.j_b_xi + r.j_xi);
    return r;
}

HomotopyReport homotopy_invertibility(const TensorField& A, const LoopSpec& loop, int steps,
                                      const TestLineField& eta) {
    loop.validate();
    if (steps < 2) throw InvalidInputError("homotopy check needs at least 2 steps");

    HomotopyReport report;
    report.steps = steps;
    report.min_abs_entry = std::numeric_limits<double>::infinity();

    for (int i = 0; i < loop.samples; ++i) {
        const Vec2 p = loop.point_at(static_cast<double>(i) / loop.samples);
        const SymTensor t = A(p);
        const double lambda = t.lambda();
        const double mu = t.mu();
        if (!(lambda > 0.0) || !(mu < 0.0))
            throw InvalidInputError(
                "homotopy precondition violated: eigenvalues must straddle zero on the loop");
        for (int s = 0; s < steps; ++s) {
            const double tt = static_cast<double>(s) / (steps - 1);
            const double d1 = lambda * (1.0 - tt / 2.0) - mu * tt / 2.0;
            const double d2 = mu * (1.0 - tt / 2.0) - lambda * tt / 2.0;
            report.min_abs_entry =
                std::min({report.min_abs_entry, std::fabs(d1), std::fabs(d2)});
        }
    }

    report.j_a_eta = index_of_doubled_field(apply_full_tensor(A, eta).doubled, loop);
    report.j_b_eta =
        index_of_doubled_field(apply_to_linefield(traceless_field(A), eta).doubled, loop);
    report.corollary_holds = (report.j_a_eta == report.j_b_eta);
    return report;
}

}  // namespace umb
