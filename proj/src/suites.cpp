#include "umbilic/suites.hpp"

#include <cmath>

#include "umbilic/util.hpp"

namespace umb::suites {

namespace {

std::vector<SurfaceSpec> tensor_gallery() {
    std::vector<SurfaceSpec> out;
    out.push_back(builtin("monkey_saddle"));
    for (int k = 3; k <= 8; ++k) out.push_back(builtin("re_zk", {static_cast<double>(k)}));
    out.push_back(builtin("saddle"));
    out.push_back(builtin("paraboloid"));
    out.push_back(builtin("catenoid"));
    return out;
}

std::vector<TestLineField> standard_test_fields(const TensorField& A, const Vec2& center) {
    std::vector<TestLineField> fields;
    fields.push_back(TestLineField::constant(0.0));
    for (int m : {-2, -1, 1, 2}) fields.push_back(TestLineField::polar_power(m, center));
    fields.push_back(TestLineField::eigenfield_of(A));
    return fields;
}

// Random abstract tensor with an isolated singularity of known index m/2 at
// the origin: traceless part e^{i beta} z^m (or conj for m < 0) plus a random
// affine trace.
TensorField random_tensor(Rng& rng, int& m_out) {
    int m = static_cast<int>(rng.uniform_int(1, 3));
    if (rng.uniform(0.0, 1.0) < 0.5) m = -m;
    m_out = m;
    const double beta = rng.uniform(0.0, 2.0 * M_PI);
    const double t0 = rng.uniform(-1.0, 1.0);
    const double t1 = rng.uniform(-0.5, 0.5);
    const double t2 = rng.uniform(-0.5, 0.5);
    const Vec2 rot{std::cos(beta), std::sin(beta)};
    return [m, rot, t0, t1, t2](const Vec2& p) {
        Vec2 zm{1.0, 0.0};
        const Vec2 z = m > 0 ? p : conj(p);
        for (int i = 0; i < std::abs(m); ++i) zm = cmul(zm, z);
        const Vec2 ab = cmul(rot, zm);
        const double half_trace = 0.5 * (t0 + t1 * p.x + t2 * p.y);
        return SymTensor{half_trace + ab.x, ab.y, half_trace - ab.x};
    };
}

SurfaceSpec negatively_curved(int k) {
    return k == 0 ? builtin("monkey_saddle") : builtin("re_zk", {static_cast<double>(k)});
}

}  // namespace

std::vector<IndexFormulaCase> index_formula_suite(std::uint64_t seed) {
    std::vector<IndexFormulaCase> cases;

    for (const SurfaceSpec& spec : tensor_gallery()) {
        const TensorField A = tensor_field_of_surface(spec);
        const Vec2 center{0.0, 0.0};
        for (const TestLineField& xi : standard_test_fields(A, center)) {
            for (double radius : {0.1, 0.3}) {
                LoopSpec loop{center, radius, 256, 1};
                IndexFormulaCase c;
                c.id = spec.name + "/" + xi.label + "/r=" + format_double(radius);
                c.report = verify_index_formula(A, xi, loop);
                cases.push_back(std::move(c));
            }
        }
    }

    // Expression-backed tensors on non-Euclidean patches.
    {
        RiemannianPatch conformal =
            RiemannianPatch::conformal(parse_expression("1 + u^2 + v^2"));
        RiemannianPatch diagonal{parse_expression("1 + u^2"), ast::num(0.0),
                                 parse_expression("1 + v^2"), Rect{}};
        const SymTensorField vortex{parse_expression("1 + u"), parse_expression("v"),
                                    parse_expression("1 - u"), Vec2{0.0, 0.0}, conformal};
        const SymTensorField antivortex{parse_expression("u"), parse_expression("-v"),
                                        parse_expression("-u"), Vec2{0.0, 0.0}, diagonal};
        int n = 0;
        for (const SymTensorField* tf : {&vortex, &antivortex}) {
            const TensorField A = tf->field();
            for (const TestLineField& xi : standard_test_fields(A, tf->singular_point)) {
                LoopSpec loop{tf->singular_point, 0.2, 256, 1};
                IndexFormulaCase c;
                c.id = std::string("patch_tensor#") + std::to_string(n) + "/" + xi.label;
                c.report = verify_index_formula(A, xi, loop);
                cases.push_back(std::move(c));
            }
            ++n;
        }
    }

    Rng rng(seed);
    for (int i = 0; i < 12; ++i) {
        int m = 0;
        const TensorField A = random_tensor(rng, m);
        const Vec2 center{0.0, 0.0};
        const double radius = rng.uniform(0.15, 0.45);
        std::vector<TestLineField> fields{
            TestLineField::constant(rng.uniform(0.0, M_PI)),
            TestLineField::polar_power(static_cast<int>(rng.uniform_int(-2, 2)), center),
            TestLineField::eigenfield_of(A)};
        int fi = 0;
        for (const TestLineField& xi : fields) {
            LoopSpec loop{center, radius, 256, 1};
            IndexFormulaCase c;
            c.id = "random#" + std::to_string(i) + "." + std::to_string(fi++) + "/" + xi.label;
            c.report = verify_index_formula(A, xi, loop);
            cases.push_back(std::move(c));
        }
    }

    return cases;
}

std::vector<HeightCase> height_suite() {
    std::vector<HeightCase> cases;
    const std::vector<double> probe_radii{0.05, 0.1, 0.2};

    for (int k : {0, 3, 4, 5, 6, 7, 8}) {
        const SurfaceSpec spec = negatively_curved(k);
        const Vec2 q{0.0, 0.0};
        const HeightData hds[3] = {make_height_data(spec, q, 30.0, 0),
                                   make_height_data(spec, q, 30.0, 1),
                                   make_height_data(spec, q, 20.0, 0)};
        for (const HeightData& hd : hds) {
            HeightCase c;
            c.surface = spec.name;
            c.a = hd.a;
            c.radius = 0.25;
            c.eq8 = verify_third_index(spec, hd, LoopSpec{q, c.radius, 256, 1});
            const ProbeReport probe = extremum_probe(spec, hd, probe_radii);
            c.probe_applicable = probe.applicable;
            c.probe_pass = probe.all_pass;
            cases.push_back(std::move(c));
        }
    }
    return cases;
}

std::vector<GradientBoundCase> gradient_bound_suite() {
    struct Entry {
        const char* id;
        const char* expr;
        long long expected_twice;
        int metric;  // 0 euclidean, 1 conformal, 2 diagonal, 3 skew
    };
    // Indices are frozen from the high-resolution winding oracle; the
    // extremum classification is recomputed every run.
    const Entry entries[] = {
        {"bowl", "u^2 + v^2", 2, 0},
        {"cap", "-(u^2 + v^2)", 2, 0},
        {"saddle", "u^2 - v^2", -2, 0},
        {"elliptic_bowl", "u^2 + 2*v^2", 2, 0},
        {"bilinear_saddle", "u*v", -2, 0},
        {"re_z3", "u^3 - 3*u*v^2", -4, 0},
        {"re_z4", "u^4 - 6*u^2*v^2 + v^4", -6, 0},
        {"re_z5", "u^5 - 10*u^3*v^2 + 5*u*v^4", -8, 0},
        {"re_z6", "u^6 - 15*u^4*v^2 + 15*u^2*v^4 - v^6", -10, 0},
        {"im_z3", "3*u^2*v - v^3", -4, 0},
        {"quartic_bowl", "u^4 + v^4", 2, 0},
        {"quartic_cap", "-(u^4 + v^4)", 2, 0},
        {"quartic_saddle", "u^4 - v^4", -2, 0},
        {"flat_bowl", "(u^2 + v^2)^2", 2, 0},
        {"perturbed_monkey", "u^3 - 3*u*v^2 + (u^2 + v^2)^2", -4, 0},
        {"trig_saddle", "sin(u)*sin(v)", -2, 0},
        {"trig_cap", "cos(u) + cos(v)", 2, 0},
        {"aniso_bowl", "u^2 + v^4", 2, 0},
        {"conformal_bowl", "u^2 + v^2", 2, 1},
        {"conformal_saddle", "u^2 - v^2", -2, 1},
        {"diagonal_bowl", "u^2 + v^2", 2, 2},
        {"skew_saddle", "u^2 - v^2", -2, 3},
    };

    const RiemannianPatch metrics[4] = {
        RiemannianPatch::euclidean(),
        RiemannianPatch::conformal(parse_expression("exp(u + v)")),
        {parse_expression("1 + u^2"), ast::num(0.0), parse_expression("1 + v^2"), Rect{}},
        {parse_expression("2"), parse_expression("0.5"), parse_expression("1"), Rect{}},
    };

    std::vector<GradientBoundCase> cases;
    for (const Entry& e : entries) {
        GradientBoundCase c;
        c.id = e.id;
        c.expected_twice = e.expected_twice;
        c.report = gradient_index_check(parse_expression(e.expr), metrics[e.metric],
                                        Vec2{0.0, 0.0}, LoopSpec{{0.0, 0.0}, 0.15, 256, 1});
        cases.push_back(std::move(c));
    }
    return cases;
}

std::vector<HomotopyCase> homotopy_suite(std::uint64_t seed) {
    std::vector<HomotopyCase> cases;

    std::vector<std::pair<std::string, TensorField>> tensors;
    for (const char* name : {"saddle", "monkey_saddle", "catenoid"}) {
        const SurfaceSpec spec = builtin(name);
        tensors.emplace_back(spec.name, tensor_field_of_surface(spec));
    }
    for (int k : {4, 6}) {
        const SurfaceSpec spec = builtin("re_zk", {static_cast<double>(k)});
        tensors.emplace_back(spec.name, tensor_field_of_surface(spec));
    }

    Rng rng(seed);
    for (int i = 0; i < 3; ++i) {
        const double s1 = rng.uniform(0.1, 0.3), s2 = rng.uniform(0.1, 0.3);
        const double g1 = rng.uniform(-1.0, 1.0), g2 = rng.uniform(-1.0, 1.0);
        TensorField A = [s1, s2, g1, g2](const Vec2& p) {
            const double lambda = 1.0 + s1 * std::sin(p.x + 2.0 * p.y);
            const double mu = -0.7 - s2 * std::cos(p.x - p.y);
            const double psi = g1 * p.x + g2 * p.y;
            const double c = std::cos(psi), s = std::sin(psi);
            // R(psi) diag(lambda, mu) R(psi)^T
            return SymTensor{lambda * c * c + mu * s * s, (lambda - mu) * c * s,
                             lambda * s * s + mu * c * c};
        };
        tensors.emplace_back("random_indefinite#" + std::to_string(i), std::move(A));
    }

    for (const auto& [name, A] : tensors) {
        const Vec2 center{0.0, 0.0};
        const std::vector<TestLineField> etas{TestLineField::constant(0.3),
                                              TestLineField::polar_power(1, center),
                                              TestLineField::polar_power(-2, center)};
        for (const TestLineField& eta : etas) {
            HomotopyCase c;
            c.id = name + "/" + eta.label;
            c.report = homotopy_invertibility(A, LoopSpec{center, 0.3, 256, 1}, 21, eta);
            cases.push_back(std::move(c));
        }
    }
    return cases;
}

SharpnessResult sharpness_suite() {
    SharpnessResult result;

    auto add = [&result](const SurfaceSpec& spec, long long expected_twice) {
        const PlaneField field = traceless_field(tensor_field_of_surface(spec));
        const auto [index, n] =
            refine_until_stable(field, LoopSpec{{0.0, 0.0}, 0.3, 256, 1}, FieldKind::Tensor);
        (void)n;
        result.entries.push_back({spec.name, index, HalfIndex::halves(expected_twice)});
    };

    add(builtin("saddle"), 0);
    for (int k = 3; k <= 8; ++k)
        add(builtin("re_zk", {static_cast<double>(k)}), 2 - k);

    result.all_match = true;
    for (const SharpnessEntry& e : result.entries)
        result.all_match = result.all_match && e.index == e.expected;

    result.full_set = true;
    for (long long target : {0, -1, -2, -3, -4, -5, -6}) {
        bool found = false;
        for (const SharpnessEntry& e : result.entries) found = found || e.index.twice == target;
        result.full_set = result.full_set && found;
    }
    return result;
}

}  // namespace umb::suites
