#include "umbilic/surface.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "umbilic/errors.hpp"

namespace umb {

namespace {

// Non-negative literals only; negatives go through Neg so every generated
// tree re-parses to an equal tree.
ExprPtr const_expr(double c) {
    return c < 0.0 ? ast::neg(ast::num(-c)) : ast::num(c);
}

ExprPtr sub_const(ExprPtr e, double c) {
    if (c == 0.0) return e;
    return ast::sub(std::move(e), const_expr(c));
}

ExprPtr add_const(double c, ExprPtr e) {
    if (c == 0.0) return e;
    return ast::add(const_expr(c), std::move(e));
}

Vec3 jet_entry(const Dual2& x, const Dual2& y, const Dual2& z, int which) {
    switch (which) {
        case 0: return {x.v, y.v, z.v};
        case 1: return {x.du, y.du, z.du};
        case 2: return {x.dv, y.dv, z.dv};
        case 3: return {x.duu, y.duu, z.duu};
        case 4: return {x.duv, y.duv, z.duv};
        default: return {x.dvv, y.dvv, z.dvv};
    }
}

bool all_finite(const Jet2& j) {
    const Vec3* vs[] = {&j.pos, &j.xu, &j.xv, &j.xuu, &j.xuv, &j.xvv};
    for (const Vec3* v : vs)
        if (!std::isfinite(v->x) || !std::isfinite(v->y) || !std::isfinite(v->z)) return false;
    return true;
}

long long binomial(int n, int k) {
    long long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// Re((u+iv)^k) expanded to a polynomial expression string.
std::string re_zk_source(int k) {
    std::string out;
    for (int j = 0; j <= k; j += 2) {
        const long long coef = binomial(k, j);
        const bool negative = (j / 2) % 2 == 1;
        if (j == 0)
            out += "";
        else
            out += negative ? " - " : " + ";

        std::vector<std::string> factors;
        if (coef != 1) factors.push_back(std::to_string(coef));
        const int pu = k - j;
        if (pu == 1) factors.push_back("u");
        else if (pu > 1) factors.push_back("u^" + std::to_string(pu));
        if (j == 1) factors.push_back("v");
        else if (j > 1) factors.push_back("v^" + std::to_string(j));

        std::string term;
        for (std::size_t i = 0; i < factors.size(); ++i) {
            if (i) term += "*";
            term += factors[i];
        }
        out += term.empty() ? "1" : term;
    }
    return out;
}

void require_no_params(const std::string& name, const std::vector<double>& params) {
    if (!params.empty())
        throw InvalidInputError("builtin '" + name + "' takes no parameters");
}

std::string format_param(double x) {
    std::ostringstream os;
    os << x;
    return os.str();
}

}  // namespace

double Rect::boundary_distance(const Vec2& p) const {
    return std::min(std::min(p.x - u_min, u_max - p.x), std::min(p.y - v_min, v_max - p.y));
}

void Rect::validate() const {
    if (!(u_min < u_max) || !(v_min < v_max))
        throw DomainError("degenerate parameter domain");
}

SurfaceSpec make_graph(ExprPtr f, Rect domain, std::string name) {
    domain.validate();
    SurfaceSpec s;
    s.kind = SurfaceKind::Graph;
    s.name = std::move(name);
    s.f = std::move(f);
    s.domain = domain;
    return s;
}

SurfaceSpec make_parametric(ExprPtr x, ExprPtr y, ExprPtr z, Rect domain, std::string name) {
    domain.validate();
    SurfaceSpec s;
    s.kind = SurfaceKind::Parametric;
    s.name = std::move(name);
    s.x = std::move(x);
    s.y = std::move(y);
    s.z = std::move(z);
    s.domain = domain;
    return s;
}

Jet2 eval_jet2(const SurfaceSpec& spec, const Vec2& p) {
    if (!spec.domain.contains(p, 1e-9))
        throw DomainError("parameter point outside the declared domain");

    Jet2 jet;
    if (spec.is_graph()) {
        const Dual2 f = eval_dual2(spec.f, p.x, p.y);
        jet.pos = {p.x, p.y, f.v};
        jet.xu = {1.0, 0.0, f.du};
        jet.xv = {0.0, 1.0, f.dv};
        jet.xuu = {0.0, 0.0, f.duu};
        jet.xuv = {0.0, 0.0, f.duv};
        jet.xvv = {0.0, 0.0, f.dvv};
    } else {
        const Dual2 x = eval_dual2(spec.x, p.x, p.y);
        const Dual2 y = eval_dual2(spec.y, p.x, p.y);
        const Dual2 z = eval_dual2(spec.z, p.x, p.y);
        jet.pos = jet_entry(x, y, z, 0);
        jet.xu = jet_entry(x, y, z, 1);
        jet.xv = jet_entry(x, y, z, 2);
        jet.xuu = jet_entry(x, y, z, 3);
        jet.xuv = jet_entry(x, y, z, 4);
        jet.xvv = jet_entry(x, y, z, 5);
    }
    if (!all_finite(jet)) throw EvalError("non-finite jet entry");
    return jet;
}

SurfaceSpec builtin(const std::string& name, const std::vector<double>& params) {
    const Rect square{-1.0, 1.0, -1.0, 1.0};

    auto as_builtin = [](SurfaceSpec s) {
        s.kind = SurfaceKind::Builtin;
        return s;
    };

    if (name == "paraboloid") {
        require_no_params(name, params);
        return as_builtin(make_graph(parse_expression("(u^2 + v^2)/2"), square, "paraboloid"));
    }
    if (name == "saddle") {
        require_no_params(name, params);
        return as_builtin(make_graph(parse_expression("u^2 - v^2"), square, "saddle"));
    }
    if (name == "plane") {
        require_no_params(name, params);
        return as_builtin(make_graph(parse_expression("0"), square, "plane"));
    }
    if (name == "monkey_saddle") {
        require_no_params(name, params);
        return as_builtin(
            make_graph(parse_expression(re_zk_source(3)), square, "monkey_saddle"));
    }
    if (name == "re_zk") {
        if (params.size() != 1)
            throw InvalidInputError("re_zk needs exactly one parameter k");
        const double kd = params[0];
        if (kd != std::nearbyint(kd) || kd < 2.0 || kd > 32.0)
            throw InvalidInputError("re_zk parameter must be an integer k with 2 <= k <= 32");
        const int k = static_cast<int>(kd);
        return as_builtin(make_graph(parse_expression(re_zk_source(k)), square,
                                     "re_zk(" + std::to_string(k) + ")"));
    }
    if (name == "sphere_patch") {
        if (params.size() > 1)
            throw InvalidInputError("sphere_patch takes at most one parameter (radius)");
        const double rho = params.empty() ? 1.0 : params[0];
        if (!(rho > 0.0)) throw InvalidInputError("sphere_patch radius must be positive");
        const ExprPtr r = ast::num(rho);
        ExprPtr x = ast::mul(r, ast::mul(ast::cos(ast::var_v()), ast::cos(ast::var_u())));
        ExprPtr y = ast::mul(r, ast::mul(ast::cos(ast::var_v()), ast::sin(ast::var_u())));
        ExprPtr z = ast::mul(r, ast::sin(ast::var_v()));
        SurfaceSpec s = make_parametric(std::move(x), std::move(y), std::move(z),
                                        Rect{-0.7, 0.7, -0.7, 0.7},
                                        "sphere_patch(" + format_param(rho) + ")");
        s.kind = SurfaceKind::Builtin;
        return s;
    }
    if (name == "catenoid") {
        require_no_params(name, params);
        const std::string cosh_v = "((exp(v) + exp(-v))/2)";
        SurfaceSpec s = make_parametric(parse_expression(cosh_v + "*cos(u)"),
                                        parse_expression(cosh_v + "*sin(u)"),
                                        parse_expression("v"), Rect{-3.0, 3.0, -1.0, 1.0},
                                        "catenoid");
        s.kind = SurfaceKind::Builtin;
        return s;
    }
    throw InvalidInputError(
        "unknown builtin surface '" + name +
        "' (expected paraboloid, saddle, monkey_saddle, re_zk, sphere_patch, plane, catenoid)");
}

SurfaceSpec sphere_inversion(const SurfaceSpec& spec, const Vec3& center, double radius) {
    if (!(radius > 0.0)) throw InvalidInputError("inversion radius must be positive");

    // Coordinate expressions of the source immersion.
    ExprPtr sx, sy, sz;
    if (spec.is_graph()) {
        sx = ast::var_u();
        sy = ast::var_v();
        sz = spec.f;
    } else {
        sx = spec.x;
        sy = spec.y;
        sz = spec.z;
    }

    const ExprPtr dx = sub_const(sx, center.x);
    const ExprPtr dy = sub_const(sy, center.y);
    const ExprPtr dz = sub_const(sz, center.z);
    const ExprPtr den = ast::add(ast::add(ast::mul(dx, dx), ast::mul(dy, dy)), ast::mul(dz, dz));
    const ExprPtr scale = ast::div(ast::num(radius * radius), den);

    // The image surface must not be evaluated where the source meets the
    // center; probe the squared distance on a sample grid first.
    constexpr int kProbe = 33;
    const double tol = 1e-9 * (1.0 + radius * radius);
    for (int i = 0; i < kProbe; ++i) {
        for (int j = 0; j < kProbe; ++j) {
            const Vec2 p{spec.domain.u_min + spec.domain.u_span() * i / (kProbe - 1),
                         spec.domain.v_min + spec.domain.v_span() * j / (kProbe - 1)};
            const Jet2 jet = eval_jet2(spec, p);
            const Vec3 d = jet.pos - center;
            if (d.dot(d) < tol)
                throw InvalidInputError("surface meets the inversion center inside the domain");
        }
    }

    SurfaceSpec out = make_parametric(add_const(center.x, ast::mul(scale, dx)),
                                      add_const(center.y, ast::mul(scale, dy)),
                                      add_const(center.z, ast::mul(scale, dz)), spec.domain,
                                      "inv(" + spec.name + ")");
    return out;
}

// ------------------------------------------------------- file format

namespace {

struct FileValue {
    enum class Kind { String, Numbers } kind;
    std::string text;
    std::vector<double> numbers;
};

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

FileValue parse_value(const std::string& raw, int line_no) {
    const std::string v = trim(raw);
    if (v.empty())
        throw InvalidInputError("surface file line " + std::to_string(line_no) + ": empty value");
    if (v.front() == '"') {
        if (v.size() < 2 || v.back() != '"')
            throw InvalidInputError("surface file line " + std::to_string(line_no) +
                                    ": unterminated string");
        return {FileValue::Kind::String, v.substr(1, v.size() - 2), {}};
    }
    if (v.front() == '[') {
        if (v.back() != ']')
            throw InvalidInputError("surface file line " + std::to_string(line_no) +
                                    ": unterminated list");
        FileValue out{FileValue::Kind::Numbers, "", {}};
        std::stringstream ss(v.substr(1, v.size() - 2));
        std::string item;
        while (std::getline(ss, item, ',')) {
            item = trim(item);
            if (item.empty()) continue;
            try {
                std::size_t used = 0;
                out.numbers.push_back(std::stod(item, &used));
                if (used != item.size()) throw std::invalid_argument(item);
            } catch (const std::exception&) {
                throw InvalidInputError("surface file line " + std::to_string(line_no) +
                                        ": bad number '" + item + "'");
            }
        }
        return out;
    }
    try {
        std::size_t used = 0;
        const double d = std::stod(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return {FileValue::Kind::Numbers, "", {d}};
    } catch (const std::exception&) {
        throw InvalidInputError("surface file line " + std::to_string(line_no) +
                                ": unrecognized value '" + v + "'");
    }
}

}  // namespace

SurfaceSpec parse_surface_file(const std::string& text) {
    std::map<std::string, FileValue> surface_keys;
    std::map<std::string, FileValue> domain_keys;

    std::istringstream in(text);
    std::string line;
    std::string section;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw InvalidInputError("surface file line " + std::to_string(line_no) +
                                        ": unterminated section header");
            section = trim(line.substr(1, line.size() - 2));
            if (section != "surface" && section != "domain")
                throw InvalidInputError("surface file line " + std::to_string(line_no) +
                                        ": unknown section [" + section + "]");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw InvalidInputError("surface file line " + std::to_string(line_no) +
                                    ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const FileValue value = parse_value(line.substr(eq + 1), line_no);
        if (section == "surface")
            surface_keys.emplace(key, value);
        else if (section == "domain")
            domain_keys.emplace(key, value);
        else
            throw InvalidInputError("surface file line " + std::to_string(line_no) +
                                    ": key outside any section");
    }

    auto get_string = [&](const std::string& key) -> std::string {
        auto it = surface_keys.find(key);
        if (it == surface_keys.end() || it->second.kind != FileValue::Kind::String)
            throw InvalidInputError("surface file: missing string key '" + key +
                                    "' in [surface]");
        return it->second.text;
    };

    Rect domain;
    bool have_domain = false;
    if (!domain_keys.empty()) {
        auto get_range = [&](const std::string& key, double& lo, double& hi) {
            auto it = domain_keys.find(key);
            if (it == domain_keys.end() || it->second.numbers.size() != 2)
                throw InvalidInputError("surface file: [domain] needs " + key + " = [min, max]");
            lo = it->second.numbers[0];
            hi = it->second.numbers[1];
        };
        get_range("u", domain.u_min, domain.u_max);
        get_range("v", domain.v_min, domain.v_max);
        domain.validate();
        have_domain = true;
    }

    const std::string kind = get_string("kind");
    if (kind == "graph") {
        if (!have_domain) throw InvalidInputError("surface file: graph surfaces need a [domain]");
        return make_graph(parse_expression(get_string("f")), domain);
    }
    if (kind == "parametric") {
        if (!have_domain)
            throw InvalidInputError("surface file: parametric surfaces need a [domain]");
        return make_parametric(parse_expression(get_string("x")),
                               parse_expression(get_string("y")),
                               parse_expression(get_string("z")), domain);
    }
    if (kind == "builtin") {
        std::vector<double> params;
        if (auto it = surface_keys.find("params"); it != surface_keys.end()) {
            if (it->second.kind != FileValue::Kind::Numbers)
                throw InvalidInputError("surface file: params must be a numeric list");
            params = it->second.numbers;
        }
        SurfaceSpec s = builtin(get_string("name"), params);
        if (have_domain) s.domain = domain;
        return s;
    }
    throw InvalidInputError("surface file: kind must be \"graph\", \"parametric\" or \"builtin\"");
}

SurfaceSpec load_surface_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInputError("cannot open surface file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_surface_file(ss.str());
}

}  // namespace umb
