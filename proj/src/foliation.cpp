#include "umbilic/foliation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "umbilic/errors.hpp"

namespace umb {

namespace {

// Parameter-plane components of the principal direction with frame angle
// theta, i.e. solve w1 X_u + w2 X_v = cos(theta) e1 + sin(theta) e2.
Vec2 frame_angle_to_param(const SurfacePoint& sp, double theta) {
    const double E = sp.forms.E, F = sp.forms.F, G = sp.forms.G;
    const double wn = std::sqrt((E * G - F * F) / E);
    const double p1 = 1.0 / std::sqrt(E);
    const double p2 = -F / (E * wn);
    const double q2 = 1.0 / wn;
    const double c1 = std::cos(theta), c2 = std::sin(theta);
    Vec2 w{c1 * p1 + c2 * p2, c2 * q2};
    const double n = w.norm();
    return n > 0.0 ? w / n : w;
}

Vec2 canonical_sign(Vec2 w) {
    if (w.x < 0.0 || (w.x == 0.0 && w.y < 0.0)) return -w;
    return w;
}

struct TraceContext {
    const SurfaceSpec& spec;
    double eps_umb;
    bool minor_family;
};

// One streamline step direction, sign-aligned with the previous direction.
bool direction_at(const TraceContext& ctx, const Vec2& p, const Vec2& prev, Vec2& out) {
    if (!ctx.spec.domain.contains(p)) return false;
    const SurfacePoint sp = surface_point(ctx.spec, p);
    if (sp.traceless.magnitude() <= ctx.eps_umb) return false;
    double doubled = std::atan2(sp.traceless.b, sp.traceless.a);
    if (ctx.minor_family) doubled += M_PI;
    Vec2 dir = frame_angle_to_param(sp, 0.5 * doubled);
    if (dir.dot(prev) < 0.0) dir = -dir;
    out = dir;
    return true;
}

std::vector<Vec2> trace_streamline(const TraceContext& ctx, Vec2 seed, double step, int steps) {
    std::vector<Vec2> forward{seed}, backward;
    for (int sign = 0; sign < 2; ++sign) {
        Vec2 p = seed;
        Vec2 prev{0.0, 0.0};
        {
            Vec2 first;
            if (!direction_at(ctx, p, {0.0, 0.0}, first)) return {};
            prev = sign == 0 ? first : -first;
        }
        for (int i = 0; i < steps; ++i) {
            Vec2 dir;
            if (!direction_at(ctx, p, prev, dir)) break;
            const Vec2 next = p + dir * step;
            if (!ctx.spec.domain.contains(next)) break;
            (sign == 0 ? forward : backward).push_back(next);
            p = next;
            prev = dir;
        }
    }
    std::vector<Vec2> line(backward.rbegin(), backward.rend());
    line.insert(line.end(), forward.begin(), forward.end());
    return line;
}

void append_pixel(std::ostringstream& os, const Rect& d, const Vec2& p, double w, double h) {
    const double x = (p.x - d.u_min) / d.u_span() * w;
    const double y = (d.v_max - p.y) / d.v_span() * h;
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.2f,%.2f", x, y);
    os << buf;
}

}  // namespace

FoliationData sample_foliation(const SurfaceSpec& spec, int nu, int nv) {
    if (nu < 2 || nv < 2) throw InvalidInputError("foliation grid must be at least 2x2");

    FoliationData data;
    data.nu = nu;
    data.nv = nv;
    data.samples.reserve(static_cast<std::size_t>(nu) * nv);

    std::vector<SurfacePoint> points;
    points.reserve(data.samples.capacity());
    double max_mag = 0.0;
    for (int j = 0; j < nv; ++j) {
        for (int i = 0; i < nu; ++i) {
            const Vec2 p{spec.domain.u_min + spec.domain.u_span() * i / (nu - 1),
                         spec.domain.v_min + spec.domain.v_span() * j / (nv - 1)};
            points.push_back(surface_point(spec, p));
            max_mag = std::max(max_mag, points.back().traceless.magnitude());
        }
    }
    const double eps = 1e-9 * (1.0 + max_mag);
    data.umbilic_threshold = eps;

    bool any_live = false;
    for (const SurfacePoint& sp : points) {
        FoliationSample s;
        s.p = {sp.jet.pos.x, sp.jet.pos.y};
        s.gauss = sp.shape.gauss();
        s.mean = sp.shape.mean();
        s.degenerate = sp.traceless.magnitude() <= eps;
        if (s.degenerate) {
            s.major_dir = s.minor_dir = {0.0, 0.0};
        } else {
            const double doubled = std::atan2(sp.traceless.b, sp.traceless.a);
            s.major_dir = canonical_sign(frame_angle_to_param(sp, 0.5 * doubled));
            s.minor_dir = canonical_sign(frame_angle_to_param(sp, 0.5 * (doubled + M_PI)));
            any_live = true;
        }
        data.samples.push_back(s);
    }
    data.all_degenerate = !any_live;
    if (!data.all_degenerate) data.umbilics = umbilic_scan(spec, 64);
    return data;
}

std::string foliation_svg(const SurfaceSpec& spec, const FoliationData& data) {
    const Rect& d = spec.domain;
    const double width = 800.0;
    const double height = width * d.v_span() / d.u_span();

    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << width << " " << height
       << "\">\n";
    os << "<title>" << spec.name << "</title>\n";
    os << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";

    const double step = std::min(d.u_span(), d.v_span()) / 200.0;
    const int stride_u = std::max(data.nu / 16, 1);
    const int stride_v = std::max(data.nv / 16, 1);

    for (int family = 0; family < 2; ++family) {
        const TraceContext ctx{spec, data.umbilic_threshold, family == 1};
        os << "<g fill=\"none\" stroke=\"" << (family == 0 ? "#2060c0" : "#c07020")
           << "\" stroke-width=\"0.8\">\n";
        for (int j = 0; j < data.nv; j += stride_v) {
            for (int i = 0; i < data.nu; i += stride_u) {
                const FoliationSample& s = data.samples[static_cast<std::size_t>(j) * data.nu + i];
                if (s.degenerate) continue;
                const std::vector<Vec2> line = trace_streamline(ctx, s.p, step, 24);
                if (line.size() < 2) continue;
                os << "<polyline points=\"";
                for (std::size_t k = 0; k < line.size(); ++k) {
                    if (k) os << ' ';
                    append_pixel(os, d, line[k], width, height);
                }
                os << "\"/>\n";
            }
        }
        os << "</g>\n";
    }

    for (const UmbilicHit& u : data.umbilics) {
        os << "<circle cx=\"";
        std::ostringstream tmp;
        append_pixel(tmp, d, u.location, width, height);
        const std::string xy = tmp.str();
        const auto comma = xy.find(',');
        os << xy.substr(0, comma) << "\" cy=\"" << xy.substr(comma + 1)
           << "\" r=\"4\" fill=\"#d02020\"/>\n";
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace umb
