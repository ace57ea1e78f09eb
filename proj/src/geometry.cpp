#include "umbilic/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "umbilic/errors.hpp"

namespace umb {

FrameData frame_at(const Jet2& jet) {
    const double E = jet.xu.dot(jet.xu);
    const double F = jet.xu.dot(jet.xv);
    const double G = jet.xv.dot(jet.xv);
    const double det = E * G - F * F;
    if (!(det > 1e-12 * E * G) || !(E > 0.0))
        throw RankError("immersion drops rank: EG - F^2 below tolerance");

    FrameData fr;
    fr.e1 = jet.xu / std::sqrt(E);
    const Vec3 w = jet.xv - fr.e1 * jet.xv.dot(fr.e1);
    fr.e2 = w / w.norm();
    fr.normal = jet.xu.cross(jet.xv).normalized();
    return fr;
}

SurfacePoint shape_operator(const Jet2& jet) {
    SurfacePoint sp;
    sp.jet = jet;
    sp.frame = frame_at(jet);

    const double E = jet.xu.dot(jet.xu);
    const double F = jet.xu.dot(jet.xv);
    const double G = jet.xv.dot(jet.xv);
    const Vec3& n = sp.frame.normal;
    const double L = jet.xuu.dot(n);
    const double M = jet.xuv.dot(n);
    const double N = jet.xvv.dot(n);
    sp.forms = {E, F, G, L, M, N};

    // Express the second fundamental form in the orthonormal frame
    // e1 = p1 X_u, e2 = p2 X_u + q2 X_v. In that frame the form's matrix is
    // the shape operator's matrix, symmetric by construction.
    const double wn = std::sqrt((E * G - F * F) / E);
    const double p1 = 1.0 / std::sqrt(E);
    const double p2 = -F / (E * wn);
    const double q2 = 1.0 / wn;

    const double s11 = p1 * p1 * L;
    const double s12 = p1 * (p2 * L + q2 * M);
    const double s22 = p2 * p2 * L + 2.0 * p2 * q2 * M + q2 * q2 * N;
    sp.shape = {s11, s12, s22};
    sp.traceless = {0.5 * (s11 - s22), s12};
    return sp;
}

SurfacePoint surface_point(const SurfaceSpec& spec, const Vec2& p) {
    return shape_operator(eval_jet2(spec, p));
}

namespace {

double traceless_norm_at(const SurfaceSpec& spec, const Vec2& p) {
    return surface_point(spec, p).traceless.magnitude();
}

Vec2 clamp_to_domain(const Rect& d, Vec2 p) {
    p.x = std::clamp(p.x, d.u_min, d.u_max);
    p.y = std::clamp(p.y, d.v_min, d.v_max);
    return p;
}

// Shrinking-grid minimization of |(a,b)|. The data is only continuous (no
// third-order jets on a C^2 surface), so no derivative-based refinement.
Vec2 refine_minimum(const SurfaceSpec& spec, Vec2 center, double window) {
    while (window > 1e-9) {
        Vec2 best = center;
        double best_val = traceless_norm_at(spec, clamp_to_domain(spec.domain, center));
        for (int i = -4; i <= 4; ++i) {
            for (int j = -4; j <= 4; ++j) {
                if (i == 0 && j == 0) continue;
                const Vec2 q = clamp_to_domain(
                    spec.domain, {center.x + window * i / 4.0, center.y + window * j / 4.0});
                const double val = traceless_norm_at(spec, q);
                if (val < best_val) {
                    best_val = val;
                    best = q;
                }
            }
        }
        center = best;
        window *= 0.3;
    }
    return clamp_to_domain(spec.domain, center);
}

double isolation_radius_for(const SurfaceSpec& spec, const Vec2& p, double eps_umb) {
    const double r_max = 0.95 * spec.domain.boundary_distance(p);
    if (!(r_max > 0.0)) return 0.0;
    for (int i = 0; i <= 10; ++i) {
        const double r = r_max * std::pow(0.5, i);
        bool clear = true;
        constexpr int kSamples = 256;
        for (int s = 0; s < kSamples && clear; ++s) {
            const double t = 2.0 * M_PI * s / kSamples;
            const Vec2 q{p.x + r * std::cos(t), p.y + r * std::sin(t)};
            if (traceless_norm_at(spec, q) <= eps_umb) clear = false;
        }
        if (clear) return r;
    }
    return 0.0;
}

}  // namespace

std::vector<UmbilicHit> umbilic_scan(const SurfaceSpec& spec, int grid_n) {
    if (grid_n < 16) throw InvalidInputError("umbilic scan needs a grid of at least 16x16");

    const Rect& d = spec.domain;
    std::vector<double> mag(static_cast<std::size_t>(grid_n) * grid_n);
    auto at = [&](int i, int j) -> double& { return mag[static_cast<std::size_t>(j) * grid_n + i]; };

    double max_mag = 0.0;
    for (int j = 0; j < grid_n; ++j) {
        for (int i = 0; i < grid_n; ++i) {
            const Vec2 p{d.u_min + d.u_span() * i / (grid_n - 1),
                         d.v_min + d.v_span() * j / (grid_n - 1)};
            const double m = traceless_norm_at(spec, p);
            at(i, j) = m;
            max_mag = std::max(max_mag, m);
        }
    }
    // Relative threshold; invariant under dilating the surface.
    const double eps_umb = 1e-9 * (1.0 + max_mag);

    for (int j = 0; j + 1 < grid_n; ++j)
        for (int i = 0; i + 1 < grid_n; ++i)
            if (at(i, j) < eps_umb && at(i + 1, j) < eps_umb && at(i, j + 1) < eps_umb &&
                at(i + 1, j + 1) < eps_umb)
                throw NonIsolatedUmbilicError(
                    "non-isolated umbilic locus: |a,b| below threshold on a whole grid cell");

    // Local minima of |(a,b)| are the refinement candidates.
    std::vector<Vec2> candidates;
    for (int j = 0; j < grid_n; ++j) {
        for (int i = 0; i < grid_n; ++i) {
            bool is_min = true;
            for (int dj = -1; dj <= 1 && is_min; ++dj) {
                for (int di = -1; di <= 1 && is_min; ++di) {
                    if (di == 0 && dj == 0) continue;
                    const int ii = i + di, jj = j + dj;
                    if (ii < 0 || jj < 0 || ii >= grid_n || jj >= grid_n) continue;
                    if (at(ii, jj) < at(i, j)) is_min = false;
                }
            }
            if (is_min)
                candidates.push_back({d.u_min + d.u_span() * i / (grid_n - 1),
                                      d.v_min + d.v_span() * j / (grid_n - 1)});
        }
    }

    const double cell = std::max(d.u_span(), d.v_span()) / (grid_n - 1);
    std::vector<UmbilicHit> hits;
    for (const Vec2& c : candidates) {
        const Vec2 refined = refine_minimum(spec, c, cell);
        const double residual = traceless_norm_at(spec, refined);
        if (residual >= eps_umb) continue;
        bool duplicate = false;
        for (const UmbilicHit& h : hits) {
            if ((h.location - refined).norm() < 2e-6) {
                duplicate = true;
                break;
            }
        }
        if (!duplicate) hits.push_back({refined, residual, 0.0});
    }

    for (UmbilicHit& h : hits)
        h.isolation_radius = isolation_radius_for(spec, h.location, eps_umb);

    std::sort(hits.begin(), hits.end(), [](const UmbilicHit& a, const UmbilicHit& b) {
        return a.location.x != b.location.x ? a.location.x < b.location.x
                                            : a.location.y < b.location.y;
    });
    return hits;
}

}  // namespace umb
