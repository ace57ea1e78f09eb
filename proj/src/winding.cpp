#include "umbilic/winding.hpp"

#include <cmath>
#include <optional>

#include "umbilic/errors.hpp"

namespace umb {

namespace {

constexpr int kMaxSamples = 1 << 20;
constexpr double kDegeneracyRatio = 1e-6;
constexpr double kMaxStep = M_PI / 2.0;
constexpr double kSnapTolerance = 1e-3 * 2.0 * M_PI;

PlaneField squared(const PlaneField& f) {
    return [f](const Vec2& p) { return angle_double(f(p)); };
}

// One unwrapping pass at a fixed resolution. Returns the snapped integer
// winding, or nullopt when the track steps too far and needs more samples.
std::optional<long long> snapped_winding(const PlaneField& field, const LoopSpec& loop, int n,
                                         double& max_step_seen) {
    AngleTrack track;
    LoopSpec at_n = loop;
    at_n.samples = n;
    track = track_angles(field, at_n);
    max_step_seen = track.max_step;

    if (!(track.min_magnitude > 0.0) ||
        track.min_magnitude < kDegeneracyRatio * track.max_magnitude)
        throw DegenerateLoopError(
            "field magnitude nearly vanishes on the loop (singularity on or near the loop)");

    if (!track.valid) return std::nullopt;

    const double total = track.total_turn();
    const double k = std::round(total / (2.0 * M_PI));
    if (std::fabs(total - 2.0 * M_PI * k) >= kSnapTolerance)
        throw NonConvergenceError("winding does not snap to an integer multiple of 2 pi",
                                  track.max_step);
    return static_cast<long long>(k);
}

long long winding_with_refinement(const PlaneField& field, const LoopSpec& loop, int* final_n) {
    double max_step = 0.0;
    for (int n = loop.samples; n <= kMaxSamples; n *= 2) {
        const auto w = snapped_winding(field, loop, n, max_step);
        if (w) {
            if (final_n) *final_n = n;
            return *w;
        }
    }
    throw NonConvergenceError("angle track still invalid at the sample cap", max_step);
}

long long stable_winding(const PlaneField& field, const LoopSpec& loop, int& final_n) {
    double max_step = 0.0;
    std::optional<long long> previous;
    for (int n = loop.samples; n <= kMaxSamples; n *= 2) {
        const auto w = snapped_winding(field, loop, n, max_step);
        if (w) {
            if (previous && *previous == *w) {
                final_n = n;
                return *w;
            }
            previous = w;
        } else {
            previous.reset();
        }
    }
    throw NonConvergenceError("winding failed to stabilize below the sample cap", max_step);
}

}  // namespace

std::string HalfIndex::str() const {
    if (twice % 2 == 0) return std::to_string(twice / 2);
    return std::to_string(twice) + "/2";
}

void LoopSpec::validate() const {
    if (!(radius > 0.0)) throw InvalidInputError("loop radius must be positive");
    if (samples < 256 || (samples & (samples - 1)) != 0)
        throw InvalidInputError("loop sample count must be a power of two, at least 256");
    if (orientation != 1 && orientation != -1)
        throw InvalidInputError("loop orientation must be +1 or -1");
}

AngleTrack track_angles(const PlaneField& field, const LoopSpec& loop) {
    loop.validate();
    const int n = loop.samples;

    AngleTrack track;
    track.theta.resize(n + 1);
    track.delta.resize(n);
    track.min_magnitude = std::numeric_limits<double>::infinity();
    track.max_magnitude = 0.0;

    std::vector<double> raw(n);
    for (int i = 0; i < n; ++i) {
        const Vec2 value = field(loop.point_at(static_cast<double>(i) / n));
        const double mag = value.norm();
        if (!std::isfinite(mag)) throw EvalError("non-finite field sample on the loop");
        track.min_magnitude = std::min(track.min_magnitude, mag);
        track.max_magnitude = std::max(track.max_magnitude, mag);
        raw[i] = std::atan2(value.y, value.x);
    }

    track.theta[0] = raw[0];
    for (int i = 0; i < n; ++i) {
        const double next = raw[(i + 1) % n];
        const double step = std::remainder(next - raw[i % n], 2.0 * M_PI);
        track.delta[i] = step;
        track.theta[i + 1] = track.theta[i] + step;
        track.max_step = std::max(track.max_step, std::fabs(step));
    }
    track.valid = track.max_step < kMaxStep && track.min_magnitude > 0.0;
    return track;
}

HalfIndex winding_of_vector_field(const PlaneField& field, const LoopSpec& loop) {
    return HalfIndex::integer(winding_with_refinement(field, loop, nullptr));
}

HalfIndex index_of_doubled_field(const PlaneField& doubled_field, const LoopSpec& loop) {
    return HalfIndex::halves(winding_with_refinement(doubled_field, loop, nullptr));
}

HalfIndex index_of_line_field(const PlaneField& direction_field, const LoopSpec& loop) {
    return index_of_doubled_field(squared(direction_field), loop);
}

HalfIndex index_of_tensor(const PlaneField& traceless_field, const LoopSpec& loop) {
    return index_of_doubled_field(traceless_field, loop);
}

std::pair<HalfIndex, int> refine_until_stable(const PlaneField& field, const LoopSpec& loop,
                                              FieldKind kind) {
    const PlaneField tracked = (kind == FieldKind::Line) ? squared(field) : field;
    int final_n = 0;
    const long long w = stable_winding(tracked, loop, final_n);
    return {kind == FieldKind::Vector ? HalfIndex::integer(w) : HalfIndex::halves(w), final_n};
}

}  // namespace umb
