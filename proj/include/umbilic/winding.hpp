#ifndef UMBILIC_WINDING_HPP
#define UMBILIC_WINDING_HPP

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "umbilic/vec.hpp"

namespace umb {

// Exact half-integer. All index computations land here; nothing is ever
// reported as a float.
struct HalfIndex {
    long long twice = 0;

    static HalfIndex integer(long long k) { return {2 * k}; }
    static HalfIndex halves(long long n) { return {n}; }

    double value() const { return static_cast<double>(twice) / 2.0; }
    bool is_integer() const { return twice % 2 == 0; }
    std::string str() const;

    friend bool operator==(const HalfIndex&, const HalfIndex&) = default;
    HalfIndex operator+(const HalfIndex& o) const { return {twice + o.twice}; }
    HalfIndex operator-(const HalfIndex& o) const { return {twice - o.twice}; }
    HalfIndex operator-() const { return {-twice}; }
};

inline HalfIndex operator*(long long k, const HalfIndex& h) { return {k * h.twice}; }

// Positively oriented parameter-space circle along which fields are tracked.
struct LoopSpec {
    Vec2 center;
    double radius = 0.25;
    int samples = 256;    // power of two, >= 256
    int orientation = 1;  // +1 counterclockwise in (u,v), -1 reversed

    Vec2 point_at(double t) const {
        const double ang = orientation * 2.0 * M_PI * t;
        return {center.x + radius * std::cos(ang), center.y + radius * std::sin(ang)};
    }
    void validate() const;
};

using PlaneField = std::function<Vec2(const Vec2&)>;

// Unwrapped angle samples of a field along a loop. The track is only usable
// when every step stays below pi/2; larger steps make the unwrapping
// ambiguous and force refinement.
struct AngleTrack {
    std::vector<double> theta;  // unwrapped, samples + 1 entries (last = first point)
    std::vector<double> delta;  // per-step wrapped increments
    double max_step = 0.0;
    double min_magnitude = 0.0;
    double max_magnitude = 0.0;
    bool valid = false;

    double total_turn() const { return theta.empty() ? 0.0 : theta.back() - theta.front(); }
};

AngleTrack track_angles(const PlaneField& field, const LoopSpec& loop);

enum class FieldKind {
    Vector,  // genuine plane vector field; index is an integer
    Line,    // unoriented direction field given by any spanning vector
    Tensor   // traceless components (a, b); already the doubled-angle vector
};

// Winding of a vector field around the loop (even half-integer). Doubles the
// sample count until the track is valid; a field value near zero on the loop
// is a hard degenerate-loop error, never refined away.
HalfIndex winding_of_vector_field(const PlaneField& field, const LoopSpec& loop);

// Index of an unoriented line field: the input direction vector is squared
// (angle doubled) pointwise, the winding of that vector field halved.
HalfIndex index_of_line_field(const PlaneField& direction_field, const LoopSpec& loop);

// Same, for a field already stored as a doubled-angle vector.
HalfIndex index_of_doubled_field(const PlaneField& doubled_field, const LoopSpec& loop);

// Index of the eigen-direction fields of a symmetric tensor from its
// traceless components (a, b): half their winding.
HalfIndex index_of_tensor(const PlaneField& traceless_field, const LoopSpec& loop);

// Doubles the sample count until the snapped index agrees for two
// consecutive resolutions. Returns the index and the final sample count.
std::pair<HalfIndex, int> refine_until_stable(const PlaneField& field, const LoopSpec& loop,
                                              FieldKind kind);

}  // namespace umb

#endif
