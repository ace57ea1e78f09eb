#ifndef UMBILIC_FOLIATION_HPP
#define UMBILIC_FOLIATION_HPP

#include <string>
#include <vector>

#include "umbilic/geometry.hpp"
#include "umbilic/surface.hpp"

namespace umb {

// One grid sample of the two principal direction families, in parameter-plane
// components. Directions are unit vectors with a deterministic sign choice;
// degenerate samples (umbilic within threshold) carry zero directions.
struct FoliationSample {
    Vec2 p;
    Vec2 major_dir;
    Vec2 minor_dir;
    double gauss;
    double mean;
    bool degenerate;
};

struct FoliationData {
    int nu = 0, nv = 0;
    std::vector<FoliationSample> samples;  // row-major, v outer, u inner
    std::vector<UmbilicHit> umbilics;
    double umbilic_threshold = 0.0;
    bool all_degenerate = false;
};

FoliationData sample_foliation(const SurfaceSpec& spec, int nu, int nv);

// Minimal SVG portrait: short streamline polylines for both families traced
// with the doubled-angle continuity rule, umbilics marked as circles.
std::string foliation_svg(const SurfaceSpec& spec, const FoliationData& data);

}  // namespace umb

#endif
