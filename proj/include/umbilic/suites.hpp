#ifndef UMBILIC_SUITES_HPP
#define UMBILIC_SUITES_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "umbilic/height.hpp"
#include "umbilic/tensor_field.hpp"
#include "umbilic/winding.hpp"

namespace umb::suites {

struct IndexFormulaCase {
    std::string id;
    IndexFormulaReport report;
};

// Gallery shape tensors and randomized abstract tensors crossed with
// constant / polar-power / eigenfield test fields and two loop radii.
std::vector<IndexFormulaCase> index_formula_suite(std::uint64_t seed);

struct HeightCase {
    std::string surface;
    Vec3 a;
    double radius;
    ThirdIndexReport eq8;
    bool probe_applicable = false;
    bool probe_pass = false;
};

// Gradient-index identity plus no-extremum probe over the negatively curved
// gallery umbilics, three admissible height directions each.
std::vector<HeightCase> height_suite();

struct GradientBoundCase {
    std::string id;
    long long expected_twice;  // frozen expected index (numerator over 2)
    CriticalPointReport report;
};

std::vector<GradientBoundCase> gradient_bound_suite();

struct HomotopyCase {
    std::string id;
    HomotopyReport report;
};

std::vector<HomotopyCase> homotopy_suite(std::uint64_t seed);

struct SharpnessEntry {
    std::string surface;
    HalfIndex index;
    HalfIndex expected;
};

struct SharpnessResult {
    std::vector<SharpnessEntry> entries;
    bool all_match = false;  // every computed index equals its expected value
    bool full_set = false;   // {0, -1/2, ..., -3} all realized
};

SharpnessResult sharpness_suite();

}  // namespace umb::suites

#endif
