#ifndef UMBILIC_UTIL_HPP
#define UMBILIC_UTIL_HPP

#include <charconv>
#include <cstdint>
#include <random>
#include <string>

namespace umb {

// Seeded generator with an implementation-independent uniform mapping, so a
// given seed reproduces the same cases on any platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    double uniform(double lo, double hi) {
        const double x = static_cast<double>(eng_() >> 11) * 0x1.0p-53;
        return lo + (hi - lo) * x;
    }

    long long uniform_int(long long lo, long long hi) {  // inclusive bounds
        const auto span = static_cast<std::uint64_t>(hi - lo + 1);
        return lo + static_cast<long long>(eng_() % span);
    }

private:
    std::mt19937_64 eng_;
};

// Shortest exact decimal rendering.
inline std::string format_double(double x) {
    char buf[32];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, end);
}

}  // namespace umb

#endif
