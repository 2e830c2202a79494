#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

namespace testutil {

/// Composite Simpson quadrature of a callable, independent of any library
/// integration code. Panels must be even; 2000 is plenty for the smooth
/// integrands used here.
inline double simpson(const std::function<double(double)>& f, double a, double b,
                      int panels = 2000) {
    if (panels % 2 != 0) ++panels;
    const double h = (b - a) / panels;
    double acc = f(a) + f(b);
    for (int i = 1; i < panels; ++i) acc += f(a + h * i) * (i % 2 ? 4.0 : 2.0);
    return acc * h / 3.0;
}

/// Simpson on sampled values over a uniform grid (odd point count preferred;
/// a trailing trapezoid covers an even count).
inline double simpson_samples(const std::vector<double>& t, const std::vector<double>& f) {
    double acc = 0.0;
    std::size_t i = 0;
    while (i + 2 < t.size()) {
        acc += (t[i + 2] - t[i]) / 6.0 * (f[i] + 4.0 * f[i + 1] + f[i + 2]);
        i += 2;
    }
    if (i + 1 < t.size()) acc += 0.5 * (f[i] + f[i + 1]) * (t[i + 1] - t[i]);
    return acc;
}

/// Central finite difference, h tuned for smooth double-precision functions.
inline double central_diff(const std::function<double(double)>& f, double t, double h = 1e-6) {
    return (f(t + h) - f(t - h)) / (2.0 * h);
}

/// Tiny deterministic PRNG (splitmix64) so property tests are reproducible
/// without dragging in <random> distribution quirks.
struct Rng {
    std::uint64_t state;
    explicit Rng(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        state += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    double uniform(double lo, double hi) {
        return lo + (hi - lo) * (static_cast<double>(next() >> 11) * 0x1.0p-53);
    }
};

inline bool close(double a, double b, double tol) { return std::abs(a - b) <= tol; }

inline bool close_rel(double a, double b, double rel) {
    return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b));
}

}  // namespace testutil
