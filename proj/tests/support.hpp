#pragma once

#include <chrono>
#include <random>

#include "cmlab/geometry.hpp"

namespace cmlab_test {

using cmlab::cplx;

inline std::mt19937& rng() {
    static std::mt19937 gen(20240517u);
    return gen;
}

inline double uniform(double lo, double hi) {
    std::uniform_real_distribution<double> d(lo, hi);
    return d(rng());
}

// uniform in the disk of the given radius
inline cplx random_in_disk(double radius) {
    while (true) {
        const cplx z(uniform(-radius, radius), uniform(-radius, radius));
        if (std::abs(z) < radius)
            return z;
    }
}

class Stopwatch {
public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

} // namespace cmlab_test
