#pragma once

#include "otdepth/geometry.hpp"

#include <cstdint>
#include <random>

namespace otdepth {

/// splitmix64 mixing step; used to derive independent child seeds from a
/// single manifest seed so parallel trials stay reproducible.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t split_seed(std::uint64_t base, std::uint64_t stream) {
    return splitmix64(splitmix64(base) ^ splitmix64(stream * 0xd1342543de82ef95ULL + 0x2545f4914f6cdd1dULL));
}

/// Deterministic RNG. mt19937_64 output is pinned by the standard and the
/// double mappings below avoid the implementation-defined std distributions,
/// so identical seeds give byte-identical streams everywhere.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    /// Uniform in [0, 1).
    double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// Index in [0, n).
    std::size_t uniform_index(std::size_t n) {
        return static_cast<std::size_t>(uniform01() * static_cast<double>(n)) % n;
    }

    /// Standard normal via Box-Muller (cached spare).
    double gaussian() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = uniform01();
        while (u1 <= 0.0) u1 = uniform01();
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * 3.14159265358979323846 * u2;
        spare_ = r * std::sin(a);
        has_spare_ = true;
        return r * std::cos(a);
    }

    Point gaussian_point(int dim) {
        Point p(static_cast<std::size_t>(dim));
        for (double& c : p) c = gaussian();
        return p;
    }

    Point unit_vector(int dim) {
        while (true) {
            Point p = gaussian_point(dim);
            const double n = norm(p);
            if (n > 1e-12) return scaled(p, 1.0 / n);
        }
    }

    /// Fisher-Yates choice of k distinct indices from {0..n-1}, sorted.
    std::vector<std::size_t> sample_indices(std::size_t n, std::size_t k) {
        std::vector<std::size_t> all(n);
        for (std::size_t i = 0; i < n; ++i) all[i] = i;
        for (std::size_t i = 0; i < k && i + 1 < n; ++i) {
            const std::size_t j = i + uniform_index(n - i);
            std::swap(all[i], all[j]);
        }
        all.resize(k);
        std::sort(all.begin(), all.end());
        return all;
    }

  private:
    std::mt19937_64 gen_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace otdepth
