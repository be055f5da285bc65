#pragma once

#include "otdepth/geometry.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace otdepth {

enum class RefKind { SphericalUniform, HaltonCube, SphericalGrid, Gaussian };

RefKind parse_ref_kind(const std::string& name);
std::string ref_kind_name(RefKind kind);

/// Reference-cloud recipes:
///   spherical_uniform — uniform unit direction times uniform radius on [0,1]
///                       (the spherical uniform law), seeded;
///   halton_cube       — first n Halton points (bases = first d primes,
///                       index starting at 1) mapped affinely to [-1,1]^d;
///   spherical_grid    — radii j/(n_radii+1), j=1..n_radii, crossed with
///                       n_directions equally spaced angles (d=2) or a
///                       Fibonacci-sphere direction set (d=3); the origin is
///                       excluded unless include_center (a repeated center
///                       would break element-distinctness);
///   gaussian          — iid standard normal coordinates, seeded.
struct RefSpec {
    RefKind kind = RefKind::SphericalUniform;
    long long n = 0;
    int dim = 1;
    std::uint64_t seed = 0;
    int n_radii = 0;       // spherical_grid
    int n_directions = 0;  // spherical_grid
    bool include_center = false;
    double jitter = 0.0;   // > 0: jitter into general position after generating
};

PointCloud generate(const RefSpec& spec);

/// Adds seeded uniform perturbations of the given magnitude until the cloud
/// is in general position (fresh draw each retry). Returns the input
/// unchanged when it already is. Throws when jitter <= 0 cannot fix a
/// degenerate cloud or the retry limit is exhausted.
PointCloud ensure_general_position(const PointCloud& cloud, double jitter, std::uint64_t seed,
                                   int max_retries = 64);

/// Van der Corput radical inverse; index starts at 1, so halton(1, 2) = 1/2.
double halton(long long index, int base);

/// Quasi-uniform unit directions on S^2.
std::vector<Point> fibonacci_sphere(int count);

}  // namespace otdepth
