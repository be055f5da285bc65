#include "otdepth/reference.hpp"

#include "otdepth/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace otdepth {

namespace {

constexpr int kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29};

void require_spec(const RefSpec& spec) {
    if (spec.n < 1) throw std::invalid_argument("generate: n must be >= 1");
    if (spec.dim < 1) throw std::invalid_argument("generate: dim must be >= 1");
    if (spec.jitter < 0.0) throw std::invalid_argument("generate: jitter must be >= 0");
    if (spec.kind == RefKind::HaltonCube && spec.dim > 10)
        throw std::invalid_argument("generate: halton_cube supports dim <= 10");
    if (spec.kind == RefKind::SphericalGrid) {
        if (spec.dim != 2 && spec.dim != 3)
            throw std::invalid_argument("generate: spherical_grid supports dim 2 or 3");
        if (spec.n_radii < 1 || spec.n_directions < 1)
            throw std::invalid_argument("generate: spherical_grid needs n_radii and n_directions");
        const long long expected = static_cast<long long>(spec.n_radii) * spec.n_directions +
                                   (spec.include_center ? 1 : 0);
        if (spec.n != expected)
            throw std::invalid_argument("generate: spherical_grid requires n = n_radii * n_directions" +
                                        std::string(spec.include_center ? " + 1" : "") + " (expected " +
                                        std::to_string(expected) + ", got " + std::to_string(spec.n) + ")");
    }
}

}  // namespace

RefKind parse_ref_kind(const std::string& name) {
    if (name == "spherical_uniform") return RefKind::SphericalUniform;
    if (name == "halton_cube") return RefKind::HaltonCube;
    if (name == "spherical_grid") return RefKind::SphericalGrid;
    if (name == "gaussian") return RefKind::Gaussian;
    throw std::invalid_argument("unknown reference kind '" + name + "'");
}

std::string ref_kind_name(RefKind kind) {
    switch (kind) {
        case RefKind::SphericalUniform: return "spherical_uniform";
        case RefKind::HaltonCube: return "halton_cube";
        case RefKind::SphericalGrid: return "spherical_grid";
        case RefKind::Gaussian: return "gaussian";
    }
    return "?";
}

double halton(long long index, int base) {
    double result = 0.0;
    double f = 1.0 / base;
    long long i = index;
    while (i > 0) {
        result += f * static_cast<double>(i % base);
        i /= base;
        f /= base;
    }
    return result;
}

std::vector<Point> fibonacci_sphere(int count) {
    std::vector<Point> dirs;
    dirs.reserve(static_cast<std::size_t>(count));
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (int i = 0; i < count; ++i) {
        const double z = count == 1 ? 0.0 : 1.0 - 2.0 * (i + 0.5) / count;
        const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        const double a = golden * i;
        dirs.push_back(Point{r * std::cos(a), r * std::sin(a), z});
    }
    return dirs;
}

PointCloud generate(const RefSpec& spec) {
    require_spec(spec);
    std::vector<Point> pts;
    pts.reserve(static_cast<std::size_t>(spec.n));
    switch (spec.kind) {
        case RefKind::SphericalUniform: {
            Rng rng(split_seed(spec.seed, 0x5f01));
            for (long long i = 0; i < spec.n; ++i) {
                const Point dir = rng.unit_vector(spec.dim);
                pts.push_back(scaled(dir, rng.uniform01()));
            }
            break;
        }
        case RefKind::HaltonCube: {
            for (long long i = 1; i <= spec.n; ++i) {
                Point p(static_cast<std::size_t>(spec.dim));
                for (int c = 0; c < spec.dim; ++c) p[c] = 2.0 * halton(i, kPrimes[c]) - 1.0;
                pts.push_back(std::move(p));
            }
            break;
        }
        case RefKind::SphericalGrid: {
            std::vector<Point> dirs;
            if (spec.dim == 2) {
                for (int s = 0; s < spec.n_directions; ++s) {
                    const double a = 2.0 * std::numbers::pi * s / spec.n_directions;
                    dirs.push_back(Point{std::cos(a), std::sin(a)});
                }
            } else {
                dirs = fibonacci_sphere(spec.n_directions);
            }
            if (spec.include_center) pts.push_back(Point(static_cast<std::size_t>(spec.dim), 0.0));
            for (int j = 1; j <= spec.n_radii; ++j) {
                const double r = static_cast<double>(j) / (spec.n_radii + 1);
                for (const Point& dir : dirs) pts.push_back(scaled(dir, r));
            }
            break;
        }
        case RefKind::Gaussian: {
            Rng rng(split_seed(spec.seed, 0x5f02));
            for (long long i = 0; i < spec.n; ++i) pts.push_back(rng.gaussian_point(spec.dim));
            break;
        }
    }
    PointCloud cloud(std::move(pts), ref_kind_name(spec.kind));
    if (spec.jitter > 0.0) cloud = ensure_general_position(cloud, spec.jitter, spec.seed);
    return cloud;
}

PointCloud ensure_general_position(const PointCloud& cloud, double jitter, std::uint64_t seed,
                                   int max_retries) {
    if (jitter < 0.0) throw std::invalid_argument("ensure_general_position: jitter must be >= 0");
    if (in_general_position(cloud)) return cloud;
    if (jitter == 0.0)
        throw std::invalid_argument(
            "ensure_general_position: cloud is degenerate and jitter is zero");
    for (int attempt = 0; attempt < max_retries; ++attempt) {
        Rng rng(split_seed(seed, 0x6a00 + static_cast<std::uint64_t>(attempt)));
        PointCloud jittered = cloud;
        for (Point& p : jittered.points)
            for (double& c : p) c += jitter * rng.uniform(-1.0, 1.0);
        if (in_general_position(jittered)) return jittered;
    }
    throw std::runtime_error("ensure_general_position: retry limit exceeded (pathological input?)");
}

}  // namespace otdepth
