#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "implab/julia.hpp"
#include "implab/lavaurs.hpp"
#include "implab/mapfamily.hpp"
#include "implab/regions.hpp"

namespace implab::cli {

// Malformed or invalid configuration; maps to exit status 2.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct LavaursSection {
    Complex alpha{-12.0};
    std::vector<std::size_t> n_list{200, 400, 800, 1600};
    double tol = 1e-9;
    std::size_t m_max = 2;
    double orbit_ball = 1e8;
};

// Sample sets and ladders for the verification suite.
struct VerifySection {
    std::size_t fatou_points = 25;
    double fatou_rmin = 0.05;
    double fatou_rmax = 0.2;
    std::size_t window_points = 20;
    double window_rmin = 0.1;
    double window_rmax = 0.2;
    std::vector<std::size_t> eps_denominators{100, 200, 400, 800};  // eps = pi/d
    std::vector<std::size_t> ladder{50, 100, 200, 400, 800};         // bounded-type m
    std::size_t ladder_offset = 200;                                 // eps_m = pi/(2(m + offset))
    std::vector<ComplexPoint> almost_points;
    std::vector<Complex> line_points;
    std::vector<ComplexPoint> lavaurs_points;
};

struct RunConfig {
    PolyMap2 map;
    RegionParams region;
    GridSpec grid;
    LavaursSection lavaurs;
    VerifySection verify;
    std::uint64_t seed = 0;

    // Throws implab::Error from the module constructors or ConfigError.
    void validate() const;
    RegionConfig region_config() const { return RegionConfig(region, map.rho); }
    AlphaSequence sequence() const;
    // Canonical text of every field; stable across runs and platforms.
    std::string canonical() const;
    std::uint64_t hash() const { return fnv1a(canonical()); }
};

// The shipped scene: default family, y = 0 slice around K(F_0), alpha = -12.
RunConfig default_config();

// INI text: [section] headers, key = value, '#' comments. Complex values are
// "re im"; points are "xre xim yre yim"; lists are comma separated. Keys not
// given keep their defaults.
RunConfig parse_config(std::istream& in);
RunConfig load_config(const std::string& path);

}  // namespace implab::cli
