#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "implab/lavaurs.hpp"
#include "implab/mapfamily.hpp"
#include "implab/regions.hpp"

namespace implab {

// Affine slice of C^2: pixel (i, j) sits at origin + axis_u i/(nx-1) +
// axis_v j/(ny-1). The two axes must be orthogonal as vectors of R^4 so that
// pixel distances are Euclidean.
struct GridSpec {
    ComplexPoint origin;
    ComplexPoint axis_u;
    ComplexPoint axis_v;
    std::size_t nx = 2;
    std::size_t ny = 2;
    // 0 selects the computed escape bound of the map at render time.
    double escape_radius = 0.0;
    std::size_t max_iter = 1000;

    ComplexPoint pixel(std::size_t i, std::size_t j) const;
    double pitch_u() const;
    double pitch_v() const;
    void validate() const;  // throws InvalidGrid
    bool same_geometry(const GridSpec& o) const;
    std::string canonical() const;
    std::uint64_t hash() const;
};

// 64-bit FNV-1a, used for content hashes in file names and metadata.
std::uint64_t fnv1a(const std::string& s, std::uint64_t h = 0xcbf29ce484222325ULL);
std::uint64_t map_hash(const PolyMap2& map);

// Radius beyond which norm(F_eps(p)) >= 2 norm(p). Throws NotRegular when the
// family is not regular at eps.
double escape_bound(const PolyMap2& map, Complex eps);

constexpr std::int32_t kBounded = -1;

// First k <= max_iter with norm(F^k p) > radius, or kBounded. No regularity
// check; callers are responsible for a sound radius.
std::int32_t escape_time(const PolyMap2& map, Complex eps, const ComplexPoint& p, double radius,
                         std::size_t max_iter);

struct EscapeSettings {
    double escape_radius = 0.0;
    std::size_t max_iter = 1000;
};

struct EscapeResult {
    bool bounded = true;
    std::size_t k = 0;  // escape index when !bounded
};

// Throws NotRegular when the map fails the regularity check at eps.
EscapeResult escape_classify(const PolyMap2& map, Complex eps, const ComplexPoint& p, const EscapeSettings& settings);

struct RasterMeta {
    std::uint64_t map_hash = 0;
    Complex eps{};
    std::string timestamp;
};

struct Raster {
    GridSpec grid;
    std::vector<std::int32_t> cells;  // row-major, j * nx + i; kBounded or escape index
    RasterMeta meta;

    bool bounded(std::size_t i, std::size_t j) const { return cells[j * grid.nx + i] == kBounded; }
};

struct BinaryRaster {
    GridSpec grid;
    std::vector<std::uint8_t> cells;  // row-major, 1 = member

    std::size_t count() const;
    bool at(std::size_t i, std::size_t j) const { return cells[j * grid.nx + i] != 0; }
};

// Throws NotRegular / InvalidGrid. Resolves escape_radius = 0 to the computed
// bound and rejects explicit radii below it.
Raster render_K_slice(const PolyMap2& map, Complex eps, const GridSpec& grid, unsigned threads = 0);

BinaryRaster bounded_mask(const Raster& r);
// Bounded pixels with an escaping 4-neighbour: the inner boundary of K on the
// slice, used as the proxy for the Julia set.
BinaryRaster boundary_slice(const Raster& r);
// Pixels within `radius` pixels (Chebyshev) of a member.
BinaryRaster dilate(const BinaryRaster& r, std::size_t radius);

// Euclidean distance (in slice units) from each pixel to the nearest member,
// +inf everywhere when the set is empty.
std::vector<double> distance_to_set(const BinaryRaster& r);

struct HausdorffResult {
    double d_ab = 0.0;  // max over a of the distance to b
    double d_ba = 0.0;
    double symmetric() const { return d_ab > d_ba ? d_ab : d_ba; }
};

// Throws GridMismatch when the geometries differ.
HausdorffResult hausdorff_grid(const BinaryRaster& a, const BinaryRaster& b);

enum class Membership { InK, NotInK, InJ1Certificate, Undetermined };
const char* to_string(Membership m);

struct MembershipParams {
    AlphaSequence sequence;
    EscapeSettings escape;
    double orbit_ball = 1e8;
    // Optional boundary proxy for the J^1 certificate (slice of the same grid).
    const BinaryRaster* boundary = nullptr;
    // Optional forward-invariant trap: an F_0 orbit entering C_0 is bounded,
    // which saves running bounded ring points to max_iter.
    const RegionConfig* trap = nullptr;
};

struct MembershipResult {
    Membership kind = Membership::Undetermined;
    std::size_t m = 0;
    std::vector<ComplexPoint> images;  // T^1(p), T^2(p), ...
    double error_bar = 0.0;            // cauchy gap of the last estimate
};

// Iterates the empirical Lavaurs map up to m_max times; see Membership.
MembershipResult lavaurs_membership(const PolyMap2& map, const ComplexPoint& p, std::size_t m_max,
                                    const MembershipParams& params);

struct Witness {
    std::size_t i = 0, j = 0;
    ComplexPoint p;
    std::size_t m = 0;                 // certificate depth
    std::vector<std::int32_t> escape;  // escape index per tested eps
    double jump_lower_bound = 0.0;     // min over nu of distance to K(F_eps_nu)
};

struct DiscontinuityReport {
    AlphaSequence sequence;
    Raster k0;
    std::vector<Raster> k_eps;
    BinaryRaster limsup;
    std::size_t usc_violations = 0;   // limsup pixels outside K0 dilated 2 px
    std::size_t certified_out = 0;    // K0 pixels certified NotInK
    std::size_t conflicts = 0;        // certified-out pixels inside the limsup proxy
    std::size_t band_conflicts = 0;   // conflicts inside the 1 px error band
    std::size_t undetermined = 0;
    std::vector<HausdorffResult> hausdorff;  // per nu: (K_eps -> K0, K0 -> K_eps)
    std::vector<Witness> witnesses;
    double max_jump = 0.0;

    bool consistent() const { return usc_violations == 0 && conflicts == band_conflicts; }
};

struct ReportOptions {
    std::size_t m_max = 2;
    double orbit_ball = 1e8;
    unsigned threads = 0;
    // Trap region for the membership test; see MembershipParams::trap.
    std::optional<RegionParams> trap = RegionParams{};
    // When false an empty witness list is returned instead of thrown.
    bool require_witness = true;
};

// Throws InconclusiveScene when no witness is certified.
DiscontinuityReport discontinuity_report(const PolyMap2& map, const AlphaSequence& seq, const GridSpec& grid,
                                         const ReportOptions& opt = {});

// P6 image: bounded black, escaped white, boundary red (boundary may be null).
void write_ppm(std::ostream& os, const Raster& r, const BinaryRaster* boundary);
void write_ppm(std::ostream& os, const BinaryRaster& r);

}  // namespace implab
