#include "implab/cli/commands.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>

#include "implab/cli/suite.hpp"
#include "implab/parallel.hpp"

namespace implab::cli {

namespace fs = std::filesystem;

namespace {

std::string hex(std::uint64_t h) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::ofstream open_out(const fs::path& p) {
    std::ofstream os(p, std::ios::binary);
    if (!os) throw Error(ErrorCode::Io, "cannot write " + p.string());
    os.precision(17);
    return os;
}

std::string eps_tag(Complex eps) { return "eps_" + num(eps.real()) + "_" + num(eps.imag()); }

void write_sidecar(const fs::path& p, const RunConfig& cfg, const Raster& r, std::size_t boundary_pixels) {
    auto os = open_out(p);
    os << "format P6\npalette bounded=0,0,0 escaped=255,255,255 boundary=255,0,0\n"
       << "map_hash " << hex(r.meta.map_hash) << "\n"
       << "eps " << num(r.meta.eps.real()) << ' ' << num(r.meta.eps.imag()) << "\n"
       << "grid " << r.grid.canonical() << "\n"
       << "grid_hash " << hex(r.grid.hash()) << "\n"
       << "config_hash " << hex(cfg.hash()) << "\n"
       << "escape_radius " << num(r.grid.escape_radius) << "\n"
       << "bounded_pixels " << bounded_mask(r).count() << "\n"
       << "boundary_pixels " << boundary_pixels << "\n"
       << "timestamp " << r.meta.timestamp << "\n";
}

// Validates and prepares the output directory; errors here are config errors.
bool prepare(const RunConfig& cfg, const CommandOptions& opt, std::ostream& log) {
    try {
        cfg.validate();
        if (opt.eps) {
            const RegionConfig rc = cfg.region_config();
            if (*opt.eps != Complex{}) rc.require_admissible(*opt.eps);
        }
        fs::create_directories(opt.out_dir);
    } catch (const std::exception& e) {
        log << "config error: " << e.what() << "\n";
        return false;
    }
    set_thread_count(opt.threads);
    return true;
}

template <class F>
int with_config(const CommandOptions& opt, std::ostream& log, F&& f) {
    RunConfig cfg;
    try {
        cfg = opt.config_path.empty() ? default_config() : load_config(opt.config_path);
    } catch (const std::exception& e) {
        log << "config error: " << e.what() << "\n";
        return kExitConfig;
    }
    return f(cfg);
}

}  // namespace

unsigned resolve_threads(std::optional<unsigned> flag) {
    if (flag) return *flag;
    if (const char* env = std::getenv("IMPLAB_THREADS")) {
        char* end = nullptr;
        const unsigned long v = std::strtoul(env, &end, 10);
        if (end != env && *end == '\0' && v < 4096) return static_cast<unsigned>(v);
    }
    return 0;
}

std::string metadata_timestamp(const RunConfig& cfg) {
    if (const char* sde = std::getenv("SOURCE_DATE_EPOCH"); sde && *sde) return std::string("epoch ") + sde;
    return "config " + hex(cfg.hash());
}

int run_verify(const RunConfig& cfg, const CommandOptions& opt, std::ostream& log) {
    if (!prepare(cfg, opt, log)) return kExitConfig;
    SuiteContext ctx{&cfg, opt.out_dir, opt.threads};
    const auto results = run_verify_suite(ctx, SuiteThresholds{});
    bool ok = true;
    auto summary = open_out(fs::path(opt.out_dir) / "verify_summary.txt");
    summary << "config_hash " << hex(cfg.hash()) << "\n";
    for (const auto& r : results) {
        ok = ok && r.passed;
        summary << r.id << ' ' << (r.passed ? "PASS" : "FAIL") << ' ' << r.name << ": " << r.detail << "\n";
        log << r.id << ' ' << (r.passed ? "PASS" : "FAIL") << ' ' << r.name << ": " << r.detail << " ["
            << r.seconds << " s]\n";
    }
    return ok ? kExitOk : kExitFailure;
}

int run_render(const RunConfig& cfg, const CommandOptions& opt, std::ostream& log) {
    if (!prepare(cfg, opt, log)) return kExitConfig;
    const Complex eps = opt.eps.value_or(Complex{});
    Raster r;
    try {
        r = render_K_slice(cfg.map, eps, cfg.grid, opt.threads);
    } catch (const Error& e) {
        log << "render error: " << e.what() << "\n";
        return e.code() == ErrorCode::InvalidGrid ? kExitConfig : kExitFailure;
    }
    r.meta.timestamp = metadata_timestamp(cfg);
    const BinaryRaster b = boundary_slice(r);
    const std::string stem = eps_tag(eps) + "_g" + hex(cfg.grid.hash());
    const fs::path dir(opt.out_dir);
    {
        auto os = open_out(dir / ("K_" + stem + ".ppm"));
        write_ppm(os, r, &b);
    }
    {
        auto os = open_out(dir / ("boundary_" + stem + ".ppm"));
        write_ppm(os, b);
    }
    write_sidecar(dir / ("K_" + stem + ".txt"), cfg, r, b.count());
    log << "rendered " << r.grid.nx << "x" << r.grid.ny << " slice at eps " << num(eps.real()) << " "
        << num(eps.imag()) << ": " << bounded_mask(r).count() << " bounded, " << b.count() << " boundary pixels\n";
    return kExitOk;
}

int run_implode(const RunConfig& cfg, const CommandOptions& opt, std::ostream& log, DiscontinuityReport* out) {
    if (!prepare(cfg, opt, log)) return kExitConfig;
    ReportOptions ro;
    ro.m_max = cfg.lavaurs.m_max;
    ro.orbit_ball = cfg.lavaurs.orbit_ball;
    ro.threads = opt.threads;
    ro.trap = cfg.region;
    ro.require_witness = false;
    DiscontinuityReport rep;
    try {
        rep = discontinuity_report(cfg.map, cfg.sequence(), cfg.grid, ro);
    } catch (const Error& e) {
        log << "implode error: " << e.what() << "\n";
        return e.code() == ErrorCode::InvalidGrid || e.code() == ErrorCode::InvalidSequence ? kExitConfig
                                                                                            : kExitFailure;
    }
    const fs::path dir(opt.out_dir);
    const std::string ts = metadata_timestamp(cfg);
    auto emit = [&](Raster& r, const std::string& name) {
        r.meta.timestamp = ts;
        const BinaryRaster b = boundary_slice(r);
        auto os = open_out(dir / (name + ".ppm"));
        write_ppm(os, r, &b);
        write_sidecar(dir / (name + ".txt"), cfg, r, b.count());
    };
    emit(rep.k0, "K0");
    for (std::size_t v = 0; v < rep.k_eps.size(); ++v) emit(rep.k_eps[v], "K_nu" + std::to_string(v));
    {
        auto os = open_out(dir / "limsup.ppm");
        write_ppm(os, rep.limsup);
    }
    {
        auto os = open_out(dir / "sequence.csv");
        os << "nu,n,eps_re,eps_im\n";
        for (std::size_t v = 0; v < rep.sequence.entries.size(); ++v)
            os << v << ',' << rep.sequence.entries[v].n << ',' << rep.sequence.entries[v].eps.real() << ','
               << rep.sequence.entries[v].eps.imag() << '\n';
    }
    {
        auto os = open_out(dir / "hausdorff.csv");
        os << "nu,d_Keps_to_K0,d_K0_to_Keps\n";
        for (std::size_t v = 0; v < rep.hausdorff.size(); ++v)
            os << v << ',' << rep.hausdorff[v].d_ab << ',' << rep.hausdorff[v].d_ba << '\n';
    }
    {
        auto os = open_out(dir / "witnesses.csv");
        os << "i,j,x_re,x_im,y_re,y_im,depth,jump_lower_bound";
        for (std::size_t v = 0; v < rep.k_eps.size(); ++v) os << ",escape_nu" << v;
        os << '\n';
        for (const auto& w : rep.witnesses) {
            os << w.i << ',' << w.j << ',' << w.p.x.real() << ',' << w.p.x.imag() << ',' << w.p.y.real() << ','
               << w.p.y.imag() << ',' << w.m << ',' << w.jump_lower_bound;
            for (auto k : w.escape) os << ',' << k;
            os << '\n';
        }
    }
    const bool consistent = rep.consistent();
    const bool witnessed = !rep.witnesses.empty();
    {
        auto os = open_out(dir / "report.txt");
        os << "config_hash " << hex(cfg.hash()) << "\n"
           << "grid_hash " << hex(cfg.grid.hash()) << "\n"
           << "alpha " << num(rep.sequence.alpha.real()) << ' ' << num(rep.sequence.alpha.imag()) << "\n"
           << "ladder_length " << rep.sequence.entries.size() << "\n"
           << "k0_pixels " << bounded_mask(rep.k0).count() << "\n"
           << "limsup_pixels " << rep.limsup.count() << "\n"
           << "usc_violations " << rep.usc_violations << "\n"
           << "certified_out " << rep.certified_out << "\n"
           << "conflicts " << rep.conflicts << "\n"
           << "band_conflicts " << rep.band_conflicts << "\n"
           << "undetermined " << rep.undetermined << "\n"
           << "witnesses " << rep.witnesses.size() << "\n"
           << "max_jump " << num(rep.max_jump) << "\n"
           << "consistent " << (consistent ? "yes" : "no") << "\n"
           << "status " << (witnessed ? (consistent ? "discontinuity certified" : "inconsistent") : "InconclusiveScene")
           << "\n"
           << "timestamp " << ts << "\n";
    }
    log << "K0 " << bounded_mask(rep.k0).count() << " px, limsup " << rep.limsup.count() << " px, certified out "
        << rep.certified_out << ", witnesses " << rep.witnesses.size() << ", max jump " << rep.max_jump
        << ", USC violations " << rep.usc_violations << ", conflicts " << rep.conflicts << " (" << rep.band_conflicts
        << " in band)\n";
    if (!witnessed) log << "InconclusiveScene: no witness pixel certified\n";
    if (out) *out = std::move(rep);
    return witnessed && consistent ? kExitOk : kExitFailure;
}

int cmd_verify(const CommandOptions& opt, std::ostream& log) {
    return with_config(opt, log, [&](const RunConfig& c) { return run_verify(c, opt, log); });
}

int cmd_render(const CommandOptions& opt, std::ostream& log) {
    return with_config(opt, log, [&](const RunConfig& c) { return run_render(c, opt, log); });
}

int cmd_implode(const CommandOptions& opt, std::ostream& log, DiscontinuityReport* report) {
    return with_config(opt, log, [&](const RunConfig& c) { return run_implode(c, opt, log, report); });
}

}  // namespace implab::cli
