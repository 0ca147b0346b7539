#include "implab/cli/config.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace implab::cli {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, sep)) {
        cur = trim(cur);
        if (!cur.empty()) out.push_back(cur);
    }
    return out;
}

std::vector<double> reals(const std::string& key, const std::string& v) {
    std::istringstream is(v);
    std::vector<double> out;
    std::string tok;
    while (is >> tok) {
        std::size_t used = 0;
        double d = 0.0;
        try {
            d = std::stod(tok, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != tok.size()) throw ConfigError(key + ": not a number: '" + tok + "'");
        out.push_back(d);
    }
    return out;
}

std::vector<double> exactly(const std::string& key, const std::string& v, std::size_t n) {
    auto r = reals(key, v);
    if (r.size() != n) throw ConfigError(key + ": expected " + std::to_string(n) + " numbers");
    return r;
}

double real_of(const std::string& key, const std::string& v) { return exactly(key, v, 1)[0]; }

std::size_t count_of(const std::string& key, const std::string& v) {
    const double d = real_of(key, v);
    if (!(d >= 0.0) || d != std::floor(d) || d > 1e15) throw ConfigError(key + ": expected a non-negative integer");
    return static_cast<std::size_t>(d);
}

Complex complex_of(const std::string& key, const std::string& v) {
    auto r = exactly(key, v, 2);
    return {r[0], r[1]};
}

ComplexPoint point_of(const std::string& key, const std::string& v) {
    auto r = exactly(key, v, 4);
    return {{r[0], r[1]}, {r[2], r[3]}};
}

std::vector<std::size_t> counts_of(const std::string& key, const std::string& v) {
    std::vector<std::size_t> out;
    std::string flat;
    for (const auto& item : split(v, ',')) flat += item + ' ';
    for (double d : reals(key, flat)) {
        if (!(d >= 0.0) || d != std::floor(d)) throw ConfigError(key + ": expected non-negative integers");
        out.push_back(static_cast<std::size_t>(d));
    }
    return out;
}

std::vector<Monomial> monomials_of(const std::string& key, const std::string& v) {
    std::vector<Monomial> out;
    for (const auto& row : split(v, ',')) {
        auto r = exactly(key, row, 4);
        if (r[0] != std::floor(r[0]) || r[1] != std::floor(r[1]))
            throw ConfigError(key + ": exponents must be integers");
        out.push_back({static_cast<int>(r[0]), static_cast<int>(r[1]), {r[2], r[3]}});
    }
    return out;
}

using Setter = std::function<void(RunConfig&, const std::string& key, const std::string& value)>;

const std::map<std::string, Setter>& setters() {
    static const std::map<std::string, Setter> table = {
        {"map.q", [](RunConfig& c, auto& k, auto& v) { c.map.q = complex_of(k, v); }},
        {"map.r", [](RunConfig& c, auto& k, auto& v) { c.map.r = complex_of(k, v); }},
        {"map.rho", [](RunConfig& c, auto& k, auto& v) { c.map.rho = real_of(k, v); }},
        {"map.alpha_extra", [](RunConfig& c, auto& k, auto& v) { c.map.alpha_extra = monomials_of(k, v); }},
        {"map.beta_extra", [](RunConfig& c, auto& k, auto& v) { c.map.beta_extra = monomials_of(k, v); }},
        {"map.eps2_alpha", [](RunConfig& c, auto& k, auto& v) { c.map.eps2_alpha = complex_of(k, v); }},
        {"map.eps2_beta", [](RunConfig& c, auto& k, auto& v) { c.map.eps2_beta = complex_of(k, v); }},
        {"map.inverse_radius", [](RunConfig& c, auto& k, auto& v) { c.map.inverse_radius = real_of(k, v); }},

        {"region.gamma", [](RunConfig& c, auto& k, auto& v) { c.region.gamma = real_of(k, v); }},
        {"region.gamma_prime", [](RunConfig& c, auto& k, auto& v) { c.region.gamma_prime = real_of(k, v); }},
        {"region.R", [](RunConfig& c, auto& k, auto& v) { c.region.R = real_of(k, v); }},
        {"region.s", [](RunConfig& c, auto& k, auto& v) { c.region.s = real_of(k, v); }},
        {"region.rho_prime", [](RunConfig& c, auto& k, auto& v) { c.region.rho_prime = real_of(k, v); }},
        {"region.rho_dblprime", [](RunConfig& c, auto& k, auto& v) { c.region.rho_dblprime = real_of(k, v); }},
        {"region.c_eps", [](RunConfig& c, auto& k, auto& v) { c.region.c_eps = real_of(k, v); }},

        {"grid.origin", [](RunConfig& c, auto& k, auto& v) { c.grid.origin = point_of(k, v); }},
        {"grid.axis_u", [](RunConfig& c, auto& k, auto& v) { c.grid.axis_u = point_of(k, v); }},
        {"grid.axis_v", [](RunConfig& c, auto& k, auto& v) { c.grid.axis_v = point_of(k, v); }},
        {"grid.nx", [](RunConfig& c, auto& k, auto& v) { c.grid.nx = count_of(k, v); }},
        {"grid.ny", [](RunConfig& c, auto& k, auto& v) { c.grid.ny = count_of(k, v); }},
        {"grid.escape_radius", [](RunConfig& c, auto& k, auto& v) { c.grid.escape_radius = real_of(k, v); }},
        {"grid.max_iter", [](RunConfig& c, auto& k, auto& v) { c.grid.max_iter = count_of(k, v); }},

        {"lavaurs.alpha", [](RunConfig& c, auto& k, auto& v) { c.lavaurs.alpha = complex_of(k, v); }},
        {"lavaurs.n_list", [](RunConfig& c, auto& k, auto& v) { c.lavaurs.n_list = counts_of(k, v); }},
        {"lavaurs.tol", [](RunConfig& c, auto& k, auto& v) { c.lavaurs.tol = real_of(k, v); }},
        {"lavaurs.m_max", [](RunConfig& c, auto& k, auto& v) { c.lavaurs.m_max = count_of(k, v); }},
        {"lavaurs.orbit_ball", [](RunConfig& c, auto& k, auto& v) { c.lavaurs.orbit_ball = real_of(k, v); }},

        {"verify.fatou_points", [](RunConfig& c, auto& k, auto& v) { c.verify.fatou_points = count_of(k, v); }},
        {"verify.fatou_rmin", [](RunConfig& c, auto& k, auto& v) { c.verify.fatou_rmin = real_of(k, v); }},
        {"verify.fatou_rmax", [](RunConfig& c, auto& k, auto& v) { c.verify.fatou_rmax = real_of(k, v); }},
        {"verify.window_points", [](RunConfig& c, auto& k, auto& v) { c.verify.window_points = count_of(k, v); }},
        {"verify.window_rmin", [](RunConfig& c, auto& k, auto& v) { c.verify.window_rmin = real_of(k, v); }},
        {"verify.window_rmax", [](RunConfig& c, auto& k, auto& v) { c.verify.window_rmax = real_of(k, v); }},
        {"verify.eps_denominators",
         [](RunConfig& c, auto& k, auto& v) { c.verify.eps_denominators = counts_of(k, v); }},
        {"verify.ladder", [](RunConfig& c, auto& k, auto& v) { c.verify.ladder = counts_of(k, v); }},
        {"verify.ladder_offset", [](RunConfig& c, auto& k, auto& v) { c.verify.ladder_offset = count_of(k, v); }},
        {"verify.almost_points",
         [](RunConfig& c, auto& k, auto& v) {
             c.verify.almost_points.clear();
             for (const auto& s : split(v, ',')) c.verify.almost_points.push_back(point_of(k, s));
         }},
        {"verify.line_points",
         [](RunConfig& c, auto& k, auto& v) {
             c.verify.line_points.clear();
             for (const auto& s : split(v, ',')) c.verify.line_points.push_back(complex_of(k, s));
         }},
        {"verify.lavaurs_points",
         [](RunConfig& c, auto& k, auto& v) {
             c.verify.lavaurs_points.clear();
             for (const auto& s : split(v, ',')) c.verify.lavaurs_points.push_back(point_of(k, s));
         }},

        {"run.seed", [](RunConfig& c, auto& k, auto& v) { c.seed = count_of(k, v); }},
    };
    return table;
}

void put(std::string& s, double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    s += buf;
}
void put(std::string& s, Complex z) {
    put(s, z.real());
    s += ' ';
    put(s, z.imag());
}
void put(std::string& s, const ComplexPoint& p) {
    put(s, p.x);
    s += ' ';
    put(s, p.y);
}
template <class T>
void put_list(std::string& s, const std::vector<T>& v) {
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ", ";
        if constexpr (std::is_same_v<T, std::size_t>)
            s += std::to_string(v[i]);
        else
            put(s, v[i]);
    }
}
void put_monomials(std::string& s, const std::vector<Monomial>& v) {
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ", ";
        s += std::to_string(v[i].i) + ' ' + std::to_string(v[i].j) + ' ';
        put(s, v[i].c);
    }
}

}  // namespace

void RunConfig::validate() const {
    map.validate();
    const RegionConfig cfg = region_config();
    grid.validate();
    if (lavaurs.n_list.size() < 2) throw ConfigError("lavaurs.n_list needs at least two entries");
    make_alpha_sequence(lavaurs.alpha, lavaurs.n_list, cfg.c_eps());
    if (!(lavaurs.tol > 0.0)) throw ConfigError("lavaurs.tol must be positive");
    if (!(lavaurs.orbit_ball > 0.0)) throw ConfigError("lavaurs.orbit_ball must be positive");
    if (verify.fatou_points == 0 || verify.window_points == 0) throw ConfigError("empty verification sample");
    if (!(0.0 < verify.fatou_rmin && verify.fatou_rmin < verify.fatou_rmax && verify.fatou_rmax <= region.R))
        throw ConfigError("verify.fatou_rmin/rmax must satisfy 0 < rmin < rmax <= R");
    if (!(0.0 < verify.window_rmin && verify.window_rmin < verify.window_rmax && verify.window_rmax <= region.R))
        throw ConfigError("verify.window_rmin/rmax must satisfy 0 < rmin < rmax <= R");
    if (verify.eps_denominators.empty() || verify.ladder.size() < 2)
        throw ConfigError("verify ladders are too short");
    for (auto d : verify.eps_denominators)
        if (d == 0) throw ConfigError("verify.eps_denominators must be positive");
    for (auto m : verify.ladder)
        if (m == 0) throw ConfigError("verify.ladder entries must be positive");
}

AlphaSequence RunConfig::sequence() const {
    return make_alpha_sequence(lavaurs.alpha, lavaurs.n_list, region.c_eps);
}

std::string RunConfig::canonical() const {
    std::string s;
    auto line = [&](const char* key, auto&& emit) {
        s += key;
        s += " = ";
        emit();
        s += '\n';
    };
    line("map.q", [&] { put(s, map.q); });
    line("map.r", [&] { put(s, map.r); });
    line("map.rho", [&] { put(s, map.rho); });
    line("map.alpha_extra", [&] { put_monomials(s, map.alpha_extra); });
    line("map.beta_extra", [&] { put_monomials(s, map.beta_extra); });
    line("map.eps2_alpha", [&] { put(s, map.eps2_alpha); });
    line("map.eps2_beta", [&] { put(s, map.eps2_beta); });
    line("map.inverse_radius", [&] { put(s, map.inverse_radius); });
    line("region.gamma", [&] { put(s, region.gamma); });
    line("region.gamma_prime", [&] { put(s, region.gamma_prime); });
    line("region.R", [&] { put(s, region.R); });
    line("region.s", [&] { put(s, region.s); });
    line("region.rho_prime", [&] { put(s, region.rho_prime); });
    line("region.rho_dblprime", [&] { put(s, region.rho_dblprime); });
    line("region.c_eps", [&] { put(s, region.c_eps); });
    s += "grid = " + grid.canonical() + '\n';
    line("lavaurs.alpha", [&] { put(s, lavaurs.alpha); });
    line("lavaurs.n_list", [&] { put_list(s, lavaurs.n_list); });
    line("lavaurs.tol", [&] { put(s, lavaurs.tol); });
    line("lavaurs.m_max", [&] { s += std::to_string(lavaurs.m_max); });
    line("lavaurs.orbit_ball", [&] { put(s, lavaurs.orbit_ball); });
    line("verify.fatou", [&] {
        s += std::to_string(verify.fatou_points) + ' ';
        put(s, verify.fatou_rmin);
        s += ' ';
        put(s, verify.fatou_rmax);
    });
    line("verify.window", [&] {
        s += std::to_string(verify.window_points) + ' ';
        put(s, verify.window_rmin);
        s += ' ';
        put(s, verify.window_rmax);
    });
    line("verify.eps_denominators", [&] { put_list(s, verify.eps_denominators); });
    line("verify.ladder", [&] { put_list(s, verify.ladder); });
    line("verify.ladder_offset", [&] { s += std::to_string(verify.ladder_offset); });
    line("verify.almost_points", [&] { put_list(s, verify.almost_points); });
    line("verify.line_points", [&] { put_list(s, verify.line_points); });
    line("verify.lavaurs_points", [&] { put_list(s, verify.lavaurs_points); });
    line("run.seed", [&] { s += std::to_string(seed); });
    return s;
}

RunConfig default_config() {
    RunConfig c;
    c.map = PolyMap2::default_family();
    // Square window on the invariant line y = 0 containing K(F_0).
    c.grid.origin = {{-1.5, -1.1}, 0.0};
    c.grid.axis_u = {{2.2, 0.0}, 0.0};
    c.grid.axis_v = {{0.0, 2.2}, 0.0};
    c.grid.nx = c.grid.ny = 512;
    c.grid.escape_radius = 0.0;
    c.grid.max_iter = 2000;
    c.verify.line_points = {{-0.22, 0.0}, {-0.2, 0.0}, {-0.18, 0.002}, {-0.16, -0.002}, {-0.15, 0.0}};
    c.verify.lavaurs_points = {{{-0.2, 0.0}, {0.001, 0.0}},
                               {{-0.18, 0.002}, {0.0, 0.0005}},
                               {{-0.16, 0.0}, {-0.001, 0.0}},
                               {{-0.22, 0.0}, {0.0015, 0.0005}},
                               {{-0.15, -0.001}, {0.0008, 0.0}}};
    c.verify.almost_points = c.verify.lavaurs_points;
    return c;
}

RunConfig parse_config(std::istream& in) {
    RunConfig c = default_config();
    std::string raw, section;
    std::size_t lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        const auto hash = raw.find('#');
        const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (line.empty()) continue;
        const std::string where = "line " + std::to_string(lineno) + ": ";
        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError(where + "unterminated section header");
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError(where + "expected key = value");
        if (section.empty()) throw ConfigError(where + "key outside of a section");
        const std::string key = section + "." + trim(line.substr(0, eq));
        const auto it = setters().find(key);
        if (it == setters().end()) throw ConfigError(where + "unknown key '" + key + "'");
        it->second(c, key, trim(line.substr(eq + 1)));
    }
    return c;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    return parse_config(in);
}

}  // namespace implab::cli
