#include "aai/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

#include "aai/errors.hpp"

namespace aai {

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    auto e = s.find_last_not_of(" \t\r\n");
    return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

struct RawValue {
    std::string text;
    int line = 0;
};

double parse_number(const RawValue& rv, const std::string& key) {
    std::string s = trim(rv.text);
    double scale = 1.0;
    if (s.size() >= 2 && s.compare(s.size() - 2, 2, "pi") == 0) {
        scale = M_PI;
        s = trim(s.substr(0, s.size() - 2));
        if (!s.empty() && s.back() == '*')
            s = trim(s.substr(0, s.size() - 1));
        if (s.empty())
            return M_PI;
        if (s == "-")
            return -M_PI;
    }
    double v = 0.0;
    const char* begin = s.data();
    const char* end = s.data() + s.size();
    auto [p, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc() || p != end)
        throw TypeMismatch("line " + std::to_string(rv.line) + ": expected a number for '" + key +
                           "', got '" + trim(rv.text) + "'");
    return v * scale;
}

int parse_int(const RawValue& rv, const std::string& key) {
    const double v = parse_number(rv, key);
    const int i = int(std::lround(v));
    if (std::abs(v - i) > 1e-12)
        throw TypeMismatch("line " + std::to_string(rv.line) + ": expected an integer for '" + key +
                           "', got '" + trim(rv.text) + "'");
    return i;
}

bool parse_bool(const RawValue& rv, const std::string& key) {
    std::string s = trim(rv.text);
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    if (s == "true" || s == "1" || s == "yes" || s == "on")
        return true;
    if (s == "false" || s == "0" || s == "no" || s == "off")
        return false;
    throw TypeMismatch("line " + std::to_string(rv.line) + ": expected a boolean for '" + key +
                       "', got '" + trim(rv.text) + "'");
}

const char* kKnownKeys[] = {
    "dimensionless", "omega", "mass", "lambda", "beta", "t", "x_i", "v_i", "amplitude",
    "kappa_ai", "kappa_bi", "kappa_af", "kappa_bf", "xi", "methods", "dx", "dt",
    "padding", "quad_order", "samples", "out", "threads", "force_oracle",
};

} // namespace

RunConfig parse_config(const std::string& text) {
    std::map<std::string, RawValue> raw;
    std::istringstream stream(text);
    std::string line;
    int line_no = 0;
    while (std::getline(stream, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        const bool known =
            std::any_of(std::begin(kKnownKeys), std::end(kKnownKeys),
                        [&](const char* k) { return key == k; });
        if (!known)
            throw UnknownKey("line " + std::to_string(line_no) + ": unknown key '" + key + "'");
        if (raw.count(key))
            throw ConfigError("line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
        raw[key] = {value, line_no};
    }

    RunConfig cfg;
    auto take = [&](const char* key) -> const RawValue* {
        auto it = raw.find(key);
        return it == raw.end() ? nullptr : &it->second;
    };

    if (const RawValue* rv = take("dimensionless"))
        cfg.dimensionless = parse_bool(*rv, "dimensionless");
    double omega = 1.0, mass = 1.0;
    if (const RawValue* rv = take("omega"))
        omega = parse_number(*rv, "omega");
    if (const RawValue* rv = take("mass"))
        mass = parse_number(*rv, "mass");
    if (cfg.dimensionless && (omega != 1.0 || mass != 1.0))
        throw ConfigError("omega/mass require dimensionless = false");
    cfg.trap = TrapSpec(mass, omega);

    if (const RawValue* rv = take("lambda"))
        cfg.lambda = parse_int(*rv, "lambda");
    else
        throw MissingRequired("missing required key 'lambda'");
    if (cfg.lambda < 3)
        throw ConfigError("lambda must be >= 3");
    if (const RawValue* rv = take("beta"))
        cfg.beta = parse_number(*rv, "beta");
    else
        throw MissingRequired("missing required key 'beta'");
    if (const RawValue* rv = take("t"))
        cfg.t = parse_number(*rv, "t");
    else
        throw MissingRequired("missing required key 't'");
    if (!(cfg.t > 0.0))
        throw ConfigError("t must be positive");

    if (const RawValue* rv = take("x_i"))
        cfg.x_i = parse_number(*rv, "x_i");
    if (const RawValue* rv = take("v_i")) {
        cfg.v_i = parse_number(*rv, "v_i");
        cfg.v_i_set = true;
    }
    if (const RawValue* rv = take("amplitude")) {
        cfg.amplitude = parse_number(*rv, "amplitude");
        cfg.amplitude_set = true;
    }
    const bool any_kappa = take("kappa_ai") || take("kappa_bi") || take("kappa_af") ||
                           take("kappa_bf");
    if (any_kappa) {
        cfg.kappas_set = true;
        if (const RawValue* rv = take("kappa_ai"))
            cfg.kappa_ai = parse_number(*rv, "kappa_ai");
        if (const RawValue* rv = take("kappa_bi"))
            cfg.kappa_bi = parse_number(*rv, "kappa_bi");
        if (const RawValue* rv = take("kappa_af"))
            cfg.kappa_af = parse_number(*rv, "kappa_af");
        if (const RawValue* rv = take("kappa_bf"))
            cfg.kappa_bf = parse_number(*rv, "kappa_bf");
    }
    if (const RawValue* rv = take("xi"))
        cfg.xi = parse_number(*rv, "xi");

    if (const RawValue* rv = take("methods")) {
        cfg.methods.clear();
        std::string item;
        std::istringstream ms(rv->text);
        while (std::getline(ms, item, ',')) {
            item = trim(item);
            if (!item.empty())
                cfg.methods.push_back(item);
        }
        if (cfg.methods.empty())
            throw TypeMismatch("line " + std::to_string(rv->line) + ": empty methods list");
    }

    if (const RawValue* rv = take("dx"))
        cfg.dx = parse_number(*rv, "dx");
    if (const RawValue* rv = take("dt"))
        cfg.dt = parse_number(*rv, "dt");
    if (const RawValue* rv = take("padding"))
        cfg.padding = parse_number(*rv, "padding");
    if (const RawValue* rv = take("quad_order"))
        cfg.quad_order = parse_int(*rv, "quad_order");
    if (const RawValue* rv = take("samples")) {
        cfg.samples = parse_int(*rv, "samples");
        if (cfg.samples < 2)
            throw ConfigError("samples must be >= 2");
    }
    if (const RawValue* rv = take("out"))
        cfg.out = trim(rv->text);
    if (const RawValue* rv = take("threads"))
        cfg.threads = parse_int(*rv, "threads");
    if (const RawValue* rv = take("force_oracle"))
        cfg.force_oracle = parse_bool(*rv, "force_oracle");

    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

PhaseSpacePoint RunConfig::trajectory_initial() const {
    PhaseSpacePoint p{x_i, v_i};
    if (amplitude_set && !v_i_set)
        p.v = amplitude * trap.ell() * trap.omega; // amplitude in ell
    return p;
}

InterferometerSequence RunConfig::sequence() const {
    InterferometerSequence seq;
    seq.initial = {x_i, v_i};
    // dimensionless mode reads t as omega*t; trap.omega is 1 there, so the
    // division is the identity and physical mode passes t through unscaled
    seq.hold_t = dimensionless ? t / trap.omega : t;
    seq.xi = xi;
    if (kappas_set) {
        seq.kappa_ai = kappa_ai;
        seq.kappa_bi = kappa_bi;
        seq.kappa_af = kappa_af;
        seq.kappa_bf = kappa_bf;
    } else if (amplitude_set) {
        const double kappa = trap.mass * trap.omega * amplitude * trap.ell() / kHbar;
        seq.kappa_ai = kappa;
        seq.kappa_bi = -kappa;
        seq.kappa_af = kappa;
        seq.kappa_bf = -kappa;
    }
    return seq;
}

RunOptions RunConfig::run_options() const {
    RunOptions opts;
    opts.grid_dx = dx;
    opts.grid_dt = dt;
    opts.grid_padding = padding;
    opts.quad_order = quad_order;
    opts.force_oracle = force_oracle;
    return opts;
}

int effective_threads(int config_threads) {
    int n = config_threads > 0 ? config_threads : int(std::thread::hardware_concurrency());
    if (n < 1)
        n = 1;
    if (const char* env = std::getenv("AAI_THREADS")) {
        const int cap = std::atoi(env);
        if (cap > 0)
            n = std::min(n, cap);
    }
    return n;
}

} // namespace aai
