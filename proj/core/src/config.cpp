#include "drbsde/config.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "drbsde/errors.hpp"

namespace drbsde {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

using Section = std::map<std::string, std::string>;
using Raw = std::map<std::string, Section>;

Raw tokenize(const std::string& text, const std::string& origin) {
    Raw raw;
    std::string section = "";
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw InvalidArgumentError(origin + ":" + std::to_string(lineno) +
                                           ": malformed section header");
            section = trim(line.substr(1, line.size() - 2));
            raw[section];
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw InvalidArgumentError(origin + ":" + std::to_string(lineno) +
                                       ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw InvalidArgumentError(origin + ":" + std::to_string(lineno) + ": empty key");
        raw[section][key] = value;
    }
    return raw;
}

struct Reader {
    const Raw& raw;
    const std::string& origin;

    const std::string* find(const std::string& section, const std::string& key) const {
        auto s = raw.find(section);
        if (s == raw.end()) return nullptr;
        auto k = s->second.find(key);
        if (k == s->second.end()) return nullptr;
        return &k->second;
    }
    [[noreturn]] void fail(const std::string& section, const std::string& key,
                           const std::string& why) const {
        throw InvalidArgumentError(origin + ": [" + section + "] " + key + ": " + why);
    }

    double number(const std::string& section, const std::string& key, double fallback) const {
        const std::string* v = find(section, key);
        if (!v) return fallback;
        char* end = nullptr;
        const double x = std::strtod(v->c_str(), &end);
        if (end != v->c_str() + v->size()) fail(section, key, "not a number: '" + *v + "'");
        return x;
    }
    std::size_t index(const std::string& section, const std::string& key,
                      std::size_t fallback) const {
        const double x = number(section, key, static_cast<double>(fallback));
        if (x < 0 || x != std::floor(x)) fail(section, key, "not a nonnegative integer");
        return static_cast<std::size_t>(x);
    }
    std::string text_or(const std::string& section, const std::string& key,
                        const std::string& fallback) const {
        const std::string* v = find(section, key);
        return v ? *v : fallback;
    }
    bool flag(const std::string& section, const std::string& key, bool fallback) const {
        const std::string* v = find(section, key);
        if (!v) return fallback;
        if (*v == "on" || *v == "true" || *v == "1") return true;
        if (*v == "off" || *v == "false" || *v == "0") return false;
        fail(section, key, "expected on/off");
    }
    std::optional<Expression> expression(const std::string& section,
                                         const std::string& key) const {
        const std::string* v = find(section, key);
        if (!v || *v == "none") return std::nullopt;
        try {
            return Expression::parse(*v);
        } catch (const InvalidArgumentError& e) {
            fail(section, key, e.what());
        }
    }
    std::vector<double> number_list(const std::string& section, const std::string& key) const {
        const std::string* v = find(section, key);
        std::vector<double> out;
        if (!v) return out;
        std::istringstream in(*v);
        std::string token;
        while (std::getline(in, token, ',')) {
            token = trim(token);
            if (token.empty()) continue;
            char* end = nullptr;
            const double x = std::strtod(token.c_str(), &end);
            if (end != token.c_str() + token.size())
                fail(section, key, "bad list entry '" + token + "'");
            out.push_back(x);
        }
        return out;
    }
    /// "t0:v0, t1:v1, ..." piecewise-linear knots.
    std::optional<PiecewiseLinear> knots(const std::string& section,
                                         const std::string& key) const {
        const std::string* v = find(section, key);
        if (!v) return std::nullopt;
        PiecewiseLinear pl{{}, {}};
        std::istringstream in(*v);
        std::string token;
        while (std::getline(in, token, ',')) {
            token = trim(token);
            if (token.empty()) continue;
            const std::size_t colon = token.find(':');
            if (colon == std::string::npos) fail(section, key, "expected t:v pairs");
            char *e1 = nullptr, *e2 = nullptr;
            const std::string ts = trim(token.substr(0, colon));
            const std::string vs = trim(token.substr(colon + 1));
            const double tv = std::strtod(ts.c_str(), &e1);
            const double vv = std::strtod(vs.c_str(), &e2);
            if (e1 != ts.c_str() + ts.size() || e2 != vs.c_str() + vs.size())
                fail(section, key, "bad knot '" + token + "'");
            pl.t.push_back(tv);
            pl.v.push_back(vv);
        }
        for (std::size_t i = 1; i < pl.t.size(); ++i)
            if (!(pl.t[i] > pl.t[i - 1])) fail(section, key, "knot times must increase");
        if (pl.t.empty()) return std::nullopt;
        return pl;
    }
};

}  // namespace

const char* mode_name(RunMode mode) {
    switch (mode) {
        case RunMode::solve: return "solve";
        case RunMode::penalize: return "penalize";
        case RunMode::agree: return "agree";
        case RunMode::compare: return "compare";
        case RunMode::study: return "study";
        case RunMode::check: return "check";
        case RunMode::mokobodzki: return "mokobodzki";
        case RunMode::monotone: return "monotone";
    }
    return "solve";
}

std::optional<RunMode> mode_from_name(const std::string& name) {
    static const std::pair<const char*, RunMode> table[] = {
        {"solve", RunMode::solve},     {"penalize", RunMode::penalize},
        {"agree", RunMode::agree},     {"compare", RunMode::compare},
        {"study", RunMode::study},     {"check", RunMode::check},
        {"mokobodzki", RunMode::mokobodzki}, {"monotone", RunMode::monotone},
    };
    for (const auto& [n, m] : table)
        if (name == n) return m;
    return std::nullopt;
}

std::vector<double> ExperimentConfig::effective_schedule() const {
    if (!penalty_schedule.empty()) return penalty_schedule;
    return default_penalty_schedule(n_max);
}

ProblemData ExperimentConfig::build_problem() const {
    if (!terminal)
        throw InvalidArgumentError("config: [problem] terminal: missing terminal expression");
    ProblemData p;
    const Expression term = *terminal;
    const double T = horizon;
    p.terminal = [term, T](double b) { return term.eval(T, b); };
    if (lower) {
        const Expression e = *lower;
        p.lower = [e](double t, double b) { return e.eval(t, b); };
    }
    if (upper) {
        const Expression e = *upper;
        p.upper = [e](double t, double b) { return e.eval(t, b); };
    }
    auto [plus, minus] = jordan_split(forcing);
    p.v_plus = std::move(plus);
    p.v_minus = std::move(minus);
    p.exponent = exponent;
    return p;
}

ProblemData ExperimentConfig::build_problem2() const {
    ExperimentConfig alt = *this;
    if (terminal2) alt.terminal = terminal2;
    if (lower2) alt.lower = lower2;
    if (upper2) alt.upper = upper2;
    if (forcing2) alt.forcing = *forcing2;
    return alt.build_problem();
}

ExperimentConfig parse_config_text(const std::string& text, const std::string& origin) {
    const Raw raw = tokenize(text, origin);
    for (const auto& [section, _] : raw) {
        if (section != "problem" && section != "problem2" && section != "generator" &&
            section != "generator2" && section != "run" && section != "output")
            throw InvalidArgumentError(origin + ": unknown section [" + section + "]");
    }
    Reader r{raw, origin};
    ExperimentConfig cfg;

    cfg.horizon = r.number("problem", "T", cfg.horizon);
    if (!(cfg.horizon > 0.0)) r.fail("problem", "T", "must be positive");
    cfg.steps = r.index("problem", "N", cfg.steps);
    if (cfg.steps < 1) r.fail("problem", "N", "must be >= 1");
    cfg.exponent = r.number("problem", "p", cfg.exponent);
    if (!(cfg.exponent > 1.0)) r.fail("problem", "p", "must be > 1");
    cfg.lower = r.expression("problem", "lower");
    cfg.upper = r.expression("problem", "upper");
    cfg.terminal = r.expression("problem", "terminal");
    if (auto pl = r.knots("problem", "v_knots")) cfg.forcing = *pl;

    cfg.lower2 = r.expression("problem2", "lower");
    cfg.upper2 = r.expression("problem2", "upper");
    cfg.terminal2 = r.expression("problem2", "terminal");
    cfg.forcing2 = r.knots("problem2", "v_knots");

    cfg.generator_name = r.text_or("generator", "name", cfg.generator_name);
    if (const std::string* v = r.find("generator", "g1")) cfg.part1 = *v;
    if (const std::string* v = r.find("generator", "g2")) cfg.part2 = *v;
    if (const std::string* v = r.find("generator2", "name")) cfg.generator2_name = *v;

    if (const std::string* v = r.find("run", "mode")) {
        auto mode = mode_from_name(*v);
        if (!mode) r.fail("run", "mode", "unknown mode '" + *v + "'");
        cfg.mode = *mode;
        cfg.mode_given = true;
    }
    cfg.seed = static_cast<std::uint64_t>(r.number("run", "seed", 0.0));
    cfg.tol = r.number("run", "tol", cfg.tol);
    cfg.penalty_schedule = r.number_list("run", "n_schedule");
    cfg.n_max = r.number("run", "n_max", cfg.n_max);
    if (const std::string* v = r.find("run", "scheme")) {
        if (*v == "lower")
            cfg.scheme = PenaltyKind::penalize_lower_reflect_upper;
        else if (*v == "upper")
            cfg.scheme = PenaltyKind::penalize_upper_reflect_lower;
        else if (*v == "both")
            cfg.scheme = PenaltyKind::penalize_both;
        else
            r.fail("run", "scheme", "expected lower/upper/both");
    }
    for (double n : r.number_list("run", "N_schedule")) {
        if (n < 1 || n != std::floor(n)) r.fail("run", "N_schedule", "entries must be integers >= 1");
        cfg.grid_schedule.push_back(static_cast<std::size_t>(n));
    }
    cfg.samples = r.index("run", "samples", cfg.samples);
    auto range = [&](const char* key, double& lo, double& hi) {
        auto list = r.number_list("run", key);
        if (list.empty()) return;
        if (list.size() != 2 || !(list[0] < list[1])) r.fail("run", key, "expected 'lo, hi'");
        lo = list[0];
        hi = list[1];
    };
    range("box_t", cfg.box.t_min, cfg.box.t_max);
    range("box_b", cfg.box.b_min, cfg.box.b_max);
    range("box_y", cfg.box.y_min, cfg.box.y_max);
    range("box_z", cfg.box.z_min, cfg.box.z_max);
    cfg.x_candidate = r.expression("run", "x_candidate");
    if (const std::string* v = r.find("run", "direction")) {
        if (*v == "up")
            cfg.direction = MonotoneDirection::up;
        else if (*v == "down")
            cfg.direction = MonotoneDirection::down;
        else
            r.fail("run", "direction", "expected up/down");
    }

    cfg.out_dir = r.text_or("output", "dir", cfg.out_dir);
    cfg.write_csv = r.flag("output", "csv", cfg.write_csv);
    cfg.write_plot = r.flag("output", "plot", cfg.write_plot);
    return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config_text(buffer.str(), path);
}

}  // namespace drbsde
