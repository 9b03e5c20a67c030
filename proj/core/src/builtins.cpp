#include "drbsde/builtins.hpp"

#include <cmath>
#include <cstdlib>

#include "drbsde/errors.hpp"

namespace drbsde {

namespace {

const double kDelta = std::exp(-1.0);  // join point of the modulus, h'(delta-) = 0

EnvelopeFn const_envelope(double c) {
    return [c](double, double) { return c; };
}

GeneratorSpec make_zero() {
    GeneratorSpec g;
    g.name = "zero";
    g.eval = [](double, double, double, double) { return 0.0; };
    g.osgood = OsgoodMetadata{[](double) { return 0.0; }};
    g.z_modulus = ZModulusMetadata{[](double) { return 0.0; }};
    g.z_growth = ZGrowthMetadata{const_envelope(0.0), 0.0, 0.0};
    g.full_growth = FullGrowthMetadata{const_envelope(0.0), 0.0, 0.0};
    return g;
}

GeneratorSpec make_constant(double c, const std::string& name) {
    GeneratorSpec g;
    g.name = name;
    g.eval = [c](double, double, double, double) { return c; };
    g.osgood = OsgoodMetadata{[](double) { return 0.0; }};
    g.z_modulus = ZModulusMetadata{[](double) { return 0.0; }};
    g.z_growth = ZGrowthMetadata{const_envelope(0.0), 0.0, 0.0};
    g.full_growth = FullGrowthMetadata{const_envelope(std::abs(c)), 0.0, 0.0};
    return g;
}

GeneratorSpec make_linear(double a, double b) {
    GeneratorSpec g;
    g.name = "linear";
    g.eval = [a, b](double, double, double y, double z) { return a * y + b * z; };
    const double a_pos = std::max(a, 0.0);
    g.a_norm = std::max(a_pos, std::abs(b));
    g.osgood = OsgoodMetadata{[a_pos](double x) { return a_pos * x; }};
    g.z_modulus = ZModulusMetadata{[b](double x) { return std::abs(b) * x; }};
    g.z_growth = ZGrowthMetadata{const_envelope(0.0), 0.0, std::abs(b)};
    g.full_growth = FullGrowthMetadata{const_envelope(0.0), std::abs(a), std::abs(b)};
    return g;
}

GeneratorSpec make_osgood_example() {
    GeneratorSpec g;
    g.name = "osgood_example";
    g.eval = [](double t, double b, double y, double z) {
        const double az = std::abs(z);
        double v = osgood_h(std::abs(y));
        v -= std::exp(std::abs(b) * y);
        v += std::min(std::exp(-y), 1.0) * az * std::sin(az);
        if (t > 0.0) v += std::pow(t, -0.25);
        return v;
    };
    g.a_norm = kDelta;  // h <= 1/e, so h(x) <= (1/e)(x+1)
    g.osgood = OsgoodMetadata{[](double x) { return osgood_h(x); }};
    g.z_growth = ZGrowthMetadata{const_envelope(0.0), 0.0, 1.0};
    return g;
}

GeneratorSpec make_discontinuous_example() {
    GeneratorSpec g;
    g.name = "discontinuous_example";
    g.eval = [](double, double b, double y, double z) {
        const double jump_part = y <= 0.0 ? std::cbrt(std::abs(y)) : std::cos(y);
        return jump_part + std::sqrt(std::abs(y) * std::abs(z)) + std::abs(b);
    };
    g.regularity = Regularity::left_limit_lsc;
    g.full_growth =
        FullGrowthMetadata{[](double, double b) { return std::abs(b) + 2.0; }, 2.0, 1.0};
    return g;
}

}  // namespace

double osgood_h(double x) {
    if (x <= 0.0) return 0.0;
    if (x <= kDelta) return x * std::abs(std::log(x));
    return kDelta;
}

GeneratorSpec builtin(const std::string& name, const std::vector<double>& params) {
    auto want = [&](std::size_t n) {
        if (params.size() != n)
            throw InvalidArgumentError("builtin '" + name + "': expected " + std::to_string(n) +
                                       " parameter(s)");
    };
    if (name == "zero") {
        want(0);
        return make_zero();
    }
    if (name == "constant") {
        want(1);
        return make_constant(params[0], "constant");
    }
    if (name == "linear") {
        want(2);
        return make_linear(params[0], params[1]);
    }
    if (name == "clamp_drive") {
        if (params.size() > 1)
            throw InvalidArgumentError("builtin 'clamp_drive': expected at most 1 parameter");
        return make_constant(params.empty() ? 2.0 : params[0], "clamp_drive");
    }
    if (name == "osgood_example") {
        want(0);
        return make_osgood_example();
    }
    if (name == "discontinuous_example") {
        want(0);
        return make_discontinuous_example();
    }
    throw InvalidArgumentError("unknown builtin generator '" + name + "'");
}

GeneratorSpec builtin(const std::string& name_with_args) {
    const auto open = name_with_args.find('(');
    if (open == std::string::npos) return builtin(name_with_args, {});
    if (name_with_args.back() != ')')
        throw InvalidArgumentError("builtin: malformed parameter list in '" + name_with_args + "'");
    const std::string name = name_with_args.substr(0, open);
    const std::string args = name_with_args.substr(open + 1, name_with_args.size() - open - 2);
    std::vector<double> params;
    std::size_t pos = 0;
    while (pos < args.size()) {
        std::size_t comma = args.find(',', pos);
        if (comma == std::string::npos) comma = args.size();
        const std::string token = args.substr(pos, comma - pos);
        char* end = nullptr;
        const double value = std::strtod(token.c_str(), &end);
        if (end == token.c_str())
            throw InvalidArgumentError("builtin: bad numeric parameter '" + token + "'");
        params.push_back(value);
        pos = comma + 1;
    }
    return builtin(name, params);
}

}  // namespace drbsde
