#include "triopt/field.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace triopt {

namespace {

ScalarField make_1d(std::string name, std::function<double(double)> f,
                    std::function<double(double)> df) {
    ScalarField field;
    field.name = std::move(name);
    field.dim = 1;
    field.value = [f](const Point& p) { return f(p.x); };
    field.gradient = [df](const Point& p) { return Vec2{df(p.x), 0.0}; };
    return field;
}

std::vector<double> parse_poly_coeffs(const std::string& spec) {
    std::vector<double> coeffs;
    std::size_t pos = 0;
    while (pos <= spec.size()) {
        std::size_t comma = spec.find(',', pos);
        if (comma == std::string::npos) comma = spec.size();
        const std::string tok = spec.substr(pos, comma - pos);
        std::size_t used = 0;
        double v;
        try {
            v = std::stod(tok, &used);
        } catch (const std::exception&) {
            throw std::invalid_argument("poly1d: bad coefficient '" + tok + "'");
        }
        if (used != tok.size())
            throw std::invalid_argument("poly1d: bad coefficient '" + tok + "'");
        coeffs.push_back(v);
        pos = comma + 1;
        if (comma == spec.size()) break;
    }
    if (coeffs.empty()) throw std::invalid_argument("poly1d: no coefficients");
    return coeffs;
}

double horner(const std::vector<double>& c, double x) {
    double v = 0.0;
    for (std::size_t i = c.size(); i-- > 0;) v = v * x + c[i];
    return v;
}

void require_unit_normalized(const ScalarField& f, const char* who) {
    if (f.dim != 1) throw std::invalid_argument(std::string(who) + ": field must be 1D");
    const double f0 = f.value(Point{0.0, 0.0});
    const double f1 = f.value(Point{1.0, 0.0});
    if (std::abs(f0) > 1e-12 || std::abs(f1 - 1.0) > 1e-12)
        throw std::invalid_argument(std::string(who) + ": field must satisfy f(0)=0, f(1)=1");
}

}  // namespace

ScalarField field_by_name(const std::string& name) {
    using std::numbers::pi;

    if (name == "quad1d")
        return make_1d(name, [](double x) { return x * x; }, [](double x) { return 2.0 * x; });
    if (name == "cubic1d")
        return make_1d(name, [](double x) { return x * x * x; },
                       [](double x) { return 3.0 * x * x; });
    if (name == "paper1d")
        return make_1d(name, [](double x) { return 0.5 * (x + x * x); },
                       [](double x) { return 0.5 + x; });
    if (name.rfind("poly1d:", 0) == 0) {
        auto coeffs = parse_poly_coeffs(name.substr(7));
        std::vector<double> dcoeffs;
        for (std::size_t i = 1; i < coeffs.size(); ++i) dcoeffs.push_back(i * coeffs[i]);
        if (dcoeffs.empty()) dcoeffs.push_back(0.0);
        return make_1d(name, [coeffs](double x) { return horner(coeffs, x); },
                       [dcoeffs](double x) { return horner(dcoeffs, x); });
    }

    ScalarField field;
    field.name = name;
    field.dim = 2;
    if (name == "affine2d") {
        field.value = [](const Point& p) { return p.x + p.y; };
        field.gradient = [](const Point&) { return Vec2{1.0, 1.0}; };
        return field;
    }
    if (name == "quadsum2d") {
        field.value = [](const Point& p) { return p.x * p.x + p.y * p.y; };
        field.gradient = [](const Point& p) { return Vec2{2.0 * p.x, 2.0 * p.y}; };
        return field;
    }
    if (name == "sinprod2d") {
        field.value = [](const Point& p) { return std::sin(pi * p.x) * std::sin(pi * p.y); };
        field.gradient = [](const Point& p) {
            return Vec2{pi * std::cos(pi * p.x) * std::sin(pi * p.y),
                        pi * std::sin(pi * p.x) * std::cos(pi * p.y)};
        };
        return field;
    }
    throw std::invalid_argument("unknown field '" + name + "'");
}

std::vector<std::string> field_catalog() {
    return {"quad1d", "cubic1d", "paper1d", "poly1d:c0,c1,...",
            "affine2d", "quadsum2d", "sinprod2d"};
}

Parametrization1D identity_parametrization() {
    return {"identity", [](double t) { return t; }, [](double) { return 1.0; }};
}

Parametrization1D field_parametrization(const ScalarField& f) {
    require_unit_normalized(f, "field_parametrization");
    auto value = f.value;
    auto gradient = f.gradient;
    return {f.name,
            [value](double t) { return value(Point{t, 0.0}); },
            [gradient](double t) { return gradient(Point{t, 0.0}).x; }};
}

Parametrization1D inverse_parametrization(const ScalarField& f) {
    require_unit_normalized(f, "inverse_parametrization");
    auto value = f.value;
    auto gradient = f.gradient;

    // Newton with bisection safeguard; f is strictly increasing on [0,1].
    auto invert = [value, gradient](double t) {
        double lo = 0.0, hi = 1.0, x = t;
        for (int it = 0; it < 100; ++it) {
            const double r = value(Point{x, 0.0}) - t;
            if (r > 0.0)
                hi = x;
            else
                lo = x;
            if (std::abs(r) < 1e-15) break;
            const double d = gradient(Point{x, 0.0}).x;
            double next = d > 0.0 ? x - r / d : 0.5 * (lo + hi);
            if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
            if (next == x) break;
            x = next;
        }
        return x;
    };
    return {f.name + "_inverse", invert,
            [invert, gradient](double t) {
                const double d = gradient(Point{invert(t), 0.0}).x;
                if (d <= 0.0)
                    throw std::domain_error("inverse_parametrization: field not increasing");
                return 1.0 / d;
            }};
}

}  // namespace triopt
