#pragma once

#include <array>
#include <cctype>
#include <cmath>
#include <string>
#include <vector>

#include "efl/error.hpp"

namespace efl {

/// A point of the model plane; 1D fields use only x.
struct vec2 {
    double x = 0.0;
    double y = 0.0;
};

/// Sparse polynomial in x (and y), as a sum of monomial terms.
struct polynomial {
    struct term {
        double coef;
        int ex, ey;
    };
    std::vector<term> terms;

    double eval(double x, double y) const {
        double v = 0.0;
        for (const auto& t : terms) v += t.coef * std::pow(x, t.ex) * std::pow(y, t.ey);
        return v;
    }

    polynomial derivative(int axis) const {
        polynomial d;
        for (const auto& t : terms) {
            int e = axis == 0 ? t.ex : t.ey;
            if (e == 0) continue;
            term dt = t;
            dt.coef *= e;
            (axis == 0 ? dt.ex : dt.ey) -= 1;
            d.terms.push_back(dt);
        }
        return d;
    }

    int degree() const {
        int d = 0;
        for (const auto& t : terms) d = std::max(d, t.ex + t.ey);
        return d;
    }
};

/// Parse a sum of monomials: `x^4 - 2*x^2*y + 1`.  Factors are a decimal
/// coefficient and/or x / y powers joined by `*`; exponents via `^`.
inline polynomial parse_polynomial(const std::string& text) {
    polynomial p;
    std::size_t i = 0;
    auto skip_ws = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    skip_ws();
    if (i == text.size()) throw error(errc::config_error, "empty polynomial");
    while (i < text.size()) {
        double sign = 1.0;
        skip_ws();
        while (i < text.size() && (text[i] == '+' || text[i] == '-')) {
            if (text[i] == '-') sign = -sign;
            ++i;
            skip_ws();
        }
        if (i == text.size()) throw error(errc::config_error, "dangling sign in polynomial");
        polynomial::term t{sign, 0, 0};
        bool have_factor = false;
        while (true) {
            skip_ws();
            if (i < text.size() && (std::isdigit(static_cast<unsigned char>(text[i])) || text[i] == '.')) {
                std::size_t used = 0;
                t.coef *= std::stod(text.substr(i), &used);
                i += used;
                have_factor = true;
            } else if (i < text.size() && (text[i] == 'x' || text[i] == 'y')) {
                int& e = text[i] == 'x' ? t.ex : t.ey;
                ++i;
                int k = 1;
                if (i < text.size() && text[i] == '^') {
                    ++i;
                    if (i == text.size() || !std::isdigit(static_cast<unsigned char>(text[i])))
                        throw error(errc::config_error, "exponent expected after '^'");
                    std::size_t used = 0;
                    k = std::stoi(text.substr(i), &used);
                    i += used;
                }
                e += k;
                have_factor = true;
            } else {
                break;
            }
            skip_ws();
            if (i < text.size() && text[i] == '*') {
                ++i;
                continue;
            }
            break;
        }
        if (!have_factor) throw error(errc::config_error, "malformed polynomial near index " + std::to_string(i));
        if (t.ex + t.ey > 6) throw error(errc::config_error, "polynomial degree above 6");
        p.terms.push_back(t);
        skip_ws();
    }
    return p;
}

enum class field_family { linear, gradient_descent, radial_cycle, custom };

/// A planar (or line) vector field from one of the shipped families.
struct vector_field {
    field_family family = field_family::linear;
    int dims = 1;
    std::array<double, 4> matrix{};  // row-major a11 a12 a21 a22; 1D uses a11
    polynomial height;               // gradient_descent: the flow follows -grad(height)
    polynomial fx, fy;               // custom components

    static vector_field linear1(double a) {
        vector_field f;
        f.family = field_family::linear;
        f.dims = 1;
        f.matrix = {a, 0, 0, 0};
        return f;
    }
    static vector_field linear2(double a11, double a12, double a21, double a22) {
        vector_field f;
        f.family = field_family::linear;
        f.dims = 2;
        f.matrix = {a11, a12, a21, a22};
        return f;
    }
    static vector_field gradient(polynomial h, int dims) {
        if (h.degree() > 6) throw error(errc::config_error, "polynomial degree above 6");
        vector_field f;
        f.family = field_family::gradient_descent;
        f.dims = dims;
        f.height = std::move(h);
        f.fx = f.height.derivative(0);
        f.fy = f.height.derivative(1);
        return f;
    }
    static vector_field radial() {
        vector_field f;
        f.family = field_family::radial_cycle;
        f.dims = 2;
        return f;
    }
    static vector_field custom(polynomial px, polynomial py, int dims) {
        if (px.degree() > 6 || py.degree() > 6)
            throw error(errc::config_error, "polynomial degree above 6");
        vector_field f;
        f.family = field_family::custom;
        f.dims = dims;
        f.fx = std::move(px);
        f.fy = std::move(py);
        return f;
    }

    vec2 eval(vec2 p) const {
        switch (family) {
            case field_family::linear:
                return {matrix[0] * p.x + matrix[1] * p.y, matrix[2] * p.x + matrix[3] * p.y};
            case field_family::gradient_descent:
                return {-fx.eval(p.x, p.y), dims == 2 ? -fy.eval(p.x, p.y) : 0.0};
            case field_family::radial_cycle: {
                double r = std::sqrt(p.x * p.x + p.y * p.y);
                return {p.x * (1.0 - r) - p.y, p.y * (1.0 - r) + p.x};
            }
            case field_family::custom:
                return {fx.eval(p.x, p.y), dims == 2 ? fy.eval(p.x, p.y) : 0.0};
        }
        return {};
    }
};

/// Integrator parameters plus the outer-approximation controls.
struct approx_params {
    double tau = 1.0;
    int substeps = 8;
    double bloat = -1.0;  // negative: one cell diagonal * 0.1
};

/// Fixed-step RK4 realization of the time-tau map.  Deterministic; throws
/// NonFinite if the state overflows.
inline vec2 time_tau_map(const vector_field& field, const approx_params& params, vec2 p) {
    if (params.tau <= 0.0) throw error(errc::config_error, "tau must be positive");
    if (params.substeps < 1) throw error(errc::config_error, "substeps must be at least 1");
    const double h = params.tau / params.substeps;
    for (int s = 0; s < params.substeps; ++s) {
        vec2 k1 = field.eval(p);
        vec2 k2 = field.eval({p.x + 0.5 * h * k1.x, p.y + 0.5 * h * k1.y});
        vec2 k3 = field.eval({p.x + 0.5 * h * k2.x, p.y + 0.5 * h * k2.y});
        vec2 k4 = field.eval({p.x + h * k3.x, p.y + h * k3.y});
        p.x += h / 6.0 * (k1.x + 2.0 * k2.x + 2.0 * k3.x + k4.x);
        p.y += h / 6.0 * (k1.y + 2.0 * k2.y + 2.0 * k3.y + k4.y);
        if (!std::isfinite(p.x) || !std::isfinite(p.y))
            throw error(errc::non_finite, "integration overflow at substep " + std::to_string(s));
    }
    return p;
}

}  // namespace efl
