#pragma once

#include <cmath>
#include <vector>

#include "geoprop/errors.hpp"

namespace geoprop {

/// Phase generator S(x) = sum_{k>=1} c_{k-1} x^k, degree <= 8. The missing
/// constant term enforces S(0) = 0; a global phase carries no physics anyway.
struct GalileiGenerator {
    std::vector<double> coeffs;  // coeffs[i] multiplies x^{i+1}

    GalileiGenerator() = default;
    explicit GalileiGenerator(std::vector<double> c) : coeffs(std::move(c)) {
        if (coeffs.size() > 8) throw ValidationError("GalileiGenerator: degree capped at 8");
    }
    static GalileiGenerator linear(double c1) { return GalileiGenerator({c1}); }
    static GalileiGenerator quadratic(double c1, double c2) { return GalileiGenerator({c1, c2}); }

    double operator()(double x) const {
        double s = 0.0;
        for (std::size_t i = coeffs.size(); i-- > 0;) s = (s + coeffs[i]) * x;
        return s;
    }
    int degree() const {
        for (std::size_t i = coeffs.size(); i-- > 0;)
            if (coeffs[i] != 0.0) return static_cast<int>(i) + 1;
        return 0;
    }
    bool is_at_most_quadratic() const { return degree() <= 2; }
    double coeff(int k) const {  // coefficient of x^k, k >= 1
        return (k >= 1 && k <= static_cast<int>(coeffs.size())) ? coeffs[k - 1] : 0.0;
    }

    GalileiGenerator operator-() const {
        GalileiGenerator r = *this;
        for (auto& c : r.coeffs) c = -c;
        return r;
    }
    GalileiGenerator operator+(const GalileiGenerator& o) const {
        GalileiGenerator r = *this;
        if (o.coeffs.size() > r.coeffs.size()) r.coeffs.resize(o.coeffs.size(), 0.0);
        for (std::size_t i = 0; i < o.coeffs.size(); ++i) r.coeffs[i] += o.coeffs[i];
        return r;
    }
};

/// Bivariate generator S(x,y) = sum c[i][j] x^i y^j, 1 <= i+j <= 4, S(0,0)=0.
struct GalileiGenerator2D {
    double c[5][5] = {};

    GalileiGenerator2D() = default;

    double operator()(double x, double y) const {
        double s = 0.0;
        for (int i = 0; i <= 4; ++i)
            for (int j = 0; i + j <= 4; ++j) {
                if (i == 0 && j == 0) continue;
                if (c[i][j] != 0.0) s += c[i][j] * std::pow(x, i) * std::pow(y, j);
            }
        return s;
    }

    GalileiGenerator2D operator-() const {
        GalileiGenerator2D r = *this;
        for (auto& row : r.c)
            for (auto& v : row) v = -v;
        return r;
    }

    /// Isotropic quadratic a*(x^2+y^2).
    static GalileiGenerator2D radial_quadratic(double a) {
        GalileiGenerator2D g;
        g.c[2][0] = a;
        g.c[0][2] = a;
        return g;
    }
};

}  // namespace geoprop
