#pragma once

#include <array>
#include <map>
#include <string>

#include "btops/geometry.hpp"

namespace btops {

/// Real polynomial in (y1, y2, y3) of total degree <= 8.
class TestFunction {
public:
    using Exponents = std::array<int, 3>;

    TestFunction() = default;
    explicit TestFunction(std::map<Exponents, double> terms);

    static TestFunction constant(double c);
    /// c * y1^a y2^b y3^e
    static TestFunction monomial(int a, int b, int e, double c = 1.0);

    double operator()(const SpherePoint& y) const;
    int degree() const;
    bool empty() const { return terms_.empty(); }
    const std::map<Exponents, double>& terms() const { return terms_; }

    TestFunction operator+(const TestFunction& other) const;
    TestFunction operator*(double s) const;

    /// Key grammar: "1" or '*'-separated factors "y1", "y2^3", ... used by
    /// manifest files, e.g. {"y1^2*y3": -0.5}.
    static TestFunction parse(const std::map<std::string, double>& poly);

private:
    std::map<Exponents, double> terms_;
};

}  // namespace btops
