#include "btops/test_function.hpp"

#include <cmath>
#include <sstream>

namespace btops {

namespace {
constexpr int kMaxDegree = 8;

int term_degree(const TestFunction::Exponents& e) { return e[0] + e[1] + e[2]; }

void check_term(const TestFunction::Exponents& e) {
    if (e[0] < 0 || e[1] < 0 || e[2] < 0)
        throw ValidationError("negative exponent in polynomial");
    if (term_degree(e) > kMaxDegree) {
        std::ostringstream msg;
        msg << "polynomial degree " << term_degree(e) << " exceeds " << kMaxDegree;
        throw ValidationError(msg.str());
    }
}
}  // namespace

TestFunction::TestFunction(std::map<Exponents, double> terms)
    : terms_(std::move(terms)) {
    for (const auto& [e, c] : terms_) check_term(e);
}

TestFunction TestFunction::constant(double c) {
    return TestFunction({{{0, 0, 0}, c}});
}

TestFunction TestFunction::monomial(int a, int b, int e, double c) {
    return TestFunction({{{a, b, e}, c}});
}

double TestFunction::operator()(const SpherePoint& y) const {
    double v = 0.0;
    for (const auto& [e, c] : terms_) {
        double t = c;
        for (int i = 0; i < e[0]; ++i) t *= y.y1;
        for (int i = 0; i < e[1]; ++i) t *= y.y2;
        for (int i = 0; i < e[2]; ++i) t *= y.y3;
        v += t;
    }
    return v;
}

int TestFunction::degree() const {
    int d = 0;
    for (const auto& [e, c] : terms_)
        if (c != 0.0) d = std::max(d, term_degree(e));
    return d;
}

TestFunction TestFunction::operator+(const TestFunction& other) const {
    auto terms = terms_;
    for (const auto& [e, c] : other.terms_) terms[e] += c;
    return TestFunction(std::move(terms));
}

TestFunction TestFunction::operator*(double s) const {
    auto terms = terms_;
    for (auto& [e, c] : terms) c *= s;
    return TestFunction(std::move(terms));
}

TestFunction TestFunction::parse(const std::map<std::string, double>& poly) {
    std::map<Exponents, double> terms;
    for (const auto& [key, coef] : poly) {
        Exponents e{0, 0, 0};
        if (key != "1") {
            std::size_t pos = 0;
            while (pos < key.size()) {
                if (key[pos] != 'y' || pos + 1 >= key.size() ||
                    key[pos + 1] < '1' || key[pos + 1] > '3') {
                    throw ValidationError("bad polynomial key '" + key +
                                          "': expected y1, y2 or y3 factors");
                }
                const int axis = key[pos + 1] - '1';
                pos += 2;
                int power = 1;
                if (pos < key.size() && key[pos] == '^') {
                    ++pos;
                    std::size_t start = pos;
                    while (pos < key.size() && std::isdigit(key[pos])) ++pos;
                    if (pos == start)
                        throw ValidationError("bad polynomial key '" + key +
                                              "': missing exponent after '^'");
                    power = std::stoi(key.substr(start, pos - start));
                }
                e[axis] += power;
                if (pos < key.size()) {
                    if (key[pos] != '*')
                        throw ValidationError("bad polynomial key '" + key +
                                              "': expected '*' between factors");
                    ++pos;
                    if (pos == key.size())
                        throw ValidationError("bad polynomial key '" + key +
                                              "': trailing '*'");
                }
            }
        }
        check_term(e);
        terms[e] += coef;
    }
    return TestFunction(std::move(terms));
}

}  // namespace btops
