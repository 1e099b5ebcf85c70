#pragma once

// Test-problem registry: five real problems with known multiple zeros and six
// complex problems (three simple-root, three powered variants) for basin
// rendering.  All derivatives are closed-form; the suite cross-checks them
// against finite differences.

#include "scalar.hpp"

#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace mzeros {

template <class S>
struct Problem {
    std::string name;
    int m = 1;                               // multiplicity of roots.front()
    std::vector<S> roots;                    // roots.front() tracks errors
    std::optional<S> start;                  // registered starting point
    std::string start_literal;               // the literal `start` was parsed from
    std::function<S(const S&)> f, df, d2f;   // d2f may be empty
    std::function<bool(const S&)> domain;    // empty = all of R/C

    const S& root() const { return roots.front(); }
    bool has_d2f() const { return static_cast<bool>(d2f); }
    bool in_domain(const S& x) const { return !domain || domain(x); }
};

// ---------------------------------------------------------------------------
// real problems

template <class R>
std::vector<Problem<R>> real_problems() {
    using std::acos;
    using std::cos;
    using std::exp;
    using std::log;
    using std::pow;
    using std::sin;
    using std::sqrt;
    std::vector<Problem<R>> ps;

    {   // f1 = (ln(1+x^2) + e^(x^2-3x) sin x)^6
        auto u = [](const R& x) { return log(1 + x * x) + exp(x * x - 3 * x) * sin(x); };
        auto u1 = [](const R& x) {
            return 2 * x / (1 + x * x) + exp(x * x - 3 * x) * ((2 * x - 3) * sin(x) + cos(x));
        };
        auto u2 = [](const R& x) {
            R w1 = 2 * x - 3;
            R q = 1 + x * x;
            return (2 - 2 * x * x) / (q * q)
                 + exp(x * x - 3 * x) * ((w1 * w1 + 1) * sin(x) + 2 * w1 * cos(x));
        };
        Problem<R> p;
        p.name = "f1";
        p.m = 6;
        p.roots = {R(0)};
        p.start = parse_real<R>("0.3");
        p.start_literal = "0.3";
        p.f = [=](const R& x) { R v = u(x); return pow(v, 6); };
        p.df = [=](const R& x) { R v = u(x); return 6 * pow(v, 5) * u1(x); };
        p.d2f = [=](const R& x) {
            R v = u(x), v1 = u1(x);
            return 30 * pow(v, 4) * v1 * v1 + 6 * pow(v, 5) * u2(x);
        };
        ps.push_back(std::move(p));
    }
    {   // f2 = (x^3 + ln(1+x))^7,  x > -1
        auto u = [](const R& x) { return x * x * x + log(1 + x); };
        auto u1 = [](const R& x) { return 3 * x * x + 1 / (1 + x); };
        auto u2 = [](const R& x) { return 6 * x - 1 / ((1 + x) * (1 + x)); };
        Problem<R> p;
        p.name = "f2";
        p.m = 7;
        p.roots = {R(0)};
        p.start = parse_real<R>("0.2");
        p.start_literal = "0.2";
        p.domain = [](const R& x) { return x > -1; };
        p.f = [=](const R& x) { return pow(u(x), 7); };
        p.df = [=](const R& x) { return 7 * pow(u(x), 6) * u1(x); };
        p.d2f = [=](const R& x) {
            R v = u(x), v1 = u1(x);
            return 42 * pow(v, 5) * v1 * v1 + 7 * pow(v, 6) * u2(x);
        };
        ps.push_back(std::move(p));
    }
    {   // f3 = (x^6-8)^2 ln(x^6-7),  x^6 > 7
        Problem<R> p;
        p.name = "f3";
        p.m = 3;
        p.roots = {sqrt(R(2))};
        p.start = parse_real<R>("1.5");
        p.start_literal = "1.5";
        p.domain = [](const R& x) { return pow(x, 6) > 7; };
        p.f = [](const R& x) {
            R v = pow(x, 6) - 8;
            return v * v * log(v + 1);
        };
        p.df = [](const R& x) {
            R v = pow(x, 6) - 8, w = v + 1, d = 6 * pow(x, 5);
            return 2 * v * d * log(w) + v * v * d / w;
        };
        p.d2f = [](const R& x) {
            R v = pow(x, 6) - 8, w = v + 1;
            R d = 6 * pow(x, 5), d2 = 30 * pow(x, 4);
            return 2 * d * d * log(w) + 2 * v * d2 * log(w) + 4 * v * d * d / w
                 + v * v * d2 / w - v * v * d * d / (w * w);
        };
        ps.push_back(std::move(p));
    }
    {   // f4 = (ln(x^2-x+1) + 4 sin(x-1))^10
        auto u = [](const R& x) { return log(x * x - x + 1) + 4 * sin(x - 1); };
        auto u1 = [](const R& x) {
            return (2 * x - 1) / (x * x - x + 1) + 4 * cos(x - 1);
        };
        auto u2 = [](const R& x) {
            R q = x * x - x + 1, q1 = 2 * x - 1;
            return (2 * q - q1 * q1) / (q * q) - 4 * sin(x - 1);
        };
        Problem<R> p;
        p.name = "f4";
        p.m = 10;
        p.roots = {R(1)};
        p.start = parse_real<R>("1.2");
        p.start_literal = "1.2";
        p.f = [=](const R& x) { return pow(u(x), 10); };
        p.df = [=](const R& x) { return 10 * pow(u(x), 9) * u1(x); };
        p.d2f = [=](const R& x) {
            R v = u(x), v1 = u1(x);
            return 90 * pow(v, 8) * v1 * v1 + 10 * pow(v, 9) * u2(x);
        };
        ps.push_back(std::move(p));
    }
    {   // f5 = ln^2(x-2) (e^(x-3)-1) sin(pi x/3),  x > 2
        Problem<R> p;
        p.name = "f5";
        p.m = 4;
        p.roots = {R(3)};
        p.start = parse_real<R>("3.1");
        p.start_literal = "3.1";
        p.domain = [](const R& x) { return x > 2; };
        p.f = [](const R& x) {
            R pi = acos(R(-1));
            R a = log(x - 2);
            return a * a * (exp(x - 3) - 1) * sin(pi * x / 3);
        };
        p.df = [](const R& x) {
            R pi = acos(R(-1));
            R a = log(x - 2), a1 = 1 / (x - 2);
            R b = exp(x - 3) - 1, b1 = exp(x - 3);
            R c = sin(pi * x / 3), c1 = pi / 3 * cos(pi * x / 3);
            return 2 * a * a1 * b * c + a * a * b1 * c + a * a * b * c1;
        };
        p.d2f = [](const R& x) {
            R pi = acos(R(-1));
            R a = log(x - 2), a1 = 1 / (x - 2), a2 = -a1 * a1;
            R b = exp(x - 3) - 1, b1 = exp(x - 3);
            R c = sin(pi * x / 3), c1 = pi / 3 * cos(pi * x / 3), c2 = -pi * pi / 9 * c;
            return 2 * a1 * a1 * b * c + 2 * a * a2 * b * c + 4 * a * a1 * b1 * c
                 + 4 * a * a1 * b * c1 + a * a * b1 * c + 2 * a * a * b1 * c1
                 + a * a * b * c2;
        };
        ps.push_back(std::move(p));
    }
    return ps;
}

// ---------------------------------------------------------------------------
// complex problems (basins); roots listed in hue order, conjugate pairs exact

template <class C>
std::vector<Problem<C>> complex_problems() {
    using std::sqrt;
    using R = real_of<C>;
    const R half = R(1) / 2;
    const R s3h = sqrt(R(3)) / 2;
    const std::vector<C> roots_p1 = {C(R(0), R(1)), C(R(0), R(-1))};
    const std::vector<C> roots_p2 = {C(R(-1), R(0)), C(half, s3h), C(half, -s3h)};
    const std::vector<C> roots_p3 = {C(s3h, half),  C(R(0), R(1)),  C(-s3h, half),
                                     C(-s3h, -half), C(R(0), R(-1)), C(s3h, -half)};
    auto nonzero = [](const C& z) { return z != C(R(0)); };

    auto u_p1 = [](const C& z) { return z + C(real_of<C>(1)) / z; };
    auto u1_p1 = [](const C& z) { return C(real_of<C>(1)) - C(real_of<C>(1)) / (z * z); };
    auto u2_p1 = [](const C& z) { return C(real_of<C>(2)) / (z * z * z); };
    auto u_p2 = [](const C& z) { return z * z * z + C(real_of<C>(1)); };

    std::vector<Problem<C>> ps;
    {   // p1 = z + 1/z, simple roots +-i
        Problem<C> p;
        p.name = "p1";
        p.m = 1;
        p.roots = roots_p1;
        p.domain = nonzero;
        p.f = u_p1;
        p.df = u1_p1;
        p.d2f = u2_p1;
        ps.push_back(std::move(p));
    }
    {   // p2 = z^3 + 1, simple cube roots of -1
        Problem<C> p;
        p.name = "p2";
        p.m = 1;
        p.roots = roots_p2;
        p.f = u_p2;
        p.df = [](const C& z) { return R(3) * (z * z); };
        p.d2f = [](const C& z) { return R(6) * z; };
        ps.push_back(std::move(p));
    }
    {   // p3 = z^5 + 1/z, simple roots of z^6 = -1
        Problem<C> p;
        p.name = "p3";
        p.m = 1;
        p.roots = roots_p3;
        p.domain = nonzero;
        p.f = [](const C& z) { return z * z * z * z * z + C(R(1)) / z; };
        p.df = [](const C& z) { return R(5) * (z * z * z * z) - C(R(1)) / (z * z); };
        p.d2f = [](const C& z) { return R(20) * (z * z * z) + C(R(2)) / (z * z * z); };
        ps.push_back(std::move(p));
    }
    {   // p1pow5 = (z + 1/z)^5, multiplicity 5
        Problem<C> p;
        p.name = "p1pow5";
        p.m = 5;
        p.roots = roots_p1;
        p.domain = nonzero;
        p.f = [=](const C& z) { C u = u_p1(z); return u * u * u * u * u; };
        p.df = [=](const C& z) {
            C u = u_p1(z);
            return R(5) * (u * u * u * u) * u1_p1(z);
        };
        p.d2f = [=](const C& z) {
            C u = u_p1(z), u1 = u1_p1(z);
            return R(20) * (u * u * u) * (u1 * u1) + R(5) * (u * u * u * u) * u2_p1(z);
        };
        ps.push_back(std::move(p));
    }
    {   // p2pow3 = (z^3 + 1)^3, multiplicity 3
        Problem<C> p;
        p.name = "p2pow3";
        p.m = 3;
        p.roots = roots_p2;
        p.f = [=](const C& z) { C u = u_p2(z); return u * u * u; };
        p.df = [=](const C& z) { C u = u_p2(z); return R(9) * (z * z) * (u * u); };
        p.d2f = [=](const C& z) {
            C u = u_p2(z);
            return R(18) * z * (u * u) + R(54) * (z * z * z * z) * u;
        };
        ps.push_back(std::move(p));
    }
    {   // p1pow2 = (z + 1/z)^2, multiplicity 2
        Problem<C> p;
        p.name = "p1pow2";
        p.m = 2;
        p.roots = roots_p1;
        p.domain = nonzero;
        p.f = [=](const C& z) { C u = u_p1(z); return u * u; };
        p.df = [=](const C& z) { return R(2) * u_p1(z) * u1_p1(z); };
        p.d2f = [=](const C& z) {
            C u1 = u1_p1(z);
            return R(2) * (u1 * u1) + R(2) * u_p1(z) * u2_p1(z);
        };
        ps.push_back(std::move(p));
    }
    return ps;
}

template <class S>
const Problem<S>& find_problem(const std::vector<Problem<S>>& ps, const std::string& name) {
    for (const auto& p : ps)
        if (p.name == name) return p;
    throw std::out_of_range("unknown problem: " + name);
}

// ---------------------------------------------------------------------------
// multiplicity certificate: successive log-log slopes of |f| along a ray from
// the root.  Slopes (rather than raw log|f|/log t) cancel the constant
// f^(m)(r)/m!, which otherwise pollutes the estimate for steep leading
// coefficients.

template <class S>
std::pair<real_of<S>, real_of<S>> multiplicity_slopes(const Problem<S>& p) {
    using std::log;
    using std::pow;
    using R = real_of<S>;
    auto probe = [&](int k) {               // |f(root + t*dir)| at t = 10^-k
        R t = pow(R(10), -k);
        S z;
        if constexpr (is_complex_v<S>)
            z = p.root() + S(R(3) / 5 * t, R(4) / 5 * t);
        else
            z = p.root() + t;
        return log(mag(p.f(z)));
    };
    R lt = log(R(10));
    R l6 = probe(6), l7 = probe(7), l8 = probe(8);
    return {(l6 - l7) / lt, (l7 - l8) / lt};
}

} // namespace mzeros
