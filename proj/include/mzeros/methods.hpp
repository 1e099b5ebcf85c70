#pragma once

// One-point and two-point iterations for zeros of known multiplicity m:
//
//   mnewton  x - m f/f'                                   (order 2)
//   pp       y = x - f/f',  x - (f(x)+f(y))/f'            (Potra-Ptak, m=1)
//   mpp      modified Potra-Ptak for multiplicity m       (order 3)
//   osada    x - m(m+1)/2 f/f' + (m-1)^2/2 f'/f''         (order 3)
//   dong     y = x - sqrt(m) f/f',
//            y - m(1-1/sqrt(m))^(1-m) f(y)/f'(x)          (order 3, m >= 2)
//   chun     one-parameter family containing osada (gamma = 1)
//
// Every stepper is generic over the scalar (double, mpreal, or a complex
// type from scalar.hpp) and reports failures through flags instead of
// exceptions so orbit classification can treat them as divergence.

#include "problem.hpp"

#include <array>
#include <optional>

namespace mzeros {

enum class Method { mnewton, pp, mpp, osada, dong, chun };
enum class DongSign { corrected_minus, as_printed_plus };

inline const char* method_name(Method k) {
    switch (k) {
        case Method::mnewton: return "mnewton";
        case Method::pp:      return "pp";
        case Method::mpp:     return "mpp";
        case Method::osada:   return "osada";
        case Method::dong:    return "dong";
        case Method::chun:    return "chun";
    }
    return "?";
}

inline std::optional<Method> parse_method(const std::string& s) {
    for (Method k : {Method::mnewton, Method::pp, Method::mpp,
                     Method::osada, Method::dong, Method::chun})
        if (s == method_name(k)) return k;
    return std::nullopt;
}

struct MethodSpec {
    Method kind = Method::mpp;
    int m = 1;
    double gamma = -1.0;                            // chun parameter
    DongSign dong_sign = DongSign::corrected_minus;
};

enum class StepFlag { ok, derivative_zero, domain_error, nonfinite, unsupported };

template <class S>
struct StepOutcome {
    S next{};
    std::optional<S> intermediate;                  // y of two-point methods
    StepFlag flag = StepFlag::ok;

    bool ok() const { return flag == StepFlag::ok; }
};

// integer power with 0^0 = 1 (the m = 1 coefficient limits rely on it)
template <class R>
R int_pow(const R& base, int e) {
    if (e < 0) return R(1) / int_pow(base, -e);
    R r(1);
    for (int i = 0; i < e; ++i) r = r * base;
    return r;
}

// m-dependent constants of the modified Potra-Ptak step, mu = m - 1:
// next = x + m (a f(x) - m_pow_m f(y)) / (b f'(x))
template <class R>
struct MppCoefficients {
    R a, b, m_pow_m;
};

template <class R>
MppCoefficients<R> mpp_coefficients(int m) {
    int mu = m - 1;
    R mu_pow = int_pow(R(mu), mu);
    return {R(mu - 1) * mu_pow, mu_pow, int_pow(R(m), m)};
}

namespace detail {

template <class S>
StepOutcome<S> fail(const S& x, StepFlag flag) {
    StepOutcome<S> out;
    out.next = x;
    out.flag = flag;
    return out;
}

template <class S>
StepOutcome<S> finish(StepOutcome<S> out) {
    if (!finite(out.next)) out.flag = StepFlag::nonfinite;
    return out;
}

} // namespace detail

template <class S>
StepOutcome<S> step(const Problem<S>& p, const MethodSpec& spec, const S& x) {
    using std::sqrt;
    using R = real_of<S>;
    const int m = spec.m;

    if (!p.in_domain(x)) return detail::fail(x, StepFlag::domain_error);
    S fx = p.f(x);
    S dfx = p.df(x);
    if (!finite(fx) || !finite(dfx)) return detail::fail(x, StepFlag::nonfinite);
    if (mag(dfx) == 0) return detail::fail(x, StepFlag::derivative_zero);

    StepOutcome<S> out;
    switch (spec.kind) {
        case Method::mnewton: {
            out.next = x - R(m) * (fx / dfx);
            break;
        }
        case Method::pp: {
            S y = x - fx / dfx;
            if (!p.in_domain(y)) return detail::fail(x, StepFlag::domain_error);
            S fy = p.f(y);
            if (!finite(fy)) return detail::fail(x, StepFlag::nonfinite);
            out.intermediate = y;
            out.next = x - (fx + fy) / dfx;
            break;
        }
        case Method::mpp: {
            auto c = mpp_coefficients<R>(m);
            S y = x - fx / dfx;
            if (!p.in_domain(y)) return detail::fail(x, StepFlag::domain_error);
            S fy = p.f(y);
            if (!finite(fy)) return detail::fail(x, StepFlag::nonfinite);
            out.intermediate = y;
            out.next = x + R(m) * ((c.a * fx - c.m_pow_m * fy) / (c.b * dfx));
            break;
        }
        case Method::osada: {
            R c1 = R(m) * (m + 1) / 2;
            R c2 = R((m - 1) * (m - 1)) / 2;
            S t2{};
            if (c2 != 0) {
                if (!p.has_d2f()) return detail::fail(x, StepFlag::unsupported);
                S d2fx = p.d2f(x);
                if (!finite(d2fx)) return detail::fail(x, StepFlag::nonfinite);
                if (mag(d2fx) == 0) return detail::fail(x, StepFlag::derivative_zero);
                t2 = c2 * (dfx / d2fx);
            }
            out.next = x - c1 * (fx / dfx) + t2;
            break;
        }
        case Method::dong: {
            // the sign convention applies to the y-substep; the second step
            // is y - m(1-1/sqrt(m))^(1-m) f(y)/f'(x) under either convention
            if (m < 2) return detail::fail(x, StepFlag::unsupported);
            R sm = sqrt(R(m));
            S y = (spec.dong_sign == DongSign::corrected_minus)
                      ? x - sm * (fx / dfx)
                      : x + sm * (fx / dfx);
            if (!p.in_domain(y)) return detail::fail(x, StepFlag::domain_error);
            S fy = p.f(y);
            if (!finite(fy)) return detail::fail(x, StepFlag::nonfinite);
            R k = R(m) * int_pow(1 - 1 / sm, 1 - m);
            out.intermediate = y;
            out.next = y - k * (fy / dfx);
            break;
        }
        case Method::chun: {
            R g = R(spec.gamma);
            R c1 = R(m) * ((2 * g - 1) * m + 3 - 2 * g) / 2;
            R c2 = g * R((m - 1) * (m - 1)) / 2;
            R c3 = (1 - g) * R(m) * m / 2;
            S t2{}, t3{};
            if (c2 != 0 || c3 != 0) {
                if (!p.has_d2f()) return detail::fail(x, StepFlag::unsupported);
                S d2fx = p.d2f(x);
                if (!finite(d2fx)) return detail::fail(x, StepFlag::nonfinite);
                if (c2 != 0) {
                    if (mag(d2fx) == 0) return detail::fail(x, StepFlag::derivative_zero);
                    t2 = c2 * (dfx / d2fx);
                }
                if (c3 != 0) t3 = c3 * (fx * fx * d2fx / (dfx * dfx * dfx));
            }
            out.next = x - c1 * (fx / dfx) + t2 - t3;
            break;
        }
    }
    return detail::finish(std::move(out));
}

// ---------------------------------------------------------------------------
// Asymptotic error constant of the modified Potra-Ptak step at a zero r of
// multiplicity m:  e_{k+1} ~ C e_k^3 with
//
//   C = ((2+m) c1^2 - 2(m-1) c2) / (2 m^2),
//   c_i = m!/(m+i)! f^(m+i)(r) / f^(m)(r).
//
// The Taylor ratios are recovered by fitting a cubic to g(t) = f(r+t)/t^m at
// t in {-2h,-h,h,2h}.  An inconsistent multiplicity claim is detected when
// the fitted constant term vanishes (claimed m too small) or the fit fails
// to predict g(3h) (claimed m too large, g is not polynomial-like).

template <class R>
std::optional<R> asymptotic_error_constant(const Problem<R>& p, int m,
                                           const R& h0 = R(0)) {
    using std::pow;
    R h = (h0 == 0) ? pow(R(10), -12) : h0;
    const R& r = p.root();

    const int s[4] = {-2, -1, 1, 2};
    R g[4];
    for (int i = 0; i < 4; ++i) {
        R t = s[i] * h;
        R x = r + t;
        if (!p.in_domain(x)) return std::nullopt;
        g[i] = p.f(x) / int_pow(t, m);
        if (!finite(g[i])) return std::nullopt;
    }

    // solve V b = g, rows [1, s, s^2, s^3]; b_k = a_k h^k
    R A[4][5];
    for (int i = 0; i < 4; ++i) {
        R si(s[i]);
        A[i][0] = R(1);
        A[i][1] = si;
        A[i][2] = si * si;
        A[i][3] = si * si * si;
        A[i][4] = g[i];
    }
    for (int col = 0; col < 4; ++col) {
        int piv = col;
        for (int row = col + 1; row < 4; ++row)
            if (mag(A[row][col]) > mag(A[piv][col])) piv = row;
        for (int k = 0; k < 5; ++k) std::swap(A[col][k], A[piv][k]);
        if (mag(A[col][col]) == 0) return std::nullopt;
        for (int row = col + 1; row < 4; ++row) {
            R f = A[row][col] / A[col][col];
            for (int k = col; k < 5; ++k) A[row][k] = A[row][k] - f * A[col][k];
        }
    }
    R b[4];
    for (int i = 3; i >= 0; --i) {
        R acc = A[i][4];
        for (int k = i + 1; k < 4; ++k) acc = acc - A[i][k] * b[k];
        b[i] = acc / A[i][i];
    }

    R scale = mag(b[0]);
    for (int i = 1; i < 4; ++i) scale = std::max(scale, mag(b[i]));
    if (scale == 0 || mag(b[0]) < scale * 1e-6) return std::nullopt;

    // residual check at s = 3
    R x3 = r + 3 * h;
    if (!p.in_domain(x3)) return std::nullopt;
    R g3 = p.f(x3) / int_pow(3 * h, m);
    R pred = b[0] + 3 * b[1] + 9 * b[2] + 27 * b[3];
    R mis = mag(g3 - pred);
    R ref = std::max(mag(g3), mag(pred));
    if (!(mis <= ref * 1e-3)) return std::nullopt;

    R c1 = b[1] / (b[0] * h);
    R c2 = b[2] / (b[0] * h * h);
    return ((2 + m) * c1 * c1 - 2 * (m - 1) * c2) / (R(2) * m * m);
}

} // namespace mzeros
