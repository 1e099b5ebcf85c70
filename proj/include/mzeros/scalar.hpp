#pragma once

// Scalar tower: hardware double / std::complex<double> for raster work,
// MPFR-backed decimal floats (runtime precision) for high-accuracy tables,
// plus a minimal complex-over-mpreal type so every stepper is generic.

#include <boost/multiprecision/mpfr.hpp>

#include <cmath>
#include <complex>
#include <cstdio>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <type_traits>

namespace mzeros {

using mpreal = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                             boost::multiprecision::et_off>;

// Sets the working precision (decimal digits) for all mpreals created while alive.
// Numeric constants baked into problem registries are captured at construction
// time, so build registries *after* selecting the precision.
class PrecisionGuard {
public:
    explicit PrecisionGuard(unsigned digits10)
        : saved_(mpreal::default_precision()) {
        mpreal::default_precision(digits10);
    }
    ~PrecisionGuard() { mpreal::default_precision(saved_); }
    PrecisionGuard(const PrecisionGuard&) = delete;
    PrecisionGuard& operator=(const PrecisionGuard&) = delete;

private:
    unsigned saved_;
};

inline void set_precision(unsigned digits10) { mpreal::default_precision(digits10); }
inline unsigned current_precision() { return mpreal::default_precision(); }

// ---------------------------------------------------------------------------
// complex over an arbitrary real type (std::complex<mpreal> is not guaranteed
// to work, so spell out the field operations)

template <class R>
struct Cplx {
    R re{}, im{};

    Cplx() = default;
    Cplx(R r) : re(std::move(r)) {}
    Cplx(R r, R i) : re(std::move(r)), im(std::move(i)) {}

    friend Cplx operator+(const Cplx& a, const Cplx& b) { return {a.re + b.re, a.im + b.im}; }
    friend Cplx operator-(const Cplx& a, const Cplx& b) { return {a.re - b.re, a.im - b.im}; }
    friend Cplx operator-(const Cplx& a) { return {-a.re, -a.im}; }
    friend Cplx operator*(const Cplx& a, const Cplx& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend Cplx operator*(const R& s, const Cplx& a) { return {s * a.re, s * a.im}; }
    friend Cplx operator*(const Cplx& a, const R& s) { return {a.re * s, a.im * s}; }
    friend Cplx operator/(const Cplx& a, const Cplx& b) {
        R n = b.re * b.re + b.im * b.im;
        return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
    }
    friend Cplx operator/(const Cplx& a, const R& s) { return {a.re / s, a.im / s}; }
    friend bool operator==(const Cplx& a, const Cplx& b) { return a.re == b.re && a.im == b.im; }
    friend bool operator!=(const Cplx& a, const Cplx& b) { return !(a == b); }
};

template <class R>
Cplx<R> conj(const Cplx<R>& z) { return {z.re, -z.im}; }

// ---------------------------------------------------------------------------
// traits

template <class S> struct scalar_traits;

template <> struct scalar_traits<double> {
    using real_type = double;
    static constexpr bool is_complex = false;
};
template <> struct scalar_traits<mpreal> {
    using real_type = mpreal;
    static constexpr bool is_complex = false;
};
template <> struct scalar_traits<std::complex<double>> {
    using real_type = double;
    static constexpr bool is_complex = true;
};
template <class R> struct scalar_traits<Cplx<R>> {
    using real_type = R;
    static constexpr bool is_complex = true;
};

template <class S> using real_of = typename scalar_traits<S>::real_type;
template <class S> inline constexpr bool is_complex_v = scalar_traits<S>::is_complex;

inline double mag(double x) { return std::fabs(x); }
inline mpreal mag(const mpreal& x) { return abs(x); }
inline double mag(const std::complex<double>& z) { return std::abs(z); }
template <class R> R mag(const Cplx<R>& z) { return hypot(z.re, z.im); }

inline bool finite(double x) { return std::isfinite(x); }
inline bool finite(const mpreal& x) { return boost::multiprecision::isfinite(x); }
inline bool finite(const std::complex<double>& z) { return finite(z.real()) && finite(z.imag()); }
template <class R> bool finite(const Cplx<R>& z) { return finite(z.re) && finite(z.im); }

inline double real_part(double x) { return x; }
inline mpreal real_part(const mpreal& x) { return x; }
inline double real_part(const std::complex<double>& z) { return z.real(); }
template <class R> R real_part(const Cplx<R>& z) { return z.re; }

// ---------------------------------------------------------------------------
// parsing: "<re>", "<im>i", "<re>+<im>i", "<re>-<im>i" ("i" alone means 1i)

template <class R>
R parse_real(const std::string& s) {
    if constexpr (std::is_same_v<R, double>) {
        std::size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("trailing characters in number: " + s);
        return v;
    } else {
        return mpreal(s);
    }
}

namespace detail {
// index of the '+'/'-' separating real and imaginary parts, or npos
inline std::size_t split_point(const std::string& s) {
    for (std::size_t i = s.size(); i-- > 1;) {
        char c = s[i];
        if ((c == '+' || c == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') return i;
    }
    return std::string::npos;
}
} // namespace detail

template <class S>
S parse_scalar(std::string s) {
    using R = real_of<S>;
    std::erase(s, ' ');
    if (s.empty()) throw std::invalid_argument("empty scalar literal");
    if constexpr (!is_complex_v<S>) {
        return parse_real<R>(s);
    } else {
        if (s.back() != 'i') return S(parse_real<R>(s));
        s.pop_back();
        std::size_t cut = detail::split_point(s);
        std::string res = (cut == std::string::npos) ? std::string() : s.substr(0, cut);
        std::string ims = (cut == std::string::npos) ? s : s.substr(cut);
        if (ims.empty() || ims == "+") ims = "1";
        else if (ims == "-") ims = "-1";
        R re = res.empty() ? R(0) : parse_real<R>(res);
        return S(re, parse_real<R>(ims));
    }
}

// ---------------------------------------------------------------------------
// formatting

// Reference style "0.ddde±k": mantissa in [0.1, 1), exactly three significant
// digits, *truncated* toward zero (the style used by the regression targets).
inline std::string format_ref(const mpreal& v) {
    if (v == 0) return "0";
    if (!finite(v)) return "nan";
    mpfr_exp_t exp = 0;
    char* digits = mpfr_get_str(nullptr, &exp, 10, 3, v.backend().data(), MPFR_RNDZ);
    std::string d(digits);
    mpfr_free_str(digits);
    std::string sign;
    if (!d.empty() && d[0] == '-') { sign = "-"; d.erase(0, 1); }
    char buf[32];
    std::snprintf(buf, sizeof buf, "e%+ld", static_cast<long>(exp));
    return sign + "0." + d + buf;
}

inline std::string format_ref(double v) { return format_ref(mpreal(v)); }

// full-precision round-trippable form for CSV output
inline std::string format_full(const mpreal& v) {
    return v.str(0, std::ios_base::scientific);
}
inline std::string format_full(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// four decimal places (order-of-convergence display)
template <class R>
std::string format_4dp(const R& v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4f", static_cast<double>(v));
    return buf;
}

} // namespace mzeros
