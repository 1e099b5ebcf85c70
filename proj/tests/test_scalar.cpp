#include <catch2/catch_amalgamated.hpp>

#include <mzeros/scalar.hpp>

#include <complex>
#include <stdexcept>

using namespace mzeros;

TEST_CASE("precision guard restores the previous working precision", "[scalar]") {
    set_precision(100);
    REQUIRE(current_precision() == 100);
    {
        PrecisionGuard guard(240);
        CHECK(current_precision() == 240);
        {
            PrecisionGuard inner(60);
            CHECK(current_precision() == 60);
        }
        CHECK(current_precision() == 240);
    }
    CHECK(current_precision() == 100);
}

TEST_CASE("mpreal carries the requested number of decimal digits", "[scalar]") {
    PrecisionGuard guard(100);
    mpreal third = mpreal(1) / 3;
    mpreal err = fabs(third * 3 - 1);
    CHECK(err < parse_real<mpreal>("1e-99"));
    CHECK(err >= 0);

    // 100-digit arithmetic must resolve what double cannot
    mpreal a = parse_real<mpreal>("1e-40");
    CHECK(mpreal(1) + a != mpreal(1));
    CHECK(1.0 + 1e-40 == 1.0);
}

TEST_CASE("parse_real accepts plain and scientific literals", "[scalar]") {
    CHECK(parse_real<double>("0.25") == 0.25);
    CHECK(parse_real<double>("-3e2") == -300.0);
    CHECK(parse_real<double>("1e-3") == 1e-3);
    PrecisionGuard guard(100);
    CHECK(parse_real<mpreal>("0.25") == mpreal(1) / 4);
    CHECK(parse_real<mpreal>("-3e2") == -300);
}

TEST_CASE("parse_real rejects trailing garbage", "[scalar]") {
    CHECK_THROWS_AS(parse_real<double>("1.2x"), std::invalid_argument);
    CHECK_THROWS_AS(parse_real<double>("abc"), std::invalid_argument);
    PrecisionGuard guard(100);
    CHECK_THROWS(parse_real<mpreal>("abc"));
}

TEST_CASE("parse_scalar understands complex literals", "[scalar]") {
    using C = std::complex<double>;
    CHECK(parse_scalar<C>("1+2i") == C(1, 2));
    CHECK(parse_scalar<C>("-3.5-4e-2i") == C(-3.5, -0.04));
    CHECK(parse_scalar<C>("i") == C(0, 1));
    CHECK(parse_scalar<C>("-i") == C(0, -1));
    CHECK(parse_scalar<C>("2i") == C(0, 2));
    CHECK(parse_scalar<C>("1.5") == C(1.5, 0));
    CHECK(parse_scalar<C>("1 + 2i") == C(1, 2));     // embedded spaces allowed
    CHECK(parse_scalar<C>("1e-2+3e+1i") == C(0.01, 30));
    CHECK(parse_scalar<double>("0.5") == 0.5);
    CHECK_THROWS(parse_scalar<C>(""));

    PrecisionGuard guard(100);
    using M = Cplx<mpreal>;
    M z = parse_scalar<M>("0.5-0.25i");
    CHECK(z.re == parse_real<mpreal>("0.5"));
    CHECK(z.im == parse_real<mpreal>("-0.25"));
}

TEST_CASE("Cplx arithmetic matches std::complex", "[scalar]") {
    PrecisionGuard guard(100);
    using M = Cplx<mpreal>;
    using C = std::complex<double>;
    const C a(1.25, -2.5), b(-0.75, 0.375);
    const M am(parse_real<mpreal>("1.25"), parse_real<mpreal>("-2.5"));
    const M bm(parse_real<mpreal>("-0.75"), parse_real<mpreal>("0.375"));

    auto close = [](const M& x, const C& y) {
        return fabs(x.re - mpreal(y.real())) < 1e-12 && fabs(x.im - mpreal(y.imag())) < 1e-12;
    };
    CHECK(close(am + bm, a + b));
    CHECK(close(am - bm, a - b));
    CHECK(close(am * bm, a * b));
    CHECK(close(am / bm, a / b));
    CHECK(close(-am, -a));
    CHECK(close(conj(am), std::conj(a)));
    CHECK(close(am * mpreal(3), a * 3.0));
    CHECK(close(am / mpreal(2), a / 2.0));
    CHECK(am == am);
    CHECK(am != bm);
    CHECK(M(mpreal(2)) == M(mpreal(2), mpreal(0)));
}

TEST_CASE("mag, finite and real_part work across all scalar types", "[scalar]") {
    PrecisionGuard guard(100);
    CHECK(mag(-2.5) == 2.5);
    CHECK(mag(parse_real<mpreal>("-2.5")) == parse_real<mpreal>("2.5"));
    CHECK(mag(std::complex<double>(3, 4)) == 5.0);
    Cplx<mpreal> z(mpreal(3), mpreal(4));
    CHECK(mag(z) == 5);
    CHECK(real_part(std::complex<double>(3, 4)) == 3.0);
    CHECK(real_part(z) == 3);
    CHECK(real_part(2.5) == 2.5);

    CHECK(mzeros::finite(1.0));
    CHECK_FALSE(mzeros::finite(std::numeric_limits<double>::infinity()));
    CHECK_FALSE(mzeros::finite(std::numeric_limits<double>::quiet_NaN()));
    CHECK_FALSE(mzeros::finite(std::complex<double>(1, std::numeric_limits<double>::infinity())));
    mpreal bad = mpreal(1) / 0;
    CHECK_FALSE(mzeros::finite(bad));
    CHECK(mzeros::finite(z));
    CHECK_FALSE(mzeros::finite(Cplx<mpreal>(bad, mpreal(0))));
}

TEST_CASE("format_ref truncates to three significant digits", "[scalar]") {
    PrecisionGuard guard(100);
    auto ref = [](const char* s) { return format_ref(parse_real<mpreal>(s)); };
    CHECK(ref("0.9999") == "0.999e+0");          // truncation, not rounding
    CHECK(ref("1.84797e-9") == "0.184e-8");
    CHECK(ref("12345") == "0.123e+5");
    CHECK(ref("-0.00123456") == "-0.123e-2");
    CHECK(ref("1") == "0.100e+1");
    CHECK(ref("-2.5") == "-0.250e+1");
    CHECK(format_ref(mpreal(0)) == "0");
    CHECK(format_ref(0.125) == "0.125e+0");
    CHECK(format_ref(mpreal(1) / 0) == "nan");
}

TEST_CASE("format_full round-trips through parse_real", "[scalar]") {
    PrecisionGuard guard(100);
    mpreal v = parse_real<mpreal>("0.1") / 3;
    mpreal back = parse_real<mpreal>(format_full(v));
    CHECK(fabs(back - v) <= fabs(v) * parse_real<mpreal>("1e-98"));
    double d = 0.1 / 3;
    CHECK(parse_real<double>(format_full(d)) == d);
}

TEST_CASE("format_4dp rounds to four decimals", "[scalar]") {
    PrecisionGuard guard(100);
    CHECK(format_4dp(parse_real<mpreal>("3.00004")) == "3.0000");
    CHECK(format_4dp(parse_real<mpreal>("2.99996")) == "3.0000");
    CHECK(format_4dp(3.10103) == "3.1010");
    CHECK(format_4dp(-0.66071) == "-0.6607");
}
