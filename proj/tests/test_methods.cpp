#include <catch2/catch_amalgamated.hpp>

#include <mzeros/convergence.hpp>
#include <mzeros/methods.hpp>
#include <mzeros/problem.hpp>
#include <mzeros/scalar.hpp>

#include <complex>
#include <random>
#include <stdexcept>

using namespace mzeros;

namespace {

template <class R>
Problem<R> pure_power(int m) {
    Problem<R> p;
    p.name = "pow";
    p.m = m;
    p.roots = {R(0)};
    p.f = [m](const R& x) { return int_pow(x, m); };
    p.df = [m](const R& x) { return R(m) * int_pow(x, m - 1); };
    p.d2f = [m](const R& x) { return R(m * (m - 1)) * int_pow(x, m - 2); };
    return p;
}

} // namespace

TEST_CASE("method names round-trip through the parser", "[methods]") {
    for (Method m : {Method::mnewton, Method::pp, Method::mpp, Method::osada,
                     Method::dong, Method::chun})
        CHECK(parse_method(method_name(m)) == m);
    CHECK_FALSE(parse_method("halley").has_value());
}

TEST_CASE("int_pow handles zero and negative exponents", "[methods]") {
    CHECK(int_pow(2.0, 10) == 1024.0);
    CHECK(int_pow(2.0, 0) == 1.0);
    CHECK(int_pow(0.0, 0) == 1.0);        // the 0^0 = 1 convention the steppers rely on
    CHECK(int_pow(2.0, -2) == 0.25);
    PrecisionGuard guard(100);
    CHECK(int_pow(mpreal(3), 4) == 81);
    CHECK(int_pow(mpreal(0), 0) == 1);
    using C = std::complex<double>;
    CHECK(int_pow(C(0, 1), 2) == C(-1, 0));
}

TEST_CASE("two-step coefficient table", "[methods]") {
    auto c1 = mpp_coefficients<double>(1);
    CHECK(c1.a == -1.0);
    CHECK(c1.b == 1.0);
    CHECK(c1.m_pow_m == 1.0);
    auto c2 = mpp_coefficients<double>(2);
    CHECK(c2.a == 0.0);
    CHECK(c2.b == 1.0);
    CHECK(c2.m_pow_m == 4.0);
    auto c3 = mpp_coefficients<double>(3);
    CHECK(c3.a == 4.0);
    CHECK(c3.b == 4.0);
    CHECK(c3.m_pow_m == 27.0);
    auto c4 = mpp_coefficients<double>(4);
    CHECK(c4.a == 54.0);
    CHECK(c4.b == 27.0);
    CHECK(c4.m_pow_m == 256.0);
    PrecisionGuard guard(100);
    auto m3 = mpp_coefficients<mpreal>(3);
    CHECK(m3.a == 4);
    CHECK(m3.m_pow_m == 27);
}

TEST_CASE("one step from x=1 on x^2 lands exactly on the root", "[methods]") {
    // With m = 2 the correction terms cancel in exact binary arithmetic.
    auto pd = pure_power<double>(2);
    CHECK(step(pd, {Method::mnewton, 2}, 1.0).next == 0.0);
    CHECK(step(pd, {Method::mpp, 2}, 1.0).next == 0.0);
    CHECK(step(pd, {Method::osada, 2}, 1.0).next == 0.0);
    CHECK(step(pd, {Method::chun, 2}, 1.0).next == 0.0);
    PrecisionGuard guard(100);
    auto pm = pure_power<mpreal>(2);
    CHECK(step(pm, {Method::mpp, 2}, mpreal(1)).next == 0);
    CHECK(step(pm, {Method::osada, 2}, mpreal(1)).next == 0);
    CHECK(step(pm, {Method::chun, 2}, mpreal(1)).next == 0);

    // Same cancellation for the two-step sqrt(m) method at m = 4 (y = 1/2,
    // correction factor 32 exactly representable).
    auto q4 = pure_power<double>(4);
    CHECK(step(q4, {Method::dong, 4}, 1.0).next == 0.0);
    auto qm4 = pure_power<mpreal>(4);
    CHECK(step(qm4, {Method::dong, 4}, mpreal(1)).next == 0);

    // m = 2 and m = 3 cases involve irrational coefficients: one step gets
    // within a few ulp of zero but not exactly onto it.
    CHECK(mag(step(pd, {Method::dong, 2}, 1.0).next) <= 1e-15);
    auto p3 = pure_power<double>(3);
    CHECK(mag(step(p3, {Method::mpp, 3}, 1.0).next) <= 1e-14);
    auto pm3 = pure_power<mpreal>(3);
    CHECK(mag(step(pm3, {Method::mpp, 3}, mpreal(1)).next) <= parse_real<mpreal>("1e-98"));
}

TEST_CASE("one step on a pure power contracts to the 100-digit floor", "[methods]") {
    PrecisionGuard guard(100);
    const mpreal bound = parse_real<mpreal>("1e-90");
    for (int m = 2; m <= 10; ++m) {
        auto p = pure_power<mpreal>(m);
        for (Method meth : {Method::mpp, Method::osada, Method::dong, Method::chun}) {
            for (const char* s : {"1", "1.7"}) {
                mpreal x0 = parse_real<mpreal>(s);
                auto out = step(p, MethodSpec{meth, m}, x0);
                CAPTURE(m, method_name(meth), s);
                REQUIRE(out.ok());
                CHECK(mag(out.next) <= bound * mag(x0));
            }
        }
    }
}

TEST_CASE("the sign printed in the sqrt(m) two-step method matters", "[methods]") {
    // On f(x) = x^2 from x0 = 1 the corrected '-' first step hits the root to
    // roundoff, while the '+' variant jumps to -(4 + 3 sqrt 2) = -8.2426...
    PrecisionGuard guard(100);
    auto pm = pure_power<mpreal>(2);
    MethodSpec plus{Method::dong, 2, -1.0, DongSign::as_printed_plus};
    MethodSpec minus{Method::dong, 2, -1.0, DongSign::corrected_minus};

    auto op = step(pm, plus, mpreal(1));
    auto om = step(pm, minus, mpreal(1));
    REQUIRE(op.ok());
    REQUIRE(om.ok());
    REQUIRE(op.intermediate.has_value());

    mpreal half_sqrt2 = sqrt(mpreal(2)) / 2;
    CHECK(mag(*op.intermediate - (1 + half_sqrt2)) < parse_real<mpreal>("1e-98"));
    CHECK(mag(*om.intermediate - (1 - half_sqrt2)) < parse_real<mpreal>("1e-98"));

    mpreal target = -(4 + 3 * sqrt(mpreal(2)));
    CHECK(mag(op.next - target) < parse_real<mpreal>("1e-95"));
    CHECK(mag(om.next) < parse_real<mpreal>("1e-99"));

    auto pd = pure_power<double>(2);
    auto od = step(pd, plus, 1.0);
    CHECK(od.next == Catch::Approx(-8.242640687119285).epsilon(1e-12));
    CHECK(mag(step(pd, minus, 1.0).next) <= 1e-15);
}

TEST_CASE("the sqrt(m) two-step method requires m >= 2", "[methods]") {
    auto p = pure_power<double>(2);
    auto out = step(p, MethodSpec{Method::dong, 1}, 0.5);
    CHECK(out.flag == StepFlag::unsupported);
    CHECK_FALSE(out.ok());
}

TEST_CASE("curvature methods need a second derivative", "[methods]") {
    auto p = pure_power<double>(2);
    p.d2f = nullptr;
    CHECK(step(p, {Method::osada, 2}, 0.5).flag == StepFlag::unsupported);
    CHECK(step(p, {Method::chun, 2}, 0.5).flag == StepFlag::unsupported);
    // ...but the coefficient of the curvature term vanishes at m = 1, so the
    // steppers reduce to Newton and no longer require it.
    Problem<double> q;
    q.name = "sin";
    q.m = 1;
    q.roots = {0.0};
    q.f = [](const double& x) { return std::sin(x); };
    q.df = [](const double& x) { return std::cos(x); };
    auto o = step(q, {Method::osada, 1}, 0.5);
    CHECK(o.ok());
    CHECK(o.next == Catch::Approx(0.5 - std::tan(0.5)).margin(1e-15));
    auto c = step(q, {Method::chun, 1, 1.0}, 0.5);
    CHECK(c.ok());
    CHECK(c.next == o.next);
}

TEST_CASE("failure flags: derivative_zero, domain_error, nonfinite", "[methods]") {
    Problem<double> flat;
    flat.name = "x2p1";
    flat.m = 1;
    flat.roots = {0.0};
    flat.f = [](const double& x) { return x * x + 1; };
    flat.df = [](const double& x) { return 2 * x; };
    CHECK(step(flat, {Method::mpp, 1}, 0.0).flag == StepFlag::derivative_zero);

    PrecisionGuard guard(100);
    auto reg = real_problems<mpreal>();
    const auto& f2 = find_problem(reg, "f2");
    CHECK(step(f2, {Method::mpp, f2.m}, parse_real<mpreal>("-2")).flag ==
          StepFlag::domain_error);

    auto regd = real_problems<double>();
    const auto& f1 = find_problem(regd, "f1");
    CHECK(step(f1, {Method::mpp, f1.m}, 40.0).flag == StepFlag::nonfinite);

    // a failed step reports next == x so traces stay well-formed
    auto bad = step(flat, {Method::mpp, 1}, 0.0);
    CHECK(bad.next == 0.0);
}

TEST_CASE("classic two-step method ignores the multiplicity parameter", "[methods]") {
    auto p = pure_power<double>(2);
    auto a = step(p, {Method::pp, 1}, 1.0);
    auto b = step(p, {Method::pp, 7}, 1.0);
    CHECK(a.next == b.next);
    CHECK(*a.intermediate == *b.intermediate);
    CHECK(a.next == 0.375);    // y = 1/2, next = 1 - (1 + 1/4)/2
}

TEST_CASE("at m = 1 the modified two-step method is bitwise the classic one", "[methods]") {
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    MethodSpec modified{Method::mpp, 1};
    MethodSpec classic{Method::pp, 1};

    auto regd = complex_problems<std::complex<double>>();
    PrecisionGuard guard(100);
    auto regm = complex_problems<Cplx<mpreal>>();

    int checked = 0;
    for (int i = 0; i < 100; ++i) {
        const double a = u(rng), b = u(rng);
        for (const auto& p : regd) {
            if (p.m != 1) continue;
            std::complex<double> z(a, b);
            if (!p.in_domain(z)) continue;
            auto o1 = step(p, modified, z);
            auto o2 = step(p, classic, z);
            REQUIRE(o1.flag == o2.flag);
            if (o1.ok()) {
                CHECK(o1.next == o2.next);
                CHECK(*o1.intermediate == *o2.intermediate);
                ++checked;
            }
        }
        for (const auto& p : regm) {
            if (p.m != 1) continue;
            Cplx<mpreal> z{mpreal(a), mpreal(b)};
            if (!p.in_domain(z)) continue;
            auto o1 = step(p, modified, z);
            auto o2 = step(p, classic, z);
            REQUIRE(o1.flag == o2.flag);
            if (o1.ok()) {
                CHECK(o1.next == o2.next);
                CHECK(*o1.intermediate == *o2.intermediate);
                ++checked;
            }
        }
    }
    CHECK(checked >= 500);
}

TEST_CASE("at gamma = 1 the parametric family reproduces the curvature method bitwise",
          "[methods]") {
    PrecisionGuard guard(100);
    auto reg = real_problems<mpreal>();
    for (const auto& p : reg) {
        CAPTURE(p.name);
        mpreal x = *p.start;
        MethodSpec osada{Method::osada, p.m};
        MethodSpec chun1{Method::chun, p.m, 1.0};
        for (int k = 0; k < 3; ++k) {
            auto a = step(p, osada, x);
            auto b = step(p, chun1, x);
            REQUIRE(a.ok());
            REQUIRE(b.ok());
            CHECK(a.next == b.next);
            x = a.next;
        }
    }
}

TEST_CASE("multiplicity-aware Newton converges quadratically", "[methods]") {
    PrecisionGuard guard(240);
    auto reg = real_problems<mpreal>();
    const auto& f1 = find_problem(reg, "f1");
    auto tr = iterate(f1, {Method::mnewton, f1.m}, parse_real<mpreal>("0.3"), 5);
    auto q = coc(tr, f1.root());
    REQUIRE(q.has_value());
    CHECK(double(*q) == Catch::Approx(2.0).margin(0.02));
    // plain Newton (m = 1) on the same sextuple root crawls linearly
    auto tn = iterate(f1, {Method::mnewton, 1}, parse_real<mpreal>("0.3"), 12);
    auto qn = coc(tn, f1.root());
    REQUIRE(qn.has_value());
    CHECK(double(*qn) == Catch::Approx(1.0).margin(0.05));
}

TEST_CASE("each third-order method cuts the error cubically on a benchmark root",
          "[methods]") {
    PrecisionGuard guard(240);
    auto reg = real_problems<mpreal>();
    const auto& f4 = find_problem(reg, "f4");
    for (Method meth : {Method::mpp, Method::osada, Method::dong, Method::chun}) {
        CAPTURE(method_name(meth));
        auto tr = iterate(f4, MethodSpec{meth, f4.m}, parse_real<mpreal>("1.2"), 4);
        auto q = coc(tr, f4.root());
        REQUIRE(q.has_value());
        CHECK(double(*q) == Catch::Approx(3.0).margin(0.01));
    }
}

TEST_CASE("asymptotic error constants match the series expansion", "[methods]") {
    PrecisionGuard guard(100);
    auto reg = real_problems<mpreal>();
    struct Row { const char* name; const char* value; };
    // closed forms: 29/9, -37/56, -3463/144, 519/2000, -1/16 + pi^2/288
    const Row rows[] = {
        {"f1", "3.222222222222222222222222222222222222222"},
        {"f2", "-0.6607142857142857142857142857142857142857"},
        {"f3", "-24.04861111111111111111111111111111111111"},
        {"f4", "0.2595"},
        {"f5", "-0.02823054027399528257349135069487447522461"},
    };
    for (const auto& row : rows) {
        const auto& p = find_problem(reg, row.name);
        auto C = asymptotic_error_constant(p, p.m);
        REQUIRE(C.has_value());
        mpreal want = parse_real<mpreal>(row.value);
        CAPTURE(row.name);
        CHECK(mag(*C - want) <= mag(want) * parse_real<mpreal>("1e-12"));
    }
}

TEST_CASE("asymptotic error constant on synthetic polynomials", "[methods]") {
    PrecisionGuard guard(100);
    for (int m = 2; m <= 6; ++m) {
        auto p = pure_power<mpreal>(m);
        auto C = asymptotic_error_constant(p, m);
        REQUIRE(C.has_value());
        CHECK(mag(*C) <= parse_real<mpreal>("1e-30"));   // x^m has no higher terms
    }
    Problem<mpreal> p2;
    p2.name = "x2(1+x)";
    p2.m = 2;
    p2.roots = {mpreal(0)};
    p2.f = [](const mpreal& x) { return x * x * (1 + x); };
    auto C2 = asymptotic_error_constant(p2, 2);
    REQUIRE(C2.has_value());
    CHECK(mag(*C2 - parse_real<mpreal>("0.5")) <= parse_real<mpreal>("1e-10"));

    Problem<mpreal> p3;
    p3.name = "x3(1+x)";
    p3.m = 3;
    p3.roots = {mpreal(0)};
    p3.f = [](const mpreal& x) { return x * x * x * (1 + x); };
    auto C3 = asymptotic_error_constant(p3, 3);
    REQUIRE(C3.has_value());
    mpreal want = mpreal(5) / 18;
    CHECK(mag(*C3 - want) <= want * parse_real<mpreal>("1e-10"));
}

TEST_CASE("asymptotic error constant rejects a wrong multiplicity claim", "[methods]") {
    PrecisionGuard guard(100);
    CHECK_FALSE(asymptotic_error_constant(pure_power<mpreal>(3), 2).has_value());
    CHECK_FALSE(asymptotic_error_constant(pure_power<mpreal>(2), 3).has_value());
    auto reg = real_problems<mpreal>();
    const auto& f1 = find_problem(reg, "f1");   // true multiplicity 6
    CHECK_FALSE(asymptotic_error_constant(f1, 5).has_value());
    CHECK_FALSE(asymptotic_error_constant(f1, 7).has_value());
}
