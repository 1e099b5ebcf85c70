#pragma once

// Orbit driver and computational order-of-convergence estimators.

#include "methods.hpp"

#include <vector>

namespace mzeros {

enum class Termination { max_iters, residual_tol, step_tol, failure };

inline const char* termination_name(Termination t) {
    switch (t) {
        case Termination::max_iters:    return "max_iters";
        case Termination::residual_tol: return "residual_tol";
        case Termination::step_tol:     return "step_tol";
        case Termination::failure:      return "failure";
    }
    return "?";
}

inline const char* step_flag_name(StepFlag f) {
    switch (f) {
        case StepFlag::ok:              return "ok";
        case StepFlag::derivative_zero: return "derivative_zero";
        case StepFlag::domain_error:    return "domain_error";
        case StepFlag::nonfinite:       return "nonfinite";
        case StepFlag::unsupported:     return "unsupported";
    }
    return "?";
}

template <class S>
struct IterationTrace {
    std::vector<S> iterates;                 // x0 .. xN
    Termination termination = Termination::max_iters;
    StepFlag failure_flag = StepFlag::ok;    // set when termination == failure

    int steps() const { return static_cast<int>(iterates.size()) - 1; }
};

// Runs up to `budget` steps.  The residual |f(x)| <= tol_residual is tested
// before each step (so a start already at a zero terminates after 0 steps);
// |x_{k+1} - x_k| <= tol_step is tested after each step.  A tolerance of 0
// still matches an exact zero.
template <class S>
IterationTrace<S> iterate(const Problem<S>& p, const MethodSpec& spec, const S& x0,
                          int budget,
                          const real_of<S>& tol_step = real_of<S>(0),
                          const real_of<S>& tol_residual = real_of<S>(0)) {
    IterationTrace<S> tr;
    tr.iterates.push_back(x0);
    S x = x0;
    for (int k = 0; k < budget; ++k) {
        if (p.in_domain(x)) {
            S fx = p.f(x);
            if (finite(fx) && mag(fx) <= tol_residual) {
                tr.termination = Termination::residual_tol;
                return tr;
            }
        }
        StepOutcome<S> out = step(p, spec, x);
        if (!out.ok()) {
            tr.termination = Termination::failure;
            tr.failure_flag = out.flag;
            return tr;
        }
        tr.iterates.push_back(out.next);
        if (mag(out.next - x) <= tol_step) {
            tr.termination = Termination::step_tol;
            return tr;
        }
        x = out.next;
    }
    tr.termination = Termination::max_iters;
    return tr;
}

template <class S>
std::vector<real_of<S>> errors_vs(const std::vector<S>& xs, const S& root) {
    std::vector<real_of<S>> e;
    e.reserve(xs.size());
    for (const auto& x : xs) e.push_back(mag(x - root));
    return e;
}

// order estimate from the last three entries of a positive sequence:
// log(v[n-1]/v[n-2]) / log(v[n-2]/v[n-3])
template <class R>
std::optional<R> order_from_sequence(const std::vector<R>& v) {
    using std::log;
    std::size_t n = v.size();
    if (n < 3) return std::nullopt;
    const R &a = v[n - 3], &b = v[n - 2], &c = v[n - 1];
    if (!(a > 0) || !(b > 0) || !(c > 0)) return std::nullopt;
    R den = log(b / a);
    if (den == 0 || !finite(den)) return std::nullopt;
    R num = log(c / b);
    if (!finite(num)) return std::nullopt;
    return num / den;
}

// COC: order estimate on the last three errors |x_k - x*|
template <class S>
std::optional<real_of<S>> coc(const IterationTrace<S>& tr, const S& root) {
    return order_from_sequence(errors_vs(tr.iterates, root));
}

// ACOC: same estimate on the last three step sizes |x_k - x_{k-1}|
// (needs four iterates, no knowledge of the root)
template <class S>
std::optional<real_of<S>> acoc(const IterationTrace<S>& tr) {
    std::vector<real_of<S>> d;
    for (std::size_t i = 1; i < tr.iterates.size(); ++i)
        d.push_back(mag(tr.iterates[i] - tr.iterates[i - 1]));
    return order_from_sequence(d);
}

} // namespace mzeros
