#pragma once

// Regression-table pipeline: for each (problem, method) pair, run three
// iterations at the display precision and report |x_k - x*| for k = 1..3,
// plus COC/ACOC estimates.
//
// The order estimates come from a second, higher-precision run of four
// iterations: with third-order methods the fourth error can land below the
// resolution of 100-digit arithmetic near a nonzero root (|x*| * 1e-100),
// where log-ratios turn into noise.  240 digits keeps the estimator sound
// for every registered problem while leaving the displayed errors bitwise
// identical to the display-precision run.

#include "convergence.hpp"

#include <sstream>

namespace mzeros {

struct TableOptions {
    std::vector<std::string> problems;       // empty = all registered
    std::vector<Method> methods;             // empty = {mpp, osada, dong, chun}
    unsigned precision = 100;                // display precision (digits10)
    unsigned order_precision = 240;          // COC/ACOC trace precision
    std::optional<std::string> x0;           // override the registered start
    double gamma = -1.0;
    DongSign dong_sign = DongSign::corrected_minus;
};

struct TableCell {
    std::string problem, method;
    unsigned precision = 0;
    std::string err_ref[3];                  // "0.ddde±k" or "—"
    std::string err_full[3];                 // full precision, "" if missing
    std::optional<double> coc, acoc;
    std::string coc_full, acoc_full;
    std::string termination;
    bool complete = false;
};

inline TableCell run_table_cell(const std::string& pname, Method kind,
                                const TableOptions& opt) {
    TableCell cell;
    cell.problem = pname;
    cell.method = method_name(kind);
    cell.precision = opt.precision;
    for (auto& s : cell.err_ref) s = "—";

    auto trace_at = [&](unsigned digits, int budget) {
        PrecisionGuard guard(digits);
        auto ps = real_problems<mpreal>();
        const auto& p = find_problem(ps, pname);
        MethodSpec spec{kind, p.m, opt.gamma, opt.dong_sign};
        mpreal x0 = opt.x0 ? parse_real<mpreal>(*opt.x0) : *p.start;
        auto tr = iterate(p, spec, x0, budget);
        return std::tuple(errors_vs(tr.iterates, p.root()), coc(tr, p.root()),
                          acoc(tr), tr);
    };

    {   // display pass: exactly three iterations
        auto [e, c, a, tr] = trace_at(opt.precision, 3);
        (void)c; (void)a;
        for (std::size_t k = 1; k < e.size() && k <= 3; ++k) {
            cell.err_ref[k - 1] = format_ref(e[k]);
            cell.err_full[k - 1] = format_full(e[k]);
        }
        cell.termination = termination_name(tr.termination);
        if (tr.termination == Termination::failure)
            cell.termination += std::string(":") + step_flag_name(tr.failure_flag);
    }
    {   // order pass
        auto [e, c, a, tr] = trace_at(std::max(opt.order_precision, opt.precision), 4);
        (void)e; (void)tr;
        if (c) { cell.coc = double(*c); cell.coc_full = format_full(*c); }
        if (a) { cell.acoc = double(*a); cell.acoc_full = format_full(*a); }
    }
    cell.complete = cell.coc && cell.acoc && !cell.err_full[2].empty();
    return cell;
}

inline std::vector<TableCell> run_table(const TableOptions& opt) {
    std::vector<std::string> problems = opt.problems;
    if (problems.empty()) problems = {"f1", "f2", "f3", "f4", "f5"};
    std::vector<Method> methods = opt.methods;
    if (methods.empty()) methods = {Method::mpp, Method::osada, Method::dong, Method::chun};
    std::vector<TableCell> cells;
    for (const auto& pn : problems)
        for (Method mk : methods)
            cells.push_back(run_table_cell(pn, mk, opt));
    return cells;
}

inline std::string table_csv(const std::vector<TableCell>& cells) {
    std::ostringstream os;
    os << "problem,method,precision_digits,err1,err2,err3,coc,acoc,termination\n";
    for (const auto& c : cells) {
        os << c.problem << ',' << c.method << ',' << c.precision;
        for (const auto& e : c.err_full) os << ',' << e;
        os << ',' << c.coc_full << ',' << c.acoc_full << ',' << c.termination << '\n';
    }
    return os.str();
}

inline std::string table_text(const std::vector<TableCell>& cells) {
    auto pad = [](std::string s, std::size_t w) {
        // std::setw miscounts the multibyte em dash, so pad by code points
        std::size_t len = 0;
        for (char ch : s)
            if ((static_cast<unsigned char>(ch) & 0xC0) != 0x80) ++len;
        while (len++ < w) s.push_back(' ');
        return s;
    };
    std::ostringstream os;
    os << pad("problem", 9) << pad("method", 9) << pad("|x1-x*|", 13)
       << pad("|x2-x*|", 13) << pad("|x3-x*|", 13) << pad("COC", 8)
       << pad("ACOC", 8) << "termination\n";
    for (const auto& c : cells) {
        os << pad(c.problem, 9) << pad(c.method, 9);
        for (const auto& e : c.err_ref) os << pad(e, 13);
        os << pad(c.coc ? format_4dp(*c.coc) : "—", 8)
           << pad(c.acoc ? format_4dp(*c.acoc) : "—", 8) << c.termination << '\n';
    }
    return os.str();
}

} // namespace mzeros
