// Command-line front end: solve (single orbit report), table (regression
// table over the real problems), basin (attraction-basin PPM).
//
// Exit codes: 0 success, 1 runtime failure, 2 usage error.  Output is
// locale-independent and bitwise reproducible for identical flags.

#include "mzeros/basin.hpp"
#include "mzeros/table.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>

namespace {

using namespace mzeros;
using nlohmann::json;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

DongSign parse_dong_sign(const std::string& s) {
    if (s == "corrected-minus") return DongSign::corrected_minus;
    if (s == "as-printed-plus") return DongSign::as_printed_plus;
    throw UsageError("unknown --dong-sign value: " + s);
}

Method require_method(const std::string& s) {
    auto k = parse_method(s);
    if (!k) throw UsageError("unknown method: " + s);
    return *k;
}

bool is_real_problem(const std::string& name) {
    for (const auto& p : real_problems<double>())
        if (p.name == name) return true;
    return false;
}

bool is_complex_problem(const std::string& name) {
    for (const auto& p : complex_problems<std::complex<double>>())
        if (p.name == name) return true;
    return false;
}

unsigned parse_digits(const std::string& precision) {
    int d = 0;
    try {
        std::size_t pos = 0;
        d = std::stoi(precision, &pos);
        if (pos != precision.size()) d = 0;
    } catch (const std::exception&) {
        d = 0;
    }
    if (d < 2) throw UsageError("--precision wants a digit count >= 2 or \"double\"");
    return static_cast<unsigned>(d);
}

std::string format_scalar(const mpreal& x) { return format_full(x); }
std::string format_scalar(double x) { return format_full(x); }
std::string format_scalar(const Cplx<mpreal>& z) {
    return format_full(z.re) + (z.im < 0 ? " - " : " + ") + format_full(abs(z.im)) + "i";
}
std::string format_scalar(const std::complex<double>& z) {
    return format_full(z.real()) + (z.imag() < 0 ? " - " : " + ") +
           format_full(std::fabs(z.imag())) + "i";
}

int write_file(const std::string& path, const std::string& bytes, bool binary) {
    std::ofstream os(path, binary ? std::ios::binary : std::ios::out);
    if (!os || !(os << bytes) || !os.flush()) {
        std::cerr << "error: cannot write " << path << "\n";
        return 1;
    }
    return 0;
}

// ---------------------------------------------------------------------------
// solve

struct SolveCfg {
    std::string problem;
    std::string method = "mpp";
    int m = 0;                     // 0 = problem default
    double gamma = -1.0;
    std::string dong_sign = "corrected-minus";
    std::string x0;                // empty = registered start
    int iters = 8;
    std::string precision = "100";
    std::string tol_step = "0";
    std::string tol_residual = "0";
    bool dump = false;
};

template <class S>
int solve_with(const std::vector<Problem<S>>& ps, const SolveCfg& cfg) {
    using R = real_of<S>;
    const auto& p = find_problem(ps, cfg.problem);
    MethodSpec spec{require_method(cfg.method), cfg.m ? cfg.m : p.m, cfg.gamma,
                    parse_dong_sign(cfg.dong_sign)};
    S x0;
    if (!cfg.x0.empty())
        x0 = parse_scalar<S>(cfg.x0);
    else if (p.start)
        x0 = *p.start;
    else
        throw UsageError("problem " + p.name + " has no registered start, pass --x0");

    R tol_step = parse_real<R>(cfg.tol_step);
    R tol_residual = parse_real<R>(cfg.tol_residual);
    auto tr = iterate(p, spec, x0, cfg.iters, tol_step, tol_residual);

    // report errors against the root closest to the final iterate
    const S* root = nullptr;
    for (const auto& r : p.roots)
        if (!root || mag(tr.iterates.back() - r) < mag(tr.iterates.back() - *root))
            root = &r;

    std::cout << "problem " << p.name << "  method " << method_name(spec.kind)
              << "  m " << spec.m << "\n";
    for (std::size_t k = 0; k < tr.iterates.size(); ++k)
        std::cout << "x" << k << " = " << format_scalar(tr.iterates[k]) << "\n";
    if (root) {
        auto errs = errors_vs(tr.iterates, *root);
        for (std::size_t k = 1; k < errs.size(); ++k)
            std::cout << "err" << k << " = " << format_ref(errs[k]) << "\n";
    }
    if (root)
        if (auto c = coc(tr, *root)) std::cout << "COC = " << format_4dp(*c) << "\n";
    if (auto a = acoc(tr)) std::cout << "ACOC = " << format_4dp(*a) << "\n";
    std::cout << "termination: " << termination_name(tr.termination);
    if (tr.termination == Termination::failure)
        std::cout << " (" << step_flag_name(tr.failure_flag) << ")";
    std::cout << "\n";
    if (tr.termination == Termination::residual_tol || tr.termination == Termination::step_tol)
        std::cout << "converged at iteration " << tr.steps() << "\n";
    return tr.termination == Termination::failure ? 1 : 0;
}

int cmd_solve(const SolveCfg& cfg) {
    bool real = is_real_problem(cfg.problem);
    if (!real && !is_complex_problem(cfg.problem))
        throw UsageError("unknown problem: " + cfg.problem);
    require_method(cfg.method);
    parse_dong_sign(cfg.dong_sign);

    if (cfg.dump) {
        int m = cfg.m;
        std::string x0 = cfg.x0;
        if (real) {
            auto ps = real_problems<double>();
            const auto& p = find_problem(ps, cfg.problem);
            if (!m) m = p.m;
            if (x0.empty()) x0 = p.start_literal;
        } else if (!m) {
            auto ps = complex_problems<std::complex<double>>();
            m = find_problem(ps, cfg.problem).m;
        }
        json j{{"command", "solve"},   {"problem", cfg.problem},
               {"method", cfg.method}, {"m", m},
               {"gamma", cfg.gamma},   {"dong_sign", cfg.dong_sign},
               {"x0", x0},             {"iters", cfg.iters},
               {"precision", cfg.precision},
               {"tol_step", cfg.tol_step},
               {"tol_residual", cfg.tol_residual}};
        std::cout << j.dump(2) << "\n";
        return 0;
    }

    if (cfg.precision == "double") {
        if (real) return solve_with(real_problems<double>(), cfg);
        return solve_with(complex_problems<std::complex<double>>(), cfg);
    }
    PrecisionGuard guard(parse_digits(cfg.precision));
    if (real) return solve_with(real_problems<mpreal>(), cfg);
    return solve_with(complex_problems<Cplx<mpreal>>(), cfg);
}

// ---------------------------------------------------------------------------
// table

struct TableCfg {
    std::vector<std::string> problems;
    std::vector<std::string> methods;
    std::string precision = "100";
    unsigned order_precision = 240;
    std::string x0;
    double gamma = -1.0;
    std::string dong_sign = "corrected-minus";
    std::string out;               // empty = stdout
    std::string format = "text";
    bool dump = false;
};

int cmd_table(const TableCfg& cfg) {
    TableOptions opt;
    opt.problems = cfg.problems;
    for (const auto& n : cfg.problems)
        if (!is_real_problem(n)) throw UsageError("unknown problem: " + n);
    for (const auto& s : cfg.methods) opt.methods.push_back(require_method(s));
    opt.precision = parse_digits(cfg.precision);
    opt.order_precision = cfg.order_precision;
    if (!cfg.x0.empty()) opt.x0 = cfg.x0;
    opt.gamma = cfg.gamma;
    opt.dong_sign = parse_dong_sign(cfg.dong_sign);
    if (cfg.format != "csv" && cfg.format != "text")
        throw UsageError("table --format wants csv or text");

    if (cfg.dump) {
        json j{{"command", "table"},
               {"problems", cfg.problems.empty()
                                ? std::vector<std::string>{"f1", "f2", "f3", "f4", "f5"}
                                : cfg.problems},
               {"methods", cfg.methods.empty()
                               ? std::vector<std::string>{"mpp", "osada", "dong", "chun"}
                               : cfg.methods},
               {"precision", opt.precision},
               {"order_precision", opt.order_precision},
               {"x0", cfg.x0},
               {"gamma", cfg.gamma},
               {"dong_sign", cfg.dong_sign},
               {"out", cfg.out},
               {"format", cfg.format}};
        std::cout << j.dump(2) << "\n";
        return 0;
    }

    auto cells = mzeros::run_table(opt);
    std::string body = cfg.format == "csv" ? table_csv(cells) : table_text(cells);
    if (cfg.out.empty())
        std::cout << body;
    else if (int rc = write_file(cfg.out, body, false))
        return rc;
    for (const auto& c : cells)
        if (!c.complete) return 1;
    return 0;
}

// ---------------------------------------------------------------------------
// basin

struct BasinCfg {
    std::string problem;
    std::string method = "mpp";
    int m = 0;
    double gamma = -1.0;
    std::string dong_sign = "corrected-minus";
    int iters = 100;
    double tol = 1e-3;
    std::string grid = "-3:3:-3:3";
    std::string size = "256";
    int threads = 1;
    std::string out;               // empty = <problem>_<method>_<w>x<h>.ppm
    std::string format = "ppm";
    bool dump = false;
};

GridSpec parse_grid(const std::string& grid, const std::string& size) {
    GridSpec g;
    double v[4];
    std::size_t pos = 0;
    for (int i = 0; i < 4; ++i) {
        std::size_t next = grid.find(':', pos);
        std::string tok = grid.substr(pos, next == std::string::npos ? next : next - pos);
        if (tok.empty() || (next == std::string::npos) != (i == 3))
            throw UsageError("--grid wants re_min:re_max:im_min:im_max");
        v[i] = parse_real<double>(tok);
        pos = next + 1;
    }
    g.re_min = v[0]; g.re_max = v[1]; g.im_min = v[2]; g.im_max = v[3];
    if (!(g.re_min < g.re_max) || !(g.im_min < g.im_max))
        throw UsageError("--grid wants nonempty ranges");
    std::size_t x = size.find('x');
    g.width = std::stoi(size.substr(0, x));
    g.height = x == std::string::npos ? g.width : std::stoi(size.substr(x + 1));
    if (g.width <= 0 || g.height <= 0) throw UsageError("--size wants positive dimensions");
    return g;
}

int cmd_basin(const BasinCfg& cfg) {
    if (!is_complex_problem(cfg.problem))
        throw UsageError(is_real_problem(cfg.problem)
                             ? "basin wants a complex-capable problem, not " + cfg.problem
                             : "unknown problem: " + cfg.problem);
    GridSpec grid = parse_grid(cfg.grid, cfg.size);
    if (cfg.format != "ppm") throw UsageError("basin --format wants ppm");

    auto ps = complex_problems<std::complex<double>>();
    const auto& p = find_problem(ps, cfg.problem);
    MethodSpec spec{require_method(cfg.method), cfg.m ? cfg.m : p.m, cfg.gamma,
                    parse_dong_sign(cfg.dong_sign)};
    BasinOptions opt;
    opt.max_iters = cfg.iters;
    opt.tol = cfg.tol;
    opt.threads = cfg.threads;
    std::string out = cfg.out.empty()
                          ? cfg.problem + "_" + method_name(spec.kind) + "_" +
                                std::to_string(grid.width) + "x" +
                                std::to_string(grid.height) + ".ppm"
                          : cfg.out;

    if (cfg.dump) {
        json j{{"command", "basin"},   {"problem", cfg.problem},
               {"method", cfg.method}, {"m", spec.m},
               {"gamma", cfg.gamma},   {"dong_sign", cfg.dong_sign},
               {"iters", cfg.iters},   {"tol", cfg.tol},
               {"grid", {{"re_min", grid.re_min}, {"re_max", grid.re_max},
                         {"im_min", grid.im_min}, {"im_max", grid.im_max},
                         {"width", grid.width},  {"height", grid.height}}},
               {"threads", cfg.threads},
               {"out", out},           {"format", cfg.format}};
        std::cout << j.dump(2) << "\n";
        return 0;
    }

    BasinImage img = render(p, spec, grid, opt);
    if (int rc = write_file(out, encode_ppm(img, int(p.roots.size()), opt.max_iters), true))
        return rc;

    std::vector<long> counts(p.roots.size(), 0);
    long diverged = 0;
    for (const auto& px : img.pixels)
        px.converged() ? ++counts[px.root_index] : ++diverged;
    std::cout << "wrote " << out << "\n" << "pixels:";
    for (std::size_t k = 0; k < counts.size(); ++k)
        std::cout << " root" << k << "=" << counts[k];
    std::cout << " diverged=" << diverged << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"root-finding toolkit for multiple zeros: orbit reports, "
                 "convergence tables, attraction basins"};
    app.require_subcommand(1);

    SolveCfg s;
    CLI::App* solve = app.add_subcommand("solve", "run one orbit and report it");
    solve->add_option("--problem", s.problem, "problem name")->required();
    solve->add_option("--method", s.method, "mnewton|pp|mpp|osada|dong|chun");
    solve->add_option("--m", s.m, "multiplicity override");
    solve->add_option("--gamma", s.gamma, "chun parameter");
    solve->add_option("--dong-sign", s.dong_sign, "corrected-minus|as-printed-plus");
    solve->add_option("--x0", s.x0, "starting point (complex literals like 1+2i allowed)");
    solve->add_option("--iters", s.iters, "iteration budget");
    solve->add_option("--precision", s.precision, "decimal digits, or \"double\"");
    solve->add_option("--tol-step", s.tol_step, "stop when |x_{k+1}-x_k| <= this");
    solve->add_option("--tol-residual", s.tol_residual, "stop when |f(x_k)| <= this");
    solve->add_flag("--dump-config", s.dump, "print resolved config as JSON and exit");

    TableCfg t;
    CLI::App* table = app.add_subcommand("table", "error/COC/ACOC regression table");
    table->add_option("--problems", t.problems, "comma-separated problem filter")
        ->delimiter(',');
    table->add_option("--methods", t.methods, "comma-separated method filter")
        ->delimiter(',');
    table->add_option("--precision", t.precision, "decimal digits for the error columns");
    table->add_option("--order-precision", t.order_precision,
                      "decimal digits for the COC/ACOC trace");
    table->add_option("--x0", t.x0, "override the registered start of every selected problem");
    table->add_option("--gamma", t.gamma, "chun parameter");
    table->add_option("--dong-sign", t.dong_sign, "corrected-minus|as-printed-plus");
    table->add_option("--out", t.out, "output path (default: stdout)");
    table->add_option("--format", t.format, "csv|text");
    table->add_flag("--dump-config", t.dump, "print resolved config as JSON and exit");

    BasinCfg b;
    CLI::App* basin = app.add_subcommand("basin", "render attraction basins as PPM");
    basin->add_option("--problem", b.problem, "complex-capable problem name")->required();
    basin->add_option("--method", b.method, "mnewton|pp|mpp|osada|dong|chun");
    basin->add_option("--m", b.m, "multiplicity override");
    basin->add_option("--gamma", b.gamma, "chun parameter");
    basin->add_option("--dong-sign", b.dong_sign, "corrected-minus|as-printed-plus");
    basin->add_option("--iters", b.iters, "iteration cap");
    basin->add_option("--tol", b.tol, "convergence radius around each root");
    basin->add_option("--grid", b.grid, "re_min:re_max:im_min:im_max");
    basin->add_option("--size", b.size, "pixels, N or WxH");
    basin->add_option("--threads", b.threads, "render threads (output is identical)");
    basin->add_option("--out", b.out, "output path (default: <problem>_<method>_<WxH>.ppm)");
    basin->add_option("--format", b.format, "ppm");
    basin->add_flag("--dump-config", b.dump, "print resolved config as JSON and exit");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*solve) return cmd_solve(s);
        if (*table) return cmd_table(t);
        return cmd_basin(b);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
