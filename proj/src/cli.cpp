#include "kcf/cli.hpp"

#include "kcf/harness.hpp"
#include "kcf/linalg.hpp"
#include "kcf/problem.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <random>
#include <sstream>

namespace kcf::cli {

namespace {

using Json = nlohmann::ordered_json;

struct Options {
    std::string mode = "exact";
    std::string output = "text";
    double rank_tol = 0x1p-40;
    std::string file;
    std::vector<double> times;
    std::string constants;
    double tol = 1e-9;
    std::string fault = "none";
    std::uint64_t seed = 0;
    std::size_t draws = 10;
    std::string structure_template = "full";
};

struct Failure {
    ExitCode code;
    std::string message;
};

std::string fmt(double x) { return ScalarTraits<double>::format(x); }

template <class T>
Json scalar_json(const T& x) {
    if constexpr (std::is_same_v<T, Rational>)
        return to_string(x);
    else
        return x;
}

template <class T>
Json vector_json(const Vector<T>& v) {
    Json out = Json::array();
    for (const auto& x : v) out.push_back(scalar_json(x));
    return out;
}

template <class T>
Json matrix_json(const Matrix<T>& m) {
    Json out = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(vector_json(Vector<T>(m.row_span(i).begin(), m.row_span(i).end())));
    return out;
}

std::string vector_text(const Vector<double>& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + fmt(v[i]);
    return s + "]";
}

std::string list_text(const std::vector<std::size_t>& v) {
    if (v.empty()) return "none";
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + std::to_string(v[i]);
    return s;
}

template <class T>
std::string divisors_text(const std::vector<FiniteDivisor<T>>& fed) {
    if (fed.empty()) return "none";
    std::string s;
    for (std::size_t i = 0; i < fed.size(); ++i) s += (i ? ", " : "") + to_string(fed[i]);
    return s;
}

Vector<double> parse_constants(const std::string& text) {
    Vector<double> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        try {
            out.push_back(to_double(parse_rational(item)));
        } catch (const ParseError&) {
            throw ParseError("--constants: malformed value '" + item + "'");
        }
    }
    return out;
}

template <class T>
struct Context {
    const Problem& problem;
    const Options& opts;
    ScalarMode mode;
    Pencil<T> pencil;
    std::optional<Vector<T>> y0;
    T t0;
};

template <class T>
Context<T> make_context(const Problem& problem, const Options& opts, const ScalarMode& mode) {
    if constexpr (std::is_same_v<T, Rational>) {
        return {problem, opts, mode, problem.pencil, problem.y0, problem.t0};
    } else {
        std::optional<Vector<double>> y0;
        if (problem.y0) y0 = to_double_vector(*problem.y0);
        return {problem, opts, mode, problem.pencil.template cast<double>(), y0, to_double(problem.t0)};
    }
}

template <class T>
Json structure_json(const KroneckerStructure<T>& s) {
    Json fed = Json::array();
    for (const auto& f : s.fed) fed.push_back(Json{{"eigenvalue", scalar_json(f.eigenvalue)}, {"degree", f.degree}});
    return Json{{"fed", fed}, {"ied", s.ied}, {"cmi", s.cmi}, {"rmi", s.rmi}, {"p", s.p()}, {"q", s.q()},
                {"g", s.g()}, {"h", s.h()}, {"d", s.d()}, {"t", s.t()}};
}

// Shared front half of analyze and solve. Fills `report` and returns the decomposition.
template <class T>
KroneckerDecomposition<T> analyze_into(const Context<T>& ctx, Json& report, std::ostream& text) {
    const auto& pencil = ctx.pencil;
    const Problem& problem = ctx.problem;
    Json input{{"form", problem.form == ProblemForm::Pencil ? "pencil" : "higher_order"},
               {"rows", pencil.rows()},
               {"cols", pencil.cols()}};
    if (problem.form == ProblemForm::HigherOrder) {
        input["order"] = problem.system.order();
        input["m"] = problem.system.m();
        input["r"] = problem.system.r();
    }
    report["input"] = input;

    const Regularity regularity = classify(pencil, ctx.mode);
    const std::size_t rho = normal_rank(pencil, ctx.mode);
    const NullSpaceDims dims = null_space_dims(pencil, ctx.mode);
    report["classification"] = std::string(to_string(regularity));
    report["normal_rank"] = rho;
    report["d"] = dims.d;
    report["t"] = dims.t;
    text << "classification: " << to_string(regularity) << "\n"
         << "size: " << pencil.rows() << "x" << pencil.cols() << ", normal rank " << rho << ", d=" << dims.d
         << ", t=" << dims.t << "\n";
    if (pencil.is_square()) {
        const auto det = det_polynomial(pencil, ctx.mode);
        report["det_polynomial"] = vector_json(det.coefficients);
        text << "det(sF-G): " << (det.is_zero() ? std::string("0 (identically)") : to_string(det, "s")) << "\n";
    } else {
        report["det_polynomial"] = nullptr;
    }

    auto dec = reduce(pencil, ctx.mode);
    const auto& s = dec.structure;
    report["structure"] = structure_json(s);
    report["solution_space_dimension"] = solution_space_dimension(s);
    text << "finite elementary divisors: " << divisors_text(s.fed) << "\n"
         << "infinite elementary divisors (degrees): " << list_text(s.ied) << "\n"
         << "column minimal indices: " << list_text(s.cmi) << "\n"
         << "row minimal indices: " << list_text(s.rmi) << "\n"
         << "solution space dimension: " << solution_space_dimension(s) << "\n";
    return dec;
}

const char* verdict_key(SolutionKind k) {
    switch (k) {
        case SolutionKind::Unique: return "unique";
        case SolutionKind::InconsistentFamily: return "infinite_inconsistent";
        case SolutionKind::Family: return "infinite_cmi";
    }
    return "unknown";
}

const char* verdict_text(SolutionKind k) {
    switch (k) {
        case SolutionKind::Unique: return "unique";
        case SolutionKind::InconsistentFamily: return "infinite (non-consistent initial condition)";
        case SolutionKind::Family: return "infinite (nonzero c.m.i.)";
    }
    return "unknown";
}

template <class T>
const Vector<T>& require_initial(const Context<T>& ctx) {
    if (!ctx.y0) throw ParseError("this command needs initial data (\"Y0\" or \"X_derivatives\")");
    return *ctx.y0;
}

template <class T>
Json solution_json(const Context<T>& ctx, const Solution<T>& sol) {
    Json blocks = Json::array();
    for (const auto& b : sol.J_p) blocks.push_back(Json{{"eigenvalue", scalar_json(b.eigenvalue)}, {"degree", b.degree}});
    Json out{{"kind", std::string(to_string(sol.kind))},
             {"t0", scalar_json(sol.t0)},
             {"consistent", sol.kind == SolutionKind::Family ? Json(nullptr) : Json(sol.kind == SolutionKind::Unique)},
             {"p", sol.Q_p.cols()},
             {"jordan_blocks", blocks},
             {"Q_p", matrix_json(sol.Q_p)},
             {"Z_p0", sol.is_family() ? Json(nullptr) : vector_json(sol.Z_p0)},
             {"free_dim", sol.free_dim},
             {"free_basis", sol.kind == SolutionKind::Family ? matrix_json(sol.free_basis) : Json(nullptr)}};
    if (ctx.problem.form == ProblemForm::HigherOrder && !sol.is_family()) {
        const auto x = project_solution(sol, ctx.problem.system.template cast<T>());
        out["X"] = Json{{"Q_p1", matrix_json(x.Q_p1)}};
    }
    return out;
}

template <class T>
int cmd_analyze(const Context<T>& ctx, Json& report, std::ostream& text) {
    analyze_into(ctx, report, text);
    return Ok;
}

template <class T>
int cmd_solve(const Context<T>& ctx, Json& report, std::ostream& text) {
    const Vector<T>& y0 = require_initial(ctx);
    const auto dec = analyze_into(ctx, report, text);
    const auto sol = solve_ivp(dec, y0, ctx.t0, ctx.mode);
    report["verdict"] = verdict_key(sol.kind);
    report["solution"] = solution_json(ctx, sol);
    text << "verdict: " << verdict_text(sol.kind) << "\n";
    if (sol.is_family()) {
        text << "free constants: " << sol.free_dim << "\n";
    } else {
        text << "jordan blocks: " << divisors_text(sol.J_p) << "\n"
             << "Q_p: " << to_string(sol.Q_p) << "\n"
             << "Z_p0: " << to_string(Matrix<T>::column_vector(sol.Z_p0).transpose()) << "\n";
    }
    return Ok;
}

template <class T>
int cmd_eval(const Context<T>& ctx, Json& report, std::ostream& text) {
    const Vector<T>& y0 = require_initial(ctx);
    if (ctx.opts.times.empty()) throw ParseError("eval needs at least one --t value");
    const auto sol = solve_ivp(ctx.pencil, y0, ctx.t0, ctx.mode);
    report["verdict"] = verdict_key(sol.kind);
    std::optional<Vector<double>> constants;
    if (!ctx.opts.constants.empty()) constants = parse_constants(ctx.opts.constants);
    if (sol.is_family() && !constants)
        throw Failure{NotUniqueWithoutConstants, std::string("solution is ") + verdict_text(sol.kind) + " with " +
                                                     std::to_string(sol.free_dim) + " free constants; pass --constants"};

    const bool higher = ctx.problem.form == ProblemForm::HigherOrder;
    const std::size_t x_rows = ctx.problem.system.order() == 1 ? ctx.pencil.cols() : ctx.problem.system.m();
    std::optional<ProjectedSolution<T>> projected;
    if (higher && !sol.is_family()) projected = project_solution(sol, ctx.problem.system.template cast<T>());

    Json samples = Json::array();
    for (double t : ctx.opts.times) {
        const Vector<double> y = evaluate(sol, t, constants);
        Json sample{{"t", t}, {"Y", y}};
        text << "t=" << fmt(t) << " Y=" << vector_text(y);
        if (higher) {
            const Vector<double> x = projected ? projected->evaluate(t) : Vector<double>(y.begin(), y.begin() + static_cast<std::ptrdiff_t>(x_rows));
            sample["X"] = x;
            text << " X=" << vector_text(x);
        }
        text << "\n";
        samples.push_back(std::move(sample));
    }
    report["samples"] = samples;
    return Ok;
}

template <class T>
int cmd_verify(const Context<T>& ctx, Json& report, std::ostream& text) {
    const Options& opts = ctx.opts;
    const Vector<T>& y0 = require_initial(ctx);
    auto sol = solve_ivp(ctx.pencil, y0, ctx.t0, ctx.mode);
    report["verdict"] = verdict_key(sol.kind);

    if (opts.fault != "none") {
        if (sol.Q_p.cols() == 0) throw ParseError("--fault needs a nonempty regular part");
        if (opts.fault == "z") {
            if (sol.is_family()) throw ParseError("--fault z applies to unique solutions; use --fault qp");
            sol.Z_p0[0] += T(1);
        } else if (opts.fault == "qp") {
            sol.Q_p(0, 0) += T(1);
        } else {
            throw ParseError("unknown fault '" + opts.fault + "' (expected none, z or qp)");
        }
    }
    report["fault"] = opts.fault;
    report["tol"] = opts.tol;

    std::vector<std::optional<Vector<double>>> draws;
    if (!sol.is_family()) {
        draws.emplace_back(std::nullopt);
    } else if (!opts.constants.empty()) {
        draws.emplace_back(parse_constants(opts.constants));
    } else {
        std::mt19937_64 rng(opts.seed);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        for (std::size_t k = 0; k < opts.draws; ++k) {
            Vector<double> c(sol.free_dim);
            for (auto& x : c) x = u(rng);
            draws.emplace_back(std::move(c));
        }
    }

    const double t0 = ScalarTraits<T>::to_double(ctx.t0);
    const auto grid = default_grid(t0, 20);
    constexpr std::size_t steps = 1000;
    constexpr double rk4_tol = 1e-6;
    double max_residual = 0.0, max_scaled = 0.0, initial_defect = 0.0, rk4_error = 0.0;
    Json draw_reports = Json::array();
    for (const auto& c : draws) {
        const ResidualReport r = residual_norm(ctx.pencil, sol, grid, c);
        max_residual = std::max(max_residual, r.max_residual);
        max_scaled = std::max(max_scaled, r.max_scaled);
        initial_defect = std::max(initial_defect, r.initial_defect);
        draw_reports.push_back(Json{{"constants", c ? Json(*c) : Json(nullptr)},
                                    {"max_residual", r.max_residual},
                                    {"max_scaled", r.max_scaled},
                                    {"per_sample", r.per_sample}});

        const std::size_t p = sol.Q_p.cols();
        const Vector<double> z = c ? Vector<double>(c->begin(), c->begin() + static_cast<std::ptrdiff_t>(p))
                                   : to_double_vector(sol.Z_p0);
        if (p > 0) {
            const Vector<double> exact = jordan_exp<T>(sol.J_p, 1.0) * z;
            const Vector<double> approx = rk4_reference(sol.J_p, z, t0, t0 + 1.0, steps).final_state();
            double diff = 0.0;
            for (std::size_t i = 0; i < p; ++i) diff = std::max(diff, std::abs(exact[i] - approx[i]));
            const double scale = norm_inf(exact);
            rk4_error = std::max(rk4_error, scale > 0.0 ? diff / scale : diff);
        }
    }

    const bool residual_ok = max_scaled <= opts.tol && initial_defect <= opts.tol;
    const bool rk4_ok = rk4_error <= rk4_tol;
    report["sample_times"] = grid;
    report["draws"] = draw_reports;
    report["max_residual"] = max_residual;
    report["max_scaled_residual"] = max_scaled;
    report["initial_defect"] = initial_defect;
    report["rk4"] = Json{{"steps", steps}, {"max_relative_error", rk4_error}, {"tol", rk4_tol}, {"pass", rk4_ok}};
    report["status"] = residual_ok && rk4_ok ? "pass" : "fail";

    text << "verdict: " << verdict_text(sol.kind) << "\n"
         << "draws: " << draws.size() << ", samples per draw: " << grid.size() << "\n"
         << "max residual: " << fmt(max_residual) << " (scaled " << fmt(max_scaled) << ", tol " << fmt(opts.tol) << ")\n"
         << "initial condition defect: " << fmt(initial_defect) << "\n"
         << "rk4 cross-check: max relative error " << fmt(rk4_error) << " (tol " << fmt(rk4_tol) << ")\n"
         << (residual_ok && rk4_ok ? "PASS" : "FAIL") << "\n";
    return residual_ok && rk4_ok ? Ok : VerifyFailed;
}

int cmd_generate(const Options& opts, std::ostream& out) {
    const StructureTemplate kind = parse_template(opts.structure_template);
    const auto truth = random_structure(kind, opts.seed);
    const auto c = random_structured_pencil(truth, opts.seed);

    // A consistent initial state: random regular coordinates, zero elsewhere.
    std::mt19937_64 rng(opts.seed + 1);
    std::uniform_int_distribution<int> pick(-2, 2);
    Vector<Rational> z(c.pencil.cols(), Rational(0));
    for (std::size_t i = 0; i < c.truth.p(); ++i) z[i] = pick(rng);
    const Vector<Rational> y0 = c.col_inverse * z;

    Json doc = Json::parse(write_pencil_problem(c.pencil, y0, Rational(0)));
    doc["truth"] = structure_json(c.truth);
    doc["seed"] = opts.seed;
    doc["template"] = std::string(to_string(kind));
    out << doc.dump(2) << "\n";
    return Ok;
}

template <class T>
int dispatch(const std::string& command, const Problem& problem, const Options& opts, const ScalarMode& mode,
             Json& report, std::ostream& text) {
    const Context<T> ctx = make_context<T>(problem, opts, mode);
    if (command == "analyze") return cmd_analyze(ctx, report, text);
    if (command == "solve") return cmd_solve(ctx, report, text);
    if (command == "eval") return cmd_eval(ctx, report, text);
    return cmd_verify(ctx, report, text);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    Options opts;
    CLI::App app{"Initial value problems for singular linear matrix differential equations via the Kronecker form",
                 "kcf"};
    app.require_subcommand(1);
    app.fallthrough();  // inherited by subcommands, so global options may follow them
    app.add_option("--mode", opts.mode, "Arithmetic: exact (rational) or approx (binary64)")
        ->check(CLI::IsMember({"exact", "approx"}))
        ->capture_default_str();
    app.add_option("--output", opts.output, "Report format")->check(CLI::IsMember({"json", "text"}))->capture_default_str();
    app.add_option("--rank-tol", opts.rank_tol, "Relative rank tolerance in approx mode")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();

    auto add_file = [&](CLI::App* sub) { sub->add_option("file", opts.file, "Problem JSON file")->required(); };
    CLI::App* analyze = app.add_subcommand("analyze", "Classify the pencil and list its Kronecker invariants");
    CLI::App* solve = app.add_subcommand("solve", "Decide existence and uniqueness and describe the solution");
    CLI::App* eval = app.add_subcommand("eval", "Evaluate the solution at the given times");
    CLI::App* verify = app.add_subcommand("verify", "Check the residual F Y' - G Y and the RK4 cross-check");
    CLI::App* generate = app.add_subcommand("generate", "Emit a random pencil problem with known structure");
    for (CLI::App* sub : {analyze, solve, eval, verify}) add_file(sub);
    eval->add_option("--t", opts.times, "Evaluation time (repeatable)")->required()->allow_extra_args(false);
    for (CLI::App* sub : {eval, verify})
        sub->add_option("--constants", opts.constants, "Comma-separated free constants for solution families");
    verify->add_option("--tol", opts.tol, "Pass threshold for the scaled residual")->capture_default_str();
    verify->add_option("--fault", opts.fault, "Inject a fault: none, z (perturb Z_p0) or qp (perturb Q_p)")
        ->check(CLI::IsMember({"none", "z", "qp"}))
        ->capture_default_str();
    verify->add_option("--draws", opts.draws, "Constant draws for families without --constants")->capture_default_str();
    for (CLI::App* sub : {verify, generate})
        sub->add_option("--seed", opts.seed, "Seed for random draws")->capture_default_str();
    generate->add_option("--template", opts.structure_template, "regular, nilpotent, mixed-cmi, mixed-rmi or full")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? Ok : Usage;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    const bool json = opts.output == "json";
    Json report{{"command", command}, {"mode", opts.mode}};
    std::ostringstream text;

    auto fail = [&](ExitCode code, const std::string& kind, const std::string& message, const std::string& extra = {}) {
        err << "error: " << message << "\n";
        if (json) {
            Json e{{"kind", kind}, {"message", message}};
            if (!extra.empty()) e["polynomial"] = extra;
            report["error"] = e;
            out << report.dump(2) << "\n";
        } else {
            out << text.str();
        }
        return static_cast<int>(code);
    };

    try {
        if (command == "generate") return cmd_generate(opts, out);
        const Problem problem = load_problem(opts.file);
        int code = Ok;
        if (opts.mode == "exact")
            code = dispatch<Rational>(command, problem, opts, ScalarMode::exact(), report, text);
        else
            code = dispatch<double>(command, problem, opts, ScalarMode::approx(opts.rank_tol), report, text);
        if (json)
            out << report.dump(2) << "\n";
        else
            out << text.str();
        return code;
    } catch (const Failure& f) {
        return fail(f.code, "NotUnique", f.message);
    } catch (const IrrationalEigenvalue& e) {
        return fail(UnrepresentableEigenvalue, "IrrationalEigenvalue", e.what(), e.polynomial());
    } catch (const ComplexEigenvalue& e) {
        return fail(UnrepresentableEigenvalue, "ComplexEigenvalue", e.what());
    } catch (const MissingConstants& e) {
        return fail(NotUniqueWithoutConstants, "MissingConstants", e.what());
    } catch (const ParseError& e) {
        return fail(InputError, "ParseError", e.what());
    } catch (const Error& e) {
        return fail(InputError, "InputError", e.what());
    } catch (const std::invalid_argument& e) {
        return fail(InputError, "InputError", e.what());
    }
}

}  // namespace kcf::cli
