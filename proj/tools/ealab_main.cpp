// Command-line surface: problem-file ingestion, certificate dumps, the
// end-to-end classification pipeline, table/census reproduction, and the
// randomized sweep.
//
// Exit codes: 0 success; 2 ambiguous canonicalization; 3 corroboration
// failure; 1 everything else.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ealab/dynamics.hpp"
#include "ealab/integrator.hpp"
#include "ealab/problem.hpp"
#include "ealab/report.hpp"

namespace {

using namespace ealab;

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(12);
    os << x;
    return os.str();
}

std::string fmt_vec(const Vec3& v) {
    return "(" + fmt(v[0]) + ", " + fmt(v[1]) + ", " + fmt(v[2]) + ")";
}

void print_matrix(const Mat3& m, const std::string& indent) {
    for (int i = 0; i < 3; ++i)
        std::cout << indent << "[ " << fmt(m(i, 0)) << ", " << fmt(m(i, 1))
                  << ", " << fmt(m(i, 2)) << " ]\n";
}

double require_h_lambda(const LieAlgebra3& g, const char* what) {
    if (g.label.family != Family::H)
        throw UnsupportedAlgebraError(std::string(what) +
                                      " requires the h family (canonical forms "
                                      "are defined on h(lambda))");
    return g.label.param;
}

Rat parse_rat_arg(const std::string& text, const char* name) {
    const std::optional<Rat> r = parse_rational(text);
    if (!r)
        throw ParseError(std::string("--") + name +
                         " expects an integer, fraction p/q, or finite decimal"
                         " (got '" + text + "')");
    return *r;
}

unsigned long long default_seed() {
    if (const char* env = std::getenv("EA_LAB_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw ParseError("EA_LAB_SEED must be a non-negative integer (got '" +
                             std::string(env) + "')");
        }
    }
    return 20260814ULL;
}

int run(int argc, char** argv) {
    CLI::App app{"left-invariant Lorentzian geodesic (in)completeness laboratory"};
    app.set_version_flag("--version", std::string(kToolVersion));
    app.require_subcommand(1);
    int rc = 0;

    // --- check ----------------------------------------------------------
    std::string check_file;
    CLI::App* check = app.add_subcommand(
        "check", "validate a problem file (brackets, Jacobi, signature)");
    check->add_option("file", check_file, "problem file")->required();
    check->callback([&] {
        const ProblemSpec spec = load_problem(check_file);
        if (spec.has_algebra()) {
            const LieAlgebra3 g = build_algebra(spec);
            std::cout << "algebra: ok (jacobi residual "
                      << fmt(jacobi_residual(g.c)) << ", "
                      << (is_unimodular(g) ? "unimodular" : "non-unimodular")
                      << ")\n";
        } else {
            std::cout << "algebra: (absent)\n";
        }
        if (spec.has_metric()) {
            const BilinearForm q = build_metric(spec);
            const Signature& s = q.signature();
            std::cout << "metric: ok (signature (" << s.n_plus << ", "
                      << s.n_minus << ", " << s.n_zero << ")"
                      << (s.lorentzian() ? ", Lorentzian" : "") << ")\n";
        } else {
            std::cout << "metric: (absent)\n";
        }
    });

    // --- field ----------------------------------------------------------
    std::string field_file;
    CLI::App* field = app.add_subcommand(
        "field", "print the geodesic field of (algebra, metric)");
    field->add_option("file", field_file, "problem file")->required();
    field->callback([&] {
        const ProblemSpec spec = load_problem(field_file);
        std::cout << polynomial_string(
            euler_arnold_field(build_algebra(spec), build_metric(spec)));
    });

    // --- canonicalize -----------------------------------------------------
    std::string canon_file;
    bool canon_riemannian = false;
    CLI::App* canon = app.add_subcommand(
        "canonicalize", "reduce the metric to its canonical representative");
    canon->add_option("file", canon_file, "problem file")->required();
    canon->add_flag("--riemannian", canon_riemannian,
                    "use the definite-form reduction instead");
    canon->callback([&] {
        const ProblemSpec spec = load_problem(canon_file);
        const LieAlgebra3 g = build_algebra(spec);
        const BilinearForm q = build_metric(spec);
        const double lambda = require_h_lambda(g, "canonicalize");
        const NormalFormId nf = canon_riemannian
                                    ? canonicalize_riemannian(lambda, q)
                                    : canonicalize(lambda, q);
        std::cout << "tag: " << tag_name(nf.tag) << "\n";
        std::cout << "param: " << (nf.param ? fmt(*nf.param) : "(none)") << "\n";
        std::cout << "scale: " << fmt(nf.scale) << "\n";
        std::cout << "reconstruction residual: " << fmt(nf.residual) << "\n";
        std::cout << "automorphism:\n";
        print_matrix(nf.phi.M, "  ");
    });

    // --- idempotents ------------------------------------------------------
    std::string idem_file;
    CLI::App* idem = app.add_subcommand(
        "idempotents", "isolated solutions of F(v) = v for the geodesic field");
    idem->add_option("file", idem_file, "problem file")->required();
    idem->callback([&] {
        const ProblemSpec spec = load_problem(idem_file);
        const QuadraticField F =
            euler_arnold_field(build_algebra(spec), build_metric(spec));
        try {
            const std::vector<Idempotent> pts = find_idempotents(F);
            if (pts.empty()) {
                std::cout << "idempotents: (none)\n";
                return;
            }
            std::cout << "idempotents: " << pts.size() << "\n";
            for (const Idempotent& p : pts)
                std::cout << "  " << fmt_vec(p.point)
                          << "  residual = " << fmt(p.residual) << "\n";
        } catch (const NonIsolatedSolutionSetError&) {
            std::cout << "idempotents: continuum (non-isolated solution set)\n";
        }
    });

    // --- planes -----------------------------------------------------------
    std::string planes_file;
    CLI::App* planes = app.add_subcommand(
        "planes", "invariant planes through the origin");
    planes->add_option("file", planes_file, "problem file")->required();
    planes->callback([&] {
        const ProblemSpec spec = load_problem(planes_file);
        const QuadraticField F =
            euler_arnold_field(build_algebra(spec), build_metric(spec));
        const InvariantPlaneSet set = find_invariant_planes(F);
        if (set.continuum)
            std::cout << "invariant planes: continuum; representatives:\n";
        else
            std::cout << "invariant planes: " << set.planes.size() << "\n";
        for (const InvariantPlane& p : set.planes)
            std::cout << "  normal " << fmt_vec(p.normal) << "\n";
    });

    // --- integrals ----------------------------------------------------------
    std::string integrals_file;
    CLI::App* integrals = app.add_subcommand(
        "integrals", "polynomial first integrals of the geodesic field");
    integrals->add_option("file", integrals_file, "problem file")->required();
    integrals->callback([&] {
        const ProblemSpec spec = load_problem(integrals_file);
        const QuadraticField F =
            euler_arnold_field(build_algebra(spec), build_metric(spec));
        const std::vector<Vec3> lin = linear_first_integrals(F);
        std::cout << "linear integrals: " << lin.size() << "\n";
        for (const Vec3& l : lin) std::cout << "  covector " << fmt_vec(l) << "\n";
        const std::vector<Mat3> quad = quadratic_first_integrals(F);
        std::cout << "quadratic integrals: " << quad.size() << "\n";
        for (const Mat3& S : quad) print_matrix(S, "  ");
        if (const std::optional<Mat3> pd = positive_definite_integral(F)) {
            std::cout << "positive-definite integral:\n";
            print_matrix(*pd, "  ");
        } else {
            std::cout << "positive-definite integral: (none)\n";
        }
    });

    // --- certify ------------------------------------------------------------
    std::string certify_file;
    CLI::App* certify = app.add_subcommand(
        "certify", "certificate search only (no integrations)");
    certify->add_option("file", certify_file, "problem file")->required();
    certify->callback([&] {
        const ProblemSpec spec = load_problem(certify_file);
        const BilinearForm q = build_metric(spec);
        const QuadraticField F = euler_arnold_field(build_algebra(spec), q);
        try {
            const std::vector<Idempotent> pts = find_idempotents(F);
            std::cout << "idempotents: " << pts.size() << "\n";
            for (const Idempotent& p : pts)
                std::cout << "  " << fmt_vec(p.point)
                          << "  residual = " << fmt(p.residual) << "\n";
        } catch (const NonIsolatedSolutionSetError&) {
            std::cout << "idempotents: continuum (non-isolated solution set)\n";
        }
        if (const std::optional<Mat3> pd = positive_definite_integral(F)) {
            std::cout << "positive-definite integral:\n";
            print_matrix(*pd, "  ");
        } else {
            std::cout << "positive-definite integral: (none)\n";
        }
        if (q.signature().lorentzian()) {
            if (const std::optional<DominationCertificate> dom =
                    null_cone_domination(F, q)) {
                static const char* an[3] = {"x", "y", "z"};
                std::cout << "domination: axis = " << an[dom->axis]
                          << ", c = " << fmt(dom->c) << ", a = " << fmt(dom->a)
                          << "\n";
            } else {
                std::cout << "domination: (none)\n";
            }
        } else {
            std::cout << "domination: (not Lorentzian, skipped)\n";
        }
    });

    // --- integrate ------------------------------------------------------------
    std::string int_file, int_out;
    std::vector<double> int_ic;
    double int_horizon = 10.0, int_t0 = 0.0, int_rtol = 1e-10, int_atol = 1e-12;
    double int_blowup = 1e8;
    CLI::App* integ = app.add_subcommand(
        "integrate", "integrate the geodesic field and dump a CSV trajectory");
    integ->add_option("file", int_file, "problem file")->required();
    integ->add_option("--ic", int_ic, "initial condition (three numbers)")
        ->expected(3)
        ->required();
    integ->add_option("--horizon", int_horizon, "integration horizon");
    integ->add_option("--t0", int_t0, "initial time");
    integ->add_option("--rtol", int_rtol, "relative tolerance");
    integ->add_option("--atol", int_atol, "absolute tolerance");
    integ->add_option("--blowup-norm", int_blowup, "blow-up norm threshold");
    integ->add_option("--out", int_out, "output CSV path (default: stdout)");
    integ->callback([&] {
        const ProblemSpec spec = load_problem(int_file);
        const BilinearForm q = build_metric(spec);
        const QuadraticField F = euler_arnold_field(build_algebra(spec), q);
        IntegrateOptions o;
        o.rtol = int_rtol;
        o.atol = int_atol;
        o.blowup_norm = int_blowup;
        o.energy_form = q.matrix();
        const Vec3 v0(int_ic[0], int_ic[1], int_ic[2]);
        const Trajectory traj = integrate(F, v0, int_t0, int_horizon, o);
        if (int_out.empty()) {
            write_trajectory_csv(std::cout, traj, q.matrix());
        } else {
            std::ofstream os(int_out);
            if (!os) throw ParseError("cannot open output file '" + int_out + "'");
            write_trajectory_csv(os, traj, q.matrix());
            std::cout << "wrote " << traj.times.size() << " samples to "
                      << int_out << " (outcome "
                      << (traj.outcome == Outcome::ReachedHorizon
                              ? "ReachedHorizon"
                              : traj.outcome == Outcome::BlowUp ? "BlowUp"
                                                                : "StepUnderflow")
                      << ")\n";
        }
    });

    // --- classify ---------------------------------------------------------------
    std::string classify_file, classify_evidence_dir;
    CLI::App* classify = app.add_subcommand(
        "classify", "full pipeline: canonical form, verdict, certificates, "
                    "corroborating integrations");
    classify->add_option("file", classify_file, "problem file")->required();
    classify->add_option("--save-evidence", classify_evidence_dir,
                         "write evidence trajectories as CSV files here");
    classify->callback([&] {
        ClassifyOptions opts;
        if (!classify_evidence_dir.empty()) opts.evidence_dir = classify_evidence_dir;
        const Report rep = classify_problem(load_problem(classify_file), opts);
        std::cout << rep.render();
    });

    // --- table1 -------------------------------------------------------------------
    std::string t1_lambda = "0", t1_r = "-1", t1_s = "-1/2", t1_t = "3/2";
    CLI::App* t1 = app.add_subcommand(
        "table1", "the 12 Lorentzian decision-table rows at one lambda "
                  "(exact coefficients)");
    t1->add_option("--lambda", t1_lambda, "lambda (integer, fraction, or decimal)")
        ->required();
    t1->add_option("--r", t1_r, "parameter of the Q4 row (r < 1)");
    t1->add_option("--s", t1_s, "parameter of the Q5 row (s > -1)");
    t1->add_option("--t", t1_t, "parameter of the Q6 row (t > 1)");
    t1->callback([&] {
        const std::vector<Table1Row> rows = table1(
            parse_rat_arg(t1_lambda, "lambda"), parse_rat_arg(t1_r, "r"),
            parse_rat_arg(t1_s, "s"), parse_rat_arg(t1_t, "t"));
        std::cout << render_table1(rows);
    });

    // --- census ---------------------------------------------------------------------
    double census_lambda = 0.0;
    CLI::App* cen = app.add_subcommand(
        "census", "closed-form idempotent lists, verified against the root "
                  "finder");
    cen->add_option("--lambda", census_lambda, "lambda in {0} or 0 < |lambda| < 1")
        ->required();
    cen->callback([&] {
        std::cout << render_census(census(census_lambda));
    });

    // --- sweep -----------------------------------------------------------------------
    int sweep_count = 500, sweep_jobs = 0;
    unsigned long long sweep_seed = default_seed();
    CLI::App* sw = app.add_subcommand(
        "sweep", "randomized classification sweep; every report must "
                 "corroborate itself");
    sw->add_option("--count", sweep_count, "number of cases");
    sw->add_option("--jobs", sweep_jobs, "worker threads (0 = hardware)");
    sw->add_option("--seed", sweep_seed,
                   "RNG seed (default: EA_LAB_SEED or 20260814)");
    sw->callback([&] {
        const SweepSummary summary = sweep(sweep_count, sweep_seed, sweep_jobs);
        std::cout << render_sweep(summary);
        if (summary.failures > 0) rc = 3;
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }
    return rc;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const ealab::NumericallyAmbiguousError& e) {
        std::cerr << "ambiguous: " << e.what() << "\n";
        return 2;
    } catch (const ealab::CorroborationFailureError& e) {
        std::cerr << "corroboration failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
