#include "ealab/report.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <thread>
#include <utility>

namespace ealab {

namespace {

// ---------------------------------------------------------------------------
// Formatting helpers. Everything user-visible funnels through these so that
// repeated runs produce identical bytes.
// ---------------------------------------------------------------------------

std::string num(double x) {
    std::ostringstream os;
    os.precision(12);
    os << x;
    return os.str();
}

std::string vec(const Vec3& v) {
    return "(" + num(v[0]) + ", " + num(v[1]) + ", " + num(v[2]) + ")";
}

std::string mat_rows(const Mat3& m, const std::string& indent) {
    std::string out;
    for (int i = 0; i < 3; ++i) {
        out += indent + "[ " + num(m(i, 0)) + ", " + num(m(i, 1)) + ", " +
               num(m(i, 2)) + " ]\n";
    }
    return out;
}

std::string outcome_name(Outcome o) {
    switch (o) {
        case Outcome::ReachedHorizon: return "ReachedHorizon";
        case Outcome::BlowUp: return "BlowUp";
        default: return "StepUnderflow";
    }
}

std::string evidence_name(BoundednessEvidence e) {
    switch (e) {
        case BoundednessEvidence::BoundedSoFar: return "BoundedSoFar";
        case BoundednessEvidence::GrowthDetected: return "GrowthDetected";
        default: return "BlowUp";
    }
}

std::string describe_family(const FamilyId& id) {
    switch (id.family) {
        case Family::H: return "h(lambda = " + num(id.param) + ")";
        case Family::PSH: return "psh";
        case Family::E: return "e(mu = " + num(id.param) + ")";
        default: return "custom";
    }
}

// Tolerant lexicographic order (mirrors the idempotent finder's sort).
bool lex_less(const Vec3& a, const Vec3& b, double eps = 1e-6) {
    for (int i = 0; i < 3; ++i)
        if (std::abs(a[i] - b[i]) > eps) return a[i] < b[i];
    return false;
}

Rat rat_abs(const Rat& x) { return x < Rat(0) ? -x : x; }

}  // namespace

std::string to_string(SeedKind k) {
    switch (k) {
        case SeedKind::IdempotentSeed: return "idempotent";
        case SeedKind::NullCone: return "null-cone";
        case SeedKind::LevelSet: return "level-set";
        default: return "random";
    }
}

// ---------------------------------------------------------------------------
// CSV dump
// ---------------------------------------------------------------------------

void write_trajectory_csv(std::ostream& os, const Trajectory& traj,
                          const std::optional<Mat3>& energy_form) {
    os << "t,x,y,z,energy,step_size\n";
    os.precision(17);
    for (size_t i = 0; i < traj.times.size(); ++i) {
        const Vec3& v = traj.states[i];
        const double e = energy_form ? v.dot(*energy_form * v) : 0.0;
        const double h = i ? traj.times[i] - traj.times[i - 1] : 0.0;
        os << traj.times[i] << ',' << v[0] << ',' << v[1] << ',' << v[2] << ','
           << e << ',' << h << '\n';
    }
    os << "# outcome = " << outcome_name(traj.outcome) << '\n';
    os << "# accepted_steps = " << traj.stats.accepted_steps << '\n';
    os << "# rejected_steps = " << traj.stats.rejected_steps << '\n';
    os << "# sup_norm = " << traj.stats.sup_norm << '\n';
    if (energy_form)
        os << "# energy_drift_max = " << traj.stats.energy_drift_max << '\n';
    if (traj.blowup_time) {
        os << "# blowup_time = " << *traj.blowup_time << '\n';
        os << "# blowup_uncertainty = " << traj.blowup_uncertainty << '\n';
    }
}

// ---------------------------------------------------------------------------
// Report invariant + rendering
// ---------------------------------------------------------------------------

bool Report::corroborated() const {
    const bool has_blowup =
        std::any_of(evidence.begin(), evidence.end(), [](const EvidenceRecord& r) {
            return r.outcome == Outcome::BlowUp;
        });
    if (final_status == "Incomplete")
        return !idempotents.empty() || domination.has_value() || has_blowup;
    if (final_status == "Complete") {
        if (has_blowup || !idempotents.empty()) return false;  // contradiction
        if (pd_integral || explicit_flow) return true;
        const bool all_reached =
            !evidence.empty() &&
            std::all_of(evidence.begin(), evidence.end(), [](const EvidenceRecord& r) {
                return r.outcome == Outcome::ReachedHorizon;
            });
        return table_verdict.has_value() && all_reached;
    }
    return true;  // Undecided claims nothing
}

std::string Report::render() const {
    std::ostringstream os;
    os << "=== classification report ===\n";
    os << "schema: " << schema << "\n";
    os << "tool: " << tool_version << "\n";
    os << "\n[input]\n";
    os << "algebra: " << algebra_desc << "\n";
    os << "metric:\n" << mat_rows(metric, "  ");
    os << "signature: (" << metric_signature.n_plus << ", "
       << metric_signature.n_minus << ", " << metric_signature.n_zero << ")"
       << (metric_signature.lorentzian() ? " Lorentzian" : "") << "\n";

    if (canonical) {
        os << "\n[canonical form]\n";
        os << "tag: " << tag_name(canonical->tag) << "\n";
        os << "param: " << (canonical->param ? num(*canonical->param) : "(none)")
           << "\n";
        os << "scale: " << num(canonical->scale) << "\n";
        os << "reconstruction residual: " << num(canonical->residual) << "\n";
        os << "automorphism:\n" << mat_rows(canonical->phi.M, "  ");
    }

    if (table_verdict) {
        os << "\n[table verdict]\n";
        os << "status: " << to_string(table_verdict->status) << "\n";
        os << "boundedness: " << to_string(table_verdict->boundedness) << "\n";
        os << "mechanism: " << to_string(table_verdict->mechanism) << "\n";
        os << "citation: " << table_verdict->citation << "\n";
    }

    os << "\n[certificates]\n";
    if (idempotent_continuum)
        os << "idempotents: continuum (non-isolated solution set), "
           << idempotents.size() << " verified representative(s)\n";
    else
        os << "idempotents: " << idempotents.size() << "\n";
    for (const Idempotent& idem : idempotents)
        os << "  " << vec(idem.point) << "  residual = " << num(idem.residual)
           << "\n";
    if (pd_integral)
        os << "pd integral:\n" << mat_rows(*pd_integral, "  ");
    else
        os << "pd integral: (none)\n";
    if (domination) {
        static const char* axis_names[3] = {"x", "y", "z"};
        os << "domination: axis = " << axis_names[domination->axis]
           << ", c = " << num(domination->c) << ", a = " << num(domination->a)
           << ", beta = [" << num(domination->beta(0, 0)) << ", "
           << num(domination->beta(0, 1)) << "; " << num(domination->beta(1, 0))
           << ", " << num(domination->beta(1, 1)) << "]\n";
    } else {
        os << "domination: (none)\n";
    }
    if (explicit_flow)
        os << "explicit flow: " << explicit_flow->description
           << ", max error = " << num(explicit_flow->max_error) << "\n";
    else
        os << "explicit flow: (none)\n";

    os << "\n[numeric evidence]\n";
    int i = 0;
    for (const EvidenceRecord& r : evidence) {
        os << "  " << ++i << ". kind=" << to_string(r.kind) << " v0=" << vec(r.v0)
           << " outcome=" << outcome_name(r.outcome)
           << " evidence=" << evidence_name(r.evidence)
           << " sup=" << num(r.sup_norm);
        if (r.outcome == Outcome::ReachedHorizon)
            os << " slope=" << num(r.log_norm_slope);
        if (r.blowup_time) os << " t_est=" << num(*r.blowup_time);
        if (r.energy_drift) os << " energy-drift=" << num(*r.energy_drift);
        os << " csv=" << r.csv_path << "\n";
    }

    os << "\n[result]\n";
    os << "final status: " << final_status << "\n";
    os << "corroborated: " << (corroborated() ? "yes" : "no") << "\n";
    return os.str();
}

// ---------------------------------------------------------------------------
// classify pipeline
// ---------------------------------------------------------------------------

namespace {

// Newton refinement of a candidate rest point of the scaled flow.
Idempotent polish_idempotent(const QuadraticField& F, Vec3 w) {
    for (int it = 0; it < 10; ++it) {
        const Vec3 G = F.eval(w) - w;
        if (G.norm() <= 1e-15 * (1.0 + w.squaredNorm())) break;
        const Mat3 J = F.jacobian(w) - Mat3::Identity();
        w -= J.fullPivLu().solve(G);
    }
    return {w, (F.eval(w) - w).norm()};
}

// A verified point on the idempotent continuum of the lambda = 1 fields.
std::optional<Vec3> continuum_representative(Tag tag) {
    switch (tag) {
        case Tag::Q1: return Vec3(1, 0, 1);   // on { x=1, z^2 - y^2 = 1 }
        case Tag::Q3: return Vec3(1, 1, 0);   // on { x=1, y^2 + z^2 = 1 }
        case Tag::Q11: return Vec3(1, 0, 0);  // on { x=1, y = -z^2/2 }
        default: return std::nullopt;
    }
}

// Eight null vectors of a Lorentzian form: unit-eigenvector combinations
// u_+ / sqrt(l_+) +- u_- / sqrt(|l_-|), both signs of the whole vector.
std::vector<Vec3> null_cone_points(const BilinearForm& q) {
    Mat3 m = q.matrix();
    if (q.signature().n_minus == 2) m = -m;  // same null cone
    Eigen::SelfAdjointEigenSolver<Mat3> es(m);
    const Vec3 ev = es.eigenvalues();  // ascending: ev[0] < 0 < ev[1] <= ev[2]
    const Vec3 un = es.eigenvectors().col(0) / std::sqrt(-ev[0]);
    std::vector<Vec3> out;
    for (int i = 1; i < 3; ++i) {
        const Vec3 up = es.eigenvectors().col(i) / std::sqrt(ev[i]);
        out.push_back(up + un);
        out.push_back(up - un);
    }
    const size_t n = out.size();
    for (size_t i = 0; i < n; ++i) out.push_back(-out[i]);
    return out;
}

// Start points of provably incomplete curves for table rows that carry no
// pointwise certificate. Only the lightlike-center Q4,0 row at lambda = 0
// needs this: on the zero set of the conserved quadratic x^2/2 + y^2 + y z
// the first component obeys x' = x^2/2, so x0 > 0 blows up by t = 2/x0.
std::vector<Vec3> level_set_seeds(Tag tag) {
    if (tag == Tag::Q4) return {Vec3(1.0, 1.0, -1.5), Vec3(2.0, 1.0, -3.0)};
    return {};
}

// Start points on the invariant planes that carry the unbounded complete
// trajectories (both flow directions), used when the table verdict claims
// unbounded curves exist.
std::vector<Vec3> unbounded_direction_seeds(Tag tag) {
    switch (tag) {
        case Tag::Q8:  // z = 0: y(t) = y0 exp(lambda x0 t)
            return {Vec3(0.5, 1.0, 0.0), Vec3(-0.5, 1.0, 0.0)};
        case Tag::Q12:  // lambda = 0: y(t) = y0 exp(x0 t)
            return {Vec3(0.5, 1.0, 0.2), Vec3(-0.5, 1.0, 0.2)};
        case Tag::Q9:  // lambda = -1: z(t) = z0 exp(x0 t)
            return {Vec3(0.5, 1.0, 1.0), Vec3(-0.5, 1.0, 1.0)};
        case Tag::Q5:  // s = 0 at lambda = -1: y = 0, z(t) = z0 exp(x0 t)
            return {Vec3(0.5, 0.0, 1.0), Vec3(-0.5, 0.0, 1.0)};
        default: return {};
    }
}

ExplicitFlowCertificate verify_explicit_flow(Tag tag, double lambda) {
    const LieAlgebra3 g = standard_family(FamilyId::h(lambda));
    const BilinearForm q(canonical_matrix(tag));
    const QuadraticField F = euler_arnold_field(g, q);
    IntegrateOptions o;
    o.rtol = 1e-10;
    o.atol = 1e-12;
    const double T = 5.0;
    ExplicitFlowCertificate cert;
    auto check = [&](const Vec3& v0, const Vec3& want) {
        const Trajectory tr = integrate(F, v0, 0.0, T, o);
        const double err =
            (tr.states.back() - want).norm() / (1.0 + want.norm());
        cert.max_error = std::max(cert.max_error, err);
    };
    if (tag == Tag::Q12) {
        // (x0, y0 e^{x0 t}, z0 + y0^2 (1 - e^{2 x0 t}) / (2 x0)); straight
        // z-drift when x0 = 0.
        auto flow = [&](const Vec3& v) -> Vec3 {
            if (v[0] == 0.0) return {0.0, v[1], v[2] - v[1] * v[1] * T};
            const double ex = std::exp(v[0] * T);
            return {v[0], v[1] * ex,
                    v[2] + v[1] * v[1] / (2.0 * v[0]) * (1.0 - ex * ex)};
        };
        for (const Vec3& v0 :
             {Vec3(0.7, 0.8, -0.3), Vec3(0.0, 0.9, 0.4), Vec3(-0.5, 0.6, 0.2)})
            check(v0, flow(v0));
        cert.description = "Q12 flow at lambda = 0";
    } else {
        // Q9 at lambda = -1: (x0, y0 e^{-x0 t}, z0 e^{x0 t}).
        auto flow = [&](const Vec3& v) -> Vec3 {
            return {v[0], v[1] * std::exp(-v[0] * T), v[2] * std::exp(v[0] * T)};
        };
        for (const Vec3& v0 : {Vec3(0.6, 0.8, -0.5), Vec3(-0.4, 1.1, 0.3)})
            check(v0, flow(v0));
        cert.description = "Q9 flow at lambda = -1";
    }
    if (cert.max_error > 1e-8)
        throw CorroborationFailureError(
            "explicit-flow verification for " + tag_name(tag) +
            " drifted to " + num(cert.max_error));
    return cert;
}

void run_evidence(Report& rep, const QuadraticField& F, const BilinearForm& q,
                  const ClassifyOptions& opts) {
    std::vector<std::pair<SeedKind, Vec3>> seeds;
    size_t idem_count = 0;
    for (const Idempotent& idem : rep.idempotents) {
        seeds.emplace_back(SeedKind::IdempotentSeed, idem.point);
        if (++idem_count == 6) break;
    }
    if (q.signature().lorentzian())
        for (const Vec3& n : null_cone_points(q))
            seeds.emplace_back(SeedKind::NullCone, n);
    if (rep.canonical && rep.table_verdict) {
        const Mat3 inv = rep.canonical->phi.M.inverse();
        if (rep.table_verdict->status == Status::Incomplete &&
            rep.idempotents.empty() && !rep.domination)
            for (const Vec3& v : level_set_seeds(rep.canonical->tag))
                seeds.emplace_back(SeedKind::LevelSet, inv * v);
        if (rep.table_verdict->status == Status::Complete &&
            rep.table_verdict->boundedness == Boundedness::UnboundedExist)
            for (const Vec3& v : unbounded_direction_seeds(rep.canonical->tag))
                seeds.emplace_back(SeedKind::LevelSet, inv * v);
    }
    std::mt19937_64 rng(opts.seed);
    auto uniform = [&](double lo, double hi) {
        return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
    };
    const size_t want =
        std::max<size_t>(static_cast<size_t>(std::max(opts.min_evidence, 0)),
                         seeds.size() + 4);
    while (seeds.size() < want) {
        const Vec3 v(uniform(-1.5, 1.5), uniform(-1.5, 1.5), uniform(-1.5, 1.5));
        if (v.norm() < 0.1) continue;
        seeds.emplace_back(SeedKind::Random, v);
    }

    IntegrateOptions io;
    io.rtol = opts.rtol;
    io.atol = opts.atol;
    io.energy_form = q.matrix();
    if (opts.evidence_dir) std::filesystem::create_directories(*opts.evidence_dir);
    int index = 0;
    for (const auto& [kind, v0] : seeds) {
        const BoundednessReport br = boundedness_evidence(F, v0, opts.horizon, io);
        EvidenceRecord rec;
        rec.kind = kind;
        rec.v0 = v0;
        rec.outcome = br.trajectory.outcome;
        rec.evidence = br.verdict_evidence;
        rec.sup_norm = br.sup_norm;
        rec.log_norm_slope = br.log_norm_slope;
        rec.blowup_time = br.trajectory.blowup_time;
        const double e0 = v0.dot(q.matrix() * v0);
        if (rec.outcome == Outcome::ReachedHorizon &&
            std::abs(e0) > 1e-8 * q.norm() * v0.squaredNorm())
            rec.energy_drift = br.trajectory.stats.energy_drift_max;
        if (opts.evidence_dir) {
            std::ostringstream name;
            name << "evidence_" << (index < 10 ? "0" : "") << index << ".csv";
            const std::string path =
                (std::filesystem::path(*opts.evidence_dir) / name.str()).string();
            std::ofstream os(path);
            write_trajectory_csv(os, br.trajectory, q.matrix());
            rec.csv_path = path;
        }
        rep.evidence.push_back(std::move(rec));
        ++index;
    }
}

}  // namespace

Report classify_problem(const ProblemSpec& p, const ClassifyOptions& opts) {
    const LieAlgebra3 g = build_algebra(p);
    const BilinearForm q = build_metric(p);

    Report rep;
    rep.algebra_desc = describe_family(g.label);
    rep.metric = q.matrix();
    rep.metric_signature = q.signature();

    const QuadraticField F = euler_arnold_field(g, q);
    const bool is_h = g.label.family == Family::H;

    std::vector<Vec3> idem_seeds;
    if (is_h) {
        const double lambda = g.label.param;
        rep.lambda = lambda;
        NormalFormId nf = canonicalize(lambda, q);
        rep.table_verdict = verdict_from_table(lambda, nf);
        if (std::abs(lambda) < 1.0) {
            // Closed-form census points of the canonical field, mapped into
            // the input frame (the reduction can move idempotents outside the
            // finder's seed lattice).
            const Mat3 inv = nf.phi.M.inverse();
            for (const Vec3& v : census_reference(nf.tag, nf.param, lambda))
                idem_seeds.push_back(inv * v);
        }
        rep.canonical = std::move(nf);
    }

    try {
        rep.idempotents = find_idempotents(F, idem_seeds);
    } catch (const NonIsolatedSolutionSetError&) {
        rep.idempotent_continuum = true;
        if (rep.canonical) {
            if (const std::optional<Vec3> vstar =
                    continuum_representative(rep.canonical->tag)) {
                const Idempotent idem = polish_idempotent(
                    F, rep.canonical->phi.M.inverse().eval() * *vstar);
                if (idem.residual <= 1e-9 * (1.0 + idem.point.squaredNorm()))
                    rep.idempotents.push_back(idem);
            }
        }
    }

    rep.pd_integral = positive_definite_integral(F);
    if (q.signature().lorentzian()) rep.domination = null_cone_domination(F, q);

    if (rep.table_verdict &&
        rep.table_verdict->mechanism == Mechanism::ExplicitFlow)
        rep.explicit_flow = verify_explicit_flow(rep.canonical->tag, *rep.lambda);

    if (rep.table_verdict)
        rep.final_status = to_string(rep.table_verdict->status);
    else if (!rep.idempotents.empty() || rep.domination)
        rep.final_status = "Incomplete";
    else if (rep.pd_integral)
        rep.final_status = "Complete";
    else
        rep.final_status = "Undecided";

    run_evidence(rep, F, q, opts);

    if (!rep.corroborated()) {
        int blowups = 0;
        for (const EvidenceRecord& r : rep.evidence)
            if (r.outcome == Outcome::BlowUp) ++blowups;
        std::ostringstream why;
        why << "report failed its corroboration invariant: final status "
            << rep.final_status << " with " << rep.idempotents.size()
            << " idempotent(s), domination=" << (rep.domination ? "yes" : "no")
            << ", pd=" << (rep.pd_integral ? "yes" : "no")
            << ", explicit-flow=" << (rep.explicit_flow ? "yes" : "no") << ", "
            << blowups << " blow-up trajectories out of " << rep.evidence.size();
        throw CorroborationFailureError(why.str());
    }
    return rep;
}

// ---------------------------------------------------------------------------
// table1
// ---------------------------------------------------------------------------

namespace {

// "y + c z = 0" with the coefficient rendered exactly.
std::string plane_with_coef(const std::string& lead, const Rat& c,
                            const std::string& var) {
    if (c == Rat(0)) return lead + " = 0";
    const bool neg = c < Rat(0);
    const Rat a = rat_abs(c);
    std::string coef = (a == Rat(1)) ? "" : to_string(a) + " ";
    return lead + (neg ? " - " : " + ") + coef + var + " = 0";
}

std::string indent_block(const std::string& text, const std::string& pad) {
    std::string out;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) out += pad + line + "\n";
    return out;
}

}  // namespace

std::vector<Table1Row> table1(const Rat& lambda, const Rat& r, const Rat& s,
                              const Rat& t) {
    if (!(rat_abs(lambda) < Rat(1)))
        throw ParameterOutOfRangeError("table rows require |lambda| < 1");
    if (!(r < Rat(1)))
        throw ParameterOutOfRangeError("the Q4 row requires r < 1");
    if (!(s > Rat(-1)))
        throw ParameterOutOfRangeError("the Q5 row requires s > -1");
    if (!(t > Rat(1)))
        throw ParameterOutOfRangeError("the Q6 row requires t > 1");

    const LieAlgebra3 g = standard_family(FamilyId::h(lambda));
    const bool nz = lambda != Rat(0);

    std::vector<Table1Row> rows;
    for (int k = 1; k <= 12; ++k) {
        const Tag tag = static_cast<Tag>(k);
        Table1Row row;
        row.tag = tag;
        std::optional<Rat> param;
        if (tag == Tag::Q4) param = r;
        if (tag == Tag::Q5) param = s;
        if (tag == Tag::Q6) param = t;
        row.param = param;

        const BilinearForm q(canonical_matrix_exact(tag, param));
        row.field = polynomial_string(euler_arnold_field(g, q));

        switch (tag) {
            case Tag::Q1:
            case Tag::Q2:
            case Tag::Q3:
            case Tag::Q9: row.planes = {"y = 0", "z = 0"}; break;
            case Tag::Q4:
                row.planes = {"y + z = 0", plane_with_coef("y", r, "z")};
                break;
            case Tag::Q5:
                row.planes = {"y - z = 0", plane_with_coef("y", s, "z")};
                break;
            case Tag::Q6:
                row.planes = {"y + z = 0", plane_with_coef("y", t, "z")};
                break;
            case Tag::Q7: row.planes = {"y + z = 0", "z = 0"}; break;
            case Tag::Q8: row.planes = {"y - z = 0", "z = 0"}; break;
            case Tag::Q10: row.planes = {"x = 0", "y + z = 0"}; break;
            case Tag::Q11: row.planes = {"x = 0", "z = 0"}; break;
            default: row.planes = {"x = 0", "y = 0"}; break;  // Q12
        }

        switch (tag) {
            case Tag::Q1:
                row.has_idempotents = nz;
                row.condition = "yes iff lambda != 0";
                break;
            case Tag::Q4:
                row.has_idempotents =
                    (r > Rat(0) && r < Rat(1)) || (nz && r < Rat(1));
                row.condition = "yes iff 0 < r < 1, or lambda != 0 and r < 1";
                break;
            case Tag::Q5:
                row.has_idempotents = s > Rat(0);
                row.condition = "yes iff s > 0";
                break;
            case Tag::Q8:
            case Tag::Q9:
                row.has_idempotents = false;
                row.condition = "no";
                break;
            case Tag::Q12:
                row.has_idempotents = nz;
                row.condition = "yes iff lambda != 0";
                break;
            default:
                row.has_idempotents = true;
                row.condition = "yes";
                break;
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string render_table1(const std::vector<Table1Row>& rows) {
    std::ostringstream os;
    for (const Table1Row& row : rows) {
        os << "[" << tag_name(row.tag) << "]";
        if (row.param) {
            const char* pname = row.tag == Tag::Q4   ? "r"
                                : row.tag == Tag::Q5 ? "s"
                                                     : "t";
            os << "  " << pname << " = " << to_string(*row.param);
        }
        os << "\n";
        os << "field:\n" << indent_block(row.field, "  ");
        os << "invariant planes: " << row.planes[0] << "; " << row.planes[1]
           << "\n";
        os << "idempotents: " << (row.has_idempotents ? "yes" : "no") << "    ("
           << row.condition << ")\n\n";
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// census
// ---------------------------------------------------------------------------

std::vector<Vec3> census_reference(Tag tag, std::optional<double> param,
                                   double lambda) {
    if (!(lambda == 0.0 || std::abs(lambda) < 1.0))
        throw ParameterOutOfRangeError(
            "census reference lists cover lambda in {0} or 0 < |lambda| < 1");
    const bool interior = lambda != 0.0;
    std::vector<Vec3> out;
    const double il = interior ? 1.0 / lambda : 0.0;
    switch (tag) {
        case Tag::Q1:
            if (interior) {
                out.push_back({il, 0.0, il});
                out.push_back({il, 0.0, -il});
            }
            break;
        case Tag::Q2:
            out.push_back({1.0, 1.0, 0.0});
            out.push_back({1.0, -1.0, 0.0});
            break;
        case Tag::Q3:
            out.push_back({1.0, 1.0, 0.0});
            out.push_back({1.0, -1.0, 0.0});
            if (interior) {
                out.push_back({il, 0.0, il});
                out.push_back({il, 0.0, -il});
            }
            break;
        case Tag::Q4: {
            const double r = param.value();
            if (r > 0.0 && r < 1.0) {
                const double rho = std::sqrt(r - r * r);
                out.push_back({1.0, -r / rho, 1.0 / rho});
                out.push_back({1.0, r / rho, -1.0 / rho});
            }
            if (interior && r < 1.0) {
                const double sg = lambda * std::sqrt(1.0 - r);
                out.push_back({il, -1.0 / sg, 1.0 / sg});
                out.push_back({il, 1.0 / sg, -1.0 / sg});
            }
            break;
        }
        case Tag::Q5: {
            const double s = param.value();
            if (s > 0.0) {
                const double rho = std::sqrt(s + s * s);
                out.push_back({1.0, -s / rho, 1.0 / rho});
                out.push_back({1.0, s / rho, -1.0 / rho});
            }
            break;
        }
        case Tag::Q6: {
            const double t = param.value();
            const double rho = std::sqrt(t * t - t);
            out.push_back({1.0, -t / rho, 1.0 / rho});
            out.push_back({1.0, t / rho, -1.0 / rho});
            if (interior) {
                const double sg = lambda * std::sqrt(t - 1.0);
                out.push_back({il, -1.0 / sg, 1.0 / sg});
                out.push_back({il, 1.0 / sg, -1.0 / sg});
            }
            break;
        }
        case Tag::Q7:
            out.push_back({1.0, 1.0, -1.0});
            out.push_back({1.0, -1.0, 1.0});
            break;
        case Tag::Q8:
        case Tag::Q9: break;
        case Tag::Q10:
            out.push_back({1.0, -0.5, -0.5});
            if (interior) out.push_back({il, 0.0, 0.0});
            break;
        case Tag::Q11: out.push_back({1.0, 0.0, 0.0}); break;
        case Tag::Q12:
            if (interior) out.push_back({il, 0.0, 0.0});
            break;
        default:
            throw ParameterOutOfRangeError(
                "census covers the Lorentzian tags Q1..Q12");
    }
    std::sort(out.begin(), out.end(),
              [](const Vec3& a, const Vec3& b) { return lex_less(a, b); });
    return out;
}

std::vector<CensusEntry> census(double lambda) {
    if (!(lambda == 0.0 || (std::abs(lambda) > 0.0 && std::abs(lambda) < 1.0)))
        throw ParameterOutOfRangeError(
            "census requires lambda in {0} or 0 < |lambda| < 1");

    using RowSpec = std::pair<Tag, std::optional<double>>;
    const std::vector<RowSpec> specs = {
        {Tag::Q1, std::nullopt}, {Tag::Q2, std::nullopt}, {Tag::Q3, std::nullopt},
        {Tag::Q4, -1.0},         {Tag::Q4, 0.0},          {Tag::Q4, 0.25},
        {Tag::Q4, 0.75},         {Tag::Q5, -0.5},         {Tag::Q5, 0.0},
        {Tag::Q5, 0.25},         {Tag::Q5, 2.0},          {Tag::Q6, 1.5},
        {Tag::Q6, 2.0},          {Tag::Q6, 3.0},          {Tag::Q7, std::nullopt},
        {Tag::Q8, std::nullopt}, {Tag::Q9, std::nullopt}, {Tag::Q10, std::nullopt},
        {Tag::Q11, std::nullopt}, {Tag::Q12, std::nullopt}};

    const LieAlgebra3 g = standard_family(FamilyId::h(lambda));
    std::vector<CensusEntry> entries;
    for (const auto& [tag, param] : specs) {
        CensusEntry entry;
        entry.tag = tag;
        entry.param = param;
        entry.reference = census_reference(tag, param, lambda);

        const BilinearForm q(canonical_matrix(tag, param));
        const QuadraticField F = euler_arnold_field(g, q);
        entry.found = find_idempotents(F, entry.reference);

        auto describe = [&]() {
            std::ostringstream os;
            os << tag_name(tag);
            if (param) os << "(" << num(*param) << ")";
            os << " at lambda = " << num(lambda) << ": expected "
               << entry.reference.size() << " idempotent(s) {";
            for (const Vec3& v : entry.reference) os << " " << vec(v);
            os << " }, found " << entry.found.size() << " {";
            for (const Idempotent& f : entry.found) os << " " << vec(f.point);
            os << " }";
            return os.str();
        };

        if (entry.found.size() != entry.reference.size())
            throw CensusMismatchError("census cardinality mismatch for " +
                                      describe());
        for (size_t i = 0; i < entry.found.size(); ++i) {
            const double d = (entry.found[i].point - entry.reference[i]).norm();
            entry.max_mismatch = std::max(entry.max_mismatch, d);
        }
        if (entry.max_mismatch > 1e-9)
            throw CensusMismatchError("census coordinate mismatch (max " +
                                      num(entry.max_mismatch) + ") for " +
                                      describe());
        entries.push_back(std::move(entry));
    }
    return entries;
}

std::string render_census(const std::vector<CensusEntry>& entries) {
    std::ostringstream os;
    for (const CensusEntry& e : entries) {
        os << tag_name(e.tag);
        if (e.param) os << "(" << num(*e.param) << ")";
        os << ": ";
        if (e.reference.empty()) {
            os << "(no idempotents)";
        } else {
            bool first = true;
            for (const Vec3& v : e.reference) {
                if (!first) os << ", ";
                os << vec(v);
                first = false;
            }
            os << "   [verified, max deviation " << num(e.max_mismatch) << "]";
        }
        os << "\n";
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// sweep
// ---------------------------------------------------------------------------

SweepSummary sweep(int count, unsigned long long seed, int jobs) {
    SweepSummary summary;
    summary.cases.resize(static_cast<size_t>(std::max(count, 0)));

    // Inputs are drawn sequentially so the schedule cannot change them.
    std::mt19937_64 rng(seed);
    auto uniform = [&](double lo, double hi) {
        return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
    };
    for (SweepCase& c : summary.cases) {
        c.lambda = static_cast<double>(static_cast<int>(rng() % 19) - 9) / 10.0;
        for (;;) {
            Mat3 m;
            for (int i = 0; i < 3; ++i)
                for (int j = i; j < 3; ++j) m(i, j) = m(j, i) = uniform(-2.0, 2.0);
            const BilinearForm q(m);
            if (q.signature().lorentzian()) {
                c.metric = m;
                break;
            }
        }
    }

    const int threads = jobs > 0
                            ? jobs
                            : std::max(1u, std::thread::hardware_concurrency());
    std::atomic<size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            const size_t i = next.fetch_add(1);
            if (i >= summary.cases.size()) return;
            SweepCase& c = summary.cases[i];
            ProblemSpec spec;
            spec.family = "h";
            spec.lambda = c.lambda;
            spec.matrix = c.metric;
            try {
                const Report rep = classify_problem(spec);
                c.outcome = rep.final_status;
                c.corroborated = true;
            } catch (const NumericallyAmbiguousError&) {
                c.ambiguous = true;
                c.outcome = "NumericallyAmbiguous";
            } catch (const Error& e) {
                c.outcome = e.what();
            }
        }
    };
    std::vector<std::thread> pool;
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (std::thread& th : pool) th.join();

    for (const SweepCase& c : summary.cases) {
        if (c.ambiguous)
            ++summary.ambiguous;
        else if (c.outcome == "Complete")
            ++summary.complete;
        else if (c.outcome == "Incomplete")
            ++summary.incomplete;
        else
            ++summary.failures;
    }
    return summary;
}

std::string render_sweep(const SweepSummary& s) {
    std::ostringstream os;
    os << "sweep: " << s.cases.size() << " cases; " << s.complete
       << " complete, " << s.incomplete << " incomplete, " << s.ambiguous
       << " ambiguous (refused), " << s.failures << " failures\n";
    for (size_t i = 0; i < s.cases.size(); ++i) {
        const SweepCase& c = s.cases[i];
        if (c.corroborated || c.ambiguous) continue;
        os << "  case " << i << " (lambda = " << num(c.lambda)
           << ") failed: " << c.outcome << "\n";
        os << mat_rows(c.metric, "    ");
    }
    return os.str();
}

}  // namespace ealab
