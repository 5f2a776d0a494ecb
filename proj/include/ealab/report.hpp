#pragma once
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ealab/dynamics.hpp"
#include "ealab/integrator.hpp"
#include "ealab/normal_form.hpp"
#include "ealab/problem.hpp"

namespace ealab {

inline constexpr const char* kReportSchema = "ea-lab-report/1";
inline constexpr const char* kToolVersion = "ealab 0.1.0";

// Where a corroborating initial condition came from.
enum class SeedKind { IdempotentSeed, NullCone, LevelSet, Random };

std::string to_string(SeedKind k);

// Summary of one corroborating integration.
struct EvidenceRecord {
    SeedKind kind = SeedKind::Random;
    Vec3 v0 = Vec3::Zero();
    Outcome outcome = Outcome::ReachedHorizon;
    BoundednessEvidence evidence = BoundednessEvidence::BoundedSoFar;
    double sup_norm = 0.0;
    double log_norm_slope = 0.0;
    std::optional<double> blowup_time;
    // Relative energy drift; only meaningful (and only set) when the initial
    // energy is bounded away from zero and the run reached the horizon.
    std::optional<double> energy_drift;
    std::string csv_path = "(not saved)";
};

struct ExplicitFlowCertificate {
    std::string description;  // which closed form was verified
    double max_error = 0.0;   // worst endpoint mismatch across the checks
};

// The full classification record for one problem. Structured text via
// render(); field order is fixed.
struct Report {
    std::string schema = kReportSchema;
    std::string tool_version = kToolVersion;

    // input echo
    std::string algebra_desc;
    Mat3 metric = Mat3::Identity();
    Signature metric_signature;

    // h-family pipeline stages (absent for psh / e / custom algebras)
    std::optional<double> lambda;
    std::optional<NormalFormId> canonical;
    std::optional<Verdict> table_verdict;

    // certificates, all computed on the input field
    std::vector<Idempotent> idempotents;
    bool idempotent_continuum = false;
    std::optional<Mat3> pd_integral;
    std::optional<DominationCertificate> domination;
    std::optional<ExplicitFlowCertificate> explicit_flow;

    std::vector<EvidenceRecord> evidence;

    // "Complete" | "Incomplete" | "Undecided"
    std::string final_status = "Undecided";

    // The report's own consistency rule:
    //   Incomplete  needs an idempotent, a domination certificate, or a
    //               BlowUp trajectory;
    //   Complete    needs a PD integral, a verified explicit flow, or a full
    //               set of horizon-reaching runs on top of a table verdict --
    //               and tolerates neither idempotents nor BlowUp evidence;
    //   Undecided   claims nothing.
    bool corroborated() const;

    std::string render() const;
};

struct ClassifyOptions {
    int min_evidence = 8;
    double rtol = 1e-8;
    double atol = 1e-10;
    double horizon = 24.0;
    // classify is deterministic: the random seeds use a fixed generator
    unsigned long long seed = 0xEA1AB5EEDULL;
    // when set, every evidence trajectory is written as a CSV sidecar here
    std::optional<std::string> evidence_dir;
};

// End-to-end pipeline: build algebra/metric -> canonicalize + decision table
// (h family only) -> certificate search -> corroborating integrations (>= 8
// initial conditions: idempotents if any, null-cone points, random points).
// Throws CorroborationFailureError when the assembled report violates its
// invariant; NumericallyAmbiguousError propagates from canonicalize.
Report classify_problem(const ProblemSpec& p, const ClassifyOptions& opts = {});

// CSV dump: t,x,y,z,energy,step_size rows plus a structured `# key = value`
// footer. The energy column needs the form; zeros are written without it.
void write_trajectory_csv(std::ostream& os, const Trajectory& traj,
                          const std::optional<Mat3>& energy_form);

// ------------------------------------------------------------------------
// Decision-table reproduction: the 12 Lorentzian rows at one lambda.
// ------------------------------------------------------------------------

struct Table1Row {
    Tag tag = Tag::Q1;
    std::optional<Rat> param;         // value used for the Q4 / Q5 / Q6 rows
    std::string field;                // exact polynomial components
    std::vector<std::string> planes;  // the row's published invariant planes
    bool has_idempotents = false;     // condition evaluated at this lambda
    std::string condition;            // the row's idempotent condition
};

// Exact-arithmetic rows (|lambda| < 1); r < 1 excluding 0 and 1 handled by
// the condition strings, s > -1, t > 1. Output is deterministic.
std::vector<Table1Row> table1(const Rat& lambda, const Rat& r, const Rat& s,
                              const Rat& t);

std::string render_table1(const std::vector<Table1Row>& rows);

// ------------------------------------------------------------------------
// Idempotent census: closed-form reference lists vs the root finder.
// ------------------------------------------------------------------------

struct CensusEntry {
    Tag tag = Tag::Q1;
    std::optional<double> param;
    std::vector<Vec3> reference;    // closed-form list, both root branches
    std::vector<Idempotent> found;  // find_idempotents output
    double max_mismatch = 0.0;      // after lexicographic pairing
};

// The closed-form idempotent list of one canonical field. Valid for
// lambda in {0} or 0 < |lambda| < 1.
std::vector<Vec3> census_reference(Tag tag, std::optional<double> param,
                                   double lambda);

// Runs the census over all 12 Lorentzian tags (Q4 at r in {-1,0,1/4,3/4},
// Q5 at s in {-1/2,0,1/4,2}, Q6 at t in {3/2,2,3}) and verifies each list
// against find_idempotents to 1e-9. Throws CensusMismatchError on any
// disagreement; never silently accepts one.
std::vector<CensusEntry> census(double lambda);

std::string render_census(const std::vector<CensusEntry>& entries);

// ------------------------------------------------------------------------
// Randomized sweep: every report must corroborate itself.
// ------------------------------------------------------------------------

struct SweepCase {
    double lambda = 0.0;
    Mat3 metric = Mat3::Identity();
    std::string outcome;  // final status, or the error class
    bool corroborated = false;
    bool ambiguous = false;  // canonicalize refused to split a near-boundary case
};

struct SweepSummary {
    std::vector<SweepCase> cases;
    int complete = 0;
    int incomplete = 0;
    int ambiguous = 0;
    int failures = 0;  // corroboration failures (these fail the sweep)
};

// `count` random Lorentzian metrics on h(lambda) with lambda drawn from
// {-0.9, -0.8, ..., 0.9}. Inputs are pre-generated from `seed`, so results
// do not depend on scheduling; classify jobs run on `jobs` threads
// (0 = hardware concurrency).
SweepSummary sweep(int count, unsigned long long seed, int jobs = 0);

std::string render_sweep(const SweepSummary& s);

}  // namespace ealab
