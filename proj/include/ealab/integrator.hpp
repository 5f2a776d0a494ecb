#pragma once

#include <array>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ealab/dynamics.hpp"
#include "ealab/metric.hpp"

namespace ealab {

struct IntegrateOptions {
    double rtol = 1e-10;
    double atol = 1e-12;
    double blowup_norm = 1e8;
    long long max_steps = 10'000'000;
    // When set, q(v,v) is tracked along the trajectory and its maximum
    // relative drift lands in TrajectoryStats::energy_drift_max.
    std::optional<Mat3> energy_form;
    // When set, adaptivity is disabled and every step uses exactly this size
    // (order-measurement harness; not for production use).
    std::optional<double> fixed_step;
};

enum class Outcome { ReachedHorizon, BlowUp, StepUnderflow };

struct TrajectoryStats {
    double sup_norm = 0.0;
    double energy_drift_max = 0.0;
    long long accepted_steps = 0;
    long long rejected_steps = 0;
};

// Quartic interpolant over one accepted step [t, t + h], Horner form in the
// normalized time theta = (s - t)/h.
struct DenseStep {
    double t = 0.0;
    double h = 0.0;
    std::array<Vec3, 5> rcont{};

    Vec3 eval(double s) const;
};

struct Trajectory {
    std::vector<double> times;   // strictly increasing, times.front() = t0
    std::vector<Vec3> states;    // states[i] at times[i]
    std::vector<DenseStep> dense;  // one per accepted step
    Outcome outcome = Outcome::ReachedHorizon;
    // Blow-up instant estimated by extrapolating 1/|v| -> 0 across the last
    // accepted steps, with the spread of successive estimates as uncertainty.
    std::optional<double> blowup_time;
    double blowup_uncertainty = 0.0;
    TrajectoryStats stats;

    // Interpolated state at any time inside [times.front(), times.back()].
    Vec3 sample(double t) const;
};

// Adaptive embedded Runge-Kutta 5(4) integration of dv/dt = F(v) from v0 over
// [t0, t0 + horizon].  Declares BlowUp only when |v| >= blowup_norm AND the
// extrapolated remaining time to the singularity is < 1e-3 * horizon, so that
// exponentially growing but complete trajectories are not misreported.
// Throws MaxStepsExceededError when the step budget runs out.
Trajectory integrate(const QuadraticField& F, const Vec3& v0, double t0,
                     double horizon, const IntegrateOptions& opts = {});

enum class BoundednessEvidence { BoundedSoFar, GrowthDetected, BlowUp };

struct BoundednessReport {
    double sup_norm = 0.0;
    BoundednessEvidence verdict_evidence = BoundednessEvidence::BoundedSoFar;
    // Least-squares slope of log|v(t)| over the last half of the time span
    // (GrowthDetected iff it exceeds 1e-3); meaningless for BlowUp.
    double log_norm_slope = 0.0;
    Trajectory trajectory;
};

// Numerical evidence only, never a proof: a bounded verdict can always be
// overturned by a longer horizon.
BoundednessReport boundedness_evidence(const QuadraticField& F, const Vec3& v0,
                                       double horizon,
                                       const IntegrateOptions& opts = {});

// A named scalar function to track along a trajectory: linear covector l
// (value l . v), quadratic form S (value v^T S v), or a power-ratio invariant
// with a restricted domain.
struct MonitorInvariant {
    std::string name;
    std::variant<Vec3, Mat3, PowerRatioInvariant> fn;

    double eval(const Vec3& v) const;
};

struct DriftEntry {
    std::string name;
    double max_relative_drift = 0.0;
};

struct DriftReport {
    Trajectory trajectory;
    std::vector<DriftEntry> drifts;  // entry 0 is always the energy q(v,v)
};

// Integrates and reports max |f(v(t)) - f(v0)| / max(|f(v0)|, 1e-12) for the
// energy and each requested invariant, evaluated on the accepted points plus
// a uniform 512-point dense grid.  Power-ratio invariants throw
// DomainExitError if the trajectory leaves their domain.
DriftReport monitor(const QuadraticField& F, const BilinearForm& q,
                    const Vec3& v0, double horizon,
                    const std::vector<MonitorInvariant>& invariants,
                    const IntegrateOptions& opts = {});

}  // namespace ealab
