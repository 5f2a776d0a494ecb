#include "ealab/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ealab/errors.hpp"

namespace ealab {
namespace {

// Dormand-Prince 5(4) tableau.  The first same-as-last property makes the
// 7th stage of an accepted step the 1st stage of the next one.
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                 a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                 a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
// b_i - bhat_i: weights of the embedded 4th-order error estimate.
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
// Dense-output weights for the quartic interpolant.
constexpr double d1 = -12715105075.0 / 11282082432;
constexpr double d3 = 87487479700.0 / 32700410799;
constexpr double d4 = -10690763975.0 / 1880347072;
constexpr double d5 = 701980252875.0 / 199316789632;
constexpr double d6 = -1453857185.0 / 822651844;
constexpr double d7 = 69997945.0 / 29380423;

// Proportional-integral step-size controller constants (fixed; no adaptive
// order switching, so reruns are bit-reproducible).
constexpr double kSafe = 0.9;
constexpr double kBeta = 0.04;
constexpr double kExpo1 = 0.2 - kBeta * 0.75;  // 0.17
constexpr double kFacc1 = 5.0;   // max shrink factor per step
constexpr double kFacc2 = 0.1;   // max growth factor 10 per step

double rms_error(const Vec3& err, const Vec3& y0, const Vec3& y1, double rtol,
                 double atol) {
    double acc = 0.0;
    for (int i = 0; i < 3; ++i) {
        double sk = atol + rtol * std::max(std::abs(y0[i]), std::abs(y1[i]));
        double q = err[i] / sk;
        acc += q * q;
    }
    double e = std::sqrt(acc / 3.0);
    return std::isfinite(e) ? e : 1e10;
}

// Hairer's starting-step heuristic: balance the field magnitude against the
// state scale, then correct with an estimate of the second derivative.
double initial_step(const QuadraticField& F, const Vec3& y0, const Vec3& f0,
                    double hmax, double rtol, double atol) {
    double d0 = 0.0, d1n = 0.0;
    for (int i = 0; i < 3; ++i) {
        double sk = atol + rtol * std::abs(y0[i]);
        d0 += (y0[i] / sk) * (y0[i] / sk);
        d1n += (f0[i] / sk) * (f0[i] / sk);
    }
    d0 = std::sqrt(d0 / 3.0);
    d1n = std::sqrt(d1n / 3.0);
    double h0 = (d0 < 1e-5 || d1n < 1e-5) ? 1e-6 : 0.01 * (d0 / d1n);
    h0 = std::min(h0, hmax);
    Vec3 y1 = y0 + h0 * f0;
    Vec3 f1 = F.eval(y1);
    double d2 = 0.0;
    for (int i = 0; i < 3; ++i) {
        double sk = atol + rtol * std::abs(y0[i]);
        double q = (f1[i] - f0[i]) / sk;
        d2 += q * q;
    }
    d2 = std::sqrt(d2 / 3.0) / h0;
    double h1;
    if (std::max(d1n, d2) <= 1e-15) {
        h1 = std::max(1e-6, h0 * 1e-3);
    } else {
        h1 = std::pow(0.01 / std::max(d1n, d2), 0.2);
    }
    return std::min({100.0 * h0, h1, hmax});
}

// Linear extrapolation of w = 1/|v| to zero through consecutive history
// points; returns the estimated singular time, or nullopt when the norm is
// not increasing.
std::optional<double> secant_root(double t0, double w0, double t1, double w1) {
    if (!(w0 > w1) || !(w1 > 0.0)) return std::nullopt;
    return t1 + w1 * (t1 - t0) / (w0 - w1);
}

}  // namespace

Vec3 DenseStep::eval(double s) const {
    double theta = (s - t) / h;
    double th1 = 1.0 - theta;
    return rcont[0] +
           theta * (rcont[1] + th1 * (rcont[2] + theta * (rcont[3] + th1 * rcont[4])));
}

Vec3 Trajectory::sample(double tq) const {
    if (dense.empty()) {
        if (states.empty()) throw Error("sample() on an empty trajectory");
        return states.front();
    }
    // Last step whose left endpoint is <= tq.
    auto it = std::upper_bound(dense.begin(), dense.end(), tq,
                               [](double v, const DenseStep& d) { return v < d.t; });
    if (it != dense.begin()) --it;
    return it->eval(tq);
}

Trajectory integrate(const QuadraticField& F, const Vec3& v0, double t0,
                     double horizon, const IntegrateOptions& opts) {
    if (!(horizon > 0.0)) throw ParameterOutOfRangeError("horizon must be > 0");
    if (!(opts.rtol > 0.0) || !(opts.atol > 0.0)) {
        throw ParameterOutOfRangeError("rtol and atol must be > 0");
    }
    const double t_end = t0 + horizon;
    const double uround = 2.3e-16;

    Trajectory traj;
    traj.times.push_back(t0);
    traj.states.push_back(v0);
    traj.stats.sup_norm = v0.norm();

    double e0 = 0.0;
    if (opts.energy_form) e0 = v0.dot(*opts.energy_form * v0);

    double t = t0;
    Vec3 y = v0;
    Vec3 k1 = F.eval(y);
    double h = opts.fixed_step
                   ? std::min(*opts.fixed_step, horizon)
                   : initial_step(F, y, k1, horizon, opts.rtol, opts.atol);
    double facold = 1e-4;
    bool reject = false;

    // (t, 1/|v|) history of recent accepted steps for blow-up extrapolation.
    std::vector<std::pair<double, double>> hist;
    hist.emplace_back(t, 1.0 / std::max(v0.norm(), 1e-300));

    while (t < t_end) {
        if (traj.stats.accepted_steps + traj.stats.rejected_steps >=
            opts.max_steps) {
            std::ostringstream msg;
            msg << "step budget exhausted after " << traj.stats.accepted_steps
                << " accepted + " << traj.stats.rejected_steps
                << " rejected steps at t = " << t;
            throw MaxStepsExceededError(msg.str());
        }
        if (h <= uround * std::max(1.0, std::abs(t))) {
            traj.outcome = Outcome::StepUnderflow;
            return traj;
        }
        bool last = false;
        if (t + 1.01 * h >= t_end) {
            h = t_end - t;
            last = true;
        }

        Vec3 k2 = F.eval(y + h * (a21 * k1));
        Vec3 k3 = F.eval(y + h * (a31 * k1 + a32 * k2));
        Vec3 k4 = F.eval(y + h * (a41 * k1 + a42 * k2 + a43 * k3));
        Vec3 k5 = F.eval(y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
        Vec3 k6 = F.eval(y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 +
                                  a65 * k5));
        Vec3 y1 = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        Vec3 k7 = F.eval(y1);
        Vec3 errv =
            h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
        double err = opts.fixed_step
                         ? 0.0
                         : rms_error(errv, y, y1, opts.rtol, opts.atol);

        if (err > 1.0) {
            // Rejected: pure proportional shrink, integral term suspended.
            double fac11 = std::pow(err, kExpo1);
            h = h / std::min(kFacc1, fac11 / kSafe);
            ++traj.stats.rejected_steps;
            reject = true;
            continue;
        }

        // Accepted.
        ++traj.stats.accepted_steps;
        DenseStep ds;
        ds.t = t;
        ds.h = h;
        Vec3 ydiff = y1 - y;
        Vec3 bspl = h * k1 - ydiff;
        ds.rcont[0] = y;
        ds.rcont[1] = ydiff;
        ds.rcont[2] = bspl;
        ds.rcont[3] = ydiff - h * k7 - bspl;
        ds.rcont[4] =
            h * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6 + d7 * k7);
        traj.dense.push_back(ds);

        double t1 = last ? t_end : t + h;
        traj.times.push_back(t1);
        traj.states.push_back(y1);
        double n1 = y1.norm();
        traj.stats.sup_norm = std::max(traj.stats.sup_norm, n1);
        if (opts.energy_form) {
            double e = y1.dot(*opts.energy_form * y1);
            double drift = std::abs(e - e0) / std::max(std::abs(e0), 1e-12);
            traj.stats.energy_drift_max =
                std::max(traj.stats.energy_drift_max, drift);
        }

        hist.emplace_back(t1, 1.0 / std::max(n1, 1e-300));
        if (hist.size() > 6) hist.erase(hist.begin());

        if (n1 >= opts.blowup_norm && hist.size() >= 2) {
            // Collect extrapolated singular times from the trailing secants;
            // Aitken-accelerate when three are available.
            std::vector<double> roots;
            for (size_t i = hist.size() - 1; i-- > 0 && roots.size() < 3;) {
                auto r = secant_root(hist[i].first, hist[i].second,
                                     hist[i + 1].first, hist[i + 1].second);
                if (r) roots.insert(roots.begin(), *r);
            }
            if (!roots.empty()) {
                double est = roots.back();
                double unc =
                    roots.size() >= 2
                        ? std::abs(roots.back() - roots[roots.size() - 2])
                        : 0.0;
                if (roots.size() >= 3) {
                    double s0 = roots[0], s1 = roots[1], s2 = roots[2];
                    double den = (s2 - s1) - (s1 - s0);
                    // Accelerate only when the estimates actually contract;
                    // for exponential growth they advance linearly and the
                    // Aitken formula would extrapolate garbage.
                    if (std::abs(den) > 1e-300) {
                        double acc = s2 - (s2 - s1) * (s2 - s1) / den;
                        if (std::abs(acc - s2) <= std::abs(s2 - s1)) {
                            unc = std::max(std::abs(acc - s2), unc * 1e-2);
                            est = acc;
                        }
                    }
                }
                double remaining = est - t1;
                if (std::isfinite(remaining) && remaining >= 0.0 &&
                    remaining < 1e-3 * horizon) {
                    traj.outcome = Outcome::BlowUp;
                    traj.blowup_time = est;
                    traj.blowup_uncertainty = unc;
                    return traj;
                }
            }
        }

        t = t1;
        y = y1;
        k1 = k7;  // FSAL
        if (last && t >= t_end) break;

        if (opts.fixed_step) {
            h = *opts.fixed_step;
        } else {
            double fac11 = std::pow(std::max(err, 1e-30), kExpo1);
            double fac = fac11 / std::pow(facold, kBeta);
            fac = std::max(kFacc2, std::min(kFacc1, fac / kSafe));
            double hnew = h / fac;
            if (reject) hnew = std::min(hnew, h);
            facold = std::max(err, 1e-4);
            h = hnew;
        }
        reject = false;
    }

    traj.outcome = Outcome::ReachedHorizon;
    return traj;
}

BoundednessReport boundedness_evidence(const QuadraticField& F, const Vec3& v0,
                                       double horizon,
                                       const IntegrateOptions& opts) {
    BoundednessReport rep;
    rep.trajectory = integrate(F, v0, 0.0, horizon, opts);
    rep.sup_norm = rep.trajectory.stats.sup_norm;
    if (rep.trajectory.outcome == Outcome::BlowUp) {
        rep.verdict_evidence = BoundednessEvidence::BlowUp;
        return rep;
    }
    // Least-squares slope of log|v| over the last half of the realized span.
    const Trajectory& tr = rep.trajectory;
    double ta = tr.times.front(), tb = tr.times.back();
    double mid = tb - 0.5 * (tb - ta);
    constexpr int N = 512;
    double st = 0, sl = 0, stt = 0, stl = 0;
    int n = 0;
    for (int i = 0; i < N; ++i) {
        double tq = mid + (tb - mid) * i / double(N - 1);
        double nv = tr.sample(tq).norm();
        double L = std::log(std::max(nv, 1e-300));
        st += tq;
        sl += L;
        stt += tq * tq;
        stl += tq * L;
        ++n;
    }
    double den = n * stt - st * st;
    rep.log_norm_slope = den > 0 ? (n * stl - st * sl) / den : 0.0;
    rep.verdict_evidence = rep.log_norm_slope > 1e-3
                               ? BoundednessEvidence::GrowthDetected
                               : BoundednessEvidence::BoundedSoFar;
    return rep;
}

double MonitorInvariant::eval(const Vec3& v) const {
    if (std::holds_alternative<Vec3>(fn)) return std::get<Vec3>(fn).dot(v);
    if (std::holds_alternative<Mat3>(fn)) {
        const Mat3& S = std::get<Mat3>(fn);
        return v.dot(S * v);
    }
    return std::get<PowerRatioInvariant>(fn).eval(v);
}

DriftReport monitor(const QuadraticField& F, const BilinearForm& q,
                    const Vec3& v0, double horizon,
                    const std::vector<MonitorInvariant>& invariants,
                    const IntegrateOptions& opts) {
    IntegrateOptions o = opts;
    o.energy_form = q.matrix();
    DriftReport rep;
    rep.trajectory = integrate(F, v0, 0.0, horizon, o);
    const Trajectory& tr = rep.trajectory;

    std::vector<MonitorInvariant> all;
    all.push_back({"energy", q.matrix()});
    for (const MonitorInvariant& m : invariants) all.push_back(m);

    std::vector<double> base(all.size());
    for (size_t j = 0; j < all.size(); ++j) base[j] = all[j].eval(v0);
    rep.drifts.resize(all.size());
    for (size_t j = 0; j < all.size(); ++j) rep.drifts[j].name = all[j].name;

    auto visit = [&](const Vec3& v) {
        for (size_t j = 0; j < all.size(); ++j) {
            double d = std::abs(all[j].eval(v) - base[j]) /
                       std::max(std::abs(base[j]), 1e-12);
            rep.drifts[j].max_relative_drift =
                std::max(rep.drifts[j].max_relative_drift, d);
        }
    };
    for (const Vec3& s : tr.states) visit(s);
    constexpr int N = 512;
    double ta = tr.times.front(), tb = tr.times.back();
    if (tb > ta) {
        for (int i = 0; i < N; ++i) {
            visit(tr.sample(ta + (tb - ta) * i / double(N - 1)));
        }
    }
    return rep;
}

}  // namespace ealab
