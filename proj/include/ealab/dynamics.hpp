#pragma once
#include <optional>
#include <variant>
#include <vector>

#include "ealab/algebra.hpp"
#include "ealab/metric.hpp"

namespace ealab {

using Mat2 = Eigen::Matrix2d;

// Non-zero rest point of the scaled flow: F(v0) = v0.
struct Idempotent {
    Vec3 point = Vec3::Zero();
    double residual = 0.0;  // ‖F(v0) - v0‖ <= 1e-9·(1 + ‖v0‖²)
};

// Plane through the origin left invariant by the field. The normal is unit
// length with its first non-zero component positive.
struct InvariantPlane {
    Vec3 normal = Vec3::UnitX();
};

struct InvariantPlaneSet {
    std::vector<InvariantPlane> planes;
    // Set when more than 24 well-separated normals satisfy the invariance
    // condition (a one-parameter family); `planes` then holds representatives.
    bool continuum = false;
};

// Certificate that the first component dominates the energy shift on the
// null cone: G1(w) - c·e(w) = a·w1² + (w2,w3)·beta·(w2,w3)ᵀ identically,
// with a > 0 and beta PSD, where G/e are F/q pushed through the axis
// permutation moving `axis` first. By the comparison ODE w1' >= a·w1², any
// null initial condition with positive first coordinate blows up in finite
// time.
struct DominationCertificate {
    int axis = 0;  // dominated coordinate in the original ordering
    double c = 0.0;
    double a = 0.0;
    Mat2 beta = Mat2::Zero();
};

// All isolated non-zero solutions of F(v) = v, lexicographically sorted.
// Seeds: a fixed 13³ lattice in [-4,4]³ plus caller-provided points.
// Throws NonIsolatedSolutionSetError when a continuum is detected.
std::vector<Idempotent> find_idempotents(
    const QuadraticField& F, const std::vector<Vec3>& extra_seeds = {});

// All invariant planes through the origin (up to a continuum).
InvariantPlaneSet find_invariant_planes(const QuadraticField& F);

// Basis (orthonormal, sign-fixed) of covectors l with l·F(v) ≡ 0.
std::vector<Vec3> linear_first_integrals(const QuadraticField& F);

// Basis (Frobenius-orthonormal, sign-fixed) of symmetric S with
// d/dt (vᵀSv) = 2(Sv)·F(v) ≡ 0 as a cubic identity.
std::vector<Mat3> quadratic_first_integrals(const QuadraticField& F);

// A positive-definite element of the quadratic-integral span, if one exists
// (unit Frobenius norm, lambda_min >= 1e-8·lambda_max, Cholesky-verified).
std::optional<Mat3> positive_definite_integral(const QuadraticField& F);

// Search the three coordinate axes for a null-cone domination certificate.
std::optional<DominationCertificate> null_cone_domination(
    const QuadraticField& F, const BilinearForm& q);

// Field of w = L·v: G(w) = L·F(L⁻¹·w). Throws SingularMatrixError.
QuadraticField push_forward(const QuadraticField& F, const Mat3& L);

// Non-polynomial invariant f(v) = (num·v) / (den·v)^expo on {den·v > 0}.
struct PowerRatioInvariant {
    Vec3 num = Vec3::UnitY();
    Vec3 den = Vec3::UnitZ();
    double expo = 0.0;

    static PowerRatioInvariant axes(int i, int j, double expo);
    bool in_domain(const Vec3& v) const;
    double eval(const Vec3& v) const;  // throws DomainExitError outside
};

struct Sample {
    double t = 0.0;
    Vec3 v = Vec3::Zero();
};

// Max relative drift of the invariant from its initial value over the
// samples. Throws DomainExitError if any sample leaves the domain.
double partial_invariant_drift(const PowerRatioInvariant& inv,
                               const std::vector<Sample>& samples);

// A concrete incomplete Lorentzian metric plus a machine-checked certificate
// for one of the standard non-unimodular families. Throws
// UnsupportedAlgebraError for unimodular (lambda = -1) or custom input.
struct IncompletenessWitness {
    BilinearForm form;
    std::variant<Idempotent, DominationCertificate> certificate;
};

IncompletenessWitness incompleteness_witness(const LieAlgebra3& g);

}  // namespace ealab
