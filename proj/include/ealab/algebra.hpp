#pragma once
#include <array>
#include <optional>
#include <string>

#include <Eigen/Dense>

#include "ealab/errors.hpp"
#include "ealab/rational.hpp"

namespace ealab {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

// Structure constants c[k][i][j]: coefficient of e_k in [e_i, e_j].
// Antisymmetric in (i, j).
using StructureTensor = std::array<std::array<std::array<double, 3>, 3>, 3>;
using RatStructureTensor = std::array<std::array<std::array<Rat, 3>, 3>, 3>;

enum class Family { H, PSH, E, Custom };

// Identifies one of the standard non-unimodular families (or Custom).
// H carries lambda with |lambda| <= 1; E carries mu > 0; PSH has no parameter.
struct FamilyId {
    Family family = Family::Custom;
    double param = 0.0;
    std::optional<Rat> exact_param;  // set when the parameter is known exactly

    static FamilyId h(double lambda);
    static FamilyId h(const Rat& lambda);
    static FamilyId psh();
    static FamilyId e(double mu);
    static FamilyId e(const Rat& mu);
    static FamilyId custom();
};

std::string family_name(Family f);

// Immutable after construction (all mutation funnels through the factories).
struct LieAlgebra3 {
    StructureTensor c{};
    FamilyId label{};
    // Exact shadow of c; present for the standard families with exact
    // parameters and for custom tensors supplied exactly.
    std::optional<RatStructureTensor> exact;

    Vec3 bracket(const Vec3& u, const Vec3& v) const;
};

// Validates antisymmetry (tolerance 1e-12·(1+max|c|), then stores the exact
// antisymmetrization) and the Jacobi identity (residual <= 1e-12·(1+max|c|)²).
// Throws NotAntisymmetricError / JacobiViolationError.
LieAlgebra3 make_lie_algebra(const StructureTensor& c);
LieAlgebra3 make_lie_algebra(const RatStructureTensor& c);

// The standard families:
//   H(lambda):  [e1,e2]=e2,       [e1,e3]=lambda·e3          (|lambda| <= 1)
//   PSH:        [e1,e2]=e2,       [e1,e3]=e2+e3
//   E(mu):      [e1,e2]=mu·e2+e3, [e1,e3]=mu·e3−e2           (mu > 0)
// Throws ParameterOutOfRangeError.
LieAlgebra3 standard_family(const FamilyId& id);

// (ad_v)[k][j] = Σ_i v_i c[k][i][j];  ad_v e_j = [v, e_j].
Mat3 ad_matrix(const LieAlgebra3& g, const Vec3& v);

// True iff trace(ad_{e_i}) = 0 for i = 1,2,3 within 1e-12.
bool is_unimodular(const LieAlgebra3& g);

// Max over basis triples of ‖[e_i,[e_j,e_k]] + [e_j,[e_k,e_i]] + [e_k,[e_i,e_j]]‖.
double jacobi_residual(const StructureTensor& c);

StructureTensor to_double_tensor(const RatStructureTensor& c);

}  // namespace ealab
