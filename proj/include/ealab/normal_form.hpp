#pragma once
#include <optional>
#include <string>

#include "ealab/metric.hpp"

namespace ealab {

// Canonical representatives of the R*×Aut orbits of non-degenerate symmetric
// forms on the h-family algebras. Q0 is the Riemannian representative; Q1-Q12
// are the Lorentzian ones. Q4/Q5/Q6 carry a modulus (r != 1, s > -1, t > 1).
enum class Tag {
    Q0, Q1, Q2, Q3, Q4, Q5, Q6, Q7, Q8, Q9, Q10, Q11, Q12
};

std::string tag_name(Tag t);
std::optional<Tag> tag_from_string(const std::string& name);
bool tag_has_param(Tag t);

// Matrix of the canonical representative. Tags with a modulus require param.
Mat3 canonical_matrix(Tag t, std::optional<double> param = std::nullopt);
RatMat3 canonical_matrix_exact(Tag t, std::optional<Rat> param = std::nullopt);

// Automorphisms of h(lambda) in matrix form. For |lambda| < 1 the group is
// [[1,0,0],[a,c,0],[b,0,d]] with c·d != 0; lambda = -1 adds a swapped
// component [[-1,0,0],[a,0,c],[b,d,0]]; lambda = 1 allows the full
// [[1,0,0],[*,GL(2)]] shape.
struct Automorphism {
    Mat3 M = Mat3::Identity();

    static Automorphism identity();
    // Throws InvalidAutomorphismError when c·d == 0.
    static Automorphism standard(double a, double b, double c, double d);
    static Automorphism swapped(double a, double b, double c, double d);
    static Automorphism from_matrix(const Mat3& M);
};

// phi[x,y] = [phi x, phi y] on basis pairs, within tol·(1 + max|c|)².
bool preserves_brackets(const Mat3& M, const LieAlgebra3& g, double tol = 1e-12);

// Validating wrapper; throws InvalidAutomorphismError.
Automorphism validated_automorphism(const Mat3& M, const LieAlgebra3& g);

// phi^T·m·phi. The three-argument overload validates phi for g first.
BilinearForm apply_automorphism(const BilinearForm& q, const Automorphism& phi);
BilinearForm apply_automorphism(const LieAlgebra3& g, const BilinearForm& q,
                                const Automorphism& phi);

struct NormalFormId {
    Tag tag = Tag::Q0;
    std::optional<double> param;  // r / s / t for Q4 / Q5 / Q6
    // Reconstruction: scale·phiᵀ·Q(tag,param)·phi = m. The scale is negative
    // exactly when the input has signature (1,2) (congruence preserves
    // signature and all canonical matrices are (2,1)).
    double scale = 1.0;
    Automorphism phi;
    double residual = 0.0;  // relative reconstruction error, <= 1e-8
};

// Reduce a Lorentzian form to its canonical representative for h(lambda).
// Case splits follow the orbit invariants: degeneracy of the (e2,e3) block
// (|det| vs 1e-10·‖m‖²) and isotropy of e2/e3 (|m4|,|m6| vs 1e-10·‖m‖).
// A split invariant within 10x of its threshold raises
// NumericallyAmbiguousError rather than guessing.
// Throws NotLorentzianError, ParameterOutOfRangeError (|lambda| > 1).
NormalFormId canonicalize(double lambda, const BilinearForm& q);

// Definite forms reduce to Q0 or Q4 with r > 1 (negative-definite input gets
// a negative scale).
NormalFormId canonicalize_riemannian(double lambda, const BilinearForm& q);

// Same tag and |param difference| <= 1e-7.
bool orbit_equal(double lambda, const BilinearForm& q1, const BilinearForm& q2);

enum class Status { Complete, Incomplete };
enum class Boundedness { AllBounded, UnboundedExist, NotApplicable };
enum class Mechanism {
    Idempotent,
    NoIdempotentNullCone,
    PositiveDefiniteIntegral,
    ExplicitFlow,
    PartialInvariantCompactness
};

std::string to_string(Status s);
std::string to_string(Boundedness b);
std::string to_string(Mechanism m);

struct Verdict {
    Status status = Status::Incomplete;
    Boundedness boundedness = Boundedness::NotApplicable;
    Mechanism mechanism = Mechanism::Idempotent;
    std::string citation;  // internal decision-table rule id
};

// The completeness decision table for h(lambda). Throws
// TagInvalidForLambdaError when the tag does not occur at this lambda
// (e.g. Q2 at lambda = ±1, or Q0 anywhere in the Lorentzian table).
Verdict verdict_from_table(double lambda, const NormalFormId& nf);

// Independent lambda = 0 route: causal characters of the center (e3) and the
// derived line (e2), and their orthogonality (|q(e2,e3)| <= 1e-10·‖m‖).
struct CenterDerivedRecord {
    CausalCharacter center_char = CausalCharacter::Spacelike;
    CausalCharacter derived_char = CausalCharacter::Spacelike;
    bool orthogonal = false;
};

CenterDerivedRecord center_derived_classification(const BilinearForm& q);

// The lambda = 0 completeness rule computed from the record alone.
Verdict lambda_zero_rule(const CenterDerivedRecord& rec);

}  // namespace ealab
