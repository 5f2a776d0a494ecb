#pragma once
#include <array>
#include <optional>
#include <string>

#include "ealab/algebra.hpp"

namespace ealab {

struct Signature {
    int n_plus = 0;
    int n_minus = 0;
    int n_zero = 0;
    bool lorentzian() const {
        return n_zero == 0 && ((n_plus == 2 && n_minus == 1) || (n_plus == 1 && n_minus == 2));
    }
    bool positive_definite() const { return n_plus == 3; }
    bool degenerate() const { return n_zero > 0; }
};

enum class CausalCharacter { Spacelike, Timelike, Lightlike };

std::string to_string(CausalCharacter c);

// Symmetric bilinear form; the stored matrix is exactly symmetric.
// Entry names follow (m1 m2 m3; m2 m4 m5; m3 m5 m6).
class BilinearForm {
  public:
    explicit BilinearForm(const Mat3& m);
    explicit BilinearForm(const RatMat3& m);

    const Mat3& matrix() const { return m_; }
    const Signature& signature() const { return sig_; }
    double norm() const { return norm_; }  // Frobenius
    const std::optional<RatMat3>& exact() const { return exact_; }

  private:
    Mat3 m_;
    Signature sig_;
    double norm_ = 0.0;
    std::optional<RatMat3> exact_;
};

// Homogeneous quadratic vector field F_i(v) = v·B[i]·v with each B[i] symmetric.
struct QuadraticField {
    std::array<Mat3, 3> B{Mat3::Zero(), Mat3::Zero(), Mat3::Zero()};
    std::optional<std::array<RatMat3, 3>> exact;

    Vec3 eval(const Vec3& v) const;
    // J(v)[i][j] = dF_i/dv_j = 2·(B[i]·v)[j].
    Mat3 jacobian(const Vec3& v) const;
    QuadraticField scaled(double mu) const;
    double max_coeff() const;
};

// Eigenvalue counts with zero threshold 1e-10·‖m‖ (Frobenius).
Signature signature(const BilinearForm& q);

// Trichotomy with threshold tau = 1e-10·‖m‖·‖v‖². Throws ZeroVectorError.
CausalCharacter causal_character(const BilinearForm& q, const Vec3& v);

// m⁻¹·ad_vᵀ·m: the unique matrix with q(ad†_v x, y) = q(x, ad_v y).
// Throws DegenerateFormError.
Mat3 ad_dagger(const LieAlgebra3& g, const BilinearForm& q, const Vec3& v);

// The geodesic field F(v) = ad†_v v. Exact coefficients are synthesized
// whenever both the algebra and the form carry exact shadows.
// Throws DegenerateFormError.
QuadraticField euler_arnold_field(const LieAlgebra3& g, const BilinearForm& q);

// Exact-only synthesis (used by the coefficient-exact regression tests).
std::array<RatMat3, 3> euler_arnold_field_exact(const RatStructureTensor& c, const RatMat3& m);

// e(v) = q(v, v); no 1/2 factor anywhere in this library.
double energy(const BilinearForm& q, const Vec3& v);

// Σ_i l_i·B[i] — the symmetric matrix of the quadratic form v ↦ l·F(v).
Mat3 contract(const QuadraticField& F, const Vec3& l);

// Cubic monomial order used throughout:
// x³, x²y, x²z, xy², xyz, xz², y³, y²z, yz², z³.
using Cubic = std::array<double, 10>;

// Coefficients of the cubic polynomial ∇(vᵀSv)·F(v) = 2(Sv)·F(v).
Cubic derivative_cubic(const Mat3& S, const QuadraticField& F);

// Human-readable polynomial components; exact coefficients when available.
std::string polynomial_string(const QuadraticField& F);

}  // namespace ealab
