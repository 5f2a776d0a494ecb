#include "ealab/normal_form.hpp"

#include <cmath>
#include <sstream>

#include "ealab/errors.hpp"

namespace ealab {

namespace {

const char* kTagNames[] = {"Q0", "Q1", "Q2",  "Q3",  "Q4",  "Q5", "Q6",
                           "Q7", "Q8", "Q9", "Q10", "Q11", "Q12"};

// Three-way split of a case invariant against its threshold. Values within a
// factor of 10 of the threshold are reported, never silently resolved.
enum class Split { Zero, Ambiguous, NonZero };

Split guarded(double value, double threshold, const char* what) {
    double a = std::abs(value);
    if (a < 0.1 * threshold) return Split::Zero;
    if (a <= 10.0 * threshold) {
        std::ostringstream os;
        os << "case invariant '" << what << "' = " << value
           << " lies within 10x of its decision threshold " << threshold;
        throw NumericallyAmbiguousError(os.str());
    }
    return Split::NonZero;
}

// For quantities that cannot vanish on a non-degenerate form, a near-zero
// reading means the input sits too close to a case boundary.
void require_nonzero(double value, double threshold, const char* what) {
    if (guarded(value, threshold, what) != Split::NonZero) {
        std::ostringstream os;
        os << "case invariant '" << what << "' = " << value
           << " is numerically zero but must not vanish on a non-degenerate "
              "form";
        throw NumericallyAmbiguousError(os.str());
    }
}

Mat3 standard_shape(double a, double b, double c, double d) {
    Mat3 M;
    M << 1, 0, 0,
         a, c, 0,
         b, 0, d;
    return M;
}

Mat3 swapped_shape(double a, double b, double c, double d) {
    Mat3 M;
    M << -1, 0, 0,
          a, 0, c,
          b, d, 0;
    return M;
}

// Inverse of the standard shape, also standard-shaped.
Mat3 standard_inverse(double a, double b, double c, double d) {
    return standard_shape(-a / c, -b / d, 1.0 / c, 1.0 / d);
}

struct BaseReduction {
    Tag tag;
    std::optional<double> param;
    double sigma;  // positive
    Mat3 psi;      // m = sigma·psiᵀ·Q·psi
};

// Reduce a signature-(2,1) matrix under the group
// [[1,0,0],[a,c,0],[b,0,d]], c·d != 0 (valid for every lambda).
BaseReduction reduce_standard(const Mat3& m, double norm) {
    const double m1 = m(0, 0), m2 = m(0, 1), m3 = m(0, 2);
    const double m4 = m(1, 1), m5 = m(1, 2), m6 = m(2, 2);

    const double tau_det = 1e-10 * norm * norm;
    const double tau_iso = 1e-10 * norm;

    const double detB = m4 * m6 - m5 * m5;
    BaseReduction out;

    if (guarded(detB, tau_det, "det of derived-block") == Split::NonZero) {
        // The (e2,e3) block is non-degenerate: a unique (a,b) clears the
        // mixed entries, and the (1,1) entry becomes the Schur complement.
        const double a = (-m2 * m6 + m3 * m5) / detB;
        const double b = (-m3 * m4 + m2 * m5) / detB;
        const double u = m1 + a * m2 + b * m3;

        if (guarded(m5, tau_iso, "q(e2,e3) after block reduction") ==
            Split::Zero) {
            // Diagonal outcome. Signs of (u, m4, m6) pick Q1/Q2/Q3; the
            // (2,1) signature of m rules out every other pattern.
            require_nonzero(u, tau_iso, "Schur complement q(e1,e1)");
            if (u > 0 && m4 > 0 && m6 < 0) out.tag = Tag::Q1;
            else if (u > 0 && m4 < 0 && m6 > 0) out.tag = Tag::Q2;
            else if (u < 0 && m4 > 0 && m6 > 0) out.tag = Tag::Q3;
            else if (u > 0 && m4 > 0 && m6 > 0) out.tag = Tag::Q0;
            else
                throw Error("internal: sign pattern inconsistent with a "
                            "(2,1) or (3,0) form");
            out.sigma = std::abs(u);
            const double c = std::sqrt(out.sigma / std::abs(m4));
            const double d = std::sqrt(out.sigma / std::abs(m6));
            out.psi = standard_inverse(a, b, c, d);
            return out;
        }

        // Mixed entry survives. e2 isotropy splits Q4/Q5/Q6 from Q7/Q8/Q9;
        // e3 isotropy decides whether the modulus is exactly 0.
        require_nonzero(u, tau_iso, "Schur complement q(e1,e1)");
        const bool m4_zero = guarded(m4, tau_iso, "q(e2,e2)") == Split::Zero;
        const bool m6_zero = guarded(m6, tau_iso, "q(e3,e3)") == Split::Zero;

        if (m4_zero) {
            // Isotropic e2 with live mixed entry: block det = -m5² < 0, so
            // u > 0 on a (2,1) form.
            if (u < 0)
                throw Error("internal: isotropic-e2 block with u < 0 cannot "
                            "carry signature (2,1)");
            out.sigma = u;
            double c, d;
            if (!m6_zero) {
                out.tag = (m6 > 0) ? Tag::Q7 : Tag::Q8;
                d = std::sqrt(out.sigma / std::abs(m6));
                c = out.sigma / (d * m5);
            } else {
                out.tag = Tag::Q9;
                c = std::sqrt(out.sigma / std::abs(m5));
                d = (out.sigma / m5) / c;
            }
            out.psi = standard_inverse(a, b, c, d);
            return out;
        }

        const double ratio = m6_zero ? 0.0 : m4 * m6 / (m5 * m5);
        double c, d;
        if (u > 0 && m4 > 0) {
            out.tag = Tag::Q4;  // block [[1,1],[1,r]], r < 1 for (2,1)
            out.param = ratio;
            out.sigma = u;
            c = std::sqrt(out.sigma / m4);
        } else if (u > 0 && m4 < 0) {
            out.tag = Tag::Q5;  // block [[-1,1],[1,s]], s > -1
            out.param = (ratio == 0.0) ? 0.0 : -ratio;
            out.sigma = u;
            c = std::sqrt(out.sigma / -m4);
        } else if (u < 0 && m4 > 0) {
            out.tag = Tag::Q6;  // block [[1,1],[1,t]], t > 1
            out.param = ratio;
            out.sigma = -u;
            c = std::sqrt(out.sigma / m4);
        } else {
            throw Error("internal: u < 0 with q(e2,e2) < 0 cannot carry "
                        "signature (2,1)");
        }
        d = out.sigma / (c * m5);
        out.psi = standard_inverse(a, b, c, d);
        return out;
    }

    // Degenerate (e2,e3) block.
    const bool m4_zero = guarded(m4, tau_iso, "q(e2,e2)") == Split::Zero;
    const bool m6_zero = guarded(m6, tau_iso, "q(e3,e3)") == Split::Zero;
    const Split s5 = guarded(m5, tau_iso, "q(e2,e3)");

    if (!m4_zero && !m6_zero) {
        // Rank-one block with both diagonal entries alive: Q10. The mixed
        // entry satisfies m5² = m4·m6 on the orbit, so it must be alive too.
        if (s5 != Split::NonZero)
            throw NumericallyAmbiguousError(
                "rank-one derived block with vanishing mixed entry");
        const double det2 = 2.0 * (m4 * m3 - m5 * m2);
        if (std::abs(det2) <= tau_det)
            throw NumericallyAmbiguousError(
                "Q10 reduction system is near-singular");
        const double rhs1 = -m2;
        const double rhs2 = -m1 - m2 * m2 / m4;
        // [[m4, m5],[2 m2, 2 m3]]·(a,b) = (rhs1, rhs2)
        const double a = (rhs1 * 2.0 * m3 - m5 * rhs2) / det2;
        const double b = (m4 * rhs2 - 2.0 * m2 * rhs1) / det2;
        const double h = m3 + a * m5 + b * m6;
        require_nonzero(h, tau_iso, "q(e1,e3) after Q10 reduction");
        if (m6 < 0)
            throw Error("internal: negative semidefinite derived block in a "
                        "(2,1) form");
        out.tag = Tag::Q10;
        out.sigma = h * h / m6;
        const double c = h / m5;
        const double d = h / m6;
        out.psi = standard_inverse(a, b, c, d);
        return out;
    }
    if (m4_zero && !m6_zero) {
        // Block diag(0, m6): Q11. Non-degeneracy of m forces m2 != 0.
        if (s5 != Split::Zero)
            throw NumericallyAmbiguousError(
                "near-degenerate derived block with a live mixed entry");
        require_nonzero(m2, tau_iso, "q(e1,e2)");
        if (m6 < 0)
            throw Error("internal: negative semidefinite derived block in a "
                        "(2,1) form");
        const double b = -m3 / m6;
        const double a = -(m1 + 2.0 * b * m3 + b * b * m6) / (2.0 * m2);
        out.tag = Tag::Q11;
        out.sigma = m6;
        out.psi = standard_inverse(a, b, m6 / m2, 1.0);
        return out;
    }
    if (!m4_zero && m6_zero) {
        // Block diag(m4, 0): Q12. Non-degeneracy forces m3 != 0.
        if (s5 != Split::Zero)
            throw NumericallyAmbiguousError(
                "near-degenerate derived block with a live mixed entry");
        require_nonzero(m3, tau_iso, "q(e1,e3)");
        if (m4 < 0)
            throw Error("internal: negative semidefinite derived block in a "
                        "(2,1) form");
        const double a = -m2 / m4;
        const double b = -(m1 + 2.0 * a * m2 + a * a * m4) / (2.0 * m3);
        out.tag = Tag::Q12;
        out.sigma = m4;
        out.psi = standard_inverse(a, b, 1.0, m4 / m3);
        return out;
    }
    throw Error("internal: derived block vanished entirely; the form is "
                "degenerate");
}

// chi with chiᵀ·Q(new)·chi = Q(old) turns m = sigma·psiᵀ·Q(old)·psi into
// m = sigma·(chi·psi)ᵀ·Q(new)·(chi·psi).
void retarget(BaseReduction& red, Tag new_tag, std::optional<double> new_param,
              const Mat3& chi) {
    red.tag = new_tag;
    red.param = new_param;
    red.psi = (chi * red.psi).eval();
}

// At lambda = ±1 the automorphism group is larger and several tags merge.
void apply_limit_quotient(double lambda, BaseReduction& red) {
    if (lambda == -1.0) {
        // Extra component swaps e2 and e3 (with e1 -> -e1).
        const Mat3 swap_neg = swapped_shape(0, 0, 1, 1);
        switch (red.tag) {
            case Tag::Q2:
                retarget(red, Tag::Q1, std::nullopt, swap_neg);
                break;
            case Tag::Q7:
                retarget(red, Tag::Q4, 0.0, swap_neg);
                break;
            case Tag::Q8:
                retarget(red, Tag::Q5, 0.0, swap_neg);
                break;
            case Tag::Q12:
                retarget(red, Tag::Q11, std::nullopt,
                         swapped_shape(0, 0, -1, 1));
                break;
            case Tag::Q5:
                if (red.param && *red.param > 0.0) {
                    const double s = *red.param;
                    retarget(red, Tag::Q4, -s,
                             swapped_shape(0, 0, std::sqrt(s),
                                           1.0 / std::sqrt(s)));
                }
                break;
            default:
                break;
        }
        return;
    }
    if (lambda == 1.0) {
        // Full [[1,0,0],[*,GL(2)]] group; survivors are Q0, Q1, Q3, Q11.
        Mat3 chi;
        switch (red.tag) {
            case Tag::Q2: {
                chi << 1, 0, 0, 0, 0, 1, 0, 1, 0;
                retarget(red, Tag::Q1, std::nullopt, chi);
                break;
            }
            case Tag::Q4: {
                const double r = *red.param;
                if (r > 1.0) {  // Riemannian side
                    chi << 1, 0, 0, 0, 1, 1, 0, 0, std::sqrt(r - 1.0);
                    retarget(red, Tag::Q0, std::nullopt, chi);
                } else {
                    chi << 1, 0, 0, 0, 1, 1, 0, 0, std::sqrt(1.0 - r);
                    retarget(red, Tag::Q1, std::nullopt, chi);
                }
                break;
            }
            case Tag::Q5: {
                const double s = *red.param;
                chi << 1, 0, 0, 0, 0, std::sqrt(s + 1.0), 0, 1, -1;
                retarget(red, Tag::Q1, std::nullopt, chi);
                break;
            }
            case Tag::Q6: {
                const double t = *red.param;
                chi << 1, 0, 0, 0, 1, 1, 0, 0, std::sqrt(t - 1.0);
                retarget(red, Tag::Q3, std::nullopt, chi);
                break;
            }
            case Tag::Q7: {
                chi << 1, 0, 0, 0, 1, 1, 0, 1, 0;
                retarget(red, Tag::Q1, std::nullopt, chi);
                break;
            }
            case Tag::Q8: {
                chi << 1, 0, 0, 0, 1, 0, 0, 1, -1;
                retarget(red, Tag::Q1, std::nullopt, chi);
                break;
            }
            case Tag::Q9: {
                chi << 1, 0, 0, 0, 1, 0.5, 0, 1, -0.5;
                retarget(red, Tag::Q1, std::nullopt, chi);
                break;
            }
            case Tag::Q10: {
                chi << 1, 0, 0, -0.5, -1, 0, 1, 1, 1;
                retarget(red, Tag::Q11, std::nullopt, chi);
                break;
            }
            case Tag::Q12: {
                chi << 1, 0, 0, 0, 0, 1, 0, 1, 0;
                retarget(red, Tag::Q11, std::nullopt, chi);
                break;
            }
            default:
                break;
        }
    }
}

NormalFormId finish(double sign, const Mat3& m, double norm,
                    BaseReduction red) {
    NormalFormId id;
    id.tag = red.tag;
    id.param = red.param;
    id.scale = sign * red.sigma;
    id.phi = Automorphism::from_matrix(red.psi);

    const Mat3 Q = canonical_matrix(red.tag, red.param);
    const Mat3 rebuilt = id.scale * red.psi.transpose() * Q * red.psi;
    id.residual = (rebuilt - sign * m).norm() / norm;
    if (!(id.residual <= 1e-8))
        throw Error("internal: canonical reconstruction residual " +
                    std::to_string(id.residual) + " exceeds 1e-8");
    return id;
}

void check_lambda(double lambda) {
    if (!(std::abs(lambda) <= 1.0))
        throw ParameterOutOfRangeError(
            "lambda must lie in [-1, 1], got " + std::to_string(lambda));
}

}  // namespace

std::string tag_name(Tag t) { return kTagNames[static_cast<int>(t)]; }

std::optional<Tag> tag_from_string(const std::string& name) {
    for (int i = 0; i <= 12; ++i)
        if (name == kTagNames[i]) return static_cast<Tag>(i);
    return std::nullopt;
}

bool tag_has_param(Tag t) {
    return t == Tag::Q4 || t == Tag::Q5 || t == Tag::Q6;
}

Mat3 canonical_matrix(Tag t, std::optional<double> param) {
    if (tag_has_param(t) != param.has_value())
        throw ParameterOutOfRangeError(
            "tag " + tag_name(t) +
            (param ? " takes no parameter" : " requires a parameter"));
    Mat3 Q = Mat3::Zero();
    switch (t) {
        case Tag::Q0: Q = Mat3::Identity(); break;
        case Tag::Q1: Q = Mat3::Identity(); Q(2, 2) = -1; break;
        case Tag::Q2: Q = Mat3::Identity(); Q(1, 1) = -1; break;
        case Tag::Q3: Q = Mat3::Identity(); Q(0, 0) = -1; break;
        case Tag::Q4: {
            const double r = *param;
            if (r == 1.0)
                throw ParameterOutOfRangeError("Q4 requires r != 1");
            Q << 1, 0, 0, 0, 1, 1, 0, 1, r;
            break;
        }
        case Tag::Q5: {
            const double s = *param;
            if (!(s > -1.0))
                throw ParameterOutOfRangeError("Q5 requires s > -1");
            Q << 1, 0, 0, 0, -1, 1, 0, 1, s;
            break;
        }
        case Tag::Q6: {
            const double tt = *param;
            if (!(tt > 1.0))
                throw ParameterOutOfRangeError("Q6 requires t > 1");
            Q << -1, 0, 0, 0, 1, 1, 0, 1, tt;
            break;
        }
        case Tag::Q7:  Q << 1, 0, 0, 0, 0, 1, 0, 1, 1; break;
        case Tag::Q8:  Q << 1, 0, 0, 0, 0, 1, 0, 1, -1; break;
        case Tag::Q9:  Q << 1, 0, 0, 0, 0, 1, 0, 1, 0; break;
        case Tag::Q10: Q << 0, 0, 1, 0, 1, 1, 1, 1, 1; break;
        case Tag::Q11: Q << 0, 1, 0, 1, 0, 0, 0, 0, 1; break;
        case Tag::Q12: Q << 0, 0, 1, 0, 1, 0, 1, 0, 0; break;
    }
    return Q;
}

RatMat3 canonical_matrix_exact(Tag t, std::optional<Rat> param) {
    if (tag_has_param(t) != param.has_value())
        throw ParameterOutOfRangeError(
            "tag " + tag_name(t) +
            (param ? " takes no parameter" : " requires a parameter"));
    RatMat3 Q{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) Q[i][j] = Rat(0);
    auto diag = [&](int a, int b, int c) {
        Q[0][0] = Rat(a); Q[1][1] = Rat(b); Q[2][2] = Rat(c);
    };
    switch (t) {
        case Tag::Q0: diag(1, 1, 1); break;
        case Tag::Q1: diag(1, 1, -1); break;
        case Tag::Q2: diag(1, -1, 1); break;
        case Tag::Q3: diag(-1, 1, 1); break;
        case Tag::Q4:
            diag(1, 1, 0);
            Q[1][2] = Q[2][1] = Rat(1);
            Q[2][2] = *param;
            break;
        case Tag::Q5:
            diag(1, -1, 0);
            Q[1][2] = Q[2][1] = Rat(1);
            Q[2][2] = *param;
            break;
        case Tag::Q6:
            diag(-1, 1, 0);
            Q[1][2] = Q[2][1] = Rat(1);
            Q[2][2] = *param;
            break;
        case Tag::Q7:
            Q[0][0] = Rat(1); Q[1][2] = Q[2][1] = Rat(1); Q[2][2] = Rat(1);
            break;
        case Tag::Q8:
            Q[0][0] = Rat(1); Q[1][2] = Q[2][1] = Rat(1); Q[2][2] = Rat(-1);
            break;
        case Tag::Q9:
            Q[0][0] = Rat(1); Q[1][2] = Q[2][1] = Rat(1);
            break;
        case Tag::Q10:
            Q[0][2] = Q[2][0] = Rat(1);
            Q[1][1] = Rat(1); Q[1][2] = Q[2][1] = Rat(1); Q[2][2] = Rat(1);
            break;
        case Tag::Q11:
            Q[0][1] = Q[1][0] = Rat(1); Q[2][2] = Rat(1);
            break;
        case Tag::Q12:
            Q[0][2] = Q[2][0] = Rat(1); Q[1][1] = Rat(1);
            break;
    }
    return Q;
}

Automorphism Automorphism::identity() { return Automorphism{}; }

Automorphism Automorphism::standard(double a, double b, double c, double d) {
    if (c == 0.0 || d == 0.0)
        throw InvalidAutomorphismError("standard automorphism needs c·d != 0");
    return Automorphism{standard_shape(a, b, c, d)};
}

Automorphism Automorphism::swapped(double a, double b, double c, double d) {
    if (c == 0.0 || d == 0.0)
        throw InvalidAutomorphismError("swapped automorphism needs c·d != 0");
    return Automorphism{swapped_shape(a, b, c, d)};
}

Automorphism Automorphism::from_matrix(const Mat3& M) {
    return Automorphism{M};
}

bool preserves_brackets(const Mat3& M, const LieAlgebra3& g, double tol) {
    if (std::abs(M.determinant()) == 0.0) return false;
    double maxc = 0.0;
    for (int k = 0; k < 3; ++k)
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                maxc = std::max(maxc, std::abs(g.c[k][i][j]));
    const double bound = tol * (1.0 + maxc) * (1.0 + M.norm()) * (1.0 + M.norm());
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
            const Vec3 lhs = M * g.bracket(Vec3::Unit(i), Vec3::Unit(j));
            const Vec3 rhs = g.bracket(M.col(i), M.col(j));
            if ((lhs - rhs).norm() > bound) return false;
        }
    return true;
}

Automorphism validated_automorphism(const Mat3& M, const LieAlgebra3& g) {
    if (!preserves_brackets(M, g))
        throw InvalidAutomorphismError(
            "matrix does not preserve the Lie bracket");
    return Automorphism::from_matrix(M);
}

BilinearForm apply_automorphism(const BilinearForm& q, const Automorphism& phi) {
    return BilinearForm(Mat3(phi.M.transpose() * q.matrix() * phi.M));
}

BilinearForm apply_automorphism(const LieAlgebra3& g, const BilinearForm& q,
                                const Automorphism& phi) {
    if (!preserves_brackets(phi.M, g))
        throw InvalidAutomorphismError(
            "matrix does not preserve the Lie bracket");
    return apply_automorphism(q, phi);
}

NormalFormId canonicalize(double lambda, const BilinearForm& q) {
    check_lambda(lambda);
    const Signature sig = q.signature();
    if (!sig.lorentzian())
        throw NotLorentzianError("form has signature (" +
                                 std::to_string(sig.n_plus) + "," +
                                 std::to_string(sig.n_minus) + "," +
                                 std::to_string(sig.n_zero) + ")");
    // Normalize to (2,1); a (1,2) input is -1 times a (2,1) form.
    const double sign = (sig.n_minus == 1) ? 1.0 : -1.0;
    const Mat3 m = sign * q.matrix();
    const double norm = q.norm();

    BaseReduction red = reduce_standard(m, norm);
    if (red.tag == Tag::Q0)
        throw Error("internal: Lorentzian input reduced to Q0");
    apply_limit_quotient(lambda, red);
    return finish(sign, m, norm, red);
}

NormalFormId canonicalize_riemannian(double lambda, const BilinearForm& q) {
    check_lambda(lambda);
    const Signature sig = q.signature();
    if (!(sig.positive_definite() ||
          (sig.n_minus == 3 && sig.n_zero == 0)))
        throw NotLorentzianError(
            "Riemannian entry point requires a definite form; signature is (" +
            std::to_string(sig.n_plus) + "," + std::to_string(sig.n_minus) +
            "," + std::to_string(sig.n_zero) + ")");
    const double sign = sig.positive_definite() ? 1.0 : -1.0;
    const Mat3 m = sign * q.matrix();
    const double norm = q.norm();

    BaseReduction red = reduce_standard(m, norm);
    if (red.tag != Tag::Q0 && !(red.tag == Tag::Q4 && *red.param > 1.0))
        throw Error("internal: definite form did not reduce to Q0/Q4(r>1)");
    if (lambda == 1.0 && red.tag == Tag::Q4) {
        Mat3 chi;
        chi << 1, 0, 0, 0, 1, 1, 0, 0, std::sqrt(*red.param - 1.0);
        retarget(red, Tag::Q0, std::nullopt, chi);
    }
    return finish(sign, m, norm, red);
}

bool orbit_equal(double lambda, const BilinearForm& q1,
                 const BilinearForm& q2) {
    const NormalFormId a = canonicalize(lambda, q1);
    const NormalFormId b = canonicalize(lambda, q2);
    if (a.tag != b.tag) return false;
    if (a.param.has_value() != b.param.has_value()) return false;
    if (a.param && std::abs(*a.param - *b.param) > 1e-7) return false;
    return true;
}

std::string to_string(Status s) {
    return s == Status::Complete ? "Complete" : "Incomplete";
}

std::string to_string(Boundedness b) {
    switch (b) {
        case Boundedness::AllBounded: return "AllBounded";
        case Boundedness::UnboundedExist: return "UnboundedExist";
        default: return "NotApplicable";
    }
}

std::string to_string(Mechanism m) {
    switch (m) {
        case Mechanism::Idempotent: return "Idempotent";
        case Mechanism::NoIdempotentNullCone: return "NoIdempotentNullCone";
        case Mechanism::PositiveDefiniteIntegral:
            return "PositiveDefiniteIntegral";
        case Mechanism::ExplicitFlow: return "ExplicitFlow";
        default: return "PartialInvariantCompactness";
    }
}

namespace {

Verdict make_verdict(Status st, Boundedness bd, Mechanism mech,
                     std::string cite) {
    Verdict v;
    v.status = st;
    v.boundedness = bd;
    v.mechanism = mech;
    v.citation = std::move(cite);
    return v;
}

Verdict incomplete_idem(std::string cite) {
    return make_verdict(Status::Incomplete, Boundedness::NotApplicable,
                        Mechanism::Idempotent, std::move(cite));
}

[[noreturn]] void bad_tag(double lambda, Tag t) {
    throw TagInvalidForLambdaError("tag " + tag_name(t) +
                                   " does not occur in the decision table at "
                                   "lambda = " +
                                   std::to_string(lambda));
}

double require_param(const NormalFormId& nf) {
    if (!nf.param)
        throw ParameterOutOfRangeError("tag " + tag_name(nf.tag) +
                                       " requires a parameter");
    return *nf.param;
}

Verdict verdict_interior_zero(const NormalFormId& nf) {
    // lambda = 0 table, organised by the causal character of the center.
    switch (nf.tag) {
        case Tag::Q2:
        case Tag::Q3:
        case Tag::Q7:
        case Tag::Q10:
        case Tag::Q11:
            return incomplete_idem("table:h0/center-spacelike");
        case Tag::Q6: {
            const double t = require_param(nf);
            if (!(t > 1.0)) bad_tag(0.0, nf.tag);
            return incomplete_idem("table:h0/center-spacelike");
        }
        case Tag::Q1:
            return make_verdict(Status::Complete, Boundedness::AllBounded,
                                Mechanism::PositiveDefiniteIntegral,
                                "table:h0/center-timelike");
        case Tag::Q8:
            return make_verdict(Status::Complete, Boundedness::AllBounded,
                                Mechanism::PositiveDefiniteIntegral,
                                "table:h0/center-timelike");
        case Tag::Q4: {
            const double r = require_param(nf);
            if (r >= 1.0) bad_tag(0.0, nf.tag);
            if (r > 0.0) return incomplete_idem("table:h0/center-spacelike");
            if (r < 0.0)
                return make_verdict(Status::Complete, Boundedness::AllBounded,
                                    Mechanism::PositiveDefiniteIntegral,
                                    "table:h0/center-timelike");
            return make_verdict(Status::Incomplete,
                                Boundedness::NotApplicable,
                                Mechanism::NoIdempotentNullCone,
                                "table:h0/center-lightlike-nonorthogonal");
        }
        case Tag::Q5: {
            const double s = require_param(nf);
            if (s <= -1.0) bad_tag(0.0, nf.tag);
            if (s > 0.0) return incomplete_idem("table:h0/center-spacelike");
            if (s < 0.0)
                return make_verdict(Status::Complete, Boundedness::AllBounded,
                                    Mechanism::PositiveDefiniteIntegral,
                                    "table:h0/center-timelike");
            return make_verdict(Status::Incomplete,
                                Boundedness::NotApplicable,
                                Mechanism::NoIdempotentNullCone,
                                "table:h0/center-lightlike-nonorthogonal");
        }
        case Tag::Q9:
            return make_verdict(Status::Incomplete, Boundedness::NotApplicable,
                                Mechanism::NoIdempotentNullCone,
                                "table:h0/center-lightlike-nonorthogonal");
        case Tag::Q12:
            return make_verdict(Status::Complete, Boundedness::UnboundedExist,
                                Mechanism::ExplicitFlow,
                                "table:h0/center-lightlike-orthogonal");
        default:
            bad_tag(0.0, nf.tag);
    }
}

Verdict verdict_interior(double lambda, const NormalFormId& nf) {
    // 0 < |lambda| < 1: complete iff e3 timelike and e2 not spacelike,
    // i.e. exactly Q5 with -1 < s < 0 (all bounded) and Q8 (unbounded).
    switch (nf.tag) {
        case Tag::Q1:
        case Tag::Q2:
        case Tag::Q3:
        case Tag::Q6:
        case Tag::Q7:
        case Tag::Q10:
        case Tag::Q11:
        case Tag::Q12:
            if (nf.tag == Tag::Q6 && !(require_param(nf) > 1.0))
                bad_tag(lambda, nf.tag);
            return incomplete_idem("table:h-interior/incomplete");
        case Tag::Q4: {
            const double r = require_param(nf);
            if (r >= 1.0) bad_tag(lambda, nf.tag);
            return incomplete_idem("table:h-interior/incomplete");
        }
        case Tag::Q5: {
            const double s = require_param(nf);
            if (s <= -1.0) bad_tag(lambda, nf.tag);
            if (s > 0.0) return incomplete_idem("table:h-interior/incomplete");
            if (s == 0.0)
                return make_verdict(Status::Incomplete,
                                    Boundedness::NotApplicable,
                                    Mechanism::NoIdempotentNullCone,
                                    "table:h-interior/null-cone-no-restpoint");
            return make_verdict(Status::Complete, Boundedness::AllBounded,
                                Mechanism::PartialInvariantCompactness,
                                "table:h-interior/complete-bounded");
        }
        case Tag::Q8:
            return make_verdict(Status::Complete, Boundedness::UnboundedExist,
                                Mechanism::PartialInvariantCompactness,
                                "table:h-interior/complete-unbounded");
        case Tag::Q9:
            return make_verdict(Status::Incomplete, Boundedness::NotApplicable,
                                Mechanism::NoIdempotentNullCone,
                                "table:h-interior/null-cone-no-restpoint");
        default:
            bad_tag(lambda, nf.tag);
    }
}

Verdict verdict_limit_plus(const NormalFormId& nf) {
    // lambda = 1 survivors: Q1, Q3, Q11; all incomplete via idempotents.
    switch (nf.tag) {
        case Tag::Q1:
        case Tag::Q3:
        case Tag::Q11:
            return incomplete_idem("table:h-plus-one/incomplete");
        default:
            bad_tag(1.0, nf.tag);
    }
}

Verdict verdict_limit_minus(const NormalFormId& nf) {
    // lambda = -1 survivors: Q1, Q3, Q4 (r<1), Q5 (-1<s<=0), Q6, Q9, Q10,
    // Q11. Everything is incomplete except Q5 and Q9.
    switch (nf.tag) {
        case Tag::Q1:
        case Tag::Q3:
        case Tag::Q10:
        case Tag::Q11:
            return incomplete_idem("table:h-minus-one/incomplete");
        case Tag::Q4: {
            const double r = require_param(nf);
            if (r >= 1.0) bad_tag(-1.0, nf.tag);
            return incomplete_idem("table:h-minus-one/incomplete");
        }
        case Tag::Q6:
            if (!(require_param(nf) > 1.0)) bad_tag(-1.0, nf.tag);
            return incomplete_idem("table:h-minus-one/incomplete");
        case Tag::Q5: {
            const double s = require_param(nf);
            if (s <= -1.0 || s > 0.0) bad_tag(-1.0, nf.tag);
            if (s == 0.0)
                return make_verdict(Status::Complete,
                                    Boundedness::UnboundedExist,
                                    Mechanism::PartialInvariantCompactness,
                                    "table:h-minus-one/complete-unbounded");
            return make_verdict(Status::Complete, Boundedness::AllBounded,
                                Mechanism::PositiveDefiniteIntegral,
                                "table:h-minus-one/complete-bounded");
        }
        case Tag::Q9:
            return make_verdict(Status::Complete, Boundedness::UnboundedExist,
                                Mechanism::ExplicitFlow,
                                "table:h-minus-one/complete-unbounded");
        default:
            bad_tag(-1.0, nf.tag);
    }
}

}  // namespace

Verdict verdict_from_table(double lambda, const NormalFormId& nf) {
    check_lambda(lambda);
    if (nf.tag == Tag::Q0) bad_tag(lambda, nf.tag);
    if (lambda == 0.0) return verdict_interior_zero(nf);
    if (lambda == 1.0) return verdict_limit_plus(nf);
    if (lambda == -1.0) return verdict_limit_minus(nf);
    return verdict_interior(lambda, nf);
}

CenterDerivedRecord center_derived_classification(const BilinearForm& q) {
    const Signature sig = q.signature();
    if (!sig.lorentzian())
        throw NotLorentzianError(
            "center/derived classification requires a Lorentzian form");
    // Characters are read in the (2,1) sign convention; both signs of the
    // form describe the same geometry.
    const BilinearForm qn =
        (sig.n_minus == 1) ? q : BilinearForm(Mat3(-q.matrix()));
    CenterDerivedRecord rec;
    rec.center_char = causal_character(qn, Vec3::Unit(2));
    rec.derived_char = causal_character(qn, Vec3::Unit(1));
    rec.orthogonal = std::abs(qn.matrix()(1, 2)) <= 1e-10 * qn.norm();
    return rec;
}

Verdict lambda_zero_rule(const CenterDerivedRecord& rec) {
    switch (rec.center_char) {
        case CausalCharacter::Spacelike:
            return incomplete_idem("table:h0/center-spacelike");
        case CausalCharacter::Timelike:
            return make_verdict(Status::Complete, Boundedness::AllBounded,
                                Mechanism::PositiveDefiniteIntegral,
                                "table:h0/center-timelike");
        case CausalCharacter::Lightlike:
        default:
            if (!rec.orthogonal)
                return make_verdict(
                    Status::Incomplete, Boundedness::NotApplicable,
                    Mechanism::NoIdempotentNullCone,
                    "table:h0/center-lightlike-nonorthogonal");
            return make_verdict(Status::Complete, Boundedness::UnboundedExist,
                                Mechanism::ExplicitFlow,
                                "table:h0/center-lightlike-orthogonal");
    }
}

}  // namespace ealab
