#include "ealab/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ealab/normal_form.hpp"

namespace ealab {
namespace {

// Lexicographic vector order with a tolerance band so that ties produced by
// round-off sort stably.
bool lex_less(const Vec3& a, const Vec3& b, double eps = 1e-9) {
    for (int i = 0; i < 3; ++i) {
        if (std::abs(a[i] - b[i]) > eps) return a[i] < b[i];
    }
    return false;
}

// --- idempotents -------------------------------------------------------------

struct NewtonResult {
    Vec3 v = Vec3::Zero();
    double residual = 0.0;
    bool converged = false;
};

Vec3 newton_step(const QuadraticField& F, const Vec3& v) {
    Vec3 G = F.eval(v) - v;
    Mat3 J = F.jacobian(v) - Mat3::Identity();
    Eigen::FullPivLU<Mat3> lu(J);
    // Rank-deficient Jacobian (continuum or degenerate root): take the
    // minimum-norm least-squares step instead of giving up.
    if (lu.isInvertible()) return lu.solve(-G);
    return J.completeOrthogonalDecomposition().solve(-G);
}

NewtonResult newton_rest_point(const QuadraticField& F, const Vec3& seed) {
    NewtonResult out;
    Vec3 v = seed;
    double r = (F.eval(v) - v).norm();
    for (int iter = 0; iter < 60; ++iter) {
        if (r <= 1e-14 * (1.0 + v.squaredNorm())) break;
        Vec3 step = newton_step(F, v);
        if (!step.allFinite()) return out;
        // Trust region: near-singular Jacobians otherwise launch the iterate
        // onto the F ≈ 0 rays at huge norm, where any residual test scaled by
        // ‖v‖² eventually passes.
        double cap = 4.0 * (1.0 + v.norm());
        if (step.norm() > cap) step *= cap / step.norm();
        double t = 1.0;
        bool improved = false;
        for (int k = 0; k < 16; ++k) {
            Vec3 cand = v + t * step;
            double rc = (F.eval(cand) - cand).norm();
            if (rc < r * (1.0 - 1e-4 * t) || rc <= 1e-14 * (1.0 + cand.squaredNorm())) {
                v = cand;
                r = rc;
                improved = true;
                break;
            }
            t *= 0.5;
        }
        if (!improved) break;
    }
    out.v = v;
    out.residual = r;
    // Solution branches escaping to infinity (e.g. (1, -1/z, z), residual
    // 1/z) defeat any residual bound quadratic in the norm.  Along such a
    // branch r * ‖v‖ stays O(field scale), so a bound linear in ‖v‖ plus a
    // norm cap rejects them with orders of magnitude to spare, while a true
    // root polishes to machine precision and passes easily.
    double kappa = std::max(F.max_coeff(), 1.0);
    out.converged = v.norm() <= 1e4 && r <= 1e-12 * kappa * (1.0 + v.norm());
    return out;
}

}  // namespace

std::vector<Idempotent> find_idempotents(const QuadraticField& F,
                                         const std::vector<Vec3>& extra_seeds) {
    std::vector<Idempotent> found;
    auto consider = [&](const NewtonResult& nr) {
        if (!nr.converged) return;
        if (nr.v.norm() <= 1e-5) return;  // v = 0 always solves F(v) = v
        for (const Idempotent& p : found) {
            if ((p.point - nr.v).norm() <= 1e-6) return;
        }
        found.push_back({nr.v, nr.residual});
    };

    for (const Vec3& s : extra_seeds) consider(newton_rest_point(F, s));
    for (int i = 0; i <= 12; ++i) {
        for (int j = 0; j <= 12; ++j) {
            for (int k = 0; k <= 12; ++k) {
                Vec3 seed(-4.0 + i * (8.0 / 12.0), -4.0 + j * (8.0 / 12.0),
                          -4.0 + k * (8.0 / 12.0));
                consider(newton_rest_point(F, seed));
            }
        }
    }

    // A quadratic system has at most 8 isolated roots (one of which is the
    // origin), so more survivors than that already proves a continuum.
    bool continuum = found.size() > 7;

    // Reconvergence probe: a near-singular Jacobian whose null direction leads
    // Newton to a *different* nearby solution exposes a positive-dimensional
    // solution set.
    for (const Idempotent& p : found) {
        if (continuum) break;
        Mat3 J = F.jacobian(p.point) - Mat3::Identity();
        Eigen::JacobiSVD<Mat3> svd(J, Eigen::ComputeFullV);
        Vec3 sv = Vec3::Zero();
        sv = svd.singularValues();
        if (sv(2) >= 1e-7 * std::max(1.0, sv(0))) continue;
        Vec3 dir = svd.matrixV().col(2);
        double h = 1e-3 * (1.0 + p.point.norm());
        for (double s : {1.0, -1.0}) {
            NewtonResult probe = newton_rest_point(F, p.point + s * h * dir);
            if (probe.converged && (probe.v - p.point).norm() > 1e-4 * (1.0 + p.point.norm())) {
                continuum = true;
                break;
            }
        }
    }
    if (continuum) {
        throw NonIsolatedSolutionSetError(
            "rest-point set of F(v) = v contains a continuum; no isolated census exists");
    }

    std::sort(found.begin(), found.end(),
              [](const Idempotent& a, const Idempotent& b) { return lex_less(a.point, b.point); });
    return found;
}

// --- invariant planes ----------------------------------------------------------

namespace {

// Orthonormal basis {u, w} of the plane with unit normal n.
void plane_basis(const Vec3& n, Vec3& u, Vec3& w) {
    int least = 0;
    for (int i = 1; i < 3; ++i) {
        if (std::abs(n[i]) < std::abs(n[least])) least = i;
    }
    u = n.cross(Vec3::Unit(least)).normalized();
    w = n.cross(u);
}

// Chart-free invariance defect: entries of P·S_n·P with P = I - nnᵀ. Smooth
// in n, unlike anything built from an explicit basis of n-perp.
Eigen::Matrix<double, 6, 1> plane_residual(const QuadraticField& F, const Vec3& n) {
    Mat3 P = Mat3::Identity() - n * n.transpose();
    Mat3 M = P * contract(F, n) * P;
    Eigen::Matrix<double, 6, 1> r;
    r << M(0, 0), M(1, 1), M(2, 2), M(0, 1), M(0, 2), M(1, 2);
    return r;
}

// Max restricted coefficient |e·S_n·e'| over an orthonormal basis of n-perp;
// this is the quantity the acceptance threshold is stated for.
double plane_defect(const QuadraticField& F, const Vec3& n) {
    Vec3 u, w;
    plane_basis(n, u, w);
    Mat3 S = contract(F, n);
    return std::max({std::abs(u.dot(S * u)), std::abs(u.dot(S * w)), std::abs(w.dot(S * w))});
}

Vec3 refine_plane_normal(const QuadraticField& F, Vec3 n) {
    for (int iter = 0; iter < 40; ++iter) {
        Eigen::Matrix<double, 6, 1> R = plane_residual(F, n);
        if (R.norm() <= 1e-14) break;
        Vec3 u, w;
        plane_basis(n, u, w);
        // Numeric Jacobian of the residual in the tangent chart n + a·u + b·w.
        Eigen::Matrix<double, 6, 2> J;
        const double h = 1e-7;
        for (int k = 0; k < 2; ++k) {
            Vec3 dir = (k == 0) ? u : w;
            Eigen::Matrix<double, 6, 1> Rp = plane_residual(F, (n + h * dir).normalized());
            Eigen::Matrix<double, 6, 1> Rm = plane_residual(F, (n - h * dir).normalized());
            J.col(k) = (Rp - Rm) / (2.0 * h);
        }
        Eigen::Vector2d step = J.colPivHouseholderQr().solve(-R);
        if (!step.allFinite()) break;
        double t = 1.0;
        bool improved = false;
        for (int k = 0; k < 10; ++k) {
            Vec3 cand = (n + t * (step[0] * u + step[1] * w)).normalized();
            if (plane_residual(F, cand).norm() < R.norm()) {
                n = cand;
                improved = true;
                break;
            }
            t *= 0.5;
        }
        if (!improved) break;
    }
    return n;
}

Vec3 sign_fix_first_nonzero(Vec3 n) {
    for (int i = 0; i < 3; ++i) {
        if (std::abs(n[i]) > 1e-12) {
            if (n[i] < 0) n = -n;
            break;
        }
    }
    return n;
}

}  // namespace

InvariantPlaneSet find_invariant_planes(const QuadraticField& F) {
    // The invariance condition is scale free; normalize so the acceptance
    // threshold 1e-10 means the same thing for every input.
    QuadraticField Fn = F;
    double mc = F.max_coeff();
    if (mc > 0) Fn = F.scaled(1.0 / mc);

    InvariantPlaneSet out;
    auto consider = [&](const Vec3& seed) {
        Vec3 n = refine_plane_normal(Fn, seed.normalized());
        if (plane_defect(Fn, n) > 1e-10) return;
        for (const InvariantPlane& p : out.planes) {
            if (std::abs(p.normal.dot(n)) >= 1.0 - 1e-8) return;
        }
        out.planes.push_back({sign_fix_first_nonzero(n)});
    };

    const int N = 25;
    for (int i = 0; i <= N; ++i) {
        double theta = M_PI * i / N;
        for (int j = 0; j < 2 * N; ++j) {
            double phi = M_PI * j / N;
            consider(Vec3(std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi),
                          std::cos(theta)));
        }
    }

    std::sort(out.planes.begin(), out.planes.end(),
              [](const InvariantPlane& a, const InvariantPlane& b) {
                  return lex_less(a.normal, b.normal, 1e-8);
              });
    if (out.planes.size() > 24) {
        out.continuum = true;
        out.planes.resize(24);
    }
    return out;
}

// --- polynomial first integrals -------------------------------------------------

namespace {

// Quadratic form coefficient vector (xx, yy, zz, xy, xz, yz) of a symmetric S.
Eigen::Matrix<double, 6, 1> quad_coeffs(const Mat3& S) {
    Eigen::Matrix<double, 6, 1> c;
    c << S(0, 0), S(1, 1), S(2, 2), 2 * S(0, 1), 2 * S(0, 2), 2 * S(1, 2);
    return c;
}

Mat3 sym_basis_element(int j) {
    Mat3 E = Mat3::Zero();
    switch (j) {
        case 0: E(0, 0) = 1; break;
        case 1: E(1, 1) = 1; break;
        case 2: E(2, 2) = 1; break;
        case 3: E(0, 1) = E(1, 0) = 0.5; break;
        case 4: E(0, 2) = E(2, 0) = 0.5; break;
        default: E(1, 2) = E(2, 1) = 0.5; break;
    }
    return E;
}

double frob_dot(const Mat3& A, const Mat3& B) { return (A.array() * B.array()).sum(); }

Mat3 sign_fix_matrix(Mat3 S) {
    int bi = 0, bj = 0;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            if (std::abs(S(i, j)) > std::abs(S(bi, bj))) { bi = i; bj = j; }
        }
    }
    if (S(bi, bj) < 0) S = -S;
    return S;
}

template <typename Matrix>
std::vector<Eigen::VectorXd> kernel_columns(const Matrix& A, double rel_tol) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    double smax = sv.size() > 0 ? sv(0) : 0.0;
    std::vector<Eigen::VectorXd> kernel;
    for (int k = 0; k < A.cols(); ++k) {
        double s = k < sv.size() ? sv(k) : 0.0;
        if (smax == 0.0 || s <= rel_tol * smax) kernel.push_back(svd.matrixV().col(k));
    }
    return kernel;
}

}  // namespace

std::vector<Vec3> linear_first_integrals(const QuadraticField& F) {
    QuadraticField Fn = F;
    double mc = F.max_coeff();
    if (mc > 0) Fn = F.scaled(1.0 / mc);

    Eigen::Matrix<double, 6, 3> A;
    for (int i = 0; i < 3; ++i) A.col(i) = quad_coeffs(Fn.B[static_cast<size_t>(i)]);

    std::vector<Vec3> basis;
    for (const auto& k : kernel_columns(A, 1e-10)) {
        Vec3 l = k;
        int big = 0;
        for (int i = 1; i < 3; ++i) {
            if (std::abs(l[i]) > std::abs(l[big])) big = i;
        }
        if (l[big] < 0) l = -l;
        basis.push_back(l);
    }
    return basis;
}

std::vector<Mat3> quadratic_first_integrals(const QuadraticField& F) {
    QuadraticField Fn = F;
    double mc = F.max_coeff();
    if (mc > 0) Fn = F.scaled(1.0 / mc);

    Eigen::Matrix<double, 10, 6> A;
    for (int j = 0; j < 6; ++j) {
        Cubic c = derivative_cubic(sym_basis_element(j), Fn);
        for (int r = 0; r < 10; ++r) A(r, j) = c[static_cast<size_t>(r)];
    }

    std::vector<Mat3> basis;
    for (const auto& k : kernel_columns(A, 1e-10)) {
        Mat3 S = Mat3::Zero();
        for (int j = 0; j < 6; ++j) S += k(j) * sym_basis_element(j);
        // Frobenius Gram-Schmidt against the ones already kept.
        for (const Mat3& P : basis) S -= frob_dot(S, P) * P;
        double nrm = std::sqrt(frob_dot(S, S));
        if (nrm <= 1e-10) continue;
        basis.push_back(sign_fix_matrix(S / nrm));
    }
    return basis;
}

std::optional<Mat3> positive_definite_integral(const QuadraticField& F) {
    std::vector<Mat3> basis = quadratic_first_integrals(F);
    const int d = static_cast<int>(basis.size());
    if (d == 0) return std::nullopt;

    auto assemble = [&](const Eigen::VectorXd& alpha) {
        Mat3 S = Mat3::Zero();
        for (int i = 0; i < d; ++i) S += alpha(i) * basis[static_cast<size_t>(i)];
        return S;
    };
    auto lambda_min = [&](const Eigen::VectorXd& alpha, Vec3* evec = nullptr) {
        Eigen::SelfAdjointEigenSolver<Mat3> es(assemble(alpha));
        if (evec) *evec = es.eigenvectors().col(0);
        return es.eigenvalues()(0);
    };

    double best_val = -std::numeric_limits<double>::infinity();
    Eigen::VectorXd best_alpha;

    // Multi-start supergradient ascent of the concave objective
    // alpha -> lambda_min(S(alpha)) over the unit sphere.
    Eigen::VectorXd signs = Eigen::VectorXd::Zero(d);
    auto ascend = [&](Eigen::VectorXd alpha) {
        alpha.normalize();
        double val = lambda_min(alpha);
        for (int iter = 0; iter < 120; ++iter) {
            Vec3 u;
            lambda_min(alpha, &u);
            Eigen::VectorXd g(d);
            for (int i = 0; i < d; ++i) g(i) = u.dot(basis[static_cast<size_t>(i)] * u);
            g -= g.dot(alpha) * alpha;
            if (g.norm() < 1e-14) break;
            double t = 1.0;
            bool improved = false;
            for (int k = 0; k < 14; ++k) {
                Eigen::VectorXd cand = (alpha + t * g).normalized();
                double cv = lambda_min(cand);
                if (cv > val) {
                    alpha = cand;
                    val = cv;
                    improved = true;
                    break;
                }
                t *= 0.5;
            }
            if (!improved) break;
        }
        if (val > best_val) {
            best_val = val;
            best_alpha = alpha;
        }
    };

    // Every sign pattern in {-1,0,1}^d except the origin.
    int total = 1;
    for (int i = 0; i < d; ++i) total *= 3;
    for (int code = 0; code < total; ++code) {
        int c = code;
        for (int i = 0; i < d; ++i) {
            signs(i) = static_cast<double>(c % 3 - 1);
            c /= 3;
        }
        if (signs.norm() == 0.0) continue;
        ascend(signs);
    }

    if (best_alpha.size() == 0) return std::nullopt;
    Mat3 S = assemble(best_alpha);
    Eigen::SelfAdjointEigenSolver<Mat3> es(S);
    double lmin = es.eigenvalues()(0);
    double lmax = es.eigenvalues()(2);
    if (!(lmax > 0.0) || lmin < 1e-8 * lmax) return std::nullopt;
    if (Eigen::LLT<Mat3>(S).info() != Eigen::Success) return std::nullopt;
    return S;
}

// --- null-cone domination --------------------------------------------------------

namespace {

Mat3 axis_permutation(int axis) {
    Mat3 P = Mat3::Identity();
    if (axis != 0) {
        P.setZero();
        P(0, axis) = 1;
        P(axis, 0) = 1;
        P(3 - axis, 3 - axis) = 1;  // the remaining coordinate stays put
    }
    return P;
}

std::optional<DominationCertificate> dominate_axis(const QuadraticField& F,
                                                   const BilinearForm& q, int axis) {
    Mat3 P = axis_permutation(axis);
    QuadraticField G = push_forward(F, P);
    Mat3 mp = P * q.matrix() * P.transpose();
    const Mat3& B1 = G.B[0];

    double mscale = mp.norm();
    double bscale = 1.0 + B1.cwiseAbs().maxCoeff();
    double tau_m = 1e-12 * (1.0 + mscale);

    std::vector<double> candidates;
    bool mixed_m = std::abs(mp(0, 1)) > tau_m || std::abs(mp(0, 2)) > tau_m;
    if (mixed_m) {
        // The xy/xz coefficients force c.
        std::optional<double> c1, c2;
        if (std::abs(mp(0, 1)) > tau_m) c1 = B1(0, 1) / mp(0, 1);
        if (std::abs(mp(0, 2)) > tau_m) c2 = B1(0, 2) / mp(0, 2);
        if (c1 && c2 && std::abs(*c1 - *c2) > 1e-8 * (1.0 + std::abs(*c1) + std::abs(*c2))) {
            return std::nullopt;
        }
        candidates.push_back(c1 ? *c1 : *c2);
    } else {
        // c is unconstrained by the mixed terms, which must then already
        // vanish in the field itself.
        if (std::abs(B1(0, 1)) > 1e-12 * bscale || std::abs(B1(0, 2)) > 1e-12 * bscale) {
            return std::nullopt;
        }
        // The PSD boundary: real roots of det(beta0 - c·md) = 0.
        Mat2 beta0 = B1.block<2, 2>(1, 1);
        Mat2 md = mp.block<2, 2>(1, 1);
        double A = md.determinant();
        double Bc = -(beta0(0, 0) * md(1, 1) + beta0(1, 1) * md(0, 0) -
                      beta0(0, 1) * md(1, 0) - beta0(1, 0) * md(0, 1));
        double C = beta0.determinant();
        double scale = std::max({std::abs(A), std::abs(Bc), std::abs(C), 1e-300});
        if (std::abs(A) > 1e-12 * scale) {
            double disc = Bc * Bc - 4 * A * C;
            if (disc >= -1e-12 * scale * scale) {
                double sq = std::sqrt(std::max(disc, 0.0));
                candidates.push_back((-Bc - sq) / (2 * A));
                candidates.push_back((-Bc + sq) / (2 * A));
            }
        } else if (std::abs(Bc) > 1e-12 * scale) {
            candidates.push_back(-C / Bc);
        }
        candidates.push_back(0.0);
        std::sort(candidates.begin(), candidates.end());
    }

    for (double c : candidates) {
        Mat3 M = B1 - c * mp;
        double tau_id = 1e-10 * (bscale + std::abs(c) * (1.0 + mscale));
        if (std::abs(M(0, 1)) > tau_id || std::abs(M(0, 2)) > tau_id) continue;
        double a = M(0, 0);
        if (!(a > tau_id)) continue;
        Mat2 beta = M.block<2, 2>(1, 1);
        Eigen::SelfAdjointEigenSolver<Mat2> es(beta);
        if (es.eigenvalues()(0) < -1e-12 * (bscale + std::abs(c) * (1.0 + mscale))) continue;
        DominationCertificate cert;
        cert.axis = axis;
        cert.c = c;
        cert.a = a;
        cert.beta = beta;
        return cert;
    }
    return std::nullopt;
}

}  // namespace

std::optional<DominationCertificate> null_cone_domination(const QuadraticField& F,
                                                          const BilinearForm& q) {
    for (int axis = 0; axis < 3; ++axis) {
        if (auto cert = dominate_axis(F, q, axis)) return cert;
    }
    return std::nullopt;
}

// --- push-forward ------------------------------------------------------------------

QuadraticField push_forward(const QuadraticField& F, const Mat3& L) {
    double det = L.determinant();
    if (std::abs(det) <= 1e-12 * std::max(1.0, std::pow(L.norm(), 3))) {
        throw SingularMatrixError("push_forward: transformation matrix is singular");
    }
    Mat3 Linv = L.inverse();
    QuadraticField G;
    for (int p = 0; p < 3; ++p) {
        Mat3 acc = Mat3::Zero();
        for (int k = 0; k < 3; ++k) acc += L(p, k) * F.B[static_cast<size_t>(k)];
        Mat3 M = Linv.transpose() * acc * Linv;
        G.B[static_cast<size_t>(p)] = 0.5 * (M + M.transpose());
    }
    return G;
}

// --- partial invariants ----------------------------------------------------------

PowerRatioInvariant PowerRatioInvariant::axes(int i, int j, double expo) {
    if (i < 0 || i > 2 || j < 0 || j > 2) {
        throw ParameterOutOfRangeError("power-ratio invariant: coordinate index out of range");
    }
    PowerRatioInvariant inv;
    inv.num = Vec3::Unit(i);
    inv.den = Vec3::Unit(j);
    inv.expo = expo;
    return inv;
}

bool PowerRatioInvariant::in_domain(const Vec3& v) const { return den.dot(v) > 0.0; }

double PowerRatioInvariant::eval(const Vec3& v) const {
    double h = den.dot(v);
    if (!(h > 0.0)) {
        std::ostringstream os;
        os << "power-ratio invariant left its domain: denominator = " << h;
        throw DomainExitError(os.str());
    }
    return num.dot(v) / std::pow(h, expo);
}

double partial_invariant_drift(const PowerRatioInvariant& inv,
                               const std::vector<Sample>& samples) {
    if (samples.empty()) return 0.0;
    double f0 = inv.eval(samples.front().v);
    double scale = std::max(std::abs(f0), 1e-12);
    double drift = 0.0;
    for (const Sample& s : samples) {
        drift = std::max(drift, std::abs(inv.eval(s.v) - f0) / scale);
    }
    return drift;
}

// --- incompleteness witnesses ------------------------------------------------------

namespace {

bool near(double x, double y) { return std::abs(x - y) <= 1e-12 * (1.0 + std::abs(y)); }

}  // namespace

IncompletenessWitness incompleteness_witness(const LieAlgebra3& g) {
    // Recognize the lower-triangular presentation [e1,e2] = a2·e2 + a3·e3,
    // [e1,e3] = b2·e2 + b3·e3, [e2,e3] = 0 shared by all standard families.
    const StructureTensor& c = g.c;
    for (int k = 0; k < 3; ++k) {
        if (!near(c[static_cast<size_t>(k)][1][2], 0.0)) {
            throw UnsupportedAlgebraError("incompleteness_witness: unrecognized algebra");
        }
    }
    if (!near(c[0][0][1], 0.0) || !near(c[0][0][2], 0.0)) {
        throw UnsupportedAlgebraError("incompleteness_witness: unrecognized algebra");
    }
    double a2 = c[1][0][1], a3 = c[2][0][1], b2 = c[1][0][2], b3 = c[2][0][2];

    auto finish_with_idempotent = [&](Tag tag, const Vec3& v0) {
        BilinearForm q(canonical_matrix(tag, std::nullopt));
        QuadraticField F = euler_arnold_field(g, q);
        Idempotent idem{v0, (F.eval(v0) - v0).norm()};
        return IncompletenessWitness{q, idem};
    };
    auto finish_with_domination = [&]() {
        Mat3 m = Mat3::Identity();
        m(0, 0) = -1.0;
        BilinearForm q(m);
        QuadraticField F = euler_arnold_field(g, q);
        auto cert = null_cone_domination(F, q);
        if (!cert) throw Error("incompleteness_witness: expected domination certificate");
        return IncompletenessWitness{q, *cert};
    };

    if (near(a2, 1.0) && near(a3, 0.0) && near(b2, 0.0)) {
        double lambda = b3;
        if (near(lambda, -1.0)) {
            throw UnsupportedAlgebraError(
                "incompleteness_witness: lambda = -1 is unimodular; both complete and "
                "incomplete metrics exist and no single witness applies");
        }
        // Either form restricts to F(x, y, 0) = (y², xy, 0), making (1, 1, 0)
        // an exact rest point for every lambda; Q2 sits in an incomplete orbit
        // for |lambda| < 1 and Q3 in one at lambda = 1.
        return finish_with_idempotent(near(lambda, 1.0) ? Tag::Q3 : Tag::Q2, Vec3(1, 1, 0));
    }
    if (near(a2, 1.0) && near(a3, 0.0) && near(b2, 1.0) && near(b3, 1.0)) {
        return finish_with_domination();
    }
    if (near(a3, 1.0) && near(b2, -1.0) && near(a2, b3) && a2 > 0.0) {
        return finish_with_domination();
    }
    throw UnsupportedAlgebraError("incompleteness_witness: unrecognized algebra");
}

}  // namespace ealab
