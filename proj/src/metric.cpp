#include "ealab/metric.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace ealab {

std::string to_string(CausalCharacter c) {
    switch (c) {
        case CausalCharacter::Spacelike: return "spacelike";
        case CausalCharacter::Timelike: return "timelike";
        case CausalCharacter::Lightlike: return "lightlike";
    }
    return "?";
}

BilinearForm::BilinearForm(const Mat3& m) {
    m_ = 0.5 * (m + m.transpose());
    norm_ = m_.norm();
    Eigen::SelfAdjointEigenSolver<Mat3> es(m_, Eigen::EigenvaluesOnly);
    const double tol = 1e-10 * norm_;
    for (int i = 0; i < 3; ++i) {
        double ev = es.eigenvalues()[i];
        if (ev > tol)
            ++sig_.n_plus;
        else if (ev < -tol)
            ++sig_.n_minus;
        else
            ++sig_.n_zero;
    }
}

BilinearForm::BilinearForm(const RatMat3& m)
    : BilinearForm([&m] {
          Mat3 d;
          for (int i = 0; i < 3; ++i)
              for (int j = 0; j < 3; ++j) d(i, j) = to_double(m[i][j]);
          return d;
      }()) {
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            if (m[i][j] != m[j][i])
                throw Error("exact bilinear form must be symmetric");
    exact_ = m;
}

Vec3 QuadraticField::eval(const Vec3& v) const {
    return Vec3(v.dot(B[0] * v), v.dot(B[1] * v), v.dot(B[2] * v));
}

Mat3 QuadraticField::jacobian(const Vec3& v) const {
    Mat3 J;
    for (int i = 0; i < 3; ++i) J.row(i) = (2.0 * (B[i] * v)).transpose();
    return J;
}

QuadraticField QuadraticField::scaled(double mu) const {
    QuadraticField out;
    for (int i = 0; i < 3; ++i) out.B[i] = mu * B[i];
    if (exact) {
        // An exact shadow scaled by an arbitrary double is no longer exact.
        out.exact.reset();
    }
    return out;
}

double QuadraticField::max_coeff() const {
    double m = 0.0;
    for (const auto& b : B) m = std::max(m, b.cwiseAbs().maxCoeff());
    return m;
}

Signature signature(const BilinearForm& q) { return q.signature(); }

CausalCharacter causal_character(const BilinearForm& q, const Vec3& v) {
    const double n2 = v.squaredNorm();
    if (n2 == 0.0) throw ZeroVectorError("causal_character: zero vector has no causal type");
    const double val = v.dot(q.matrix() * v);
    const double tau = 1e-10 * q.norm() * n2;
    if (val > tau) return CausalCharacter::Spacelike;
    if (val < -tau) return CausalCharacter::Timelike;
    return CausalCharacter::Lightlike;
}

Mat3 ad_dagger(const LieAlgebra3& g, const BilinearForm& q, const Vec3& v) {
    if (q.signature().degenerate())
        throw DegenerateFormError("ad_dagger requires a non-degenerate form");
    const Mat3& m = q.matrix();
    return m.inverse() * ad_matrix(g, v).transpose() * m;
}

QuadraticField euler_arnold_field(const LieAlgebra3& g, const BilinearForm& q) {
    if (q.signature().degenerate())
        throw DegenerateFormError("euler_arnold_field requires a non-degenerate form");
    const Mat3& m = q.matrix();
    const Mat3 minv = m.inverse();

    // F_p(v) = (m⁻¹ ad_vᵀ m v)_p = Σ_{i,l} T[p](i,l) v_i v_l with
    // T[p](i,l) = Σ_{j,k} minv(p,j)·c[k][i][j]·m(k,l).
    QuadraticField F;
    for (int p = 0; p < 3; ++p) {
        Mat3 T = Mat3::Zero();
        for (int i = 0; i < 3; ++i)
            for (int l = 0; l < 3; ++l) {
                double acc = 0.0;
                for (int j = 0; j < 3; ++j)
                    for (int k = 0; k < 3; ++k) acc += minv(p, j) * g.c[k][i][j] * m(k, l);
                T(i, l) = acc;
            }
        F.B[p] = 0.5 * (T + T.transpose());
    }
    if (g.exact && q.exact()) F.exact = euler_arnold_field_exact(*g.exact, *q.exact());
    return F;
}

std::array<RatMat3, 3> euler_arnold_field_exact(const RatStructureTensor& c, const RatMat3& m) {
    const RatMat3 minv = rat_inverse(m);
    std::array<RatMat3, 3> F{};
    for (int p = 0; p < 3; ++p) {
        RatMat3 T{};
        for (int i = 0; i < 3; ++i)
            for (int l = 0; l < 3; ++l) {
                Rat acc(0);
                for (int j = 0; j < 3; ++j)
                    for (int k = 0; k < 3; ++k) acc += minv[p][j] * c[k][i][j] * m[k][l];
                T[i][l] = acc;
            }
        for (int i = 0; i < 3; ++i)
            for (int l = 0; l < 3; ++l) F[p][i][l] = (T[i][l] + T[l][i]) / Rat(2);
    }
    return F;
}

double energy(const BilinearForm& q, const Vec3& v) { return v.dot(q.matrix() * v); }

Mat3 contract(const QuadraticField& F, const Vec3& l) {
    return l[0] * F.B[0] + l[1] * F.B[1] + l[2] * F.B[2];
}

namespace {

// Index into the fixed cubic monomial order for exponent triple (a,b,c).
int cubic_index(int a, int b, int c) {
    if (a == 3) return 0;
    if (a == 2) return b == 1 ? 1 : 2;
    if (a == 1) {
        if (b == 2) return 3;
        if (b == 1) return 4;
        return 5;
    }
    if (b == 3) return 6;
    if (b == 2) return 7;
    if (b == 1) return 8;
    (void)c;
    return 9;
}

}  // namespace

Cubic derivative_cubic(const Mat3& S, const QuadraticField& F) {
    Cubic out{};
    for (int i = 0; i < 3; ++i)
        for (int d = 0; d < 3; ++d) {
            const double w = 2.0 * S(i, d);
            if (w == 0.0) continue;
            for (int d1 = 0; d1 < 3; ++d1)
                for (int d2 = 0; d2 < 3; ++d2) {
                    int e[3] = {0, 0, 0};
                    ++e[d], ++e[d1], ++e[d2];
                    out[cubic_index(e[0], e[1], e[2])] += w * F.B[i](d1, d2);
                }
        }
    return out;
}

std::string polynomial_string(const QuadraticField& F) {
    static const char* comp[3] = {"F1", "F2", "F3"};
    static const char* mono[6] = {"x^2", "x*y", "x*z", "y^2", "y*z", "z^2"};
    static const int idx[6][2] = {{0, 0}, {0, 1}, {0, 2}, {1, 1}, {1, 2}, {2, 2}};
    std::ostringstream os;
    for (int i = 0; i < 3; ++i) {
        os << comp[i] << " = ";
        bool first = true;
        for (int t = 0; t < 6; ++t) {
            const int a = idx[t][0], b = idx[t][1];
            std::string cs;
            bool zero = false, negative = false;
            if (F.exact) {
                Rat r = (*F.exact)[i][a][b];
                if (a != b) r *= Rat(2);
                zero = (r == Rat(0));
                negative = (r < Rat(0));
                Rat m = negative ? -r : r;
                cs = (m == Rat(1)) ? "" : to_string(m);
            } else {
                double r = F.B[i](a, b);
                if (a != b) r *= 2.0;
                zero = (r == 0.0);
                negative = (r < 0.0);
                double m = std::abs(r);
                if (m != 1.0) {
                    std::ostringstream c;
                    c.precision(17);
                    c << m;
                    cs = c.str();
                }
            }
            if (zero) continue;
            if (first) {
                if (negative) os << "-";
                first = false;
            } else {
                os << (negative ? " - " : " + ");
            }
            if (!cs.empty()) os << cs << "*";
            os << mono[t];
        }
        if (first) os << "0";
        os << "\n";
    }
    return os.str();
}

}  // namespace ealab
