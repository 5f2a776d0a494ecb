#include "ealab/algebra.hpp"

#include <cmath>
#include <sstream>

namespace ealab {

FamilyId FamilyId::h(double lambda) {
    FamilyId id;
    id.family = Family::H;
    id.param = lambda;
    return id;
}

FamilyId FamilyId::h(const Rat& lambda) {
    FamilyId id = h(to_double(lambda));
    id.exact_param = lambda;
    return id;
}

FamilyId FamilyId::psh() {
    FamilyId id;
    id.family = Family::PSH;
    return id;
}

FamilyId FamilyId::e(double mu) {
    FamilyId id;
    id.family = Family::E;
    id.param = mu;
    return id;
}

FamilyId FamilyId::e(const Rat& mu) {
    FamilyId id = e(to_double(mu));
    id.exact_param = mu;
    return id;
}

FamilyId FamilyId::custom() { return FamilyId{}; }

std::string family_name(Family f) {
    switch (f) {
        case Family::H: return "h";
        case Family::PSH: return "psh";
        case Family::E: return "e";
        case Family::Custom: return "custom";
    }
    return "?";
}

Vec3 LieAlgebra3::bracket(const Vec3& u, const Vec3& v) const {
    Vec3 out = Vec3::Zero();
    for (int k = 0; k < 3; ++k)
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) out[k] += c[k][i][j] * u[i] * v[j];
    return out;
}

namespace {

double max_abs(const StructureTensor& c) {
    double m = 0.0;
    for (const auto& a : c)
        for (const auto& b : a)
            for (double x : b) m = std::max(m, std::abs(x));
    return m;
}

Vec3 bracket_of(const StructureTensor& c, const Vec3& u, const Vec3& v) {
    Vec3 out = Vec3::Zero();
    for (int k = 0; k < 3; ++k)
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) out[k] += c[k][i][j] * u[i] * v[j];
    return out;
}

}  // namespace

double jacobi_residual(const StructureTensor& c) {
    Vec3 e[3] = {Vec3::UnitX(), Vec3::UnitY(), Vec3::UnitZ()};
    double worst = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) {
                Vec3 r = bracket_of(c, e[i], bracket_of(c, e[j], e[k])) +
                         bracket_of(c, e[j], bracket_of(c, e[k], e[i])) +
                         bracket_of(c, e[k], bracket_of(c, e[i], e[j]));
                worst = std::max(worst, r.norm());
            }
    return worst;
}

LieAlgebra3 make_lie_algebra(const StructureTensor& c) {
    const double scale = 1.0 + max_abs(c);
    double asym = 0.0;
    for (int k = 0; k < 3; ++k)
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) asym = std::max(asym, std::abs(c[k][i][j] + c[k][j][i]));
    if (asym > 1e-12 * scale) {
        std::ostringstream os;
        os << "structure constants are not antisymmetric in (i,j): max |c[k][i][j]+c[k][j][i]| = "
           << asym;
        throw NotAntisymmetricError(os.str());
    }
    StructureTensor cc{};
    for (int k = 0; k < 3; ++k)
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) cc[k][i][j] = 0.5 * (c[k][i][j] - c[k][j][i]);

    const double jr = jacobi_residual(cc);
    if (jr > 1e-12 * scale * scale) {
        // Locate the worst triple for the message.
        Vec3 e[3] = {Vec3::UnitX(), Vec3::UnitY(), Vec3::UnitZ()};
        int wi = 0, wj = 1, wk = 2;
        double worst = -1.0;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                for (int k = 0; k < 3; ++k) {
                    Vec3 r = bracket_of(cc, e[i], bracket_of(cc, e[j], e[k])) +
                             bracket_of(cc, e[j], bracket_of(cc, e[k], e[i])) +
                             bracket_of(cc, e[k], bracket_of(cc, e[i], e[j]));
                    if (r.norm() > worst) {
                        worst = r.norm();
                        wi = i, wj = j, wk = k;
                    }
                }
        std::ostringstream os;
        os << "Jacobi identity fails: residual " << jr << " at basis triple (e" << wi + 1 << ", e"
           << wj + 1 << ", e" << wk + 1 << ")";
        throw JacobiViolationError(os.str());
    }
    LieAlgebra3 g;
    g.c = cc;
    g.label = FamilyId::custom();
    return g;
}

LieAlgebra3 make_lie_algebra(const RatStructureTensor& c) {
    RatStructureTensor cc{};
    for (int k = 0; k < 3; ++k)
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                if (c[k][i][j] != -c[k][j][i])
                    throw NotAntisymmetricError(
                        "structure constants are not antisymmetric in (i,j) (exact input)");
    cc = c;
    LieAlgebra3 g = make_lie_algebra(to_double_tensor(cc));
    g.exact = cc;
    return g;
}

StructureTensor to_double_tensor(const RatStructureTensor& c) {
    StructureTensor out{};
    for (int k = 0; k < 3; ++k)
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) out[k][i][j] = to_double(c[k][i][j]);
    return out;
}

namespace {

// Fills [e1,e2] = a2·e2 + a3·e3 and [e1,e3] = b2·e2 + b3·e3 (plus antisymmetry).
RatStructureTensor lower_triangular_family(const Rat& a2, const Rat& a3, const Rat& b2,
                                           const Rat& b3) {
    RatStructureTensor c{};
    c[1][0][1] = a2;
    c[1][1][0] = -a2;
    c[2][0][1] = a3;
    c[2][1][0] = -a3;
    c[1][0][2] = b2;
    c[1][2][0] = -b2;
    c[2][0][2] = b3;
    c[2][2][0] = -b3;
    return c;
}

}  // namespace

LieAlgebra3 standard_family(const FamilyId& id) {
    LieAlgebra3 g;
    switch (id.family) {
        case Family::H: {
            if (!(std::abs(id.param) <= 1.0)) {
                std::ostringstream os;
                os << "family h requires |lambda| <= 1, got lambda = " << id.param;
                throw ParameterOutOfRangeError(os.str());
            }
            if (id.exact_param) {
                g = make_lie_algebra(
                    lower_triangular_family(Rat(1), Rat(0), Rat(0), *id.exact_param));
            } else {
                StructureTensor c{};
                c[1][0][1] = 1.0;
                c[1][1][0] = -1.0;
                c[2][0][2] = id.param;
                c[2][2][0] = -id.param;
                g = make_lie_algebra(c);
            }
            break;
        }
        case Family::PSH:
            g = make_lie_algebra(lower_triangular_family(Rat(1), Rat(0), Rat(1), Rat(1)));
            break;
        case Family::E: {
            if (!(id.param > 0.0)) {
                std::ostringstream os;
                os << "family e requires mu > 0, got mu = " << id.param;
                throw ParameterOutOfRangeError(os.str());
            }
            if (id.exact_param) {
                g = make_lie_algebra(
                    lower_triangular_family(*id.exact_param, Rat(1), Rat(-1), *id.exact_param));
            } else {
                StructureTensor c{};
                c[1][0][1] = id.param;
                c[1][1][0] = -id.param;
                c[2][0][1] = 1.0;
                c[2][1][0] = -1.0;
                c[1][0][2] = -1.0;
                c[1][2][0] = 1.0;
                c[2][0][2] = id.param;
                c[2][2][0] = -id.param;
                g = make_lie_algebra(c);
            }
            break;
        }
        case Family::Custom:
            throw UnsupportedAlgebraError("standard_family: Custom has no standard brackets");
    }
    g.label = id;
    return g;
}

Mat3 ad_matrix(const LieAlgebra3& g, const Vec3& v) {
    Mat3 out = Mat3::Zero();
    for (int k = 0; k < 3; ++k)
        for (int j = 0; j < 3; ++j)
            for (int i = 0; i < 3; ++i) out(k, j) += v[i] * g.c[k][i][j];
    return out;
}

bool is_unimodular(const LieAlgebra3& g) {
    for (int i = 0; i < 3; ++i) {
        Vec3 ei = Vec3::Zero();
        ei[i] = 1.0;
        if (std::abs(ad_matrix(g, ei).trace()) > 1e-12) return false;
    }
    return true;
}

}  // namespace ealab
