#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ealab/metric.hpp"
#include "test_util.hpp"

using namespace ealab;

namespace {

Mat3 diag(double a, double b, double c) {
    Mat3 m = Mat3::Zero();
    m(0, 0) = a;
    m(1, 1) = b;
    m(2, 2) = c;
    return m;
}

const Mat3 kQ9 = [] {
    Mat3 m = Mat3::Zero();
    m(0, 0) = 1.0;
    m(1, 2) = m(2, 1) = 1.0;
    return m;
}();

}  // namespace

TEST_CASE("signature: eigenvalue counts with a relative zero threshold") {
    CHECK(BilinearForm(diag(1, 1, -1)).signature().n_plus == 2);
    CHECK(BilinearForm(diag(1, 1, -1)).signature().n_minus == 1);
    CHECK(BilinearForm(diag(1, 1, -1)).signature().lorentzian());

    Signature id = BilinearForm(Mat3::Identity()).signature();
    CHECK(id.n_plus == 3);
    CHECK(id.positive_definite());
    CHECK_FALSE(id.lorentzian());

    Signature q9 = BilinearForm(kQ9).signature();
    CHECK(q9.n_plus == 2);
    CHECK(q9.n_minus == 1);
    CHECK(q9.n_zero == 0);

    Signature deg = BilinearForm(diag(1, 1e-14, -1)).signature();
    CHECK(deg.n_zero == 1);
}

TEST_CASE("causal character trichotomy") {
    BilinearForm q1(diag(1, 1, -1)), q2(diag(1, -1, 1)), q9(kQ9);
    CHECK(causal_character(q1, Vec3::UnitZ()) == CausalCharacter::Timelike);
    CHECK(causal_character(q2, Vec3::UnitZ()) == CausalCharacter::Spacelike);
    CHECK(causal_character(q9, Vec3::UnitY()) == CausalCharacter::Lightlike);
    CHECK_THROWS_AS(causal_character(q1, Vec3::Zero()), ZeroVectorError);
}

TEST_CASE("ad_dagger: zero at v=0, plain transpose for the identity form") {
    LieAlgebra3 g = standard_family(FamilyId::h(0.5));
    BilinearForm qid{Mat3::Identity()};
    CHECK(ad_dagger(g, qid, Vec3::Zero()).norm() == 0.0);

    testutil::Rng rng(0xDA66E501);
    for (int trial = 0; trial < 20; ++trial) {
        Vec3 v = testutil::random_vec(rng);
        CHECK((ad_dagger(g, qid, v) - ad_matrix(g, v).transpose()).norm() <= 1e-14);
    }
}

TEST_CASE("ad_dagger satisfies its defining relation on basis pairs") {
    testutil::Rng rng(0xDEF1111);
    for (int trial = 0; trial < 50; ++trial) {
        LieAlgebra3 g = (trial % 2) ? standard_family(FamilyId::h(rng.uniform(-1, 1)))
                                    : standard_family(FamilyId::e(rng.uniform(0.2, 2.0)));
        BilinearForm q{trial == 0 ? diag(1, 1, -1)
                                  : testutil::random_nondegenerate_symmetric(rng)};
        Vec3 v = (trial == 0) ? Vec3(Vec3::UnitY()) : testutil::random_vec(rng);
        Mat3 dag = ad_dagger(g, q, v);
        Mat3 ad = ad_matrix(g, v);
        const Mat3& m = q.matrix();
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                Vec3 x = Vec3::Zero(), y = Vec3::Zero();
                x[i] = 1.0;
                y[j] = 1.0;
                double lhs = (dag * x).dot(m * y);
                double rhs = x.dot(m * (ad * y));
                CHECK(std::abs(lhs - rhs) <= 1e-12 * (1.0 + std::abs(rhs)) * (1.0 + q.norm()));
            }
    }
    BilinearForm degenerate{diag(1, 0, -1)};
    LieAlgebra3 g = standard_family(FamilyId::h(0.5));
    CHECK_THROWS_AS(ad_dagger(g, degenerate, Vec3::UnitX()), DegenerateFormError);
}

TEST_CASE("geodesic field: reference coefficient sets") {
    // h(lambda) with diag(1,1,-1): (-y^2 + lambda z^2, x y, lambda x z).
    const double lambda = 0.5;
    QuadraticField F = euler_arnold_field(standard_family(FamilyId::h(lambda)),
                                          BilinearForm{diag(1, 1, -1)});
    Mat3 B0 = Mat3::Zero();
    B0(1, 1) = -1.0;
    B0(2, 2) = lambda;
    Mat3 B1 = Mat3::Zero();
    B1(0, 1) = B1(1, 0) = 0.5;
    Mat3 B2 = Mat3::Zero();
    B2(0, 2) = B2(2, 0) = 0.5 * lambda;
    CHECK((F.B[0] - B0).norm() == 0.0);
    CHECK((F.B[1] - B1).norm() == 0.0);
    CHECK((F.B[2] - B2).norm() == 0.0);

    // h(0) with the lightlike-center orthogonal form: (0, x y, -y^2).
    Mat3 q12 = Mat3::Zero();
    q12(0, 2) = q12(2, 0) = 1.0;
    q12(1, 1) = 1.0;
    QuadraticField G =
        euler_arnold_field(standard_family(FamilyId::h(0.0)), BilinearForm{q12});
    CHECK(G.eval(Vec3(1, 1, 0)) == Vec3(0, 1, -1));
    CHECK(G.eval(Vec3(2, 3, -5)) == Vec3(0, 6, -9));

    // e(mu) with diag(-1,1,1): (mu(y^2+z^2), mu x y + x z, -x y + mu x z).
    for (double mu : {0.5, 1.0, 2.0}) {
        QuadraticField E =
            euler_arnold_field(standard_family(FamilyId::e(mu)), BilinearForm{diag(-1, 1, 1)});
        testutil::Rng rng(7);
        for (int trial = 0; trial < 10; ++trial) {
            Vec3 v = testutil::random_vec(rng);
            Vec3 expect(mu * (v.y() * v.y() + v.z() * v.z()),
                        mu * v.x() * v.y() + v.x() * v.z(),
                        -v.x() * v.y() + mu * v.x() * v.z());
            CHECK((E.eval(v) - expect).norm() <= 1e-13 * (1.0 + expect.norm()));
        }
    }

    // Abelian algebra: the field vanishes identically.
    QuadraticField Z = euler_arnold_field(make_lie_algebra(StructureTensor{}),
                                          BilinearForm{diag(1, 1, -1)});
    CHECK(Z.max_coeff() == 0.0);

    CHECK_THROWS_AS(euler_arnold_field(standard_family(FamilyId::h(0.5)),
                                       BilinearForm{diag(1, 0, -1)}),
                    DegenerateFormError);
}

TEST_CASE("exact synthesis matches the double path") {
    LieAlgebra3 g = standard_family(FamilyId::h(Rat(1, 2)));
    RatMat3 q1{};
    q1[0][0] = Rat(1);
    q1[1][1] = Rat(1);
    q1[2][2] = Rat(-1);
    QuadraticField F = euler_arnold_field(g, BilinearForm{q1});
    REQUIRE(F.exact.has_value());
    CHECK((*F.exact)[0][1][1] == Rat(-1));
    CHECK((*F.exact)[0][2][2] == Rat(1, 2));
    CHECK((*F.exact)[1][0][1] == Rat(1, 2));  // x y split evenly across (0,1),(1,0)
    CHECK((*F.exact)[2][0][2] == Rat(1, 4));
    for (int i = 0; i < 3; ++i)
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) CHECK(to_double((*F.exact)[i][a][b]) == F.B[i](a, b));
}

TEST_CASE("energy convention e(v) = q(v,v)") {
    BilinearForm q9(kQ9);
    CHECK(energy(q9, Vec3(2, 3, 4)) == 2 * 2 + 2 * 3 * 4);
    CHECK(energy(q9, Vec3::Zero()) == 0.0);
    Mat3 q50 = Mat3::Zero();
    q50(0, 0) = 1.0;
    q50(1, 1) = -1.0;
    q50(1, 2) = q50(2, 1) = 1.0;
    CHECK(energy(BilinearForm{q50}, Vec3(1, 2, 3)) == 1.0 - 4.0 + 2.0 * 2.0 * 3.0);
}

TEST_CASE("field-level energy conservation as a cubic identity (200 random pairs)") {
    testutil::Rng rng(0xE4E26);
    for (int trial = 0; trial < 200; ++trial) {
        LieAlgebra3 g;
        switch (trial % 3) {
            case 0: g = standard_family(FamilyId::h(rng.uniform(-1, 1))); break;
            case 1: g = standard_family(FamilyId::psh()); break;
            default: g = standard_family(FamilyId::e(rng.uniform(0.1, 3.0))); break;
        }
        Mat3 m = testutil::random_nondegenerate_symmetric(rng);
        BilinearForm q{m};
        QuadraticField F = euler_arnold_field(g, q);
        Cubic coeffs = derivative_cubic(q.matrix(), F);
        for (double ci : coeffs) CHECK(std::abs(ci) <= 1e-12);
    }
}

TEST_CASE("field equivariance under algebra automorphisms") {
    testutil::Rng rng(0xEC0117);
    for (int trial = 0; trial < 100; ++trial) {
        LieAlgebra3 g = standard_family(FamilyId::h(rng.uniform(-1, 1)));
        Mat3 m = testutil::random_lorentzian_matrix(rng);
        Mat3 phi = testutil::random_standard_automorphism(rng);
        QuadraticField F = euler_arnold_field(g, BilinearForm{m});
        QuadraticField Fpull = euler_arnold_field(g, BilinearForm{phi.transpose() * m * phi});
        Mat3 phinv = phi.inverse();
        for (int k = 0; k < 5; ++k) {
            Vec3 v = testutil::random_vec(rng);
            Vec3 lhs = Fpull.eval(v);
            Vec3 rhs = phinv * F.eval(phi * v);
            CHECK((lhs - rhs).norm() <= 1e-10 * (1.0 + rhs.norm()));
        }
    }
}

TEST_CASE("field is invariant under rescaling of the form") {
    testutil::Rng rng(0x5CA1E);
    for (int trial = 0; trial < 30; ++trial) {
        LieAlgebra3 g = standard_family(FamilyId::e(rng.uniform(0.2, 2.0)));
        Mat3 m = testutil::random_nondegenerate_symmetric(rng);
        QuadraticField F = euler_arnold_field(g, BilinearForm{m});
        for (double sigma : {2.0, -4.0, 3.0}) {
            QuadraticField Fs = euler_arnold_field(g, BilinearForm{sigma * m});
            for (int i = 0; i < 3; ++i)
                CHECK((Fs.B[i] - F.B[i]).norm() <= 1e-11 * (1.0 + F.B[i].norm()));
        }
    }
}

TEST_CASE("quadratic field helpers: eval/jacobian/scaled consistency") {
    testutil::Rng rng(0xFACADE);
    QuadraticField F = euler_arnold_field(standard_family(FamilyId::h(0.4)),
                                          BilinearForm{testutil::random_lorentzian_matrix(rng)});
    Vec3 v = testutil::random_vec(rng);
    // Homogeneity F(a v) = a^2 F(v).
    CHECK((F.eval(2.5 * v) - 6.25 * F.eval(v)).norm() <= 1e-12 * F.eval(v).norm());
    // Finite-difference check of the jacobian.
    Mat3 J = F.jacobian(v);
    const double h = 1e-6;
    for (int j = 0; j < 3; ++j) {
        Vec3 dv = Vec3::Zero();
        dv[j] = h;
        Vec3 fd = (F.eval(v + dv) - F.eval(v - dv)) / (2 * h);
        CHECK((fd - J.col(j)).norm() <= 1e-7);
    }
    QuadraticField F2 = F.scaled(3.0);
    CHECK((F2.eval(v) - 3.0 * F.eval(v)).norm() <= 1e-12 * F.eval(v).norm());
}

TEST_CASE("polynomial rendering uses exact coefficients when available") {
    LieAlgebra3 g = standard_family(FamilyId::h(Rat(0)));
    RatMat3 q12{};
    q12[0][2] = q12[2][0] = Rat(1);
    q12[1][1] = Rat(1);
    QuadraticField F = euler_arnold_field(g, BilinearForm{q12});
    CHECK(polynomial_string(F) == "F1 = 0\nF2 = x*y\nF3 = -y^2\n");
}
