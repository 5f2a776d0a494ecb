#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "ealab/algebra.hpp"
#include "ealab/errors.hpp"
#include "ealab/metric.hpp"
#include "ealab/normal_form.hpp"
#include "test_util.hpp"

using namespace ealab;

namespace {

struct OrbitCase {
    Tag tag;
    std::optional<double> param;
};

// Lorentzian representatives with well-separated parameter draws.
std::vector<OrbitCase> lorentz_cases(testutil::Rng& rng) {
    std::vector<OrbitCase> cases;
    cases.push_back({Tag::Q1, std::nullopt});
    cases.push_back({Tag::Q2, std::nullopt});
    cases.push_back({Tag::Q3, std::nullopt});
    const double r = (rng.unit() < 0.5) ? rng.uniform(-2.0, -0.1)
                                        : rng.uniform(0.1, 0.9);
    cases.push_back({Tag::Q4, r});
    const double s = (rng.unit() < 0.5) ? rng.uniform(-0.9, -0.1)
                                        : rng.uniform(0.1, 2.0);
    cases.push_back({Tag::Q5, s});
    cases.push_back({Tag::Q6, rng.uniform(1.1, 3.0)});
    cases.push_back({Tag::Q7, std::nullopt});
    cases.push_back({Tag::Q8, std::nullopt});
    cases.push_back({Tag::Q9, std::nullopt});
    cases.push_back({Tag::Q10, std::nullopt});
    cases.push_back({Tag::Q11, std::nullopt});
    cases.push_back({Tag::Q12, std::nullopt});
    return cases;
}

Automorphism random_standard_aut(testutil::Rng& rng) {
    return Automorphism::from_matrix(testutil::random_standard_automorphism(rng));
}

Automorphism random_swapped_aut(testutil::Rng& rng) {
    return Automorphism::swapped(rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0),
                                 rng.sign() * rng.uniform(0.3, 2.0),
                                 rng.sign() * rng.uniform(0.3, 2.0));
}

Automorphism random_full_aut(testutil::Rng& rng) {
    while (true) {
        Mat3 M;
        M << 1, 0, 0,
            rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0),
            rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0);
        if (std::abs(M(1, 1) * M(2, 2) - M(1, 2) * M(2, 1)) >= 0.2)
            return Automorphism::from_matrix(M);
    }
}

// The tag/param a standard-orbit representative merges into at lambda = ±1.
OrbitCase limit_target(double lambda, const OrbitCase& c) {
    if (lambda == -1.0) {
        switch (c.tag) {
            case Tag::Q2: return {Tag::Q1, std::nullopt};
            case Tag::Q7: return {Tag::Q4, 0.0};
            case Tag::Q8: return {Tag::Q5, 0.0};
            case Tag::Q12: return {Tag::Q11, std::nullopt};
            case Tag::Q5:
                if (*c.param > 0.0) return {Tag::Q4, -*c.param};
                return c;
            default: return c;
        }
    }
    if (lambda == 1.0) {
        switch (c.tag) {
            case Tag::Q1: case Tag::Q2: case Tag::Q4: case Tag::Q5:
            case Tag::Q7: case Tag::Q8: case Tag::Q9:
                return {Tag::Q1, std::nullopt};
            case Tag::Q3: case Tag::Q6:
                return {Tag::Q3, std::nullopt};
            default:
                return {Tag::Q11, std::nullopt};
        }
    }
    return c;
}

void check_roundtrip(double lambda, const OrbitCase& c, const Automorphism& phi,
                     double sigma) {
    const Mat3 Q = canonical_matrix(c.tag, c.param);
    const BilinearForm m(Mat3(sigma * phi.M.transpose() * Q * phi.M));
    const NormalFormId nf = canonicalize(lambda, m);
    const OrbitCase want = limit_target(lambda, c);
    CAPTURE(tag_name(c.tag));
    CAPTURE(lambda);
    CAPTURE(sigma);
    REQUIRE(nf.tag == want.tag);
    REQUIRE(nf.param.has_value() == want.param.has_value());
    if (want.param)
        CHECK(*nf.param == doctest::Approx(*want.param).epsilon(1e-8));
    // Scale is an orbit invariant only while q(e1,e1) normalizes to ±1;
    // the Q10/Q11/Q12 orbits absorb positive rescalings.
    if (want.tag != Tag::Q10 && want.tag != Tag::Q11 && want.tag != Tag::Q12)
        CHECK(nf.scale == doctest::Approx(sigma).epsilon(1e-8));
    else
        CHECK(nf.scale * sigma > 0.0);
    CHECK(nf.residual <= 1e-8);
    // Explicit reconstruction from the returned data.
    const Mat3 rebuilt = nf.scale * nf.phi.M.transpose() *
                         canonical_matrix(nf.tag, nf.param) * nf.phi.M;
    CHECK((rebuilt - m.matrix()).norm() <= 1e-7 * m.norm());
}

}  // namespace

TEST_CASE("canonical matrices: shape, exactness and parameter validation") {
    CHECK(canonical_matrix(Tag::Q0) == Mat3::Identity());
    Mat3 q9;
    q9 << 1, 0, 0, 0, 0, 1, 0, 1, 0;
    CHECK(canonical_matrix(Tag::Q9) == q9);
    CHECK_THROWS_AS(canonical_matrix(Tag::Q4, 1.0), ParameterOutOfRangeError);
    CHECK_THROWS_AS(canonical_matrix(Tag::Q5, -1.0), ParameterOutOfRangeError);
    CHECK_THROWS_AS(canonical_matrix(Tag::Q6, 1.0), ParameterOutOfRangeError);
    CHECK_THROWS_AS(canonical_matrix(Tag::Q1, 0.5), ParameterOutOfRangeError);
    CHECK_THROWS_AS(canonical_matrix(Tag::Q4), ParameterOutOfRangeError);
    for (Tag t : {Tag::Q4, Tag::Q5, Tag::Q6}) CHECK(tag_has_param(t));
    CHECK(tag_name(Tag::Q10) == "Q10");
    CHECK(tag_from_string("Q7") == Tag::Q7);
    CHECK(!tag_from_string("Q13").has_value());
    // Exact and double versions agree.
    const RatMat3 E = canonical_matrix_exact(Tag::Q5, Rat(-1, 4));
    const Mat3 D = canonical_matrix(Tag::Q5, -0.25);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            CHECK(to_double(E[i][j]) == D(i, j));
}

TEST_CASE("automorphism components vs lambda") {
    const LieAlgebra3 g_half = standard_family(FamilyId::h(0.5));
    const LieAlgebra3 g_one = standard_family(FamilyId::h(1.0));
    const LieAlgebra3 g_minus = standard_family(FamilyId::h(-1.0));

    const Automorphism std_aut = Automorphism::standard(0.7, -1.1, 1.4, 0.6);
    CHECK(preserves_brackets(std_aut.M, g_half));
    CHECK(preserves_brackets(std_aut.M, g_one));
    CHECK(preserves_brackets(std_aut.M, g_minus));

    const Automorphism sw = Automorphism::swapped(0.3, -0.7, 1.2, 0.8);
    CHECK(preserves_brackets(sw.M, g_minus));
    CHECK(!preserves_brackets(sw.M, g_half));
    CHECK(!preserves_brackets(sw.M, g_one));

    Mat3 full;
    full << 1, 0, 0, 0.4, 1.1, 0.3, -0.2, 0.5, 0.9;
    CHECK(preserves_brackets(full, g_one));
    CHECK(!preserves_brackets(full, g_half));

    CHECK_THROWS_AS(Automorphism::standard(0, 0, 0.0, 1.0),
                    InvalidAutomorphismError);
    CHECK_THROWS_AS(validated_automorphism(full, g_half),
                    InvalidAutomorphismError);
    CHECK_NOTHROW(validated_automorphism(full, g_one));

    // Validating transport overload.
    const BilinearForm q(canonical_matrix(Tag::Q1));
    CHECK_THROWS_AS(apply_automorphism(g_half, q,
                                       Automorphism::from_matrix(full)),
                    InvalidAutomorphismError);
}

TEST_CASE("transport example: scaling the derived directions") {
    const Automorphism phi = Automorphism::standard(0, 0, 2, 1);
    const BilinearForm q(canonical_matrix(Tag::Q2));
    Mat3 want;
    want << 1, 0, 0, 0, -4, 0, 0, 0, 1;
    CHECK((apply_automorphism(q, phi).matrix() - want).norm() == 0.0);
}

TEST_CASE("canonicalize is the identity on canonical representatives") {
    auto run = [&](double lambda, const std::vector<OrbitCase>& cases) {
        for (const auto& c : cases) {
            const BilinearForm q(canonical_matrix(c.tag, c.param));
            const NormalFormId nf = canonicalize(lambda, q);
            CAPTURE(lambda);
            CAPTURE(tag_name(c.tag));
            REQUIRE(nf.tag == c.tag);
            if (c.param)
                CHECK(*nf.param == doctest::Approx(*c.param).epsilon(1e-12));
            CHECK(nf.scale == doctest::Approx(1.0).epsilon(1e-12));
            CHECK((nf.phi.M - Mat3::Identity()).norm() <= 1e-12);
            CHECK(nf.residual <= 1e-12);
        }
    };
    run(0.37, {{Tag::Q1, std::nullopt}, {Tag::Q2, std::nullopt},
               {Tag::Q3, std::nullopt}, {Tag::Q4, -1.5}, {Tag::Q4, 0.5},
               {Tag::Q4, 0.0}, {Tag::Q5, -0.5}, {Tag::Q5, 0.0},
               {Tag::Q5, 1.2}, {Tag::Q6, 2.2}, {Tag::Q7, std::nullopt},
               {Tag::Q8, std::nullopt}, {Tag::Q9, std::nullopt},
               {Tag::Q10, std::nullopt}, {Tag::Q11, std::nullopt},
               {Tag::Q12, std::nullopt}});
    run(1.0, {{Tag::Q1, std::nullopt}, {Tag::Q3, std::nullopt},
              {Tag::Q11, std::nullopt}});
    run(-1.0, {{Tag::Q1, std::nullopt}, {Tag::Q3, std::nullopt},
               {Tag::Q4, -0.5}, {Tag::Q4, 0.0}, {Tag::Q5, -0.5},
               {Tag::Q5, 0.0}, {Tag::Q6, 2.0}, {Tag::Q9, std::nullopt},
               {Tag::Q10, std::nullopt}, {Tag::Q11, std::nullopt}});
}

TEST_CASE("orbit round-trips recover tag, parameter and scale") {
    testutil::Rng rng(77100);
    const int reps = 500;
    for (int it = 0; it < reps; ++it) {
        const double lambda = rng.uniform(-0.95, 0.95);
        for (const auto& c : lorentz_cases(rng)) {
            const double sigma = rng.sign() * rng.uniform(0.2, 5.0);
            check_roundtrip(lambda, c, random_standard_aut(rng), sigma);
        }
    }
}

TEST_CASE("orbit round-trips at the limiting lambda values") {
    testutil::Rng rng(77200);
    for (int it = 0; it < 200; ++it) {
        for (const auto& c : lorentz_cases(rng)) {
            const double sigma = rng.uniform(0.2, 5.0);
            // lambda = -1: both group components.
            const Automorphism phi_minus = (it % 2 == 0)
                                               ? random_standard_aut(rng)
                                               : random_swapped_aut(rng);
            check_roundtrip(-1.0, c, phi_minus, sigma);
            // lambda = +1: the full group.
            check_roundtrip(1.0, c, random_full_aut(rng), sigma);
        }
    }
}

TEST_CASE("documented canonicalize example") {
    const Automorphism phi = Automorphism::standard(1.2, -0.7, 0.9, 1.1);
    const Mat3 Q = canonical_matrix(Tag::Q5, -0.3);
    const BilinearForm m(Mat3(2.0 * phi.M.transpose() * Q * phi.M));
    const NormalFormId nf = canonicalize(0.7, m);
    CHECK(nf.tag == Tag::Q5);
    CHECK(*nf.param == doctest::Approx(-0.3).epsilon(1e-8));
    CHECK(nf.scale == doctest::Approx(2.0).epsilon(1e-8));
}

TEST_CASE("signature gates: Lorentzian vs Riemannian entry points") {
    testutil::Rng rng(5150);
    CHECK_THROWS_AS(canonicalize(0.5, BilinearForm(Mat3::Identity())),
                    NotLorentzianError);
    CHECK_THROWS_AS(
        canonicalize_riemannian(0.5, BilinearForm(canonical_matrix(Tag::Q1))),
        NotLorentzianError);
    CHECK_THROWS_AS(canonicalize(1.5, BilinearForm(canonical_matrix(Tag::Q1))),
                    ParameterOutOfRangeError);

    // Positive definite: Q0 when the derived block diagonalizes, else Q4 r>1.
    const NormalFormId id0 = canonicalize_riemannian(0.4, BilinearForm(Mat3::Identity()));
    CHECK(id0.tag == Tag::Q0);
    CHECK(id0.scale == doctest::Approx(1.0));

    const NormalFormId idneg =
        canonicalize_riemannian(0.4, BilinearForm(Mat3(-Mat3::Identity())));
    CHECK(idneg.tag == Tag::Q0);
    CHECK(idneg.scale == doctest::Approx(-1.0));

    for (int it = 0; it < 50; ++it) {
        Mat3 a = testutil::random_conditioned(rng);
        Mat3 pd = a.transpose() * a;
        const BilinearForm q{pd};
        const NormalFormId nf = canonicalize_riemannian(0.4, q);
        CAPTURE(it);
        REQUIRE((nf.tag == Tag::Q0 || nf.tag == Tag::Q4));
        if (nf.tag == Tag::Q4) CHECK(*nf.param > 1.0);
        CHECK(nf.residual <= 1e-8);
        // At lambda = 1 everything definite collapses to Q0.
        const NormalFormId nf1 = canonicalize_riemannian(1.0, q);
        CHECK(nf1.tag == Tag::Q0);
        CHECK(nf1.residual <= 1e-8);
    }
}

TEST_CASE("negative overall scale for (1,2) inputs") {
    const BilinearForm q(Mat3(-canonical_matrix(Tag::Q1)));
    const NormalFormId nf = canonicalize(0.5, q);
    CHECK(nf.tag == Tag::Q1);
    CHECK(nf.scale == doctest::Approx(-1.0));
    CHECK((nf.phi.M - Mat3::Identity()).norm() <= 1e-12);
}

TEST_CASE("near-threshold case invariants are reported as ambiguous") {
    // Derived-block determinant within a decade of its threshold.
    {
        Mat3 m = canonical_matrix(Tag::Q4, 1.0 - 3e-9);
        CHECK_THROWS_AS(canonicalize(0.3, BilinearForm(m)),
                        NumericallyAmbiguousError);
    }
    // e3 isotropy within a decade of its threshold (Q5 family, s near 0).
    {
        Mat3 m = canonical_matrix(Tag::Q5, 0.0);
        m(2, 2) = 5e-10;
        CHECK_THROWS_AS(canonicalize(0.3, BilinearForm(m)),
                        NumericallyAmbiguousError);
    }
    // Clearly below the threshold: treated as exactly s = 0.
    {
        Mat3 m = canonical_matrix(Tag::Q5, 0.0);
        m(2, 2) = 1e-12;
        const NormalFormId nf = canonicalize(0.3, BilinearForm(m));
        CHECK(nf.tag == Tag::Q5);
        CHECK(*nf.param == 0.0);
    }
    // Clearly above: a genuine small parameter.
    {
        Mat3 m = canonical_matrix(Tag::Q5, 0.0);
        m(2, 2) = 1e-6;
        const NormalFormId nf = canonicalize(0.3, BilinearForm(m));
        CHECK(nf.tag == Tag::Q5);
        CHECK(*nf.param == doctest::Approx(1e-6).epsilon(1e-6));
    }
}

TEST_CASE("orbit_equal distinguishes tags and parameters") {
    const BilinearForm q1(canonical_matrix(Tag::Q1));
    const BilinearForm q2(canonical_matrix(Tag::Q2));
    CHECK(!orbit_equal(0.3, q1, q2));

    const Automorphism phi = Automorphism::standard(0.5, 0.5, 1.3, -0.8);
    const Mat3 Q6a = canonical_matrix(Tag::Q6, 2.0);
    const BilinearForm q6(Q6a);
    const BilinearForm q6m(Mat3(3.0 * phi.M.transpose() * Q6a * phi.M));
    CHECK(orbit_equal(0.3, q6, q6m));
    CHECK(!orbit_equal(0.3, q6, BilinearForm(canonical_matrix(Tag::Q6, 2.5))));

    // lambda = -1 merges Q5(s) with Q4(-s).
    const BilinearForm q5(canonical_matrix(Tag::Q5, 0.3));
    const BilinearForm q4(canonical_matrix(Tag::Q4, -0.3));
    CHECK(orbit_equal(-1.0, q5, q4));
    CHECK(!orbit_equal(0.3, q5, q4));
}

TEST_CASE("limit quotient unit transitions") {
    auto tag_of = [](double lambda, Tag t, std::optional<double> p)
        -> NormalFormId {
        return canonicalize(lambda, BilinearForm(canonical_matrix(t, p)));
    };
    CHECK(tag_of(1.0, Tag::Q7, std::nullopt).tag == Tag::Q1);
    CHECK(tag_of(1.0, Tag::Q4, 0.5).tag == Tag::Q1);
    CHECK(tag_of(1.0, Tag::Q5, 0.7).tag == Tag::Q1);
    CHECK(tag_of(1.0, Tag::Q8, std::nullopt).tag == Tag::Q1);
    CHECK(tag_of(1.0, Tag::Q9, std::nullopt).tag == Tag::Q1);
    CHECK(tag_of(1.0, Tag::Q2, std::nullopt).tag == Tag::Q1);
    CHECK(tag_of(1.0, Tag::Q6, 2.0).tag == Tag::Q3);
    CHECK(tag_of(1.0, Tag::Q10, std::nullopt).tag == Tag::Q11);
    CHECK(tag_of(1.0, Tag::Q12, std::nullopt).tag == Tag::Q11);

    CHECK(tag_of(-1.0, Tag::Q2, std::nullopt).tag == Tag::Q1);
    const NormalFormId n7 = tag_of(-1.0, Tag::Q7, std::nullopt);
    CHECK(n7.tag == Tag::Q4);
    CHECK(*n7.param == 0.0);
    const NormalFormId n8 = tag_of(-1.0, Tag::Q8, std::nullopt);
    CHECK(n8.tag == Tag::Q5);
    CHECK(*n8.param == 0.0);
    const NormalFormId n5 = tag_of(-1.0, Tag::Q5, 0.7);
    CHECK(n5.tag == Tag::Q4);
    CHECK(*n5.param == doctest::Approx(-0.7).epsilon(1e-10));
    CHECK(tag_of(-1.0, Tag::Q12, std::nullopt).tag == Tag::Q11);
    for (const NormalFormId& nf :
         {n7, n8, n5}) CHECK(nf.residual <= 1e-8);
}

TEST_CASE("decision table at lambda = 0") {
    auto v = [](Tag t, std::optional<double> p) {
        NormalFormId nf;
        nf.tag = t;
        nf.param = p;
        return verdict_from_table(0.0, nf);
    };
    // Spacelike center: incomplete through a rest point of the flow.
    for (const auto& [t, p] : std::vector<OrbitCase>{
             {Tag::Q2, std::nullopt}, {Tag::Q3, std::nullopt}, {Tag::Q4, 0.5},
             {Tag::Q5, 0.5}, {Tag::Q6, 2.0}, {Tag::Q7, std::nullopt},
             {Tag::Q10, std::nullopt}, {Tag::Q11, std::nullopt}}) {
        const Verdict w = v(t, p);
        CHECK(w.status == Status::Incomplete);
        CHECK(w.boundedness == Boundedness::NotApplicable);
        CHECK(w.mechanism == Mechanism::Idempotent);
        CHECK(w.citation == "table:h0/center-spacelike");
    }
    // Timelike center: complete with all solutions bounded.
    for (const auto& [t, p] : std::vector<OrbitCase>{{Tag::Q1, std::nullopt},
                                                     {Tag::Q4, -0.5},
                                                     {Tag::Q5, -0.5},
                                                     {Tag::Q8, std::nullopt}}) {
        const Verdict w = v(t, p);
        CHECK(w.status == Status::Complete);
        CHECK(w.boundedness == Boundedness::AllBounded);
        CHECK(w.mechanism == Mechanism::PositiveDefiniteIntegral);
        CHECK(w.citation == "table:h0/center-timelike");
    }
    // Lightlike, non-orthogonal center.
    for (const auto& [t, p] : std::vector<OrbitCase>{
             {Tag::Q4, 0.0}, {Tag::Q5, 0.0}, {Tag::Q9, std::nullopt}}) {
        const Verdict w = v(t, p);
        CHECK(w.status == Status::Incomplete);
        CHECK(w.mechanism == Mechanism::NoIdempotentNullCone);
    }
    // Lightlike, orthogonal center: complete but with unbounded solutions.
    const Verdict w12 = v(Tag::Q12, std::nullopt);
    CHECK(w12.status == Status::Complete);
    CHECK(w12.boundedness == Boundedness::UnboundedExist);
    CHECK(w12.mechanism == Mechanism::ExplicitFlow);
}

TEST_CASE("decision table at interior lambda") {
    auto v = [](double la, Tag t, std::optional<double> p) {
        NormalFormId nf;
        nf.tag = t;
        nf.param = p;
        return verdict_from_table(la, nf);
    };
    const Verdict q8 = v(0.5, Tag::Q8, std::nullopt);
    CHECK(q8.status == Status::Complete);
    CHECK(q8.boundedness == Boundedness::UnboundedExist);
    CHECK(q8.mechanism == Mechanism::PartialInvariantCompactness);

    const Verdict q5c = v(-0.5, Tag::Q5, -0.3);
    CHECK(q5c.status == Status::Complete);
    CHECK(q5c.boundedness == Boundedness::AllBounded);

    for (const auto& [t, p] : std::vector<OrbitCase>{
             {Tag::Q1, std::nullopt}, {Tag::Q2, std::nullopt},
             {Tag::Q3, std::nullopt}, {Tag::Q4, 0.5}, {Tag::Q4, 0.0},
             {Tag::Q4, -0.5}, {Tag::Q5, 0.5}, {Tag::Q6, 2.0},
             {Tag::Q7, std::nullopt}, {Tag::Q10, std::nullopt},
             {Tag::Q11, std::nullopt}, {Tag::Q12, std::nullopt}}) {
        const Verdict w = v(0.5, t, p);
        CHECK(w.status == Status::Incomplete);
        CHECK(w.mechanism == Mechanism::Idempotent);
    }
    // Null cone carries no rest point for s = 0 and Q9.
    CHECK(v(0.5, Tag::Q5, 0.0).mechanism == Mechanism::NoIdempotentNullCone);
    const Verdict q9 = v(0.5, Tag::Q9, std::nullopt);
    CHECK(q9.status == Status::Incomplete);
    CHECK(q9.mechanism == Mechanism::NoIdempotentNullCone);
}

TEST_CASE("decision table at the limits") {
    auto nf = [](Tag t, std::optional<double> p) {
        NormalFormId id;
        id.tag = t;
        id.param = p;
        return id;
    };
    for (Tag t : {Tag::Q1, Tag::Q3, Tag::Q11}) {
        const Verdict w = verdict_from_table(1.0, nf(t, std::nullopt));
        CHECK(w.status == Status::Incomplete);
        CHECK(w.mechanism == Mechanism::Idempotent);
    }
    CHECK_THROWS_AS(verdict_from_table(1.0, nf(Tag::Q2, std::nullopt)),
                    TagInvalidForLambdaError);
    CHECK_THROWS_AS(verdict_from_table(1.0, nf(Tag::Q5, 0.5)),
                    TagInvalidForLambdaError);

    const Verdict m5 = verdict_from_table(-1.0, nf(Tag::Q5, -0.5));
    CHECK(m5.status == Status::Complete);
    CHECK(m5.boundedness == Boundedness::AllBounded);
    CHECK(m5.mechanism == Mechanism::PositiveDefiniteIntegral);

    const Verdict m50 = verdict_from_table(-1.0, nf(Tag::Q5, 0.0));
    CHECK(m50.status == Status::Complete);
    CHECK(m50.boundedness == Boundedness::UnboundedExist);
    CHECK(m50.mechanism == Mechanism::PartialInvariantCompactness);

    const Verdict m9 = verdict_from_table(-1.0, nf(Tag::Q9, std::nullopt));
    CHECK(m9.status == Status::Complete);
    CHECK(m9.boundedness == Boundedness::UnboundedExist);
    CHECK(m9.mechanism == Mechanism::ExplicitFlow);

    for (const auto& [t, p] : std::vector<OrbitCase>{
             {Tag::Q1, std::nullopt}, {Tag::Q3, std::nullopt}, {Tag::Q4, 0.5},
             {Tag::Q4, 0.0}, {Tag::Q6, 2.0}, {Tag::Q10, std::nullopt},
             {Tag::Q11, std::nullopt}}) {
        const Verdict w = verdict_from_table(-1.0, nf(t, p));
        CHECK(w.status == Status::Incomplete);
        CHECK(w.mechanism == Mechanism::Idempotent);
    }
    CHECK_THROWS_AS(verdict_from_table(-1.0, nf(Tag::Q7, std::nullopt)),
                    TagInvalidForLambdaError);
    CHECK_THROWS_AS(verdict_from_table(-1.0, nf(Tag::Q5, 0.5)),
                    TagInvalidForLambdaError);
    CHECK_THROWS_AS(verdict_from_table(0.5, nf(Tag::Q0, std::nullopt)),
                    TagInvalidForLambdaError);
}

TEST_CASE("center/derived record on canonical examples") {
    {
        const auto rec =
            center_derived_classification(BilinearForm(canonical_matrix(Tag::Q12)));
        CHECK(rec.center_char == CausalCharacter::Lightlike);
        CHECK(rec.orthogonal);
        const Verdict w = lambda_zero_rule(rec);
        CHECK(w.status == Status::Complete);
        CHECK(w.boundedness == Boundedness::UnboundedExist);
    }
    {
        const auto rec =
            center_derived_classification(BilinearForm(canonical_matrix(Tag::Q9)));
        CHECK(rec.center_char == CausalCharacter::Lightlike);
        CHECK(!rec.orthogonal);
        CHECK(lambda_zero_rule(rec).status == Status::Incomplete);
        CHECK(lambda_zero_rule(rec).mechanism ==
              Mechanism::NoIdempotentNullCone);
    }
    {
        const auto rec =
            center_derived_classification(BilinearForm(canonical_matrix(Tag::Q1)));
        CHECK(rec.center_char == CausalCharacter::Timelike);
        const Verdict w = lambda_zero_rule(rec);
        CHECK(w.status == Status::Complete);
        CHECK(w.boundedness == Boundedness::AllBounded);
    }
    // Sign normalization: the rule sees -Q1 the same way as Q1.
    {
        const auto rec = center_derived_classification(
            BilinearForm(Mat3(-canonical_matrix(Tag::Q1))));
        CHECK(rec.center_char == CausalCharacter::Timelike);
    }
}

TEST_CASE("lambda = 0: table and center/derived rule agree on random orbits") {
    testutil::Rng rng(424242);
    int checked = 0;
    for (int it = 0; it < 1000; ++it) {
        for (const auto& c : lorentz_cases(rng)) {
            if (checked >= 1000) break;
            const double sigma = rng.sign() * rng.uniform(0.2, 5.0);
            const Automorphism phi = random_standard_aut(rng);
            const Mat3 Q = canonical_matrix(c.tag, c.param);
            const BilinearForm m(Mat3(sigma * phi.M.transpose() * Q * phi.M));
            const Verdict a = verdict_from_table(0.0, canonicalize(0.0, m));
            const Verdict b =
                lambda_zero_rule(center_derived_classification(m));
            CAPTURE(tag_name(c.tag));
            CAPTURE(sigma);
            REQUIRE(a.status == b.status);
            REQUIRE(a.boundedness == b.boundedness);
            REQUIRE(a.mechanism == b.mechanism);
            REQUIRE(a.citation == b.citation);
            ++checked;
        }
    }
    CHECK(checked == 1000);
}

TEST_CASE("verdicts are orbit invariants") {
    testutil::Rng rng(99887);
    const std::vector<double> lambdas = {0.0, 0.45, -0.45, 1.0, -1.0};
    for (int it = 0; it < 40; ++it) {
        for (double lambda : lambdas) {
            for (const auto& c : lorentz_cases(rng)) {
                const Mat3 Q = canonical_matrix(c.tag, c.param);
                Automorphism phi = random_standard_aut(rng);
                if (lambda == 1.0) phi = random_full_aut(rng);
                if (lambda == -1.0 && it % 2) phi = random_swapped_aut(rng);
                const double sigma = rng.uniform(0.2, 5.0);
                const BilinearForm m(
                    Mat3(sigma * phi.M.transpose() * Q * phi.M));
                const Verdict va =
                    verdict_from_table(lambda, canonicalize(lambda, m));
                const Verdict vb = verdict_from_table(
                    lambda, canonicalize(lambda, BilinearForm(Q)));
                CAPTURE(lambda);
                CAPTURE(tag_name(c.tag));
                REQUIRE(va.status == vb.status);
                REQUIRE(va.boundedness == vb.boundedness);
                REQUIRE(va.mechanism == vb.mechanism);
                REQUIRE(va.citation == vb.citation);
            }
        }
    }
}
