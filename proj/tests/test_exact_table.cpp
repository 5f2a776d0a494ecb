#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ealab/algebra.hpp"
#include "ealab/metric.hpp"
#include "ealab/normal_form.hpp"
#include "table_oracle.hpp"

using namespace ealab;

namespace {

const std::vector<Rat> kLambdas = {Rat(-1, 2), Rat(0), Rat(1, 3), Rat(1, 2)};

const std::vector<Tag> kLorentzTags = {
    Tag::Q1, Tag::Q2, Tag::Q3,  Tag::Q4,  Tag::Q5,  Tag::Q6,
    Tag::Q7, Tag::Q8, Tag::Q9, Tag::Q10, Tag::Q11, Tag::Q12};

}  // namespace

TEST_CASE("synthesized geodesic field matches the frozen dictionary exactly") {
    for (const Rat& la : kLambdas) {
        const LieAlgebra3 g = standard_family(FamilyId::h(la));
        REQUIRE(g.exact.has_value());
        for (Tag t : kLorentzTags) {
            for (const auto& param : table_oracle::oracle_params(t)) {
                CAPTURE(tag_name(t));
                CAPTURE(to_double(la));
                const RatMat3 Q = canonical_matrix_exact(t, param);
                const auto got = euler_arnold_field_exact(*g.exact, Q);
                const auto want = table_oracle::expected_field(t, la, param);
                for (int p = 0; p < 3; ++p)
                    for (int i = 0; i < 3; ++i)
                        for (int j = 0; j < 3; ++j) {
                            CAPTURE(p); CAPTURE(i); CAPTURE(j);
                            CHECK(got[p][i][j] == want[p][i][j]);
                        }
            }
        }
    }
}

TEST_CASE("double-precision synthesis agrees with the exact one") {
    for (const Rat& la : kLambdas) {
        const LieAlgebra3 g = standard_family(FamilyId::h(la));
        for (Tag t : kLorentzTags) {
            for (const auto& param : table_oracle::oracle_params(t)) {
                std::optional<double> dparam;
                if (param) dparam = to_double(*param);
                const BilinearForm q(canonical_matrix(t, dparam));
                const QuadraticField F = euler_arnold_field(g, q);
                const auto want = table_oracle::expected_field(t, la, param);
                for (int p = 0; p < 3; ++p) {
                    Mat3 W;
                    for (int i = 0; i < 3; ++i)
                        for (int j = 0; j < 3; ++j)
                            W(i, j) = to_double(want[p][i][j]);
                    CAPTURE(tag_name(t)); CAPTURE(p);
                    CHECK((F.B[p] - W).norm() <= 1e-13 * (1.0 + W.norm()));
                }
            }
        }
    }
}

TEST_CASE("dictionary self-check: fields vanish on nothing but expected") {
    // Spot sanity values: Q1 at lambda = 1/2, v = (1,2,3):
    // F = (-y² + λz², xy, λxz) = (-4 + 4.5, 2, 1.5).
    const LieAlgebra3 g = standard_family(FamilyId::h(Rat(1, 2)));
    const QuadraticField F =
        euler_arnold_field(g, BilinearForm(canonical_matrix(Tag::Q1)));
    const Vec3 v(1, 2, 3);
    const Vec3 got = F.eval(v);
    CHECK(got(0) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(got(1) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(got(2) == doctest::Approx(1.5).epsilon(1e-12));
}
