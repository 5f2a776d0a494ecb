#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>

#include <boost/rational.hpp>

#include "ealab/errors.hpp"

namespace ealab {

// Exact arithmetic used by the symbolic field-synthesis path.  All quantities
// that reach it are small fractions (structure constants, normal-form entries,
// family parameters), so a 64-bit rational is plenty.
using Rat = boost::rational<long long>;

using RatVec3 = std::array<Rat, 3>;
using RatMat3 = std::array<std::array<Rat, 3>, 3>;

inline double to_double(const Rat& r) {
    return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

// Accepts "p/q", integers, and finite decimals ("-0.25" -> -1/4).
std::optional<Rat> parse_rational(const std::string& text);

// Renders "p" or "p/q" with q > 0.
std::string to_string(const Rat& r);

// --- small exact linear algebra ------------------------------------------------

RatMat3 rat_identity();
RatMat3 rat_mul(const RatMat3& a, const RatMat3& b);
RatVec3 rat_mul(const RatMat3& a, const RatVec3& v);
RatMat3 rat_transpose(const RatMat3& a);
Rat rat_det(const RatMat3& a);
// Throws SingularMatrixError on zero determinant.
RatMat3 rat_inverse(const RatMat3& a);

} // namespace ealab
