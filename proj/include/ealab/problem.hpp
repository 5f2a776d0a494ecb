#pragma once
#include <optional>
#include <string>

#include "ealab/algebra.hpp"
#include "ealab/metric.hpp"
#include "ealab/normal_form.hpp"

namespace ealab {

// A parsed problem file: one algebra block and (usually) one metric block.
//
// Accepted syntax is a TOML-like subset, in either section style
//
//     [algebra]
//     family = "h"
//     lambda = 0.5
//
//     [metric]
//     normal_form = "Q5"
//     param = -0.25
//
// or inline-table style
//
//     algebra = { family = "h", lambda = 0.5 }
//     metric  = { matrix = [[1,0,0],[0,0,1],[0,1,-1]] }
//
// Values: numbers, quoted strings, nested arrays (newlines allowed inside
// brackets), inline tables. `#` starts a comment. Unknown keys are rejected.
struct ProblemSpec {
    // algebra: either a named family or a custom structure tensor
    std::optional<std::string> family;      // "h" | "psh" | "e"
    std::optional<double> lambda;           // family "h" (|lambda| <= 1)
    std::optional<double> mu;               // family "e" (mu > 0)
    std::optional<StructureTensor> custom;  // 3x3x3 row-major [k][i][j]

    // metric: either an explicit matrix or a canonical representative
    std::optional<Mat3> matrix;
    std::optional<Tag> normal_form;
    std::optional<double> param;  // r / s / t for Q4 / Q5 / Q6

    bool has_algebra() const { return family.has_value() || custom.has_value(); }
    bool has_metric() const { return matrix.has_value() || normal_form.has_value(); }
};

// Throws ParseError (with a line number) on malformed input, unknown keys,
// missing required keys, or shape errors in the tensor / matrix literals.
ProblemSpec parse_problem(const std::string& text);

// Reads the file and parses it. Throws ParseError on I/O failure.
ProblemSpec load_problem(const std::string& path);

// Instantiates the algebra (validates family parameters, antisymmetry and
// Jacobi for custom tensors). Exact rational shadows are attached when the
// family parameter is an exact decimal. Throws ParseError when the spec has
// no algebra block.
LieAlgebra3 build_algebra(const ProblemSpec& p);

// Instantiates the metric. Throws ParseError when the spec has no metric
// block; parameter errors surface as ParameterOutOfRangeError.
BilinearForm build_metric(const ProblemSpec& p);

}  // namespace ealab
