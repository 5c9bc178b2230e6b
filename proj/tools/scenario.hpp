#pragma once

#include "cartan/harness.hpp"
#include "cartan/multisymplectic.hpp"

#include "json.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cartan::cli {

using Json = nlohmann::ordered_json;

/// Malformed scenario text; `where` names the entry and column.
class ParseError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct Scenario {
    std::string name = "unnamed";
    TetradField tetrad;
    ConnectionField connection;
    /// Bundle momenta psi (x-dependent only; group dependence is never given in a scenario).
    MomentumField momenta;
    std::vector<XPoint> points;
    /// Cayley parameters r_1..r_6; the identity is always evaluated first.
    std::vector<std::array<Rational, kGenerators>> group_samples;
    std::string filter;
    std::optional<std::string> output;
    /// The residual tables must vanish for the run to pass.
    bool expect_zero_residuals = false;
};

/// Polynomial in x0..x3 with rational coefficients: + - * ^, parentheses, "3/4" literals.
ScalarExpr parse_polynomial(const std::string &text, const std::string &where = "polynomial");

/// Throws ParseError for shape/type problems, ValidationError for invariant violations.
Scenario parse_scenario(const Json &j);
/// A file path, "preset:NAME", or a bare preset name when no such file exists.
Scenario load_scenario(const std::string &spec);

std::vector<std::string> preset_names();
/// minkowski, constant-connection, random-poly(degree,seed), vacuum-check.
Scenario preset(const std::string &name);

/// Connection antisymmetry, tetrad nondegeneracy at every point, Cayley samples, momentum degree.
void validate(const Scenario &s);

Json scenario_to_json(const Scenario &s);

struct ReportOptions {
    bool tensors = true;
    bool residuals = true;
    bool checks = true;
    std::uint64_t seed = 1;
    std::string filter;
};

/// Top-level keys: scenario, tensors, residuals, checks, verdict. Rationals are "n/d" strings.
Json build_report(const Scenario &s, const ReportOptions &opt);
/// Human-readable rendering; every number is the same string as in the JSON.
std::string render_text(const Json &report);
/// 0 when the verdict is pass, 1 otherwise.
int exit_status(const Json &report);

} // namespace cartan::cli
