#pragma once

#include "cartan/rational.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace cartan {

/// Symbol layout of the polynomial ring: x^0..x^3, then g^a_b (row major), then the
/// formal inverse gbar^a_b. gbar is a separate indeterminate; relations g*gbar = 1
/// only hold after substituting a concrete group element.
inline constexpr int kCoordinateSymbols = 4;
inline constexpr int kNumSymbols = 36;

constexpr int coordinate_symbol(int mu) { return mu; }
constexpr int group_symbol(int a, int b) { return 4 + 4 * a + b; }
constexpr int group_inverse_symbol(int a, int b) { return 20 + 4 * a + b; }
constexpr bool is_coordinate_symbol(int s) { return s < 4; }

std::string symbol_name(int s);

using Monomial = std::array<std::uint8_t, kNumSymbols>;

int total_degree(const Monomial &m);
int group_degree(const Monomial &m);

/// Sparse polynomial with exact rational coefficients. Terms are sorted by monomial
/// and never carry a zero coefficient, so structural equality is polynomial equality.
class ScalarExpr {
  public:
    using Term = std::pair<Monomial, Rational>;

    ScalarExpr() = default;
    ScalarExpr(int c) : ScalarExpr(Rational(c)) {}
    ScalarExpr(const Rational &c);

    static ScalarExpr variable(int symbol, unsigned power = 1);
    static ScalarExpr x(int mu) { return variable(coordinate_symbol(mu)); }
    static ScalarExpr g(int a, int b) { return variable(group_symbol(a, b)); }
    static ScalarExpr gbar(int a, int b) { return variable(group_inverse_symbol(a, b)); }
    /// Build from raw terms; merges duplicates and drops zeros.
    static ScalarExpr from_terms(std::vector<Term> terms);

    const std::vector<Term> &terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    /// Constant term (zero if absent).
    Rational constant_term() const;
    int degree() const;
    int group_degree() const;
    bool depends_on_group() const;

    ScalarExpr operator-() const;
    ScalarExpr &operator+=(const ScalarExpr &o);
    ScalarExpr &operator-=(const ScalarExpr &o);
    ScalarExpr &operator*=(const ScalarExpr &o);
    ScalarExpr &operator*=(const Rational &c);

    friend ScalarExpr operator+(ScalarExpr a, const ScalarExpr &b) { return a += b; }
    friend ScalarExpr operator-(ScalarExpr a, const ScalarExpr &b) { return a -= b; }
    friend ScalarExpr operator*(const ScalarExpr &a, const ScalarExpr &b);
    friend ScalarExpr operator*(ScalarExpr a, const Rational &c) { return a *= c; }
    friend ScalarExpr operator*(const Rational &c, ScalarExpr a) { return a *= c; }
    friend bool operator==(const ScalarExpr &a, const ScalarExpr &b) { return a.terms_ == b.terms_; }

    /// Multiply by a single monomial term.
    ScalarExpr times_term(const Monomial &m, const Rational &c) const;

    std::string to_string() const;

  private:
    std::vector<Term> terms_;
};

/// Partial derivative with respect to any symbol.
ScalarExpr diff(const ScalarExpr &f, int symbol);
inline ScalarExpr diff_x(const ScalarExpr &f, int mu) { return diff(f, coordinate_symbol(mu)); }

/// Full evaluation. `values` must cover all 36 symbols.
Rational evaluate(const ScalarExpr &f, std::span<const Rational, kNumSymbols> values);

/// Generic evaluation into any ring T that is constructible from Rational.
template <class T> T evaluate_in(const ScalarExpr &f, std::span<const T, kNumSymbols> values) {
    T acc(Rational(0));
    for (const auto &[mono, coef] : f.terms()) {
        T term(coef);
        for (int s = 0; s < kNumSymbols; ++s)
            for (int k = 0; k < mono[s]; ++k) term = term * values[s];
        acc = acc + term;
    }
    return acc;
}

/// Substitute the symbols that have a value; others stay symbolic.
ScalarExpr substitute(const ScalarExpr &f, std::span<const std::optional<Rational>, kNumSymbols> values);

/// Apply `fn` to every symbol occurrence: f(s1..) -> product of images. Images are polynomials.
ScalarExpr compose(const ScalarExpr &f, const std::function<ScalarExpr(int)> &image);

std::ostream &operator<<(std::ostream &os, const ScalarExpr &e);

} // namespace cartan

namespace Eigen {
template <> struct NumTraits<cartan::ScalarExpr> : GenericNumTraits<cartan::ScalarExpr> {
    using Real = cartan::ScalarExpr;
    using NonInteger = cartan::ScalarExpr;
    using Nested = cartan::ScalarExpr;
    using Literal = cartan::ScalarExpr;
    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 1,
        AddCost = 50,
        MulCost = 200
    };
    static inline Real epsilon() { return Real(0); }
    static inline Real dummy_precision() { return Real(0); }
    static inline int digits10() { return 0; }
};
} // namespace Eigen
