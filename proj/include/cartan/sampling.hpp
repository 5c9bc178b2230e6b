#pragma once

#include "cartan/form.hpp"
#include "cartan/lorentz.hpp"

#include <array>
#include <cstdint>
#include <random>

namespace cartan {

inline constexpr int kDefaultEvaluationSamples = 16;

using XPoint = std::array<Rational, 4>;

/// Values for every symbol: coordinates from x, group symbols from g0 and its inverse.
std::array<Rational, kNumSymbols> full_assignment(const XPoint &x, const LorentzGroupElement &g0);
/// Coordinates only; group symbols set to the identity.
std::array<Rational, kNumSymbols> base_assignment(const XPoint &x);

struct PolynomialShape {
    int x_degree = 2;
    int group_degree = 0;
    int terms = 4;
    int max_num = 5;
    int max_den = 4;
};

/// Seeded source of exact random objects. Bounded draws use plain modular
/// reduction of mt19937_64 output so sequences are identical across standard libraries.
class Sampler {
  public:
    explicit Sampler(std::uint64_t seed) : rng_(seed) {}

    std::uint64_t next() { return rng_(); }
    int uniform(int lo, int hi);
    /// n/d with |n| <= max_num, 1 <= d <= max_den.
    Rational rational(int max_num = 5, int max_den = 4);
    Rational nonzero_rational(int max_num = 5, int max_den = 4);
    XPoint x_point();
    std::array<Rational, kGenerators> algebra_params(int max_num = 2, int max_den = 5);
    Mat4<Rational> algebra_element();
    /// Exact Lorentz element from the Cayley transform of a random small algebra element.
    LorentzGroupElement lorentz();
    Mat4<Rational> matrix();
    ScalarExpr polynomial(const PolynomialShape &shape);
    /// Random form with terms in every exterior degree up to max_terms.
    Form form(const PolynomialShape &shape, int max_terms = 6);

  private:
    std::mt19937_64 rng_;
};

/// Schwartz-Zippel style identity test: exact comparison when no group symbols
/// occur, otherwise exact evaluation at `samples` random (x, g) pairs.
bool equal_by_evaluation(const ScalarExpr &a, const ScalarExpr &b, int samples = kDefaultEvaluationSamples,
                         std::uint64_t seed = 1);
bool equal_by_evaluation(const Form &a, const Form &b, int samples = kDefaultEvaluationSamples, std::uint64_t seed = 1);

} // namespace cartan
