#include "cartan/sampling.hpp"

namespace cartan {

std::array<Rational, kNumSymbols> full_assignment(const XPoint &x, const LorentzGroupElement &g0) {
    std::array<Rational, kNumSymbols> v;
    for (int mu = 0; mu < 4; ++mu) v[coordinate_symbol(mu)] = x[mu];
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            v[group_symbol(a, b)] = g0.g(a, b);
            v[group_inverse_symbol(a, b)] = g0.ginv(a, b);
        }
    return v;
}

std::array<Rational, kNumSymbols> base_assignment(const XPoint &x) { return full_assignment(x, LorentzGroupElement{}); }

int Sampler::uniform(int lo, int hi) {
    auto span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<int>(rng_() % span);
}

Rational Sampler::rational(int max_num, int max_den) {
    long n = uniform(-max_num, max_num);
    long d = uniform(1, max_den);
    return Rational(n, d);
}

Rational Sampler::nonzero_rational(int max_num, int max_den) {
    Rational r;
    do r = rational(max_num, max_den);
    while (r.is_zero());
    return r;
}

XPoint Sampler::x_point() { return {rational(), rational(), rational(), rational()}; }

std::array<Rational, kGenerators> Sampler::algebra_params(int max_num, int max_den) {
    std::array<Rational, kGenerators> r;
    for (auto &v : r) v = rational(max_num, max_den);
    return r;
}

Mat4<Rational> Sampler::algebra_element() {
    auto p = algebra_params(5, 4);
    Mat4<Rational> m = Mat4<Rational>::Zero();
    for (int j = 1; j <= kGenerators; ++j) m += p[j - 1] * lorentz_generator(j);
    return m;
}

LorentzGroupElement Sampler::lorentz() {
    for (;;) {
        if (auto g = cayley(algebra_params())) return *g;
    }
}

Mat4<Rational> Sampler::matrix() {
    Mat4<Rational> m;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) m(i, j) = rational();
    return m;
}

ScalarExpr Sampler::polynomial(const PolynomialShape &shape) {
    std::vector<ScalarExpr::Term> terms;
    for (int t = 0; t < shape.terms; ++t) {
        Monomial m{};
        int xd = uniform(0, shape.x_degree);
        for (int k = 0; k < xd; ++k) ++m[coordinate_symbol(uniform(0, 3))];
        int gd = shape.group_degree ? uniform(0, shape.group_degree) : 0;
        for (int k = 0; k < gd; ++k) {
            int a = uniform(0, 3), b = uniform(0, 3);
            ++m[uniform(0, 1) ? group_symbol(a, b) : group_inverse_symbol(a, b)];
        }
        terms.emplace_back(m, nonzero_rational(shape.max_num, shape.max_den));
    }
    return ScalarExpr::from_terms(std::move(terms));
}

Form Sampler::form(const PolynomialShape &shape, int max_terms) {
    Form f;
    int n = uniform(1, max_terms);
    for (int t = 0; t < n; ++t) {
        auto mask = static_cast<GeneratorMask>(uniform(0, (1 << kFormGenerators) - 1));
        f += Form::monomial(mask, polynomial(shape));
    }
    return f;
}

bool equal_by_evaluation(const ScalarExpr &a, const ScalarExpr &b, int samples, std::uint64_t seed) {
    ScalarExpr diff = a - b;
    if (diff.is_zero()) return true;
    if (!diff.depends_on_group()) return false;
    Sampler s(seed);
    for (int k = 0; k < samples; ++k) {
        auto v = full_assignment(s.x_point(), s.lorentz());
        if (!evaluate(diff, v).is_zero()) return false;
    }
    return true;
}

bool equal_by_evaluation(const Form &a, const Form &b, int samples, std::uint64_t seed) {
    Form diff = a - b;
    for (const auto &[mask, c] : diff.terms())
        if (!equal_by_evaluation(c, ScalarExpr(), samples, seed)) return false;
    return true;
}

} // namespace cartan
