#include "cartan/lorentz.hpp"

namespace cartan {

int metric(int a, int b) {
    if (a != b) return 0;
    return a == 0 ? 1 : -1;
}

const Mat4<Rational> &metric_matrix() {
    static const Mat4<Rational> h = [] {
        Mat4<Rational> m = Mat4<Rational>::Zero();
        for (int a = 0; a < 4; ++a) m(a, a) = Rational(metric(a, a));
        return m;
    }();
    return h;
}

int permutation_sign(int a, int b, int c, int d) {
    int p[4] = {a, b, c, d};
    for (int i = 0; i < 4; ++i) {
        if (p[i] < 0 || p[i] > 3) return 0;
        for (int j = 0; j < i; ++j)
            if (p[i] == p[j]) return 0;
    }
    int inv = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (p[i] > p[j]) ++inv;
    return inv % 2 ? -1 : 1;
}

int epsilon_lower(int a, int b, int c, int d) { return permutation_sign(a, b, c, d); }

int epsilon_mixed(int a, int b, int c, int d) { return permutation_sign(a, b, c, d) * metric(d, d); }

int epsilon_upper(int a, int b, int c, int d) {
    return permutation_sign(a, b, c, d) * metric(a, a) * metric(b, b) * metric(c, c) * metric(d, d);
}

int generator_from_alias(int i) {
    if (i >= 4 && i <= 9) return i - 3;
    throw InvalidInput("generator alias out of range 4..9: " + std::to_string(i));
}

namespace {
std::array<Mat4<Rational>, kGenerators> make_generators() {
    std::array<Mat4<Rational>, kGenerators> l;
    for (auto &m : l) m = Mat4<Rational>::Zero();
    // rotations (J_i)^j_k = -epsilon_{ijk}
    l[0](2, 3) = -1, l[0](3, 2) = 1;
    l[1](3, 1) = -1, l[1](1, 3) = 1;
    l[2](1, 2) = -1, l[2](2, 1) = 1;
    // boosts
    for (int i = 1; i <= 3; ++i) l[2 + i](0, i) = 1, l[2 + i](i, 0) = 1;
    return l;
}

const std::array<Mat4<Rational>, kGenerators> &generators() {
    static const auto l = make_generators();
    return l;
}

using StructureTable = std::array<std::array<std::array<Rational, kGenerators>, kGenerators>, kGenerators>;

StructureTable make_structure_constants() {
    StructureTable c;
    for (int i = 0; i < kGenerators; ++i)
        for (int j = 0; j < kGenerators; ++j) {
            auto coords = algebra_coordinates(bracket(generators()[i], generators()[j]));
            for (int k = 0; k < kGenerators; ++k) c[k][i][j] = coords[k];
        }
    return c;
}
} // namespace

const Mat4<Rational> &lorentz_generator(int j) {
    if (j < 1 || j > kGenerators) throw InvalidInput("generator index out of range: " + std::to_string(j));
    return generators()[j - 1];
}

const Rational &structure_constant(int k, int i, int j) {
    static const StructureTable c = make_structure_constants();
    return c[k - 1][i - 1][j - 1];
}

bool in_lorentz_algebra(const Mat4<Rational> &x) {
    const auto &h = metric_matrix();
    Mat4<Rational> s = x.transpose() * h + h * x;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            if (!s(a, b).is_zero()) return false;
    return true;
}

bool in_lorentz_group(const Mat4<Rational> &g) {
    const auto &h = metric_matrix();
    return Mat4<Rational>(g.transpose() * h * g) == h;
}

std::array<Rational, kGenerators> algebra_coordinates(const Mat4<Rational> &x) {
    if (!in_lorentz_algebra(x)) throw InvalidInput("matrix is not in the Lorentz algebra");
    std::array<Rational, kGenerators> r{x(3, 2), x(1, 3), x(2, 1), x(0, 1), x(0, 2), x(0, 3)};
    return r;
}

PoincareElement<Rational> poincare_basis(int i) {
    PoincareElement<Rational> e;
    if (i < 4)
        e.trans(i) = 1;
    else
        e.rot = lorentz_generator(i - 3);
    return e;
}

PoincareDual<Rational> poincare_dual_basis(int i) {
    // The rotation Gram matrix of l_1..l_6 under the half Frobenius pairing is the identity.
    PoincareDual<Rational> d;
    if (i < 4)
        d.trans_dual(i) = 1;
    else
        d.rot_dual = lorentz_generator(i - 3);
    return d;
}

std::optional<Mat4<Rational>> inverse4(const Mat4<Rational> &m) {
    Rational det = determinant4(m);
    if (det.is_zero()) return std::nullopt;
    Mat4<Rational> adj = adjugate4(m);
    Rational inv = Rational(1) / det;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) adj(i, j) *= inv;
    return adj;
}

std::optional<LorentzGroupElement> cayley(const std::array<Rational, kGenerators> &r) {
    Mat4<Rational> x = Mat4<Rational>::Zero();
    for (int j = 0; j < kGenerators; ++j) x += r[j] * generators()[j];
    Mat4<Rational> id = Mat4<Rational>::Identity();
    auto plus_inv = inverse4(id + x);
    auto minus_inv = inverse4(id - x);
    if (!plus_inv || !minus_inv) return std::nullopt;
    LorentzGroupElement e;
    e.g = (id - x) * *plus_inv;
    e.ginv = (id + x) * *minus_inv;
    return e;
}

ScalarExpr group_derivative(const ScalarExpr &f, int j) {
    const Mat4<Rational> &l = lorentz_generator(j);
    std::vector<ScalarExpr::Term> out;
    for (const auto &[mono, coef] : f.terms()) {
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b) {
                int sg = group_symbol(a, b);
                if (mono[sg]) {
                    // d/dg^a_b times (g l)^a_b = sum_c g^a_c l^c_b
                    for (int c = 0; c < 4; ++c) {
                        if (l(c, b).is_zero()) continue;
                        Monomial m = mono;
                        --m[sg];
                        ++m[group_symbol(a, c)];
                        out.emplace_back(m, coef * Rational(static_cast<long>(mono[sg])) * l(c, b));
                    }
                }
                int sb = group_inverse_symbol(a, b);
                if (mono[sb]) {
                    // -(l gbar)^a_b = -sum_c l^a_c gbar^c_b
                    for (int c = 0; c < 4; ++c) {
                        if (l(a, c).is_zero()) continue;
                        Monomial m = mono;
                        --m[sb];
                        ++m[group_inverse_symbol(c, b)];
                        out.emplace_back(m, -(coef * Rational(static_cast<long>(mono[sb])) * l(a, c)));
                    }
                }
            }
    }
    return ScalarExpr::from_terms(std::move(out));
}

std::array<std::optional<Rational>, kNumSymbols> group_assignment(const LorentzGroupElement &g0) {
    std::array<std::optional<Rational>, kNumSymbols> v;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            v[group_symbol(a, b)] = g0.g(a, b);
            v[group_inverse_symbol(a, b)] = g0.ginv(a, b);
        }
    return v;
}

ScalarExpr at_group(const ScalarExpr &f, const LorentzGroupElement &g0) {
    if (!f.depends_on_group()) return f;
    auto v = group_assignment(g0);
    return substitute(f, v);
}

bool epsilon_equivariant(const Mat4<Rational> &g, const Mat4<Rational> &ginv) {
    for (int a = 0; a < 4; ++a)
        for (int b2 = 0; b2 < 4; ++b2)
            for (int c2 = 0; c2 < 4; ++c2)
                for (int d2 = 0; d2 < 4; ++d2) {
                    Rational lhs(0), rhs(0);
                    for (int b = 0; b < 4; ++b)
                        for (int c = 0; c < 4; ++c)
                            for (int d = 0; d < 4; ++d) {
                                int e = epsilon_mixed(a, b, c, d);
                                if (e) lhs += Rational(e) * ginv(b, b2) * ginv(c, c2) * g(d2, d);
                            }
                    for (int a2 = 0; a2 < 4; ++a2) {
                        int e = epsilon_mixed(a2, b2, c2, d2);
                        if (e) rhs += Rational(e) * g(a2, a);
                    }
                    if (lhs != rhs) return false;
                }
    return true;
}

bool epsilon_equivariant(const Mat4<Rational> &g) {
    auto ginv = inverse4(g);
    return ginv && epsilon_equivariant(g, *ginv);
}

Mat4<Rational> evaluate(const Mat4<ScalarExpr> &m, std::span<const Rational, kNumSymbols> values) {
    Mat4<Rational> r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r(i, j) = evaluate(m(i, j), values);
    return r;
}

} // namespace cartan
