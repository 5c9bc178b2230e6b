#include "doctest.h"

#include "cartan/lorentz.hpp"
#include "cartan/sampling.hpp"

using namespace cartan;

namespace {
PoincareElement<Rational> basis(int i) { return poincare_basis(i); }

Rational lowered_entry(const Mat4<Rational> &x, int a, int b) {
    // x^{ab} = x^a_{b'} h^{b'b}
    return x(a, b) * Rational(metric(b, b));
}
} // namespace

TEST_CASE("generators are antisymmetric after raising and independent") {
    for (int j = 1; j <= 6; ++j) {
        const auto &l = lorentz_generator(j);
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b) CHECK((lowered_entry(l, a, b) + lowered_entry(l, b, a)).is_zero());
        auto c = algebra_coordinates(l);
        for (int k = 0; k < 6; ++k) CHECK(c[k] == Rational(k == j - 1 ? 1 : 0));
    }
}

TEST_CASE("rotation brackets") {
    Mat4<Rational> c12 = bracket(lorentz_generator(1), lorentz_generator(2));
    // J_i with (J_i)^j_k = -eps_{ijk} satisfy [J_1, J_2] = J_3.
    CHECK(c12 == lorentz_generator(3));
}

TEST_CASE("structure constants reconstruct commutators") {
    for (int i = 1; i <= 6; ++i)
        for (int j = 1; j <= 6; ++j) {
            Mat4<Rational> sum = Mat4<Rational>::Zero();
            for (int k = 1; k <= 6; ++k) {
                sum += structure_constant(k, i, j) * lorentz_generator(k);
                CHECK(structure_constant(k, i, j) == -structure_constant(k, j, i));
            }
            Mat4<Rational> direct = lorentz_generator(i) * lorentz_generator(j) - lorentz_generator(j) * lorentz_generator(i);
            CHECK(sum == direct);
        }
}

TEST_CASE("Poincare bracket") {
    for (int i = 0; i < 10; ++i) {
        auto z = bracket(basis(i), basis(i));
        CHECK(z.rot == Mat4<Rational>::Zero());
        CHECK(z.trans == Vec4<Rational>::Zero());
    }
    CHECK(bracket(basis(0), basis(3)).trans == Vec4<Rational>::Zero());
    for (int i = 0; i < 10; ++i)
        for (int j = 0; j < 10; ++j)
            for (int k = 0; k < 10; ++k) {
                auto a = bracket(basis(i), bracket(basis(j), basis(k)));
                auto b = bracket(basis(j), bracket(basis(k), basis(i)));
                auto c = bracket(basis(k), bracket(basis(i), basis(j)));
                CHECK(Mat4<Rational>(a.rot + b.rot + c.rot) == Mat4<Rational>::Zero());
                CHECK(Vec4<Rational>(a.trans + b.trans + c.trans) == Vec4<Rational>::Zero());
            }
}

TEST_CASE("coadjoint pairing property on all basis triples") {
    for (int i = 0; i < 10; ++i)
        for (int l = 0; l < 10; ++l) {
            auto lam = poincare_dual_basis(l);
            CHECK(pairing(lam, basis(i)) == Rational(i == l ? 1 : 0));
            for (int k = 0; k < 10; ++k)
                CHECK(pairing(coadjoint(basis(i), lam), basis(k)) == pairing(lam, bracket(basis(i), basis(k))));
        }
    PoincareElement<Rational> zero;
    auto r = coadjoint(zero, poincare_dual_basis(5));
    CHECK(r.rot_dual == Mat4<Rational>::Zero());
}

TEST_CASE("coadjoint on a pure translation dual only feeds the translation slot through xi^a_b lambda_a") {
    PoincareDual<Rational> lam;
    lam.trans_dual << 1, 2, 3, 4;
    PoincareElement<Rational> xi;
    xi.rot = lorentz_generator(4) + lorentz_generator(2);
    auto r = coadjoint(xi, lam);
    for (int b = 0; b < 4; ++b) {
        Rational expect(0);
        for (int a = 0; a < 4; ++a) expect += xi.rot(a, b) * lam.trans_dual(a);
        CHECK(r.trans_dual(b) == expect);
    }
    CHECK(r.rot_dual == Mat4<Rational>::Zero());
}

TEST_CASE("Cayley samples are exact Lorentz elements") {
    auto id = cayley({0, 0, 0, 0, 0, 0});
    REQUIRE(id);
    CHECK(id->g == Mat4<Rational>::Identity());
    Sampler s(5);
    for (int k = 0; k < 50; ++k) {
        auto g = s.lorentz();
        CHECK(in_lorentz_group(g.g));
        CHECK(determinant4(g.g) == Rational(1));
        CHECK(Mat4<Rational>(g.g * g.ginv) == Mat4<Rational>::Identity());
    }
}

TEST_CASE("adjoint action") {
    Sampler s(8);
    auto g = s.lorentz();
    for (int i = 0; i < 10; ++i) {
        auto x = basis(i);
        LorentzGroupElement id;
        CHECK(adjoint(id.g, id.ginv, x).rot == x.rot);
        auto y = adjoint(g.g, g.ginv, x);
        CHECK(in_lorentz_algebra(y.rot));
        auto back = adjoint(g.ginv, g.g, y);
        CHECK(back.rot == x.rot);
        CHECK(back.trans == x.trans);
    }
}

TEST_CASE("group derivative") {
    CHECK(group_derivative(ScalarExpr(5), 3).is_zero());
    CHECK(group_derivative(ScalarExpr::x(1), 3).is_zero());
    for (int j = 1; j <= 6; ++j)
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b) {
                ScalarExpr contraction;
                for (int c = 0; c < 4; ++c) contraction += ScalarExpr::g(a, c) * ScalarExpr::gbar(c, b);
                CHECK(group_derivative(contraction, j).is_zero());
                LorentzGroupElement id;
                auto v = full_assignment({0, 0, 0, 0}, id);
                CHECK(evaluate(group_derivative(ScalarExpr::g(a, b), j), v) == lorentz_generator(j)(a, b));
            }
}

TEST_CASE("group derivatives commute like the algebra") {
    Sampler s(21);
    ScalarExpr f = s.polynomial({1, 3, 5});
    for (int i = 1; i <= 6; ++i)
        for (int j = 1; j <= 6; ++j) {
            ScalarExpr lhs = group_derivative(group_derivative(f, j), i) - group_derivative(group_derivative(f, i), j);
            ScalarExpr rhs;
            for (int k = 1; k <= 6; ++k) rhs += group_derivative(f, k) * structure_constant(k, i, j);
            CHECK(lhs == rhs);
        }
}

TEST_CASE("epsilon equivariance") {
    CHECK(epsilon_equivariant(Mat4<Rational>::Identity()));
    Sampler s(13);
    for (int k = 0; k < 5; ++k) CHECK(epsilon_equivariant(s.lorentz().g));
    Mat4<Rational> d = Mat4<Rational>::Identity();
    d(0, 0) = 2;
    CHECK_FALSE(epsilon_equivariant(d));
    CHECK_FALSE(in_lorentz_group(d));
    CHECK(epsilon_lower(0, 1, 2, 3) == 1);
    CHECK(epsilon_upper(0, 1, 2, 3) == -1);
    CHECK(epsilon_mixed(0, 1, 2, 3) == -1);
    CHECK(epsilon_mixed(1, 2, 3, 0) == -1);
    CHECK(generator_from_alias(4) == 1);
    CHECK(generator_from_alias(9) == 6);
    CHECK_THROWS_AS(generator_from_alias(3), InvalidInput);
}
