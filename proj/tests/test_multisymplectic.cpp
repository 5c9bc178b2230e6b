#include "doctest.h"

#include "cartan/multisymplectic.hpp"
#include "cartan/oracle.hpp"

using namespace cartan;
namespace o = cartan::oracle;

namespace {
const std::vector<XPoint> kPoints = {XPoint{0, 0, 0, 0}, XPoint{1, Rational(1, 2), -1, Rational(1, 3)},
                                     XPoint{Rational(-2, 3), 1, Rational(1, 4), 2}};

FieldConfig sample_field(std::uint64_t seed, int degree = 2) {
    Sampler s(seed);
    return random_field(s, {degree, 3, 1, 3}, kPoints);
}

FieldConfig constant_connection() {
    FieldConfig f;
    for (int j = 1; j <= kGenerators; ++j)
        for (int mu = 0; mu < 4; ++mu) {
            Rational c(j + mu % 3 - 2, 1 + mu);
            const auto &l = lorentz_generator(j);
            for (int a = 0; a < 4; ++a)
                for (int b = 0; b < 4; ++b) f.connection.A[mu](a, b) += ScalarExpr(c * l(a, b));
        }
    return f;
}

Form conjugate(const Tensor<Form, 4, 4> &F, const LorentzGroupElement &g, int c, int d) {
    Form out;
    for (int x = 0; x < 4; ++x)
        for (int y = 0; y < 4; ++y) {
            Rational k = g.ginv(c, x) * g.g(y, d);
            if (!k.is_zero()) out += F(x, y) * ScalarExpr(k);
        }
    return out;
}

o::DenseTensor dense(const Mat4<Rational> &m) {
    o::DenseTensor t(2);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) t.at({i, j}) = m(i, j);
    return t;
}

o::DenseTensor permutation_table() {
    o::DenseTensor p(4);
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            for (int c = 0; c < 4; ++c)
                for (int d = 0; d < 4; ++d) {
                    // [abcd] = eps_{abcd} with all indices down
                    p.at({a, b, c, d}) = o::epsilon_lower().at({a, b, c, d});
                }
    return p;
}

// F^{ab}_{rs} in coordinates at x from the component formula.
o::DenseTensor coordinate_curvature_up(const ConnectionField &A, const XPoint &x) {
    auto v = base_assignment(x);
    o::DenseTensor t(4);
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            for (int r = 0; r < 4; ++r)
                for (int s = 0; s < 4; ++s) {
                    ScalarExpr f = diff_x(A.A[s](a, b), r) - diff_x(A.A[r](a, b), s);
                    for (int k = 0; k < 4; ++k) f += A.A[r](a, k) * A.A[s](k, b) - A.A[s](a, k) * A.A[r](k, b);
                    t.at({a, b, r, s}) = evaluate(f, v) * Rational(o::metric().at({b, b}));
                }
    return t;
}

PhasePoint random_phase_point(Sampler &s, bool equivariant_jets = true) {
    PhasePoint pt;
    pt.g = s.lorentz();
    for (int mu = 0; mu < 4; ++mu) {
        pt.eta0[mu] = s.algebra_element();
        for (int c = 0; c < 4; ++c) pt.eta1[mu](c) = s.rational();
        for (int nu = 0; nu < 4; ++nu) {
            pt.eta0_x[mu][nu] = s.matrix();
            for (int c = 0; c < 4; ++c) pt.eta1_x[mu][nu](c) = s.rational();
        }
        for (int j = 0; j < kGenerators; ++j) {
            pt.psi0_g[mu][j] = s.matrix();
            for (int c = 0; c < 4; ++c) pt.psi1_g[mu][j](c) = s.rational();
        }
    }
    pt.varsigma = s.rational();
    if (equivariant_jets) set_equivariant_jets(pt);
    return pt;
}

MomentumField random_momenta(Sampler &s) {
    MomentumField m;
    PolynomialShape shape{1, 2, 2, 3, 2};
    for (int k = 0; k < 12; ++k) {
        int d = s.uniform(0, 3), c = s.uniform(0, 3), mu = s.uniform(0, 3), j = s.uniform(0, 5);
        m.psi0(d, c, mu, j) = s.polynomial(shape);
        m.psi1(c, mu, j) = s.polynomial(shape);
    }
    return m;
}
} // namespace

TEST_CASE("lift at the fibre origin reproduces the base fields plus Maurer-Cartan part") {
    auto f = sample_field(11);
    auto l = lift(f.tetrad, f.connection);
    const LorentzGroupElement id;
    for (int a = 0; a < 4; ++a)
        for (int mu = 0; mu < 4; ++mu) {
            CHECK(at_group(component(l.alpha[a], VectorIndex::base(mu)), id) == f.tetrad.e(a, mu));
            for (int b = 0; b < 4; ++b)
                CHECK(at_group(component(l.omega(a, b), VectorIndex::base(mu)), id) == f.connection.A[mu](a, b));
        }
    for (int j = 1; j <= kGenerators; ++j)
        for (int a = 0; a < 4; ++a) {
            CHECK(component(l.alpha[a], VectorIndex::vertical(j)).is_zero());
            for (int b = 0; b < 4; ++b)
                CHECK(component(l.omega(a, b), VectorIndex::vertical(j)) == ScalarExpr(lorentz_generator(j)(a, b)));
        }
}

TEST_CASE("normalization") {
    auto f = sample_field(12);
    auto l = lift(f.tetrad, f.connection);
    CHECK(check_normalization(l).passed());

    auto no_mc = l;
    for (int c = 0; c < 4; ++c)
        for (int d = 0; d < 4; ++d) {
            Form base;
            for (int mu = 0; mu < 4; ++mu) base += Form::dx(mu) * component(l.omega(c, d), VectorIndex::base(mu));
            no_mc.omega(c, d) = base;
        }
    auto r = check_normalization(no_mc);
    CHECK_FALSE(r.passed());
    for (int i = 0; i < kGenerators; ++i) {
        CHECK(r.alpha[i]);
        CHECK_FALSE(r.omega[i]);
    }

    auto bad_alpha = l;
    bad_alpha.alpha[2] += Form::gamma(5) * ScalarExpr::x(1);
    auto r2 = check_normalization(bad_alpha);
    CHECK_FALSE(r2.alpha[4]);
    CHECK(r2.alpha[0]);
}

TEST_CASE("lift output is equivariant; an explicit g-dependence is caught") {
    auto f = sample_field(13);
    auto l = lift(f.tetrad, f.connection);
    auto rep = check_equivariance(l);
    CHECK(rep.passed());
    for (const auto &v : rep.omega_residual) CHECK(v.is_zero());

    auto bad = l;
    for (int c = 0; c < 4; ++c) bad.alpha[c] += Form::dx(0) * (ScalarExpr::g(c, 0) * ScalarExpr::x(0));
    auto r = check_equivariance(bad);
    CHECK_FALSE(r.alpha_zero);
    CHECK(r.omega_zero);
    // residual = rho_j(g^c_0 x0) + l_j g^.._0 x0 = (g l_j)^c_0 x0 + (l_j g)^c_0 x0
    for (int j = 1; j <= kGenerators; ++j) {
        const auto &lj = lorentz_generator(j);
        for (int c = 0; c < 4; ++c) {
            ScalarExpr expect;
            for (int k = 0; k < 4; ++k) {
                expect += ScalarExpr::g(c, k) * ScalarExpr(lj(k, 0)) * ScalarExpr::x(0);
                expect += ScalarExpr(lj(c, k)) * ScalarExpr::g(k, 0) * ScalarExpr::x(0);
            }
            CHECK(r.alpha_residual(c, 0, j - 1) == expect);
            CHECK(r.alpha_residual(c, 1, j - 1).is_zero());
        }
    }
}

TEST_CASE("lifted curvature is the conjugated base curvature") {
    auto f = sample_field(14);
    auto l = lift(f.tetrad, f.connection);
    auto F = curvature(f.connection);
    Sampler s(99);
    for (int k = 0; k < 3; ++k) {
        auto g = s.lorentz();
        auto Omega = lifted_curvature(l, g);
        for (int c = 0; c < 4; ++c)
            for (int d = 0; d < 4; ++d) CHECK(Omega(c, d) == conjugate(F.form, g, c, d));
    }
}

TEST_CASE("WEC density") {
    const LorentzGroupElement id;
    SUBCASE("flat lift") {
        TetradField e;
        ConnectionField A;
        CHECK(wec_density(lift(e, A), id).coefficient.is_zero());
        CHECK(wec_density(lift(e, A)).coefficient.is_zero());
    }
    SUBCASE("section pullback matches the base action density and an epsilon-sum oracle") {
        auto f = sample_field(15);
        auto l = lift(f.tetrad, f.connection);
        ScalarExpr base = base_action_density(f.tetrad, f.connection);
        CHECK(wec_density(l, id).coefficient == base);
        auto perm = permutation_table();
        for (const auto &x : kPoints) {
            auto e = dense(evaluate(f.tetrad.e, base_assignment(x)));
            auto F = coordinate_curvature_up(f.connection, x);
            // 1/4 eps_{abcd} e^c_m e^d_n F^{ab}_{rs} [m n r s]
            auto v = o::contract({{&o::epsilon_lower(), "abcd"}, {&e, "cm"}, {&e, "dn"}, {&F, "abrs"}, {&perm, "mnrs"}},
                                 "");
            CHECK(evaluate(base, base_assignment(x)) == v.data()[0] * Rational(1, 4));
        }
    }
    SUBCASE("gauge invariance across group samples") {
        auto f = sample_field(16);
        auto l = lift(f.tetrad, f.connection);
        ScalarExpr ref = wec_density(l, id).coefficient;
        Sampler s(5);
        for (int k = 0; k < 3; ++k) CHECK(wec_density(l, s.lorentz()).coefficient == ref);
    }
    SUBCASE("symbolic density agrees with the sampled one") {
        auto f = constant_connection();
        auto l = lift(f.tetrad, f.connection);
        auto sym = wec_density(l);
        Sampler s(6);
        for (int k = 0; k < 3; ++k) {
            auto g = s.lorentz();
            XPoint x = s.x_point();
            CHECK(evaluate(sym.coefficient, full_assignment(x, g)) ==
                  evaluate(wec_density(l, g).coefficient, base_assignment(x)));
        }
    }
}

TEST_CASE("section roundtrip") {
    auto f = sample_field(17);
    auto l = lift(f.tetrad, f.connection);
    auto back = section_roundtrip(l);
    CHECK_FALSE(back.warning);
    CHECK(back.tetrad.e == f.tetrad.e);
    for (int mu = 0; mu < 4; ++mu) CHECK(back.connection.A[mu] == f.connection.A[mu]);

    auto bad = l;
    bad.alpha[1] += Form::dx(2) * ScalarExpr::g(0, 1);
    CHECK(section_roundtrip(bad).warning);
}

TEST_CASE("Legendre transform") {
    SUBCASE("only varsigma") {
        PhasePoint pt;
        pt.varsigma = Rational(7, 3);
        CHECK(legendre_W(pt) == Rational(7, 3));
    }
    SUBCASE("gradient vanishes on the constraint surface, equals the discrepancy off it") {
        Sampler s(21);
        for (int k = 0; k < 5; ++k) {
            PhasePoint pt = random_phase_point(s);
            project_to_constraints(pt);
            validate_phase_point(pt);
            auto r = legendre_constraints(pt);
            CHECK(r.on_constraint_surface());
            CHECK(r.hamiltonian == legendre_W(pt));

            PhasePoint off = pt;
            Mat4<Rational> dpsi = s.matrix();
            Vec4<Rational> dpsi1{s.nonzero_rational(), 0, s.rational(), 1};
            off.psi0[1][3] += dpsi;
            off.psi0[3][1] -= dpsi;
            off.psi1[0][2] += dpsi1;
            off.psi1[2][0] -= dpsi1;
            auto r2 = legendre_constraints(off);
            CHECK_FALSE(r2.on_constraint_surface());
            CHECK(r2.eta0_gradient[1][3] == dpsi);
            CHECK(r2.eta0_gradient[3][1] == Mat4<Rational>(-dpsi));
            CHECK(r2.eta1_gradient[0][2] == dpsi1);
            CHECK(r2.eta1_gradient[2][0] == Vec4<Rational>(-dpsi1));
            CHECK(r2.eta0_gradient[0][1] == Mat4<Rational>::Zero());
        }
    }
    SUBCASE("the bivector term reproduces the pulled-back WEC density") {
        Sampler s(22);
        for (int k = 0; k < 3; ++k) {
            PhasePoint pt = random_phase_point(s);
            // jet realised by affine fields, expanded as forms at x = 0
            std::array<Form, 4> alpha;
            Tensor<Form, 4, 4> omega;
            for (int c = 0; c < 4; ++c)
                for (int mu = 0; mu < 4; ++mu) {
                    alpha[c] += Form::dx(mu) * ScalarExpr(pt.eta1[mu](c));
                    for (int d = 0; d < 4; ++d) {
                        ScalarExpr w(pt.eta0[mu](c, d));
                        for (int nu = 0; nu < 4; ++nu) w += ScalarExpr::x(nu) * pt.eta0_x[mu][nu](c, d);
                        omega(c, d) += Form::dx(mu) * w;
                    }
                }
            Form total;
            for (int a = 0; a < 4; ++a)
                for (int b = 0; b < 4; ++b) {
                    Form Om = ext_d(omega(a, b));
                    for (int q = 0; q < 4; ++q) Om += wedge(omega(a, q), omega(q, b));
                    for (int c = 0; c < 4; ++c)
                        for (int d = 0; d < 4; ++d)
                            if (int e = epsilon_lower(a, b, c, d))
                                total += wedge({alpha[c], alpha[d], Om}) * ScalarExpr(Rational(e * metric(b, b), 2));
                }
            Rational at_origin = evaluate(total.coefficient(base_mask), base_assignment(XPoint{0, 0, 0, 0}));
            CHECK(lambda_pullback(pt) == at_origin);
        }
    }
    SUBCASE("flat data on the constraint surface has H = 0") {
        PhasePoint pt;
        project_to_constraints(pt);
        CHECK(hamiltonian(pt).is_zero());
        CHECK(legendre_constraints(pt).hamiltonian.is_zero());
    }
    SUBCASE("psi antisymmetry is validated") {
        PhasePoint pt;
        pt.psi1[0][1](2) = 1;
        CHECK_THROWS_AS(validate_phase_point(pt), ValidationError);
    }
}

TEST_CASE("jet points of a lift carry equivariant group jets") {
    auto f = sample_field(23);
    auto l = lift(f.tetrad, f.connection);
    Sampler s(3);
    auto pt = jet_point(l, kPoints[1], s.lorentz());
    PhasePoint eq = pt;
    set_equivariant_jets(eq);
    for (int mu = 0; mu < 4; ++mu)
        for (int j = 0; j < kGenerators; ++j) {
            CHECK(pt.eta0_g[mu][j] == eq.eta0_g[mu][j]);
            CHECK(pt.eta1_g[mu][j] == eq.eta1_g[mu][j]);
        }
}

TEST_CASE("HVDW residuals") {
    const LorentzGroupElement id;
    MomentumField zero;
    SUBCASE("Minkowski vacuum") {
        TetradField e;
        ConnectionField A;
        CHECK(hvdw_residuals(lift(e, A), zero, id).all_zero());
    }
    SUBCASE("Einstein and Spin families against frame tensors") {
        auto f = sample_field(31);
        auto l = lift(f.tetrad, f.connection);
        auto r = hvdw_residuals(l, zero, id);
        CHECK(r.equivariance.passed());
        for (const auto &x : kPoints) {
            auto t = frame_tensors(f.tetrad, f.connection, x);
            auto P = spin_pattern(t);
            auto v = base_assignment(x);
            for (int a = 0; a < 4; ++a)
                for (int s = 0; s < 4; ++s) {
                    Rational g;
                    for (int b = 0; b < 4; ++b) g += t.einstein_mixed(b, a) * t.e_inv(s, b);
                    CHECK(evaluate(r.einstein(a, s), v) == Rational(2 * signs::kEinsteinHodge) * t.det_e * g);
                    for (int b = 0; b < 4; ++b) {
                        Rational h;
                        for (int ap = 0; ap < 4; ++ap) h += P(a, b, ap) * t.e_inv(s, ap);
                        CHECK(evaluate(r.spin(a, b, s), v) == Rational(2 * signs::kSpinHodge) * t.det_e * h);
                    }
                }
        }
    }
    SUBCASE("lifted 3-forms transform covariantly") {
        auto f = sample_field(32, 1);
        auto l = lift(f.tetrad, f.connection);
        auto T = torsion(f.tetrad, f.connection);
        auto F = curvature(f.connection);
        auto G = einstein_3form(f.tetrad, F);
        auto H = spin_3form(f.tetrad, T);
        Sampler s(8);
        for (int k = 0; k < 2; ++k) {
            auto g = s.lorentz();
            auto U = lifted_einstein_3form(l, g);
            auto S = lifted_spin_3form(l, g);
            for (int a = 0; a < 4; ++a) {
                Form expect;
                for (int ap = 0; ap < 4; ++ap) expect += G[ap] * ScalarExpr(g.g(ap, a));
                CHECK(U[a] == expect);
                for (int d = 0; d < 4; ++d) {
                    Form eh;
                    for (int cp = 0; cp < 4; ++cp)
                        for (int dp = 0; dp < 4; ++dp) {
                            Rational kq = g.g(cp, a) * g.ginv(d, dp);
                            if (!kq.is_zero()) eh += H(cp, dp) * ScalarExpr(kq);
                        }
                    CHECK(S(a, d) == eh);
                }
            }
        }
    }
    SUBCASE("momenta enter through Xi") {
        TetradField e;
        ConnectionField A;
        MomentumField m;
        m.psi1(2, 1, 3) = ScalarExpr::g(0, 1) * ScalarExpr::x(2);
        auto r = hvdw_residuals(lift(e, A), m, id);
        auto xi = xi_terms(m);
        CHECK(r.einstein(2, 1) == -at_group(xi.xi1(2, 1), id));
        MomentumField heavy;
        heavy.psi0(0, 0, 0, 0) = ScalarExpr::g(0, 0) * ScalarExpr::g(1, 1) * ScalarExpr::gbar(2, 2);
        CHECK_THROWS_AS(validate_momentum(heavy), ValidationError);
    }
}

TEST_CASE("Einstein-Cartan residuals") {
    MomentumField zero;
    SUBCASE("Minkowski") {
        TetradField e;
        ConnectionField A;
        CHECK(einstein_cartan_residuals(e, A, zero, kPoints[1]).zero());
    }
    SUBCASE("vacuum residuals are G and T; x-only momenta change nothing") {
        auto f = sample_field(41);
        Sampler s(4);
        MomentumField xonly;
        for (int k = 0; k < 5; ++k) {
            xonly.psi1(s.uniform(0, 3), s.uniform(0, 3), s.uniform(0, 5)) = s.polynomial({2, 0, 3, 3, 2});
            xonly.psi0(s.uniform(0, 3), s.uniform(0, 3), s.uniform(0, 3), s.uniform(0, 5)) = s.polynomial({2, 0, 3, 3, 2});
        }
        for (const auto &x : kPoints) {
            auto t = frame_tensors(f.tetrad, f.connection, x);
            auto r = einstein_cartan_residuals(f.tetrad, f.connection, zero, x);
            CHECK(r.r1 == t.einstein_mixed);
            CHECK(r.r2 == t.torsion);
            auto r2 = einstein_cartan_residuals(f.tetrad, f.connection, xonly, x, s.lorentz());
            CHECK(r2.r1 == r.r1);
            CHECK(r2.r2 == r.r2);
        }
    }
    SUBCASE("Einstein tensor agrees with a double-epsilon oracle") {
        auto f = sample_field(42);
        for (const auto &x : kPoints) {
            auto t = frame_tensors(f.tetrad, f.connection, x);
            o::DenseTensor F(4);
            for (int a = 0; a < 4; ++a)
                for (int b = 0; b < 4; ++b)
                    for (int c = 0; c < 4; ++c)
                        for (int d = 0; d < 4; ++d) F.at({a, b, c, d}) = t.curvature_up(a, b, c, d);
            // G^b_a = 1/4 eps^{bcdx} eps_{aefx} F^{ef}_{cd}
            auto G = o::contract({{&o::epsilon_upper(), "bcdx"}, {&o::epsilon_lower(), "aefx"}, {&F, "efcd"}}, "ba");
            auto r = einstein_cartan_residuals(f.tetrad, f.connection, zero, x);
            for (int a = 0; a < 4; ++a)
                for (int b = 0; b < 4; ++b) CHECK(r.r1(b, a) == G.at({b, a}) * Rational(1, 4));
        }
    }
    SUBCASE("a group-dependent momentum shifts R1 by half its rho-divergence") {
        TetradField e;
        ConnectionField A;
        MomentumField m;
        // p1_0^{0, j=4} = g^0_0: rho_4 g^0_0 = g^0_1
        m.psi1(0, 0, 3) = ScalarExpr::g(0, 0);
        Sampler s(9);
        auto g = s.lorentz();
        auto r = einstein_cartan_residuals(e, A, m, kPoints[0], g);
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b)
                CHECK(r.r1(b, a) == (a == 0 && b == 0 ? -g.g(0, 1) * Rational(1, 2) : Rational(0)));
    }
}

TEST_CASE("coadjoint yoga") {
    Sampler s(51);
    for (int k = 0; k < 20; ++k) {
        auto E = epsilon_lemma_residual(s.algebra_element());
        for (const auto &v : E) CHECK(v.is_zero());
    }
    Mat4<Rational> not_algebra = Mat4<Rational>::Zero();
    not_algebra(0, 0) = 1;
    bool any = false;
    for (const auto &v : epsilon_lemma_residual(not_algebra)) any = any || !v.is_zero();
    CHECK(any);

    for (int k = 0; k < 4; ++k) {
        auto f = sample_field(60 + k);
        auto l = lift(f.tetrad, f.connection);
        PhasePoint pt = jet_point(l, kPoints[k % 3], s.lorentz());
        project_to_constraints(pt);
        for (int mu = 0; mu < 4; ++mu)
            for (int j = 0; j < kGenerators; ++j) {
                pt.psi0_g[mu][j] = s.matrix();
                for (int c = 0; c < 4; ++c) pt.psi1_g[mu][j](c) = s.rational();
            }
        auto r = coadjoint_yoga_checks(pt, random_momenta(s));
        CHECK_MESSAGE(r.passed(), r.witness);
        CHECK_FALSE(r.constraint_surface_opposite_sign);
    }
}
