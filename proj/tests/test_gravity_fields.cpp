#include "doctest.h"

#include "cartan/fields.hpp"
#include "cartan/oracle.hpp"

using namespace cartan;
namespace o = cartan::oracle;

namespace {
FieldConfig sample_field(std::uint64_t seed, std::span<const XPoint> points) {
    Sampler s(seed);
    return random_field(s, {2, 3, 1, 3}, points);
}

o::DenseTensor dense2(const Mat4<Rational> &m) {
    o::DenseTensor t(2);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) t.at({i, j}) = m(i, j);
    return t;
}

// F^c_{d lambda mu} at x, straight from derivatives of A.
o::DenseTensor coordinate_curvature(const ConnectionField &A, const XPoint &x) {
    auto v = base_assignment(x);
    o::DenseTensor t(4);
    for (int c = 0; c < 4; ++c)
        for (int d = 0; d < 4; ++d)
            for (int l = 0; l < 4; ++l)
                for (int m = 0; m < 4; ++m) {
                    ScalarExpr f = diff_x(A.A[m](c, d), l) - diff_x(A.A[l](c, d), m);
                    for (int k = 0; k < 4; ++k) f += A.A[l](c, k) * A.A[m](k, d) - A.A[m](c, k) * A.A[l](k, d);
                    t.at({c, d, l, m}) = evaluate(f, v);
                }
    return t;
}

o::DenseTensor coordinate_torsion(const TetradField &e, const ConnectionField &A, const XPoint &x) {
    auto v = base_assignment(x);
    o::DenseTensor t(3);
    for (int a = 0; a < 4; ++a)
        for (int l = 0; l < 4; ++l)
            for (int m = 0; m < 4; ++m) {
                ScalarExpr f = diff_x(e.e(a, m), l) - diff_x(e.e(a, l), m);
                for (int k = 0; k < 4; ++k) f += A.A[l](a, k) * e.e(k, m) - A.A[m](a, k) * e.e(k, l);
                t.at({a, l, m}) = evaluate(f, v);
            }
    return t;
}

const std::vector<XPoint> kPoints = {XPoint{0, 0, 0, 0}, XPoint{1, Rational(1, 2), -1, Rational(1, 3)},
                                     XPoint{Rational(-2, 3), 1, Rational(1, 4), 2}};
} // namespace

TEST_CASE("flat data has no torsion or curvature") {
    TetradField e;
    ConnectionField A;
    auto T = torsion(e, A);
    auto F = curvature(A);
    for (const auto &f : T.form) CHECK(f.is_zero());
    for (const auto &f : F.form) CHECK(f.is_zero());
    auto t = frame_tensors(T, F, e, kPoints[1]);
    CHECK(t.scalar.is_zero());
    for (auto g : einstein_3form(e, F)) CHECK(g.is_zero());
}

TEST_CASE("constant connection on the flat tetrad") {
    TetradField e;
    ConnectionField A;
    for (int mu = 0; mu < 4; ++mu)
        A.A[mu] = (Rational(mu + 1) * lorentz_generator(1 + mu % 6) + Rational(1, 2) * lorentz_generator(4))
                      .unaryExpr([](const Rational &r) { return ScalarExpr(r); });
    validate_connection(A);
    auto T = torsion(e, A);
    for (int a = 0; a < 4; ++a) {
        Form expect;
        for (int b = 0; b < 4; ++b) expect += wedge(connection_form(A, a, b), Form::dx(b));
        CHECK(T.form[a] == expect);
    }
    auto F = curvature(A);
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            Form aa;
            for (int c = 0; c < 4; ++c) aa += wedge(connection_form(A, a, c), connection_form(A, c, b));
            CHECK(F.form(a, b) == aa);
        }
}

TEST_CASE("form and component formulas agree") {
    auto f = sample_field(4, kPoints);
    auto T = torsion(f.tetrad, f.connection);
    auto F = curvature(f.connection);
    for (int a = 0; a < 4; ++a) {
        auto c = two_form_components(T.form[a]);
        for (int m = 0; m < 4; ++m)
            for (int n = 0; n < 4; ++n) CHECK(c[4 * m + n] == T.coord(a, m, n));
        for (int b = 0; b < 4; ++b) {
            auto cf = two_form_components(F.form(a, b));
            for (int m = 0; m < 4; ++m)
                for (int n = 0; n < 4; ++n) CHECK(cf[4 * m + n] == F.coord(a, b, m, n));
        }
    }
}

TEST_CASE("frame tensor symmetries and traces") {
    auto f = sample_field(5, kPoints);
    for (const auto &x : kPoints) {
        auto t = frame_tensors(f.tetrad, f.connection, x);
        Rational double_trace(0);
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b) {
                double_trace += t.curvature_up(a, b, a, b);
                for (int c = 0; c < 4; ++c) {
                    CHECK(t.torsion(a, b, c) == -t.torsion(a, c, b));
                    for (int d = 0; d < 4; ++d) {
                        CHECK(t.curvature_up(a, b, c, d) == -t.curvature_up(b, a, c, d));
                        CHECK(t.curvature(a, b, c, d) == -t.curvature(a, b, d, c));
                    }
                }
            }
        CHECK(t.scalar == double_trace);
        CHECK_FALSE(t.scalar.is_zero());
    }
}

TEST_CASE("epsilon oracle basics") {
    auto full = o::contract({{&o::epsilon_lower(), "abcd"}, {&o::epsilon_upper(), "abcd"}}, "");
    CHECK(full.data()[0] == Rational(-24));
    auto pair = o::contract({{&o::epsilon_lower(), "abcd"}, {&o::epsilon_upper(), "efcd"}}, "abef");
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            for (int e = 0; e < 4; ++e)
                for (int f = 0; f < 4; ++f) CHECK(pair.at({a, b, e, f}) == Rational(-2) * o::kronecker2(e, f, a, b));
    CHECK(o::epsilon_lower().at({2, 2, 2, 2}).is_zero());
}

TEST_CASE("dual basis 3-forms") {
    TetradField flat;
    for (int a = 0; a < 4; ++a) CHECK(dual_basis_3form(flat, a) == basis_beta(3, {a}));
    TetradField d;
    d.e(0, 0) = 2;
    CHECK(dual_basis_3form(d, 0) == basis_beta(3, {0}));
    CHECK(dual_basis_3form(d, 1) == basis_beta(3, {1}) * ScalarExpr(2));

    auto f = sample_field(6, kPoints);
    Form vol = tetrad_volume(f.tetrad);
    for (int g = 0; g < 4; ++g)
        for (int a = 0; a < 4; ++a)
            CHECK(wedge(coframe(f.tetrad, g), dual_basis_3form(f.tetrad, a)) == (g == a ? vol : Form()));

    // The epsilon-pair formula for the densitised inverse frame, summed by the oracle.
    for (const auto &x : kPoints) {
        Mat4<Rational> ex = evaluate(f.tetrad.e, base_assignment(x));
        o::DenseTensor e = dense2(ex);
        auto lhs = o::contract({{&o::epsilon_lower(), "abcd"}, {&o::epsilon_upper(), "mnrs"}, {&e, "bn"}, {&e, "cr"}, {&e, "ds"}},
                               "am");
        Mat4<Rational> adj = adjugate4(ex);
        for (int a = 0; a < 4; ++a)
            for (int m = 0; m < 4; ++m) CHECK(lhs.at({a, m}) * Rational(1, 6) == Rational(signs::kDualBasisEpsilon) * adj(m, a));
    }
}

TEST_CASE("Einstein 3-form decomposition and hodge identity") {
    for (std::uint64_t seed = 10; seed < 13; ++seed) {
        auto f = sample_field(seed, kPoints);
        auto F = curvature(f.connection);
        auto T = torsion(f.tetrad, f.connection);
        auto G = einstein_3form(f.tetrad, F);
        for (const auto &x : kPoints) {
            auto t = frame_tensors(T, F, f.tetrad, x);
            auto v = base_assignment(x);
            o::DenseTensor Fc = coordinate_curvature(f.connection, x);
            o::DenseTensor e = dense2(t.e);
            auto hodge_oracle = o::contract(
                {{&o::epsilon_upper(), "slmn"}, {&o::epsilon_mixed(), "abcd"}, {&Fc, "cdlm"}, {&e, "bn"}}, "as");
            for (int a = 0; a < 4; ++a) {
                auto k = frame_coefficients(G[a], t, x);
                auto h = hodge_3form(G[a]);
                for (int b = 0; b < 4; ++b) CHECK(k(b) == Rational(signs::kEinsteinFrame) * t.einstein_mixed(b, a));
                for (int s = 0; s < 4; ++s) {
                    Rational rhs(0);
                    for (int b = 0; b < 4; ++b) rhs += t.einstein_mixed(b, a) * t.e_inv(s, b);
                    rhs *= Rational(signs::kEinsteinHodge) * t.det_e;
                    CHECK(evaluate(h(s), v) == rhs);
                    CHECK(hodge_oracle.at({a, s}) * Rational(1, 4) == rhs);
                }
            }
        }
    }
}

TEST_CASE("Spin 3-form decomposition and hodge identity") {
    for (std::uint64_t seed = 20; seed < 23; ++seed) {
        auto f = sample_field(seed, kPoints);
        auto F = curvature(f.connection);
        auto T = torsion(f.tetrad, f.connection);
        auto H = spin_3form(f.tetrad, T);
        for (const auto &x : kPoints) {
            auto t = frame_tensors(T, F, f.tetrad, x);
            auto v = base_assignment(x);
            auto p = spin_pattern(t);
            o::DenseTensor Tc = coordinate_torsion(f.tetrad, f.connection, x);
            o::DenseTensor e = dense2(t.e);
            // (1/3!) eps^{slmn} H_c^d_{lmn} with H_c^d = 1/2 eps_{abc}^d T^a ^ e^b -> 1/4 eps eps T e
            auto hodge_oracle = o::contract(
                {{&o::epsilon_upper(), "slmn"}, {&o::epsilon_mixed(), "abcd"}, {&Tc, "alm"}, {&e, "bn"}}, "cds");
            for (int a = 0; a < 4; ++a)
                for (int b = 0; b < 4; ++b) {
                    auto k = frame_coefficients(H(a, b), t, x);
                    auto h = hodge_3form(H(a, b));
                    for (int a2 = 0; a2 < 4; ++a2) CHECK(k(a2) == Rational(signs::kSpinFrame) * p(a, b, a2));
                    for (int s = 0; s < 4; ++s) {
                        Rational rhs(0);
                        for (int a2 = 0; a2 < 4; ++a2) rhs += p(a, b, a2) * t.e_inv(s, a2);
                        rhs *= Rational(signs::kSpinHodge) * t.det_e;
                        CHECK(evaluate(h(s), v) == rhs);
                        CHECK(hodge_oracle.at({a, b, s}) * Rational(1, 4) == rhs);
                    }
                }
        }
    }
}

TEST_CASE("Bianchi identities") {
    TetradField flat;
    ConnectionField zero;
    CHECK(bianchi_check(flat, zero));
    for (std::uint64_t seed = 30; seed < 33; ++seed) {
        auto f = sample_field(seed, kPoints);
        CHECK(bianchi_check(f.tetrad, f.connection));
        auto T = torsion(f.tetrad, f.connection);
        auto F = curvature(f.connection);
        F.form(1, 2) += Form::monomial(0b0011, ScalarExpr(1));
        CHECK_FALSE(bianchi_residuals(f.tetrad, f.connection, T, F).holds());
    }
}

TEST_CASE("constant gauge covariance of the Einstein and Spin forms") {
    auto f = sample_field(40, kPoints);
    Sampler s(41);
    auto g = s.lorentz();
    auto f2 = gauge_transform(f, g);
    validate_connection(f2.connection);
    auto G = einstein_3form(f.tetrad, curvature(f.connection));
    auto G2 = einstein_3form(f2.tetrad, curvature(f2.connection));
    auto H = spin_3form(f.tetrad, torsion(f.tetrad, f.connection));
    auto H2 = spin_3form(f2.tetrad, torsion(f2.tetrad, f2.connection));
    for (int a = 0; a < 4; ++a) {
        Form expect;
        for (int a2 = 0; a2 < 4; ++a2) expect += G[a2] * ScalarExpr(g.g(a2, a));
        CHECK(G2[a] == expect);
        for (int d = 0; d < 4; ++d) {
            Form eh;
            for (int c2 = 0; c2 < 4; ++c2)
                for (int d2 = 0; d2 < 4; ++d2) eh += H(c2, d2) * ScalarExpr(g.g(c2, a) * g.ginv(d, d2));
            CHECK(H2(a, d) == eh);
        }
    }
}

TEST_CASE("validation") {
    ConnectionField A;
    A.A[2](0, 0) = ScalarExpr::x(1);
    CHECK_THROWS_AS(validate_connection(A), ValidationError);
    ConnectionField B;
    B.A[0](1, 2) = ScalarExpr(1);
    CHECK_THROWS_AS(validate_connection(B), ValidationError);
    B.A[0](2, 1) = ScalarExpr(-1);
    CHECK_NOTHROW(validate_connection(B));
    TetradField e;
    e.e(0, 0) = ScalarExpr::x(0);
    std::vector<XPoint> pts{XPoint{1, 0, 0, 0}};
    CHECK_NOTHROW(validate_tetrad(e, pts));
    pts.push_back(XPoint{0, 1, 0, 0});
    CHECK_THROWS_AS(validate_tetrad(e, pts), ValidationError);
}
