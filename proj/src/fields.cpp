#include "cartan/fields.hpp"

namespace cartan {

namespace {
std::string entry_name(const char *what, int a, int b, int mu) {
    return std::string(what) + "[" + std::to_string(a) + "][" + std::to_string(b) + "][" + std::to_string(mu) + "]";
}

Mat4<Rational> evaluate_x(const Mat4<ScalarExpr> &m, const XPoint &x) { return evaluate(m, base_assignment(x)); }
} // namespace

ScalarExpr raised_connection(const ConnectionField &A, int a, int b, int mu) {
    return A.A[mu](a, b) * Rational(metric(b, b));
}

void validate_connection(const ConnectionField &A) {
    for (int mu = 0; mu < 4; ++mu)
        for (int a = 0; a < 4; ++a)
            for (int b = a; b < 4; ++b) {
                if (A.A[mu](a, b).depends_on_group() || A.A[mu](b, a).depends_on_group())
                    throw ValidationError("connection entry " + entry_name("A", a, b, mu) + " depends on group symbols");
                ScalarExpr s = raised_connection(A, a, b, mu) + raised_connection(A, b, a, mu);
                if (!s.is_zero())
                    throw ValidationError("connection not antisymmetric after raising: " + entry_name("A^", a, b, mu) +
                                          " + " + entry_name("A^", b, a, mu) + " = " + s.to_string());
            }
}

void validate_tetrad(const TetradField &e, std::span<const XPoint> points) {
    for (int a = 0; a < 4; ++a)
        for (int mu = 0; mu < 4; ++mu)
            if (e.e(a, mu).depends_on_group())
                throw ValidationError("tetrad entry e[" + std::to_string(a) + "][" + std::to_string(mu) +
                                      "] depends on group symbols");
    for (std::size_t k = 0; k < points.size(); ++k) {
        if (determinant4(evaluate_x(e.e, points[k])).is_zero()) {
            std::string p;
            for (int mu = 0; mu < 4; ++mu) p += (mu ? "," : "") + points[k][mu].to_string();
            throw ValidationError("degenerate tetrad at evaluation point " + std::to_string(k) + " (" + p + ")");
        }
    }
}

Form coframe(const TetradField &e, int a) {
    Form f;
    for (int mu = 0; mu < 4; ++mu) f += Form::dx(mu) * e.e(a, mu);
    return f;
}

Form connection_form(const ConnectionField &A, int a, int b) {
    Form f;
    for (int mu = 0; mu < 4; ++mu) f += Form::dx(mu) * A.A[mu](a, b);
    return f;
}

TorsionData torsion(const TetradField &e, const ConnectionField &A) {
    TorsionData T;
    for (int a = 0; a < 4; ++a) {
        Form f = ext_d(coframe(e, a));
        for (int b = 0; b < 4; ++b) f += wedge(connection_form(A, a, b), coframe(e, b));
        T.form[a] = f;
        for (int mu = 0; mu < 4; ++mu)
            for (int nu = 0; nu < 4; ++nu) {
                ScalarExpr t = diff_x(e.e(a, nu), mu) - diff_x(e.e(a, mu), nu);
                for (int c = 0; c < 4; ++c) t += A.A[mu](a, c) * e.e(c, nu) - A.A[nu](a, c) * e.e(c, mu);
                T.coord(a, mu, nu) = t;
            }
    }
    return T;
}

CurvatureData curvature(const ConnectionField &A) {
    CurvatureData F;
    std::array<std::array<Form, 4>, 4> Af;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) Af[a][b] = connection_form(A, a, b);
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            Form f = ext_d(Af[a][b]);
            for (int c = 0; c < 4; ++c) f += wedge(Af[a][c], Af[c][b]);
            F.form(a, b) = f;
            for (int mu = 0; mu < 4; ++mu)
                for (int nu = 0; nu < 4; ++nu) {
                    ScalarExpr v = diff_x(A.A[nu](a, b), mu) - diff_x(A.A[mu](a, b), nu);
                    for (int c = 0; c < 4; ++c) v += A.A[mu](a, c) * A.A[nu](c, b) - A.A[nu](a, c) * A.A[mu](c, b);
                    F.coord(a, b, mu, nu) = v;
                }
        }
    return F;
}

FrameTensors frame_tensors(const TetradField &e, const ConnectionField &A, const XPoint &x) {
    return frame_tensors(torsion(e, A), curvature(A), e, x);
}

FrameTensors frame_tensors(const TorsionData &T, const CurvatureData &F, const TetradField &e, const XPoint &x) {
    FrameTensors t;
    auto v = base_assignment(x);
    t.e = evaluate_x(e.e, x);
    t.det_e = determinant4(t.e);
    auto inv = inverse4(t.e);
    if (!inv) throw ValidationError("degenerate tetrad at evaluation point");
    t.e_inv = *inv;

    Tensor<Rational, 4, 4, 4> Tc;
    for (int a = 0; a < 4; ++a)
        for (int mu = 0; mu < 4; ++mu)
            for (int nu = 0; nu < 4; ++nu) Tc(a, mu, nu) = evaluate(T.coord(a, mu, nu), v);
    for (int a = 0; a < 4; ++a)
        for (int c = 0; c < 4; ++c)
            for (int d = 0; d < 4; ++d) {
                Rational s(0);
                for (int mu = 0; mu < 4; ++mu)
                    for (int nu = 0; nu < 4; ++nu) s += Tc(a, mu, nu) * t.e_inv(mu, c) * t.e_inv(nu, d);
                t.torsion(a, c, d) = s;
            }

    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            Mat4<Rational> Fc;
            for (int mu = 0; mu < 4; ++mu)
                for (int nu = 0; nu < 4; ++nu) Fc(mu, nu) = evaluate(F.coord(a, b, mu, nu), v);
            Mat4<Rational> Ff = t.e_inv.transpose() * Fc * t.e_inv;
            for (int c = 0; c < 4; ++c)
                for (int d = 0; d < 4; ++d) t.curvature(a, b, c, d) = Ff(c, d);
        }
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            for (int c = 0; c < 4; ++c)
                for (int d = 0; d < 4; ++d) t.curvature_up(a, b, c, d) = t.curvature(a, b, c, d) * Rational(metric(b, b));

    t.scalar = Rational(0);
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            Rational r(0);
            for (int a2 = 0; a2 < 4; ++a2) r += t.curvature(a2, a, a2, b);
            t.ricci(a, b) = r;
        }
    for (int a = 0; a < 4; ++a) t.scalar += Rational(metric(a, a)) * t.ricci(a, a);
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            t.einstein_lower(a, b) = t.ricci(a, b) - Rational(1, 2) * Rational(metric(a, b)) * t.scalar;
        }
    for (int b = 0; b < 4; ++b)
        for (int a = 0; a < 4; ++a) t.einstein_mixed(b, a) = Rational(metric(b, b)) * t.einstein_lower(b, a);
    return t;
}

std::array<Form, 4> einstein_3form(const TetradField &e, const CurvatureData &F) {
    std::array<Form, 4> out;
    std::array<Form, 4> eb;
    for (int b = 0; b < 4; ++b) eb[b] = coframe(e, b);
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            for (int c = 0; c < 4; ++c)
                for (int d = 0; d < 4; ++d) {
                    int s = epsilon_mixed(a, b, c, d);
                    if (s) out[a] += wedge(F.form(c, d), eb[b]) * ScalarExpr(Rational(s, 2));
                }
    return out;
}

Tensor<Form, 4, 4> spin_3form(const TetradField &e, const TorsionData &T) {
    Tensor<Form, 4, 4> out;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            Form w = wedge(T.form[a], coframe(e, b));
            if (w.is_zero()) continue;
            for (int c = 0; c < 4; ++c)
                for (int d = 0; d < 4; ++d) {
                    int s = epsilon_mixed(a, b, c, d);
                    if (s) out(c, d) += w * ScalarExpr(Rational(s, 2));
                }
        }
    return out;
}

Vec4<ScalarExpr> beta3_coefficients(const Form &three_form) {
    Vec4<ScalarExpr> c;
    for (int mu = 0; mu < 4; ++mu) {
        GeneratorMask rest = static_cast<GeneratorMask>(base_mask ^ (1u << mu));
        // beta^{(3)}_mu = (-1)^mu dx^{rest}
        c(mu) = mu % 2 ? -three_form.coefficient(rest) : three_form.coefficient(rest);
    }
    return c;
}

Vec4<ScalarExpr> hodge_3form(const Form &three_form) {
    auto comp = three_form_components(three_form);
    Vec4<ScalarExpr> h;
    for (int s = 0; s < 4; ++s) {
        ScalarExpr acc;
        for (int l = 0; l < 4; ++l)
            for (int m = 0; m < 4; ++m)
                for (int n = 0; n < 4; ++n) {
                    int e = epsilon_upper(s, l, m, n);
                    if (e) acc += comp[16 * l + 4 * m + n] * Rational(e, 6);
                }
        h(s) = acc;
    }
    return h;
}

Form dual_basis_3form(const TetradField &e, int a) {
    Mat4<ScalarExpr> adj = adjugate4(e.e);
    Form f;
    for (int mu = 0; mu < 4; ++mu) f += basis_beta(3, {mu}) * adj(mu, a);
    return f;
}

Form tetrad_volume(const TetradField &e) {
    return wedge({coframe(e, 0), coframe(e, 1), coframe(e, 2), coframe(e, 3)});
}

Vec4<Rational> frame_coefficients(const Form &three_form, const FrameTensors &t, const XPoint &x) {
    auto v = base_assignment(x);
    Vec4<ScalarExpr> c = beta3_coefficients(three_form);
    Vec4<Rational> k;
    for (int b = 0; b < 4; ++b) {
        Rational s(0);
        for (int mu = 0; mu < 4; ++mu) s += evaluate(c(mu), v) * t.e(b, mu);
        k(b) = s / t.det_e;
    }
    return k;
}

Tensor<Rational, 4, 4, 4> spin_pattern(const FrameTensors &t) {
    Tensor<Rational, 4, 4, 4> p;
    Vec4<Rational> trace;  // T^c_{bc}
    for (int b = 0; b < 4; ++b) {
        Rational s(0);
        for (int c = 0; c < 4; ++c) s += t.torsion(c, b, c);
        trace(b) = s;
    }
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            Rational hb = Rational(metric(b, b), 2);
            int b2 = b;  // h^{bb'} is diagonal
            for (int a2 = 0; a2 < 4; ++a2) {
                Rational v(0);
                if (a2 == a) v += trace(b2);
                if (a2 == b2) v -= trace(a);  // T^c_{ca} = -T^c_{ac}
                v += t.torsion(a2, a, b2);
                p(a, b, a2) = hb * v;
            }
        }
    return p;
}

bool BianchiResiduals::holds() const {
    for (const auto &f : first)
        if (!f.is_zero()) return false;
    for (const auto &f : second)
        if (!f.is_zero()) return false;
    return true;
}

BianchiResiduals bianchi_residuals(const TetradField &e, const ConnectionField &A, const TorsionData &T,
                                   const CurvatureData &F) {
    BianchiResiduals r;
    std::array<std::array<Form, 4>, 4> Af;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) Af[a][b] = connection_form(A, a, b);
    for (int a = 0; a < 4; ++a) {
        Form f = ext_d(T.form[a]);
        for (int b = 0; b < 4; ++b) f += wedge(Af[a][b], T.form[b]) - wedge(F.form(a, b), coframe(e, b));
        r.first[a] = f;
        for (int b = 0; b < 4; ++b) {
            Form g = ext_d(F.form(a, b));
            for (int c = 0; c < 4; ++c) g += wedge(Af[a][c], F.form(c, b)) - wedge(F.form(a, c), Af[c][b]);
            r.second(a, b) = g;
        }
    }
    return r;
}

bool bianchi_check(const TetradField &e, const ConnectionField &A) {
    return bianchi_residuals(e, A, torsion(e, A), curvature(A)).holds();
}

FieldConfig gauge_transform(const FieldConfig &f, const LorentzGroupElement &g) {
    FieldConfig out;
    for (int a = 0; a < 4; ++a)
        for (int mu = 0; mu < 4; ++mu) {
            ScalarExpr s;
            for (int b = 0; b < 4; ++b) s += f.tetrad.e(b, mu) * g.ginv(a, b);
            out.tetrad.e(a, mu) = s;
        }
    for (int mu = 0; mu < 4; ++mu)
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b) {
                ScalarExpr s;
                for (int c = 0; c < 4; ++c)
                    for (int d = 0; d < 4; ++d) {
                        Rational k = g.ginv(a, c) * g.g(d, b);
                        if (!k.is_zero()) s += f.connection.A[mu](c, d) * k;
                    }
                out.connection.A[mu](a, b) = s;
            }
    return out;
}

FieldConfig random_field(Sampler &s, const RandomFieldShape &shape, std::span<const XPoint> points) {
    PolynomialShape ps{shape.degree, 0, shape.terms, shape.max_num, shape.max_den};
    for (;;) {
        FieldConfig f;
        for (int a = 0; a < 4; ++a)
            for (int mu = 0; mu < 4; ++mu) f.tetrad.e(a, mu) = ScalarExpr(a == mu ? 1 : 0) + s.polynomial(ps);
        for (int mu = 0; mu < 4; ++mu)
            for (int j = 1; j <= kGenerators; ++j) {
                ScalarExpr c = s.polynomial(ps);
                const auto &l = lorentz_generator(j);
                for (int a = 0; a < 4; ++a)
                    for (int b = 0; b < 4; ++b)
                        if (!l(a, b).is_zero()) f.connection.A[mu](a, b) += c * l(a, b);
            }
        bool ok = true;
        for (const auto &x : points)
            if (determinant4(evaluate_x(f.tetrad.e, x)).is_zero()) ok = false;
        if (ok) return f;
    }
}

} // namespace cartan
