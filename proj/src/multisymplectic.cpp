#include "cartan/multisymplectic.hpp"

#include <map>

namespace cartan {

namespace {
Form form_at_group(const Form &f, const LorentzGroupElement &g0) {
    return f.map_coefficients([&](const ScalarExpr &c) { return at_group(c, g0); });
}

bool vanishes(const ScalarExpr &f, int samples, std::uint64_t seed) {
    return f.is_zero() || equal_by_evaluation(f, ScalarExpr(), samples, seed);
}

Mat4<Rational> zero4() { return Mat4<Rational>::Zero(); }
Vec4<Rational> zero_vec() { return Vec4<Rational>::Zero(); }

Rational trace_product(const Mat4<Rational> &a, const Mat4<Rational> &b) {
    Rational s;
    for (int i = 0; i < 4; ++i)
        for (int k = 0; k < 4; ++k) s += a(i, k) * b(k, i);
    return s;
}

std::string index_tuple(std::initializer_list<int> idx) {
    std::string s = "(";
    bool first = true;
    for (int i : idx) s += (first ? "" : ",") + std::to_string(i), first = false;
    return s + ")";
}
} // namespace

LiftedConnection lift(const TetradField &e, const ConnectionField &A) {
    LiftedConnection l;
    for (int c = 0; c < 4; ++c)
        for (int mu = 0; mu < 4; ++mu) {
            ScalarExpr s;
            for (int a = 0; a < 4; ++a)
                if (!e.e(a, mu).is_zero()) s += ScalarExpr::gbar(c, a) * e.e(a, mu);
            l.alpha[c] += Form::dx(mu) * s;
        }
    for (int mu = 0; mu < 4; ++mu) {
        // gbar A_mu g, built entry by entry to skip zero blocks
        Mat4<ScalarExpr> Ag = Mat4<ScalarExpr>::Zero();
        for (int x = 0; x < 4; ++x)
            for (int d = 0; d < 4; ++d)
                for (int y = 0; y < 4; ++y)
                    if (!A.A[mu](x, y).is_zero()) Ag(x, d) += A.A[mu](x, y) * ScalarExpr::g(y, d);
        for (int c = 0; c < 4; ++c)
            for (int d = 0; d < 4; ++d) {
                ScalarExpr s;
                for (int x = 0; x < 4; ++x)
                    if (!Ag(x, d).is_zero()) s += ScalarExpr::gbar(c, x) * Ag(x, d);
                l.omega(c, d) += Form::dx(mu) * s;
            }
    }
    for (int j = 1; j <= kGenerators; ++j) {
        const Mat4<Rational> &lj = lorentz_generator(j);
        for (int c = 0; c < 4; ++c)
            for (int d = 0; d < 4; ++d)
                if (!lj(c, d).is_zero()) l.omega(c, d) += Form::gamma(j) * ScalarExpr(lj(c, d));
    }
    return l;
}

ScalarExpr component(const Form &one_form, const VectorIndex &v) { return interior(v, one_form).coefficient(0); }

bool NormalizationReport::passed() const {
    for (int i = 0; i < kGenerators; ++i)
        if (!alpha[i] || !omega[i]) return false;
    return true;
}

NormalizationReport check_normalization(const LiftedConnection &l, int samples, std::uint64_t seed) {
    NormalizationReport r;
    for (int i = 1; i <= kGenerators; ++i) {
        auto v = VectorIndex::vertical(i);
        bool a_ok = true, w_ok = true;
        for (int c = 0; c < 4 && a_ok; ++c) a_ok = vanishes(component(l.alpha[c], v), samples, seed);
        for (int c = 0; c < 4 && w_ok; ++c)
            for (int d = 0; d < 4 && w_ok; ++d)
                w_ok = vanishes(component(l.omega(c, d), v) - ScalarExpr(lorentz_generator(i)(c, d)), samples, seed);
        r.alpha[i - 1] = a_ok;
        r.omega[i - 1] = w_ok;
    }
    return r;
}

EquivarianceReport check_equivariance(const LiftedConnection &l, int samples, std::uint64_t seed) {
    EquivarianceReport r;
    Tensor<ScalarExpr, 4, 4, 4> w;  // (c, d, mu)
    Tensor<ScalarExpr, 4, 4> a;     // (c, mu)
    for (int mu = 0; mu < 4; ++mu) {
        auto v = VectorIndex::base(mu);
        for (int c = 0; c < 4; ++c) {
            a(c, mu) = component(l.alpha[c], v);
            for (int d = 0; d < 4; ++d) w(c, d, mu) = component(l.omega(c, d), v);
        }
    }
    r.omega_zero = r.alpha_zero = true;
    for (int j = 1; j <= kGenerators; ++j) {
        const Mat4<Rational> &lj = lorentz_generator(j);
        for (int mu = 0; mu < 4; ++mu)
            for (int c = 0; c < 4; ++c) {
                ScalarExpr ra = group_derivative(a(c, mu), j);
                for (int k = 0; k < 4; ++k)
                    if (!lj(c, k).is_zero()) ra += a(k, mu) * lj(c, k);
                if (r.alpha_zero && !vanishes(ra, samples, seed)) r.alpha_zero = false;
                r.alpha_residual(c, mu, j - 1) = std::move(ra);
                for (int d = 0; d < 4; ++d) {
                    ScalarExpr rw = group_derivative(w(c, d, mu), j);
                    for (int k = 0; k < 4; ++k) {
                        if (!lj(c, k).is_zero()) rw += w(k, d, mu) * lj(c, k);
                        if (!lj(k, d).is_zero()) rw -= w(c, k, mu) * lj(k, d);
                    }
                    if (r.omega_zero && !vanishes(rw, samples, seed)) r.omega_zero = false;
                    r.omega_residual(c, d, mu, j - 1) = std::move(rw);
                }
            }
    }
    return r;
}

Tensor<Form, 4, 4> lifted_curvature(const LiftedConnection &l, const LorentzGroupElement &g0) {
    Tensor<Form, 4, 4> w0, out;
    for (int c = 0; c < 4; ++c)
        for (int d = 0; d < 4; ++d) w0(c, d) = form_at_group(l.omega(c, d), g0);
    for (int c = 0; c < 4; ++c)
        for (int d = 0; d < 4; ++d) {
            Form f = form_at_group(ext_d(l.omega(c, d)), g0);
            for (int k = 0; k < 4; ++k) f += wedge(w0(c, k), w0(k, d));
            out(c, d) = std::move(f);
        }
    return out;
}

std::array<Form, 4> lifted_torsion(const LiftedConnection &l, const LorentzGroupElement &g0) {
    std::array<Form, 4> a0, out;
    for (int c = 0; c < 4; ++c) a0[c] = form_at_group(l.alpha[c], g0);
    for (int a = 0; a < 4; ++a) {
        Form f = form_at_group(ext_d(l.alpha[a]), g0);
        for (int b = 0; b < 4; ++b) f += wedge(form_at_group(l.omega(a, b), g0), a0[b]);
        out[a] = std::move(f);
    }
    return out;
}

std::array<Form, 4> lifted_einstein_3form(const LiftedConnection &l, const LorentzGroupElement &g0) {
    auto Omega = lifted_curvature(l, g0);
    std::array<Form, 4> out;
    for (int b = 0; b < 4; ++b) {
        Form ab = form_at_group(l.alpha[b], g0);
        for (int c = 0; c < 4; ++c)
            for (int d = 0; d < 4; ++d) {
                if (Omega(c, d).is_zero()) continue;
                Form w = wedge(Omega(c, d), ab);
                for (int a = 0; a < 4; ++a)
                    if (int s = epsilon_mixed(a, b, c, d)) out[a] += w * ScalarExpr(Rational(s, 2));
            }
    }
    return out;
}

Tensor<Form, 4, 4> lifted_spin_3form(const LiftedConnection &l, const LorentzGroupElement &g0) {
    auto Theta = lifted_torsion(l, g0);
    Tensor<Form, 4, 4> out;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            Form w = wedge(Theta[a], form_at_group(l.alpha[b], g0));
            if (w.is_zero()) continue;
            for (int c = 0; c < 4; ++c)
                for (int d = 0; d < 4; ++d)
                    if (int s = epsilon_mixed(a, b, c, d)) out(c, d) += w * ScalarExpr(Rational(s, 2));
        }
    return out;
}

namespace {
WecDensity assemble_density(const std::array<Form, 4> &alpha, const Tensor<Form, 4, 4> &Omega) {
    Form body;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            if (Omega(a, b).is_zero()) continue;
            Form a2;
            for (int c = 0; c < 4; ++c)
                for (int d = 0; d < 4; ++d)
                    if (int s = epsilon_lower(a, b, c, d)) a2 += wedge(alpha[c], alpha[d]) * ScalarExpr(Rational(s, 2));
            // Omega^{ab} = Omega^a_{b'} h^{b'b}
            body += wedge(a2, Omega(a, b)) * ScalarExpr(metric(b, b));
        }
    WecDensity w;
    w.density = wedge(body, gamma_volume());
    w.coefficient = w.density.coefficient(static_cast<GeneratorMask>(base_mask | vertical_mask));
    return w;
}
} // namespace

WecDensity wec_density(const LiftedConnection &l, const LorentzGroupElement &g0) {
    std::array<Form, 4> a0;
    for (int c = 0; c < 4; ++c) a0[c] = form_at_group(l.alpha[c], g0);
    return assemble_density(a0, lifted_curvature(l, g0));
}

WecDensity wec_density(const LiftedConnection &l) {
    Tensor<Form, 4, 4> Omega;
    for (int c = 0; c < 4; ++c)
        for (int d = 0; d < 4; ++d) {
            Form f = ext_d(l.omega(c, d));
            for (int k = 0; k < 4; ++k) f += wedge(l.omega(c, k), l.omega(k, d));
            Omega(c, d) = std::move(f);
        }
    return assemble_density(l.alpha, Omega);
}

ScalarExpr base_action_density(const TetradField &e, const ConnectionField &A) {
    auto F = curvature(A);
    std::array<Form, 4> ea;
    for (int a = 0; a < 4; ++a) ea[a] = coframe(e, a);
    Form body;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            if (F.form(a, b).is_zero()) continue;
            Form e2;
            for (int c = 0; c < 4; ++c)
                for (int d = 0; d < 4; ++d)
                    if (int s = epsilon_lower(a, b, c, d)) e2 += wedge(ea[c], ea[d]) * ScalarExpr(Rational(s, 2));
            body += wedge(e2, F.form(a, b)) * ScalarExpr(metric(b, b));
        }
    return body.coefficient(base_mask);
}

SectionPullback section_roundtrip(const LiftedConnection &l, int samples, std::uint64_t seed) {
    SectionPullback out;
    const LorentzGroupElement id;
    for (int mu = 0; mu < 4; ++mu) {
        auto v = VectorIndex::base(mu);
        for (int a = 0; a < 4; ++a) {
            out.tetrad.e(a, mu) = at_group(component(l.alpha[a], v), id);
            for (int b = 0; b < 4; ++b) out.connection.A[mu](a, b) = at_group(component(l.omega(a, b), v), id);
        }
    }
    out.warning = !check_equivariance(l, samples, seed).passed();
    return out;
}

PhasePoint::PhasePoint() {
    for (int mu = 0; mu < 4; ++mu) {
        eta0[mu] = zero4();
        eta1[mu] = zero_vec();
        for (int nu = 0; nu < 4; ++nu) {
            eta0_x[mu][nu] = zero4();
            eta1_x[mu][nu] = zero_vec();
            psi0[mu][nu] = zero4();
            psi1[mu][nu] = zero_vec();
        }
        for (int j = 0; j < kGenerators; ++j) {
            eta0_g[mu][j] = zero4();
            eta1_g[mu][j] = zero_vec();
            psi0_g[mu][j] = zero4();
            psi1_g[mu][j] = zero_vec();
        }
    }
}

PhasePoint zero_phase_point() { return PhasePoint(); }

PhasePoint jet_point(const LiftedConnection &l, const XPoint &x, const LorentzGroupElement &g0) {
    PhasePoint pt;
    pt.x = x;
    pt.g = g0;
    auto values = full_assignment(x, g0);
    auto eval = [&](const ScalarExpr &f) { return evaluate(f, values); };
    for (int mu = 0; mu < 4; ++mu) {
        auto v = VectorIndex::base(mu);
        for (int c = 0; c < 4; ++c) {
            ScalarExpr a = component(l.alpha[c], v);
            pt.eta1[mu](c) = eval(a);
            for (int nu = 0; nu < 4; ++nu) pt.eta1_x[mu][nu](c) = eval(diff_x(a, nu));
            for (int j = 1; j <= kGenerators; ++j) pt.eta1_g[mu][j - 1](c) = eval(group_derivative(a, j));
            for (int d = 0; d < 4; ++d) {
                ScalarExpr w = component(l.omega(c, d), v);
                pt.eta0[mu](c, d) = eval(w);
                for (int nu = 0; nu < 4; ++nu) pt.eta0_x[mu][nu](c, d) = eval(diff_x(w, nu));
                for (int j = 1; j <= kGenerators; ++j) pt.eta0_g[mu][j - 1](c, d) = eval(group_derivative(w, j));
            }
        }
    }
    return pt;
}

void set_equivariant_jets(PhasePoint &pt) {
    for (int mu = 0; mu < 4; ++mu)
        for (int j = 1; j <= kGenerators; ++j) {
            const Mat4<Rational> &lj = lorentz_generator(j);
            pt.eta0_g[mu][j - 1] = -bracket(lj, pt.eta0[mu]);
            pt.eta1_g[mu][j - 1] = -(lj * pt.eta1[mu]);
        }
}

void validate_phase_point(const PhasePoint &pt) {
    for (int mu = 0; mu < 4; ++mu)
        for (int nu = mu; nu < 4; ++nu) {
            if (pt.psi0[mu][nu] != -pt.psi0[nu][mu])
                throw ValidationError("psi0^{mu nu} not antisymmetric at " + index_tuple({mu, nu}));
            if (pt.psi1[mu][nu] != -pt.psi1[nu][mu])
                throw ValidationError("psi1^{mu nu} not antisymmetric at " + index_tuple({mu, nu}));
        }
}

Bivector eta1_bivector(const PhasePoint &pt) {
    Bivector X;
    for (int mu = 0; mu < 4; ++mu)
        for (int nu = 0; nu < 4; ++nu) X[mu][nu] = zero4();
    for (int r = 0; r < 4; ++r)
        for (int s = 0; s < 4; ++s) {
            if (r == s) continue;
            for (int a = 0; a < 4; ++a)
                for (int b = 0; b < 4; ++b) {
                    Rational ab = pt.eta1[r](a) * pt.eta1[s](b);
                    if (ab.is_zero()) continue;
                    for (int c = 0; c < 4; ++c)
                        for (int d = 0; d < 4; ++d) {
                            int e = epsilon_mixed(a, b, c, d);
                            if (!e) continue;
                            for (int mu = 0; mu < 4; ++mu)
                                for (int nu = 0; nu < 4; ++nu)
                                    if (int p = permutation_sign(r, s, mu, nu))
                                        X[mu][nu](d, c) += ab * Rational(e * p, 2);
                        }
                }
        }
    return X;
}

namespace {
/// Rational plus a sparse linear part in the velocity slots.
struct Affine {
    Rational constant;
    std::map<int, Rational> linear;

    Affine() = default;
    Affine(const Rational &c) : constant(c) {}
    static Affine slot(int k) {
        Affine a;
        a.linear[k] = Rational(1);
        return a;
    }
    Affine &operator+=(const Affine &o) {
        constant += o.constant;
        for (const auto &[k, v] : o.linear) linear[k] += v;
        return *this;
    }
    friend Affine operator*(Affine a, const Rational &c) {
        a.constant *= c;
        for (auto &[k, v] : a.linear) v *= c;
        return a;
    }
};

inline Rational &accumulate(Rational &acc, const Rational &v) { return acc += v; }
inline Affine &accumulate(Affine &acc, const Affine &v) { return acc += v; }

constexpr int eta0_slot(int mu, int nu, int c, int d) { return ((mu * 4 + nu) * 4 + c) * 4 + d; }
constexpr int eta1_slot(int mu, int nu, int c) { return 256 + (mu * 4 + nu) * 4 + c; }

Rational bracket_term(const PhasePoint &pt, const Bivector &X) {
    Rational s;
    for (int mu = 0; mu < 4; ++mu)
        for (int nu = 0; nu < 4; ++nu) {
            if (mu == nu) continue;
            s += trace_product(X[mu][nu], bracket(pt.eta0[mu], pt.eta0[nu]));
        }
    return s;
}

/// W with the velocity slots supplied by `velocity0` / `velocity1`.
template <class V, class Vel0, class Vel1>
V w_expression(const PhasePoint &pt, const Bivector &X, Vel0 velocity0, Vel1 velocity1) {
    V w(pt.varsigma);
    for (int mu = 0; mu < 4; ++mu)
        for (int nu = 0; nu < 4; ++nu) {
            for (int c = 0; c < 4; ++c) {
                for (int d = 0; d < 4; ++d) {
                    Rational k = pt.psi0[mu][nu](d, c) - X[mu][nu](d, c);
                    if (!k.is_zero()) accumulate(w, velocity0(mu, nu, c, d) * k);
                }
                if (!pt.psi1[mu][nu](c).is_zero()) accumulate(w, velocity1(mu, nu, c) * pt.psi1[mu][nu](c));
            }
        }
    Rational rest;
    for (int mu = 0; mu < 4; ++mu)
        for (int j = 0; j < kGenerators; ++j) {
            rest += trace_product(pt.psi0_g[mu][j], pt.eta0_g[mu][j]);
            for (int c = 0; c < 4; ++c) rest += pt.psi1_g[mu][j](c) * pt.eta1_g[mu][j](c);
        }
    rest -= bracket_term(pt, X) * Rational(1, 2);
    accumulate(w, V(rest));
    return w;
}
} // namespace

Rational lambda_pullback(const PhasePoint &pt) {
    Bivector X = eta1_bivector(pt);
    Rational s;
    for (int mu = 0; mu < 4; ++mu)
        for (int nu = 0; nu < 4; ++nu) {
            Mat4<Rational> inner = pt.eta0_x[mu][nu] - bracket(pt.eta0[mu], pt.eta0[nu]) * Rational(1, 2);
            s -= trace_product(X[mu][nu], inner);
        }
    return s;
}

Rational legendre_W(const PhasePoint &pt) {
    Bivector X = eta1_bivector(pt);
    return w_expression<Rational>(
        pt, X, [&](int mu, int nu, int c, int d) { return pt.eta0_x[mu][nu](c, d); },
        [&](int mu, int nu, int c) { return pt.eta1_x[mu][nu](c); });
}

bool LegendreResiduals::on_constraint_surface() const {
    for (int mu = 0; mu < 4; ++mu)
        for (int nu = 0; nu < 4; ++nu) {
            for (int c = 0; c < 4; ++c) {
                if (!eta1_gradient[mu][nu](c).is_zero()) return false;
                for (int d = 0; d < 4; ++d)
                    if (!eta0_gradient[mu][nu](d, c).is_zero()) return false;
            }
        }
    return true;
}

LegendreResiduals legendre_constraints(const PhasePoint &pt) {
    Bivector X = eta1_bivector(pt);
    Affine w = w_expression<Affine>(
        pt, X, [&](int mu, int nu, int c, int d) { return Affine::slot(eta0_slot(mu, nu, c, d)); },
        [&](int mu, int nu, int c) { return Affine::slot(eta1_slot(mu, nu, c)); });
    LegendreResiduals r;
    for (int mu = 0; mu < 4; ++mu)
        for (int nu = 0; nu < 4; ++nu) {
            r.eta0_gradient[mu][nu] = zero4();
            r.eta1_gradient[mu][nu] = zero_vec();
        }
    for (const auto &[k, v] : w.linear) {
        if (k < 256) {
            int d = k % 4, c = (k / 4) % 4, nu = (k / 16) % 4, mu = k / 64;
            r.eta0_gradient[mu][nu](d, c) = v;
        } else {
            int q = k - 256;
            int c = q % 4, nu = (q / 4) % 4, mu = q / 16;
            r.eta1_gradient[mu][nu](c) = v;
        }
    }
    r.hamiltonian = hamiltonian(pt);
    return r;
}

Rational hamiltonian(const PhasePoint &pt) {
    Bivector X = eta1_bivector(pt);
    Rational h = pt.varsigma - bracket_term(pt, X) * Rational(1, 2);
    for (int mu = 0; mu < 4; ++mu)
        for (int j = 1; j <= kGenerators; ++j) {
            const Mat4<Rational> &lj = lorentz_generator(j);
            h -= trace_product(pt.psi0_g[mu][j - 1], bracket(lj, pt.eta0[mu]));
            Vec4<Rational> le = lj * pt.eta1[mu];
            for (int c = 0; c < 4; ++c) h -= pt.psi1_g[mu][j - 1](c) * le(c);
        }
    return h;
}

void project_to_constraints(PhasePoint &pt) {
    Bivector X = eta1_bivector(pt);
    for (int mu = 0; mu < 4; ++mu)
        for (int nu = 0; nu < 4; ++nu) {
            pt.psi0[mu][nu] = X[mu][nu];
            pt.psi1[mu][nu] = zero_vec();
        }
}

void validate_momentum(const MomentumField &m) {
    for (std::size_t k = 0; k < m.psi0.size; ++k)
        if (m.psi0.data()[k].group_degree() > kMaxMomentumGroupDegree) {
            auto i = m.psi0.unflatten(k);
            throw ValidationError("momentum psi0" +
                                  index_tuple({int(i[0]), int(i[1]), int(i[2]), int(i[3]) + 1}) +
                                  " exceeds group degree 2");
        }
    for (std::size_t k = 0; k < m.psi1.size; ++k)
        if (m.psi1.data()[k].group_degree() > kMaxMomentumGroupDegree) {
            auto i = m.psi1.unflatten(k);
            throw ValidationError("momentum psi1" + index_tuple({int(i[0]), int(i[1]), int(i[2]) + 1}) +
                                  " exceeds group degree 2");
        }
}

MomentumField conjugate_momenta(const MomentumField &psi) {
    MomentumField p;
    for (int mu = 0; mu < 4; ++mu)
        for (int j = 0; j < kGenerators; ++j) {
            for (int d = 0; d < 4; ++d)
                for (int c = 0; c < 4; ++c) {
                    ScalarExpr s;
                    for (int x = 0; x < 4; ++x)
                        for (int y = 0; y < 4; ++y)
                            if (!psi.psi0(x, y, mu, j).is_zero())
                                s += ScalarExpr::g(d, x) * psi.psi0(x, y, mu, j) * ScalarExpr::gbar(y, c);
                    p.psi0(d, c, mu, j) = std::move(s);
                }
            for (int a = 0; a < 4; ++a) {
                ScalarExpr s;
                for (int x = 0; x < 4; ++x)
                    if (!psi.psi1(x, mu, j).is_zero()) s += psi.psi1(x, mu, j) * ScalarExpr::gbar(x, a);
                p.psi1(a, mu, j) = std::move(s);
            }
        }
    return p;
}

XiData xi_terms(const MomentumField &m) {
    XiData xi;
    for (int mu = 0; mu < 4; ++mu)
        for (int j = 1; j <= kGenerators; ++j) {
            const Mat4<Rational> &lj = lorentz_generator(j);
            for (int c = 0; c < 4; ++c)
                for (int d = 0; d < 4; ++d) {
                    ScalarExpr s = group_derivative(m.psi0(d, c, mu, j - 1), j);
                    for (int k = 0; k < 4; ++k) {
                        if (!lj(d, k).is_zero()) s += m.psi0(k, c, mu, j - 1) * lj(d, k);
                        if (!lj(k, c).is_zero()) s -= m.psi0(d, k, mu, j - 1) * lj(k, c);
                    }
                    xi.xi0(c, d, mu) += s;
                }
            for (int a = 0; a < 4; ++a) {
                ScalarExpr s = group_derivative(m.psi1(a, mu, j - 1), j);
                for (int b = 0; b < 4; ++b)
                    if (!lj(b, a).is_zero()) s -= m.psi1(b, mu, j - 1) * lj(b, a);
                xi.xi1(a, mu) += s;
            }
        }
    return xi;
}

bool HvdwResiduals::all_zero() const {
    for (const auto &f : spin)
        if (!f.is_zero()) return false;
    for (const auto &f : einstein)
        if (!f.is_zero()) return false;
    return equivariance.passed();
}

HvdwResiduals hvdw_residuals(const LiftedConnection &l, const MomentumField &m, const LorentzGroupElement &g0,
                             int samples, std::uint64_t seed) {
    validate_momentum(m);
    HvdwResiduals r;
    XiData xi = xi_terms(m);
    auto Sigma = lifted_spin_3form(l, g0);
    auto Upsilon = lifted_einstein_3form(l, g0);
    for (int c = 0; c < 4; ++c)
        for (int d = 0; d < 4; ++d) {
            Vec4<ScalarExpr> h = hodge_3form(Sigma(c, d));
            for (int s = 0; s < 4; ++s) r.spin(c, d, s) = h(s) * Rational(2) - at_group(xi.xi0(c, d, s), g0);
        }
    for (int a = 0; a < 4; ++a) {
        Vec4<ScalarExpr> h = hodge_3form(Upsilon[a]);
        for (int s = 0; s < 4; ++s) r.einstein(a, s) = h(s) * Rational(2) - at_group(xi.xi1(a, s), g0);
    }
    r.equivariance = check_equivariance(l, samples, seed);
    return r;
}

bool EinsteinCartanResiduals::zero() const {
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            if (!r1(a, b).is_zero()) return false;
    for (const auto &v : r2)
        if (!v.is_zero()) return false;
    return true;
}

EinsteinCartanResiduals einstein_cartan_residuals(const TetradField &e, const ConnectionField &A,
                                                  const MomentumField &m, const XPoint &x,
                                                  const LorentzGroupElement &g0) {
    validate_momentum(m);
    FrameTensors t = frame_tensors(e, A, x);
    auto values = full_assignment(x, g0);
    // rho_j p1_a^{sigma j} and rho_j p0_{c}^{e sigma j}, summed over j
    Mat4<Rational> d1 = zero4(); // (a, sigma)
    Tensor<Rational, 4, 4, 4> d0; // (e, c, sigma)
    for (int j = 1; j <= kGenerators; ++j)
        for (int s = 0; s < 4; ++s) {
            for (int a = 0; a < 4; ++a) d1(a, s) += evaluate(group_derivative(m.psi1(a, s, j - 1), j), values);
            for (int ee = 0; ee < 4; ++ee)
                for (int c = 0; c < 4; ++c)
                    d0(ee, c, s) += evaluate(group_derivative(m.psi0(ee, c, s, j - 1), j), values);
        }
    EinsteinCartanResiduals r;
    r.r1 = zero4();
    for (int b = 0; b < 4; ++b)
        for (int a = 0; a < 4; ++a) {
            Rational p; // rho_j p_a^{bj}
            for (int s = 0; s < 4; ++s) p += d1(a, s) * t.e(b, s);
            r.r1(b, a) = t.einstein_mixed(b, a) - p * Rational(1, 2);
        }
    Tensor<Rational, 4, 4, 4> p0; // (c', e, a') = rho_j p_{c'}^{e a' j}
    for (int cp = 0; cp < 4; ++cp)
        for (int ee = 0; ee < 4; ++ee)
            for (int ap = 0; ap < 4; ++ap)
                for (int s = 0; s < 4; ++s) p0(cp, ee, ap) += d0(ee, cp, s) * t.e(ap, s);
    auto kd = [](int i, int k) { return i == k ? 1 : 0; };
    for (int a = 0; a < 4; ++a)
        for (int c = 0; c < 4; ++c)
            for (int d = 0; d < 4; ++d) {
                Rational s = t.torsion(a, c, d);
                for (int cp = 0; cp < 4; ++cp)
                    for (int ee = 0; ee < 4; ++ee)
                        for (int ap = 0; ap < 4; ++ap) {
                            if (p0(cp, ee, ap).is_zero()) continue;
                            Rational k = Rational(metric(d, ee) * kd(a, ap) * kd(cp, c)) +
                                         Rational(kd(cp, ap) * (kd(a, d) * metric(c, ee) - kd(a, c) * metric(d, ee)), 2);
                            if (!k.is_zero()) s += k * p0(cp, ee, ap);
                        }
                r.r2(a, c, d) = s;
            }
    return r;
}

Tensor<Rational, 4, 4, 4, 4> epsilon_lemma_residual(const Mat4<Rational> &eta0) {
    Tensor<Rational, 4, 4, 4, 4> E;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            for (int c = 0; c < 4; ++c)
                for (int d = 0; d < 4; ++d) {
                    Rational s;
                    for (int k = 0; k < 4; ++k) {
                        s += eta0(k, a) * Rational(epsilon_mixed(k, b, c, d));
                        s += eta0(k, b) * Rational(epsilon_mixed(a, k, c, d));
                        s += eta0(k, c) * Rational(epsilon_mixed(a, b, k, d));
                        s -= eta0(d, k) * Rational(epsilon_mixed(a, b, c, k));
                    }
                    E(a, b, c, d) = s;
                }
    return E;
}

namespace {
PoincareDual<Rational> as_dual(const Mat4<Rational> &psi0, const Vec4<Rational> &psi1) {
    // psi0 is stored (d, c) = psi^d_c, the dual pairs lambda_c^d with xi^c_d
    return {psi0.transpose(), psi1};
}

bool same_functional(const PoincareDual<Rational> &a, const PoincareDual<Rational> &b) {
    for (int i = 0; i < 10; ++i)
        if (pairing(a, poincare_basis(i)) != pairing(b, poincare_basis(i))) return false;
    return true;
}

Form constant_one_form(const std::array<Rational, 4> &c) {
    Form f;
    for (int mu = 0; mu < 4; ++mu)
        if (!c[mu].is_zero()) f += Form::dx(mu) * ScalarExpr(c[mu]);
    return f;
}
} // namespace

YogaReport coadjoint_yoga_checks(const PhasePoint &pt, const MomentumField &p) {
    YogaReport r;
    auto fail = [&](const std::string &what) {
        if (r.witness.empty()) r.witness = what;
    };

    r.epsilon_lemma = true;
    for (int mu = 0; mu < 4 && r.epsilon_lemma; ++mu) {
        auto E = epsilon_lemma_residual(pt.eta0[mu]);
        for (std::size_t k = 0; k < E.size; ++k)
            if (!E.data()[k].is_zero()) {
                auto i = E.unflatten(k);
                fail("E_{abc}^d" + index_tuple({int(i[0]), int(i[1]), int(i[2]), int(i[3])}) + " = " +
                     E.data()[k].to_string() + " for eta0_" + std::to_string(mu));
                r.epsilon_lemma = false;
                break;
            }
    }

    Bivector X = eta1_bivector(pt);
    r.coadjoint_components = true;
    for (int mu = 0; mu < 4; ++mu) {
        PoincareDual<Rational> lhs, rhs;
        for (int nu = 0; nu < 4; ++nu) {
            auto ad = coadjoint(PoincareElement<Rational>{pt.eta0[nu], pt.eta1[nu]},
                                as_dual(pt.psi0[mu][nu], pt.psi1[mu][nu]));
            lhs.rot_dual += ad.rot_dual;
            lhs.trans_dual += ad.trans_dual;
            rhs.rot_dual += bracket(X[mu][nu], pt.eta0[nu]).transpose();
        }
        for (int j = 1; j <= kGenerators; ++j) {
            const Mat4<Rational> &lj = lorentz_generator(j);
            auto ad = coadjoint(PoincareElement<Rational>{lj, zero_vec()},
                                as_dual(pt.psi0_g[mu][j - 1], pt.psi1_g[mu][j - 1]));
            lhs.rot_dual += ad.rot_dual;
            lhs.trans_dual += ad.trans_dual;
            rhs.rot_dual += bracket(pt.psi0_g[mu][j - 1], lj).transpose();
            rhs.trans_dual += lj.transpose() * pt.psi1_g[mu][j - 1];
        }
        if (!same_functional(lhs, rhs)) {
            r.coadjoint_components = false;
            fail("ad* component formula fails for mu = " + std::to_string(mu));
        }
    }

    // (ad*_{eta_nu} psi^{mu nu})^d_c beta3_mu against eps_{abc}^d eta0^a_{a'} ^ eta1^{a'} ^ eta1^b
    std::array<Form, 4> e1;
    Tensor<Form, 4, 4> e0;
    for (int a = 0; a < 4; ++a) {
        e1[a] = constant_one_form({pt.eta1[0](a), pt.eta1[1](a), pt.eta1[2](a), pt.eta1[3](a)});
        for (int b = 0; b < 4; ++b)
            e0(a, b) = constant_one_form({pt.eta0[0](a, b), pt.eta0[1](a, b), pt.eta0[2](a, b), pt.eta0[3](a, b)});
    }
    Tensor<Form, 4, 4> lhs3, rhs3; // (d, c)
    for (int mu = 0; mu < 4; ++mu) {
        Mat4<Rational> k = zero4();
        for (int nu = 0; nu < 4; ++nu) k += bracket(X[mu][nu], pt.eta0[nu]);
        for (int d = 0; d < 4; ++d)
            for (int c = 0; c < 4; ++c)
                if (!k(d, c).is_zero()) lhs3(d, c) += basis_beta(3, {mu}) * ScalarExpr(k(d, c));
    }
    for (int a = 0; a < 4; ++a)
        for (int ap = 0; ap < 4; ++ap) {
            if (e0(a, ap).is_zero()) continue;
            for (int b = 0; b < 4; ++b) {
                Form w = wedge({e0(a, ap), e1[ap], e1[b]});
                if (w.is_zero()) continue;
                for (int c = 0; c < 4; ++c)
                    for (int d = 0; d < 4; ++d)
                        if (int s = epsilon_mixed(a, b, c, d)) rhs3(d, c) += w * ScalarExpr(s);
            }
        }
    r.constraint_surface = true;
    r.constraint_surface_opposite_sign = true;
    for (int d = 0; d < 4; ++d)
        for (int c = 0; c < 4; ++c)
            if (!(lhs3(d, c) == -rhs3(d, c) * ScalarExpr(signs::kConstraintSurface))) r.constraint_surface_opposite_sign = false;
    for (int d = 0; d < 4 && r.constraint_surface; ++d)
        for (int c = 0; c < 4; ++c)
            if (!(lhs3(d, c) == rhs3(d, c) * ScalarExpr(signs::kConstraintSurface))) {
                r.constraint_surface = false;
                fail("constraint-surface 3-form identity fails at (d,c) = " + index_tuple({d, c}) + ": " +
                     lhs3(d, c).to_string() + " vs " + rhs3(d, c).to_string());
                break;
            }

    // Xi computed from psi = (gbar p0 g, p1 g) against gbar (rho_j p0) g and (rho_j p1) g
    MomentumField psi;
    for (int mu = 0; mu < 4; ++mu)
        for (int j = 0; j < kGenerators; ++j) {
            for (int d = 0; d < 4; ++d)
                for (int c = 0; c < 4; ++c) {
                    ScalarExpr s;
                    for (int x = 0; x < 4; ++x)
                        for (int y = 0; y < 4; ++y)
                            if (!p.psi0(x, y, mu, j).is_zero())
                                s += ScalarExpr::gbar(d, x) * p.psi0(x, y, mu, j) * ScalarExpr::g(y, c);
                    psi.psi0(d, c, mu, j) = std::move(s);
                }
            for (int a = 0; a < 4; ++a) {
                ScalarExpr s;
                for (int x = 0; x < 4; ++x)
                    if (!p.psi1(x, mu, j).is_zero()) s += p.psi1(x, mu, j) * ScalarExpr::g(x, a);
                psi.psi1(a, mu, j) = std::move(s);
            }
        }
    XiData xi = xi_terms(psi);
    auto values = full_assignment(pt.x, pt.g);
    r.xi_conjugation = true;
    for (int mu = 0; mu < 4 && r.xi_conjugation; ++mu) {
        Mat4<Rational> dp0 = zero4();
        Vec4<Rational> dp1 = zero_vec();
        for (int j = 1; j <= kGenerators; ++j) {
            for (int d = 0; d < 4; ++d)
                for (int c = 0; c < 4; ++c) dp0(d, c) += evaluate(group_derivative(p.psi0(d, c, mu, j - 1), j), values);
            for (int a = 0; a < 4; ++a) dp1(a) += evaluate(group_derivative(p.psi1(a, mu, j - 1), j), values);
        }
        Mat4<Rational> expect0 = pt.g.ginv * dp0 * pt.g.g;     // (d, c)
        Vec4<Rational> expect1 = pt.g.g.transpose() * dp1;    // (a)
        for (int c = 0; c < 4; ++c) {
            for (int d = 0; d < 4; ++d)
                if (evaluate(xi.xi0(c, d, mu), values) != expect0(d, c)) {
                    r.xi_conjugation = false;
                    fail("Xi0 conjugation fails at (c,d,mu) = " + index_tuple({c, d, mu}));
                }
            if (evaluate(xi.xi1(c, mu), values) != expect1(c)) {
                r.xi_conjugation = false;
                fail("Xi1 conjugation fails at (a,mu) = " + index_tuple({c, mu}));
            }
        }
    }
    return r;
}

} // namespace cartan
