#include "cartan/harness.hpp"

#include "cartan/multisymplectic.hpp"
#include "cartan/oracle.hpp"

#include <chrono>
#include <algorithm>
#include <atomic>
#include <optional>
#include <regex>
#include <sstream>
#include <thread>

namespace cartan::harness {

namespace o = cartan::oracle;

std::string to_string(OracleKind k) {
    switch (k) {
    case OracleKind::ExhaustiveIndexSum: return "exhaustive-index-sum";
    case OracleKind::FormExpansion: return "form-expansion";
    case OracleKind::FiniteDifferenceOnGroup: return "finite-difference-on-group";
    case OracleKind::CoefficientExtraction: return "coefficient-extraction";
    }
    return "?";
}

std::string to_string(Verdict v) {
    switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Skipped: return "skipped";
    }
    return "?";
}

bool SuiteRun::passed() const {
    for (const auto &r : results)
        if (r.verdict == Verdict::Fail) return false;
    return true;
}

std::uint64_t check_seed(std::uint64_t suite_seed, const std::string &id) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : id) h = (h ^ c) * 1099511628211ull;
    return suite_seed * 0x9e3779b97f4a7c15ull ^ h;
}

namespace {

std::string str(const Rational &r) { return r.to_string(); }
std::string str(const ScalarExpr &e) { return e.to_string(); }
std::string str(const Form &f) { return f.to_string(); }
std::string str(bool v) { return v ? "true" : "false"; }
template <class T, int R, int C> std::string str(const Eigen::Matrix<T, R, C> &m) {
    std::string s = "[";
    for (int i = 0; i < R; ++i) {
        if (i) s += "; ";
        for (int j = 0; j < C; ++j) s += (j ? " " : "") + str(m(i, j));
    }
    return s + "]";
}
template <class D> std::string str(const Eigen::MatrixBase<D> &m) { return str(typename D::PlainObject(m)); }

/// Keeps the first failure; tuples are visited in lexicographic order so it is the minimal one.
class Tally {
  public:
    template <class L, class R> void equal(const char *what, std::initializer_list<int> idx, const L &lhs, const R &rhs) {
        ++count_;
        if (lhs == rhs || !ok_) {
            if (!(lhs == rhs)) ok_ = false;
            return;
        }
        ok_ = false;
        std::ostringstream w;
        w << what << " at (";
        bool first = true;
        for (int i : idx) {
            w << (first ? "" : ",") << i;
            first = false;
        }
        w << "): lhs = " << str(lhs) << ", rhs = " << str(rhs);
        witness_ = w.str();
    }
    void expect(bool cond, const char *what, std::initializer_list<int> idx = {}) { equal(what, idx, cond, true); }
    bool ok() const { return ok_; }
    CheckOutcome outcome(std::string note = {}) const { return {ok_, false, witness_, std::move(note), count_}; }

  private:
    bool ok_ = true;
    std::string witness_;
    long count_ = 0;
};

const std::vector<XPoint> kPoints = {XPoint{0, 0, 0, 0}, XPoint{1, Rational(1, 2), -1, Rational(1, 3)},
                                     XPoint{Rational(-2, 3), 1, Rational(1, 4), 2}};

FieldConfig draw_field(Sampler &s, int degree) { return random_field(s, {degree, 3, 1, 3}, kPoints); }

o::DenseTensor dense(const Mat4<Rational> &m) {
    o::DenseTensor t(2);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) t.at({i, j}) = m(i, j);
    return t;
}

o::DenseTensor dense4(const Tensor<Rational, 4, 4, 4, 4> &v) {
    o::DenseTensor t(4);
    for (std::size_t k = 0; k < v.size; ++k) t.data()[k] = v.data()[k];
    return t;
}

int delta(int a, int b) { return a == b ? 1 : 0; }

// ---------------------------------------------------------------- coframe yoga

/// A coframe family: 1-forms f[a], frame vectors v[a] dual to them, and the top form.
struct Coframe {
    std::vector<Form> f;
    std::vector<std::array<ScalarExpr, kFormGenerators>> v;
    int offset = 0; // first index value
    Form top;

    Form one(int a) const { return f[a - offset]; }
    Form two(int a, int b) const { return wedge(one(a), one(b)); }
    /// f^{(p)}_{i_1...}: contract v_{i_1} first.
    Form dual(std::initializer_list<int> idx) const {
        Form r = top;
        for (int i : idx) r = contract(std::span<const ScalarExpr, kFormGenerators>(v[i - offset]), r);
        return r;
    }
    int size() const { return static_cast<int>(f.size()); }
};

Coframe beta_coframe() {
    Coframe c;
    c.top = beta_volume();
    for (int mu = 0; mu < 4; ++mu) {
        c.f.push_back(Form::dx(mu));
        std::array<ScalarExpr, kFormGenerators> v{};
        v[dx_generator(mu)] = ScalarExpr(1);
        c.v.push_back(v);
    }
    return c;
}

Coframe gamma_coframe() {
    Coframe c;
    c.offset = 1;
    c.top = gamma_volume();
    for (int i = 1; i <= kGenerators; ++i) {
        c.f.push_back(Form::gamma(i));
        std::array<ScalarExpr, kFormGenerators> v{};
        v[gamma_generator(i)] = ScalarExpr(1);
        c.v.push_back(v);
    }
    return c;
}

/// e^a = E^a_mu dx^mu for an invertible constant E, with frame vectors e_a = (E^-1)^mu_a d_mu.
Coframe tetrad_coframe(Sampler &s) {
    for (;;) {
        Mat4<Rational> E = s.matrix();
        auto inv = inverse4(E);
        if (!inv) continue;
        Coframe c;
        for (int a = 0; a < 4; ++a) {
            Form f;
            std::array<ScalarExpr, kFormGenerators> v{};
            for (int mu = 0; mu < 4; ++mu) {
                f += Form::dx(mu) * ScalarExpr(E(a, mu));
                v[dx_generator(mu)] = ScalarExpr((*inv)(mu, a));
            }
            c.f.push_back(f);
            c.v.push_back(v);
        }
        c.top = wedge({c.f[0], c.f[1], c.f[2], c.f[3]});
        return c;
    }
}

/// The four braced identities of one table, for a coframe of dimension n.
/// Family numbering: 1 = f^s ^ f_{(n-2)}, 2 = f^{sk} ^ f_{(n-2)}, 3 = f^s ^ f_{(n-3)}, 4 = f^{sk} ^ f_{(n-3)}.
void coframe_family(const Coframe &c, int family, Tally &t) {
    const int lo = c.offset, hi = c.offset + c.size();
    auto d2 = [&](int a, int b, int p, int q) { return Rational(delta(a, p) * delta(b, q) - delta(a, q) * delta(b, p)); };
    for (int s = lo; s < hi; ++s)
        for (int k = (family % 2 == 0 ? lo : 0); k < (family % 2 == 0 ? hi : 1); ++k)
            for (int m = lo; m < hi; ++m)
                for (int n = lo; n < hi; ++n)
                    for (int r = (family >= 3 ? lo : 0); r < (family >= 3 ? hi : 1); ++r) {
                        Form lhs, rhs;
                        switch (family) {
                        case 1: // f^s ^ f2_{mn} = d^s_n f1_m - d^s_m f1_n  (f1 = one contraction)
                            lhs = wedge(c.one(s), c.dual({m, n}));
                            rhs = c.dual({m}) * ScalarExpr(delta(s, n)) - c.dual({n}) * ScalarExpr(delta(s, m));
                            t.equal("f^s ^ f(m,n)", {s, m, n}, lhs, rhs);
                            break;
                        case 2:
                            lhs = wedge(c.two(s, k), c.dual({m, n}));
                            rhs = c.top * ScalarExpr(d2(s, k, m, n));
                            t.equal("f^{sk} ^ f(m,n)", {s, k, m, n}, lhs, rhs);
                            break;
                        case 3:
                            lhs = wedge(c.one(s), c.dual({m, n, r}));
                            rhs = c.dual({n, r}) * ScalarExpr(delta(s, m)) + c.dual({r, m}) * ScalarExpr(delta(s, n)) +
                                  c.dual({m, n}) * ScalarExpr(delta(s, r));
                            t.equal("f^s ^ f(m,n,r)", {s, m, n, r}, lhs, rhs);
                            break;
                        case 4:
                            lhs = wedge(c.two(s, k), c.dual({m, n, r}));
                            rhs = c.dual({m}) * ScalarExpr(d2(s, k, n, r)) + c.dual({n}) * ScalarExpr(d2(s, k, r, m)) +
                                  c.dual({r}) * ScalarExpr(d2(s, k, m, n));
                            t.equal("f^{sk} ^ f(m,n,r)", {s, k, m, n, r}, lhs, rhs);
                            break;
                        }
                    }
}

/// f^s ^ f_{(n-1)}_m = d^s_m top.
void coframe_volume(const Coframe &c, Tally &t) {
    for (int s = c.offset; s < c.offset + c.size(); ++s)
        for (int m = c.offset; m < c.offset + c.size(); ++m)
            t.equal("f^s ^ f(m)", {s, m}, wedge(c.one(s), c.dual({m})), c.top * ScalarExpr(delta(s, m)));
}

// ---------------------------------------------------------------- oracle-side tensors

/// G^b_a = 1/4 eps^{bcdx} eps_{aefx} F^{ef}_{cd}, indexed (b, a).
o::DenseTensor einstein_oracle(const FrameTensors &t) {
    auto F = dense4(t.curvature_up);
    auto G = o::contract({{&o::epsilon_upper(), "bcdx"}, {&o::epsilon_lower(), "aefx"}, {&F, "efcd"}}, "ba");
    for (auto &v : G.data()) v *= Rational(1, 4);
    return G;
}

/// T^a_{cd} from the component formula e^mu_c e^nu_d (d_mu e^a_nu - d_nu e^a_mu + A^a_{b mu} e^b_nu - A^a_{b nu} e^b_mu).
o::DenseTensor torsion_oracle(const FieldConfig &f, const XPoint &x) {
    auto v = base_assignment(x);
    o::DenseTensor T(3), C(3);
    for (int a = 0; a < 4; ++a)
        for (int m = 0; m < 4; ++m)
            for (int n = 0; n < 4; ++n) {
                ScalarExpr c = diff_x(f.tetrad.e(a, n), m) - diff_x(f.tetrad.e(a, m), n);
                for (int b = 0; b < 4; ++b) c += f.connection.A[m](a, b) * f.tetrad.e(b, n) - f.connection.A[n](a, b) * f.tetrad.e(b, m);
                C.at({a, m, n}) = evaluate(c, v);
            }
    auto inv = inverse4(evaluate(f.tetrad.e, v));
    o::DenseTensor ei = dense(*inv); // (mu, c) = e^mu_c
    return o::contract({{&C, "amn"}, {&ei, "mc"}, {&ei, "nd"}}, "acd");
}

/// Coordinate F^c_{d l m} from the component formula.
o::DenseTensor coordinate_curvature(const ConnectionField &A, const XPoint &x) {
    auto v = base_assignment(x);
    o::DenseTensor t(4);
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            for (int r = 0; r < 4; ++r)
                for (int s = 0; s < 4; ++s) {
                    ScalarExpr f = diff_x(A.A[s](a, b), r) - diff_x(A.A[r](a, b), s);
                    for (int k = 0; k < 4; ++k) f += A.A[r](a, k) * A.A[s](k, b) - A.A[s](a, k) * A.A[r](k, b);
                    t.at({a, b, r, s}) = evaluate(f, v);
                }
    return t;
}

/// 1/2 h^{bb'} (T^c_{b'c} d^{a'}_a + T^c_{ca} d^{a'}_{b'} + T^c_{ab'} d^{a'}_c), indexed (a, b, a').
o::DenseTensor spin_pattern_oracle(const o::DenseTensor &T) {
    o::DenseTensor P(3);
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            for (int ap = 0; ap < 4; ++ap) {
                Rational s(0);
                for (int bp = 0; bp < 4; ++bp) {
                    Rational h = o::metric().at({b, bp});
                    if (h.is_zero()) continue;
                    for (int c = 0; c < 4; ++c) {
                        if (ap == a) s += h * T.at({c, bp, c});
                        if (ap == bp) s += h * T.at({c, c, a});
                        if (ap == c) s += h * T.at({c, a, bp});
                    }
                }
                P.at({a, b, ap}) = s * Rational(1, 2);
            }
    return P;
}

/// Draw a field whose Einstein tensor is nonzero at kPoints[1].
FieldConfig nonvacuum_field(Sampler &s, int degree) {
    for (;;) {
        auto f = draw_field(s, degree);
        auto G = einstein_oracle(frame_tensors(f.tetrad, f.connection, kPoints[1]));
        for (const auto &v : G.data())
            if (!v.is_zero()) return f;
    }
}

/// Smallest nonzero ratio lhs/rhs over all slots, checked for consistency by the caller.
std::optional<Rational> ratio(const Rational &lhs, const Rational &rhs) {
    if (rhs.is_zero()) return std::nullopt;
    return lhs / rhs;
}

// ---------------------------------------------------------------- dual numbers

/// a + b eps with eps^2 = 0.
struct Dual {
    Rational a, b;
    Dual(const Rational &x = Rational(0), const Rational &y = Rational(0)) : a(x), b(y) {}
    friend Dual operator+(const Dual &p, const Dual &q) { return {p.a + q.a, p.b + q.b}; }
    friend Dual operator*(const Dual &p, const Dual &q) { return {p.a * q.a, p.a * q.b + p.b * q.a}; }
};

/// Symbol values on the curve t -> g0 exp(t l_j) to first order, with g^-1 -> (I - t l_j) g0^-1.
std::array<Dual, kNumSymbols> group_curve(const XPoint &x, const LorentzGroupElement &g0, int j) {
    std::array<Dual, kNumSymbols> v;
    const auto &l = lorentz_generator(j);
    Mat4<Rational> dg = g0.g * l, dginv = -(l * g0.ginv);
    for (int mu = 0; mu < 4; ++mu) v[coordinate_symbol(mu)] = Dual(x[mu]);
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            v[group_symbol(a, b)] = Dual(g0.g(a, b), dg(a, b));
            v[group_inverse_symbol(a, b)] = Dual(g0.ginv(a, b), dginv(a, b));
        }
    return v;
}

Rational curve_derivative(const ScalarExpr &f, const std::array<Dual, kNumSymbols> &curve) {
    return evaluate_in<Dual>(f, std::span<const Dual, kNumSymbols>(curve)).b;
}

// ---------------------------------------------------------------- checks

using Body = std::function<CheckOutcome(const SamplerConfig &)>;

CheckOutcome coframe_check(const std::string &table, int family, const SamplerConfig &cfg) {
    Tally t;
    if (table == "beta") {
        auto c = beta_coframe();
        family ? coframe_family(c, family, t) : coframe_volume(c, t);
    } else if (table == "gamma") {
        auto c = gamma_coframe();
        coframe_family(c, family, t);
    } else {
        Sampler s(cfg.seed);
        for (int k = 0; k < cfg.samples && t.ok(); ++k) {
            auto c = tetrad_coframe(s);
            family ? coframe_family(c, family, t) : coframe_volume(c, t);
        }
    }
    return t.outcome();
}

CheckOutcome exterior_dd(const SamplerConfig &cfg) {
    Sampler s(cfg.seed);
    Tally t;
    for (int k = 0; k < cfg.samples; ++k) {
        Form a = s.form({cfg.x_degree, cfg.group_degree, 3}, 6);
        t.equal("d d a", {k}, ext_d(ext_d(a)), Form());
    }
    return t.outcome();
}

CheckOutcome exterior_leibniz(const SamplerConfig &cfg) {
    Sampler s(cfg.seed);
    Tally t;
    for (int k = 0; k < cfg.samples; ++k) {
        Form a = s.form({cfg.x_degree, cfg.group_degree, 2}, 4);
        Form b = s.form({cfg.x_degree, cfg.group_degree, 2}, 4);
        for (int p = 0; p <= kFormGenerators; ++p) {
            Form ap = a.part(p);
            if (ap.is_zero()) continue;
            Form rhs = wedge(ext_d(ap), b) + wedge(ap, ext_d(b)) * ScalarExpr(p % 2 ? -1 : 1);
            t.equal("d(a_p ^ b)", {k, p}, ext_d(wedge(ap, b)), rhs);
        }
    }
    return t.outcome();
}

CheckOutcome lorentz_jacobi(const SamplerConfig &cfg) {
    Tally t;
    for (int i = 0; i < 10; ++i)
        for (int j = 0; j < 10; ++j)
            for (int k = 0; k < 10; ++k) {
                auto x = poincare_basis(i), y = poincare_basis(j), z = poincare_basis(k);
                auto a = bracket(bracket(x, y), z), b = bracket(bracket(y, z), x), c = bracket(bracket(z, x), y);
                t.equal("Jacobi rotation part", {i, j, k}, Mat4<Rational>(a.rot + b.rot + c.rot), Mat4<Rational>::Zero());
                t.equal("Jacobi translation part", {i, j, k}, Vec4<Rational>(a.trans + b.trans + c.trans), Vec4<Rational>::Zero());
            }
    // rho_j realises the same algebra on functions of g
    Sampler s(cfg.seed);
    ScalarExpr f = s.polynomial({1, 3, 5});
    for (int i = 1; i <= kGenerators; ++i)
        for (int j = 1; j <= kGenerators; ++j) {
            ScalarExpr lhs = group_derivative(group_derivative(f, j), i) - group_derivative(group_derivative(f, i), j);
            ScalarExpr rhs;
            for (int k = 1; k <= kGenerators; ++k) rhs += group_derivative(f, k) * structure_constant(k, i, j);
            t.equal("[rho_i, rho_j] f", {i, j}, lhs, rhs);
        }
    return t.outcome();
}

CheckOutcome lorentz_epsilon(const SamplerConfig &cfg) {
    Sampler s(cfg.seed);
    Tally t;
    for (int k = 0; k < cfg.samples; ++k) {
        auto g = s.lorentz();
        auto G = dense(g.g), Gi = dense(g.ginv);
        auto lhs = o::contract({{&o::epsilon_mixed(), "abcd"}, {&Gi, "bp"}, {&Gi, "cq"}, {&G, "rd"}}, "apqr");
        auto rhs = o::contract({{&G, "sa"}, {&o::epsilon_mixed(), "spqr"}}, "apqr");
        for (int a = 0; a < 4; ++a)
            for (int p = 0; p < 4; ++p)
                for (int q = 0; q < 4; ++q)
                    for (int r = 0; r < 4; ++r)
                        t.equal("eps g^-1 g^-1 g vs g eps", {k, a, p, q, r}, lhs.at({a, p, q, r}), rhs.at({a, p, q, r}));
        t.expect(epsilon_equivariant(g.g, g.ginv), "library verdict", {k});
    }
    // a non-Lorentz matrix must break it
    Mat4<Rational> d = Mat4<Rational>::Identity();
    d(0, 0) = 2;
    t.expect(!epsilon_equivariant(d), "diag(2,1,1,1) rejected");
    return t.outcome();
}

CheckOutcome lorentz_coadjoint(const SamplerConfig &) {
    Tally t;
    // Pairing written out entrywise, independent of the library's pairing()
    auto pair = [](const PoincareDual<Rational> &l, const PoincareElement<Rational> &x) {
        Rational s(0);
        for (int a = 0; a < 4; ++a) {
            for (int b = 0; b < 4; ++b) s += l.rot_dual(a, b) * x.rot(a, b);
            s += Rational(2) * l.trans_dual(a) * x.trans(a);
        }
        return s * Rational(1, 2);
    };
    for (int i = 0; i < 10; ++i)
        for (int j = 0; j < 10; ++j) t.equal("<dual_i, basis_j>", {i, j}, pair(poincare_dual_basis(i), poincare_basis(j)), Rational(delta(i, j)));
    for (int i = 0; i < 10; ++i)
        for (int l = 0; l < 10; ++l)
            for (int k = 0; k < 10; ++k) {
                auto xi = poincare_basis(i), zeta = poincare_basis(k);
                auto lam = poincare_dual_basis(l);
                t.equal("<ad*_xi lambda, zeta> - <lambda, [xi, zeta]>", {i, l, k}, pair(coadjoint(xi, lam), zeta),
                        pair(lam, bracket(xi, zeta)));
            }
    return t.outcome();
}

CheckOutcome oracle_epsilon(const SamplerConfig &cfg) {
    Tally t;
    auto full = o::contract({{&o::epsilon_lower(), "abcd"}, {&o::epsilon_upper(), "abcd"}}, "");
    t.equal("eps_{abcd} eps^{abcd}", {}, full.data()[0], Rational(-24));
    auto pair = o::contract({{&o::epsilon_lower(), "abcd"}, {&o::epsilon_upper(), "efcd"}}, "abef");
    Sampler s(cfg.seed);
    for (int k = 0; k < 10; ++k) {
        int a = s.uniform(0, 3), b = s.uniform(0, 3), e = s.uniform(0, 3), f = s.uniform(0, 3);
        t.equal("eps eps^{..cd} vs -2 delta", {a, b, e, f}, pair.at({a, b, e, f}), Rational(-2) * o::kronecker2(e, f, a, b));
    }
    for (int a = 0; a < 4; ++a) t.equal("eps all equal", {a}, o::epsilon_lower().at({a, a, a, a}), Rational(0));
    // the Form-side integer tables agree with the oracle tables
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            for (int c = 0; c < 4; ++c)
                for (int d = 0; d < 4; ++d) {
                    t.equal("eps_lower", {a, b, c, d}, Rational(epsilon_lower(a, b, c, d)), o::epsilon_lower().at({a, b, c, d}));
                    t.equal("eps_mixed", {a, b, c, d}, Rational(epsilon_mixed(a, b, c, d)), o::epsilon_mixed().at({a, b, c, d}));
                    t.equal("eps_upper", {a, b, c, d}, Rational(epsilon_upper(a, b, c, d)), o::epsilon_upper().at({a, b, c, d}));
                }
    return t.outcome();
}

CheckOutcome fields_bianchi(const SamplerConfig &cfg) {
    Sampler s(cfg.seed);
    Tally t;
    for (int k = 0; k < cfg.samples; ++k) {
        auto f = draw_field(s, cfg.x_degree);
        auto T = torsion(f.tetrad, f.connection);
        auto F = curvature(f.connection);
        auto r = bianchi_residuals(f.tetrad, f.connection, T, F);
        for (int a = 0; a < 4; ++a) t.equal("dT + A^T - F^e", {k, a}, r.first[a], Form());
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b) t.equal("dF + [A, F]", {k, a, b}, r.second(a, b), Form());
    }
    return t.outcome();
}

/// Resolve the global sign of `form_side` against `oracle_side` and check it is the same everywhere.
struct SignResolver {
    std::optional<Rational> sigma;
    void feed(Tally &t, const char *what, std::initializer_list<int> idx, const Rational &form_side, const Rational &oracle_side) {
        if (!sigma) sigma = ratio(form_side, oracle_side);
        if (sigma) t.equal(what, idx, form_side, *sigma * oracle_side);
        else t.equal(what, idx, form_side, Rational(0));
    }
    std::string note(Tally &t, int expected) {
        t.expect(sigma.has_value(), "sign resolvable (nonvacuum data)");
        if (!sigma) return "sigma unresolved";
        t.equal("oracle sign vs built-in sign", {}, *sigma, Rational(expected));
        return "sigma = " + sigma->to_string();
    }
};

CheckOutcome einstein_sign(const SamplerConfig &cfg) {
    Sampler s(cfg.seed);
    Tally t;
    SignResolver sr;
    for (int k = 0; k < cfg.samples; ++k) {
        auto f = nonvacuum_field(s, cfg.x_degree);
        auto G = einstein_3form(f.tetrad, curvature(f.connection));
        for (int p = 0; p < 3; ++p) {
            auto ft = frame_tensors(f.tetrad, f.connection, kPoints[p]);
            auto Go = einstein_oracle(ft);
            for (int a = 0; a < 4; ++a) {
                auto kf = frame_coefficients(G[a], ft, kPoints[p]);
                for (int b = 0; b < 4; ++b) sr.feed(t, "G_a frame coefficient vs sigma G^b_a", {k, p, a, b}, kf(b), Go.at({b, a}));
            }
        }
    }
    auto note = sr.note(t, signs::kEinsteinFrame);
    return t.outcome(note);
}

CheckOutcome einstein_hodge(const SamplerConfig &cfg) {
    Sampler s(cfg.seed);
    Tally t;
    SignResolver sr;
    for (int k = 0; k < cfg.samples; ++k) {
        auto f = nonvacuum_field(s, cfg.x_degree);
        auto G = einstein_3form(f.tetrad, curvature(f.connection));
        for (int p = 0; p < 3; ++p) {
            const auto &x = kPoints[p];
            auto v = base_assignment(x);
            auto ft = frame_tensors(f.tetrad, f.connection, x);
            auto Go = einstein_oracle(ft);
            auto Fc = coordinate_curvature(f.connection, x);
            auto e = dense(ft.e);
            // 1/3! eps^{slmn} G_{almn}, with G_a = 1/2 eps_{abc}^d F^c_d ^ e^b
            auto hodge = o::contract({{&o::epsilon_upper(), "slmn"}, {&o::epsilon_mixed(), "abcd"}, {&Fc, "cdlm"}, {&e, "bn"}}, "as");
            auto ei = dense(ft.e_inv);
            auto frame = o::contract({{&Go, "ba"}, {&ei, "sb"}}, "as");
            for (int a = 0; a < 4; ++a) {
                auto h = hodge_3form(G[a]);
                for (int sl = 0; sl < 4; ++sl) {
                    Rational form_side = evaluate(h(sl), v);
                    t.equal("form hodge vs eps-sum hodge", {k, p, a, sl}, form_side, hodge.at({a, sl}) * Rational(1, 4));
                    sr.feed(t, "hodge(G_a)^s vs sigma det(e) G^b_a e^s_b", {k, p, a, sl}, form_side, ft.det_e * frame.at({a, sl}));
                }
            }
        }
    }
    auto note = sr.note(t, signs::kEinsteinHodge);
    return t.outcome(note);
}

CheckOutcome spin_sign(const SamplerConfig &cfg) {
    Sampler s(cfg.seed);
    Tally t;
    SignResolver sr;
    for (int k = 0; k < cfg.samples; ++k) {
        auto f = nonvacuum_field(s, cfg.x_degree);
        auto H = spin_3form(f.tetrad, torsion(f.tetrad, f.connection));
        for (int p = 0; p < 3; ++p) {
            auto ft = frame_tensors(f.tetrad, f.connection, kPoints[p]);
            auto P = spin_pattern_oracle(torsion_oracle(f, kPoints[p]));
            for (int a = 0; a < 4; ++a)
                for (int b = 0; b < 4; ++b) {
                    auto kf = frame_coefficients(H(a, b), ft, kPoints[p]);
                    for (int ap = 0; ap < 4; ++ap)
                        sr.feed(t, "H_a^b frame coefficient vs sigma pattern", {k, p, a, b, ap}, kf(ap), P.at({a, b, ap}));
                }
        }
    }
    auto note = sr.note(t, signs::kSpinFrame);
    return t.outcome(note);
}

CheckOutcome spin_hodge(const SamplerConfig &cfg) {
    Sampler s(cfg.seed);
    Tally t;
    SignResolver sr;
    for (int k = 0; k < cfg.samples; ++k) {
        auto f = nonvacuum_field(s, cfg.x_degree);
        auto T = torsion(f.tetrad, f.connection);
        auto H = spin_3form(f.tetrad, T);
        for (int p = 0; p < 3; ++p) {
            const auto &x = kPoints[p];
            auto v = base_assignment(x);
            auto ft = frame_tensors(f.tetrad, f.connection, x);
            auto To = torsion_oracle(f, x);
            auto P = spin_pattern_oracle(To);
            auto e = dense(ft.e), ei = dense(ft.e_inv);
            // coordinate torsion T^a_{lm} = e^c_l e^d_m T^a_{cd}
            auto Tc = o::contract({{&To, "acd"}, {&e, "cl"}, {&e, "dm"}}, "alm");
            auto hodge = o::contract({{&o::epsilon_upper(), "slmn"}, {&o::epsilon_mixed(), "abcd"}, {&Tc, "alm"}, {&e, "bn"}}, "cds");
            auto frame = o::contract({{&P, "abq"}, {&ei, "sq"}}, "abs");
            for (int a = 0; a < 4; ++a)
                for (int b = 0; b < 4; ++b) {
                    auto h = hodge_3form(H(a, b));
                    for (int sl = 0; sl < 4; ++sl) {
                        Rational form_side = evaluate(h(sl), v);
                        t.equal("form hodge vs eps-sum hodge", {k, p, a, b, sl}, form_side, hodge.at({a, b, sl}) * Rational(1, 4));
                        sr.feed(t, "hodge(H_a^b)^s vs sigma det(e) pattern e^s", {k, p, a, b, sl}, form_side,
                                ft.det_e * frame.at({a, b, sl}));
                    }
                }
        }
    }
    auto note = sr.note(t, signs::kSpinHodge);
    return t.outcome(note);
}

CheckOutcome gauge_einstein(const SamplerConfig &cfg) {
    Sampler s(cfg.seed);
    Tally t;
    for (int k = 0; k < 2; ++k) {
        auto f = nonvacuum_field(s, cfg.x_degree);
        auto l = lift(f.tetrad, f.connection);
        auto G = einstein_3form(f.tetrad, curvature(f.connection));
        for (int q = 0; q < cfg.samples; ++q) {
            auto g = s.lorentz();
            auto U = lifted_einstein_3form(l, g);
            for (int a = 0; a < 4; ++a) {
                Form expect;
                for (int ap = 0; ap < 4; ++ap) expect += G[ap] * ScalarExpr(g.g(ap, a));
                t.equal("Upsilon_a(lift) vs G_a' g^a'_a", {k, q, a}, U[a], expect);
            }
        }
    }
    return t.outcome();
}

CheckOutcome gauge_spin(const SamplerConfig &cfg) {
    Sampler s(cfg.seed);
    Tally t;
    for (int k = 0; k < 2; ++k) {
        auto f = nonvacuum_field(s, cfg.x_degree);
        auto l = lift(f.tetrad, f.connection);
        auto H = spin_3form(f.tetrad, torsion(f.tetrad, f.connection));
        for (int q = 0; q < cfg.samples; ++q) {
            auto g = s.lorentz();
            auto S = lifted_spin_3form(l, g);
            for (int c = 0; c < 4; ++c)
                for (int d = 0; d < 4; ++d) {
                    Form expect;
                    for (int cp = 0; cp < 4; ++cp)
                        for (int dp = 0; dp < 4; ++dp) {
                            Rational w = g.g(cp, c) * g.ginv(d, dp);
                            if (!w.is_zero()) expect += H(cp, dp) * ScalarExpr(w);
                        }
                    t.equal("Sigma_c^d(lift) vs H g g^-1", {k, q, c, d}, S(c, d), expect);
                }
        }
    }
    return t.outcome();
}

Form conjugate(const Tensor<Form, 4, 4> &F, const LorentzGroupElement &g, int c, int d) {
    Form out;
    for (int x = 0; x < 4; ++x)
        for (int y = 0; y < 4; ++y) {
            Rational w = g.ginv(c, x) * g.g(y, d);
            if (!w.is_zero()) out += F(x, y) * ScalarExpr(w);
        }
    return out;
}

CheckOutcome lift_normalization(const SamplerConfig &cfg) {
    Sampler s(cfg.seed);
    Tally t;
    for (int k = 0; k < cfg.samples; ++k) {
        auto f = draw_field(s, cfg.x_degree);
        auto rep = check_normalization(lift(f.tetrad, f.connection), kDefaultEvaluationSamples, cfg.seed + k);
        for (int i = 0; i < kGenerators; ++i) {
            t.expect(rep.alpha[i], "rho_i _| alpha = 0", {k, i + 1});
            t.expect(rep.omega[i], "rho_i _| omega = l_i", {k, i + 1});
        }
    }
    // removing the Maurer-Cartan part must be caught
    auto f = draw_field(s, 1);
    auto l = lift(f.tetrad, f.connection);
    auto bad = l;
    for (int c = 0; c < 4; ++c)
        for (int d = 0; d < 4; ++d) {
            Form only_dx;
            for (const auto &[m, coef] : l.omega(c, d).terms())
                if ((m & vertical_mask) == 0) only_dx += Form::monomial(m, coef);
            bad.omega(c, d) = only_dx;
        }
    t.expect(!check_normalization(bad).passed(), "lift without Maurer-Cartan part rejected");
    return t.outcome();
}

CheckOutcome lift_curvature(const SamplerConfig &cfg) {
    Sampler s(cfg.seed);
    Tally t;
    for (int k = 0; k < 2; ++k) {
        auto f = draw_field(s, cfg.x_degree);
        auto l = lift(f.tetrad, f.connection);
        auto F = curvature(f.connection);
        for (int q = 0; q < cfg.samples; ++q) {
            auto g = s.lorentz();
            auto Om = lifted_curvature(l, g);
            for (int c = 0; c < 4; ++c)
                for (int d = 0; d < 4; ++d) t.equal("Omega vs g^-1 F g", {k, q, c, d}, Om(c, d), conjugate(F.form, g, c, d));
        }
    }
    return t.outcome();
}

CheckOutcome section_check(const SamplerConfig &cfg) {
    Sampler s(cfg.seed);
    Tally t;
    for (int k = 0; k < cfg.samples; ++k) {
        auto f = draw_field(s, cfg.x_degree);
        auto back = section_roundtrip(lift(f.tetrad, f.connection));
        t.expect(!back.warning, "no equivariance warning", {k});
        t.equal("tetrad", {k}, back.tetrad.e, f.tetrad.e);
        for (int mu = 0; mu < 4; ++mu) t.equal("connection", {k, mu}, back.connection.A[mu], f.connection.A[mu]);
    }
    return t.outcome();
}

CheckOutcome wec_check(const SamplerConfig &cfg) {
    Sampler s(cfg.seed);
    Tally t;
    {
        TetradField e;
        ConnectionField A;
        t.equal("flat density", {}, wec_density(lift(e, A)).coefficient, ScalarExpr());
    }
    for (int k = 0; k < cfg.samples; ++k) {
        auto f = nonvacuum_field(s, 1);
        auto l = lift(f.tetrad, f.connection);
        auto base = base_action_density(f.tetrad, f.connection);
        t.equal("density at identity vs base density", {k}, wec_density(l, LorentzGroupElement{}).coefficient, base);
        for (int q = 0; q < 3; ++q) t.equal("density gauge invariant", {k, q}, wec_density(l, s.lorentz()).coefficient, base);
        // 1/2 eps_{abcd} e^c ^ e^d ^ F^{ab} = 1/4 eps_{abcd} eps^{lmnr} e^c_l e^d_m F^{ab}_{nr} (coordinate), at points
        for (int p = 0; p < 3; ++p) {
            auto x = kPoints[p];
            auto v = base_assignment(x);
            auto Fc = coordinate_curvature(f.connection, x);
            // raise b with h
            auto Fup = o::contract({{&Fc, "aqnr"}, {&o::metric(), "qb"}}, "abnr");
            auto e = dense(evaluate(f.tetrad.e, v));
            auto sum = o::contract({{&o::epsilon_lower(), "abcd"}, {&o::epsilon_upper(), "lmnr"}, {&e, "cl"}, {&e, "dm"},
                                    {&Fup, "abnr"}},
                                   "");
            // the beta4 coefficient of a 4-form w is -(1/4!) eps^{lmnr} w_{lmnr} (epsilon^{0123} = -1)
            t.equal("base density vs eps-sum", {k, p}, evaluate(base, v), -sum.data()[0] * Rational(1, 4));
        }
    }
    return t.outcome();
}

CheckOutcome equivariance_lift(const SamplerConfig &cfg) {
    Sampler s(cfg.seed);
    Tally t;
    for (int k = 0; k < cfg.samples; ++k) {
        auto f = draw_field(s, cfg.x_degree);
        auto rep = check_equivariance(lift(f.tetrad, f.connection), kDefaultEvaluationSamples, cfg.seed + k);
        for (std::size_t i = 0; i < rep.omega_residual.size; ++i) {
            auto ix = rep.omega_residual.unflatten(i);
            t.equal("eta0_{;j} + [l_j, eta0]", {k, int(ix[0]), int(ix[1]), int(ix[2]), int(ix[3]) + 1}, rep.omega_residual.data()[i], ScalarExpr());
        }
        for (std::size_t i = 0; i < rep.alpha_residual.size; ++i) {
            auto ix = rep.alpha_residual.unflatten(i);
            t.equal("eta1_{;j} + l_j eta1", {k, int(ix[0]), int(ix[1]), int(ix[2]) + 1}, rep.alpha_residual.data()[i], ScalarExpr());
        }
    }
    return t.outcome();
}

CheckOutcome equivariance_perturbation(const SamplerConfig &cfg) {
    Sampler s(cfg.seed);
    Tally t;
    auto f = draw_field(s, cfg.x_degree);
    auto l = lift(f.tetrad, f.connection);
    // alpha^c += g^c_0 x0 dx^0 and omega^c_d += g^c_d x1 dx^1
    auto bad = l;
    for (int c = 0; c < 4; ++c) {
        bad.alpha[c] += Form::dx(0) * (ScalarExpr::g(c, 0) * ScalarExpr::x(0));
        for (int d = 0; d < 4; ++d) bad.omega(c, d) += Form::dx(1) * (ScalarExpr::g(c, d) * ScalarExpr::x(1));
    }
    auto r = check_equivariance(bad);
    t.expect(!r.alpha_zero, "alpha residual nonzero");
    t.expect(!r.omega_zero, "omega residual nonzero");
    // expected: rho_j(g^c_0) x0 + (l_j g)^c_0 x0, and rho_j(g) x1 + [l_j, g] x1 = (l_j g)^c_d x1
    for (int j = 1; j <= kGenerators; ++j) {
        const auto &lj = lorentz_generator(j);
        for (int c = 0; c < 4; ++c) {
            ScalarExpr ea;
            for (int q = 0; q < 4; ++q)
                ea += (ScalarExpr::g(c, q) * ScalarExpr(lj(q, 0)) + ScalarExpr(lj(c, q)) * ScalarExpr::g(q, 0)) * ScalarExpr::x(0);
            for (int mu = 0; mu < 4; ++mu) t.equal("alpha residual", {c, mu, j}, r.alpha_residual(c, mu, j - 1), mu == 0 ? ea : ScalarExpr());
            for (int d = 0; d < 4; ++d) {
                ScalarExpr eo;
                for (int q = 0; q < 4; ++q)
                    eo += ScalarExpr(lj(c, q)) * ScalarExpr::g(q, d) * ScalarExpr::x(1);
                for (int mu = 0; mu < 4; ++mu)
                    t.equal("omega residual", {c, d, mu, j}, r.omega_residual(c, d, mu, j - 1), mu == 1 ? eo : ScalarExpr());
            }
        }
    }
    return t.outcome();
}

CheckOutcome equivariance_subgroup(const SamplerConfig &cfg) {
    Sampler s(cfg.seed);
    Tally t;
    auto f = draw_field(s, cfg.x_degree);
    auto l = lift(f.tetrad, f.connection);
    for (int k = 0; k < cfg.samples; ++k) {
        auto g0 = s.lorentz();
        const auto &x = kPoints[k % kPoints.size()];
        auto v = full_assignment(x, g0);
        for (int j = 1; j <= kGenerators; ++j) {
            auto curve = group_curve(x, g0, j);
            const auto &lj = lorentz_generator(j);
            for (int mu = 0; mu < 4; ++mu) {
                Mat4<Rational> eta0, deta0;
                Vec4<Rational> eta1, deta1;
                for (int c = 0; c < 4; ++c) {
                    ScalarExpr a = component(l.alpha[c], VectorIndex::base(mu));
                    eta1(c) = evaluate(a, v);
                    deta1(c) = curve_derivative(a, curve);
                    t.equal("dual-number derivative vs rho_j (alpha)", {k, j, c, mu}, deta1(c), evaluate(group_derivative(a, j), v));
                    for (int d = 0; d < 4; ++d) {
                        ScalarExpr w = component(l.omega(c, d), VectorIndex::base(mu));
                        eta0(c, d) = evaluate(w, v);
                        deta0(c, d) = curve_derivative(w, curve);
                    }
                }
                t.equal("d/dt eta0 along g0 exp(t l_j) + [l_j, eta0]", {k, j, mu}, Mat4<Rational>(deta0 + lj * eta0 - eta0 * lj),
                        Mat4<Rational>::Zero());
                t.equal("d/dt eta1 along g0 exp(t l_j) + l_j eta1", {k, j, mu}, Vec4<Rational>(deta1 + lj * eta1), Vec4<Rational>::Zero());
            }
        }
    }
    return t.outcome();
}

PhasePoint random_phase_point(Sampler &s) {
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
    set_equivariant_jets(pt);
    return pt;
}

CheckOutcome legendre_check(const SamplerConfig &cfg) {
    Sampler s(cfg.seed);
    Tally t;
    for (int k = 0; k < cfg.samples; ++k) {
        PhasePoint pt = random_phase_point(s);
        project_to_constraints(pt);
        auto on = legendre_constraints(pt);
        t.expect(on.on_constraint_surface(), "gradient vanishes on N", {k});
        t.equal("H on N vs W", {k}, on.hamiltonian, legendre_W(pt));
        t.equal("H on N vs closed form", {k}, on.hamiltonian, hamiltonian(pt));

        // off N: perturb psi by an antisymmetric discrepancy; the gradient is that discrepancy
        PhasePoint off = pt;
        std::array<std::array<Mat4<Rational>, 4>, 4> d0{};
        std::array<std::array<Vec4<Rational>, 4>, 4> d1{};
        for (int mu = 0; mu < 4; ++mu)
            for (int nu = 0; nu < 4; ++nu) {
                d0[mu][nu] = Mat4<Rational>::Zero();
                d1[mu][nu] = Vec4<Rational>::Zero();
            }
        int mu = s.uniform(0, 3), nu = (mu + s.uniform(1, 3)) % 4;
        d0[mu][nu] = s.matrix();
        d0[nu][mu] = -d0[mu][nu];
        d1[mu][nu] = Vec4<Rational>(s.nonzero_rational(), s.rational(), s.rational(), s.rational());
        d1[nu][mu] = -d1[mu][nu];
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b) {
                off.psi0[a][b] += d0[a][b];
                off.psi1[a][b] += d1[a][b];
            }
        auto r = legendre_constraints(off);
        t.expect(!r.on_constraint_surface(), "gradient nonzero off N", {k});
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b) {
                t.equal("dW/d eta0_{a;b} vs psi discrepancy", {k, a, b}, r.eta0_gradient[a][b], d0[a][b]);
                t.equal("dW/d eta1_{a;b} vs psi discrepancy", {k, a, b}, r.eta1_gradient[a][b], d1[a][b]);
            }
    }
    return t.outcome();
}

CheckOutcome legendre_bivector(const SamplerConfig &cfg) {
    Sampler s(cfg.seed);
    Tally t;
    for (int k = 0; k < cfg.samples; ++k) {
        PhasePoint pt = random_phase_point(s);
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
                        if (int e = epsilon_lower(a, b, c, d)) total += wedge({alpha[c], alpha[d], Om}) * ScalarExpr(Rational(e * metric(b, b), 2));
            }
        t.equal("lambda pullback vs form expansion", {k}, lambda_pullback(pt),
                evaluate(total.coefficient(base_mask), base_assignment(XPoint{0, 0, 0, 0})));
    }
    return t.outcome();
}

CheckOutcome hvdw_vacuum(const SamplerConfig &) {
    Tally t;
    TetradField e;
    ConnectionField A;
    auto r = hvdw_residuals(lift(e, A), MomentumField{}, LorentzGroupElement{});
    t.expect(r.equivariance.passed(), "equivariance families");
    for (std::size_t i = 0; i < r.spin.size; ++i) t.equal("spin family", {int(i)}, r.spin.data()[i], ScalarExpr());
    for (std::size_t i = 0; i < r.einstein.size; ++i) t.equal("einstein family", {int(i)}, r.einstein.data()[i], ScalarExpr());
    return t.outcome();
}

CheckOutcome hvdw_families(const SamplerConfig &cfg) {
    Sampler s(cfg.seed);
    Tally t;
    for (int k = 0; k < cfg.samples; ++k) {
        auto f = nonvacuum_field(s, cfg.x_degree);
        auto l = lift(f.tetrad, f.connection);
        auto r = hvdw_residuals(l, MomentumField{}, LorentzGroupElement{});
        t.expect(r.equivariance.passed(), "equivariance families", {k});
        for (int p = 0; p < 3; ++p) {
            const auto &x = kPoints[p];
            auto v = base_assignment(x);
            auto ft = frame_tensors(f.tetrad, f.connection, x);
            auto Go = einstein_oracle(ft);
            auto P = spin_pattern_oracle(torsion_oracle(f, x));
            for (int a = 0; a < 4; ++a)
                for (int sl = 0; sl < 4; ++sl) {
                    Rational g(0);
                    for (int b = 0; b < 4; ++b) g += Go.at({b, a}) * ft.e_inv(sl, b);
                    t.equal("Einstein family vs 2 sigma det G e", {k, p, a, sl}, evaluate(r.einstein(a, sl), v),
                            Rational(2 * signs::kEinsteinHodge) * ft.det_e * g);
                    for (int b = 0; b < 4; ++b) {
                        Rational h(0);
                        for (int ap = 0; ap < 4; ++ap) h += P.at({a, b, ap}) * ft.e_inv(sl, ap);
                        t.equal("Spin family vs 2 sigma det pattern e", {k, p, a, b, sl}, evaluate(r.spin(a, b, sl), v),
                                Rational(2 * signs::kSpinHodge) * ft.det_e * h);
                    }
                }
        }
    }
    return t.outcome();
}

CheckOutcome hvdw_momenta(const SamplerConfig &cfg) {
    Sampler s(cfg.seed);
    Tally t;
    TetradField e;
    ConnectionField A;
    auto l = lift(e, A);
    LorentzGroupElement id;
    for (int k = 0; k < cfg.samples; ++k) {
        MomentumField m;
        PolynomialShape shape{1, 2, 2, 3, 2};
        for (int q = 0; q < 6; ++q) {
            m.psi0(s.uniform(0, 3), s.uniform(0, 3), s.uniform(0, 3), s.uniform(0, 5)) = s.polynomial(shape);
            m.psi1(s.uniform(0, 3), s.uniform(0, 3), s.uniform(0, 5)) = s.polynomial(shape);
        }
        auto r = hvdw_residuals(l, m, id);
        auto xi = xi_terms(m);
        for (int a = 0; a < 4; ++a)
            for (int sl = 0; sl < 4; ++sl) {
                t.equal("flat Einstein family vs -Xi1", {k, a, sl}, r.einstein(a, sl), -at_group(xi.xi1(a, sl), id));
                for (int d = 0; d < 4; ++d) t.equal("flat Spin family vs -Xi0", {k, a, d, sl}, r.spin(a, d, sl), -at_group(xi.xi0(a, d, sl), id));
            }
    }
    MomentumField heavy;
    heavy.psi0(0, 0, 0, 0) = ScalarExpr::g(0, 0) * ScalarExpr::g(1, 1) * ScalarExpr::gbar(2, 2);
    bool threw = false;
    try {
        validate_momentum(heavy);
    } catch (const ValidationError &) {
        threw = true;
    }
    t.expect(threw, "group degree 3 momentum rejected");
    return t.outcome();
}

CheckOutcome ec_vacuum(const SamplerConfig &cfg) {
    Tally t;
    MomentumField zero;
    {
        TetradField e;
        ConnectionField A;
        for (int p = 0; p < 3; ++p) {
            auto r = einstein_cartan_residuals(e, A, zero, kPoints[p]);
            t.equal("Minkowski R1", {p}, r.r1, Mat4<Rational>::Zero());
            for (std::size_t i = 0; i < r.r2.size; ++i) t.equal("Minkowski R2", {p, int(i)}, r.r2.data()[i], Rational(0));
        }
    }
    Sampler s(cfg.seed);
    for (int k = 0; k < cfg.samples; ++k) {
        auto f = nonvacuum_field(s, cfg.x_degree);
        for (int p = 0; p < 3; ++p) {
            auto r = einstein_cartan_residuals(f.tetrad, f.connection, zero, kPoints[p]);
            auto Go = einstein_oracle(frame_tensors(f.tetrad, f.connection, kPoints[p]));
            auto To = torsion_oracle(f, kPoints[p]);
            for (int b = 0; b < 4; ++b)
                for (int a = 0; a < 4; ++a) t.equal("R1 vs eps-oracle G^b_a", {k, p, b, a}, r.r1(b, a), Go.at({b, a}));
            for (int a = 0; a < 4; ++a)
                for (int c = 0; c < 4; ++c)
                    for (int d = 0; d < 4; ++d) t.equal("R2 vs torsion T^a_cd", {k, p, a, c, d}, r.r2(a, c, d), To.at({a, c, d}));
        }
    }
    return t.outcome();
}

CheckOutcome ec_momenta(const SamplerConfig &cfg) {
    Tally t;
    Sampler s(cfg.seed);
    TetradField e;
    ConnectionField A;
    // p1_a^{mu j} = g^a'_b for one slot: R1 shifts by -1/2 rho_j of it
    for (int k = 0; k < cfg.samples; ++k) {
        int a = s.uniform(0, 3), b = s.uniform(0, 3), ap = s.uniform(0, 3), j = s.uniform(1, kGenerators);
        MomentumField m;
        m.psi1(a, b, j - 1) = ScalarExpr::g(ap, a);
        auto g = s.lorentz();
        auto r = einstein_cartan_residuals(e, A, m, kPoints[0], g);
        Rational shift = -evaluate(group_derivative(ScalarExpr::g(ap, a), j), full_assignment(kPoints[0], g)) * Rational(1, 2);
        for (int bb = 0; bb < 4; ++bb)
            for (int aa = 0; aa < 4; ++aa)
                t.equal("R1 shift", {k, bb, aa}, r.r1(bb, aa), (aa == a && bb == b) ? shift : Rational(0));
    }
    return t.outcome();
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

CheckOutcome yoga_epsilon(const SamplerConfig &cfg) {
    Sampler s(cfg.seed);
    Tally t;
    for (int k = 0; k < cfg.samples; ++k) {
        Mat4<Rational> eta = s.algebra_element();
        auto E = epsilon_lemma_residual(eta);
        // recompute E_{abc}^d from its definition with the oracle tables as a cross-check
        auto et = dense(eta);
        auto l1 = o::contract({{&et, "qa"}, {&o::epsilon_mixed(), "qbcd"}}, "abcd");
        auto l2 = o::contract({{&et, "qb"}, {&o::epsilon_mixed(), "aqcd"}}, "abcd");
        auto l3 = o::contract({{&et, "qc"}, {&o::epsilon_mixed(), "abqd"}}, "abcd");
        auto l4 = o::contract({{&et, "dq"}, {&o::epsilon_mixed(), "abcq"}}, "abcd");
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b)
                for (int c = 0; c < 4; ++c)
                    for (int d = 0; d < 4; ++d) {
                        Rational oracle = l1.at({a, b, c, d}) + l2.at({a, b, c, d}) + l3.at({a, b, c, d}) - l4.at({a, b, c, d});
                        t.equal("E_{abc}^d (oracle)", {k, a, b, c, d}, oracle, Rational(0));
                        t.equal("E_{abc}^d (library)", {k, a, b, c, d}, E(a, b, c, d), Rational(0));
                    }
    }
    return t.outcome();
}

CheckOutcome yoga_report(const SamplerConfig &cfg, int which) {
    Sampler s(cfg.seed);
    Tally t;
    std::string note;
    for (int k = 0; k < cfg.samples; ++k) {
        auto f = draw_field(s, 1);
        auto l = lift(f.tetrad, f.connection);
        PhasePoint pt = jet_point(l, kPoints[k % kPoints.size()], s.lorentz());
        project_to_constraints(pt);
        for (int mu = 0; mu < 4; ++mu)
            for (int j = 0; j < kGenerators; ++j) {
                pt.psi0_g[mu][j] = s.matrix();
                for (int c = 0; c < 4; ++c) pt.psi1_g[mu][j](c) = s.rational();
            }
        auto r = coadjoint_yoga_checks(pt, random_momenta(s));
        switch (which) {
        case 0: t.equal("ad* components vs commutator", {k}, r.coadjoint_components, true); break;
        case 1:
            t.equal("constraint-surface 3-form identity", {k}, r.constraint_surface, true);
            t.equal("same identity with the stated sign", {k}, r.constraint_surface_opposite_sign, false);
            note = "sign = " + std::to_string(signs::kConstraintSurface) + "; the opposite sign fails";
            break;
        case 2: t.equal("Xi conjugation", {k}, r.xi_conjugation, true); break;
        }
        if (!t.ok() && !r.witness.empty()) return {false, false, r.witness, note, 0};
    }
    return t.outcome(note);
}

CheckSpec spec(std::string id, std::string description, OracleKind kind, SamplerConfig cfg, Body body) {
    return {std::move(id), std::move(description), kind, cfg, std::move(body)};
}

std::vector<CheckSpec> build_registry() {
    using K = OracleKind;
    std::vector<CheckSpec> r;
    const SamplerConfig none{1, 0, 0, 0};
    const char *names[] = {"", "dual", "pair-dual", "codim3", "pair-codim3"};
    const char *what[] = {"", "f^s ^ f(2)_{mn} = d^s_n f(3)_m - d^s_m f(3)_n", "f^{sk} ^ f(2)_{mn} = d^{sk}_{mn} top",
                          "f^s ^ f(1)_{mnr} = cyclic d^s_m f(2)_{nr}", "f^{sk} ^ f(1)_{mnr} = cyclic d^{sk}_{nr} f(3)_m"};
    for (int fam = 1; fam <= 4; ++fam)
        r.push_back(spec(std::string("coframe.beta.") + names[fam], std::string("beta table: ") + what[fam], K::ExhaustiveIndexSum,
                         none, [fam](const SamplerConfig &c) { return coframe_check("beta", fam, c); }));
    for (int fam = 1; fam <= 4; ++fam)
        r.push_back(spec(std::string("coframe.tetrad.") + names[fam], std::string("tetrad table: ") + what[fam], K::ExhaustiveIndexSum,
                         {1, 2, 0, 0}, [fam](const SamplerConfig &c) { return coframe_check("tetrad", fam, c); }));
    for (int fam = 1; fam <= 4; ++fam)
        r.push_back(spec(std::string("coframe.gamma.") + names[fam], std::string("gamma table: ") + what[fam], K::ExhaustiveIndexSum,
                         none, [fam](const SamplerConfig &c) { return coframe_check("gamma", fam, c); }));
    r.push_back(spec("coframe.beta.volume", "beta^s ^ beta(3)_m = d^s_m beta(4)", K::ExhaustiveIndexSum, none,
                     [](const SamplerConfig &c) { return coframe_check("beta", 0, c); }));
    r.push_back(spec("coframe.tetrad.volume", "e^g ^ e(3)_a = d^g_a e(4)", K::ExhaustiveIndexSum, {1, 2, 0, 0},
                     [](const SamplerConfig &c) { return coframe_check("tetrad", 0, c); }));

    r.push_back(spec("exterior.dd", "d d = 0 on random forms", K::FormExpansion, {1, 100, 3, 2}, exterior_dd));
    r.push_back(spec("exterior.leibniz", "graded Leibniz rule on random forms", K::FormExpansion, {1, 100, 3, 2}, exterior_leibniz));
    r.push_back(spec("lorentz.jacobi", "Jacobi identity on the Poincare basis; rho_j brackets", K::ExhaustiveIndexSum, none, lorentz_jacobi));
    r.push_back(spec("lorentz.epsilon-equivariance", "eps_{abc}^d g^-1 g^-1 g = g eps at Cayley samples", K::ExhaustiveIndexSum,
                     {1, 50, 0, 0}, lorentz_epsilon));
    r.push_back(spec("lorentz.coadjoint-pairing", "<ad*_xi lambda, zeta> = <lambda, [xi, zeta]> on all basis triples",
                     K::ExhaustiveIndexSum, none, lorentz_coadjoint));
    r.push_back(spec("oracle.epsilon", "epsilon tables: full contraction, pair contraction, agreement", K::ExhaustiveIndexSum, none,
                     oracle_epsilon));
    r.push_back(spec("fields.bianchi", "first and second Bianchi identities as forms", K::FormExpansion, {1, 20, 2, 0}, fields_bianchi));
    r.push_back(spec("einstein.sign", "Einstein 3-form against G^b_a e(3)_b, sign fixed by the eps oracle", K::ExhaustiveIndexSum,
                     {1, 10, 2, 0}, einstein_sign));
    r.push_back(spec("einstein.hodge", "hodge components of the Einstein 3-form", K::ExhaustiveIndexSum, {1, 10, 2, 0}, einstein_hodge));
    r.push_back(spec("spin.sign", "Spin 3-form against the torsion-trace pattern", K::ExhaustiveIndexSum, {1, 10, 2, 0}, spin_sign));
    r.push_back(spec("spin.hodge", "hodge components of the Spin 3-form", K::ExhaustiveIndexSum, {1, 10, 2, 0}, spin_hodge));
    r.push_back(spec("gauge.einstein", "lifted Einstein 3-form transforms with g", K::FormExpansion, {1, 10, 2, 0}, gauge_einstein));
    r.push_back(spec("gauge.spin", "lifted Spin 3-form transforms with g, g^-1", K::FormExpansion, {1, 10, 2, 0}, gauge_spin));
    r.push_back(spec("lift.normalization", "rho_i _| alpha = 0, rho_i _| omega = l_i", K::FormExpansion, {1, 5, 2, 0}, lift_normalization));
    r.push_back(spec("lift.curvature", "lifted curvature is g^-1 F g", K::FormExpansion, {1, 3, 2, 0}, lift_curvature));
    r.push_back(spec("lift.section", "pullback along the identity section recovers (e, A)", K::FormExpansion, {1, 5, 2, 0}, section_check));
    r.push_back(spec("wec.density", "WEC density: base pullback, gauge invariance, eps oracle", K::ExhaustiveIndexSum, {1, 3, 1, 0}, wec_check));
    r.push_back(spec("equivariance.lift", "lift outputs zero both equivariance families", K::CoefficientExtraction, {1, 5, 2, 0},
                     equivariance_lift));
    r.push_back(spec("equivariance.perturbation", "injected g-dependence gives the predicted residual", K::CoefficientExtraction,
                     {1, 1, 1, 0}, equivariance_perturbation));
    r.push_back(spec("equivariance.subgroup", "dual-number derivative along g0 exp(t l_j) at Cayley points",
                     K::FiniteDifferenceOnGroup, {1, 5, 2, 0}, equivariance_subgroup));
    r.push_back(spec("legendre.constraints", "velocity gradient of W vanishes exactly on the constraint surface",
                     K::CoefficientExtraction, {1, 10, 0, 0}, legendre_check));
    r.push_back(spec("legendre.bivector", "WEC pullback on a jet equals the bivector expression", K::FormExpansion, {1, 3, 0, 0},
                     legendre_bivector));
    r.push_back(spec("hvdw.vacuum", "Minkowski lift has all four HVDW families zero", K::CoefficientExtraction, none, hvdw_vacuum));
    r.push_back(spec("hvdw.families", "Einstein and Spin families against the eps oracle", K::ExhaustiveIndexSum, {1, 3, 2, 0},
                     hvdw_families));
    r.push_back(spec("hvdw.momenta", "momenta enter the families through Xi", K::CoefficientExtraction, {1, 5, 0, 0}, hvdw_momenta));
    r.push_back(spec("ec.vacuum", "Einstein-Cartan residuals: zero for Minkowski, (G, T) for nonvacuum", K::ExhaustiveIndexSum,
                     {1, 3, 2, 0}, ec_vacuum));
    r.push_back(spec("ec.momenta", "a group-dependent momentum shifts R1 by -1/2 rho_j p", K::CoefficientExtraction, {1, 5, 0, 0},
                     ec_momenta));
    r.push_back(spec("yoga.epsilon", "E_{abc}^d = 0 for Lorentz-algebra eta0", K::ExhaustiveIndexSum, {1, 20, 0, 0}, yoga_epsilon));
    r.push_back(spec("yoga.coadjoint", "ad* components on the constraint surface", K::ExhaustiveIndexSum, {1, 10, 1, 0},
                     [](const SamplerConfig &c) { return yoga_report(c, 0); }));
    r.push_back(spec("yoga.constraint-surface", "ad* 3-form equals the eps eta0 eta1 eta1 3-form on N", K::FormExpansion, {1, 10, 1, 0},
                     [](const SamplerConfig &c) { return yoga_report(c, 1); }));
    r.push_back(spec("yoga.xi", "Xi conjugation identity at Cayley samples", K::CoefficientExtraction, {1, 10, 1, 0},
                     [](const SamplerConfig &c) { return yoga_report(c, 2); }));
    return r;
}

} // namespace

CheckResult run_check(const CheckSpec &s, std::uint64_t suite_seed) {
    CheckResult r;
    r.id = s.id;
    r.description = s.description;
    r.oracle = s.oracle;
    SamplerConfig cfg = s.sampler;
    cfg.seed = check_seed(suite_seed, s.id);
    r.seed = cfg.seed;
    r.samples = cfg.samples;
    auto t0 = std::chrono::steady_clock::now();
    try {
        auto out = s.run(cfg);
        r.verdict = out.skipped ? Verdict::Skipped : (out.passed ? Verdict::Pass : Verdict::Fail);
        r.witness = out.witness;
        r.note = out.note;
        r.comparisons = out.comparisons;
        if (r.verdict == Verdict::Fail && r.witness.empty()) r.witness = "failed without a recorded tuple";
    } catch (const std::exception &e) {
        r.verdict = Verdict::Fail;
        r.witness = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

const std::vector<CheckSpec> &registry() {
    static const std::vector<CheckSpec> r = build_registry();
    return r;
}

SuiteRun run_suite(const std::string &filter, std::uint64_t seed, bool parallel) {
    SuiteRun run;
    std::regex re;
    try {
        re = std::regex(filter.empty() ? ".*" : filter, std::regex::ECMAScript);
    } catch (const std::regex_error &) {
        run.notice = "filter '" + filter + "' is not a valid pattern; nothing was run";
        return run;
    }
    std::vector<const CheckSpec *> chosen;
    for (const auto &s : registry())
        if (std::regex_match(s.id, re)) chosen.push_back(&s);
    if (chosen.empty()) {
        run.notice = "filter '" + filter + "' matches no registered check";
        return run;
    }
    if (!parallel) {
        for (const auto *s : chosen) run.results.push_back(run_check(*s, seed));
        return run;
    }
    // a small pool; each worker takes the next unclaimed check, results land in registry order
    run.results.resize(chosen.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next++) < chosen.size();) run.results[i] = run_check(*chosen[i], seed);
    };
    unsigned n = std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(), static_cast<unsigned>(chosen.size())));
    std::vector<std::thread> pool;
    for (unsigned k = 1; k < n; ++k) pool.emplace_back(worker);
    worker();
    for (auto &th : pool) th.join();
    return run;
}

} // namespace cartan::harness
