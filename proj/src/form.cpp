#include "cartan/form.hpp"

#include "cartan/lorentz.hpp"

#include <bit>
#include <ostream>
#include <sstream>

namespace cartan {

VectorIndex VectorIndex::base(int mu) {
    if (mu < 0 || mu > 3) throw InvalidInput("base vector index out of range: " + std::to_string(mu));
    return {Kind::Base, mu};
}

VectorIndex VectorIndex::vertical(int i) {
    if (i < 1 || i > 6) throw InvalidInput("vertical vector index out of range: " + std::to_string(i));
    return {Kind::Vertical, i};
}

namespace {
const ScalarExpr &zero_expr() {
    static const ScalarExpr z;
    return z;
}

// Sign of moving the generators of b past those of a: wedge(m_a, m_b) = sign * m_{a|b}.
int wedge_sign(GeneratorMask a, GeneratorMask b) {
    int swaps = 0;
    for (GeneratorMask rest = b; rest; rest &= rest - 1) {
        int k = std::countr_zero(rest);
        swaps += std::popcount(static_cast<unsigned>(a >> (k + 1)));
    }
    return swaps % 2 ? -1 : 1;
}
} // namespace

Form::Form(const ScalarExpr &f) {
    if (!f.is_zero()) terms_.emplace(GeneratorMask{0}, f);
}

Form Form::monomial(GeneratorMask mask, const ScalarExpr &coef) {
    Form r;
    if (!coef.is_zero()) r.terms_.emplace(mask, coef);
    return r;
}

const ScalarExpr &Form::coefficient(GeneratorMask mask) const {
    auto it = terms_.find(mask);
    return it == terms_.end() ? zero_expr() : it->second;
}

int Form::degree() const {
    int d = -1;
    for (const auto &t : terms_) {
        int k = std::popcount(static_cast<unsigned>(t.first));
        if (d >= 0 && d != k) throw std::logic_error("degree() of an inhomogeneous form");
        d = k;
    }
    return d;
}

Form Form::part(int degree) const {
    Form r;
    for (const auto &[m, c] : terms_)
        if (std::popcount(static_cast<unsigned>(m)) == degree) r.terms_.emplace(m, c);
    return r;
}

Form Form::operator-() const {
    Form r(*this);
    for (auto &t : r.terms_) t.second = -t.second;
    return r;
}

Form &Form::operator+=(const Form &o) {
    for (const auto &[m, c] : o.terms_) {
        auto [it, inserted] = terms_.try_emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }
    return *this;
}

Form &Form::operator-=(const Form &o) {
    for (const auto &[m, c] : o.terms_) {
        auto [it, inserted] = terms_.try_emplace(m, -c);
        if (!inserted) {
            it->second -= c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }
    return *this;
}

Form &Form::operator*=(const ScalarExpr &f) {
    if (f.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto it = terms_.begin(); it != terms_.end();) {
        it->second = it->second * f;
        it = it->second.is_zero() ? terms_.erase(it) : std::next(it);
    }
    return *this;
}

std::string mask_name(GeneratorMask mask) {
    if (!mask) return "1";
    std::string s;
    for (int k = 0; k < kFormGenerators; ++k) {
        if (!(mask & (1u << k))) continue;
        if (!s.empty()) s += "^";
        s += k < 4 ? "dx" + std::to_string(k) : "gamma" + std::to_string(k - 3);
    }
    return s;
}

std::string Form::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto &[m, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c << ")";
        if (m) os << " " << mask_name(m);
    }
    return os.str();
}

std::ostream &operator<<(std::ostream &os, const Form &f) { return os << f.to_string(); }

Form wedge(const Form &a, const Form &b) {
    Form r;
    for (const auto &[ma, ca] : a.terms())
        for (const auto &[mb, cb] : b.terms()) {
            if (ma & mb) continue;
            ScalarExpr c = ca * cb;
            if (wedge_sign(ma, mb) < 0) c = -c;
            r += Form::monomial(static_cast<GeneratorMask>(ma | mb), c);
        }
    return r;
}

Form wedge(std::initializer_list<Form> factors) {
    Form r(1);
    for (const auto &f : factors) r = wedge(r, f);
    return r;
}

namespace {
Form interior_generator(int k, const Form &a) {
    Form r;
    const GeneratorMask bit = static_cast<GeneratorMask>(1u << k);
    for (const auto &[m, c] : a.terms()) {
        if (!(m & bit)) continue;
        int before = std::popcount(static_cast<unsigned>(m & (bit - 1)));
        r += Form::monomial(static_cast<GeneratorMask>(m & ~bit), before % 2 ? -c : c);
    }
    return r;
}
} // namespace

Form interior(const VectorIndex &v, const Form &a) { return interior_generator(v.generator(), a); }

Form interior(std::span<const VectorIndex> v, const Form &a) {
    Form r = a;
    for (const auto &vi : v) r = interior(vi, r);
    return r;
}

Form contract(std::span<const ScalarExpr, kFormGenerators> v, const Form &a) {
    Form r;
    for (int k = 0; k < kFormGenerators; ++k)
        if (!v[k].is_zero()) r += interior_generator(k, a) * v[k];
    return r;
}

namespace {
Form d_gamma(int k) {
    Form r;
    for (int i = 1; i <= kGenerators; ++i)
        for (int j = i + 1; j <= kGenerators; ++j) {
            const Rational &c = structure_constant(k, i, j);
            if (!c.is_zero())
                r -= Form::monomial(static_cast<GeneratorMask>((1u << gamma_generator(i)) | (1u << gamma_generator(j))), ScalarExpr(c));
        }
    return r;
}

// d of the constant-coefficient monomial with the given mask, by Leibniz on the lowest generator.
const std::vector<Form> &d_monomials() {
    static const std::vector<Form> table = [] {
        std::vector<Form> t(1u << kFormGenerators);
        for (unsigned m = 1; m < t.size(); ++m) {
            int k = std::countr_zero(m);
            GeneratorMask rest = static_cast<GeneratorMask>(m & (m - 1));
            Form first = k < 4 ? Form() : d_gamma(k - 3);
            t[m] = wedge(first, Form::monomial(rest)) - wedge(Form::generator(k), t[rest]);
        }
        return t;
    }();
    return table;
}
} // namespace

Form ext_d(const Form &a) {
    const auto &dm = d_monomials();
    Form r;
    for (const auto &[m, c] : a.terms()) {
        Form df;
        for (int mu = 0; mu < 4; ++mu) df += Form::monomial(static_cast<GeneratorMask>(1u << dx_generator(mu)), diff_x(c, mu));
        if (c.depends_on_group())
            for (int j = 1; j <= kGenerators; ++j)
                df += Form::monomial(static_cast<GeneratorMask>(1u << gamma_generator(j)), group_derivative(c, j));
        r += wedge(df, Form::monomial(m));
        if (m) r += dm[m] * c;
    }
    return r;
}

Form beta_volume() { return Form::monomial(base_mask); }
Form gamma_volume() { return Form::monomial(vertical_mask); }

Form beta_wedge(std::span<const int> mus) {
    Form r(1);
    for (int mu : mus) r = wedge(r, Form::dx(VectorIndex::base(mu).index));
    return r;
}

Form gamma_wedge(std::span<const int> is) {
    Form r(1);
    for (int i : is) r = wedge(r, Form::gamma(VectorIndex::vertical(i).index));
    return r;
}

namespace {
void check_distinct(std::span<const int> idx, const char *what) {
    for (std::size_t i = 0; i < idx.size(); ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (idx[i] == idx[j]) throw InvalidInput(std::string("repeated index in ") + what);
}
} // namespace

Form basis_beta(int p, std::span<const int> idx) {
    if (p < 0 || p > 4) throw InvalidInput("basis_beta degree out of range");
    if (static_cast<int>(idx.size()) != 4 - p) throw InvalidInput("basis_beta needs 4-p indices");
    check_distinct(idx, "basis_beta");
    std::vector<VectorIndex> v;
    for (int mu : idx) v.push_back(VectorIndex::base(mu));
    return interior(v, beta_volume());
}

Form basis_gamma(int q, std::span<const int> idx) {
    if (q < 0 || q > 6) throw InvalidInput("basis_gamma degree out of range");
    if (static_cast<int>(idx.size()) != 6 - q) throw InvalidInput("basis_gamma needs 6-q indices");
    check_distinct(idx, "basis_gamma");
    std::vector<VectorIndex> v;
    for (int i : idx) v.push_back(VectorIndex::vertical(i));
    return interior(v, gamma_volume());
}

std::array<ScalarExpr, 64> three_form_components(const Form &f) {
    std::array<ScalarExpr, 64> out;
    for (int l = 0; l < 4; ++l)
        for (int m = 0; m < 4; ++m)
            for (int n = 0; n < 4; ++n) {
                if (l == m || m == n || l == n) continue;
                int inversions = (l > m) + (l > n) + (m > n);
                int s = inversions % 2 ? -1 : 1;
                GeneratorMask mask = static_cast<GeneratorMask>((1u << l) | (1u << m) | (1u << n));
                out[16 * l + 4 * m + n] = s > 0 ? f.coefficient(mask) : -f.coefficient(mask);
            }
    return out;
}

std::array<ScalarExpr, 16> two_form_components(const Form &f) {
    std::array<ScalarExpr, 16> out;
    for (int m = 0; m < 4; ++m)
        for (int n = m + 1; n < 4; ++n) {
            const ScalarExpr &c = f.coefficient(static_cast<GeneratorMask>((1u << m) | (1u << n)));
            out[4 * m + n] = c;
            out[4 * n + m] = -c;
        }
    return out;
}

} // namespace cartan
