#pragma once

#include "cartan/scalar_expr.hpp"

#include <cstdint>
#include <initializer_list>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace cartan {

/// Generators 0..3 are dx^0..dx^3, generators 4..9 are gamma^1..gamma^6.
inline constexpr int kFormGenerators = 10;
using GeneratorMask = std::uint16_t;

constexpr int dx_generator(int mu) { return mu; }
constexpr int gamma_generator(int i) { return 3 + i; }
constexpr GeneratorMask base_mask = 0x00f;
constexpr GeneratorMask vertical_mask = 0x3f0;

/// A frame vector: d/dx^mu (base) or rho_i (vertical, i in 1..6).
struct VectorIndex {
    enum class Kind { Base, Vertical };
    Kind kind = Kind::Base;
    int index = 0;

    static VectorIndex base(int mu);
    static VectorIndex vertical(int i);
    int generator() const { return kind == Kind::Base ? dx_generator(index) : gamma_generator(index); }
};

/// Element of the exterior algebra on the 10 generators with ScalarExpr coefficients.
class Form {
  public:
    Form() = default;
    Form(const ScalarExpr &f);
    Form(int c) : Form(ScalarExpr(c)) {}

    static Form monomial(GeneratorMask mask, const ScalarExpr &coef = ScalarExpr(1));
    static Form generator(int k) { return monomial(static_cast<GeneratorMask>(1u << k)); }
    static Form dx(int mu) { return generator(dx_generator(mu)); }
    static Form gamma(int i) { return generator(gamma_generator(i)); }

    const std::map<GeneratorMask, ScalarExpr> &terms() const { return terms_; }
    const ScalarExpr &coefficient(GeneratorMask mask) const;
    bool is_zero() const { return terms_.empty(); }
    /// Degree of a homogeneous form; -1 for zero, throws if mixed.
    int degree() const;
    Form part(int degree) const;

    Form operator-() const;
    Form &operator+=(const Form &o);
    Form &operator-=(const Form &o);
    Form &operator*=(const ScalarExpr &f);
    friend Form operator+(Form a, const Form &b) { return a += b; }
    friend Form operator-(Form a, const Form &b) { return a -= b; }
    friend Form operator*(Form a, const ScalarExpr &f) { return a *= f; }
    friend Form operator*(const ScalarExpr &f, Form a) { return a *= f; }
    friend bool operator==(const Form &a, const Form &b) { return a.terms_ == b.terms_; }

    /// Apply fn to every coefficient (zeros are dropped).
    template <class Fn> Form map_coefficients(Fn &&fn) const {
        Form r;
        for (const auto &[m, c] : terms_) {
            ScalarExpr v = fn(c);
            if (!v.is_zero()) r.terms_.emplace(m, std::move(v));
        }
        return r;
    }

    std::string to_string() const;

  private:
    std::map<GeneratorMask, ScalarExpr> terms_;
};

std::string mask_name(GeneratorMask mask);
std::ostream &operator<<(std::ostream &os, const Form &f);

Form wedge(const Form &a, const Form &b);
Form wedge(std::initializer_list<Form> factors);

/// v_p ⨼ ... ⨼ v_1 ⨼ a for the list (v_1, ..., v_p): the first entry contracts first.
Form interior(std::span<const VectorIndex> v, const Form &a);
Form interior(const VectorIndex &v, const Form &a);
/// Contraction with a general vector field sum_k v[k] * (frame vector k).
Form contract(std::span<const ScalarExpr, kFormGenerators> v, const Form &a);

/// d f = sum dx^mu d_mu f + sum gamma^j rho_j f; d gamma^k = -sum_{i<j} c^k_{ij} gamma^i ^ gamma^j.
Form ext_d(const Form &a);

Form beta_volume();
Form gamma_volume();
/// dx^{mu_1} ^ ... ^ dx^{mu_p}
Form beta_wedge(std::span<const int> mus);
/// gamma^{i_1} ^ ... ^ gamma^{i_q}
Form gamma_wedge(std::span<const int> is);
/// beta^{(p)}_{mu_1...mu_{4-p}}, contracting d_{mu_1} first.
Form basis_beta(int p, std::span<const int> idx);
/// gamma^{(q)}_{i_1...i_{6-q}}, contracting rho_{i_1} first.
Form basis_gamma(int q, std::span<const int> idx);

inline Form basis_beta(int p, std::initializer_list<int> idx) { return basis_beta(p, std::span(idx.begin(), idx.size())); }
inline Form basis_gamma(int q, std::initializer_list<int> idx) { return basis_gamma(q, std::span(idx.begin(), idx.size())); }
inline Form beta_wedge(std::initializer_list<int> mus) { return beta_wedge(std::span(mus.begin(), mus.size())); }
inline Form gamma_wedge(std::initializer_list<int> is) { return gamma_wedge(std::span(is.begin(), is.size())); }

/// Dense 3-form components G_{lambda mu nu} (fully antisymmetric, all 64 slots).
std::array<ScalarExpr, 64> three_form_components(const Form &f);
/// Dense 2-form components T_{mu nu} (antisymmetric, all 16 slots).
std::array<ScalarExpr, 16> two_form_components(const Form &f);

} // namespace cartan
