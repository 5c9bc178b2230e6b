#pragma once

#include "cartan/scalar_expr.hpp"

#include <Eigen/Core>
#include <array>
#include <optional>

namespace cartan {

template <class T> using Mat4 = Eigen::Matrix<T, 4, 4>;
template <class T> using Vec4 = Eigen::Matrix<T, 4, 1>;

// Conventions
//   h = diag(1,-1,-1,-1); epsilon_{0123} = +1 with all indices down.
//   Raised slots use h (also for coordinate indices), so epsilon^{0123} = -1.
//   Lorentz generators are indexed 1..6: l_1..l_3 rotations, l_4..l_6 boosts.
//   Matrices act as (M)^row_col, i.e. M(a, b) = M^a_b.
inline constexpr int kGenerators = 6;

int metric(int a, int b);
const Mat4<Rational> &metric_matrix();
int permutation_sign(int a, int b, int c, int d);
/// epsilon_{abcd}
int epsilon_lower(int a, int b, int c, int d);
/// epsilon_{abc}^{d}
int epsilon_mixed(int a, int b, int c, int d);
/// epsilon^{abcd}
int epsilon_upper(int a, int b, int c, int d);

/// The alternative labelling u_4..u_9 of l_1..l_6 (Poincare index offset). Throws outside 4..9.
int generator_from_alias(int i);

/// l_j as a 4x4 matrix, j in 1..6.
const Mat4<Rational> &lorentz_generator(int j);
/// c^k_{ij} with [l_i, l_j] = sum_k c^k_{ij} l_k; all indices 1..6.
const Rational &structure_constant(int k, int i, int j);

template <class T> Mat4<T> bracket(const Mat4<T> &x, const Mat4<T> &y) { return x * y - y * x; }

/// Coordinates of an element of so(1,3) in the l_j basis (index 0 <-> l_1).
/// Throws InvalidInput when `x` is not in the algebra.
std::array<Rational, kGenerators> algebra_coordinates(const Mat4<Rational> &x);
bool in_lorentz_algebra(const Mat4<Rational> &x);
bool in_lorentz_group(const Mat4<Rational> &g);

/// Element of the Poincare algebra: (rotation part, translation part).
template <class T> struct PoincareElement {
    Mat4<T> rot = Mat4<T>::Zero();
    Vec4<T> trans = Vec4<T>::Zero();
};

/// Element of the dual of the Poincare algebra, stored as matrices/vectors paired
/// through <lambda, xi> = 1/2 sum lambda_a^b xi^a_b + sum lambda_a xi^a.
template <class T> struct PoincareDual {
    Mat4<T> rot_dual = Mat4<T>::Zero();
    Vec4<T> trans_dual = Vec4<T>::Zero();
};

template <class T> PoincareElement<T> bracket(const PoincareElement<T> &x, const PoincareElement<T> &y) {
    return {x.rot * y.rot - y.rot * x.rot, x.rot * y.trans - y.rot * x.trans};
}

template <class T> T pairing(const PoincareDual<T> &lambda, const PoincareElement<T> &xi) {
    T s(0);
    for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) s = s + lambda.rot_dual(a, b) * xi.rot(a, b) * Rational(1, 2);
        s = s + lambda.trans_dual(a) * xi.trans(a);
    }
    return s;
}

/// ad*_xi lambda, characterised by <ad*_xi lambda, zeta> = <lambda, [xi, zeta]>.
template <class T> PoincareDual<T> coadjoint(const PoincareElement<T> &xi, const PoincareDual<T> &lambda) {
    PoincareDual<T> r;
    const auto &X = xi.rot;
    const auto &L = lambda.rot_dual;
    r.rot_dual = X.transpose() * L - L * X.transpose();
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) r.rot_dual(a, b) = r.rot_dual(a, b) - T(2) * lambda.trans_dual(a) * xi.trans(b);
    r.trans_dual = X.transpose() * lambda.trans_dual;
    return r;
}

/// Ad_g on the Poincare algebra for g in the Lorentz group: (g X g^{-1}, g t).
template <class T>
PoincareElement<T> adjoint(const Mat4<T> &g, const Mat4<T> &ginv, const PoincareElement<T> &x) {
    return {g * x.rot * ginv, g * x.trans};
}

/// Poincare basis: index 0..3 translations t_a, 4..9 l_1..l_6.
PoincareElement<Rational> poincare_basis(int i);
/// Dual basis w.r.t. the pairing above: <dual(i), basis(j)> = delta_ij.
PoincareDual<Rational> poincare_dual_basis(int i);

/// Lorentz group element carried together with its exact inverse.
struct LorentzGroupElement {
    Mat4<Rational> g = Mat4<Rational>::Identity();
    Mat4<Rational> ginv = Mat4<Rational>::Identity();
};

/// Cayley transform g = (I - X)(I + X)^{-1} of X = sum r_j l_j.
/// Returns nullopt when I + X is singular.
std::optional<LorentzGroupElement> cayley(const std::array<Rational, kGenerators> &r);

/// Infinitesimal right action rho_j on group symbols: rho_j g = g l_j, rho_j gbar = -l_j gbar.
/// Extended as a derivation; coordinate symbols are inert.
ScalarExpr group_derivative(const ScalarExpr &f, int j);

/// Substitute g = g0 and gbar = g0^{-1}; coordinate symbols remain.
ScalarExpr at_group(const ScalarExpr &f, const LorentzGroupElement &g0);
/// Assignment of all group symbols (coordinates unset).
std::array<std::optional<Rational>, kNumSymbols> group_assignment(const LorentzGroupElement &g0);

/// epsilon_{abc}^d (g^-1)^b_{b'} (g^-1)^c_{c'} g^{d'}_d == g^{a'}_a epsilon_{a'b'c'}^{d'}
/// for all free (a, b', c', d'), checked exhaustively. Holds for Lorentz g only.
bool epsilon_equivariant(const Mat4<Rational> &g, const Mat4<Rational> &ginv);
/// Same, computing the inverse; false for singular input.
bool epsilon_equivariant(const Mat4<Rational> &g);

template <class T> T determinant4(const Mat4<T> &m) {
    T d(0);
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            if (b == a) continue;
            for (int c = 0; c < 4; ++c) {
                if (c == a || c == b) continue;
                int e = 6 - a - b - c;
                d = d + T(permutation_sign(a, b, c, e)) * m(a, 0) * m(b, 1) * m(c, 2) * m(e, 3);
            }
        }
    return d;
}

/// Classical adjugate: adj(m) * m = det(m) * I.
template <class T> Mat4<T> adjugate4(const Mat4<T> &m) {
    Mat4<T> adj;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            // minor deleting row j, column i
            int rows[3], cols[3];
            for (int k = 0, r = 0; k < 4; ++k)
                if (k != j) rows[r++] = k;
            for (int k = 0, c = 0; k < 4; ++k)
                if (k != i) cols[c++] = k;
            T minor = m(rows[0], cols[0]) * (m(rows[1], cols[1]) * m(rows[2], cols[2]) - m(rows[1], cols[2]) * m(rows[2], cols[1])) -
                      m(rows[0], cols[1]) * (m(rows[1], cols[0]) * m(rows[2], cols[2]) - m(rows[1], cols[2]) * m(rows[2], cols[0])) +
                      m(rows[0], cols[2]) * (m(rows[1], cols[0]) * m(rows[2], cols[1]) - m(rows[1], cols[1]) * m(rows[2], cols[0]));
            adj(i, j) = ((i + j) % 2) ? -minor : minor;
        }
    return adj;
}

/// Exact inverse; nullopt when singular.
std::optional<Mat4<Rational>> inverse4(const Mat4<Rational> &m);

Mat4<Rational> evaluate(const Mat4<ScalarExpr> &m, std::span<const Rational, kNumSymbols> values);

} // namespace cartan
