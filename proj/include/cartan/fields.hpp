#pragma once

#include "cartan/form.hpp"
#include "cartan/lorentz.hpp"
#include "cartan/sampling.hpp"
#include "cartan/tensor.hpp"

#include <span>
#include <string>

namespace cartan {

/// Input rejected by a field invariant (antisymmetry, degeneracy).
class ValidationError : public InvalidInput {
  public:
    using InvalidInput::InvalidInput;
};

/// e(a, mu) = e^a_mu(x).
struct TetradField {
    Mat4<ScalarExpr> e = Mat4<ScalarExpr>::Identity();
};

/// A[mu](a, b) = A^a_{b mu}(x).
struct ConnectionField {
    std::array<Mat4<ScalarExpr>, 4> A{Mat4<ScalarExpr>::Zero(), Mat4<ScalarExpr>::Zero(), Mat4<ScalarExpr>::Zero(),
                                      Mat4<ScalarExpr>::Zero()};
};

struct FieldConfig {
    TetradField tetrad;
    ConnectionField connection;
};

/// Orientation-dependent signs under h = diag(1,-1,-1,-1), epsilon_{0123} = +1.
/// Each is asserted by an exhaustive epsilon-sum oracle in the check suite.
namespace signs {
/// G_a = kEinsteinFrame * G^b_a e^{(3)}_b
inline constexpr int kEinsteinFrame = -1;
/// (1/3!) eps^{s l m n} G_{a l m n} = kEinsteinHodge * det(e) * G^b_a e^s_b
inline constexpr int kEinsteinHodge = 1;
/// H_a^b = kSpinFrame * 1/2 h^{bb'} (T^c_{b'c} e^{(3)}_a + T^c_{ca} e^{(3)}_{b'} + T^c_{ab'} e^{(3)}_c)
inline constexpr int kSpinFrame = 1;
/// (1/3!) eps^{s l m n} H_a^b_{l m n} = kSpinHodge * det(e) * (same pattern with e^s_{a'} in place of e^{(3)}_{a'})
inline constexpr int kSpinHodge = -1;
/// (1/3!) eps_{abcd} eps^{m n r s} e^b_n e^c_r e^d_s = kDualBasisEpsilon * det(e) e^m_a
inline constexpr int kDualBasisEpsilon = -1;
} // namespace signs

/// Throws ValidationError naming the first entry with A^{ab}_mu + A^{ba}_mu != 0.
void validate_connection(const ConnectionField &A);
/// Throws ValidationError when det(e) vanishes at one of the points or e depends on group symbols.
void validate_tetrad(const TetradField &e, std::span<const XPoint> points);

Form coframe(const TetradField &e, int a);
Form connection_form(const ConnectionField &A, int a, int b);
/// Raise the second index: A^{ab}_mu = A^a_{b' mu} h^{b'b}.
ScalarExpr raised_connection(const ConnectionField &A, int a, int b, int mu);

struct TorsionData {
    std::array<Form, 4> form;
    /// T^a_{mu nu} from the component formula.
    Tensor<ScalarExpr, 4, 4, 4> coord;
};

struct CurvatureData {
    /// F^a_b as 2-forms.
    Tensor<Form, 4, 4> form;
    /// F^a_{b mu nu} from the component formula.
    Tensor<ScalarExpr, 4, 4, 4, 4> coord;
};

TorsionData torsion(const TetradField &e, const ConnectionField &A);
CurvatureData curvature(const ConnectionField &A);

/// Frame-indexed tensors at a point.
struct FrameTensors {
    Rational det_e;
    Mat4<Rational> e;      // e(a, mu)
    Mat4<Rational> e_inv;  // e_inv(mu, a) = e^mu_a
    Tensor<Rational, 4, 4, 4> torsion;         // T^a_{cd}
    Tensor<Rational, 4, 4, 4, 4> curvature_up; // F^{ab}_{cd}
    Tensor<Rational, 4, 4, 4, 4> curvature;    // F^a_{bcd}
    Mat4<Rational> ricci;                      // Ric_{ab}
    Rational scalar;                           // S
    Mat4<Rational> einstein_lower;             // G_{ab}
    Mat4<Rational> einstein_mixed;             // (b, a) -> G^b_a
};

FrameTensors frame_tensors(const TetradField &e, const ConnectionField &A, const XPoint &x);
FrameTensors frame_tensors(const TorsionData &T, const CurvatureData &F, const TetradField &e, const XPoint &x);

/// G_a = 1/2 eps_{abc}^d F^c_d ^ e^b.
std::array<Form, 4> einstein_3form(const TetradField &e, const CurvatureData &F);
/// H_c^d = 1/2 eps_{abc}^d T^a ^ e^b, indexed (c, d).
Tensor<Form, 4, 4> spin_3form(const TetradField &e, const TorsionData &T);

/// Coefficients c^mu with f = sum_mu c^mu beta^{(3)}_mu.
Vec4<ScalarExpr> beta3_coefficients(const Form &three_form);
/// (1/3!) eps^{s l m n} f_{l m n}, indexed by s.
Vec4<ScalarExpr> hodge_3form(const Form &three_form);

/// e^{(3)}_a = det(e) e^mu_a beta^{(3)}_mu, built from the adjugate so it stays polynomial.
Form dual_basis_3form(const TetradField &e, int a);
/// e^{(4)} = e^0 ^ e^1 ^ e^2 ^ e^3.
Form tetrad_volume(const TetradField &e);

/// Decomposition of a 3-form against e^{(3)}_b at a point: f = sum_b k^b e^{(3)}_b.
Vec4<Rational> frame_coefficients(const Form &three_form, const FrameTensors &t, const XPoint &x);

/// The torsion-trace pattern 1/2 h^{bb'} (T^c_{b'c} d^{a'}_a + T^c_{ca} d^{a'}_{b'} + T^c_{ab'} d^{a'}_c), indexed (a, b, a').
Tensor<Rational, 4, 4, 4> spin_pattern(const FrameTensors &t);

struct BianchiResiduals {
    std::array<Form, 4> first;   // dT^a + A^a_b ^ T^b - F^a_b ^ e^b
    Tensor<Form, 4, 4> second;   // dF^a_b + A^a_c ^ F^c_b - F^a_c ^ A^c_b
    bool holds() const;
};
BianchiResiduals bianchi_residuals(const TetradField &e, const ConnectionField &A, const TorsionData &T,
                                   const CurvatureData &F);
bool bianchi_check(const TetradField &e, const ConnectionField &A);

/// Constant gauge transformation (g^-1 e, g^-1 A g).
FieldConfig gauge_transform(const FieldConfig &f, const LorentzGroupElement &g);

struct RandomFieldShape {
    int degree = 2;
    int terms = 3;
    /// Tetrad perturbation coefficient bound (numerator, denominator).
    int max_num = 1;
    int max_den = 3;
};
/// e = identity + polynomial perturbation, A = sum_j c_{j mu}(x) l_j dx^mu.
/// Resamples until det(e) is nonzero at every point in `points`.
FieldConfig random_field(Sampler &s, const RandomFieldShape &shape, std::span<const XPoint> points = {});

} // namespace cartan
