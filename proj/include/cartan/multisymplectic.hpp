#pragma once

#include "cartan/fields.hpp"

#include <array>
#include <cstdint>
#include <string>

namespace cartan {

namespace signs {
/// (ad*_{eta_nu} psi^{mu nu})^d_c beta3_mu = kConstraintSurface * eps_{abc}^d eta0^a_{a'} ^ eta1^{a'} ^ eta1^b on N.
/// Follows from E_{abc}^d = 0; the opposite sign fails on every sample.
inline constexpr int kConstraintSurface = -1;
} // namespace signs

/// Bundle-level p-valued 1-form: alpha^c (translation part), omega^c_d (Lorentz part).
struct LiftedConnection {
    std::array<Form, 4> alpha;
    Tensor<Form, 4, 4> omega;
};

/// (alpha, omega) = (g^-1 e, g^-1 dg + g^-1 A g) written with group symbols.
LiftedConnection lift(const TetradField &e, const ConnectionField &A);

/// Coefficient of a 1-form along dx^mu or gamma^j.
ScalarExpr component(const Form &one_form, const VectorIndex &v);

struct NormalizationReport {
    /// Per generator i = 1..6 (stored at i-1): rho_i _| alpha = 0 and rho_i _| omega = l_i.
    std::array<bool, kGenerators> alpha{};
    std::array<bool, kGenerators> omega{};
    bool passed() const;
};
NormalizationReport check_normalization(const LiftedConnection &l, int samples = kDefaultEvaluationSamples,
                                        std::uint64_t seed = 1);

struct EquivarianceReport {
    /// eta0^c_{d mu;j} + [l_j, eta0_mu]^c_d, indexed (c, d, mu, j-1).
    Tensor<ScalarExpr, 4, 4, 4, kGenerators> omega_residual;
    /// eta1^c_{mu;j} + (l_j eta1_mu)^c, indexed (c, mu, j-1).
    Tensor<ScalarExpr, 4, 4, kGenerators> alpha_residual;
    bool omega_zero = false;
    bool alpha_zero = false;
    bool passed() const { return omega_zero && alpha_zero; }
};
EquivarianceReport check_equivariance(const LiftedConnection &l, int samples = kDefaultEvaluationSamples,
                                      std::uint64_t seed = 1);

/// d omega + omega ^ omega evaluated at a group point (coefficients in x only).
Tensor<Form, 4, 4> lifted_curvature(const LiftedConnection &l, const LorentzGroupElement &g0);
/// d alpha + omega ^ alpha at a group point.
std::array<Form, 4> lifted_torsion(const LiftedConnection &l, const LorentzGroupElement &g0);
/// 1/2 eps_{abc}^d Omega^c_d ^ alpha^b at a group point.
std::array<Form, 4> lifted_einstein_3form(const LiftedConnection &l, const LorentzGroupElement &g0);
/// 1/2 eps_{abc}^d Theta^a ^ alpha^b at a group point, indexed (c, d).
Tensor<Form, 4, 4> lifted_spin_3form(const LiftedConnection &l, const LorentzGroupElement &g0);

struct WecDensity {
    Form density;
    /// Coefficient against beta^{(4)} ^ gamma^{(6)}.
    ScalarExpr coefficient;
};
/// alpha^{(2)}_{ab} ^ Omega^{ab} ^ gamma^{(6)}, with alpha^{(2)}_{ab} = 1/2 eps_{abcd} alpha^c ^ alpha^d.
WecDensity wec_density(const LiftedConnection &l, const LorentzGroupElement &g0);
/// Fully symbolic version; practical for low-degree fields only.
WecDensity wec_density(const LiftedConnection &l);
/// Coefficient of e^{(2)}_{ab} ^ F^{ab} against beta^{(4)}.
ScalarExpr base_action_density(const TetradField &e, const ConnectionField &A);

struct SectionPullback {
    TetradField tetrad;
    ConnectionField connection;
    /// Set when the input failed the equivariance check.
    bool warning = false;
};
/// Pullback along the section g = identity.
SectionPullback section_roundtrip(const LiftedConnection &l, int samples = kDefaultEvaluationSamples,
                                  std::uint64_t seed = 1);

/// Point of the De Donder-Weyl phase space. Lorentz-valued quantities are 4x4
/// matrices; eta0 is stored (c, d) = eta0^c_d, momenta psi0 are stored (d, c) = psi0^d_c
/// so that the pairing psi0 . eta0 is a plain trace.
struct PhasePoint {
    XPoint x{};
    LorentzGroupElement g;
    std::array<Mat4<Rational>, 4> eta0;                        // [mu]
    std::array<Vec4<Rational>, 4> eta1;                        // [mu]
    std::array<std::array<Mat4<Rational>, 4>, 4> eta0_x;       // [mu][nu] = eta0_{mu;nu}
    std::array<std::array<Vec4<Rational>, 4>, 4> eta1_x;       // [mu][nu]
    std::array<std::array<Mat4<Rational>, kGenerators>, 4> eta0_g; // [mu][j-1] = eta0_{mu;j}
    std::array<std::array<Vec4<Rational>, kGenerators>, 4> eta1_g;
    Rational varsigma;
    std::array<std::array<Mat4<Rational>, 4>, 4> psi0;         // [mu][nu], antisymmetric in (mu, nu)
    std::array<std::array<Vec4<Rational>, 4>, 4> psi1;         // [mu][nu]
    std::array<std::array<Mat4<Rational>, kGenerators>, 4> psi0_g; // [mu][j-1]
    std::array<std::array<Vec4<Rational>, kGenerators>, 4> psi1_g;

    PhasePoint();
};

/// Every slot zero and g = identity.
PhasePoint zero_phase_point();
/// Jet of a lifted connection at (x, g0): eta from the dx components, ;nu from d/dx^nu,
/// ;j from the group derivative. Momenta are zero.
PhasePoint jet_point(const LiftedConnection &l, const XPoint &x, const LorentzGroupElement &g0);
/// Overwrite the ;j slots with their equivariant values -[l_j, eta0_mu] and -l_j eta1_mu.
void set_equivariant_jets(PhasePoint &pt);
/// Throws ValidationError if psi^{mu nu} is not antisymmetric in (mu, nu).
void validate_phase_point(const PhasePoint &pt);

using Bivector = std::array<std::array<Mat4<Rational>, 4>, 4>;
/// eta1^{d mu nu}_c = 1/2 eps_{abc}^d eta1^a_r eta1^b_s [r s mu nu], stored [mu][nu](d, c).
Bivector eta1_bivector(const PhasePoint &pt);
/// Coefficient of the pulled-back WEC density on the jet: -X (eta0_{;} - 1/2 [eta0, eta0]).
Rational lambda_pullback(const PhasePoint &pt);

/// W = varsigma + psi.eta_{;nu} + psi^{mu j}.eta_{mu;j} - X.eta0_{;nu} - 1/2 X.[eta0_mu, eta0_nu].
Rational legendre_W(const PhasePoint &pt);

struct LegendreResiduals {
    /// dW / d eta0^c_{d mu;nu}, stored [mu][nu](d, c).
    std::array<std::array<Mat4<Rational>, 4>, 4> eta0_gradient;
    /// dW / d eta1^c_{mu;nu}, stored [mu][nu](c).
    std::array<std::array<Vec4<Rational>, 4>, 4> eta1_gradient;
    /// W restricted to the constraint surface.
    Rational hamiltonian;
    bool on_constraint_surface() const;
};
/// Velocity gradient of W by exact coefficient extraction, plus H.
LegendreResiduals legendre_constraints(const PhasePoint &pt);
/// H = varsigma - 1/2 X.[eta0_mu, eta0_nu] - (psi0^{mu j}.[l_j, eta0_mu] + psi1^{mu j}.l_j eta1_mu).
Rational hamiltonian(const PhasePoint &pt);
/// Put the momenta on the image of the Legendre map: psi0^{mu nu} = X, psi1^{mu nu} = 0.
void project_to_constraints(PhasePoint &pt);

/// Multimomenta psi^{mu j}. psi0 is indexed (d, c, mu, j-1) = psi0^d_c^{mu j}, psi1 is
/// indexed (a, mu, j-1). Interpreted either as the bundle momenta psi or as the
/// conjugated variables p of the Einstein-Cartan reduction, depending on the caller.
struct MomentumField {
    Tensor<ScalarExpr, 4, 4, 4, kGenerators> psi0;
    Tensor<ScalarExpr, 4, 4, kGenerators> psi1;
};
inline constexpr int kMaxMomentumGroupDegree = 2;
/// Throws ValidationError when an entry exceeds group degree 2.
void validate_momentum(const MomentumField &m);
/// p0 = g psi0 g^-1, p1 = psi1 g^-1.
MomentumField conjugate_momenta(const MomentumField &psi);

struct XiData {
    Tensor<ScalarExpr, 4, 4, 4> xi0; // (c, d, mu) = Xi0_c^{d mu}
    Tensor<ScalarExpr, 4, 4> xi1;    // (a, mu)
};
/// Xi0 = psi0^{mu j}_{;j} + [l_j, psi0^{mu j}], Xi1 = psi1^{mu j}_{;j} - psi1^{mu j} l_j, symbolic.
XiData xi_terms(const MomentumField &m);

struct HvdwResiduals {
    Tensor<ScalarExpr, 4, 4, 4> spin;     // (c, d, s): 2 hodge(Sigma_c^d)^s - Xi0_c^{d s}
    Tensor<ScalarExpr, 4, 4> einstein;    // (a, s): 2 hodge(Upsilon_a)^s - Xi1_a^s
    EquivarianceReport equivariance;
    bool all_zero() const;
};
/// Hamilton-Volterra-De Donder-Weyl residual system at the group point g0 (the equivariance families stay symbolic).
HvdwResiduals hvdw_residuals(const LiftedConnection &l, const MomentumField &m, const LorentzGroupElement &g0,
                             int samples = kDefaultEvaluationSamples, std::uint64_t seed = 1);

struct EinsteinCartanResiduals {
    Mat4<Rational> r1;                 // (b, a): G^b_a - 1/2 rho_j p_a^{bj}
    Tensor<Rational, 4, 4, 4> r2;      // (a, c, d)
    bool zero() const;
};
/// Einstein-Cartan residual system at (x, g0); m holds the conjugated variables p0, p1.
EinsteinCartanResiduals einstein_cartan_residuals(const TetradField &e, const ConnectionField &A,
                                                  const MomentumField &m, const XPoint &x,
                                                  const LorentzGroupElement &g0 = {});

/// epsilon identity residual E_{abc}^d for a matrix eta0, all 256 entries.
Tensor<Rational, 4, 4, 4, 4> epsilon_lemma_residual(const Mat4<Rational> &eta0);

struct YogaReport {
    bool epsilon_lemma = false;  // E_{abc}^d = 0
    bool coadjoint_components = false;
    bool constraint_surface = false;
    /// The same identity with the opposite global sign.
    bool constraint_surface_opposite_sign = false;
    bool xi_conjugation = false;
    std::string witness;
    bool passed() const { return epsilon_lemma && coadjoint_components && constraint_surface && xi_conjugation; }
};
/// The coadjoint identities at a phase point on the constraint surface.
/// `p` supplies the conjugated momenta for the Xi conjugation identity.
YogaReport coadjoint_yoga_checks(const PhasePoint &pt, const MomentumField &p);

} // namespace cartan
