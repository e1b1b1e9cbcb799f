#pragma once

#include <functional>
#include <string>

#include "diracgap/boundary.hpp"
#include "diracgap/eigensolver.hpp"
#include "diracgap/fem.hpp"
#include "diracgap/geometry.hpp"
#include "diracgap/mesh.hpp"

namespace diracgap {

/// ħ v_f in eV·nm for v_f = 10⁶ m/s.
inline constexpr double kHbarFermiVelocity = 0.6582;

/// √(2π/|Ω|) B(η); throws near_zigzag.
double gap_lower_bound(double area, double eta);

/// Width of the gap 2|λ|_min implied by the B = 1 bound, in eV, for an area in nm².
double physical_gap(double area_nm2);

struct GapReport {
  double area = 0.0;
  double eta = 0.0;
  double b = 0.0;
  double bound = 0.0;   ///< √(2π/|Ω|) B
  double gap = 0.0;     ///< computed |λ|_min = √μ₁
  double margin = 0.0;  ///< gap - bound
  double budget = 0.0;  ///< discretization error bar on gap
  bool pass = false;    ///< gap ≥ bound - budget
};

GapReport check_gap(const EigenResult& result, double area, double eta, double budget);

/// Split u = v + w of a boundary-condition-satisfying spinor with v in the
/// η = 0 domain, and the cross-term identity
///   ‖Tw‖² + 2 Re⟨Tv, Tw⟩ = (1 - B²) ‖G c‖²
/// where for |β| ≤ 1: v = diag(β, 1)u, c = u₁, G = -i∂₁ + ∂₂;
/// for |β| > 1: v = diag(1, 1/β)u, c = u₂, G = -i∂₁ - ∂₂.
struct LemmaReport {
  bool first_component_branch = true;  ///< |β| ≤ 1
  double bc_residual = 0.0;
  double tw_norm2 = 0.0;       ///< ‖Tw‖²
  Complex cross{0.0, 0.0};     ///< ⟨Tv, Tw⟩
  double cross_imag_relative = 0.0;  ///< |Im⟨Tv,Tw⟩| / (‖Tv‖‖Tw‖)
  double lhs = 0.0;            ///< ‖Tw‖² + 2 Re⟨Tv, Tw⟩
  double rhs = 0.0;            ///< (1 - B²) ‖G c‖², same discrete field
  double relative_error = 0.0; ///< |lhs - rhs| / |rhs| (0 when both vanish)
  Vector v;                    ///< nodal, interleaved (2 per vertex)
  Vector w;
};

/// u is a full nodal spinor (2 entries per vertex). Throws bc_violation
/// when max |u₂ - β t u₁| over boundary nodes exceeds 1e-10 × max |u|.
LemmaReport lemma_decompose(const Mesh& mesh, const Vector& u, const BoundaryFamily& family);

/// (1 - B²) ∫ |G c|² over the mesh triangles from an exact gradient of c,
/// 7-point quadrature; the independent route for the identity's right side.
double lemma_reference_rhs(const Mesh& mesh, const BoundaryFamily& family,
                           const std::function<Eigen::Vector2cd(const Eigen::Vector2d&)>& gradient);

/// f with Δf = C in Ω, ∂_n f = -κ/2 on ∂Ω, C = -π/|Ω|, ∫f = 0.
struct NeumannSolution {
  double c = 0.0;
  double area = 0.0;
  RealVector f;
  double solvability_residual = 0.0;  ///< ∮(-κ/2)ds - C|Ω| by quadrature
  double discrete_compatibility = 0.0; ///< Lagrange multiplier of the mean constraint
  double linear_residual = 0.0;       ///< ‖bordered system residual‖∞
  double interior_residual = 0.0;     ///< max over interior nodes of |(K f)_i + C m_i|
  double boundary_flux_residual = 0.0; ///< relative L² of ∂_n f_h + κ/2 on ∂Ω
  double mean = 0.0;                  ///< ∫ f_h
};

/// Throws singular_system if |∮(-κ/2)ds - C|Ω|| exceeds 1e-8.
NeumannSolution solve_neumann(const Mesh& mesh, const BoundaryCurve& curve);

struct ProofCheckReport {
  int pair = 0;
  double mu = 0.0;
  double c = 0.0;
  double weighted_norm = 0.0;  ///< ‖e^{-f} u‖²
  double lhs = 0.0;            ///< μ/2 ‖e^{-f}u‖²
  double rhs = 0.0;            ///< -⟨e^{-2f}u, (Δf)u⟩ = -C ‖e^{-f}u‖²
  double margin = 0.0;         ///< (lhs - rhs) / ‖e^{-f}u‖², in units of λ²
  double budget = 0.0;         ///< allowed negative margin, units of λ²
  double residual = 0.0;       ///< recomputed eigen-residual of the pair
  double residual_gate = 0.0;
  bool eigenpair_ok = false;
  bool pass = false;
};

/// Weighted form of the final inequality for pair `pair` of a squared-form
/// result with η ∈ {0, π}; throws wrong_eta otherwise. The pair must pass
/// the residual gate (default max(10 tol, 1e-6)) to count as an eigenpair.
ProofCheckReport proof_inequality_check(const EigenResult& result, const NeumannSolution& neumann,
                                        const AssembledProblem& problem, double budget_mu = 0.0,
                                        int pair = 0, double residual_gate = 0.0);

}  // namespace diracgap
