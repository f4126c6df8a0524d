#pragma once

#include "hopfcyc/charmap.hpp"

#include <memory>
#include <span>
#include <stdexcept>

namespace hopfcyc {

// A partial bijection of the finite set {0..points-1}, with the bundle value h
// (an element of ℤ/F) and the additive cocycle ℓ at each point of its domain.
struct PartialBijection {
    std::string name;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;  // x ↦ g(x)
    std::vector<std::uint32_t> bundle;                           // empty: all 0
    std::vector<Rational> ell;                                   // empty: all 0
};

struct GroupoidSpec {
    std::string name;
    std::size_t points = 1;
    std::size_t bundle_order = 1;
    std::vector<PartialBijection> generators;
};

// Arrows are germs: a source, a target and a bundle value. ℓ is attached per germ.
struct Arrow {
    std::uint32_t source = 0;
    std::uint32_t target = 0;
    std::uint32_t bundle = 0;
    Rational ell;
    std::string word;  // a generator word reaching the germ, for witnesses
};

// ℓ takes two values on one germ (or violates additivity); the witness names both words.
class NonFunctorial : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class GroupoidModel {
public:
    // Closes the generators under composition and inverses. Throws NonFunctorial.
    explicit GroupoidModel(const GroupoidSpec& spec);

    const std::string& name() const { return name_; }
    std::size_t points() const { return points_; }
    std::size_t bundle_order() const { return bundle_order_; }
    std::size_t size() const { return arrows_.size(); }
    const Arrow& arrow(std::size_t i) const { return arrows_[i]; }
    const std::vector<Arrow>& arrows() const { return arrows_; }
    std::optional<std::size_t> find(std::uint32_t source, std::uint32_t target, std::uint32_t bundle) const;
    std::size_t unit(std::uint32_t x) const { return units_[x]; }
    bool is_unit(std::size_t i) const;
    std::size_t inverse(std::size_t i) const;
    // i followed by j; nullopt unless target(i) = source(j).
    std::optional<std::size_t> compose(std::size_t i, std::size_t j) const;
    std::string label(std::size_t i) const;  // "x>y" or "x>y;h"

private:
    std::string name_;
    std::size_t points_;
    std::size_t bundle_order_;
    std::vector<Arrow> arrows_;
    std::vector<std::size_t> units_;
    std::map<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>, std::size_t> index_;
};

using GroupoidPtr = std::shared_ptr<const GroupoidModel>;

// Composition associativity, inverses, units and additivity of h and ℓ over the full table.
CheckReport check_groupoid(const GroupoidModel& g);

// Names: point, shift:Z<N>, sign-shift:Z3 (bundle ℤ/2), two-chart:4, gv:Z3 (ℓ a coboundary),
// klein-nonexact:4 (ℓ(a) = 1 on a free involution; rejected as non-functorial).
GroupoidSpec builtin_groupoid_spec(std::string_view name);
std::vector<std::string> builtin_groupoid_names();

// (Fun(M) ⊗ T) ⋊ 𝒢 with Γ acting trivially on T: basis e_x t U_γ (x = source of γ),
// index arrow * dim T + t, product (e_x t U_γ)(e_y t' U_η) = [y = target γ] e_x t t' U_{γη}.
class CrossProduct {
public:
    CrossProduct(GroupoidPtr groupoid, AlgebraPtr fiber);

    const GroupoidModel& groupoid() const { return *groupoid_; }
    const GroupoidPtr& groupoid_ptr() const { return groupoid_; }
    const GradedAlgebra& fiber() const { return *fiber_; }
    const AlgebraPtr& fiber_ptr() const { return fiber_; }
    const AlgebraPtr& algebra() const { return algebra_; }
    std::size_t index(std::size_t arrow, std::size_t fiber_index) const { return arrow * fiber_->dim() + fiber_index; }
    std::size_t arrow_of(std::size_t i) const { return i / fiber_->dim(); }
    std::size_t fiber_of(std::size_t i) const { return i % fiber_->dim(); }
    // Σ_x f(x) e_x t U_{1_x}
    Element on_units(std::span<const Rational> f, std::size_t fiber_index) const;

private:
    GroupoidPtr groupoid_;
    AlgebraPtr fiber_;
    AlgebraPtr algebra_;
};

// π(α)(ωU_γ) = α(h(γ)) ωU_γ for the Hopf algebra Fun(ℤ/F); bundle values default to the groupoid's.
HopfAction pullback_action(const CrossProduct& cp, std::optional<std::vector<std::uint32_t>> bundle = {});
// π(ψ)(ωU_γ) = ℓ(γ) ν ω U_γ for Λ[ψ], ν a closed central odd element of the fiber.
HopfAction gv_action(const CrossProduct& cp, std::size_t nu, std::optional<std::vector<Rational>> ell = {});
// ∫ e_x t U_γ = [γ a unit] μ(x) τ(t).
GradedFunctional unit_trace(const CrossProduct& cp, std::span<const Rational> measure, const GradedFunctional& fiber_trace);

// Trivialization change by U: M → ℤ/F. Changed bundle h'(γ) = U(s) + h(γ) - U(t);
// ρ⁺(e_s) = Σ_{U(x)=s} e_x U_{1_x}, ρ⁻(α) = ρ⁺(Sα).
std::vector<std::uint32_t> changed_bundle(const CrossProduct& cp, std::span<const std::uint32_t> change);
TwistCocycle bundle_change_twist(const CrossProduct& cp, const HopfAction& pi, std::span<const std::uint32_t> change);
// Potential u: M → ℚ. Changed ℓ'(γ) = ℓ(γ) + u(s) - u(t); ρ⁺(ψ) = uν, ρ⁻(ψ) = -uν.
std::vector<Rational> changed_ell(const CrossProduct& cp, std::span<const Rational> potential);
TwistCocycle potential_twist(const CrossProduct& cp, const HopfAction& pi, std::size_t nu,
                             std::span<const Rational> potential);

// Discrete Godbillon-Vey data on a built-in groupoid with fiber Λ[ν].
struct DiscreteGV {
    std::shared_ptr<CrossProduct> cross;
    HopfPtr hopf;
    std::size_t nu = 1;
    std::shared_ptr<HopfAction> action;
    GradedFunctional trace;
    std::vector<Rational> potential;  // u with ℓ(γ) = u(t) - u(s), when one exists
};
DiscreteGV builtin_discrete_gv(std::string_view groupoid);
// u with ℓ(γ) = u(target) - u(source) on every arrow, u = 0 at the first point of each orbit.
std::optional<std::vector<Rational>> ell_potential(const GroupoidModel& g);

// --- the group-cohomology bicomplex and Ψ ---------------------------------------------

// τ(g_0..g_k) is a current of degree l on Fun(M) ⊗ T, stored as a functional on its basis
// (index x * dim T + t); tuples are mixed-radix codes over ℤ/n, first entry most significant.
struct GroupCochain {
    int k = 0;
    int l = 0;
    std::vector<SparseVector> values;
};

// τ violates the invariance or alternation preconditions of Ψ.
class NotInvariant : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A global action of ℤ/n on M (every arrow everywhere defined) inside a cross product.
class PsiModel {
public:
    // generator: the permutation x ↦ x·1. Throws unless the action is free on germs.
    PsiModel(std::shared_ptr<const CrossProduct> cp, std::size_t order, std::vector<std::uint32_t> generator);

    const CrossProduct& cross() const { return *cp_; }
    std::size_t order() const { return order_; }
    std::size_t coefficient_dim() const { return points_ * cp_->fiber().dim(); }
    int coefficient_degree(std::size_t i) const { return cp_->fiber().degree(i % cp_->fiber().dim()); }
    // Fun(M) ⊗ T, basis "e<x>|<t>" in current index order.
    const GradedAlgebra& coefficients() const { return *coefficients_; }
    std::size_t tuples(int k) const;
    std::uint32_t act_point(std::uint32_t x, std::size_t g) const { return power_[g][x]; }

    GroupCochain zero(int k, int l) const;
    // C^g(ω) = C(ω^g), (e_x t)^g = e_{x·g⁻¹} t.
    SparseVector act(const SparseVector& current, std::size_t g) const;
    // Σ_g f(g g_0, .., g g_k)^g: invariant for any f.
    GroupCochain average(const GroupCochain& f) const;
    // Σ_π sign(π) f(g_π(0), .., g_π(k)); commutes with average.
    GroupCochain alternate(const GroupCochain& f) const;
    // τ(g g_0, .., g g_k) = τ(g_0..g_k)^{g⁻¹}; returns a witness on failure.
    std::optional<std::string> invariance_violation(const GroupCochain& tau) const;
    // τ changes sign under transpositions of its arguments.
    std::optional<std::string> alternation_violation(const GroupCochain& tau) const;
    // d₁τ(g_0..g_{k+1}) = (-1)^{l+1} Σ_j (-1)^j τ(.., ĝ_j, ..)
    GroupCochain d1(const GroupCochain& tau) const;
    // d₂τ(..)(ω) = τ(..)(dω); current degree l - 1.
    GroupCochain d2(const GroupCochain& tau) const;
    // Ψ(τ)(ω_0U_{g_0}, .., ω_kU_{g_k}) = (-1)^{kl} ⟨τ(1, g_0, g_0g_1, ..), ω_0 ω_1^{g_0} ..⟩ if g_0..g_k = 1.
    // Throws NotInvariant unless τ is invariant and alternating.
    SparseVector psi(const GroupCochain& tau, const AlgebraCochains& target) const;

private:
    std::shared_ptr<const CrossProduct> cp_;
    std::size_t order_;
    std::size_t points_;
    std::vector<std::vector<std::uint32_t>> power_;  // power_[g][x] = x·g
    std::vector<std::vector<std::size_t>> arrow_at_; // arrow_at_[x][g]
    std::vector<std::pair<std::uint32_t, std::size_t>> decode_;  // arrow -> (source, g)
    AlgebraPtr coefficients_;
};

// bΨ(τ) = Ψ(d₁τ), (-1)^k dΨ(τ) = Ψ(d₂τ), BΨ(τ) = 0.
CheckReport check_psi_identities(const PsiModel& m, const GroupCochain& tau, const AlgebraCochains& target);

// Z/N acting on itself by translation, with fiber T.
std::shared_ptr<PsiModel> shift_psi_model(std::size_t n, AlgebraPtr fiber);

}  // namespace hopfcyc
