#pragma once

#include "hopfcyc/cochains.hpp"
#include "hopfcyc/hopf.hpp"
#include "hopfcyc/window.hpp"

#include <functional>
#include <optional>

namespace hopfcyc {

// π : H ⊗ Ω → Ω tabulated on basis pairs.
class HopfAction {
public:
    using Rule = std::function<Element(std::size_t h, std::size_t a)>;
    HopfAction(HopfPtr hopf, AlgebraPtr algebra, const Rule& rule);

    const HopfAlgebra& hopf() const { return *hopf_; }
    const HopfPtr& hopf_ptr() const { return hopf_; }
    const GradedAlgebra& algebra() const { return *algebra_; }
    const AlgebraPtr& algebra_ptr() const { return algebra_; }
    const Element& apply(std::size_t h, std::size_t a) const { return table_[h * algebra_->dim() + a]; }
    Element apply(std::size_t h, const Element& a) const;
    Element apply(const Element& h, const Element& a) const;

private:
    HopfPtr hopf_;
    AlgebraPtr algebra_;
    std::vector<Element> table_;
};

HopfAction trivial_action(HopfPtr hopf, AlgebraPtr algebra);  // π(h) = ε(h) id
// Extension to the algebra with a unit adjoined (new unit at index 0): π(h)(1) = ε(h)1.
HopfAction extend_to_unitization(const HopfAction& pi, AlgebraPtr unitized);
GradedFunctional extend_to_unitization(const GradedFunctional& trace);

// Unit, multiplicativity, Koszul-Leibniz, degree and d-compatibility on all basis pairs.
CheckReport check_action(const HopfAction& pi);
// Weight, closedness, δ-invariance ∫π(h)(a)b = (-1)^{|h||a|}∫a π(S̃h)(b) and
// σ-trace ∫ab = (-1)^{|a||b|}∫b π(σ)(a).
CheckReport check_invariant_trace(const HopfAction& pi, const GradedFunctional& trace, const ModularPair& pair);

// χ(h¹⊗..⊗h^k)(a_0..a_k) = λ ∫ a_0 π(h¹)(a_1)..π(h^k)(a_k), λ = (-1)^{Σ_{j>i} |h^j||a_i|}.
class CharacteristicMap {
public:
    CharacteristicMap(const HopfAction& pi, GradedFunctional trace, const CMCyclicObject& source,
                      const AlgebraCochains& target);

    SparseVector apply(int level, const SparseVector& tensor) const;
    LevelVector apply(const LevelVector& tensors) const;
    // Maps per-(level, column) parts; used to move window classes.
    std::map<std::pair<int, int>, SparseVector> apply(const std::map<std::pair<int, int>, SparseVector>& parts) const;

    const CMCyclicObject& source() const { return *source_; }
    const AlgebraCochains& target() const { return *target_; }
    int weight() const { return trace_.weight; }

private:
    SparseVector apply_basis(int level, Key key) const;

    const HopfAction* pi_;
    GradedFunctional trace_;
    const CMCyclicObject* source_;
    const AlgebraCochains* target_;
};

// χ∘δ_i = δ_i∘χ, χ∘σ_i = σ_i∘χ, χ∘τ = τ∘χ, χ∘d = d∘χ on Hopf basis tensors up to n_max.
CheckReport check_cyclic_map(const CharacteristicMap& chi, int n_max);
// χ vanishes on tensors of weight > q.
CheckReport check_filtration_vanishing(const CharacteristicMap& chi, int n_max);

struct TwistCocycle {
    std::vector<Element> plus;   // ρ⁺ on Hopf basis
    std::vector<Element> minus;  // ρ⁻
};

TwistCocycle trivial_twist(const HopfAction& pi);  // ρ± = ε(h)1
// Convolution inverse, the ρ⁺ and ρ⁻ cocycle laws and normalization, plus degree and d-compatibility.
CheckReport check_twist_cocycle(const HopfAction& pi, const TwistCocycle& rho, const ModularPair& pair);
// π'(h)(a) = Σ (-1)^{|h_(2)||a|} ρ⁺(h_(0)) π(h_(1))(a) ρ⁻(h_(2)); throws naming the violated equation.
HopfAction twist_action(const HopfAction& pi, const TwistCocycle& rho, const ModularPair& pair);

// Data on M₂(Ω): π₂ acts entrywise, ρ±₂ = diag(ρ±, ε), ∫₂ = ∫ ⊗ tr.
struct AmplifiedTwist {
    AlgebraPtr algebra;
    HopfAction action;
    TwistCocycle rho;
    GradedFunctional trace;
    std::vector<std::size_t> corner_first;   // a ↦ a⊗e11
    std::vector<std::size_t> corner_second;  // a ↦ a⊗e22
};
AmplifiedTwist amplify_twist(const HopfAction& pi, const TwistCocycle& rho, const GradedFunctional& trace);

// (ι*φ)(a_0..a_k) = φ(ι a_0, .., ι a_k) for a basis-to-basis inclusion ι.
SparseVector pullback_cochain(const AlgebraCochains& from, const AlgebraCochains& to,
                              const std::vector<std::size_t>& inclusion, int level, const SparseVector& phi);

struct CertificateEvidence {
    std::size_t source_dim = 0;     // dimension of the primitive's slot used by the solve
    std::size_t boundary_rank = 0;  // rank of ∂ into the cocycle's slot
    std::size_t augmented_rank = 0; // rank after appending the cocycle
};

class NotClosed : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Solves ∂X = φ in slot(degree - 1) -> slot(degree). Primitives are restricted to
// summands below the top level, so ∂X is computed without truncation.
std::optional<SparseVector> coboundary_certificate(const ComplexWindow& w, int degree, const SparseVector& phi,
                                                   CertificateEvidence* evidence = nullptr);
// Independent re-check: recomputes ∂X from the structure maps; returns the first mismatch.
std::optional<std::string> verify_certificate(const ComplexWindow& w, int degree, const SparseVector& primitive,
                                              const SparseVector& phi);

}  // namespace hopfcyc
