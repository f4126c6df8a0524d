#pragma once

#include "hopfcyc/algebra.hpp"
#include "hopfcyc/cyclic.hpp"
#include "hopfcyc/window.hpp"

#include <memory>
#include <string>
#include <vector>

namespace hopfcyc {

struct CoproductTerm {
    std::uint32_t left;
    std::uint32_t right;
    Rational coef;
};

struct HopfData {
    std::string name;
    AlgebraPtr algebra;  // product, unit and optional differential
    std::vector<std::vector<CoproductTerm>> coproduct;
    std::vector<Rational> counit;
    std::vector<Element> antipode;
};

// Sweedler legs of an iterated coproduct.
using Legs = std::vector<std::pair<std::vector<std::uint32_t>, Rational>>;

class HopfAlgebra {
public:
    explicit HopfAlgebra(HopfData data);

    const std::string& name() const { return data_.name; }
    const GradedAlgebra& algebra() const { return *data_.algebra; }
    const AlgebraPtr& algebra_ptr() const { return data_.algebra; }
    std::size_t dim() const { return data_.algebra->dim(); }
    int degree(std::size_t i) const { return data_.algebra->degree(i); }

    const std::vector<CoproductTerm>& coproduct(std::size_t i) const { return data_.coproduct[i]; }
    const Rational& counit(std::size_t i) const { return data_.counit[i]; }
    Rational counit(const Element& h) const;
    const Element& antipode(std::size_t i) const { return data_.antipode[i]; }
    Element apply_antipode(const Element& h) const;
    // Δ^{legs-1}(e_i); legs >= 1.
    Legs iterated_coproduct(std::size_t i, int legs) const;
    const HopfData& data() const { return data_; }

private:
    HopfData data_;
};

using HopfPtr = std::shared_ptr<const HopfAlgebra>;

// Coassociativity, counit, antipode, multiplicativity of Δ and ε, degrees, and
// compatibility with d (coderivation, dS = Sd, ε∘d = 0) when present.
CheckReport check_hopf_axioms(const HopfAlgebra& h);

struct ModularPair {
    std::vector<Rational> delta;  // character, one value per basis element
    Element sigma;                // group-like of degree 0
};

ModularPair trivial_modular_pair(const HopfAlgebra& h);  // (ε, 1)

// S̃_δ(h) = Σ S(h_(0)) δ(h_(1)), one image per basis element.
std::vector<Element> twisted_antipode(const HopfAlgebra& h, const std::vector<Rational>& delta);
CheckReport check_modular_pair(const HopfAlgebra& h, const ModularPair& pair);

// The cyclic module of a Hopf algebra with modular pair: level n is H^{⊗n},
// level 0 the ground field. Internal degree = degree sum of the tensor.
class CMCyclicObject : public TensorPowerObject {
public:
    // Throws std::invalid_argument when the modular pair check fails.
    CMCyclicObject(HopfPtr hopf, ModularPair pair);

    const HopfAlgebra& hopf() const { return *hopf_; }
    const HopfPtr& hopf_ptr() const { return hopf_; }
    const ModularPair& pair() const { return pair_; }
    Key key_of(const std::vector<std::size_t>& tuple) const;
    SparseVector tensor(const std::vector<std::pair<std::vector<std::string>, Rational>>& terms) const;

    std::string name() const override;
    void face(int n, int i, Key key, const Rational& c, Accumulator& out) const override;
    void degeneracy(int n, int i, Key key, const Rational& c, Accumulator& out) const override;
    void cyclic(int n, Key key, const Rational& c, Accumulator& out) const override;
    bool has_differential() const override { return hopf_->algebra().has_differential(); }
    void differential(int n, Key key, const Rational& c, Accumulator& out) const override;

private:
    HopfPtr hopf_;
    ModularPair pair_;
    std::vector<Element> twisted_;
};

// d(h¹⊗..⊗hⁿ) = Σ (-1)^{|h¹|+..+|h^{i-1}|} h¹⊗..dh^i..⊗hⁿ (no level sign).
SparseVector extend_d_cm(const CMCyclicObject& x, int level, const SparseVector& v);

// Window on the quotient by tensors of weight > l.
WindowSpec truncated(WindowSpec spec, int l);

HopfPtr group_algebra_hopf(std::size_t order);       // ℚ[ℤ/N], group-likes
HopfPtr function_hopf(std::size_t order);            // Fun(ℤ/N)
HopfPtr exterior_primitive_hopf(std::size_t gens);   // Λ[ψ_1..ψ_k], ψ primitive of degree 1

// Names: group-algebra:ZN, fun:ZN, exterior-primitive:K.
HopfPtr builtin_hopf(std::string_view name);
std::vector<std::string> builtin_hopf_names();

// Modular pairs by name: "trivial", "sigma:<basis name>", "delta:<basis name>" (δ = evaluation
// of Fun(ℤ/N) at a point or the sign character of ℚ[ℤ/2]), or "delta:<..>,sigma:<..>".
ModularPair builtin_modular_pair(const HopfAlgebra& h, std::string_view spec);

}  // namespace hopfcyc
