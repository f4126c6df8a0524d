#pragma once

#include "hopfcyc/algebra.hpp"
#include "hopfcyc/cyclic.hpp"

#include <memory>

namespace hopfcyc {

// Cyclic object of a unital DG algebra: level k is spanned by the dual basis of
// (k+1)-tuples (a_0, ..., a_k) with Koszul-signed faces and cyclic action. The
// internal degree of a tuple is minus its weight (the degree sum).
class AlgebraCochains : public TensorPowerObject {
public:
    // normalized: restrict to cochains vanishing when some a_i, i >= 1, is the
    // unit; requires the unit to be a basis element (see rebase_unit).
    explicit AlgebraCochains(AlgebraPtr algebra, bool normalized = false);

    const GradedAlgebra& algebra() const { return *algebra_; }
    const AlgebraPtr& algebra_ptr() const { return algebra_; }
    bool normalized() const { return normalized_; }
    int weight(int level, Key key) const { return -internal_degree(level, key); }

    std::string name() const override;
    void face(int n, int i, Key key, const Rational& c, Accumulator& out) const override;
    void degeneracy(int n, int i, Key key, const Rational& c, Accumulator& out) const override;
    void cyclic(int n, Key key, const Rational& c, Accumulator& out) const override;
    bool has_differential() const override { return algebra_->has_differential(); }
    void differential(int n, Key key, const Rational& c, Accumulator& out) const override;

    // Level-k cochain given by its values on tuples of basis names.
    SparseVector cochain(const std::vector<std::pair<std::vector<std::string>, Rational>>& values) const;
    Key key_of(const std::vector<std::size_t>& tuple) const;

private:
    AlgebraPtr algebra_;
    bool normalized_;
};

// Splits a cochain into weight-homogeneous parts.
std::map<int, SparseVector> split_by_weight(const AlgebraCochains& x, int level, const SparseVector& v);
LevelVector weight_part(const AlgebraCochains& x, const LevelVector& v, int weight);

// Cochain operators of a derivation D. e_D and E_D need deg D = 0.
//   L_D φ(a_0..a_k) = Σ (-1)^{|D|(|a_0|+..+|a_{i-1}|)} φ(.., D a_i, ..)
//   e_D φ(a_0..a_k) = ±(-1)^{k+1} φ(D(a_k) a_0, a_1, .., a_{k-1})       level k-1 -> k
//   E_D φ(a_0..a_k) = Σ_{1<=i<=j<=k} ±(-1)^{ik+1} φ(1, a_i, .., D a_j, .., a_k, a_0, .., a_{i-1})   level k+1 -> k
// with Koszul signs for moving a_k (resp. the block a_i..a_k) to the front.
SparseVector lie_derivative(const AlgebraCochains& x, const Derivation& d, int level, const SparseVector& v);
SparseVector interior_e(const AlgebraCochains& x, const Derivation& d, int level, const SparseVector& v);
SparseVector interior_E(const AlgebraCochains& x, const Derivation& d, int level, const SparseVector& v);
LevelVector lie_derivative(const AlgebraCochains& x, const Derivation& d, const LevelVector& v);
LevelVector interior_e(const AlgebraCochains& x, const Derivation& d, const LevelVector& v);
LevelVector interior_E(const AlgebraCochains& x, const Derivation& d, const LevelVector& v);

// Extended differential on cochains (no level sign).
LevelVector extend_d(const AlgebraCochains& x, const LevelVector& v);

// Homotopy between the weight-filtered complex and its weight-zero part.
// h = (1/m)(e_D + E_D) on weight m >= 1 for the grading derivation, 0 on weight 0.
LevelVector homotopy_h(const AlgebraCochains& x, const LevelVector& v);
Rational sign_c(int k, int m);  // (-1)^{km + (m² - m)/2}
// R φ = c_{k,m} (d h)^m φ on the (level k, weight m) part; lands in weight 0.
LevelVector weight_retraction(const AlgebraCochains& x, const LevelVector& v);
// H φ = Σ_{j<m} c_{k,j} h (d h)^j φ.
LevelVector weight_homotopy(const AlgebraCochains& x, const LevelVector& v);

// Maps between cochains on the degree-zero subalgebra and weight-zero cochains on the algebra.
struct DegreeZeroComparison {
    explicit DegreeZeroComparison(const AlgebraCochains& full);
    LevelVector map_I(const LevelVector& sub_cochain) const;  // extension by zero
    LevelVector map_R(const LevelVector& cochain) const;      // restriction of weight_retraction
    const AlgebraCochains& full;
    SubalgebraInclusion sub;
    std::shared_ptr<AlgebraCochains> sub_cochains;
};

// I_g φ(x_0..x_{k-1}) = Σ_j (-1)^{j+1} φ(x_0, .., x_j, g, x_{j+1}, .., x_{k-1}) for g of degree 0.
SparseVector interior_I(const AlgebraCochains& x, const Element& g, int level, const SparseVector& v);
LevelVector interior_I(const AlgebraCochains& x, const Element& g, const LevelVector& v);

}  // namespace hopfcyc
