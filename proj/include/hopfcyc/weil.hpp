#pragma once

#include "hopfcyc/algebra.hpp"

#include <stdexcept>

namespace hopfcyc {

// Structure constants [x_i, x_j] = Σ_k c^k_ij x_k, plus optional relative data:
// compact subalgebra generators (vectors in 𝔤) and finite component generators
// (automorphisms of 𝔤, given as matrices acting on coordinates).
struct LieAlgebraData {
    std::string name;
    std::size_t dim = 0;
    std::vector<std::vector<SparseVector>> bracket;  // bracket[i][j]
    std::vector<SparseVector> compact;
    std::vector<SparseMatrix> components;
};

// Antisymmetry, Jacobi, and for component generators invertibility and [Ax, Ay] = A[x, y].
CheckReport check_lie_algebra(const LieAlgebraData& g);

// Names: gl1, gl2, sl2, abelian:K. Relative variants: gl1/O1 (component -1, trivial on gl1),
// gl2/O2 (compact so(2) plus the reflection diag(1, -1)).
LieAlgebraData builtin_lie_algebra(std::string_view name);
std::vector<std::string> builtin_lie_algebra_names();

class WeilTooLarge : public std::runtime_error {
public:
    WeilTooLarge(const std::string& what, std::size_t estimate, std::size_t limit);
    std::size_t estimate;
    std::size_t limit;
};

// A cochain complex concentrated in degrees 0..top, with d[k]: C^k -> C^{k+1}.
struct CochainComplex {
    std::vector<std::size_t> dims;
    std::vector<SparseMatrix> d;
};

std::vector<std::size_t> cohomology_dims(const CochainComplex& c);
long long euler_characteristic(const std::vector<std::size_t>& dims);

// Λ𝔤* ⊗ S𝔤* modulo symmetric words of length > q. θ^a has degree 1, Ω^a degree 2.
// Basis: (exterior subset, sorted symmetric multiset), ordered by degree then index.
class TruncatedWeil {
public:
    struct Monomial {
        std::uint32_t exterior = 0;           // bit a set: θ^a present
        std::vector<std::uint8_t> symmetric;  // sorted Ω indices
    };

    static constexpr std::size_t kDefaultLimit = 50000;

    // Throws WeilTooLarge when 2^dim · C(dim + q, q) exceeds limit, invalid_argument when the
    // bracket is not a Lie bracket. Relative data is not checked here.
    TruncatedWeil(LieAlgebraData g, int q, std::size_t limit = kDefaultLimit);
    static std::size_t estimated_dim(std::size_t lie_dim, int q);

    const LieAlgebraData& lie() const { return g_; }
    int truncation() const { return q_; }
    std::size_t dim() const { return basis_.size(); }
    int top_degree() const { return static_cast<int>(g_.dim) + 2 * q_; }
    int degree(std::size_t i) const;
    const Monomial& monomial(std::size_t i) const { return basis_[i]; }
    std::optional<std::size_t> find(const Monomial& m) const;
    std::string basis_name(std::size_t i) const;
    std::string format(const Element& e) const;
    std::vector<std::size_t> indices_of_degree(int deg) const;

    Element theta(std::size_t a) const;
    Element curvature(std::size_t a) const;
    Element multiply(const Element& x, const Element& y) const;
    Element apply_d(const Element& x) const { return apply(d_, x); }

    // Contraction ι_X (degree -1) and Lie derivative L_X = ι_X d + d ι_X for X ∈ 𝔤.
    Element contract(const SparseVector& x, const Element& e) const;
    Element lie_derivative(const SparseVector& x, const Element& e) const;
    // Algebra automorphism induced by A on 𝔤: θ^a ↦ Σ_b (A⁻¹)_ab θ^b, likewise Ω.
    Element transform(const SparseMatrix& a, const Element& e) const;

    CochainComplex complex() const;
    // Only practical for small cases: the full multiplication table.
    AlgebraPtr as_algebra() const;

private:
    Element multiply_basis(std::size_t i, std::size_t j) const;
    Element apply(const std::vector<Element>& images, const Element& x) const;
    // Extends generator images to a derivation of the given degree on the basis.
    std::vector<Element> derivation_on_basis(const std::vector<Element>& theta_images,
                                             const std::vector<Element>& curvature_images, int degree) const;
    std::vector<Element> automorphism_on_basis(const std::vector<Element>& theta_images,
                                               const std::vector<Element>& curvature_images) const;

    LieAlgebraData g_;
    int q_;
    std::vector<Monomial> basis_;
    std::map<std::pair<std::uint32_t, std::vector<std::uint8_t>>, std::size_t> index_;
    std::vector<Element> d_;
};

class NotSubcomplex : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// 𝔨-horizontal, 𝔨-invariant and component-invariant elements, with d restricted.
// Throws NotSubcomplex (with a witness) if d leaves the subspace.
struct BasicSubcomplex {
    std::vector<std::vector<Element>> basis;  // per degree, elements of W
    CochainComplex complex;
};
BasicSubcomplex basic_subcomplex(const TruncatedWeil& w);

struct WeilCohomology {
    std::vector<std::size_t> complex_dims;
    std::vector<std::size_t> dims;
    std::vector<std::vector<Element>> representatives;  // per degree, elements of W
    long long euler = 0;
};
WeilCohomology weil_cohomology(const TruncatedWeil& w, bool basic = false);

CheckReport check_weil(const TruncatedWeil& w);

// Independent oracle for abelian 𝔤 of rank k: total-degree Poincaré polynomial of the
// truncated Koszul complex from binomial counts, and cohomology (1 in degree 0 plus the
// boundary classes of symmetric weight q). Does not touch the engine.
std::vector<std::size_t> abelian_weil_dims_oracle(std::size_t rank, int q);
std::vector<std::size_t> abelian_weil_cohomology_oracle(std::size_t rank, int q);

}  // namespace hopfcyc
