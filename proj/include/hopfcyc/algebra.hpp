#pragma once

#include "hopfcyc/matrix.hpp"
#include "hopfcyc/report.hpp"
#include "hopfcyc/sparse.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hopfcyc {

// Elements of a finite-dimensional algebra are sparse vectors keyed by basis index.
using Element = SparseVector;

struct BasisElement {
    std::string name;
    int degree = 0;
};

struct GradedFunctional {
    int weight = 0;
    SparseVector values;
    Rational operator()(const Element& a) const;
};

struct AlgebraData {
    std::string name;
    std::vector<BasisElement> basis;
    std::map<std::pair<std::size_t, std::size_t>, Element> products;  // absent pairs multiply to 0
    std::optional<Element> unit;
    std::optional<std::vector<Element>> differential;  // image of each basis element
    std::optional<GradedFunctional> trace;
};

inline Rational koszul(long long a, long long b) { return sign_power(a * b); }

class GradedAlgebra {
public:
    struct Factor {
        std::uint32_t left;
        std::uint32_t right;
        Rational coef;
    };
    struct Preimage {
        std::uint32_t source;
        Rational coef;
    };

    explicit GradedAlgebra(AlgebraData data);

    const AlgebraData& data() const { return data_; }
    const std::string& name() const { return data_.name; }
    std::size_t dim() const { return data_.basis.size(); }
    int degree(std::size_t i) const { return data_.basis[i].degree; }
    int top_degree() const { return top_degree_; }
    const std::string& basis_name(std::size_t i) const { return data_.basis.at(i).name; }
    std::optional<std::size_t> find(std::string_view name) const;
    std::size_t index(std::string_view name) const;

    const Element& product(std::size_t i, std::size_t j) const { return table_[i * dim() + j]; }
    Element multiply(const Element& a, const Element& b) const;

    bool has_unit() const { return data_.unit.has_value(); }
    const Element& unit() const;
    std::optional<std::size_t> unit_index() const { return unit_index_; }
    Rational unit_coefficient(std::size_t i) const { return has_unit() ? data_.unit->get(i) : Rational(); }

    bool has_differential() const { return data_.differential.has_value(); }
    const Element& d(std::size_t i) const;
    Element apply_d(const Element& a) const;
    const std::optional<GradedFunctional>& trace() const { return data_.trace; }

    // Transposed tables: all (l, r) with e_l e_r containing e_c, and all s with d(e_s) containing e_c.
    const std::vector<Factor>& factorizations(std::size_t c) const { return factors_[c]; }
    const std::vector<Preimage>& d_preimages(std::size_t c) const { return d_pre_[c]; }

    std::vector<std::size_t> indices_of_degree(int deg) const;
    bool is_homogeneous(const Element& a, int* deg = nullptr) const;
    std::string format(const Element& a) const;
    Element parse_element(const std::map<std::string, Rational>& coefficients) const;

private:
    AlgebraData data_;
    std::vector<Element> table_;
    std::vector<std::vector<Factor>> factors_;
    std::vector<std::vector<Preimage>> d_pre_;
    std::optional<std::size_t> unit_index_;
    int top_degree_ = 0;
    Element zero_;
};

using AlgebraPtr = std::shared_ptr<const GradedAlgebra>;

AlgebraPtr make_algebra(AlgebraData data);

CheckReport check_dga_axioms(const GradedAlgebra& a);

// --- derivations and multipliers ---------------------------------------------

struct Derivation {
    int degree = 0;
    std::vector<Element> images;
    Element apply(const Element& a) const;
};

Derivation grading_derivation(const GradedAlgebra& a);
// D(a) = g a - (-1)^{|g||a|} a g for homogeneous g.
Derivation inner_derivation(const GradedAlgebra& a, const Element& g);
CheckReport check_derivation(const GradedAlgebra& a, const Derivation& d);
Element apply_derivation(const Derivation& d, const Element& a);

struct MultiplierPair {
    std::vector<Element> left;   // m * e_i
    std::vector<Element> right;  // e_i * m
};
CheckReport check_multiplier(const GradedAlgebra& a, const MultiplierPair& m);

// --- constructions -------------------------------------------------------------

AlgebraPtr adjoin_unit(const GradedAlgebra& a);
// M_2(A) = A (x) M_2(Q); basis "name@ij"; trace extends by tr.
AlgebraPtr matrix_amplify(const GradedAlgebra& a);
// Koszul-signed tensor product; basis "a|b".
AlgebraPtr tensor_product(const GradedAlgebra& a, const GradedAlgebra& b);

// Same algebra with the unit as basis element 0 (required for normalized cochains).
struct RebasedAlgebra {
    AlgebraPtr algebra;
    SparseMatrix to_new;  // old coordinates -> new coordinates
    SparseMatrix to_old;
    Element convert(const Element& old) const { return to_new.apply(old); }
};
RebasedAlgebra rebase_unit(const GradedAlgebra& a);

// The degree-zero subalgebra and its inclusion (subalgebra index -> algebra index).
struct SubalgebraInclusion {
    AlgebraPtr algebra;
    std::vector<std::size_t> inclusion;
};
SubalgebraInclusion degree_zero_part(const GradedAlgebra& a);

// --- built-ins -------------------------------------------------------------------

AlgebraPtr ground_field();
AlgebraPtr function_algebra(std::size_t points);
AlgebraPtr vanishing_function_algebra(std::size_t points);  // functions vanishing at point 0, no unit
AlgebraPtr exterior_algebra(std::size_t generators);
AlgebraPtr theta_c_algebra();                                   // Λ[θ, c], dθ = c, c² = 0
AlgebraPtr cyclic_group_algebra(std::size_t order);
AlgebraPtr matrix_algebra2();

// Names: q, fun:N, fun0:N, ext:K, theta-c, group:ZN, mat2, mat2:<name>.
AlgebraPtr builtin_algebra(std::string_view name);
std::vector<std::string> builtin_algebra_names();

}  // namespace hopfcyc
