#pragma once

#include "hopfcyc/matrix.hpp"
#include "hopfcyc/report.hpp"
#include "hopfcyc/sparse.hpp"

#include <array>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace hopfcyc {

// A cyclic object with finite-dimensional components X^n, presented on a
// monomial basis indexed by Keys. Structure maps act on one basis vector and
// add c * (image) into an accumulator. Faces raise the level.
class CyclicObject {
public:
    virtual ~CyclicObject() = default;
    virtual std::string name() const = 0;

    // Basis of X^n restricted to one internal degree, in ascending key order.
    virtual std::vector<Key> keys(int level, int internal) const = 0;
    virtual std::size_t count(int level, int internal) const = 0;
    // Inclusive range of internal degrees occurring at this level.
    virtual std::pair<int, int> internal_range(int level) const = 0;
    virtual int internal_degree(int level, Key key) const = 0;
    virtual std::string format_key(int level, Key key) const = 0;
    // False for keys outside a normalized subspace.
    virtual bool in_subspace(int /*level*/, Key /*key*/) const { return true; }

    // δ_i : X^{n-1} -> X^n, 0 <= i <= n.
    virtual void face(int n, int i, Key key, const Rational& c, Accumulator& out) const = 0;
    // σ_i : X^n -> X^{n-1}, 0 <= i < n.
    virtual void degeneracy(int n, int i, Key key, const Rational& c, Accumulator& out) const = 0;
    // τ_n : X^n -> X^n.
    virtual void cyclic(int n, Key key, const Rational& c, Accumulator& out) const = 0;

    virtual bool has_differential() const { return false; }
    // Internal differential on X^n; raises the internal degree by one.
    virtual void differential(int /*n*/, Key /*key*/, const Rational& /*c*/, Accumulator& /*out*/) const {}
};

// --- tuples of basis indices -------------------------------------------------------

inline constexpr int kMaxTupleLength = 24;

struct Tuple {
    std::array<std::uint32_t, kMaxTupleLength> at{};
    int size = 0;

    std::uint32_t operator[](int i) const { return at[static_cast<std::size_t>(i)]; }
    std::uint32_t& operator[](int i) { return at[static_cast<std::size_t>(i)]; }
    void push_back(std::uint32_t x) { at[static_cast<std::size_t>(size++)] = x; }
    Tuple erased(int pos) const;
    Tuple inserted(int pos, std::uint32_t x) const;
    // Replaces position pos by (x, y).
    Tuple split(int pos, std::uint32_t x, std::uint32_t y) const;
};

// Cyclic objects whose level-n component is spanned by tuples of length
// n + offset over a graded basis. Keys are mixed-radix codes with the first
// tuple entry most significant; the internal degree is sign * (degree sum).
class TensorPowerObject : public CyclicObject {
public:
    std::vector<Key> keys(int level, int internal) const override;
    std::size_t count(int level, int internal) const override;
    std::pair<int, int> internal_range(int level) const override;
    int internal_degree(int level, Key key) const override;
    std::string format_key(int level, Key key) const override;
    bool in_subspace(int level, Key key) const override;

    int length(int level) const { return level + offset_; }
    std::size_t base_dim() const { return degrees_.size(); }
    int base_degree(std::uint32_t i) const { return degrees_[i]; }
    Tuple decode(int level, Key key) const;
    Key encode(const Tuple& t) const;
    int degree_sum(const Tuple& t, int from, int to) const;
    int degree_sum(const Tuple& t) const { return degree_sum(t, 0, t.size); }

protected:
    TensorPowerObject(std::vector<int> degrees, std::vector<std::string> names, int offset, int internal_sign,
                      std::optional<std::uint32_t> excluded_after_first);

private:
    std::vector<int> degrees_;
    std::vector<std::string> names_;
    int offset_;
    int sign_;
    std::optional<std::uint32_t> excluded_;
    int min_degree_ = 0;
    int max_degree_ = 0;
};

// --- applying structure maps -------------------------------------------------------

using KeyOperator = std::function<void(Key, const Rational&, Accumulator&)>;

SparseVector apply_operator(const KeyOperator& op, const SparseVector& x);
// Matrix of op from span(domain) to span(codomain); image terms outside codomain are dropped.
SparseMatrix operator_matrix(const KeyOperator& op, std::span<const Key> domain, std::span<const Key> codomain);

SparseVector apply_face(const CyclicObject& x, int n, int i, const SparseVector& v);
SparseVector apply_degeneracy(const CyclicObject& x, int n, int i, const SparseVector& v);
SparseVector apply_cyclic(const CyclicObject& x, int n, const SparseVector& v);
SparseVector apply_internal_d(const CyclicObject& x, int n, const SparseVector& v);

// kStandard: B = A s (1 - λ) with λ = (-1)^n τ_n on X^n. kLiteral uses the factor
// (1 - (-1)^{n-1} τ_n) instead, which does not square to zero.
enum class BConvention { kStandard, kLiteral };

SparseVector apply_b(const CyclicObject& x, int n, const SparseVector& v);  // X^n -> X^{n+1}
SparseVector apply_B(const CyclicObject& x, int n, const SparseVector& v,
                     BConvention convention = BConvention::kStandard);  // X^n -> X^{n-1}

SparseMatrix operator_b(const CyclicObject& x, int n, int internal);
SparseMatrix operator_B(const CyclicObject& x, int n, int internal, BConvention convention = BConvention::kStandard);

// Cochains spread over several levels (level -> vector).
using LevelVector = std::map<int, SparseVector>;

void add_scaled(LevelVector& acc, const LevelVector& v, const Rational& c);
LevelVector scaled(const LevelVector& v, const Rational& c);
bool is_zero(const LevelVector& v);
LevelVector apply_b(const CyclicObject& x, const LevelVector& v);
LevelVector apply_B(const CyclicObject& x, const LevelVector& v, BConvention convention = BConvention::kStandard);
// (-1)^level times the internal differential.
LevelVector apply_signed_d(const CyclicObject& x, const LevelVector& v);
// b + B + (-1)^level d.
LevelVector apply_total(const CyclicObject& x, const LevelVector& v, BConvention convention = BConvention::kStandard);

// --- checks ------------------------------------------------------------------------

// Cosimplicial and cyclic identities on every basis vector up to level n_max.
CheckReport check_cyclic_axioms(const CyclicObject& x, int n_max);
// Faces, degeneracies and τ preserve the internal degree; d raises it by one.
CheckReport check_internal_grading(const CyclicObject& x, int n_max);
// b², B², bB + Bb, and with an internal differential d², db - bd, dB - Bd; levels <= n_max.
CheckReport check_operator_identities(const CyclicObject& x, int n_max,
                                      BConvention convention = BConvention::kStandard);

// Wraps an object and negates its cyclic operator (negative control).
class NegatedCyclic : public CyclicObject {
public:
    explicit NegatedCyclic(const CyclicObject& inner) : inner_(inner) {}
    std::string name() const override { return inner_.name() + " (tau negated)"; }
    std::vector<Key> keys(int level, int internal) const override { return inner_.keys(level, internal); }
    std::size_t count(int level, int internal) const override { return inner_.count(level, internal); }
    std::pair<int, int> internal_range(int level) const override { return inner_.internal_range(level); }
    int internal_degree(int level, Key key) const override { return inner_.internal_degree(level, key); }
    std::string format_key(int level, Key key) const override { return inner_.format_key(level, key); }
    void face(int n, int i, Key key, const Rational& c, Accumulator& out) const override
    {
        inner_.face(n, i, key, c, out);
    }
    void degeneracy(int n, int i, Key key, const Rational& c, Accumulator& out) const override
    {
        inner_.degeneracy(n, i, key, c, out);
    }
    void cyclic(int n, Key key, const Rational& c, Accumulator& out) const override
    {
        inner_.cyclic(n, key, -c, out);
    }

private:
    const CyclicObject& inner_;
};

}  // namespace hopfcyc
