#pragma once

#include "hopfcyc/rational.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace hopfcyc {

// Scenario files are YAML. Every declaration is a named record in one of the sections
// below; tasks refer to declarations by name. Exact rationals are written "p/q".

// Source line of a declaration, for diagnostics; ignored by comparisons.
struct SourceLine {
    int value = 0;
    friend bool operator==(SourceLine, SourceLine) { return true; }
};

// Coefficients by basis name, in file order.
using ElementSpec = std::vector<std::pair<std::string, Rational>>;

struct FunctionalSpec {
    int weight = 0;
    ElementSpec values;
    friend bool operator==(const FunctionalSpec&, const FunctionalSpec&) = default;
};

struct ProductSpec {
    std::string left;
    std::string right;
    ElementSpec value;
    friend bool operator==(const ProductSpec&, const ProductSpec&) = default;
};

using ImageTable = std::vector<std::pair<std::string, ElementSpec>>;  // basis name -> image

// Exactly one source: builtin, basis (explicit tables) or cross (groupoid ⋉ fiber).
struct AlgebraSpec {
    std::string name;
    SourceLine line;
    std::string builtin;
    std::vector<std::pair<std::string, int>> basis;  // name, degree
    std::optional<ElementSpec> unit;
    std::vector<ProductSpec> products;
    std::optional<ImageTable> differential;
    std::optional<FunctionalSpec> trace;
    std::string cross_groupoid;
    std::string cross_fiber;  // algebra name
    bool rebase = false;      // move the unit into the basis
    friend bool operator==(const AlgebraSpec&, const AlgebraSpec&) = default;
};

struct GeneratorSpec {
    std::string name;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
    std::vector<std::uint32_t> bundle;
    std::vector<Rational> ell;
    friend bool operator==(const GeneratorSpec&, const GeneratorSpec&) = default;
};

struct GroupoidDecl {
    std::string name;
    SourceLine line;
    std::string builtin;
    std::size_t points = 0;
    std::size_t bundle_order = 1;
    std::vector<GeneratorSpec> generators;
    friend bool operator==(const GroupoidDecl&, const GroupoidDecl&) = default;
};

struct CoproductSpec {
    std::string left;
    std::string right;
    Rational coef;
    friend bool operator==(const CoproductSpec&, const CoproductSpec&) = default;
};

// A named modular pair ("trivial", "delta:x", ...) or explicit δ values and σ.
struct PairSpec {
    std::string named = "trivial";
    std::optional<ElementSpec> delta;
    std::optional<ElementSpec> sigma;
    friend bool operator==(const PairSpec&, const PairSpec&) = default;
};

struct HopfSpec {
    std::string name;
    SourceLine line;
    std::string builtin;
    std::string algebra;  // explicit: the underlying declared algebra
    std::vector<std::pair<std::string, std::vector<CoproductSpec>>> coproduct;
    ElementSpec counit;
    ImageTable antipode;
    PairSpec pair;
    friend bool operator==(const HopfSpec&, const HopfSpec&) = default;
};

struct ActionEntry {
    std::string hopf;
    std::string algebra;
    ElementSpec value;
    friend bool operator==(const ActionEntry&, const ActionEntry&) = default;
};

// kind: trivial | pullback | gv | table
struct ActionSpec {
    std::string name;
    SourceLine line;
    std::string hopf;
    std::string algebra;
    std::string kind = "trivial";
    std::string nu;                            // gv: fiber basis name
    std::optional<std::vector<Rational>> ell;  // gv: per arrow, default the groupoid's
    std::optional<std::vector<std::uint32_t>> bundle;  // pullback
    std::vector<ActionEntry> table;            // table: absent pairs act by zero
    friend bool operator==(const ActionSpec&, const ActionSpec&) = default;
};

// kind: explicit | algebra (the algebra's own trace) | unit (cross products: μ and a fiber trace)
struct TraceDecl {
    std::string name;
    SourceLine line;
    std::string algebra;
    std::string kind = "explicit";
    FunctionalSpec values;
    std::vector<Rational> measure;
    std::optional<FunctionalSpec> fiber_trace;  // default: the fiber's own trace
    friend bool operator==(const TraceDecl&, const TraceDecl&) = default;
};

// kind: trivial | potential | bundle-change | explicit
struct TwistSpec {
    std::string name;
    SourceLine line;
    std::string action;
    std::string kind = "trivial";
    std::string nu;
    std::vector<Rational> potential;
    std::vector<std::uint32_t> change;
    ImageTable plus;
    ImageTable minus;
    friend bool operator==(const TwistSpec&, const TwistSpec&) = default;
};

struct BracketSpec {
    std::size_t left = 0;
    std::size_t right = 0;
    std::vector<std::pair<std::size_t, Rational>> value;
    friend bool operator==(const BracketSpec&, const BracketSpec&) = default;
};

struct LieSpec {
    std::string name;
    SourceLine line;
    std::string builtin;
    std::size_t dim = 0;
    std::vector<BracketSpec> brackets;  // [x_i, x_j]; [x_j, x_i] is filled in with the opposite sign
    std::vector<std::vector<Rational>> compact;                  // coordinates
    std::vector<std::vector<std::vector<Rational>>> components;  // dense rows
    friend bool operator==(const LieSpec&, const LieSpec&) = default;
};

struct PsiModelSpec {
    std::string name;
    SourceLine line;
    std::size_t order = 0;  // ℤ/n acting on itself
    std::string fiber;      // algebra name
    friend bool operator==(const PsiModelSpec&, const PsiModelSpec&) = default;
};

// τ for a psi task: random invariant alternating cochains from a seed, or explicit values.
struct CochainEntry {
    std::vector<std::size_t> tuple;
    ElementSpec value;  // coefficient basis names "x|t" -> value
    friend bool operator==(const CochainEntry&, const CochainEntry&) = default;
};

struct WindowParams {
    std::optional<int> levels;
    std::optional<std::pair<int, int>> weights;  // algebra cochains
    std::optional<int> truncate;                 // Hopf tensors
    friend bool operator==(const WindowParams&, const WindowParams&) = default;
};

struct TaskSpec {
    SourceLine line;
    std::string verb;   // check | compute | chi | twist-compare | psi | weil
    std::string label;  // optional
    // check
    std::string what;
    // references (unused ones empty)
    std::string algebra, hopf, action, trace, twist, groupoid, lie, model;
    // compute
    std::string invariant;  // HC | HH | HP
    std::optional<std::pair<int, int>> degrees;
    bool normalized = false;
    WindowParams window;
    // chi / twist-compare: the Hopf tensor, as terms over basis names
    std::vector<std::pair<std::vector<std::string>, Rational>> tensor;
    bool certificate = false;
    // psi
    std::optional<std::pair<int, int>> k_range;
    int l = 0;
    std::optional<std::uint32_t> seed;
    std::optional<int> tau_k;
    std::vector<CochainEntry> tau;
    // weil
    std::optional<int> truncation;
    bool basic = false;
    // expectations
    bool expect_fail = false;
    std::optional<std::vector<std::size_t>> expect_dims;
    std::optional<bool> expect_certificate;
    friend bool operator==(const TaskSpec&, const TaskSpec&) = default;
};

struct Scenario {
    std::string name;
    std::string description;
    std::vector<AlgebraSpec> algebras;
    std::vector<GroupoidDecl> groupoids;
    std::vector<HopfSpec> hopf;
    std::vector<ActionSpec> actions;
    std::vector<TraceDecl> traces;
    std::vector<TwistSpec> twists;
    std::vector<LieSpec> lie_algebras;
    std::vector<PsiModelSpec> psi_models;
    std::vector<TaskSpec> tasks;
    friend bool operator==(const Scenario&, const Scenario&) = default;
};

// Parse and validation failures; line is 1-based, 0 when unknown.
class ScenarioError : public std::runtime_error {
public:
    ScenarioError(std::string source, int line, std::string field, const std::string& message);
    std::string source;
    int line;
    std::string field;
};

// Parses and validates: known keys, value types, declared references, task parameters.
Scenario parse_scenario(std::string_view text, std::string source = "<scenario>");
Scenario load_scenario(const std::string& path);
// Canonical YAML: fixed section and key order, normalized rationals. parse(format(s)) == s.
std::string format_scenario(const Scenario& s);

}  // namespace hopfcyc
