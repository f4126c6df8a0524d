#pragma once

#include "hopfcyc/cyclic.hpp"

#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

namespace hopfcyc {

class WindowTooSmall : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Finite piece of the total complex. A summand (level k, column q, internal
// degree e) sits in total degree k + 2q + e; the total differential is
// b + B + (-1)^k d, with B moving to column q + 1.
struct WindowSpec {
    int max_level = 4;
    int min_degree = 0;
    int max_degree = 4;
    // Allowed internal degrees (inclusive); default: everything occurring up to max_level + 1.
    std::optional<std::pair<int, int>> internal;
    bool cyclic = true;  // false keeps column q = 0 only (Hochschild complex)
    BConvention convention = BConvention::kStandard;

    // Algebra cochains carry internal degree -(weight).
    static std::pair<int, int> weights(int lo, int hi) { return {-hi, -lo}; }
};

struct Summand {
    int level = 0;
    int q = 0;
    int internal = 0;
    std::size_t offset = 0;
    std::vector<Key> keys;
    std::unordered_map<Key, std::size_t> index;
};

struct Slot {
    int degree = 0;
    std::vector<Summand> summands;
    std::size_t dim = 0;
    // Every summand of this total degree lies inside the window and its
    // outgoing differential is fully represented.
    bool complete = true;

    const Summand* find(int level, int q, int internal) const;
};

class ComplexWindow {
public:
    ComplexWindow(const CyclicObject& x, WindowSpec spec);

    const CyclicObject& object() const { return *object_; }
    const WindowSpec& spec() const { return spec_; }
    bool has_slot(int degree) const { return degree >= first_ && degree < first_ + static_cast<int>(slots_.size()); }
    const Slot& slot(int degree) const;
    std::vector<std::size_t> dimensions() const;  // over [min_degree, max_degree]

    // Total differential slot(degree) -> slot(degree + 1).
    const SparseMatrix& differential(int degree) const;
    // Periodicity shift S: slot(degree) -> slot(degree + 2), identity on each summand.
    SparseMatrix periodicity(int degree) const;

    // Cohomology at a degree is exact when the slots around it are complete.
    bool cohomology_exact(int degree) const;
    std::size_t cohomology(int degree) const;  // throws WindowTooSmall when not exact
    std::vector<SparseVector> cohomology_representatives(int degree) const;

    // Conversion between slot coordinates and per-(level, q) cochains.
    SparseVector to_slot(int degree, const std::map<std::pair<int, int>, SparseVector>& parts) const;
    std::map<std::pair<int, int>, SparseVector> from_slot(int degree, const SparseVector& v) const;

private:
    Slot build_slot(int degree) const;
    SparseMatrix build_differential(const Slot& from, const Slot& to) const;
    bool slot_reaches(int degree, int min_level) const;

    const CyclicObject* object_;
    WindowSpec spec_;
    std::pair<int, int> internal_;
    int first_ = 0;
    std::vector<Slot> slots_;
    std::vector<SparseMatrix> differentials_;
};

// Applies S to a cocycle of slot(degree).
SparseVector periodicity_shift(const ComplexWindow& w, int degree, const SparseVector& cocycle);

std::size_t compute_HC(const CyclicObject& x, int degree, WindowSpec spec);
std::size_t compute_HH(const CyclicObject& x, int degree, WindowSpec spec);

struct PeriodicResult {
    int parity = 0;
    std::size_t dim = 0;
    bool stabilized = false;
    std::vector<std::size_t> hc_dims;      // HC^{parity}, HC^{parity+2}, ...
    std::vector<std::size_t> shift_ranks;  // rank of S: HC^n -> HC^{n+2}
};

// Periodic cyclic cohomology as the S-stabilized limit of HC inside the window:
// stabilized once two consecutive S maps are isomorphisms.
PeriodicResult compute_HP(const CyclicObject& x, int parity, WindowSpec spec);

}  // namespace hopfcyc
