#include "hopfcyc/window.hpp"

#include <algorithm>
#include <limits>

namespace hopfcyc {

const Summand* Slot::find(int level, int q, int internal) const
{
    for (const auto& s : summands)
        if (s.level == level && s.q == q && s.internal == internal)
            return &s;
    return nullptr;
}

ComplexWindow::ComplexWindow(const CyclicObject& x, WindowSpec spec) : object_(&x), spec_(spec)
{
    if (spec_.max_level < 0 || spec_.min_degree > spec_.max_degree)
        throw std::invalid_argument("empty window specification");
    if (spec_.internal) {
        internal_ = *spec_.internal;
    } else {
        internal_ = {std::numeric_limits<int>::max(), std::numeric_limits<int>::min()};
        for (int k = 0; k <= spec_.max_level + 1; ++k) {
            auto [lo, hi] = x.internal_range(k);
            if (lo > hi)
                continue;
            internal_.first = std::min(internal_.first, lo);
            internal_.second = std::max(internal_.second, hi);
        }
        if (internal_.first > internal_.second)
            internal_ = {0, -1};
    }
    first_ = spec_.min_degree - 1;
    for (int n = first_; n <= spec_.max_degree + 1; ++n)
        slots_.push_back(build_slot(n));
    for (std::size_t i = 0; i + 1 < slots_.size(); ++i)
        differentials_.push_back(build_differential(slots_[i], slots_[i + 1]));
}

bool ComplexWindow::slot_reaches(int degree, int min_level) const
{
    for (int e = internal_.first; e <= internal_.second; ++e) {
        for (int k = std::max(min_level, 0); k <= degree - e; ++k) {
            const int rem = degree - k - e;
            if (rem % 2 != 0 || (!spec_.cyclic && rem != 0))
                continue;
            auto [lo, hi] = object_->internal_range(k);
            if (e < lo || e > hi)
                continue;
            if (object_->count(k, e) > 0)
                return true;
        }
    }
    return false;
}

Slot ComplexWindow::build_slot(int degree) const
{
    Slot s;
    s.degree = degree;
    for (int k = 0; k <= spec_.max_level; ++k) {
        auto [lo, hi] = object_->internal_range(k);
        for (int e = std::max(lo, internal_.first); e <= std::min(hi, internal_.second); ++e) {
            const int rem = degree - k - e;
            if (rem < 0 || rem % 2 != 0)
                continue;
            const int q = rem / 2;
            if (!spec_.cyclic && q != 0)
                continue;
            Summand m;
            m.level = k;
            m.q = q;
            m.internal = e;
            m.keys = object_->keys(k, e);
            if (m.keys.empty())
                continue;
            m.offset = s.dim;
            m.index.reserve(m.keys.size());
            for (std::size_t i = 0; i < m.keys.size(); ++i)
                m.index.emplace(m.keys[i], i);
            s.dim += m.keys.size();
            s.summands.push_back(std::move(m));
        }
    }
    s.complete = !slot_reaches(degree, spec_.max_level);
    return s;
}

SparseMatrix ComplexWindow::build_differential(const Slot& from, const Slot& to) const
{
    std::vector<SparseVector> cols;
    cols.reserve(from.dim);
    auto deposit = [&](std::vector<Entry>& out, int level, int q, const SparseVector& image) {
        if (image.empty())
            return;
        const int e = object_->internal_degree(level, image.begin()->first);
        const Summand* target = to.find(level, q, e);
        if (!target) {
            if (level <= spec_.max_level && e >= internal_.first && e <= internal_.second)
                throw std::logic_error(object_->name() + ": differential image outside the chosen subspace at " +
                                       object_->format_key(level, image.begin()->first));
            return;  // beyond the window: truncated
        }
        for (const auto& [k, c] : image) {
            auto it = target->index.find(k);
            if (it == target->index.end())
                throw std::logic_error(object_->name() + ": differential image outside the chosen subspace at " +
                                       object_->format_key(level, k));
            out.emplace_back(target->offset + it->second, c);
        }
    };
    for (const auto& m : from.summands) {
        for (Key key : m.keys) {
            std::vector<Entry> col;
            SparseVector e = SparseVector::unit(key);
            if (m.level + 1 <= spec_.max_level)
                deposit(col, m.level + 1, m.q, apply_b(*object_, m.level, e));
            if (spec_.cyclic && m.level >= 1)
                deposit(col, m.level - 1, m.q + 1, apply_B(*object_, m.level, e, spec_.convention));
            if (object_->has_differential()) {
                SparseVector de = apply_internal_d(*object_, m.level, e);
                if (!de.empty() && object_->internal_degree(m.level, de.begin()->first) <= internal_.second)
                    deposit(col, m.level, m.q, de.scaled(sign_power(m.level)));
            }
            cols.push_back(SparseVector::from_unsorted(std::move(col)));
        }
    }
    return SparseMatrix::from_columns(to.dim, std::move(cols));
}

const Slot& ComplexWindow::slot(int degree) const
{
    if (!has_slot(degree))
        throw WindowTooSmall("total degree " + std::to_string(degree) + " is outside the window");
    return slots_[static_cast<std::size_t>(degree - first_)];
}

std::vector<std::size_t> ComplexWindow::dimensions() const
{
    std::vector<std::size_t> r;
    for (int n = spec_.min_degree; n <= spec_.max_degree; ++n)
        r.push_back(slot(n).dim);
    return r;
}

const SparseMatrix& ComplexWindow::differential(int degree) const
{
    if (!has_slot(degree) || !has_slot(degree + 1))
        throw WindowTooSmall("no differential out of total degree " + std::to_string(degree) + " in the window");
    return differentials_[static_cast<std::size_t>(degree - first_)];
}

SparseMatrix ComplexWindow::periodicity(int degree) const
{
    const Slot& from = slot(degree);
    const Slot& to = slot(degree + 2);
    std::vector<SparseVector> cols;
    for (const auto& m : from.summands) {
        const Summand* t = to.find(m.level, m.q + 1, m.internal);
        for (Key k : m.keys)
            cols.push_back(t ? SparseVector::unit(t->offset + t->index.at(k)) : SparseVector{});
    }
    return SparseMatrix::from_columns(to.dim, std::move(cols));
}

bool ComplexWindow::cohomology_exact(int degree) const
{
    if (!has_slot(degree - 1) || !has_slot(degree + 1))
        return false;
    return slot(degree).complete && !slot_reaches(degree - 1, spec_.max_level + 1);
}

std::size_t ComplexWindow::cohomology(int degree) const
{
    if (!cohomology_exact(degree))
        throw WindowTooSmall("window of max level " + std::to_string(spec_.max_level) +
                             " is too small for total degree " + std::to_string(degree));
    return cohomology_dim(differential(degree - 1), differential(degree));
}

std::vector<SparseVector> ComplexWindow::cohomology_representatives(int degree) const
{
    if (!cohomology_exact(degree))
        throw WindowTooSmall("window too small for total degree " + std::to_string(degree));
    return hopfcyc::cohomology_representatives(differential(degree - 1), differential(degree));
}

SparseVector ComplexWindow::to_slot(int degree, const std::map<std::pair<int, int>, SparseVector>& parts) const
{
    const Slot& s = slot(degree);
    std::vector<Entry> out;
    for (const auto& [lq, v] : parts) {
        if (v.empty())
            continue;
        const Summand* m = nullptr;
        for (const auto& c : s.summands)
            if (c.level == lq.first && c.q == lq.second)
                m = &c;
        if (!m)
            throw WindowTooSmall("cochain at level " + std::to_string(lq.first) + ", column " +
                                 std::to_string(lq.second) + " lies outside total degree " + std::to_string(degree));
        for (const auto& [k, c] : v) {
            auto it = m->index.find(k);
            if (it == m->index.end())
                throw std::invalid_argument("cochain component " + object_->format_key(lq.first, k) +
                                            " is not in the window basis");
            out.emplace_back(m->offset + it->second, c);
        }
    }
    return SparseVector::from_unsorted(std::move(out));
}

std::map<std::pair<int, int>, SparseVector> ComplexWindow::from_slot(int degree, const SparseVector& v) const
{
    const Slot& s = slot(degree);
    std::map<std::pair<int, int>, std::vector<Entry>> parts;
    for (const auto& [pos, c] : v) {
        auto it = std::upper_bound(s.summands.begin(), s.summands.end(), pos,
                                   [](Key p, const Summand& m) { return p < m.offset; });
        const Summand& m = *std::prev(it);
        parts[{m.level, m.q}].emplace_back(m.keys[pos - m.offset], c);
    }
    std::map<std::pair<int, int>, SparseVector> r;
    for (auto& [lq, e] : parts)
        r[lq] = SparseVector::from_unsorted(std::move(e));
    return r;
}

SparseVector periodicity_shift(const ComplexWindow& w, int degree, const SparseVector& cocycle)
{
    if (!w.has_slot(degree + 2) || !w.slot(degree + 2).complete)
        throw WindowTooSmall("periodicity shift from total degree " + std::to_string(degree) +
                             " reaches the window boundary; widen the window");
    return w.periodicity(degree).apply(cocycle);
}

std::size_t compute_HC(const CyclicObject& x, int degree, WindowSpec spec)
{
    spec.cyclic = true;
    spec.min_degree = spec.max_degree = degree;
    return ComplexWindow(x, spec).cohomology(degree);
}

std::size_t compute_HH(const CyclicObject& x, int degree, WindowSpec spec)
{
    spec.cyclic = false;
    spec.min_degree = spec.max_degree = degree;
    return ComplexWindow(x, spec).cohomology(degree);
}

PeriodicResult compute_HP(const CyclicObject& x, int parity, WindowSpec spec)
{
    PeriodicResult r;
    r.parity = ((parity % 2) + 2) % 2;
    spec.cyclic = true;
    spec.min_degree = r.parity;
    spec.max_degree = std::max(spec.max_degree, r.parity);
    ComplexWindow w(x, spec);
    std::vector<int> degrees;
    for (int n = r.parity; n <= spec.max_degree && w.cohomology_exact(n); n += 2) {
        degrees.push_back(n);
        r.hc_dims.push_back(w.cohomology(n));
    }
    for (std::size_t i = 0; i + 1 < degrees.size(); ++i) {
        const int n = degrees[i];
        std::vector<SparseVector> cols;
        for (const auto& z : kernel_basis(w.differential(n)))
            cols.push_back(w.periodicity(n).apply(z));
        const SparseMatrix& boundary = w.differential(n + 1);
        const std::size_t base = rank(boundary);
        for (const auto& c : boundary.columns())
            cols.push_back(c);
        r.shift_ranks.push_back(rank(SparseMatrix::from_columns(w.slot(n + 2).dim, std::move(cols))) - base);
    }
    auto iso = [&](std::size_t i) { return r.shift_ranks[i] == r.hc_dims[i] && r.hc_dims[i] == r.hc_dims[i + 1]; };
    for (std::size_t i = 0; i + 1 < r.shift_ranks.size(); ++i)
        if (iso(i) && iso(i + 1)) {
            r.stabilized = true;
            r.dim = r.hc_dims[i + 2];
        }
    if (!r.stabilized && !r.hc_dims.empty())
        r.dim = r.hc_dims.back();
    return r;
}

}  // namespace hopfcyc
