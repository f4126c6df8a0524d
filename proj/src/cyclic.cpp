#include "hopfcyc/cyclic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace hopfcyc {

Tuple Tuple::erased(int pos) const
{
    Tuple t;
    for (int i = 0; i < size; ++i)
        if (i != pos)
            t.push_back((*this)[i]);
    return t;
}

Tuple Tuple::inserted(int pos, std::uint32_t x) const
{
    if (size >= kMaxTupleLength)
        throw std::length_error("tuple length limit exceeded");
    Tuple t;
    for (int i = 0; i < pos; ++i)
        t.push_back((*this)[i]);
    t.push_back(x);
    for (int i = pos; i < size; ++i)
        t.push_back((*this)[i]);
    return t;
}

Tuple Tuple::split(int pos, std::uint32_t x, std::uint32_t y) const
{
    if (size >= kMaxTupleLength)
        throw std::length_error("tuple length limit exceeded");
    Tuple t;
    for (int i = 0; i < pos; ++i)
        t.push_back((*this)[i]);
    t.push_back(x);
    t.push_back(y);
    for (int i = pos + 1; i < size; ++i)
        t.push_back((*this)[i]);
    return t;
}

// --- TensorPowerObject ---------------------------------------------------------------

TensorPowerObject::TensorPowerObject(std::vector<int> degrees, std::vector<std::string> names, int offset,
                                     int internal_sign, std::optional<std::uint32_t> excluded_after_first)
    : degrees_(std::move(degrees)), names_(std::move(names)), offset_(offset), sign_(internal_sign),
      excluded_(excluded_after_first)
{
    if (!degrees_.empty()) {
        min_degree_ = *std::min_element(degrees_.begin(), degrees_.end());
        max_degree_ = *std::max_element(degrees_.begin(), degrees_.end());
    }
}

Tuple TensorPowerObject::decode(int level, Key key) const
{
    const int len = length(level);
    Tuple t;
    t.size = len;
    const Key r = degrees_.size();
    for (int i = len - 1; i >= 0; --i) {
        t[i] = static_cast<std::uint32_t>(key % r);
        key /= r;
    }
    return t;
}

Key TensorPowerObject::encode(const Tuple& t) const
{
    Key k = 0;
    for (int i = 0; i < t.size; ++i)
        k = k * degrees_.size() + t[i];
    return k;
}

int TensorPowerObject::degree_sum(const Tuple& t, int from, int to) const
{
    int s = 0;
    for (int i = from; i < to; ++i)
        s += degrees_[t[i]];
    return s;
}

std::pair<int, int> TensorPowerObject::internal_range(int level) const
{
    const int len = length(level);
    if (len < 0 || (len > 0 && degrees_.empty()))
        return {1, 0};
    int lo = len * min_degree_, hi = len * max_degree_;
    if (sign_ < 0)
        return {-hi, -lo};
    return {lo, hi};
}

int TensorPowerObject::internal_degree(int level, Key key) const
{
    return sign_ * degree_sum(decode(level, key));
}

bool TensorPowerObject::in_subspace(int level, Key key) const
{
    if (!excluded_)
        return true;
    Tuple t = decode(level, key);
    for (int i = 1; i < t.size; ++i)
        if (t[i] == *excluded_)
            return false;
    return true;
}

std::string TensorPowerObject::format_key(int level, Key key) const
{
    Tuple t = decode(level, key);
    std::string s = "(";
    for (int i = 0; i < t.size; ++i) {
        if (i)
            s += ",";
        s += names_[t[i]];
    }
    return s + ")";
}

std::vector<Key> TensorPowerObject::keys(int level, int internal) const
{
    const int len = length(level);
    std::vector<Key> out;
    if (len < 0)
        return out;
    const int target = sign_ * internal;
    if (len == 0) {
        if (target == 0)
            out.push_back(0);
        return out;
    }
    if (degrees_.empty())
        return out;
    const double size_estimate = std::pow(static_cast<double>(degrees_.size()), len);
    if (size_estimate >= static_cast<double>(std::numeric_limits<Key>::max()))
        throw std::length_error(name() + ": tensor power of length " + std::to_string(len) + " exceeds key range");

    const std::uint32_t n = static_cast<std::uint32_t>(degrees_.size());
    auto rec = [&](auto&& self, int pos, int remaining, Key prefix) -> void {
        if (pos == len) {
            if (remaining == 0)
                out.push_back(prefix);
            return;
        }
        const int rest = len - pos - 1;
        for (std::uint32_t b = 0; b < n; ++b) {
            if (pos > 0 && excluded_ && b == *excluded_)
                continue;
            int r = remaining - degrees_[b];
            if (r < rest * min_degree_ || r > rest * max_degree_)
                continue;
            self(self, pos + 1, r, prefix * n + b);
        }
    };
    rec(rec, 0, target, 0);
    return out;
}

std::size_t TensorPowerObject::count(int level, int internal) const
{
    const int len = length(level);
    if (len < 0)
        return 0;
    const int target = sign_ * internal;
    if (len == 0)
        return target == 0 ? 1 : 0;
    if (degrees_.empty() || target < len * min_degree_ || target > len * max_degree_)
        return 0;
    // counts by degree sum, one position at a time
    auto saturating_add = [](std::size_t a, std::size_t b) {
        return a > std::numeric_limits<std::size_t>::max() - b ? std::numeric_limits<std::size_t>::max() : a + b;
    };
    std::vector<std::size_t> all(max_degree_ + 1, 0), tail(max_degree_ + 1, 0);
    for (std::uint32_t b = 0; b < degrees_.size(); ++b) {
        ++all[degrees_[b]];
        if (!excluded_ || b != *excluded_)
            ++tail[degrees_[b]];
    }
    std::vector<std::size_t> dist = all;
    for (int pos = 1; pos < len; ++pos) {
        std::vector<std::size_t> next(dist.size() + max_degree_, 0);
        for (std::size_t s = 0; s < dist.size(); ++s)
            if (dist[s])
                for (std::size_t d = 0; d < tail.size(); ++d)
                    if (tail[d]) {
                        std::size_t prod = dist[s] > std::numeric_limits<std::size_t>::max() / tail[d]
                                               ? std::numeric_limits<std::size_t>::max()
                                               : dist[s] * tail[d];
                        next[s + d] = saturating_add(next[s + d], prod);
                    }
        dist = std::move(next);
    }
    return static_cast<std::size_t>(target) < dist.size() ? dist[static_cast<std::size_t>(target)] : 0;
}

// --- applying maps ---------------------------------------------------------------------

SparseVector apply_operator(const KeyOperator& op, const SparseVector& x)
{
    Accumulator acc;
    for (const auto& [k, c] : x)
        op(k, c, acc);
    return acc.take();
}

SparseMatrix operator_matrix(const KeyOperator& op, std::span<const Key> domain, std::span<const Key> codomain)
{
    std::unordered_map<Key, std::size_t> row_of;
    row_of.reserve(codomain.size());
    for (std::size_t i = 0; i < codomain.size(); ++i)
        row_of.emplace(codomain[i], i);
    std::vector<SparseVector> cols;
    cols.reserve(domain.size());
    for (Key k : domain) {
        Accumulator acc;
        op(k, Rational(1), acc);
        std::vector<Entry> e;
        for (const auto& [t, c] : acc.take()) {
            auto it = row_of.find(t);
            if (it != row_of.end())
                e.emplace_back(it->second, c);
        }
        cols.push_back(SparseVector::from_unsorted(std::move(e)));
    }
    return SparseMatrix::from_columns(codomain.size(), std::move(cols));
}

SparseVector apply_face(const CyclicObject& x, int n, int i, const SparseVector& v)
{
    return apply_operator([&](Key k, const Rational& c, Accumulator& a) { x.face(n, i, k, c, a); }, v);
}

SparseVector apply_degeneracy(const CyclicObject& x, int n, int i, const SparseVector& v)
{
    return apply_operator([&](Key k, const Rational& c, Accumulator& a) { x.degeneracy(n, i, k, c, a); }, v);
}

SparseVector apply_cyclic(const CyclicObject& x, int n, const SparseVector& v)
{
    return apply_operator([&](Key k, const Rational& c, Accumulator& a) { x.cyclic(n, k, c, a); }, v);
}

SparseVector apply_internal_d(const CyclicObject& x, int n, const SparseVector& v)
{
    if (!x.has_differential())
        return {};
    return apply_operator([&](Key k, const Rational& c, Accumulator& a) { x.differential(n, k, c, a); }, v);
}

SparseVector apply_b(const CyclicObject& x, int n, const SparseVector& v)
{
    Accumulator acc;
    for (int i = 0; i <= n + 1; ++i) {
        const Rational s = sign_power(i);
        for (const auto& [k, c] : v)
            x.face(n + 1, i, k, c * s, acc);
    }
    return acc.take();
}

SparseVector apply_B(const CyclicObject& x, int n, const SparseVector& v, BConvention convention)
{
    if (n == 0 || v.empty())
        return {};
    const Rational eps = sign_power(convention == BConvention::kStandard ? n : n - 1);
    SparseVector w = v;
    w.add_scaled(apply_cyclic(x, n, v), -eps);
    w = apply_degeneracy(x, n, n - 1, apply_cyclic(x, n, w));
    Accumulator acc;
    SparseVector power = w;
    for (int j = 0; j < n; ++j) {
        acc.add(power, sign_power(static_cast<long long>(j) * (n - 1)));
        if (j + 1 < n)
            power = apply_cyclic(x, n - 1, power);
    }
    return acc.take();
}

SparseMatrix operator_b(const CyclicObject& x, int n, int internal)
{
    auto dom = x.keys(n, internal);
    auto cod = x.keys(n + 1, internal);
    return operator_matrix(
        [&](Key k, const Rational& c, Accumulator& a) {
            for (int i = 0; i <= n + 1; ++i)
                x.face(n + 1, i, k, c * sign_power(i), a);
        },
        dom, cod);
}

SparseMatrix operator_B(const CyclicObject& x, int n, int internal, BConvention convention)
{
    auto dom = x.keys(n, internal);
    auto cod = x.keys(n - 1, internal);
    return operator_matrix(
        [&](Key k, const Rational& c, Accumulator& a) { a.add(apply_B(x, n, SparseVector::unit(k), convention), c); },
        dom, cod);
}

// --- level vectors -----------------------------------------------------------------------

void add_scaled(LevelVector& acc, const LevelVector& v, const Rational& c)
{
    for (const auto& [lvl, x] : v) {
        auto& slot = acc[lvl];
        slot.add_scaled(x, c);
        if (slot.empty())
            acc.erase(lvl);
    }
}

LevelVector scaled(const LevelVector& v, const Rational& c)
{
    LevelVector r;
    add_scaled(r, v, c);
    return r;
}

bool is_zero(const LevelVector& v)
{
    return std::all_of(v.begin(), v.end(), [](const auto& p) { return p.second.empty(); });
}

namespace {

void put(LevelVector& r, int level, SparseVector v)
{
    if (v.empty())
        return;
    auto& slot = r[level];
    slot += v;
    if (slot.empty())
        r.erase(level);
}

}  // namespace

LevelVector apply_b(const CyclicObject& x, const LevelVector& v)
{
    LevelVector r;
    for (const auto& [lvl, part] : v)
        put(r, lvl + 1, apply_b(x, lvl, part));
    return r;
}

LevelVector apply_B(const CyclicObject& x, const LevelVector& v, BConvention convention)
{
    LevelVector r;
    for (const auto& [lvl, part] : v)
        put(r, lvl - 1, apply_B(x, lvl, part, convention));
    return r;
}

LevelVector apply_signed_d(const CyclicObject& x, const LevelVector& v)
{
    LevelVector r;
    for (const auto& [lvl, part] : v)
        put(r, lvl, apply_internal_d(x, lvl, part).scaled(sign_power(lvl)));
    return r;
}

LevelVector apply_total(const CyclicObject& x, const LevelVector& v, BConvention convention)
{
    LevelVector r = apply_b(x, v);
    add_scaled(r, apply_B(x, v, convention), 1);
    add_scaled(r, apply_signed_d(x, v), 1);
    return r;
}

// --- checks --------------------------------------------------------------------------------

namespace {

std::vector<Key> all_keys(const CyclicObject& x, int level)
{
    std::vector<Key> r;
    auto [lo, hi] = x.internal_range(level);
    for (int e = lo; e <= hi; ++e) {
        auto k = x.keys(level, e);
        r.insert(r.end(), k.begin(), k.end());
    }
    return r;
}

std::string witness(const CyclicObject& x, int level, Key key, const std::string& extra = {})
{
    std::string s = "level " + std::to_string(level) + ", " + x.format_key(level, key);
    if (!extra.empty())
        s += ", " + extra;
    return s;
}

}  // namespace

CheckReport check_internal_grading(const CyclicObject& x, int n_max)
{
    CheckReport rep("internal grading of " + x.name());
    auto expect = [&](const std::string& op, int level, const SparseVector& image, int degree, int n, Key k) {
        for (const auto& [key, c] : image)
            if (x.internal_degree(level, key) != degree) {
                rep.fail(op, op + " moves " + witness(x, n, k) + " to internal degree " +
                                 std::to_string(x.internal_degree(level, key)));
                return;
            }
    };
    for (int n = 0; n <= n_max; ++n) {
        for (Key k : all_keys(x, n)) {
            rep.count();
            const SparseVector e = SparseVector::unit(k);
            const int w = x.internal_degree(n, k);
            expect("cyclic", n, apply_cyclic(x, n, e), w, n, k);
            if (n + 1 <= n_max)
                for (int i = 0; i <= n + 1; ++i)
                    expect("face", n + 1, apply_face(x, n + 1, i, e), w, n, k);
            for (int i = 0; i < n; ++i)
                expect("degeneracy", n - 1, apply_degeneracy(x, n, i, e), w, n, k);
            if (x.has_differential())
                expect("differential", n, apply_internal_d(x, n, e), w + 1, n, k);
        }
    }
    return rep;
}

CheckReport check_cyclic_axioms(const CyclicObject& x, int n_max)
{
    CheckReport rep("cyclic axioms of " + x.name());
    for (int n = 0; n <= n_max; ++n) {
        for (Key k : all_keys(x, n)) {
            rep.count();
            SparseVector e = SparseVector::unit(k);
            SparseVector p = e;
            for (int j = 0; j <= n; ++j)
                p = apply_cyclic(x, n, p);
            if (p != e)
                rep.fail("tau-power", "tau_" + std::to_string(n) + "^" + std::to_string(n + 1) + " != id at " +
                                          witness(x, n, k));
        }
        if (n >= 1)
            for (Key k : all_keys(x, n - 1)) {
                SparseVector e = SparseVector::unit(k);
                for (int i = 0; i <= n; ++i) {
                    rep.count();
                    SparseVector lhs = apply_cyclic(x, n, apply_face(x, n, i, e));
                    SparseVector rhs = i == 0 ? apply_face(x, n, n, e)
                                              : apply_face(x, n, i - 1, apply_cyclic(x, n - 1, e));
                    if (lhs != rhs)
                        rep.fail("tau-face", "tau_" + std::to_string(n) + " delta_" + std::to_string(i) + " at " +
                                                 witness(x, n - 1, k));
                }
            }
        if (n + 1 <= n_max)
            for (Key k : all_keys(x, n + 1)) {
                SparseVector e = SparseVector::unit(k);
                for (int i = 0; i <= n; ++i) {
                    rep.count();
                    SparseVector lhs = apply_cyclic(x, n, apply_degeneracy(x, n + 1, i, e));
                    SparseVector rhs =
                        i == 0 ? apply_degeneracy(x, n + 1, n, apply_cyclic(x, n + 1, apply_cyclic(x, n + 1, e)))
                               : apply_degeneracy(x, n + 1, i - 1, apply_cyclic(x, n + 1, e));
                    if (lhs != rhs)
                        rep.fail("tau-degeneracy", "tau_" + std::to_string(n) + " sigma_" + std::to_string(i) +
                                                       " at " + witness(x, n + 1, k));
                }
            }
        // δ_j δ_i = δ_i δ_{j-1} for i < j, from X^{n-1} to X^{n+1}
        if (n >= 1 && n + 1 <= n_max)
            for (Key k : all_keys(x, n - 1)) {
                SparseVector e = SparseVector::unit(k);
                std::vector<SparseVector> once(n + 1);
                for (int i = 0; i <= n; ++i)
                    once[i] = apply_face(x, n, i, e);
                for (int j = 1; j <= n + 1; ++j)
                    for (int i = 0; i < j; ++i) {
                        rep.count();
                        if (apply_face(x, n + 1, j, once[i]) != apply_face(x, n + 1, i, once[j - 1]))
                            rep.fail("face-face", "delta_" + std::to_string(j) + " delta_" + std::to_string(i) +
                                                      " at " + witness(x, n - 1, k));
                    }
            }
        // σ_j σ_i = σ_i σ_{j+1} for i <= j, from X^{n+1} to X^{n-1}
        if (n >= 1 && n + 1 <= n_max)
            for (Key k : all_keys(x, n + 1)) {
                SparseVector e = SparseVector::unit(k);
                for (int j = 0; j <= n - 1; ++j)
                    for (int i = 0; i <= j; ++i) {
                        rep.count();
                        SparseVector lhs = apply_degeneracy(x, n, j, apply_degeneracy(x, n + 1, i, e));
                        SparseVector rhs = apply_degeneracy(x, n, i, apply_degeneracy(x, n + 1, j + 1, e));
                        if (lhs != rhs)
                            rep.fail("degeneracy-degeneracy", "sigma_" + std::to_string(j) + " sigma_" +
                                                                  std::to_string(i) + " at " + witness(x, n + 1, k));
                    }
            }
        // σ_j δ_i on X^{n-1}, δ_i : X^{n-1} -> X^n, σ_j : X^n -> X^{n-1}
        if (n >= 1)
            for (Key k : all_keys(x, n - 1)) {
                SparseVector e = SparseVector::unit(k);
                for (int j = 0; j <= n - 1; ++j)
                    for (int i = 0; i <= n; ++i) {
                        rep.count();
                        SparseVector lhs = apply_degeneracy(x, n, j, apply_face(x, n, i, e));
                        SparseVector rhs;
                        if (i < j)
                            rhs = apply_face(x, n - 1, i, apply_degeneracy(x, n - 1, j - 1, e));
                        else if (i == j || i == j + 1)
                            rhs = e;
                        else
                            rhs = apply_face(x, n - 1, i - 1, apply_degeneracy(x, n - 1, j, e));
                        if (lhs != rhs)
                            rep.fail("degeneracy-face", "sigma_" + std::to_string(j) + " delta_" +
                                                            std::to_string(i) + " at " + witness(x, n - 1, k));
                    }
            }
    }
    return rep;
}

CheckReport check_operator_identities(const CyclicObject& x, int n_max, BConvention convention)
{
    CheckReport rep("operator identities of " + x.name());
    const bool with_d = x.has_differential();
    for (int n = 0; n <= n_max; ++n) {
        for (Key k : all_keys(x, n)) {
            SparseVector e = SparseVector::unit(k);
            SparseVector be = n + 1 <= n_max ? apply_b(x, n, e) : SparseVector{};
            SparseVector Be = apply_B(x, n, e, convention);
            if (n + 2 <= n_max) {
                rep.count();
                if (!apply_b(x, n + 1, be).empty())
                    rep.fail("b^2", witness(x, n, k));
            }
            if (n >= 2) {
                rep.count();
                if (!apply_B(x, n - 1, Be, convention).empty())
                    rep.fail("B^2", witness(x, n, k));
            }
            if (n + 1 <= n_max) {
                rep.count();
                SparseVector s = apply_B(x, n + 1, be, convention);
                if (n >= 1)
                    s += apply_b(x, n - 1, Be);
                if (!s.empty())
                    rep.fail("bB+Bb", witness(x, n, k));
            }
            if (!with_d)
                continue;
            SparseVector de = apply_internal_d(x, n, e);
            rep.count();
            if (!apply_internal_d(x, n, de).empty())
                rep.fail("d^2", witness(x, n, k));
            if (n + 1 <= n_max) {
                rep.count();
                if (apply_internal_d(x, n + 1, be) != apply_b(x, n, de))
                    rep.fail("db-bd", witness(x, n, k));
            }
            if (n >= 1) {
                rep.count();
                if (apply_internal_d(x, n - 1, Be) != apply_B(x, n, de, convention))
                    rep.fail("dB-Bd", witness(x, n, k));
            }
        }
    }
    return rep;
}

}  // namespace hopfcyc
