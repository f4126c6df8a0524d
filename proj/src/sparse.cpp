#include "hopfcyc/sparse.hpp"

#include <algorithm>
#include <sstream>

namespace hopfcyc {

SparseVector::SparseVector(std::initializer_list<Entry> entries)
{
    *this = from_unsorted(std::vector<Entry>(entries));
}

SparseVector SparseVector::from_unsorted(std::vector<Entry> entries)
{
    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) { return a.first < b.first; });
    SparseVector v;
    for (auto& e : entries) {
        if (!v.entries_.empty() && v.entries_.back().first == e.first)
            v.entries_.back().second += e.second;
        else
            v.entries_.push_back(std::move(e));
        if (v.entries_.back().second.is_zero())
            v.entries_.pop_back();
    }
    return v;
}

Rational SparseVector::get(Key k) const
{
    auto it = std::lower_bound(entries_.begin(), entries_.end(), k,
                               [](const Entry& e, Key key) { return e.first < key; });
    if (it != entries_.end() && it->first == k)
        return it->second;
    return {};
}

void SparseVector::add_scaled(const SparseVector& o, const Rational& c)
{
    if (c.is_zero() || o.empty())
        return;
    std::vector<Entry> out;
    out.reserve(entries_.size() + o.entries_.size());
    auto a = entries_.begin();
    auto b = o.entries_.begin();
    while (a != entries_.end() || b != o.entries_.end()) {
        if (b == o.entries_.end() || (a != entries_.end() && a->first < b->first)) {
            out.push_back(std::move(*a++));
        } else if (a == entries_.end() || b->first < a->first) {
            out.emplace_back(b->first, b->second * c);
            ++b;
        } else {
            Rational s = a->second + b->second * c;
            if (!s.is_zero())
                out.emplace_back(a->first, std::move(s));
            ++a;
            ++b;
        }
    }
    entries_ = std::move(out);
}

SparseVector SparseVector::scaled(const Rational& c) const
{
    SparseVector r;
    if (c.is_zero())
        return r;
    r.entries_.reserve(entries_.size());
    for (const auto& [k, x] : entries_)
        r.entries_.emplace_back(k, x * c);
    return r;
}

SparseVector& SparseVector::operator+=(const SparseVector& o)
{
    add_scaled(o, 1);
    return *this;
}

SparseVector& SparseVector::operator-=(const SparseVector& o)
{
    add_scaled(o, -1);
    return *this;
}

std::string SparseVector::str() const
{
    std::ostringstream os;
    os << "{";
    bool first = true;
    for (const auto& [k, x] : entries_) {
        os << (first ? "" : ", ") << k << ": " << x;
        first = false;
    }
    os << "}";
    return os.str();
}

SparseVector Accumulator::take()
{
    std::vector<Entry> v;
    v.reserve(map_.size());
    for (auto& [k, x] : map_)
        if (!x.is_zero())
            v.emplace_back(k, std::move(x));
    map_.clear();
    std::sort(v.begin(), v.end(), [](const Entry& a, const Entry& b) { return a.first < b.first; });
    return SparseVector::from_unsorted(std::move(v));
}

}  // namespace hopfcyc
