#pragma once

#include "hopfcyc/rational.hpp"

#include <cstdint>
#include <initializer_list>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace hopfcyc {

using Key = std::uint64_t;
using Entry = std::pair<Key, Rational>;

// Sparse vector: entries sorted by key, no stored zeros.
class SparseVector {
public:
    SparseVector() = default;
    SparseVector(std::initializer_list<Entry> entries);
    static SparseVector from_unsorted(std::vector<Entry> entries);
    static SparseVector unit(Key k, Rational c = 1) { return SparseVector({{k, std::move(c)}}); }

    bool empty() const { return entries_.empty(); }
    std::size_t size() const { return entries_.size(); }
    auto begin() const { return entries_.begin(); }
    auto end() const { return entries_.end(); }
    const std::vector<Entry>& entries() const { return entries_; }

    Rational get(Key k) const;
    void add_scaled(const SparseVector& o, const Rational& c);
    SparseVector scaled(const Rational& c) const;
    SparseVector operator-() const { return scaled(-1); }
    SparseVector& operator+=(const SparseVector& o);
    SparseVector& operator-=(const SparseVector& o);
    friend SparseVector operator+(SparseVector a, const SparseVector& b) { return a += b; }
    friend SparseVector operator-(SparseVector a, const SparseVector& b) { return a -= b; }
    friend bool operator==(const SparseVector&, const SparseVector&) = default;

    std::string str() const;

private:
    std::vector<Entry> entries_;
};

// Unordered scratch accumulator; call take() to get a canonical SparseVector.
class Accumulator {
public:
    void add(Key k, const Rational& c)
    {
        if (c.is_zero())
            return;
        auto [it, inserted] = map_.try_emplace(k, c);
        if (!inserted)
            it->second += c;
    }
    void add(const SparseVector& v, const Rational& c = 1)
    {
        for (const auto& [k, x] : v)
            add(k, x * c);
    }
    bool empty() const { return map_.empty(); }
    SparseVector take();

private:
    std::unordered_map<Key, Rational> map_;
};

}  // namespace hopfcyc
