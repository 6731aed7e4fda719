#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace fpcert {

// Exponent vector of fixed length (one entry per variable).
class MultiIndex {
  public:
    MultiIndex() = default;
    explicit MultiIndex(std::size_t n) : e_(n, 0) {}
    MultiIndex(std::initializer_list<uint32_t> init) : e_(init) {}
    static MultiIndex zeros(std::size_t n) { return MultiIndex(n); }
    static MultiIndex unit(std::size_t n, std::size_t i) {
        MultiIndex m(n);
        m.e_[i] = 1;
        return m;
    }

    std::size_t size() const { return e_.size(); }
    uint32_t operator[](std::size_t i) const { return e_[i]; }
    uint32_t& operator[](std::size_t i) { return e_[i]; }

    uint32_t total() const { return std::accumulate(e_.begin(), e_.end(), 0u); }
    bool is_zero() const {
        return std::all_of(e_.begin(), e_.end(), [](uint32_t v) { return v == 0; });
    }

    // Componentwise alpha <= other; only defined for equal lengths.
    bool leq(const MultiIndex& other) const {
        if (size() != other.size()) throw std::invalid_argument("multi-index length mismatch");
        for (std::size_t i = 0; i < size(); ++i)
            if (e_[i] > other.e_[i]) return false;
        return true;
    }

    MultiIndex operator+(const MultiIndex& o) const {
        if (size() != o.size()) throw std::invalid_argument("multi-index length mismatch");
        MultiIndex r(size());
        for (std::size_t i = 0; i < size(); ++i) r.e_[i] = e_[i] + o.e_[i];
        return r;
    }

    static MultiIndex max(const MultiIndex& a, const MultiIndex& b) {
        if (a.size() != b.size()) throw std::invalid_argument("multi-index length mismatch");
        MultiIndex r(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) r.e_[i] = std::max(a[i], b[i]);
        return r;
    }

    bool operator==(const MultiIndex& o) const { return e_ == o.e_; }
    bool operator!=(const MultiIndex& o) const { return e_ != o.e_; }

    std::string to_string() const {
        std::string s = "(";
        for (std::size_t i = 0; i < size(); ++i) {
            if (i) s += ",";
            s += std::to_string(e_[i]);
        }
        return s + ")";
    }

  private:
    std::vector<uint32_t> e_;
};

// Canonical term order: total degree ascending, then lexicographic ascending.
// Every map keyed this way iterates deterministically, which pins down LP row
// and column ordering across runs.
struct GradedLexLess {
    bool operator()(const MultiIndex& a, const MultiIndex& b) const {
        uint32_t ta = a.total(), tb = b.total();
        if (ta != tb) return ta < tb;
        for (std::size_t i = 0; i < a.size() && i < b.size(); ++i)
            if (a[i] != b[i]) return a[i] < b[i];
        return a.size() < b.size();
    }
};

struct MultiIndexHash {
    std::size_t operator()(const MultiIndex& m) const {
        std::size_t h = 1469598103934665603ull;
        for (std::size_t i = 0; i < m.size(); ++i) {
            h ^= m[i] + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        }
        return h;
    }
};

}  // namespace fpcert
