#pragma once

#include <utility>
#include <vector>

#include "k2sym/arith/integer.hpp"

namespace k2sym {

template <class T>
struct SymbolTerm {
    T x;
    T y;
    Integer multiplicity;

    bool operator==(const SymbolTerm&) const = default;
};

/// Formal sum of Steinberg symbols m_i {x_i, y_i}. Repeated pairs are merged
/// and zero multiplicities dropped; terms keep insertion order.
template <class T>
class SymbolExpr {
public:
    SymbolExpr() = default;

    static SymbolExpr symbol(T x, T y, Integer m = 1) {
        SymbolExpr e;
        e.add(std::move(x), std::move(y), std::move(m));
        return e;
    }

    SymbolExpr& add(T x, T y, Integer m = 1) {
        if (m == 0) return *this;
        for (auto it = terms_.begin(); it != terms_.end(); ++it)
            if (it->x == x && it->y == y) {
                it->multiplicity += m;
                if (it->multiplicity == 0) terms_.erase(it);
                return *this;
            }
        terms_.push_back({std::move(x), std::move(y), std::move(m)});
        return *this;
    }

    SymbolExpr& operator+=(const SymbolExpr& o) {
        for (const auto& t : o.terms_) add(t.x, t.y, t.multiplicity);
        return *this;
    }
    SymbolExpr operator+(const SymbolExpr& o) const { return SymbolExpr(*this) += o; }
    SymbolExpr operator-() const {
        SymbolExpr r(*this);
        for (auto& t : r.terms_) t.multiplicity = -t.multiplicity;
        return r;
    }

    const std::vector<SymbolTerm<T>>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    bool operator==(const SymbolExpr&) const = default;

private:
    std::vector<SymbolTerm<T>> terms_;
};

}  // namespace k2sym
