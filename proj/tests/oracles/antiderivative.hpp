#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

// Exact 2-forms among polynomial forms, by linear algebra over F_p: is
// h ds^dt equal to d(f ds + g dt) = (g_s - f_t) ds^dt for polynomials f, g
// of total degree <= deg_h + 1? Differentiation is done term by term.
namespace oracle {

using Monomial = std::pair<unsigned, unsigned>;  // (i, j) for s^i t^j
using SparsePoly = std::map<Monomial, std::uint32_t>;

class AntiderivativeSolver {
public:
    AntiderivativeSolver(std::uint32_t p, unsigned max_deg_h) : p_(p) {
        // Columns: images of s^i t^j dt (under d: i s^(i-1) t^j) and of
        // s^i t^j ds (under d: -j s^i t^(j-1)).
        for (unsigned i = 0; i <= max_deg_h + 1; ++i)
            for (unsigned j = 0; i + j <= max_deg_h + 1; ++j) {
                if (i > 0) add_column({{{i - 1, j}, i % p}});
                if (j > 0) add_column({{{i, j - 1}, (p - j % p) % p}});
            }
    }

    bool exact(const SparsePoly& h) const {
        std::vector<std::uint32_t> v(index_.size(), 0);
        for (const auto& [m, c] : h) {
            auto it = index_.find(m);
            if (it == index_.end()) {
                if (c % p_) return false;
                continue;
            }
            v[it->second] = c % p_;
        }
        reduce(v);
        for (auto c : v)
            if (c) return false;
        return true;
    }

private:
    std::size_t slot(const Monomial& m) {
        auto [it, inserted] = index_.emplace(m, index_.size());
        if (inserted)
            for (auto& row : basis_) row.second.push_back(0);
        return it->second;
    }

    void add_column(const SparsePoly& col) {
        std::vector<std::uint32_t> v(index_.size(), 0);
        for (const auto& [m, c] : col) {
            std::size_t k = slot(m);
            if (v.size() <= k) v.resize(k + 1, 0);
            v[k] = c % p_;
        }
        reduce(v);
        for (std::size_t k = 0; k < v.size(); ++k)
            if (v[k]) {
                const std::uint32_t inv = inverse(v[k]);
                for (auto& x : v) x = static_cast<std::uint32_t>(std::uint64_t{x} * inv % p_);
                basis_.emplace_back(k, std::move(v));
                return;
            }
    }

    void reduce(std::vector<std::uint32_t>& v) const {
        for (const auto& [k, row] : basis_) {
            if (k >= v.size() || !v[k]) continue;
            const std::uint64_t c = v[k];
            for (std::size_t l = 0; l < row.size() && l < v.size(); ++l)
                v[l] = static_cast<std::uint32_t>((v[l] + (p_ - c) * row[l]) % p_);
        }
    }

    std::uint32_t inverse(std::uint32_t a) const {
        for (std::uint32_t b = 1; b < p_; ++b)
            if (std::uint64_t{a} * b % p_ == 1) return b;
        return 0;
    }

    std::uint32_t p_;
    std::map<Monomial, std::size_t> index_;
    // Echelon rows keyed by pivot position; each has pivot entry 1.
    std::vector<std::pair<std::size_t, std::vector<std::uint32_t>>> basis_;
};

}  // namespace oracle
