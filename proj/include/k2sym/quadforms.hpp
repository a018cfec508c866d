#pragma once

#include <cmath>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "k2sym/k2q.hpp"

namespace k2sym {

using Matrix = std::vector<std::vector<Rational>>;
using DiagForm = std::vector<Rational>;

inline Matrix identity_matrix(std::size_t n) {
    Matrix m(n, std::vector<Rational>(n, Rational(0)));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

inline Matrix multiply(const Matrix& a, const Matrix& b) {
    const std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
    Matrix r(n, std::vector<Rational>(m, Rational(0)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < k; ++l)
            if (a[i][l] != 0)
                for (std::size_t j = 0; j < m; ++j) r[i][j] += a[i][l] * b[l][j];
    return r;
}

inline Matrix transpose(const Matrix& a) {
    if (a.empty()) return a;
    Matrix r(a[0].size(), std::vector<Rational>(a.size()));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a[i].size(); ++j) r[j][i] = a[i][j];
    return r;
}

struct Diagonalization {
    DiagForm form;
    /// Columns are the new basis: U^T G U = diag(form).
    Matrix basis;
};

/// Congruence diagonalization by symmetric elimination, e_j <- e_j - (G_ij/G_ii) e_i.
/// A zero pivot is repaired by swapping in a later vector with nonzero norm,
/// or else by e_i <- e_i + e_j for some j with G_ij != 0. Each final basis
/// vector is scaled by the denominator of its norm, so entries come out as
/// integers in the same square class.
inline Diagonalization diagonalize(const Matrix& g) {
    const std::size_t n = g.size();
    for (const auto& row : g) require(row.size() == n, "diagonalize: matrix is not square");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j) require(g[i][j] == g[j][i], "diagonalize: matrix is not symmetric");

    Matrix a = g, u = identity_matrix(n);
    // e_j <- s e_j + t e_i, applied to the Gram matrix and the basis.
    auto combine = [&](std::size_t j, std::size_t i, const Rational& s, const Rational& t) {
        for (std::size_t k = 0; k < n; ++k) a[k][j] = s * a[k][j] + t * a[k][i];
        for (std::size_t k = 0; k < n; ++k) a[j][k] = s * a[j][k] + t * a[i][k];
        for (std::size_t k = 0; k < n; ++k) u[k][j] = s * u[k][j] + t * u[k][i];
    };
    auto swap_basis = [&](std::size_t i, std::size_t j) {
        std::swap(a[i], a[j]);
        for (auto& row : a) std::swap(row[i], row[j]);
        for (auto& row : u) std::swap(row[i], row[j]);
    };

    for (std::size_t i = 0; i < n; ++i) {
        if (a[i][i] == 0) {
            std::size_t j = i + 1;
            while (j < n && a[j][j] == 0) ++j;
            if (j < n) {
                swap_basis(i, j);
            } else {
                j = i + 1;
                while (j < n && a[i][j] == 0) ++j;
                require(j < n, "diagonalize: matrix is singular");
                combine(i, j, 1, 1);
            }
        }
        const Rational pivot = a[i][i];
        for (std::size_t j = i + 1; j < n; ++j)
            if (a[i][j] != 0) combine(j, i, 1, -a[i][j] / pivot);
    }
    Diagonalization d;
    for (std::size_t i = 0; i < n; ++i) {
        require(a[i][i] != 0, "diagonalize: matrix is singular");
        const Integer den = denominator(a[i][i]);
        for (std::size_t k = 0; k < n; ++k) u[k][i] *= den;
        d.form.push_back(numerator(a[i][i]) * den);
    }
    d.basis = std::move(u);
    verify(multiply(multiply(transpose(d.basis), g), d.basis) == [&] {
        Matrix m(n, std::vector<Rational>(n, Rational(0)));
        for (std::size_t i = 0; i < n; ++i) m[i][i] = d.form[i];
        return m;
    }(), "diagonalize: congruence check failed");
    return d;
}

inline void require_regular(const DiagForm& f, const char* who) {
    for (const auto& a : f) require(a != 0, std::string(who) + ": diagonal entries must be nonzero");
}

/// Hasse invariant at v: prod_{i<j} (a_i, a_j)_v.
inline Sign hasse_at(const DiagForm& f, const PlaceQ& v) {
    require_regular(f, "hasse_at");
    Sign s;
    for (std::size_t i = 0; i < f.size(); ++i)
        for (std::size_t j = i + 1; j < f.size(); ++j) s *= hilbert(f[i], f[j], v);
    return s;
}

struct FormInvariants {
    std::size_t rank = 0;
    /// Squarefree integer representative of prod a_i.
    Integer disc;
    std::size_t positives = 0, negatives = 0;
    /// Values on Real, 2, and primes dividing some entry; +1 elsewhere.
    std::map<PlaceQ, Sign> hasse;

    Sign hasse_at_place(const PlaceQ& v) const {
        auto it = hasse.find(v);
        return it == hasse.end() ? Sign::plus() : it->second;
    }
};

inline FormInvariants invariants(const DiagForm& f) {
    require_regular(f, "invariants");
    FormInvariants inv;
    inv.rank = f.size();
    Rational prod = 1;
    for (const auto& a : f) {
        prod *= a;
        (a > 0 ? inv.positives : inv.negatives)++;
    }
    inv.disc = squarefree_part(prod);
    for (const auto& v : support_places(f)) inv.hasse[v] = hasse_at(f, v);
    Sign total;
    for (const auto& [v, s] : inv.hasse) total *= s;
    verify(total.is_plus(), "invariants: Hasse invariants violate the product formula");
    return inv;
}

/// Hasse-Minkowski: rank, discriminant, signature and all Hasse invariants agree.
inline bool equivalent_over_Q(const DiagForm& f1, const DiagForm& f2) {
    auto a = invariants(f1), b = invariants(f2);
    if (a.rank != b.rank || a.disc != b.disc || a.positives != b.positives || a.negatives != b.negatives) return false;
    std::set<PlaceQ> places;
    for (const auto& [v, s] : a.hasse) places.insert(v);
    for (const auto& [v, s] : b.hasse) places.insert(v);
    for (const auto& v : places)
        if (a.hasse_at_place(v) != b.hasse_at_place(v)) return false;
    return true;
}

using RationalPoint = std::pair<Rational, Rational>;

/// max(|num|, den) over both coordinates.
inline Integer height(const RationalPoint& pt) {
    Integer h = 0;
    for (const Rational* c : {&pt.first, &pt.second}) h = std::max({h, abs(numerator(*c)), denominator(*c)});
    return h;
}

namespace detail {

using u128 = unsigned __int128;

inline u128 isqrt128(u128 n) {
    u128 r = static_cast<u128>(std::sqrt(static_cast<long double>(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

inline bool is_square128(u128 n, u128& root) {
    // Quadratic residues mod 64 and mod 63 * 65 * 11 rule out most candidates
    // before the root is taken.
    static constexpr std::uint64_t kSq64 = 0x0202021202030213ULL;
    if (!((kSq64 >> static_cast<unsigned>(n & 63)) & 1)) return false;
    static const std::vector<bool> kSqOdd = [] {
        constexpr unsigned m = 63 * 65 * 11;
        std::vector<bool> sq(m, false), s63(63), s65(65), s11(11);
        for (unsigned a = 0; a < 65; ++a) s63[a * a % 63] = s65[a * a % 65] = s11[a * a % 11] = true;
        for (unsigned r = 0; r < m; ++r) sq[r] = s63[r % 63] && s65[r % 65] && s11[r % 11];
        return sq;
    }();
    if (!kSqOdd[static_cast<unsigned>(n % (63 * 65 * 11))]) return false;
    root = isqrt128(n);
    return root * root == n;
}

inline Integer to_integer(u128 v) {
    Integer r = static_cast<std::uint64_t>(v >> 64);
    r <<= 64;
    r += static_cast<std::uint64_t>(v);
    return r;
}

}  // namespace detail

/// First point on xR^2 + yS^2 = 1 of height <= bound, scanning R = a/c with
/// a, c >= 0 by increasing max(a, c). Absence is a valid result.
inline std::optional<RationalPoint> conic_point_search(const Rational& x, const Rational& y, std::int64_t bound) {
    detail::require_nonzero(x, y, "conic_point_search");
    require(bound >= 1, "conic_point_search: height bound must be positive");
    // S^2 = (c^2 xd - xn a^2) yd / (xd yn c^2). Everything fits in 128 bits
    // while 2 H^4 M^4 < 2^126, M bounding the input numerators and denominators.
    const Integer M = std::max({abs(numerator(x)), denominator(x), abs(numerator(y)), denominator(y)});
    require(Integer(2) * boost::multiprecision::pow(Integer(bound) * M, 4) < (Integer(1) << 126),
            "conic_point_search: inputs too large for the height bound");
    const std::int64_t xn = to_int64(numerator(x)), xd = to_int64(denominator(x));
    const std::int64_t yn = to_int64(numerator(y)), yd = to_int64(denominator(y));
    using i128 = __int128;

    auto try_point = [&](std::int64_t a, std::int64_t c) -> std::optional<RationalPoint> {
        i128 num = (i128(c) * c * xd - i128(xn) * a * a) * yd;
        i128 den = i128(xd) * yn * c * c;
        if (num == 0) {
            if (std::gcd(a, c) != 1) return std::nullopt;
            return RationalPoint{Rational(a, c), Rational(0)};
        }
        if ((num < 0) != (den < 0)) return std::nullopt;
        if (num < 0) num = -num, den = -den;
        detail::u128 root;
        if (!detail::is_square128(detail::u128(num) * detail::u128(den), root)) return std::nullopt;
        if (std::gcd(a, c) != 1) return std::nullopt;
        Rational s(detail::to_integer(root), detail::to_integer(detail::u128(den)));
        RationalPoint pt{Rational(a, c), s};
        if (height(pt) > bound) return std::nullopt;
        return pt;
    };
    for (std::int64_t h = 1; h <= bound; ++h) {
        for (std::int64_t c = 1; c <= h; ++c)
            if (auto pt = try_point(h, c)) return pt;
        for (std::int64_t a = 0; a < h; ++a)
            if (auto pt = try_point(a, h)) return pt;
    }
    return std::nullopt;
}

struct ConicCertificate {
    bool solvable;
    /// Hilbert symbol at every place of the support set.
    std::vector<PlaceSign> places;
    std::vector<PlaceQ> obstructions;
    /// A rational point of small height, when one was found.
    std::optional<RationalPoint> point;
};

inline constexpr std::int64_t kCertificatePointHeight = 200;

/// xR^2 + yS^2 = 1 over Q, decided place by place. The number of failing
/// places is even by reciprocity, so it is never exactly one.
inline ConicCertificate conic_solvable_Q(const Rational& x, const Rational& y) {
    detail::require_nonzero(x, y, "conic_solvable_Q");
    ConicCertificate c{true, {}, {}, std::nullopt};
    for (const auto& v : support_places({x, y})) {
        Sign s = hilbert(x, y, v);
        c.places.push_back({v, s});
        if (s.is_minus()) c.obstructions.push_back(v);
    }
    verify(c.obstructions.size() != 1, "conic_solvable_Q: exactly one failing place");
    c.solvable = c.obstructions.empty();
    if (c.solvable) {
        Integer bound_check = std::max({abs(numerator(x)), denominator(x), abs(numerator(y)), denominator(y)});
        if (bound_check < 1000000) c.point = conic_point_search(x, y, kCertificatePointHeight);
        if (c.point) verify(x * c.point->first * c.point->first + y * c.point->second * c.point->second == 1,
                            "conic_solvable_Q: certificate point is not on the conic");
    }
    return c;
}

/// The quaternion algebra (a, b) splits at v iff the Hilbert symbol is +1.
inline bool quaternion_splits(const Rational& a, const Rational& b, const PlaceQ& v) {
    return hilbert(a, b, v).is_plus();
}

/// Places where (a, b) ramifies; always an even number of them.
inline std::vector<PlaceQ> quaternion_ramification(const Rational& a, const Rational& b) {
    detail::require_nonzero(a, b, "quaternion_ramification");
    std::vector<PlaceQ> out;
    for (const auto& v : support_places({a, b}))
        if (!quaternion_splits(a, b, v)) out.push_back(v);
    return out;
}

/// (a, b) is a matrix algebra over Q.
inline bool quaternion_splits(const Rational& a, const Rational& b) { return quaternion_ramification(a, b).empty(); }

struct PfisterCheck {
    Sign lhs;  // hasse_v(<1, -x, -y, xy>) * (-1, -1)_v
    Sign rhs;  // (x, y)_v
    bool holds() const { return lhs == rhs; }
};

inline PfisterCheck pfister_hasse_identity(const Rational& x, const Rational& y, const PlaceQ& v) {
    detail::require_nonzero(x, y, "pfister_hasse_identity");
    DiagForm pf{Rational(1), -x, -y, x * y};
    return {hasse_at(pf, v) * hilbert(-1, -1, v), hilbert(x, y, v)};
}

}  // namespace k2sym
