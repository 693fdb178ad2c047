#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "p2bundle/errors.hpp"
#include "p2bundle/ideal.hpp"
#include "p2bundle/monomial.hpp"
#include "p2bundle/scheme.hpp"

namespace p2b {

struct ChernPair {
    int c1 = 0;
    int c2 = 0;

    friend bool operator==(const ChernPair&, const ChernPair&) = default;
};

// Chern classes of F(m): c1 + 2m and c1*m + c2 + m^2.
inline ChernPair twist_chern(ChernPair c, int m) {
    return {c.c1 + 2 * m, c.c1 * m + c.c2 + m * m};
}

// chi(F) = 2 + c1(c1+3)/2 - c2 for any rank-two bundle on the plane.
inline long long rr_chi_general(ChernPair c) {
    return 2 + static_cast<long long>(c.c1) * (c.c1 + 3) / 2 - c.c2;
}

inline void require_normalized_c1(int c1) {
    if (c1 != 0 && c1 != -1)
        throw InvalidC1("c1 must be -1 or 0 (normalized bundle), got " +
                        std::to_string(c1));
}

// chi(E(k)) = c1/2 (c1 + 2k + 3) + (k+1)(k+2) - c2 for normalized E.
inline long long rr_chi_p2(int c1, long long c2, int k) {
    require_normalized_c1(c1);
    const long long kk = k;
    return static_cast<long long>(c1) * (c1 + 2 * kk + 3) / 2 +
           (kk + 1) * (kk + 2) - c2;
}

// Euler characteristic of a normalized rank-two bundle on three-space;
// exact rational (half-integral when c1 = -1 and c2 is odd).
inline mpq_class rr_chi_p3(int c1, long long c2, int k) {
    require_normalized_c1(c1);
    const mpz_class kk(k);
    const mpz_class c2z(static_cast<long>(c2));
    mpq_class chi;
    if (c1 == 0) {
        chi = mpq_class((kk + 1) * (kk + 2) * (kk + 3), 3) -
              mpq_class(c2z * (kk + 2));
    } else {
        chi = mpq_class((kk + 1) * (kk + 2) * (2 * kk + 3), 6) -
              mpq_class(c2z * (2 * kk + 3), 2);
    }
    chi.canonicalize();
    return chi;
}

// Rank-two bundle presented by Serre-construction data: the zero scheme Z
// of a section of E(r), the normalized c1, and the minimal section twist r,
// via 0 -> O -> E(r) -> I_Z(2r + c1) -> 0. On the plane every cohomological
// quantity of E is determined by (Z, c1, r). The empty scheme encodes the
// split bundle O(-r) (+) O(r+c1).
template <field_context F>
class SerreBundle {
public:
    const ZeroDimScheme<F>& scheme() const { return z_; }
    int c1() const { return c1_; }
    int r() const { return r_; }
    int c2() const { return c2_; }
    bool stable() const { return r_ >= 1; }
    // regularity of Z, with the convention 0 for the empty scheme
    int scheme_regularity() const { return reg_; }

    template <field_context G>
    friend SerreBundle<G> make_bundle(ZeroDimScheme<G> z, int c1, int r);

private:
    SerreBundle(ZeroDimScheme<F> z, int c1, int r, int c2, int reg)
        : z_(std::move(z)), c1_(c1), r_(r), c2_(c2), reg_(reg) {}

    ZeroDimScheme<F> z_;
    int c1_, r_, c2_, reg_;
};

// Validates the data before wrapping it: c1 normalized, a locally free
// extension exists (Cayley-Bacharach in degree 2r+c1-3, vacuous for twists
// at most 2), and r really is the least twist with a section, which on this
// presentation is h0(I_Z(2r+c1-1)) = 0.
template <field_context F>
SerreBundle<F> make_bundle(ZeroDimScheme<F> z, int c1, int r) {
    require_normalized_c1(c1);
    const int twist = 2 * r + c1;
    if (z.degree() == 0 && r > 0)
        throw MinimalityViolation(
            "the empty scheme encodes a split bundle and requires r <= 0");
    if (twist > 2 && !cayley_bacharach(z, twist - 3))
        throw LocalFreenessViolation(
            "Cayley-Bacharach fails in degree " + std::to_string(twist - 3) +
            ": no locally free extension realizes this data");
    const long long extra = ideal_h0(z, twist - 1);
    if (extra != 0)
        throw MinimalityViolation(
            "h0(I_Z(2r+c1-1)) = " + std::to_string(extra) +
            ", so E(r-1) already has a section");

    const int c2 = static_cast<int>(z.degree()) - c1 * r - r * r;
    const int reg = z.degree() >= 1 ? regularity(z) : 0;
    return SerreBundle<F>(std::move(z), c1, r, c2, reg);
}

// h0(E(k)) = h0(O(k-r)) + h0(I_Z(k+r+c1)): the defining sequence twisted by
// k-r is exact on global sections because line bundles on the plane have no
// intermediate cohomology.
template <field_context F>
long long h0_bundle(const SerreBundle<F>& e, int k) {
    return h0_forms(k - e.r()) + ideal_h0(e.scheme(), k + e.r() + e.c1());
}

// h2 by Serre duality (E^* = E(-c1)), then h1 from Riemann-Roch.
template <field_context F>
long long h2_bundle(const SerreBundle<F>& e, int k) {
    return h0_bundle(e, -e.c1() - k - 3);
}

template <field_context F>
long long h1_bundle(const SerreBundle<F>& e, int k) {
    const long long h1 =
        h0_bundle(e, k) + h2_bundle(e, k) - rr_chi_p2(e.c1(), e.c2(), k);
    if (h1 < 0)
        throw OracleMismatch("negative h1 at twist " + std::to_string(k));
    return h1;
}

struct CohomologyTable {
    ChernPair chern;
    int k_min = 0, k_max = 0;

    struct Row {
        long long h0 = 0, h1 = 0, h2 = 0, chi = 0;
    };
    std::vector<Row> rows;  // index k - k_min

    bool contains(int k) const { return k >= k_min && k <= k_max; }
    const Row& row(int k) const {
        if (!contains(k)) throw Error("twist outside the table window");
        return rows[static_cast<std::size_t>(k - k_min)];
    }
};

// Full cohomology table over a window that provably contains the support of
// h1: the right end clears both the section bound r and the vanishing bound
// from the regularity of Z, and the left end is its dual mirror. The
// boundary rows must come out zero, turning the bound into a per-instance
// test; a user-supplied window failing that is rejected.
template <field_context F>
CohomologyTable cohomology_table(
    const SerreBundle<F>& e,
    std::optional<std::pair<int, int>> window = std::nullopt) {
    int lo, hi;
    if (window) {
        lo = window->first;
        hi = window->second;
        if (lo > hi) throw WindowTooSmall("empty twist range");
    } else {
        const int bound =
            std::max(e.r() - 2, e.scheme_regularity() - 1 - e.r() - e.c1()) + 1;
        hi = bound;
        lo = -e.c1() - 3 - bound;
    }

    CohomologyTable t;
    t.chern = {e.c1(), e.c2()};
    t.k_min = lo;
    t.k_max = hi;
    t.rows.reserve(static_cast<std::size_t>(hi - lo + 1));
    for (int k = lo; k <= hi; ++k) {
        CohomologyTable::Row row;
        row.h0 = h0_bundle(e, k);
        row.h2 = h2_bundle(e, k);
        row.chi = rr_chi_p2(e.c1(), e.c2(), k);
        row.h1 = row.h0 + row.h2 - row.chi;
        if (row.h1 < 0)
            throw OracleMismatch("negative h1 at twist " + std::to_string(k));
        t.rows.push_back(row);
    }
    if (t.rows.front().h1 != 0 || t.rows.back().h1 != 0)
        throw WindowTooSmall("window clips nonzero h1 at its boundary");
    return t;
}

// Least k with h0(E(k)) > 0; for valid data this reproduces r.
template <field_context F>
int minimal_section_twist(const SerreBundle<F>& e) {
    int k = std::min(e.r(), -e.r() - e.c1()) - 1;
    while (h0_bundle(e, k) == 0) ++k;
    return k;
}

// Splitting test: h1(E(-1)) = 0, cross-checked against the independent
// criterion deg Z = 0 (a nowhere-vanishing section splits the bundle).
template <field_context F>
bool splits(const SerreBundle<F>& e) {
    const bool by_h1 = h1_bundle(e, -1) == 0;
    const bool by_scheme = e.scheme().degree() == 0;
    if (by_h1 != by_scheme)
        throw OracleMismatch(
            "splitting criteria disagree: h1(E(-1)) vs deg Z");
    return by_h1;
}

// Twists of the line-bundle summands in a free resolution or presentation
// of the bundle, ascending with multiplicity.
struct BundleResolution {
    std::vector<int> middle;
    std::vector<int> back;

    friend bool operator==(const BundleResolution&, const BundleResolution&) = default;
};

// Minimal free resolution of the section module,
// 0 -> L1(r+c1) -> O(-r) (+) L0(r+c1) -> E -> 0, obtained by lifting the
// resolution of I_Z through the defining sequence. The split case has
// middle O(-r) (+) O(r+c1) and empty back.
template <field_context F>
BundleResolution bundle_resolution(const SerreBundle<F>& e) {
    BundleResolution res;
    if (e.scheme().degree() == 0) {
        res.middle = {-e.r(), e.r() + e.c1()};
        std::sort(res.middle.begin(), res.middle.end());
        return res;
    }
    const GradedBetti gb = graded_betti(e.scheme());
    res.middle.push_back(-e.r());
    for (int g : gb.generators) res.middle.push_back(e.r() + e.c1() - g);
    for (int s : gb.syzygies) res.back.push_back(e.r() + e.c1() - s);
    std::sort(res.middle.begin(), res.middle.end());
    std::sort(res.back.begin(), res.back.end());
    return res;
}

// Dual presentation 0 -> E -> O(r+c1) (+) L0^*(-r) -> L1^*(-r) -> 0,
// using E^* = E(-c1).
template <field_context F>
BundleResolution dual_presentation(const SerreBundle<F>& e) {
    BundleResolution res;
    if (e.scheme().degree() == 0) {
        res.middle = {e.r() + e.c1(), -e.r()};
        std::sort(res.middle.begin(), res.middle.end());
        return res;
    }
    const GradedBetti gb = graded_betti(e.scheme());
    res.middle.push_back(e.r() + e.c1());
    for (int g : gb.generators) res.middle.push_back(g - e.r());
    for (int s : gb.syzygies) res.back.push_back(s - e.r());
    std::sort(res.middle.begin(), res.middle.end());
    std::sort(res.back.begin(), res.back.end());
    return res;
}

// The h1 module of all twists: its support (an interval, or the bundle
// data is falsified), the dimensions on the support, and the presentation
// rank identity "relations = generators + 2" inherited from the dual
// presentation.
struct H1Module {
    bool has_support = false;
    int support_min = 0, support_max = 0;
    std::vector<long long> dims;
    bool gens_plus_two = false;
};

template <field_context F>
H1Module h1_module(const SerreBundle<F>& e) {
    const auto t = cohomology_table(e);
    H1Module mod;

    int first = t.k_max + 1, last = t.k_min - 1;
    for (int k = t.k_min; k <= t.k_max; ++k) {
        if (t.row(k).h1 > 0) {
            first = std::min(first, k);
            last = std::max(last, k);
        }
    }
    if (first <= last) {
        mod.has_support = true;
        mod.support_min = first;
        mod.support_max = last;
        for (int k = first; k <= last; ++k) {
            if (t.row(k).h1 == 0)
                throw ConnectednessViolation(
                    "h1 support has a gap at twist " + std::to_string(k));
            mod.dims.push_back(t.row(k).h1);
        }
    }

    const auto res = bundle_resolution(e);
    mod.gens_plus_two = res.middle.size() == res.back.size() + 2;
    return mod;
}

}  // namespace p2b
