#pragma once

#include <algorithm>
#include <compare>
#include <map>
#include <string>
#include <vector>

#include "p2bundle/errors.hpp"
#include "p2bundle/matrix.hpp"
#include "p2bundle/monomial.hpp"
#include "p2bundle/scheme.hpp"

namespace p2b {

struct IdealCohomology {
    long long h0 = 0, h1 = 0, h2 = 0;
};

// h^0(I_Z(d)): forms of degree d vanishing on Z. The empty scheme gives the
// full space of forms.
template <field_context F>
long long ideal_h0(const ZeroDimScheme<F>& z, int d) {
    if (d < 0) return 0;
    return monomial_count(d) -
           static_cast<long long>(rank(evaluation_matrix(z, d)));
}

// Cohomology of I_Z(d) from the restriction sequence
// 0 -> I_Z(d) -> O(d) -> O_Z -> 0: h1 counts the failing conditions,
// h2 agrees with h2(O(d)) because Z is zero-dimensional.
template <field_context F>
IdealCohomology ideal_cohomology(const ZeroDimScheme<F>& z, int d) {
    const long long u = z.degree();
    if (d < 0) return {0, u, h2_forms(d)};
    const long long r = static_cast<long long>(rank(evaluation_matrix(z, d)));
    return {monomial_count(d) - r, u - r, h2_forms(d)};
}

// Castelnuovo-Mumford regularity: least m >= 1 with h1(I_Z(m-1)) = 0.
// Always at most deg Z; exceeding that bound is a bug alarm.
template <field_context F>
int regularity(const ZeroDimScheme<F>& z) {
    const long long u = z.degree();
    if (u < 1) throw IdealError("regularity of the empty scheme is undefined");
    for (int m = 1; m <= static_cast<int>(u); ++m)
        if (ideal_cohomology(z, m - 1).h1 == 0) return m;
    throw IdealError("regularity exceeds the degree of the scheme");
}

// h^0(I_Z(d)) for d = 0 .. reg+2, the window that pins the Betti numbers.
template <field_context F>
std::vector<long long> ideal_hilbert_values(const ZeroDimScheme<F>& z) {
    const int reg = regularity(z);
    std::vector<long long> values;
    for (int d = 0; d <= reg + 2; ++d) values.push_back(ideal_h0(z, d));
    return values;
}

// Degrees and multiplicities of the minimal generators of I_Z: in degree d
// the new generators are the part of I_Z(d) not spanned by the linear-form
// multiples of I_Z(d-1). Counts are computed through reg+2 and must vanish
// at reg+1 and reg+2; that converts the regularity cutoff into a tested
// fact per instance.
template <field_context F>
std::map<int, long long> minimal_generator_counts(const ZeroDimScheme<F>& z) {
    if (z.degree() < 1)
        throw IdealError("generator counts need a non-empty scheme");
    const F& f = z.field();
    const int reg = regularity(z);

    std::map<int, long long> counts;
    for (int d = 1; d <= reg + 2; ++d) {
        const long long dim_d = ideal_h0(z, d);
        const auto prev = kernel_basis(evaluation_matrix(z, d - 1));
        const auto lower = monomial_basis(d - 1);

        long long spanned = 0;
        if (!prev.empty()) {
            DenseMatrix<F> mult(f, 3 * prev.size(),
                                static_cast<std::size_t>(monomial_count(d)));
            for (std::size_t i = 0; i < prev.size(); ++i)
                for (std::size_t j = 0; j < lower.size(); ++j) {
                    if (f.is_zero(prev[i][j])) continue;
                    const Monomial m = lower[j];
                    mult(3 * i + 0, monomial_index(d, {m.a + 1, m.b, m.c})) =
                        prev[i][j];
                    mult(3 * i + 1, monomial_index(d, {m.a, m.b + 1, m.c})) =
                        prev[i][j];
                    mult(3 * i + 2, monomial_index(d, {m.a, m.b, m.c + 1})) =
                        prev[i][j];
                }
            spanned = static_cast<long long>(rank(mult));
        }

        const long long fresh = dim_d - spanned;
        if (fresh < 0)
            throw IdealError("generator count went negative; rank bookkeeping bug");
        if (fresh > 0) {
            if (d > reg)
                throw IdealError(
                    "minimal generator beyond the regularity bound at degree " +
                    std::to_string(d));
            counts[d] = fresh;
        }
    }
    return counts;
}

// Twist multisets of the length-one minimal free resolution
// 0 -> (+) O(-s_j) -> (+) O(-g_i) -> I_Z -> 0, recorded as positive degrees.
struct GradedBetti {
    std::vector<int> generators;  // ascending, with multiplicity
    std::vector<int> syzygies;

    friend bool operator==(const GradedBetti&, const GradedBetti&) = default;
};

// The resolution has length one, so once the generators are known the
// syzygy degrees are forced by the Hilbert function:
// dim I_Z(d) = sum_g h0(d-g) - sum_s h0(d-s), solved degree by degree.
template <field_context F>
GradedBetti graded_betti(const ZeroDimScheme<F>& z) {
    const auto counts = minimal_generator_counts(z);
    const int reg = regularity(z);

    GradedBetti gb;
    for (const auto& [deg, n] : counts)
        gb.generators.insert(gb.generators.end(), static_cast<std::size_t>(n), deg);

    for (int d = 1; d <= reg + 2; ++d) {
        long long expect = 0;
        for (int g : gb.generators) expect += h0_forms(d - g);
        for (int s : gb.syzygies) expect -= h0_forms(d - s);
        const long long defect = expect - ideal_h0(z, d);
        if (defect < 0)
            throw IdealError(
                "Hilbert function inconsistent with a length-one resolution");
        gb.syzygies.insert(gb.syzygies.end(), static_cast<std::size_t>(defect), d);
    }

    if (gb.generators.size() != gb.syzygies.size() + 1)
        throw IdealError("resolution rank condition |gens| = |syz| + 1 failed");
    for (int s : gb.syzygies)
        if (s <= gb.generators.front())
            throw IdealError("syzygy degree not above the least generator degree");
    return gb;
}

// The ten minimal free resolutions a subscheme of degree <= 5 can have:
// complete intersections on a line and the five off-line cases.
struct ResolutionClass {
    enum class Kind { CiLine, B1, B2, B3, B4, B5 };

    Kind kind = Kind::CiLine;
    int u = 1;  // degree; meaningful for CiLine

    static ResolutionClass ci_line(int u) { return {Kind::CiLine, u}; }
    static ResolutionClass b(int i) {
        return {static_cast<Kind>(static_cast<int>(Kind::B1) + i - 1), 0};
    }

    std::string label() const {
        switch (kind) {
            case Kind::CiLine: return "CI_LINE(" + std::to_string(u) + ")";
            case Kind::B1: return "B1";
            case Kind::B2: return "B2";
            case Kind::B3: return "B3";
            case Kind::B4: return "B4";
            case Kind::B5: return "B5";
        }
        return "?";
    }

    friend auto operator<=>(const ResolutionClass&, const ResolutionClass&) = default;
};

// Expected Betti tables of the ten cases.
inline GradedBetti resolution_template(const ResolutionClass& c) {
    switch (c.kind) {
        case ResolutionClass::Kind::CiLine: {
            GradedBetti gb{{1, c.u}, {c.u + 1}};
            std::sort(gb.generators.begin(), gb.generators.end());
            return gb;
        }
        case ResolutionClass::Kind::B1: return {{2, 2, 2}, {3, 3}};
        case ResolutionClass::Kind::B2: return {{2, 2, 3}, {3, 4}};
        case ResolutionClass::Kind::B3: return {{2, 2}, {4}};
        case ResolutionClass::Kind::B4: return {{2, 2, 4}, {3, 5}};
        case ResolutionClass::Kind::B5: return {{2, 3, 3}, {4, 4}};
    }
    throw IdealError("unknown resolution class");
}

// Matches the computed Betti table against the ten templates and verifies
// the side conditions of the matched case by rank probes. Failure to match
// would falsify the classification on this instance, so it throws.
template <field_context F>
ResolutionClass classify_resolution(const ZeroDimScheme<F>& z) {
    const long long u = z.degree();
    if (u < 1 || u > 5)
        throw PreconditionViolation(
            "classification covers degrees 1 through 5, got degree " +
            std::to_string(u));

    const GradedBetti gb = graded_betti(z);
    const long long maxcol = max_collinear_sublength(z);
    const long long h0_lines = ideal_h0(z, 1);
    const long long h0_conics = ideal_h0(z, 2);

    auto fail = [&](const std::string& why) -> ResolutionClass {
        throw ClassificationError("degree-" + std::to_string(u) +
                                  " scheme escapes the ten cases: " + why);
    };

    const auto iu = static_cast<int>(u);
    if (gb == resolution_template(ResolutionClass::ci_line(iu))) {
        if (maxcol != u) return fail("CI(1,u) Betti table but Z is not on a line");
        return ResolutionClass::ci_line(iu);
    }
    if (u == 3 && gb == resolution_template(ResolutionClass::b(1))) {
        if (h0_lines != 0) return fail("B1 Betti table but Z lies on a line");
        return ResolutionClass::b(1);
    }
    if (u == 4 && gb == resolution_template(ResolutionClass::b(2))) {
        if (h0_lines != 0 || maxcol != 3)
            return fail("B2 side conditions (no line, length-3 on a line) fail");
        return ResolutionClass::b(2);
    }
    if (u == 4 && gb == resolution_template(ResolutionClass::b(3))) {
        if (h0_lines != 0 || maxcol > 2 || h0_conics != 2)
            return fail("B3 side conditions (complete intersection (2,2)) fail");
        return ResolutionClass::b(3);
    }
    if (u == 5 && gb == resolution_template(ResolutionClass::b(4))) {
        if (h0_lines != 0 || maxcol != 4)
            return fail("B4 side conditions (no line, length-4 on a line) fail");
        return ResolutionClass::b(4);
    }
    if (u == 5 && gb == resolution_template(ResolutionClass::b(5))) {
        if (h0_conics != 1) return fail("B5 side condition h0(I_Z(2)) = 1 fails");
        return ResolutionClass::b(5);
    }
    return fail("no resolution template matches");
}

// Cayley-Bacharach for degree ell: every colength-one subscheme imposes the
// same number of conditions on degree-ell forms as Z itself. Vacuous for
// ell < 0. Governs local freeness of the Serre extension.
template <field_context F>
bool cayley_bacharach(const ZeroDimScheme<F>& z, int ell) {
    if (ell < 0) return true;
    const std::size_t conditions = rank(evaluation_matrix(z, ell));
    for (const auto& sub : colength_one_subschemes(z))
        if (rank(evaluation_matrix(sub, ell)) != conditions) return false;
    return true;
}

}  // namespace p2b
