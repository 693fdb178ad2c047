#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "p2bundle/errors.hpp"
#include "p2bundle/field.hpp"
#include "p2bundle/matrix.hpp"
#include "p2bundle/monomial.hpp"
#include "p2bundle/rng.hpp"

namespace p2b {

// A point of the plane, normalized so the last nonzero coordinate is 1.
// Canonical representatives make duplicate detection exact.
template <field_context F>
struct ProjPoint {
    std::array<typename F::Elem, 3> coords;
};

template <field_context F>
ProjPoint<F> make_point(const F& f, std::array<typename F::Elem, 3> c) {
    int last = -1;
    for (int i = 0; i < 3; ++i)
        if (!f.is_zero(c[i])) last = i;
    if (last < 0) throw SchemeError("projective point with all coordinates zero");
    const auto inv = f.div(f.one(), c[last]);
    for (auto& x : c) x = f.mul(x, inv);
    c[static_cast<std::size_t>(last)] = f.one();
    return {c};
}

template <field_context F>
bool same_point(const F& f, const ProjPoint<F>& p, const ProjPoint<F>& q) {
    for (int i = 0; i < 3; ++i)
        if (!f.eq(p.coords[i], q.coords[i])) return false;
    return true;
}

template <field_context F>
std::array<typename F::Elem, 3> cross3(const F& f,
                                       const std::array<typename F::Elem, 3>& p,
                                       const std::array<typename F::Elem, 3>& q) {
    return {f.sub(f.mul(p[1], q[2]), f.mul(p[2], q[1])),
            f.sub(f.mul(p[2], q[0]), f.mul(p[0], q[2])),
            f.sub(f.mul(p[0], q[1]), f.mul(p[1], q[0]))};
}

template <field_context F>
typename F::Elem dot3(const F& f, const std::array<typename F::Elem, 3>& p,
                      const std::array<typename F::Elem, 3>& q) {
    auto s = f.mul(p[0], q[0]);
    s = f.add(s, f.mul(p[1], q[1]));
    return f.add(s, f.mul(p[2], q[2]));
}

template <field_context F>
bool triple_is_zero(const F& f, const std::array<typename F::Elem, 3>& t) {
    return f.is_zero(t[0]) && f.is_zero(t[1]) && f.is_zero(t[2]);
}

// Curvilinear arc: the length-l jet of t -> base + t*dir + t^2*second,
// truncated after l Taylor conditions. dir must not be proportional to the
// base point (the germ is immersed), so the arc has length exactly l.
template <field_context F>
struct Arc {
    ProjPoint<F> base;
    std::array<typename F::Elem, 3> dir;
    std::array<typename F::Elem, 3> second;
    int length = 2;
};

// Zero-dimensional l.c.i. subscheme: reduced points plus curvilinear arcs
// with pairwise distinct supports. Components are indexed points first,
// then arcs.
template <field_context F>
class ZeroDimScheme {
public:
    ZeroDimScheme(F field, std::vector<ProjPoint<F>> points,
                  std::vector<Arc<F>> arcs)
        : field_(std::move(field)),
          points_(std::move(points)),
          arcs_(std::move(arcs)) {
        for (const auto& a : arcs_) {
            if (a.length < 2 || a.length > 5)
                throw SchemeError("arc length must be between 2 and 5");
            if (triple_is_zero(field_, cross3(field_, a.base.coords, a.dir)))
                throw SchemeError("arc direction is proportional to its base point");
        }
        std::vector<const ProjPoint<F>*> support;
        for (const auto& p : points_) support.push_back(&p);
        for (const auto& a : arcs_) support.push_back(&a.base);
        for (std::size_t i = 0; i < support.size(); ++i)
            for (std::size_t j = i + 1; j < support.size(); ++j)
                if (same_point(field_, *support[i], *support[j]))
                    throw SchemeError("scheme components share a base point");
    }

    static ZeroDimScheme empty(F field) {
        return ZeroDimScheme(std::move(field), {}, {});
    }

    const F& field() const { return field_; }
    const std::vector<ProjPoint<F>>& points() const { return points_; }
    const std::vector<Arc<F>>& arcs() const { return arcs_; }

    long long degree() const {
        long long d = static_cast<long long>(points_.size());
        for (const auto& a : arcs_) d += a.length;
        return d;
    }

    std::size_t component_count() const { return points_.size() + arcs_.size(); }

private:
    F field_;
    std::vector<ProjPoint<F>> points_;
    std::vector<Arc<F>> arcs_;
};

namespace detail {

// Truncated power series in t, coefficients s[0] + s[1] t + ...
template <field_context F>
using Series = std::vector<typename F::Elem>;

template <field_context F>
Series<F> mul_trunc(const F& f, const Series<F>& a, const Series<F>& b,
                    std::size_t len) {
    Series<F> out(len, f.zero());
    for (std::size_t i = 0; i < a.size() && i < len; ++i) {
        if (f.is_zero(a[i])) continue;
        for (std::size_t j = 0; j < b.size() && i + j < len; ++j)
            out[i + j] = f.add(out[i + j], f.mul(a[i], b[j]));
    }
    return out;
}

template <field_context F>
Series<F> pow_trunc(const F& f, const Series<F>& a, int e, std::size_t len) {
    Series<F> out(len, f.zero());
    out[0] = f.one();
    for (int i = 0; i < e; ++i) out = mul_trunc(f, out, a, len);
    return out;
}

// Multiplicative inverse of a unit series (a[0] != 0).
template <field_context F>
Series<F> inverse_trunc(const F& f, const Series<F>& a, std::size_t len) {
    Series<F> out(len, f.zero());
    const auto inv0 = f.div(f.one(), a[0]);
    out[0] = inv0;
    for (std::size_t k = 1; k < len; ++k) {
        auto acc = f.zero();
        for (std::size_t j = 1; j <= k && j < a.size(); ++j)
            acc = f.add(acc, f.mul(a[j], out[k - j]));
        out[k] = f.neg(f.mul(acc, inv0));
    }
    return out;
}

template <field_context F>
int chart_index(const F& f, const ProjPoint<F>& p) {
    for (int i = 2; i >= 0; --i)
        if (!f.is_zero(p.coords[i])) return i;
    return -1;
}

}  // namespace detail

// Matrix of the restriction map from degree-d forms to functions on Z:
// one row per reduced point (monomial evaluations) and, per arc of length
// l, the l Taylor coefficients t^0..t^{l-1} of f(base + t dir + t^2 second)
// dehomogenized in the chart where the base's unit coordinate lives.
template <field_context F>
DenseMatrix<F> evaluation_matrix(const ZeroDimScheme<F>& z, int d) {
    const F& f = z.field();
    const auto basis = monomial_basis(d);
    DenseMatrix<F> m(f, static_cast<std::size_t>(z.degree()), basis.size());

    std::size_t row = 0;
    for (const auto& p : z.points()) {
        std::array<std::vector<typename F::Elem>, 3> pw;
        for (int v = 0; v < 3; ++v) {
            pw[v].resize(static_cast<std::size_t>(d) + 1);
            pw[v][0] = f.one();
            for (int e = 1; e <= d; ++e)
                pw[v][e] = f.mul(pw[v][e - 1], p.coords[v]);
        }
        for (std::size_t j = 0; j < basis.size(); ++j)
            m(row, j) = f.mul(pw[0][basis[j].a],
                              f.mul(pw[1][basis[j].b], pw[2][basis[j].c]));
        ++row;
    }

    for (const auto& arc : z.arcs()) {
        const auto len = static_cast<std::size_t>(arc.length);
        std::array<detail::Series<F>, 3> jet;
        for (int v = 0; v < 3; ++v)
            jet[v] = {arc.base.coords[v], arc.dir[v], arc.second[v]};

        const int chart = detail::chart_index(f, arc.base);
        const auto& denom = jet[chart];
        if (f.is_zero(denom[0]))
            throw SchemeError("arc chart coordinate vanishes along the jet");
        const auto chart_inv =
            detail::pow_trunc(f, detail::inverse_trunc(f, denom, len), d, len);

        // powers of each jet coordinate up to degree d
        std::array<std::vector<detail::Series<F>>, 3> pw;
        for (int v = 0; v < 3; ++v) {
            pw[v].resize(static_cast<std::size_t>(d) + 1);
            for (int e = 0; e <= d; ++e)
                pw[v][e] = detail::pow_trunc(f, jet[v], e, len);
        }

        for (std::size_t j = 0; j < basis.size(); ++j) {
            auto num = detail::mul_trunc(f, pw[0][basis[j].a], pw[1][basis[j].b], len);
            num = detail::mul_trunc(f, num, pw[2][basis[j].c], len);
            const auto coeffs = detail::mul_trunc(f, num, chart_inv, len);
            for (std::size_t t = 0; t < len; ++t) m(row + t, j) = coeffs[t];
        }
        row += len;
    }
    return m;
}

// Removes the reduced point with the given component index.
template <field_context F>
ZeroDimScheme<F> remove_component_point(const ZeroDimScheme<F>& z,
                                        std::size_t index) {
    if (index >= z.component_count())
        throw SchemeError("component index out of range");
    if (index >= z.points().size())
        throw SchemeError(
            "component is an arc; use the arc-truncation variant instead");
    auto points = z.points();
    points.erase(points.begin() + static_cast<std::ptrdiff_t>(index));
    return ZeroDimScheme<F>(z.field(), std::move(points), z.arcs());
}

// Colength-one truncation of an arc: drops the top jet condition. A
// length-2 arc degenerates to its reduced base point.
template <field_context F>
ZeroDimScheme<F> truncate_arc(const ZeroDimScheme<F>& z, std::size_t index) {
    if (index >= z.component_count())
        throw SchemeError("component index out of range");
    if (index < z.points().size())
        throw SchemeError("component is a reduced point, not an arc");
    const std::size_t k = index - z.points().size();
    auto points = z.points();
    auto arcs = z.arcs();
    if (arcs[k].length == 2) {
        points.push_back(arcs[k].base);
        arcs.erase(arcs.begin() + static_cast<std::ptrdiff_t>(k));
    } else {
        arcs[k].length -= 1;
    }
    return ZeroDimScheme<F>(z.field(), std::move(points), std::move(arcs));
}

// All colength-one subschemes, one per component.
template <field_context F>
std::vector<ZeroDimScheme<F>> colength_one_subschemes(const ZeroDimScheme<F>& z) {
    std::vector<ZeroDimScheme<F>> subs;
    for (std::size_t i = 0; i < z.component_count(); ++i)
        subs.push_back(i < z.points().size() ? remove_component_point(z, i)
                                             : truncate_arc(z, i));
    return subs;
}

// Degree of the scheme-theoretic intersection of z with the line whose
// coefficient vector is lambda.
template <field_context F>
long long line_intersection_length(const ZeroDimScheme<F>& z,
                                   const std::array<typename F::Elem, 3>& lambda) {
    const F& f = z.field();
    long long total = 0;
    for (const auto& p : z.points())
        if (f.is_zero(dot3(f, lambda, p.coords))) total += 1;
    for (const auto& a : z.arcs()) {
        // order of vanishing of lambda along the jet, capped at the length
        const std::array<typename F::Elem, 3> vals = {
            dot3(f, lambda, a.base.coords), dot3(f, lambda, a.dir),
            dot3(f, lambda, a.second)};
        int ord = 3;
        for (int i = 0; i < 3; ++i)
            if (!f.is_zero(vals[i])) {
                ord = i;
                break;
            }
        total += ord >= 3 ? a.length : std::min<long long>(ord, a.length);
    }
    return total;
}

// Largest length of a subscheme of z contained in some line. Any line
// meeting z in length >= 2 either joins two component supports or is the
// tangent line of an arc, so those candidates are exhaustive.
template <field_context F>
long long max_collinear_sublength(const ZeroDimScheme<F>& z) {
    const F& f = z.field();
    if (z.component_count() == 0) return 0;
    long long best = 1;

    std::vector<std::array<typename F::Elem, 3>> supports;
    for (const auto& p : z.points()) supports.push_back(p.coords);
    for (const auto& a : z.arcs()) supports.push_back(a.base.coords);

    std::vector<std::array<typename F::Elem, 3>> lines;
    for (std::size_t i = 0; i < supports.size(); ++i)
        for (std::size_t j = i + 1; j < supports.size(); ++j)
            lines.push_back(cross3(f, supports[i], supports[j]));
    for (const auto& a : z.arcs())
        lines.push_back(cross3(f, a.base.coords, a.dir));

    for (const auto& lam : lines)
        best = std::max(best, line_intersection_length(z, lam));
    return best;
}

// Request for a random degree-u scheme. Constraints mirror the special
// positions of the resolution classification: a subset of prescribed size
// on a line, all points on a conic, or one curvilinear arc.
struct SchemeSpec {
    enum class Constraint { Generic, CollinearSubset, OnConic, WithArc };

    int u = 0;
    Constraint constraint = Constraint::Generic;
    int subset = 0;      // collinear subset size k
    int arc_length = 0;  // curvilinear arc length

    static SchemeSpec generic(int u) { return {u, Constraint::Generic, 0, 0}; }
    static SchemeSpec collinear_subset(int u, int k) {
        return {u, Constraint::CollinearSubset, k, 0};
    }
    static SchemeSpec on_conic(int u) { return {u, Constraint::OnConic, 0, 0}; }
    static SchemeSpec with_arc(int u, int len) {
        return {u, Constraint::WithArc, 0, len};
    }

    std::string label() const {
        switch (constraint) {
            case Constraint::Generic: return "generic";
            case Constraint::CollinearSubset:
                return "collinear_subset(" + std::to_string(subset) + ")";
            case Constraint::OnConic: return "on_conic";
            case Constraint::WithArc:
                return "with_arc(" + std::to_string(arc_length) + ")";
        }
        return "?";
    }
};

namespace detail {

inline constexpr int kMaxSchemeDegree = 12;
inline constexpr int kResampleLimit = 1000;

template <field_context F>
ProjPoint<F> random_proj_point(const F& f, Rng& rng) {
    for (;;) {
        std::array<typename F::Elem, 3> c = {
            f.random_elem(rng), f.random_elem(rng), f.random_elem(rng)};
        if (!triple_is_zero(f, c)) return make_point(f, c);
    }
}

template <field_context F>
bool point_listed(const F& f, const ProjPoint<F>& p,
                  const std::vector<ProjPoint<F>>& list) {
    for (const auto& q : list)
        if (same_point(f, p, q)) return true;
    return false;
}

template <field_context F>
bool append_fresh_point(const F& f, Rng& rng, std::vector<ProjPoint<F>>& pts) {
    for (int tries = 0; tries < 100; ++tries) {
        auto p = random_proj_point(f, rng);
        if (!point_listed(f, p, pts)) {
            pts.push_back(std::move(p));
            return true;
        }
    }
    return false;
}

template <field_context F>
bool points_collinear(const F& f, const ProjPoint<F>& p, const ProjPoint<F>& q,
                      const ProjPoint<F>& r) {
    return f.is_zero(dot3(f, cross3(f, p.coords, q.coords), r.coords));
}

// Maximal Hilbert function: z imposes min(deg, dim) independent conditions
// in every degree.
template <field_context F>
bool has_maximal_hilbert_function(const ZeroDimScheme<F>& z) {
    const long long u = z.degree();
    for (int d = 1;; ++d) {
        const long long expect = std::min(u, monomial_count(d));
        if (static_cast<long long>(rank(evaluation_matrix(z, d))) != expect)
            return false;
        if (monomial_count(d) >= u) return true;
    }
}

template <field_context F>
bool no_collinear_triple(const F& f, const std::vector<ProjPoint<F>>& pts) {
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
            for (std::size_t k = j + 1; k < pts.size(); ++k)
                if (points_collinear(f, pts[i], pts[j], pts[k])) return false;
    return true;
}

}  // namespace detail

// Samples a degree-u scheme satisfying the requested constraint and no
// unrequested degeneracy, resampling until the rank checks pass.
// Deterministic for a fixed rng stream.
template <field_context F>
ZeroDimScheme<F> random_scheme(const F& f, const SchemeSpec& spec, Rng& rng) {
    using Constraint = SchemeSpec::Constraint;
    const int u = spec.u;
    if (u < 0 || u > detail::kMaxSchemeDegree)
        throw SchemeError("random_scheme: degree must be between 0 and 12");
    if (spec.constraint == Constraint::CollinearSubset &&
        (spec.subset < 0 || spec.subset > u))
        throw SchemeError("random_scheme: collinear subset size exceeds degree");
    if (spec.constraint == Constraint::WithArc &&
        (spec.arc_length < 2 || spec.arc_length > std::min(u, 5)))
        throw SchemeError("random_scheme: arc length must be in [2, min(u,5)]");
    if (u == 0) return ZeroDimScheme<F>::empty(f);

    // a subset of size <= 2 on a line is no constraint at all
    const bool generic_like =
        spec.constraint == Constraint::Generic ||
        (spec.constraint == Constraint::CollinearSubset && spec.subset <= 2);

    for (int attempt = 0; attempt < detail::kResampleLimit; ++attempt) {
        if (generic_like) {
            std::vector<ProjPoint<F>> pts;
            bool ok = true;
            for (int i = 0; i < u && ok; ++i)
                ok = detail::append_fresh_point(f, rng, pts);
            if (!ok || !detail::no_collinear_triple(f, pts)) continue;
            ZeroDimScheme<F> z(f, std::move(pts), {});
            if (detail::has_maximal_hilbert_function(z)) return z;
        } else if (spec.constraint == Constraint::CollinearSubset) {
            const int k = spec.subset;
            std::vector<ProjPoint<F>> pts;
            bool ok = true;
            const auto a = detail::random_proj_point(f, rng);
            const auto b = detail::random_proj_point(f, rng);
            // k distinct points a + t b on the line spanned by a, b
            const auto line = cross3(f, a.coords, b.coords);
            if (triple_is_zero(f, line)) continue;
            for (int i = 0; i < k && ok; ++i) {
                bool placed = false;
                for (int tries = 0; tries < 100 && !placed; ++tries) {
                    const auto t = f.random_elem(rng);
                    std::array<typename F::Elem, 3> c;
                    for (int v = 0; v < 3; ++v)
                        c[v] = f.add(a.coords[v], f.mul(t, b.coords[v]));
                    if (triple_is_zero(f, c)) continue;
                    auto p = make_point(f, c);
                    if (!detail::point_listed(f, p, pts)) {
                        pts.push_back(std::move(p));
                        placed = true;
                    }
                }
                ok = placed;
            }
            if (!ok) continue;
            for (int i = k; i < u && ok; ++i) {
                bool placed = false;
                for (int tries = 0; tries < 100 && !placed; ++tries) {
                    auto p = detail::random_proj_point(f, rng);
                    if (f.is_zero(dot3(f, line, p.coords))) continue;
                    if (detail::point_listed(f, p, pts)) continue;
                    pts.push_back(std::move(p));
                    placed = true;
                }
                ok = placed;
            }
            if (!ok) continue;
            // exactly k on the line and nothing else special: every triple
            // leaving the designated subset must be non-collinear
            bool degenerate = false;
            for (int i = 0; i < u && !degenerate; ++i)
                for (int j = i + 1; j < u && !degenerate; ++j)
                    for (int l = j + 1; l < u && !degenerate; ++l) {
                        if (l < k) continue;  // inside the designated subset
                        if (detail::points_collinear(f, pts[i], pts[j], pts[l]))
                            degenerate = true;
                    }
            if (degenerate) continue;
            ZeroDimScheme<F> z(f, std::move(pts), {});
            if (static_cast<long long>(rank(evaluation_matrix(z, 1))) !=
                (k == u ? 2 : 3))
                continue;
            return z;
        } else if (spec.constraint == Constraint::OnConic) {
            // image of t -> A (1, t, t^2) for an invertible A is a smooth conic
            DenseMatrix<F> a(f, 3, 3);
            for (std::size_t i = 0; i < 3; ++i)
                for (std::size_t j = 0; j < 3; ++j) a(i, j) = f.random_elem(rng);
            if (rank(a) != 3) continue;
            std::vector<typename F::Elem> params;
            std::vector<ProjPoint<F>> pts;
            bool ok = true;
            for (int i = 0; i < u && ok; ++i) {
                bool placed = false;
                for (int tries = 0; tries < 100 && !placed; ++tries) {
                    const auto t = f.random_elem(rng);
                    bool seen = false;
                    for (const auto& s : params) seen = seen || f.eq(s, t);
                    if (seen) continue;
                    const std::array<typename F::Elem, 3> v = {f.one(), t,
                                                               f.mul(t, t)};
                    std::array<typename F::Elem, 3> c;
                    for (std::size_t row = 0; row < 3; ++row) {
                        c[row] = f.zero();
                        for (std::size_t col = 0; col < 3; ++col)
                            c[row] = f.add(c[row], f.mul(a(row, col), v[col]));
                    }
                    params.push_back(t);
                    pts.push_back(make_point(f, c));
                    placed = true;
                }
                ok = placed;
            }
            if (!ok) continue;
            ZeroDimScheme<F> z(f, std::move(pts), {});
            // generic on the conic: conditions grow like the conic's degree
            bool good = true;
            for (int d = 1; good; ++d) {
                const long long expect = std::min<long long>(
                    {static_cast<long long>(u), 2LL * d + 1, monomial_count(d)});
                good = static_cast<long long>(rank(evaluation_matrix(z, d))) ==
                       expect;
                if (expect == u) break;
            }
            if (good) return z;
        } else {  // WithArc
            const int len = spec.arc_length;
            const auto base = detail::random_proj_point(f, rng);
            std::array<typename F::Elem, 3> dir, second;
            bool ok = false;
            for (int tries = 0; tries < 100 && !ok; ++tries) {
                dir = {f.random_elem(rng), f.random_elem(rng), f.random_elem(rng)};
                ok = !triple_is_zero(f, cross3(f, base.coords, dir));
            }
            if (!ok) continue;
            const auto tangent = cross3(f, base.coords, dir);
            ok = false;
            for (int tries = 0; tries < 100 && !ok; ++tries) {
                if (len == 2 && rng.below(4) == 0) {
                    second = {f.zero(), f.zero(), f.zero()};
                    ok = true;
                    break;
                }
                second = {f.random_elem(rng), f.random_elem(rng),
                          f.random_elem(rng)};
                // a third-order contact with the tangent line would hide a
                // collinear length-3 subscheme
                ok = len < 3 || !f.is_zero(dot3(f, tangent, second));
            }
            if (!ok) continue;
            std::vector<ProjPoint<F>> pts;
            ok = true;
            for (int i = 0; i < u - len && ok; ++i) {
                bool placed = false;
                for (int tries = 0; tries < 100 && !placed; ++tries) {
                    auto p = detail::random_proj_point(f, rng);
                    if (f.is_zero(dot3(f, tangent, p.coords))) continue;
                    if (same_point(f, p, base)) continue;
                    if (detail::point_listed(f, p, pts)) continue;
                    pts.push_back(std::move(p));
                    placed = true;
                }
                ok = placed;
            }
            if (!ok) continue;
            ZeroDimScheme<F> z(f, std::move(pts),
                               {Arc<F>{base, dir, second, len}});
            if (max_collinear_sublength(z) > 2) continue;
            if (detail::has_maximal_hilbert_function(z)) return z;
        }
    }
    throw SchemeError("random_scheme: constraint " + spec.label() +
                      " not satisfied after 1000 attempts");
}

}  // namespace p2b
