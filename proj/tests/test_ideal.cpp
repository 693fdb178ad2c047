#include <catch2/catch_amalgamated.hpp>

#include <map>

#include "p2bundle/ideal.hpp"
#include "p2bundle/rng.hpp"
#include "p2bundle/scheme.hpp"

using namespace p2b;

namespace {

template <field_context F>
ProjPoint<F> pt(const F& f, long long a, long long b, long long c) {
    return make_point(f, {f.from_int(a), f.from_int(b), f.from_int(c)});
}

template <field_context F>
std::array<typename F::Elem, 3> triple(const F& f, long long a, long long b,
                                       long long c) {
    return {f.from_int(a), f.from_int(b), f.from_int(c)};
}

template <field_context F>
ZeroDimScheme<F> collinear_points(const F& f, int u) {
    std::vector<ProjPoint<F>> pts;
    for (int i = 0; i < u; ++i) pts.push_back(pt(f, i, 0, 1));
    return ZeroDimScheme<F>(f, std::move(pts), {});
}

// recomputes the Hilbert identity from the Betti data, independently of the
// degree-by-degree solver
template <field_context F>
bool hilbert_consistent(const ZeroDimScheme<F>& z, const GradedBetti& gb) {
    const int reg = regularity(z);
    for (int d = 0; d <= reg + 2; ++d) {
        long long expect = 0;
        for (int g : gb.generators) expect += h0_forms(d - g);
        for (int s : gb.syzygies) expect -= h0_forms(d - s);
        if (expect != ideal_h0(z, d)) return false;
    }
    return true;
}

}  // namespace

TEMPLATE_TEST_CASE("ideal cohomology on the stated examples", "[ideal]",
                   PrimeField, Rationals) {
    TestType f{};
    Rng rng(11);

    auto generic3 = random_scheme(f, SchemeSpec::generic(3), rng);
    auto c = ideal_cohomology(generic3, 1);
    CHECK(c.h0 == 0);
    CHECK(c.h1 == 0);
    CHECK(c.h2 == 0);

    auto line3 = collinear_points(f, 3);
    c = ideal_cohomology(line3, 1);
    CHECK(c.h0 == 1);
    CHECK(c.h1 == 1);
    CHECK(c.h2 == 0);

    for (const auto* z : {&generic3, &line3}) {
        c = ideal_cohomology(*z, -1);
        CHECK(c.h0 == 0);
        CHECK(c.h1 == z->degree());
        CHECK(c.h2 == 0);
    }
    CHECK(ideal_cohomology(generic3, -3).h2 == 1);  // h2(O(-3)) = 1
}

TEMPLATE_TEST_CASE("regularity of small configurations", "[ideal]", PrimeField,
                   Rationals) {
    TestType f{};
    Rng rng(12);

    CHECK(regularity(collinear_points(f, 4)) == 4);
    CHECK(regularity(random_scheme(f, SchemeSpec::generic(3), rng)) == 2);
    CHECK(regularity(ZeroDimScheme<TestType>(f, {pt(f, 3, 1, 1)}, {})) == 1);
    CHECK_THROWS_AS(regularity(ZeroDimScheme<TestType>::empty(f)), IdealError);
}

TEST_CASE("collinear configurations match the closed-form Hilbert function",
          "[ideal][oracle]") {
    PrimeField f{};
    for (int u = 1; u <= 6; ++u) {
        auto z = collinear_points(f, u);
        for (int d = 0; d <= u + 2; ++d)
            CHECK(ideal_h0(z, d) ==
                  monomial_count(d) - std::min<long long>(u, d + 1));
    }
}

TEMPLATE_TEST_CASE("minimal generator degrees of the stated examples", "[ideal]",
                   PrimeField, Rationals) {
    TestType f{};
    Rng rng(13);

    auto counts = minimal_generator_counts(random_scheme(f, SchemeSpec::generic(3), rng));
    CHECK(counts == std::map<int, long long>{{2, 3}});

    counts = minimal_generator_counts(collinear_points(f, 4));
    CHECK(counts == std::map<int, long long>{{1, 1}, {4, 1}});

    counts = minimal_generator_counts(random_scheme(f, SchemeSpec::generic(5), rng));
    CHECK(counts == std::map<int, long long>{{2, 1}, {3, 2}});
}

TEMPLATE_TEST_CASE("graded Betti tables of the stated examples", "[ideal]",
                   PrimeField, Rationals) {
    TestType f{};
    Rng rng(14);

    auto gb = graded_betti(random_scheme(f, SchemeSpec::generic(3), rng));
    CHECK(gb == GradedBetti{{2, 2, 2}, {3, 3}});

    gb = graded_betti(random_scheme(f, SchemeSpec::generic(4), rng));
    CHECK(gb == GradedBetti{{2, 2}, {4}});

    gb = graded_betti(random_scheme(f, SchemeSpec::collinear_subset(5, 4), rng));
    CHECK(gb == GradedBetti{{2, 2, 4}, {3, 5}});
}

TEMPLATE_TEST_CASE("classification of the stated examples", "[ideal]",
                   PrimeField, Rationals) {
    TestType f{};
    Rng rng(15);

    CHECK(classify_resolution(random_scheme(f, SchemeSpec::generic(2), rng)) ==
          ResolutionClass::ci_line(2));
    CHECK(classify_resolution(random_scheme(f, SchemeSpec::collinear_subset(4, 3), rng)) ==
          ResolutionClass::b(2));
    CHECK(classify_resolution(random_scheme(f, SchemeSpec::generic(5), rng)) ==
          ResolutionClass::b(5));

    CHECK_THROWS_AS(classify_resolution(random_scheme(f, SchemeSpec::generic(6), rng)),
                    PreconditionViolation);
}

TEMPLATE_TEST_CASE("classification covers curvilinear schemes", "[ideal][arc]",
                   PrimeField, Rationals) {
    TestType f{};
    Rng rng(16);

    // jet inside a line: complete intersection (1, 3)
    ZeroDimScheme<TestType> flat(
        f, {},
        {Arc<TestType>{pt(f, 0, 0, 1), triple(f, 1, 0, 0), triple(f, 1, 0, 1), 3}});
    CHECK(classify_resolution(flat) == ResolutionClass::ci_line(3));

    CHECK(classify_resolution(random_scheme(f, SchemeSpec::with_arc(3, 3), rng)) ==
          ResolutionClass::b(1));
    CHECK(classify_resolution(random_scheme(f, SchemeSpec::with_arc(4, 4), rng)) ==
          ResolutionClass::b(3));
    CHECK(classify_resolution(random_scheme(f, SchemeSpec::with_arc(5, 5), rng)) ==
          ResolutionClass::b(5));
    CHECK(classify_resolution(random_scheme(f, SchemeSpec::with_arc(4, 2), rng)) ==
          ResolutionClass::b(3));
}

TEMPLATE_TEST_CASE("every sampled small scheme classifies and stays consistent",
                   "[ideal][property]", PrimeField, Rationals) {
    TestType f{};
    Rng rng(17);
    std::vector<SchemeSpec> specs;
    for (int u = 1; u <= 5; ++u) {
        specs.push_back(SchemeSpec::generic(u));
        for (int k = 3; k <= u; ++k) specs.push_back(SchemeSpec::collinear_subset(u, k));
        for (int l = 2; l <= std::min(u, 5); ++l) specs.push_back(SchemeSpec::with_arc(u, l));
        specs.push_back(SchemeSpec::on_conic(u));
    }
    for (const auto& spec : specs) {
        auto z = random_scheme(f, spec, rng);
        const auto gb = graded_betti(z);
        CHECK(gb.generators.size() == gb.syzygies.size() + 1);
        CHECK(hilbert_consistent(z, gb));
        CHECK_NOTHROW(classify_resolution(z));

        const long long u = z.degree();
        for (int d = -2; d <= static_cast<int>(u) + 1; ++d) {
            const auto c = ideal_cohomology(z, d);
            if (d < 0) CHECK(c.h1 == u);
            if (d >= static_cast<int>(u) - 1) CHECK(c.h1 == 0);
        }
    }
}

TEMPLATE_TEST_CASE("Cayley-Bacharach on the stated examples", "[ideal]",
                   PrimeField, Rationals) {
    TestType f{};
    Rng rng(18);

    auto one = ZeroDimScheme<TestType>(f, {pt(f, 2, 3, 1)}, {});
    CHECK(cayley_bacharach(one, -1));
    CHECK_FALSE(cayley_bacharach(one, 0));

    auto six = random_scheme(f, SchemeSpec::generic(6), rng);
    CHECK(cayley_bacharach(six, 0));

    // three on a line plus one off: removing the odd point changes the
    // number of conditions on lines
    auto mixed = random_scheme(f, SchemeSpec::collinear_subset(4, 3), rng);
    CHECK_FALSE(cayley_bacharach(mixed, 1));

    // arcs participate through their truncations: the truncated jet is the
    // base point, which still imposes one condition on constants
    ZeroDimScheme<TestType> jet(
        f, {},
        {Arc<TestType>{pt(f, 0, 0, 1), triple(f, 1, 0, 0), triple(f, 0, 1, 0), 2}});
    CHECK(cayley_bacharach(jet, -1));
    CHECK(cayley_bacharach(jet, 0));

    // dropping the top jet condition loses a condition on lines
    ZeroDimScheme<TestType> jet_and_point(
        f, {pt(f, 1, 1, 1)},
        {Arc<TestType>{pt(f, 0, 0, 1), triple(f, 1, 0, 0), triple(f, 0, 1, 0), 2}});
    CHECK_FALSE(cayley_bacharach(jet_and_point, 1));
}
