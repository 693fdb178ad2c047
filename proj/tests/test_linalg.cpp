#include <catch2/catch_amalgamated.hpp>

#include "p2bundle/field.hpp"
#include "p2bundle/matrix.hpp"
#include "p2bundle/rng.hpp"

using namespace p2b;

namespace {

template <field_context F>
DenseMatrix<F> random_matrix(const F& f, Rng& rng, std::size_t rows,
                             std::size_t cols, long long lo, long long hi) {
    DenseMatrix<F> m(f, rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            m(i, j) = f.from_int(rng.range(lo, hi));
    return m;
}

template <field_context F>
bool annihilates(const DenseMatrix<F>& m, const std::vector<typename F::Elem>& v) {
    const F& f = m.field();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        auto acc = f.zero();
        for (std::size_t j = 0; j < m.cols(); ++j)
            acc = f.add(acc, f.mul(m(i, j), v[j]));
        if (!f.is_zero(acc)) return false;
    }
    return true;
}

}  // namespace

TEMPLATE_TEST_CASE("rref on the stated small cases", "[linalg]", PrimeField,
                   Rationals) {
    TestType f{};

    auto id2 = DenseMatrix<TestType>::from_rows(f, {{1, 0}, {0, 1}});
    auto r = rref(id2);
    CHECK(r.matrix.equals(id2));
    CHECK(r.pivots == std::vector<std::size_t>{0, 1});
    CHECK(rank(id2) == 2);
    CHECK(kernel_basis(id2).empty());

    auto zero3 = DenseMatrix<TestType>(f, 3, 3);
    r = rref(zero3);
    CHECK(r.matrix.equals(zero3));
    CHECK(r.pivots.empty());
    CHECK(rank(zero3) == 0);
    const auto zk = kernel_basis(zero3);
    REQUIRE(zk.size() == 3);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            CHECK(f.eq(zk[i][j], i == j ? f.one() : f.zero()));

    auto prop = DenseMatrix<TestType>::from_rows(f, {{1, 2}, {2, 4}});
    r = rref(prop);
    CHECK(r.pivots == std::vector<std::size_t>{0});
    CHECK(r.matrix.equals(DenseMatrix<TestType>::from_rows(f, {{1, 2}, {0, 0}})));
    CHECK(rank(prop) == 1);

    auto row = DenseMatrix<TestType>::from_rows(f, {{1, 1, 1}});
    const auto kb = kernel_basis(row);
    REQUIRE(kb.size() == 2);
    for (const auto& v : kb) CHECK(annihilates(row, v));
}

TEMPLATE_TEST_CASE("rank-nullity, idempotence, kernel exactness on random input",
                   "[linalg]", PrimeField, Rationals) {
    TestType f{};
    Rng rng(7001);
    for (int t = 0; t < 60; ++t) {
        const auto rows = static_cast<std::size_t>(rng.range(0, 6));
        const auto cols = static_cast<std::size_t>(rng.range(1, 6));
        auto m = random_matrix(f, rng, rows, cols, -9, 9);

        const auto red = rref(m);
        const auto kb = kernel_basis(m);
        CHECK(red.pivots.size() + kb.size() == cols);
        for (const auto& v : kb) CHECK(annihilates(m, v));

        CHECK(rank(m) == rank(m.transposed()));

        const auto twice = rref(red.matrix);
        CHECK(twice.matrix.equals(red.matrix));
        CHECK(twice.pivots == red.pivots);

        for (std::size_t i = 0; i + 1 < red.pivots.size(); ++i)
            CHECK(red.pivots[i] < red.pivots[i + 1]);
    }
}

TEMPLATE_TEST_CASE("field axioms hold exactly on random elements", "[field]",
                   PrimeField, Rationals) {
    TestType f{};
    Rng rng(99);
    for (int t = 0; t < 200; ++t) {
        const auto a = f.random_elem(rng);
        const auto b = f.random_elem(rng);
        const auto c = f.random_elem(rng);
        CHECK(f.eq(f.add(f.add(a, b), c), f.add(a, f.add(b, c))));
        CHECK(f.eq(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c))));
        CHECK(f.eq(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c))));
        CHECK(f.eq(f.add(a, f.neg(a)), f.zero()));
        if (!f.is_zero(a)) CHECK(f.eq(f.div(a, a), f.one()));
    }
}

TEST_CASE("prime-field and rational ranks agree on small integer matrices",
          "[linalg]") {
    PrimeField fp{};
    Rationals q{};
    Rng rng(2024);
    for (int t = 0; t < 100; ++t) {
        const auto rows = static_cast<std::size_t>(rng.range(1, 6));
        const auto cols = static_cast<std::size_t>(rng.range(1, 6));
        DenseMatrix<PrimeField> a(fp, rows, cols);
        DenseMatrix<Rationals> b(q, rows, cols);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) {
                const long long v = rng.range(-20, 20);
                a(i, j) = fp.from_int(v);
                b(i, j) = q.from_int(v);
            }
        CHECK(rank(a) == rank(b));
    }
}

TEST_CASE("field configuration is validated", "[field]") {
    CHECK_THROWS_AS(PrimeField(1000000), FieldError);   // too small
    CHECK_THROWS_AS(PrimeField(1000002), FieldError);   // not prime
    CHECK_NOTHROW(PrimeField(1000003));
    CHECK_THROWS_AS(FieldSpec::fp(42).validate(), FieldError);
    CHECK(is_prime_u64(kDefaultPrime));
}
