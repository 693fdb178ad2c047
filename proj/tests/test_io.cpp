#include <catch2/catch_amalgamated.hpp>

#include "p2bundle/io.hpp"
#include "p2bundle/rng.hpp"

using namespace p2b;

TEST_CASE("field descriptors parse and serialize", "[io]") {
    auto spec = field_spec_from_json(json::parse(R"({"type":"fp","p":2147483647})"));
    CHECK(spec.kind == FieldSpec::Kind::Fp);
    CHECK(spec.p == 2147483647ULL);

    spec = field_spec_from_json(json::parse(R"({"type":"q"})"));
    CHECK(spec.kind == FieldSpec::Kind::Q);

    CHECK(field_spec_to_json(FieldSpec::fp()).dump() ==
          R"({"type":"fp","p":2147483647})");
    CHECK(field_spec_to_json(FieldSpec::rationals()).dump() == R"({"type":"q"})");

    CHECK_THROWS_AS(field_spec_from_json(json::parse(R"({"type":"gf256"})")),
                    SchemeError);
    CHECK_THROWS_AS(field_spec_from_json(json::parse(R"({"type":"fp","p":6})")),
                    FieldError);
}

TEST_CASE("scheme files parse the documented format", "[io]") {
    const auto doc = json::parse(R"({
      "field": {"type": "q"},
      "points": [["1/2", "-3", "1"], ["0", "1", "1"]],
      "arcs": [{"base": ["0", "0", "1"], "v": ["1", "0", "0"],
                "w": ["0", "0", "0"], "length": 2}]
    })");
    const auto spec = field_spec_from_json(doc.at("field"));
    REQUIRE(spec.kind == FieldSpec::Kind::Q);

    Rationals q{};
    const auto z = scheme_from_json(q, doc);
    CHECK(z.degree() == 4);
    CHECK(z.points().size() == 2);
    CHECK(z.arcs().size() == 1);
    CHECK(q.eq(z.points()[0].coords[0], q.from_string("1/2")));
}

TEMPLATE_TEST_CASE("scheme round-trips through JSON byte-identically", "[io]",
                   PrimeField, Rationals) {
    TestType f{};
    Rng rng(61);
    for (const auto spec : {SchemeSpec::generic(4), SchemeSpec::with_arc(5, 3),
                            SchemeSpec::collinear_subset(5, 3)}) {
        const auto z = random_scheme(f, spec, rng);
        const auto doc = scheme_to_json(z);
        const auto back = scheme_from_json(f, doc);
        CHECK(back.degree() == z.degree());
        CHECK(scheme_to_json(back).dump() == doc.dump());
    }
}

TEST_CASE("classification output carries label, Betti data and Hilbert values",
          "[io]") {
    PrimeField f{};
    Rng rng(62);
    const auto z = random_scheme(f, SchemeSpec::generic(3), rng);
    const auto out = classification_json(z);
    CHECK(out.at("u") == 3);
    CHECK(out.at("label") == "B1");
    CHECK(out.at("generators") == json::array({2, 2, 2}));
    CHECK(out.at("syzygies") == json::array({3, 3}));
    CHECK(out.at("hilbert") == json::array({0, 0, 3, 7, 12}));

    // degree above the classified range: Betti only, no label
    const auto big = random_scheme(f, SchemeSpec::generic(6), rng);
    CHECK(classification_json(big).at("label").is_null());
}

TEST_CASE("cohomology table serialization", "[io]") {
    PrimeField f{};
    Rng rng(63);
    const auto e = make_bundle(random_scheme(f, SchemeSpec::generic(1), rng), -1, 1);
    const auto t = cohomology_table(e);
    const auto doc = table_json(e, t);

    CHECK(doc.at("c1") == -1);
    CHECK(doc.at("c2") == 1);
    CHECK(doc.at("r") == 1);
    CHECK(doc.at("stable") == true);
    bool found = false;
    for (const auto& row : doc.at("rows"))
        if (row.at("k") == -1) {
            CHECK(row.at("h1") == 1);
            CHECK(row.at("h0") == 0);
            CHECK(row.at("chi") == -1);
            found = true;
        }
    CHECK(found);

    const auto text = table_text(t);
    CHECK(text.find("k ") == 0);
    CHECK(text.find("h1") != std::string::npos);
    CHECK(std::count(text.begin(), text.end(), '\n') == 4);
}

TEST_CASE("verifier summaries serialize with stable shape", "[io]") {
    EnsembleConfig cfg;
    cfg.trials = 5;
    cfg.seed = 9;
    const auto summary = verify_ensemble(cfg);
    const auto doc = summary_json(summary);

    CHECK(doc.at("config").at("trials") == 5);
    CHECK(doc.at("config").at("seed") == 9);
    CHECK(doc.at("config").at("stability_mix") == "mixed");
    CHECK(doc.at("failures").is_array());
    CHECK(doc.at("failures").empty());
    REQUIRE(doc.at("checks").is_array());
    bool saw = false;
    for (const auto& c : doc.at("checks"))
        if (c.at("id") == "tcv2_splitting_equivalence") {
            CHECK(c.at("pass") == 5);
            CHECK(c.at("fail") == 0);
            saw = true;
        }
    CHECK(saw);
}
