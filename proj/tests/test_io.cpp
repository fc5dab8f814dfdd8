#include <catch_amalgamated.hpp>

#include "hc/errors.hpp"
#include "hc/io.hpp"
#include "support.hpp"

using namespace hc;
using Catch::Matchers::ContainsSubstring;

TEST_CASE("algebra files: inline and preset forms", "[io]")
{
    Algebra f = hc::testing::load_algebra("field");
    CHECK(f == presets::field());
    CHECK(hc::testing::load_algebra("matrix_2") == presets::matrix(2));
    CHECK(hc::testing::load_algebra("dual_numbers").basis_names() == presets::truncated_poly(2).basis_names());
    for (Index i = 0; i < 2; ++i)
        for (Index j = 0; j < 2; ++j)
            CHECK(hc::testing::load_algebra("dual_numbers").product(i, j) == presets::truncated_poly(2).product(i, j));
    CHECK_FALSE(validate_algebra(hc::testing::load_algebra("corrupted_matrix_2")).empty());
}

TEST_CASE("algebra round-trip", "[io]")
{
    for (const Algebra& a : {presets::matrix(2), presets::upper_triangular(3), presets::zero_mult(2),
                             presets::direct_sum(presets::field(), presets::truncated_poly(3))})
    {
        Json j = algebra_to_json(a);
        CHECK(algebra_from_json(parse_json_text(j.dump())) == a);
    }
    // rationals are strings
    Algebra half({"u"}, {{{0, Rational(1, 2)}}});
    Json j = algebra_to_json(half);
    CHECK(j.dump().find("\"1/2\"") != std::string::npos);
    CHECK(algebra_from_json(j) == half);
}

TEST_CASE("extension files: explicit maps and ideals", "[io]")
{
    Extension e2 = hc::testing::load_extension("e2_upper_triangular");
    CHECK(validate_extension(e2).ok());
    Extension back = extension_from_json(parse_json_text(extension_to_json(e2).dump()));
    CHECK(*back.A == *e2.A);
    CHECK(*back.B == *e2.B);
    CHECK(back.i == e2.i);
    CHECK(back.j == e2.j);

    Extension left = hc::testing::load_extension("ut2_left_unit");
    CHECK(left.B->dim() == 2);
    CHECK(validate_extension(left).ok());

    // flat row-major matrices are accepted too
    Json flat = extension_to_json(e2);
    flat["j"] = Json::array({"1", "0", "0", "0", "0", "1"});
    CHECK(extension_from_json(flat).j == e2.j);
}

TEST_CASE("parse errors carry line and column", "[io]")
{
    try
    {
        parse_json_text("{\n  \"dim\": 1,\n  \"basis\": [\"1\"\n}", "doc.json");
        FAIL("expected a parse error");
    }
    catch (const ParseError& e)
    {
        CHECK_THAT(e.what(), ContainsSubstring("doc.json:4:1"));
    }
    CHECK_THROWS_AS(hc::testing::load_algebra("bad_syntax"), ParseError);
    CHECK_THROWS_AS(load_json_file("/nonexistent/file.json"), ParseError);
}

TEST_CASE("schema errors name the offending field", "[io]")
{
    auto expect = [](const std::string& text, const std::string& fragment) {
        try
        {
            algebra_from_json(parse_json_text(text));
            FAIL("expected a schema error for " << text);
        }
        catch (const ParseError& e)
        {
            CHECK_THAT(e.what(), ContainsSubstring(fragment));
        }
    };
    expect(R"({"basis": ["a"], "mult": []})", "dim");
    expect(R"({"dim": 1, "basis": ["a", "b"], "mult": []})", "basis");
    expect(R"({"dim": 1, "mult": [[0, 3, {"0": "1"}]]})", "mult");
    expect(R"({"dim": 1, "mult": [[0, 0, {"0": 0.5}]]})", "mult");
    expect(R"({"dim": 1, "mult": [[0, 0, {"0": "1/0"}]]})", "mult");
    expect(R"({"preset": "octonions"})", "preset");
    expect(R"({"preset": "matrix"})", "k");
}

TEST_CASE("excision reports round-trip through JSON", "[io]")
{
    for (const auto& name : {"e1_field_in_field2", "e2_upper_triangular", "matrix2_in_matrix2_field"})
    {
        ExcisionReport r = excision_report(hc::testing::load_extension(name), 3);
        Json j = report_to_json(r);
        for (const char* key : {"extension", "hypothesis", "sequences", "comparison", "scenarios", "verdict"})
            CHECK(j.contains(key));
        CHECK(report_from_json(parse_json_text(j.dump())) == r);
        CHECK(report_to_json(report_from_json(j)).dump() == j.dump());
    }
}
