#include <catch2/catch.hpp>

#include "puiseux/invariants.hpp"
#include "puiseux/serialization.hpp"

using namespace puiseux;

TEST_CASE("presentation JSON schema", "[serialization]") {
    SECTION("finite lists") {
        auto p = presentation_from_string(R"({"finite": ["1/2", "2/3"]})");
        REQUIRE(p.is_finite());
        CHECK(p.generators() ==
              std::vector<PosRational>{PosRational(1, 2), PosRational(2, 3)});
    }
    SECTION("family with truncation") {
        auto p = presentation_from_string(R"({"family": "prime_complement", "truncation": 25})");
        REQUIRE_FALSE(p.is_finite());
        CHECK(p.family_spec().kind == Family::prime_complement);
        CHECK(p.default_truncation() == 25);
    }
    SECTION("geometric carries its ratio") {
        auto p = presentation_from_string(R"({"family": "geometric", "ratio": "2/3"})");
        CHECK(p.family_spec().kind == Family::geometric);
        CHECK(p.family_spec().ratio == PosRational(2, 3));
        CHECK(p.default_truncation() == 20);
    }
    SECTION("constructed maps steps to a generator count") {
        auto p = presentation_from_string(R"({"family": "constructed", "j": 1, "steps": 8})");
        CHECK(p.family_spec().kind == Family::constructed);
        CHECK(p.family_spec().index == 1);
        CHECK(p.default_truncation() == 17); // 1 + 2 * steps
    }
}

TEST_CASE("presentation JSON round-trips with identical results", "[serialization]") {
    std::vector<std::string> sources = {
        R"({"finite": ["1/2", "2/3", "4/5"]})",
        R"({"family": "prime_complement", "truncation": 12})",
        R"({"family": "geometric", "ratio": "2/3", "truncation": 10})",
        R"({"family": "constructed", "j": 2, "steps": 4})",
    };
    for (const auto& src : sources) {
        auto p = presentation_from_string(src);
        auto q = presentation_from_string(to_json(p).dump());
        REQUIRE(p.is_finite() == q.is_finite());
        CHECK(truncate(p, 7) == truncate(q, 7));
        auto up = union_of_lengths_truncated(describe(p), 2, 6);
        auto uq = union_of_lengths_truncated(describe(q), 2, 6);
        CHECK(up.lengths == uq.lengths);
        CHECK(to_json(up).dump() == to_json(uq).dump());
    }
}

TEST_CASE("malformed input is a parse error", "[serialization]") {
    CHECK_THROWS_AS(presentation_from_string(R"({"finite": ["2/"]})"), parse_error);
    CHECK_THROWS_AS(presentation_from_string(R"({"finite": ["-1/2"]})"), parse_error);
    CHECK_THROWS_AS(presentation_from_string(R"({"family": "no_such_family"})"), parse_error);
    CHECK_THROWS_AS(presentation_from_string(R"({"geometry": true})"), parse_error);
    CHECK_THROWS_AS(presentation_from_string("not json at all"), parse_error);
    CHECK_THROWS_AS(presentation_from_string(R"({"family": "geometric"})"), parse_error);
    CHECK_THROWS_AS(presentation_from_string(R"({"family": "constructed"})"), parse_error);
    try {
        presentation_from_string(R"({"finite": ["2/"]})");
        FAIL("expected parse_error");
    } catch (const parse_error& e) {
        CHECK(std::string(e.what()).find("denominator") != std::string::npos);
    }
}

TEST_CASE("result serialization shapes", "[serialization]") {
    auto d = describe(Presentation::family(FamilySpec::primes(Family::prime_complement)));
    auto uk = union_of_lengths_truncated(d, 3, 6);
    Json j = to_json(uk);
    CHECK(j["k"] == 3);
    CHECK(j["lengths"] == Json::array({3, 4}));
    CHECK(j["status"]["under_approx_at"] == 6);
    CHECK(j["bound"] == "6/1");

    Json exact = to_json(exact_uk_prime_complement(3));
    CHECK(exact["status"] == "exact");

    Json flags = to_json(d.flags);
    CHECK(flags["primary"]["certified"] == true);
    CHECK(flags["has_stable_atom"]["certified"] == false);

    Factorization z({PosRational(1, 2), PosRational(2, 3)}, {4, 0});
    Json zj = to_json(z);
    CHECK(zj["length"] == 4);
    CHECK(zj["value"] == "2/1");
    CHECK(zj["atoms"][0] == "1/2");

    auto state = extend(make_construction(1));
    Json sj = to_json(state);
    CHECK(sj["j"] == 1);
    CHECK(sj["generators"].size() == 3);
    CHECK(sj["history"][0]["q"] == "7");
}
