#include <catch2/catch.hpp>

#include <algorithm>
#include <random>
#include <set>

#include "oracles.hpp"
#include "puiseux/engine.hpp"
#include "puiseux/presentation.hpp"

using namespace puiseux;

namespace {

std::vector<PosRational> rats(std::initializer_list<const char*> list) {
    std::vector<PosRational> out;
    for (const char* s : list) out.push_back(PosRational::parse(s));
    return out;
}

std::set<std::vector<std::uint64_t>> exponent_set(const std::vector<Factorization>& zs) {
    std::set<std::vector<std::uint64_t>> out;
    for (const auto& z : zs) out.insert(z.exponents());
    return out;
}

} // namespace

TEST_CASE("scale_to_integers clears denominators minimally", "[engine]") {
    auto s1 = scale_to_integers(rats({"1/2", "2/3"}), PosRational(2));
    CHECK(s1.coefficients == std::vector<Integer>{3, 4});
    CHECK(s1.target == 12);
    CHECK(s1.common_denominator == 6);

    auto s2 = scale_to_integers(rats({"1/2"}), PosRational(1, 2));
    CHECK(s2.coefficients == std::vector<Integer>{1});
    CHECK(s2.target == 1);
    CHECK(s2.common_denominator == 2);

    auto s3 = scale_to_integers(rats({"2/3", "4/9"}), PosRational(2));
    CHECK(s3.coefficients == std::vector<Integer>{6, 4});
    CHECK(s3.target == 18);
    CHECK(s3.common_denominator == 9);

    SearchLimits tight;
    tight.max_scaled_target = 10;
    CHECK_THROWS_AS(scale_to_integers(rats({"1/2", "2/3"}), PosRational(2), tight),
                    resource_limit_error);
}

TEST_CASE("enumerate_factorizations returns exactly Z(x)", "[engine]") {
    auto zs = enumerate_factorizations(rats({"1/2", "2/3"}), PosRational(2));
    REQUIRE(zs.size() == 2);
    // deterministic: lexicographic over exponents of atoms sorted decreasing
    CHECK(zs[0].exponents() == std::vector<std::uint64_t>{4, 0});
    CHECK(zs[1].exponents() == std::vector<std::uint64_t>{0, 3});

    CHECK(enumerate_factorizations(rats({"1/2"}), PosRational(1, 3)).empty());

    auto geo = enumerate_factorizations(rats({"2/3", "4/9"}), PosRational(4, 3));
    CHECK(exponent_set(geo) ==
          std::set<std::vector<std::uint64_t>>{{2, 0}, {0, 3}});

    auto zero = enumerate_factorizations(rats({"1/2", "2/3"}), PosRational());
    REQUIRE(zero.size() == 1);
    CHECK(zero[0].length() == 0);
    CHECK(zero[0].value() == PosRational());
}

TEST_CASE("length_set via the value/length DP", "[engine]") {
    CHECK(length_set(rats({"1/2", "2/3"}), PosRational(2)).lengths ==
          std::vector<std::uint64_t>{3, 4});

    // single atom: unique factorization
    CHECK(length_set(rats({"3/7"}), PosRational(15, 7)).lengths ==
          std::vector<std::uint64_t>{5});

    auto pc4 = truncate(Presentation::family(FamilySpec::primes(Family::prime_complement)), 4);
    CHECK(length_set(pc4, PosRational(1)).lengths == std::vector<std::uint64_t>{2});

    CHECK(length_set(rats({"1/2"}), PosRational(1, 3)).lengths.empty());
    CHECK(length_set(rats({"1/2"}), PosRational()).lengths ==
          std::vector<std::uint64_t>{0});
}

TEST_CASE("is_member", "[engine]") {
    CHECK(is_member(rats({"1/2", "2/3"}), PosRational(7, 6)));
    CHECK_FALSE(is_member(rats({"1/2"}), PosRational(1, 3)));
    CHECK(is_member(rats({"2/5", "3/5"}), PosRational(1)));
    CHECK(is_member(rats({"1/2"}), PosRational()));
    // forcing the DFS route (tiny DP cap) answers identically
    SearchLimits dfs_only;
    dfs_only.max_scaled_target = 1;
    CHECK(is_member(rats({"1/2", "2/3"}), PosRational(7, 6), dfs_only));
    CHECK_FALSE(is_member(rats({"1/2", "2/3"}), PosRational(1, 5), dfs_only));
}

TEST_CASE("evaluate is the exact factorization homomorphism", "[engine]") {
    Factorization z(rats({"1/2", "2/3"}), {4, 0});
    CHECK(evaluate(z) == PosRational(2));
    Factorization empty(rats({"1/2", "2/3"}), {0, 0});
    CHECK(evaluate(empty) == PosRational());
    Factorization pair(rats({"2/5", "3/5"}), {1, 1});
    CHECK(evaluate(pair) == PosRational(1));
}

TEST_CASE("element_elasticity", "[engine]") {
    CHECK(element_elasticity(rats({"1/2", "2/3"}), PosRational(2)) == PosRational(4, 3));
    CHECK(element_elasticity(rats({"1/2", "2/3"}), PosRational(2, 3)) == PosRational(1));

    auto ns = rats({"6", "9", "20"});
    CHECK(element_elasticity(ns, PosRational(60)) == PosRational(10, 3));
    // frozen from the naive oracle: lengths 4..6 are not attainable at 60
    CHECK(length_set(ns, PosRational(60)).lengths ==
          std::vector<std::uint64_t>{3, 7, 8, 9, 10});

    CHECK_THROWS_AS(element_elasticity(ns, PosRational()), precondition_error);
    CHECK_THROWS_AS(element_elasticity(ns, PosRational(1)), precondition_error);
}

TEST_CASE("rewrite_geometric trades 2 copies for 3 at the next power", "[engine]") {
    auto atoms = rats({"2/3", "4/9", "8/27"});
    SECTION("k copies at the first power") {
        Factorization z(atoms, {5, 0, 0});
        Factorization w = rewrite_geometric(z, 1);
        CHECK(w.exponents() == std::vector<std::uint64_t>{3, 3, 0});
        CHECK(w.value() == z.value());
        CHECK(w.length() == z.length() + 1);
    }
    SECTION("three copies at the second power") {
        Factorization z(atoms, {0, 3, 0});
        Factorization w = rewrite_geometric(z, 2);
        CHECK(w.exponents() == std::vector<std::uint64_t>{0, 1, 3});
        CHECK(w.value() == z.value());
    }
    SECTION("precondition violations") {
        Factorization one(atoms, {1, 0, 0});
        CHECK_THROWS_AS(rewrite_geometric(one, 1), precondition_error);
        Factorization edge(atoms, {0, 0, 2});
        CHECK_THROWS_AS(rewrite_geometric(edge, 3), precondition_error);
        Factorization wrong(rats({"1/2", "1/4"}), {2, 0});
        CHECK_THROWS_AS(rewrite_geometric(wrong, 1), precondition_error);
    }
}

TEST_CASE("engine matches the naive nested-loop oracle", "[engine][oracle]") {
    std::mt19937_64 rng(42);
    std::uniform_int_distribution<std::size_t> size_dist(1, 5);
    int done = 0;
    while (done < 100) {
        auto atoms = oracle::random_atoms(rng, size_dist(rng), 12, 12);
        Integer d = den_lcm(atoms);
        std::uniform_int_distribution<std::uint64_t> target_dist(0, 200);
        PosRational x(Integer(target_dist(rng)), d);
        auto expected = oracle::naive_factorizations(atoms, x);
        auto got = enumerate_factorizations(atoms, x);
        REQUIRE(exponent_set(got) ==
                std::set<std::vector<std::uint64_t>>(expected.begin(), expected.end()));
        auto expected_lengths = oracle::naive_lengths(atoms, x);
        auto ls = length_set(atoms, x);
        REQUIRE(std::set<std::uint64_t>(ls.lengths.begin(), ls.lengths.end()) ==
                expected_lengths);
        CHECK(is_member(atoms, x) == !expected.empty());
        ++done;
    }
}

TEST_CASE("every enumerated factorization evaluates back to x", "[engine][property]") {
    std::mt19937_64 rng(43);
    for (int i = 0; i < 50; ++i) {
        auto atoms = oracle::random_atoms(rng, 3, 9, 8);
        Integer d = den_lcm(atoms);
        std::uniform_int_distribution<std::uint64_t> target_dist(0, 120);
        PosRational x(Integer(target_dist(rng)), d);
        for (const auto& z : enumerate_factorizations(atoms, x))
            REQUIRE(z.value() == x);
    }
}

TEST_CASE("length_set equals lengths of the enumeration", "[engine][property]") {
    std::mt19937_64 rng(44);
    for (int i = 0; i < 50; ++i) {
        auto atoms = oracle::random_atoms(rng, 4, 10, 9);
        Integer d = den_lcm(atoms);
        std::uniform_int_distribution<std::uint64_t> target_dist(0, 150);
        PosRational x(Integer(target_dist(rng)), d);
        std::set<std::uint64_t> from_enum;
        for (const auto& z : enumerate_factorizations(atoms, x))
            from_enum.insert(z.length());
        auto ls = length_set(atoms, x);
        REQUIRE(std::set<std::uint64_t>(ls.lengths.begin(), ls.lengths.end()) == from_enum);
    }
}

TEST_CASE("truncation monotonicity: more atoms, more factorizations",
          "[engine][property]") {
    std::mt19937_64 rng(45);
    for (int i = 0; i < 30; ++i) {
        auto larger = oracle::random_atoms(rng, 4, 10, 8);
        std::vector<PosRational> smaller(larger.begin(), larger.end() - 1);
        Integer d = den_lcm(larger);
        std::uniform_int_distribution<std::uint64_t> target_dist(0, 120);
        PosRational x(Integer(target_dist(rng)), d);

        auto zs_small = enumerate_factorizations(smaller, x);
        auto zs_large = exponent_set(enumerate_factorizations(larger, x));
        for (const auto& z : zs_small) {
            std::vector<std::uint64_t> embedded = z.exponents();
            embedded.push_back(0);
            REQUIRE(zs_large.count(embedded) == 1);
        }
        auto l_small = detail::lengths_flexible(smaller, x, SearchLimits{});
        auto l_large = detail::lengths_flexible(larger, x, SearchLimits{});
        for (std::uint64_t l : l_small)
            REQUIRE(std::binary_search(l_large.begin(), l_large.end(), l));
    }
}

TEST_CASE("resource limits are hard errors", "[engine]") {
    SearchLimits one_node;
    one_node.max_nodes = 1;
    CHECK_THROWS_AS(enumerate_factorizations(rats({"1/2", "2/3"}), PosRational(2), one_node),
                    resource_limit_error);

    SearchLimits one_result;
    one_result.max_factorizations = 1;
    CHECK_THROWS_AS(enumerate_factorizations(rats({"1/2", "2/3"}), PosRational(2), one_result),
                    resource_limit_error);

    SearchLimits tiny_dp;
    tiny_dp.max_scaled_target = 3;
    CHECK_THROWS_AS(length_set(rats({"1/2", "2/3"}), PosRational(2), tiny_dp),
                    resource_limit_error);
}

TEST_CASE("atom list validation", "[engine]") {
    CHECK_THROWS_AS(enumerate_factorizations({}, PosRational(1)), precondition_error);
    CHECK_THROWS_AS(enumerate_factorizations(rats({"0/1", "1/2"}), PosRational(1)),
                    precondition_error);
    CHECK_THROWS_AS(enumerate_factorizations(rats({"1/2", "2/4"}), PosRational(1)),
                    precondition_error);
}
