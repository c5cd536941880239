#include <catch2/catch.hpp>

#include <random>

#include "oracles.hpp"
#include "puiseux/presentation.hpp"

using namespace puiseux;

namespace {

std::vector<PosRational> rats(std::initializer_list<const char*> list) {
    std::vector<PosRational> out;
    for (const char* s : list) out.push_back(PosRational::parse(s));
    return out;
}

Presentation family_of(Family kind) {
    return Presentation::family(FamilySpec::primes(kind));
}

} // namespace

TEST_CASE("truncate instantiates family terms", "[presentation]") {
    CHECK(truncate(family_of(Family::prime_complement), 3) == rats({"1/2", "2/3", "4/5"}));
    CHECK(truncate(Presentation::family(FamilySpec::geometric(PosRational(2, 3))), 2) ==
          rats({"2/3", "4/9"}));
    CHECK(truncate(family_of(Family::unit_fraction_primes), 4) ==
          rats({"1/2", "1/3", "1/5", "1/7"}));
    CHECK(truncate(family_of(Family::linear_over_prime), 5) ==
          rats({"1/2", "2/3", "3/5", "4/7", "5/11"}));
    CHECK(truncate(family_of(Family::prime_square_complement), 3) ==
          rats({"3/2", "8/3", "24/5"}));
    // finite lists ignore the level: the presentation is already the monoid
    CHECK(truncate(Presentation::finite(rats({"1/2", "2/3"})), 1) == rats({"1/2", "2/3"}));
    CHECK_THROWS_AS(truncate(family_of(Family::prime_complement), 0), precondition_error);
}

TEST_CASE("truncations are prefixes of deeper truncations", "[presentation][property]") {
    std::vector<Presentation> presentations = {
        family_of(Family::unit_fraction_primes),
        family_of(Family::prime_complement),
        family_of(Family::linear_over_prime),
        family_of(Family::prime_square_complement),
        Presentation::family(FamilySpec::geometric(PosRational(2, 3))),
        Presentation::family(FamilySpec::constructed(1)),
        Presentation::family(FamilySpec::constructed(2)),
    };
    for (const auto& p : presentations) {
        auto deep = truncate(p, 31);
        for (std::uint32_t n = 1; n <= 30; ++n) {
            auto shallow = truncate(p, n);
            REQUIRE(shallow.size() == n);
            REQUIRE(std::equal(shallow.begin(), shallow.end(), deep.begin()));
        }
    }
}

TEST_CASE("minimal_generators drops decomposable generators", "[presentation]") {
    CHECK(minimal_generators(rats({"1/2", "1"})) == rats({"1/2"}));
    CHECK(minimal_generators(rats({"2", "3", "5"})) == rats({"2", "3"}));
    // frozen from the naive oracle: none of the three decomposes
    CHECK(minimal_generators(rats({"1/2", "2/3", "4/5"})) == rats({"1/2", "2/3", "4/5"}));
}

TEST_CASE("minimal_generators is idempotent and preserves the monoid",
          "[presentation][property]") {
    std::mt19937_64 rng(46);
    std::uniform_int_distribution<std::size_t> size_dist(1, 6);
    for (int i = 0; i < 40; ++i) {
        auto gens = oracle::random_atoms(rng, size_dist(rng), 8, 6);
        auto atoms = minimal_generators(gens);
        REQUIRE(minimal_generators(atoms) == atoms);
        // every original generator stays a member of <atoms>
        for (const auto& g : gens) REQUIRE(is_member(atoms, g));
        // and every kept atom really is irreducible: not a sum of the others
        for (const auto& a : atoms) {
            std::vector<PosRational> others;
            for (const auto& b : atoms)
                if (b != a) others.push_back(b);
            if (!others.empty()) REQUIRE_FALSE(is_member(others, a));
        }
    }
}

TEST_CASE("classification of builtin families", "[presentation]") {
    SECTION("prime_complement") {
        auto d = describe(family_of(Family::prime_complement));
        auto flags = classify(d, 25);
        CHECK(flags.atomic.certified_true());
        CHECK(flags.bounded.certified_true());
        CHECK(flags.strongly_bounded.certified_false());
        CHECK(flags.primary.certified_true());
        CHECK(flags.zero_limit_point.certified_false());
        CHECK(flags.has_stable_atom.certified_false());
    }
    SECTION("unit_fraction_primes") {
        auto d = describe(family_of(Family::unit_fraction_primes));
        auto flags = classify(d, 25);
        CHECK(flags.atomic.certified_true());
        CHECK(flags.bounded.certified_true());
        CHECK(flags.strongly_bounded.certified_true());
        CHECK(flags.zero_limit_point.certified_true());
        CHECK(flags.has_stable_atom.certified_true());
    }
    SECTION("finite lists resolve every flag") {
        auto d = describe(Presentation::finite(rats({"3/4", "5/6"})));
        CHECK(d.flags.atomic.certified_true());
        CHECK(d.flags.bounded.certified_true());
        CHECK(d.flags.strongly_bounded.certified_true());
        CHECK(d.flags.zero_limit_point.certified_false());
        CHECK(d.flags.has_stable_atom.certified_false());
        CHECK(d.flags.primary.certified_false()); // denominators 4 and 6
        auto primary = describe(Presentation::finite(rats({"1/2", "2/3"})));
        CHECK(primary.flags.primary.certified_true());
    }
    SECTION("geometric ratios") {
        auto canonical = describe(Presentation::family(FamilySpec::geometric(PosRational(2, 3))));
        CHECK(canonical.flags.atomic.certified_true());
        CHECK(canonical.flags.primary.certified_false());
        auto unit = describe(Presentation::family(FamilySpec::geometric(PosRational(1, 2))));
        CHECK(unit.flags.atomic.certified_false()); // 1/2^n has no atoms
        CHECK(unit.flags.strongly_bounded.certified_true());
        auto other = describe(Presentation::family(FamilySpec::geometric(PosRational(3, 5))));
        CHECK(other.flags.atomic.kind() == TriState::Kind::unknown);
        auto checked = classify(other, 12);
        CHECK(checked.atomic.kind() == TriState::Kind::checked_up_to);
        CHECK(checked.atomic.value()); // no decomposition observed in the window
    }
}

TEST_CASE("certified metadata is consistent with truncations up to 50",
          "[presentation][property]") {
    std::vector<Presentation> presentations = {
        family_of(Family::unit_fraction_primes),
        family_of(Family::prime_complement),
        family_of(Family::linear_over_prime),
        family_of(Family::prime_square_complement),
        Presentation::family(FamilySpec::geometric(PosRational(2, 3))),
        Presentation::family(FamilySpec::constructed(1)),
    };
    for (const auto& p : presentations) {
        auto d = describe(p);
        CHECK_NOTHROW(classify(d, 50));
    }
}

TEST_CASE("detect_stable_atoms groups by numerator", "[presentation]") {
    SECTION("unit fractions form one certified stable class") {
        auto atoms = truncate(family_of(Family::unit_fraction_primes), 5);
        auto report =
            detect_stable_atoms(atoms, FamilySpec::primes(Family::unit_fraction_primes));
        REQUIRE(report.classes.count(Integer(1)) == 1);
        CHECK(report.classes.at(Integer(1)).size() == 5);
        CHECK(report.largest_class == 5);
        CHECK(report.stable.certified_true());
        REQUIRE(report.stable_numerator.has_value());
        CHECK(*report.stable_numerator == 1);
    }
    SECTION("prime_complement classes are singletons") {
        auto atoms = truncate(family_of(Family::prime_complement), 5);
        auto report =
            detect_stable_atoms(atoms, FamilySpec::primes(Family::prime_complement));
        CHECK(report.classes.size() == 5);
        CHECK(report.largest_class == 1);
        CHECK(report.stable.certified_false());
    }
    SECTION("finite lists are never stable") {
        auto report = detect_stable_atoms(rats({"1/2", "1/3"}));
        REQUIRE(report.classes.count(Integer(1)) == 1);
        CHECK(report.classes.at(Integer(1)).size() == 2);
        CHECK(report.stable.certified_false());
    }
}

TEST_CASE("atom_list minimalizes windows without an atomicity certificate",
          "[presentation]") {
    // certified atomic family: the window is already the atom set
    auto pc = describe(family_of(Family::prime_complement));
    CHECK(atom_list(pc, 3) == rats({"1/2", "2/3", "4/5"}));
    // 1/2^n has no atoms; within the window only the deepest term survives
    auto halves = describe(Presentation::family(FamilySpec::geometric(PosRational(1, 2))));
    CHECK(atom_list(halves, 3) == rats({"1/8"}));
    // finite lists go through minimal_generators
    auto fin = describe(Presentation::finite(rats({"1/2", "1"})));
    CHECK(atom_list(fin, 1) == rats({"1/2"}));
}

TEST_CASE("presentation validation", "[presentation]") {
    CHECK_THROWS_AS(Presentation::finite({}), precondition_error);
    CHECK_THROWS_AS(Presentation::finite(rats({"1/2", "1/2"})), precondition_error);
    CHECK_THROWS_AS(Presentation::finite(rats({"0/1"})), precondition_error);
    CHECK_THROWS_AS(FamilySpec::geometric(PosRational(3, 2)), precondition_error);
    CHECK_THROWS_AS(FamilySpec::geometric(PosRational(1)), precondition_error);
    CHECK_THROWS_AS(FamilySpec::constructed(0), precondition_error);
}
