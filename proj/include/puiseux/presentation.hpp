#pragma once

/// Presentations of Puiseux monoids: explicit finite generator lists and the
/// builtin symbolic families, plus the tri-state classification flags.
///
/// Predicates about an infinite monoid (boundedness, limit points, stable
/// atoms) are undecidable from a stream of terms, so builtin families carry
/// Certified metadata and classify() only sanity-checks that metadata
/// against a finite truncation. Finite lists resolve every flag exactly.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "puiseux/constructions.hpp"
#include "puiseux/engine.hpp"
#include "puiseux/errors.hpp"
#include "puiseux/primes.hpp"
#include "puiseux/rational.hpp"

namespace puiseux {

enum class Family {
    unit_fraction_primes,   // 1/p_n
    prime_complement,       // (p_n - 1)/p_n
    linear_over_prime,      // n/p_n
    prime_square_complement,// (p_n^2 - 1)/p_n
    geometric,              // r^n for a fixed ratio 0 < r < 1
    constructed             // the inductive family M_j
};

inline std::string_view family_name(Family f) {
    switch (f) {
        case Family::unit_fraction_primes: return "unit_fraction_primes";
        case Family::prime_complement: return "prime_complement";
        case Family::linear_over_prime: return "linear_over_prime";
        case Family::prime_square_complement: return "prime_square_complement";
        case Family::geometric: return "geometric";
        case Family::constructed: return "constructed";
    }
    return "?";
}

inline std::optional<Family> family_from_name(std::string_view name) {
    for (Family f : {Family::unit_fraction_primes, Family::prime_complement,
                     Family::linear_over_prime, Family::prime_square_complement,
                     Family::geometric, Family::constructed})
        if (family_name(f) == name) return f;
    return std::nullopt;
}

struct FamilySpec {
    Family kind = Family::prime_complement;
    PosRational ratio;          // geometric only, 0 < ratio < 1
    std::uint32_t index = 1;    // constructed only: j

    static FamilySpec primes(Family kind) { return FamilySpec{kind, PosRational(), 1}; }
    static FamilySpec geometric(PosRational r) {
        if (r.is_zero() || !(r < PosRational(1)))
            throw precondition_error("geometric family needs 0 < ratio < 1");
        return FamilySpec{Family::geometric, std::move(r), 1};
    }
    static FamilySpec constructed(std::uint32_t j) {
        if (j == 0) throw precondition_error("constructed family index starts at 1");
        return FamilySpec{Family::constructed, PosRational(), j};
    }
};

class Presentation {
public:
    static Presentation finite(std::vector<PosRational> generators) {
        if (generators.empty())
            throw precondition_error("finite presentation needs at least one generator");
        detail::validate_atoms(generators); // positive, pairwise distinct
        Presentation p;
        p.source_ = std::move(generators);
        return p;
    }

    static Presentation family(FamilySpec spec, std::uint32_t truncation_default = 20) {
        if (truncation_default == 0)
            throw precondition_error("default truncation must be positive");
        Presentation p;
        p.source_ = std::move(spec);
        p.truncation_default_ = truncation_default;
        return p;
    }

    bool is_finite() const { return std::holds_alternative<std::vector<PosRational>>(source_); }
    const std::vector<PosRational>& generators() const {
        return std::get<std::vector<PosRational>>(source_);
    }
    const FamilySpec& family_spec() const { return std::get<FamilySpec>(source_); }
    std::uint32_t default_truncation() const { return truncation_default_; }

private:
    Presentation() = default;
    std::variant<std::vector<PosRational>, FamilySpec> source_;
    std::uint32_t truncation_default_ = 20;
};

/// Provenance-carrying boolean: proved, observed on a finite window, or
/// neither.
class TriState {
public:
    enum class Kind { certified, checked_up_to, unknown };

    static TriState certified(bool value) { return TriState(Kind::certified, value, 0); }
    static TriState checked_up_to(std::uint32_t level, bool observed) {
        return TriState(Kind::checked_up_to, observed, level);
    }
    static TriState unknown() { return TriState(Kind::unknown, false, 0); }

    Kind kind() const noexcept { return kind_; }
    bool value() const noexcept { return value_; }
    std::uint32_t level() const noexcept { return level_; }

    bool certified_true() const { return kind_ == Kind::certified && value_; }
    bool certified_false() const { return kind_ == Kind::certified && !value_; }

    std::string to_string() const {
        switch (kind_) {
            case Kind::certified: return value_ ? "certified true" : "certified false";
            case Kind::checked_up_to:
                return std::string("checked up to ") + std::to_string(level_) + ": " +
                       (value_ ? "true" : "false");
            case Kind::unknown: return "unknown";
        }
        return "?";
    }

private:
    TriState(Kind k, bool v, std::uint32_t l) : kind_(k), value_(v), level_(l) {}
    Kind kind_;
    bool value_;
    std::uint32_t level_;
};

struct MonoidFlags {
    TriState atomic = TriState::unknown();
    TriState bounded = TriState::unknown();
    TriState strongly_bounded = TriState::unknown();
    TriState primary = TriState::unknown();
    TriState zero_limit_point = TriState::unknown();
    TriState has_stable_atom = TriState::unknown();
};

struct MonoidDescriptor {
    Presentation presentation;
    MonoidFlags flags;
};

/// First N family terms; for a finite list the full list (N is irrelevant,
/// the presentation already is the whole monoid). Deterministic, and
/// truncations are prefixes of deeper truncations.
inline std::vector<PosRational> truncate(const Presentation& p, std::uint32_t N) {
    if (N == 0)
        throw precondition_error("truncate: level must be positive");
    if (p.is_finite()) return p.generators();
    const FamilySpec& spec = p.family_spec();
    std::vector<PosRational> terms;
    terms.reserve(N);
    switch (spec.kind) {
        case Family::unit_fraction_primes:
            for (std::uint32_t n = 1; n <= N; ++n)
                terms.emplace_back(Integer(1), Integer(nth_prime(n)));
            break;
        case Family::prime_complement:
            for (std::uint32_t n = 1; n <= N; ++n) {
                Integer p_n = nth_prime(n);
                terms.emplace_back(p_n - 1, p_n);
            }
            break;
        case Family::linear_over_prime:
            for (std::uint32_t n = 1; n <= N; ++n)
                terms.emplace_back(Integer(n), Integer(nth_prime(n)));
            break;
        case Family::prime_square_complement:
            for (std::uint32_t n = 1; n <= N; ++n) {
                Integer p_n = nth_prime(n);
                terms.emplace_back(p_n * p_n - 1, p_n);
            }
            break;
        case Family::geometric:
            for (std::uint32_t n = 1; n <= N; ++n)
                terms.push_back(spec.ratio.pow(n));
            break;
        case Family::constructed: {
            ConstructionState state = make_construction(spec.index);
            while (state.generators().size() < N) state = extend(state);
            terms.assign(state.generators().begin(), state.generators().begin() + N);
            break;
        }
    }
    return terms;
}

/// Minimal generating set of <generators>: drops every generator expressible
/// as a sum of two or more others. Scanned in increasing value order, since
/// a generator can only decompose into strictly smaller ones. The result is
/// the atom set of the (finitely generated, hence atomic) monoid.
inline std::vector<PosRational> minimal_generators(std::vector<PosRational> generators,
                                                   const SearchLimits& limits = {}) {
    detail::validate_atoms(generators);
    std::sort(generators.begin(), generators.end());
    std::vector<PosRational> kept;
    for (const auto& g : generators) {
        if (kept.empty() || !is_member(kept, g, limits))
            kept.push_back(g);
    }
    return kept;
}

namespace detail {

inline bool denominators_pairwise_distinct_primes(const std::vector<PosRational>& atoms) {
    std::set<Integer> seen;
    for (const auto& a : atoms) {
        if (!is_prime(a.den())) return false;
        if (!seen.insert(a.den()).second) return false;
    }
    return true;
}

inline MonoidFlags finite_flags(const std::vector<PosRational>& generators,
                                const SearchLimits& limits) {
    std::vector<PosRational> atoms = minimal_generators(generators, limits);
    MonoidFlags flags;
    flags.atomic = TriState::certified(true);           // finitely generated
    flags.bounded = TriState::certified(true);
    flags.strongly_bounded = TriState::certified(true);
    flags.zero_limit_point = TriState::certified(false); // finite sets have no limit points
    flags.has_stable_atom = TriState::certified(false);  // finite atom set
    flags.primary = TriState::certified(denominators_pairwise_distinct_primes(atoms));
    return flags;
}

inline MonoidFlags family_flags(const FamilySpec& spec) {
    MonoidFlags f;
    switch (spec.kind) {
        case Family::unit_fraction_primes:
            f.atomic = TriState::certified(true);
            f.bounded = TriState::certified(true);
            f.strongly_bounded = TriState::certified(true); // every numerator is 1
            f.primary = TriState::certified(true);
            f.zero_limit_point = TriState::certified(true);
            f.has_stable_atom = TriState::certified(true); // the numerator-1 class
            break;
        case Family::prime_complement:
            f.atomic = TriState::certified(true);
            f.bounded = TriState::certified(true); // atoms in [1/2, 1)
            f.strongly_bounded = TriState::certified(false);
            f.primary = TriState::certified(true);
            f.zero_limit_point = TriState::certified(false);
            f.has_stable_atom = TriState::certified(false); // numerators p-1 distinct
            break;
        case Family::linear_over_prime:
            f.atomic = TriState::certified(true);
            f.bounded = TriState::certified(true); // n/p_n < 1
            f.strongly_bounded = TriState::certified(false);
            f.primary = TriState::certified(true);
            f.zero_limit_point = TriState::certified(true); // n/p_n -> 0
            f.has_stable_atom = TriState::certified(false);
            break;
        case Family::prime_square_complement:
            f.atomic = TriState::certified(true);
            f.bounded = TriState::certified(false); // terms p - 1/p grow
            f.strongly_bounded = TriState::certified(false);
            f.primary = TriState::certified(true);
            f.zero_limit_point = TriState::certified(false); // terms >= 3/2
            f.has_stable_atom = TriState::certified(false);
            break;
        case Family::geometric: {
            bool unit_numerator = spec.ratio.num() == 1;
            bool canonical = spec.ratio == PosRational(2, 3);
            f.bounded = TriState::certified(true);          // terms <= ratio < 1
            f.zero_limit_point = TriState::certified(true); // r^n -> 0
            // denominators are prime powers v^n, so no generating set can
            // consist of pairwise distinct primes
            f.primary = TriState::certified(false);
            f.has_stable_atom = TriState::certified(false); // numerators u^n distinct,
                                                            // or no atoms at all
            if (unit_numerator) {
                // 1/v^n = v * (1/v^(n+1)): no atoms exist
                f.atomic = TriState::certified(false);
                f.strongly_bounded = TriState::certified(true);
            } else {
                f.strongly_bounded = TriState::certified(false);
                f.atomic = canonical ? TriState::certified(true) : TriState::unknown();
            }
            break;
        }
        case Family::constructed:
            f.atomic = TriState::certified(true);
            f.bounded = TriState::certified(false);
            f.strongly_bounded = TriState::certified(false);
            f.primary = TriState::certified(false); // each step repeats a denominator
            f.zero_limit_point = TriState::certified(false); // min generator is 1/p
            f.has_stable_atom = TriState::certified(false);
            break;
    }
    return f;
}

/// Family-specific value bounds used by the classification sanity checks.
inline std::optional<PosRational> family_upper_bound(const FamilySpec& spec) {
    switch (spec.kind) {
        case Family::unit_fraction_primes: return PosRational(1, 2);
        case Family::prime_complement: return PosRational(1);
        case Family::linear_over_prime: return PosRational(1);
        case Family::geometric: return spec.ratio;
        default: return std::nullopt;
    }
}

inline std::optional<PosRational> family_lower_bound(const FamilySpec& spec) {
    switch (spec.kind) {
        case Family::prime_complement: return PosRational(1, 2);
        case Family::prime_square_complement: return PosRational(3, 2);
        default: return std::nullopt;
    }
}

} // namespace detail

/// Resolves the flag metadata for a presentation. Finite lists compute every
/// flag; families return the certified table.
inline MonoidDescriptor describe(Presentation presentation,
                                 const SearchLimits& limits = {}) {
    MonoidFlags flags = presentation.is_finite()
                            ? detail::finite_flags(presentation.generators(), limits)
                            : detail::family_flags(presentation.family_spec());
    return MonoidDescriptor{std::move(presentation), flags};
}

/// Atom list backing computations at truncation level N. For a certified
/// atomic family the window terms are atoms of the full monoid, hence of the
/// window, and are used as-is; otherwise (finite lists, families without an
/// atomicity certificate) the window is minimalized first so that lengths
/// count atoms, not arbitrary generators.
inline std::vector<PosRational> atom_list(const MonoidDescriptor& descriptor,
                                          std::uint32_t N,
                                          const SearchLimits& limits = {}) {
    if (descriptor.presentation.is_finite())
        return minimal_generators(descriptor.presentation.generators(), limits);
    std::vector<PosRational> window = truncate(descriptor.presentation, N);
    if (!descriptor.flags.atomic.certified_true())
        window = minimal_generators(std::move(window), limits);
    return window;
}

/// Returns the resolved flags, additionally sanity-checking the certified
/// metadata of a family against its truncation at check_level. A mismatch
/// throws consistency_error (it would mean the metadata table is wrong).
inline MonoidFlags classify(const MonoidDescriptor& descriptor,
                            std::uint32_t check_level,
                            const SearchLimits& limits = {}) {
    if (check_level == 0)
        throw precondition_error("classify: check level must be positive");
    if (descriptor.presentation.is_finite())
        return descriptor.flags;

    const FamilySpec& spec = descriptor.presentation.family_spec();
    MonoidFlags flags = descriptor.flags;
    std::vector<PosRational> window = truncate(descriptor.presentation, check_level);

    std::set<PosRational, NumDenLess> distinct(window.begin(), window.end());
    if (distinct.size() != window.size())
        throw consistency_error("classify: family terms are not pairwise distinct");
    for (const auto& t : window)
        if (t.is_zero())
            throw consistency_error("classify: family produced a zero term");

    if (auto upper = detail::family_upper_bound(spec); upper && flags.bounded.certified_true())
        for (const auto& t : window)
            if (t > *upper)
                throw consistency_error("classify: term exceeds the certified bound");
    if (auto lower = detail::family_lower_bound(spec);
        lower && flags.zero_limit_point.certified_false())
        for (const auto& t : window)
            if (t < *lower)
                throw consistency_error("classify: term below the certified lower bound");

    if (flags.primary.certified_true() &&
        !detail::denominators_pairwise_distinct_primes(window))
        throw consistency_error("classify: denominators are not pairwise distinct primes");

    if (spec.kind == Family::unit_fraction_primes) {
        for (const auto& t : window)
            if (t.num() != 1)
                throw consistency_error("classify: expected every numerator to be 1");
    }
    bool numerators_should_be_distinct =
        flags.has_stable_atom.certified_false() &&
        !(spec.kind == Family::geometric && spec.ratio.num() == 1);
    if (numerators_should_be_distinct) {
        std::set<Integer> nums;
        for (const auto& t : window)
            if (!nums.insert(t.num()).second)
                throw consistency_error("classify: repeated numerator contradicts "
                                        "the no-stable-atom certification");
    }

    if (spec.kind == Family::constructed) {
        // conditions (1) and (2) are cheap inspections of the window
        Integer running_max = 0;
        for (std::size_t i = 0; i < window.size(); ++i) {
            if (window[i].den() % 2 == 0 || !is_prime(window[i].den()))
                throw consistency_error("classify: constructed denominator not an odd prime");
            if (window[i].den() > running_max) running_max = window[i].den();
            if (i % 2 == 0 && window[i].den() != running_max)
                throw consistency_error("classify: constructed max-denominator check failed");
        }
    }

    // Unresolved flags get a window observation: every term remained
    // irreducible within the window.
    if (flags.atomic.kind() == TriState::Kind::unknown) {
        bool window_minimal =
            minimal_generators(window, limits).size() == window.size();
        flags.atomic = TriState::checked_up_to(check_level, window_minimal);
    }
    return flags;
}

struct StableAtomReport {
    std::map<Integer, std::vector<PosRational>> classes; // numerator -> atoms
    TriState stable = TriState::unknown();
    std::optional<Integer> stable_numerator;
    std::size_t largest_class = 0;
};

/// Groups atoms by numerator. Builtin families answer with their certified
/// verdict; plain finite lists are never stable (the class would have to be
/// infinite).
inline StableAtomReport detect_stable_atoms(const std::vector<PosRational>& atoms,
                                            std::optional<FamilySpec> family = {}) {
    StableAtomReport report;
    for (const auto& a : atoms) report.classes[a.num()].push_back(a);
    for (const auto& [num, members] : report.classes)
        report.largest_class = std::max(report.largest_class, members.size());
    if (family && family->kind == Family::unit_fraction_primes) {
        report.stable = TriState::certified(true);
        report.stable_numerator = Integer(1);
    } else {
        report.stable = TriState::certified(false);
    }
    return report;
}

} // namespace puiseux
