#pragma once

/// Inductive construction of the monoids M_j from disjoint odd-prime streams.
///
/// The streams partition the odd primes 2-adically: writing o_1 < o_2 < ...
/// for the odd primes, stream j receives o_i exactly when the largest power
/// of two dividing i is 2^(j-1). Each construction starts from A_1 = {1/p}
/// with p the first prime of its stream and grows by two generators per
/// step: with a = max A_n and q the smallest admissible stream prime
/// (q > max denominator, q not dividing n(a)),
///     b1 = n(a) * floor(q/2) / q,   b2 = n(a) * (q - floor(q/2)) / q,
/// so b1 + b2 = n(a) and b2 > b1 > a. Each step therefore hands U_2 a pair
/// of factorizations of n(a) with lengths 2 and d(a).

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "puiseux/engine.hpp"
#include "puiseux/errors.hpp"
#include "puiseux/primes.hpp"
#include "puiseux/rational.hpp"

namespace puiseux {

/// t-th member (1-based) of the j-th disjoint odd-prime stream.
inline std::uint64_t prime_partition_member(std::uint32_t j, std::uint64_t t,
                                            std::uint64_t cap = default_prime_cap()) {
    if (j == 0 || t == 0)
        throw precondition_error("prime_partition_member: indices start at 1");
    // odd-prime index i = (2t - 1) * 2^(j-1); o_i is prime number i+1
    std::uint64_t odd_index = (2 * t - 1) << (j - 1);
    return nth_prime(odd_index + 1, cap);
}

/// Stateful view of one stream S_j.
class PrimePartitionStream {
public:
    explicit PrimePartitionStream(std::uint32_t j,
                                  std::uint64_t cap = default_prime_cap())
        : j_(j), cap_(cap) {
        if (j == 0)
            throw precondition_error("prime_partition: stream index starts at 1");
    }

    std::uint64_t next() { return prime_partition_member(j_, ++count_, cap_); }

    std::uint32_t stream_index() const noexcept { return j_; }

private:
    std::uint32_t j_;
    std::uint64_t cap_;
    std::uint64_t count_ = 0;
};

inline PrimePartitionStream prime_partition(std::uint32_t j) {
    return PrimePartitionStream(j);
}

struct ExtensionRecord {
    PosRational base_atom; // a = max A_n when the step ran
    Integer q;
    PosRational b1;
    PosRational b2;
};

/// Immutable construction state; extend() returns a new value.
class ConstructionState {
public:
    explicit ConstructionState(std::uint32_t j,
                               std::uint64_t cap = default_prime_cap())
        : j_(j), cap_(cap) {
        if (j == 0)
            throw precondition_error("construction index starts at 1");
        std::uint64_t p = prime_partition_member(j, 1, cap);
        generators_.emplace_back(Integer(1), Integer(p));
    }

    std::uint32_t index() const noexcept { return j_; }
    std::uint64_t prime_cap() const noexcept { return cap_; }
    const std::vector<PosRational>& generators() const noexcept { return generators_; }
    const std::vector<ExtensionRecord>& history() const noexcept { return history_; }
    std::size_t steps() const noexcept { return history_.size(); }

    /// Generators are appended in strictly increasing order, so the maximum
    /// is always the last one.
    const PosRational& max_generator() const { return generators_.back(); }

    Integer max_denominator() const {
        Integer m = 0;
        for (const auto& g : generators_)
            if (g.den() > m) m = g.den();
        return m;
    }

    friend ConstructionState extend_with_prime(const ConstructionState& state,
                                               const Integer& q);

private:
    std::uint32_t j_;
    std::uint64_t cap_;
    std::vector<PosRational> generators_;
    std::vector<ExtensionRecord> history_;
};

inline ConstructionState make_construction(std::uint32_t j,
                                           std::uint64_t cap = default_prime_cap()) {
    return ConstructionState(j, cap);
}

/// One extension step with an explicitly chosen odd prime q. Validates the
/// admissibility conditions and the ordering guarantees.
inline ConstructionState extend_with_prime(const ConstructionState& state,
                                           const Integer& q) {
    const PosRational a = state.max_generator();
    const Integer& n_a = a.num();
    if (q <= state.max_denominator())
        throw precondition_error("extend: q must exceed every current denominator");
    if (q % 2 == 0 || !is_prime(q))
        throw precondition_error("extend: q must be an odd prime");
    if (n_a % q == 0)
        throw precondition_error("extend: q must not divide the top numerator");
    Integer half = q / 2; // floor, q odd
    PosRational b1(n_a * half, q);
    PosRational b2(n_a * (q - half), q);
    if (!(b2 > b1 && b1 > a))
        throw consistency_error("extend: expected b2 > b1 > max generator");
    if (b1 + b2 != PosRational(n_a))
        throw consistency_error("extend: expected b1 + b2 = n(a)");
    ConstructionState next = state;
    next.generators_.push_back(b1);
    next.generators_.push_back(b2);
    next.history_.push_back(ExtensionRecord{a, q, b1, b2});
    return next;
}

/// One extension step with the default prime choice: the smallest member of
/// the construction's stream that is admissible.
inline ConstructionState extend(const ConstructionState& state) {
    const Integer max_den = state.max_denominator();
    const Integer& n_a = state.max_generator().num();
    PrimePartitionStream stream(state.index(), state.prime_cap());
    for (;;) {
        Integer q = stream.next();
        if (q > max_den && n_a % q != 0)
            return extend_with_prime(state, q);
    }
}

struct StepCheck {
    std::size_t step = 0; // 1-based
    Integer q;
    bool numerator_split = false;   // b1 + b2 = n(a)
    bool ordering = false;          // b2 > b1 > previous maximum
    bool b1_outside = false;        // b1 not in the monoid before the step
    bool b2_outside = false;        // b2 not in the monoid extended by b1
};

struct ConditionsReport {
    bool denominators_odd_primes = false;
    bool max_denominator_at_max = false; // d(max A_n) = max d(A_n) at every prefix
    bool minimal_generation = false;
    std::vector<StepCheck> steps;

    bool all_pass() const {
        return denominators_odd_primes && max_denominator_at_max && minimal_generation;
    }
};

/// Re-checks the construction invariants from scratch. Minimal generation is
/// established through engine membership: at each recorded step it suffices
/// that b1 lies outside the previous monoid and b2 outside the previous
/// monoid extended by b1, since both exceed every earlier generator.
/// A failed check throws consistency_error; it indicates a bug.
inline ConditionsReport verify_conditions(const ConstructionState& state,
                                          const SearchLimits& limits = {}) {
    ConditionsReport report;
    const auto& gens = state.generators();

    report.denominators_odd_primes = true;
    for (const auto& g : gens)
        if (g.den() % 2 == 0 || !is_prime(g.den()))
            report.denominators_odd_primes = false;

    report.max_denominator_at_max = true;
    Integer running_max_den = 0;
    for (std::size_t i = 0; i < gens.size(); ++i) {
        if (gens[i].den() > running_max_den) running_max_den = gens[i].den();
        bool prefix_boundary = (i == 0) || (i % 2 == 0); // after A_1 and each step
        if (prefix_boundary && gens[i].den() != running_max_den)
            report.max_denominator_at_max = false;
    }

    report.minimal_generation = true;
    for (std::size_t s = 0; s < state.history().size(); ++s) {
        const ExtensionRecord& rec = state.history()[s];
        StepCheck check;
        check.step = s + 1;
        check.q = rec.q;
        check.numerator_split = (rec.b1 + rec.b2 == PosRational(rec.base_atom.num()));
        std::vector<PosRational> before(gens.begin(), gens.begin() + 1 + 2 * s);
        check.ordering = rec.b2 > rec.b1 && rec.b1 > before.back();
        check.b1_outside = !is_member(before, rec.b1, limits);
        std::vector<PosRational> with_b1 = before;
        with_b1.push_back(rec.b1);
        check.b2_outside = !is_member(with_b1, rec.b2, limits);
        if (!(check.numerator_split && check.ordering && check.b1_outside &&
              check.b2_outside))
            report.minimal_generation = false;
        report.steps.push_back(std::move(check));
    }

    if (!report.all_pass())
        throw consistency_error("construction verification failed at index j=" +
                                std::to_string(state.index()));
    return report;
}

/// The U_2 membership certificate produced by step n: x = n(a_n) factors as
/// b1 + b2 (length 2) and as d(a_n) copies of a_n (length d(a_n)).
inline WitnessCertificate u2_witness(const ConstructionState& state, std::size_t step) {
    if (step == 0 || step > state.history().size())
        throw precondition_error("u2_witness: step index out of range");
    const ExtensionRecord& rec = state.history()[step - 1];
    auto atoms = std::make_shared<const std::vector<PosRational>>(state.generators());
    auto position_of = [&](const PosRational& v) {
        for (std::size_t i = 0; i < atoms->size(); ++i)
            if ((*atoms)[i] == v) return i;
        throw consistency_error("u2_witness: generator not found");
    };
    std::vector<std::uint64_t> e1(atoms->size(), 0);
    e1[position_of(rec.b1)] = 1;
    e1[position_of(rec.b2)] = 1;
    std::vector<std::uint64_t> e2(atoms->size(), 0);
    e2[position_of(rec.base_atom)] = rec.base_atom.den().convert_to<std::uint64_t>();
    WitnessCertificate cert{PosRational(rec.base_atom.num()),
                            Factorization(atoms, std::move(e1)),
                            Factorization(atoms, std::move(e2))};
    if (!cert.verify())
        throw consistency_error("u2_witness: certificate failed to re-verify");
    return cert;
}

struct DisjointnessReport {
    std::uint32_t first = 0;
    std::uint32_t second = 0;
    std::vector<Integer> denominators_first;
    std::vector<Integer> denominators_second;
    bool disjoint = false;
};

/// Structural evidence that M_i and M_j differ: the denominator prime sets
/// of their truncations share no element over the horizon. This is evidence
/// only, not an isomorphism decision.
inline DisjointnessReport distinctness_evidence(std::uint32_t i, std::uint32_t j,
                                                std::uint32_t horizon) {
    if (i == j)
        throw precondition_error("distinctness_evidence: indices must differ");
    if (horizon == 0)
        throw precondition_error("distinctness_evidence: horizon must be positive");
    auto realize = [&](std::uint32_t index) {
        ConstructionState state = make_construction(index);
        while (state.generators().size() < horizon) state = extend(state);
        std::set<Integer> dens;
        for (std::size_t g = 0; g < horizon; ++g)
            dens.insert(state.generators()[g].den());
        return dens;
    };
    std::set<Integer> first = realize(i);
    std::set<Integer> second = realize(j);
    DisjointnessReport report;
    report.first = i;
    report.second = j;
    report.denominators_first.assign(first.begin(), first.end());
    report.denominators_second.assign(second.begin(), second.end());
    report.disjoint = true;
    for (const Integer& d : first)
        if (second.count(d)) report.disjoint = false;
    return report;
}

} // namespace puiseux
