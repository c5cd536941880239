#pragma once

/// Monoid-level invariants: unions of sets of lengths U_k, local
/// k-elasticities, elasticity of numerical semigroups, upper bounds for
/// bounded presentations, and certified infinite-elasticity witness streams.
///
/// Over a truncation, the elements with a length-k factorization are exactly
/// the sums of k truncated atoms, so truncated U_k is computed by
/// enumerating those sums (deduplicated) and unioning their length sets.
/// Every result carries its status: Exact for a finite presentation,
/// UnderApproxAt(N) for a family window. The tool never claims more than it
/// can prove: families get certified-infinite verdicts only where a witness
/// stream exists, and finite observations are reported as lower bounds.

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <variant>
#include <vector>

#include "puiseux/constructions.hpp"
#include "puiseux/engine.hpp"
#include "puiseux/errors.hpp"
#include "puiseux/presentation.hpp"
#include "puiseux/primes.hpp"
#include "puiseux/rational.hpp"

namespace puiseux {

enum class UkStatus { exact, under_approx };

struct UnionOfLengths {
    std::uint64_t k = 0;
    std::vector<std::uint64_t> lengths; // sorted ascending
    UkStatus status = UkStatus::exact;
    std::uint32_t truncation = 0;       // meaningful when under_approx
    std::optional<PosRational> bound;   // strict upper bound kQ/q when certified

    bool contains(std::uint64_t l) const {
        return std::binary_search(lengths.begin(), lengths.end(), l);
    }
    std::uint64_t max() const { return lengths.back(); }
};

namespace detail {

inline Integer binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    Integer result = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        result *= Integer(n - k + i);
        result /= Integer(i);
    }
    return result;
}

/// All distinct sums of exactly k atoms (with repetition).
inline std::set<PosRational, NumDenLess> sums_of_k_atoms(
    const std::vector<PosRational>& atoms, std::uint64_t k, const SearchLimits& limits) {
    if (binomial(atoms.size() + k - 1, k) > Integer(limits.max_factorizations))
        throw resource_limit_error("too many length-k candidates for the configured limit");
    std::set<PosRational, NumDenLess> sums;
    std::vector<PosRational> stack;
    auto rec = [&](auto&& self, std::size_t start, std::uint64_t left,
                   const PosRational& sum) -> void {
        if (left == 0) {
            sums.insert(sum);
            return;
        }
        for (std::size_t i = start; i < atoms.size(); ++i)
            self(self, i, left - 1, sum + atoms[i]);
    };
    rec(rec, 0, k, PosRational());
    return sums;
}

} // namespace detail

/// Truncated U_k: the union of L(x) over all x having a factorization of
/// length k within the truncation.
inline UnionOfLengths union_of_lengths_truncated(const MonoidDescriptor& descriptor,
                                                 std::uint64_t k, std::uint32_t N,
                                                 const SearchLimits& limits = {}) {
    if (k == 0)
        throw precondition_error("union_of_lengths: k starts at 1");
    std::vector<PosRational> atoms = atom_list(descriptor, N, limits);
    detail::ScaledAtomSystem sys = detail::build_scaled_system(atoms);
    std::set<std::uint64_t> acc;
    for (const PosRational& x : detail::sums_of_k_atoms(atoms, k, limits))
        for (std::uint64_t l : detail::lengths_with_system(sys, x, limits))
            acc.insert(l);
    UnionOfLengths out;
    out.k = k;
    out.lengths.assign(acc.begin(), acc.end());
    if (descriptor.presentation.is_finite()) {
        out.status = UkStatus::exact;
    } else {
        out.status = UkStatus::under_approx;
        out.truncation = N;
    }
    if (!descriptor.presentation.is_finite() &&
        descriptor.presentation.family_spec().kind == Family::prime_complement)
        out.bound = PosRational(Integer(2 * k)); // atoms lie in [1/2, 1)
    return out;
}

/// Exact U_k for the prime-complement family, without truncation error.
///
/// Every atom is 1 - 1/p, so an element x pins each exponent modulo its
/// prime: two factorizations of x differ by trading p copies of (p-1)/p for
/// the integer p - 1. Splitting off the forced residue part leaves an
/// integer q >= 0 whose length sets are
///     L(q) = { q + m : q partitions into m parts drawn from {p - 1} },
/// and x contributes to U_k exactly when k = R + l1 with R the residue
/// length and l1 in L(q); then L(x) = (k - l1) + L(q). Only primes with
/// p - 1 <= q < k can occur, so the computation below is complete. This
/// reduction is validated against the brute-force truncated route in the
/// test suite before anything trusts it.
inline UnionOfLengths exact_uk_prime_complement(std::uint64_t k,
                                                const SearchLimits& limits = {}) {
    (void)limits; // trivial at supported scales
    if (k == 0)
        throw precondition_error("exact_uk_prime_complement: k starts at 1");
    std::set<std::uint64_t> acc;
    for (std::uint64_t q = 0; q < k; ++q) {
        // achievable part-counts for partitions of q into parts p - 1
        std::vector<std::uint64_t> parts;
        for (std::size_t n = 1;; ++n) {
            std::uint64_t p = nth_prime(n);
            if (p - 1 > q || q == 0) break;
            parts.push_back(p - 1);
        }
        std::vector<std::set<std::uint64_t>> counts(q + 1);
        counts[0].insert(0);
        for (std::uint64_t v = 1; v <= q; ++v)
            for (std::uint64_t w : parts)
                if (w <= v)
                    for (std::uint64_t m : counts[v - w]) counts[v].insert(m + 1);
        std::set<std::uint64_t> lq;
        for (std::uint64_t m : counts[q]) lq.insert(q + m);
        for (std::uint64_t l1 : lq) {
            if (l1 > k) continue;
            for (std::uint64_t l2 : lq) acc.insert(l2 + (k - l1));
        }
    }
    UnionOfLengths out;
    out.k = k;
    out.lengths.assign(acc.begin(), acc.end());
    out.status = UkStatus::exact;
    out.bound = PosRational(Integer(2 * k));
    return out;
}

/// Strict upper bound kQ/q for U_k of a monoid whose atoms lie strictly
/// between q_low and Q_high.
inline PosRational prop33_bound(const PosRational& q_low, const PosRational& Q_high,
                                std::uint64_t k) {
    if (q_low.is_zero())
        throw precondition_error("prop33_bound: lower bound must be positive");
    if (Q_high < q_low)
        throw precondition_error("prop33_bound: bounds out of order");
    if (k == 0)
        throw precondition_error("prop33_bound: k starts at 1");
    return PosRational(Integer(k) * Q_high.num() * q_low.den(),
                       Q_high.den() * q_low.num());
}

/// Certificates from a certified stable atom class: with every numerator
/// equal to m, d(a_1) * a_1 = m = d(a_j) * a_j, so each later atom hands
/// U_{d(a_1)} the length d(a_j). Only unit_fraction_primes carries such a
/// class (m = 1, d(a_1) = 2).
inline std::vector<WitnessCertificate> stable_atom_witnesses(const FamilySpec& family,
                                                             std::size_t count) {
    if (family.kind != Family::unit_fraction_primes)
        throw precondition_error("stable_atom_witnesses: family has no certified "
                                 "stable atom class");
    if (count == 0)
        throw precondition_error("stable_atom_witnesses: count starts at 1");
    auto pres = Presentation::family(FamilySpec::primes(Family::unit_fraction_primes));
    auto atoms = std::make_shared<const std::vector<PosRational>>(
        truncate(pres, static_cast<std::uint32_t>(count + 1)));
    std::vector<WitnessCertificate> certs;
    certs.reserve(count);
    for (std::size_t j = 2; j <= count + 1; ++j) {
        std::vector<std::uint64_t> e1(atoms->size(), 0);
        e1[0] = 2; // 2 * (1/2) = 1
        std::vector<std::uint64_t> e2(atoms->size(), 0);
        e2[j - 1] = (*atoms)[j - 1].den().convert_to<std::uint64_t>(); // p_j * (1/p_j)
        WitnessCertificate cert{PosRational(1), Factorization(atoms, std::move(e1)),
                                Factorization(atoms, std::move(e2))};
        if (!cert.verify())
            throw consistency_error("stable_atom_witnesses: certificate failed to verify");
        certs.push_back(std::move(cert));
    }
    return certs;
}

/// Chain of T+1 factorizations of k*(2/3), lengths exactly k..k+T, built by
/// repeatedly trading two copies of (2/3)^n for three of (2/3)^(n+1).
inline std::vector<Factorization> geometric_witness_chain(std::uint64_t k,
                                                          std::uint32_t T) {
    if (k < 2)
        throw precondition_error("geometric_witness_chain: needs k >= 2");
    PosRational ratio(2, 3);
    std::vector<PosRational> ambient;
    ambient.reserve(T + 1);
    PosRational power = ratio;
    for (std::uint32_t n = 0; n <= T; ++n) {
        ambient.push_back(power);
        power = power * ratio;
    }
    auto shared = std::make_shared<const std::vector<PosRational>>(std::move(ambient));
    std::vector<std::uint64_t> expo(shared->size(), 0);
    expo[0] = k;
    std::vector<Factorization> chain;
    chain.emplace_back(shared, std::move(expo));
    for (std::uint32_t t = 1; t <= T; ++t) {
        const auto& e = chain.back().exponents();
        std::size_t pos = 0;
        for (std::size_t i = e.size(); i-- > 0;)
            if (e[i] >= 2) {
                pos = i + 1; // 1-based position of (2/3)^(i+1)
                break;
            }
        chain.push_back(rewrite_geometric(chain.back(), pos));
    }
    return chain;
}

/// Elasticity of the numerical semigroup generated by A: max/min of its
/// minimal generating set. Requires gcd(A) = 1.
inline PosRational numerical_semigroup_elasticity(const std::vector<Integer>& A,
                                                  const SearchLimits& limits = {}) {
    using boost::multiprecision::gcd;
    if (A.empty())
        throw precondition_error("numerical_semigroup_elasticity: empty generator list");
    Integer g = 0;
    for (const Integer& a : A) {
        if (a <= 0)
            throw precondition_error("numerical_semigroup_elasticity: generators "
                                     "must be positive");
        g = gcd(g, a);
    }
    if (g != 1)
        throw precondition_error("numerical_semigroup_elasticity: gcd(A) = " + g.str() +
                                 " != 1, not a numerical semigroup");
    std::set<Integer> distinct(A.begin(), A.end());
    std::vector<PosRational> gens;
    gens.reserve(distinct.size());
    for (const Integer& a : distinct) gens.emplace_back(a);
    std::vector<PosRational> atoms = minimal_generators(std::move(gens), limits);
    return PosRational(atoms.back().num(), atoms.front().num());
}

struct StabilizationReport {
    bool stable = false;
    UnionOfLengths at_low;
    UnionOfLengths at_high;
};

/// Computes truncated U_k at two levels; containment of the shallower in the
/// deeper is asserted unconditionally, equality is reported as stabilization
/// evidence (never as a proof of finiteness).
inline StabilizationReport stabilization_check(const MonoidDescriptor& descriptor,
                                               std::uint64_t k, std::uint32_t n_low,
                                               std::uint32_t n_high,
                                               const SearchLimits& limits = {}) {
    if (n_low >= n_high)
        throw precondition_error("stabilization_check: needs N1 < N2");
    StabilizationReport report;
    report.at_low = union_of_lengths_truncated(descriptor, k, n_low, limits);
    report.at_high = union_of_lengths_truncated(descriptor, k, n_high, limits);
    for (std::uint64_t l : report.at_low.lengths)
        if (!report.at_high.contains(l))
            throw consistency_error("stabilization_check: truncation monotonicity violated");
    report.stable = report.at_low.lengths == report.at_high.lengths;
    return report;
}

/// Lazily evaluated stream of witness certificates with unboundedly growing
/// |z2|; draw until the evidence is as strong as desired.
class WitnessStream {
public:
    explicit WitnessStream(std::function<WitnessCertificate(std::uint64_t)> generator)
        : generator_(std::move(generator)) {}

    WitnessCertificate next() { return generator_(index_++); }
    WitnessCertificate at(std::uint64_t i) const { return generator_(i); }

private:
    std::function<WitnessCertificate(std::uint64_t)> generator_;
    std::uint64_t index_ = 0;
};

struct FiniteElasticity {
    std::uint64_t value;
};
struct InfiniteElasticity {
    WitnessStream witnesses;
};
struct ElasticityLowerBound {
    std::uint64_t value;
    std::uint32_t truncation;
};

using LocalElasticity =
    std::variant<FiniteElasticity, InfiniteElasticity, ElasticityLowerBound>;

namespace detail {

/// Adds `copies` of the ambient atom at `position` to both sides of a
/// certificate; the element moves by copies * atom and both lengths grow by
/// copies, preserving validity.
inline WitnessCertificate pad_certificate(const WitnessCertificate& cert,
                                          std::size_t position, std::uint64_t copies) {
    if (copies == 0) return cert;
    const PosRational& atom = cert.z1.atoms().at(position);
    auto bump = [&](const Factorization& z) {
        std::vector<std::uint64_t> e = z.exponents();
        e[position] += copies;
        return Factorization(z.shared_atoms(), std::move(e));
    };
    WitnessCertificate padded{cert.x + scalar_mul(Integer(copies), atom), bump(cert.z1),
                              bump(cert.z2)};
    if (!padded.verify())
        throw consistency_error("pad_certificate: padded certificate failed to verify");
    return padded;
}

inline WitnessStream unit_fraction_stream(std::uint64_t k) {
    return WitnessStream([k](std::uint64_t i) {
        auto certs = stable_atom_witnesses(FamilySpec::primes(Family::unit_fraction_primes),
                                           i + 1);
        return pad_certificate(certs.back(), 0, k - 2); // pad with copies of 1/2
    });
}

inline WitnessStream geometric_chain_stream(std::uint64_t k) {
    return WitnessStream([k](std::uint64_t i) {
        auto chain = geometric_witness_chain(k, static_cast<std::uint32_t>(i + 1));
        WitnessCertificate cert{chain.front().value(), chain.front(), chain.back()};
        if (!cert.verify())
            throw consistency_error("geometric witness failed to verify");
        return cert;
    });
}

inline WitnessStream constructed_stream(std::uint32_t j, std::uint64_t k) {
    auto state = std::make_shared<ConstructionState>(make_construction(j));
    return WitnessStream([state, k](std::uint64_t i) {
        while (state->steps() < i + 1) *state = extend(*state);
        // generator 0 is 1/p; pad both sides with k - 2 copies of it
        return pad_certificate(u2_witness(*state, i + 1), 0, k - 2);
    });
}

} // namespace detail

/// rho_k over the described monoid: an exact value for finite presentations,
/// a certified-infinite verdict with a witness stream where one applies, and
/// otherwise only the truncated observation as a lower bound.
inline LocalElasticity local_elasticity(const MonoidDescriptor& descriptor,
                                        std::uint64_t k, std::uint32_t N,
                                        const SearchLimits& limits = {}) {
    if (k == 0)
        throw precondition_error("local_elasticity: k starts at 1");
    if (k == 1 && descriptor.flags.atomic.certified_true())
        return FiniteElasticity{1}; // atoms admit only their trivial factorization
    if (descriptor.presentation.is_finite()) {
        UnionOfLengths uk = union_of_lengths_truncated(descriptor, k, N, limits);
        return FiniteElasticity{uk.max()};
    }
    const FamilySpec& spec = descriptor.presentation.family_spec();
    if (k >= 2) {
        if (spec.kind == Family::unit_fraction_primes)
            return InfiniteElasticity{detail::unit_fraction_stream(k)};
        if (spec.kind == Family::geometric && spec.ratio == PosRational(2, 3))
            return InfiniteElasticity{detail::geometric_chain_stream(k)};
        if (spec.kind == Family::constructed)
            return InfiniteElasticity{detail::constructed_stream(spec.index, k)};
    }
    UnionOfLengths uk = union_of_lengths_truncated(descriptor, k, N, limits);
    return ElasticityLowerBound{uk.max(), N};
}

} // namespace puiseux
