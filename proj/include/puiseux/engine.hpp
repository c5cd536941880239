#pragma once

/// Factorization engine over a finite list of atoms (positive rationals).
///
/// Everything reduces to an exact integer knapsack: clearing denominators
/// with D = lcm of all denominators turns sum(c_i * a_i) = x into
/// sum(c_i * g_i) = X over nonnegative integers. Enumeration is a DFS over
/// atoms sorted by decreasing scaled value with two prunes:
///   * residual stays nonnegative,
///   * the residual must be divisible by gcd of the remaining scaled values
///     (solved as a congruence, so each level only steps through the residue
///     class of feasible exponents).
/// Sets of lengths are alternatively computed by a DP over scaled values
/// 0..X holding a bitset of achievable lengths per value; the DP is bounded
/// by limits.max_scaled_target and never silently truncates.
///
/// Resource budgets are hard errors: a partial answer is never returned.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <memory>
#include <numeric>
#include <set>
#include <utility>
#include <vector>

#include "puiseux/errors.hpp"
#include "puiseux/rational.hpp"

namespace puiseux {

struct SearchLimits {
    std::uint64_t max_nodes = 10'000'000;
    std::uint64_t max_factorizations = 1'000'000;
    Integer max_scaled_target = 1'000'000;
};

/// An exponent vector over a fixed, ordered ambient atom list.
class Factorization {
public:
    Factorization(std::shared_ptr<const std::vector<PosRational>> atoms,
                  std::vector<std::uint64_t> exponents)
        : atoms_(std::move(atoms)), exponents_(std::move(exponents)) {
        if (!atoms_ || atoms_->size() != exponents_.size())
            throw precondition_error("Factorization: exponent/atom length mismatch");
    }

    Factorization(std::vector<PosRational> atoms, std::vector<std::uint64_t> exponents)
        : Factorization(std::make_shared<const std::vector<PosRational>>(std::move(atoms)),
                        std::move(exponents)) {}

    const std::vector<PosRational>& atoms() const noexcept { return *atoms_; }
    const std::shared_ptr<const std::vector<PosRational>>& shared_atoms() const noexcept {
        return atoms_;
    }
    const std::vector<std::uint64_t>& exponents() const noexcept { return exponents_; }

    std::uint64_t length() const {
        std::uint64_t n = 0;
        for (std::uint64_t e : exponents_) n += e;
        return n;
    }

    /// phi(z): the exact value of the represented sum.
    PosRational value() const {
        PosRational sum;
        for (std::size_t i = 0; i < exponents_.size(); ++i)
            if (exponents_[i] != 0)
                sum += scalar_mul(Integer(exponents_[i]), (*atoms_)[i]);
        return sum;
    }

    bool operator==(const Factorization& rhs) const {
        return *atoms_ == *rhs.atoms_ && exponents_ == rhs.exponents_;
    }
    bool operator!=(const Factorization& rhs) const { return !(*this == rhs); }

private:
    std::shared_ptr<const std::vector<PosRational>> atoms_;
    std::vector<std::uint64_t> exponents_;
};

inline PosRational evaluate(const Factorization& z) { return z.value(); }

struct LengthSet {
    std::vector<std::uint64_t> lengths; // sorted ascending, no duplicates
    bool exact = true;

    bool empty() const noexcept { return lengths.empty(); }
    std::uint64_t min() const { return lengths.front(); }
    std::uint64_t max() const { return lengths.back(); }
    bool contains(std::uint64_t l) const {
        return std::binary_search(lengths.begin(), lengths.end(), l);
    }
};

/// Two factorizations of one element; proves {|z1|, |z2|} subset of L(x),
/// hence |z2| lies in the union of sets of lengths containing |z1|.
struct WitnessCertificate {
    PosRational x;
    Factorization z1;
    Factorization z2;

    bool verify() const { return z1.value() == x && z2.value() == x; }
};

struct ScaledKnapsack {
    std::vector<Integer> coefficients; // scaled atoms, input order
    Integer target;                    // X = x * D
    Integer common_denominator;        // D
};

namespace detail {

inline void validate_atoms(const std::vector<PosRational>& atoms) {
    if (atoms.empty())
        throw precondition_error("atom list must be nonempty");
    std::set<PosRational, NumDenLess> seen;
    for (const auto& a : atoms) {
        if (a.is_zero())
            throw precondition_error("atoms must be strictly positive");
        if (!seen.insert(a).second)
            throw precondition_error("atoms must be pairwise distinct");
    }
}

struct ScaledAtomSystem {
    std::vector<std::size_t> order; // order[i] = original index, g decreasing
    std::vector<Integer> g;         // scaled values in sorted order
    std::vector<Integer> suffix_gcd;
    Integer common_den; // lcm of atom denominators
};

inline ScaledAtomSystem build_scaled_system(const std::vector<PosRational>& atoms) {
    using boost::multiprecision::gcd;
    ScaledAtomSystem sys;
    sys.common_den = den_lcm(atoms);
    std::vector<Integer> g_orig(atoms.size());
    for (std::size_t i = 0; i < atoms.size(); ++i)
        g_orig[i] = atoms[i].num() * (sys.common_den / atoms[i].den());
    sys.order.resize(atoms.size());
    std::iota(sys.order.begin(), sys.order.end(), std::size_t{0});
    std::sort(sys.order.begin(), sys.order.end(),
              [&](std::size_t a, std::size_t b) { return g_orig[a] > g_orig[b]; });
    sys.g.reserve(atoms.size());
    for (std::size_t idx : sys.order) sys.g.push_back(g_orig[idx]);
    sys.suffix_gcd.assign(atoms.size() + 1, Integer(0));
    for (std::size_t i = atoms.size(); i-- > 0;)
        sys.suffix_gcd[i] = gcd(sys.g[i], sys.suffix_gcd[i + 1]);
    return sys;
}

/// Scales the target against the system. Returns false when x cannot lie in
/// the monoid for denominator reasons (d(x) does not divide lcm of atom
/// denominators).
inline bool scale_target(const ScaledAtomSystem& sys, const PosRational& x, Integer& out) {
    if (sys.common_den % x.den() != 0) return false;
    out = x.num() * (sys.common_den / x.den());
    return true;
}

inline Integer mod_inverse(Integer a, const Integer& m) {
    Integer t = 0, new_t = 1;
    Integer r = m, new_r = std::move(a);
    while (new_r != 0) {
        Integer q = r / new_r;
        t -= q * new_t;
        std::swap(t, new_t);
        r -= q * new_r;
        std::swap(r, new_r);
    }
    if (r != 1)
        throw consistency_error("mod_inverse: arguments not coprime");
    if (t < 0) t += m;
    return t;
}

inline std::uint64_t to_exponent(const Integer& c) {
    if (c > std::numeric_limits<std::uint64_t>::max())
        throw resource_limit_error("factorization exponent exceeds 64 bits");
    return c.convert_to<std::uint64_t>();
}

/// DFS core. Visitor receives exponents in sorted (decreasing-g) order and
/// returns false to stop the whole search early.
template <typename Visitor>
bool knapsack_dfs(const ScaledAtomSystem& sys, const SearchLimits& limits,
                  std::uint64_t& nodes, std::size_t level, const Integer& residual,
                  std::vector<std::uint64_t>& expo, Visitor&& visit) {
    using boost::multiprecision::gcd;
    const std::size_t m = sys.g.size();
    if (++nodes > limits.max_nodes)
        throw resource_limit_error("factorization search exceeded max_nodes");
    if (level + 1 == m) {
        const Integer& gi = sys.g[level];
        if (residual % gi == 0) {
            expo[level] = to_exponent(residual / gi);
            bool keep_going = visit(const_cast<const std::vector<std::uint64_t>&>(expo));
            expo[level] = 0;
            return keep_going;
        }
        return true;
    }
    const Integer& gi = sys.g[level];
    const Integer& rest_gcd = sys.suffix_gcd[level + 1];
    // Feasible exponents satisfy c * gi == residual (mod rest_gcd).
    Integer t = gcd(gi, rest_gcd);
    if (residual % t != 0) return true;
    Integer modulus = rest_gcd / t;
    Integer c = 0;
    if (modulus > 1) {
        Integer a = (gi / t) % modulus;
        Integer rhs = (residual / t) % modulus;
        c = rhs * mod_inverse(std::move(a), modulus) % modulus;
    } else {
        modulus = 1;
    }
    for (Integer spent = c * gi; spent <= residual; c += modulus, spent = c * gi) {
        if (++nodes > limits.max_nodes)
            throw resource_limit_error("factorization search exceeded max_nodes");
        expo[level] = to_exponent(c);
        if (!knapsack_dfs(sys, limits, nodes, level + 1, residual - spent, expo, visit)) {
            expo[level] = 0;
            return false;
        }
    }
    expo[level] = 0;
    return true;
}

/// Runs the DFS over (atoms, x); visitor sees exponents in original atom
/// order. Returns false if the visitor stopped the search.
template <typename Visitor>
bool for_each_factorization(const std::vector<PosRational>& atoms, const PosRational& x,
                            const SearchLimits& limits, Visitor&& visit) {
    validate_atoms(atoms);
    std::vector<std::uint64_t> zero(atoms.size(), 0);
    if (x.is_zero())
        return visit(const_cast<const std::vector<std::uint64_t>&>(zero));
    ScaledAtomSystem sys = build_scaled_system(atoms);
    Integer target;
    if (!scale_target(sys, x, target)) return true;
    std::vector<std::uint64_t> expo(atoms.size(), 0);
    std::vector<std::uint64_t> original(atoms.size(), 0);
    std::uint64_t nodes = 0;
    return knapsack_dfs(sys, limits, nodes, 0, target, expo,
                        [&](const std::vector<std::uint64_t>& sorted_expo) {
                            for (std::size_t i = 0; i < sys.order.size(); ++i)
                                original[sys.order[i]] = sorted_expo[i];
                            return visit(const_cast<const std::vector<std::uint64_t>&>(original));
                        });
}

constexpr std::uint64_t kMaxDpBits = std::uint64_t{1} << 31;

struct DpPlan {
    std::uint64_t target = 0;
    std::uint64_t width = 0;  // bitset width: max length + 1
    std::uint64_t stride = 0; // words per value row
    std::vector<std::uint64_t> coins;
    bool feasible = false;
};

inline DpPlan plan_length_dp(const ScaledAtomSystem& sys, const Integer& target,
                             const SearchLimits& limits) {
    DpPlan plan;
    if (target > limits.max_scaled_target) return plan;
    plan.target = target.convert_to<std::uint64_t>();
    Integer gmin = sys.g.back();
    Integer width = target / gmin + 1;
    Integer bits = (Integer(plan.target) + 1) * width;
    if (bits > kMaxDpBits) return plan;
    plan.width = width.convert_to<std::uint64_t>();
    plan.stride = (plan.width + 63) / 64;
    plan.coins.reserve(sys.g.size());
    for (const Integer& g : sys.g) plan.coins.push_back(g.convert_to<std::uint64_t>());
    plan.feasible = true;
    return plan;
}

/// value -> bitset-of-lengths DP; returns the achievable lengths of the
/// scaled target.
inline std::vector<std::uint64_t> run_length_dp(const DpPlan& plan) {
    const std::uint64_t X = plan.target;
    const std::uint64_t stride = plan.stride;
    std::vector<std::uint64_t> dp((X + 1) * stride, 0);
    dp[0] = 1; // value 0 reachable with length 0
    for (std::uint64_t v = 1; v <= X; ++v) {
        std::uint64_t* dst = dp.data() + v * stride;
        for (std::uint64_t coin : plan.coins) {
            if (coin > v) continue;
            const std::uint64_t* src = dp.data() + (v - coin) * stride;
            std::uint64_t carry = 0;
            for (std::uint64_t w = 0; w < stride; ++w) {
                std::uint64_t shifted = (src[w] << 1) | carry;
                carry = src[w] >> 63;
                dst[w] |= shifted;
            }
        }
    }
    std::vector<std::uint64_t> lengths;
    const std::uint64_t* row = dp.data() + X * stride;
    for (std::uint64_t w = 0; w < stride; ++w) {
        std::uint64_t word = row[w];
        while (word) {
            unsigned bit = static_cast<unsigned>(std::countr_zero(word));
            std::uint64_t l = w * 64 + bit;
            if (l < plan.width) lengths.push_back(l);
            word &= word - 1;
        }
    }
    return lengths;
}

/// Length set by whichever exact route is feasible: the value/length DP when
/// the scaled target is small enough, the congruence-pruned DFS otherwise.
inline std::vector<std::uint64_t> lengths_with_system(const ScaledAtomSystem& sys,
                                                      const PosRational& x,
                                                      const SearchLimits& limits) {
    if (x.is_zero()) return {0};
    Integer target;
    if (!scale_target(sys, x, target)) return {};
    DpPlan plan = plan_length_dp(sys, target, limits);
    if (plan.feasible) return run_length_dp(plan);
    std::set<std::uint64_t> found;
    std::vector<std::uint64_t> expo(sys.g.size(), 0);
    std::uint64_t nodes = 0;
    knapsack_dfs(sys, limits, nodes, 0, target, expo,
                 [&](const std::vector<std::uint64_t>& e) {
                     std::uint64_t l = 0;
                     for (std::uint64_t c : e) l += c;
                     found.insert(l);
                     return true;
                 });
    return {found.begin(), found.end()};
}

inline std::vector<std::uint64_t> lengths_flexible(const std::vector<PosRational>& atoms,
                                                   const PosRational& x,
                                                   const SearchLimits& limits) {
    validate_atoms(atoms);
    ScaledAtomSystem sys = build_scaled_system(atoms);
    return lengths_with_system(sys, x, limits);
}

} // namespace detail

/// Clears denominators: with D = lcm of all denominators (including d(x)),
/// sum(c_i * a_i) = x over nonnegative integers iff sum(c_i * g_i) = X.
inline ScaledKnapsack scale_to_integers(const std::vector<PosRational>& atoms,
                                        const PosRational& x,
                                        const SearchLimits& limits = {}) {
    using boost::multiprecision::gcd;
    if (atoms.empty())
        throw precondition_error("scale_to_integers: atom list must be nonempty");
    for (const auto& a : atoms)
        if (a.is_zero())
            throw precondition_error("scale_to_integers: atoms must be positive");
    ScaledKnapsack out;
    Integer d = den_lcm(atoms);
    d = d / gcd(d, x.den()) * x.den();
    out.common_denominator = d;
    out.target = x.num() * (d / x.den());
    if (out.target > limits.max_scaled_target)
        throw resource_limit_error("scaled target exceeds max_scaled_target");
    out.coefficients.reserve(atoms.size());
    for (const auto& a : atoms)
        out.coefficients.push_back(a.num() * (d / a.den()));
    return out;
}

/// Z(x) over <atoms>: exactly the exponent vectors c with sum(c_i a_i) = x.
/// Result order is lexicographic over exponents of atoms sorted by
/// decreasing value. Z(0) = { the empty factorization }.
inline std::vector<Factorization> enumerate_factorizations(
    const std::vector<PosRational>& atoms, const PosRational& x,
    const SearchLimits& limits = {}) {
    auto shared = std::make_shared<const std::vector<PosRational>>(atoms);
    std::vector<Factorization> out;
    detail::for_each_factorization(atoms, x, limits,
                                   [&](const std::vector<std::uint64_t>& expo) {
                                       if (out.size() >= limits.max_factorizations)
                                           throw resource_limit_error(
                                               "factorization count exceeded "
                                               "max_factorizations");
                                       out.emplace_back(shared, expo);
                                       return true;
                                   });
    return out;
}

/// L(x) = { |z| : z in Z(x) }, computed by the value -> length-bitset DP.
/// Empty iff x is not a member of <atoms>.
inline LengthSet length_set(const std::vector<PosRational>& atoms, const PosRational& x,
                            const SearchLimits& limits = {}) {
    detail::validate_atoms(atoms);
    LengthSet out;
    if (x.is_zero()) {
        out.lengths = {0};
        return out;
    }
    detail::ScaledAtomSystem sys = detail::build_scaled_system(atoms);
    Integer target;
    if (!detail::scale_target(sys, x, target)) return out;
    if (target > limits.max_scaled_target)
        throw resource_limit_error("length_set: scaled target exceeds max_scaled_target");
    detail::DpPlan plan = detail::plan_length_dp(sys, target, limits);
    if (!plan.feasible)
        throw resource_limit_error("length_set: DP table would exceed the memory budget");
    out.lengths = detail::run_length_dp(plan);
    return out;
}

/// L(x) by whichever exact route fits: the DP of length_set when the scaled
/// target is within budget, the congruence-pruned search otherwise. Use this
/// when the truncation has large denominators (the DP table is per scaled
/// value, so primary families blow past max_scaled_target quickly).
inline LengthSet element_lengths(const std::vector<PosRational>& atoms,
                                 const PosRational& x, const SearchLimits& limits = {}) {
    LengthSet out;
    out.lengths = detail::lengths_flexible(atoms, x, limits);
    return out;
}

/// Membership of x in <atoms>; reachability DP when the scaled target is
/// small, early-exit DFS otherwise.
inline bool is_member(const std::vector<PosRational>& atoms, const PosRational& x,
                      const SearchLimits& limits = {}) {
    detail::validate_atoms(atoms);
    if (x.is_zero()) return true;
    detail::ScaledAtomSystem sys = detail::build_scaled_system(atoms);
    Integer target;
    if (!detail::scale_target(sys, x, target)) return false;
    if (target <= limits.max_scaled_target) {
        std::uint64_t X = target.convert_to<std::uint64_t>();
        std::vector<std::uint64_t> coins;
        coins.reserve(sys.g.size());
        for (const Integer& g : sys.g) coins.push_back(g.convert_to<std::uint64_t>());
        std::vector<bool> reach(X + 1, false);
        reach[0] = true;
        for (std::uint64_t v = 1; v <= X; ++v)
            for (std::uint64_t coin : coins)
                if (coin <= v && reach[v - coin]) {
                    reach[v] = true;
                    break;
                }
        return reach[X];
    }
    bool found = false;
    std::vector<std::uint64_t> expo(atoms.size(), 0);
    std::uint64_t nodes = 0;
    detail::knapsack_dfs(sys, limits, nodes, 0, target, expo,
                         [&](const std::vector<std::uint64_t>&) {
                             found = true;
                             return false;
                         });
    return found;
}

/// rho(x) = max L(x) / min L(x) as an exact rational.
inline PosRational element_elasticity(const std::vector<PosRational>& atoms,
                                      const PosRational& x,
                                      const SearchLimits& limits = {}) {
    if (x.is_zero())
        throw precondition_error("element_elasticity: undefined for the zero element");
    std::vector<std::uint64_t> lengths = detail::lengths_flexible(atoms, x, limits);
    if (lengths.empty())
        throw precondition_error("element_elasticity: x is not a member of <atoms>");
    return PosRational(Integer(lengths.back()), Integer(lengths.front()));
}

/// Replaces two copies of (2/3)^position by three copies of (2/3)^(position+1);
/// the value is preserved exactly and the length grows by one. The ambient
/// atom list must be the geometric prefix (2/3)^1, (2/3)^2, ...
inline Factorization rewrite_geometric(const Factorization& z, std::size_t position) {
    static const PosRational ratio(2, 3);
    const auto& atoms = z.atoms();
    if (atoms.empty() || atoms.front() != ratio)
        throw precondition_error("rewrite_geometric: ambient atoms must start at 2/3");
    for (std::size_t i = 1; i < atoms.size(); ++i)
        if (atoms[i] != atoms[i - 1] * ratio)
            throw precondition_error(
                "rewrite_geometric: ambient atoms must be successive powers of 2/3");
    if (position == 0 || position >= atoms.size())
        throw precondition_error(
            "rewrite_geometric: ambient atom list too short for this position");
    std::vector<std::uint64_t> expo = z.exponents();
    if (expo[position - 1] < 2)
        throw precondition_error("rewrite_geometric: needs at least two copies at position");
    expo[position - 1] -= 2;
    expo[position] += 3;
    return Factorization(z.shared_atoms(), std::move(expo));
}

} // namespace puiseux
