#pragma once

/// Deterministic prime enumeration: p_1 = 2 < p_2 = 3 < ...
///
/// nth_prime is backed by a process-wide sieve cache (mutex-guarded, grown
/// on demand) up to a configurable value cap; asking past the cap raises
/// resource_limit_error. is_prime uses plain trial division and carries no
/// cap. Probabilistic tests are deliberately not used anywhere.

#include <cstdint>
#include <cstdlib>
#include <mutex>
#include <vector>

#include "puiseux/errors.hpp"
#include "puiseux/rational.hpp"

namespace puiseux {

/// Largest prime value the enumeration will produce. Overridable through
/// the PUISEUX_PRIME_CAP environment variable.
inline std::uint64_t default_prime_cap() {
    static const std::uint64_t cap = [] {
        if (const char* env = std::getenv("PUISEUX_PRIME_CAP")) {
            char* end = nullptr;
            unsigned long long v = std::strtoull(env, &end, 10);
            if (end && *end == '\0' && v >= 2)
                return static_cast<std::uint64_t>(v);
        }
        return std::uint64_t{1'000'000};
    }();
    return cap;
}

namespace detail {

class PrimeTable {
public:
    static PrimeTable& instance() {
        static PrimeTable table;
        return table;
    }

    std::uint64_t nth(std::size_t n, std::uint64_t cap) {
        std::lock_guard lock(mutex_);
        while (primes_.size() < n) {
            if (sieved_to_ >= cap)
                throw resource_limit_error(
                    "prime enumeration exceeded the configured cap of " +
                    std::to_string(cap));
            grow(cap);
        }
        if (primes_[n - 1] > cap)
            throw resource_limit_error(
                "prime enumeration exceeded the configured cap of " +
                std::to_string(cap));
        return primes_[n - 1];
    }

private:
    void grow(std::uint64_t cap) {
        std::uint64_t limit = sieved_to_ < 512 ? 1024 : sieved_to_ * 2;
        if (limit > cap) limit = cap;
        std::vector<bool> composite(limit + 1, false);
        primes_.clear();
        for (std::uint64_t i = 2; i <= limit; ++i) {
            if (composite[i]) continue;
            primes_.push_back(i);
            for (std::uint64_t j = i * i; j <= limit; j += i)
                composite[j] = true;
        }
        sieved_to_ = limit;
    }

    std::mutex mutex_;
    std::vector<std::uint64_t> primes_;
    std::uint64_t sieved_to_ = 0;
};

} // namespace detail

inline std::uint64_t nth_prime(std::size_t n,
                               std::uint64_t cap = default_prime_cap()) {
    if (n == 0)
        throw precondition_error("nth_prime: index starts at 1");
    return detail::PrimeTable::instance().nth(n, cap);
}

inline bool is_prime(const Integer& m) {
    if (m < 2) return false;
    if (m < 4) return true;
    if (m % 2 == 0) return false;
    for (Integer d = 3; d * d <= m; d += 2)
        if (m % d == 0) return false;
    return true;
}

inline std::uint64_t next_prime_above(std::uint64_t m,
                                      std::uint64_t cap = default_prime_cap()) {
    for (std::uint64_t v = m + 1;; ++v) {
        if (v > cap)
            throw resource_limit_error(
                "next_prime_above exceeded the configured cap of " +
                std::to_string(cap));
        if (is_prime(Integer(v))) return v;
    }
}

/// Stateful enumerator over p_1 < p_2 < ... Single-owner; independent
/// instances are independent streams over the same deterministic sequence.
class PrimeStream {
public:
    explicit PrimeStream(std::uint64_t cap = default_prime_cap()) : cap_(cap) {}

    std::uint64_t next() { return nth_prime(++index_, cap_); }

    std::size_t emitted() const noexcept { return index_; }

    void reset() noexcept { index_ = 0; }

private:
    std::size_t index_ = 0;
    std::uint64_t cap_;
};

} // namespace puiseux
