#pragma once

#include <concepts>
#include <cstdint>
#include <string>
#include <utility>

#include <gmpxx.h>

#include "p2bundle/errors.hpp"
#include "p2bundle/rng.hpp"

namespace p2b {

// Default modulus: 2^31 - 1. Large enough that random configurations are
// generic with overwhelming probability.
inline constexpr std::uint64_t kDefaultPrime = 2147483647ULL;
inline constexpr std::uint64_t kMinPrime = 1000000ULL;      // exclusive
inline constexpr std::uint64_t kMaxPrime = 1ULL << 62;      // exclusive

namespace detail {

inline std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(
        static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod_u64(r, a, m);
        a = mulmod_u64(a, a, m);
        e >>= 1;
    }
    return r;
}

}  // namespace detail

// Deterministic Miller-Rabin; the base set covers all 64-bit integers.
inline bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL,
                            19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n == q) return true;
        if (n % q == 0) return false;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL,
                            19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        std::uint64_t x = detail::powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < s; ++i) {
            x = detail::mulmod_u64(x, x, n);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

// The prime field F_p. Elements are canonical representatives in [0, p);
// the context owns the modulus so elements stay plain integers.
struct PrimeField {
    using Elem = std::uint64_t;

    std::uint64_t p = kDefaultPrime;

    PrimeField() = default;

    explicit PrimeField(std::uint64_t prime) : p(prime) {
        if (p <= kMinPrime)
            throw FieldError("prime field modulus must exceed 10^6, got " +
                             std::to_string(p));
        if (p >= kMaxPrime)
            throw FieldError("prime field modulus must be below 2^62");
        if (!is_prime_u64(p))
            throw FieldError(std::to_string(p) + " is not prime");
    }

    Elem zero() const { return 0; }
    Elem one() const { return 1; }

    Elem from_int(long long n) const {
        long long m = n % static_cast<long long>(p);
        if (m < 0) m += static_cast<long long>(p);
        return static_cast<Elem>(m);
    }

    Elem add(Elem a, Elem b) const {
        Elem s = a + b;  // p < 2^62, no overflow
        return s >= p ? s - p : s;
    }
    Elem sub(Elem a, Elem b) const { return a >= b ? a - b : a + p - b; }
    Elem neg(Elem a) const { return a == 0 ? 0 : p - a; }
    Elem mul(Elem a, Elem b) const { return detail::mulmod_u64(a, b, p); }

    Elem inv(Elem a) const {
        if (a == 0) throw FieldError("division by zero in F_p");
        return detail::powmod_u64(a, p - 2, p);
    }
    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }

    bool is_zero(Elem a) const { return a == 0; }
    bool eq(Elem a, Elem b) const { return a == b; }

    Elem random_elem(Rng& rng) const { return rng.below(p); }

    std::string to_string(Elem a) const { return std::to_string(a); }

    // Accepts "a" or "a/b" in decimal, any size, reduced mod p.
    Elem from_string(const std::string& s) const {
        const auto slash = s.find('/');
        if (slash == std::string::npos) return from_mpz(mpz_class(s));
        const Elem num = from_mpz(mpz_class(s.substr(0, slash)));
        const Elem den = from_mpz(mpz_class(s.substr(slash + 1)));
        return div(num, den);
    }

    std::string name() const { return "fp(" + std::to_string(p) + ")"; }

private:
    Elem from_mpz(const mpz_class& z) const {
        mpz_class m = z % static_cast<unsigned long>(p);
        if (m < 0) m += static_cast<unsigned long>(p);
        return static_cast<Elem>(m.get_ui());
    }
};

// Exact rationals with arbitrary-precision integers (GMP).
struct Rationals {
    using Elem = mpq_class;

    Elem zero() const { return mpq_class(0); }
    Elem one() const { return mpq_class(1); }
    Elem from_int(long long n) const {
        return mpq_class(mpz_class(std::to_string(n)));
    }

    Elem add(const Elem& a, const Elem& b) const { return a + b; }
    Elem sub(const Elem& a, const Elem& b) const { return a - b; }
    Elem neg(const Elem& a) const { return -a; }
    Elem mul(const Elem& a, const Elem& b) const { return a * b; }

    Elem inv(const Elem& a) const {
        if (a == 0) throw FieldError("division by zero in Q");
        return 1 / a;
    }
    Elem div(const Elem& a, const Elem& b) const {
        if (b == 0) throw FieldError("division by zero in Q");
        return a / b;
    }

    bool is_zero(const Elem& a) const { return a == 0; }
    bool eq(const Elem& a, const Elem& b) const { return a == b; }

    // Small integer coordinates keep fraction-free elimination honest.
    Elem random_elem(Rng& rng) const { return from_int(rng.range(-20, 20)); }

    std::string to_string(const Elem& a) const { return a.get_str(); }

    Elem from_string(const std::string& s) const {
        mpq_class q(s);
        q.canonicalize();
        return q;
    }

    std::string name() const { return "q"; }
};

template <class F>
concept field_context = requires(const F f, const typename F::Elem& a,
                                 const typename F::Elem& b, Rng& rng) {
    typename F::Elem;
    { f.zero() } -> std::convertible_to<typename F::Elem>;
    { f.one() } -> std::convertible_to<typename F::Elem>;
    { f.from_int(0LL) } -> std::convertible_to<typename F::Elem>;
    { f.add(a, b) } -> std::convertible_to<typename F::Elem>;
    { f.sub(a, b) } -> std::convertible_to<typename F::Elem>;
    { f.neg(a) } -> std::convertible_to<typename F::Elem>;
    { f.mul(a, b) } -> std::convertible_to<typename F::Elem>;
    { f.div(a, b) } -> std::convertible_to<typename F::Elem>;
    { f.is_zero(a) } -> std::convertible_to<bool>;
    { f.eq(a, b) } -> std::convertible_to<bool>;
    { f.random_elem(rng) } -> std::convertible_to<typename F::Elem>;
    { f.to_string(a) } -> std::convertible_to<std::string>;
};

// Runtime description of a coefficient field, as it appears in scheme files
// and CLI flags.
struct FieldSpec {
    enum class Kind { Fp, Q };

    Kind kind = Kind::Fp;
    std::uint64_t p = kDefaultPrime;

    static FieldSpec fp(std::uint64_t prime = kDefaultPrime) {
        return {Kind::Fp, prime};
    }
    static FieldSpec rationals() { return {Kind::Q, 0}; }

    void validate() const {
        if (kind == Kind::Fp) PrimeField check(p);
    }

    std::string label() const {
        return kind == Kind::Fp ? "fp(" + std::to_string(p) + ")" : "q";
    }

    friend bool operator==(const FieldSpec& a, const FieldSpec& b) {
        return a.kind == b.kind && (a.kind == FieldSpec::Kind::Q || a.p == b.p);
    }
};

inline FieldSpec spec_of(const PrimeField& f) { return FieldSpec::fp(f.p); }
inline FieldSpec spec_of(const Rationals&) { return FieldSpec::rationals(); }

// Calls fn with the concrete field context described by spec. fn must
// accept both PrimeField and Rationals and return the same type for both.
template <class Fn>
decltype(auto) with_field(const FieldSpec& spec, Fn&& fn) {
    spec.validate();
    if (spec.kind == FieldSpec::Kind::Fp)
        return std::forward<Fn>(fn)(PrimeField(spec.p));
    return std::forward<Fn>(fn)(Rationals{});
}

}  // namespace p2b
