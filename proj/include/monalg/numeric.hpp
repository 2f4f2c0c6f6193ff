#ifndef MONALG_NUMERIC_HPP
#define MONALG_NUMERIC_HPP

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace monalg {

// Arbitrary-precision integers and rationals. Rat is kept canonical by the
// backing library: gcd(num, den) = 1 and den > 0 at all times.
using Int = mpz_class;
using Rat = mpq_class;

inline Int num(const Rat& q) { return q.get_num(); }
inline Int den(const Rat& q) { return q.get_den(); }

inline bool is_integer(const Rat& q) { return q.get_den() == 1; }

// The two-argument mpq_class constructor does not reduce; this does.
inline Rat make_rat(const Int& n, const Int& d) {
  if (d == 0) throw std::invalid_argument("make_rat: zero denominator");
  Rat r(n, d);
  r.canonicalize();
  return r;
}

inline Int gcd_int(const Int& a, const Int& b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline Int pow_int(const Int& base, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

inline Rat pow_rat(const Rat& base, unsigned long e) {
  Rat r;
  mpz_pow_ui(mpq_numref(r.get_mpq_t()), mpq_numref(base.get_mpq_t()), e);
  mpz_pow_ui(mpq_denref(r.get_mpq_t()), mpq_denref(base.get_mpq_t()), e);
  return r;  // already canonical: powers of coprime values stay coprime
}

// Deterministic primality: exact for small inputs, BPSW + Miller-Rabin rounds
// beyond (no pseudoprime is known for the combined test at these sizes).
inline bool is_prime(const Int& n) {
  if (n < 2) return false;
  return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

inline Int next_prime_above(const Int& n) {
  Int p;
  mpz_nextprime(p.get_mpz_t(), n.get_mpz_t());
  return p;
}

// p-adic valuation of a nonzero rational; p must be prime.
inline long valuation_p(const Rat& q, const Int& p) {
  if (q == 0) throw std::invalid_argument("valuation_p: q must be nonzero");
  if (!is_prime(p)) throw std::invalid_argument("valuation_p: p must be prime");
  Int t = q.get_num();
  long v = 0;
  if (mpz_divisible_p(t.get_mpz_t(), p.get_mpz_t())) {
    Int rem;
    while (mpz_divisible_p(t.get_mpz_t(), p.get_mpz_t())) {
      mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), p.get_mpz_t());
      ++v;
    }
    return v;
  }
  t = q.get_den();
  while (mpz_divisible_p(t.get_mpz_t(), p.get_mpz_t())) {
    mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), p.get_mpz_t());
    --v;
  }
  return v;
}

// Deterministic splitmix64-based generator: identical streams on every
// platform, unlike the distribution templates in <random>.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform value in [0, n); n > 0. Rejection keeps the stream unbiased.
  std::uint64_t below(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("Rng::below: n must be positive");
    std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
    std::uint64_t v;
    do {
      v = next_u64();
    } while (v >= limit);
    return v % n;
  }

  long range(long lo, long hi) {  // inclusive bounds
    if (lo > hi) throw std::invalid_argument("Rng::range: empty interval");
    return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  bool coin() { return (next_u64() & 1) != 0; }

 private:
  std::uint64_t state_;
};

}  // namespace monalg

#endif  // MONALG_NUMERIC_HPP
