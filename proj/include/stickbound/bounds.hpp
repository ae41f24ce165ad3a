#pragma once

// Closed-form stick number and arc index bounds in terms of crossing number.

#include "stickbound/rational.hpp"

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace stickbound {

namespace detail {

inline void require_crossings(long c, const char* what) {
  if (c < 3)
    throw std::invalid_argument(std::string(what) + ": crossing number must be at least 3, got " +
                                std::to_string(c));
}

}  // namespace detail

/// Upper bound on the arc index: c+2, or c+1 for non-alternating prime knots.
inline long bae_park_upper(long c, bool nonalternating_prime) {
  detail::require_crossings(c, "bae_park_upper");
  return nonalternating_prime ? c + 1 : c + 2;
}

/// Upper bound on the stick number: 3(c+1)/2, or 3c/2 for non-alternating primes.
inline Rational huh_oh_upper(long c, bool nonalternating_prime) {
  detail::require_crossings(c, "huh_oh_upper");
  return make_rational(3 * (nonalternating_prime ? c : c + 1), 2);
}

/// Stick number bound from an arc presentation with a chords: 3(a-1)/2.
inline Rational theorem2_upper(long a) {
  if (a < 2) throw std::invalid_argument("theorem2_upper: arc index must be at least 2");
  return make_rational(3 * (a - 1), 2);
}

/// (5 + sqrt(radicand)) / 2, kept exact.
struct Surd {
  long base = 5;
  long radicand = 0;

  // Smallest integer >= the value. For non-square radicands the value lies
  // strictly between (b + s - 1)/2 and (b + s)/2 with s = ceil(sqrt(r)).
  Integer ceiling() const {
    Integer r = radicand, s;
    mpz_sqrt(s.get_mpz_t(), r.get_mpz_t());
    if (s * s != r) s += 1;
    Integer num = base + s, out;
    mpz_cdiv_q_ui(out.get_mpz_t(), num.get_mpz_t(), 2);
    return out;
  }

  // Decimal rendering rounded half-up to `digits` places.
  std::string decimal(int digits = 3) const {
    Integer scale = 1;
    for (int i = 0; i < digits; ++i) scale *= 10;
    Integer s10 = scale * 10;
    // floor(value * s10) = floor((b*s10 + isqrt(r*s10^2)) / 2)
    Integer big = Integer(radicand) * s10 * s10, root;
    mpz_sqrt(root.get_mpz_t(), big.get_mpz_t());
    Integer w = (Integer(base) * s10 + root) / 2;
    Integer rounded = (w + 5) / 10;
    Integer whole, frac;
    mpz_fdiv_qr(whole.get_mpz_t(), frac.get_mpz_t(), rounded.get_mpz_t(), scale.get_mpz_t());
    if (digits == 0) return whole.get_str();
    std::string f = frac.get_str();
    f.insert(0, static_cast<std::size_t>(digits) - f.size(), '0');
    return whole.get_str() + "." + f;
  }

  std::string symbolic() const {
    return "(" + std::to_string(base) + "+sqrt(" + std::to_string(radicand) + "))/2";
  }
};

struct NegamiBounds {
  Surd lower;
  long upper = 0;
};

/// Negami: (5 + sqrt(25 + 8(c-2)))/2 <= s(K) <= 2c.
inline NegamiBounds negami_bounds(long c) {
  detail::require_crossings(c, "negami_bounds");
  NegamiBounds b;
  b.lower = {5, 25 + 8 * (c - 2)};
  b.upper = 2 * c;
  return b;
}

struct BoundReport {
  long c = 0;
  bool nonalternating_prime = false;
  long a_upper = 0;
  NegamiBounds negami;
  Rational huh_oh;
};

inline BoundReport bound_report(long c, bool nonalternating_prime) {
  BoundReport r;
  r.c = c;
  r.nonalternating_prime = nonalternating_prime;
  r.a_upper = bae_park_upper(c, nonalternating_prime);
  r.negami = negami_bounds(c);
  r.huh_oh = huh_oh_upper(c, nonalternating_prime);
  return r;
}

inline std::vector<BoundReport> bound_table(long cmin, long cmax, bool nonalternating_prime) {
  if (cmin > cmax) throw std::invalid_argument("bound_table: cmin > cmax");
  std::vector<BoundReport> rows;
  for (long c = cmin; c <= cmax; ++c) rows.push_back(bound_report(c, nonalternating_prime));
  return rows;
}

}  // namespace stickbound
