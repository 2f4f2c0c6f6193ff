#ifndef MONALG_SRC_FPPOLY_HPP
#define MONALG_SRC_FPPOLY_HPP

#include <cstdint>
#include <vector>

#include "monalg/numeric.hpp"
#include "monalg/zpoly.hpp"

namespace monalg::detail {

// Dense polynomial over F_p, p an odd prime < 2^31. Coefficients live in
// [0, p); no trailing zeros.
struct FpPoly {
  std::uint64_t p = 0;
  std::vector<std::uint64_t> c;

  bool is_zero() const { return c.empty(); }
  long degree() const { return c.empty() ? -1 : static_cast<long>(c.size()) - 1; }
  std::uint64_t leading() const { return c.back(); }
  void trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
  }
  bool is_one() const { return c.size() == 1 && c[0] == 1; }
};

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p);

FpPoly fp_from_zpoly(const ZPoly& f, std::uint64_t p);
FpPoly fp_x(std::uint64_t p);
FpPoly fp_const(std::uint64_t a, std::uint64_t p);
FpPoly fp_add(const FpPoly& a, const FpPoly& b);
FpPoly fp_sub(const FpPoly& a, const FpPoly& b);
FpPoly fp_mul(const FpPoly& a, const FpPoly& b);
FpPoly fp_monic(const FpPoly& a);
void fp_divrem(const FpPoly& a, const FpPoly& b, FpPoly* q, FpPoly* r);
FpPoly fp_mod(const FpPoly& a, const FpPoly& m);
FpPoly fp_gcd(FpPoly a, FpPoly b);  // monic result
// Monic g = gcd(a, b) with s*a + t*b = g; when g = 1 and both inputs are
// nonconstant, deg s < deg b and deg t < deg a.
FpPoly fp_xgcd(const FpPoly& a, const FpPoly& b, FpPoly* s, FpPoly* t);
FpPoly fp_derivative(const FpPoly& a);
// base^e mod m, e an arbitrary-precision exponent.
FpPoly fp_powmod(const FpPoly& base, const Int& e, const FpPoly& m);

// Distinct-degree then equal-degree factorization of a squarefree monic
// input. Returns monic irreducible factors, deterministically ordered.
std::vector<FpPoly> fp_factor_squarefree(const FpPoly& f, Rng& rng);

}  // namespace monalg::detail

#endif  // MONALG_SRC_FPPOLY_HPP
