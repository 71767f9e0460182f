#pragma once

#include <array>
#include <complex>
#include <map>
#include <string>

#include <gmpxx.h>

#include "magic/hc_core.hpp"

namespace magic {

struct GaussRational {
  mpq_class re, im;

  GaussRational() : re(0), im(0) {}
  GaussRational(long r) : re(r), im(0) {}
  GaussRational(mpq_class r, mpq_class i = 0) : re(std::move(r)), im(std::move(i)) {}

  bool is_zero() const { return re == 0 && im == 0; }
  GaussRational operator+(const GaussRational &o) const { return {re + o.re, im + o.im}; }
  GaussRational operator-(const GaussRational &o) const { return {re - o.re, im - o.im}; }
  GaussRational operator-() const { return {-re, -im}; }
  GaussRational operator*(const GaussRational &o) const {
    return {re * o.re - im * o.im, re * o.im + im * o.re};
  }
  GaussRational operator/(const GaussRational &o) const;
  GaussRational &operator+=(const GaussRational &o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  bool operator==(const GaussRational &o) const { return re == o.re && im == o.im; }
  cplx to_complex() const { return {re.get_d(), im.get_d()}; }
  std::string str() const;
};

// z11^a11 z12^a12 z21^a21 z22^a22 N^{-p}
struct Monomial {
  std::array<int, 5> e{};  // a11, a12, a21, a22, p
  int degree() const { return e[0] + e[1] + e[2] + e[3] - 2 * e[4]; }
  auto operator<=>(const Monomial &) const = default;
};

// Exact Laurent polynomial in the four entries and N^{-1}. Canonical form:
// no monomial with p > 0 carries both z11 and z22 (z11 z22 is rewritten as
// N + z12 z21).
class LaurentPoly {
public:
  using Terms = std::map<Monomial, GaussRational>;

  LaurentPoly() = default;
  static LaurentPoly constant(const GaussRational &c);
  static LaurentPoly monomial(int a11, int a12, int a21, int a22, int p = 0,
                              const GaussRational &c = GaussRational(1));
  static LaurentPoly var(int ij);  // 0:z11 1:z12 2:z21 3:z22
  static LaurentPoly N();
  static LaurentPoly N_power(int k);

  const Terms &terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int max_p() const;

  LaurentPoly operator+(const LaurentPoly &o) const;
  LaurentPoly operator-(const LaurentPoly &o) const;
  LaurentPoly operator*(const LaurentPoly &o) const;
  LaurentPoly operator*(const GaussRational &c) const;
  bool operator==(const LaurentPoly &o) const { return terms_ == o.terms_; }

  // d/dz_ij with the chain rule on N^{-p}
  LaurentPoly partial(int ij) const;
  // f + sum z_ij df/dz_ij
  LaurentPoly degt() const;
  // 4 (d11 d22 - d12 d21)
  LaurentPoly box() const;
  // substitute Z -> adj(Z) = (z22, -z12; -z21, z11); N is invariant
  LaurentPoly adjugate_substitute() const;

  cplx eval(const HMatrix &Z) const;
  GaussRational eval_exact(const std::array<GaussRational, 4> &z) const;

  // normalized cycle integral (i/2pi^3) int f dV, exact: the SU(2) Haar
  // average of the degree -4 part
  GaussRational cycle_average() const;

  std::string str() const;

  void add_term(const Monomial &m, const GaussRational &c);

private:
  void canonicalize();
  Terms terms_;
};

GaussRational exact_pairing(const LaurentPoly &f1, const LaurentPoly &f2);

} // namespace magic
