#include "magic/exact.hpp"

#include <sstream>
#include <vector>

namespace magic {

GaussRational GaussRational::operator/(const GaussRational &o) const {
  mpq_class den = o.re * o.re + o.im * o.im;
  if (den == 0) throw Error(ErrorKind::InvalidArgument, "division by zero");
  return {(re * o.re + im * o.im) / den, (im * o.re - re * o.im) / den};
}

std::string GaussRational::str() const {
  std::ostringstream os;
  if (im == 0) {
    os << re;
  } else if (re == 0) {
    os << im << "i";
  } else {
    os << "(" << re << (im > 0 ? "+" : "") << im << "i)";
  }
  return os.str();
}

LaurentPoly LaurentPoly::constant(const GaussRational &c) {
  LaurentPoly f;
  f.add_term(Monomial{}, c);
  return f;
}

LaurentPoly LaurentPoly::monomial(int a11, int a12, int a21, int a22, int p,
                                  const GaussRational &c) {
  LaurentPoly f;
  f.add_term(Monomial{{a11, a12, a21, a22, p}}, c);
  f.canonicalize();
  return f;
}

LaurentPoly LaurentPoly::var(int ij) {
  std::array<int, 4> a{};
  a[ij] = 1;
  return monomial(a[0], a[1], a[2], a[3]);
}

LaurentPoly LaurentPoly::N() {
  return monomial(1, 0, 0, 1) - monomial(0, 1, 1, 0);
}

LaurentPoly LaurentPoly::N_power(int k) {
  if (k < 0) return monomial(0, 0, 0, 0, -k);
  LaurentPoly r = constant(1), n = N();
  for (int i = 0; i < k; ++i) r = r * n;
  return r;
}

void LaurentPoly::add_term(const Monomial &m, const GaussRational &c) {
  if (c.is_zero()) return;
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(m, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

void LaurentPoly::canonicalize() {
  for (;;) {
    std::vector<std::pair<Monomial, GaussRational>> bad;
    for (const auto &[m, c] : terms_)
      if (m.e[4] > 0 && m.e[0] > 0 && m.e[3] > 0) bad.emplace_back(m, c);
    if (bad.empty()) return;
    for (const auto &[m, c] : bad) {
      terms_.erase(m);
      Monomial a = m, b = m;
      a.e[0] -= 1;
      a.e[3] -= 1;
      a.e[4] -= 1;
      b.e[0] -= 1;
      b.e[3] -= 1;
      b.e[1] += 1;
      b.e[2] += 1;
      add_term(a, c);
      add_term(b, c);
    }
  }
}

int LaurentPoly::max_p() const {
  int p = 0;
  for (const auto &[m, c] : terms_) p = std::max(p, m.e[4]);
  return p;
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly &o) const {
  LaurentPoly r = *this;
  for (const auto &[m, c] : o.terms_) r.add_term(m, c);
  return r;
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly &o) const {
  LaurentPoly r = *this;
  for (const auto &[m, c] : o.terms_) r.add_term(m, -c);
  return r;
}

LaurentPoly LaurentPoly::operator*(const LaurentPoly &o) const {
  LaurentPoly r;
  for (const auto &[m1, c1] : terms_)
    for (const auto &[m2, c2] : o.terms_) {
      Monomial m;
      for (int i = 0; i < 5; ++i) m.e[i] = m1.e[i] + m2.e[i];
      r.add_term(m, c1 * c2);
    }
  r.canonicalize();
  return r;
}

LaurentPoly LaurentPoly::operator*(const GaussRational &c) const {
  LaurentPoly r;
  for (const auto &[m, v] : terms_) r.add_term(m, v * c);
  return r;
}

LaurentPoly LaurentPoly::partial(int ij) const {
  // dN/dz11 = z22, dN/dz12 = -z21, dN/dz21 = -z12, dN/dz22 = z11
  static const int partner[4] = {3, 2, 1, 0};
  static const int sign[4] = {1, -1, -1, 1};
  LaurentPoly r;
  for (const auto &[m, c] : terms_) {
    if (m.e[ij] > 0) {
      Monomial d = m;
      d.e[ij] -= 1;
      r.add_term(d, c * GaussRational(m.e[ij]));
    }
    if (m.e[4] > 0) {
      Monomial d = m;
      d.e[partner[ij]] += 1;
      d.e[4] += 1;
      r.add_term(d, c * GaussRational(-m.e[4] * sign[ij]));
    }
  }
  r.canonicalize();
  return r;
}

LaurentPoly LaurentPoly::degt() const {
  LaurentPoly r;
  for (const auto &[m, c] : terms_) r.add_term(m, c * GaussRational(m.degree() + 1));
  return r;
}

LaurentPoly LaurentPoly::box() const {
  LaurentPoly a = partial(0).partial(3);
  LaurentPoly b = partial(1).partial(2);
  return (a - b) * GaussRational(4);
}

LaurentPoly LaurentPoly::adjugate_substitute() const {
  LaurentPoly r;
  for (const auto &[m, c] : terms_) {
    Monomial s{{m.e[3], m.e[1], m.e[2], m.e[0], m.e[4]}};
    r.add_term(s, (m.e[1] + m.e[2]) % 2 ? -c : c);
  }
  return r;
}

cplx LaurentPoly::eval(const HMatrix &Z) const {
  const cplx z[4] = {Z.z11, Z.z12, Z.z21, Z.z22};
  cplx ninv = 1.0 / norm(Z);
  cplx s = 0.0;
  for (const auto &[m, c] : terms_) {
    cplx t = c.to_complex();
    for (int i = 0; i < 4; ++i)
      for (int k = 0; k < m.e[i]; ++k) t *= z[i];
    for (int k = 0; k < m.e[4]; ++k) t *= ninv;
    s += t;
  }
  return s;
}

GaussRational LaurentPoly::eval_exact(const std::array<GaussRational, 4> &z) const {
  GaussRational n = z[0] * z[3] - z[1] * z[2];
  GaussRational ninv = GaussRational(1) / n;
  GaussRational s;
  for (const auto &[m, c] : terms_) {
    GaussRational t = c;
    for (int i = 0; i < 4; ++i)
      for (int k = 0; k < m.e[i]; ++k) t = t * z[i];
    for (int k = 0; k < m.e[4]; ++k) t = t * ninv;
    s += t;
  }
  return s;
}

namespace {
mpq_class factorial(int n) {
  mpz_class r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return mpq_class(r);
}
} // namespace

GaussRational LaurentPoly::cycle_average() const {
  GaussRational s;
  for (const auto &[m, c] : terms_) {
    if (m.degree() != -4) continue;
    // on SU(2): z22 = conj(z11), z21 = -conj(z12), N = 1
    if (m.e[0] != m.e[3] || m.e[1] != m.e[2]) continue;
    int a = m.e[0], b = m.e[1];
    mpq_class v = factorial(a) * factorial(b) / factorial(a + b + 1);
    if (b % 2) v = -v;
    s += c * GaussRational(v);
  }
  return s;
}

std::string LaurentPoly::str() const {
  if (terms_.empty()) return "0";
  static const char *names[4] = {"z11", "z12", "z21", "z22"};
  std::ostringstream os;
  bool first = true;
  for (const auto &[m, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << c.str();
    for (int i = 0; i < 4; ++i)
      if (m.e[i]) os << "*" << names[i] << (m.e[i] > 1 ? "^" + std::to_string(m.e[i]) : "");
    if (m.e[4]) os << "*N^-" << m.e[4];
  }
  return os.str();
}

GaussRational exact_pairing(const LaurentPoly &f1, const LaurentPoly &f2) {
  return (f1 * f2).cycle_average();
}

} // namespace magic
