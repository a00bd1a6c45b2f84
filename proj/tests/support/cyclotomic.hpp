#pragma once

// Exact arithmetic in Q(zeta), zeta = exp(2 pi i / r) for prime r: elements
// are rational polynomials reduced modulo 1 + x + ... + x^(r-1).

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace hypoly::test {

using Rational = boost::multiprecision::cpp_rational;

class Cyclo {
 public:
  explicit Cyclo(int r, Rational c = 0) : r_(r), c_(r - 1, Rational(0)) { c_[0] = c; }

  static Cyclo zeta_power(int r, int k) {
    Cyclo z(r);
    std::vector<Rational> full(r, Rational(0));
    full[((k % r) + r) % r] = 1;
    z.reduce(full);
    return z;
  }

  int r() const { return r_; }

  Cyclo operator+(const Cyclo& o) const {
    Cyclo s(r_);
    for (int i = 0; i < r_ - 1; ++i) s.c_[i] = c_[i] + o.c_[i];
    return s;
  }
  Cyclo operator-(const Cyclo& o) const {
    Cyclo s(r_);
    for (int i = 0; i < r_ - 1; ++i) s.c_[i] = c_[i] - o.c_[i];
    return s;
  }
  Cyclo operator-() const { return Cyclo(r_) - *this; }
  Cyclo operator*(const Cyclo& o) const {
    std::vector<Rational> full(r_, Rational(0));
    for (int i = 0; i < r_ - 1; ++i) {
      if (c_[i] == 0) continue;
      for (int j = 0; j < r_ - 1; ++j)
        if (o.c_[j] != 0) full[(i + j) % r_] += c_[i] * o.c_[j];
    }
    Cyclo p(r_);
    p.reduce(full);
    return p;
  }
  Cyclo operator/(const Cyclo& o) const { return *this * o.inverse(); }

  bool is_zero() const {
    for (const auto& x : c_)
      if (x != 0) return false;
    return true;
  }

  /// Extended Euclid in Q[x] against the cyclotomic polynomial.
  Cyclo inverse() const {
    if (is_zero()) throw std::domain_error("inverse of zero");
    using Poly = std::vector<Rational>;
    auto trim = [](Poly& p) {
      while (!p.empty() && p.back() == 0) p.pop_back();
    };
    auto sub_mul = [&](Poly a, const Poly& b, const Poly& q) {
      Poly prod(b.size() + q.size(), Rational(0));
      for (std::size_t i = 0; i < b.size(); ++i)
        for (std::size_t j = 0; j < q.size(); ++j) prod[i + j] += b[i] * q[j];
      if (a.size() < prod.size()) a.resize(prod.size(), Rational(0));
      for (std::size_t i = 0; i < prod.size(); ++i) a[i] -= prod[i];
      trim(a);
      return a;
    };
    auto divmod = [&](Poly a, const Poly& b, Poly& q) {
      q.assign(a.size() >= b.size() ? a.size() - b.size() + 1 : 1, Rational(0));
      while (a.size() >= b.size() && !a.empty()) {
        const std::size_t k = a.size() - b.size();
        const Rational f = a.back() / b.back();
        q[k] = f;
        for (std::size_t i = 0; i < b.size(); ++i) a[i + k] -= f * b[i];
        trim(a);
      }
      return a;
    };
    Poly r0(r_, Rational(1)), r1(c_);
    trim(r1);
    Poly s0{Rational(0)}, s1{Rational(1)};
    while (!(r1.size() == 1)) {
      Poly q;
      Poly rem = divmod(r0, r1, q);
      Poly s2 = sub_mul(s0, s1, q);
      r0 = r1;
      r1 = rem;
      s0 = s1;
      s1 = s2;
      if (r1.empty()) throw std::domain_error("not invertible");
    }
    std::vector<Rational> full(std::max<std::size_t>(s1.size(), r_), Rational(0));
    for (std::size_t i = 0; i < s1.size(); ++i) full[i] = s1[i] / r1[0];
    std::vector<Rational> folded(r_, Rational(0));
    for (std::size_t i = 0; i < full.size(); ++i) folded[i % r_] += full[i];
    Cyclo inv(r_);
    inv.reduce(folded);
    return inv;
  }

  std::complex<double> value() const {
    std::complex<double> z = 0.0;
    for (int k = 0; k < r_ - 1; ++k)
      z += c_[k].convert_to<double>() * std::polar(1.0, 2.0 * std::numbers::pi * k / r_);
    return z;
  }

 private:
  // full has r entries indexed by exponent; use zeta^(r-1) = -(1 + ... + zeta^(r-2)).
  void reduce(const std::vector<Rational>& full) {
    const Rational top = full[r_ - 1];
    for (int i = 0; i < r_ - 1; ++i) c_[i] = full[i] - top;
  }

  int r_;
  std::vector<Rational> c_;
};

/// [n] = zeta^(n-1) + zeta^(n-3) + ... + zeta^(1-n).
inline Cyclo exact_qint(int n, int r) {
  Cyclo s(r);
  for (int j = 0; j < n; ++j) s = s + Cyclo::zeta_power(r, n - 1 - 2 * j);
  return s;
}

inline Cyclo exact_qfact(int n, int r) {
  Cyclo p(r, 1);
  for (int k = 1; k <= n; ++k) p = p * exact_qint(k, r);
  return p;
}

inline Cyclo exact_sign(int k, int r) { return Cyclo(r, k % 2 ? -1 : 1); }

inline Cyclo exact_theta(int a, int b, int c, int r) {
  const int x = (a + b - c) / 2, y = (b + c - a) / 2, z = (c + a - b) / 2;
  return exact_sign(x + y + z, r) * exact_qfact(x + y + z + 1, r) * exact_qfact(x, r) * exact_qfact(y, r) *
         exact_qfact(z, r) / (exact_qfact(x + y, r) * exact_qfact(y + z, r) * exact_qfact(z + x, r));
}

inline Cyclo exact_tet(int a, int b, int c, int d, int e, int f, int r) {
  const std::array<int, 4> T{(a + b + c) / 2, (a + e + f) / 2, (d + b + f) / 2, (d + e + c) / 2};
  const std::array<int, 3> Q{(a + d + b + e) / 2, (a + d + c + f) / 2, (b + e + c + f) / 2};
  Cyclo pre(r, 1);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 3; ++j) pre = pre * exact_qfact(Q[j] - T[i], r);
  for (int x : {a, b, c, d, e, f}) pre = pre / exact_qfact(x, r);
  int lo = T[0], hi = Q[0];
  for (int t : T) lo = std::max(lo, t);
  for (int q : Q) hi = std::min(hi, q);
  Cyclo sum(r);
  for (int s = lo; s <= hi; ++s) {
    Cyclo den(r, 1);
    for (int t : T) den = den * exact_qfact(s - t, r);
    for (int q : Q) den = den * exact_qfact(q - s, r);
    sum = sum + exact_sign(s, r) * exact_qfact(s + 1, r) / den;
  }
  return pre * sum;
}

}  // namespace hypoly::test
