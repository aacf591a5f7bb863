#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace eqha {

// Field of rational numbers, arbitrary precision.
struct FieldQ {
  using Elem = mpq_class;

  Elem zero() const { return Elem(0); }
  Elem one() const { return Elem(1); }
  Elem from_int(long v) const { return Elem(v); }

  Elem add(const Elem& a, const Elem& b) const { return Elem(a + b); }
  Elem sub(const Elem& a, const Elem& b) const { return Elem(a - b); }
  Elem mul(const Elem& a, const Elem& b) const { return Elem(a * b); }
  Elem neg(const Elem& a) const { return Elem(-a); }
  Elem inv(const Elem& a) const {
    if (is_zero(a)) throw std::domain_error("FieldQ::inv of zero");
    return Elem(1 / a);
  }
  Elem div(const Elem& a, const Elem& b) const { return mul(a, inv(b)); }

  // acc += x*y without temporary churn
  void madd(Elem& acc, const Elem& x, const Elem& y) const {
    static thread_local mpq_class tmp;
    mpq_mul(tmp.get_mpq_t(), x.get_mpq_t(), y.get_mpq_t());
    mpq_add(acc.get_mpq_t(), acc.get_mpq_t(), tmp.get_mpq_t());
  }
  // acc -= x*y
  void msub(Elem& acc, const Elem& x, const Elem& y) const {
    static thread_local mpq_class tmp;
    mpq_mul(tmp.get_mpq_t(), x.get_mpq_t(), y.get_mpq_t());
    mpq_sub(acc.get_mpq_t(), acc.get_mpq_t(), tmp.get_mpq_t());
  }

  bool is_zero(const Elem& a) const { return sgn(a) == 0; }
  bool is_one(const Elem& a) const { return a == 1; }
  bool eq(const Elem& a, const Elem& b) const { return a == b; }

  std::string str(const Elem& a) const {
    if (a.get_den() == 1) return a.get_num().get_str();
    return a.get_str();
  }
  Elem parse(const std::string& s) const {
    Elem r;
    if (r.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
    r.canonicalize();
    return r;
  }

  bool same(const FieldQ&) const { return true; }
  std::string name() const { return "q"; }
};

// Prime field F_p for a runtime prime p (p <= 2^31 so products fit in int64).
struct FieldFp {
  using Elem = long;
  long p = 2;

  FieldFp() = default;
  explicit FieldFp(long prime) : p(prime) {
    if (p < 2 || p > (1L << 31)) throw std::invalid_argument("bad modulus");
    for (long d = 2; d * d <= p; ++d)
      if (p % d == 0) throw std::invalid_argument("modulus not prime: " + std::to_string(p));
  }

  Elem zero() const { return 0; }
  Elem one() const { return p == 1 ? 0 : 1; }
  Elem from_int(long v) const {
    long r = v % p;
    return r < 0 ? r + p : r;
  }

  Elem add(Elem a, Elem b) const {
    long r = a + b;
    return r >= p ? r - p : r;
  }
  Elem sub(Elem a, Elem b) const {
    long r = a - b;
    return r < 0 ? r + p : r;
  }
  Elem mul(Elem a, Elem b) const { return (a * b) % p; }
  Elem neg(Elem a) const { return a == 0 ? 0 : p - a; }
  Elem inv(Elem a) const {
    if (a == 0) throw std::domain_error("FieldFp::inv of zero");
    long t = 0, nt = 1, r = p, nr = a;
    while (nr != 0) {
      long q = r / nr;
      long tmp = t - q * nt;
      t = nt; nt = tmp;
      tmp = r - q * nr;
      r = nr; nr = tmp;
    }
    return t < 0 ? t + p : t;
  }
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }

  void madd(Elem& acc, Elem x, Elem y) const { acc = (acc + x * y) % p; }
  void msub(Elem& acc, Elem x, Elem y) const {
    acc = (acc - x * y) % p;
    if (acc < 0) acc += p;
  }

  bool is_zero(Elem a) const { return a == 0; }
  bool is_one(Elem a) const { return a == one(); }
  bool eq(Elem a, Elem b) const { return a == b; }

  std::string str(Elem a) const { return std::to_string(a); }
  Elem parse(const std::string& s) const { return from_int(std::stol(s)); }

  bool same(const FieldFp& o) const { return p == o.p; }
  std::string name() const { return "fp:" + std::to_string(p); }
};

}  // namespace eqha
