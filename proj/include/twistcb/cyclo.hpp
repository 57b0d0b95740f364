#ifndef TWISTCB_CYCLO_HPP
#define TWISTCB_CYCLO_HPP

#include <gmpxx.h>
#include <stdexcept>
#include <string>
#include <vector>

namespace twistcb {

using Rat = mpq_class;

bool is_prime(int p);

/* Element of Q(zeta_p), p prime, in the power basis 1, z, ..., z^{p-2} of
 * Q[x]/(Phi_p).  p == 0 marks the degenerate "plain rational" mode; since
 * zeta_2 = -1 the case p = 2 is normalized to it.  Mixing a rational with a
 * p >= 3 element promotes the rational, so default-constructed zeros work in
 * generic code. */
class Cyc {
public:
  Cyc() : p_(0), c_(1, Rat(0)) {}
  Cyc(const Rat& r) : p_(0), c_(1, r) {}
  Cyc(long n) : p_(0), c_(1, Rat(n)) {}
  Cyc(int n) : p_(0), c_(1, Rat(n)) {}
  Cyc(int p, std::vector<Rat> coeffs); // size p-1, reduced mod Phi_p

  static Cyc zeta(int p);            // class of x; -1 for p = 2
  static Cyc zeta_pow(int p, long e);

  int p() const { return p_; }
  bool is_zero() const;
  bool is_rational() const { return p_ == 0; }
  const Rat& rat() const; // throws unless rational
  const std::vector<Rat>& coeffs() const { return c_; }

  Cyc operator-() const;
  Cyc& operator+=(const Cyc& o);
  Cyc& operator-=(const Cyc& o);
  Cyc& operator*=(const Cyc& o);
  Cyc& operator/=(const Cyc& o);
  friend Cyc operator+(Cyc a, const Cyc& b) { return a += b; }
  friend Cyc operator-(Cyc a, const Cyc& b) { return a -= b; }
  friend Cyc operator*(Cyc a, const Cyc& b) { return a *= b; }
  friend Cyc operator/(Cyc a, const Cyc& b) { return a /= b; }
  friend bool operator==(const Cyc& a, const Cyc& b);
  friend bool operator!=(const Cyc& a, const Cyc& b) { return !(a == b); }

  Cyc inv() const;
  Cyc pow(long e) const;

  std::string str() const;

private:
  int p_;              // 0 (rational) or prime >= 3
  std::vector<Rat> c_; // size 1 (rational) or p-1
  void normalize();    // demote to rational mode when possible
  static void promote(Cyc& a, Cyc& b); // unify p
};

} // namespace twistcb

#endif
