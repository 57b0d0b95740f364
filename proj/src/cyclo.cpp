#include "twistcb/cyclo.hpp"

#include <sstream>

namespace twistcb {

bool is_prime(int p) {
  if (p < 2) return false;
  for (int d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

Cyc::Cyc(int p, std::vector<Rat> coeffs) {
  if (!is_prime(p)) throw std::invalid_argument("Cyc: p must be prime");
  if ((int)coeffs.size() != p - 1)
    throw std::invalid_argument("Cyc: need p-1 coefficients");
  if (p == 2) {
    p_ = 0;
    c_ = {coeffs[0]};
  } else {
    p_ = p;
    c_ = std::move(coeffs);
  }
  normalize();
}

Cyc Cyc::zeta(int p) {
  if (!is_prime(p)) throw std::invalid_argument("zeta: p must be prime");
  if (p == 2) return Cyc(Rat(-1));
  std::vector<Rat> c(p - 1, Rat(0));
  c[1] = 1;
  return Cyc(p, std::move(c));
}

Cyc Cyc::zeta_pow(int p, long e) {
  if (!is_prime(p)) throw std::invalid_argument("zeta_pow: p must be prime");
  long r = ((e % p) + p) % p;
  if (p == 2) return Cyc(Rat(r == 0 ? 1 : -1));
  std::vector<Rat> c(p - 1, Rat(0));
  if (r < p - 1) {
    c[r] = 1;
  } else { // z^{p-1} = -(1 + z + ... + z^{p-2})
    for (auto& x : c) x = -1;
  }
  return Cyc(p, std::move(c));
}

void Cyc::normalize() {
  if (p_ == 0) return;
  for (size_t i = 1; i < c_.size(); ++i)
    if (c_[i] != 0) return;
  Rat r = c_[0];
  p_ = 0;
  c_ = {r};
}

void Cyc::promote(Cyc& a, Cyc& b) {
  if (a.p_ == b.p_) return;
  if (a.p_ == 0) {
    Rat r = a.c_[0];
    a.p_ = b.p_;
    a.c_.assign(b.p_ - 1, Rat(0));
    a.c_[0] = r;
  } else if (b.p_ == 0) {
    promote(b, a);
  } else {
    throw std::invalid_argument("Cyc: mixed cyclotomic fields");
  }
}

bool Cyc::is_zero() const {
  for (const auto& x : c_)
    if (x != 0) return false;
  return true;
}

const Rat& Cyc::rat() const {
  if (p_ != 0) throw std::logic_error("Cyc: not rational");
  return c_[0];
}

Cyc Cyc::operator-() const {
  Cyc r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

Cyc& Cyc::operator+=(const Cyc& o) {
  Cyc b = o;
  promote(*this, b);
  for (size_t i = 0; i < c_.size(); ++i) c_[i] += b.c_[i];
  normalize();
  return *this;
}

Cyc& Cyc::operator-=(const Cyc& o) {
  Cyc b = o;
  promote(*this, b);
  for (size_t i = 0; i < c_.size(); ++i) c_[i] -= b.c_[i];
  normalize();
  return *this;
}

Cyc& Cyc::operator*=(const Cyc& o) {
  Cyc b = o;
  promote(*this, b);
  if (p_ == 0) {
    c_[0] *= b.c_[0];
    return *this;
  }
  const int p = p_;
  std::vector<Rat> prod(2 * p - 3 + 1, Rat(0)); // degrees 0 .. 2p-4
  for (int i = 0; i < p - 1; ++i) {
    if (c_[i] == 0) continue;
    for (int j = 0; j < p - 1; ++j) {
      if (b.c_[j] == 0) continue;
      prod[i + j] += c_[i] * b.c_[j];
    }
  }
  // reduce z^k for k >= p-1: z^p = 1, z^{p-1} = -(1+...+z^{p-2})
  std::vector<Rat> out(p - 1, Rat(0));
  for (int k = (int)prod.size() - 1; k >= 0; --k) {
    if (prod[k] == 0) continue;
    int r = k % p;
    if (r < p - 1) {
      out[r] += prod[k];
    } else {
      for (int j = 0; j < p - 1; ++j) out[j] -= prod[k];
    }
  }
  c_ = std::move(out);
  normalize();
  return *this;
}

Cyc Cyc::inv() const {
  if (is_zero()) throw std::domain_error("Cyc: division by zero");
  if (p_ == 0) return Cyc(Rat(1) / c_[0]);
  // solve M x = e0 where M is the multiplication-by-*this matrix
  const int n = p_ - 1;
  std::vector<std::vector<Rat>> M(n, std::vector<Rat>(n + 1, Rat(0)));
  for (int j = 0; j < n; ++j) {
    Cyc col = *this * zeta_pow(p_, j);
    if (col.p_ == 0) {
      M[0][j] = col.c_[0];
    } else {
      for (int i = 0; i < n; ++i) M[i][j] = col.c_[i];
    }
  }
  M[0][n] = 1;
  for (int col = 0, row = 0; col < n && row < n; ++col) {
    int piv = -1;
    for (int r = row; r < n; ++r)
      if (M[r][col] != 0) { piv = r; break; }
    if (piv < 0) continue;
    std::swap(M[piv], M[row]);
    Rat d = M[row][col];
    for (int j = col; j <= n; ++j) M[row][j] /= d;
    for (int r = 0; r < n; ++r) {
      if (r == row || M[r][col] == 0) continue;
      Rat f = M[r][col];
      for (int j = col; j <= n; ++j) M[r][j] -= f * M[row][j];
    }
    ++row;
  }
  std::vector<Rat> x(n);
  for (int i = 0; i < n; ++i) x[i] = M[i][n];
  return Cyc(p_, std::move(x));
}

Cyc& Cyc::operator/=(const Cyc& o) { return *this *= o.inv(); }

Cyc Cyc::pow(long e) const {
  if (e < 0) return inv().pow(-e);
  Cyc r(Rat(1)), b = *this;
  while (e > 0) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

bool operator==(const Cyc& a, const Cyc& b) {
  Cyc x = a, y = b;
  Cyc::promote(x, y);
  return x.c_ == y.c_;
}

std::string Cyc::str() const {
  std::ostringstream os;
  if (p_ == 0) {
    os << c_[0];
    return os.str();
  }
  bool first = true;
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    if (!first) os << " + ";
    os << c_[i];
    if (i > 0) os << "*z^" << i;
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

} // namespace twistcb
