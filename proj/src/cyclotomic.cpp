#include "va/cyclotomic.hpp"

#include <sstream>

#include "va/errors.hpp"

namespace va {

Rat rat_from_string(const std::string& s) {
  Rat r;
  if (r.set_str(s, 10) != 0) throw ParseError("bad rational literal: " + s);
  r.canonicalize();
  return r;
}

std::string rat_to_string(const Rat& r) { return r.get_str(); }

Cyclotomic Cyclotomic::zeta_power(long e) {
  e %= 12;
  if (e < 0) e += 12;
  // zeta^4 = zeta^2 - 1, zeta^6 = -1
  static const int tab[12][4] = {
      {1, 0, 0, 0},  {0, 1, 0, 0},  {0, 0, 1, 0},  {0, 0, 0, 1},
      {-1, 0, 1, 0}, {0, -1, 0, 1}, {-1, 0, 0, 0}, {0, -1, 0, 0},
      {0, 0, -1, 0}, {0, 0, 0, -1}, {1, 0, -1, 0}, {0, 1, 0, -1}};
  Cyclotomic z;
  for (int i = 0; i < 4; ++i) z.c_[i] = tab[e][i];
  return z;
}

Cyclotomic Cyclotomic::sqrt3() {
  Cyclotomic z;
  z.c_[1] = 2;
  z.c_[3] = -1;
  return z;
}

bool Cyclotomic::is_zero() const {
  for (const auto& x : c_)
    if (sgn(x) != 0) return false;
  return true;
}

bool Cyclotomic::is_rational() const {
  return sgn(c_[1]) == 0 && sgn(c_[2]) == 0 && sgn(c_[3]) == 0;
}

Cyclotomic Cyclotomic::operator-() const {
  Cyclotomic r;
  for (int i = 0; i < 4; ++i) r.c_[i] = -c_[i];
  return r;
}

Cyclotomic& Cyclotomic::operator+=(const Cyclotomic& o) {
  for (int i = 0; i < 4; ++i) c_[i] += o.c_[i];
  return *this;
}

Cyclotomic& Cyclotomic::operator-=(const Cyclotomic& o) {
  for (int i = 0; i < 4; ++i) c_[i] -= o.c_[i];
  return *this;
}

Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
  if (a.is_rational() || b.is_rational()) {
    // common case: one side plain rational
    const bool ar = a.is_rational();
    const Rat& s = ar ? a.c_[0] : b.c_[0];
    const Cyclotomic& v = ar ? b : a;
    Cyclotomic r;
    if (sgn(s) == 0) return r;
    for (int i = 0; i < 4; ++i) r.c_[i] = v.c_[i] * s;
    return r;
  }
  std::array<Rat, 7> d{};
  for (int i = 0; i < 4; ++i) {
    if (sgn(a.c_[i]) == 0) continue;
    for (int j = 0; j < 4; ++j) {
      if (sgn(b.c_[j]) == 0) continue;
      d[i + j] += a.c_[i] * b.c_[j];
    }
  }
  // reduce: z^4 = z^2 - 1, z^5 = z^3 - z, z^6 = -1
  Cyclotomic r;
  r.c_[0] = d[0] - d[4] - d[6];
  r.c_[1] = d[1] - d[5];
  r.c_[2] = d[2] + d[4];
  r.c_[3] = d[3] + d[5];
  return r;
}

Cyclotomic Cyclotomic::inverse() const {
  if (is_zero()) throw DivisionByZero("inverse of zero cyclotomic");
  if (is_rational()) {
    Cyclotomic r;
    r.c_[0] = 1 / c_[0];
    return r;
  }
  // Solve (this * x) = 1 as a 4x4 rational linear system.
  // Column j of M is this * zeta^j.
  Rat M[4][5];
  for (int j = 0; j < 4; ++j) {
    Cyclotomic col = (*this) * zeta_power(j);
    for (int i = 0; i < 4; ++i) M[i][j] = col.c_[i];
  }
  for (int i = 0; i < 4; ++i) M[i][4] = (i == 0) ? 1 : 0;
  for (int col = 0; col < 4; ++col) {
    int piv = -1;
    for (int r = col; r < 4; ++r)
      if (sgn(M[r][col]) != 0) {
        piv = r;
        break;
      }
    if (piv < 0) throw DivisionByZero("singular cyclotomic inverse");
    if (piv != col)
      for (int k = 0; k < 5; ++k) swap(M[piv][k], M[col][k]);
    Rat p = M[col][col];
    for (int k = col; k < 5; ++k) M[col][k] /= p;
    for (int r = 0; r < 4; ++r) {
      if (r == col || sgn(M[r][col]) == 0) continue;
      Rat f = M[r][col];
      for (int k = col; k < 5; ++k) M[r][k] -= f * M[col][k];
    }
  }
  Cyclotomic x;
  for (int i = 0; i < 4; ++i) x.c_[i] = M[i][4];
  return x;
}

Cyclotomic operator/(const Cyclotomic& a, const Cyclotomic& b) { return a * b.inverse(); }

std::string Cyclotomic::str() const {
  if (is_rational()) return rat_to_string(c_[0]);
  std::ostringstream os;
  bool first = true;
  for (int i = 0; i < 4; ++i) {
    if (sgn(c_[i]) == 0) continue;
    Rat v = c_[i];
    if (first) {
      if (sgn(v) < 0) {
        os << "-";
        v = -v;
      }
      first = false;
    } else {
      os << (sgn(v) < 0 ? " - " : " + ");
      if (sgn(v) < 0) v = -v;
    }
    if (i == 0) {
      os << rat_to_string(v);
    } else {
      if (v != 1) os << rat_to_string(v) << "*";
      os << "zeta";
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

}  // namespace va
