#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "va/errors.hpp"
#include "va/scalar.hpp"

using namespace va;

TEST_CASE("cyclotomic constants") {
  Cyclotomic eta = Cyclotomic::eta();
  CHECK(eta * eta * eta == Cyclotomic(1));
  CHECK_FALSE(eta.is_rational());
  Cyclotomic i = Cyclotomic::imag_unit();
  CHECK(i * i == Cyclotomic(-1));
  Cyclotomic s3 = Cyclotomic::sqrt3();
  CHECK(s3 * s3 == Cyclotomic(3));
  // 1 + eta + eta^2 = 0
  CHECK((Cyclotomic(1) + eta + eta * eta).is_zero());
}

TEST_CASE("cyclotomic inverse") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> d(-5, 5);
  for (int trial = 0; trial < 50; ++trial) {
    Cyclotomic x = Cyclotomic(d(rng)) + Cyclotomic(d(rng)) * Cyclotomic::zeta_power(1) +
                   Cyclotomic(d(rng)) * Cyclotomic::zeta_power(2) +
                   Cyclotomic(d(rng)) * Cyclotomic::zeta_power(3);
    if (x.is_zero()) continue;
    CHECK(x * x.inverse() == Cyclotomic(1));
  }
  CHECK_THROWS_AS(Cyclotomic(0).inverse(), DivisionByZero);
}

TEST_CASE("scalar parsing and reduction") {
  // (zeta + zeta^11)^2 = 3
  Scalar s = parse_scalar("(zeta+zeta^11)^2", "");
  CHECK(s == Scalar(3));
  CHECK(parse_scalar("eta*eta*eta", "") == Scalar(1));
  CHECK(parse_scalar("I^2", "") == Scalar(-1));
  // gcd cancellation: (k^2-16)/(k-4) = k+4
  Scalar f = parse_scalar("(k^2-16)/(k-4)", "k");
  Scalar want = parse_scalar("k+4", "k");
  CHECK(f == want);
}

TEST_CASE("evaluate_at") {
  Scalar c = parse_scalar("-4*(k+2)*(6*k+17)/(k+4)", "k");
  // the subregular central charge at k = -16/5 (three copies of -22/5)
  CHECK(c.eval_at(Rat("-16/5")) == Scalar(Rat("-66/5")));
  CHECK(parse_scalar("7*k+24", "k").eval_at(Rat("-24/7")).is_zero());
  CHECK(parse_scalar("336*k^2+2301*k+3940", "k").eval_at(Rat("-5/2")) == Scalar(Rat("575/2")));
  Scalar pole = parse_scalar("1/(k+4)", "k");
  CHECK_THROWS_AS(pole.eval_at(Rat(-4)), PoleAtValue);
}

TEST_CASE("field axioms on randomized triples") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> d(-4, 4);
  auto random_scalar = [&] {
    Poly num = Poly(Cyclotomic(d(rng))) + Poly::variable() * Poly(Cyclotomic(d(rng)));
    Poly den = Poly(Cyclotomic(1)) + Poly::variable() * Poly(Cyclotomic(d(rng) != 0 ? d(rng) : 1));
    return Scalar(num, den, "k");
  };
  for (int trial = 0; trial < 40; ++trial) {
    Scalar a = random_scalar(), b = random_scalar(), c = random_scalar();
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    if (!c.is_zero()) CHECK((a / c) * c == a);
  }
}

TEST_CASE("evaluation commutes with arithmetic") {
  Scalar a = parse_scalar("(3*k^2+1)/(k+2)", "k");
  Scalar b = parse_scalar("(k-5)/(2*k+3)", "k");
  Rat v("4/7");
  CHECK((a * b).eval_at(v) == a.eval_at(v) * b.eval_at(v));
  CHECK((a + b).eval_at(v) == a.eval_at(v) + b.eval_at(v));
}

TEST_CASE("normalization is idempotent and canonical") {
  Scalar a = parse_scalar("(2*k^2+8*k+8)/(2*k+4)", "k");  // (k+2)
  CHECK(a == parse_scalar("k+2", "k"));
  CHECK(a.den().is_constant());
  Scalar zero = parse_scalar("0/(k+1)", "k");
  CHECK(zero.is_zero());
  CHECK(zero == Scalar());
  CHECK_THROWS_AS(parse_scalar("1/0", ""), DivisionByZero);
}

TEST_CASE("scalar string round trip") {
  for (const char* text : {"3/4", "-2", "(k^2 - 16)/(k - 4)", "1 + 2*zeta^2",
                           "(3/2*k^3 + sqrt3*k)/(k + 7)"}) {
    Scalar s = parse_scalar(text, "k");
    CHECK(parse_scalar(s.str(), "k") == s);
  }
}
