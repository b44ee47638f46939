#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "hecke_atlas/cyclotomic.hpp"

using namespace atlas;

namespace {

Cyclotomic random_cyc(int m, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-6, 6);
  std::uniform_int_distribution<int> den(1, 5);
  std::vector<Rational> c(euler_phi((u64)m));
  for (auto& x : c) {
    x = Rational(num(rng), den(rng));
    x.canonicalize();
  }
  return Cyclotomic(m, c);
}

}  // namespace

TEST_CASE("rationals are canonical") {
  Rational r = rational_from_string("6/-4");
  CHECK(r.get_num() == -3);
  CHECK(r.get_den() == 2);
  CHECK(rational_to_string(r) == "-3/2");
  CHECK(rational_ell_integral(Rational(1, 6), 5));
  CHECK(!rational_ell_integral(Rational(1, 6), 2));
}

TEST_CASE("cyc_arith examples") {
  // z4 * z4 = -1
  CHECK(Cyclotomic::root(4, 1) * Cyclotomic::root(4, 1) == Cyclotomic(-1));
  // z3 + z3^2 = -1
  CHECK(Cyclotomic::root(3, 1) + Cyclotomic::root(3, 2) == Cyclotomic(-1));
  // (1/2 + z8) * conj(1/2 + z8) = 5/4 + (z8 + z8^-1)/2
  Cyclotomic a = Cyclotomic(Rational(1, 2)) + Cyclotomic::root(8, 1);
  Cyclotomic lhs = a * a.conj();
  Cyclotomic rhs = Cyclotomic(Rational(5, 4)) +
                   (Cyclotomic::root(8, 1) + Cyclotomic::root(8, -1))
                       .scaled(Rational(1, 2));
  CHECK(lhs == rhs);
}

TEST_CASE("cyc_root examples and orders") {
  CHECK(Cyclotomic::root(1, 0) == Cyclotomic::one());
  CHECK(Cyclotomic::root(6, 3) == Cyclotomic(-1));
  // z8^2 has multiplicative order 4
  Cyclotomic z82 = Cyclotomic::root(8, 2);
  CHECK(z82.pow(4) == Cyclotomic::one());
  CHECK(z82.pow(2) == Cyclotomic(-1));
  CHECK(z82 == Cyclotomic::root(4, 1).lifted(8));
  // order of z_m^k is m/gcd(m,k)
  for (int m : {6, 8, 12}) {
    for (int k = 0; k < m; ++k) {
      Cyclotomic z = Cyclotomic::root(m, k);
      int ord = m / (int)std::gcd((long long)m, (long long)k == 0 ? (long long)m : (long long)k);
      CHECK(z.pow(ord) == Cyclotomic::one());
      for (int d = 1; d < ord; ++d)
        if (ord % d == 0) CHECK(z.pow(d) != Cyclotomic::one());
    }
  }
}

TEST_CASE("galois examples") {
  CHECK(Cyclotomic::root(5, 1).galois(2) == Cyclotomic::root(5, 2));
  CHECK(Cyclotomic(-1).galois(3) == Cyclotomic(-1));
  Cyclotomic s = Cyclotomic::root(3, 1) + Cyclotomic::root(3, 2);
  CHECK(s.galois(2) == s);
  CHECK_THROWS(Cyclotomic::root(6, 1).galois(2));
}

TEST_CASE("ell_integral examples") {
  CHECK(Cyclotomic(Rational(1, 6)).ell_integral(5));
  CHECK(!Cyclotomic(Rational(1, 6)).ell_integral(2));
  Cyclotomic v = Cyclotomic::root(8, 1).scaled(Rational(1, 3)) +
                 Cyclotomic(Rational(1, 5));
  CHECK(!v.ell_integral(3));
  CHECK(!v.ell_integral(5));
  CHECK(v.ell_integral(7));
}

TEST_CASE("ring axioms on random triples") {
  std::mt19937_64 rng(12345);
  for (int m = 1; m <= 24; ++m) {
    int reps = 42;  // ~1000 triples spread over the 24 orders
    for (int i = 0; i < reps; ++i) {
      Cyclotomic a = random_cyc(m, rng);
      Cyclotomic b = random_cyc(m, rng);
      Cyclotomic c = random_cyc(m, rng);
      CHECK((a + b) + c == a + (b + c));
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
      CHECK(a * b == b * a);
      CHECK(a + b == b + a);
    }
  }
}

TEST_CASE("z_m^m = 1 and Phi_m(z_m) = 0 for m <= 48") {
  for (int m = 1; m <= 48; ++m) {
    Cyclotomic z = Cyclotomic::root(m, 1);
    CHECK(z.pow(m) == Cyclotomic::one());
    const auto& phi = cyclotomic_poly(m);
    Cyclotomic acc = Cyclotomic::zero();
    for (size_t i = phi.size(); i-- > 0;)
      acc = acc * z + Cyclotomic(Rational(phi[i]));
    CHECK(acc == Cyclotomic::zero());
  }
}

TEST_CASE("conjugation and galois composition laws") {
  std::mt19937_64 rng(777);
  for (int m : {5, 8, 12, 15}) {
    for (int rep = 0; rep < 20; ++rep) {
      Cyclotomic a = random_cyc(m, rng);
      CHECK(a.conj().conj() == a);
      for (int j = 1; j < m; ++j) {
        if (std::gcd((long long)j, (long long)m) != 1) continue;
        for (int jp = 1; jp < m; ++jp) {
          if (std::gcd((long long)jp, (long long)m) != 1) continue;
          CHECK(a.galois(j).galois(jp) == a.galois((i64)j * jp % m));
        }
      }
    }
  }
}

TEST_CASE("galois is multiplicative") {
  std::mt19937_64 rng(31);
  for (int rep = 0; rep < 30; ++rep) {
    Cyclotomic a = random_cyc(12, rng), b = random_cyc(12, rng);
    CHECK((a * b).galois(5) == a.galois(5) * b.galois(5));
  }
}

TEST_CASE("ell_integral closed under products") {
  std::mt19937_64 rng(99);
  for (int rep = 0; rep < 200; ++rep) {
    Cyclotomic a = random_cyc(8, rng), b = random_cyc(8, rng);
    for (u64 ell : {2, 3, 5, 7}) {
      if (a.ell_integral(ell) && b.ell_integral(ell))
        CHECK((a * b).ell_integral(ell));
    }
  }
}

TEST_CASE("descended finds the minimal field") {
  Cyclotomic s = Cyclotomic::root(3, 1) + Cyclotomic::root(3, 2);
  CHECK(s.descended().order() == 1);
  CHECK(s.rational_value() == Rational(-1));
  Cyclotomic z4in12 = Cyclotomic::root(12, 3);
  CHECK(z4in12.descended().order() == 4);
  CHECK(Cyclotomic::root(7, 1).descended().order() == 7);
}

TEST_CASE("inverse") {
  std::mt19937_64 rng(5);
  for (int rep = 0; rep < 20; ++rep) {
    Cyclotomic a = random_cyc(12, rng);
    if (a.is_zero()) continue;
    CHECK(a * a.inverse() == Cyclotomic::one());
  }
  CHECK_THROWS(Cyclotomic::zero().inverse());
}
