#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "curvcone/matrix.hpp"
#include "curvcone/rational.hpp"
#include "curvcone/sturm.hpp"
#include "curvcone/unipoly.hpp"
#include "oracles.hpp"

using namespace curvcone;

namespace {

UniPoly from_roots(std::initializer_list<long> roots) {
  UniPoly p(1);
  for (long r : roots) p *= UniPoly{Rat(-r), Rat(1)};
  return p;
}

}  // namespace

TEST_CASE("rationals parse and print canonically") {
  CHECK(parse_rat("6/4") == Rat(3, 2));
  CHECK(parse_rat("-7") == Rat(-7));
  CHECK(to_string(parse_rat("-10/4")) == "-5/2");
  CHECK_THROWS(parse_rat("10/-4"));
  CHECK(to_string(Rat(4)) == "4");
  CHECK_THROWS(parse_rat("1/0"));
  CHECK_THROWS(parse_rat("abc"));
  CHECK_THROWS(parse_rat(""));
  CHECK(round_dyadic(0.3, 4) == Rat(5, 16));
  CHECK(rat_from_double(0.375) == Rat(3, 8));
}

TEST_CASE("extended rationals are totally ordered") {
  CHECK(ExtRat::neg_inf() < ExtRat(Rat(-1000000)));
  CHECK(ExtRat(Rat(5)) < ExtRat::pos_inf());
  CHECK(ExtRat::neg_inf() < ExtRat::pos_inf());
  CHECK(ExtRat::pos_inf() == ExtRat::pos_inf());
  CHECK_THROWS(ExtRat::pos_inf().value());
}

TEST_CASE("polynomial arithmetic") {
  UniPoly p = from_roots({1, 2});
  CHECK(p == UniPoly{Rat(2), Rat(-3), Rat(1)});
  CHECK(p.derivative() == UniPoly{Rat(-3), Rat(2)});
  CHECK(p.eval(Rat(3)) == 2);
  CHECK(p.sign_at(ExtRat::neg_inf()) == 1);
  CHECK((UniPoly{Rat(0), Rat(0), Rat(-1)}).sign_at(ExtRat::neg_inf()) == -1);
  CHECK((UniPoly{Rat(0), Rat(1)}).sign_at(ExtRat::neg_inf()) == -1);
  UniPoly sq = from_roots({1, 1, 2});
  CHECK(sq.squarefree_part() == p);
  CHECK(gcd(from_roots({1, 3}), from_roots({3, 4})) == from_roots({3}));
  auto [q, r] = divmod(from_roots({1, 2, 3}), from_roots({1}));
  CHECK(r.is_zero());
  CHECK(q == from_roots({2, 3}));
  CHECK(p.shift(Rat(1)) == from_roots({0, 1}));
  CHECK(UniPoly().is_zero());
}

TEST_CASE("sturm sequences of small polynomials") {
  SturmSeq s = sturm_sequence(from_roots({-1, 1}));
  REQUIRE(s.polys.size() == 3);
  CHECK(s.polys[1] == UniPoly{Rat(0), Rat(2)});
  CHECK(s.polys[2] == UniPoly(Rat(1)));
  SturmSeq lin = sturm_sequence(UniPoly::x());
  REQUIRE(lin.polys.size() == 2);
  CHECK(lin.polys[1] == UniPoly(Rat(1)));
  SturmSeq rep = sturm_sequence(from_roots({1, 1}).squarefree_part());
  REQUIRE(rep.polys.size() == 2);
  CHECK(rep.polys[0] == from_roots({1}));
  CHECK_THROWS_WITH(sturm_sequence(UniPoly()), doctest::Contains("zero polynomial"));
}

TEST_CASE("root counting examples") {
  CHECK(count_roots(from_roots({1, 2, 3}), ExtRat::neg_inf(), ExtRat::pos_inf()) == 3);
  CHECK(count_roots(UniPoly{Rat(1), Rat(0), Rat(1)}, ExtRat::neg_inf(), ExtRat::pos_inf()) == 0);
  CHECK(count_roots(UniPoly{Rat(-2), Rat(0), Rat(1)}, ExtRat(Rat(0)), ExtRat(Rat(3, 2))) == 1);
  CHECK(count_roots(from_roots({1, 1, 2}), ExtRat::neg_inf(), ExtRat::pos_inf()) == 2);
  CHECK_THROWS_WITH(count_roots(from_roots({1, 2}), ExtRat(Rat(1)), ExtRat(Rat(5))), doctest::Contains("endpoint vanishes"));
}

TEST_CASE("root counts agree with companion-matrix roots") {
  std::mt19937_64 rng(11);
  int checked = 0;
  for (int t = 0; t < 300; ++t) {
    UniPoly p = oracle::random_poly(rng, 1 + t % 8, 20, 1 + t % 5).squarefree_part();
    if (p.degree() < 1) continue;
    std::vector<double> roots = oracle::numeric_real_roots(p);
    Rat a = oracle::random_rat(rng, 40, 7), b = a + Rat(1 + t % 6);
    if (p.eval(a) == 0 || p.eval(b) == 0) continue;
    auto near = [&](double v) { return std::abs(v - a.get_d()) < 1e-6 || std::abs(v - b.get_d()) < 1e-6; };
    if (std::any_of(roots.begin(), roots.end(), near)) continue;
    long inside = std::count_if(roots.begin(), roots.end(), [&](double v) { return v > a.get_d() && v <= b.get_d(); });
    CHECK(count_roots(p, ExtRat::neg_inf(), ExtRat::pos_inf()) == static_cast<int>(roots.size()));
    CHECK(count_roots(p, ExtRat(a), ExtRat(b)) == inside);
    ++checked;
  }
  CHECK(checked > 250);
}

TEST_CASE("isolate_family examples") {
  IsolatingPartition two = isolate_family({from_roots({1}), from_roots({2})});
  REQUIRE(two.num_intervals() == 2);
  CHECK(two.root_flags[0] == std::vector<bool>{true, false});
  CHECK(two.root_flags[1] == std::vector<bool>{false, true});
  CHECK(two.points[1].value() > 1);
  CHECK(two.points[1].value() < 2);

  IsolatingPartition none = isolate_family({UniPoly{Rat(1), Rat(0), Rat(1)}});
  REQUIRE(none.num_intervals() == 1);
  CHECK(none.points.front() == ExtRat::neg_inf());
  CHECK(none.points.back() == ExtRat::pos_inf());
  CHECK(none.root_flags[0] == std::vector<bool>{false});

  IsolatingPartition shared = isolate_family({UniPoly::x(), from_roots({0, 1})});
  REQUIRE(shared.num_intervals() == 2);
  CHECK(shared.root_flags[0] == std::vector<bool>{true, true});
  CHECK(shared.root_flags[1] == std::vector<bool>{false, true});
}

TEST_CASE("isolate_family invariants on random families") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 60; ++t) {
    std::vector<UniPoly> fam;
    for (int k = 0; k < 1 + t % 4; ++k) fam.push_back(oracle::random_poly(rng, 1 + (t + k) % 5, 9, 1 + k));
    IsolatingPartition part = isolate_family(fam);
    REQUIRE(part.points.front() == ExtRat::neg_inf());
    REQUIRE(part.points.back() == ExtRat::pos_inf());
    for (std::size_t j = 0; j + 1 < part.points.size(); ++j) CHECK(part.points[j] < part.points[j + 1]);
    for (std::size_t j = 1; j + 1 < part.points.size(); ++j)
      for (const auto& p : fam) CHECK(p.eval(part.points[j].value()) != 0);
    UniPoly prod(1);
    for (const auto& p : fam) prod *= p;
    UniPoly sqf = prod.squarefree_part();
    int total = 0;
    for (int j = 0; j < part.num_intervals(); ++j) {
      int c = count_roots(sqf, part.points[static_cast<std::size_t>(j)], part.points[static_cast<std::size_t>(j) + 1]);
      if (part.num_intervals() > 1) CHECK(c == 1);
      total += c;
      for (std::size_t i = 0; i < fam.size(); ++i) {
        bool has = count_roots(fam[i].squarefree_part(), part.points[static_cast<std::size_t>(j)],
                               part.points[static_cast<std::size_t>(j) + 1]) > 0;
        CHECK(part.root_flags[static_cast<std::size_t>(j)][i] == has);
      }
    }
    CHECK(total == count_roots(sqf, ExtRat::neg_inf(), ExtRat::pos_inf()));
  }
}

TEST_CASE("discriminant examples and identities") {
  CHECK(discriminant_x(UniPoly{Rat(2), Rat(3), Rat(1)}) == 1);
  CHECK(discriminant_x(from_roots({1, 1})) == 0);
  CHECK(discriminant_x(from_roots({1, 2, 3})) == 4);
  CHECK_THROWS(discriminant_x(UniPoly(Rat(3))));
  std::mt19937_64 rng(3);
  for (int t = 0; t < 100; ++t) {
    Rat a = oracle::random_rat(rng, 9, 2), b = oracle::random_rat(rng, 9, 3), c = oracle::random_rat(rng, 9, 1);
    if (a == 0) a = 1;
    CHECK(discriminant_x(UniPoly{c, b, a}) == b * b - 4 * a * c);
    UniPoly p = oracle::random_poly(rng, 1 + t % 6, 6, 1);
    if (t % 3 == 0) p *= UniPoly{Rat(t % 5), Rat(1)} * UniPoly{Rat(t % 5), Rat(1)};
    Rat d = discriminant_x(p);
    CHECK(discriminant_x(-p) == d);
    CHECK(discriminant_x(p.reflect()) == d);
    CHECK(discriminant_x(p.shift(Rat(t) / 7)) == d);
    CHECK((d == 0) == (gcd(p, p.derivative()).degree() > 0));
  }
}

TEST_CASE("charpoly examples and cofactor agreement") {
  CHECK(charpoly(Matrix<Rat>::identity(2)) == UniPoly{Rat(1), Rat(-2), Rat(1)});
  Matrix<Rat> d3(3, 3);
  d3(0, 0) = 1, d3(1, 1) = 2, d3(2, 2) = 3;
  CHECK(charpoly(d3) == UniPoly{Rat(6), Rat(-11), Rat(6), Rat(-1)});
  Matrix<UniPoly> one(1, 1);
  one(0, 0) = UniPoly::x();
  auto c = charpoly_coeffs(one);
  REQUIRE(c.size() == 2);
  CHECK(c[0] == UniPoly::x());
  CHECK(c[1] == UniPoly(Rat(-1)));
  CHECK_THROWS(charpoly(Matrix<Rat>(2, 3)));
  std::mt19937_64 rng(8);
  for (int t = 0; t < 60; ++t) {
    const int n = 1 + t % 4;
    Matrix<Rat> m(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m(i, j) = oracle::random_rat(rng, 12, 1 + (i + j) % 3);
    CHECK(charpoly(m) == oracle::cofactor_charpoly(m));
    CHECK(determinant(m) == oracle::cofactor_det(m));
  }
}

TEST_CASE("psd status examples") {
  CHECK(psd_status(SymMatRat::diagonal({Rat(1), Rat(0)})) == PsdStatus::kPsdSingular);
  CHECK(psd_status(SymMatRat::diagonal({Rat(1), Rat(2)})) == PsdStatus::kPositiveDefinite);
  SymMatRat m(2);
  m.set(0, 0, 1), m.set(1, 1, 1), m.set(0, 1, 2);
  CHECK(psd_status(m) == PsdStatus::kNotPsd);
  CHECK(psd_status_elimination(m) == PsdStatus::kNotPsd);
  CHECK(psd_status(SymMatRat(3)) == PsdStatus::kPsdSingular);
}

TEST_CASE("psd status agrees with numeric eigenvalues") {
  std::mt19937_64 rng(21);
  int checked = 0;
  for (int t = 0; t < 300; ++t) {
    const int n = 1 + t % 8;
    SymMatRat m = oracle::random_sym(rng, n, 8, 1 + t % 3);
    // Gram products give PSD and singular cases as well as indefinite ones.
    if (t % 3 == 1) {
      Matrix<Rat> b(n, n - (n > 1 ? 1 : 0) + (n == 1));
      for (int i = 0; i < b.rows(); ++i)
        for (int j = 0; j < b.cols(); ++j) b(i, j) = oracle::random_rat(rng, 5, 1);
      SymMatRat g(n);
      for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
          Rat acc = 0;
          for (int k = 0; k < b.cols(); ++k) acc += b(i, k) * b(j, k);
          g.set(i, j, acc);
        }
      m = g;
    }
    PsdStatus exact = psd_status(m);
    CHECK(psd_status_elimination(m) == exact);
    double lam = oracle::min_eig(m);
    if (std::abs(lam) < 1e-6) {
      if (exact != PsdStatus::kNotPsd) CHECK(lam > -1e-9);
      continue;
    }
    ++checked;
    CHECK((exact == PsdStatus::kNotPsd) == (lam < -1e-9));
    CHECK((exact == PsdStatus::kPositiveDefinite) == (lam > 1e-9));
  }
  CHECK(checked > 150);
}

TEST_CASE("rref and null space") {
  Matrix<Rat> m(2, 3);
  m(0, 0) = 1, m(0, 1) = 2, m(0, 2) = 3;
  m(1, 0) = 2, m(1, 1) = 4, m(1, 2) = 7;
  auto ns = null_space(m);
  REQUIRE(ns.size() == 1);
  for (int i = 0; i < 2; ++i) {
    Rat acc = 0;
    for (int j = 0; j < 3; ++j) acc += m(i, j) * ns[0][static_cast<std::size_t>(j)];
    CHECK(acc == 0);
  }
}
