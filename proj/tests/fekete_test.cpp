#include "ank/fekete.hpp"

#include <set>
#include <utility>
#include <vector>

#include "doctest.h"

using namespace ank;

namespace {

// Independent breadth-first oracle: grow the set of self-avoiding paths one
// step at a time and count the frontier.
Integer saw_bfs(unsigned long n) {
  using Point = std::pair<long, long>;
  using Path = std::vector<Point>;
  std::vector<Path> frontier = {{{0, 0}}};
  for (unsigned long step = 0; step < n; ++step) {
    std::vector<Path> next;
    for (const Path& p : frontier) {
      auto [x, y] = p.back();
      for (Point q : {Point{x + 1, y}, Point{x - 1, y}, Point{x, y + 1},
                      Point{x, y - 1}}) {
        if (std::find(p.begin(), p.end(), q) != p.end()) continue;
        Path ext = p;
        ext.push_back(q);
        next.push_back(std::move(ext));
      }
    }
    frontier = std::move(next);
  }
  return Integer(static_cast<unsigned long>(frontier.size()));
}

}  // namespace

TEST_CASE("saw counts") {
  CHECK(saw_count(0) == 1);
  CHECK(saw_count(1) == 4);
  CHECK(saw_count(2) == 12);
  CHECK(saw_count(3) == 36);
  CHECK(saw_count(4) == 100);
  CHECK(saw_count(5) == 284);
  CHECK(saw_count(6) == 780);
  CHECK_THROWS_WITH_AS(saw_count(15), doctest::Contains("BudgetExceeded"),
                       Error);
}

TEST_CASE("saw agrees with the breadth-first oracle") {
  for (unsigned long n = 0; n <= 10; ++n) {
    CAPTURE(n);
    CHECK(saw_count(n) == saw_bfs(n));
  }
}

TEST_CASE("saw bounded by the full walk count 4^n") {
  Integer pow4 = 1;
  for (unsigned long n = 0; n <= 12; ++n) {
    CHECK(saw_count(n) <= pow4);
    pow4 *= 4;
  }
  CHECK(saw_count(1) == 4);  // every length-1 walk is self-avoiding
}

TEST_CASE("saw submultiplicativity") {
  std::vector<Integer> saw(13);
  for (unsigned long n = 0; n <= 12; ++n) saw[n] = saw_count(n);
  for (unsigned long m = 0; m <= 12; ++m)
    for (unsigned long n = 0; m + n <= 12; ++n)
      CHECK(saw[m + n] <= saw[m] * saw[n]);
}

TEST_CASE("additive estimates") {
  // a_{m+n} = a_m + a_n + 1, so 2n - 1 is superadditive and a_n/n = 2 - 1/n
  // climbs toward the limit 2 from below
  FeketeReport sup = fekete_estimate(
      [](unsigned long n) { return Rational(Integer(2 * n - 1)); },
      FeketeMode::Superadditive, 20);
  CHECK(sup.certificate_ok);
  REQUIRE(sup.bound.size() == 20);
  for (std::size_t i = 0; i < 20; ++i) {
    CHECK(sup.bound[i] == Rational(Integer(2 * (i + 1) - 1), Integer(i + 1)));
    if (i) CHECK(sup.bound[i] >= sup.bound[i - 1]);
  }
  CHECK(sup.bound.back() < Rational(2));
  CHECK(sup.bound.back() > Rational(19, 10));
  CHECK_THROWS_WITH_AS(
      fekete_estimate(
          [](unsigned long n) { return Rational(Integer(2 * n - 1)); },
          FeketeMode::Subadditive, 20),
      doctest::Contains("(1, 1)"), Error);

  for (FeketeMode mode : {FeketeMode::Subadditive, FeketeMode::Superadditive}) {
    FeketeReport lin = fekete_estimate(
        [](unsigned long n) { return Rational(Integer(n)); }, mode, 10);
    CHECK(lin.certificate_ok);
    for (const Rational& b : lin.bound) CHECK(b == Rational(1));
  }

  CHECK_THROWS_WITH_AS(
      fekete_estimate(
          [](unsigned long n) { return Rational(Integer(Integer(n) * n)); },
          FeketeMode::Subadditive, 10),
      doctest::Contains("(1, 1)"), Error);
}

TEST_CASE("multiplicative estimates") {
  for (FeketeMode mode :
       {FeketeMode::Submultiplicative, FeketeMode::Supermultiplicative}) {
    FeketeReport r = fekete_estimate(
        [](unsigned long n) { return Rational(Integer(Integer(1) << n)); },
        mode, 10);
    CHECK(r.certificate_ok);
    // a_n^{1/n} = 2 exactly; enclosures stay within a tight window
    for (const Rational& b : r.bound) {
      CHECK((b - Rational(2)).abs() < Rational(1, 1000000));
    }
  }

  CHECK_THROWS_WITH_AS(
      fekete_estimate([](unsigned long n) { return Rational(Integer(n)) - Rational(2); },
                      FeketeMode::Submultiplicative, 5),
      doctest::Contains("positive"), Error);
}

TEST_CASE("saw growth-constant bounds") {
  const unsigned long N = 12;
  std::vector<Integer> saw(N + 1);
  for (unsigned long n = 0; n <= N; ++n) saw[n] = saw_count(n);
  FeketeReport r = fekete_estimate(
      [&](unsigned long n) { return Rational(saw[n]); },
      FeketeMode::Submultiplicative, N);
  CHECK(r.certificate_ok);
  // each enclosure upper endpoint is a valid kappa upper bound and the
  // running min never increases
  for (std::size_t i = 1; i < r.bound.size(); ++i)
    CHECK(r.bound[i] <= r.bound[i - 1]);
  CHECK(r.bound.back() < Rational(3));
  CHECK(r.bound.back() > Rational(26, 10));

  // desk-scale sandwich: the smallest observed step ratio saw(n)/saw(n-1)
  // sits below every reported upper bound
  Rational best_ratio = Rational(saw[1]);
  for (unsigned long n = 2; n <= N; ++n)
    best_ratio = std::min(best_ratio, Rational(saw[n]) / Rational(saw[n - 1]));
  for (const Rational& b : r.bound) CHECK(b >= best_ratio);
}
