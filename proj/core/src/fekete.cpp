#include "ank/fekete.hpp"

#include <algorithm>
#include <unordered_set>

#include "ank/error.hpp"

namespace ank {

namespace {

bool additive(FeketeMode m) {
  return m == FeketeMode::Subadditive || m == FeketeMode::Superadditive;
}

bool sub_mode(FeketeMode m) {
  return m == FeketeMode::Subadditive || m == FeketeMode::Submultiplicative;
}

constexpr mpfr_prec_t kRootPrec = 96;

}  // namespace

FeketeReport fekete_estimate(const std::function<Rational(unsigned long)>& seq,
                             FeketeMode mode, unsigned long N) {
  if (N < 2) fail("NonCanonical", "fekete_estimate needs N >= 2");
  FeketeReport r;
  r.mode = mode;
  r.prefix.reserve(N);
  for (unsigned long n = 1; n <= N; ++n) {
    Rational a = seq(n);
    if (!additive(mode) && a.sign() <= 0)
      fail("CertificateViolated",
           "multiplicative mode needs positive terms; a_" + std::to_string(n) +
               " = " + a.str());
    r.prefix.push_back(a);
  }
  for (unsigned long m = 1; m < N; ++m)
    for (unsigned long n = 1; m + n <= N; ++n) {
      const Rational& am = r.prefix[m - 1];
      const Rational& an = r.prefix[n - 1];
      const Rational& amn = r.prefix[m + n - 1];
      Rational combined = additive(mode) ? am + an : am * an;
      bool ok = sub_mode(mode) ? amn <= combined : amn >= combined;
      if (!ok)
        fail("CertificateViolated", "inequality fails at (m, n) = (" +
                                        std::to_string(m) + ", " +
                                        std::to_string(n) + ")");
    }
  r.certificate_ok = true;
  for (unsigned long n = 1; n <= N; ++n) {
    bool add = additive(mode);
    Rational ratio = r.prefix[n - 1] / Rational(Integer(n));
    IntervalValue v = add ? IntervalValue::exact(ratio, kRootPrec)
                          : IntervalValue::nth_root(r.prefix[n - 1], n,
                                                    kRootPrec);
    // additive ratios are exact rationals; root enclosures contribute the
    // sound one-sided endpoint
    Rational witness = add ? ratio : (sub_mode(mode) ? v.hi() : v.lo());
    if (r.bound.empty())
      r.bound.push_back(witness);
    else
      r.bound.push_back(sub_mode(mode) ? std::min(r.bound.back(), witness)
                                       : std::max(r.bound.back(), witness));
    r.normalized.push_back(std::move(v));
  }
  return r;
}

namespace {

long long cell_key(long x, long y) {
  return (static_cast<long long>(x) << 32) ^ (y & 0xffffffffLL);
}

void saw_dfs(long x, long y, unsigned long remaining,
             std::unordered_set<long long>& visited, Integer& count) {
  if (remaining == 0) {
    ++count;
    return;
  }
  static constexpr long dx[4] = {1, -1, 0, 0};
  static constexpr long dy[4] = {0, 0, 1, -1};
  for (int d = 0; d < 4; ++d) {
    long nx = x + dx[d], ny = y + dy[d];
    long long key = cell_key(nx, ny);
    if (!visited.insert(key).second) continue;
    saw_dfs(nx, ny, remaining - 1, visited, count);
    visited.erase(key);
  }
}

}  // namespace

Integer saw_count(unsigned long n) {
  if (n > 14) fail("BudgetExceeded", "saw_count supports n <= 14");
  std::unordered_set<long long> visited;
  visited.insert(cell_key(0, 0));
  Integer count = 0;
  saw_dfs(0, 0, n, visited, count);
  return count;
}

}  // namespace ank
