#include "torus_cli/oracle.hpp"

#include <numeric>
#include <set>

namespace torus::cli {

namespace {

std::vector<Int> primitive(std::vector<Int> d) {
  Int g = 0;
  for (Int c : d) g = std::gcd(g, c);
  if (g == 0) throw Error("no direction: zero vector");
  for (Int& c : d) c /= g;
  return d;
}

void check(const OracleLine& a, const OracleLine& b) {
  const std::size_t n = a.dir.size();
  if (n < 2 || a.base.size() != n || b.dir.size() != n || b.base.size() != n)
    throw Error("oracle lines must share a dimension of at least 2");
}

Int minor_gcd(const std::vector<Int>& u, const std::vector<Int>& v) {
  Int g = 0;
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = i + 1; j < u.size(); ++j)
      g = std::gcd(g, checked::sub(checked::mul(u[i], v[j]), checked::mul(u[j], v[i])));
  return g;
}

std::set<std::vector<Int>> trace(const std::vector<Int>& dir, const std::vector<Rational>& base, Int m) {
  std::vector<Int> start;
  for (const Rational& c : base) {
    if (m % c.den() != 0) throw Error("oracle bound must be a multiple of every base denominator");
    start.push_back(checked::mul(c.num(), m / c.den()));
  }
  std::set<std::vector<Int>> out;
  for (Int k = 0; k < m; ++k) {
    std::vector<Int> p(dir.size());
    for (std::size_t i = 0; i < dir.size(); ++i) {
      Int v = (start[i] + checked::mul(k, dir[i])) % m;
      p[i] = v < 0 ? v + m : v;
    }
    out.insert(std::move(p));
  }
  return out;
}

}  // namespace

Int oracle_bound(const OracleLine& a, const OracleLine& b) {
  check(a, b);
  const Int g = minor_gcd(primitive(a.dir), primitive(b.dir));
  if (g == 0) throw OracleRefusal("oracle refuses parallel lines");
  Int den = 1;
  for (const auto* base : {&a.base, &b.base})
    for (const Rational& c : *base) den = std::lcm(den, c.den());
  return checked::mul(den, g);
}

Int oracle_count(const OracleLine& a, const OracleLine& b, std::optional<Int> bound) {
  const Int m = oracle_bound(a, b);
  const Int use = bound.value_or(m);
  if (use < 1) throw Error("oracle bound must be positive");
  const auto ta = trace(primitive(a.dir), a.base, use);
  const auto tb = trace(primitive(b.dir), b.base, use);
  Int count = 0;
  for (const auto& p : ta) count += static_cast<Int>(tb.count(p));
  return count;
}

}  // namespace torus::cli
