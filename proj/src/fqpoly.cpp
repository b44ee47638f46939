#include "hecke_atlas/fqpoly.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <tuple>

namespace atlas {

bool FqPoly::operator<(const FqPoly& o) const {
  if (c.size() != o.c.size()) return c.size() < o.c.size();
  // lex on coefficients, high degree first
  for (size_t i = c.size(); i-- > 0;)
    if (c[i] != o.c[i]) return c[i] < o.c[i];
  return false;
}

FqPoly fqpoly_trim(FqPoly a) {
  while (!a.c.empty() && a.c.back() == 0) a.c.pop_back();
  return a;
}

FqPoly fqpoly_x_minus(const FieldTower& tw, int k, fq_t a) {
  FqPoly f;
  f.k = k;
  f.c = {tw.neg(k, a), 1};
  return f;
}

FqPoly fqpoly_mul(const FieldTower& tw, const FqPoly& a, const FqPoly& b) {
  if (a.is_zero() || b.is_zero()) return FqPoly{a.k, {}};
  FqPoly out;
  out.k = a.k;
  out.c.assign(a.c.size() + b.c.size() - 1, 0);
  for (size_t i = 0; i < a.c.size(); ++i) {
    if (!a.c[i]) continue;
    for (size_t j = 0; j < b.c.size(); ++j) {
      if (!b.c[j]) continue;
      out.c[i + j] = tw.add(a.k, out.c[i + j], tw.mul(a.k, a.c[i], b.c[j]));
    }
  }
  return out;
}

FqPoly fqpoly_divmod(const FieldTower& tw, const FqPoly& a, const FqPoly& d,
                     FqPoly* rem) {
  int k = a.k;
  std::vector<fq_t> r = a.c;
  int dd = d.degree();
  FqPoly q;
  q.k = k;
  if ((int)r.size() > dd) q.c.assign(r.size() - dd, 0);
  for (int i = (int)r.size() - 1; i >= dd; --i) {
    fq_t c = r[i];
    if (c) {
      q.c[i - dd] = c;
      for (int j = 0; j <= dd; ++j)
        r[i - dd + j] = tw.sub(k, r[i - dd + j], tw.mul(k, c, d.c[j]));
    }
  }
  if (rem) {
    rem->k = k;
    rem->c = r;
    *rem = fqpoly_trim(*rem);
  }
  return fqpoly_trim(q);
}

fq_t fqpoly_eval(const FieldTower& tw, const FqPoly& f, fq_t x) {
  fq_t acc = 0;
  for (size_t i = f.c.size(); i-- > 0;)
    acc = tw.add(f.k, tw.mul(f.k, acc, x), f.c[i]);
  return acc;
}

fq_t fqpoly_eval_ext(const FieldTower& tw, const FqPoly& f, int kext, fq_t x) {
  fq_t acc = 0;
  for (size_t i = f.c.size(); i-- > 0;)
    acc = tw.add(kext, tw.mul(kext, acc, x), tw.embed(f.k, kext, f.c[i]));
  return acc;
}

namespace {

std::vector<FqPoly> irreducibles_worker(const FieldTower& tw, int k, int d,
                                        const std::vector<FqPoly>& quads) {
  u64 q = tw.size(k);
  std::vector<FqPoly> out;
  if (d == 1) {
    for (u64 a = 0; a < q; ++a) {
      FqPoly f;
      f.k = k;
      f.c = {tw.neg(k, (fq_t)a), 1};
      out.push_back(f);
    }
  } else {
    u64 total = 1;
    for (int i = 0; i < d; ++i) total *= q;
    for (u64 code = 0; code < total; ++code) {
      FqPoly f;
      f.k = k;
      f.c.assign(d + 1, 0);
      f.c[d] = 1;
      u64 cde = code;
      for (int i = 0; i < d; ++i) { f.c[i] = (fq_t)(cde % q); cde /= q; }
      bool has_root = false;
      for (u64 a = 0; a < q && !has_root; ++a)
        if (fqpoly_eval(tw, f, (fq_t)a) == 0) has_root = true;
      if (has_root) continue;
      if (d >= 4) {
        bool divides = false;
        for (const FqPoly& g : quads) {
          FqPoly rem;
          fqpoly_divmod(tw, f, g, &rem);
          if (rem.is_zero()) { divides = true; break; }
        }
        if (divides) continue;
      }
      out.push_back(f);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

const std::vector<FqPoly>& monic_irreducibles(const FieldTower& tw, int k, int d) {
  if (d < 1 || d > 4)
    throw std::invalid_argument("monic_irreducibles: degree out of range");
  static std::map<std::tuple<u64, int, int>, std::vector<FqPoly>> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_tuple(tw.uid(), k, d);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  std::vector<FqPoly> quads;
  if (d >= 4) {
    auto qkey = std::make_tuple(tw.uid(), k, 2);
    if (!cache.count(qkey)) cache[qkey] = irreducibles_worker(tw, k, 2, {});
    quads = cache.at(qkey);
  }
  cache[key] = irreducibles_worker(tw, k, d, quads);
  return cache.at(key);
}

std::vector<std::pair<FqPoly, int>> fqpoly_factor(const FieldTower& tw,
                                                  const FqPoly& f0) {
  FqPoly f = fqpoly_trim(f0);
  if (f.is_zero() || !f.monic(tw))
    throw std::invalid_argument("fqpoly_factor: needs a monic polynomial");
  std::vector<std::pair<FqPoly, int>> out;
  for (int d = 1; d <= f.degree() && f.degree() > 0; ++d) {
    for (const FqPoly& g : monic_irreducibles(tw, f.k, d)) {
      if (f.degree() < d) break;
      int mult = 0;
      for (;;) {
        FqPoly rem;
        FqPoly quo = fqpoly_divmod(tw, f, g, &rem);
        if (!rem.is_zero()) break;
        f = quo;
        ++mult;
      }
      if (mult > 0) out.push_back({g, mult});
    }
  }
  if (f.degree() != 0)
    throw std::logic_error("fqpoly_factor: incomplete factorization");
  std::sort(out.begin(), out.end());
  return out;
}

fq_t fqpoly_root_in_ext(const FieldTower& tw, const FqPoly& f) {
  int d = f.degree();
  int kext = f.k * d;
  u64 qd = tw.size(kext);
  for (u64 x = 0; x < qd; ++x)
    if (fqpoly_eval_ext(tw, f, kext, (fq_t)x) == 0) return (fq_t)x;
  throw std::logic_error("fqpoly_root_in_ext: no root found");
}

FqPoly minimal_poly(const FieldTower& tw, int k, int kext, fq_t beta) {
  // Frobenius orbit of beta under x -> x^{p^k}
  std::vector<fq_t> orbit;
  fq_t b = beta;
  do {
    orbit.push_back(b);
    b = tw.frobenius(kext, b, k);
  } while (b != beta);
  FqPoly prod;
  prod.k = kext;
  prod.c = {1};
  for (fq_t r : orbit)
    prod = fqpoly_mul(tw, prod, fqpoly_x_minus(tw, kext, r));
  // descend coefficients to level k
  FqPoly out;
  out.k = k;
  out.c.resize(prod.c.size());
  for (size_t i = 0; i < prod.c.size(); ++i)
    out.c[i] = tw.project(kext, k, prod.c[i]);
  return out;
}

}  // namespace atlas
