#include "endosplit/factor.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>

namespace endosplit {

namespace {

// ---------------------------------------------------------------------------
// Arithmetic for monic integer polynomials mod a small odd prime p.
// Coefficients in [0, p), ascending order, no trailing zeros.

using ZpPoly = std::vector<std::uint64_t>;

struct Zp {
  std::uint64_t p;
  std::uint64_t add(std::uint64_t a, std::uint64_t b) const { return (a + b) % p; }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return (a + p - b % p) % p; }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
    return (__uint128_t)a * b % p;
  }
  std::uint64_t pow(std::uint64_t a, std::uint64_t e) const {
    std::uint64_t r = 1;
    a %= p;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  std::uint64_t inv(std::uint64_t a) const { return pow(a, p - 2); }
};

void zp_trim(ZpPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

int zp_deg(const ZpPoly& f) { return static_cast<int>(f.size()) - 1; }

ZpPoly zp_mul(const Zp& F, const ZpPoly& a, const ZpPoly& b) {
  if (a.empty() || b.empty()) return {};
  ZpPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
  }
  zp_trim(r);
  return r;
}

ZpPoly zp_sub(const Zp& F, const ZpPoly& a, const ZpPoly& b) {
  ZpPoly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = F.sub(r[i], b[i]);
  zp_trim(r);
  return r;
}

ZpPoly zp_mod(const Zp& F, ZpPoly a, const ZpPoly& m) {
  int dm = zp_deg(m);
  std::uint64_t inv_lc = F.inv(m.back());
  while (zp_deg(a) >= dm) {
    std::uint64_t c = F.mul(a.back(), inv_lc);
    std::size_t shift = a.size() - m.size();
    for (std::size_t i = 0; i < m.size(); ++i)
      a[shift + i] = F.sub(a[shift + i], F.mul(c, m[i]));
    zp_trim(a);
  }
  return a;
}

ZpPoly zp_divexact(const Zp& F, ZpPoly a, const ZpPoly& m) {
  int dm = zp_deg(m);
  if (zp_deg(a) < dm) return {};
  ZpPoly q(a.size() - m.size() + 1, 0);
  std::uint64_t inv_lc = F.inv(m.back());
  while (zp_deg(a) >= dm) {
    std::uint64_t c = F.mul(a.back(), inv_lc);
    std::size_t shift = a.size() - m.size();
    q[shift] = c;
    for (std::size_t i = 0; i < m.size(); ++i)
      a[shift + i] = F.sub(a[shift + i], F.mul(c, m[i]));
    zp_trim(a);
  }
  return q;
}

ZpPoly zp_gcd(const Zp& F, ZpPoly a, ZpPoly b) {
  while (!b.empty()) {
    ZpPoly r = zp_mod(F, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty() && a.back() != 1) {
    std::uint64_t inv = F.inv(a.back());
    for (auto& c : a) c = F.mul(c, inv);
  }
  return a;
}

ZpPoly zp_monic(const Zp& F, ZpPoly a) {
  if (a.empty() || a.back() == 1) return a;
  std::uint64_t inv = F.inv(a.back());
  for (auto& c : a) c = F.mul(c, inv);
  return a;
}

ZpPoly zp_derivative(const Zp& F, const ZpPoly& a) {
  if (a.size() <= 1) return {};
  ZpPoly r(a.size() - 1);
  for (std::size_t i = 1; i < a.size(); ++i) r[i - 1] = F.mul(a[i], i % F.p);
  zp_trim(r);
  return r;
}

ZpPoly zp_powmod(const Zp& F, ZpPoly base, Int e, const ZpPoly& m) {
  ZpPoly r{1};
  base = zp_mod(F, std::move(base), m);
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) r = zp_mod(F, zp_mul(F, r, base), m);
    base = zp_mod(F, zp_mul(F, base, base), m);
    e >>= 1;
  }
  return r;
}

// Deterministic 64-bit stream for the equal-degree splitting trials.
struct SplitMix64 {
  std::uint64_t state;
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
};

// Cantor-Zassenhaus equal-degree splitting, p odd. f monic squarefree,
// product of irreducibles all of degree d.
void zp_equal_degree(const Zp& F, const ZpPoly& f, int d, SplitMix64& rng,
                     std::vector<ZpPoly>& out) {
  if (zp_deg(f) == d) {
    out.push_back(f);
    return;
  }
  Int exponent = (int_pow(Int(static_cast<long>(F.p)), d) - 1) / 2;
  for (;;) {
    ZpPoly trial(static_cast<std::size_t>(2 * d), 0);
    for (auto& c : trial) c = rng.next() % F.p;
    trial.push_back(1);  // keeps the trial nonconstant
    ZpPoly w = zp_powmod(F, trial, exponent, f);
    if (w.empty()) continue;
    w[0] = F.sub(w[0], 1);
    zp_trim(w);
    if (w.empty()) continue;
    ZpPoly g = zp_gcd(F, w, f);
    if (zp_deg(g) <= 0 || zp_deg(g) == zp_deg(f)) continue;
    zp_equal_degree(F, g, d, rng, out);
    zp_equal_degree(F, zp_divexact(F, f, g), d, rng, out);
    return;
  }
}

// Distinct-degree then equal-degree factorization of a monic squarefree f.
std::vector<ZpPoly> zp_factor_squarefree(const Zp& F, ZpPoly f, std::uint64_t seed) {
  std::vector<ZpPoly> out;
  SplitMix64 rng{seed};
  ZpPoly h{0, 1};  // x
  int d = 0;
  while (zp_deg(f) > 0) {
    ++d;
    if (2 * d > zp_deg(f)) {
      out.push_back(zp_monic(F, f));
      break;
    }
    h = zp_powmod(F, h, Int(static_cast<long>(F.p)), f);
    ZpPoly hx = h;
    if (hx.size() < 2) hx.resize(2, 0);
    hx[1] = F.sub(hx[1], 1);
    zp_trim(hx);
    ZpPoly g = hx.empty() ? f : zp_gcd(F, hx, f);
    if (zp_deg(g) > 0) {
      zp_equal_degree(F, g, d, rng, out);
      f = zp_divexact(F, f, g);
      h = zp_mod(F, h, f);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Integer polynomial helpers (ascending coefficients, trailing zeros trimmed).

using ZPoly = std::vector<Int>;

void z_trim(ZPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

ZPoly z_mul(const ZPoly& a, const ZPoly& b) {
  if (a.empty() || b.empty()) return {};
  ZPoly r(a.size() + b.size() - 1, Int(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

// Exact division test for a monic divisor d.
bool z_divides_monic(const ZPoly& a, const ZPoly& d) {
  ZPoly rem = a;
  z_trim(rem);
  while (rem.size() >= d.size()) {
    Int c = rem.back();
    std::size_t shift = rem.size() - d.size();
    for (std::size_t i = 0; i < d.size(); ++i) rem[shift + i] -= c * d[i];
    z_trim(rem);
  }
  return rem.empty();
}

ZPoly z_divexact_monic(const ZPoly& a, const ZPoly& d) {
  ZPoly rem = a;
  ZPoly q(a.size() - d.size() + 1, Int(0));
  while (rem.size() >= d.size()) {
    Int c = rem.back();
    std::size_t shift = rem.size() - d.size();
    q[shift] = c;
    for (std::size_t i = 0; i < d.size(); ++i) rem[shift + i] -= c * d[i];
    z_trim(rem);
  }
  if (!rem.empty()) throw std::logic_error("z_divexact_monic: inexact");
  return q;
}

Int centered(const Int& a, const Int& q) {
  Int r = a % q;
  if (r < 0) r += q;
  if (2 * r > q) r -= q;
  return r;
}

// ---------------------------------------------------------------------------
// Linear Hensel lifting: from f = prod g_i (mod p) to mod p^K, all monic.

struct HenselContext {
  Zp F;
  std::vector<ZpPoly> g_bar;   // factors mod p
  std::vector<ZpPoly> s_bar;   // s_i = inv(prod_{j != i} g_j) mod g_i
};

HenselContext hensel_prepare(const Zp& F, const std::vector<ZpPoly>& factors) {
  HenselContext ctx{F, factors, {}};
  for (std::size_t i = 0; i < factors.size(); ++i) {
    ZpPoly prod{1};
    for (std::size_t j = 0; j < factors.size(); ++j)
      if (j != i) prod = zp_mod(F, zp_mul(F, prod, factors[j]), factors[i]);
    // Invert prod mod g_i via extended Euclid in Zp[x].
    ZpPoly r0 = factors[i], r1 = prod;
    ZpPoly t0, t1{1};
    while (!r1.empty()) {
      ZpPoly q = zp_divexact(F, r0, r1);
      ZpPoly r2 = zp_sub(F, r0, zp_mul(F, q, r1));
      ZpPoly t2 = zp_sub(F, t0, zp_mul(F, q, t1));
      r0 = std::move(r1);
      r1 = std::move(r2);
      t0 = std::move(t1);
      t1 = std::move(t2);
    }
    if (zp_deg(r0) != 0) throw std::logic_error("hensel_prepare: factors not coprime");
    std::uint64_t inv = F.inv(r0[0]);
    for (auto& c : t0) c = F.mul(c, inv);
    ctx.s_bar.push_back(zp_mod(F, t0, factors[i]));
  }
  return ctx;
}

// Lifts factors (mod p^k arrays with mpz coefficients) one power at a time
// until modulus >= target.
std::vector<ZPoly> hensel_lift(const ZPoly& f, const HenselContext& ctx, const Int& target) {
  const Zp& F = ctx.F;
  Int p(static_cast<long>(F.p));
  std::vector<ZPoly> g;
  for (const ZpPoly& gb : ctx.g_bar) {
    ZPoly gi(gb.size());
    for (std::size_t i = 0; i < gb.size(); ++i) gi[i] = Int(static_cast<long>(gb[i]));
    g.push_back(std::move(gi));
  }
  Int modulus = p;
  while (modulus < target) {
    // error = (f - prod g_i) / modulus mod p
    ZPoly prod{Int(1)};
    for (const ZPoly& gi : g) prod = z_mul(prod, gi);
    ZPoly err(std::max(f.size(), prod.size()), Int(0));
    for (std::size_t i = 0; i < f.size(); ++i) err[i] += f[i];
    for (std::size_t i = 0; i < prod.size(); ++i) err[i] -= prod[i];
    ZpPoly e_bar(err.size());
    bool all_zero = true;
    for (std::size_t i = 0; i < err.size(); ++i) {
      Int q = int_divexact(err[i] % (modulus * p) + modulus * p, modulus) % p;
      e_bar[i] = q.get_ui();
      if (e_bar[i] != 0) all_zero = false;
    }
    if (all_zero) {
      modulus *= p;
      continue;
    }
    zp_trim(e_bar);
    for (std::size_t i = 0; i < g.size(); ++i) {
      // delta_i = e * s_i mod g_i  (all mod p)
      ZpPoly delta = zp_mod(F, zp_mul(F, e_bar, ctx.s_bar[i]), ctx.g_bar[i]);
      for (std::size_t j = 0; j < delta.size(); ++j)
        g[i][j] += modulus * Int(static_cast<long>(delta[j]));
    }
    modulus *= p;
    // Keep coefficients reduced mod the new modulus.
    for (ZPoly& gi : g)
      for (Int& c : gi) {
        c %= modulus;
        if (c < 0) c += modulus;
      }
  }
  return g;
}

// ---------------------------------------------------------------------------
// Monic Zassenhaus on a squarefree monic integer polynomial.

bool zp_is_squarefree(const Zp& F, const ZPoly& f) {
  ZpPoly fb(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    Int c = f[i] % F.p;
    if (c < 0) c += F.p;
    fb[i] = c.get_ui();
  }
  zp_trim(fb);
  if (zp_deg(fb) != static_cast<int>(f.size()) - 1) return false;  // p | lc
  ZpPoly d = zp_derivative(F, fb);
  if (d.empty()) return false;
  return zp_deg(zp_gcd(F, fb, d)) == 0;
}

bool is_small_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<ZPoly> factor_squarefree_monic_z(const ZPoly& f) {
  const int n = static_cast<int>(f.size()) - 1;
  if (n <= 1) return {f};

  // Smallest prime >= 3 keeping f squarefree mod p.
  std::uint64_t p = 3;
  while (!(is_small_prime(p) && zp_is_squarefree(Zp{p}, f))) ++p;
  Zp F{p};

  ZpPoly fbar(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    Int c = f[i] % p;
    if (c < 0) c += p;
    fbar[i] = c.get_ui();
  }

  std::uint64_t seed = 0x243f6a8885a308d3ULL;  // stirred with the content below
  for (const Int& c : f) seed = seed * 1099511628211ULL + mpz_fdiv_ui(c.get_mpz_t(), 0x7fffffff);
  std::vector<ZpPoly> modular = zp_factor_squarefree(F, fbar, seed);
  std::sort(modular.begin(), modular.end());
  if (modular.size() == 1) return {f};

  // Mignotte-style bound: |h_i| <= 2^n (||f||_2 + 1) for monic factors h of f.
  Int norm2(0);
  for (const Int& c : f) norm2 += c * c;
  Int bound;
  mpz_sqrt(bound.get_mpz_t(), norm2.get_mpz_t());
  bound = (bound + 1) * int_pow(Int(2), static_cast<unsigned long>(n));
  Int target = 2 * bound + 1;

  HenselContext ctx = hensel_prepare(F, modular);
  std::vector<ZPoly> lifted = hensel_lift(f, ctx, target);
  Int modulus(static_cast<long>(p));
  while (modulus < target) modulus *= p;

  // Brute-force subset recombination over the lifted factors.
  std::vector<ZPoly> result;
  ZPoly remaining = f;
  std::vector<int> live(lifted.size());
  for (std::size_t i = 0; i < lifted.size(); ++i) live[i] = static_cast<int>(i);

  auto candidate_from = [&](const std::vector<int>& subset) {
    ZPoly prod{Int(1)};
    for (int idx : subset) prod = z_mul(prod, lifted[idx]);
    for (Int& c : prod) c = centered(c, modulus);
    z_trim(prod);
    return prod;
  };

  auto next_combination = [](std::vector<std::size_t>& idx, std::size_t total) {
    std::size_t card = idx.size();
    for (std::size_t i = card; i-- > 0;) {
      if (idx[i] + (card - i) < total) {
        ++idx[i];
        for (std::size_t j = i + 1; j < card; ++j) idx[j] = idx[j - 1] + 1;
        return true;
      }
    }
    return false;
  };

  std::size_t card = 1;
  while (2 * card <= live.size()) {
    bool found = false;
    std::vector<int> subset(card);
    std::vector<std::size_t> idx(card);
    for (std::size_t i = 0; i < card; ++i) idx[i] = i;
    do {
      for (std::size_t i = 0; i < card; ++i) subset[i] = live[idx[i]];
      ZPoly cand = candidate_from(subset);
      if (!cand.empty() && cand.back() == 1 && z_divides_monic(remaining, cand)) {
        result.push_back(cand);
        remaining = z_divexact_monic(remaining, cand);
        std::vector<int> next_live;
        for (std::size_t i = 0, k = 0; i < live.size(); ++i) {
          if (k < card && idx[k] == i) {
            ++k;
            continue;
          }
          next_live.push_back(live[i]);
        }
        live = std::move(next_live);
        found = true;
        break;
      }
    } while (next_combination(idx, live.size()));
    if (!found) ++card;
  }
  if (static_cast<int>(remaining.size()) - 1 > 0) result.push_back(remaining);
  return result;
}

// Factors a monic squarefree rational polynomial into monic irreducibles.
std::vector<QPoly> factor_squarefree_monic(const QPoly& g) {
  if (g.degree() <= 1) return {g};
  // Substitute x = y/c to land on a monic integer polynomial.
  Int c(1);
  for (const Rat& coeff : g.coeffs()) c = int_lcm(c, coeff.get_den());
  const int n = g.degree();
  ZPoly big(static_cast<std::size_t>(n) + 1);
  // G(y) = c^n g(y/c): coefficient of y^i is g_i c^(n-i).
  for (int i = 0; i <= n; ++i) {
    Rat v = g.coeff(i) * Rat(int_pow(c, static_cast<unsigned long>(n - i)));
    big[i] = v.get_num();
  }
  std::vector<ZPoly> zfactors = factor_squarefree_monic_z(big);
  std::vector<QPoly> out;
  for (const ZPoly& h : zfactors) {
    // h(y) -> h(c x) / c^deg(h), monic over Q.
    int dh = static_cast<int>(h.size()) - 1;
    QVector coeffs(h.size());
    for (int i = 0; i <= dh; ++i)
      coeffs[i] = make_rat(h[i] * int_pow(c, static_cast<unsigned long>(i)),
                           int_pow(c, static_cast<unsigned long>(dh)));
    out.push_back(QPoly(std::move(coeffs)));
  }
  return out;
}

}  // namespace

QPoly Factorization::reconstruct() const {
  QPoly r = QPoly::constant(unit);
  for (const FactorPower& fp : factors)
    for (unsigned i = 0; i < fp.multiplicity; ++i) r = r * fp.factor;
  return r;
}

std::vector<std::pair<QPoly, unsigned>> squarefree_decomposition(const QPoly& monic) {
  // Yun's algorithm.
  std::vector<std::pair<QPoly, unsigned>> out;
  if (monic.degree() < 1) return out;
  QPoly d = monic.derivative();
  QPoly a = poly_gcd(monic, d);
  QPoly b = monic.divmod(a).first;
  QPoly cpoly = d.divmod(a).first;
  unsigned i = 1;
  for (;;) {
    QPoly z = cpoly - b.derivative();
    if (z.is_zero()) {
      if (b.degree() >= 1) out.emplace_back(b.monic(), i);
      break;
    }
    QPoly g = poly_gcd(b, z);
    if (g.degree() >= 1) out.emplace_back(g.monic(), i);
    b = b.divmod(g).first;
    cpoly = z.divmod(g).first;
    ++i;
  }
  return out;
}

Factorization factor_rational(const QPoly& p) {
  if (p.is_zero()) throw std::invalid_argument("factor_rational: zero input");
  Factorization out;
  out.unit = p.lc();
  if (p.degree() == 0) return out;
  QPoly pm = p.monic();
  for (const auto& [sf, mult] : squarefree_decomposition(pm)) {
    for (const QPoly& irr : factor_squarefree_monic(sf))
      out.factors.push_back({irr, mult});
  }
  std::sort(out.factors.begin(), out.factors.end(),
            [](const FactorPower& a, const FactorPower& b) {
              if (a.factor.degree() != b.factor.degree())
                return a.factor.degree() < b.factor.degree();
              return a.factor.coeffs() < b.factor.coeffs();
            });
  return out;
}

bool is_irreducible(const QPoly& p) {
  if (p.degree() < 1) return false;
  Factorization f = factor_rational(p);
  return f.factors.size() == 1 && f.factors[0].multiplicity == 1;
}

}  // namespace endosplit
