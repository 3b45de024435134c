// This file is part of rmtk, a random-matrix-theory workbench.
// SPDX-License-Identifier: MIT
#include <rmt/toprec.hpp>

#include <rmt/model.hpp>

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>

namespace rmt {

namespace {

constexpr int depth_cap = 512;

struct DepthError {};

// Truncated series in the local variable u: c[i] holds the coefficient of
// u^(lo+i), exponents below lo are exactly zero, exponents past the window are
// unknown. Windows only ever shrink, so every stored coefficient is exact;
// depth problems surface as a failed residue read, never as a wrong value.
struct Ser {
  int lo = 0;
  std::vector<FormalScalar> c;

  int count() const { return static_cast<int>(c.size()); }
  int hi() const { return lo + count(); }
};

Ser ser_const(const FormalScalar& v, int depth) {
  Ser s;
  s.c.assign(static_cast<size_t>(depth), FormalScalar(0L));
  s.c[0] = v;
  return s;
}

Ser add(const Ser& a, const Ser& b) {
  int lo = std::min(a.lo, b.lo);
  int hi = std::min(a.hi(), b.hi());
  if (hi <= lo) throw DepthError{};
  Ser out;
  out.lo = lo;
  out.c.assign(static_cast<size_t>(hi - lo), FormalScalar(0L));
  for (int e = lo; e < hi; ++e) {
    FormalScalar v(0L);
    if (e >= a.lo && e < a.hi()) v += a.c[static_cast<size_t>(e - a.lo)];
    if (e >= b.lo && e < b.hi()) v += b.c[static_cast<size_t>(e - b.lo)];
    out.c[static_cast<size_t>(e - lo)] = v;
  }
  return out;
}

Ser mul(const Ser& a, const Ser& b) {
  int n = std::min(a.count(), b.count());
  if (n <= 0) throw DepthError{};
  Ser out;
  out.lo = a.lo + b.lo;
  out.c.assign(static_cast<size_t>(n), FormalScalar(0L));
  for (int i = 0; i < a.count() && i < n; ++i) {
    if (a.c[static_cast<size_t>(i)].is_zero()) continue;
    for (int j = 0; j < b.count() && i + j < n; ++j)
      out.c[static_cast<size_t>(i + j)] +=
          a.c[static_cast<size_t>(i)] * b.c[static_cast<size_t>(j)];
  }
  return out;
}

Ser scale(Ser a, const FormalScalar& v) {
  for (auto& x : a.c) x = x * v;
  return a;
}

Ser neg(Ser a) {
  for (auto& x : a.c) x = -x;
  return a;
}

Ser inverse(const Ser& a) {
  int off = 0;
  while (off < a.count() && a.c[static_cast<size_t>(off)].is_zero()) ++off;
  if (off == a.count()) throw DepthError{};
  int n = a.count() - off;
  std::vector<FormalScalar> v(a.c.begin() + off, a.c.end());
  std::vector<FormalScalar> inv(static_cast<size_t>(n), FormalScalar(0L));
  FormalScalar lead = v[0].inverse();
  inv[0] = lead;
  for (int k = 1; k < n; ++k) {
    FormalScalar s(0L);
    for (int j = 1; j <= k; ++j)
      s += v[static_cast<size_t>(j)] * inv[static_cast<size_t>(k - j)];
    inv[static_cast<size_t>(k)] = -(s * lead);
  }
  Ser out;
  out.lo = -(a.lo + off);
  out.c = std::move(inv);
  return out;
}

Ser pow_int(const Ser& a, int k) {
  Ser out = a;
  for (int i = 1; i < k; ++i) out = mul(out, a);
  return out;
}

Ser inv_pow(const Ser& a, int k) { return pow_int(inverse(a), k); }

// Termwise primitive with integration constant 0; the constant slot u^0 stays
// in the exactly-zero region because the result window starts at lo+1 >= 1.
Ser integrate(const Ser& a) {
  if (a.lo < 0) throw std::logic_error("toprec: integrating a series with a pole");
  Ser out;
  out.lo = a.lo + 1;
  out.c.assign(a.c.size(), FormalScalar(0L));
  for (int i = 0; i < a.count(); ++i)
    out.c[static_cast<size_t>(i)] =
        a.c[static_cast<size_t>(i)] / FormalScalar(static_cast<long>(a.lo + i + 1));
  return out;
}

// Pole symbols: one (k, s) pair per slot standing for 1/(z_slot - s)^k, with
// (0, 1) marking an untouched slot. A symbolic coefficient is a finite sum of
// such products, and a SymSer is a u-window of those.
using Key = std::vector<std::pair<int, int>>;

Key blank_key(int nslots) { return Key(static_cast<size_t>(nslots), {0, 1}); }

struct Sym {
  std::map<Key, FormalScalar> t;
};

void sym_add_into(Sym& a, const Sym& b) {
  for (const auto& [k, v] : b.t) {
    auto [it, fresh] = a.t.emplace(k, v);
    if (!fresh) {
      it->second += v;
      if (it->second.is_zero()) a.t.erase(it);
    }
  }
}

Key merge_keys(const Key& a, const Key& b) {
  Key out(a.size());
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i].first == 0)
      out[i] = b[i];
    else if (b[i].first == 0)
      out[i] = a[i];
    else
      throw std::logic_error("toprec: pole symbol collision between factors");
  }
  return out;
}

Sym sym_mul(const Sym& a, const Sym& b) {
  Sym out;
  for (const auto& [ka, va] : a.t)
    for (const auto& [kb, vb] : b.t) {
      FormalScalar v = va * vb;
      if (v.is_zero()) continue;
      Key k = merge_keys(ka, kb);
      auto [it, fresh] = out.t.emplace(std::move(k), v);
      if (!fresh) {
        it->second += v;
        if (it->second.is_zero()) out.t.erase(it);
      }
    }
  return out;
}

struct SymSer {
  int lo = 0;
  std::vector<Sym> c;

  int count() const { return static_cast<int>(c.size()); }
  int hi() const { return lo + count(); }
};

SymSer lift(const Ser& a, const Key& key) {
  SymSer out;
  out.lo = a.lo;
  out.c.resize(a.c.size());
  for (size_t i = 0; i < a.c.size(); ++i)
    if (!a.c[i].is_zero()) out.c[i].t.emplace(key, a.c[i]);
  return out;
}

SymSer sym_add(const SymSer& a, const SymSer& b) {
  int lo = std::min(a.lo, b.lo);
  int hi = std::min(a.hi(), b.hi());
  if (hi <= lo) throw DepthError{};
  SymSer out;
  out.lo = lo;
  out.c.resize(static_cast<size_t>(hi - lo));
  for (int e = lo; e < hi; ++e) {
    Sym& dst = out.c[static_cast<size_t>(e - lo)];
    if (e >= a.lo && e < a.hi()) sym_add_into(dst, a.c[static_cast<size_t>(e - a.lo)]);
    if (e >= b.lo && e < b.hi()) sym_add_into(dst, b.c[static_cast<size_t>(e - b.lo)]);
  }
  return out;
}

SymSer sym_mul(const SymSer& a, const SymSer& b) {
  int n = std::min(a.count(), b.count());
  if (n <= 0) throw DepthError{};
  SymSer out;
  out.lo = a.lo + b.lo;
  out.c.resize(static_cast<size_t>(n));
  for (int i = 0; i < a.count() && i < n; ++i) {
    if (a.c[static_cast<size_t>(i)].t.empty()) continue;
    for (int j = 0; j < b.count() && i + j < n; ++j)
      sym_add_into(out.c[static_cast<size_t>(i + j)],
                   sym_mul(a.c[static_cast<size_t>(i)], b.c[static_cast<size_t>(j)]));
  }
  return out;
}

// Everything the residue calculus at one branch point needs; all base series
// live on the uniform window [0, depth) in u = z - a.
struct BranchCtx {
  int a = 1;
  int depth = 0;
  int nslots = 0;
  Ser u;        // z - a
  Ser z;        // a + u
  Ser t1z;      // 1/z - a = -u (1+au)^{-1}
  Ser jsig;     // d(1/z)/dz = -(1+au)^{-2}
  Ser b_cross;  // B(z, 1/z) dz d(1/z) = -u^{-2} (2+au)^{-2}
  Ser invden;   // 1/(w(z) x'(z))
};

// (1+au)^{-1} on [0, depth).
Ser geometric(int a, int depth) {
  Ser s;
  s.c.resize(static_cast<size_t>(depth));
  for (int m = 0; m < depth; ++m)
    s.c[static_cast<size_t>(m)] = FormalScalar(m % 2 == 0 ? 1L : static_cast<long>(-a));
  return s;
}

// z^e as a series in u for any integer e, window [0, depth).
Ser z_power(const BranchCtx& ctx, int e) {
  if (e == 0) return ser_const(FormalScalar(1L), ctx.depth);
  Ser base = e > 0 ? ctx.z : inverse(ctx.z);
  return pow_int(base, e > 0 ? e : -e);
}

Ser laurent_eval(const BranchCtx& ctx, const std::map<int, FormalScalar>& L) {
  std::optional<Ser> acc;
  for (const auto& [e, v] : L) {
    if (v.is_zero()) continue;
    Ser term = scale(z_power(ctx, e), v);
    acc = acc ? add(*acc, term) : std::move(term);
  }
  if (!acc) return ser_const(FormalScalar(0L), ctx.depth);
  return *acc;
}

Ser xprime_series(const BranchCtx& ctx, const FormalScalar& gamma) {
  std::map<int, FormalScalar> xp;
  xp[0] = gamma;
  xp[-2] = -gamma;
  return laurent_eval(ctx, xp);
}

BranchCtx make_branch_ctx(const SpectralCurve& curve, int a, int depth, int nslots) {
  BranchCtx ctx;
  ctx.a = a;
  ctx.depth = depth;
  ctx.nslots = nslots;

  ctx.u.c.assign(static_cast<size_t>(depth), FormalScalar(0L));
  ctx.u.c[1] = FormalScalar(1L);
  ctx.z = ctx.u;
  ctx.z.c[0] = FormalScalar(static_cast<long>(a));

  Ser geo = geometric(a, depth);
  ctx.t1z.c.assign(static_cast<size_t>(depth), FormalScalar(0L));
  for (int m = 1; m < depth; ++m)
    ctx.t1z.c[static_cast<size_t>(m)] = -geo.c[static_cast<size_t>(m - 1)];

  ctx.jsig = neg(mul(geo, geo));

  Ser two_au = ser_const(FormalScalar(2L), depth);
  two_au.c[1] = FormalScalar(static_cast<long>(a));
  ctx.b_cross = neg(inv_pow(two_au, 2));
  ctx.b_cross.lo -= 2;

  Ser den = mul(laurent_eval(ctx, curve.w), xprime_series(ctx, curve.base.gamma));
  ctx.invden = inverse(den);
  return ctx;
}

// (T - Y)^{-k} = (-1)^k sum_m C(k-1+m, m) T^m / (z_slot - a)^{k+m}, where T is
// the series of the evaluation point minus a and Y stands for z_slot - a.
// Needs T = O(u) so each u-coefficient is a finite sum over m.
SymSer pole_expansion(const BranchCtx& ctx, const Ser& T, int slot, int k) {
  if (T.lo != 0 || !T.c[0].is_zero())
    throw std::logic_error("toprec: pole expansion needs T = O(u)");
  SymSer out;
  out.c.resize(static_cast<size_t>(ctx.depth));
  Rational sign = k % 2 == 0 ? Rational(1) : Rational(-1);
  Ser Tm = ser_const(FormalScalar(1L), ctx.depth);
  for (int m = 0; m < ctx.depth; ++m) {
    FormalScalar w(sign * binomial(static_cast<unsigned long>(k - 1 + m),
                                   static_cast<unsigned long>(m)));
    Key key = blank_key(ctx.nslots);
    key[static_cast<size_t>(slot)] = {k + m, ctx.a};
    for (int i = m; i < ctx.depth; ++i) {
      FormalScalar v = Tm.c[static_cast<size_t>(i)] * w;
      if (!v.is_zero()) out.c[static_cast<size_t>(i)].t[key] += v;
    }
    if (m + 1 < ctx.depth) Tm = mul(Tm, T);
  }
  return out;
}

enum class At { Z, Sigma };

// 1/(S - s)^k with S the recursion point z (At::Z) or its involution image
// 1/z (At::Sigma), s the pole location +-1. When s = a the inverse strips the
// leading zero and the factor starts at u^{-k}.
Ser slot_factor(const BranchCtx& ctx, At kind, int k, int s) {
  Ser base = kind == At::Z ? ctx.u : ctx.t1z;
  base.c[0] = FormalScalar(static_cast<long>(ctx.a - s));
  return inv_pow(base, k);
}

} // namespace

FormalScalar residue_at_branch(const LaurentSeries& s) { return s.coeff(-1); }

Rational bergman(const Rational& z1, const Rational& z2) {
  if (z1 == z2) throw std::invalid_argument("bergman: coincident points");
  Rational d = z1 - z2;
  return Rational(1) / (d * d);
}

FormalScalar correlator_value(const CorrelatorForm& form, const std::vector<Rational>& z) {
  if (static_cast<int>(z.size()) != form.n)
    throw std::invalid_argument("correlator_value: wrong number of points");
  for (const Rational& v : z)
    if (v == Rational(1) || v == Rational(-1))
      throw std::invalid_argument("correlator_value: evaluation at a branch point");
  FormalScalar total(0L);
  for (const auto& [key, coeff] : form.terms) {
    FormalScalar term = coeff;
    for (size_t i = 0; i < key.size(); ++i)
      term = term * FormalScalar(rational_pow(z[i] - Rational(key[i].second),
                                              static_cast<long>(-key[i].first)));
    total += term;
  }
  return total;
}

SpectralCurve spectral_curve(const OneCutCurve<FormalScalar>& base) {
  if (base.v.empty() || !base.v[0].is_zero())
    throw std::invalid_argument("spectral_curve: resolvent constant term must vanish");
  SpectralCurve curve;
  curve.base = base;
  for (int k = 1; k < static_cast<int>(base.v.size()); ++k) {
    const FormalScalar& vk = base.v[static_cast<size_t>(k)];
    if (vk.is_zero()) continue;
    curve.w[-k] += vk;
    curve.w[k] -= vk;
  }
  for (int a : {1, -1}) {
    // w'(a) = -2 sum_k k v_k a^(k-1); a simple branch point needs this
    // invertible at truncation order 0.
    FormalScalar slope(0L);
    for (int k = 1; k < static_cast<int>(base.v.size()); ++k) {
      long s = (k - 1) % 2 == 0 ? 1L : static_cast<long>(a);
      slope += base.v[static_cast<size_t>(k)] * FormalScalar(-2L * k * s);
    }
    if (slope.coeff(0) == Rational(0))
      throw std::invalid_argument("spectral_curve: degenerate branch point");
  }
  for (const auto& [e, v] : curve.w) curve.y[e] = v / FormalScalar(2L);
  return curve;
}

SpectralCurve gaussian_curve() {
  std::vector<FormalScalar> vp{FormalScalar(0L), FormalScalar(1L)};
  return spectral_curve(detail::build_one_cut(vp, FormalScalar(0L), FormalScalar(1L)));
}

SpectralCurve quartic_curve(int t_order) {
  if (t_order < 1) throw std::invalid_argument("quartic_curve: t_order must be >= 1");
  return spectral_curve(solve_one_cut(formal_quartic(t_order)));
}

TopRecursion::TopRecursion(SpectralCurve curve, int depth)
    : curve_(std::move(curve)), depth_(std::max(depth, 8)) {}

const CorrelatorForm& TopRecursion::omega(int g, int n) {
  if (g < 0 || n < 1 || 2 * g - 2 + n < 1)
    throw std::invalid_argument("omega: need g >= 0, n >= 1, 2g-2+n >= 1");
  auto it = memo_.find({g, n});
  if (it != memo_.end()) return it->second;
  for (int d = depth_; d <= depth_cap; d *= 2) {
    try {
      CorrelatorForm f = compute_omega(g, n, d);
      return memo_.emplace(std::make_pair(g, n), std::move(f)).first->second;
    } catch (const DepthError&) {
    }
  }
  throw std::runtime_error("omega: series depth cap " + std::to_string(depth_cap) +
                           " exceeded");
}

CorrelatorForm TopRecursion::compute_omega(int g, int n, int depth) {
  CorrelatorForm out;
  out.g = g;
  out.n = n;
  const int spectators = n - 1;
  const int cap = 6 * g + 2 * n - 4;

  for (int a : {1, -1}) {
    BranchCtx ctx = make_branch_ctx(curve_, a, depth, n);

    // A stored form evaluated with its leading slot(s) bound to the recursion
    // point and the rest forwarded to free outer slots as pole symbols.
    auto eval_form_at = [&](const CorrelatorForm& F, const std::vector<At>& bound,
                            const std::vector<int>& free_slots) {
      std::optional<SymSer> acc;
      for (const auto& [key, coeff] : F.terms) {
        Ser scal = ser_const(coeff, ctx.depth);
        Key outkey = blank_key(n);
        for (size_t i = 0; i < key.size(); ++i) {
          if (i < bound.size())
            scal = mul(scal, slot_factor(ctx, bound[i], key[i].first, key[i].second));
          else
            outkey[static_cast<size_t>(free_slots[i - bound.size()])] = key[i];
        }
        for (At kind : bound)
          if (kind == At::Sigma) scal = mul(scal, ctx.jsig);
        SymSer piece = lift(scal, outkey);
        acc = acc ? sym_add(*acc, piece) : std::move(piece);
      }
      if (!acc) throw std::logic_error("toprec: empty lower-order form");
      return *acc;
    };

    auto bergman_factor = [&](At kind, int slot) {
      SymSer b = pole_expansion(ctx, kind == At::Z ? ctx.u : ctx.t1z, slot, 2);
      if (kind == At::Sigma) b = sym_mul(b, lift(ctx.jsig, blank_key(n)));
      return b;
    };

    std::optional<SymSer> bracket;
    auto bracket_add = [&](SymSer piece) {
      bracket = bracket ? sym_add(*bracket, piece) : std::move(piece);
    };

    if (g >= 1) {
      if (g - 1 == 0 && n + 1 == 2) {
        bracket_add(lift(ctx.b_cross, blank_key(n)));
      } else {
        std::vector<int> frees(static_cast<size_t>(spectators));
        for (int j = 0; j < spectators; ++j) frees[static_cast<size_t>(j)] = j + 1;
        bracket_add(eval_form_at(omega(g - 1, n + 1), {At::Z, At::Sigma}, frees));
      }
    }

    for (int g1 = 0; g1 <= g; ++g1) {
      int g2 = g - g1;
      for (int mask = 0; mask < (1 << spectators); ++mask) {
        std::vector<int> I1, I2;
        for (int j = 0; j < spectators; ++j) ((mask >> j) & 1 ? I1 : I2).push_back(j + 1);
        if (g1 == 0 && I1.empty()) continue;
        if (g2 == 0 && I2.empty()) continue;
        auto factor = [&](int gi, const std::vector<int>& Ii, At kind) {
          if (gi == 0 && Ii.size() == 1) return bergman_factor(kind, Ii[0]);
          return eval_form_at(omega(gi, 1 + static_cast<int>(Ii.size())), {kind}, Ii);
        };
        bracket_add(sym_mul(factor(g1, I1, At::Z), factor(g2, I2, At::Sigma)));
      }
    }
    if (!bracket) throw std::logic_error("toprec: empty recursion bracket");

    // Kernel numerator (1/(z1-z) - 1/(z1-1/z)) with z1 - a kept symbolic on
    // slot 0; the two simple-pole symbols cancel exactly at u^0.
    SymSer numerator = sym_add(
        [&] {
          SymSer p = pole_expansion(ctx, ctx.u, 0, 1);
          for (auto& sym : p.c)
            for (auto& [k, v] : sym.t) v = -v;
          return p;
        }(),
        pole_expansion(ctx, ctx.t1z, 0, 1));

    SymSer kernel = sym_mul(
        numerator,
        lift(scale(ctx.invden, FormalScalar(make_rational(1, 2))), blank_key(n)));
    SymSer integrand = sym_mul(kernel, *bracket);

    if (integrand.lo > -1 || integrand.hi() <= -1) throw DepthError{};
    for (const auto& [key, coeff] : integrand.c[static_cast<size_t>(-1 - integrand.lo)].t) {
      if (coeff.is_zero()) continue;
      for (const auto& [k, s] : key) {
        if (k == 1)
          throw std::runtime_error("omega: nonvanishing residue at a branch point");
        if (k < 2 || k > cap)
          throw std::runtime_error("omega: pole order outside the structural cap");
      }
      auto [it, fresh] = out.terms.emplace(key, coeff);
      if (!fresh) {
        it->second += coeff;
        if (it->second.is_zero()) out.terms.erase(it);
      }
    }
  }

  // Slot symmetry is checked, never repaired.
  for (int i = 0; i + 1 < n; ++i) {
    std::map<Key, FormalScalar> swapped;
    for (const auto& [key, coeff] : out.terms) {
      Key k = key;
      std::swap(k[static_cast<size_t>(i)], k[static_cast<size_t>(i + 1)]);
      swapped.emplace(std::move(k), coeff);
    }
    if (swapped != out.terms) throw std::runtime_error("omega: slot symmetry violated");
  }
  return out;
}

FormalScalar TopRecursion::free_energy(int g, const Rational& phi_shift) {
  if (g < 2) throw std::invalid_argument("free_energy: defined for g >= 2");
  const CorrelatorForm& w_g1 = omega(g, 1);
  int k_max = 2;
  for (const auto& [key, coeff] : w_g1.terms) k_max = std::max(k_max, key[0].first);
  FormalScalar total(0L);
  for (int a : {1, -1}) {
    BranchCtx ctx = make_branch_ctx(curve_, a, std::max(depth_, k_max + 2), 1);
    Ser phi =
        integrate(mul(laurent_eval(ctx, curve_.y), xprime_series(ctx, curve_.base.gamma)));
    for (const auto& [key, coeff] : w_g1.terms) {
      if (key[0].second != a) continue;
      int e = key[0].first - 1;
      FormalScalar phik =
          e == 0 ? FormalScalar(phi_shift) : phi.c[static_cast<size_t>(e - phi.lo)];
      total += coeff * phik;
    }
  }
  return total / FormalScalar(static_cast<long>(2 - 2 * g));
}

namespace {

// Physical-branch data as power series in xi = 1/x: q = 1/z(x) from the fixed
// point q = gamma xi / (1 - c xi - gamma xi q), and z'(x) = dz/dx.
struct XiExpansion {
  Ser q;
  Ser zprime;
};

Ser shift_up(Ser s) {
  s.c.pop_back();
  s.c.insert(s.c.begin(), FormalScalar(0L));
  return s;
}

XiExpansion xi_expansion(const SpectralCurve& curve, int len) {
  const FormalScalar& c = curve.base.c;
  const FormalScalar& gamma = curve.base.gamma;
  Ser q;
  q.c.assign(static_cast<size_t>(len), FormalScalar(0L));
  for (int pass = 0; pass <= len; ++pass) {
    Ser den = ser_const(FormalScalar(1L), len);
    den.c[1] = -c;
    for (int i = 0; i + 1 < len; ++i)
      den.c[static_cast<size_t>(i + 1)] -= gamma * q.c[static_cast<size_t>(i)];
    q = shift_up(scale(inverse(den), gamma));
  }
  Ser one_minus_q2 = ser_const(FormalScalar(1L), len);
  Ser q2 = mul(q, q);
  for (int i = 0; i < len; ++i)
    one_minus_q2.c[static_cast<size_t>(i)] -= q2.c[static_cast<size_t>(i)];
  XiExpansion out;
  out.zprime = scale(inverse(one_minus_q2), gamma.inverse());
  out.q = std::move(q);
  return out;
}

FormalScalar xi_coeff(const Ser& s, int e) {
  if (e < s.lo) return FormalScalar(0L);
  if (e >= s.hi())
    throw std::invalid_argument("toprec: requested order beyond series depth");
  return s.c[static_cast<size_t>(e - s.lo)];
}

} // namespace

FormalScalar TopRecursion::expand_to_W(const CorrelatorForm& form,
                                       const std::vector<int>& mu) const {
  if (static_cast<int>(mu.size()) != form.n)
    throw std::invalid_argument("expand_to_W: mu length must match the form");
  int mu_max = 0;
  for (int m : mu) {
    if (m < 0) throw std::invalid_argument("expand_to_W: mu entries must be >= 0");
    mu_max = std::max(mu_max, m);
  }
  int len = mu_max + 3;
  XiExpansion xi = xi_expansion(curve_, len);
  const FormalScalar& c = curve_.base.c;
  const FormalScalar& gamma = curve_.base.gamma;

  // 1/(z - s)^k dz/dx = (gamma xi)^k (1 - (c + s gamma) xi - gamma xi q)^{-k} z'.
  std::map<std::pair<int, int>, Ser> cache;
  auto slot = [&](int k, int s) -> const Ser& {
    auto it = cache.find({k, s});
    if (it != cache.end()) return it->second;
    Ser unit = ser_const(FormalScalar(1L), len);
    unit.c[1] = -(c + FormalScalar(static_cast<long>(s)) * gamma);
    for (int i = 0; i + 1 < len; ++i)
      unit.c[static_cast<size_t>(i + 1)] -= gamma * xi.q.c[static_cast<size_t>(i)];
    Ser f = scale(mul(inv_pow(unit, k), xi.zprime), gamma.pow(k));
    f.lo += k;
    return cache.emplace(std::make_pair(k, s), std::move(f)).first->second;
  };

  FormalScalar total(0L);
  for (const auto& [key, coeff] : form.terms) {
    FormalScalar term = coeff;
    for (size_t i = 0; i < key.size(); ++i)
      term = term * xi_coeff(slot(key[i].first, key[i].second), mu[i] + 1);
    total += term;
  }
  return total;
}

FormalScalar TopRecursion::w01_coefficient(int mu) const {
  if (mu < 0) throw std::invalid_argument("w01_coefficient: mu must be >= 0");
  XiExpansion xi = xi_expansion(curve_, mu + 3);
  FormalScalar total(0L);
  Ser qk = xi.q;
  for (int k = 1; k < static_cast<int>(curve_.base.v.size()); ++k) {
    const FormalScalar& vk = curve_.base.v[static_cast<size_t>(k)];
    if (!vk.is_zero()) total += vk * xi_coeff(qk, mu + 1);
    if (k + 1 < static_cast<int>(curve_.base.v.size())) qk = mul(qk, xi.q);
  }
  return total;
}

FormalScalar TopRecursion::w02_coefficient(int mu1, int mu2) const {
  if (mu1 < 0 || mu2 < 0)
    throw std::invalid_argument("w02_coefficient: mu must be >= 0");
  XiExpansion xi = xi_expansion(curve_, std::max(mu1, mu2) + 3);
  // -B(z1, 1/z2)/(dx1 dx2) = sum_m (m+1) A_m(mu1) A_m(mu2) with
  // A_m(mu) = [xi^(mu+1)] q^(m+2) z'.
  FormalScalar total(0L);
  Ser qpow = mul(xi.q, xi.q);
  for (int m = 0; m + 2 <= std::min(mu1, mu2) + 1; ++m) {
    Ser f = mul(qpow, xi.zprime);
    total += FormalScalar(static_cast<long>(m + 1)) * xi_coeff(f, mu1 + 1) *
             xi_coeff(f, mu2 + 1);
    qpow = mul(qpow, xi.q);
  }
  return total;
}

LaurentSeries TopRecursion::kernel_series(int branch, const Rational& z1, int count) const {
  if (branch != 1 && branch != -1)
    throw std::invalid_argument("kernel_series: branch must be +1 or -1");
  if (z1 == Rational(1) || z1 == Rational(-1))
    throw std::invalid_argument("kernel_series: z1 at a branch point");
  if (count < 1) throw std::invalid_argument("kernel_series: count must be positive");
  BranchCtx ctx = make_branch_ctx(curve_, branch, std::max(count + 8, depth_), 1);

  FormalScalar shift(z1 - Rational(branch));
  Ser base1 = ctx.u;
  base1.c[0] = -shift;
  Ser base2 = ctx.t1z;
  base2.c[0] = -shift;
  // 1/(z1-z) = -1/(u - (z1-a)) and -1/(z1-1/z) = 1/((1/z - a) - (z1-a)).
  Ser A = add(neg(inverse(base1)), inverse(base2));
  Ser K = scale(mul(A, ctx.invden), FormalScalar(make_rational(1, 2)));

  int off = 0;
  while (off < K.count() && K.c[static_cast<size_t>(off)].is_zero()) ++off;
  LaurentSeries out;
  out.lo = K.lo + off;
  for (int i = off; i < K.count() && i - off < count; ++i)
    out.c.push_back(K.c[static_cast<size_t>(i)]);
  return out;
}

} // namespace rmt
