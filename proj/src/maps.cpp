// This file is part of rmtk, a random-matrix-theory workbench.
// SPDX-License-Identifier: MIT
#include <rmt/maps.hpp>

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace rmt {

TraceWord::TraceWord(std::vector<int> mu_, int q_) : mu(std::move(mu_)), q(q_) {
  for (int m : mu)
    if (m < 1) throw std::domain_error("TraceWord: trace degrees must be positive");
  if (q < 0) throw std::domain_error("TraceWord: q must be nonnegative");
}

int TraceWord::half_edges() const {
  return std::accumulate(mu.begin(), mu.end(), 0) + 4 * q;
}

Rational GenusPolynomial::eval(long n) const {
  Rational out(0);
  for (const auto& [e, c] : coeff) out += c * rational_pow(Rational(n), e);
  return out;
}

std::string GenusPolynomial::to_string() const {
  if (coeff.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = coeff.rbegin(); it != coeff.rend(); ++it) {
    if (!first) os << " + ";
    os << it->second.get_str() << "*N^" << it->first;
    first = false;
  }
  return os.str();
}

namespace {

// Half-edge book-keeping for one enumeration run. Half-edges are labeled
// 0..m-1, grouped consecutively by vertex; rot is the cyclic successor on
// each vertex.
struct WickState {
  int m = 0;
  int n_vertices = 0;
  std::vector<int> rot;
  std::vector<int> vertex_of;
  std::vector<int> match;

  // Union-find over vertices with per-root count of still-unmatched
  // half-edges, for early pruning of disconnected branches.
  std::vector<int> parent;
  std::vector<int> open;

  bool want_connected = false;
  GenusPolynomial result;

  int find(int v) {
    while (parent[v] != v) v = parent[v];
    return v;
  }

  int faces() const {
    std::vector<char> seen(m, 0);
    int cycles = 0;
    for (int h = 0; h < m; ++h) {
      if (seen[h]) continue;
      ++cycles;
      int cur = h;
      while (!seen[cur]) {
        seen[cur] = 1;
        cur = rot[match[cur]];
      }
    }
    return cycles;
  }

  void complete() {
    if (want_connected) {
      int root = find(0);
      for (int v = 1; v < n_vertices; ++v)
        if (find(v) != root) return;
    }
    result.add(faces() - m / 2, Rational(1));
  }

  void recurse(int unmatched) {
    if (unmatched == 0) {
      complete();
      return;
    }
    int h0 = 0;
    while (match[h0] >= 0) ++h0;
    for (int h1 = h0 + 1; h1 < m; ++h1) {
      if (match[h1] >= 0) continue;
      match[h0] = h1;
      match[h1] = h0;

      int ra = find(vertex_of[h0]), rb = find(vertex_of[h1]);
      int saved_parent = -1, saved_open_ra = open[ra], saved_open_rb = open[rb];
      if (ra != rb) {
        parent[rb] = ra;
        saved_parent = rb;
        open[ra] += open[rb];
      }
      open[ra] -= 2;

      bool prune = want_connected && open[ra] == 0 && unmatched > 2;
      if (!prune) recurse(unmatched - 2);

      open[ra] = saved_open_ra;
      if (saved_parent >= 0) {
        parent[saved_parent] = saved_parent;
        open[rb] = saved_open_rb;
      }
      match[h0] = -1;
      match[h1] = -1;
    }
  }
};

WickState make_state(const TraceWord& word, bool connected) {
  WickState st;
  st.m = word.half_edges();
  st.n_vertices = word.vertex_count();
  st.want_connected = connected;
  std::vector<int> degrees = word.mu;
  degrees.insert(degrees.end(), static_cast<size_t>(word.q), 4);
  st.rot.resize(st.m);
  st.vertex_of.resize(st.m);
  st.match.assign(st.m, -1);
  int base = 0, v = 0;
  for (int d : degrees) {
    for (int i = 0; i < d; ++i) {
      st.rot[base + i] = base + (i + 1) % d;
      st.vertex_of[base + i] = v;
    }
    base += d;
    ++v;
  }
  st.parent.resize(st.n_vertices);
  std::iota(st.parent.begin(), st.parent.end(), 0);
  st.open.assign(degrees.begin(), degrees.end());
  return st;
}

} // namespace

GenusPolynomial gaussian_moment(const TraceWord& word, bool connected) {
  int m = word.half_edges();
  if (m > maps_half_edge_cap)
    throw std::domain_error("gaussian_moment: half-edge cap exceeded");
  GenusPolynomial zero;
  if (m % 2 != 0) return zero;
  if (m == 0) {
    // The empty word: <1> = 1 disconnected; the empty cumulant is 0.
    if (!connected) zero.add(0, Rational(1));
    return zero;
  }
  WickState st = make_state(word, connected);
  st.recurse(m);
  return st.result;
}

std::map<std::pair<int, int>, Rational> connected_correlator_coeffs(
    const std::vector<int>& mu, int t_order) {
  int n = static_cast<int>(mu.size());
  std::map<std::pair<int, int>, Rational> table;
  for (int q = 0; q <= t_order; ++q) {
    TraceWord word(mu, q);
    GenusPolynomial P = gaussian_moment(word, true);
    Rational pref = rational_pow(Rational(1, 4), q) / factorial(static_cast<unsigned long>(q));
    for (const auto& [e, c] : P.coeff) {
      // e = 2 − 2g − n − q  =>  g = (2 − n − q − e)/2.
      int twice_g = 2 - n - q - e;
      if (twice_g % 2 != 0) continue;
      int g = twice_g / 2;
      if (g < 0) continue;
      table[{g, q}] += pref * c;
    }
  }
  return table;
}

namespace {

// Polynomials in the power sums p_i, stored as multiset-of-degrees -> coeff.
using SymPoly = std::map<std::vector<int>, Rational>;

SymPoly multiply_by_power_sum(const SymPoly& a, int i) {
  SymPoly out;
  for (const auto& [mset, c] : a) {
    std::vector<int> key = mset;
    key.insert(std::upper_bound(key.begin(), key.end(), i), i);
    out[key] += c;
  }
  return out;
}

// Disconnected Gaussian moment <∏ Tr M^{d_i}> with the unit propagator
// <M_ij M_kl> = δ_il δ_jk at matrix size k: equals k^E · P(k) where P is the
// 1/N-propagator genus polynomial and E the edge count.
Rational unit_propagator_moment(const std::vector<int>& degrees, long k) {
  if (degrees.empty()) return Rational(1);
  TraceWord word(degrees, 0);
  int m = word.half_edges();
  if (m % 2 != 0) return Rational(0);
  GenusPolynomial P = gaussian_moment(word, false);
  return rational_pow(Rational(k), m / 2) * P.eval(k);
}

} // namespace

std::vector<Rational> heine_coeffs(int k) {
  if (k < 0 || k > 4) throw std::domain_error("heine_coeffs: k must be in 0..4");
  // Newton's identities: j·e_j = Σ_{i=1..j} (−1)^{i−1} e_{j−i} p_i.
  std::vector<SymPoly> e(static_cast<size_t>(k) + 1);
  e[0][{}] = Rational(1);
  for (int j = 1; j <= k; ++j) {
    SymPoly acc;
    for (int i = 1; i <= j; ++i) {
      SymPoly term = multiply_by_power_sum(e[j - i], i);
      Rational sign = (i % 2 == 1) ? Rational(1) : Rational(-1);
      for (const auto& [mset, c] : term) acc[mset] += sign * c;
    }
    for (auto& [mset, c] : acc) c /= j;
    e[j] = std::move(acc);
  }
  // det(λ−M) = Σ_j (−1)^j e_j(M) λ^{k−j}; take the Gaussian average of each e_j.
  std::vector<Rational> coeffs(static_cast<size_t>(k) + 1, Rational(0));
  for (int j = 0; j <= k; ++j) {
    Rational avg(0);
    for (const auto& [mset, c] : e[j]) avg += c * unit_propagator_moment(mset, k);
    Rational sign = (j % 2 == 0) ? Rational(1) : Rational(-1);
    coeffs[static_cast<size_t>(k - j)] = sign * avg;
  }
  return coeffs;
}

Rational heine_oracle(int k, const Rational& lambda) {
  std::vector<Rational> c = heine_coeffs(k);
  Rational out(0);
  for (int i = k; i >= 0; --i) out = out * lambda + c[static_cast<size_t>(i)];
  return out;
}

} // namespace rmt
