#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "parallelo/graph.hpp"

namespace parallelo {

namespace detail {

/// Fixed-size bitset over vertex indices.
class Bits {
 public:
  Bits() = default;
  explicit Bits(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}
  void set(std::size_t i) { w_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(std::size_t i) { w_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  bool test(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1; }
  bool any() const {
    return std::any_of(w_.begin(), w_.end(), [](std::uint64_t x) { return x != 0; });
  }
  std::size_t count() const {
    std::size_t c = 0;
    for (auto x : w_) c += static_cast<std::size_t>(__builtin_popcountll(x));
    return c;
  }
  Bits operator&(const Bits& o) const {
    Bits r = *this;
    for (std::size_t k = 0; k < w_.size(); ++k) r.w_[k] &= o.w_[k];
    return r;
  }
  Bits& and_not(const Bits& o) {
    for (std::size_t k = 0; k < w_.size(); ++k) w_[k] &= ~o.w_[k];
    return *this;
  }
  /// Lowest set index, or npos.
  std::size_t first() const {
    for (std::size_t k = 0; k < w_.size(); ++k)
      if (w_[k]) return (k << 6) + static_cast<std::size_t>(__builtin_ctzll(w_[k]));
    return npos;
  }
  std::size_t next(std::size_t i) const {
    ++i;
    if (i >= n_) return npos;
    std::size_t k = i >> 6;
    std::uint64_t x = w_[k] & (~std::uint64_t{0} << (i & 63));
    while (true) {
      if (x) return (k << 6) + static_cast<std::size_t>(__builtin_ctzll(x));
      if (++k >= w_.size()) return npos;
      x = w_[k];
    }
  }
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> w_;
};

}  // namespace detail

struct MisBudget {
  std::uint64_t max_nodes = 20'000'000;  // branch-and-bound search nodes
  std::size_t max_states = 1'500'000;      // live states of the frontier DP
};

enum class Optimality { Proven, TimedOut };

struct MisResult {
  int alpha = 0;  // size of the best independent set found
  std::vector<int> witness;
  std::size_t vertex_count = 0;
  Rational ratio;
  Optimality optimality = Optimality::Proven;
  int best_lower = 0;
  int best_upper = 0;
  std::uint64_t nodes = 0;
  std::string method;  // "frontier-dp" or "branch-and-bound"

  bool proven() const { return optimality == Optimality::Proven; }
};

/// Checks independence using the graph's own adjacency lists.
inline bool verify_independent_set(const GeometricGraph& g, const std::vector<int>& S) {
  for (std::size_t a = 0; a < S.size(); ++a) {
    if (S[a] < 0 || S[a] >= static_cast<int>(g.size())) return false;
    for (std::size_t b = a + 1; b < S.size(); ++b)
      if (S[a] == S[b] || g.adjacent(S[a], S[b])) return false;
  }
  return true;
}

namespace detail {

/// Orders `candidates` clique by clique along a greedy clique partition of
/// the induced subgraph, so index-order greedy covering starts from it.
inline std::vector<int> clique_partition_order(const GeometricGraph& g, const std::vector<int>& candidates) {
  std::vector<char> alive(g.size(), 0);
  for (int v : candidates) alive[static_cast<std::size_t>(v)] = 1;
  auto live_degree = [&](int v) {
    int d = 0;
    for (int j : g.neighbors(v)) d += alive[static_cast<std::size_t>(j)];
    return d;
  };
  std::vector<int> order, score(g.size(), 0);
  std::vector<char> in_cand(g.size(), 0), adj_pick(g.size(), 0);
  order.reserve(candidates.size());
  for (std::size_t placed = 0; placed < candidates.size();) {
    int v = -1, best = 0;
    for (int c : candidates) {
      if (!alive[static_cast<std::size_t>(c)]) continue;
      int d = live_degree(c);
      if (v < 0 || d < best) {
        v = c;
        best = d;
      }
    }
    std::vector<int> clique{v};
    std::vector<int> cand;
    for (int j : g.neighbors(v))
      if (alive[static_cast<std::size_t>(j)]) cand.push_back(j);
    // score[u] = neighbors of u inside cand, kept current as cand shrinks.
    for (int u : cand) in_cand[static_cast<std::size_t>(u)] = 1;
    for (int u : cand) {
      int s = 0;
      for (int w : g.neighbors(u)) s += in_cand[static_cast<std::size_t>(w)];
      score[static_cast<std::size_t>(u)] = s;
    }
    while (!cand.empty()) {
      int pick = -1;
      for (int u : cand)
        if (pick < 0 || score[static_cast<std::size_t>(u)] > score[static_cast<std::size_t>(pick)]) pick = u;
      clique.push_back(pick);
      std::vector<int> next;
      for (int w : g.neighbors(pick))
        if (in_cand[static_cast<std::size_t>(w)]) adj_pick[static_cast<std::size_t>(w)] = 1;
      for (int w : cand) {
        if (w != pick && adj_pick[static_cast<std::size_t>(w)]) {
          next.push_back(w);
          continue;
        }
        in_cand[static_cast<std::size_t>(w)] = 0;
        for (int x : g.neighbors(w)) --score[static_cast<std::size_t>(x)];
      }
      for (int w : cand) adj_pick[static_cast<std::size_t>(w)] = 0;
      cand = std::move(next);
    }
    for (int c : clique) {
      alive[static_cast<std::size_t>(c)] = 0;
      order.push_back(c);
    }
    placed += clique.size();
  }
  return order;
}

/// Exact MIS by dynamic programming along the vertex order (candidates in
/// increasing index). A state records which frontier vertices (processed,
/// with a later neighbor) are chosen. Returns nullopt when the frontier
/// exceeds 128 vertices or the state count exceeds `max_states`.
inline std::optional<std::vector<int>> frontier_mis(const GeometricGraph& g, const std::vector<int>& candidates,
                                                    std::size_t max_states) {
  const std::size_t m = candidates.size();
  std::vector<int> pos(g.size(), -1);
  for (std::size_t i = 0; i < m; ++i) pos[static_cast<std::size_t>(candidates[i])] = static_cast<int>(i);
  std::vector<int> last(m);
  for (std::size_t i = 0; i < m; ++i) {
    last[i] = static_cast<int>(i);
    for (int nb : g.neighbors(candidates[i])) last[i] = std::max(last[i], pos[static_cast<std::size_t>(nb)]);
  }

  struct Key {
    std::uint64_t lo = 0, hi = 0;
    bool operator==(const Key&) const = default;
    bool test(int s) const { return s < 64 ? (lo >> s) & 1 : (hi >> (s - 64)) & 1; }
    void set(int s) { (s < 64 ? lo : hi) |= std::uint64_t{1} << (s & 63); }
    void reset(int s) { (s < 64 ? lo : hi) &= ~(std::uint64_t{1} << (s & 63)); }
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const {
      std::uint64_t x = k.lo * 0x9E3779B97F4A7C15ULL ^ (k.hi + 0x632BE59BD9B4E019ULL) * 0xC2B2AE3D27D4EB4FULL;
      return static_cast<std::size_t>(x ^ (x >> 29));
    }
  };
  struct State {
    Key key;
    int count = 0;
    Bits chosen;
  };

  std::vector<State> states{State{Key{}, 0, Bits(m)}};
  std::vector<int> slot_of(m, -1);
  std::vector<int> free_slots;
  for (int s = 127; s >= 0; --s) free_slots.push_back(s);
  std::vector<std::vector<int>> expiring(m);  // positions leaving the frontier after step i

  for (std::size_t i = 0; i < m; ++i) {
    std::vector<int> earlier_slots;
    for (int nb : g.neighbors(candidates[i])) {
      int p = pos[static_cast<std::size_t>(nb)];
      if (p >= 0 && p < static_cast<int>(i)) earlier_slots.push_back(slot_of[static_cast<std::size_t>(p)]);
    }
    const bool stays = last[i] > static_cast<int>(i);
    int my_slot = -1;
    if (stays) {
      if (free_slots.empty()) return std::nullopt;
      my_slot = free_slots.back();
      free_slots.pop_back();
      slot_of[i] = my_slot;
      expiring[static_cast<std::size_t>(last[i])].push_back(static_cast<int>(i));
    }
    std::vector<int> leaving_slots;
    for (int p : expiring[i]) leaving_slots.push_back(slot_of[static_cast<std::size_t>(p)]);

    // Open-addressing table from key to index in `next`.
    std::size_t cap = 16;
    while (cap < 4 * states.size()) cap <<= 1;
    std::vector<std::uint32_t> table(cap, UINT32_MAX);
    std::vector<State> next;
    next.reserve(2 * states.size());
    auto offer = [&](Key k, int count, const Bits& chosen, bool take) {
      for (int s : leaving_slots) k.reset(s);
      std::size_t h = KeyHash{}(k) & (cap - 1);
      while (table[h] != UINT32_MAX && !(next[table[h]].key == k)) h = (h + 1) & (cap - 1);
      if (table[h] == UINT32_MAX) {
        table[h] = static_cast<std::uint32_t>(next.size());
        next.push_back(State{k, count, chosen});
        if (take) next.back().chosen.set(i);
      } else if (count > next[table[h]].count) {
        State& t = next[table[h]];
        t.count = count;
        t.chosen = chosen;
        if (take) t.chosen.set(i);
      }
    };
    for (const auto& st : states) {
      offer(st.key, st.count, st.chosen, false);
      bool free = std::none_of(earlier_slots.begin(), earlier_slots.end(), [&](int s) { return st.key.test(s); });
      if (free) {
        Key k = st.key;
        if (stays) k.set(my_slot);
        offer(k, st.count + 1, st.chosen, true);
      }
    }
    if (next.size() > max_states) return std::nullopt;
    for (int s : leaving_slots) free_slots.push_back(s);
    std::sort(free_slots.begin(), free_slots.end(), std::greater<>());
    states = std::move(next);
  }
  const State* best = &states.front();
  for (const auto& st : states)
    if (st.count > best->count) best = &st;
  std::vector<int> out;
  for (std::size_t i = best->chosen.first(); i != Bits::npos; i = best->chosen.next(i)) out.push_back(candidates[i]);
  return out;
}

/// Maximum independent set as maximum clique of the complement, with a
/// greedy clique-cover (complement coloring) bound. Vertices are relabeled
/// by a degeneracy-style order; the search is single-threaded.
class MisSolver {
 public:
  MisSolver(const GeometricGraph& g, const std::vector<int>& candidates, std::uint64_t max_nodes)
      : g_(g), max_nodes_(max_nodes) {
    order_ = clique_partition_order(g, candidates);
    const std::size_t m = order_.size();
    std::vector<int> pos(g.size(), -1);
    for (std::size_t i = 0; i < m; ++i) pos[static_cast<std::size_t>(order_[i])] = static_cast<int>(i);
    non_adj_.assign(m, Bits(m));
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j)
        if (j != i) non_adj_[i].set(j);
      for (int nb : g.neighbors(order_[i])) {
        int p = pos[static_cast<std::size_t>(nb)];
        if (p >= 0) non_adj_[i].reset(static_cast<std::size_t>(p));
      }
    }
  }

  void seed(const std::vector<int>& local) {
    if (local.size() > best_.size()) best_ = local;
  }

  /// Returns false when the node budget ran out.
  bool run() {
    const std::size_t m = order_.size();
    Bits all(m);
    for (std::size_t i = 0; i < m; ++i) all.set(i);
    std::vector<int> current;
    root_bound_ = m == 0 ? 0 : color_bound(all);
    expand(current, all);
    return !aborted_;
  }

  std::vector<int> best_vertices() const {
    std::vector<int> out;
    for (int i : best_) out.push_back(order_[static_cast<std::size_t>(i)]);
    std::sort(out.begin(), out.end());
    return out;
  }
  const std::vector<int>& order() const { return order_; }
  int root_bound() const { return root_bound_; }
  std::uint64_t nodes() const { return nodes_; }

 private:
  /// Greedy coloring of the complement restricted to P; returns the number of colors.
  int color_bound(const Bits& P) {
    std::vector<int> verts, colors;
    greedy_color(P, verts, colors);
    return colors.empty() ? 0 : colors.back();
  }

  /// Colors P in index order into independent sets of the complement
  /// (cliques of G); verts/colors are sorted by nondecreasing color.
  void greedy_color(const Bits& P, std::vector<int>& verts, std::vector<int>& colors) {
    Bits uncolored = P;
    int color = 0;
    while (uncolored.any()) {
      ++color;
      Bits q = uncolored;
      for (std::size_t v = q.first(); v != Bits::npos; v = q.next(v)) {
        uncolored.reset(v);
        q.and_not(non_adj_[v]);
        verts.push_back(static_cast<int>(v));
        colors.push_back(color);
      }
    }
  }

  void expand(std::vector<int>& current, Bits P) {
    if (aborted_) return;
    if (++nodes_ > max_nodes_) {
      aborted_ = true;
      return;
    }
    std::vector<int> verts, colors;
    greedy_color(P, verts, colors);
    for (std::size_t k = verts.size(); k-- > 0;) {
      if (current.size() + static_cast<std::size_t>(colors[k]) <= best_.size()) return;
      const std::size_t v = static_cast<std::size_t>(verts[k]);
      current.push_back(static_cast<int>(v));
      Bits next = P & non_adj_[v];
      if (!next.any()) {
        if (current.size() > best_.size()) best_ = current;
      } else {
        expand(current, next);
      }
      current.pop_back();
      P.reset(v);
      if (aborted_) return;
    }
  }

  const GeometricGraph& g_;
  std::uint64_t max_nodes_;
  std::uint64_t nodes_ = 0;
  bool aborted_ = false;
  int root_bound_ = 0;
  std::vector<int> order_;
  std::vector<Bits> non_adj_;
  std::vector<int> best_;
};

/// Min-degree greedy independent set within `candidates`.
inline std::vector<int> greedy_independent_set(const GeometricGraph& g, const std::vector<int>& candidates) {
  std::vector<char> alive(g.size(), 0);
  for (int v : candidates) alive[static_cast<std::size_t>(v)] = 1;
  std::vector<int> out;
  while (true) {
    int best = -1, best_deg = 0;
    for (int v : candidates) {
      if (!alive[static_cast<std::size_t>(v)]) continue;
      int d = 0;
      for (int j : g.neighbors(v)) d += alive[static_cast<std::size_t>(j)];
      if (best < 0 || d < best_deg) {
        best = v;
        best_deg = d;
      }
    }
    if (best < 0) break;
    out.push_back(best);
    alive[static_cast<std::size_t>(best)] = 0;
    for (int j : g.neighbors(best)) alive[static_cast<std::size_t>(j)] = 0;
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

/// Exact maximum independent set by branch and bound. `forced` vertices are
/// included in every candidate set; `forbidden` ones are excluded. A node
/// budget makes the result deterministic; when it runs out the result holds
/// the best set found and an upper bound.
inline MisResult max_independent_set(const GeometricGraph& g, MisBudget budget = {}, std::vector<int> forced = {},
                                     const std::vector<int>& forbidden = {}) {
  std::sort(forced.begin(), forced.end());
  if (!verify_independent_set(g, forced)) throw std::invalid_argument("forced vertices are not independent");
  std::vector<char> excluded(g.size(), 0);
  for (int v : forbidden) excluded[static_cast<std::size_t>(v)] = 1;
  for (int v : forced) {
    if (excluded[static_cast<std::size_t>(v)]) throw std::invalid_argument("vertex both forced and forbidden");
    excluded[static_cast<std::size_t>(v)] = 1;
    for (int j : g.neighbors(v)) excluded[static_cast<std::size_t>(j)] = 1;
  }
  std::vector<int> candidates;
  for (int v = 0; v < static_cast<int>(g.size()); ++v)
    if (!excluded[static_cast<std::size_t>(v)]) candidates.push_back(v);

  MisResult r;
  r.vertex_count = g.size();
  std::vector<int> found;
  if (auto dp = detail::frontier_mis(g, candidates, budget.max_states)) {
    found = std::move(*dp);
    r.method = "frontier-dp";
    r.optimality = Optimality::Proven;
  } else {
    detail::MisSolver solver(g, candidates, budget.max_nodes);
    // Seed with a greedy solution, translated into solver positions.
    auto greedy = detail::greedy_independent_set(g, candidates);
    std::vector<int> pos(g.size(), -1);
    for (std::size_t i = 0; i < solver.order().size(); ++i) pos[static_cast<std::size_t>(solver.order()[i])] = static_cast<int>(i);
    std::vector<int> local;
    for (int v : greedy) local.push_back(pos[static_cast<std::size_t>(v)]);
    solver.seed(local);
    const bool done = solver.run();
    found = solver.best_vertices();
    r.method = "branch-and-bound";
    r.nodes = solver.nodes();
    r.optimality = done ? Optimality::Proven : Optimality::TimedOut;
    r.best_upper = static_cast<int>(forced.size()) + solver.root_bound();
  }
  r.witness = forced;
  r.witness.insert(r.witness.end(), found.begin(), found.end());
  std::sort(r.witness.begin(), r.witness.end());
  if (!verify_independent_set(g, r.witness)) throw CrossCheckMismatch("solver returned a dependent set");
  r.alpha = static_cast<int>(r.witness.size());
  r.ratio = g.size() ? make_rational(r.alpha, static_cast<long>(g.size())) : Rational(0);
  r.best_lower = r.alpha;
  if (r.proven()) r.best_upper = r.alpha;
  return r;
}

// ---------------------------------------------------------------------------
// Ratio tables

struct RatioRow {
  std::string radius;  // exact, as text
  std::size_t vertices = 0;
  MisResult mis;
};

struct RatioSequence {
  std::string family;
  int dimension = 0;
  Rational target_bound;  // bound proved by the density argument
  Rational lower_bound;   // density of the explicit construction
  std::vector<RatioRow> rows;

  bool all_proven() const {
    return std::all_of(rows.begin(), rows.end(), [](const RatioRow& r) { return r.mis.proven(); });
  }
};

inline void write_csv(std::ostream& os, const RatioSequence& s) {
  os << "radius,vertices,alpha,ratio_exact,ratio_decimal,bound,proven\n";
  for (const auto& r : s.rows) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9f", to_double(r.mis.ratio));
    os << r.radius << ',' << r.vertices << ',' << r.mis.alpha << ',' << to_fraction_string(r.mis.ratio) << ',' << buf
       << ',' << to_fraction_string(s.target_bound) << ',' << (r.mis.proven() ? "true" : "false") << '\n';
  }
}

// ---------------------------------------------------------------------------
// The line graph with a < 0 ~ b > -2a

inline GeometricGraph counterexample_graph(int N) {
  if (N < 1) throw std::invalid_argument("counterexample_graph needs N >= 1");
  std::vector<std::int64_t> pos;
  for (std::int64_t k = -N; k <= N; ++k) pos.push_back(k);
  auto edge = [](std::int64_t x, std::int64_t y) {
    auto rule = [](std::int64_t a, std::int64_t b) { return a < 0 && b > -2 * a; };
    return rule(x, y) || rule(y, x);
  };
  return build_line_graph(pos, edge, "a<0, b>-2a on [-" + std::to_string(N) + "," + std::to_string(N) + "]");
}

/// [-N, -N/2] u [0, N].
inline std::vector<std::int64_t> counterexample_set(int N) {
  std::vector<std::int64_t> out;
  for (std::int64_t k = -N; 2 * k <= -N; ++k) out.push_back(k);
  for (std::int64_t k = 0; k <= N; ++k) out.push_back(k);
  return out;
}

struct ConstrainedRun {
  int k = 0;               // vertex -k is forced
  int alpha = 0;           // best independent set containing -k
  std::int64_t max_vertex;  // largest vertex used
  bool proven = true;
};

struct CounterexampleReport {
  int N = 0;
  MisResult unconstrained;
  int s_n_size = 0;
  bool s_n_independent = false;
  std::vector<ConstrainedRun> constrained;

  /// No independent set containing -k uses a vertex above 2k.
  bool truncation_holds() const {
    return std::all_of(constrained.begin(), constrained.end(),
                       [](const ConstrainedRun& c) { return c.max_vertex <= 2 * c.k; });
  }
};

inline CounterexampleReport counterexample_density_gap(int N, MisBudget budget = {}) {
  CounterexampleReport rep;
  rep.N = N;
  auto g = counterexample_graph(N);
  rep.unconstrained = max_independent_set(g, budget);
  std::vector<int> s;
  for (auto x : counterexample_set(N)) s.push_back(g.find(IntVec{x}));
  rep.s_n_size = static_cast<int>(s.size());
  rep.s_n_independent = verify_independent_set(g, s);
  for (int k = 1; k <= N; ++k) {
    auto r = max_independent_set(g, budget, {g.find(IntVec{-k})});
    std::int64_t mx = -N;
    for (int v : r.witness) mx = std::max(mx, g.point(v)[0]);
    rep.constrained.push_back({k, r.alpha, mx, r.proven()});
  }
  return rep;
}

}  // namespace parallelo
