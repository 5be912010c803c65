#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <vector>

#include "cskf/errors.hpp"
#include "cskf/sparse/lower_triangular.hpp"
#include "cskf/sparse/sparse_symmetric.hpp"

namespace cskf::sparse {

enum class Ordering { natural, fill_reducing };

namespace detail {

// Quotient-graph minimum-degree ordering on the symmetric pattern.
// Eliminated pivots become elements; element reach replaces explicit fill
// edges so memory stays near the input pattern size.
inline std::vector<Index> min_degree_order(Index n, const std::vector<Index>& up,
                                           const std::vector<Index>& ui) {
  std::vector<std::vector<Index>> adj(n);      // variable-variable edges
  std::vector<std::vector<Index>> elems(n);    // element ids adjacent to a variable
  std::vector<std::vector<Index>> members(n);  // element id -> member variables
  for (Index j = 0; j < n; ++j)
    for (Index p = up[j]; p < up[j + 1]; ++p) {
      const Index i = ui[p];
      if (i == j) continue;
      adj[i].push_back(j);
      adj[j].push_back(i);
    }
  for (Index v = 0; v < n; ++v) {
    std::sort(adj[v].begin(), adj[v].end());
    adj[v].erase(std::unique(adj[v].begin(), adj[v].end()), adj[v].end());
  }

  std::vector<Index> degree(n), stamp(n, -1);
  std::vector<char> eliminated(n, 0), elem_alive(n, 0);
  using Entry = std::pair<Index, Index>;  // (degree, variable)
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  for (Index v = 0; v < n; ++v) {
    degree[v] = static_cast<Index>(adj[v].size());
    heap.emplace(degree[v], v);
  }

  std::vector<Index> order;
  order.reserve(n);
  std::vector<Index> reach;
  Index tick = 0;

  auto variable_reach = [&](Index v, std::vector<Index>& out) {
    ++tick;
    out.clear();
    stamp[v] = tick;
    for (Index u : adj[v])
      if (!eliminated[u] && stamp[u] != tick) {
        stamp[u] = tick;
        out.push_back(u);
      }
    for (Index e : elems[v]) {
      if (!elem_alive[e]) continue;
      for (Index u : members[e])
        if (!eliminated[u] && u != v && stamp[u] != tick) {
          stamp[u] = tick;
          out.push_back(u);
        }
    }
  };

  while (!heap.empty()) {
    auto [d, p] = heap.top();
    heap.pop();
    if (eliminated[p] || d != degree[p]) continue;  // stale entry

    variable_reach(p, reach);
    eliminated[p] = 1;
    order.push_back(p);

    // p becomes a new element absorbing the elements it touched
    for (Index e : elems[p]) elem_alive[e] = 0;
    members[p] = reach;
    elem_alive[p] = 1;

    for (Index v : reach) {
      // drop dead elements, attach the new one
      auto& ev = elems[v];
      ev.erase(std::remove_if(ev.begin(), ev.end(),
                              [&](Index e) { return !elem_alive[e]; }),
               ev.end());
      ev.push_back(p);
      // prune variable edges now covered by the element (and eliminated ones)
      ++tick;
      for (Index u : reach) stamp[u] = tick;
      auto& av = adj[v];
      av.erase(std::remove_if(av.begin(), av.end(),
                              [&](Index u) {
                                return eliminated[u] || stamp[u] == tick;
                              }),
               av.end());
    }
    for (Index v : reach) {
      std::vector<Index> r;
      variable_reach(v, r);
      degree[v] = static_cast<Index>(r.size());
      heap.emplace(degree[v], v);
    }
  }
  return order;  // order[k] = original index eliminated at step k
}

// Elimination tree of an upper-triangular CSC pattern.
inline std::vector<Index> etree(Index n, const std::vector<Index>& up,
                                const std::vector<Index>& ui) {
  std::vector<Index> parent(n, -1), ancestor(n, -1);
  for (Index k = 0; k < n; ++k) {
    for (Index p = up[k]; p < up[k + 1]; ++p) {
      Index i = ui[p];
      while (i != -1 && i < k) {
        const Index next = ancestor[i];
        ancestor[i] = k;
        if (next == -1) parent[i] = k;
        i = next;
      }
    }
  }
  return parent;
}

// Nonzero pattern of row k of the factor: returns top such that
// s[top..n-1] holds the pattern in topological order.
inline Index ereach(Index n, const std::vector<Index>& up, const std::vector<Index>& ui,
                    Index k, const std::vector<Index>& parent, Index mark,
                    std::vector<Index>& w, std::vector<Index>& s) {
  Index top = n;
  w[k] = mark;
  for (Index p = up[k]; p < up[k + 1]; ++p) {
    Index i = ui[p];
    if (i >= k) continue;
    Index len = 0;
    for (; w[i] != mark; i = parent[i]) {
      s[len++] = i;
      w[i] = mark;
    }
    while (len > 0) s[--top] = s[--len];
  }
  return top;
}

}  // namespace detail

struct CholeskyOptions {
  Ordering ordering = Ordering::fill_reducing;
  // Pivot tolerance as a fraction of the largest diagonal entry.
  double pivot_rel_tol = 1e-12;
};

/// Sparse Cholesky factorization G * G^T = P * A * P^T via symbolic analysis
/// (elimination tree + row patterns) and an up-looking numeric pass.
/// Throws NotPositiveDefinite on a pivot at or below tolerance.
inline SparseLowerTriangular cholesky(const SparseSymmetric& a,
                                      const CholeskyOptions& opts = {}) {
  const Index n = a.dim();
  const auto upper = a.assemble();

  // permutation: perm[k] = original index placed at permuted position k
  std::vector<Index> perm(n);
  if (opts.ordering == Ordering::fill_reducing) {
    perm = detail::min_degree_order(n, upper.col_ptr, upper.row_idx);
  } else {
    std::iota(perm.begin(), perm.end(), 0);
  }
  std::vector<Index> iperm(n);
  for (Index k = 0; k < n; ++k) iperm[perm[k]] = k;

  // C = P * A * P^T, upper triangle in CSC
  std::vector<Index> ccount(n + 1, 0);
  std::vector<std::vector<std::pair<Index, double>>> ccols(n);
  for (Index j = 0; j < n; ++j)
    for (Index p = upper.col_ptr[j]; p < upper.col_ptr[j + 1]; ++p) {
      Index pi = iperm[upper.row_idx[p]];
      Index pj = iperm[j];
      if (pi > pj) std::swap(pi, pj);
      ccols[pj].emplace_back(pi, upper.values[p]);
    }
  std::vector<Index> cp(n + 1, 0);
  std::vector<Index> ci;
  std::vector<double> cx;
  for (Index j = 0; j < n; ++j) {
    auto& col = ccols[j];
    std::sort(col.begin(), col.end(),
              [](const auto& l, const auto& r) { return l.first < r.first; });
    for (const auto& [r, v] : col) {
      ci.push_back(r);
      cx.push_back(v);
    }
    cp[j + 1] = static_cast<Index>(ci.size());
  }

  double max_diag = 0;
  for (Index j = 0; j < n; ++j)
    for (Index p = cp[j]; p < cp[j + 1]; ++p)
      if (ci[p] == j) max_diag = std::max(max_diag, cx[p]);
  const double pivot_tol = opts.pivot_rel_tol * std::max(max_diag, 1.0);

  const auto parent = detail::etree(n, cp, ci);

  // symbolic: column counts
  std::vector<Index> w(n, -1), s(n), counts(n, 1);  // 1 for the diagonal
  for (Index k = 0; k < n; ++k) {
    const Index top = detail::ereach(n, cp, ci, k, parent, k, w, s);
    for (Index t = top; t < n; ++t) counts[s[t]]++;
  }

  SparseLowerTriangular g;
  g.dim = n;
  g.perm = perm;
  g.col_ptr.assign(n + 1, 0);
  for (Index j = 0; j < n; ++j) g.col_ptr[j + 1] = g.col_ptr[j] + counts[j];
  const Index nnz = g.col_ptr[n];
  g.row_idx.assign(nnz, 0);
  g.values.assign(nnz, 0.0);

  // numeric up-looking pass
  std::vector<Index> next(n);  // next free slot per column
  std::vector<double> x(n, 0.0);
  std::fill(w.begin(), w.end(), -1);
  for (Index j = 0; j < n; ++j) next[j] = g.col_ptr[j] + 1;  // slot 0 is the diagonal
  for (Index k = 0; k < n; ++k) {
    const Index top = detail::ereach(n, cp, ci, k, parent, n + k, w, s);
    x[k] = 0;
    for (Index p = cp[k]; p < cp[k + 1]; ++p)
      if (ci[p] <= k) x[ci[p]] = cx[p];
    double d = x[k];
    x[k] = 0;
    for (Index t = top; t < n; ++t) {
      const Index i = s[t];
      const double lki = x[i] / g.values[g.col_ptr[i]];
      x[i] = 0;
      for (Index p = g.col_ptr[i] + 1; p < next[i]; ++p) x[g.row_idx[p]] -= g.values[p] * lki;
      d -= lki * lki;
      const Index p = next[i]++;
      g.row_idx[p] = k;
      g.values[p] = lki;
    }
    if (d <= pivot_tol) throw NotPositiveDefinite(static_cast<int>(perm[k]));
    g.row_idx[g.col_ptr[k]] = k;
    g.values[g.col_ptr[k]] = std::sqrt(d);
  }
  return g;
}

}  // namespace cskf::sparse
