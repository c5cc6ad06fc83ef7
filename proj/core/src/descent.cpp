#include <algorithm>
#include <numeric>

#include "cscycle/descent.hpp"

namespace csc {

namespace {

// coeffs . x + constant for a term over {0, s, +} and variables.
void linearize_term(const Term& t, const std::vector<std::string>& vars,
                    std::vector<long long>& coeffs, long long& constant) {
  if (t.is_var()) {
    auto it = std::find(vars.begin(), vars.end(), t.sym());
    if (it == vars.end()) throw std::logic_error("variable missing from system ordering");
    coeffs[it - vars.begin()] += 1;
    return;
  }
  const std::string& f = t.sym();
  if (f == "0") return;
  if (f == "s") {
    constant += 1;
    linearize_term(t.args()[0], vars, coeffs, constant);
    return;
  }
  if (f == "+") {
    linearize_term(t.args()[0], vars, coeffs, constant);
    linearize_term(t.args()[1], vars, coeffs, constant);
    return;
  }
  throw std::invalid_argument("nonlinear or foreign symbol in component: " + f);
}

}  // namespace

std::pair<LinSystem, std::vector<NegConstraint>> linearize_component(const Component& chi) {
  LinSystem sys;
  sys.vars = chi.free_vars();
  for (const std::string& v : chi.bound_vars) sys.vars.push_back(v);

  std::vector<NegConstraint> negs;
  for (const Literal& l : chi.literals) {
    if (!l.is_equality) throw std::invalid_argument("predicate literal in component");
    std::vector<long long> lc(sys.vars.size(), 0), rc(sys.vars.size(), 0);
    long long lconst = 0, rconst = 0;
    linearize_term(l.lhs(), sys.vars, lc, lconst);
    linearize_term(l.rhs(), sys.vars, rc, rconst);
    std::vector<long long> diff(sys.vars.size());
    for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = lc[i] - rc[i];
    if (l.positive) {
      sys.rows.push_back({std::move(diff), rconst - lconst});
    } else {
      negs.push_back({std::move(diff), lconst - rconst});
    }
  }
  return {sys, negs};
}

namespace {

long long dot(const std::vector<long long>& a, const std::vector<long long>& b) {
  long long s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

bool satisfies_rows(const LinSystem& sys, const std::vector<long long>& x) {
  for (const LinearRow& row : sys.rows)
    if (dot(row.coeffs, x) != row.rhs) return false;
  return true;
}

bool satisfies_negs(const std::vector<NegConstraint>& negs, const std::vector<long long>& x) {
  for (const NegConstraint& n : negs)
    if (dot(n.coeffs, x) + n.constant == 0) return false;
  return true;
}

}  // namespace

ZSolution solve_linear_system(const LinSystem& sys) {
  std::size_t n = sys.vars.size();
  std::size_t m = sys.rows.size();
  // Column-style elimination: A U = H with U unimodular and H echelon.
  std::vector<std::vector<long long>> a(m, std::vector<long long>(n, 0));
  for (std::size_t r = 0; r < m; ++r) a[r] = sys.rows[r].coeffs;
  std::vector<std::vector<long long>> u(n, std::vector<long long>(n, 0));
  for (std::size_t i = 0; i < n; ++i) u[i][i] = 1;

  auto col_sub = [&](std::size_t from, std::size_t onto, long long q) {
    // column onto -= q * column from
    for (std::size_t r = 0; r < m; ++r) a[r][onto] -= q * a[r][from];
    for (std::size_t r = 0; r < n; ++r) u[r][onto] -= q * u[r][from];
  };
  auto col_swap = [&](std::size_t i, std::size_t j) {
    for (std::size_t r = 0; r < m; ++r) std::swap(a[r][i], a[r][j]);
    for (std::size_t r = 0; r < n; ++r) std::swap(u[r][i], u[r][j]);
  };

  std::size_t col = 0;
  std::vector<std::pair<std::size_t, std::size_t>> pivots;  // (row, col)
  for (std::size_t row = 0; row < m && col < n; ++row) {
    // Reduce the row across columns col..n-1 to a single entry.
    for (;;) {
      std::size_t best = n;
      for (std::size_t j = col; j < n; ++j)
        if (a[row][j] != 0 && (best == n || std::llabs(a[row][j]) < std::llabs(a[row][best])))
          best = j;
      if (best == n) break;  // all zero
      bool others = false;
      for (std::size_t j = col; j < n; ++j) {
        if (j == best || a[row][j] == 0) continue;
        others = true;
        col_sub(best, j, a[row][j] / a[row][best]);
      }
      if (!others) {
        col_swap(col, best);
        pivots.emplace_back(row, col);
        ++col;
        break;
      }
    }
  }

  ZSolution out;
  // Forward solve H y = b over the pivot structure; free columns get 0.
  std::vector<long long> y(n, 0);
  bool ok = true;
  std::size_t pi = 0;
  for (std::size_t row = 0; row < m; ++row) {
    long long acc = 0;
    for (std::size_t j = 0; j < n; ++j) acc += a[row][j] * y[j];
    long long need = sys.rows[row].rhs - acc;
    if (pi < pivots.size() && pivots[pi].first == row) {
      long long g = a[row][pivots[pi].second];
      if (need % g != 0) {
        ok = false;
        break;
      }
      y[pivots[pi].second] = need / g;
      ++pi;
    } else if (need != 0) {
      ok = false;
      break;
    }
  }
  // x = U y
  if (ok) {
    out.consistent = true;
    out.particular.assign(n, 0);
    for (std::size_t r = 0; r < n; ++r) out.particular[r] = dot(u[r], y);
    if (!satisfies_rows(sys, out.particular))
      throw std::logic_error("particular solution failed verification");
  }
  // Basis: columns of U beyond the pivot columns.
  std::set<std::size_t> pivot_cols;
  for (const auto& [r, c] : pivots) pivot_cols.insert(c);
  for (std::size_t j = 0; j < n; ++j) {
    if (pivot_cols.count(j)) continue;
    std::vector<long long> h(n);
    for (std::size_t r = 0; r < n; ++r) h[r] = u[r][j];
    LinSystem hom = sys;
    for (LinearRow& row : hom.rows) row.rhs = 0;
    if (!satisfies_rows(hom, h)) throw std::logic_error("basis vector failed verification");
    out.basis.push_back(std::move(h));
  }
  return out;
}

std::vector<NaturalSolution> natural_solutions(const Component& chi, long long bound) {
  if (chi.free_vars().size() != 1)
    throw std::invalid_argument("component must have exactly one free variable");
  auto [sys, negs] = linearize_component(chi);

  long long max_tower = 0;
  for (const Literal& l : chi.literals)
    for (const Term& t : l.terms) {
      std::function<long long(const Term&)> towers = [&](const Term& u) -> long long {
        long long best = 0;
        long long here = 0;
        const Term* cur = &u;
        while (cur->is_app() && cur->sym() == "s") {
          ++here;
          cur = &cur->args()[0];
        }
        best = here;
        for (const Term& a : cur->args()) best = std::max(best, towers(a));
        return best;
      };
      max_tower = std::max(max_tower, towers(t));
    }
  long long slack = 2 * max_tower;

  std::vector<NaturalSolution> out;
  std::size_t n = sys.vars.size();
  for (long long d = 0; d <= bound; ++d) {
    std::vector<long long> x(n, 0);
    x[0] = d;
    bool found = false;
    std::function<bool(std::size_t)> search = [&](std::size_t i) -> bool {
      if (i == n) return satisfies_rows(sys, x) && satisfies_negs(negs, x);
      for (long long v = 0; v <= bound + slack; ++v) {
        x[i] = v;
        if (search(i + 1)) return true;
      }
      x[i] = 0;
      return false;
    };
    found = search(1);
    if (found) out.push_back({d, x});
  }
  return out;
}

DescendingSequence descending_sequence(const Component& chi, const std::vector<long long>& sol1,
                                       const std::vector<long long>& sol2, std::size_t length) {
  auto [sys, negs] = linearize_component(chi);
  std::size_t n = sys.vars.size();
  if (sol1.size() != n || sol2.size() != n)
    throw std::invalid_argument("solution vectors do not match the system dimension");
  for (const auto* sol : {&sol1, &sol2})
    if (!satisfies_rows(sys, *sol) || !satisfies_negs(negs, *sol))
      throw std::invalid_argument("vector is not a solution of the component");

  DescendingSequence seq;
  seq.difference.resize(n);
  for (std::size_t i = 0; i < n; ++i) seq.difference[i] = sol1[i] - sol2[i];
  if (seq.difference[0] >= 0)
    throw std::invalid_argument("first coordinates must descend (sol1[0] < sol2[0])");

  // Threshold: skip past every natural root of the constraints along the line
  // m -> m*h0 + sol1.
  long long m0 = 0;
  for (const NegConstraint& nc : negs) {
    long long slope = dot(nc.coeffs, seq.difference);
    long long at0 = dot(nc.coeffs, sol1) + nc.constant;  // nonzero, checked above
    if (slope == 0) continue;
    if (at0 % slope != 0) continue;  // no integer root
    long long root = -at0 / slope;
    if (root >= 0) m0 = std::max(m0, root + 1);
  }
  seq.threshold = m0;

  for (std::size_t step = 0; step < length; ++step) {
    long long m = m0 + (long long)step;
    std::vector<long long> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = m * seq.difference[i] + sol1[i];
    if (!satisfies_rows(sys, v) || !satisfies_negs(negs, v))
      throw std::logic_error("descending vector failed verification");
    seq.head_values.push_back(v[0]);
    seq.vectors.push_back(std::move(v));
  }
  return seq;
}

DescentResult descent_for_formula(const Formula& phi, long long bound, std::size_t length) {
  if (!is_p_free(phi)) throw FragmentError("formula must be p-free");
  if (phi.free_vars().size() != 1)
    throw std::invalid_argument("formula must have exactly one free variable");
  std::vector<Component> comps = to_components(phi);
  for (std::size_t i = 0; i < comps.size(); ++i) {
    std::vector<NaturalSolution> sols = natural_solutions(comps[i], bound);
    if (sols.size() >= 2) {
      DescentResult r;
      r.component_index = i;
      r.component = comps[i];
      r.sol1 = sols[0].witness;
      r.sol2 = sols[1].witness;
      r.sequence = descending_sequence(comps[i], r.sol1, r.sol2, length);
      return r;
    }
  }
  throw DescentError("no component has two solutions within bound " + std::to_string(bound));
}

}  // namespace csc
