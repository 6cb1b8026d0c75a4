#include "hhokit/linsolve.hpp"

#include <algorithm>

#include "hhokit/errors.hpp"

namespace hhokit {

Poly AffineCombo::to_poly() const {
  Poly p(constant);
  for (const auto& [id, a] : coeffs) p += Poly::param(id) * Poly(a);
  return p;
}

std::map<int, Poly> LinearSystemSolution::substitution() const {
  std::map<int, Poly> out;
  for (const auto& [id, combo] : pivots) out.emplace(id, combo.to_poly());
  return out;
}

std::map<int, Poly> LinearSystemSolution::basis_substitution(int which) const {
  std::map<int, Poly> out;
  for (int f : free) out.emplace(f, Poly(f == which ? 1 : 0));
  for (const auto& [id, combo] : pivots) {
    auto it = combo.coeffs.find(which);
    out.emplace(id, Poly(it == combo.coeffs.end() ? Rat(0) : it->second));
  }
  return out;
}

std::map<int, Poly> LinearSystemSolution::particular_substitution() const {
  std::map<int, Poly> out;
  for (int f : free) out.emplace(f, Poly(0));
  for (const auto& [id, combo] : pivots) out.emplace(id, Poly(combo.constant));
  return out;
}

LinearSolver::LinearSolver(std::vector<int> params) : params_(std::move(params)) {
  std::sort(params_.begin(), params_.end());
  params_.erase(std::unique(params_.begin(), params_.end()), params_.end());
}

void LinearSolver::add(const RatFunc& eq) {
  if (inconsistent_ || eq.is_zero()) return;
  // den is parameter-free and nonzero, so eq = 0 iff num = 0 identically.
  std::map<Monomial, std::pair<std::map<int, Rat>, Rat>> rows;
  for (const auto& [m, c] : eq.num().terms()) {
    const int pd = m.param_degree();
    if (pd > 1) throw NonlinearAnsatz();
    auto& [row, constant] = rows[m.field_part()];
    if (pd == 0) {
      constant += c;
    } else {
      row[m.params()[0]] += c;
    }
  }
  for (auto& [m, rc] : rows) {
    Row row;
    for (auto& [id, a] : rc.first) {
      if (a != 0) row.emplace_back(id, a);
    }
    ++scalar_equations_;
    add_row(std::move(row), rc.second);
    if (inconsistent_) return;
  }
}

void LinearSolver::add_row(Row row, Rat constant) {
  std::map<int, Rat> r(row.begin(), row.end());
  auto it = r.begin();
  while (it != r.end()) {
    auto pv = pivots_.find(it->first);
    if (pv == pivots_.end() || it->second == 0) {
      ++it;
      continue;
    }
    const Rat f = it->second;
    const int done = it->first;
    for (const auto& [id, a] : pv->second.row) r[id] -= f * a;
    constant -= f * pv->second.constant;
    it = r.upper_bound(done);
  }
  Row reduced;
  for (auto& [id, a] : r) {
    if (a != 0) reduced.emplace_back(id, a);
  }
  if (reduced.empty()) {
    if (constant != 0) inconsistent_ = true;
    return;
  }
  const Rat lead = reduced.front().second;
  for (auto& [id, a] : reduced) a /= lead;
  constant /= lead;
  const int pivot = reduced.front().first;
  pivots_.emplace(pivot, Pivot{std::move(reduced), std::move(constant)});
}

LinearSystemSolution LinearSolver::solve() const {
  LinearSystemSolution sol;
  sol.scalar_equations = scalar_equations_;
  if (inconsistent_) {
    sol.inconsistent = true;
    return sol;
  }
  // Back substitution from the largest pivot down yields the reduced form.
  for (auto it = pivots_.rbegin(); it != pivots_.rend(); ++it) {
    AffineCombo combo;
    combo.constant = -it->second.constant;
    for (std::size_t k = 1; k < it->second.row.size(); ++k) {
      const auto& [id, a] = it->second.row[k];
      auto done = sol.pivots.find(id);
      if (done == sol.pivots.end()) {
        combo.coeffs[id] -= a;
      } else {
        combo.constant -= a * done->second.constant;
        for (const auto& [fid, fa] : done->second.coeffs) combo.coeffs[fid] -= a * fa;
      }
    }
    std::erase_if(combo.coeffs, [](const auto& kv) { return kv.second == 0; });
    sol.pivots.emplace(it->first, std::move(combo));
  }
  std::vector<int> all = params_;
  for (const auto& [id, p] : pivots_) {
    for (const auto& [pid, a] : p.row) all.push_back(pid);
  }
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  for (int id : all) {
    if (!pivots_.count(id)) sol.free.push_back(id);
  }
  return sol;
}

LinearSystemSolution linear_solve(const std::vector<RatFunc>& eqs, const std::vector<int>& params) {
  LinearSolver s(params);
  for (const auto& e : eqs) {
    s.add(e);
    if (s.inconsistent()) break;
  }
  return s.solve();
}

}  // namespace hhokit
