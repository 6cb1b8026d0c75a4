#include <algorithm>
#include <functional>
#include <random>
#include <set>

#include "hhokit/cli.hpp"
#include "hhokit/errors.hpp"

namespace hhokit::cli {

namespace {

std::size_t sz(int i) { return static_cast<std::size_t>(i); }

std::string str(const RatFunc& r) { return to_string(r); }
std::string str(const DiffPoly& a) { return to_string(a); }

const char* verdict(bool pass) { return pass ? "PASS" : "FAIL"; }

Json strings(const std::vector<DiffPoly>& v) {
  Json out = Json::array();
  for (const auto& c : v) out.push_back(str(c));
  return out;
}

Json strings(const Vec& v) {
  Json out = Json::array();
  for (const auto& c : v) out.push_back(str(c));
  return out;
}

std::string indices_text(const std::vector<int>& idx) {
  std::string s;
  for (std::size_t i = 0; i < idx.size(); ++i) s += (i ? "," : "") + std::to_string(idx[i]);
  return s;
}

Json report_json(const ConditionReport& rep, bool full) {
  Json j;
  j["name"] = rep.name;
  j["pass"] = rep.pass;
  if (!rep.note.empty()) j["note"] = rep.note;
  Json fams = Json::array();
  for (const auto& f : rep.families) {
    const auto count = std::count_if(rep.residuals.begin(), rep.residuals.end(),
                                     [&](const ConditionResidual& r) { return r.family == f; });
    fams.push_back({{"name", f}, {"pass", count == 0}, {"residuals", count}});
  }
  j["families"] = fams;
  Json res = Json::array();
  for (std::size_t i = 0; i < rep.residuals.size() && (full || i < kTruncate); ++i) {
    const auto& r = rep.residuals[i];
    res.push_back({{"family", r.family}, {"indices", r.indices}, {"value", str(r.value)}});
  }
  j["residuals"] = res;
  j["residuals_total"] = rep.residuals.size();
  j["truncated"] = !full && rep.residuals.size() > kTruncate;
  return j;
}

void report_lines(const ConditionReport& rep, std::vector<std::string>& lines, bool full) {
  lines.push_back(rep.name + ": " + verdict(rep.pass) + (rep.note.empty() ? "" : "  (" + rep.note + ")"));
  for (const auto& f : rep.families) {
    const auto count = std::count_if(rep.residuals.begin(), rep.residuals.end(),
                                     [&](const ConditionResidual& r) { return r.family == f; });
    lines.push_back("  " + f + ": " + (count == 0 ? "pass" : "fail (" + std::to_string(count) + " residuals)"));
  }
  for (std::size_t i = 0; i < rep.residuals.size() && (full || i < kTruncate); ++i) {
    const auto& r = rep.residuals[i];
    lines.push_back("    " + r.family + "[" + indices_text(r.indices) + "] = " + str(r.value));
  }
  if (!full && rep.residuals.size() > kTruncate) {
    lines.push_back("    ... " + std::to_string(rep.residuals.size() - kTruncate) + " more (use --full)");
  }
}

/// ℓ_F(A(p)) summary; the first kTruncate terms are kept unless `full`.
Json covering_json(const std::vector<DiffPoly>& res, bool full, std::vector<std::string>& lines) {
  std::size_t total = 0;
  for (const auto& c : res) total += c.size();
  Json comps = Json::array();
  std::size_t kept = 0;
  for (const auto& c : res) {
    DiffPoly part;
    for (const auto& [m, coef] : c.terms()) {
      if (!full && kept >= kTruncate) break;
      part.add_term(m, coef);
      ++kept;
    }
    comps.push_back(str(part));
  }
  const bool pass = total == 0;
  lines.push_back(std::string("covering residual: ") + (pass ? "zero (PASS)" : std::to_string(total) + " terms (FAIL)"));
  if (!pass) {
    for (std::size_t i = 0; i < comps.size(); ++i) {
      if (!res[i].is_zero()) lines.push_back("  component " + std::to_string(i + 1) + ": " + comps[i].get<std::string>());
    }
    if (!full && total > kTruncate) lines.push_back("  ... truncated to " + std::to_string(kTruncate) + " terms (use --full)");
  }
  return {{"pass", pass}, {"components", comps}, {"terms_total", total}, {"truncated", !full && total > kTruncate}};
}

const EvolutionSystem& need_system(const Problem& p) {
  if (!p.system) throw InputError("this task needs a \"system\"");
  return *p.system;
}

const Vec& need_flux(const Problem& p, const std::string& why) {
  const auto& F = need_system(p);
  if (F.flux.empty()) throw InputError(why + " needs a conservative or potential system with fluxes");
  return F.flux;
}

VelocityMatrix velocity(const Problem& p) {
  const auto& F = need_system(p);
  if (F.kind == SystemKind::Hydrodynamic && F.flux.empty()) return VelocityMatrix::from_matrix(F.V);
  if (F.kind == SystemKind::Hydrodynamic || F.kind == SystemKind::Conservative) return VelocityMatrix::from_flux(F.flux);
  throw InputError("a hydrodynamic or conservative system is required");
}

/// φ^i = W^i_j u^j_x.
std::vector<DiffPoly> tail_symmetry(const Mat& W) {
  std::vector<DiffPoly> phi;
  for (std::size_t i = 0; i < W.size(); ++i) {
    DiffPoly c;
    for (std::size_t j = 0; j < W.size(); ++j) c += DiffPoly(W[i][j]) * DiffPoly::u(static_cast<int>(j), 1);
    phi.push_back(std::move(c));
  }
  return phi;
}

ConditionReport only_families(const ConditionReport& rep, const std::set<std::string>& keep) {
  ConditionReport out;
  out.name = rep.name;
  out.note = rep.note;
  for (const auto& f : rep.families) {
    if (keep.count(f)) out.family(f);
  }
  for (const auto& r : rep.residuals) {
    if (keep.count(r.family)) {
      out.residuals.push_back(r);
      out.pass = false;
    }
  }
  return out;
}

void register_declared(CoveringContext& ctx, const Problem& p) {
  for (std::size_t i = 0; i < p.symmetries.size(); ++i) {
    try {
      register_symmetry(ctx, p.symmetries[i]);
    } catch (const NotASymmetry&) {
      throw InputError("symmetries[" + std::to_string(i) + "] is not a symmetry of the system");
    }
  }
}

TaskResult check_op(const Problem& p, const TaskOptions& o) {
  const OperatorSpec& op = p.op(o.operator_name);
  TaskResult tr;
  ConditionReport rep;
  switch (op.kind) {
    case OperatorKind::Bivector:
      throw InputError("check-op needs a structured operator; raw bivector forms only support check-compat");
    case OperatorKind::FirstOrder:
      rep = first_order_hamiltonian_check(op.g, op.gamma);
      if (op.W) rep.note = "local part only; the tail is checked by check-compat";
      break;
    case OperatorKind::SecondOrder:
      rep = second_order_canonical_check(op.second);
      inverse(op.second.g_low(), "det g_low = 0");
      break;
    case OperatorKind::ThirdOrder:
      if (op.tails.w.empty()) {
        rep = third_order_hamiltonian_check(op.third);
      } else {
        const Vec zero(sz(p.n));
        rep = only_families(third_order_nonlocal_checks(op.third, op.tails, zero),
                            {"metric-symmetry", "c-from-g", "cyclic", "modified-flatness", "w-skew", "w-parallel"});
        rep.name = "third-order nonlocal Hamiltonian";
      }
      break;
  }
  tr.status = rep.pass ? Status::Pass : Status::Fail;
  tr.result["operator"] = op.name;
  tr.result["kind"] = kind_name(op.kind);
  tr.result["verdicts"] = Json::array({report_json(rep, o.full)});
  tr.result["pass"] = rep.pass;
  tr.lines.push_back("operator " + op.name + " (" + kind_name(op.kind) + ")");
  report_lines(rep, tr.lines, o.full);
  return tr;
}

/// Concrete copies of a system whose right-hand sides carry parameters, for
/// the covering oracle (which needs a parameter-free system). The residual is
/// linear in ℓ_F, so when F is affine in the parameters it is affine in them
/// too, and 0 plus the unit vectors decide it exactly; otherwise random
/// points are sampled.
struct Instances {
  std::vector<EvolutionSystem> systems;
  std::string note;
};

Instances instantiate(const EvolutionSystem& F, std::uint64_t seed) {
  std::set<int> ids;
  bool affine_params = true;
  auto scan = [&](const RatFunc& r) {
    for (const auto& [m, c] : r.num().terms()) {
      for (const auto id : m.params()) ids.insert(id);
      affine_params = affine_params && m.param_degree() <= 1;
    }
  };
  for (const auto& f : F.f) {
    for (const auto& [m, c] : f.terms()) scan(c);
  }
  // Constants of a flux drop out of D_x V but still need values.
  for (const auto& v : F.flux) scan(v);
  for (const auto& row : F.V) {
    for (const auto& v : row) scan(v);
  }
  if (ids.empty()) return {{F}, ""};
  std::vector<std::map<int, Poly>> points;
  if (affine_params) {
    points.emplace_back();
    for (int id : ids) points.push_back({{id, Poly(1)}});
  } else {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> dist(-5, 5);
    for (int k = 0; k < 6; ++k) {
      std::map<int, Poly> pt;
      for (int id : ids) pt[id] = Poly(dist(rng));
      points.push_back(std::move(pt));
    }
  }
  for (auto& pt : points) {
    for (int id : ids) pt.emplace(id, Poly(0));
  }
  Instances out;
  for (const auto& pt : points) {
    auto sub_vec = [&](const Vec& v) {
      Vec w;
      for (const auto& x : v) w.push_back(x.substitute_params(pt));
      return w;
    };
    switch (F.kind) {
      case SystemKind::General: {
        std::vector<DiffPoly> f;
        for (const auto& x : F.f) f.push_back(x.substitute_params(pt));
        out.systems.push_back(EvolutionSystem::general(std::move(f)));
        break;
      }
      case SystemKind::Hydrodynamic:
        if (!F.flux.empty()) {
          out.systems.push_back(EvolutionSystem::conservative(sub_vec(F.flux)));
        } else {
          Mat V;
          for (const auto& row : F.V) V.push_back(sub_vec(row));
          out.systems.push_back(EvolutionSystem::hydrodynamic(std::move(V)));
        }
        break;
      case SystemKind::Conservative:
        out.systems.push_back(EvolutionSystem::conservative(sub_vec(F.flux)));
        break;
      case SystemKind::Potential:
        out.systems.push_back(EvolutionSystem::potential(sub_vec(F.flux)));
        break;
    }
  }
  out.note = affine_params ? "system parameters set to 0 and to each unit vector (" + std::to_string(points.size()) +
                                 " instances; exact, the residual is affine in them)"
                           : "system parameters sampled at " + std::to_string(points.size()) + " rational points";
  return out;
}

TaskResult check_compat(const Problem& p, const TaskOptions& o) {
  const OperatorSpec& op = p.op(o.operator_name);
  const auto& F = need_system(p);
  TaskResult tr;
  std::vector<ConditionReport> reps;
  /// Closed-form compatibility families, compared against the covering.
  std::optional<bool> closed_form;
  std::vector<DiffPoly> residual;
  std::string covering_note;
  /// Covering residual for a parameter-free instance of the system.
  std::function<std::vector<DiffPoly>(const EvolutionSystem&)> residual_of;
  switch (op.kind) {
    case OperatorKind::Bivector:
      residual_of = [&](const EvolutionSystem& sys) {
        CoveringContext ctx = build_cotangent(sys);
        register_declared(ctx, p);
        return bivector_residual(ctx, op.form);
      };
      covering_note = "bivector condition only; Hamiltonianity of a raw form is not decided";
      break;
    case OperatorKind::FirstOrder: {
      const VelocityMatrix V = velocity(p);
      reps.push_back(first_order_hamiltonian_check(op.g, op.gamma));
      ConditionReport compat = op.W ? nonlocal_first_order_check(op.g, op.gamma, *op.W, V) : tsarev_check(op.g, op.gamma, V);
      closed_form = compat.pass;
      reps.push_back(compat);
      if (!op.W) reps.push_back(expanded_first_order_conditions(op.g, op.gamma, V));
      residual_of = [&](const EvolutionSystem& sys) {
        CoveringContext ctx = build_cotangent(sys);
        std::vector<TailTerm> tail;
        if (op.W) {
          try {
            tail.push_back({Rat(1), register_symmetry(ctx, tail_symmetry(*op.W))});
          } catch (const NotASymmetry& e) {
            covering_note = "W u_x is not a symmetry; residual shown is its linearization";
            return e.residual();
          }
        }
        return bivector_residual(ctx, operator_to_bivector(ctx, first_order_operator(op.g, op.gamma), tail));
      };
      break;
    }
    case OperatorKind::SecondOrder: {
      const Vec& flux = need_flux(p, "second-order check-compat");
      reps.push_back(second_order_canonical_check(op.second));
      reps.push_back(second_order_compat(op.second, flux));
      closed_form = reps.back().pass;
      residual_of = [&](const EvolutionSystem& sys) {
        const CoveringContext ctx = build_cotangent(EvolutionSystem::potential(sys.flux));
        return bivector_residual(ctx, potential_second_order_bivector(op.second));
      };
      covering_note = "potential coordinates, C(p) = -g^{ij} p_j";
      break;
    }
    case OperatorKind::ThirdOrder: {
      const Vec& flux = need_flux(p, "third-order check-compat");
      if (op.tails.w.empty()) {
        reps.push_back(third_order_hamiltonian_check(op.third));
        reps.push_back(third_order_compat(op.third, flux));
        residual_of = [&](const EvolutionSystem& sys) {
          const CoveringContext ctx = build_cotangent(EvolutionSystem::conservative(sys.flux));
          return bivector_residual(ctx, third_order_bivector(op.third));
        };
      } else {
        reps.push_back(third_order_nonlocal_checks(op.third, op.tails, flux));
        covering_note = "potential coordinates with registered tails";
        residual_of = [&](const EvolutionSystem& sys) {
          CoveringContext ctx = build_cotangent(EvolutionSystem::potential(sys.flux));
          try {
            return bivector_residual(ctx, potential_third_order_bivector(ctx, op.third, op.tails));
          } catch (const NotASymmetry& e) {
            covering_note = "a tail is not a symmetry; residual shown is its linearization";
            return e.residual();
          }
        };
      }
      closed_form = reps.back().pass;
      break;
    }
  }
  const Instances inst = instantiate(F, o.seed);
  for (const auto& sys : inst.systems) {
    residual = residual_of(sys);
    const bool zero = std::all_of(residual.begin(), residual.end(), [](const DiffPoly& r) { return r.is_zero(); });
    if (!zero) break;
  }
  if (!inst.note.empty()) covering_note += (covering_note.empty() ? "" : "; ") + inst.note;
  bool pass = true;
  Json verdicts = Json::array();
  tr.lines.push_back("operator " + op.name + " (" + kind_name(op.kind) + ")");
  for (const auto& r : reps) {
    pass = pass && r.pass;
    verdicts.push_back(report_json(r, o.full));
    report_lines(r, tr.lines, o.full);
  }
  Json cov = covering_json(residual, o.full, tr.lines);
  if (!covering_note.empty()) cov["note"] = covering_note;
  const bool cov_pass = cov["pass"].get<bool>();
  pass = pass && cov_pass;
  tr.result["operator"] = op.name;
  tr.result["kind"] = kind_name(op.kind);
  tr.result["verdicts"] = verdicts;
  tr.result["covering"] = cov;
  if (closed_form) {
    tr.result["oracles_agree"] = *closed_form == cov_pass;
    tr.lines.push_back(std::string("closed-form and covering verdicts ") + (*closed_form == cov_pass ? "agree" : "DISAGREE"));
  }
  tr.result["pass"] = pass;
  tr.status = pass ? Status::Pass : Status::Fail;
  return tr;
}

bool affine(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](const RatFunc& c) { return c.is_polynomial() && c.num().degree() <= 1; });
}

Json classification_json(const Classification& c, std::vector<std::string>& lines, bool full) {
  Json j;
  j["linear_degeneracy"] = c.linear_degeneracy.pass;
  j["haantjes_zero"] = c.haantjes_zero;
  j["nijenhuis_zero"] = c.nijenhuis_zero;
  lines.push_back(std::string("linear-degeneracy: ") + (c.linear_degeneracy.pass ? "pass" : "fail"));
  lines.push_back(std::string("haantjes-zero: ") + (c.haantjes_zero ? "pass" : "fail (non-diagonalizable)"));
  lines.push_back(std::string("nijenhuis-zero: ") + (c.nijenhuis_zero ? "pass" : "fail"));
  if (c.square_root) {
    const auto& s = *c.square_root;
    j["char_poly_square"] = s.is_square;
    if (s.is_square) {
      j["square_root"] = strings(s.q);
      j["real_roots_sampled"] = {{"real", s.real_samples}, {"samples", s.samples}};
      lines.push_back("characteristic polynomial is a perfect square q(λ)^2; q real-rooted at " +
                      std::to_string(s.real_samples) + "/" + std::to_string(s.samples) + " sampled points");
    } else {
      lines.push_back("characteristic polynomial is not a perfect square");
    }
  }
  j["linear_degeneracy_report"] = report_json(c.linear_degeneracy, full);
  return j;
}

TaskResult classify_task(const Problem& p, const TaskOptions& o) {
  const VelocityMatrix V = velocity(p);
  TaskResult tr;
  const Classification c = classify(V.V, true, o.seed);
  tr.result = classification_json(c, tr.lines, o.full);
  tr.result["char_poly"] = strings(char_poly(V.V));
  tr.status = Status::Success;
  return tr;
}

TaskResult find_bivectors_task(const Problem& p, const TaskOptions& o) {
  const auto& F = need_system(p);
  const int order = o.order.value_or(3);
  const int degree = o.degree.value_or(1);
  const Ansatz a = make_operator_ansatz(p.n, order, degree);
  const SolutionFamily fam = find_bivectors(F, a);
  TaskResult tr;
  tr.result["order"] = order;
  tr.result["degree"] = degree;
  tr.result["ansatz_parameters"] = a.params.size();
  tr.result["inconsistent"] = fam.inconsistent;
  tr.result["dimension"] = fam.dimension;
  Json basis = Json::array();
  tr.lines.push_back("ansatz: order " + std::to_string(order) + ", degree " + std::to_string(degree) + ", " +
                     std::to_string(a.params.size()) + " parameters");
  tr.lines.push_back("solution family dimension: " + std::to_string(fam.dimension));
  for (std::size_t k = 0; k < fam.forms.size(); ++k) {
    basis.push_back(strings(fam.forms[k].components));
    for (std::size_t i = 0; i < fam.forms[k].components.size(); ++i) {
      if (fam.forms[k].components[i].is_zero()) continue;
      tr.lines.push_back("  A" + std::to_string(k + 1) + "[" + std::to_string(i + 1) + "] = " +
                         str(fam.forms[k].components[i]));
    }
  }
  tr.result["basis"] = basis;
  tr.status = Status::Success;
  return tr;
}

TaskResult find_fluxes_task(const Problem& p, const TaskOptions& o) {
  const OperatorSpec& op = p.op(o.operator_name);
  const int degree = o.degree.value_or(2);
  const RatFunc den = parse_ratfunc(o.denominator, p.options);
  if (!den.is_polynomial()) throw InputError("the denominator must be a polynomial");
  const Poly denominator = den.num() * Poly(1 / den.den().constant_value());
  const FluxAnsatz a = make_flux_ansatz(p.n, degree, denominator);
  SolutionFamily fam;
  if (op.kind == OperatorKind::SecondOrder) {
    fam = find_fluxes_second_order(op.second, a, o.seed);
  } else if (op.kind == OperatorKind::ThirdOrder) {
    fam = find_fluxes_third_order(op.third, a, o.seed);
  } else {
    throw InputError("find-fluxes needs a second- or third-order operator");
  }
  TaskResult tr;
  tr.result["operator"] = op.name;
  tr.result["degree"] = degree;
  tr.result["denominator"] = str(RatFunc(denominator));
  tr.result["ansatz_parameters"] = a.params.size();
  tr.result["inconsistent"] = fam.inconsistent;
  tr.result["dimension"] = fam.dimension;
  tr.lines.push_back("flux ansatz: numerators of degree " + std::to_string(degree) + " over " +
                     str(RatFunc(denominator)) + ", " + std::to_string(a.params.size()) + " parameters");
  tr.lines.push_back("solution family dimension: " + std::to_string(fam.dimension));
  Json basis = Json::array();
  bool all_affine = true;
  for (std::size_t k = 0; k < fam.fluxes.size(); ++k) {
    basis.push_back(strings(fam.fluxes[k]));
    all_affine = all_affine && affine(fam.fluxes[k]);
    for (std::size_t i = 0; i < fam.fluxes[k].size(); ++i) {
      if (fam.fluxes[k][i].is_zero()) continue;
      tr.lines.push_back("  V" + std::to_string(k + 1) + "[" + std::to_string(i + 1) + "] = " + str(fam.fluxes[k][i]));
    }
  }
  tr.result["basis"] = basis;
  tr.result["affine"] = all_affine;
  if (fam.generic_member) {
    tr.result["generic_member"] = strings(*fam.generic_member);
    tr.lines.push_back("generic member (seed " + std::to_string(o.seed) + "):");
    const Classification c = classify(jacobian(*fam.generic_member, p.n), true, o.seed);
    tr.result["classification"] = classification_json(c, tr.lines, o.full);
  }
  tr.status = Status::Success;
  return tr;
}

TaskResult reduce_task(const Problem& p, const TaskOptions& o) {
  const auto& F = need_system(p);
  const EvolutionSystem pot = potentialize(F);
  TaskResult tr;
  tr.result["potential_system"] = strings(pot.f);
  tr.lines.push_back("potential system b_t = V(b_x), written with u = b_x:");
  for (int i = 0; i < p.n; ++i) tr.lines.push_back("  b" + std::to_string(i + 1) + "_t = " + str(pot.f[sz(i)]));
  if (!p.operators.empty()) {
    const OperatorSpec& op = p.op(o.operator_name);
    std::optional<BivectorForm> b;
    CoveringContext ctx = build_cotangent(pot);
    if (op.kind == OperatorKind::SecondOrder) {
      b = potential_second_order_bivector(op.second);
    } else if (op.kind == OperatorKind::ThirdOrder) {
      try {
        b = potential_third_order_bivector(ctx, op.third, op.tails);
      } catch (const NotASymmetry&) {
        throw InputError("a tail of " + op.name + " is not a symmetry of the potential system");
      }
    }
    if (b) {
      tr.result["operator"] = op.name;
      tr.result["reduced_operator"] = strings(b->components);
      tr.lines.push_back("operator " + op.name + " in potential coordinates:");
      for (std::size_t i = 0; i < b->components.size(); ++i) {
        tr.lines.push_back("  [" + std::to_string(i + 1) + "] = " + str(b->components[i]));
      }
      Json slots = Json::array();
      for (const auto& s : ctx.slots()) slots.push_back({{"r_x", str(s.rx_rule)}, {"r_t", str(s.rt_rule)}});
      if (!slots.empty()) tr.result["nonlocal"] = slots;
    }
  }
  tr.status = Status::Success;
  return tr;
}

TaskResult covering_task(const Problem& p, const TaskOptions&) {
  CoveringContext ctx = build_cotangent(need_system(p));
  register_declared(ctx, p);
  TaskResult tr;
  tr.result["pt_rules"] = strings(ctx.pt_rules());
  for (std::size_t i = 0; i < ctx.pt_rules().size(); ++i) {
    tr.lines.push_back("p" + std::to_string(i + 1) + "_t = " + str(ctx.pt_rules()[i]));
  }
  Json slots = Json::array();
  for (const auto& s : ctx.slots()) {
    slots.push_back({{"r_x", str(s.rx_rule)}, {"r_t", str(s.rt_rule)}});
    tr.lines.push_back("r" + std::to_string(s.alpha + 1) + "_x = " + str(s.rx_rule) + ",  r" +
                       std::to_string(s.alpha + 1) + "_t = " + str(s.rt_rule));
  }
  tr.result["nonlocal"] = slots;
  tr.status = Status::Success;
  return tr;
}

std::optional<DiffPoly> try_parse(const Json& v) {
  if (!v.is_string()) return std::nullopt;
  try {
    return parse_diffpoly(v.get<std::string>());
  } catch (const Error&) {
    return std::nullopt;
  }
}

/// Compares nested arrays of expression strings up to normal form.
bool same_expressions(const Json& a, const Json& b) {
  if (a.is_array() && b.is_array()) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (!same_expressions(a[i], b[i])) return false;
    }
    return true;
  }
  const auto x = try_parse(a);
  const auto y = try_parse(b);
  return x && y && *x == *y;
}

}  // namespace

TaskResult run_task(const Problem& p, const std::string& command, const TaskOptions& o) {
  if (command == "check-op") return check_op(p, o);
  if (command == "check-compat") return check_compat(p, o);
  if (command == "find-bivectors") return find_bivectors_task(p, o);
  if (command == "find-fluxes") return find_fluxes_task(p, o);
  if (command == "classify") return classify_task(p, o);
  if (command == "reduce") return reduce_task(p, o);
  if (command == "covering") return covering_task(p, o);
  throw InputError("unknown task '" + command + "'");
}

std::vector<std::string> check_expectations(const Json& result, const Json& expect) {
  std::vector<std::string> bad;
  for (const auto& [key, want] : expect.items()) {
    if (key == "error") continue;
    if (key == "dimension_at_least") {
      if (!result.contains("dimension") || result["dimension"].get<int>() < want.get<int>()) {
        bad.push_back("dimension " + result.value("dimension", Json()).dump() + " < " + want.dump());
      }
      continue;
    }
    if (key == "families_fail") {
      std::set<std::string> failing;
      for (const auto& v : result.value("verdicts", Json::array())) {
        for (const auto& f : v["families"]) {
          if (!f["pass"].get<bool>()) failing.insert(f["name"].get<std::string>());
        }
      }
      for (const auto& f : want) {
        if (!failing.count(f.get<std::string>())) bad.push_back("family " + f.get<std::string>() + " was expected to fail");
      }
      continue;
    }
    // Nested keys such as "classification.haantjes_zero".
    const Json* node = &result;
    std::string path = key;
    for (std::size_t dot; (dot = path.find('.')) != std::string::npos; path = path.substr(dot + 1)) {
      const std::string head = path.substr(0, dot);
      if (!node->contains(head)) {
        node = nullptr;
        break;
      }
      node = &(*node)[head];
    }
    if (node == nullptr || !node->contains(path)) {
      bad.push_back(key + ": missing from the result");
      continue;
    }
    const Json& got = (*node)[path];
    const bool ok = (key == "basis" || key == "pt_rules" || key == "potential_system" || key == "reduced_operator")
                        ? same_expressions(got, want)
                        : got == want;
    if (!ok) bad.push_back(key + ": expected " + want.dump() + ", got " + got.dump());
  }
  return bad;
}

std::vector<GoldenOutcome> run_golden(const Problem& p) {
  std::vector<GoldenOutcome> out;
  for (const auto& task : p.tasks) {
    GoldenOutcome g;
    g.problem = p.name;
    g.command = task.value("command", "");
    TaskOptions o;
    o.operator_name = task.value("operator", "");
    if (task.contains("order")) o.order = task["order"].get<int>();
    if (task.contains("degree")) o.degree = task["degree"].get<int>();
    o.denominator = task.value("denominator", "1");
    o.seed = task.value("seed", std::uint64_t{1});
    g.label = task.value("label", g.command + (o.operator_name.empty() ? "" : " " + o.operator_name));
    const Json expect = task.value("expect", Json::object());
    try {
      const TaskResult r = run_task(p, g.command, o);
      g.result = r.result;
      g.mismatches = check_expectations(r.result, expect);
      if (expect.contains("error")) g.mismatches.push_back("expected an input error");
    } catch (const InputError& e) {
      g.result = {{"error", e.what()}};
      if (!expect.contains("error")) g.mismatches.push_back(std::string("input error: ") + e.what());
    } catch (const Error& e) {
      g.result = {{"error", e.what()}};
      g.mismatches.push_back(std::string("engine error: ") + e.what());
    }
    g.ok = g.mismatches.empty();
    out.push_back(std::move(g));
  }
  return out;
}

Json make_report(const Problem& p, const std::string& source, const std::string& command, const TaskResult& r,
                 int exit_code) {
  Json j;
  j["schema"] = kSchema;
  j["engine"] = {{"name", "hhokit"}, {"version", kVersion}};
  j["input"] = {{"source", source}, {"problem", p.name}, {"hash", input_hash(p.document)}};
  j["command"] = command;
  j["status"] = r.status == Status::Pass ? "pass" : r.status == Status::Fail ? "fail" : "success";
  j["exit_code"] = exit_code;
  j["result"] = r.result;
  return j;
}

}  // namespace hhokit::cli
