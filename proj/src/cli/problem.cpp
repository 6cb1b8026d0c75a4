#include <fstream>
#include <sstream>

#include "hhokit/cli.hpp"
#include "hhokit/errors.hpp"

namespace hhokit::cli {

namespace {

std::size_t sz(int i) { return static_cast<std::size_t>(i); }

struct Loader {
  ParseOptions opts;
  int n = 0;

  std::string text_of(const Json& v, const std::string& path) const {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    throw InputError(path + ": expected an expression string");
  }

  DiffPoly diffpoly(const Json& v, const std::string& path) const {
    const std::string s = text_of(v, path);
    try {
      return parse_diffpoly(s, opts);
    } catch (const InputError& e) {
      throw InputError(path + ": " + e.what());
    }
  }

  RatFunc ratfunc(const Json& v, const std::string& path) const {
    const std::string s = text_of(v, path);
    try {
      return parse_ratfunc(s, opts);
    } catch (const InputError& e) {
      throw InputError(path + ": " + e.what());
    }
  }

  Rat constant(const Json& v, const std::string& path) const {
    const RatFunc r = ratfunc(v, path);
    if (!r.is_constant()) throw InputError(path + ": expected a rational constant");
    return r.constant_value();
  }

  const Json& array(const Json& v, std::size_t len, const std::string& path) const {
    if (!v.is_array()) throw InputError(path + ": expected an array");
    if (v.size() != len) {
      throw InputError(path + ": dimension mismatch (expected " + std::to_string(len) + " entries, got " +
                       std::to_string(v.size()) + ")");
    }
    return v;
  }

  Vec vec(const Json& v, const std::string& path) const {
    array(v, sz(n), path);
    Vec out;
    for (std::size_t i = 0; i < v.size(); ++i) out.push_back(ratfunc(v[i], path + "[" + std::to_string(i) + "]"));
    return out;
  }

  Mat mat(const Json& v, const std::string& path) const {
    array(v, sz(n), path);
    Mat out;
    for (std::size_t i = 0; i < v.size(); ++i) out.push_back(vec(v[i], path + "[" + std::to_string(i) + "]"));
    return out;
  }

  std::vector<DiffPoly> diffvec(const Json& v, const std::string& path) const {
    array(v, sz(n), path);
    std::vector<DiffPoly> out;
    for (std::size_t i = 0; i < v.size(); ++i) out.push_back(diffpoly(v[i], path + "[" + std::to_string(i) + "]"));
    return out;
  }

  /// Full nested n×n×n array, or a list of {"indices": [i,j,k], "value": e}.
  T3 t3(const Json& v, const std::string& path) const {
    T3 out = zero_t3(n);
    if (v.is_array() && !v.empty() && v[0].is_object()) {
      for (std::size_t e = 0; e < v.size(); ++e) {
        const auto [idx, val] = sparse_entry(v[e], 3, path + "[" + std::to_string(e) + "]");
        out[sz(idx[0])][sz(idx[1])][sz(idx[2])] = ratfunc(val, path);
      }
      return out;
    }
    array(v, sz(n), path);
    for (int i = 0; i < n; ++i) out[sz(i)] = mat(v[sz(i)], path + "[" + std::to_string(i) + "]");
    return out;
  }

  std::pair<std::vector<int>, Json> sparse_entry(const Json& e, std::size_t arity, const std::string& path) const {
    if (!e.is_object() || !e.contains("indices") || !e.contains("value")) {
      throw InputError(path + ": expected {\"indices\": [...], \"value\": ...}");
    }
    const Json& ix = array(e["indices"], arity, path + ".indices");
    std::vector<int> idx;
    for (const auto& i : ix) {
      if (!i.is_number_integer()) throw InputError(path + ".indices: expected integers");
      const int k = i.get<int>();
      if (k < 1 || k > n) throw InputError(path + ".indices: index " + std::to_string(k) + " out of range 1.." +
                                           std::to_string(n));
      idx.push_back(k - 1);
    }
    return {idx, e["value"]};
  }

  /// T_{ijk}: full array or {"alternating": [{"indices": [1,2,3], "value": 1}]}.
  std::vector<std::vector<std::vector<Rat>>> alternating(const Json& v, const std::string& path) const {
    std::vector<std::vector<std::vector<Rat>>> T(sz(n), std::vector<std::vector<Rat>>(sz(n), std::vector<Rat>(sz(n))));
    if (v.is_object()) {
      if (!v.contains("alternating")) throw InputError(path + ": expected an \"alternating\" entry list");
      const Json& list = v["alternating"];
      for (std::size_t e = 0; e < list.size(); ++e) {
        const auto [idx, val] = sparse_entry(list[e], 3, path + ".alternating[" + std::to_string(e) + "]");
        const Rat x = constant(val, path);
        const int perm[6][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {1, 0, 2}, {0, 2, 1}, {2, 1, 0}};
        for (int s = 0; s < 6; ++s) {
          T[sz(idx[sz(perm[s][0])])][sz(idx[sz(perm[s][1])])][sz(idx[sz(perm[s][2])])] = s < 3 ? x : Rat(-x);
        }
      }
      return T;
    }
    array(v, sz(n), path);
    for (int i = 0; i < n; ++i) {
      array(v[sz(i)], sz(n), path);
      for (int j = 0; j < n; ++j) {
        array(v[sz(i)][sz(j)], sz(n), path);
        for (int k = 0; k < n; ++k) T[sz(i)][sz(j)][sz(k)] = constant(v[sz(i)][sz(j)][sz(k)], path);
      }
    }
    return T;
  }

  /// g0_{ij}: full array or {"skew": [{"indices": [3,4], "value": 1}]}.
  std::vector<std::vector<Rat>> skew(const Json& v, const std::string& path) const {
    std::vector<std::vector<Rat>> g(sz(n), std::vector<Rat>(sz(n)));
    if (v.is_object()) {
      if (!v.contains("skew")) throw InputError(path + ": expected a \"skew\" entry list");
      const Json& list = v["skew"];
      for (std::size_t e = 0; e < list.size(); ++e) {
        const auto [idx, val] = sparse_entry(list[e], 2, path + ".skew[" + std::to_string(e) + "]");
        const Rat x = constant(val, path);
        g[sz(idx[0])][sz(idx[1])] = x;
        g[sz(idx[1])][sz(idx[0])] = -x;
      }
      return g;
    }
    array(v, sz(n), path);
    for (int i = 0; i < n; ++i) {
      array(v[sz(i)], sz(n), path);
      for (int j = 0; j < n; ++j) g[sz(i)][sz(j)] = constant(v[sz(i)][sz(j)], path);
    }
    return g;
  }

  OperatorSpec op(const Json& v, const std::string& path) const {
    if (!v.is_object()) throw InputError(path + ": expected an object");
    OperatorSpec s;
    s.name = v.value("name", "");
    if (s.name.empty()) throw InputError(path + ": operator needs a name");
    const std::string kind = v.value("kind", "");
    if (kind == "bivector") {
      s.kind = OperatorKind::Bivector;
      if (!v.contains("components")) throw InputError(path + ": bivector needs \"components\"");
      s.form.components = diffvec(v["components"], path + ".components");
      for (const auto& c : s.form.components) {
        if (!c.is_odd_linear()) throw InputError(path + ": bivector components must be linear in p and r");
      }
    } else if (kind == "first-order") {
      s.kind = OperatorKind::FirstOrder;
      if (!v.contains("g")) throw InputError(path + ": first-order operator needs \"g\"");
      s.g.g = mat(v["g"], path + ".g");
      const std::string var = v.value("variance", "upper");
      if (var != "upper" && var != "lower") throw InputError(path + ".variance: expected \"upper\" or \"lower\"");
      s.g.variance = var == "upper" ? Variance::Upper : Variance::Lower;
      s.gamma = v.contains("Gamma") ? Connection{t3(v["Gamma"], path + ".Gamma")} : levi_civita(s.g);
      if (v.contains("W")) s.W = mat(v["W"], path + ".W");
    } else if (kind == "second-order") {
      s.kind = OperatorKind::SecondOrder;
      s.second.n = n;
      s.second.T = v.contains("T") ? alternating(v["T"], path + ".T")
                                   : std::vector<std::vector<std::vector<Rat>>>(
                                         sz(n), std::vector<std::vector<Rat>>(sz(n), std::vector<Rat>(sz(n))));
      s.second.g0 = v.contains("g0") ? skew(v["g0"], path + ".g0")
                                     : std::vector<std::vector<Rat>>(sz(n), std::vector<Rat>(sz(n)));
    } else if (kind == "third-order") {
      s.kind = OperatorKind::ThirdOrder;
      if (!v.contains("g")) throw InputError(path + ": third-order operator needs \"g\" (lower indices)");
      const Mat g = mat(v["g"], path + ".g");
      s.third = v.contains("c") ? ThirdOrderData{g, t3(v["c"], path + ".c")} : ThirdOrderData::from_metric(g);
      if (v.contains("tails")) {
        const Json& tails = v["tails"];
        if (!tails.is_array()) throw InputError(path + ".tails: expected an array");
        for (std::size_t a = 0; a < tails.size(); ++a) {
          const std::string tp = path + ".tails[" + std::to_string(a) + "]";
          if (!tails[a].contains("w")) throw InputError(tp + ": tail needs \"w\"");
          s.tails.w.push_back(mat(tails[a]["w"], tp + ".w"));
          s.tails.weights.push_back(tails[a].contains("weight") ? constant(tails[a]["weight"], tp + ".weight")
                                                                 : Rat(1));
        }
      }
    } else {
      throw InputError(path + ".kind: expected bivector, first-order, second-order or third-order");
    }
    return s;
  }

  EvolutionSystem system(const Json& v, const std::string& path) const {
    if (!v.is_object()) throw InputError(path + ": expected an object");
    const std::string kind = v.value("kind", "");
    if (kind == "general") {
      if (!v.contains("f")) throw InputError(path + ": general system needs \"f\"");
      return EvolutionSystem::general(diffvec(v["f"], path + ".f"));
    }
    if (kind == "hydrodynamic") {
      if (v.contains("V")) return EvolutionSystem::hydrodynamic(mat(v["V"], path + ".V"));
      if (v.contains("flux")) return EvolutionSystem::conservative(vec(v["flux"], path + ".flux"));
      throw InputError(path + ": hydrodynamic system needs \"V\" or \"flux\"");
    }
    if (kind == "conservative" || kind == "potential") {
      if (!v.contains("flux")) throw InputError(path + ": " + kind + " system needs \"flux\"");
      const Vec flux = vec(v["flux"], path + ".flux");
      return kind == "conservative" ? EvolutionSystem::conservative(flux) : EvolutionSystem::potential(flux);
    }
    throw InputError(path + ".kind: expected general, hydrodynamic, conservative or potential");
  }
};

std::pair<int, int> line_column(const std::string& text, std::size_t byte) {
  int line = 1;
  int col = 1;
  for (std::size_t i = 0; i < text.size() && i + 1 < byte; ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

}  // namespace

std::string kind_name(OperatorKind k) {
  switch (k) {
    case OperatorKind::Bivector:
      return "bivector";
    case OperatorKind::FirstOrder:
      return "first-order";
    case OperatorKind::SecondOrder:
      return "second-order";
    case OperatorKind::ThirdOrder:
      return "third-order";
  }
  return "?";
}

const OperatorSpec& Problem::op(const std::string& which) const {
  if (operators.empty()) throw InputError("problem defines no operators");
  if (which.empty()) return operators.front();
  for (const auto& o : operators) {
    if (o.name == which) return o;
  }
  throw InputError("unknown operator '" + which + "'");
}

Connection levi_civita(const Metric& g) {
  const int n = g.n();
  const Mat up = g.upper();
  const Mat low = g.lower();
  const T3 d = partials(low);  // d[l][k][s] = ∂_s g_{lk}
  // Γ^j_{sk} = ½ g^{jl}(g_{lk,s} + g_{ls,k} - g_{sk,l}); Γ^{ij}_k = -g^{is}Γ^j_{sk}.
  T3 lower_gamma = zero_t3(n);
  for (int j = 0; j < n; ++j) {
    for (int s = 0; s < n; ++s) {
      for (int k = 0; k < n; ++k) {
        RatFunc acc;
        for (int l = 0; l < n; ++l) {
          acc += up[sz(j)][sz(l)] * (d[sz(l)][sz(k)][sz(s)] + d[sz(l)][sz(s)][sz(k)] - d[sz(s)][sz(k)][sz(l)]);
        }
        lower_gamma[sz(j)][sz(s)][sz(k)] = acc * RatFunc(Rat(1, 2));
      }
    }
  }
  Connection G{zero_t3(n)};
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        RatFunc acc;
        for (int s = 0; s < n; ++s) acc -= up[sz(i)][sz(s)] * lower_gamma[sz(j)][sz(s)][sz(k)];
        G.gamma[sz(i)][sz(j)][sz(k)] = acc;
      }
    }
  }
  return G;
}

Problem load_problem(const Json& doc) {
  if (!doc.is_object()) throw InputError("problem file must be a JSON object");
  if (doc.contains("schema") && doc["schema"] != kSchema) {
    throw InputError("unsupported problem schema " + doc["schema"].dump());
  }
  Problem p;
  p.document = doc;
  p.name = doc.value("name", "problem");
  p.description = doc.value("description", "");
  if (!doc.contains("n") || !doc["n"].is_number_integer()) throw InputError("\"n\" must be an integer");
  p.n = doc["n"].get<int>();
  if (p.n < 1 || p.n > kMaxFieldVars) throw InputError("n must be between 1 and 8");
  p.options.n = p.n;
  if (doc.contains("variables")) {
    const Json& vars = doc["variables"];
    if (!vars.is_object()) throw InputError("\"variables\" must map names to u1..un");
    for (const auto& [alias, target] : vars.items()) {
      if (!target.is_string()) throw InputError("variables." + alias + ": expected a string such as \"u1\"");
      p.options.aliases[alias] = target.get<std::string>();
    }
  }
  Loader L{p.options, p.n};
  if (doc.contains("system")) p.system = L.system(doc["system"], "system");
  if (doc.contains("operators")) {
    const Json& ops = doc["operators"];
    if (!ops.is_array()) throw InputError("\"operators\" must be an array");
    for (std::size_t i = 0; i < ops.size(); ++i) {
      p.operators.push_back(L.op(ops[i], "operators[" + std::to_string(i) + "]"));
      for (std::size_t j = 0; j + 1 < p.operators.size(); ++j) {
        if (p.operators[j].name == p.operators.back().name) {
          throw InputError("duplicate operator name '" + p.operators.back().name + "'");
        }
      }
    }
  }
  if (doc.contains("symmetries")) {
    const Json& syms = doc["symmetries"];
    if (!syms.is_array()) throw InputError("\"symmetries\" must be an array");
    for (std::size_t i = 0; i < syms.size(); ++i) {
      p.symmetries.push_back(L.diffvec(syms[i], "symmetries[" + std::to_string(i) + "]"));
    }
  }
  if (doc.contains("tasks")) {
    if (!doc["tasks"].is_array()) throw InputError("\"tasks\" must be an array");
    p.tasks = doc["tasks"];
  }
  return p;
}

Problem load_problem_text(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    const auto [line, col] = line_column(text, e.byte);
    std::string msg = e.what();
    if (const auto pos = msg.find("syntax error"); pos != std::string::npos) msg = msg.substr(pos);
    throw ParseError(msg, line, col);
  }
  return load_problem(doc);
}

Problem load_problem_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open problem file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return load_problem_text(ss.str());
}

std::uint64_t fnv1a(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char ch : data) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string input_hash(const Json& document) {
  static const char* hex = "0123456789abcdef";
  std::uint64_t h = fnv1a(document.dump());
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[sz(i)] = hex[h & 0xF];
    h >>= 4;
  }
  return "fnv1a64:" + out;
}

}  // namespace hhokit::cli
