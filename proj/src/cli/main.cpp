#include <fstream>
#include <future>
#include <ostream>

#include "CLI11.hpp"

#include "hhokit/cli.hpp"
#include "hhokit/errors.hpp"

namespace hhokit::cli {

namespace {

struct Args {
  std::string file;
  std::string example;
  std::string json_path;
  TaskOptions task;
  int order = 0;
  int degree = 0;
  std::vector<std::string> names;
  bool all = false;
};

void write_json(const Json& j, const std::string& path, std::ostream& out) {
  if (path.empty()) return;
  if (path == "-") {
    out << j.dump(2) << "\n";
    return;
  }
  std::ofstream f(path);
  if (!f) throw InputError("cannot write report to '" + path + "'");
  f << j.dump(2) << "\n";
}

std::pair<Problem, std::string> load(const Args& a) {
  if (!a.example.empty() && !a.file.empty()) throw InputError("give either a problem file or --example, not both");
  if (!a.example.empty()) return {load_example(a.example), "example:" + a.example};
  if (a.file.empty()) throw InputError("no problem given (pass a file or --example NAME)");
  return {load_problem_file(a.file), a.file};
}

int exit_code(Status s) { return s == Status::Fail ? 1 : 0; }

int run_command(const std::string& command, const Args& a, std::ostream& out) {
  const auto [problem, source] = load(a);
  const TaskResult r = run_task(problem, command, a.task);
  const int code = exit_code(r.status);
  if (a.json_path != "-") {
    out << "hhokit " << kVersion << "  " << command << "  " << problem.name << "\n";
    for (const auto& line : r.lines) out << line << "\n";
    out << "RESULT: " << (r.status == Status::Pass ? "PASS" : r.status == Status::Fail ? "FAIL" : "OK") << "\n";
  }
  write_json(make_report(problem, source, command, r, code), a.json_path, out);
  return code;
}

Json golden_json(const std::vector<GoldenOutcome>& outcomes) {
  Json tasks = Json::array();
  for (const auto& g : outcomes) {
    tasks.push_back({{"label", g.label}, {"command", g.command}, {"ok", g.ok}, {"mismatches", g.mismatches}});
  }
  return tasks;
}

int run_goldens(const std::vector<Problem>& problems, const std::vector<std::string>& sources, const Args& a,
                std::ostream& out) {
  // Entries are independent; run them concurrently and report in order.
  std::vector<std::future<std::vector<GoldenOutcome>>> jobs;
  for (const auto& p : problems) jobs.push_back(std::async(std::launch::async, [&p] { return run_golden(p); }));
  bool all_ok = true;
  Json entries = Json::array();
  std::size_t total = 0;
  std::size_t failed = 0;
  for (std::size_t i = 0; i < problems.size(); ++i) {
    const auto outcomes = jobs[i].get();
    bool ok = true;
    for (const auto& g : outcomes) {
      ++total;
      if (!g.ok) ++failed;
      ok = ok && g.ok;
      if (a.json_path != "-") {
        out << (g.ok ? "ok    " : "FAIL  ") << problems[i].name << ": " << g.label << "\n";
        for (const auto& m : g.mismatches) out << "        " << m << "\n";
      }
    }
    all_ok = all_ok && ok;
    entries.push_back({{"name", problems[i].name},
                       {"source", sources[i]},
                       {"hash", input_hash(problems[i].document)},
                       {"pass", ok},
                       {"tasks", golden_json(outcomes)}});
  }
  if (a.json_path != "-") {
    out << (total - failed) << "/" << total << " golden assertions hold\n";
    out << "RESULT: " << (all_ok ? "PASS" : "FAIL") << "\n";
  }
  Json j;
  j["schema"] = kSchema;
  j["engine"] = {{"name", "hhokit"}, {"version", kVersion}};
  j["command"] = "examples run";
  j["status"] = all_ok ? "pass" : "fail";
  j["exit_code"] = all_ok ? 0 : 1;
  j["result"] = {{"entries", entries}, {"pass", all_ok}};
  write_json(j, a.json_path, out);
  return all_ok ? 0 : 1;
}

std::string rat_text(const Rat& r) { return to_string(r); }

void show_example(const std::string& name, std::ostream& out) {
  const Problem p = load_example(name);
  out << p.name << ": " << p.description << "\n\n";
  for (const auto& op : p.operators) {
    if (op.kind != OperatorKind::SecondOrder) continue;
    const auto& d = op.second;
    out << "operator " << op.name << ": g_ij = T_ijk u^k + g0_ij\n";
    for (int i = 0; i < d.n; ++i) {
      for (int j = i + 1; j < d.n; ++j) {
        for (int k = j + 1; k < d.n; ++k) {
          const Rat& t = d.T[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
          if (t != 0) out << "  T_" << i + 1 << j + 1 << k + 1 << " = " << rat_text(t) << "\n";
        }
      }
    }
    for (int i = 0; i < d.n; ++i) {
      for (int j = i + 1; j < d.n; ++j) {
        const Rat& g = d.g0[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        if (g != 0) out << "  g0_" << i + 1 << j + 1 << " = " << rat_text(g) << "\n";
      }
    }
    out << "  other entries follow by skew-symmetry or vanish\n  g =\n";
    for (const auto& row : d.g_low()) {
      out << "   ";
      for (const auto& e : row) out << " " << to_string(e);
      out << "\n";
    }
    out << "\n";
  }
  out << p.document.dump(2) << "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"hhokit: exact checks and searches for homogeneous Hamiltonian operators"};
  app.set_version_flag("--version", std::string("hhokit ") + kVersion);
  app.require_subcommand(1);
  Args a;

  auto add_problem = [&](CLI::App* sub) {
    sub->add_option("file", a.file, "problem file (JSON)");
    sub->add_option("--example", a.example, "built-in catalog entry");
    sub->add_option("--json", a.json_path, "write the structured report to PATH ('-' for stdout only)");
    sub->add_flag("--full", a.task.full, "print every residual term");
  };
  auto add_operator = [&](CLI::App* sub) { sub->add_option("--operator", a.task.operator_name, "operator name"); };
  auto add_seed = [&](CLI::App* sub) { sub->add_option("--seed", a.task.seed, "seed for generic members and sampling"); };

  struct Command {
    const char* name;
    const char* help;
  };
  const Command commands[] = {
      {"check-op", "check that an operator is Hamiltonian"},
      {"check-compat", "check an operator against the system (closed form and covering)"},
      {"find-bivectors", "solve for variational bivectors in a polynomial template"},
      {"find-fluxes", "solve for fluxes compatible with a second- or third-order operator"},
      {"classify", "linear degeneracy, Haantjes and Nijenhuis tensors, characteristic polynomial"},
      {"reduce", "rewrite a conservative system and its operator in potential coordinates"},
      {"covering", "print the cotangent covering rules"},
  };
  std::map<std::string, CLI::App*> subs;
  for (const auto& c : commands) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    add_problem(sub);
    subs[c.name] = sub;
  }
  for (const char* name : {"check-op", "check-compat", "find-fluxes", "reduce"}) add_operator(subs[name]);
  for (const char* name : {"find-fluxes", "classify"}) add_seed(subs[name]);
  auto* fb = subs["find-bivectors"];
  fb->add_option("--order", a.order, "maximal operator order (default 3)")->check(CLI::PositiveNumber);
  fb->add_option("--degree", a.degree, "degree bound of the u-coefficients (default 1)")->check(CLI::NonNegativeNumber);
  auto* ff = subs["find-fluxes"];
  ff->add_option("--degree", a.degree, "numerator degree (default 2)");
  ff->add_option("--denominator", a.task.denominator, "fixed denominator polynomial (default 1)");

  CLI::App* run_sub = app.add_subcommand("run", "run the tasks of a problem file and check their expectations");
  run_sub->add_option("file", a.file, "problem file (JSON)")->required();
  run_sub->add_option("--json", a.json_path, "write the structured report to PATH");

  CLI::App* ex = app.add_subcommand("examples", "built-in catalog");
  ex->require_subcommand(1);
  CLI::App* ex_list = ex->add_subcommand("list", "list catalog entries");
  CLI::App* ex_show = ex->add_subcommand("show", "print a catalog entry");
  ex_show->add_option("name", a.example, "entry name")->required();
  CLI::App* ex_run = ex->add_subcommand("run", "check the golden assertions of catalog entries");
  ex_run->add_option("names", a.names, "entry names");
  ex_run->add_flag("--all", a.all, "run every entry");
  ex_run->add_option("--json", a.json_path, "write the structured report to PATH");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << "hhokit " << kVersion << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    for (const auto& [name, sub] : subs) {
      if (!sub->parsed()) continue;
      if (const auto* opt = sub->get_option_no_throw("--order"); opt && opt->count() > 0) a.task.order = a.order;
      if (const auto* opt = sub->get_option_no_throw("--degree"); opt && opt->count() > 0) a.task.degree = a.degree;
      return run_command(name, a, out);
    }
    if (run_sub->parsed()) return run_goldens({load_problem_file(a.file)}, {a.file}, a, out);
    if (ex_list->parsed()) {
      for (const auto& e : examples_catalog()) out << e.name << "  " << e.summary << "\n";
      return 0;
    }
    if (ex_show->parsed()) {
      show_example(a.example, out);
      return 0;
    }
    if (ex_run->parsed()) {
      std::vector<std::string> names = a.names;
      if (a.all) {
        names.clear();
        for (const auto& e : examples_catalog()) names.push_back(e.name);
      }
      if (names.empty()) throw InputError("name catalog entries or pass --all");
      std::vector<Problem> problems;
      std::vector<std::string> sources;
      for (const auto& n : names) {
        problems.push_back(load_example(n));
        sources.push_back("example:" + n);
      }
      return run_goldens(problems, sources, a, out);
    }
  } catch (const Error& e) {
    // Parse errors, dimension mismatches and degenerate metrics alike.
    err << "error: " << e.what() << "\n";
    return 2;
  }
  err << "error: no command\n";
  return 2;
}

}  // namespace hhokit::cli
