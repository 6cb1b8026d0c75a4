#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "hhokit/geometry.hpp"
#include "hhokit/parse.hpp"
#include "hhokit/solver.hpp"

namespace hhokit::cli {

using Json = nlohmann::ordered_json;

inline constexpr int kSchema = 1;
inline constexpr const char* kVersion = "0.1.0";
/// Residual entries shown per verdict unless --full.
inline constexpr std::size_t kTruncate = 20;

enum class OperatorKind { Bivector, FirstOrder, SecondOrder, ThirdOrder };

struct OperatorSpec {
  std::string name;
  OperatorKind kind = OperatorKind::Bivector;
  /// Bivector: raw components (may contain r1.. for registered symmetries).
  BivectorForm form;
  /// First order: g^{ij} (or g_{ij}), Γ^{ij}_k, optional tail W^i_j.
  Metric g;
  Connection gamma;
  std::optional<Mat> W;
  SecondOrderData second;
  ThirdOrderData third;
  NonlocalThirdOrderData tails;
};

std::string kind_name(OperatorKind k);

struct Problem {
  std::string name;
  std::string description;
  int n = 0;
  ParseOptions options;
  std::optional<EvolutionSystem> system;
  std::vector<OperatorSpec> operators;
  /// Registered on the covering before raw bivector checks, in order.
  std::vector<std::vector<DiffPoly>> symmetries;
  Json tasks = Json::array();
  /// The document as loaded; its compact dump is what gets hashed.
  Json document;

  /// Named operator, or the first one when `name` is empty.
  const OperatorSpec& op(const std::string& name) const;
};

/// Builds a Problem from the JSON document. Throws InputError (or ParseError
/// with the position inside the offending expression).
Problem load_problem(const Json& doc);
/// Parses JSON text; syntax errors become ParseError with line and column.
Problem load_problem_text(const std::string& text);
Problem load_problem_file(const std::string& path);

/// Γ^{ij}_k of the Levi-Civita connection of g.
Connection levi_civita(const Metric& g);

struct TaskOptions {
  std::string operator_name;
  /// Defaults: order 3; degree 1 for find-bivectors, 2 for find-fluxes.
  std::optional<int> order;
  std::optional<int> degree;
  std::string denominator = "1";
  bool full = false;
  std::uint64_t seed = 1;
};

enum class Status { Pass, Fail, Success };

struct TaskResult {
  Status status = Status::Success;
  Json result;
  /// Human-readable lines.
  std::vector<std::string> lines;
};

/// Runs check-op, check-compat, find-bivectors, find-fluxes, classify, reduce
/// or covering on a loaded problem.
TaskResult run_task(const Problem& p, const std::string& command, const TaskOptions& o);

/// Compares a task result against the golden "expect" object; returns the
/// list of mismatches (empty when everything holds).
std::vector<std::string> check_expectations(const Json& result, const Json& expect);

struct GoldenOutcome {
  std::string problem;
  std::string command;
  std::string label;
  bool ok = false;
  std::vector<std::string> mismatches;
  Json result;
};

/// Runs every task of the problem and compares it with its golden values.
std::vector<GoldenOutcome> run_golden(const Problem& p);

struct CatalogEntry {
  std::string name;
  std::string summary;
  std::string document;  // JSON text
};

const std::vector<CatalogEntry>& examples_catalog();
Problem load_example(const std::string& name);

std::uint64_t fnv1a(std::string_view data);
std::string input_hash(const Json& document);

/// Wraps a result in the versioned report envelope.
Json make_report(const Problem& p, const std::string& source, const std::string& command, const TaskResult& r,
                 int exit_code);

/// Entry point behind the `hhokit` executable; returns the exit code
/// (0 pass/success, 1 mathematical failure, 2 input error).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hhokit::cli
