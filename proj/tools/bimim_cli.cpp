#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>
#include <string>

#include "bimim/builders.hpp"
#include "bimim/cut_width.hpp"
#include "bimim/distance.hpp"
#include "bimim/generators.hpp"
#include "bimim/io.hpp"
#include "bimim/lcvp.hpp"
#include "bimim/oracle.hpp"
#include "bimim/sigma_rho.hpp"
#include "bimim/version.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitBudget = 3;

struct Output {
  bool json_lines = false;
  std::ostream* stream = &std::cout;

  void emit(const json& record, const std::string& text) const {
    if (json_lines)
      *stream << record.dump() << "\n";
    else
      *stream << text;
  }
};

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw bimim::ParseError("cannot open file: " + path);
  return in;
}

bimim::Digraph load_digraph(const std::string& path) {
  auto in = open_input(path);
  return bimim::read_digraph(in);
}

bimim::BranchDecomposition load_decomposition(const std::string& path) {
  auto in = open_input(path);
  return bimim::read_decomposition(in);
}

// A problem argument is either a file path or a catalog name.
bimim::SigmaRhoProblem load_problem(const std::string& arg, int k, int l) {
  std::ifstream in(arg);
  if (in) return bimim::read_problem(in);
  return bimim::catalog_problem(arg, k, l);
}

bimim::LcvpMatrix load_lcvp(const std::string& arg, int k1, int k2) {
  std::ifstream in(arg);
  if (in) return bimim::read_lcvp(in);
  if (arg.rfind("hom:", 0) == 0) {
    auto h = load_digraph(arg.substr(4));
    return bimim::catalog_h_homomorphism(h);
  }
  if (arg.rfind("exists:", 0) == 0)
    return bimim::catalog_exists_sigma_rho(load_problem(arg.substr(7), k1, k2));
  return bimim::catalog_lcvp(arg, k1, k2);
}

std::string vertices_string(const std::vector<int>& vs) {
  std::string out;
  for (int v : vs) {
    if (!out.empty()) out += ' ';
    out += std::to_string(v);
  }
  return out;
}

struct CommonFlags {
  std::string out_path;
  bool json_lines = false;
  int threads = 1;
  unsigned seed = 0;
};

int run(int argc, char** argv) {
  CLI::App app{"bi-mim-width toolkit: decompositions, widths, and locally checkable solvers"};
  app.set_version_flag("--version",
                       std::string("bimim ") + bimim::kToolVersion + " (" +
                           bimim::kFormatVersion + ")");
  app.require_subcommand(1);
  app.fallthrough();

  CommonFlags common;
  app.add_flag("--json", common.json_lines, "emit one JSON record per result line");
  app.add_option("--threads", common.threads, "worker threads for width evaluation")
      ->default_val(1);
  app.add_option("--seed", common.seed, "seed for randomized tooling (kept for reproducibility)")
      ->default_val(0);
  app.add_option("-o,--out", common.out_path, "write the result to a file instead of stdout");

  // build
  auto* build = app.add_subcommand("build", "construct a branch decomposition from a representation");
  std::string build_class, build_rep;
  bool build_measure = false;
  build->add_option("class", build_class,
                    "reflexive-interval | adjusted-permutation | adjusted-rdpath | "
                    "reflexive-hdigraph | nice-hconvex")
      ->required();
  build->add_option("repfile", build_rep, "representation file")->required();
  build->add_flag("--measure", build_measure, "also evaluate the exact width of the result");

  // width
  auto* width = app.add_subcommand("width", "evaluate the width of a decomposition");
  std::string width_digraph, width_bdecomp, width_measure = "bimim";
  width->add_option("digraph", width_digraph)->required();
  width->add_option("bdecomp", width_bdecomp)->required();
  width->add_option("--measure", width_measure, "bimim | birank")->default_val("bimim");

  // solve
  auto* solve = app.add_subcommand("solve", "optimum (sigma, rho)-dominating set");
  std::string solve_digraph, solve_bdecomp, solve_problem;
  int solve_distance = 1, solve_k = -1, solve_l = -1;
  bool solve_witness = false, solve_strict = false;
  solve->add_option("digraph", solve_digraph)->required();
  solve->add_option("bdecomp", solve_bdecomp)->required();
  solve->add_option("problem", solve_problem, "problem file or catalog name")->required();
  solve->add_option("--distance", solve_distance, "solve the distance-r variant")->default_val(1);
  solve->add_flag("--witness", solve_witness, "report an optimum set");
  solve->add_flag("--strict-balls", solve_strict,
                  "check the witness under literal ball semantics");
  solve->add_option("--k", solve_k, "k parameter for catalog problems");
  solve->add_option("--l", solve_l, "l parameter for catalog problems");

  // partition
  auto* partition = app.add_subcommand("partition", "existence of a constrained vertex partition");
  std::string part_digraph, part_bdecomp, part_matrix;
  int part_distance = 1, part_k1 = -1, part_k2 = -1, part_colors = -1;
  bool part_witness = false, part_strict = false;
  partition->add_option("digraph", part_digraph)->required();
  partition->add_option("bdecomp", part_bdecomp)->required();
  partition->add_option("lcvp", part_matrix,
                        "matrix file, catalog name, hom:<digraph file>, exists:<problem>, or "
                        "oriented-coloring")
      ->required();
  partition->add_option("--distance", part_distance)->default_val(1);
  partition->add_flag("--witness", part_witness, "report a witnessing partition");
  partition->add_flag("--strict-balls", part_strict,
                      "check the witness under literal ball semantics");
  partition->add_option("--k1", part_k1, "first parameter for catalog matrices");
  partition->add_option("--k2", part_k2, "second parameter for catalog matrices");
  partition->add_option("--k", part_colors, "color count for oriented-coloring");

  // nec
  auto* nec = app.add_subcommand("nec", "count d-bi-neighborhood classes of a cut side");
  std::string nec_digraph, nec_cutset;
  int nec_d = 1;
  nec->add_option("digraph", nec_digraph)->required();
  nec->add_option("cutset", nec_cutset, "file listing the A-side vertices")->required();
  nec->add_option("d", nec_d)->required();

  // gen
  auto* gen = app.add_subcommand("gen", "emit a named instance family");
  std::string gen_family;
  int gen_n = 2;
  gen->add_option("family", gen_family, "grid-orientation | tournament | p2-convex-grid")
      ->required();
  gen->add_option("n", gen_n)->required();

  // check
  auto* check = app.add_subcommand("check", "validate a representation and report its properties");
  std::string check_rep, check_digraph_out;
  check->add_option("repfile", check_rep)->required();
  check->add_option("--digraph", check_digraph_out, "also write the realized digraph to a file");

  // oracle
  auto* oracle_cmd = app.add_subcommand("oracle", "brute-force reference computations");
  oracle_cmd->require_subcommand(1);
  int budget_vertices = 8, budget_leaves = 6;
  long long budget_timeout = 0;
  oracle_cmd->add_option("--max-vertices", budget_vertices)->default_val(8);
  oracle_cmd->add_option("--max-leaves", budget_leaves)->default_val(6);
  oracle_cmd->add_option("--timeout-ms", budget_timeout)->default_val(0);

  auto* oracle_solve = oracle_cmd->add_subcommand("solve", "exhaustive subset optimum");
  std::string os_digraph, os_problem;
  int os_k = -1, os_l = -1, os_distance = 1;
  oracle_solve->add_option("digraph", os_digraph)->required();
  oracle_solve->add_option("problem", os_problem)->required();
  oracle_solve->add_option("--k", os_k);
  oracle_solve->add_option("--l", os_l);
  oracle_solve->add_option("--distance", os_distance)->default_val(1);

  auto* oracle_partition = oracle_cmd->add_subcommand("partition", "exhaustive assignment search");
  std::string op_digraph, op_matrix;
  int op_k1 = -1, op_k2 = -1, op_distance = 1;
  oracle_partition->add_option("digraph", op_digraph)->required();
  oracle_partition->add_option("lcvp", op_matrix)->required();
  oracle_partition->add_option("--k1", op_k1);
  oracle_partition->add_option("--k2", op_k2);
  oracle_partition->add_option("--distance", op_distance)->default_val(1);

  auto* oracle_width = oracle_cmd->add_subcommand("width", "exact bi-mim-width over all decompositions");
  std::string ow_digraph;
  oracle_width->add_option("digraph", ow_digraph)->required();

  auto* oracle_nec = oracle_cmd->add_subcommand("nec", "distinct descriptions by enumeration");
  std::string on_digraph, on_cutset;
  int on_d = 1;
  oracle_nec->add_option("digraph", on_digraph)->required();
  oracle_nec->add_option("cutset", on_cutset)->required();
  oracle_nec->add_option("d", on_d)->required();

  CLI11_PARSE(app, argc, argv);

  std::ofstream file_out;
  Output output;
  output.json_lines = common.json_lines;
  if (!common.out_path.empty()) {
    file_out.open(common.out_path);
    if (!file_out) {
      std::cerr << "cannot open output file: " << common.out_path << "\n";
      return kExitUsage;
    }
    output.stream = &file_out;
  }

  if (build->parsed()) {
    auto in = open_input(build_rep);
    auto rep = bimim::read_representation(in);
    bimim::BuilderReport report;
    if (build_class == "reflexive-interval")
      report = bimim::build_reflexive_interval(std::get<bimim::IntervalRep>(rep), build_measure);
    else if (build_class == "adjusted-permutation")
      report =
          bimim::build_adjusted_permutation(std::get<bimim::PermutationRep>(rep), build_measure);
    else if (build_class == "adjusted-rdpath")
      report = bimim::build_adjusted_rdpath(std::get<bimim::RootedDirPathRep>(rep), build_measure);
    else if (build_class == "reflexive-hdigraph")
      report = bimim::build_reflexive_hdigraph(std::get<bimim::HDigraphRep>(rep), build_measure);
    else if (build_class == "nice-hconvex")
      report = bimim::build_nice_hconvex(std::get<bimim::HConvexRep>(rep), build_measure);
    else
      throw bimim::ParseError("unknown builder class: " + build_class);
    if (output.json_lines) {
      json record{{"command", "build"},
                  {"class", build_class},
                  {"guarantee", report.guarantee},
                  {"tree_nodes", report.decomposition.tree_nodes}};
      if (report.measured) record["measured"] = *report.measured;
      std::ostringstream text;
      bimim::write_decomposition(text, report.decomposition, report.guarantee);
      record["bdecomp"] = text.str();
      output.emit(record, "");
    } else {
      std::ostringstream text;
      bimim::write_decomposition(text, report.decomposition, report.guarantee);
      if (report.measured) text << "# measured " << *report.measured << "\n";
      output.emit({}, text.str());
    }
    return kExitOk;
  }

  if (width->parsed()) {
    auto g = load_digraph(width_digraph);
    auto bd = load_decomposition(width_bdecomp);
    bimim::WidthMeasure measure;
    if (width_measure == "bimim")
      measure = bimim::WidthMeasure::bimim;
    else if (width_measure == "birank")
      measure = bimim::WidthMeasure::birank;
    else
      throw bimim::ParseError("unknown measure: " + width_measure);
    int w = bimim::decomposition_width(g, bd, measure, common.threads);
    output.emit({{"command", "width"}, {"measure", width_measure}, {"width", w}},
                "width " + std::to_string(w) + "\n");
    return kExitOk;
  }

  if (solve->parsed()) {
    auto g = load_digraph(solve_digraph);
    auto bd = load_decomposition(solve_bdecomp);
    auto prob = load_problem(solve_problem, solve_k, solve_l);
    bimim::SolveOptions options{.want_witness = solve_witness};
    auto result = solve_distance > 1
                      ? bimim::solve_distance_sigma_rho(g, bd, prob, solve_distance, options)
                      : bimim::solve_sigma_rho(g, bd, prob, options);
    if (!result.feasible) {
      output.emit({{"command", "solve"}, {"feasible", false}}, "infeasible\n");
      return kExitInfeasible;
    }
    json record{{"command", "solve"}, {"feasible", true}, {"value", result.value}};
    std::string text = "value " + std::to_string(result.value) + "\n";
    if (solve_witness) {
      record["witness"] = result.witness;
      text += "witness " + vertices_string(result.witness) + "\n";
      bool valid = bimim::distance_dominates(g, result.witness, prob, solve_distance, solve_strict);
      record["witness_check"] = valid;
      text += std::string("witness-check ") + (valid ? "pass" : "fail") + "\n";
    }
    output.emit(record, text);
    return kExitOk;
  }

  if (partition->parsed()) {
    auto g = load_digraph(part_digraph);
    auto bd = load_decomposition(part_bdecomp);
    if (part_matrix == "oriented-coloring") {
      if (part_colors < 1) throw bimim::ParseError("oriented-coloring needs --k");
      bool ok = bimim::oriented_k_coloring(g, bd, part_colors);
      output.emit({{"command", "partition"}, {"problem", "oriented-coloring"}, {"exists", ok}},
                  ok ? "partition exists\n" : "partition none\n");
      return ok ? kExitOk : kExitInfeasible;
    }
    auto dq = load_lcvp(part_matrix, part_k1, part_k2);
    bimim::SolveOptions options{.want_witness = part_witness};
    auto result = part_distance > 1
                      ? bimim::solve_distance_lcvp(g, bd, dq, part_distance, options)
                      : bimim::solve_lcvp(g, bd, dq, options);
    if (!result.exists) {
      output.emit({{"command", "partition"}, {"exists", false}}, "partition none\n");
      return kExitInfeasible;
    }
    json record{{"command", "partition"}, {"exists", true}};
    std::string text = "partition exists\n";
    if (part_witness) {
      record["parts"] = result.parts;
      for (size_t i = 0; i < result.parts.size(); ++i)
        text += "part " + std::to_string(i + 1) + " " + vertices_string(result.parts[i]) + "\n";
      bool valid =
          bimim::distance_is_dq_partition(g, result.parts, dq, part_distance, part_strict);
      record["witness_check"] = valid;
      text += std::string("witness-check ") + (valid ? "pass" : "fail") + "\n";
    }
    output.emit(record, text);
    return kExitOk;
  }

  if (nec->parsed()) {
    auto g = load_digraph(nec_digraph);
    auto cut_in = open_input(nec_cutset);
    auto side = bimim::read_vertex_set(cut_in);
    auto index = bimim::enumerate_classes(g, side, nec_d);
    output.emit({{"command", "nec"}, {"d", nec_d}, {"nec", index.size()}},
                "nec " + std::to_string(index.size()) + "\n");
    return kExitOk;
  }

  if (gen->parsed()) {
    std::ostringstream text;
    if (gen_family == "grid-orientation") {
      auto out = bimim::gen_grid_orientation(gen_n);
      bimim::write_representation(text, out.rep);
    } else if (gen_family == "tournament") {
      bimim::write_digraph(text, bimim::gen_tournament(gen_n));
    } else if (gen_family == "p2-convex-grid") {
      bimim::write_representation(text, bimim::gen_p2_convex_grid(gen_n));
    } else {
      throw bimim::ParseError("unknown family: " + gen_family);
    }
    output.emit({{"command", "gen"}, {"family", gen_family}, {"n", gen_n}, {"content", text.str()}},
                text.str());
    return kExitOk;
  }

  if (check->parsed()) {
    auto in = open_input(check_rep);
    auto rep = bimim::read_representation(in);
    json record{{"command", "check"}, {"valid", true}};
    std::string kind, extra;
    bimim::Digraph realized;
    if (auto* iv = std::get_if<bimim::IntervalRep>(&rep)) {
      kind = "intervals";
      realized = bimim::realize(*iv);
    } else if (auto* pm = std::get_if<bimim::PermutationRep>(&rep)) {
      kind = "perm";
      realized = bimim::realize(*pm);
      record["adjusted"] = bimim::is_adjusted(*pm);
      extra += std::string("adjusted ") + (bimim::is_adjusted(*pm) ? "true" : "false") + "\n";
    } else if (auto* rd = std::get_if<bimim::RootedDirPathRep>(&rep)) {
      kind = "rdpath";
      realized = bimim::realize(*rd);
      record["adjusted"] = bimim::is_adjusted(*rd);
      extra += std::string("adjusted ") + (bimim::is_adjusted(*rd) ? "true" : "false") + "\n";
    } else if (auto* hd = std::get_if<bimim::HDigraphRep>(&rep)) {
      kind = "hdigraph";
      realized = bimim::realize(*hd);
    } else {
      auto& hc = std::get<bimim::HConvexRep>(rep);
      kind = "hconvex";
      realized = bimim::realize(hc);
      record["nice"] = bimim::is_nice(hc);
      extra += std::string("nice ") + (bimim::is_nice(hc) ? "true" : "false") + "\n";
    }
    bool reflexive = bimim::is_reflexive(realized);
    record["kind"] = kind;
    record["vertices"] = realized.vertex_count();
    record["edges"] = realized.edge_count();
    record["reflexive"] = reflexive;
    std::string text = "kind " + kind + "\nvalid true\nvertices " +
                       std::to_string(realized.vertex_count()) + "\nedges " +
                       std::to_string(realized.edge_count()) + "\nreflexive " +
                       (reflexive ? "true" : "false") + "\n" + extra;
    if (!check_digraph_out.empty()) {
      std::ofstream digraph_out(check_digraph_out);
      if (!digraph_out) throw bimim::ParseError("cannot open output file: " + check_digraph_out);
      bimim::write_digraph(digraph_out, realized);
    }
    output.emit(record, text);
    return kExitOk;
  }

  if (oracle_cmd->parsed()) {
    bimim::oracle::Budget budget;
    budget.max_vertices = budget_vertices;
    budget.max_leaves = budget_leaves;
    budget.timeout = std::chrono::milliseconds(budget_timeout);

    if (oracle_solve->parsed()) {
      auto g = load_digraph(os_digraph);
      if (os_distance > 1) g = bimim::power(g, os_distance);
      auto prob = load_problem(os_problem, os_k, os_l);
      auto result = bimim::oracle::brute_sigma_rho(g, prob, budget);
      if (!result.feasible) {
        output.emit({{"command", "oracle-solve"}, {"feasible", false}}, "infeasible\n");
        return kExitInfeasible;
      }
      output.emit({{"command", "oracle-solve"},
                   {"feasible", true},
                   {"value", result.value},
                   {"witness", result.witness}},
                  "value " + std::to_string(result.value) + "\nwitness " +
                      vertices_string(result.witness) + "\n");
      return kExitOk;
    }
    if (oracle_partition->parsed()) {
      auto g = load_digraph(op_digraph);
      if (op_distance > 1) g = bimim::power(g, op_distance);
      auto dq = load_lcvp(op_matrix, op_k1, op_k2);
      bool ok = bimim::oracle::brute_lcvp(g, dq, budget);
      output.emit({{"command", "oracle-partition"}, {"exists", ok}},
                  ok ? "partition exists\n" : "partition none\n");
      return ok ? kExitOk : kExitInfeasible;
    }
    if (oracle_width->parsed()) {
      auto g = load_digraph(ow_digraph);
      int w = bimim::oracle::exact_bimimwidth(g, budget);
      output.emit({{"command", "oracle-width"}, {"width", w}}, "width " + std::to_string(w) + "\n");
      return kExitOk;
    }
    if (oracle_nec->parsed()) {
      auto g = load_digraph(on_digraph);
      auto cut_in = open_input(on_cutset);
      auto side = bimim::read_vertex_set(cut_in);
      int count = bimim::oracle::brute_nec(g, side, on_d, budget);
      output.emit({{"command", "oracle-nec"}, {"nec", count}}, "nec " + std::to_string(count) + "\n");
      return kExitOk;
    }
  }

  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const bimim::oracle::BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kExitBudget;
  } catch (const bimim::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitUsage;
  }
}
