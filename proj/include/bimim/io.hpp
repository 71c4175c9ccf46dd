#pragma once

#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "bimim/branch_decomposition.hpp"
#include "bimim/builders.hpp"
#include "bimim/digraph.hpp"
#include "bimim/problems.hpp"
#include "bimim/representations.hpp"
#include "bimim/version.hpp"

namespace bimim {

class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

namespace io_detail {

// Token stream over comment-stripped lines.
class Lines {
 public:
  explicit Lines(std::istream& in) {
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
      ++number;
      if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
      std::istringstream ss(line);
      std::vector<std::string> tokens;
      std::string tok;
      while (ss >> tok) tokens.push_back(tok);
      if (!tokens.empty()) rows_.push_back({number, std::move(tokens)});
    }
  }

  bool done() const { return next_ >= rows_.size(); }
  const std::vector<std::string>& peek() const {
    if (done()) throw ParseError("unexpected end of file");
    return rows_[next_].second;
  }
  int line_number() const { return done() ? -1 : rows_[next_].first; }
  std::vector<std::string> take() {
    auto row = peek();
    ++next_;
    return row;
  }

 private:
  std::vector<std::pair<int, std::vector<std::string>>> rows_;
  size_t next_ = 0;
};

inline long long to_int(const std::string& tok, int line) {
  try {
    size_t used = 0;
    long long value = std::stoll(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    return value;
  } catch (const std::exception&) {
    throw ParseError("line " + std::to_string(line) + ": expected an integer, got '" + tok + "'");
  }
}

[[noreturn]] inline void fail(int line, const std::string& what) {
  throw ParseError("line " + std::to_string(line) + ": " + what);
}

// Checked narrowing for counts and indices that end up sizing containers.
inline int to_count(const std::string& tok, int line, long long hi = 10'000'000) {
  long long value = to_int(tok, line);
  if (value < 0 || value > hi)
    fail(line, "value out of range [0, " + std::to_string(hi) + "]: '" + tok + "'");
  return static_cast<int>(value);
}

inline std::vector<std::string> expect(Lines& lines, const std::string& tag, size_t args) {
  int line = lines.line_number();
  auto row = lines.take();
  if (row[0] != tag) fail(line, "expected '" + tag + "', got '" + row[0] + "'");
  if (row.size() != args + 1)
    fail(line, "'" + tag + "' needs " + std::to_string(args) + " fields");
  return row;
}

}  // namespace io_detail

// ---- digraph / graph ----------------------------------------------------

inline void write_digraph(std::ostream& out, const Digraph& g) {
  out << "# " << kFormatVersion << "\n";
  out << "digraph " << g.vertex_count() << "\n";
  for (auto [u, v] : g.edges()) out << "e " << u << " " << v << "\n";
}

inline void write_graph(std::ostream& out, const UndirectedGraph& h) {
  out << "# " << kFormatVersion << "\n";
  out << "graph " << h.vertex_count() << "\n";
  for (auto [u, v] : h.edges()) out << "e " << u << " " << v << "\n";
}

namespace io_detail {

inline std::vector<Edge> read_edge_lines(Lines& lines) {
  std::vector<Edge> edges;
  while (!lines.done() && lines.peek()[0] == "e") {
    int line = lines.line_number();
    auto row = lines.take();
    if (row.size() != 3) fail(line, "'e' needs two endpoints");
    edges.push_back({to_count(row[1], line), to_count(row[2], line)});
  }
  return edges;
}

inline Digraph read_digraph(Lines& lines) {
  auto head = expect(lines, "digraph", 1);
  int n = to_count(head[1], -1);
  try {
    return Digraph(n, read_edge_lines(lines));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

inline UndirectedGraph read_graph(Lines& lines) {
  auto head = expect(lines, "graph", 1);
  int n = to_count(head[1], -1);
  try {
    return UndirectedGraph(n, read_edge_lines(lines));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

}  // namespace io_detail

inline Digraph read_digraph(std::istream& in) {
  io_detail::Lines lines(in);
  auto g = io_detail::read_digraph(lines);
  if (!lines.done()) io_detail::fail(lines.line_number(), "trailing content after digraph");
  return g;
}

inline UndirectedGraph read_graph(std::istream& in) {
  io_detail::Lines lines(in);
  auto h = io_detail::read_graph(lines);
  if (!lines.done()) io_detail::fail(lines.line_number(), "trailing content after graph");
  return h;
}

// ---- branch decomposition -----------------------------------------------

inline void write_decomposition(std::ostream& out, const BranchDecomposition& bd,
                                std::optional<long long> guarantee = std::nullopt) {
  out << "# " << kFormatVersion << "\n";
  if (guarantee) out << "# guarantee " << *guarantee << "\n";
  out << "bdecomp " << bd.tree_nodes << "\n";
  for (auto [x, y] : bd.tree_edges) out << "te " << x << " " << y << "\n";
  for (int node = 0; node < bd.tree_nodes; ++node)
    if (bd.vertex_of_node[node] != -1)
      out << "leaf " << node << " " << bd.vertex_of_node[node] << "\n";
}

inline BranchDecomposition read_decomposition(std::istream& in) {
  io_detail::Lines lines(in);
  auto head = io_detail::expect(lines, "bdecomp", 1);
  int nodes = io_detail::to_count(head[1], -1);
  std::vector<Edge> tree_edges;
  std::vector<std::pair<int, int>> leaf_map;
  while (!lines.done()) {
    int line = lines.line_number();
    auto row = lines.take();
    if (row[0] == "te" && row.size() == 3) {
      tree_edges.push_back(
          {io_detail::to_count(row[1], line), io_detail::to_count(row[2], line)});
    } else if (row[0] == "leaf" && row.size() == 3) {
      leaf_map.push_back(
          {io_detail::to_count(row[1], line), io_detail::to_count(row[2], line)});
    } else {
      io_detail::fail(line, "expected 'te' or 'leaf' line");
    }
  }
  int n = 0;
  for (auto [node, vertex] : leaf_map) n = std::max(n, vertex + 1);
  try {
    return BranchDecomposition::make(nodes, std::move(tree_edges), leaf_map, n);
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

// ---- sigma-rho problem ----------------------------------------------------

namespace io_detail {

inline void write_set(std::ostream& out, const FiniteOrCofinite& mu) {
  out << (mu.is_finite() ? "fin" : "cof");
  for (int x : mu.elems()) out << " " << x;
}

inline FiniteOrCofinite parse_set(const std::vector<std::string>& row, size_t from, size_t to,
                                  int line) {
  if (from >= to) fail(line, "expected fin|cof");
  FiniteOrCofinite::Mode mode;
  if (row[from] == "fin")
    mode = FiniteOrCofinite::Mode::finite;
  else if (row[from] == "cof")
    mode = FiniteOrCofinite::Mode::cofinite;
  else
    fail(line, "expected fin|cof, got '" + row[from] + "'");
  std::vector<int> elems;
  for (size_t i = from + 1; i < to; ++i) elems.push_back(to_count(row[i], line));
  try {
    return FiniteOrCofinite(mode, std::move(elems));
  } catch (const std::invalid_argument& e) {
    throw ParseError("line " + std::to_string(line) + ": " + e.what());
  }
}

}  // namespace io_detail

inline void write_problem(std::ostream& out, const SigmaRhoProblem& prob) {
  out << "# " << kFormatVersion << "\n";
  out << "sigma+ ";
  io_detail::write_set(out, prob.sigma_out);
  out << "\nsigma- ";
  io_detail::write_set(out, prob.sigma_in);
  out << "\nrho+ ";
  io_detail::write_set(out, prob.rho_out);
  out << "\nrho- ";
  io_detail::write_set(out, prob.rho_in);
  out << "\nobjective "
      << (prob.objective == Objective::minimize
              ? "min"
              : prob.objective == Objective::maximize ? "max" : "exists")
      << "\n";
}

inline SigmaRhoProblem read_problem(std::istream& in) {
  io_detail::Lines lines(in);
  SigmaRhoProblem prob;
  for (const char* tag : {"sigma+", "sigma-", "rho+", "rho-"}) {
    int line = lines.line_number();
    auto row = lines.take();
    if (row[0] != tag) io_detail::fail(line, std::string("expected '") + tag + "' line");
    auto mu = io_detail::parse_set(row, 1, row.size(), line);
    if (row[0] == std::string("sigma+"))
      prob.sigma_out = mu;
    else if (row[0] == std::string("sigma-"))
      prob.sigma_in = mu;
    else if (row[0] == std::string("rho+"))
      prob.rho_out = mu;
    else
      prob.rho_in = mu;
  }
  int line = lines.line_number();
  auto row = io_detail::expect(lines, "objective", 1);
  if (row[1] == "min")
    prob.objective = Objective::minimize;
  else if (row[1] == "max")
    prob.objective = Objective::maximize;
  else if (row[1] == "exists")
    prob.objective = Objective::exists;
  else
    io_detail::fail(line, "objective must be min|max|exists");
  if (!lines.done()) io_detail::fail(lines.line_number(), "trailing content after problem");
  return prob;
}

// ---- LCVP matrix ----------------------------------------------------------

inline void write_lcvp(std::ostream& out, const LcvpMatrix& dq) {
  out << "# " << kFormatVersion << "\n";
  out << "lcvp " << dq.q << "\n";
  for (int i = 0; i < dq.q; ++i)
    for (int j = 0; j < dq.q; ++j) {
      out << "m " << (i + 1) << " " << (j + 1) << " out:";
      const auto& [mo, mi] = dq.entry(i, j);
      out << (mo.is_finite() ? "fin" : "cof");
      for (int x : mo.elems()) out << " " << x;
      out << " in:" << (mi.is_finite() ? "fin" : "cof");
      for (int x : mi.elems()) out << " " << x;
      out << "\n";
    }
}

inline LcvpMatrix read_lcvp(std::istream& in) {
  io_detail::Lines lines(in);
  auto head = io_detail::expect(lines, "lcvp", 1);
  LcvpMatrix dq;
  dq.q = io_detail::to_count(head[1], -1, 10'000);
  if (dq.q < 1) throw ParseError("lcvp: q must be >= 1");
  dq.entries.assign(static_cast<size_t>(dq.q) * dq.q,
                    {FiniteOrCofinite::all(), FiniteOrCofinite::all()});
  std::vector<char> seen(dq.entries.size(), 0);
  for (int count = 0; count < dq.q * dq.q; ++count) {
    int line = lines.line_number();
    auto row = lines.take();
    if (row[0] != "m" || row.size() < 5) io_detail::fail(line, "expected 'm <i> <j> out:... in:...'");
    int i = io_detail::to_count(row[1], line);
    int j = io_detail::to_count(row[2], line);
    if (i < 1 || i > dq.q || j < 1 || j > dq.q) io_detail::fail(line, "matrix index out of range");
    // Split the out:/in: groups.
    size_t in_pos = 0;
    for (size_t k = 3; k < row.size(); ++k)
      if (row[k].rfind("in:", 0) == 0) in_pos = k;
    if (row[3].rfind("out:", 0) != 0 || in_pos == 0)
      io_detail::fail(line, "entry needs out:fin|cof ... in:fin|cof ...");
    auto mode_of = [&](const std::string& word) -> FiniteOrCofinite::Mode {
      if (word == "fin") return FiniteOrCofinite::Mode::finite;
      if (word == "cof") return FiniteOrCofinite::Mode::cofinite;
      io_detail::fail(line, "expected fin|cof, got '" + word + "'");
    };
    std::vector<int> out_elems, in_elems;
    for (size_t k = 4; k < in_pos; ++k)
      out_elems.push_back(io_detail::to_count(row[k], line));
    for (size_t k = in_pos + 1; k < row.size(); ++k)
      in_elems.push_back(io_detail::to_count(row[k], line));
    try {
      dq.entry(i - 1, j - 1) = {
          FiniteOrCofinite(mode_of(row[3].substr(4)), std::move(out_elems)),
          FiniteOrCofinite(mode_of(row[in_pos].substr(3)), std::move(in_elems))};
    } catch (const std::invalid_argument& e) {
      throw ParseError("line " + std::to_string(line) + ": " + e.what());
    }
    if (seen[static_cast<size_t>(i - 1) * dq.q + (j - 1)])
      io_detail::fail(line, "duplicate matrix entry");
    seen[static_cast<size_t>(i - 1) * dq.q + (j - 1)] = 1;
  }
  if (!lines.done()) io_detail::fail(lines.line_number(), "trailing content after lcvp matrix");
  return dq;
}

// ---- representations -------------------------------------------------------

inline void write_representation(std::ostream& out, const IntervalRep& rep) {
  out << "# " << kFormatVersion << "\n";
  out << "intervals " << rep.vertex_count() << "\n";
  for (const auto& v : rep.vertices)
    out << "v " << v.s_lo << " " << v.s_hi << " " << v.t_lo << " " << v.t_hi << "\n";
}

inline void write_representation(std::ostream& out, const PermutationRep& rep) {
  out << "# " << kFormatVersion << "\n";
  out << "perm " << rep.vertex_count() << "\n";
  for (const auto& v : rep.vertices)
    out << "v " << v.s_a << " " << v.s_b << " " << v.t_a << " " << v.t_b << "\n";
}

inline void write_representation(std::ostream& out, const RootedDirPathRep& rep) {
  out << "# " << kFormatVersion << "\n";
  out << "rdpath " << rep.tree_nodes << " " << rep.root << "\n";
  for (int x = 0; x < rep.tree_nodes; ++x)
    if (x != rep.root) out << "tp " << x << " " << rep.parent[x] << "\n";
  for (const auto& v : rep.vertices)
    out << "v " << v.s_top << " " << v.s_bot << " " << v.t_top << " " << v.t_bot << "\n";
}

namespace io_detail {

// Canonical renumbering of a possibly grown subdivision: branching nodes
// first, then every branching path's interior nodes in path order.
struct CanonicalSub {
  std::vector<int> counts;
  std::vector<int> new_id;  // old F node -> canonical id
};

inline CanonicalSub canonicalize(const HSubdivision& sub) {
  CanonicalSub canon;
  canon.new_id.assign(sub.f.vertex_count(), -1);
  for (int h = 0; h < sub.branching_count(); ++h) canon.new_id[h] = h;
  int next = sub.branching_count();
  for (const auto& path : sub.per_edge) {
    canon.counts.push_back(static_cast<int>(path.size()));
    for (int node : path) canon.new_id[node] = next++;
  }
  return canon;
}

inline void write_node_set(std::ostream& out, const std::vector<int>& nodes,
                           const std::vector<int>& new_id) {
  std::vector<int> mapped;
  for (int node : nodes) mapped.push_back(new_id[node]);
  std::sort(mapped.begin(), mapped.end());
  for (int node : mapped) out << " " << node;
}

inline HSubdivision read_subdivision(Lines& lines) {
  UndirectedGraph host = read_graph(lines);
  std::vector<int> counts(host.edge_count(), 0);
  while (!lines.done() && lines.peek()[0] == "sub") {
    int line = lines.line_number();
    auto row = lines.take();
    if (row.size() != 3) fail(line, "'sub' needs edge index and count");
    int e = to_count(row[1], line);
    if (e >= host.edge_count()) fail(line, "sub edge index out of range");
    counts[e] = to_count(row[2], line, 1'000'000);
  }
  long long total_nodes = host.vertex_count();
  for (int c : counts) total_nodes += c;
  if (total_nodes > 10'000'000)
    throw ParseError("subdivision too large: " + std::to_string(total_nodes) + " nodes");
  try {
    return HSubdivision::make(std::move(host), std::move(counts));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

// Reads groups of "<tag> <ints...>" from `row` starting at index 1, where
// each group opens with "<name>:".
inline std::vector<std::vector<int>> tag_groups(const std::vector<std::string>& row,
                                                const std::vector<std::string>& names, int line) {
  std::vector<std::vector<int>> groups(names.size());
  size_t g = 0;
  bool open = false;
  for (size_t k = 1; k < row.size(); ++k) {
    bool is_tag = false;
    for (size_t cand = 0; cand < names.size(); ++cand)
      if (row[k] == names[cand] + ":") {
        if (cand != (open ? g + 1 : 0)) fail(line, "groups out of order at '" + row[k] + "'");
        g = cand;
        open = true;
        is_tag = true;
      }
    if (is_tag) continue;
    if (!open) fail(line, "value before any group tag");
    groups[g].push_back(to_count(row[k], line));
  }
  if (!open) fail(line, "missing group tags");
  return groups;
}

}  // namespace io_detail

inline void write_representation(std::ostream& out, const HDigraphRep& rep) {
  out << "# " << kFormatVersion << "\n";
  out << "hdigraph\n";
  out << "graph " << rep.sub.host.vertex_count() << "\n";
  for (auto [u, v] : rep.sub.host.edges()) out << "e " << u << " " << v << "\n";
  auto canon = io_detail::canonicalize(rep.sub);
  for (size_t e = 0; e < canon.counts.size(); ++e)
    out << "sub " << e << " " << canon.counts[e] << "\n";
  for (const auto& [s, t] : rep.sets) {
    out << "v S:";
    io_detail::write_node_set(out, s, canon.new_id);
    out << " T:";
    io_detail::write_node_set(out, t, canon.new_id);
    out << "\n";
  }
}

inline void write_representation(std::ostream& out, const HConvexRep& rep) {
  out << "# " << kFormatVersion << "\n";
  out << "hconvex\n";
  out << "graph " << rep.sub.host.vertex_count() << "\n";
  for (auto [u, v] : rep.sub.host.edges()) out << "e " << u << " " << v << "\n";
  auto canon = io_detail::canonicalize(rep.sub);
  for (size_t e = 0; e < canon.counts.size(); ++e)
    out << "sub " << e << " " << canon.counts[e] << "\n";
  for (const auto& [o, i] : rep.b_sets) {
    out << "b out:";
    io_detail::write_node_set(out, o, canon.new_id);
    out << " in:";
    io_detail::write_node_set(out, i, canon.new_id);
    out << "\n";
  }
}

using AnyRepresentation =
    std::variant<IntervalRep, PermutationRep, RootedDirPathRep, HDigraphRep, HConvexRep>;

inline AnyRepresentation read_representation(std::istream& in) {
  io_detail::Lines lines(in);
  const auto& head = lines.peek();
  const std::string kind = head[0];

  if (kind == "intervals" || kind == "perm") {
    auto row = io_detail::expect(lines, kind, 1);
    int n = io_detail::to_count(row[1], -1);
    std::vector<std::vector<long long>> rows;
    while (!lines.done()) {
      int line = lines.line_number();
      auto r = io_detail::expect(lines, "v", 4);
      rows.push_back({io_detail::to_int(r[1], line), io_detail::to_int(r[2], line),
                      io_detail::to_int(r[3], line), io_detail::to_int(r[4], line)});
    }
    if (static_cast<int>(rows.size()) != n)
      throw ParseError(kind + ": expected " + std::to_string(n) + " vertex lines");
    if (kind == "intervals") {
      IntervalRep rep;
      for (const auto& r : rows) rep.vertices.push_back({r[0], r[1], r[2], r[3]});
      validate(rep);
      return rep;
    }
    PermutationRep rep;
    for (const auto& r : rows) rep.vertices.push_back({r[0], r[1], r[2], r[3]});
    return rep;
  }

  if (kind == "rdpath") {
    auto row = io_detail::expect(lines, "rdpath", 2);
    RootedDirPathRep rep;
    rep.tree_nodes = io_detail::to_count(row[1], -1);
    rep.root = io_detail::to_count(row[2], -1);
    if (rep.tree_nodes <= 0) throw ParseError("rdpath: empty tree");
    rep.parent.assign(rep.tree_nodes, -2);
    if (rep.root >= 0 && rep.root < rep.tree_nodes) rep.parent[rep.root] = -1;
    while (!lines.done() && lines.peek()[0] == "tp") {
      int line = lines.line_number();
      auto r = io_detail::expect(lines, "tp", 2);
      int node = io_detail::to_count(r[1], line);
      if (node >= rep.tree_nodes || node == rep.root)
        io_detail::fail(line, "tp node out of range or equals the root");
      rep.parent[node] = io_detail::to_count(r[2], line);
    }
    while (!lines.done()) {
      int line = lines.line_number();
      auto r = io_detail::expect(lines, "v", 4);
      rep.vertices.push_back({io_detail::to_count(r[1], line), io_detail::to_count(r[2], line),
                              io_detail::to_count(r[3], line), io_detail::to_count(r[4], line)});
    }
    try {
      validate(rep);
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what());
    }
    return rep;
  }

  if (kind == "hdigraph" || kind == "hconvex") {
    lines.take();
    auto sub = io_detail::read_subdivision(lines);
    if (kind == "hdigraph") {
      HDigraphRep rep;
      rep.sub = std::move(sub);
      while (!lines.done()) {
        int line = lines.line_number();
        auto r = lines.take();
        if (r[0] != "v") io_detail::fail(line, "expected 'v S: ... T: ...'");
        auto groups = io_detail::tag_groups(r, {"S", "T"}, line);
        rep.sets.push_back({groups[0], groups[1]});
      }
      try {
        validate(rep);
      } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
      }
      return rep;
    }
    HConvexRep rep;
    rep.sub = std::move(sub);
    while (!lines.done()) {
      int line = lines.line_number();
      auto r = lines.take();
      if (r[0] != "b") io_detail::fail(line, "expected 'b out: ... in: ...'");
      auto groups = io_detail::tag_groups(r, {"out", "in"}, line);
      rep.b_sets.push_back({groups[0], groups[1]});
    }
    try {
      validate(rep);
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what());
    }
    return rep;
  }

  throw ParseError("unknown representation header '" + kind + "'");
}

// ---- vertex set (for the nec subcommand) -----------------------------------

inline std::vector<int> read_vertex_set(std::istream& in) {
  io_detail::Lines lines(in);
  std::vector<int> verts;
  while (!lines.done()) {
    int line = lines.line_number();
    for (const auto& tok : lines.take()) verts.push_back(io_detail::to_count(tok, line));
  }
  return verts;
}

}  // namespace bimim
