#include <CLI11.hpp>

#include <iostream>
#include <thread>

#include "biforest/io.hpp"

using namespace biforest;
using io::json;

namespace {

int default_jobs() { return std::max(1, static_cast<int>(std::thread::hardware_concurrency())); }

std::string arr(const std::vector<int>& v) { return json(v).dump(); }
std::string arr(const MultiIndex& k) { return io::to_json(k).dump(); }

void print(const json& j) { std::cout << j.dump(2) << "\n"; }

int cmd_stats(const std::string& k_str, const std::string& format) {
  auto s = stats(io::parse_index(k_str));
  if (format == "json") {
    print({{"size", s.size}, {"trees", s.trees}, {"vertices", s.vertices}, {"nonvertical", s.nonvertical},
           {"tilde", io::to_json(s.tilde)}, {"vert", s.vert}});
  } else {
    std::cout << "size " << s.size << "\ntrees " << s.trees << "\nvertices " << s.vertices << "\nnonvertical "
              << s.nonvertical << "\ntilde " << arr(s.tilde) << "\nvert " << arr(s.vert) << "\n";
  }
  return 0;
}

int cmd_splittings(const std::string& k_str, const std::string& format) {
  auto k = io::parse_index(k_str);
  json out = json::array();
  for (const auto& s : splittings(k)) {
    if (format == "json")
      out.push_back({{"upper", io::to_json(s.upper)}, {"lower", io::to_json(s.lower)}});
    else
      std::cout << arr(s.upper) << " # " << arr(s.lower) << "\n";
  }
  if (format == "json") print(out);
  return 0;
}

int cmd_faces(const std::string& k_str, const std::string& l_str, const std::string& space, const std::string& format) {
  if (space != "K" && space != "J") throw ParseError("--space must be K or J");
  auto faces = boundary_faces(io::parse_index(k_str), io::parse_index(l_str), space == "J");
  if (format == "json") {
    json out = json::array();
    for (const auto& f : faces) out.push_back(io::to_json(f));
    print(out);
  } else {
    for (const auto& f : faces)
      std::cout << io::face_kind_name(f.kind) << " " << arr(f.k0) << arr(f.l0) << " o " << arr(f.k1) << arr(f.l1)
                << " sign " << f.sign.value() << "\n";
  }
  return 0;
}

struct SignArgs {
  std::string which, k, k0, l0, k1, l1, degrees;
  int a = 0, b = 0;
};

int cmd_sign(const SignArgs& s) {
  auto need = [](const std::string& v, const char* flag) {
    if (v.empty()) throw ParseError(std::string("missing ") + flag);
    return io::parse_index(v);
  };
  if (s.which == "rho") {
    auto r = rho(need(s.k0, "--k0"), need(s.l0, "--l0"), need(s.k1, "--k1"), need(s.l1, "--l1"));
    std::cout << "rho " << r.rho.value() << "\nrho0 " << r.rho0.value() << "\nrho1 " << r.rho1.value() << "\n";
  } else if (s.which == "heart") {
    std::cout << heartsuit(need(s.k1, "--k1"), need(s.k0, "--k0")).value() << "\n";
  } else if (s.which == "spade") {
    std::cout << spadesuit(need(s.k, "--k")).value() << "\n";
  } else if (s.which == "tau") {
    auto deg = io::parse_ints(s.degrees);
    if (s.a < 1 || s.b < 1 || static_cast<int>(deg.size()) != s.a * s.b)
      throw ParseError("tau needs --a, --b and a*b comma-separated --degrees");
    std::cout << tau_sign(deg, s.a, s.b).value() << "\n";
  } else {
    throw ParseError("sign must be one of rho, heart, spade, tau");
  }
  return 0;
}

std::vector<Relation> relations(int max, const std::string& kind, int jobs) {
  std::vector<std::function<Relation()>> work;
  if (kind == "R" || kind == "M") {
    for (const auto& [k, l] : index_pairs(max))
      work.push_back([k, l, kind] { return kind == "R" ? relation_R(k, l) : relation_M(k, l); });
  } else if (kind == "bimodule") {
    for (const auto& b : bimodule_indices(max - 1))
      for (int t = 1; b.total().size() + t <= max; ++t)
        for (const auto& l : compositions(t)) work.push_back([b, l] { return relation_bimodule(b, l); });
  } else {
    throw ParseError("--kind must be R, M or bimodule");
  }
  return detail::parallel_map<Relation>(work.size(), jobs, [&](std::size_t i) { return work[i](); });
}

int cmd_relations(int max, const std::string& kind, const std::string& format, int jobs, bool expand, int prune) {
  auto rs = relations(max, kind, jobs);
  if (prune >= 0)
    for (auto& r : rs) r = prune_by_degree(std::move(r), prune);
  if (format == "json") {
    json out = json::array();
    for (const auto& r : rs) out.push_back(io::to_json(r));
    print(out);
  } else {
    for (const auto& r : rs) std::cout << render_relation(r, expand) << "\n";
  }
  return 0;
}

template <class F>
int verify_with(const json& spec, int bound, int jobs, bool simplifications) {
  auto alg = io::algebra_from_json<F>(spec);
  for (const auto& d : alg.diagnostics()) std::cerr << "warning: axiom fails: " << d << "\n";
  auto table = io::table_from_json<F>(spec, bound);
  auto rep = verify_relations(table, bound, jobs);
  if (simplifications) {
    auto simp = check_simplifications(table);
    rep.checks.insert(rep.checks.end(), simp.checks.begin(), simp.checks.end());
  }
  if (rep.ok()) {
    std::cout << "OK: all relations hold (" << rep.checks.size() << " checked)\n";
    return 0;
  }
  for (const auto& c : rep.checks)
    if (!c.zero)
      std::cout << "FAIL: relation for " << render(c.op) << " (k=" << arr(c.op.k) << ", l=" << arr(c.op.l)
                << ") does not vanish: " << c.detail << "\n";
  return 2;
}

int cmd_verify(const std::string& path, int bound, int jobs, bool simplifications) {
  auto spec = io::read_file(path);
  if (io::ring_of(spec) == "Q") return verify_with<Q>(spec, bound, jobs, simplifications);
  return verify_with<F2>(spec, bound, jobs, simplifications);
}

int cmd_graph(const std::string& path, bool dot) {
  auto g = henriques_graph(io::biforest_from_json(io::read_file(path)));
  if (dot)
    std::cout << dot_export(g);
  else
    print(io::to_json(g));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Forest biassociahedra and f-bialgebra relations"};
  app.require_subcommand(1);

  std::string k, l, k0, k1, format = "text", space = "K", path, kind = "R";
  int jobs = default_jobs(), max = 6, bound = 6, prune = -1;
  bool dot = false, as_json = false, expand = false, simplifications = false;
  SignArgs sg;

  auto* st = app.add_subcommand("stats", "Invariants of a multi-index");
  st->add_option("--k", k, "multi-index, e.g. 3,1,2")->required();
  st->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

  auto* gl = app.add_subcommand("glue", "Glue k1 on top of k0");
  gl->add_option("--k1", k1)->required();
  gl->add_option("--k0", k0)->required();

  auto* sp = app.add_subcommand("splittings", "All ways to write k = k1 # k0");
  sp->add_option("--k", k)->required();
  sp->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

  auto* fa = app.add_subcommand("faces", "Codimension-one faces of K or J");
  fa->add_option("--k", k)->required();
  fa->add_option("--l", l)->required();
  fa->add_option("--space", space)->check(CLI::IsMember({"K", "J"}));
  fa->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));
  fa->add_flag("--json", as_json, "same as --format json");

  auto* si = app.add_subcommand("sign", "Sign exponents");
  si->add_option("which", sg.which, "rho | heart | spade | tau")->required()->check(
      CLI::IsMember({"rho", "heart", "spade", "tau"}));
  si->add_option("--k", sg.k);
  si->add_option("--k0", sg.k0);
  si->add_option("--l0", sg.l0);
  si->add_option("--k1", sg.k1);
  si->add_option("--l1", sg.l1);
  si->add_option("--degrees", sg.degrees, "a*b degrees for tau");
  si->add_option("--a", sg.a);
  si->add_option("--b", sg.b);

  auto* re = app.add_subcommand("relations", "Generate coherence relations");
  re->add_option("--max", max, "bound on |k| + |l|")->check(CLI::Range(2, 12));
  re->add_option("--kind", kind)->check(CLI::IsMember({"R", "M", "bimodule"}));
  re->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));
  re->add_option("--jobs", jobs)->check(CLI::PositiveNumber);
  re->add_flag("--expand", expand, "write factors through the simplification rules");
  re->add_option("--prune", prune, "drop terms vanishing for degrees in [0, N]");

  auto* ve = app.add_subcommand("verify", "Check the relations on a dg bialgebra");
  ve->add_option("--algebra", path)->required()->check(CLI::ExistingFile);
  ve->add_option("--bound", bound)->check(CLI::Range(2, 10));
  ve->add_option("--jobs", jobs)->check(CLI::PositiveNumber);
  ve->add_flag("--simplifications", simplifications, "also check the simplification axioms");

  auto* gr = app.add_subcommand("graph", "Intersection graph of a biforest");
  gr->add_option("--biforest", path)->required()->check(CLI::ExistingFile);
  gr->add_flag("--dot", dot, "DOT instead of JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (as_json) format = "json";
    if (*st) return cmd_stats(k, format);
    if (*gl) {
      std::cout << arr(glue(io::parse_index(k1), io::parse_index(k0))) << "\n";
      return 0;
    }
    if (*sp) return cmd_splittings(k, format);
    if (*fa) return cmd_faces(k, l, space, fa->count("--format") || as_json ? format : "json");
    if (*si) return cmd_sign(sg);
    if (*re) return cmd_relations(max, kind, format, jobs, expand, prune);
    if (*ve) return cmd_verify(path, bound, jobs, simplifications);
    if (*gr) return cmd_graph(path, dot);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
