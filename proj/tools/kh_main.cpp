// kh: batch front end for the Khovanov homology and state cycle toolkit.

#include "CLI11.hpp"
#include "json.hpp"

#include "kh/cobordism.hpp"
#include "kh/complex.hpp"
#include "kh/config.hpp"
#include "kh/diagram.hpp"
#include "kh/fixtures.hpp"
#include "kh/homology.hpp"
#include "kh/polynomials.hpp"
#include "kh/qpmod.hpp"
#include "kh/resolution.hpp"
#include "kh/statecycle.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

using json = nlohmann::ordered_json;

namespace {

struct Options {
  std::string mode = "exact";
  std::uint64_t prime = kh::kDefaultPrime;
  std::uint64_t budget = 200'000'000;
  int threads = 1;
  std::string format = "tsv";
  std::string emit = "table";
};

kh::RunConfig run_config(const Options& o) {
  kh::RunConfig cfg;
  cfg.mode = o.mode == "modp" ? kh::CoeffMode::ModP : kh::CoeffMode::Exact;
  cfg.prime = o.prime;
  cfg.budget = o.budget;
  cfg.threads = o.threads;
  cfg.validate();
  return cfg;
}

kh::Diagram load_diagram(const std::string& path) {
  std::string text;
  if (path.rfind("fixture:", 0) == 0) return kh::fixtures::get(path.substr(8));
  std::ifstream in(path);
  if (!in) throw kh::ParseError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  text = ss.str();
  // strip comments and blank lines
  std::string body;
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    if (!line.empty() && line[0] == '#') continue;
    body += line;
    body += ' ';
  }
  std::size_t first = body.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) throw kh::ParseError("empty input " + path);
  if (body.compare(first, 3, "PD[") == 0) return kh::parse_pd(body);
  return kh::from_braid(kh::parse_braid_text(body));
}

json jones_json(const kh::Laurent& v) {
  json terms = json::array();
  for (auto& [e2, c] : v.terms()) terms.push_back({{"e2", e2}, {"c", c}});
  return {{"terms", terms}, {"text", v.str()}};
}

json table_json(const kh::BigradedTable& t) {
  json cells = json::array();
  for (auto& [tq, r] : t.ranks)
    cells.push_back({{"t", tq.first}, {"q", tq.second}, {"rank", r}});
  kh::DiagonalProfile p = kh::diagonal_profile(t);
  return {{"mode", t.mode == kh::CoeffMode::Exact ? "exact" : "modp"},
          {"prime", t.prime},
          {"components", t.components},
          {"cells", cells},
          {"diagonals", p.deltas},
          {"width", p.width()},
          {"thick", kh::is_thick(t)}};
}

std::string marks_string(const kh::Cube& cube, const kh::Gen& g) {
  const kh::TracedState& ts = cube.traced(g.state);
  std::string out(ts.nloops, '-');
  for (int l = 0; l < ts.nloops; ++l)
    if ((g.marks >> l) & 1) out[l] = '+';
  return out;
}

std::uint32_t marks_from_string(const std::string& s) {
  std::uint32_t m = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '+')
      m |= 1u << i;
    else if (s[i] != '-')
      throw kh::ParseError("marks must be a +/- string");
  }
  return m;
}

int cmd_table(const std::string& input, const Options& opt, int dump_height) {
  kh::Diagram d = load_diagram(input);
  kh::RunConfig cfg = run_config(opt);
  if (dump_height >= 0) {
    kh::IntTriplets m = kh::differential_matrix(d, dump_height, cfg);
    m.dump(std::cout);
    return 0;
  }
  kh::BigradedTable t = kh::homology_table(d, cfg);
  if (opt.format == "json") {
    json out = {{"schema", 1}, {"command", "table"}, {"input", input}};
    out.update(table_json(t));
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << kh::table_to_tsv(t);
    kh::DiagonalProfile p = kh::diagonal_profile(t);
    std::cout << "# width\t" << p.width() << "\n# diagonals";
    for (int delta : p.deltas) std::cout << "\t" << delta;
    std::cout << "\n# thick\t" << (kh::is_thick(t) ? "yes" : "no") << "\n";
  }
  return 0;
}

int cmd_jones(const std::string& input, const Options& opt) {
  kh::Diagram d = load_diagram(input);
  kh::Laurent v = kh::jones_bracket(d);
  if (opt.format == "json") {
    json out = {{"schema", 1}, {"command", "jones"}, {"input", input}};
    out.update(jones_json(v));
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << v.str() << "\n";
  }
  return 0;
}

int cmd_s(const std::string& input, const Options& opt) {
  kh::Diagram d = load_diagram(input);
  int s = kh::s_invariant(d, run_config(opt));
  if (opt.format == "json")
    std::cout << json{{"schema", 1}, {"command", "s"}, {"input", input}, {"s", s}}.dump(2)
              << "\n";
  else
    std::cout << s << "\n";
  return 0;
}

int cmd_cycles(const std::string& input, const Options& opt, bool classified_only, int hmin,
               int hmax) {
  kh::Diagram d = load_diagram(input);
  kh::Cube cube(d);
  kh::NontrivialityTester tester(d);
  if (hmax < 0) hmax = d.n();
  json out = {{"schema", 1}, {"command", "cycles"}, {"input", input}};
  json records = json::array();
  kh::enumerate_state_cycles(d, hmin, hmax, classified_only, [&](const kh::Gen& g) {
    kh::Bigrading b = cube.bigrading(g);
    kh::ClassificationReport rep = kh::classify(g, d);
    records.push_back({{"state", kh::state_to_string(kh::State{g.state, d.n()})},
                       {"marks", marks_string(cube, g)},
                       {"t", b.t},
                       {"q", b.q},
                       {"classified", rep.all()},
                       {"flags",
                        {{"S1", rep.s1},
                         {"S2", rep.s2},
                         {"L1", rep.l1},
                         {"L2", rep.l2},
                         {"L3", rep.l3},
                         {"L4", rep.l4}}},
                       {"nontrivial", tester.is_nontrivial(kh::Chain{{g, kh::Rat(1)}})}});
  });
  out["cycles"] = records;
  std::cout << out.dump(2) << "\n";
  return 0;
}

int cmd_classify(const std::string& input, const Options& opt, const std::string& state,
                 const std::string& marks) {
  kh::Diagram d = load_diagram(input);
  kh::State s = kh::state_from_string(state);
  kh::Gen g{s.bits, marks_from_string(marks)};
  kh::ClassificationReport rep = kh::classify(g, d);
  if (opt.format == "json") {
    json out = {{"schema", 1},
                {"command", "classify"},
                {"input", input},
                {"state", state},
                {"marks", marks},
                {"passes", rep.all()},
                {"flags",
                 {{"S1", rep.s1},
                  {"S2", rep.s2},
                  {"L1", rep.l1},
                  {"L2", rep.l2},
                  {"L3", rep.l3},
                  {"L4", rep.l4}}}};
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << rep.str() << "\n";
  }
  return 0;
}

int cmd_family(const Options& opt, const std::string& name, int n) {
  kh::FamilyKind kind = kh::family_kind_from_name(name);
  kh::Diagram d = kh::family(kind, n);
  if (opt.emit == "pd") {
    std::cout << d.to_pd() << "\n";
  } else if (opt.emit == "jones") {
    kh::Laurent v = kh::jones_bracket(d);
    if (opt.format == "json") {
      json out = {{"schema", 1}, {"command", "family"}, {"name", name}, {"n", n}};
      out.update(jones_json(v));
      std::cout << out.dump(2) << "\n";
    } else {
      std::cout << v.str() << "\n";
    }
  } else if (opt.emit == "table" || opt.emit == "report") {
    kh::BigradedTable t = kh::homology_table(d, run_config(opt));
    if (opt.format == "json") {
      json out = {{"schema", 1}, {"command", "family"}, {"name", name}, {"n", n}};
      out.update(table_json(t));
      std::cout << out.dump(2) << "\n";
    } else {
      std::cout << kh::table_to_tsv(t) << "# width\t" << kh::diagonal_profile(t).width()
                << "\n";
    }
  } else {
    throw kh::DomainError("unknown emit target " + opt.emit);
  }
  return 0;
}

int cmd_lift(const std::string& input, const Options& opt, const std::string& site_arg,
             const std::string& braid_arg, const std::string& cycle_arg, bool verify,
             const std::string& moves_path) {
  kh::Diagram base = load_diagram(input);
  kh::ModSite site;
  {
    std::stringstream ss(site_arg);
    std::string tok;
    while (std::getline(ss, tok, ',')) site.arcs.push_back(std::stoi(tok));
  }
  kh::QPBraid braid = kh::parse_qp(braid_arg, (int)site.arcs.size());
  kh::Gen alpha{0, 0};
  if (!cycle_arg.empty()) {
    auto colon = cycle_arg.find(':');
    if (colon == std::string::npos) throw kh::ParseError("cycle must be STATE:MARKS");
    alpha.state = kh::state_from_string(cycle_arg.substr(0, colon)).bits;
    alpha.marks = marks_from_string(cycle_arg.substr(colon + 1));
  }
  if (!kh::is_state_cycle(alpha, base)) throw kh::DomainError("input is not a state cycle");
  kh::ModResult mr = kh::modify(base, site, braid);
  kh::Gen lifted = kh::lift(alpha, mr);
  kh::Cube cu(*mr.diagram), cd(base);
  json out = {{"schema", 1},
              {"command", "lift"},
              {"input", input},
              {"site", site.arcs},
              {"k", braid.k()},
              {"pd", mr.diagram->to_pd()},
              {"cycle",
               {{"state", kh::state_to_string(kh::State{alpha.state, base.n()})},
                {"marks", marks_string(cd, alpha)},
                {"t", cd.bigrading(alpha).t},
                {"q", cd.bigrading(alpha).q}}},
              {"lifted",
               {{"state", kh::state_to_string(kh::State{lifted.state, mr.diagram->n()})},
                {"marks", marks_string(cu, lifted)},
                {"t", cu.bigrading(lifted).t},
                {"q", cu.bigrading(lifted).q}}},
              {"state_cycle", kh::is_state_cycle(lifted, *mr.diagram)}};
  if (verify) {
    kh::ChainMap psi = [&] {
      if (moves_path.empty()) return kh::qp_projection(mr);
      std::ifstream in(moves_path);
      if (!in) throw kh::ParseError("cannot open move script " + moves_path);
      std::vector<kh::ChainMap> maps;
      auto cur = mr.diagram;
      std::string line;
      while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        kh::ElementaryMove mv = kh::parse_move(line, cur);
        maps.push_back(kh::elementary_map(mv));
        cur = maps.back().target_ptr();
      }
      maps.push_back(kh::relabel_map(cur, mr.base));
      return kh::compose(std::move(maps));
    }();
    kh::ProjVerdict v = kh::verify_projection(psi, kh::Chain{{lifted, kh::Rat(1)}},
                                              kh::Chain{{alpha, kh::Rat(1)}});
    out["projection"] = v == kh::ProjVerdict::Plus    ? "plus"
                        : v == kh::ProjVerdict::Minus ? "minus"
                                                      : "fail";
    out["quantum_shift"] = psi.quantum_shift();
  }
  std::cout << out.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Khovanov homology, state cycles and quasipositive modification"};
  app.require_subcommand(1);
  app.fallthrough();
  Options opt;
  app.add_option("--mode", opt.mode, "coefficients: exact or modp")
      ->check(CLI::IsMember({"exact", "modp"}));
  app.add_option("--prime", opt.prime, "prime for mod-p mode");
  app.add_option("--budget", opt.budget, "generator budget");
  app.add_option("--threads", opt.threads, "worker threads");
  app.add_option("--format", opt.format, "output format")->check(CLI::IsMember({"tsv", "json"}));

  std::string input, state, marks, site, braid, cycle, moves, family_name = "twist";
  int family_n = 0, hmin = 0, hmax = -1, dump_height = -1;
  bool classified_only = false, verify = false;

  CLI::App* table = app.add_subcommand("table", "bigraded homology table and width");
  table->add_option("input", input)->required();
  table->add_option("--dump-matrix", dump_height, "print the differential at this height");

  CLI::App* jones = app.add_subcommand("jones", "Jones polynomial via the bracket");
  jones->add_option("input", input)->required();

  CLI::App* sinv = app.add_subcommand("s", "Rasmussen s invariant");
  sinv->add_option("input", input)->required();

  CLI::App* cycles = app.add_subcommand("cycles", "state cycle census");
  cycles->add_option("input", input)->required();
  cycles->add_flag("--classified-only", classified_only);
  cycles->add_option("--hmin", hmin);
  cycles->add_option("--hmax", hmax);

  CLI::App* classify = app.add_subcommand("classify", "classification flags for one cycle");
  classify->add_option("input", input)->required();
  classify->add_option("--state", state)->required();
  classify->add_option("--marks", marks)->required();

  CLI::App* lift = app.add_subcommand("lift", "lift a state cycle through a modification");
  lift->add_option("input", input)->required();
  lift->add_option("--site", site, "comma separated arc ids")->required();
  lift->add_option("--braid", braid, "quasipositive word, e.g. (1 2 -1 ; 2)(2 ; 1)")->required();
  lift->add_option("--cycle", cycle, "STATE:MARKS of the cycle to lift (default all-0 all-minus)");
  lift->add_flag("--verify", verify, "build the Jacobsson projection and verify it");
  lift->add_option("--moves", moves, "move script for the projection");

  CLI::App* family = app.add_subcommand("family", "paper families by modification");
  family->add_option("--name", family_name)->check(CLI::IsMember({"twist", "q1", "mirror820"}));
  family->add_option("--n", family_n)->required();
  family->add_option("--emit", opt.emit)->check(CLI::IsMember({"pd", "table", "jones", "report"}));

  CLI11_PARSE(app, argc, argv);

  try {
    if (table->parsed()) return cmd_table(input, opt, dump_height);
    if (jones->parsed()) return cmd_jones(input, opt);
    if (sinv->parsed()) return cmd_s(input, opt);
    if (cycles->parsed()) return cmd_cycles(input, opt, classified_only, hmin, hmax);
    if (classify->parsed()) return cmd_classify(input, opt, state, marks);
    if (lift->parsed()) return cmd_lift(input, opt, site, braid, cycle, verify, moves);
    if (family->parsed()) return cmd_family(opt, family_name, family_n);
  } catch (const kh::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const kh::BudgetError& e) {
    std::cerr << "budget error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
