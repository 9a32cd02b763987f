// Command-line front end: operator algebra queries, representation
// verification, interaction classification, and the 1D hybrid simulator.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>

#include "hybrid/classify.hpp"
#include "hybrid/dsl.hpp"
#include "hybrid/phase_space.hpp"
#include "hybrid/representation.hpp"
#include "hybrid/simulator.hpp"

using json = nlohmann::ordered_json;
using namespace hybrid;

namespace {

struct Options {
  bool json_output = false;
};

void emit(const json& report, bool as_json, const std::string& human) {
  if (as_json)
    std::cout << report.dump(2) << "\n";
  else
    std::cout << human;
}

int run_commute(const std::string& a, const std::string& b, bool as_json) {
  OperatorExpr ea = dsl::parse_operator(a);
  OperatorExpr eb = dsl::parse_operator(b);
  OperatorExpr c = commutator(ea, eb);
  json report{{"command", "commute"},
              {"inputs", {{"a", a}, {"b", b}}},
              {"results", {{"normal_form", c.to_string()}, {"display", c.display()}}}};
  emit(report, as_json, c.display() + "\n");
  return 0;
}

int run_normal_form(const std::string& a, bool as_json) {
  OperatorExpr e = dsl::parse_operator(a);
  json report{{"command", "normal-form"},
              {"inputs", {{"expr", a}}},
              {"results", {{"normal_form", e.to_string()}, {"display", e.display()}}}};
  emit(report, as_json, e.display() + "\n");
  return 0;
}

json relation_entry(const RelationCheck& r) {
  return json{{"label", r.label},
              {"pass", r.pass},
              {"computed", r.computed.to_string()},
              {"expected", r.expected.to_string()}};
}

int run_verify(const std::string& rep_name, const std::string& interaction, bool as_json) {
  OperatorExpr h_int;
  if (!interaction.empty()) h_int = dsl::parse_operator(interaction);

  Representation rep;
  if (rep_name == "quantum") {
    rep = quantum_representation();
  } else if (rep_name == "classical") {
    rep = classical_representation();
  } else if (rep_name == "hybrid") {
    rep = hybrid_representation(ParamScalar::parameter(Param::M),
                                ParamScalar::parameter(Param::m), h_int);
  } else if (rep_name == "two-particle") {
    rep = two_particle_quantum_representation(ParamScalar::parameter(Param::M1),
                                              ParamScalar::parameter(Param::M2), h_int);
  } else {
    throw CLI::ValidationError("--rep must be quantum|classical|hybrid|two-particle");
  }
  if (!interaction.empty() && rep_name != "hybrid" && rep_name != "two-particle")
    throw CLI::ValidationError("--interaction applies to hybrid or two-particle only");

  AlgebraReport report = verify_algebra(rep);
  json entries = json::array();
  std::string human;
  human += "representation: " + report.representation +
           "   central charge: " + report.central_charge.to_string() + "\n";
  for (const auto& r : report.entries) {
    entries.push_back(relation_entry(r));
    human += std::string(r.pass ? "  pass  " : "  FAIL  ") + r.label;
    if (!r.pass)
      human += "   computed " + r.computed.to_string() + "  expected " +
               r.expected.to_string();
    human += "\n";
  }
  human += report.all_pass ? "all relations hold\n" : "ALGEBRA VIOLATED\n";
  json doc{{"command", "verify"},
           {"inputs", {{"rep", rep_name}, {"interaction", interaction}}},
           {"results",
            {{"central_charge", report.central_charge.to_string()},
             {"all_pass", report.all_pass},
             {"relations", entries}}}};
  emit(doc, as_json, human);
  return report.all_pass ? 0 : 1;
}

int run_classify(const ClassificationConfig& config, bool as_json) {
  InvariantBasis basis = solve_invariant_space(config);
  json elements = json::array();
  std::string human = "invariant interaction space: dimension " +
                      std::to_string(basis.dimension) + "\n";
  for (const auto& e : basis.elements) {
    elements.push_back(json{{"expr", e.op.to_string()},
                            {"matched_form", e.matched_form},
                            {"conserves_total_momentum", e.conserves_total_momentum},
                            {"commutes_with_q", e.commutes_with_q},
                            {"commutes_with_p", e.commutes_with_p}});
    human += "  - " + (e.matched_form.empty() ? e.op.display() : e.matched_form);
    human += e.conserves_total_momentum ? "   [conserves k+p]" : "   [breaks k+p]";
    if (!e.commutes_with_p || !e.commutes_with_q) human += " [classical back-reaction]";
    if (e.matched_form.empty()) human += "\n      = " + e.op.display();
    human += "\n";
  }
  json doc{{"command", "classify"},
           {"inputs",
            {{"max_degree", config.max_degree},
             {"lp_degree", config.max_lambda_p_degree},
             {"conserve_momentum", config.require_momentum_conservation},
             {"include_lambda_q", config.include_lambda_q},
             {"hermitian", config.require_hermitian}}},
           {"results", {{"dimension", basis.dimension}, {"elements", elements}}}};
  emit(doc, as_json, human);
  return 0;
}

int run_liouvillian(const std::string& hamiltonian, bool as_json) {
  OperatorExpr h = dsl::parse_operator(hamiltonian);
  auto poly = PhaseSpacePoly::from_operator(h);
  if (!poly)
    throw std::invalid_argument(
        "--hamiltonian must be a commutative polynomial in classical q/p components");
  OperatorExpr lv = liouvillian_from_hamiltonian(*poly);
  json doc{{"command", "liouvillian"},
           {"inputs", {{"hamiltonian", hamiltonian}}},
           {"results", {{"liouvillian", lv.to_string()}, {"display", lv.display()}}}};
  emit(doc, as_json, lv.display() + "\n");
  return 0;
}

double get_num(const json& j, const char* key, double fallback, bool* present = nullptr) {
  if (j.contains(key)) {
    if (present) *present = true;
    return j.at(key).get<double>();
  }
  if (present) *present = false;
  return fallback;
}

int run_simulate(const std::string& config_path, const std::string& out_path, bool as_json) {
  std::ifstream in(config_path);
  if (!in) throw std::invalid_argument("cannot open config file: " + config_path);
  json cfg = json::parse(in);

  GridSpec grid;
  auto axis = [&](const char* name) {
    const json& a = cfg.at("grid").at(name);
    return AxisSpec{a.at("points").get<int>(), a.at("half_width").get<double>()};
  };
  grid.x = axis("x");
  grid.q = axis("q");
  grid.p = axis("p");
  grid.dt = cfg.at("dt").get<double>();
  grid.steps = cfg.at("steps").get<long>();
  grid.record_every = cfg.value("record_every", 1L);

  HamiltonianSpec ham;
  ham.quantum_mass = cfg.at("masses").at("M").get<double>();
  ham.classical_mass = cfg.at("masses").at("m").get<double>();
  const json couplings = cfg.value("couplings", json::object());
  ham.g1 = get_num(couplings, "g1", 0.0);
  ham.g2 = get_num(couplings, "g2", 0.0);
  ham.g3 = get_num(couplings, "g3", 0.0);

  InitialPacket packet;
  const json init = cfg.value("initial", json::object());
  packet.x0 = get_num(init, "x0", 0.0);
  packet.sigma_x = get_num(init, "sigma_x", 1.0);
  packet.k0 = get_num(init, "k0", 0.0);
  packet.q0 = get_num(init, "q0", 0.0);
  packet.sigma_q = get_num(init, "sigma_q", 1.0);
  packet.p0 = get_num(init, "p0", 0.0);
  packet.sigma_p = get_num(init, "sigma_p", 1.0);

  Simulator sim(grid, ham);
  HybridState state = sim.initial_gaussian(packet);
  double e0 = sim.energy(state);
  TimeSeries series = sim.evolve(state, grid.steps, grid.record_every);
  double e1 = sim.energy(state);

  std::ofstream out(out_path);
  if (!out) throw std::invalid_argument("cannot open output file: " + out_path);
  series.write_csv(out);

  double norm_drift = 0, ktot_drift = 0;
  for (const auto& r : series.rows) {
    norm_drift = std::max(norm_drift, std::abs(r.norm - series.rows.front().norm));
    ktot_drift = std::max(ktot_drift, std::abs(r.ktot() - series.rows.front().ktot()));
  }
  std::cerr << "energy drift diagnostic: " << (e1 - e0) << "\n";
  std::cerr << "tail mass diagnostic: " << sim.tail_mass(state) << "\n";

  json doc{{"command", "simulate"},
           {"inputs", {{"config", config_path}}},
           {"results",
            {{"rows", series.rows.size()},
             {"norm_drift", norm_drift},
             {"ktot_drift", ktot_drift},
             {"csv", out_path}}}};
  emit(doc, as_json,
       "wrote " + std::to_string(series.rows.size()) + " rows to " + out_path + "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Operator algebra and dynamics toolkit for quantum-classical hybrids"};
  app.require_subcommand(1);
  bool as_json = false;
  app.add_flag("--json", as_json, "emit a machine-readable report");

  std::string rep_name = "quantum", interaction, hamiltonian;
  std::string config_path, out_path;
  ClassificationConfig config;

  // expression arguments may start with '-', so these two subcommands take
  // their operands as raw trailing arguments
  CLI::App* commute = app.add_subcommand("commute", "normal form of [A,B]");
  commute->prefix_command();

  CLI::App* normal = app.add_subcommand("normal-form", "canonical form of an expression");
  normal->prefix_command();

  CLI::App* verify = app.add_subcommand("verify", "check the bracket relations");
  verify->add_option("--rep", rep_name, "quantum|classical|hybrid|two-particle")->required();
  verify->add_option("--interaction", interaction, "interaction term (hybrid/two-particle)");

  CLI::App* classify = app.add_subcommand("classify", "solve for covariant interactions");
  classify->add_option("--max-degree", config.max_degree);
  classify->add_option("--lp-degree", config.max_lambda_p_degree);
  classify->add_flag("--conserve-momentum", config.require_momentum_conservation);
  classify->add_flag("--include-lambda-q", config.include_lambda_q);

  CLI::App* liouville = app.add_subcommand("liouvillian", "Liouvillian of a classical H(q,p)");
  liouville->add_option("--hamiltonian", hamiltonian)->required();

  CLI::App* simulate = app.add_subcommand("simulate", "run the 1D hybrid simulator");
  simulate->add_option("--config", config_path)->required()->check(CLI::ExistingFile);
  simulate->add_option("--out", out_path)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }

  try {
    if (app.got_subcommand(commute)) {
      auto args = commute->remaining();
      if (args.size() != 2) {
        std::cerr << "usage: commute A B\n";
        return 2;
      }
      return run_commute(args[0], args[1], as_json);
    }
    if (app.got_subcommand(normal)) {
      auto args = normal->remaining();
      if (args.size() != 1) {
        std::cerr << "usage: normal-form EXPR\n";
        return 2;
      }
      return run_normal_form(args[0], as_json);
    }
    if (app.got_subcommand(verify)) return run_verify(rep_name, interaction, as_json);
    if (app.got_subcommand(classify)) return run_classify(config, as_json);
    if (app.got_subcommand(liouville)) return run_liouvillian(hamiltonian, as_json);
    if (app.got_subcommand(simulate)) return run_simulate(config_path, out_path, as_json);
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const dsl::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
