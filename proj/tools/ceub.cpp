// Command-line front end: price, maxmin, verify, gen.
//
// Exit codes: 0 ok, 1 input or usage error, 2 allocation not Pareto optimal,
// 3 verification failure.

#include <cstdlib>
#include <iostream>
#include <string>
#include <variant>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "ceub/allocation_graph.hpp"
#include "ceub/instance_gen.hpp"
#include "ceub/io.hpp"
#include "ceub/maxmin.hpp"
#include "ceub/multipliers.hpp"

namespace {

using namespace ceub;

constexpr int kOk = 0;
constexpr int kInputError = 1;
constexpr int kNotParetoOptimal = 2;
constexpr int kVerificationFailed = 3;

void configure_logging() {
  auto logger = spdlog::stderr_color_mt("ceub");
  spdlog::set_default_logger(logger);
  spdlog::set_pattern("[%l] %v");
  const char* level = std::getenv("CEUB_LOG");
  const std::string mode = level ? level : "info";
  if (mode == "quiet") {
    spdlog::set_level(spdlog::level::off);
  } else if (mode == "trace") {
    spdlog::set_level(spdlog::level::trace);
  } else {
    if (mode != "info") spdlog::warn("unknown CEUB_LOG value \"{}\", using info", mode);
    spdlog::set_level(spdlog::level::info);
  }
}

std::string describe_vertex(const Vertex& v) {
  return (v.kind == Vertex::Kind::agent ? "agent " : "item ") + std::to_string(v.index);
}

void print_verdict(const ParetoVerdict& verdict) {
  if (const auto* mass = std::get_if<UnallocatedMass>(&verdict)) {
    std::cerr << "not Pareto optimal: item " << mass->item << " is only "
              << to_string(mass->allocated) << " allocated\n";
  } else if (const auto* cert = std::get_if<TradingCycleCertificate>(&verdict)) {
    std::cerr << "not Pareto optimal: trading cycle";
    for (const auto& v : cert->vertices) std::cerr << " -> " << describe_vertex(v);
    std::cerr << " -> " << describe_vertex(cert->vertices.front())
              << " (improvement ratio " << to_string(cert->improvement_ratio) << ")\n";
  }
}

void print_report(const EquilibriumReport& report) {
  for (const auto& r : report.agents) {
    std::cout << "agent " << r.agent << ": utility " << to_string(r.achieved_utility)
              << ", best affordable " << to_string(r.optimal_utility) << ", spend "
              << to_string(r.spend) << (r.in_demand_set ? ", in demand set" : ", NOT in demand set")
              << "\n";
  }
  std::cout << "items fully allocated: " << (report.items_fully_allocated ? "yes" : "no") << "\n"
            << "budgets exhausted: " << (report.budgets_exhausted ? "yes" : "no") << "\n";
}

int cmd_price(const std::string& instance_path, const std::string& allocation_path,
              const std::string& out_path) {
  const Instance inst = io::parse_instance(io::read_json(instance_path));
  const Allocation y = io::parse_allocation(io::read_json(allocation_path));
  check_dimensions(inst, y);
  spdlog::info("pricing {}x{} allocation", inst.agents(), inst.items());
  try {
    const Equilibrium eq = support_pipeline(inst, y);
    spdlog::trace("trees: {}, lambda {}", eq.forest.tree_count(), to_string(eq.lambda));
    io::write_text(out_path, io::dump(io::to_json(io::make_equilibrium_document(eq))));
  } catch (const ParetoViolation& e) {
    print_verdict(e.verdict());
    return kNotParetoOptimal;
  } catch (const NotParetoOptimal& e) {
    std::cerr << "not Pareto optimal: " << e.what() << "\n";
    return kNotParetoOptimal;
  }
  spdlog::info("wrote {}", out_path);
  return kOk;
}

int cmd_maxmin(const std::string& instance_path, const std::string& out_path, bool fast) {
  const Instance inst = io::parse_instance(io::read_json(instance_path));
  std::string method = "lp";
  MaxMinResult result = [&] {
    if (!fast) return maxmin_lp(inst);
    if (inst.agents() == 2) {
      method = "two_agents";
      return maxmin_two_agents(inst);
    }
    if (inst.items() == 2) {
      method = "two_items";
      return maxmin_two_items(inst);
    }
    throw Error("fast path requires n=2 or m=2");
  }();
  spdlog::info("max-min value {} via {}", to_string(result.lambda), method);
  io::write_text(out_path, io::dump(io::to_json(result, method)));
  return kOk;
}

int cmd_verify(const std::string& instance_path, const std::string& allocation_path,
               const std::string& equilibrium_path) {
  const Instance inst = io::parse_instance(io::read_json(instance_path));
  const Allocation alloc = io::parse_allocation(io::read_json(allocation_path));
  const io::EquilibriumDocument eq = io::parse_equilibrium(io::read_json(equilibrium_path));
  check_dimensions(inst, alloc);
  if (eq.prices.size() != inst.items() || eq.budgets.size() != inst.agents()) {
    throw DimensionMismatch("equilibrium file does not match the instance dimensions");
  }
  for (Index j = 0; j < eq.prices.size(); ++j) {
    if (eq.prices(j) <= 0) {
      std::cerr << "verification failed: item " << j << " has a nonpositive price\n";
      return kVerificationFailed;
    }
  }

  const EquilibriumReport report = verify_equilibrium(inst, alloc, eq.prices, eq.budgets);
  print_report(report);
  if (auto agent = report.first_failure()) {
    std::cerr << "verification failed: agent " << *agent << " is not in her demand set\n";
    return kVerificationFailed;
  }
  for (const auto& r : report.agents) {
    if (r.spend != eq.budgets(r.agent)) {
      std::cerr << "verification failed: agent " << r.agent << " spends " << to_string(r.spend)
                << " of budget " << to_string(eq.budgets(r.agent)) << "\n";
      return kVerificationFailed;
    }
  }
  if (!report.items_fully_allocated) {
    std::cerr << "verification failed: some item is not fully allocated\n";
    return kVerificationFailed;
  }
  const ParetoVerdict verdict = verify_pareto_optimal(inst, alloc);
  if (!is_pareto_optimal(verdict)) {
    print_verdict(verdict);
    return kNotParetoOptimal;
  }
  std::cout << "equilibrium verified; allocation is Pareto optimal\n";
  return kOk;
}

int cmd_gen(std::uint64_t seed, Index agents, Index items, const std::string& mode,
            const std::string& prefix) {
  GenConfig cfg;
  cfg.seed = seed;
  cfg.agents = agents;
  cfg.items = items;
  const Instance inst = gen_instance(cfg);
  const GenMode gen_mode = mode == "a" ? GenMode::welfare : GenMode::maxmin_perturbed;
  const Allocation alloc = gen_pareto_allocation(inst, seed, gen_mode);
  io::write_text(prefix + ".instance.json", io::dump(io::to_json(inst)));
  io::write_text(prefix + ".allocation.json", io::dump(io::to_json(alloc)));
  spdlog::info("wrote {0}.instance.json and {0}.allocation.json", prefix);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  configure_logging();
  CLI::App app{"Prices and token budgets supporting Pareto-optimal allocations"};
  app.require_subcommand(1);

  std::string instance_path;
  std::string allocation_path;
  std::string equilibrium_path;
  std::string out_path;
  bool fast = false;
  std::uint64_t seed = 0;
  long agents = 0;
  long items = 0;
  std::string mode = "a";

  auto* price = app.add_subcommand("price", "compute prices and budgets supporting an allocation");
  price->add_option("instance", instance_path, "instance file")->required();
  price->add_option("allocation", allocation_path, "allocation file")->required();
  price->add_option("-o,--out", out_path, "equilibrium file to write")->required();

  auto* maxmin = app.add_subcommand("maxmin", "compute a max-min allocation");
  maxmin->add_option("instance", instance_path, "instance file")->required();
  maxmin->add_option("-o,--out", out_path, "result file to write")->required();
  maxmin->add_flag("--fast", fast, "use the two-agent or two-item algorithm");

  auto* verify = app.add_subcommand("verify", "check an equilibrium and Pareto optimality");
  verify->add_option("instance", instance_path, "instance file")->required();
  verify->add_option("allocation", allocation_path, "allocation file")->required();
  verify->add_option("equilibrium", equilibrium_path, "equilibrium file")->required();

  auto* gen = app.add_subcommand("gen", "generate an instance and a Pareto-optimal allocation");
  gen->add_option("--seed", seed, "random seed")->required();
  gen->add_option("--agents", agents, "number of agents")->required();
  gen->add_option("--items", items, "number of items")->required();
  gen->add_option("--mode", mode, "a: weighted welfare, b: perturbed max-min")
      ->check(CLI::IsMember({"a", "b"}));
  gen->add_option("-o,--out", out_path, "output prefix")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  try {
    if (*price) return cmd_price(instance_path, allocation_path, out_path);
    if (*maxmin) return cmd_maxmin(instance_path, out_path, fast);
    if (*verify) return cmd_verify(instance_path, allocation_path, equilibrium_path);
    if (*gen) return cmd_gen(seed, agents, items, mode, out_path);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
