// Command-line front end: every operation reads JSON (or flags) and writes
// one JSON document to stdout. Errors go to stderr as JSON with the exit
// code of their category.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "nullcover.hpp"
#include "nullcover/json_io.hpp"

namespace {

using nlohmann::json;
using namespace nullcover;
namespace jio = nullcover::json_io;

struct RunConfig {
  std::uint64_t seed = 0;
  Caps caps;
  std::string format = "json";
  std::string input;  // inline JSON or @file
};

struct PlanArgs {
  std::string mode = "product";
  std::uint64_t p = 2;
  std::vector<std::uint64_t> orders;
  std::uint64_t uniform_order = 2;
  std::size_t depth = 3;
};

json read_input(const std::string& spec) {
  if (spec.empty()) fail_schema("MissingInput", "--in is required for this command");
  std::string text;
  if (spec[0] == '@') {
    const std::string path = spec.substr(1);
    std::stringstream buf;
    if (path == "-") {
      buf << std::cin.rdbuf();
    } else {
      std::ifstream in(path);
      if (!in) fail_schema("UnreadableInput", "cannot open " + path);
      buf << in.rdbuf();
    }
    text = buf.str();
  } else {
    text = spec;
  }
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    fail_schema("InvalidJson", e.what());
  }
}

BlockPlan plan_from_args(const PlanArgs& a) {
  if (a.mode == "padic") return plan_blocks_padic(a.p, a.depth);
  if (a.mode != "product") fail_schema("SchemaViolation", "--mode must be product or padic");
  if (!a.orders.empty()) return plan_blocks_product(a.orders, a.depth);
  // Each block needs fewer than 64 coordinates of order >= 2.
  return plan_blocks_product(std::vector<std::uint64_t>(a.depth * 64, a.uniform_order), a.depth);
}

void add_plan_options(CLI::App* cmd, PlanArgs& a, bool with_mode) {
  if (with_mode) cmd->add_option("--mode", a.mode, "product | padic")->capture_default_str();
  cmd->add_option("--p", a.p, "prime for p-adic plans")->capture_default_str();
  cmd->add_option("--orders", a.orders, "coordinate orders m_k for product plans")->delimiter(',');
  cmd->add_option("--uniform-order", a.uniform_order, "order of every coordinate when --orders is absent")
      ->capture_default_str();
  cmd->add_option("--depth", a.depth, "number of blocks D")->capture_default_str();
}

Width width_from_arg(const std::string& s) {
  if (s == "n+2" || s == "linear") return Width::linear();
  if (s == "floor((n+2)/2)" || s == "half") return Width::half();
  std::vector<std::uint64_t> table;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      table.push_back(std::stoull(item));
    } catch (const std::exception&) {
      fail_schema("SchemaViolation", "--width must be n+2, half, or a comma-separated table");
    }
  }
  if (table.empty()) fail_schema("SchemaViolation", "--width table is empty");
  return Width::from_table(std::move(table));
}

Rational rational_from_arg(const std::string& s) {
  const auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(BigInt(s));
    const BigInt den(s.substr(slash + 1));
    if (den == 0) fail_schema("SchemaViolation", "zero denominator");
    return Rational(BigInt(s.substr(0, slash)), den);
  } catch (const std::runtime_error& e) {
    if (dynamic_cast<const Error*>(&e)) throw;
    fail_schema("SchemaViolation", "cannot parse rational \"" + s + "\"");
  }
}

void emit(const json& j, const RunConfig& cfg) {
  if (cfg.format == "table" && j.is_object()) {
    for (const auto& [k, v] : j.items()) std::cout << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
    return;
  }
  std::cout << j.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  if (const char* env = std::getenv("NULLCOVER_CAP_VERIFY")) {
    try {
      cfg.caps.verification = std::stoull(env);
    } catch (const std::exception&) {
      std::cerr << json{{"error", {{"kind", "schema"}, {"code", "InvalidEnvironment"},
                                   {"message", "NULLCOVER_CAP_VERIFY must be a positive integer"}}}}
                       .dump()
                << "\n";
      return 2;
    }
  }

  CLI::App app{"Compact nullset constructions, slalom covers and symbolic LCA reductions"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--seed", cfg.seed, "64-bit seed for generated inputs")->capture_default_str();
  app.add_option("--cap-enum", cfg.caps.enumeration, "enumeration cap")->capture_default_str();
  app.add_option("--cap-verify", cfg.caps.verification, "verification cap (overrides NULLCOVER_CAP_VERIFY)");
  app.add_option("--format", cfg.format, "json | table")->check(CLI::IsMember({"json", "table"}))->capture_default_str();
  app.add_option("--in", cfg.input, "inline JSON or @file (@- for stdin)");

  json result;

  // plan
  PlanArgs plan_args;
  auto* plan_cmd = app.add_subcommand("plan", "block plan for a product or p-adic construction");
  add_plan_options(plan_cmd, plan_args, true);
  plan_cmd->callback([&] { result = jio::to_json(plan_from_args(plan_args)); });

  // build-nullset
  PlanArgs nullset_args;
  auto* nullset_cmd = app.add_subcommand("build-nullset", "choose A_n for every block (plan via --in or flags)");
  add_plan_options(nullset_cmd, nullset_args, true);
  nullset_cmd->callback([&] {
    const BlockPlan plan = cfg.input.empty() ? plan_from_args(nullset_args) : jio::plan_from_json(read_input(cfg.input));
    result = jio::to_json(build_nullset(plan, cfg.caps.enumeration));
  });

  // cover product|padic
  auto* cover_cmd = app.add_subcommand("cover", "cover a slalom by one translate of the nullset");
  cover_cmd->require_subcommand(1);
  PlanArgs cover_args;
  auto run_cover = [&](PlanMode mode) {
    cover_args.mode = mode == PlanMode::product ? "product" : "padic";
    json in = cfg.input.empty() ? json::object() : read_input(cfg.input);
    if (!in.is_object()) fail_schema("SchemaViolation", "cover input must be an object");
    NullsetSpec spec;
    if (in.contains("nullset")) {
      spec = jio::nullset_from_json(in["nullset"]);
    } else {
      const BlockPlan plan = in.contains("plan") ? jio::plan_from_json(in["plan"]) : plan_from_args(cover_args);
      spec = build_nullset(plan, cfg.caps.enumeration);
    }
    if (spec.plan.mode != mode) fail_precondition("ModeMismatch", "nullset mode differs from the cover subcommand");
    const Slalom slalom =
        in.contains("slalom")
            ? jio::slalom_from_json(in["slalom"], &spec.plan)
            : random_slalom(spec.plan, mode == PlanMode::product ? Width::linear() : Width::half(), cfg.seed);
    const CoverCertificate cert =
        mode == PlanMode::product ? cover_product_slalom(spec, slalom, cfg.caps) : cover_padic_slalom(spec, slalom, cfg.caps);
    result = {{"nullset", jio::to_json(spec)}, {"slalom", jio::to_json(slalom)}, {"certificate", jio::to_json(cert)}};
  };
  auto* cover_product = cover_cmd->add_subcommand("product", "product of finite groups, f(n) = n+2");
  add_plan_options(cover_product, cover_args, false);
  cover_product->callback([&] { run_cover(PlanMode::product); });
  auto* cover_padic = cover_cmd->add_subcommand("padic", "p-adic integers, f(n) = floor((n+2)/2)");
  add_plan_options(cover_padic, cover_args, false);
  cover_padic->callback([&] { run_cover(PlanMode::padic); });

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "exhaustively re-check a cover (the output of `cover`)");
  verify_cmd->callback([&] {
    const json in = read_input(cfg.input);
    const NullsetSpec spec = jio::nullset_from_json(jio::field(in, "nullset", "verify input"));
    const Slalom slalom = jio::slalom_from_json(jio::field(in, "slalom", "verify input"), &spec.plan);
    const CoverCertificate cert = jio::certificate_from_json(jio::field(in, "certificate", "verify input"));
    if (cert.mode != spec.plan.mode) fail_precondition("ModeMismatch", "certificate mode differs from the nullset");
    result = jio::to_json(verify_cover(spec, cert.translate, slalom, cfg.caps.verification));
  });

  // measure
  std::size_t measure_blocks = 0;
  bool measure_blocks_set = false;
  std::string first_below;
  auto* measure_cmd = app.add_subcommand("measure", "exact cylinder measure of a nullset, or the bound's decay point");
  measure_cmd->add_option("--blocks", measure_blocks, "number of blocks N (default: nullset depth)")
      ->each([&](const std::string&) { measure_blocks_set = true; });
  measure_cmd->add_option("--first-below", first_below, "report the least N with prod (1-1/(2(n+3))) < NUM/DEN");
  measure_cmd->callback([&] {
    if (!first_below.empty()) {
      const Rational t = rational_from_arg(first_below);
      const auto n = first_depth_below(t);
      result = {{"threshold", jio::rational_to_json(t)}, {"first_depth", n}, {"bound", jio::rational_to_json(measure_bound(n))}};
      return;
    }
    const NullsetSpec spec = jio::nullset_from_json(read_input(cfg.input));
    const std::size_t n = measure_blocks_set ? measure_blocks : spec.depth();
    result = {{"blocks", n},
              {"measure", jio::rational_to_json(measure_upper(spec, n))},
              {"bound", jio::rational_to_json(measure_bound(n))}};
  });

  // ek member|measure|sup
  auto* ek_cmd = app.add_subcommand("ek", "the Erdos-Kakutani set in factorial base");
  ek_cmd->require_subcommand(1);
  std::string ek_num = "0";
  std::string ek_den = "1";
  std::uint64_t ek_depth = 20;
  auto* ek_member = ek_cmd->add_subcommand("member", "tri-state membership of num/den at a depth");
  ek_member->add_option("--num", ek_num)->capture_default_str();
  ek_member->add_option("--den", ek_den)->capture_default_str();
  ek_member->add_option("--depth", ek_depth)->capture_default_str();
  ek_member->callback([&] {
    const Rational q = rational_from_arg(ek_num + "/" + ek_den);
    const auto e = factorial_expand(q, ek_depth);
    const auto m = ek_membership(q, ek_depth);
    auto opt = [](const std::optional<std::uint64_t>& v) { return v ? json(*v) : json(nullptr); };
    result = {{"verdict", to_string(m.verdict)},
              {"depth", ek_depth},
              {"q", jio::rational_to_json(q)},
              {"greedy", jio::to_json(e.greedy)},
              {"alternate", e.alternate ? jio::to_json(*e.alternate) : json(nullptr)},
              {"greedy_violation", opt(m.greedy_violation)},
              {"alternate_violation", opt(m.alternate_violation)}};
  });
  auto* ek_measure = ek_cmd->add_subcommand("measure", "length of the level-N cylinder cover");
  ek_measure->add_option("--depth", ek_depth)->capture_default_str();
  ek_measure->callback([&] { result = {{"depth", ek_depth}, {"outer_measure", jio::rational_to_json(ek_outer_measure(ek_depth))}}; });
  auto* ek_sup_cmd = ek_cmd->add_subcommand("sup", "largest truncated value");
  ek_sup_cmd->add_option("--depth", ek_depth)->capture_default_str();
  ek_sup_cmd->callback([&] { result = {{"depth", ek_depth}, {"sup", jio::rational_to_json(ek_sup(ek_depth))}}; });

  // classify, dual, pipeline, decompose
  auto* classify_cmd = app.add_subcommand("classify", "which of Z, sum of finite groups, C(p^inf) embeds");
  classify_cmd->callback([&] { result = jio::to_json(classify_subgroup(jio::descriptor_from_json(read_input(cfg.input)))); });
  auto* dual_cmd = app.add_subcommand("dual", "Pontryagin dual of a descriptor");
  dual_cmd->callback([&] { result = jio::to_json(dual(jio::descriptor_from_json(read_input(cfg.input)))); });
  bool list_rules = false;
  auto* pipeline_cmd = app.add_subcommand("pipeline", "reduce a descriptor to a terminal nice group");
  pipeline_cmd->add_flag("--rules", list_rules, "print the rule registry instead");
  pipeline_cmd->callback([&] {
    result = list_rules ? jio::rule_registry_json()
                        : jio::to_json(niceness_pipeline(jio::descriptor_from_json(read_input(cfg.input))));
  });
  auto* decompose_cmd = app.add_subcommand("decompose", "primary decomposition of a finite descriptor");
  decompose_cmd->callback([&] {
    json out = json::array();
    for (const auto& part : primary_decomposition(jio::descriptor_from_json(read_input(cfg.input)))) {
      out.push_back({{"p", part.p}, {"part", jio::to_json(part.part)}});
    }
    result = std::move(out);
  });

  // chain
  std::vector<std::uint64_t> chain_orders;
  std::uint64_t chain_p = 2;
  std::uint64_t chain_depth = 0;
  bool chain_max = false;
  auto* chain_cmd = app.add_subcommand("chain", "least chain g_0..g_d with p g_{i+1} = g_i, g_0 != 0");
  chain_cmd->add_option("--orders", chain_orders, "cyclic orders of G (or a finite descriptor via --in)")->delimiter(',');
  chain_cmd->add_option("--p", chain_p)->capture_default_str();
  chain_cmd->add_option("--depth", chain_depth)->capture_default_str();
  chain_cmd->add_flag("--max", chain_max, "report the maximal chain depth");
  chain_cmd->callback([&] {
    const FiniteAbelianGroup g = chain_orders.empty() ? to_finite_group(jio::descriptor_from_json(read_input(cfg.input)))
                                                      : FiniteAbelianGroup(chain_orders);
    if (chain_max) {
      const auto d = max_chain_depth(g, chain_p, cfg.caps.enumeration);
      result = {{"max_depth", d.any ? json(d.depth) : json(nullptr)}, {"unbounded", d.unbounded}};
      return;
    }
    const auto chain = divisible_chain(g, chain_p, chain_depth, cfg.caps.enumeration);
    json elems = nullptr;
    if (chain) {
      elems = json::array();
      for (const auto& e : *chain) elems.push_back(jio::to_json(e));
    }
    result = {{"orders", jio::uints_to_json(g.orders())}, {"p", chain_p}, {"depth", chain_depth}, {"chain", elems}};
  });

  // slalom-gen
  PlanArgs slalom_args;
  std::string width_arg = "n+2";
  auto* slalom_cmd = app.add_subcommand("slalom-gen", "seeded random slalom over a plan");
  add_plan_options(slalom_cmd, slalom_args, true);
  slalom_cmd->add_option("--width", width_arg, "n+2 | half | comma-separated table")->capture_default_str();
  slalom_cmd->callback([&] {
    const BlockPlan plan = cfg.input.empty() ? plan_from_args(slalom_args) : jio::plan_from_json(read_input(cfg.input));
    result = jio::to_json(random_slalom(plan, width_from_arg(width_arg), cfg.seed));
  });

  // cube-check
  auto* cube_cmd = app.add_subcommand("cube-check", "does a slalom family cover the truncated cube");
  cube_cmd->callback([&] {
    const json in = read_input(cfg.input);
    const BlockPlan plan = jio::plan_from_json(jio::field(in, "plan", "cube-check input"));
    const auto& fam = jio::field(in, "family", "cube-check input");
    if (!fam.is_array()) fail_schema("SchemaViolation", "family must be an array");
    std::vector<Slalom> family;
    for (const auto& s : fam) family.push_back(jio::slalom_from_json(s, &plan));
    const auto r = cube_cover_check(family, plan, cfg.caps.verification);
    result = {{"covered", r.covered},
              {"witness", r.witness ? jio::uints_to_json(*r.witness) : json(nullptr)},
              {"uncovered_count", r.uncovered_count},
              {"cube_size", r.cube_size}};
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::cerr << json{{"error", {{"kind", "schema"}, {"code", "InvalidArguments"}, {"message", e.what()}}}}.dump() << "\n";
    return 2;
  } catch (const Error& e) {
    json err = {{"error", {{"kind", to_string(e.kind())}, {"code", e.code()}, {"message", e.what()}}}};
    if (e.kind() == ErrorKind::internal) {
      json args = json::array();
      for (int i = 0; i < argc; ++i) args.push_back(argv[i]);
      json input = nullptr;
      try {
        if (!cfg.input.empty()) input = read_input(cfg.input);
      } catch (const std::exception&) {
        input = cfg.input;
      }
      err["reproduction"] = {{"argv", args}, {"input", input}, {"seed", cfg.seed}};
    }
    std::cerr << err.dump() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << json{{"error", {{"kind", "internal"}, {"code", "Unexpected"}, {"message", e.what()}}}}.dump() << "\n";
    return 10;
  }
  emit(result, cfg);
  return 0;
}
