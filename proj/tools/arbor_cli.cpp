// arbor: command-line front end for the tree-group library.
//
//   arbor group info --family dihedral:4
//   arbor group find-pairs --family dihedral:6 --p 2
//   arbor pattern verify --family dihedral:4 --pattern theorem12
//   arbor process dist --family dihedral:4 --pattern theorem12 --level 2
//   arbor sample fpp --family dihedral:4 --pattern theorem12 --level 2 --trials 100000 --seed 7
//   arbor verify-paper
//
// Exit status: 0 success, 1 failed verification, 2 bad input.

#include <chrono>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "arbor/checks.hpp"
#include "arbor/error.hpp"
#include "arbor/families.hpp"
#include "arbor/io.hpp"
#include "arbor/process.hpp"
#include "arbor/sampler.hpp"

namespace {

using arbor::Error;
using arbor::ErrorCode;
using Json = nlohmann::ordered_json;

struct Options {
  std::string group_file;
  std::string family;
  std::string pattern_kind;
  std::string pattern_file;
  std::string sigma;
  int p = 2;
  std::size_t pair_index = 0;  // 0: use the family pair if there is one, else the first found
  std::size_t level = 2;
  std::uint64_t trials = 100000;
  std::uint64_t seed = 1;
  std::size_t cap = arbor::kDefaultElementCap;
  bool machine_readable = false;
  bool timing = false;
};

struct Input {
  std::string echo;
  arbor::FiniteGroup group;
  std::optional<arbor::SubgroupPair> family_pair;
};

Input load_group(const Options& o) {
  if (!o.group_file.empty() && !o.family.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "give either --group-file or --family, not both");
  }
  if (!o.group_file.empty()) {
    return {"group-file " + o.group_file, arbor::read_group_file(o.group_file, o.cap), {}};
  }
  if (!o.family.empty()) {
    arbor::FamilyGroup f = arbor::build_family(arbor::parse_family(o.family), o.cap);
    return {"family " + f.label, std::move(f.group), std::move(f.pair)};
  }
  throw Error(ErrorCode::kInvalidArgument, "a group is required: use --group-file or --family");
}

std::pair<arbor::Perm, arbor::Perm> parse_sigma(const std::string& text, std::size_t degree) {
  const auto arrow = text.find("->");
  if (arrow == std::string::npos) throw Error(ErrorCode::kParse, "--sigma expects 'a -> b'");
  return {arbor::Perm::parse(text.substr(0, arrow), degree),
          arbor::Perm::parse(text.substr(arrow + 2), degree)};
}

struct LoadedPattern {
  std::string echo;
  arbor::PatternGroup pattern;
  std::optional<arbor::SubgroupPair> pair;
};

LoadedPattern load_pattern(const Options& o) {
  if (!o.pattern_file.empty()) {
    if (!o.group_file.empty() || !o.family.empty() || !o.pattern_kind.empty()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "--pattern-file already names the group and the construction");
    }
    const arbor::PatternSpec spec = arbor::read_pattern_file(o.pattern_file, o.cap);
    return {"pattern-file " + o.pattern_file, arbor::build_pattern(spec), {}};
  }
  Input in = load_group(o);
  const std::string kind = o.pattern_kind.empty() ? "wreath" : o.pattern_kind;
  if (kind == "wreath") return {in.echo + " pattern wreath", arbor::wreath_pattern(in.group), {}};
  if (kind != "theorem12") {
    throw Error(ErrorCode::kInvalidArgument, "--pattern must be wreath or theorem12");
  }
  std::optional<arbor::SubgroupPair> pair;
  if (in.family_pair && o.pair_index == 0 && o.p == 2) {
    pair = in.family_pair;
  } else {
    const auto pairs = arbor::find_index_p_normal_pairs(in.group, o.p);
    const std::size_t index = o.pair_index == 0 ? 1 : o.pair_index;
    if (pairs.empty()) {
      throw Error(ErrorCode::kInvalidPair, "no transitive/intransitive normal pair of index " +
                                               std::to_string(o.p));
    }
    if (index > pairs.size()) {
      throw Error(ErrorCode::kInvalidPair, "--pair " + std::to_string(index) + " outside 1.." +
                                               std::to_string(pairs.size()));
    }
    pair = pairs[index - 1];
  }
  if (!o.sigma.empty()) {
    const auto [a, b] = parse_sigma(o.sigma, in.group.degree());
    pair = arbor::with_sigma(*pair, a, b);
  }
  arbor::PatternGroup p = arbor::build_theorem12_pattern(in.group, *pair);
  return {in.echo + " pattern theorem12 p " + std::to_string(o.p), std::move(p), pair};
}

Json perms_json(const std::vector<arbor::Perm>& perms) {
  Json a = Json::array();
  for (const auto& p : perms) a.push_back(p.to_string());
  return a;
}

Json partition_json(const arbor::Partition& part) {
  Json a = Json::array();
  for (const auto& block : part) a.push_back(block);
  return a;
}

std::string history_string(const std::vector<std::uint64_t>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(v[i]);
  }
  return out;
}

Json pair_json(const arbor::SubgroupPair& pair) {
  Json j;
  j["p"] = pair.p;
  j["n1_order"] = pair.n1.order();
  j["n1_generators"] = perms_json(pair.n1.generators());
  j["n1_orbits"] = partition_json(arbor::orbits(pair.n1));
  j["n2_order"] = pair.n2.order();
  j["n2_generators"] = perms_json(pair.n2.generators());
  j["n2_orbits"] = partition_json(arbor::orbits(pair.n2));
  j["sigma"] = pair.n1_generator.to_string() + " N1 -> " + pair.n2_generator.to_string() + " N2";
  return j;
}

std::string scalar_text(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_array()) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) out += ", ";
      out += v[i].is_array() || v[i].is_object() ? v[i].dump() : scalar_text(v[i]);
    }
    return "[" + out + "]";
  }
  return v.dump();
}

bool is_flat(const Json& v) {
  if (v.is_object()) return false;
  if (!v.is_array()) return true;
  for (const auto& x : v) {
    if (x.is_object()) return false;
  }
  return true;
}

// Arrays of records ("4 0 : 1/2048", "E(Y2 | 4) = 8/1") print one per line.
bool is_record_list(const Json& v) {
  if (!v.is_array() || v.empty()) return false;
  for (const auto& x : v) {
    if (!x.is_string()) return false;
    const auto& s = x.get_ref<const std::string&>();
    if (s.find(':') == std::string::npos && s.find('=') == std::string::npos) return false;
  }
  return true;
}

void print_text(const Json& j, std::ostream& out, const std::string& indent = "") {
  for (const auto& [key, value] : j.items()) {
    if (is_record_list(value)) {
      out << indent << key << ":\n";
      for (const auto& item : value) out << indent << "  " << item.get<std::string>() << "\n";
    } else if (is_flat(value)) {
      out << indent << key << ": " << scalar_text(value) << "\n";
    } else if (value.is_object()) {
      out << indent << key << ":\n";
      print_text(value, out, indent + "  ");
    } else {
      out << indent << key << ":\n";
      for (const auto& item : value) {
        out << indent << "  -\n";
        print_text(item, out, indent + "    ");
      }
    }
  }
}

Json cmd_group_info(const Options& o) {
  const Input in = load_group(o);
  Json j;
  j["input"] = in.echo;
  j["degree"] = in.group.degree();
  j["order"] = in.group.order();
  j["generators"] = perms_json(in.group.generators());
  j["orbits"] = partition_json(arbor::orbits(in.group));
  const bool transitive = arbor::is_transitive(in.group);
  j["transitive"] = transitive;
  if (transitive) {
    const auto block = arbor::nontrivial_block(in.group);
    j["primitive"] = !block.has_value();
    if (block) j["block"] = *block;
  }
  j["normal_subgroups"] = arbor::normal_subgroups(in.group).size();
  if (in.family_pair) j["family_pair"] = pair_json(*in.family_pair);
  return j;
}

Json cmd_group_find_pairs(const Options& o) {
  const Input in = load_group(o);
  const auto pairs = arbor::find_index_p_normal_pairs(in.group, o.p);
  Json j;
  j["input"] = in.echo;
  j["p"] = o.p;
  j["count"] = pairs.size();
  Json list = Json::array();
  for (const auto& pair : pairs) list.push_back(pair_json(pair));
  j["pairs"] = list;
  return j;
}

Json pattern_summary(const LoadedPattern& lp) {
  const arbor::PatternGroup& p = lp.pattern;
  Json j;
  j["input"] = lp.echo;
  j["arity"] = p.arity();
  j["depth"] = p.depth();
  j["order"] = p.order().get_str();
  j["roots"] = p.fibers().size();
  if (p.depth() == 2 && !p.fibers().empty()) {
    std::string sizes;
    for (const auto& [root, size] : p.fiber_sizes()) {
      if (!sizes.empty()) sizes += ", ";
      sizes += size.get_str();
    }
    j["fiber_sizes"] = "[" + sizes + "]";
  }
  if (lp.pair) j["pair"] = pair_json(*lp.pair);
  return j;
}

Json report_json(const arbor::PatternReport& r) {
  Json j;
  j["closure"] = r.closure;
  j["inverses"] = r.inverses;
  j["identity"] = r.identity;
  j["root_is_group"] = r.root_is_group;
  j["root_transitive"] = r.root_transitive;
  j["self_replicating"] = r.self_replicating;
  j["uniform_fibers"] = r.uniform_fibers;
  j["recurrent"] = r.recurrent;
  j["notes"] = r.notes;
  return j;
}

Json cmd_pattern_build(const Options& o) { return pattern_summary(load_pattern(o)); }

Json cmd_pattern_verify(const Options& o, int& status) {
  const LoadedPattern lp = load_pattern(o);
  Json j = pattern_summary(lp);
  const arbor::PatternReport r = arbor::verify_pattern_group(lp.pattern);
  j["verification"] = report_json(r);
  j["verified"] = r.all();
  if (!r.all()) status = 1;
  return j;
}

Json cmd_process_dist(const Options& o) {
  const LoadedPattern lp = load_pattern(o);
  const arbor::JointFixDistribution d = arbor::exact_joint_distribution(lp.pattern, o.level);
  Json j;
  j["input"] = lp.echo;
  j["level"] = o.level;
  Json support = Json::array();
  for (const auto& [v, w] : d.weights) {
    Json row;
    row["y"] = v;
    row["probability"] = arbor::fraction_string(w);
    support.push_back(row);
  }
  Json means = Json::array();
  for (std::size_t k = 1; k <= o.level; ++k) means.push_back(arbor::fraction_string(d.expectation(k)));
  j["expectations"] = means;
  j["support_size"] = d.weights.size();
  if (o.machine_readable) {
    j["distribution"] = support;
  } else {
    Json lines = Json::array();
    for (const auto& [v, w] : d.weights) {
      lines.push_back(history_string(v) + " : " + arbor::fraction_string(w));
    }
    j["distribution"] = lines;
  }
  return j;
}

Json cmd_process_martingale(const Options& o) {
  const LoadedPattern lp = load_pattern(o);
  const arbor::MartingaleVerdict v = arbor::martingale_check(lp.pattern);
  Json j;
  j["input"] = lp.echo;
  j["verdict"] = v.martingale ? "Martingale" : "NonMartingale";
  j["levels_checked"] = v.levels_checked;
  if (!v.martingale) {
    j["failing_level"] = v.failing_level;
    j["witness"] = arbor::format_word(v.witness);
  }
  j["summary"] = arbor::describe(v);
  if (lp.pattern.depth() == 2) {
    const arbor::KernelReport k = arbor::restriction_kernel(lp.pattern);
    j["kernel_order"] = k.order.get_str();
    Json orbits = Json::array();
    for (const auto& part : k.per_child_orbits) orbits.push_back(partition_json(part));
    j["kernel_orbits"] = orbits;
  }
  const arbor::JointFixDistribution d = arbor::exact_joint_distribution(lp.pattern, o.level);
  j["deviation_level"] = o.level;
  j["deviation"] = arbor::fraction_string(arbor::martingale_deviation(d));
  Json conditionals = Json::array();
  if (o.level >= 2) {
    for (const auto& [h, e] : arbor::conditional_expectations(d, o.level)) {
      conditionals.push_back("E(Y" + std::to_string(o.level) + " | " + history_string(h) +
                             ") = " + arbor::fraction_string(e));
    }
  }
  j["conditional_expectations"] = conditionals;
  return j;
}

Json cmd_process_fpp(const Options& o) {
  const LoadedPattern lp = load_pattern(o);
  const arbor::JointFixDistribution d = arbor::exact_joint_distribution(lp.pattern, o.level);
  Json j;
  j["input"] = lp.echo;
  Json values = Json::array();
  for (std::size_t k = 1; k <= o.level; ++k) values.push_back(arbor::fraction_string(arbor::fpp(d, k)));
  j["fpp"] = values;
  return j;
}

Json cmd_process_afplp(const Options& o, int& status) {
  const LoadedPattern lp = load_pattern(o);
  const arbor::AfplpReport a = arbor::afplp_check(lp.pattern, o.level, o.cap);
  Json j;
  j["input"] = lp.echo;
  j["level"] = a.level;
  j["holds"] = a.holds;
  j["elements_checked"] = a.elements_checked;
  if (a.witness) {
    Json w = Json::array();
    for (std::size_t v = 0; v < a.witness->labels().size(); ++v) {
      w.push_back(arbor::format_word(arbor::vertex_word(a.witness->arity(), v)) + ": " +
                  a.witness->label(v).to_string());
    }
    j["witness"] = w;
  }
  j["witness_fix"] = a.witness_fix;
  j["witness_average"] = arbor::fraction_string(a.witness_average);
  j["max_deviation"] = arbor::fraction_string(a.max_deviation);
  (void)status;  // a failing lifting property is a result, not an error
  return j;
}

Json cmd_sample_fpp(const Options& o) {
  const LoadedPattern lp = load_pattern(o);
  const arbor::SampleReport r = arbor::monte_carlo_fpp(lp.pattern, o.level, o.trials, o.seed);
  Json j;
  j["input"] = lp.echo;
  j["level"] = r.level;
  j["trials"] = r.trials;
  j["seed"] = r.seed;
  j["hits"] = r.hits;
  j["estimate"] = r.estimate;
  j["standard_error"] = r.standard_error;
  Json means = Json::array();
  for (std::size_t k = 1; k <= r.level; ++k) means.push_back(r.level_mean(k));
  j["level_means"] = means;
  return j;
}

Json cmd_verify_paper(int& status) {
  Json j;
  Json checks = Json::array();
  std::size_t failed = 0;
  for (const auto& c : arbor::reference_checks()) {
    if (!c.passed) ++failed;
    Json row;
    row["name"] = c.name;
    row["result"] = c.passed ? "PASS" : "FAIL";
    row["detail"] = c.detail;
    checks.push_back(row);
  }
  j["checks"] = checks;
  j["failed"] = failed;
  if (failed) status = 1;
  return j;
}

void print_verify_text(const Json& j, std::ostream& out) {
  for (const auto& c : j["checks"]) {
    out << c["result"].get<std::string>() << "  " << c["name"].get<std::string>() << "  ("
        << c["detail"].get<std::string>() << ")\n";
  }
  out << "failed: " << j["failed"].get<std::size_t>() << "\n";
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kUnverifiedPattern:
    case ErrorCode::kNonUniformFibers:
      return 1;
    default:
      return 2;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Groups acting on rooted trees and their fixed-point processes"};
  app.require_subcommand(1);
  Options o;

  auto add_group_flags = [&](CLI::App* c) {
    c->add_option("--group-file", o.group_file, "Group text file (degree:, generators:)");
    c->add_option("--family", o.family, "Built-in family, e.g. dihedral:4, symmetric:4, klein:A5");
    c->add_option("--cap", o.cap, "Element enumeration cap");
    c->add_flag("--machine-readable", o.machine_readable, "Emit JSON");
    c->add_flag("--timing", o.timing, "Report wall time on stderr");
  };
  auto add_pattern_flags = [&](CLI::App* c) {
    add_group_flags(c);
    c->add_option("--pattern", o.pattern_kind, "wreath or theorem12")
        ->check(CLI::IsMember({"wreath", "theorem12"}));
    c->add_option("--pattern-file", o.pattern_file, "Pattern text file");
    c->add_option("--p", o.p, "Prime index for theorem12");
    c->add_option("--pair", o.pair_index, "1-based index into the pair search");
    c->add_option("--sigma", o.sigma, "Override sigma: 'a -> b' sends a N1 to b N2");
  };

  auto* group = app.add_subcommand("group", "Permutation group queries");
  group->require_subcommand(1);
  auto* group_info = group->add_subcommand("info", "Order, orbits, primitivity");
  add_group_flags(group_info);
  auto* find_pairs = group->add_subcommand("find-pairs", "Transitive/intransitive index-p normal pairs");
  add_group_flags(find_pairs);
  find_pairs->add_option("--p", o.p, "Prime index");

  auto* pattern = app.add_subcommand("pattern", "Pattern group construction");
  pattern->require_subcommand(1);
  auto* build = pattern->add_subcommand("build", "Build and summarize a pattern group");
  add_pattern_flags(build);
  auto* verify = pattern->add_subcommand("verify", "Structural verification");
  add_pattern_flags(verify);

  auto* process = app.add_subcommand("process", "Exact fixed-point process analytics");
  process->require_subcommand(1);
  std::vector<CLI::App*> process_cmds;
  for (const char* name : {"dist", "martingale", "fpp", "afplp"}) {
    auto* c = process->add_subcommand(name);
    add_pattern_flags(c);
    c->add_option("--level", o.level, "Tree level n");
    process_cmds.push_back(c);
  }
  process_cmds[0]->description("Joint law of (Y_1, ..., Y_n)");
  process_cmds[1]->description("Kernel criterion, deviation and conditional expectations");
  process_cmds[2]->description("Fixed-point proportions for levels 1..n");
  process_cmds[3]->description("Average fixed-point lifting property at level n");

  auto* sample = app.add_subcommand("sample", "Monte Carlo estimates");
  sample->require_subcommand(1);
  auto* sample_fpp = sample->add_subcommand("fpp", "Estimate FPP at level n");
  add_pattern_flags(sample_fpp);
  sample_fpp->add_option("--level", o.level, "Tree level n");
  sample_fpp->add_option("--trials", o.trials, "Number of samples");
  sample_fpp->add_option("--seed", o.seed, "64-bit seed");

  auto* verify_paper = app.add_subcommand("verify-paper", "Run the exact reference checks");
  verify_paper->add_flag("--machine-readable", o.machine_readable, "Emit JSON");
  verify_paper->add_flag("--timing", o.timing, "Report wall time on stderr");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  const auto start = std::chrono::steady_clock::now();
  int status = 0;
  Json result;
  try {
    if (group_info->parsed()) result = cmd_group_info(o);
    else if (find_pairs->parsed()) result = cmd_group_find_pairs(o);
    else if (build->parsed()) result = cmd_pattern_build(o);
    else if (verify->parsed()) result = cmd_pattern_verify(o, status);
    else if (process_cmds[0]->parsed()) result = cmd_process_dist(o);
    else if (process_cmds[1]->parsed()) result = cmd_process_martingale(o);
    else if (process_cmds[2]->parsed()) result = cmd_process_fpp(o);
    else if (process_cmds[3]->parsed()) result = cmd_process_afplp(o, status);
    else if (sample_fpp->parsed()) result = cmd_sample_fpp(o);
    else if (verify_paper->parsed()) result = cmd_verify_paper(status);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  if (o.machine_readable) {
    std::cout << result.dump(2) << "\n";
  } else if (verify_paper->parsed()) {
    print_verify_text(result, std::cout);
  } else {
    print_text(result, std::cout);
  }
  if (o.timing) {
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                        std::chrono::steady_clock::now() - start)
                        .count();
    std::cerr << "elapsed_ms: " << ms << "\n";
  }
  return status;
}
