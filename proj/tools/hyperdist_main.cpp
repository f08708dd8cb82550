// Command-line front end: loads workspace files, runs library
// operations, replays the built-in worked examples, and drives the law
// suite. Exit codes: 0 success, 1 domain error, 2 parse/validation
// error, 3 refinement undetermined.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "fixtures.hpp"
#include "hyperdist/errors.hpp"
#include "hyperdist/laws.hpp"

namespace {

using namespace hyperdist;

constexpr int kExitOk = 0;
constexpr int kExitDomain = 1;
constexpr int kExitParse = 2;
constexpr int kExitUndetermined = 3;

struct Options {
  std::string in;
  std::string format = "ket";
  std::string dist, subdist, predicate, test_name, channel, joint;
  std::string from, to, phi, psi, witness_name, post;
  std::string only, law, replay;
  bool all = false;
  std::size_t max_size = 3, max_arity = 3, max_denominator = 4, trials = 250;
  std::uint64_t seed = 1;
  std::string mode = "exhaustive";
};

Workspace need_workspace(const Options& opt) {
  if (opt.in.empty()) throw DomainError("this command needs a workspace file (--in FILE)");
  return load_workspace_file(opt.in);
}

void emit_dist(const Options& opt, const Dist& d) {
  if (opt.format == "json")
    std::cout << dist_to_json(d).dump(2) << "\n";
  else
    std::cout << render_ket(d) << "\n";
}

void emit_channel_rows(const Options& opt, const Channel& c, const std::string& name) {
  if (opt.format == "json") {
    std::cout << channel_to_json(c).dump(2) << "\n";
    return;
  }
  auto elems = c.source().elements();
  for (const auto& a : elems)
    std::cout << name << "(" << render_value(a, c.source()) << ") = " << render_ket(c.at(a))
              << "\n";
}

int cmd_nrm(const Options& opt) {
  Workspace w = need_workspace(opt);
  emit_dist(opt, nrm(w.subdist(opt.subdist)));
  return kExitOk;
}

int cmd_hypernorm(const Options& opt) {
  Workspace w = need_workspace(opt);
  emit_dist(opt, hyper_normalise(w.dist(opt.dist)));
  return kExitOk;
}

int cmd_condition(const Options& opt) {
  Workspace w = need_workspace(opt);
  emit_dist(opt, condition(w.dist(opt.dist), w.predicate(opt.predicate)));
  return kExitOk;
}

int cmd_hypercond(const Options& opt) {
  Workspace w = need_workspace(opt);
  HyperConditional hc = hyper_condition(w.dist(opt.dist), w.test(opt.test_name));
  emit_dist(opt, hc.dist());
  return kExitOk;
}

int cmd_disintegrate(const Options& opt) {
  Workspace w = need_workspace(opt);
  DisintegrationResult r = disintegrate(w.dist(opt.joint));
  if (opt.format == "json") {
    json j{{"conditional", channel_to_json(r.conditional)}, {"marginal", dist_to_json(r.marginal)}};
    std::cout << j.dump(2) << "\n";
  } else {
    emit_channel_rows(opt, r.conditional, "conditional");
    std::cout << "marginal = " << render_ket(r.marginal) << "\n";
  }
  return kExitOk;
}

int cmd_denote(const Options& opt) {
  Workspace w = need_workspace(opt);
  const Channel& c = w.channels.count(opt.channel) ? w.channel(opt.channel) : w.test(opt.channel);
  emit_dist(opt, denote_channel(c, w.dist(opt.dist)));
  return kExitOk;
}

int cmd_refine(const Options& opt) {
  Workspace w = need_workspace(opt);
  if (!opt.phi.empty() || !opt.psi.empty()) {
    HyperConditional phi(w.hyperdist(opt.phi));
    HyperConditional psi(w.hyperdist(opt.psi));
    HyperRefineResult r = hyper_refines(phi, psi);
    switch (r.status) {
      case RefineStatus::refines:
        emit_channel_rows(opt, *r.postprocessor, "h");
        if (opt.format != "json") std::cout << "witness = " << render_ket(r.witness->dist()) << "\n";
        std::cout << "REFINES\n";
        return kExitOk;
      case RefineStatus::not_refinable:
        std::cout << "NOT REFINABLE\n";
        return kExitOk;
      case RefineStatus::undetermined:
        std::cout << "UNDETERMINED: " << r.detail << "\n";
        return kExitUndetermined;
    }
  }
  auto h = test_refines(w.test(opt.from), w.test(opt.to));
  if (!h) {
    std::cout << "NOT REFINABLE\n";
    return kExitOk;
  }
  emit_channel_rows(opt, *h, "h");
  std::cout << "REFINES\n";
  return kExitOk;
}

int cmd_witness(const Options& opt) {
  Workspace w = need_workspace(opt);
  if (!opt.witness_name.empty()) {
    RefinementWitness omega(w.witness(opt.witness_name));
    bool ok = check_witness(w.hyperdist(opt.phi), w.hyperdist(opt.psi), omega);
    std::cout << (ok ? "WITNESS HOLDS" : "WITNESS FAILS") << "\n";
    return ok ? kExitOk : kExitDomain;
  }
  RefinementWitness omega =
      witness_from_h(w.dist(opt.dist), w.test(opt.test_name), w.test(opt.post));
  emit_dist(opt, omega.dist());
  return kExitOk;
}

const char* outcome_name(laws::Outcome o) {
  switch (o) {
    case laws::Outcome::pass:
      return "PASS";
    case laws::Outcome::fail:
      return "FAIL";
    case laws::Outcome::expected_fail:
      return "XFAIL";
  }
  return "?";
}

json report_to_json(const laws::CheckReport& r) {
  json j{{"law", r.law}, {"instances", r.instances}, {"outcome", outcome_name(r.outcome)}};
  if (!r.note.empty()) j["note"] = r.note;
  if (!r.counterexample.empty()) j["counterexample"] = json::parse(r.counterexample);
  if (!r.subchecks.empty()) {
    json subs = json::array();
    for (const auto& s : r.subchecks) subs.push_back(report_to_json(s));
    j["subchecks"] = subs;
  }
  return j;
}

void print_report(const laws::CheckReport& r) {
  std::cout << outcome_name(r.outcome) << " " << r.law << " (" << r.instances << " instances)\n";
  for (const auto& s : r.subchecks) {
    std::cout << "  " << outcome_name(s.outcome) << " " << s.law << " (" << s.instances << ")";
    if (!s.note.empty()) std::cout << "  [" << s.note << "]";
    std::cout << "\n";
    if (s.outcome != laws::Outcome::pass && !s.counterexample.empty())
      std::cout << "    counterexample:\n" << s.counterexample << "\n";
  }
}

int cmd_laws(const Options& opt) {
  if (!opt.replay.empty()) {
    std::ifstream in(opt.replay);
    if (!in) throw ParseError("cannot open counterexample file '" + opt.replay + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    bool reproduced = laws::replay_counterexample(buf.str());
    std::cout << (reproduced ? "REPRODUCED" : "NOT REPRODUCED") << "\n";
    return reproduced ? kExitOk : kExitDomain;
  }

  laws::CheckConfig cfg;
  cfg.max_space_size = opt.max_size;
  cfg.max_arity = opt.max_arity;
  cfg.max_denominator = opt.max_denominator;
  cfg.seed = opt.seed;
  cfg.trials = opt.trials;
  cfg.mode = opt.mode == "randomised" ? laws::CheckConfig::Mode::randomised
                                      : laws::CheckConfig::Mode::exhaustive;

  std::vector<laws::CheckReport> reports;
  if (opt.law.empty() || opt.law == "kleisli") reports.push_back(laws::check_kleisli_laws(cfg));
  if (opt.law.empty() || opt.law == "norm") reports.push_back(laws::check_norm_laws(cfg));
  if (opt.law.empty() || opt.law == "characterisation")
    reports.push_back(laws::check_characterisation(cfg));
  if (opt.law.empty() || opt.law == "n-naturality") reports.push_back(laws::check_n_naturality(cfg));
  if (opt.law.empty() || opt.law == "hyper-point") reports.push_back(laws::check_hyper_point(cfg));
  if (opt.law.empty() || opt.law == "distributive")
    reports.push_back(laws::check_distributive_law(cfg));
  if (opt.law.empty() || opt.law == "non-affine") reports.push_back(laws::check_non_affine());
  if (reports.empty()) throw DomainError("unknown law group '" + opt.law + "'");

  bool ok = true;
  if (opt.format == "json") {
    json all = json::array();
    for (const auto& r : reports) {
      all.push_back(report_to_json(r));
      ok = ok && laws::matches_expectation(r);
    }
    std::cout << all.dump(2) << "\n";
  } else {
    for (const auto& r : reports) {
      print_report(r);
      ok = ok && laws::matches_expectation(r);
    }
  }
  return ok ? kExitOk : kExitDomain;
}

int cmd_examples(const Options& opt) {
  std::vector<std::string> names =
      opt.only.empty() ? cli::fixture_names() : std::vector<std::string>{opt.only};
  std::size_t exact = 0;
  for (const auto& name : names) {
    cli::FixtureResult r = cli::run_fixture(name);
    for (const auto& line : r.lines) std::cout << "  " << line << "\n";
    if (r.exact) {
      std::cout << "ok " << r.name << "\n";
      ++exact;
    } else {
      std::cout << "MISMATCH " << r.name << ": " << r.mismatch << "\n";
    }
  }
  std::cout << exact << "/" << names.size() << " fixtures exact\n";
  return exact == names.size() ? kExitOk : kExitDomain;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact finite discrete probability: hyper normalisation, hyper conditioning, "
               "disintegration, channel denotation, and refinement checking"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--in", opt.in, "workspace file (JSON)");
    cmd->add_option("--format", opt.format, "output format: ket|json")
        ->check(CLI::IsMember({"ket", "json"}));
    return cmd;
  };

  auto* nrm_cmd = add_common(app.add_subcommand("nrm", "normalise a subdistribution"));
  nrm_cmd->add_option("--subdist", opt.subdist, "subdistribution name")->required();

  auto* hypernorm_cmd =
      add_common(app.add_subcommand("hypernorm", "hyper-normalise a tagged distribution"));
  hypernorm_cmd->add_option("--dist", opt.dist, "tagged distribution name")->required();

  auto* cond_cmd = add_common(app.add_subcommand("condition", "condition a state on a predicate"));
  cond_cmd->add_option("--dist", opt.dist, "state name")->required();
  cond_cmd->add_option("--predicate", opt.predicate, "predicate name")->required();

  auto* hypercond_cmd =
      add_common(app.add_subcommand("hypercond", "hyper-condition a state over a test"));
  hypercond_cmd->add_option("--dist", opt.dist, "state name")->required();
  hypercond_cmd->add_option("--test", opt.test_name, "test name")->required();

  auto* dis_cmd = add_common(
      app.add_subcommand("disintegrate", "split a tagged joint into conditional and marginal"));
  dis_cmd->add_option("--joint", opt.joint, "tagged joint distribution name")->required();

  auto* denote_cmd = add_common(app.add_subcommand("denote", "denotation of a channel at a state"));
  denote_cmd->add_option("--channel", opt.channel, "channel or test name")->required();
  denote_cmd->add_option("--dist", opt.dist, "state name")->required();

  auto* refine_cmd = add_common(
      app.add_subcommand("refine", "decide refinement between tests or hyper distributions"));
  refine_cmd->add_option("--from", opt.from, "finer test name");
  refine_cmd->add_option("--to", opt.to, "coarser test name");
  refine_cmd->add_option("--phi", opt.phi, "finer hyper distribution name");
  refine_cmd->add_option("--psi", opt.psi, "coarser hyper distribution name");

  auto* witness_cmd = add_common(
      app.add_subcommand("witness", "construct a refinement witness, or check a stored one"));
  witness_cmd->add_option("--dist", opt.dist, "state name (construction)");
  witness_cmd->add_option("--test", opt.test_name, "finer test name (construction)");
  witness_cmd->add_option("--post", opt.post, "postprocessor name (construction)");
  witness_cmd->add_option("--phi", opt.phi, "finer hyper distribution name (checking)");
  witness_cmd->add_option("--psi", opt.psi, "coarser hyper distribution name (checking)");
  witness_cmd->add_option("--witness", opt.witness_name, "witness name (checking)");

  auto* laws_cmd = add_common(app.add_subcommand("laws", "run the executable law suite"));
  laws_cmd->add_option("--law", opt.law,
                       "only this group: kleisli|norm|characterisation|n-naturality|"
                       "hyper-point|distributive|non-affine");
  laws_cmd->add_option("--max-size", opt.max_size, "largest sample-space size");
  laws_cmd->add_option("--max-arity", opt.max_arity, "largest copower arity");
  laws_cmd->add_option("--max-denominator", opt.max_denominator, "largest mass denominator");
  laws_cmd->add_option("--seed", opt.seed, "seed for randomised mode");
  laws_cmd->add_option("--trials", opt.trials, "trials per law in randomised mode");
  laws_cmd->add_option("--mode", opt.mode, "exhaustive|randomised")
      ->check(CLI::IsMember({"exhaustive", "randomised"}));
  laws_cmd->add_option("--replay", opt.replay, "replay a stored counterexample document");

  auto* ex_cmd = add_common(app.add_subcommand("examples", "replay the built-in worked examples"));
  ex_cmd->add_flag("--all", opt.all, "run every fixture");
  ex_cmd->add_option("--only", opt.only, "run a single fixture by name");

  CLI11_PARSE(app, argc, argv);

  try {
    if (nrm_cmd->parsed()) return cmd_nrm(opt);
    if (hypernorm_cmd->parsed()) return cmd_hypernorm(opt);
    if (cond_cmd->parsed()) return cmd_condition(opt);
    if (hypercond_cmd->parsed()) return cmd_hypercond(opt);
    if (dis_cmd->parsed()) return cmd_disintegrate(opt);
    if (denote_cmd->parsed()) return cmd_denote(opt);
    if (refine_cmd->parsed()) return cmd_refine(opt);
    if (witness_cmd->parsed()) return cmd_witness(opt);
    if (laws_cmd->parsed()) return cmd_laws(opt);
    if (ex_cmd->parsed()) return cmd_examples(opt);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomain;
  }
  return kExitOk;
}
