#include <fstream>
#include <iostream>
#include <set>

#include "CLI11.hpp"
#include "commands.hpp"
#include "lefschetz/gf2.hpp"
#include "lefschetz/gfp.hpp"

#ifndef LEFSCHETZ_CORPUS_DIR
#define LEFSCHETZ_CORPUS_DIR "corpus"
#endif

using namespace lefschetz;
using namespace lefschetz::cli;

namespace {

enum Exit { kPass = 0, kFail = 1, kUsage = 2, kExhausted = 3 };

const std::set<std::string> kIdentities{"parseval", "parseval-p", "differential", "euler", "balancing", "dichotomy"};
const std::set<std::string> kProperties{"anisotropy", "lefschetz", "level", "pyramid", "partition", "hstar-inequalities"};
const std::set<std::string> kCharTwoOnly{"parseval", "differential", "dichotomy"};

template <FiniteField F>
Json report(const RunConfig& cfg, const std::vector<Input>& inputs) {
  Json out;
  out["command"] = cfg.command;
  Json c;
  c["char"] = cfg.characteristic;
  c["field_bits"] = cfg.field_bits;
  c["field"] = F::modulus();
  c["seed"] = cfg.seed;
  c["trials"] = cfg.trials;
  if (cfg.command == "verify") c["identity"] = cfg.selector;
  if (cfg.command == "check") c["property"] = cfg.selector;
  c["expect_fail"] = cfg.expect_fail;
  out["config"] = c;
  Json names = Json::array();
  for (const auto& in : inputs) names.push_back(in.name);
  out["inputs"] = names;
  out["results"] = run_command<F>(cfg, inputs);
  bool pass = true;
  for (const auto& r : out["results"]) pass &= r.value("pass", true);
  out["pass"] = pass;
  return out;
}

// GF(2^K) for p = 2; GF(p^{K/2}) for odd p.
Json dispatch(const RunConfig& cfg, const std::vector<Input>& inputs) {
  switch (cfg.characteristic * 1000 + cfg.field_bits) {
    case 2032: return report<GF2_32>(cfg, inputs);
    case 2064: return report<GF2_64>(cfg, inputs);
    case 2128: return report<GF2_128>(cfg, inputs);
    case 3032: return report<GFp<3, 16>>(cfg, inputs);
    case 3064: return report<GFp<3, 32>>(cfg, inputs);
    case 3128: return report<GFp<3, 64>>(cfg, inputs);
    case 5032: return report<GFp<5, 16>>(cfg, inputs);
    case 5064: return report<GFp<5, 32>>(cfg, inputs);
    case 5128: return report<GFp<5, 64>>(cfg, inputs);
  }
  throw InputError("unsupported field");
}

std::vector<Input> load_inputs(const RunConfig& cfg) {
  std::vector<Input> out;
  if (!cfg.inputs.empty()) {
    for (const auto& a : cfg.inputs) out.push_back(load_input(resolve_input(a, cfg.corpus_dir)));
    return out;
  }
  for (const auto& p : corpus_files(cfg.corpus_dir)) {
    auto in = load_input(p);
    // hstar is defined for polytopes only; the corpus also holds complexes.
    if (cfg.command == "hstar" && !in.polytope) continue;
    out.push_back(std::move(in));
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Semigroup algebras of lattice polytopes: h*, volume maps, identities and Lefschetz checks"};
  app.require_subcommand(1);
  RunConfig cfg;
  cfg.corpus_dir = LEFSCHETZ_CORPUS_DIR;

  auto common = [&](CLI::App* sub) {
    sub->add_option("inputs", cfg.inputs, "Polytope or complex JSON files, or corpus fixture names (default: whole corpus)");
    sub->add_option("--char", cfg.characteristic, "Field characteristic")->check(CLI::IsMember({2u, 3u, 5u}));
    sub->add_option("--field-bits", cfg.field_bits, "Field size in bits; odd p uses GF(p^{K/2})")->check(CLI::IsMember({32u, 64u, 128u}));
    sub->add_option("--seed", cfg.seed, "Base seed");
    sub->add_option("--trials", cfg.trials, "Seeds or random trials per instance")->check(CLI::PositiveNumber);
    sub->add_option("--json-out", cfg.json_out, "Write the report here instead of stdout");
    sub->add_option("--corpus", cfg.corpus_dir, "Directory of corpus fixtures");
    sub->add_flag("--expect-fail", cfg.expect_fail, "Instances are expected to fail");
  };
  auto* analyze = app.add_subcommand("analyze", "dimensions, h*, IDP, reflexivity and the inequality ladder");
  auto* hs = app.add_subcommand("hstar", "Ehrhart counts, polynomial, h* and a-polynomial");
  auto* volume = app.add_subcommand("volume", "normalized volume map as hex field elements");
  auto* verify = app.add_subcommand("verify", "check identities on random specializations");
  auto* check = app.add_subcommand("check", "check Lefschetz-type properties");
  for (auto* s : {analyze, hs, volume, verify, check}) common(s);
  verify->add_option("--identity", cfg.selector, "parseval | parseval-p | differential | euler | balancing | dichotomy")->required();
  check->add_option("--property", cfg.selector, "anisotropy | lefschetz | level | pyramid | partition | hstar-inequalities")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kPass : kUsage;
  }
  cfg.command = app.get_subcommands().front()->get_name();

  try {
    if (cfg.command == "verify" && !kIdentities.count(cfg.selector)) throw InputError("unknown identity '" + cfg.selector + "'");
    if (cfg.command == "check" && !kProperties.count(cfg.selector)) throw InputError("unknown property '" + cfg.selector + "'");
    if (cfg.command == "verify" && kCharTwoOnly.count(cfg.selector) && cfg.characteristic != 2)
      throw InputError(cfg.selector + " needs --char 2");
    const auto inputs = load_inputs(cfg);
    if (inputs.empty()) throw InputError("no inputs");
    const Json out = dispatch(cfg, inputs);
    const std::string text = out.dump(2) + "\n";
    if (cfg.json_out.empty()) {
      std::cout << text;
    } else {
      std::ofstream f(cfg.json_out, std::ios::binary);
      if (!f) throw InputError(cfg.json_out + ": cannot write");
      f << text;
    }
    return out["pass"].get<bool>() ? kPass : kFail;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const Exhausted& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExhausted;
  } catch (const SpecializationFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExhausted;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFail;
  }
}
