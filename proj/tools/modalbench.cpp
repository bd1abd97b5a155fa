// modalbench: command-line front end for finite Kripke-frame and complex
// algebra checks.
//
// Exit codes: 0 confirmed/valid, 1 countermodel/falsified, 2 input error,
// 3 cap refusal or inconclusive search.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "modal/algebra.hpp"
#include "modal/chains.hpp"
#include "modal/consequence.hpp"
#include "modal/diagnostics.hpp"
#include "modal/error.hpp"
#include "modal/json_io.hpp"
#include "modal/syntax.hpp"

namespace {

using namespace modal;

constexpr int kConfirmed = 0;
constexpr int kFalsified = 1;
constexpr int kInputError = 2;
constexpr int kRefused = 3;

std::vector<std::size_t> parse_index_list(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t pos = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(item, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != item.size()) throw InputError("expected a comma-separated list of indices, got '" + text + "'");
    out.push_back(static_cast<std::size_t>(v));
  }
  return out;
}

Json read_json_arg(const std::string& arg) {
  std::string text = arg;
  if (arg.empty() || (arg.front() != '{' && arg.front() != '[')) {
    std::ifstream in(arg);
    if (!in) throw InputError("cannot open '" + arg + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(std::string("invalid JSON: ") + e.what());
  }
}

/// chain:N, chain:N:refl=i,j,..., or a frame JSON file.
Frame parse_frame_spec(const std::string& spec) {
  const std::string prefix = "chain:";
  if (spec.rfind(prefix, 0) == 0) {
    std::string rest = spec.substr(prefix.size());
    std::string size_text = rest;
    std::vector<std::size_t> refl;
    if (auto colon = rest.find(':'); colon != std::string::npos) {
      size_text = rest.substr(0, colon);
      std::string opt = rest.substr(colon + 1);
      if (opt.rfind("refl=", 0) != 0) throw InputError("bad chain option '" + opt + "'");
      refl = parse_index_list(opt.substr(5));
    }
    auto sizes = parse_index_list(size_text);
    if (sizes.size() != 1) throw InputError("bad chain size in '" + spec + "'");
    if (sizes[0] > kDefaultMaxWorlds) throw InputError("chain exceeds the world limit");
    return make_chain(sizes[0], refl);
  }
  return frame_from_json(read_json_arg(spec));
}

std::string set_text(const WorldSet& s) {
  std::string out = "{";
  bool first = true;
  s.for_each([&](std::size_t w) {
    if (!first) out += ",";
    out += std::to_string(w);
    first = false;
  });
  return out + "}";
}

std::string valuation_text(const Valuation& v) {
  std::string out;
  for (const auto& [name, set] : v.entries()) {
    if (!out.empty()) out += " ";
    out += name + "=" + set_text(set);
  }
  return out;
}

struct Globals {
  bool json = false;
  unsigned threads = 1;
};

void emit(const Globals& g, const Json& j, const std::string& text) {
  if (g.json) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << text;
  }
}

std::string lemma_table(const LemmaCertificate& c) {
  std::ostringstream os;
  os << "Chain of " << c.chain.size << " points, reflexive: " << set_text(WorldSet::from_indices(c.chain.size, c.chain.reflexive_points)) << "\n";
  os << "world  labels ";
  for (std::size_t l = 0; l < c.iterates.size(); ++l) os << " t^" << l;
  os << "\n";
  for (std::size_t w = 0; w < c.chain.size; ++w) {
    std::string labels;
    for (const auto& [name, set] : c.valuation.entries()) {
      if (set.contains(w)) labels += (labels.empty() ? "" : ",") + name;
    }
    os << std::string(5 - std::min<std::size_t>(5, std::to_string(w).size()), ' ') << w << "  "
       << labels << std::string(labels.size() < 7 ? 7 - labels.size() : 1, ' ');
    for (std::size_t l = 0; l < c.iterates.size(); ++l) {
      std::string cell = c.iterates[l].contains(w) ? "+" : "-";
      os << std::string(std::to_string(l).size() + 3 - 1, ' ') << cell;
    }
    os << "\n";
  }
  os << "0 falsifies t^" << c.n << ": " << (c.fails_at_zero ? "yes" : "no") << "\n";
  os << "t^" << c.n + 1 << " holds everywhere: " << (c.global_next ? "yes" : "no") << "\n";
  for (const auto& [m, holds] : c.s_global) os << "s_" << m << " global: " << (holds ? "yes" : "no") << "\n";
  for (const auto& [l, set] : c.claim_table) os << "even points falsifying t^" << l << ": " << set_text(set) << "\n";
  os << "certificate: " << (c.valid() ? "VALID" : "INVALID") << "\n";
  return os.str();
}

int report_validity(const Globals& g, const ValidityReport& r) {
  std::ostringstream os;
  os << "verdict: " << to_string(r.verdict) << (r.exhaustive ? "" : " (sampled)") << "\n";
  os << "valuations tried: " << r.valuations_tried << "\n";
  if (r.countermodel) {
    os << "countermodel: " << valuation_text(*r.countermodel) << "\n";
    os << "fails at world: " << *r.failing_world << "\n";
  }
  emit(g, to_json(r), os.str());
  switch (r.verdict) {
    case Verdict::Valid:
      return kConfirmed;
    case Verdict::Countermodel:
      return kFalsified;
    case Verdict::Unknown:
      return kRefused;
  }
  return kRefused;
}

}  // namespace

int main(int argc, char** argv) {
  set_warning_handler([](std::string_view msg) { std::cerr << "warning: " << msg << "\n"; });

  CLI::App app{"Finite Kripke frame and complex algebra workbench"};
  app.require_subcommand(1);
  Globals g;
  app.add_flag("--json", g.json, "Emit JSON on stdout");
  app.add_option("--threads", g.threads, "Worker threads for exhaustive searches")->check(CLI::Range(1u, 256u));

  std::string frame_spec, val_arg, formula, stmt, vars_arg, term_arg, pivot_arg = "x", base_arg, problem_arg,
      conclusion_arg, refl_arg;
  std::vector<std::string> frame_specs, premises;
  std::size_t n = 0, max_n = 0, cap = kDefaultExhaustionCapBits, chains_n = 0;
  bool sample = false, all_refl = false, have_chains = false;
  std::uint64_t samples = std::uint64_t{1} << 14, seed = SearchOptions{}.seed;

  auto* eval_cmd = app.add_subcommand("eval", "Evaluate a formula in a model");
  eval_cmd->add_option("--frame", frame_spec, "chain:N[:refl=i,..] or frame JSON file")->required();
  eval_cmd->add_option("--val", val_arg, "Valuation JSON (inline or file)");
  eval_cmd->add_option("--formula", formula, "Formula")->required();

  auto* valid_cmd = app.add_subcommand("check-valid", "Check validity of a statement on a frame");
  valid_cmd->add_option("--frame", frame_spec)->required();
  valid_cmd->add_option("--stmt", stmt, "Statement: phi = psi or phi <= psi")->required();
  valid_cmd->add_option("--vars", vars_arg, "Comma-separated variables to enumerate");
  valid_cmd->add_option("--cap", cap, "Exhaustion cap in valuation bits");
  valid_cmd->add_flag("--sample", sample, "Sample past the cap (never reports valid)");
  valid_cmd->add_option("--samples", samples, "Sampled batches of 64 valuations");
  valid_cmd->add_option("--seed", seed, "Sampling seed");

  auto* lemma_cmd = app.add_subcommand("lemma", "Certify t^(n+1) !<= t^n on a (2n+1)-chain");
  lemma_cmd->add_option("--n", n)->required();
  lemma_cmd->add_option("--refl", refl_arg, "Reflexive points, comma-separated");
  lemma_cmd->add_flag("--all-refl", all_refl, "Check every reflexive subset");

  auto* chains_cmd = app.add_subcommand("chains", "List all chains on n points");
  chains_cmd->add_option("--n", n)->required();
  chains_cmd->add_option("--cap", cap, "Largest n to enumerate")->default_val(kDefaultChainEnumerationCap);

  auto* trans_cmd = app.add_subcommand("transitivity", "Least n with Q^(n+1) in Q^n");
  trans_cmd->add_option("--frame", frame_spec)->required();
  trans_cmd->add_option("--max", max_n)->required();

  auto* fix_cmd = app.add_subcommand("fixpoint", "Iterate a monotone increasing term to a fixpoint");
  fix_cmd->add_option("--frame", frame_spec)->required();
  fix_cmd->add_option("--term", term_arg)->required();
  fix_cmd->add_option("--pivot", pivot_arg, "Iterated variable")->default_val("x");
  fix_cmd->add_option("--base", base_arg, "Starting set, comma-separated worlds")->default_val("");
  fix_cmd->add_option("--val", val_arg, "Parameter valuation JSON");
  fix_cmd->add_option("--cap", cap, "Exhaustion cap for the monotonicity check");

  auto* cons_cmd = app.add_subcommand("consequence", "Search finite frames for a countermodel to a consequence");
  cons_cmd->add_option("--problem", problem_arg, "Problem JSON (inline or file)");
  cons_cmd->add_option("--frame", frame_specs, "Frame (repeatable)");
  cons_cmd->add_option("--premise", premises, "Premise statement (repeatable)");
  cons_cmd->add_option("--conclusion", conclusion_arg, "Conclusion statement");
  cons_cmd->add_option("--cap", cap, "Exhaustion cap in valuation bits");

  auto* stab_cmd = app.add_subcommand("stabilize", "Least n with t^n = t^(n+1) valid on all frames");
  stab_cmd->add_option("--frame", frame_specs, "Frame (repeatable)");
  auto* chains_opt = stab_cmd->add_option("--chains", chains_n, "Use every chain on N points");
  stab_cmd->add_option("--term", term_arg)->required();
  stab_cmd->add_option("--pivot", pivot_arg)->default_val("x");
  stab_cmd->add_option("--max", max_n)->required();
  stab_cmd->add_option("--cap", cap, "Exhaustion cap in valuation bits");
  stab_cmd->add_flag("--sample", sample, "Refute by sampling past the cap");
  stab_cmd->add_option("--samples", samples, "Sampled batches of 64 valuations");
  stab_cmd->add_option("--seed", seed, "Sampling seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }
  have_chains = chains_opt->count() > 0;

  TermStore store;
  auto macros = default_macros();
  SearchOptions opts;
  opts.cap_bits = cap;
  opts.allow_sampling = sample;
  opts.sample_batches = samples;
  opts.seed = seed;
  opts.threads = g.threads;

  try {
    if (*eval_cmd) {
      Frame frame = parse_frame_spec(frame_spec);
      Valuation v = val_arg.empty() ? Valuation() : valuation_from_json(read_json_arg(val_arg), frame.world_count());
      Term t = parse_formula(store, formula, macros);
      WorldSet s = eval(store, Model(frame, v), t);
      emit(g, {{"worlds", to_json(s)}}, set_text(s) + "\n");
      return kConfirmed;
    }

    if (*valid_cmd) {
      Frame frame = parse_frame_spec(frame_spec);
      Statement s = parse_statement(store, stmt, macros);
      std::vector<Term> vars;
      if (vars_arg.empty()) {
        vars = variables(store, s);
      } else {
        std::stringstream ss(vars_arg);
        std::string name;
        while (std::getline(ss, name, ',')) {
          if (!name.empty()) vars.push_back(parse_formula(store, name));
          if (!store.is_var(vars.back())) throw InputError("--vars expects variable names");
        }
      }
      return report_validity(g, check_validity(store, frame, s, vars, opts));
    }

    if (*lemma_cmd) {
      if (all_refl) {
        std::size_t size = 2 * n + 1;
        if (size > 20) throw CapExceeded("--all-refl is limited to chains of at most 20 points");
        std::size_t valid = 0, total = 0;
        Json failures = Json::array();
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << size); ++mask) {
          auto cert = check_lemma(store, n, points_of_mask(size, mask));
          ++total;
          if (cert.valid()) {
            ++valid;
          } else {
            failures.push_back(to_json(cert));
          }
        }
        std::ostringstream os;
        os << valid << " of " << total << " chains of " << size << " points give a valid certificate\n";
        emit(g, {{"n", n}, {"chains", total}, {"valid", valid}, {"failures", failures}}, os.str());
        return valid == total ? kConfirmed : kFalsified;
      }
      auto cert = check_lemma(store, n, parse_index_list(refl_arg));
      emit(g, to_json(cert), lemma_table(cert));
      return cert.valid() ? kConfirmed : kFalsified;
    }

    if (*chains_cmd) {
      auto frames = enumerate_chains(n, cap);
      Json arr = Json::array();
      std::ostringstream os;
      for (std::size_t i = 0; i < frames.size(); ++i) {
        arr.push_back(to_json(frames[i]));
        os << "#" << i << " reflexive " << set_text(WorldSet::from_indices(n, points_of_mask(n, i))) << ": "
           << to_json(frames[i]).dump() << "\n";
      }
      emit(g, arr, os.str());
      return kConfirmed;
    }

    if (*trans_cmd) {
      Frame frame = parse_frame_spec(frame_spec);
      auto d = transitivity_degree(frame, max_n);
      Json j = {{"degree", d ? Json(*d) : Json(nullptr)}, {"max", max_n}};
      emit(g, j, (d ? std::to_string(*d) : std::string("not found")) + "\n");
      return d ? kConfirmed : kFalsified;
    }

    if (*fix_cmd) {
      Frame frame = parse_frame_spec(frame_spec);
      Term t = parse_formula(store, term_arg, macros);
      Term pivot = parse_formula(store, pivot_arg);
      if (!store.is_var(pivot)) throw InputError("--pivot must be a variable");
      Valuation params = val_arg.empty() ? Valuation() : valuation_from_json(read_json_arg(val_arg), frame.world_count());
      WorldSet base = WorldSet::from_indices(frame.world_count(), parse_index_list(base_arg));
      try {
        auto r = fixpoint_index(store, frame, t, pivot, base, params, opts);
        std::ostringstream os;
        os << "index: " << r.index << "\nfixpoint: " << set_text(r.fixpoint) << "\norbit:";
        for (const auto& s : r.orbit) os << " " << set_text(s);
        os << "\n";
        emit(g, to_json(r), os.str());
        return kConfirmed;
      } catch (const PreconditionError& e) {
        emit(g, {{"error", "precondition"}, {"message", e.what()}}, std::string(e.what()) + "\n");
        return kFalsified;
      }
    }

    if (*cons_cmd) {
      ConsequenceProblem p;
      if (!problem_arg.empty()) {
        p = problem_from_json(store, read_json_arg(problem_arg));
        if (cons_cmd->count("--cap")) p.options.cap_bits = cap;
      } else {
        if (conclusion_arg.empty()) throw InputError("--conclusion or --problem is required");
        for (const auto& s : premises) p.premises.push_back(parse_statement(store, s, macros));
        p.conclusion = parse_statement(store, conclusion_arg, macros);
        p.options.cap_bits = cap;
      }
      for (const auto& f : frame_specs) p.frames.push_back(parse_frame_spec(f));
      p.options.threads = g.threads;
      auto r = check_consequence(store, p);
      std::ostringstream os;
      if (r.holds) {
        os << "holds on the " << p.frames.size() << " supplied frame(s) (not a claim about all frames)\n";
      } else {
        os << "countermodel on frame #" << r.countermodel->frame_index << ": "
           << valuation_text(r.countermodel->valuation) << "\nconclusion fails at world "
           << r.countermodel->failing_world << "\n";
      }
      os << "pairs tried: " << r.pairs_tried << "\n";
      emit(g, to_json(r), os.str());
      return r.holds ? kConfirmed : kFalsified;
    }

    if (*stab_cmd) {
      std::vector<Frame> frames;
      for (const auto& f : frame_specs) frames.push_back(parse_frame_spec(f));
      if (have_chains) {
        auto cs = enumerate_chains(chains_n);
        frames.insert(frames.end(), cs.begin(), cs.end());
      }
      Term t = parse_formula(store, term_arg, macros);
      Term pivot = parse_formula(store, pivot_arg);
      if (!store.is_var(pivot)) throw InputError("--pivot must be a variable");
      auto r = uniform_stabilization(store, frames, t, pivot, max_n, opts);
      std::ostringstream os;
      for (const auto& ref : r.refutations) {
        os << "t^" << ref.k << " != t^" << ref.k + 1 << " on frame #" << ref.frame_index << " under "
           << valuation_text(ref.valuation) << " (world " << ref.failing_world << ")\n";
      }
      switch (r.status) {
        case StabilizationResult::Status::Found:
          os << "stabilizes at n = " << r.n << "\n";
          break;
        case StabilizationResult::Status::NotFound:
          os << "no n <= " << max_n << " stabilizes\n";
          break;
        case StabilizationResult::Status::Inconclusive:
          os << "inconclusive at n = " << r.n << " (sampled frames did not refute it)\n";
          break;
      }
      emit(g, to_json(r), os.str());
      switch (r.status) {
        case StabilizationResult::Status::Found:
          return kConfirmed;
        case StabilizationResult::Status::NotFound:
          return kFalsified;
        case StabilizationResult::Status::Inconclusive:
          return kRefused;
      }
    }
  } catch (const CapExceeded& e) {
    std::cerr << "refused: " << e.what() << "\n";
    if (g.json) std::cout << Json{{"error", "cap_exceeded"}, {"message", e.what()}}.dump(2) << "\n";
    return kRefused;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    if (g.json) std::cout << Json{{"error", "input"}, {"message", e.what()}}.dump(2) << "\n";
    return kInputError;
  }
  return kInputError;
}
