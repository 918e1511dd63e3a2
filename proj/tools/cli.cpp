// Copyright 2026 The prefcheck Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <vector>

#include "CLI11.hpp"
#include "prefcheck/conditions.hpp"
#include "prefcheck/construction.hpp"
#include "prefcheck/error.hpp"
#include "prefcheck/io.hpp"
#include "prefcheck/logic.hpp"
#include "prefcheck/plausibility.hpp"
#include "prefcheck/search.hpp"

namespace prefcheck::cli {

namespace {

using io::Json;

[[noreturn]] void usage(const std::string& msg) { throw Error(ErrorCode::kInvalidInput, msg); }

std::uint64_t env_value(const char* name, std::uint64_t fallback) {
  const char* raw = std::getenv(name);
  if (raw == nullptr || *raw == '\0') return fallback;
  const std::string_view text(raw);
  std::uint64_t v = 0;
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || end != text.data() + text.size() || v == 0) {
    usage(std::string(name) + " must be a positive integer, got '" + raw + "'");
  }
  return v;
}

struct Options {
  std::string out_path;
  bool timings = false;
  std::optional<unsigned> threads;

  std::uint32_t kappa = 0;
  bool transitive = false;
  bool three_element = false;
  std::uint32_t alpha = 1;
  std::optional<std::uint32_t> kappa_max;
  std::optional<std::uint32_t> alpha_max;
  std::optional<std::size_t> ground_max;

  std::string structure;
  std::string axioms;
  std::vector<std::string> sets;
  std::vector<std::string> conditions;
  std::vector<std::string> ops;
  bool close = false;

  std::size_t vars = kDefaultVariables;
  std::string rule = "all";

  std::vector<std::string> queries;
  std::string atoms;
  bool no_clm = false;
  bool countermodel = false;
  std::size_t max_models = 3;
  bool allow_reflexive = false;
  bool non_smooth = false;

  std::string row;
  std::string catalog;
  std::size_t size = 3;
  bool no_prune = false;
  bool symmetry = false;
  std::uint64_t max_space = kDefaultMaxSpace;
};

class Runner {
 public:
  Runner(const Options& o, const Guards& g, std::ostream& out, std::ostream& err)
      : o_(o), g_(g), out_(out), err_(err) {}

  int construct();
  int verify();
  int mu();
  int check();
  int closure();
  int logic_check();
  int plausi_close();
  int plausi_model_check();
  int search_implication();

 private:
  unsigned threads() const { return o_.threads.value_or(g_.threads); }
  CheckOptions check_opts() const { return CheckOptions{threads()}; }

  void emit(const Json& j) const {
    const std::string text = io::dump(j);
    if (o_.out_path.empty()) {
      out_ << text;
      return;
    }
    std::ofstream f(o_.out_path, std::ios::binary);
    if (!f) usage("cannot write '" + o_.out_path + "'");
    f << text;
  }

  CumExampleInstance example() const {
    auto inst = build_cum_example(o_.kappa, o_.kappa_max.value_or(g_.kappa_max));
    return o_.transitive ? transitively_closed(inst) : inst;
  }

  const Options& o_;
  const Guards& g_;
  std::ostream& out_;
  std::ostream& err_;
};

std::vector<std::string> split_list(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : text) {
    if (ch == ',' || ch == ' ' || ch == '{' || ch == '}') {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) usage("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

int Runner::construct() {
  auto inst = example();
  io::Json j = io::family_json(inst.closed_family, &inst.choice);
  j["kappa"] = inst.kappa;
  io::add_structure_json(j, inst.structure);
  Json gens = Json::object();
  for (std::size_t i = 0; i < inst.generators.size(); ++i) {
    gens[inst.generators.name(i)] = io::subset_json(inst.choice.ground(), inst.generators.set(i));
  }
  j["generators"] = std::move(gens);
  emit(j);
  err_ << "kappa " << inst.kappa << ": " << inst.choice.ground().size() << " elements, "
       << inst.closed_family.size() << " family members\n";
  return 0;
}

int Runner::verify() {
  if (o_.three_element) {
    auto ex = build_three_element_example(o_.alpha);
    auto rep = verify_three_element_example(ex, o_.alpha, check_opts());
    emit(io::three_element_json(ex, rep));
    for (const auto& c : rep.claims) {
      err_ << "(" << c.id << ") " << (c.confirmed ? "confirmed" : "NOT confirmed") << ": "
           << c.statement << (c.detail.empty() ? "" : " [" + c.detail + "]") << "\n";
    }
    return rep.all_confirmed() ? 0 : 1;
  }
  auto inst = example();
  auto rep = verify_cum_example(inst, check_opts());
  emit(io::cum_example_json(inst, rep));
  for (const auto& c : rep.claims) {
    err_ << "(" << c.id << ") " << (c.confirmed ? "confirmed" : "NOT confirmed") << ": "
         << c.statement << (c.detail.empty() ? "" : " [" + c.detail + "]") << "\n";
  }
  return rep.all_confirmed() ? 0 : 1;
}

int Runner::mu() {
  const io::Document doc = io::read_document(o_.structure);
  if (!doc.structure) usage("'" + o_.structure + "' has no relation");
  const GroundSet& g = *doc.ground;
  if (o_.sets.empty()) {
    const SetFamily fam = io::family_or_powerset(doc);
    const ChoiceFunction f = induced_choice(*doc.structure, fam);
    Json j = io::family_json(fam, &f);
    const auto smooth = is_smooth(*doc.structure, fam);
    j["smooth"] = smooth.smooth;
    if (!smooth.smooth) j["not_smooth_on"] = io::subset_json(g, smooth.set);
    emit(j);
    err_ << fam.size() << " sets, " << (smooth.smooth ? "smooth" : "not smooth") << "\n";
    return 0;
  }
  Json results = Json::array();
  for (const auto& text : o_.sets) {
    const Subset x = g.subset_of(split_list(text));
    const Subset m = prefcheck::mu(*doc.structure, x);
    results.push_back({{"set", io::subset_json(g, x)},
                       {"mu", io::subset_json(g, m)},
                       {"smooth", is_smooth_for(*doc.structure, x)}});
    err_ << "mu(" << g.format(x) << ") = " << g.format(m) << "\n";
  }
  emit({{"format", io::kFormatVersion}, {"results", std::move(results)}});
  return 0;
}

int Runner::check() {
  const io::Document doc = io::read_document(o_.structure);
  const ChoiceFunction f = io::choice_of(doc);
  const std::uint32_t alpha_max = o_.alpha_max.value_or(g_.alpha_max);
  std::vector<ConditionReport> reports;
  if (o_.conditions.empty()) {
    reports = check_all(f, alpha_max, check_opts());
  } else {
    for (const auto& name : o_.conditions) {
      auto id = ConditionId::parse(name);
      if (!id) usage("unknown condition '" + name + "'");
      if (id->alpha() && *id->alpha() > alpha_max) {
        throw Error(ErrorCode::kKappaOutOfRange,
                    "alpha " + std::to_string(*id->alpha()) + " exceeds the guard " +
                        std::to_string(alpha_max));
      }
      reports.push_back(prefcheck::check(f, *id, check_opts()));
    }
  }
  Json arr = Json::array();
  for (const auto& r : reports) {
    arr.push_back(io::condition_report_json(f.ground(), r));
    err_ << r.condition.display() << ": " << (r.holds ? "holds" : "fails") << "\n";
  }
  emit({{"format", io::kFormatVersion}, {"reports", std::move(arr)}});
  return 0;
}

int Runner::closure() {
  const io::Document doc = io::read_document(o_.structure);
  if (!doc.family) usage("'" + o_.structure + "' has no family");
  if (o_.close) {
    const SetFamily closed = close_under_intersections(*doc.family);
    emit(io::family_json(closed));
    err_ << doc.family->size() << " -> " << closed.size() << " members\n";
    return 0;
  }
  std::vector<ClosureOp> ops;
  if (o_.ops.empty()) {
    ops = {ClosureOp::kIntersection, ClosureOp::kUnion, ClosureOp::kDifference,
           ClosureOp::kComplement};
  }
  for (const auto& name : o_.ops) {
    auto op = parse_closure_op(name);
    if (!op) usage("unknown closure operation '" + name + "'");
    ops.push_back(*op);
  }
  const GroundSet& g = *doc.ground;
  Json arr = Json::array();
  for (ClosureOp op : ops) {
    auto v = is_closed_under(*doc.family, op);
    Json r = {{"op", closure_op_name(op)}, {"closed", v.closed}};
    if (!v.closed) {
      r["left"] = io::subset_json(g, v.left);
      r["right"] = io::subset_json(g, v.right);
      r["missing"] = io::subset_json(g, v.missing);
    }
    arr.push_back(std::move(r));
    err_ << closure_op_name(op) << ": " << (v.closed ? "closed" : "not closed") << "\n";
  }
  emit({{"format", io::kFormatVersion}, {"closures", std::move(arr)}});
  return 0;
}

int Runner::logic_check() {
  const PropLanguage lang = PropLanguage::standard(o_.vars);
  const io::Document doc = io::read_document(o_.structure);
  const ConsequenceOp op(lang, io::choice_over_models(lang, io::choice_of(doc)));
  std::vector<LogicRule> rules;
  if (o_.rule == "all") {
    auto all = all_logic_rules();
    rules.assign(all.begin(), all.end());
  } else {
    auto r = parse_logic_rule(o_.rule);
    if (!r) usage("unknown rule '" + o_.rule + "'");
    rules.push_back(*r);
  }
  Json arr = Json::array();
  for (LogicRule rule : rules) {
    const LogicReport rep = check_logical_rule(op, rule, check_opts());
    std::optional<ConditionReport> paired;
    if (auto tag = paired_condition(rule)) paired = prefcheck::check(op.choice(), ConditionId(*tag), check_opts());
    arr.push_back(io::logic_report_json(lang, rep, paired ? &*paired : nullptr));
    err_ << logic_rule_name(rule) << ": " << (rep.holds ? "holds" : "fails") << "\n";
  }
  emit({{"format", io::kFormatVersion}, {"variables", o_.vars}, {"reports", std::move(arr)}});
  return 0;
}

AxiomFile load_axioms(const Options& o) {
  std::optional<std::vector<std::string>> declared;
  if (!o.atoms.empty()) declared = split_list(o.atoms);
  return parse_axioms(read_text(o.axioms), declared);
}

int Runner::plausi_close() {
  const AxiomFile ax = load_axioms(o_);
  SaturationOptions sopts;
  sopts.cautious_left_monotony = !o_.no_clm;
  const Saturation sat = saturate(ax.language, ax.axioms, sopts);
  Json arr = Json::array();
  for (const auto& text : o_.queries) {
    const Sequent q = parse_sequent(ax.language, text);
    const bool derivable = sat.table.derivable(q);
    Json r = {{"query", format_sequent(ax.language, q)},
              {"derivable", derivable},
              {"verdict", derivable ? "derivable" : "not derivable"}};
    if (!derivable && o_.countermodel) {
      CountermodelQuery cq{o_.max_models, o_.allow_reflexive, !o_.non_smooth};
      const CountermodelSearch s = find_countermodel(ax.language, ax.axioms, q, cq);
      r["structures_examined"] = s.structures;
      if (s.countermodel) r["countermodel"] = io::to_json(io::pl_document(*s.countermodel));
      else r["countermodel"] = nullptr;
    }
    arr.push_back(std::move(r));
    err_ << text << ": " << (derivable ? "derivable" : "not derivable") << "\n";
  }
  emit({{"format", io::kFormatVersion},
        {"atoms", ax.language.atoms()},
        {"axioms", ax.axioms.size()},
        {"rounds", sat.rounds},
        {"sequents", sat.table.count()},
        {"queries", std::move(arr)}});
  return 0;
}

int Runner::plausi_model_check() {
  const AxiomFile ax = load_axioms(o_);
  const PlModelStructure s = io::pl_structure_of(io::read_document(o_.structure), ax.language);
  const bool smooth = pl_smooth(s);
  Json axioms = Json::array();
  bool all_hold = true;
  for (const Sequent& q : ax.axioms) {
    const bool h = semantic_holds(s, q);
    all_hold = all_hold && h;
    axioms.push_back({{"sequent", format_sequent(ax.language, q)}, {"holds", h}});
  }
  Json j = {{"format", io::kFormatVersion}, {"smooth", smooth}, {"axioms", std::move(axioms)}};
  if (!all_hold) {
    j["sound"] = nullptr;
    emit(j);
    err_ << "the structure does not validate every axiom\n";
    return 1;
  }
  // (PlCLM) is only sound on smooth structures.
  SaturationOptions sopts;
  sopts.cautious_left_monotony = smooth;
  const Saturation sat = saturate(ax.language, ax.axioms, sopts);
  const SoundnessVerdict v = soundness_check(s, ax.axioms, sat.table);
  j["rules"] = smooth ? "PlI PlRM PlCLM PlCC" : "PlI PlRM PlCC";
  j["sound"] = v.sound;
  if (v.witness) j["witness"] = format_sequent(ax.language, *v.witness);
  emit(j);
  err_ << (smooth ? "smooth" : "not smooth") << ", " << (v.sound ? "sound" : "NOT sound") << "\n";
  return v.sound ? 0 : 1;
}

int Runner::search_implication() {
  const std::size_t ground_max = o_.ground_max.value_or(g_.ground_max);
  if (o_.size < 1 || o_.size > ground_max) {
    usage("--size must lie in 1.." + std::to_string(ground_max));
  }
  std::vector<ImplicationQuery> catalog;
  if (!o_.catalog.empty()) catalog = parse_catalog(read_text(o_.catalog));
  const auto& all = o_.catalog.empty() ? builtin_catalog() : catalog;
  std::vector<ImplicationQuery> rows =
      o_.row == "all" ? all : select_rows(all, o_.row);
  if (rows.empty()) usage("no catalog row matches '" + o_.row + "'");

  SearchOptions sopts;
  sopts.ground_size = o_.size;
  sopts.prune = !o_.no_prune;
  sopts.symmetry_reduction = o_.symmetry;
  sopts.max_space = o_.max_space;
  sopts.threads = threads();
  const auto results = implication_matrix(rows, sopts);

  Json arr = Json::array();
  bool ok = true;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = results[i];
    ok = ok && r.as_expected(rows[i]);
    arr.push_back(io::implication_json(rows[i], r, o_.timings));
    err_ << r.id << ": " << verdict_name(r.verdict)
         << (r.as_expected(rows[i]) ? "" : " (unexpected)") << "\n";
  }
  emit({{"format", io::kFormatVersion}, {"ground_size", o_.size}, {"results", std::move(arr)}});
  return ok ? 0 : 1;
}

void add_common(CLI::App* app, Options& o) {
  app->add_option("--out", o.out_path, "Write the JSON report here instead of stdout");
  app->add_option("--threads", o.threads, "Worker threads")->check(CLI::PositiveNumber);
}

}  // namespace

Guards guards_from_env() {
  return Guards{
      static_cast<std::uint32_t>(env_value("PREFCHECK_KAPPA_MAX", kDefaultKappaGuard)),
      static_cast<std::size_t>(env_value("PREFCHECK_GROUND_MAX", kMaxSearchGround)),
      static_cast<std::uint32_t>(env_value("PREFCHECK_ALPHA_MAX", 3)),
      static_cast<unsigned>(env_value("PREFCHECK_THREADS", 1)),
  };
}

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  Guards g{};
  try {
    g = guards_from_env();
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return run(args, out, err, g);
}

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err,
        const Guards& guards) {
  Options o;
  CLI::App app{"Checks choice functions and preferential structures against coherence conditions",
               "prefcheck"};
  app.require_subcommand(1);

  auto* construct = app.add_subcommand("construct", "Emit the (mu-cum kappa) separating example");
  construct->add_option("--kappa", o.kappa, "Separated level")->required();
  construct->add_option("--kappa-max", o.kappa_max, "Guard on --kappa");
  construct->add_flag("--transitive", o.transitive, "Use the transitive closure of the relation");
  add_common(construct, o);

  auto* verify = app.add_subcommand("verify", "Verify the claims about a constructed example");
  auto* kappa_opt = verify->add_option("--kappa", o.kappa, "Separated level");
  auto* three_opt = verify->add_flag("--three-element", o.three_element,
                                    "Verify the three-element non-transitive example instead");
  kappa_opt->excludes(three_opt);
  verify->add_option("--alpha", o.alpha, "Chain length for --three-element")->check(CLI::PositiveNumber);
  verify->add_option("--kappa-max", o.kappa_max, "Guard on --kappa");
  verify->add_flag("--transitive", o.transitive, "Use the transitive closure of the relation");
  add_common(verify, o);

  auto* mu = app.add_subcommand("mu", "Minimal elements of sets in a preferential structure");
  mu->add_option("--structure", o.structure, "Structure file")->required();
  mu->add_option("--set", o.sets, "Comma separated labels; repeatable");
  add_common(mu, o);

  auto* check = app.add_subcommand("check", "Check coherence conditions on a choice function");
  check->add_option("--structure", o.structure, "Family/choice or structure file")->required();
  check->add_option("--condition", o.conditions, "Condition id, e.g. mu-cum(2); repeatable");
  check->add_option("--alpha-max", o.alpha_max, "Largest alpha of the cumulativity ladder");
  add_common(check, o);

  auto* closure = app.add_subcommand("closure", "Closure properties of a family");
  closure->add_option("--structure", o.structure, "Family file")->required();
  closure->add_option("--op", o.ops, "intersection, union, difference or complement");
  closure->add_flag("--close", o.close, "Emit the closure under finite intersections");
  add_common(closure, o);

  auto* logic = app.add_subcommand("logic", "Logical rules of the induced consequence relation");
  logic->require_subcommand(1);
  auto* logic_check = logic->add_subcommand("check", "Check a rule");
  logic_check->add_option("--structure", o.structure, "Structure or choice file over models")
      ->required();
  logic_check->add_option("--vars", o.vars, "Number of variables")
      ->check(CLI::Range(std::size_t{1}, kMaxVariables));
  logic_check->add_option("--rule", o.rule, "Rule name or 'all'");
  add_common(logic_check, o);

  auto* plausi = app.add_subcommand("plausi", "Plausibility logic");
  plausi->require_subcommand(1);
  auto* close = plausi->add_subcommand("close", "Saturate an axiom file and answer queries");
  close->add_option("--axioms", o.axioms, "Axiom file")->required();
  close->add_option("--query", o.queries, "Sequent such as 'a |~ e'; repeatable")->required();
  close->add_option("--atoms", o.atoms, "Comma separated language, overrides the file");
  close->add_flag("--no-clm", o.no_clm, "Leave out cautious left monotony");
  close->add_flag("--countermodel", o.countermodel, "Search a countermodel for underivable queries");
  close->add_option("--max-models", o.max_models, "Countermodel pool size")
      ->check(CLI::Range(std::size_t{1}, std::size_t{4}));
  close->add_flag("--allow-reflexive", o.allow_reflexive, "Allow reflexive pairs");
  close->add_flag("--non-smooth", o.non_smooth, "Do not require smoothness");
  add_common(close, o);
  auto* model_check = plausi->add_subcommand("model-check", "Check a structure against axioms");
  model_check->add_option("--structure", o.structure, "Structure file with models")->required();
  model_check->add_option("--axioms", o.axioms, "Axiom file")->required();
  model_check->add_option("--atoms", o.atoms, "Comma separated language, overrides the file");
  add_common(model_check, o);

  auto* search = app.add_subcommand("search", "Bounded search over finite instances");
  search->require_subcommand(1);
  auto* impl = search->add_subcommand("implication", "Test catalog implications");
  impl->add_option("--row", o.row, "Row id, id prefix or 'all'")->required();
  impl->add_option("--size", o.size, "Ground set size");
  impl->add_option("--ground-max", o.ground_max, "Guard on --size");
  impl->add_option("--catalog", o.catalog, "Catalog file instead of the built-in one");
  impl->add_flag("--no-prune", o.no_prune, "Enumerate without pruning");
  impl->add_flag("--symmetry", o.symmetry, "Skip families equivalent under relabeling");
  impl->add_option("--max-space", o.max_space, "Guard on the raw search space");
  impl->add_flag("--timings", o.timings, "Include wall time per row");
  add_common(impl, o);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  Runner r(o, guards, out, err);
  try {
    if (*construct) return r.construct();
    if (*verify) {
      if (!o.three_element && o.kappa == 0) usage("verify needs --kappa or --three-element");
      return r.verify();
    }
    if (*mu) return r.mu();
    if (*check) return r.check();
    if (*closure) return r.closure();
    if (*logic_check) return r.logic_check();
    if (*close) return r.plausi_close();
    if (*model_check) return r.plausi_model_check();
    if (*impl) return r.search_implication();
  } catch (const Error& e) {
    err << "error (" << error_code_name(e.code()) << "): " << e.what() << "\n";
    return e.code() == ErrorCode::kClaimViolated ? 1 : 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace prefcheck::cli
