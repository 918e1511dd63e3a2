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
#include "prefcheck/io.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "prefcheck/error.hpp"

namespace prefcheck::io {

namespace {

[[noreturn]] void bad(const std::string& msg) { throw Error(ErrorCode::kInvalidInput, msg); }

std::vector<std::string> label_list(const Json& j, const std::string& what) {
  if (!j.is_array()) bad(what + " must be an array of labels");
  std::vector<std::string> out;
  out.reserve(j.size());
  for (const auto& e : j) {
    if (!e.is_string()) bad(what + " must be an array of labels");
    out.push_back(e.get<std::string>());
  }
  return out;
}

Copy copy_of(const GroundSet& g, const Json& j) {
  // ["x", 0], or a bare "x" for copy 0.
  std::string label;
  std::uint32_t index = 0;
  if (j.is_string()) {
    label = j.get<std::string>();
  } else if (j.is_array() && j.size() == 2 && j[0].is_string() && j[1].is_number_unsigned()) {
    label = j[0].get<std::string>();
    index = j[1].get<std::uint32_t>();
  } else {
    bad("copy must be [label, index]");
  }
  auto e = g.index_of(label);
  if (!e) bad("unknown ground label '" + label + "'");
  return {*e, index};
}

Json copy_json(const GroundSet& g, Copy c) { return Json::array({g.label(c.element), c.index}); }

void family_body(Json& out, const SetFamily& family, const ChoiceFunction* choice) {
  const GroundSet& g = family.ground();
  Json fam = Json::object();
  for (std::size_t i = 0; i < family.size(); ++i) fam[family.name(i)] = subset_json(g, family.set(i));
  out["family"] = std::move(fam);
  if (choice) {
    Json ch = Json::object();
    for (std::size_t i = 0; i < family.size(); ++i) {
      ch[family.name(i)] = subset_json(g, choice->image(i));
    }
    out["choice"] = std::move(ch);
  }
}

Json claims_json(const std::vector<ClaimVerdict>& claims) {
  Json out = Json::array();
  for (const auto& c : claims) {
    out.push_back({{"id", c.id},
                   {"statement", c.statement},
                   {"confirmed", c.confirmed},
                   {"detail", c.detail}});
  }
  return out;
}

std::string_view expectation_name(Expectation e) {
  switch (e) {
    case Expectation::kImplies:
      return "implies";
    case Expectation::kNotImplies:
      return "not-implies";
    default:
      return "not-testable";
  }
}

Document parse_object(const Json& j) {
  if (!j.is_object()) bad("document must be a JSON object");
  if (j.contains("format") && j["format"] != kFormatVersion) {
    bad("unsupported format " + j["format"].dump());
  }
  if (!j.contains("ground")) bad("document lacks \"ground\"");
  Document doc;
  doc.ground = make_ground(label_list(j["ground"], "\"ground\""));
  const GroundSet& g = *doc.ground;

  std::map<std::string, Subset> by_name;
  if (j.contains("family")) {
    const Json& fam = j["family"];
    if (!fam.is_object()) bad("\"family\" must map names to label arrays");
    std::vector<SetFamily::Member> members;
    for (const auto& [name, labels] : fam.items()) {
      const Subset s = g.subset_of(label_list(labels, "member '" + name + "'"));
      by_name[name] = s;
      members.push_back({name, s});
    }
    doc.family.emplace(doc.ground, std::move(members));
  }
  if (j.contains("choice")) {
    if (!doc.family) bad("\"choice\" needs a \"family\"");
    const Json& ch = j["choice"];
    if (!ch.is_object()) bad("\"choice\" must map names to label arrays");
    std::vector<std::optional<Subset>> images(doc.family->size());
    for (const auto& [name, labels] : ch.items()) {
      auto it = by_name.find(name);
      if (it == by_name.end()) bad("choice names '" + name + "', which is not a family member");
      const Subset img = g.subset_of(label_list(labels, "choice of '" + name + "'"));
      auto& slot = images[*doc.family->index_of(it->second)];
      if (slot && *slot != img) bad("conflicting choices for the set of '" + name + "'");
      slot = img;
    }
    std::vector<Subset> table;
    for (std::size_t i = 0; i < images.size(); ++i) {
      if (!images[i]) bad("choice lacks member '" + doc.family->name(i) + "'");
      table.push_back(*images[i]);
    }
    doc.choice.emplace(*doc.family, std::move(table));
  }
  if (j.contains("relation") || j.contains("copies")) {
    std::vector<Copy> copies;
    if (j.contains("copies")) {
      if (!j["copies"].is_array()) bad("\"copies\" must be an array");
      for (const auto& c : j["copies"]) copies.push_back(copy_of(g, c));
    } else {
      for (std::size_t i = 0; i < g.size(); ++i) copies.push_back({i, 0});
    }
    std::vector<RelationPair> rel;
    if (j.contains("relation")) {
      if (!j["relation"].is_array()) bad("\"relation\" must be an array of pairs");
      for (const auto& p : j["relation"]) {
        if (!p.is_array() || p.size() != 2) bad("relation entries must be [below, above]");
        rel.push_back({copy_of(g, p[0]), copy_of(g, p[1])});
      }
    }
    doc.structure.emplace(doc.ground, std::move(copies), rel);
  }
  if (j.contains("models")) {
    const Json& m = j["models"];
    if (!m.is_object()) bad("\"models\" must map ground labels to atom arrays");
    for (const auto& [label, atoms] : m.items()) {
      if (!g.index_of(label)) bad("model of unknown ground label '" + label + "'");
      doc.models.emplace_back(label, label_list(atoms, "model '" + label + "'"));
    }
  }
  return doc;
}

}  // namespace

Document parse_document(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    bad(std::string("malformed JSON: ") + e.what());
  }
  try {
    return parse_object(j);
  } catch (const Json::exception& e) {
    bad(std::string("bad document: ") + e.what());
  }
}

Document read_document(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) bad("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_document(buf.str());
}

Json subset_json(const GroundSet& g, Subset s) { return Json(g.sorted_labels(s)); }

Json family_json(const SetFamily& family, const ChoiceFunction* choice) {
  Json out = {{"format", kFormatVersion}, {"ground", family.ground().labels()}};
  family_body(out, family, choice);
  return out;
}

void add_structure_json(Json& out, const PreferentialStructure& s) {
  const GroundSet& g = s.ground();
  const auto copies = s.copies();
  bool plain = copies.size() == g.size();
  for (std::size_t i = 0; plain && i < copies.size(); ++i) {
    plain = copies[i].element == i && copies[i].index == 0;
  }
  if (!plain) {
    Json cs = Json::array();
    for (const Copy& c : copies) cs.push_back(copy_json(g, c));
    out["copies"] = std::move(cs);
  }
  Json rel = Json::array();
  for (auto [lo, hi] : s.relation()) {
    rel.push_back(Json::array({copy_json(g, copies[lo]), copy_json(g, copies[hi])}));
  }
  out["relation"] = std::move(rel);
}

Json to_json(const Document& doc) {
  Json out = {{"format", kFormatVersion}, {"ground", doc.ground->labels()}};
  if (doc.family) family_body(out, *doc.family, doc.choice ? &*doc.choice : nullptr);
  if (doc.structure) add_structure_json(out, *doc.structure);
  if (!doc.models.empty()) {
    Json m = Json::object();
    for (const auto& [label, atoms] : doc.models) m[label] = atoms;
    out["models"] = std::move(m);
  }
  return out;
}

SetFamily family_or_powerset(const Document& doc) {
  return doc.family ? *doc.family : powerset_family(doc.ground);
}

ChoiceFunction choice_of(const Document& doc) {
  if (doc.choice) return *doc.choice;
  if (!doc.structure) bad("document has neither a choice table nor a relation");
  return induced_choice(*doc.structure, family_or_powerset(doc));
}

PlModelStructure pl_structure_of(const Document& doc, const PlLanguage& lang) {
  if (!doc.structure) bad("plausibility structure lacks a relation");
  std::vector<std::optional<Subset>> atoms(doc.ground->size());
  for (const auto& [label, names] : doc.models) {
    Subset s;
    for (const auto& a : names) {
      auto i = lang.index_of(a);
      if (!i) throw Error(ErrorCode::kAtomUnknown, "model '" + label + "' uses unknown atom '" + a + "'");
      s = s.with(*i);
    }
    atoms[*doc.ground->index_of(label)] = s;
  }
  std::vector<Subset> model_atoms;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (!atoms[i]) bad("element '" + doc.ground->label(i) + "' has no model");
    model_atoms.push_back(*atoms[i]);
  }
  return make_pl_structure(lang, *doc.structure, std::move(model_atoms));
}

Document pl_document(const PlModelStructure& s) {
  Document doc{s.structure.ground_ptr(), std::nullopt, std::nullopt, s.structure, {}};
  for (std::size_t i = 0; i < s.model_atoms.size(); ++i) {
    std::vector<std::string> names;
    s.model_atoms[i].for_each([&](std::size_t a) { names.push_back(s.language.atom(a)); });
    doc.models.emplace_back(doc.ground->label(i), std::move(names));
  }
  return doc;
}

ChoiceFunction choice_over_models(const PropLanguage& lang, const ChoiceFunction& f) {
  const GroundSet& g = f.ground();
  if (g.size() != lang.models()) {
    bad("ground set has " + std::to_string(g.size()) + " elements, the language " +
        std::to_string(lang.models()) + " models");
  }
  std::vector<std::size_t> to_model(g.size());
  Subset seen;
  for (std::size_t i = 0; i < g.size(); ++i) {
    auto m = lang.parse_model(g.label(i));
    if (!m) bad("'" + g.label(i) + "' is not a model of the language");
    if (seen.contains(*m)) bad("model '" + g.label(i) + "' listed twice");
    seen = seen.with(*m);
    to_model[i] = *m;
  }
  auto remap = [&](Subset s) {
    Subset out;
    s.for_each([&](std::size_t i) { out = out.with(to_model[i]); });
    return out;
  };
  const SetFamily& fam = f.domain();
  std::vector<SetFamily::Member> members;
  for (std::size_t i = 0; i < fam.size(); ++i) members.push_back({fam.name(i), remap(fam.set(i))});
  SetFamily domain(lang.model_ground(), std::move(members));
  std::vector<Subset> images(domain.size());
  for (std::size_t i = 0; i < fam.size(); ++i) {
    images[*domain.index_of(remap(fam.set(i)))] = remap(f.image(i));
  }
  return ChoiceFunction(std::move(domain), std::move(images));
}

Json witness_json(const GroundSet& g, const Witness& w) {
  Json out = Json::object();
  for (const auto& b : w.bindings) {
    if (const auto* s = std::get_if<Subset>(&b.value)) {
      out[b.name] = subset_json(g, *s);
    } else {
      Json seq = Json::array();
      for (Subset s2 : std::get<std::vector<Subset>>(b.value)) seq.push_back(subset_json(g, s2));
      out[b.name] = std::move(seq);
    }
  }
  if (w.element) out["element"] = g.label(*w.element);
  return out;
}

Json condition_report_json(const GroundSet& g, const ConditionReport& r) {
  Json out = {{"condition", r.condition.name()}};
  if (r.condition.alpha()) out["alpha"] = *r.condition.alpha();
  out["verdict"] = r.holds ? "holds" : "fails";
  if (r.witness) out["witness"] = witness_json(g, *r.witness);
  out["tuples"] = r.tuples;
  out["skipped"] = r.skipped;
  return out;
}

Json cum_example_json(const CumExampleInstance& inst, const CumExampleReport& r) {
  Json out = {{"format", kFormatVersion},
              {"kappa", r.kappa},
              {"all_confirmed", r.all_confirmed()},
              {"claims", claims_json(r.claims)},
              {"union_closed", r.union_closed}};
  if (r.cum_report) out["cum_report"] = condition_report_json(inst.choice.ground(), *r.cum_report);
  return out;
}

Json three_element_json(const ThreeElementExample& ex, const ThreeElementReport& r) {
  const GroundSet& g = ex.family.ground();
  return {{"format", kFormatVersion},
          {"alpha", r.alpha},
          {"all_confirmed", r.all_confirmed()},
          {"claims", claims_json(r.claims)},
          {"mu_U_cap_X1", subset_json(g, r.mu_u_cap_x1)},
          {"mu_X1", subset_json(g, r.mu_x1)},
          {"cumt_report", condition_report_json(g, r.cumt_report)}};
}

Json logic_report_json(const PropLanguage& lang, const LogicReport& r,
                       const ConditionReport* paired) {
  GroundPtr models = lang.model_ground();
  Json out = {{"rule", logic_rule_name(r.rule)}, {"verdict", r.holds ? "holds" : "fails"}};
  if (r.witness) out["witness"] = witness_json(*models, *r.witness);
  out["tuples"] = r.tuples;
  out["skipped"] = r.skipped;
  if (paired) {
    out["paired"] = condition_report_json(*models, *paired);
    out["agree"] = paired->holds == r.holds;
  }
  return out;
}

Json implication_json(const ImplicationQuery& q, const ImplicationResult& r, bool timings) {
  Json out = {{"id", r.id},
              {"statement", q.statement},
              {"expect", expectation_name(q.expect)},
              {"verdict", verdict_name(r.verdict)},
              {"as_expected", r.as_expected(q)},
              {"instances", r.instances},
              {"space", r.space}};
  if (r.verdict == Verdict::kConfirmedAtScale) {
    out["note"] = "no counterexample in the enumerated space; this is not a proof";
  } else if (r.verdict == Verdict::kNotTestable && !q.note.empty()) {
    out["note"] = q.note;
  }
  if (r.counterexample) {
    const Instance& inst = r.counterexample->instance;
    Json cx = {{"ground", inst.family.ground().labels()}};
    family_body(cx, inst.family, &inst.choice);
    if (inst.structure) add_structure_json(cx, *inst.structure);
    cx["violated"] = condition_report_json(inst.family.ground(), r.counterexample->report);
    out["counterexample"] = std::move(cx);
  }
  if (timings) out["seconds"] = r.seconds;
  return out;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace prefcheck::io
