#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "adl/belief_model.hpp"
#include "adl/errors.hpp"

namespace adl {

using json = nlohmann::json;

namespace {

template <class... Fs>
struct overloaded : Fs... {
  using Fs::operator()...;
};

[[noreturn]] void schema_error(const std::string& message) {
  throw ModelError(ModelError::Kind::Schema, message);
}

void require_object(const json& j, const std::string& where) {
  if (!j.is_object()) schema_error(where + " must be an object");
}

void allow_keys(const json& j, std::initializer_list<const char*> allowed,
                const std::string& where) {
  for (const auto& [key, value] : j.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) schema_error("unexpected key '" + key + "' in " + where);
  }
}

double number_at(const json& j, const char* key, const std::string& where) {
  auto it = j.find(key);
  if (it == j.end()) schema_error(where + " is missing '" + key + "'");
  if (!it->is_number()) schema_error(where + "." + key + " must be a number");
  return it->get<double>();
}

std::string string_at(const json& j, const char* key,
                      const std::string& where) {
  auto it = j.find(key);
  if (it == j.end()) schema_error(where + " is missing '" + key + "'");
  if (!it->is_string()) schema_error(where + "." + key + " must be a string");
  return it->get<std::string>();
}

// Rejects repeated keys, which the DOM would otherwise silently collapse.
class DuplicateKeyCheck {
 public:
  bool operator()(int /*depth*/, json::parse_event_t event, json& parsed) {
    switch (event) {
      case json::parse_event_t::object_start:
      case json::parse_event_t::array_start: {
        Frame f;
        f.is_object = event == json::parse_event_t::object_start;
        if (!stack_.empty() && stack_.back().is_object) {
          f.owner = stack_.back().last_key;
        }
        stack_.push_back(std::move(f));
        break;
      }
      case json::parse_event_t::object_end:
      case json::parse_event_t::array_end:
        if (!stack_.empty()) stack_.pop_back();
        break;
      case json::parse_event_t::key: {
        Frame& top = stack_.back();
        const std::string key = parsed.get<std::string>();
        if (!top.keys.insert(key).second) {
          if (stack_.size() == 2 && top.owner == "individuals") {
            throw ModelError(ModelError::Kind::Duplicate,
                             "duplicate individual '" + key + "'");
          }
          if (stack_.size() == 2 && top.owner == "templates") {
            throw ModelError(ModelError::Kind::Duplicate,
                             "duplicate template '" + key + "'");
          }
          schema_error("duplicate key '" + key + "'");
        }
        top.last_key = key;
        break;
      }
      case json::parse_event_t::value:
        break;
    }
    return true;
  }

 private:
  struct Frame {
    bool is_object = true;
    std::string owner;
    std::string last_key;
    std::set<std::string> keys;
  };
  std::vector<Frame> stack_;
};

ConceptStrategy concept_strategy_from_json(const json& j,
                                           const std::string& where) {
  require_object(j, where);
  const std::string kind = string_at(j, "strategy", where);
  if (kind == "direct") {
    allow_keys(j, {"strategy", "learning_rate"}, where);
    DirectConceptStrategy s;
    if (j.contains("learning_rate")) {
      s.multiplier = number_at(j, "learning_rate", where);
    }
    return s;
  }
  if (kind == "statistical") {
    allow_keys(j, {"strategy", "decay_rate", "decay_rate_for_decay_rate", "state"},
               where);
    StatisticalConceptStrategy s;
    if (j.contains("decay_rate")) s.decay_rate = number_at(j, "decay_rate", where);
    if (j.contains("decay_rate_for_decay_rate")) {
      s.decay_rate_for_decay_rate =
          number_at(j, "decay_rate_for_decay_rate", where);
    }
    if (j.contains("state")) {
      const json& st = j.at("state");
      const std::string sw = where + ".state";
      require_object(st, sw);
      allow_keys(st, {"sum", "weight", "decay"}, sw);
      s.state = StatisticalConceptStrategy::State{
          number_at(st, "sum", sw), number_at(st, "weight", sw),
          number_at(st, "decay", sw)};
    }
    return s;
  }
  schema_error(where + ": unknown concept strategy '" + kind + "'");
}

RoleStrategy role_strategy_from_json(const json& j, const std::string& where) {
  require_object(j, where);
  const std::string kind = string_at(j, "strategy", where);
  if (kind == "bayes") {
    allow_keys(j, {"strategy"}, where);
    return BayesRoleStrategy{};
  }
  if (kind == "statistical") {
    allow_keys(j, {"strategy", "decay_rate", "decay_rate_for_decay_rate", "state"},
               where);
    StatisticalRoleStrategy s;
    if (j.contains("decay_rate")) s.decay_rate = number_at(j, "decay_rate", where);
    if (j.contains("decay_rate_for_decay_rate")) {
      s.decay_rate_for_decay_rate =
          number_at(j, "decay_rate_for_decay_rate", where);
    }
    if (j.contains("state")) {
      const json& st = j.at("state");
      const std::string sw = where + ".state";
      require_object(st, sw);
      allow_keys(st, {"sums", "weight", "decay"}, sw);
      StatisticalRoleStrategy::State state;
      state.weight = number_at(st, "weight", sw);
      state.decay = number_at(st, "decay", sw);
      const json& sums = st.contains("sums") ? st.at("sums") : json::object();
      require_object(sums, sw + ".sums");
      for (const auto& [target, v] : sums.items()) {
        if (!v.is_number()) schema_error(sw + ".sums values must be numbers");
        state.sums[target] = v.get<double>();
      }
      s.state = std::move(state);
    }
    return s;
  }
  schema_error(where + ": unknown role strategy '" + kind + "'");
}

void declaration_from_json(ModelBuilder& b, const json& j,
                           const std::string& where) {
  require_object(j, where);
  allow_keys(j, {"extends", "concepts", "roles", "learn"}, where);

  if (j.contains("concepts")) {
    const json& concepts = j.at("concepts");
    require_object(concepts, where + ".concepts");
    for (const auto& [symbol, v] : concepts.items()) {
      const std::string cw = where + ".concepts." + symbol;
      if (v.is_number()) {
        b.constant(symbol, v.get<double>());
        continue;
      }
      require_object(v, cw);
      const std::string type = string_at(v, "type", cw);
      if (type == "normal_gt") {
        allow_keys(v, {"type", "mean", "std", "cutoff"}, cw);
        b.threshold(symbol,
                    Normal{number_at(v, "mean", cw), number_at(v, "std", cw)},
                    number_at(v, "cutoff", cw));
      } else if (type == "uniform_gt") {
        allow_keys(v, {"type", "lo", "hi", "cutoff"}, cw);
        b.threshold(symbol,
                    Uniform{number_at(v, "lo", cw), number_at(v, "hi", cw)},
                    number_at(v, "cutoff", cw));
      } else {
        schema_error(cw + ": unknown concept type '" + type + "'");
      }
    }
  }

  if (j.contains("roles")) {
    const json& roles = j.at("roles");
    require_object(roles, where + ".roles");
    for (const auto& [symbol, v] : roles.items()) {
      const std::string rw = where + ".roles." + symbol;
      require_object(v, rw);
      allow_keys(v, {"entries", "learn"}, rw);
      std::vector<RoleEntry> entries;
      if (v.contains("entries")) {
        const json& list = v.at("entries");
        if (!list.is_array()) schema_error(rw + ".entries must be an array");
        for (const json& e : list) {
          require_object(e, rw + ".entries[]");
          allow_keys(e, {"to", "prob"}, rw + ".entries[]");
          if (!e.contains("to")) schema_error(rw + ".entries[] missing 'to'");
          RoleEntry entry;
          const json& to = e.at("to");
          if (to.is_string()) {
            entry.target = to.get<std::string>();
          } else if (!to.is_null()) {
            schema_error(rw + ".entries[].to must be a string or null");
          }
          entry.weight = number_at(e, "prob", rw + ".entries[]");
          entries.push_back(std::move(entry));
        }
      }
      b.role(symbol, std::move(entries));
      if (v.contains("learn")) {
        b.learn_role(symbol, role_strategy_from_json(v.at("learn"), rw + ".learn"));
      }
    }
  }

  if (j.contains("learn")) {
    const json& learn = j.at("learn");
    require_object(learn, where + ".learn");
    for (const auto& [symbol, v] : learn.items()) {
      b.learn_concept(symbol,
                      concept_strategy_from_json(v, where + ".learn." + symbol));
    }
  }
}

std::optional<std::string> extends_of(const json& j, const std::string& where) {
  if (!j.is_object() || !j.contains("extends")) return std::nullopt;
  return string_at(j, "extends", where);
}

json concept_strategy_to_json(const ConceptStrategy& s) {
  return std::visit(
      overloaded{
          [](const DirectConceptStrategy& d) {
            return json{{"strategy", "direct"}, {"learning_rate", d.multiplier}};
          },
          [](const StatisticalConceptStrategy& st) {
            json out{{"strategy", "statistical"},
                     {"decay_rate", st.decay_rate},
                     {"decay_rate_for_decay_rate", st.decay_rate_for_decay_rate}};
            if (st.state) {
              out["state"] = {{"sum", st.state->sum},
                              {"weight", st.state->weight},
                              {"decay", st.state->decay}};
            }
            return out;
          },
      },
      s);
}

json role_strategy_to_json(const RoleStrategy& s) {
  return std::visit(
      overloaded{
          [](const BayesRoleStrategy&) { return json{{"strategy", "bayes"}}; },
          [](const StatisticalRoleStrategy& st) {
            json out{{"strategy", "statistical"},
                     {"decay_rate", st.decay_rate},
                     {"decay_rate_for_decay_rate", st.decay_rate_for_decay_rate}};
            if (st.state) {
              json sums = json::object();
              for (const auto& [target, v] : st.state->sums) sums[target] = v;
              out["state"] = {{"sums", sums},
                              {"weight", st.state->weight},
                              {"decay", st.state->decay}};
            }
            return out;
          },
      },
      s);
}

}  // namespace

BeliefModel load_model(std::string_view json_text) {
  json root;
  try {
    root = json::parse(json_text.begin(), json_text.end(), DuplicateKeyCheck{});
  } catch (const json::exception& e) {
    schema_error(std::string("malformed JSON: ") + e.what());
  }
  require_object(root, "model");
  allow_keys(root, {"templates", "individuals"}, "model");
  if (!root.contains("individuals")) schema_error("model has no 'individuals'");

  ModelBuilder b;
  if (root.contains("templates")) {
    const json& templates = root.at("templates");
    require_object(templates, "templates");
    for (const auto& [name, decl] : templates.items()) {
      const std::string where = "templates." + name;
      b.template_definition(name, extends_of(decl, where));
      declaration_from_json(b, decl, where);
    }
  }
  const json& individuals = root.at("individuals");
  require_object(individuals, "individuals");
  for (const auto& [name, decl] : individuals.items()) {
    const std::string where = "individuals." + name;
    b.individual(name, extends_of(decl, where));
    declaration_from_json(b, decl, where);
  }
  return b.build();
}

std::string save_model(const BeliefModel& model) {
  json individuals = json::object();
  for (const auto& [name, ind] : model.individuals()) {
    json concepts = json::object();
    json learn = json::object();
    for (const auto& [symbol, slot] : ind.concepts) {
      std::visit(overloaded{
                     [&](const ConstantConcept& c) { concepts[symbol] = c.value; },
                     [&](const ThresholdConcept& t) {
                       json c = std::visit(
                           overloaded{
                               [](const Normal& n) {
                                 return json{{"type", "normal_gt"},
                                             {"mean", n.mean},
                                             {"std", n.std}};
                               },
                               [](const Uniform& u) {
                                 return json{{"type", "uniform_gt"},
                                             {"lo", u.lo},
                                             {"hi", u.hi}};
                               },
                           },
                           t.dist);
                       c["cutoff"] = t.cutoff;
                       concepts[symbol] = std::move(c);
                     },
                 },
                 slot.source);
      if (slot.learning) learn[symbol] = concept_strategy_to_json(*slot.learning);
    }
    json roles = json::object();
    for (const auto& [symbol, slot] : ind.roles) {
      json entries = json::array();
      for (const RoleEntry& e : slot.distribution.entries()) {
        entries.push_back({{"to", e.target ? json(*e.target) : json(nullptr)},
                           {"prob", e.weight}});
      }
      json role{{"entries", std::move(entries)}};
      if (slot.learning) role["learn"] = role_strategy_to_json(*slot.learning);
      roles[symbol] = std::move(role);
    }
    json out = json::object();
    if (!concepts.empty()) out["concepts"] = std::move(concepts);
    if (!roles.empty()) out["roles"] = std::move(roles);
    if (!learn.empty()) out["learn"] = std::move(learn);
    individuals[name] = std::move(out);
  }
  return json{{"individuals", std::move(individuals)}}.dump(2) + "\n";
}

BeliefModel load_model_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open model file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("cannot read model file '" + path + "'");
  return load_model(buf.str());
}

void save_model_file(const BeliefModel& model, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write model file '" + path + "'");
  out << save_model(model);
  out.flush();
  if (!out) throw IoError("cannot write model file '" + path + "'");
}

}  // namespace adl
