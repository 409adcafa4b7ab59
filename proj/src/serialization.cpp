#include "hierfair/serialization.hpp"

#include <fstream>
#include <unordered_map>
#include <variant>

#include "hierfair/errors.hpp"

namespace hierfair {

using nlohmann::json;

namespace {

json item_list(const Instance& inst, const ItemSet& s) {
  json out = json::array();
  s.for_each([&](Item g) {
    if (inst.item_names.empty()) {
      out.push_back(g);
    } else {
      out.push_back(inst.item_names[g]);
    }
  });
  return out;
}

class ItemReader {
 public:
  explicit ItemReader(const Instance& inst) : m_(inst.m) {
    for (std::size_t k = 0; k < inst.item_names.size(); ++k) index_[inst.item_names[k]] = static_cast<Item>(k);
  }

  ItemSet read(const json& j) const {
    if (!j.is_array()) throw InvalidInput("item list must be an array");
    ItemSet s(m_);
    for (const auto& e : j) {
      if (e.is_number_integer()) {
        int g = e.get<int>();
        if (g < 0 || g >= m_) throw InvalidInput("item id " + std::to_string(g) + " out of range");
        s.insert(g);
      } else if (e.is_string()) {
        auto it = index_.find(e.get<std::string>());
        if (it == index_.end()) throw InvalidInput("unknown item '" + e.get<std::string>() + "'");
        s.insert(it->second);
      } else {
        throw InvalidInput("items must be ids or names");
      }
    }
    return s;
  }

 private:
  int m_;
  std::unordered_map<std::string, Item> index_;
};

json weight_to_json(const Rational& w) {
  if (w.is_integer()) return w.num();
  return w.str();
}

Rational weight_from_json(const json& j) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  if (j.is_number_float()) return Rational::from_double(j.get<double>());
  throw InvalidInput("weight must be an integer or an \"a/b\" string");
}

template <class T>
T field(const json& j, const char* key) {
  if (!j.contains(key)) throw InvalidInput(std::string("missing field '") + key + "'");
  return j.at(key).get<T>();
}

}  // namespace

json instance_to_json(const Instance& inst) {
  json j;
  j["m"] = inst.m;
  if (!inst.item_names.empty()) j["items"] = inst.item_names;
  json nodes = json::array();
  for (const auto& s : inst.tree.specs()) {
    json n;
    n["id"] = s.id;
    n["parent"] = s.parent ? json(*s.parent) : json(nullptr);
    n["weight"] = weight_to_json(s.weight);
    if (s.criterion) n["criterion"] = s.criterion->tag();
    nodes.push_back(n);
  }
  j["nodes"] = nodes;
  json leaves = json::object();
  for (NodeId x : inst.tree.leaves()) {
    const Valuation& v = leaf_valuation(inst.valuations, x);
    json d;
    d["type"] = family_name(v);
    if (auto* a = std::get_if<BinaryAdditive>(&v)) d["approved"] = item_list(inst, a->approved);
    if (auto* a = std::get_if<CappedBinaryAdditive>(&v)) {
      d["approved"] = item_list(inst, a->approved);
      d["cap"] = a->cap;
    }
    if (auto* a = std::get_if<UniformCap>(&v)) d["cap"] = a->cap;
    if (auto* a = std::get_if<BinaryAssignment>(&v)) {
      json subs = json::array();
      for (const auto& s : a->subagents) subs.push_back(item_list(inst, s));
      d["subagents"] = subs;
    }
    leaves[std::to_string(x)] = d;
  }
  j["leaf_valuations"] = leaves;
  j["meta"] = inst.meta;
  return j;
}

Instance instance_from_json(const json& j) {
  try {
    Instance inst;
    inst.m = field<int>(j, "m");
    if (j.contains("items")) inst.item_names = j.at("items").get<std::vector<std::string>>();
    std::vector<NodeSpec> specs;
    for (const auto& n : j.at("nodes")) {
      NodeSpec s;
      s.id = field<int>(n, "id");
      if (n.contains("parent") && !n.at("parent").is_null()) s.parent = n.at("parent").get<int>();
      if (n.contains("weight")) s.weight = weight_from_json(n.at("weight"));
      if (n.contains("criterion") && !n.at("criterion").is_null())
        s.criterion = Criterion::parse(n.at("criterion").get<std::string>());
      specs.push_back(s);
    }
    inst.tree = Tree::build(specs);
    if (!inst.item_names.empty() && static_cast<int>(inst.item_names.size()) != inst.m)
      throw InvalidInput("item name count differs from m");
    ItemReader items(inst);
    inst.valuations.assign(inst.tree.node_count() + 1, std::nullopt);
    for (const auto& [key, d] : j.at("leaf_valuations").items()) {
      int id = std::stoi(key);
      if (!inst.tree.contains(id)) throw InvalidInput("valuation for unknown node " + key);
      const auto type = field<std::string>(d, "type");
      if (type == "binary_additive") {
        inst.valuations[id] = BinaryAdditive{items.read(d.at("approved"))};
      } else if (type == "capped_binary_additive") {
        inst.valuations[id] = CappedBinaryAdditive{items.read(d.at("approved")), field<int>(d, "cap")};
      } else if (type == "uniform_cap") {
        inst.valuations[id] = UniformCap{field<int>(d, "cap")};
      } else if (type == "binary_assignment") {
        BinaryAssignment ba;
        for (const auto& s : d.at("subagents")) ba.subagents.push_back(items.read(s));
        inst.valuations[id] = std::move(ba);
      } else {
        throw InvalidInput("unknown valuation type '" + type + "'");
      }
    }
    if (j.contains("meta"))
      for (const auto& [k, v] : j.at("meta").items()) inst.meta[k] = v.is_string() ? v.get<std::string>() : v.dump();
    validate_instance(inst);
    return inst;
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("malformed instance: ") + e.what());
  } catch (const std::invalid_argument&) {
    throw InvalidInput("malformed node id in leaf_valuations");
  }
}

json allocation_to_json(const Instance& inst, const AllocationRecord& rec) {
  json j;
  json bundles = json::object(), utilities = json::object();
  for (NodeId i = 1; i <= inst.tree.node_count(); ++i) {
    bundles[std::to_string(i)] = item_list(inst, rec.allocation[i]);
    if (i < static_cast<NodeId>(rec.utilities.size())) utilities[std::to_string(i)] = rec.utilities[i];
  }
  ItemSet held(inst.m);
  for (NodeId x : inst.tree.leaves()) held |= rec.allocation[x];
  j["bundles"] = bundles;
  j["utilities"] = utilities;
  j["discarded"] = item_list(inst, ItemSet::full(inst.m) - held);
  j["algorithm"] = rec.algorithm;
  j["seed"] = rec.seed;
  j["iterations"] = rec.iterations;
  return j;
}

AllocationRecord allocation_from_json(const Instance& inst, const json& j) {
  try {
    AllocationRecord rec;
    ItemReader items(inst);
    rec.allocation.m = inst.m;
    rec.allocation.bundles.assign(inst.tree.node_count() + 1, ItemSet(inst.m));
    for (const auto& [key, list] : j.at("bundles").items()) {
      int id = std::stoi(key);
      if (!inst.tree.contains(id)) throw InvalidInput("bundle for unknown node " + key);
      rec.allocation[id] = items.read(list);
    }
    if (j.contains("utilities")) {
      rec.utilities.assign(inst.tree.node_count() + 1, 0);
      for (const auto& [key, v] : j.at("utilities").items()) {
        int id = std::stoi(key);
        if (!inst.tree.contains(id)) throw InvalidInput("utility for unknown node " + key);
        rec.utilities[id] = v.get<int>();
      }
    }
    if (j.contains("algorithm")) rec.algorithm = j.at("algorithm").get<std::string>();
    if (j.contains("seed")) rec.seed = j.at("seed").is_string() ? j.at("seed").get<std::string>() : j.at("seed").dump();
    if (j.contains("iterations")) rec.iterations = j.at("iterations").get<int>();
    return rec;
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("malformed allocation: ") + e.what());
  } catch (const std::invalid_argument&) {
    throw InvalidInput("malformed node id in allocation");
  }
}

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InvalidInput(path + ": " + e.what());
  }
}

Instance load_instance(const std::string& path) { return instance_from_json(load_json(path)); }

void save_json(const json& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot write " + path);
  out << j.dump(2) << "\n";
}

}  // namespace hierfair
