#include "fpg/group_spec.hpp"

#include <fstream>
#include <sstream>

#include "fpg/sl2.hpp"

namespace fpg {

namespace {

struct BuiltFactor {
  FactorGroupPtr group;
  std::vector<NamedElement> generators;
};

const nlohmann::json& param(const nlohmann::json& doc, const char* key) {
  if (!doc.contains("params") || !doc["params"].contains(key))
    throw GroupError("missing params." + std::string(key) + " for kind " + doc.value("kind", "?"));
  return doc["params"][key];
}

std::int64_t int_param(const nlohmann::json& doc, const char* key) {
  const auto& v = param(doc, key);
  if (!v.is_number_integer()) throw GroupError("params." + std::string(key) + " must be an integer");
  return v.get<std::int64_t>();
}

std::vector<std::vector<std::int64_t>> read_csv_table(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw GroupError("cannot open Cayley table " + path.string());
  std::vector<std::vector<std::int64_t>> table;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::vector<std::int64_t> row;
    std::stringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) {
      try {
        row.push_back(std::stoll(cell));
      } catch (const std::exception&) {
        throw GroupError("bad Cayley table cell '" + cell + "' in " + path.string());
      }
    }
    table.push_back(std::move(row));
  }
  return table;
}

std::vector<NamedElement> declared_generators(const nlohmann::json& doc, const FactorGroup& grp) {
  std::vector<NamedElement> out;
  if (!doc.contains("generators")) return out;
  for (const auto& g : doc["generators"]) {
    if (!g.contains("name") || !g.contains("element") || !g["name"].is_string())
      throw GroupError("generator entries need a name and an element");
    out.push_back({g["name"].get<std::string>(), grp.from_json(g["element"])});
  }
  return out;
}

FreeProductPtr build_free_product(const nlohmann::json& doc, const std::filesystem::path& base_dir);

BuiltFactor build_factor(const nlohmann::json& doc, const std::filesystem::path& base_dir) {
  if (!doc.is_object() || !doc.contains("kind") || !doc["kind"].is_string())
    throw GroupError("group spec needs a string \"kind\"");
  const std::string kind = doc["kind"];
  BuiltFactor out;
  if (kind == "cyclic") {
    out.group = std::make_shared<CyclicGroup>(int_param(doc, "n"));
  } else if (kind == "integers") {
    out.group = std::make_shared<IntegerGroup>();
  } else if (kind == "cayley-table") {
    const auto& t = param(doc, "table");
    std::vector<std::vector<std::int64_t>> table;
    if (t.is_string()) {
      std::filesystem::path p = t.get<std::string>();
      table = read_csv_table(p.is_absolute() ? p : base_dir / p);
    } else {
      try {
        table = t.get<std::vector<std::vector<std::int64_t>>>();
      } catch (const nlohmann::json::exception&) {
        throw GroupError("params.table must be an array of integer rows or a CSV path");
      }
    }
    out.group = std::make_shared<CayleyTableGroup>(std::move(table));
  } else if (kind == "sl2z") {
    auto g = std::make_shared<Sl2zGroup>();
    if (!doc.contains("generators")) out.generators = {{"S", g->make(sl2::S())}, {"T", g->make(sl2::T())}};
    out.group = g;
  } else if (kind == "baumslag-solitar") {
    auto g = std::make_shared<BaumslagSolitarGroup>(int_param(doc, "m"), int_param(doc, "n"));
    if (!doc.contains("generators")) out.generators = {{"x", g->x()}, {"y", g->y()}};
    out.group = g;
  } else if (kind == "direct-product-with-integers") {
    auto base = build_free_product(param(doc, "base"), base_dir);
    std::string z = "z";
    if (doc["params"].contains("z")) z = doc["params"]["z"].get<std::string>();
    auto g = std::make_shared<DirectProductWithIntegers>(base, z);
    if (!doc.contains("generators")) {
      for (const auto& gen : base->generators())
        out.generators.push_back({gen.name, g->make(base->generator(gen.name), 0)});
      out.generators.push_back({z, g->make(Word{}, 1)});
    }
    out.group = g;
  } else if (kind == "free-product") {
    auto inner = build_free_product(doc, base_dir);
    auto g = std::make_shared<NestedFreeProductGroup>(inner);
    for (const auto& gen : inner->generators()) out.generators.push_back({gen.name, g->make(inner->generator(gen.name))});
    out.group = g;
    return out;
  } else {
    throw GroupError("unknown group kind '" + kind + "'");
  }
  auto declared = declared_generators(doc, *out.group);
  if (!declared.empty() || doc.contains("generators")) out.generators = std::move(declared);
  return out;
}

FreeProductPtr build_free_product(const nlohmann::json& doc, const std::filesystem::path& base_dir) {
  std::vector<FactorGroupPtr> factors;
  std::vector<Generator> gens;
  auto add = [&](BuiltFactor f) {
    const std::size_t idx = factors.size();
    for (auto& g : f.generators) gens.push_back({g.name, Letter(idx, g.element)});
    factors.push_back(std::move(f.group));
  };
  if (doc.is_object() && doc.value("kind", "") == "free-product") {
    const auto& list = param(doc, "factors");
    if (!list.is_array() || list.empty()) throw GroupError("params.factors must be a non-empty array");
    for (const auto& f : list) add(build_factor(f, base_dir));
  } else {
    add(build_factor(doc, base_dir));
  }
  return std::make_shared<FreeProduct>(std::move(factors), std::move(gens));
}

}  // namespace

GroupSpec load_group(const nlohmann::json& doc, const std::filesystem::path& base_dir) {
  return {build_free_product(doc, base_dir), doc};
}

GroupSpec load_group_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw GroupError("cannot open group spec " + path.string());
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw GroupError("group spec " + path.string() + ": " + e.what());
  }
  return load_group(doc, path.parent_path());
}

nlohmann::json cyclic_doc(std::int64_t n, const std::string& gen) {
  return {{"kind", "cyclic"}, {"params", {{"n", n}}}, {"generators", {{{"name", gen}, {"element", 1}}}}};
}

nlohmann::json integers_doc(const std::string& gen) {
  return {{"kind", "integers"}, {"params", nlohmann::json::object()}, {"generators", {{{"name", gen}, {"element", 1}}}}};
}

nlohmann::json free_product_doc(std::vector<nlohmann::json> factors) {
  return {{"kind", "free-product"}, {"params", {{"factors", std::move(factors)}}}};
}

}  // namespace fpg
