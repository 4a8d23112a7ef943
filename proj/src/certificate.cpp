#include "fpg/certificate.hpp"

#include <unordered_set>

namespace fpg {

std::string_view to_string(CertificateKind k) {
  switch (k) {
    case CertificateKind::growth: return "growth";
    case CertificateKind::structure: return "structure";
    case CertificateKind::factor_conjugate: return "factor-conjugate";
  }
  return "?";
}

Validation validate_certificate(const WordSet& a, const Certificate& c) {
  const FreeProduct& fp = a.group();
  auto fail = [](std::string msg) { return Validation{false, std::move(msg)}; };
  switch (c.kind) {
    case CertificateKind::growth: {
      if (c.constant <= 0) return fail("growth constant must be positive");
      std::unordered_set<Word, WordHash> seen;
      for (const auto& w : c.witness) {
        for (const auto& f : w.factors)
          if (!a.contains(f)) return fail("factor " + fp.describe(f) + " of word " + fp.describe(w.word) + " is not in A");
        if (fp.multiply(std::span<const Word>(w.factors)) != w.word)
          return fail("word " + fp.describe(w.word) + " is not the product of its listed factors");
        if (!seen.insert(w.word).second) return fail("word " + fp.describe(w.word) + " is listed twice");
      }
      const auto n = static_cast<std::int64_t>(a.size());
      const Rational need = c.constant * Rational(n * n);
      if (Rational(static_cast<std::int64_t>(seen.size())) < need)
        return fail("witness has " + std::to_string(seen.size()) + " words but the claim needs " + to_string(need));
      return {};
    }
    case CertificateKind::structure: {
      if (c.classification.kind == SubgroupKind::other) return fail("structure certificate without a classification");
      if (auto err = verify_classification(a, c.classification)) return fail(*err);
      return {};
    }
    case CertificateKind::factor_conjugate: {
      if (c.factor >= fp.factor_count()) return fail("factor index out of range");
      for (const auto& w : a)
        if (!conjugates_into_factor(fp, c.conjugator, c.factor, w))
          return fail("element " + fp.describe(w) + " does not conjugate into factor " + std::to_string(c.factor));
      return {};
    }
  }
  return fail("unknown certificate kind");
}

nlohmann::json trace_to_json(const std::vector<TraceStep>& trace) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& s : trace) {
    nlohmann::json j{{"step", s.step}, {"action", s.action}, {"sizes", s.sizes}};
    if (!s.constant.empty()) j["constant"] = s.constant;
    out.push_back(std::move(j));
  }
  return out;
}

namespace {

nlohmann::json class_to_json(const FreeProduct& fp, const SubgroupClass& c) {
  nlohmann::json j{{"kind", to_string(c.kind)}};
  switch (c.kind) {
    case SubgroupKind::infinite_cyclic: j["root"] = fp.format(c.root); break;
    case SubgroupKind::finite_cyclic:
      j["root"] = fp.format(c.root);
      j["order"] = c.order;
      break;
    case SubgroupKind::infinite_dihedral:
      j["rotation"] = fp.format(c.root);
      j["reflection"] = fp.format(c.reflection);
      break;
    case SubgroupKind::factor_conjugate:
      j["conjugator"] = fp.format(c.conjugator);
      j["factor"] = c.factor;
      break;
    case SubgroupKind::other: break;
  }
  return j;
}

SubgroupClass class_from_json(const FreeProduct& fp, const nlohmann::json& j) {
  SubgroupClass c;
  c.kind = parse_subgroup_kind(j.at("kind").get<std::string>());
  if (j.contains("root")) c.root = fp.parse(j["root"].get<std::string>());
  if (j.contains("rotation")) c.root = fp.parse(j["rotation"].get<std::string>());
  if (j.contains("reflection")) c.reflection = fp.parse(j["reflection"].get<std::string>());
  if (j.contains("conjugator")) c.conjugator = fp.parse(j["conjugator"].get<std::string>());
  if (j.contains("factor")) c.factor = j["factor"].get<std::size_t>();
  if (j.contains("order")) c.order = j["order"].get<std::uint64_t>();
  return c;
}

}  // namespace

nlohmann::json to_json(const FreeProduct& fp, const Certificate& c) {
  nlohmann::json j{{"kind", to_string(c.kind)}};
  switch (c.kind) {
    case CertificateKind::growth: {
      j["constant"] = to_string(c.constant);
      j["witness_size"] = c.witness.size();
      nlohmann::json words = nlohmann::json::array();
      for (const auto& w : c.witness)
        words.push_back({{"word", fp.format(w.word)},
                         {"factors", {fp.format(w.factors[0]), fp.format(w.factors[1]), fp.format(w.factors[2])}}});
      j["witness"] = std::move(words);
      break;
    }
    case CertificateKind::structure:
      j["classification"] = class_to_json(fp, c.classification);
      j["period"] = fp.format(c.period);
      j["tail"] = fp.format(c.tail);
      break;
    case CertificateKind::factor_conjugate:
      j["conjugator"] = fp.format(c.conjugator);
      j["factor"] = c.factor;
      break;
  }
  j["trace"] = trace_to_json(c.trace);
  return j;
}

Certificate certificate_from_json(const FreeProduct& fp, const nlohmann::json& j) {
  Certificate c;
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "growth") {
    c.kind = CertificateKind::growth;
    c.constant = parse_rational(j.at("constant").get<std::string>());
    for (const auto& w : j.at("witness")) {
      WitnessProduct p;
      p.word = fp.parse(w.at("word").get<std::string>());
      const auto& fs = w.at("factors");
      if (!fs.is_array() || fs.size() != 3) throw std::invalid_argument("witness entries need three factors");
      for (std::size_t i = 0; i < 3; ++i) p.factors[i] = fp.parse(fs[i].get<std::string>());
      c.witness.push_back(std::move(p));
    }
  } else if (kind == "structure") {
    c.kind = CertificateKind::structure;
    c.classification = class_from_json(fp, j.at("classification"));
    if (j.contains("period")) c.period = fp.parse(j["period"].get<std::string>());
    if (j.contains("tail")) c.tail = fp.parse(j["tail"].get<std::string>());
  } else if (kind == "factor-conjugate") {
    c.kind = CertificateKind::factor_conjugate;
    c.conjugator = fp.parse(j.at("conjugator").get<std::string>());
    c.factor = j.at("factor").get<std::size_t>();
  } else {
    throw std::invalid_argument("unknown certificate kind '" + kind + "'");
  }
  if (j.contains("trace")) {
    for (const auto& s : j["trace"]) {
      TraceStep t;
      t.step = s.value("step", "");
      t.action = s.value("action", "");
      if (s.contains("sizes")) t.sizes = s["sizes"].get<std::map<std::string, std::int64_t>>();
      t.constant = s.value("constant", "");
      c.trace.push_back(std::move(t));
    }
  }
  return c;
}

}  // namespace fpg
