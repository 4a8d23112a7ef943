// fpg: batch front end for growth reports, the growth/structure dichotomy,
// family sweeps, translate covers and ball sampling.
//
// Exit codes: 0 ok, 1 input error, 2 bound anomaly, 3 analysis incomplete,
// 4 invalid certificate.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "fpg/decomposition.hpp"
#include "fpg/families.hpp"
#include "fpg/growth.hpp"

namespace {

using namespace fpg;
using nlohmann::json;

enum Exit { ok = 0, input_error = 1, bound_anomaly = 2, incomplete = 3, invalid_certificate = 4 };

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Config {
  std::string group, set, out, certificate, family, x_word;
  std::optional<std::uint64_t> seed;
  std::size_t exact_limit = 64;
  std::string m = "1", n = "2", d = "1", N = "1";
  int radius = 2;
  std::size_t size = 0, count = 1;
};

void emit(const Config& cfg, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(cfg.out, std::ios::binary);
  if (!f) throw InputError("cannot write " + cfg.out);
  f << text;
}

GroupSpec need_group(const Config& cfg) {
  if (cfg.group.empty()) throw InputError("--group is required");
  return load_group_file(cfg.group);
}

WordSet need_set(const Config& cfg, const GroupSpec& g) {
  if (cfg.set.empty()) throw InputError("--set is required");
  return read_word_set(g.ambient, cfg.set);
}

/// "7" or "1..50".
std::vector<std::int64_t> parse_range(const std::string& text, const std::string& flag) {
  try {
    const auto dots = text.find("..");
    if (dots == std::string::npos) return {std::stoll(text)};
    const std::int64_t lo = std::stoll(text.substr(0, dots)), hi = std::stoll(text.substr(dots + 2));
    if (hi < lo) throw InputError(flag + ": empty range " + text);
    std::vector<std::int64_t> out;
    for (std::int64_t v = lo; v <= hi; ++v) out.push_back(v);
    return out;
  } catch (const std::logic_error&) {
    throw InputError(flag + ": expected an integer or a range a..b, got '" + text + "'");
  }
}

std::string json_text(const json& j) { return j.dump(2) + "\n"; }

// ---------------------------------------------------------------------------

int cmd_grow(const Config& cfg) {
  const GroupSpec g = need_group(cfg);
  const WordSet a = need_set(cfg, g);
  const GrowthReport r = growth_report(a);
  emit(cfg, growth_csv_header() + "\n" + growth_csv_row(r) + "\n");
  if (r.verdict != Verdict::bound_violated) return ok;
  std::cerr << (r.bound_applies ? "bound violated with no exemption in a two-factor free product\n"
                                  : "bound violated; the ambient is not a two-factor free product\n");
  return bound_anomaly;
}

int cmd_dichotomy(const Config& cfg) {
  const GroupSpec g = need_group(cfg);
  if (!g.two_factor()) throw InputError("dichotomy needs a two-factor free product");
  const WordSet a = need_set(cfg, g);
  try {
    const Certificate c = dichotomy(a);
    const Validation v = validate_certificate(a, c);
    json j = to_json(g.group(), c);
    j["valid"] = v.ok;
    if (!v.ok) j["validation"] = v.message;
    emit(cfg, json_text(j));
    return v.ok ? ok : invalid_certificate;
  } catch (const AnalysisIncomplete& e) {
    emit(cfg, json_text({{"kind", "incomplete"}, {"reason", e.what()}, {"trace", trace_to_json(e.trace())}}));
    return incomplete;
  }
}

int cmd_verify(const Config& cfg) {
  const GroupSpec g = need_group(cfg);
  const WordSet a = need_set(cfg, g);
  if (cfg.certificate.empty()) throw InputError("--certificate is required");
  std::ifstream f(cfg.certificate);
  if (!f) throw InputError("cannot read " + cfg.certificate);
  Certificate c;
  try {
    c = certificate_from_json(g.group(), json::parse(f));
  } catch (const json::exception& e) {
    throw InputError(cfg.certificate + ": " + e.what());
  }
  const Validation v = validate_certificate(a, c);
  emit(cfg, v.ok ? "valid\n" : "invalid: " + v.message + "\n");
  return v.ok ? ok : invalid_certificate;
}

int cmd_classify(const Config& cfg) {
  const GroupSpec g = need_group(cfg);
  const WordSet a = need_set(cfg, g);
  const SubgroupClass c = classify_subgroup(a);
  const auto err = verify_classification(a, c);
  const FreeProduct& fp = g.group();
  json j{{"kind", to_string(c.kind)}, {"validated", !err.has_value()}};
  if (c.kind == SubgroupKind::infinite_cyclic || c.kind == SubgroupKind::finite_cyclic) j["root"] = fp.describe(c.root);
  if (c.kind == SubgroupKind::finite_cyclic) j["order"] = c.order;
  if (c.kind == SubgroupKind::infinite_dihedral) {
    j["rotation"] = fp.describe(c.root);
    j["reflection"] = fp.describe(c.reflection);
  }
  if (c.kind == SubgroupKind::factor_conjugate) {
    j["conjugator"] = fp.describe(c.conjugator);
    j["factor"] = c.factor;
  }
  if (err) j["error"] = *err;
  emit(cfg, json_text(j));
  return ok;
}

int cmd_approx(const Config& cfg) {
  const GroupSpec g = need_group(cfg);
  const WordSet a = need_set(cfg, g);
  const TranslateCover cover = min_translate_cover(a, cfg.exact_limit);
  std::vector<std::string> xs;
  for (const auto& w : cover.x) xs.push_back(g.group().format(w));
  const std::size_t sq = count_products(g.group(), a.words(), a.words());
  emit(cfg, json_text({{"size", a.size()},
                       {"sq", sq},
                       {"k", cover.k},
                       {"exact", cover.exact},
                       {"cover", xs},
                       {"validates", cover_validates(a, cover.x)}}));
  return ok;
}

int cmd_sample(const Config& cfg) {
  if (!cfg.seed) throw InputError("--seed is required for sampling");
  const GroupSpec g = need_group(cfg);
  WordSet s;
  try {
    s = sample_ball(g.ambient, cfg.radius, cfg.size, *cfg.seed);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  emit(cfg, format_word_set(s));
  return ok;
}

int cmd_family(const Config& cfg) {
  std::ostringstream csv;
  csv << family_csv_header() << "\n";
  bool all_ok = true;
  auto row = [&](const FamilyReport& r) {
    csv << family_csv_row(r) << "\n";
    all_ok = all_ok && r.ok;
  };
  try {
    if (cfg.family == "bs") {
      const auto ms = parse_range(cfg.m, "--m"), ns = parse_range(cfg.n, "--n");
      if (ms.size() != 1 || ns.size() != 1) throw InputError("--m and --n take single values");
      bs_group(ms[0], ns[0]);
      for (auto d : parse_range(cfg.d, "--d")) row(family_bs(ms[0], ns[0], d).report);
    } else if (cfg.family == "f2xz") {
      for (auto n : parse_range(cfg.N, "--N")) row(family_f2xz(n).report);
    } else if (cfg.family == "powers") {
      const GroupSpec g = cfg.group.empty() ? load_group(free_product_doc({integers_doc("a"), integers_doc("b")}))
                                            : need_group(cfg);
      std::vector<Word> gens;
      for (const auto& gen : g.group().generators()) gens.push_back(g.group().generator(gen.name));
      const Word x = g.group().parse(cfg.x_word.empty() ? "a b" : cfg.x_word);
      for (auto n : parse_range(cfg.N, "--N")) row(family_powers(g.ambient, gens, x, n).report);
    } else if (cfg.family == "sl2z-quotient") {
      if (!cfg.seed) throw InputError("--seed is required for sampling");
      const GroupSpec g = cfg.group.empty() ? load_group(json{{"kind", "sl2z"}}) : need_group(cfg);
      const WordSet ball = word_ball(g.ambient, cfg.radius);
      const std::size_t size = cfg.size ? cfg.size : 10;
      for (std::size_t i = 0; i < cfg.count; ++i) {
        const std::uint64_t seed = *cfg.seed + i;
        row(quotient_family_report(sample_from(ball, size, seed), "radius=" + std::to_string(cfg.radius) +
                                                                     " size=" + std::to_string(size) +
                                                                     " seed=" + std::to_string(seed)));
      }
    } else {
      throw InputError("unknown family '" + cfg.family + "' (expected powers, f2xz, bs, sl2z-quotient)");
    }
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  emit(cfg, csv.str());
  return all_ok ? ok : bound_anomaly;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact product-set growth in free products"};
  app.require_subcommand(1);
  Config cfg;

  auto common = [&](CLI::App* sub, bool with_set) {
    sub->add_option("--group", cfg.group, "group spec JSON");
    if (with_set) sub->add_option("--set", cfg.set, "word set file, one word per line");
    sub->add_option("--out", cfg.out, "output path (default stdout)");
    sub->add_option("--seed", cfg.seed, "RNG seed");
    sub->add_option("--exact-limit", cfg.exact_limit, "largest |A^2| solved exactly by cover search");
  };

  auto* grow = app.add_subcommand("grow", "|A|, |A^2|, |A^3| and the growth verdict");
  common(grow, true);
  auto* dich = app.add_subcommand("dichotomy", "growth or structure certificate with trace");
  common(dich, true);
  auto* verify = app.add_subcommand("verify", "recheck a certificate against a set");
  common(verify, true);
  verify->add_option("--certificate", cfg.certificate, "certificate JSON")->required();
  auto* classify = app.add_subcommand("classify", "cyclic / dihedral / factor-conjugate classification");
  common(classify, true);
  auto* approx = app.add_subcommand("approx", "smallest X with A^2 inside XA");
  common(approx, true);
  auto* sample = app.add_subcommand("sample", "seeded sample from a word ball");
  common(sample, false);
  sample->add_option("--radius", cfg.radius, "ball radius in generator letters");
  sample->add_option("--size", cfg.size, "number of elements")->required();
  auto* family = app.add_subcommand("family", "sweep an explicit family");
  common(family, false);
  family->add_option("name", cfg.family, "powers, f2xz, bs or sl2z-quotient")->required();
  family->add_option("--m", cfg.m, "BS parameter m");
  family->add_option("--n", cfg.n, "BS parameter n");
  family->add_option("--d", cfg.d, "d or range a..b");
  family->add_option("--N", cfg.N, "N or range a..b");
  family->add_option("--x", cfg.x_word, "infinite-order word for powers (default 'a b')");
  family->add_option("--radius", cfg.radius, "ball radius for sl2z-quotient");
  family->add_option("--size", cfg.size, "sample size for sl2z-quotient");
  family->add_option("--count", cfg.count, "number of sampled sets for sl2z-quotient");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? ok : input_error;
  }

  try {
    if (*grow) return cmd_grow(cfg);
    if (*dich) return cmd_dichotomy(cfg);
    if (*verify) return cmd_verify(cfg);
    if (*classify) return cmd_classify(cfg);
    if (*approx) return cmd_approx(cfg);
    if (*sample) return cmd_sample(cfg);
    if (*family) return cmd_family(cfg);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return input_error;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return input_error;
  } catch (const GroupError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return input_error;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return input_error;
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return input_error;
  }
  return input_error;
}
