#pragma once

// Certificates emitted by the growth/structure dichotomy and their
// independent validation.

#include <array>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "fpg/subgroup.hpp"

namespace fpg {

/// One step of the pipeline: what was tried, with the sizes it saw.
struct TraceStep {
  std::string step;
  std::string action;
  std::map<std::string, std::int64_t> sizes;
  std::string constant;  ///< rational as text, empty when none applies
};

/// word == factors[0] * factors[1] * factors[2], each factor in A.
struct WitnessProduct {
  Word word;
  std::array<Word, 3> factors;
};

enum class CertificateKind { growth, structure, factor_conjugate };
std::string_view to_string(CertificateKind k);

struct Certificate {
  CertificateKind kind = CertificateKind::growth;

  // growth
  std::vector<WitnessProduct> witness;
  Rational constant{0};

  // structure
  SubgroupClass classification;
  Word period, tail;

  // factor-conjugate: conjugator^-1 * A * conjugator lies in factor
  Word conjugator;
  std::size_t factor = 0;

  std::vector<TraceStep> trace;
};

struct Validation {
  bool ok = true;
  std::string message;
};

/// Rechecks a certificate against A using only word arithmetic.
Validation validate_certificate(const WordSet& a, const Certificate& c);

nlohmann::json to_json(const FreeProduct& fp, const Certificate& c);
Certificate certificate_from_json(const FreeProduct& fp, const nlohmann::json& j);
nlohmann::json trace_to_json(const std::vector<TraceStep>& trace);

}  // namespace fpg
