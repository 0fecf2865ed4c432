// Copyright 2026 The catspec Authors
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


// Derivation certificates: a JSON rendering of a derivation that can be
// re-verified rule by rule without searching.  See
// docs/certificate-format.md.

#ifndef CATSPEC_CERTIFICATE_HPP_
#define CATSPEC_CERTIFICATE_HPP_

#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "catspec/derivation.hpp"
#include "catspec/lexicon.hpp"

namespace catspec {

inline constexpr int kCertificateFormatVersion = 1;

struct CertificateMeta {
  std::string generator;
  int max_lift = 2;
  std::int64_t fuel = 0;
  int max_entries_per_word = 0;
  std::set<std::string> features;
};

nlohmann::json EmitCertificate(const Derivation& d, const Signature& sig, const CertificateMeta& meta);
// Canonical text: sorted keys, two-space indentation, trailing newline.
std::string SerializeCertificate(const nlohmann::json& doc);

// The document is not a certificate at all (bad JSON, missing or mistyped
// structural fields).  Field contents that fail to parse are reported as
// verdict failures instead.
class CertificateFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class FailureReason { kUnknownRule, kCatMismatch, kSemMismatch, kLexMismatch, kTypeError, kSpanError };

const char* FailureReasonName(FailureReason r);

struct CheckFailure {
  std::string path;  // e.g. "/derivation/left/child"
  FailureReason reason;
  std::string detail;
};

struct Verdict {
  bool accepted() const { return failures.empty(); }
  bool Has(FailureReason r) const;
  std::vector<CheckFailure> failures;
};

nlohmann::json ParseCertificateText(const std::string& text);

// Live mode (lex non-null): leaf entries must match the lexicon's current
// entries and the lexicon's signature is used.  Standalone mode (lex null):
// inlined entries are linted against the certificate's own signature.
Verdict CheckCertificate(const nlohmann::json& doc, const Lexicon* lex);

}  // namespace catspec

#endif  // CATSPEC_CERTIFICATE_HPP_
