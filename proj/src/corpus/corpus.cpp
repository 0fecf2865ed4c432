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

#include "catspec/corpus.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include <toml.hpp>

#include "catspec/syntax.hpp"

namespace catspec {

namespace fs = std::filesystem;

const char* ExpectModeName(ExpectMode m) {
  switch (m) {
    case ExpectMode::kAlphaEq: return "alphaEq";
    case ExpectMode::kTrueAmbiguity: return "trueAmbiguity";
    case ExpectMode::kNoParse: return "noParse";
  }
  return "?";
}

namespace {

std::string Where(const std::string& path, const toml::node& n) {
  return fs::path(path).filename().string() + ":" + std::to_string(n.source().begin.line);
}

void RejectUnknownKeys(const toml::table& t, const std::set<std::string>& known, const std::string& path) {
  for (const auto& [k, v] : t) {
    if (!known.count(std::string(k.str()))) {
      throw CorpusError(Where(path, v) + ": unknown key '" + std::string(k.str()) + "'");
    }
  }
}

template <typename T>
std::optional<T> Opt(const toml::table& t, const char* key, const std::string& path) {
  const toml::node* n = t.get(key);
  if (!n) return std::nullopt;
  if (auto v = n->value<T>()) return *v;
  throw CorpusError(Where(path, *n) + ": '" + key + "' has the wrong type");
}

std::vector<std::string> Strings(const toml::table& t, const char* key, const std::string& path) {
  std::vector<std::string> out;
  const toml::node* n = t.get(key);
  if (!n) return out;
  const toml::array* a = n->as_array();
  if (!a) throw CorpusError(Where(path, *n) + ": '" + key + "' must be an array of strings");
  for (const auto& e : *a) {
    auto s = e.value<std::string>();
    if (!s) throw CorpusError(Where(path, e) + ": '" + key + "' must be an array of strings");
    out.push_back(*s);
  }
  return out;
}

void ReadLimits(const toml::table& t, Limits* l, const std::string& path) {
  RejectUnknownKeys(t, {"max_lift", "fuel", "max_entries_per_word"}, path);
  if (auto v = Opt<int64_t>(t, "max_lift", path)) l->max_lift = static_cast<int>(*v);
  if (auto v = Opt<int64_t>(t, "fuel", path)) l->fuel = *v;
  if (auto v = Opt<int64_t>(t, "max_entries_per_word", path)) l->max_entries_per_word = static_cast<int>(*v);
}

}  // namespace

CorpusFile ParseCorpus(const std::string& text, const std::string& path) {
  toml::table root;
  try {
    root = toml::parse(text, path);
  } catch (const toml::parse_error& e) {
    throw CorpusError(fs::path(path).filename().string() + ":" + std::to_string(e.source().begin.line) + ": " +
                      std::string(e.description()));
  }
  RejectUnknownKeys(root, {"lexicon", "budget_ms", "limits", "case"}, path);
  CorpusFile file;
  file.path = path;
  fs::path dir = fs::path(path).parent_path();
  for (const auto& l : Strings(root, "lexicon", path)) {
    fs::path p(l);
    file.lexicon.push_back((p.is_absolute() ? p : dir / p).lexically_normal().string());
  }
  if (const toml::node* b = root.get("budget_ms")) {
    auto v = b->value<double>();
    if (!v || *v <= 0) throw CorpusError(Where(path, *b) + ": budget_ms must be a positive number");
    file.budget_ms = *v;
  }
  Limits defaults;
  if (const toml::node* l = root.get("limits")) {
    if (!l->is_table()) throw CorpusError(Where(path, *l) + ": 'limits' must be a table");
    ReadLimits(*l->as_table(), &defaults, path);
  }
  const toml::node* cases = root.get("case");
  if (!cases) return file;
  const toml::array* arr = cases->as_array();
  if (!arr) throw CorpusError(Where(path, *cases) + ": use [[case]] tables");
  std::set<std::string> ids;
  for (const auto& node : *arr) {
    const toml::table* t = node.as_table();
    if (!t) throw CorpusError(Where(path, node) + ": use [[case]] tables");
    RejectUnknownKeys(*t, {"id", "sentence", "mode", "expect", "classes", "features", "limits", "note"}, path);
    CorpusCase c;
    c.id = Opt<std::string>(*t, "id", path).value_or("case-" + std::to_string(file.cases.size() + 1));
    if (!ids.insert(c.id).second) throw CorpusError(Where(path, node) + ": duplicate case id '" + c.id + "'");
    auto sentence = Opt<std::string>(*t, "sentence", path);
    if (!sentence) throw CorpusError(Where(path, node) + ": case '" + c.id + "' has no sentence");
    c.sentence = *sentence;
    std::string mode = Opt<std::string>(*t, "mode", path).value_or("alphaEq");
    if (mode == "alphaEq") {
      c.mode = ExpectMode::kAlphaEq;
    } else if (mode == "trueAmbiguity") {
      c.mode = ExpectMode::kTrueAmbiguity;
    } else if (mode == "noParse") {
      c.mode = ExpectMode::kNoParse;
    } else {
      throw CorpusError(Where(path, node) + ": unknown mode '" + mode + "'");
    }
    c.expect_text = Opt<std::string>(*t, "expect", path).value_or("");
    if (c.mode == ExpectMode::kAlphaEq && c.expect_text.empty()) {
      throw CorpusError(Where(path, node) + ": case '" + c.id + "' needs an expected term");
    }
    if (auto k = Opt<int64_t>(*t, "classes", path)) c.classes = static_cast<int>(*k);
    for (const auto& f : Strings(*t, "features", path)) c.features.insert(f);
    c.limits = defaults;
    if (const toml::node* l = t->get("limits")) {
      if (!l->is_table()) throw CorpusError(Where(path, *l) + ": 'limits' must be a table");
      ReadLimits(*l->as_table(), &c.limits, path);
    }
    c.note = Opt<std::string>(*t, "note", path).value_or("");
    file.cases.push_back(std::move(c));
  }
  return file;
}

CorpusFile LoadCorpus(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CorpusError("cannot read corpus file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ParseCorpus(ss.str(), path);
}

void ResolveCorpus(CorpusFile* file, const Lexicon& lex) {
  SemType prop = SemType::Truth();
  for (auto& c : file->cases) {
    if (c.expect_text.empty()) continue;
    try {
      c.expected = Simplify(BetaNormalize(ParseTerm(c.expect_text, lex.signature(), {}, &prop)));
    } catch (const std::exception& e) {
      throw CorpusError("case '" + c.id + "': expected term does not type-check: " + e.what());
    }
  }
}

CaseResult RunCase(const CorpusCase& c, const Lexicon& lex, const RunOptions& opts, double budget_ms) {
  CaseResult r;
  r.id = c.id;
  ParseOptions po;
  po.limits = c.limits;
  if (opts.max_lift) po.limits.max_lift = *opts.max_lift;
  if (opts.fuel) po.limits.fuel = *opts.fuel;
  if (opts.max_entries_per_word) po.limits.max_entries_per_word = *opts.max_entries_per_word;
  po.features = c.features;
  po.features.insert(opts.extra_features.begin(), opts.extra_features.end());
  po.eisner = opts.eisner;
  po.check_invariants = opts.check_invariants;

  auto t0 = std::chrono::steady_clock::now();
  try {
    ParseResult pr = Parse(c.sentence, lex, po);
    r.stats = pr.stats;
    r.derivations = static_cast<std::int64_t>(pr.derivations.size());
    for (const auto& k : pr.classes) r.readings.push_back(PrintTerm(k.sem));
    r.status = pr.classes.size() == 1 ? "Unique" : "TrueAmbiguity";
  } catch (const UnknownWord& e) {
    r.status = "UnknownWord";
    r.detail = e.what();
  } catch (const NoParse& e) {
    r.status = "NoParse";
    r.detail = e.what();
  } catch (const FuelExhausted& e) {
    r.status = "FuelExhausted";
    r.detail = e.what();
  } catch (const TooManyEntries& e) {
    r.status = "TooManyEntries";
    r.detail = e.what();
  } catch (const std::exception& e) {
    r.status = "Error";
    r.detail = e.what();
  }
  r.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();

  switch (c.mode) {
    case ExpectMode::kAlphaEq:
      if (r.status != "Unique") {
        if (r.detail.empty()) r.detail = "expected a unique reading, got " + std::to_string(r.readings.size());
        break;
      }
      if (!c.expected) {
        r.detail = "expected term not resolved";
        break;
      }
      {
        SemType prop = SemType::Truth();
        Term got = ParseTerm(r.readings[0], lex.signature(), {}, &prop);
        r.pass = AlphaEq(got, *c.expected);
        if (!r.pass) r.detail = "expected " + PrintTerm(*c.expected);
      }
      break;
    case ExpectMode::kTrueAmbiguity:
      r.pass = r.status == "TrueAmbiguity" &&
               (!c.classes || static_cast<int>(r.readings.size()) == *c.classes);
      if (!r.pass && r.detail.empty()) {
        r.detail = "expected " + (c.classes ? std::to_string(*c.classes) : std::string("several")) +
                   " readings, got " + std::to_string(r.readings.size());
      }
      break;
    case ExpectMode::kNoParse:
      r.pass = r.status == "NoParse" || r.status == "UnknownWord";
      if (!r.pass && r.detail.empty()) r.detail = "expected no parse";
      break;
  }
  if (r.pass && r.wall_ms > budget_ms) {
    r.pass = false;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.1f", budget_ms);
    r.detail = std::string("over the time budget of ") + buf + " ms";
  }
  return r;
}

std::vector<CaseResult> RunCorpus(const CorpusFile& file, const Lexicon& lex, const RunOptions& opts) {
  std::vector<CaseResult> results(file.cases.size());
  double budget = opts.budget_ms.value_or(file.budget_ms);
  int threads = opts.threads > 0 ? opts.threads : static_cast<int>(std::thread::hardware_concurrency());
  threads = std::clamp(threads, 1, std::max(1, static_cast<int>(file.cases.size())));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < file.cases.size(); i = next++) {
      results[i] = RunCase(file.cases[i], lex, opts, budget);
    }
  };
  std::vector<std::thread> pool;
  for (int i = 1; i < threads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return results;
}

std::string FormatTable(const std::vector<CaseResult>& results) {
  std::size_t id_w = 2, st_w = 6;
  for (const auto& r : results) {
    id_w = std::max(id_w, r.id.size());
    st_w = std::max(st_w, r.status.size());
  }
  std::string out;
  char buf[512];
  std::snprintf(buf, sizeof buf, "%-*s  %-4s  %-*s  %9s  %7s  %s\n", static_cast<int>(id_w), "id", "res",
                static_cast<int>(st_w), "status", "ms", "items", "reading");
  out += buf;
  int passed = 0;
  for (const auto& r : results) {
    passed += r.pass;
    std::string reading = r.readings.size() == 1 ? r.readings[0]
                          : r.readings.empty()    ? r.detail
                                                  : std::to_string(r.readings.size()) + " readings";
    std::snprintf(buf, sizeof buf, "%-*s  %-4s  %-*s  %9.3f  %7lld  ", static_cast<int>(id_w), r.id.c_str(),
                  r.pass ? "PASS" : "FAIL", static_cast<int>(st_w), r.status.c_str(), r.wall_ms,
                  static_cast<long long>(r.stats.items));
    out += buf;
    out += reading;
    out += '\n';
    if (!r.pass && !r.detail.empty() && reading != r.detail) out += "    " + r.detail + "\n";
  }
  out += std::to_string(passed) + "/" + std::to_string(results.size()) + " passed\n";
  return out;
}

nlohmann::json CaseRecord(const CaseResult& r) {
  return {{"id", r.id},
          {"result", r.pass ? "PASS" : "FAIL"},
          {"status", r.status},
          {"readings", r.readings},
          {"detail", r.detail},
          {"wall_ms", r.wall_ms},
          {"derivations", r.derivations},
          {"stats",
           {{"items", r.stats.items},
            {"rule_attempts", r.stats.rule_attempts},
            {"pruned_by_normal_form", r.stats.pruned_by_normal_form},
            {"nonground_roots", r.stats.nonground_roots}}}};
}

}  // namespace catspec
