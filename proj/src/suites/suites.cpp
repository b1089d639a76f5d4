// Copyright 2026 The geobench Authors
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


#include "geobench/suites.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <set>

#include "geobench/error.hpp"

namespace geobench::suites {
namespace {

constexpr std::array<std::pair<Category, std::string_view>, 8> kCategoryNames = {{
    {Category::kNonTopological, "NonTopological"},
    {Category::kSpatialSelection, "SpatialSelection"},
    {Category::kSpatialJoin, "SpatialJoin"},
    {Category::kAggregate, "Aggregate"},
    {Category::kReverseGeocoding, "ReverseGeocoding"},
    {Category::kMapSearch, "MapSearch"},
    {Category::kRapidMapping, "RapidMapping"},
    {Category::kSynthetic, "Synthetic"},
}};

constexpr std::array<std::pair<PlaceholderKind, std::string_view>, 5> kKindNames = {{
    {PlaceholderKind::kWkt, "wkt"},
    {PlaceholderKind::kNumber, "number"},
    {PlaceholderKind::kIri, "iri"},
    {PlaceholderKind::kString, "string"},
    {PlaceholderKind::kFunction, "function"},
}};

bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

/// A {name} or {fn:name} reference inside a template.
struct Token {
  std::size_t begin;
  std::size_t end;  // one past '}'
  bool function;
  std::string name;
};

std::vector<Token> scan(const std::string& text) {
  std::vector<Token> out;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] != '{') continue;
    std::size_t j = i + 1;
    const bool function = text.compare(j, 3, "fn:") == 0;
    if (function) j += 3;
    const std::size_t start = j;
    if (j >= text.size() || !(std::isalpha(static_cast<unsigned char>(text[j])) || text[j] == '_')) continue;
    while (j < text.size() && ident_char(text[j])) ++j;
    if (j < text.size() && text[j] == '}') {
      out.push_back({i, j + 1, function, text.substr(start, j - start)});
      i = j;
    }
  }
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ManifestError("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

nlohmann::json parse_file(const std::filesystem::path& path) {
  try {
    return nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw ManifestError(path.string() + ": " + e.what());
  }
}

Dialect parse_dialect(const std::string& name, const std::string& where) {
  const auto d = dialect_from_string(name);
  if (!d) throw ManifestError(where + ": unknown dialect '" + name + "'");
  return *d;
}

std::map<Dialect, DialectProfile> parse_dialects(const nlohmann::json& j) {
  std::map<Dialect, DialectProfile> out;
  for (const auto& [name, body] : j.at("dialects").items()) {
    DialectProfile profile;
    profile.prefixes = body.value("prefixes", std::map<std::string, std::string>{});
    profile.functions = body.at("functions").get<std::map<std::string, std::string>>();
    out[parse_dialect(name, "dialect table")] = std::move(profile);
  }
  return out;
}

QueryTemplateEntry parse_entry(const nlohmann::json& j) {
  QueryTemplateEntry e;
  e.id = j.at("id").get<std::string>();
  const auto category = j.at("category").get<std::string>();
  const auto c = category_from_string(category);
  if (!c) throw ManifestError(e.id + ": unknown category '" + category + "'");
  e.category = *c;
  e.operation = j.value("operation", std::string{});
  e.description = j.value("description", std::string{});
  e.sparql_template = j.at("sparql").get<std::string>();
  e.note = j.value("note", std::string{});
  std::set<std::string> names;
  for (const auto& p : j.value("placeholders", nlohmann::json::array())) {
    Placeholder ph;
    ph.name = p.at("name").get<std::string>();
    const auto kind = p.at("kind").get<std::string>();
    const auto it = std::find_if(kKindNames.begin(), kKindNames.end(),
                                 [&](const auto& k) { return k.second == kind; });
    if (it == kKindNames.end()) throw ManifestError(e.id + ": unknown placeholder kind '" + kind + "'");
    ph.kind = it->first;
    ph.description = p.value("description", std::string{});
    if (!names.insert(ph.name).second) throw ManifestError(e.id + ": placeholder {" + ph.name + "} declared twice");
    e.placeholders.push_back(std::move(ph));
  }
  const auto variants = j.value("dialect_variants", nlohmann::json::object());
  for (const auto& [dialect, text] : variants.items()) {
    e.dialect_variants[parse_dialect(dialect, e.id)] = text.get<std::string>();
  }
  const auto skips = j.value("skip", nlohmann::json::object());
  for (const auto& [dialect, reason] : skips.items()) {
    e.skip[parse_dialect(dialect, e.id)] = reason.get<std::string>();
  }
  return e;
}

void validate(const Suite& suite) {
  std::set<std::string> ids;
  for (const auto& e : suite.entries) {
    if (!ids.insert(e.id).second) throw ManifestError(suite.name + ": duplicate query id " + e.id);
    std::set<std::string> declared, used;
    for (const auto& p : e.placeholders) declared.insert(p.name);
    for (const auto& [dialect, profile] : suite.dialects) {
      if (e.skip.count(dialect)) continue;
      const std::string& text = e.template_for(dialect);
      if (text.empty()) throw ManifestError(e.id + ": empty template");
      for (const Token& t : scan(text)) {
        if (t.function) {
          if (!profile.functions.count(t.name)) {
            throw ManifestError(e.id + ": function {fn:" + t.name + "} is not defined for " +
                                std::string(to_string(dialect)));
          }
        } else if (!declared.count(t.name)) {
          throw ManifestError(e.id + ": undeclared placeholder {" + t.name + "}");
        } else {
          used.insert(t.name);
        }
      }
    }
    for (const auto& name : declared) {
      if (!used.count(name)) throw ManifestError(e.id + ": placeholder {" + name + "} is never used");
    }
  }
}

std::string escape_literal(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '\\': out += "\\\\"; break;
      case '"': out += "\\\""; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      default: out += c;
    }
  }
  return out;
}

std::string render_value(const Placeholder& p, const nlohmann::json& v, Dialect d,
                         const std::string& id) {
  const auto fail = [&](const std::string& why) -> std::string {
    throw ManifestError(id + ": value for {" + p.name + "} " + why);
  };
  switch (p.kind) {
    case PlaceholderKind::kNumber:
      if (!v.is_number()) return fail("must be a number");
      return v.dump();
    case PlaceholderKind::kWkt:
      if (!v.is_string() || v.get<std::string>().empty()) return fail("must be a WKT string");
      return wkt_literal(escape_literal(v.get<std::string>()));
    case PlaceholderKind::kString:
      if (v.is_number()) return "\"" + v.dump() + "\"";
      if (!v.is_string()) return fail("must be a string");
      return "\"" + escape_literal(v.get<std::string>()) + "\"";
    case PlaceholderKind::kIri: {
      if (!v.is_string()) return fail("must be an IRI string");
      const auto iri = v.get<std::string>();
      if (iri.empty() || iri.find_first_of("<>\"{}|^`\\ \t\n") != std::string::npos) {
        return fail("is not a valid IRI");
      }
      return "<" + iri + ">";
    }
    case PlaceholderKind::kFunction: {
      if (!v.is_string()) return fail("must name a topological function");
      const auto f = geom::topo_function_from_string(v.get<std::string>());
      if (!f) return fail("names no topological function");
      return "<" + function_iri(*f, d) + ">";
    }
  }
  return fail("has an unknown kind");
}

bool uses_prefix(const std::string& body, const std::string& prefix) {
  const std::string needle = prefix + ":";
  for (std::size_t at = body.find(needle); at != std::string::npos; at = body.find(needle, at + 1)) {
    if (at == 0 || !(ident_char(body[at - 1]) || body[at - 1] == ':' || body[at - 1] == '/' ||
                     body[at - 1] == '<' || body[at - 1] == '?' || body[at - 1] == '$')) {
      return true;
    }
  }
  return false;
}

/// Uniform double in [0, 1) from the top 53 bits.
double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace

std::string_view to_string(Category c) {
  for (const auto& [value, name] : kCategoryNames) {
    if (value == c) return name;
  }
  return "?";
}

std::optional<Category> category_from_string(std::string_view name) {
  for (const auto& [value, text] : kCategoryNames) {
    if (text == name) return value;
  }
  return std::nullopt;
}

const std::string& QueryTemplateEntry::template_for(Dialect d) const {
  const auto it = dialect_variants.find(d);
  return it == dialect_variants.end() ? sparql_template : it->second;
}

std::filesystem::path default_suites_dir() {
  if (const char* env = std::getenv("GEOBENCH_SUITES_DIR"); env && *env) return env;
  return GEOBENCH_DEFAULT_SUITES_DIR;
}

std::filesystem::path default_bindings_path() {
  if (const char* env = std::getenv("GEOBENCH_BINDINGS"); env && *env) return env;
  auto dir = default_suites_dir().lexically_normal();
  if (dir.filename().empty()) dir = dir.parent_path();
  return dir.parent_path() / "bindings" / "greece-defaults.json";
}

Suite load_suite_file(const std::filesystem::path& manifest, const std::filesystem::path& dialects) {
  const nlohmann::json table = parse_file(dialects);
  const nlohmann::json j = parse_file(manifest);
  try {
    Suite s;
    if (j.at("schema_version").get<int>() != 1) {
      throw ManifestError(manifest.string() + ": unsupported schema_version");
    }
    s.name = j.at("suite").get<std::string>();
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "micro") {
      s.kind = SuiteKind::kMicro;
    } else if (kind == "macro") {
      s.kind = SuiteKind::kMacro;
    } else if (kind == "synthetic") {
      s.kind = SuiteKind::kSynthetic;
    } else {
      throw ManifestError(manifest.string() + ": unknown suite kind '" + kind + "'");
    }
    s.description = j.value("description", std::string{});
    s.duration_secs = j.value("duration_secs", 3600.0);
    s.prefixes = j.value("prefixes", std::map<std::string, std::string>{});
    s.dialects = parse_dialects(table);
    for (const auto& entry : j.at("queries")) s.entries.push_back(parse_entry(entry));
    validate(s);
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw ManifestError(manifest.string() + ": " + e.what());
  }
}

Suite load_suite(std::string_view name, const std::filesystem::path& dir) {
  if (std::find(kSuiteNames.begin(), kSuiteNames.end(), name) == kSuiteNames.end()) {
    throw UnknownSuite("unknown suite '" + std::string(name) + "'");
  }
  return load_suite_file(dir / (std::string(name) + ".json"), dir / "dialects.json");
}

BindingValues Bindings::defaults() const {
  BindingValues out;
  for (const auto& [name, domain] : domains) {
    if (domain.is_array()) {
      if (!domain.empty()) out[name] = domain.front();
    } else if (domain.is_object()) {
      out[name] = (domain.at("min").get<double>() + domain.at("max").get<double>()) / 2;
    } else {
      out[name] = domain;
    }
  }
  return out;
}

Bindings parse_bindings(const nlohmann::json& j) {
  try {
    Bindings b;
    b.description = j.value("description", std::string{});
    b.authoritative = j.value("authoritative", false);
    b.prefixes = j.value("prefixes", std::map<std::string, std::string>{});
    for (const auto& [name, domain] : j.at("values").items()) {
      if (domain.is_object() && !(domain.contains("min") && domain.contains("max") &&
                                  domain["min"].is_number() && domain["max"].is_number())) {
        throw ManifestError("binding '" + name + "': a range needs numeric min and max");
      }
      b.domains[name] = domain;
    }
    return b;
  } catch (const nlohmann::json::exception& e) {
    throw ManifestError(std::string("bindings: ") + e.what());
  }
}

Bindings load_bindings(const std::filesystem::path& path) { return parse_bindings(parse_file(path)); }

ParameterSampler::ParameterSampler(Bindings bindings, std::uint64_t seed)
    : bindings_(std::move(bindings)), rng_(seed) {}

BindingValues ParameterSampler::next() {
  BindingValues out;
  for (const auto& [name, domain] : bindings_.domains) {
    if (domain.is_array()) {
      if (!domain.empty()) out[name] = domain[rng_() % domain.size()];
    } else if (domain.is_object()) {
      const double lo = domain["min"].get<double>();
      const double hi = domain["max"].get<double>();
      out[name] = lo + (hi - lo) * unit(rng_);
    } else {
      out[name] = domain;
    }
  }
  return out;
}

QueryInstance bind_entry(const Suite& suite, const QueryTemplateEntry& entry,
                         const BindingValues& values, Dialect dialect,
                         const std::map<std::string, std::string>& prefix_overrides) {
  QueryInstance q;
  q.id = entry.id;
  q.category = std::string(to_string(entry.category));
  if (const auto skip = entry.skip.find(dialect); skip != entry.skip.end()) {
    q.skip_reason = skip->second;
    return q;
  }
  const auto profile = suite.dialects.find(dialect);
  if (profile == suite.dialects.end()) {
    throw ManifestError(suite.name + ": no profile for dialect " + std::string(to_string(dialect)));
  }
  const std::string& text = entry.template_for(dialect);
  std::string body;
  std::size_t at = 0;
  for (const Token& t : scan(text)) {
    body.append(text, at, t.begin - at);
    at = t.end;
    if (t.function) {
      body += profile->second.functions.at(t.name);
      continue;
    }
    const auto ph = std::find_if(entry.placeholders.begin(), entry.placeholders.end(),
                                 [&](const Placeholder& p) { return p.name == t.name; });
    const auto value = values.find(t.name);
    if (value == values.end()) {
      throw MissingBinding(entry.id + ": no value bound for {" + t.name + "}");
    }
    body += render_value(*ph, value->second, dialect, entry.id);
  }
  body.append(text, at);

  std::map<std::string, std::string> prefixes = profile->second.prefixes;
  for (const auto& [name, iri] : suite.prefixes) prefixes[name] = iri;
  for (const auto& [name, iri] : prefix_overrides) prefixes[name] = iri;
  std::string header;
  for (const auto& [name, iri] : prefixes) {
    if (uses_prefix(body, name)) header += "PREFIX " + name + ": <" + iri + ">\n";
  }
  q.sparql = header + body;
  return q;
}

std::vector<QueryInstance> bind_suite(const Suite& suite, const BindingValues& values,
                                      Dialect dialect,
                                      const std::map<std::string, std::string>& prefix_overrides) {
  std::vector<QueryInstance> out;
  out.reserve(suite.entries.size());
  for (const auto& e : suite.entries) out.push_back(bind_entry(suite, e, values, dialect, prefix_overrides));
  return out;
}

}  // namespace geobench::suites
