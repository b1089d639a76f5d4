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


#include <httplib.h>

#include <atomic>
#include <condition_variable>
#include <fstream>
#include <mutex>
#include <thread>

#include "geobench/error.hpp"
#include "geobench/harness.hpp"
#include "geobench/result_counter.hpp"

namespace geobench::harness {
namespace {

using Clock = std::chrono::steady_clock;

struct Url {
  std::string host;
  int port = 80;
  std::string path = "/";
};

Url parse_url(const std::string& url) {
  constexpr std::string_view kScheme = "http://";
  if (url.rfind("https://", 0) == 0) {
    throw ConfigError("https endpoints are not supported; use a plain http URL: " + url);
  }
  if (url.rfind(kScheme, 0) != 0) throw ConfigError("endpoint URL must start with http://: " + url);
  Url u;
  const std::string rest = url.substr(kScheme.size());
  const auto slash = rest.find('/');
  const std::string authority = rest.substr(0, slash);
  if (slash != std::string::npos) u.path = rest.substr(slash);
  const auto colon = authority.rfind(':');
  u.host = authority.substr(0, colon);
  if (colon != std::string::npos) {
    const std::string port = authority.substr(colon + 1);
    try {
      std::size_t used = 0;
      u.port = std::stoi(port, &used);
      if (used != port.size() || u.port <= 0 || u.port > 65535) throw std::invalid_argument(port);
    } catch (const std::exception&) {
      throw ConfigError("bad port in endpoint URL: " + url);
    }
  }
  if (u.host.empty()) throw ConfigError("endpoint URL has no host: " + url);
  return u;
}

std::vector<std::string> hook_from_json(const nlohmann::json& j) {
  if (j.is_null()) return {};
  if (j.is_string()) {
    // Run through the shell; extra arguments arrive as "$@".
    return {"/bin/sh", "-c", j.get<std::string>() + " \"$@\"", "hook"};
  }
  return j.get<std::vector<std::string>>();
}

template <typename Rep, typename Period>
void set_timeouts(httplib::Client& cli, std::chrono::duration<Rep, Period> d) {
  const auto us = std::chrono::duration_cast<std::chrono::microseconds>(d).count();
  const auto sec = static_cast<time_t>(us / 1000000);
  const auto usec = static_cast<time_t>(us % 1000000);
  cli.set_connection_timeout(sec, usec);
  cli.set_read_timeout(sec, usec);
  cli.set_write_timeout(sec, usec);
}

}  // namespace

void EndpointConfig::validate(bool needs_cold_hook) const {
  parse_url(query_url);
  if (update_url) parse_url(*update_url);
  if (needs_cold_hook && cold_hook.empty()) {
    throw ConfigError("endpoint '" + label + "' has no cold_hook but cold runs were requested");
  }
  if (request_timeout.count() <= 0) throw ConfigError("request_timeout must be positive");
}

void from_json(const nlohmann::json& j, EndpointConfig& c) {
  c = EndpointConfig{};
  c.label = j.value("label", std::string("endpoint"));
  c.query_url = j.at("query_url").get<std::string>();
  if (j.contains("update_url") && !j["update_url"].is_null()) c.update_url = j["update_url"].get<std::string>();
  if (j.contains("dialect")) {
    const auto d = dialect_from_string(j["dialect"].get<std::string>());
    if (!d) throw ConfigError("unknown dialect " + j["dialect"].dump());
    c.dialect = *d;
  }
  const auto method = j.value("method", std::string("post"));
  if (method == "get") {
    c.method = HttpMethod::kGet;
  } else if (method == "post") {
    c.method = HttpMethod::kPostForm;
  } else if (method == "post-direct") {
    c.method = HttpMethod::kPostDirect;
  } else {
    throw ConfigError("method must be get, post or post-direct");
  }
  if (j.contains("request_timeout_secs")) {
    c.request_timeout = std::chrono::milliseconds(
        static_cast<long long>(j["request_timeout_secs"].get<double>() * 1000));
  }
  if (j.contains("readiness_timeout_secs")) {
    c.readiness_timeout = std::chrono::milliseconds(
        static_cast<long long>(j["readiness_timeout_secs"].get<double>() * 1000));
  }
  c.cold_hook = hook_from_json(j.value("cold_hook", nlohmann::json()));
  c.load_hook = hook_from_json(j.value("load_hook", nlohmann::json()));
  const auto graphs = j.value("named_graphs", nlohmann::json::object());
  for (const auto& [name, uri] : graphs.items()) {
    const auto kind = gen::dataset_from_string(name);
    if (!kind) throw ConfigError("named_graphs: unknown dataset '" + name + "'");
    c.named_graphs[*kind] = uri.get<std::string>();
  }
}

void to_json(nlohmann::json& j, const EndpointConfig& c) {
  j = nlohmann::json{{"label", c.label},
                     {"query_url", c.query_url},
                     {"dialect", to_string(c.dialect)},
                     {"method", c.method == HttpMethod::kGet        ? "get"
                                : c.method == HttpMethod::kPostForm ? "post"
                                                                    : "post-direct"},
                     {"request_timeout_secs", c.request_timeout.count() / 1000.0},
                     {"readiness_timeout_secs", c.readiness_timeout.count() / 1000.0},
                     {"cold_hook", c.cold_hook},
                     {"load_hook", c.load_hook}};
  if (c.update_url) j["update_url"] = *c.update_url;
  nlohmann::json graphs = nlohmann::json::object();
  for (const auto& [kind, uri] : c.named_graphs) graphs[std::string(gen::to_string(kind))] = uri;
  j["named_graphs"] = graphs;
}

EndpointConfig load_endpoint_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open endpoint config " + path.string());
  try {
    auto c = nlohmann::json::parse(in).get<EndpointConfig>();
    c.validate();
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

std::vector<std::string> graphs_for(const EndpointConfig& ep, const QueryInstance& q) {
  std::vector<gen::DatasetKind> kinds;
  if (const auto* s = q.selection()) kinds = {s->dataset};
  if (const auto* j = q.join()) kinds = j->left == j->right ? std::vector{j->left} : std::vector{j->left, j->right};
  std::vector<std::string> out;
  for (auto kind : kinds) {
    if (const auto it = ep.named_graphs.find(kind); it != ep.named_graphs.end()) out.push_back(it->second);
  }
  return out;
}

Measurement execute_query(const EndpointConfig& ep, const std::string& sparql,
                          std::chrono::milliseconds timeout,
                          const std::vector<std::string>& default_graphs) {
  const Url url = parse_url(ep.query_url);
  httplib::Client cli(url.host, url.port);
  cli.set_keep_alive(false);
  // The watchdog enforces the deadline; socket timeouts only back it up.
  set_timeouts(cli, timeout + std::chrono::seconds(5));

  httplib::Params params;
  for (const auto& g : default_graphs) params.emplace("default-graph-uri", g);
  httplib::Request req;
  req.path = url.path;
  switch (ep.method) {
    case HttpMethod::kGet:
      params.emplace("query", sparql);
      req.method = "GET";
      break;
    case HttpMethod::kPostForm:
      params.emplace("query", sparql);
      req.method = "POST";
      req.body = httplib::detail::params_to_query_str(params);
      req.set_header("Content-Type", "application/x-www-form-urlencoded");
      params.clear();
      break;
    case HttpMethod::kPostDirect:
      req.method = "POST";
      req.body = sparql;
      req.set_header("Content-Type", "application/sparql-query");
      break;
  }
  if (!params.empty()) {
    req.path += (req.path.find('?') == std::string::npos ? "?" : "&") +
                httplib::detail::params_to_query_str(params);
  }
  req.set_header("Accept",
                 "application/sparql-results+json, application/sparql-results+xml;q=0.9, "
                 "text/csv;q=0.5, text/tab-separated-values;q=0.5");

  int http_status = 0;
  ResultCounter counter;
  std::string error_body;
  std::atomic<bool> aborted{false};
  req.response_handler = [&](const httplib::Response& r) {
    http_status = r.status;
    counter = ResultCounter(format_from_content_type(r.get_header_value("Content-Type")));
    return true;
  };
  req.content_receiver = [&](const char* data, std::size_t n, std::uint64_t, std::uint64_t) {
    if (http_status / 100 != 2) {
      if (error_body.size() < 300) error_body.append(data, std::min<std::size_t>(n, 300 - error_body.size()));
    } else {
      counter.feed({data, n});
    }
    return !aborted.load();
  };

  std::mutex mu;
  std::condition_variable cv;
  bool done = false;
  const auto start = Clock::now();
  const auto deadline = start + timeout;
  std::thread watchdog([&] {
    std::unique_lock lock(mu);
    if (cv.wait_until(lock, deadline, [&] { return done; })) return;
    aborted = true;
    // stop() only interrupts a request that has reached the socket, so
    // repeat it until the sender gives up.
    while (!done) {
      lock.unlock();
      cli.stop();
      lock.lock();
      cv.wait_for(lock, std::chrono::milliseconds(10), [&] { return done; });
    }
  });
  const auto result = cli.send(req);
  const auto end = Clock::now();
  {
    std::lock_guard lock(mu);
    done = true;
  }
  cv.notify_all();
  watchdog.join();

  Measurement m;
  m.elapsed = end - start;
  if (aborted || m.elapsed >= timeout) {
    m.status = Status::kTimeout;
    m.error_detail = "exceeded " + std::to_string(timeout.count()) + " ms";
  } else if (!result) {
    m.status = Status::kError;
    m.error_detail = "transport: " + httplib::to_string(result.error());
  } else if (http_status / 100 != 2) {
    m.status = Status::kError;
    m.error_detail = "HTTP " + std::to_string(http_status);
    if (!error_body.empty()) m.error_detail += ": " + error_body;
  } else if (!counter.finish()) {
    m.status = Status::kError;
    m.error_detail = counter.error();
  } else {
    m.result_rows = counter.rows();
  }
  return m;
}

void wait_until_ready(const EndpointConfig& ep) {
  const auto deadline = Clock::now() + ep.readiness_timeout;
  std::string last;
  while (true) {
    const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - Clock::now());
    if (left.count() <= 0) break;
    const auto m = execute_query(ep, "ASK {}", std::min(left, std::chrono::milliseconds(10000)));
    if (m.status == Status::kOk) return;
    last = m.error_detail;
    std::this_thread::sleep_for(std::chrono::milliseconds(250));
  }
  throw HookFailure("endpoint '" + ep.label + "' not ready after cold hook" +
                    (last.empty() ? std::string() : " (" + last + ")"));
}

}  // namespace geobench::harness
