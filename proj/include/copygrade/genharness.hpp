/* Copyright 2026 The copygrade Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

// Description generation: prompt construction under the two prompting
// conditions, a chat-completion client, and a resumable batch runner.

#ifndef COPYGRADE_GENHARNESS_HPP_
#define COPYGRADE_GENHARNESS_HPP_

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstddef>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <thread>
#include <utility>
#include <vector>

#include "json.hpp"

#include "copygrade/error.hpp"
#include "copygrade/http.hpp"
#include "copygrade/ingest.hpp"
#include "copygrade/record.hpp"

namespace copygrade {

enum class Condition { with_sample, without_sample };

inline std::string_view condition_name(Condition c) {
  return c == Condition::with_sample ? "with_sample" : "without_sample";
}

inline Condition parse_condition(std::string_view s) {
  if (s == "with" || s == "with_sample") return Condition::with_sample;
  if (s == "without" || s == "without_sample") return Condition::without_sample;
  throw Error("unknown condition \"" + std::string(s) +
              "\" (expected with or without)");
}

// ---------------------------------------------------------------------------
// Prompt

namespace prompt {

inline constexpr std::string_view kIntro =
    "Write a product description for the following product:\n";

// Worked example shown to the model in the with-sample condition. The
// missing space after "Set!" is part of the original template.
inline constexpr std::string_view kExampleBlock =
    "Example1:\n"
    "Adorable Iwako Japanese Vehicle & Plane Eraser Set!"
    "Fun and functional erasers perfect for kids, "
    "students, and collectors. These high-quality erasers "
    "feature detailed designs of various vehicles and planes. "
    "Great for school, office, or creative projects. Shop now!\n";

inline constexpr std::string_view kInstructions =
    "Avoid using headers like 'Introduce the Product' or "
    "'Highlight Key Features.' Focus only on the product's benefits "
    "and features in a consumer-friendly tone. Only "
    "generate description, no unnecessary details.Keep it concise.";

inline constexpr std::string_view kOutputMarker = "Product Description:-";

}  // namespace prompt

// Renders the generation prompt. The two conditions differ only by the
// example block.
inline std::string build_prompt(const ProductRecord& rec, Condition condition) {
  std::vector<std::string> problems;
  for (const auto& v : validate_record(rec).violations) {
    // The description is what we are about to generate.
    if (v != "empty description") problems.push_back(v);
  }
  if (!problems.empty()) {
    std::string msg = "cannot build prompt for \"" + rec.product_name + "\":";
    for (const auto& p : problems) msg += " " + p + ";";
    msg.pop_back();
    throw Error(msg);
  }
  std::string out;
  out += prompt::kIntro;
  out += "Product Name: " + rec.product_name + "\n";
  out += "Product Category: " + rec.product_category + "\n";
  out += "About the Product: " + rec.about_product + "\n\n";
  if (condition == Condition::with_sample) out += prompt::kExampleBlock;
  out += prompt::kInstructions;
  out += prompt::kOutputMarker;
  return out;
}

// ---------------------------------------------------------------------------
// Backend

inline constexpr const char* kApiKeyEnv = "COPYGRADE_API_KEY";

struct BackendConfig {
  std::string endpoint;
  std::string model;
  // Row label in reports; defaults to `model`.
  std::string label;
  int max_tokens = 256;
  double temperature = 0.7;
  std::optional<long long> seed;
  std::chrono::milliseconds timeout{60000};
  int max_in_flight = 4;
  int retries = 2;
  std::chrono::milliseconds retry_backoff{500};

  std::string display_label() const { return label.empty() ? model : label; }

  void validate() const {
    if (endpoint.empty()) throw Error("backend config: endpoint is required");
    http::parse_url(endpoint);
    if (model.empty()) throw Error("backend config: model is required");
    if (timeout.count() <= 0) throw Error("backend config: timeout must be > 0");
    if (retries < 0) throw Error("backend config: retries must be >= 0");
    if (max_in_flight < 1) throw Error("backend config: max_in_flight must be >= 1");
    if (max_tokens < 1) throw Error("backend config: max_tokens must be >= 1");
  }
};

inline BackendConfig backend_from_json(const nlohmann::json& j) {
  BackendConfig b;
  try {
    b.endpoint = j.at("endpoint").get<std::string>();
    b.model = j.at("model").get<std::string>();
    b.label = j.value("label", std::string{});
    b.max_tokens = j.value("max_tokens", b.max_tokens);
    b.temperature = j.value("temperature", b.temperature);
    if (j.contains("seed") && !j["seed"].is_null()) {
      b.seed = j["seed"].get<long long>();
    }
    if (j.contains("timeout_seconds")) {
      b.timeout = std::chrono::milliseconds(
          static_cast<long long>(j["timeout_seconds"].get<double>() * 1000.0));
    }
    b.max_in_flight = j.value("max_in_flight", b.max_in_flight);
    b.retries = j.value("retries", b.retries);
    if (j.contains("retry_backoff_ms")) {
      b.retry_backoff =
          std::chrono::milliseconds(j["retry_backoff_ms"].get<long long>());
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("backend config: ") + e.what());
  }
  if (j.contains("api_key")) {
    throw Error("backend config: api_key is not accepted in config files; set " +
                std::string(kApiKeyEnv) + " instead");
  }
  b.validate();
  return b;
}

inline BackendConfig load_backend_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open backend config " + path.string());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
  return backend_from_json(j);
}

// Report label of a generated description: "<model>" or "<model> (Sample)".
inline std::string source_label_for(const BackendConfig& backend,
                                    Condition condition) {
  return backend.display_label() +
         (condition == Condition::with_sample ? " (Sample)" : "");
}

inline nlohmann::json chat_request(const BackendConfig& backend,
                                   std::string_view prompt_text) {
  nlohmann::json req = {
      {"model", backend.model},
      {"messages", nlohmann::json::array({{{"role", "user"},
                                           {"content", prompt_text}}})},
      {"max_tokens", backend.max_tokens},
      {"temperature", backend.temperature},
  };
  if (backend.seed) req["seed"] = *backend.seed;
  return req;
}

// Extracts the completion text from a chat-completion (or plain completion)
// reply.
inline std::string parse_chat_response(std::string_view body) {
  try {
    const auto j = nlohmann::json::parse(body);
    const auto& choice = j.at("choices").at(0);
    if (choice.contains("message")) {
      return choice.at("message").at("content").get<std::string>();
    }
    return choice.at("text").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw ProtocolError(std::string("malformed completion response: ") +
                        e.what());
  }
}

struct GenerationResult {
  std::size_t record_index = 0;
  ProductRecord product;  // description holds the generated text, if any
  Condition condition = Condition::without_sample;
  std::string model;
  std::optional<std::string> text;
  std::optional<std::string> error;
  int attempts = 0;
  std::string request_time;
  std::string response_time;

  bool ok() const { return text.has_value(); }
};

namespace detail {

inline std::string utc_timestamp(std::chrono::system_clock::time_point tp) {
  const auto secs = std::chrono::time_point_cast<std::chrono::seconds>(tp);
  const auto ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(tp - secs).count();
  const std::time_t t = std::chrono::system_clock::to_time_t(secs);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[96];
  std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:%02d:%02d.%03dZ",
                tm.tm_year + 1900, tm.tm_mon + 1, tm.tm_mday, tm.tm_hour,
                tm.tm_min, tm.tm_sec, static_cast<int>(ms));
  return buf;
}

inline std::string trim_ws(std::string_view s) {
  const auto ws = " \t\r\n\f\v";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  return std::string(s.substr(b, s.find_last_not_of(ws) - b + 1));
}

}  // namespace detail

// One completion request, with retries on transport failures and HTTP error
// statuses. Never throws for remote failures: the error lands in the result.
inline GenerationResult generate(const BackendConfig& backend,
                                 std::string_view prompt_text,
                                 const std::string& api_key = {}) {
  GenerationResult r;
  r.model = backend.model;
  const auto url = http::parse_url(backend.endpoint);
  httplib::Headers headers;
  if (!api_key.empty()) headers.emplace("Authorization", "Bearer " + api_key);
  const std::string body = chat_request(backend, prompt_text).dump();
  r.request_time = detail::utc_timestamp(std::chrono::system_clock::now());
  for (int attempt = 0; attempt <= backend.retries; ++attempt) {
    ++r.attempts;
    try {
      const auto res = http::post_json(url, body, backend.timeout, headers);
      if (res.status >= 400) {
        throw RetryableError("backend returned HTTP " + std::to_string(res.status));
      }
      r.text = detail::trim_ws(parse_chat_response(res.body));
      r.error.reset();
      break;
    } catch (const RetryableError& e) {
      r.error = e.what();
      if (attempt < backend.retries) {
        std::this_thread::sleep_for(backend.retry_backoff *
                                    (1 << std::min(attempt, 10)));
      }
    } catch (const Error& e) {
      r.error = e.what();
      break;
    }
  }
  r.response_time = detail::utc_timestamp(std::chrono::system_clock::now());
  return r;
}

inline nlohmann::json to_json(const GenerationResult& r) {
  nlohmann::json j = {
      {"record_index", r.record_index},
      {"condition", condition_name(r.condition)},
      {"model", r.model},
      {"source_label", r.product.source_label},
      {"product_name", r.product.product_name},
      {"product_category", r.product.product_category},
      {"about_product", r.product.about_product},
      {"description", r.text.value_or("")},
      {"text", r.text ? nlohmann::json(*r.text) : nlohmann::json(nullptr)},
      {"error", r.error ? nlohmann::json(*r.error) : nlohmann::json(nullptr)},
      {"attempts", r.attempts},
      {"request_time", r.request_time},
      {"response_time", r.response_time},
  };
  return j;
}

inline GenerationResult generation_from_json(const nlohmann::json& j) {
  GenerationResult r;
  r.record_index = j.at("record_index").get<std::size_t>();
  r.condition = parse_condition(j.at("condition").get<std::string>());
  r.model = j.value("model", std::string{});
  r.product.source_label = j.value("source_label", std::string{});
  r.product.product_name = j.value("product_name", std::string{});
  r.product.product_category = j.value("product_category", std::string{});
  r.product.about_product = j.value("about_product", std::string{});
  if (j.contains("text") && j["text"].is_string()) {
    r.text = j["text"].get<std::string>();
    r.product.description = *r.text;
  }
  if (j.contains("error") && j["error"].is_string()) {
    r.error = j["error"].get<std::string>();
  }
  r.attempts = j.value("attempts", 0);
  r.request_time = j.value("request_time", std::string{});
  r.response_time = j.value("response_time", std::string{});
  return r;
}

// (record index, condition) pairs already present in a generation file.
// Truncated or malformed lines, e.g. from an interrupted run, are skipped.
inline std::set<std::pair<std::size_t, Condition>> completed_pairs(
    const std::filesystem::path& path) {
  std::set<std::pair<std::size_t, Condition>> done;
  std::ifstream in(path);
  std::string line;
  while (std::getline(in, line)) {
    try {
      const auto j = nlohmann::json::parse(line);
      done.emplace(j.at("record_index").get<std::size_t>(),
                   parse_condition(j.at("condition").get<std::string>()));
    } catch (const std::exception&) {
      continue;
    }
  }
  return done;
}

struct BatchOptions {
  std::filesystem::path output;
  bool resume = false;
  std::string api_key;
};

// Attempts every (record, condition) pair once, at most
// backend.max_in_flight at a time. Results are appended to the output file
// in (record index, condition) order as soon as each prefix is complete, so
// an interrupted run keeps everything finished before the interruption.
// With `resume`, pairs already in the file are skipped.
inline std::vector<GenerationResult> run_batch(
    const std::vector<ProductRecord>& records, const BackendConfig& backend,
    const std::vector<Condition>& conditions, const BatchOptions& options) {
  if (records.empty()) throw Error("run_batch: no records");
  if (conditions.empty()) throw Error("run_batch: no conditions");
  backend.validate();

  std::set<std::pair<std::size_t, Condition>> done;
  if (options.resume && std::filesystem::exists(options.output)) {
    done = completed_pairs(options.output);
  }
  if (options.resume && std::filesystem::exists(options.output)) {
    // A run killed mid-line leaves a partial record; drop it so the file
    // stays loadable and the next append starts on a fresh line.
    std::string text;
    {
      std::ifstream in(options.output, std::ios::binary);
      text.assign(std::istreambuf_iterator<char>(in), {});
    }
    if (!text.empty() && text.back() != '\n') {
      const auto keep = text.rfind('\n');
      std::filesystem::resize_file(options.output,
                                   keep == std::string::npos ? 0 : keep + 1);
    }
  }
  std::ofstream out(options.output, options.resume
                                        ? std::ios::out | std::ios::app
                                        : std::ios::out | std::ios::trunc);
  if (!out) throw Error("cannot write " + options.output.string());

  struct Job {
    std::size_t record;
    Condition condition;
  };
  std::vector<Job> jobs;
  for (std::size_t i = 0; i < records.size(); ++i) {
    for (auto c : conditions) {
      if (!done.contains({i, c})) jobs.push_back({i, c});
    }
  }

  std::vector<std::optional<GenerationResult>> slots(jobs.size());
  std::mutex mu;
  std::size_t flushed = 0;
  std::atomic<std::size_t> next{0};

  auto work = [&] {
    for (;;) {
      const std::size_t k = next.fetch_add(1);
      if (k >= jobs.size()) return;
      const auto& job = jobs[k];
      const auto& rec = records[job.record];
      GenerationResult r;
      try {
        r = generate(backend, build_prompt(rec, job.condition), options.api_key);
      } catch (const Error& e) {
        r.model = backend.model;
        r.error = e.what();
        r.request_time = r.response_time =
            detail::utc_timestamp(std::chrono::system_clock::now());
      }
      r.record_index = job.record;
      r.condition = job.condition;
      r.product = rec;
      r.product.description = r.text.value_or("");
      r.product.source_label = source_label_for(backend, job.condition);

      std::lock_guard lock(mu);
      slots[k] = std::move(r);
      while (flushed < slots.size() && slots[flushed]) {
        out << to_json(*slots[flushed]).dump() << '\n';
        ++flushed;
      }
      out.flush();
    }
  };

  const std::size_t workers = std::min<std::size_t>(
      static_cast<std::size_t>(backend.max_in_flight), jobs.size());
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  if (!out) throw Error("write to " + options.output.string() + " failed");

  std::vector<GenerationResult> results;
  results.reserve(slots.size());
  for (auto& s : slots) results.push_back(std::move(*s));
  return results;
}

}  // namespace copygrade

#endif  // COPYGRADE_GENHARNESS_HPP_
