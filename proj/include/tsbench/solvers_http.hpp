#pragma once

// Chat-completion HTTP client. Request body is {model, messages:[{role:
// "user", content: <prompt>}]}; the reply text is choices[0].message.content
// (a bare top-level "content" is accepted too). Transient failures retry with
// exponential backoff plus jitter; a counting gate bounds in-flight requests
// across threads.

#include <atomic>
#include <condition_variable>
#include <mutex>
#include <random>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "tsbench/solvers.hpp"

namespace tsbench {

namespace detail {

class ConcurrencyGate {
 public:
  explicit ConcurrencyGate(int limit) : slots_(limit) {}

  void acquire() {
    std::unique_lock lk(mu_);
    cv_.wait(lk, [&] { return slots_ > 0; });
    --slots_;
  }

  void release() {
    {
      std::lock_guard lk(mu_);
      ++slots_;
    }
    cv_.notify_one();
  }

 private:
  std::mutex mu_;
  std::condition_variable cv_;
  int slots_;
};

struct GateHold {
  explicit GateHold(ConcurrencyGate& g) : gate(g) { gate.acquire(); }
  ~GateHold() { gate.release(); }
  ConcurrencyGate& gate;
};

struct EndpointParts {
  std::string base;  // scheme://host[:port]
  std::string path;  // /v1/chat/completions
};

inline EndpointParts split_endpoint(const std::string& endpoint) {
  const std::size_t scheme = endpoint.find("://");
  if (scheme == std::string::npos) {
    throw std::invalid_argument("endpoint must include a scheme: " + endpoint);
  }
  const std::size_t slash = endpoint.find('/', scheme + 3);
  if (slash == std::string::npos) return {endpoint, "/"};
  return {endpoint.substr(0, slash), endpoint.substr(slash)};
}

}  // namespace detail

class HttpSolver final : public Solver {
 public:
  explicit HttpSolver(SolverConfig cfg)
      : cfg_(std::move(cfg)),
        parts_(detail::split_endpoint(cfg_.endpoint)),
        gate_(cfg_.concurrency_limit),
        jitter_eng_(0x7f4a7c15) {}

  SolveOutcome solve(const TaskInstance& task) override {
    detail::GateHold hold(gate_);

    nlohmann::json body;
    body["model"] = cfg_.model_name;
    body["messages"] = {{{"role", "user"}, {"content", task.prompt}}};
    const std::string payload = body.dump();

    std::string last_error = "no attempts made";
    for (int attempt = 0; attempt <= cfg_.max_retries; ++attempt) {
      if (attempt > 0) {
        std::this_thread::sleep_for(backoff_delay(attempt));
      }
      httplib::Client client(parts_.base);
      client.set_connection_timeout(std::chrono::duration<double>(cfg_.timeout_s));
      client.set_read_timeout(std::chrono::duration<double>(cfg_.timeout_s));
      httplib::Headers headers;
      if (!cfg_.api_key.empty()) {
        headers.emplace("Authorization", "Bearer " + cfg_.api_key);
      }
      const auto res = client.Post(parts_.path, headers, payload, "application/json");
      if (!res) {
        last_error = "transport: " + httplib::to_string(res.error());
        continue;
      }
      if (res->status < 200 || res->status >= 300) {
        last_error = "http status " + std::to_string(res->status);
        continue;
      }
      auto parsed = extract_content(res->body);
      if (!parsed) {
        // A malformed 2xx body is not retryable; the server answered.
        return {"", "malformed response body", attempt};
      }
      return {*parsed, std::nullopt, attempt};
    }
    return {"", last_error + " after " + std::to_string(cfg_.max_retries) +
                    " retries",
            cfg_.max_retries};
  }

  std::string name() const override { return "http:" + cfg_.model_name; }

 private:
  std::chrono::milliseconds backoff_delay(int attempt) {
    const double base = static_cast<double>(cfg_.backoff_base_ms);
    const double exp = base * std::pow(2.0, attempt - 1);
    double jitter;
    {
      std::lock_guard lk(jitter_mu_);
      jitter = std::uniform_real_distribution<double>(0.0, base / 2.0)(jitter_eng_);
    }
    return std::chrono::milliseconds(static_cast<long>(exp + jitter));
  }

  static std::optional<std::string> extract_content(const std::string& body) {
    const nlohmann::json j = nlohmann::json::parse(body, nullptr, false);
    if (j.is_discarded()) return std::nullopt;
    try {
      if (j.contains("choices") && !j["choices"].empty()) {
        return j["choices"][0].at("message").at("content").get<std::string>();
      }
      if (j.contains("content") && j["content"].is_string()) {
        return j["content"].get<std::string>();
      }
    } catch (const nlohmann::json::exception&) {
    }
    return std::nullopt;
  }

  SolverConfig cfg_;
  detail::EndpointParts parts_;
  detail::ConcurrencyGate gate_;
  std::mutex jitter_mu_;
  std::mt19937_64 jitter_eng_;
};

inline std::unique_ptr<Solver> make_solver(const SolverConfig& cfg) {
  cfg.check();
  switch (cfg.kind) {
    case SolverKind::oracle: return std::make_unique<OracleSolver>();
    case SolverKind::statistical: return std::make_unique<StatisticalSolver>();
    case SolverKind::http: return std::make_unique<HttpSolver>(cfg);
  }
  throw std::invalid_argument("make_solver: bad kind");
}

}  // namespace tsbench
