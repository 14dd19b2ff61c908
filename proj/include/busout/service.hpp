#pragma once

#include <cstdint>
#include <memory>
#include <string>

#include "busout/session.hpp"

namespace busout {

struct ServiceOptions {
  std::string host = "127.0.0.1";
  SolveBudget budget{std::uint64_t{200000}, 2.0};  // per annotation or solve request
  std::size_t max_sessions = 64;
  BoardingPolicy policy = BoardingPolicy::kFewestRemaining;
};

// HTTP front end for SessionStore under /v1 (see docs/service-api.md).
class Service {
 public:
  explicit Service(ServiceOptions options = {});
  ~Service();
  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  // Binds; port 0 picks a free port. Returns the bound port or throws.
  int bind(int port);
  // Blocks until stop().
  void run();
  void stop();

  SessionStore& sessions();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace busout
