#pragma once

#include <filesystem>
#include <memory>
#include <string>

namespace fca::service {

struct ServerOptions {
  /// When set, contexts and sessions are mirrored as JSON files here and
  /// reloaded on start.
  std::filesystem::path data_dir;
};

/// HTTP facade over contexts, lattices, bases, failure reports and
/// exploration sessions.
///
/// Routes:
///   POST /contexts                      JSON context, or .cxt as text/plain
///   GET  /contexts/{id}
///   GET  /contexts/{id}/lattice?depth=N
///   GET  /contexts/{id}/base
///   POST /reports/failures              {contextId, failureAttr, depth}
///   POST /sessions                      {attributes:[...]} or {contextId}
///   GET  /sessions/{id}
///   POST /sessions/{id}/answer          header X-Expected-Revision
///
/// Answers are applied atomically per session; a stale revision gets 409.
class Server {
 public:
  explicit Server(ServerOptions options = {});
  ~Server();
  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  /// Binds without serving; port 0 picks a free port. Returns the bound port
  /// or -1 on failure.
  int bind(const std::string& host, int port);
  /// Serves until stop() is called. Requires a successful bind().
  bool run();
  void stop();
  void wait_until_ready() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

inline constexpr const char* kRevisionHeader = "X-Expected-Revision";

}  // namespace fca::service
