#include <csignal>
#include <iostream>

#include <CLI11.hpp>

#include "fca/service/server.hpp"

namespace {
fca::service::Server* g_server = nullptr;
void handle_signal(int) {
  if (g_server) g_server->stop();
}
}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"HTTP service for contexts, lattices, bases and exploration sessions", "fca-serve"};
  std::string host = "127.0.0.1";
  int port = 7878;
  std::string data_dir;
  app.add_option("--host", host, "Address to bind");
  app.add_option("--port", port, "Port to listen on");
  app.add_option("--data-dir", data_dir, "Directory for JSON persistence");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    fca::service::Server server({data_dir});
    const int bound = server.bind(host, port);
    if (bound < 0) {
      std::cerr << "error: cannot bind " << host << ":" << port << '\n';
      return 1;
    }
    g_server = &server;
    std::signal(SIGINT, handle_signal);
    std::signal(SIGTERM, handle_signal);
    std::cerr << "listening on http://" << host << ":" << bound << '\n';
    return server.run() ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
