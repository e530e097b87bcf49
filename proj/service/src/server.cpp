#include "fca/service/server.hpp"

#include <chrono>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "fca/context_io.hpp"
#include "fca/exploration.hpp"
#include "fca/implications.hpp"
#include "fca/lattice.hpp"
#include "fca/testlab.hpp"

namespace fca::service {
namespace {

using nlohmann::json;

struct StoredContext {
  std::string id;
  FormalContext context;
  std::string created_at;
};

struct SessionHandle {
  std::string id;
  ExplorationSession session;
  std::uint64_t revision = 0;
};

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void send_json(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, int status, const std::string& message) {
  send_json(res, status, {{"error", message}});
}

json named_implication(const Implication& imp, const std::vector<std::string>& names) {
  json premise = json::array(), conclusion = json::array();
  for (auto i : imp.premise().indices()) premise.push_back(names[i]);
  for (auto i : imp.conclusion().indices()) conclusion.push_back(names[i]);
  return {{"premise", std::move(premise)}, {"conclusion", std::move(conclusion)}};
}

json session_state(const SessionHandle& h) {
  const auto& s = h.session;
  const auto& names = s.attribute_names();
  json question = nullptr;
  if (const auto& q = s.current_question()) {
    question = named_implication(*q, names);
    question["text"] = s.render(*q);
  }
  json accepted = json::array();
  for (const auto& imp : s.accepted()) accepted.push_back(named_implication(imp, names));
  return {{"id", h.id},
          {"revision", h.revision},
          {"phase", s.done() ? "done" : "awaiting_expert"},
          {"attributes", names},
          {"question", std::move(question)},
          {"accepted", std::move(accepted)},
          {"working", context_to_json(s.working_context())},
          {"transcriptLength", s.transcript().size()}};
}

std::optional<std::size_t> parse_depth(const httplib::Request& req) {
  if (!req.has_param("depth")) return std::nullopt;
  const auto v = req.get_param_value("depth");
  std::size_t pos = 0;
  const unsigned long depth = std::stoul(v, &pos);
  if (pos != v.size()) throw std::invalid_argument("depth");
  return static_cast<std::size_t>(depth);
}

}  // namespace

struct Server::Impl {
  explicit Impl(ServerOptions opts) : options(std::move(opts)) {
    load_persisted();
    routes();
  }

  ServerOptions options;
  httplib::Server http;

  std::mutex mutex;
  std::map<std::string, StoredContext> contexts;
  std::map<std::string, SessionHandle> sessions;
  std::uint64_t next_context = 1;
  std::uint64_t next_session = 1;

  // --- persistence -------------------------------------------------------

  std::filesystem::path dir(const char* sub) const { return options.data_dir / sub; }

  static void write_file(const std::filesystem::path& path, const json& j) {
    const auto tmp = path.string() + ".tmp";
    {
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      out << j.dump(2) << '\n';
    }
    std::filesystem::rename(tmp, path);
  }

  void persist(const StoredContext& c) {
    if (options.data_dir.empty()) return;
    write_file(dir("contexts") / (c.id + ".json"),
               {{"id", c.id}, {"createdAt", c.created_at}, {"context", context_to_json(c.context)}});
  }

  void persist(const SessionHandle& h) {
    if (options.data_dir.empty()) return;
    write_file(dir("sessions") / (h.id + ".json"),
               {{"id", h.id}, {"revision", h.revision}, {"session", session_to_json(h.session)}});
  }

  static std::uint64_t numeric_suffix(const std::string& id) {
    try {
      return std::stoull(id.substr(1));
    } catch (const std::exception&) {
      return 0;
    }
  }

  void load_persisted() {
    if (options.data_dir.empty()) return;
    std::filesystem::create_directories(dir("contexts"));
    std::filesystem::create_directories(dir("sessions"));
    for (const auto& entry : std::filesystem::directory_iterator(dir("contexts"))) {
      if (entry.path().extension() != ".json") continue;
      std::ifstream in(entry.path());
      const json j = json::parse(in);
      StoredContext c{j.at("id").get<std::string>(), context_from_json(j.at("context")),
                      j.at("createdAt").get<std::string>()};
      next_context = std::max(next_context, numeric_suffix(c.id) + 1);
      contexts.emplace(c.id, std::move(c));
    }
    for (const auto& entry : std::filesystem::directory_iterator(dir("sessions"))) {
      if (entry.path().extension() != ".json") continue;
      std::ifstream in(entry.path());
      const json j = json::parse(in);
      SessionHandle h{j.at("id").get<std::string>(), session_from_json(j.at("session")),
                      j.at("revision").get<std::uint64_t>()};
      next_session = std::max(next_session, numeric_suffix(h.id) + 1);
      sessions.emplace(h.id, std::move(h));
    }
  }

  // --- handlers ----------------------------------------------------------

  void routes() {
    http.set_exception_handler([](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
      try {
        std::rethrow_exception(ep);
      } catch (const std::exception& e) {
        send_error(res, 500, e.what());
      }
    });

    http.Post("/contexts", [this](const httplib::Request& req, httplib::Response& res) { create_context(req, res); });
    http.Get(R"(/contexts/([^/]+))", [this](const httplib::Request& req, httplib::Response& res) {
      std::lock_guard lock(mutex);
      const auto it = contexts.find(req.matches[1]);
      if (it == contexts.end()) return send_error(res, 404, "unknown context");
      send_json(res, 200,
                {{"id", it->second.id}, {"createdAt", it->second.created_at},
                 {"context", context_to_json(it->second.context)}});
    });
    http.Get(R"(/contexts/([^/]+)/lattice)", [this](const httplib::Request& req, httplib::Response& res) {
      const auto ctx = find_context(req.matches[1]);
      if (!ctx) return send_error(res, 404, "unknown context");
      std::optional<std::size_t> depth;
      try {
        depth = parse_depth(req);
      } catch (const std::exception&) {
        return send_error(res, 400, "depth must be a non-negative integer");
      }
      const auto lattice = depth ? top_part(*ctx, *depth) : build_lattice(*ctx);
      send_json(res, 200, lattice_to_json(lattice));
    });
    http.Get(R"(/contexts/([^/]+)/base)", [this](const httplib::Request& req, httplib::Response& res) {
      const auto ctx = find_context(req.matches[1]);
      if (!ctx) return send_error(res, 404, "unknown context");
      send_json(res, 200, implications_to_json(canonical_base(*ctx)));
    });
    http.Post("/reports/failures", [this](const httplib::Request& req, httplib::Response& res) { failures(req, res); });
    http.Post("/sessions", [this](const httplib::Request& req, httplib::Response& res) { create_session(req, res); });
    http.Get(R"(/sessions/([^/]+))", [this](const httplib::Request& req, httplib::Response& res) {
      std::lock_guard lock(mutex);
      const auto it = sessions.find(req.matches[1]);
      if (it == sessions.end()) return send_error(res, 404, "unknown session");
      send_json(res, 200, session_state(it->second));
    });
    http.Post(R"(/sessions/([^/]+)/answer)",
              [this](const httplib::Request& req, httplib::Response& res) { answer(req, res); });
  }

  std::optional<FormalContext> find_context(const std::string& id) {
    std::lock_guard lock(mutex);
    const auto it = contexts.find(id);
    if (it == contexts.end()) return std::nullopt;
    return it->second.context;
  }

  void create_context(const httplib::Request& req, httplib::Response& res) {
    const auto type = req.get_header_value("Content-Type");
    ContextFormat format = ContextFormat::Json;
    if (type.starts_with("text/plain"))
      format = ContextFormat::Cxt;
    else if (type.starts_with("text/csv"))
      format = ContextFormat::Csv;
    FormalContext ctx;
    try {
      ctx = read_context(req.body, format);
    } catch (const Error& e) {
      return send_error(res, 400, e.what());
    }
    std::lock_guard lock(mutex);
    StoredContext stored{"c" + std::to_string(next_context++), std::move(ctx), utc_timestamp()};
    persist(stored);
    const auto id = stored.id;
    contexts.emplace(id, std::move(stored));
    send_json(res, 201, {{"id", id}});
  }

  void failures(const httplib::Request& req, httplib::Response& res) {
    json body;
    std::string context_id, attr;
    std::size_t depth = 1;
    try {
      body = json::parse(req.body);
      context_id = body.at("contextId").get<std::string>();
      attr = body.at("failureAttr").get<std::string>();
      if (body.contains("depth")) depth = body.at("depth").get<std::size_t>();
    } catch (const json::exception& e) {
      return send_error(res, 400, std::string("invalid request: ") + e.what());
    }
    const auto ctx = find_context(context_id);
    if (!ctx) return send_error(res, 404, "unknown context");
    try {
      send_json(res, 200, report_to_json(failure_report(*ctx, attr, depth)));
    } catch (const NotFoundError& e) {
      send_error(res, 400, e.what());
    }
  }

  void create_session(const httplib::Request& req, httplib::Response& res) {
    std::optional<ExplorationSession> session;
    try {
      const json body = json::parse(req.body);
      if (body.contains("contextId")) {
        const auto ctx = find_context(body.at("contextId").get<std::string>());
        if (!ctx) return send_error(res, 404, "unknown context");
        session.emplace(*ctx);
      } else {
        session.emplace(FormalContext::empty(body.at("attributes").get<std::vector<std::string>>()));
      }
    } catch (const json::exception& e) {
      return send_error(res, 400, std::string("invalid request: ") + e.what());
    } catch (const Error& e) {
      return send_error(res, 400, e.what());
    }
    std::lock_guard lock(mutex);
    SessionHandle h{"s" + std::to_string(next_session++), std::move(*session), 0};
    persist(h);
    const auto id = h.id;
    const auto& stored = sessions.emplace(id, std::move(h)).first->second;
    send_json(res, 201, session_state(stored));
  }

  void answer(const httplib::Request& req, httplib::Response& res) {
    json body;
    try {
      body = json::parse(req.body);
    } catch (const json::exception& e) {
      return send_error(res, 400, std::string("invalid request: ") + e.what());
    }
    std::lock_guard lock(mutex);
    const auto it = sessions.find(req.matches[1]);
    if (it == sessions.end()) return send_error(res, 404, "unknown session");
    SessionHandle& h = it->second;

    if (!req.has_header(kRevisionHeader)) return send_error(res, 428, std::string(kRevisionHeader) + " header required");
    std::uint64_t expected = 0;
    try {
      expected = std::stoull(req.get_header_value(kRevisionHeader));
    } catch (const std::exception&) {
      return send_error(res, 400, "revision must be an integer");
    }
    if (expected != h.revision)
      return send_json(res, 409, {{"error", "revision mismatch"}, {"revision", h.revision}});

    ExpertAnswer ans = Accept{};
    try {
      if (body.contains("counterexample")) {
        const auto& c = body.at("counterexample");
        const auto names = c.at("attrs").get<std::vector<std::string>>();
        ans = Counterexample{c.at("name").get<std::string>(), h.session.working_context().attributes_from_names(names)};
      } else if (!body.value("accept", false)) {
        return send_error(res, 400, "body must be {\"accept\":true} or {\"counterexample\":{...}}");
      }
    } catch (const json::exception& e) {
      return send_error(res, 400, std::string("invalid request: ") + e.what());
    } catch (const NotFoundError& e) {
      return send_error(res, 400, e.what());
    }

    ExplorationSession next = h.session;
    try {
      next.answer(ans);
    } catch (const AnswerRejected& e) {
      return send_json(res, 422, {{"error", e.what()}, {"reason", std::string(to_string(e.reason()))}});
    } catch (const NamingError& e) {
      return send_json(res, 422, {{"error", e.what()}, {"reason", "invalid_name"}});
    }
    h.session = std::move(next);
    ++h.revision;
    persist(h);
    send_json(res, 200, session_state(h));
  }
};

Server::Server(ServerOptions options) : impl_(std::make_unique<Impl>(std::move(options))) {}

Server::~Server() = default;

int Server::bind(const std::string& host, int port) {
  if (port == 0) return impl_->http.bind_to_any_port(host);
  return impl_->http.bind_to_port(host, port) ? port : -1;
}

bool Server::run() { return impl_->http.listen_after_bind(); }

void Server::stop() { impl_->http.stop(); }

void Server::wait_until_ready() const { impl_->http.wait_until_ready(); }

}  // namespace fca::service
