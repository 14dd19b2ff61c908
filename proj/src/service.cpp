#include "busout/service.hpp"

#include <stdexcept>

#include "httplib.h"
#include "json.hpp"

#include "busout/documents.hpp"
#include "busout/instance_io.hpp"

namespace busout {

using nlohmann::json;

struct Service::Impl {
  ServiceOptions options;
  SessionStore store;
  httplib::Server server;

  explicit Impl(ServiceOptions o) : options(std::move(o)), store(options.max_sessions) { routes(); }

  static void reply(httplib::Response& res, int status, const json& body) {
    res.status = status;
    res.set_content(body.dump(), "application/json");
  }

  static void error(httplib::Response& res, int status, const std::string& code, const std::string& message) {
    reply(res, status, {{"error", code}, {"message", message}});
  }

  json session_state(const Session& s) const {
    json doc = state_document(s.current());
    doc["sessionId"] = s.id();
    json history = json::array();
    for (const auto& h : s.history()) history.push_back(s.current().graph().name(h.bus));
    doc["history"] = std::move(history);
    return doc;
  }

  // Looks up the session named by the first path capture and runs `fn` under
  // its lock.
  template <typename Fn>
  void with_session(const httplib::Request& req, httplib::Response& res, Fn&& fn) {
    auto session = store.find(req.matches[1]);
    if (!session) return error(res, 404, "UnknownSession", "no session '" + std::string(req.matches[1]) + "'");
    std::lock_guard lock(session->mutex());
    fn(*session);
  }

  void routes() {
    server.Post("/v1/sessions", [this](const httplib::Request& req, httplib::Response& res) {
      Configuration cfg;
      try {
        cfg = parse_instance(req.body);
      } catch (const ParseError& e) {
        return error(res, 400, "ParseError", e.what());
      }
      try {
        auto session = store.create(cfg, options.policy);
        std::lock_guard lock(session->mutex());
        json doc = session_state(*session);
        doc["events"] = to_document(session->current(), session->initial_events());
        reply(res, 201, doc);
      } catch (const IneligibleError& e) {
        json doc = to_document(cfg, e.report());
        doc["error"] = "Ineligible";
        doc["message"] = e.what();
        reply(res, 422, doc);
      }
    });

    server.Get(R"(/v1/sessions/([^/]+))", [this](const httplib::Request& req, httplib::Response& res) {
      with_session(req, res, [&](Session& s) { reply(res, 200, session_state(s)); });
    });

    server.Delete(R"(/v1/sessions/([^/]+))", [this](const httplib::Request& req, httplib::Response& res) {
      if (!store.erase(req.matches[1])) return error(res, 404, "UnknownSession", "no such session");
      res.status = 204;
    });

    server.Get(R"(/v1/sessions/([^/]+)/moves)", [this](const httplib::Request& req, httplib::Response& res) {
      const bool annotate = req.has_param("annotate") && req.get_param_value("annotate") != "0" &&
                            req.get_param_value("annotate") != "false";
      with_session(req, res, [&](Session& s) {
        const auto& g = s.current().graph();
        json moves = json::array();
        auto entry = [&](BusId b) {
          return json{{"bus", g.name(b)}, {"color", s.current().palette().name(g.label(b).color)},
                      {"capacity", g.label(b).capacity}};
        };
        if (annotate) {
          for (const auto& m : s.annotate(options.budget)) {
            json e = entry(m.bus);
            e["annotation"] = to_string(m.annotation);
            moves.push_back(std::move(e));
          }
        } else {
          for (BusId b : legal_moves(s.current())) moves.push_back(entry(b));
        }
        reply(res, 200, {{"sessionId", s.id()}, {"moves", std::move(moves)}});
      });
    });

    server.Post(R"(/v1/sessions/([^/]+)/dispatch)", [this](const httplib::Request& req, httplib::Response& res) {
      json body = json::parse(req.body, nullptr, false);
      if (body.is_discarded() || !body.is_object() || !body.contains("bus") || !body["bus"].is_string()) {
        return error(res, 400, "ParseError", "expected {\"bus\": \"<id>\"}");
      }
      const std::string name = body["bus"];
      with_session(req, res, [&](Session& s) {
        const auto bus = s.current().graph().find(name);
        if (!bus) return error(res, 409, to_string(MoveError::Kind::kUnknownBus), "unknown bus id '" + name + "'");
        try {
          const auto& entry = s.dispatch(*bus);
          json doc = session_state(s);
          doc["events"] = to_document(s.current(), entry.events);
          reply(res, 200, doc);
        } catch (const MoveError& e) {
          error(res, 409, to_string(e.kind()), e.what());
        }
      });
    });

    server.Post(R"(/v1/sessions/([^/]+)/undo)", [this](const httplib::Request& req, httplib::Response& res) {
      with_session(req, res, [&](Session& s) {
        if (!s.undo()) return error(res, 409, "EmptyHistory", "nothing to undo");
        reply(res, 200, session_state(s));
      });
    });

    server.Post(R"(/v1/sessions/([^/]+)/reset)", [this](const httplib::Request& req, httplib::Response& res) {
      with_session(req, res, [&](Session& s) {
        s.reset();
        reply(res, 200, session_state(s));
      });
    });

    server.Post(R"(/v1/sessions/([^/]+)/solve)", [this](const httplib::Request& req, httplib::Response& res) {
      with_session(req, res, [&](Session& s) {
        const auto result = s.solve_from_here(options.budget);
        json doc = to_document(s.current(), result);
        doc["sessionId"] = s.id();
        reply(res, 200, doc);
      });
    });

    server.set_exception_handler([](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
      try {
        std::rethrow_exception(ep);
      } catch (const std::exception& e) {
        error(res, 500, "Internal", e.what());
      } catch (...) {
        error(res, 500, "Internal", "unknown error");
      }
    });
  }
};

Service::Service(ServiceOptions options) : impl_(std::make_unique<Impl>(std::move(options))) {}
Service::~Service() = default;

int Service::bind(int port) {
  const int bound = port == 0 ? impl_->server.bind_to_any_port(impl_->options.host)
                              : (impl_->server.bind_to_port(impl_->options.host, port) ? port : -1);
  if (bound < 0) throw std::runtime_error("cannot bind " + impl_->options.host + ":" + std::to_string(port));
  return bound;
}

void Service::run() { impl_->server.listen_after_bind(); }
void Service::stop() { impl_->server.stop(); }
SessionStore& Service::sessions() { return impl_->store; }

}  // namespace busout
