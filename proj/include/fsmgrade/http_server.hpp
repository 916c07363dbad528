#pragma once

#include <optional>
#include <string>

#ifndef CPPHTTPLIB_LISTEN_BACKLOG
#define CPPHTTPLIB_LISTEN_BACKLOG 128
#endif
#include "httplib.h"

#include "fsmgrade/service.hpp"

namespace fsmgrade {

/// Routes the grading endpoints of `service` onto an httplib server. When
/// `cors_origin` is set, responses allow that origin (for the editor during
/// development).
inline void bind_routes(httplib::Server& server, const GradingService& service,
                        const std::optional<std::string>& cors_origin = std::nullopt) {
  auto send = [cors_origin](httplib::Response& res, const HttpResponse& r) {
    res.status = r.status;
    if (cors_origin) res.set_header("Access-Control-Allow-Origin", *cors_origin);
    res.set_content(r.body, "application/json");
  };
  server.Get("/questions", [&service, send](const httplib::Request&, httplib::Response& res) {
    send(res, service.list_questions());
  });
  server.Get(R"(/questions/([^/]+))", [&service, send](const httplib::Request& req, httplib::Response& res) {
    send(res, service.question(req.matches[1]));
  });
  server.Post(R"(/questions/([^/]+)/grade)",
              [&service, send](const httplib::Request& req, httplib::Response& res) {
                send(res, service.grade(req.matches[1], req.body));
              });
  if (cors_origin) {
    server.Options(R"(/.*)", [origin = *cors_origin](const httplib::Request&, httplib::Response& res) {
      res.set_header("Access-Control-Allow-Origin", origin);
      res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
      res.set_header("Access-Control-Allow-Headers", "Content-Type");
      res.status = 204;
    });
  }
}

}  // namespace fsmgrade
