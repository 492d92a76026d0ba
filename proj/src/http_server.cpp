#include <algorithm>
#include <cctype>

#include "httplib.h"
#include "sdss/error.h"
#include "sdss/service.h"

namespace sdss {

namespace {

HttpRequest from_httplib(const httplib::Request &in) {
  HttpRequest out;
  out.method = in.method;
  out.path = in.path;
  for (const auto &[k, v] : in.params) out.query.emplace(k, v);
  for (const auto &[k, v] : in.headers) {
    auto key = k;
    std::transform(key.begin(), key.end(), key.begin(), [](unsigned char c) { return std::tolower(c); });
    out.headers[key] = v;
  }
  out.body = in.body;
  return out;
}

}  // namespace

void serve(Service &service, const std::string &host, int port) {
  httplib::Server server;
  server.set_payload_max_length(service.options().max_body);
  auto handler = [&service](const httplib::Request &req, httplib::Response &res) {
    const auto out = service.handle(from_httplib(req));
    res.status = out.status;
    std::string type = "application/json";
    for (const auto &[k, v] : out.headers) {
      if (k == "Content-Type") {
        type = v;
      } else {
        res.set_header(k, v);
      }
    }
    if (!out.body.empty()) res.set_content(out.body, type);
  };
  server.Get(".*", handler);
  server.Post(".*", handler);
  server.Patch(".*", handler);
  server.Options(".*", handler);
  server.Put(".*", handler);
  server.Delete(".*", handler);
  if (!server.bind_to_port(host, port)) throw IoError("cannot bind " + host + ":" + std::to_string(port));
  server.listen_after_bind();
}

}  // namespace sdss
