#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <string>

#include "sdss/session.h"

namespace sdss {

struct HttpRequest {
  std::string method;
  std::string path;
  std::map<std::string, std::string> query;
  std::map<std::string, std::string> headers;  ///< keys in lower case
  std::string body;

  std::string header(const std::string &lower_name) const;
};

struct HttpResponse {
  int status = 200;
  std::map<std::string, std::string> headers;
  std::string body;
};

struct ServiceOptions {
  std::size_t max_body = 4u << 20;
  std::string cors_origin = "*";
};

/// Session store plus routing. `handle` is transport-free so it can be tested
/// directly; `serve` binds it to an HTTP listener.
class Service {
 public:
  explicit Service(ServiceOptions options = {});

  HttpResponse handle(const HttpRequest &request);

  std::size_t session_count() const;
  const ServiceOptions &options() const noexcept { return options_; }

 private:
  struct Snapshot {
    Session session;
    std::uint64_t revision = 0;
    std::string etag;
  };
  struct Entry {
    std::mutex write;
    std::shared_ptr<const Snapshot> current;
  };

  std::shared_ptr<Entry> find(const std::string &id) const;
  std::shared_ptr<const Snapshot> current(const Entry &entry) const;
  void publish(Entry &entry, std::shared_ptr<const Snapshot> next);

  HttpResponse create(const HttpRequest &request);
  HttpResponse show(const std::string &id, const HttpRequest &request);
  HttpResponse patch(const std::string &id, const std::string &what, const HttpRequest &request);
  HttpResponse read_view(const std::string &id, const std::string &what, const HttpRequest &request);

  ServiceOptions options_;
  mutable std::shared_mutex mutex_;
  std::map<std::string, std::shared_ptr<Entry>> sessions_;
  std::uint64_t next_id_ = 1;
};

/// The OpenAPI description served at /spec.
nlohmann::ordered_json openapi_document();

/// Blocks serving `service` until the process is stopped. Throws IoError if
/// the port cannot be bound.
void serve(Service &service, const std::string &host, int port);

}  // namespace sdss
