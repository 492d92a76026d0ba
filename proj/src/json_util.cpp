#include "sdss/json_util.h"

#include <openssl/evp.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "sdss/error.h"

namespace sdss::jsonutil {

std::string num(double v) {
  if (v == 0.0) return "0";  // folds -0
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

nlohmann::ordered_json tfn(const Tfn &t) { return nlohmann::ordered_json::array({num(t.a), num(t.b), num(t.c)}); }

double read_num(const nlohmann::json &j, const std::string &what) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto &s = j.get_ref<const std::string &>();
    char *end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (!s.empty() && end == s.c_str() + s.size() && std::isfinite(v)) return v;
  }
  throw DomainError(what + ": expected a number");
}

Tfn read_tfn(const nlohmann::json &j, const std::string &what) {
  if (!j.is_array() || j.size() != 3) throw DomainError(what + ": expected [a, b, c]");
  return make_tfn(read_num(j[0], what), read_num(j[1], what), read_num(j[2], what));
}

std::string sha256_hex(const std::string &data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 digest failed");
  }
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 0xf];
  }
  return out;
}

}  // namespace sdss::jsonutil
