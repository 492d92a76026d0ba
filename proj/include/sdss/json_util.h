#pragma once

#include <string>

#include "json.hpp"
#include "sdss/tfn.h"

namespace sdss::jsonutil {

/// Reals are written as decimal strings with 12 significant digits so that
/// documents and their hashes do not depend on the platform's float printing.
std::string num(double v);
nlohmann::ordered_json tfn(const Tfn &t);

/// Accepts a JSON number or a decimal string; throws DomainError otherwise.
double read_num(const nlohmann::json &j, const std::string &what);
Tfn read_tfn(const nlohmann::json &j, const std::string &what);

/// Lowercase hex SHA-256 of `data`.
std::string sha256_hex(const std::string &data);

}  // namespace sdss::jsonutil
