#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "leechcert/rational.hpp"

namespace leechcert {

// Line-oriented certificate:
//
//   leechcert-certificate 1
//   target e8
//   <key> <value>
//   ...
//   sha256 <hex digest of every preceding line, newline terminated>
//
// Keys are dotted names without spaces; values run to the end of the line.
class Certificate {
 public:
  std::string target;

  void set(const std::string& key, const std::string& value);
  void set(const std::string& key, const Rat& value) { set(key, to_string(value)); }
  bool has(const std::string& key) const;
  std::optional<std::string> get(const std::string& key) const;
  // Throws FormatError when the key is missing or not a rational.
  Rat rat(const std::string& key) const;
  std::string str(const std::string& key) const;
  // Keys starting with prefix, in file order.
  std::vector<std::pair<std::string, std::string>> with_prefix(const std::string& prefix) const;
  const std::vector<std::pair<std::string, std::string>>& fields() const { return fields_; }

  std::string body() const;
  std::string serialize() const;  // body plus the digest line

  // FormatError on malformed text; CertificationFailed when the digest does
  // not match the body.
  static Certificate parse(const std::string& text);

 private:
  std::vector<std::pair<std::string, std::string>> fields_;
};

std::string sha256_hex(const std::string& data);

}  // namespace leechcert
