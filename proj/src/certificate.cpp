#include "leechcert/certificate.hpp"

#include <openssl/evp.h>

#include <sstream>

#include "leechcert/errors.hpp"

namespace leechcert {

namespace {

constexpr const char* kHeader = "leechcert-certificate 1";

bool valid_key(const std::string& k) {
  if (k.empty()) return false;
  for (char c : k)
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') return false;
  return true;
}

}  // namespace

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw Error("sha256 digest failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

void Certificate::set(const std::string& key, const std::string& value) {
  if (!valid_key(key) || key == "target" || key == "sha256") throw DomainError("bad certificate key '" + key + "'");
  if (value.find('\n') != std::string::npos) throw DomainError("certificate value spans lines");
  for (auto& [k, v] : fields_)
    if (k == key) {
      v = value;
      return;
    }
  fields_.emplace_back(key, value);
}

bool Certificate::has(const std::string& key) const { return get(key).has_value(); }

std::optional<std::string> Certificate::get(const std::string& key) const {
  for (const auto& [k, v] : fields_)
    if (k == key) return v;
  return std::nullopt;
}

std::string Certificate::str(const std::string& key) const {
  auto v = get(key);
  if (!v) throw FormatError("certificate lacks '" + key + "'");
  return *v;
}

Rat Certificate::rat(const std::string& key) const { return parse_rat(str(key)); }

std::vector<std::pair<std::string, std::string>> Certificate::with_prefix(const std::string& prefix) const {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& kv : fields_)
    if (kv.first.rfind(prefix, 0) == 0) out.push_back(kv);
  return out;
}

std::string Certificate::body() const {
  std::ostringstream os;
  os << kHeader << "\n" << "target " << target << "\n";
  for (const auto& [k, v] : fields_) os << k << " " << v << "\n";
  return os.str();
}

std::string Certificate::serialize() const {
  std::string b = body();
  return b + "sha256 " + sha256_hex(b) + "\n";
}

Certificate Certificate::parse(const std::string& text) {
  if (text.find_first_not_of(" \t\r\n") == std::string::npos) throw FormatError("empty certificate");
  std::istringstream in(text);
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  if (lines.size() < 3 || lines[0] != kHeader) throw FormatError("not a leechcert certificate");
  if (lines.back().rfind("sha256 ", 0) != 0) throw FormatError("certificate has no digest line");

  Certificate c;
  std::string body;
  for (std::size_t i = 0; i + 1 < lines.size(); ++i) {
    body += lines[i] + "\n";
    if (i == 0) continue;
    auto sp = lines[i].find(' ');
    if (sp == std::string::npos || sp == 0) throw FormatError("malformed certificate line " + std::to_string(i + 1));
    std::string k = lines[i].substr(0, sp), v = lines[i].substr(sp + 1);
    if (i == 1) {
      if (k != "target") throw FormatError("certificate target line missing");
      c.target = v;
      continue;
    }
    if (!valid_key(k) || c.has(k)) throw FormatError("bad or repeated key on line " + std::to_string(i + 1));
    c.fields_.emplace_back(k, v);
  }
  if (sha256_hex(body) != lines.back().substr(7)) throw CertificationFailed("certificate digest does not match its contents");
  return c;
}

}  // namespace leechcert
