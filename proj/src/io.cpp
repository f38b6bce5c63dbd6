#include "leechcert/io.hpp"

#include <fstream>
#include <sstream>

#include "leechcert/errors.hpp"

namespace leechcert {

namespace {

// Non-empty lines with comments and surrounding blanks removed, paired with
// their 1-based line numbers.
std::vector<std::pair<std::size_t, std::string>> content_lines(const std::string& text) {
  std::vector<std::pair<std::size_t, std::string>> out;
  std::istringstream in(text);
  std::string line;
  std::size_t no = 0;
  while (std::getline(in, line)) {
    ++no;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    auto e = line.find_last_not_of(" \t\r");
    out.emplace_back(no, line.substr(b, e - b + 1));
  }
  return out;
}

[[noreturn]] void bad(std::size_t line, const std::string& what) {
  throw FormatError("line " + std::to_string(line) + ": " + what);
}

Int parse_int(const std::string& s, std::size_t line) {
  Int v;
  if (s.empty() || v.set_str(s[0] == '+' ? s.substr(1) : s, 10) != 0) bad(line, "expected an integer, got '" + s + "'");
  return v;
}

// "key value" with the expected key.
std::string keyed(const std::pair<std::size_t, std::string>& l, const std::string& key) {
  std::istringstream in(l.second);
  std::string k, v, extra;
  in >> k >> v;
  if (k != key || v.empty() || (in >> extra)) bad(l.first, "expected '" + key + " <value>'");
  return v;
}

}  // namespace

RadialFn parse_coefficients(const std::string& text) {
  auto lines = content_lines(text);
  if (lines.size() < 3) throw FormatError("coefficient file needs dim, scale and at least one coefficient");
  RadialFn f;
  Int dim = parse_int(keyed(lines[0], "dim"), lines[0].first);
  if (dim < 2 || dim > 1000 || dim % 2 != 0) bad(lines[0].first, "dimension must be even and at least 2");
  f.dim = static_cast<unsigned>(dim.get_ui());
  Int e = parse_int(keyed(lines[1], "scale"), lines[1].first);
  if (e < 0 || e > 100000) bad(lines[1].first, "scale exponent out of range");
  f.scale = Rat(int_pow(Int(10), e.get_ui()));
  for (std::size_t i = 2; i < lines.size(); ++i) f.coeffs.emplace_back(parse_int(lines[i].second, lines[i].first));
  return f;
}

std::string format_coefficients(const RadialFn& f) {
  if (f.scale.get_den() != 1) throw DomainError("scale is not an integer power of 10");
  Int s = f.scale.get_num();
  unsigned long e = 0;
  while (s > 1 && s % 10 == 0) {
    s /= 10;
    ++e;
  }
  if (s != 1) throw DomainError("scale is not an integer power of 10");
  std::ostringstream os;
  os << "dim " << f.dim << "\nscale " << e << "\n";
  for (const Rat& c : f.coeffs) {
    if (c.get_den() != 1) throw DomainError("coefficient is not an integer");
    os << c.get_num().get_str() << "\n";
  }
  return os.str();
}

RootHints parse_roots(const std::string& text) {
  RootHints h;
  for (const auto& [no, s] : content_lines(text)) {
    try {
      if (s.rfind("h ", 0) == 0)
        h.fhat_roots.push_back(parse_rat(s.substr(2)));
      else
        h.f_roots.push_back(parse_rat(s));
    } catch (const FormatError& e) {
      bad(no, e.what());
    }
  }
  if (h.f_roots.empty()) throw FormatError("root file lists no roots of f");
  return h;
}

std::string format_roots(const RootHints& h) {
  std::ostringstream os;
  for (const Rat& r : h.f_roots) os << to_string(r) << "\n";
  for (const Rat& r : h.fhat_roots) os << "h " << to_string(r) << "\n";
  return os.str();
}

LatticeData parse_lattice(const std::string& text, const std::string& name) {
  auto lines = content_lines(text);
  if (lines.empty()) throw FormatError("empty lattice file");
  std::istringstream head(lines[0].second);
  std::string a, b, extra;
  head >> a >> b;
  if (b.empty() || (head >> extra)) bad(lines[0].first, "expected 'n scale_sq'");
  Int n = parse_int(a, lines[0].first), scale = parse_int(b, lines[0].first);
  if (n < 1 || n > 64) bad(lines[0].first, "dimension out of range");
  if (scale < 1) bad(lines[0].first, "scale_sq must be positive");
  const unsigned dim = static_cast<unsigned>(n.get_ui());
  if (lines.size() != dim + 1) throw FormatError("expected " + std::to_string(dim) + " basis rows");
  IntMatrix basis(dim, dim);
  for (unsigned i = 0; i < dim; ++i) {
    std::istringstream row(lines[i + 1].second);
    std::string tok;
    unsigned j = 0;
    while (row >> tok) {
      if (j >= dim) bad(lines[i + 1].first, "too many entries");
      basis(i, j++) = parse_int(tok, lines[i + 1].first);
    }
    if (j != dim) bad(lines[i + 1].first, "too few entries");
  }
  return make_lattice(name, basis, scale);
}

std::string format_lattice(const LatticeData& L) {
  std::ostringstream os;
  os << L.n << " " << L.scale_sq.get_str() << "\n";
  for (unsigned i = 0; i < L.n; ++i) {
    for (unsigned j = 0; j < L.n; ++j) os << (j ? " " : "") << L.basis(i, j).get_str();
    os << "\n";
  }
  return os.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << content;
  if (!out) throw InputError("write failed for " + path);
}

}  // namespace leechcert
