#include "feyncat/descriptor.hpp"

#include <cctype>

namespace feyncat {

namespace {

struct Cursor {
  const std::string& s;
  std::size_t i = 0;

  void skip() { while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i; }
  bool eat(const std::string& tok) {
    skip();
    if (s.compare(i, tok.size(), tok) == 0) { i += tok.size(); return true; }
    return false;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorKind::parse, what + " at offset " + std::to_string(i) + " in '" + s + "'");
  }
  std::string token() {
    skip();
    std::size_t j = i;
    while (j < s.size() && s[j] != ',' && s[j] != '}' && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    std::string t = s.substr(i, j - i);
    i = j;
    return t;
  }
  int number() {
    skip();
    std::size_t j = i;
    while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
    if (j == i) fail("expected a number");
    int v = std::stoi(s.substr(i, j - i));
    i = j;
    return v;
  }
};

}  // namespace

Aggregate parse_aggregate(const std::string& text) {
  Cursor c{text};
  std::vector<Corolla> cs;
  c.skip();
  if (c.i == text.size() || c.eat("I")) {
    c.skip();
    if (c.i != text.size()) c.fail("trailing input");
    return Aggregate();
  }
  while (true) {
    if (!c.eat("*")) c.fail("expected '*'");
    if (!c.eat("{")) c.fail("expected '{'");
    Corolla k;
    if (!c.eat("}")) {
      while (true) {
        std::string l = c.token();
        if (!valid_label(l) || l[0] == '%') c.fail("bad label '" + l + "'");
        k.flags.push_back(l);
        if (c.eat("}")) break;
        if (!c.eat(",")) c.fail("expected ',' or '}'");
      }
    }
    if (c.eat("g=")) k.genus = c.number();
    cs.push_back(std::move(k));
    c.skip();
    if (c.i == text.size()) break;
    if (!c.eat("x") && !c.eat("⊗")) c.fail("expected tensor sign");
  }
  return Aggregate(std::move(cs));
}

std::string format_aggregate(const Aggregate& x) {
  if (x.empty()) return "I";
  std::string out;
  for (int v = 0; v < x.size(); ++v) {
    if (v) out += " x ";
    out += "*{";
    for (int f = x.first_flag(v); f < x.end_flag(v); ++f) {
      if (f > x.first_flag(v)) out += ",";
      out += x.label(f);
    }
    out += "}";
    if (x[v].genus) out += "g=" + std::to_string(*x[v].genus);
  }
  return out;
}

std::vector<std::string> parse_decoration(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : text) {
    if (ch == ';') {
      out.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(ch))) {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

std::string format_decoration(const std::vector<std::string>& d) {
  std::string out;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (i) out += ";";
    out += d[i];
  }
  return out;
}

}  // namespace feyncat
