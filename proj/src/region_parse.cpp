#include <cctype>
#include <cstdlib>
#include <sstream>

#include "cifc/region.hpp"

namespace cifc {

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

[[noreturn]] void fail(const std::string& text, const std::string& why) {
  throw Error(ErrorCode::ParseError, why + " in \"" + text + "\"");
}

NameList split_names(std::string_view s, const std::string& context) {
  NameList out;
  std::string cur;
  for (char ch : s) {
    if (ch == ',') {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (!trim(cur).empty() || !out.empty()) out.push_back(trim(cur));
  for (const auto& n : out)
    if (n.empty()) fail(context, "empty variable name");
  return out;
}

MITerm parse_term(std::string_view body, const std::string& context) {
  const auto semi = body.find(';');
  if (semi == std::string_view::npos) fail(context, "missing ';'");
  const auto bar = body.find('|', semi);
  MITerm t;
  t.left = split_names(body.substr(0, semi), context);
  if (bar == std::string_view::npos) {
    t.right = split_names(body.substr(semi + 1), context);
  } else {
    t.right = split_names(body.substr(semi + 1, bar - semi - 1), context);
    t.given = split_names(body.substr(bar + 1), context);
  }
  if (t.left.empty() || t.right.empty()) fail(context, "empty argument of I()");
  return t;
}

}  // namespace

MIExpr parse_expr(const std::string& text) {
  MIExpr e;
  std::size_t i = 0;
  int sign = 1;
  bool expect_term = true;
  while (i < text.size()) {
    const char ch = text[i];
    if (std::isspace(static_cast<unsigned char>(ch))) {
      ++i;
    } else if (ch == '+' || ch == '-') {
      if (!expect_term) {
        expect_term = true;
        sign = ch == '-' ? -1 : 1;
      } else {
        sign *= ch == '-' ? -1 : 1;
      }
      ++i;
    } else if (ch == 'I' && i + 1 < text.size() && text[i + 1] == '(') {
      if (!expect_term) fail(text, "missing operator");
      const auto close = text.find(')', i);
      if (close == std::string::npos) fail(text, "unbalanced parenthesis");
      e.add(sign, parse_term(std::string_view(text).substr(i + 2, close - i - 2), text));
      i = close + 1;
      sign = 1;
      expect_term = false;
    } else if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '.') {
      if (!expect_term) fail(text, "missing operator");
      char* end = nullptr;
      const double v = std::strtod(text.c_str() + i, &end);
      e.constant += sign * v;
      i = static_cast<std::size_t>(end - text.c_str());
      sign = 1;
      expect_term = false;
    } else {
      fail(text, std::string("unexpected character '") + ch + "'");
    }
  }
  if (expect_term) fail(text, "dangling operator or empty expression");
  return e;
}

LinearRateConstraint parse_constraint(const std::string& label, const std::string& text) {
  LinearRateConstraint c;
  c.label = label;
  c.source = text;
  auto op = text.find("<=");
  c.sense = Sense::LE;
  if (op == std::string::npos) {
    op = text.find(">=");
    c.sense = Sense::GE;
  }
  if (op == std::string::npos) fail(text, "missing <= or >=");
  c.rhs = parse_expr(text.substr(op + 2));

  std::istringstream lhs(text.substr(0, op));
  std::string tok;
  int mult = 1;
  bool expect_var = true;
  while (lhs >> tok) {
    if (tok == "+") {
      if (expect_var) fail(text, "dangling '+'");
      expect_var = true;
      mult = 1;
    } else if (std::isdigit(static_cast<unsigned char>(tok[0]))) {
      if (!expect_var) fail(text, "missing '+'");
      mult = std::stoi(tok);
    } else {
      if (!expect_var) fail(text, "missing '+'");
      c.coeffs[tok] += mult;
      expect_var = false;
    }
  }
  if (c.coeffs.empty()) fail(text, "no rate variable on the left");
  return c;
}

std::string LinearRateConstraint::to_string() const {
  std::ostringstream out;
  bool first = true;
  for (const auto& [name, k] : coeffs) {
    if (k == 0) continue;
    if (!first) out << " + ";
    if (k != 1) out << k << " ";
    out << name;
    first = false;
  }
  out << (sense == Sense::LE ? " <= " : " >= ") << rhs.to_string();
  return out.str();
}

}  // namespace cifc
