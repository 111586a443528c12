#include "dopkit/ringfile.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace dopkit {

namespace {

struct Cursor {
  const std::string& s;
  size_t pos = 0;
  int line = 1, col = 1;

  char peek() const { return pos < s.size() ? s[pos] : '\0'; }
  void advance() {
    if (pos >= s.size()) return;
    if (s[pos] == '\n') { ++line; col = 1; }
    else ++col;
    ++pos;
  }
  void skip_ws_and_comments() {
    for (;;) {
      while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) advance();
      if (peek() == '#') {
        while (pos < s.size() && s[pos] != '\n') advance();
        continue;
      }
      return;
    }
  }
};

struct Token {
  std::string text;
  int line, col;
};

bool is_identifier(const std::string& t) {
  if (t.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(t[0])) && t[0] != '_') return false;
  for (char c : t)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '\'') return false;
  return true;
}

long parse_long(const Token& tk, const char* what) {
  if (tk.text.empty()) throw ParseError(std::string("expected ") + what, tk.line, tk.col);
  size_t i = tk.text[0] == '-' ? 1 : 0;
  if (i == tk.text.size()) throw ParseError(std::string("expected ") + what, tk.line, tk.col);
  long v = 0;
  for (; i < tk.text.size(); ++i) {
    char c = tk.text[i];
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw ParseError(std::string("expected ") + what + ", got '" + tk.text + "'", tk.line, tk.col);
    v = v * 10 + (c - '0');
    if (v > (1L << 40)) throw ParseError("integer literal too large", tk.line, tk.col);
  }
  return tk.text[0] == '-' ? -v : v;
}

}  // namespace

RingFile parse_ring_file(const std::string& text) {
  RingFile rf;
  bool have_field = false, have_vars = false;
  Cursor cur{text};

  for (;;) {
    cur.skip_ws_and_comments();
    if (cur.peek() == '\0') break;
    int stmt_line = cur.line, stmt_col = cur.col;

    // keyword
    std::string kw;
    while (cur.peek() != '\0' && !std::isspace(static_cast<unsigned char>(cur.peek())) &&
           cur.peek() != ';' && cur.peek() != '#') {
      kw += cur.peek();
      cur.advance();
    }

    if (kw == "rel") {
      // The body runs verbatim to the terminating ';' (comments stripped).
      cur.skip_ws_and_comments();
      int body_line = cur.line, body_col = cur.col;
      std::string body;
      while (cur.peek() != '\0' && cur.peek() != ';') {
        if (cur.peek() == '#') {
          while (cur.peek() != '\0' && cur.peek() != '\n') cur.advance();
          continue;
        }
        body += cur.peek();
        cur.advance();
      }
      if (cur.peek() != ';') throw ParseError("missing ';' after relation", body_line, body_col);
      cur.advance();
      while (!body.empty() && std::isspace(static_cast<unsigned char>(body.back()))) body.pop_back();
      if (body.empty()) throw ParseError("empty relation", stmt_line, stmt_col);
      if (!have_vars) throw ParseError("'rel' before 'vars'", stmt_line, stmt_col);
      rf.rels.push_back(body);
      rf.rel_pos.push_back({body_line, body_col});
      continue;
    }

    // Whitespace-separated tokens up to ';'.
    std::vector<Token> toks;
    for (;;) {
      cur.skip_ws_and_comments();
      char c = cur.peek();
      if (c == '\0') throw ParseError("missing ';' at end of statement", stmt_line, stmt_col);
      if (c == ';') { cur.advance(); break; }
      Token tk{"", cur.line, cur.col};
      while (cur.peek() != '\0' && !std::isspace(static_cast<unsigned char>(cur.peek())) &&
             cur.peek() != ';' && cur.peek() != '#') {
        tk.text += cur.peek();
        cur.advance();
      }
      toks.push_back(std::move(tk));
    }

    if (kw == "field") {
      if (have_field) throw ParseError("duplicate 'field' statement", stmt_line, stmt_col);
      if (toks.empty()) throw ParseError("expected field name after 'field'", stmt_line, stmt_col);
      const std::string& name = toks[0].text;
      if (name == "QQ") {
        if (toks.size() != 1) throw ParseError("unexpected token after 'QQ'", toks[1].line, toks[1].col);
        rf.kind = FieldKind::QQ;
      } else if (name == "ZZ") {
        if (toks.size() != 1) throw ParseError("unexpected token after 'ZZ'", toks[1].line, toks[1].col);
        rf.kind = FieldKind::ZZ;
      } else if (name == "Fp") {
        if (toks.size() != 2) throw ParseError("expected one modulus after 'Fp'", toks[0].line, toks[0].col);
        long p = parse_long(toks[1], "prime modulus");
        if (p < 2 || p >= (1L << 31) || !PrimeField::is_prime(static_cast<std::uint32_t>(p)))
          throw ParseError("modulus is not prime: " + toks[1].text, toks[1].line, toks[1].col);
        rf.kind = FieldKind::Fp;
        rf.p = p;
      } else {
        throw ParseError("unknown field '" + name + "' (expected QQ, Fp, or ZZ)", toks[0].line, toks[0].col);
      }
      have_field = true;
      continue;
    }

    if (kw == "vars") {
      if (have_vars) throw ParseError("duplicate 'vars' statement", stmt_line, stmt_col);
      if (!have_field) throw ParseError("'vars' before 'field'", stmt_line, stmt_col);
      if (toks.empty()) throw ParseError("expected variables after 'vars'", stmt_line, stmt_col);
      for (const Token& tk : toks) {
        size_t colon = tk.text.find(':');
        if (colon == std::string::npos)
          throw ParseError("expected name:weight, got '" + tk.text + "'", tk.line, tk.col);
        std::string name = tk.text.substr(0, colon);
        Token wtok{tk.text.substr(colon + 1), tk.line, tk.col + static_cast<int>(colon) + 1};
        if (!is_identifier(name))
          throw ParseError("invalid variable name '" + name + "'", tk.line, tk.col);
        for (const std::string& seen : rf.names)
          if (seen == name) throw ParseError("duplicate variable '" + name + "'", tk.line, tk.col);
        long w = parse_long(wtok, "weight");
        if (w <= 0)
          throw ParseError("variable weight must be positive: " + name + ":" + wtok.text, tk.line, tk.col);
        if (w > 255) throw ParseError("variable weight too large (max 255)", wtok.line, wtok.col);
        rf.names.push_back(std::move(name));
        rf.weights.push_back(static_cast<int>(w));
      }
      if (static_cast<int>(rf.names.size()) > kMaxVars)
        throw ParseError("too many variables (max " + std::to_string(kMaxVars) + ")", stmt_line, stmt_col);
      have_vars = true;
      continue;
    }

    if (kw.empty()) throw ParseError("unexpected ';'", stmt_line, stmt_col);
    throw ParseError("unknown statement '" + kw + "' (expected field, vars, or rel)", stmt_line, stmt_col);
  }

  if (!have_field) throw ParseError("missing 'field' statement", cur.line, cur.col);
  if (!have_vars) throw ParseError("missing 'vars' statement", cur.line, cur.col);
  if (rf.kind == FieldKind::ZZ) {
    for (size_t i = 0; i < rf.rels.size(); ++i)
      if (rf.rels[i].find('/') != std::string::npos)
        throw ParseError("integer coefficients required over ZZ", rf.rel_pos[i].first, rf.rel_pos[i].second);
  }
  return rf;
}

RingFile load_ring_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open ring file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_ring_file(buf.str());
}

std::string RingFile::field_str() const {
  switch (kind) {
    case FieldKind::QQ: return "QQ";
    case FieldKind::Fp: return "Fp " + std::to_string(p);
    case FieldKind::ZZ: return "ZZ";
  }
  return "?";
}

std::string RingFile::canonical_text() const {
  std::ostringstream os;
  os << "field " << field_str() << ";\n";
  os << "vars";
  for (size_t i = 0; i < names.size(); ++i) os << " " << names[i] << ":" << weights[i];
  os << ";\n";
  for (const std::string& r : rels) os << "rel " << r << ";\n";
  return os.str();
}

}  // namespace dopkit
