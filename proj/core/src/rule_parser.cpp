#include "pfis/rule_parser.hpp"

#include <cctype>
#include <sstream>

namespace pfis {

namespace {

enum class TokKind { If, Is, Not, And, Or, Then, Ident, End };

struct Token {
  TokKind kind;
  std::string text;
  int line;
  int column;
};

const char* describe(TokKind k) {
  switch (k) {
    case TokKind::If: return "IF";
    case TokKind::Is: return "IS";
    case TokKind::Not: return "NOT";
    case TokKind::And: return "AND";
    case TokKind::Or: return "OR";
    case TokKind::Then: return "THEN";
    case TokKind::Ident: return "identifier";
    case TokKind::End: return "end of input";
  }
  return "?";
}

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

std::string upper(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

std::vector<Token> tokenize(std::string_view text, int base_line) {
  std::vector<Token> tokens;
  int line = base_line;
  int col = 1;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (c == '\n') {
      ++line;
      col = 1;
      ++i;
      continue;
    }
    if (c == ' ' || c == '\t' || c == '\r') {
      ++col;
      ++i;
      continue;
    }
    if (c == '#') {  // comment to end of line
      while (i < text.size() && text[i] != '\n') ++i;
      continue;
    }
    if (!ident_start(c)) {
      throw ParseError(line, col, std::string("character '") + c + "'",
                       {"identifier or keyword"});
    }
    const int start_col = col;
    std::size_t j = i;
    while (j < text.size() && ident_char(text[j])) ++j;
    std::string word(text.substr(i, j - i));
    col += static_cast<int>(j - i);
    i = j;

    const std::string up = upper(word);
    TokKind kind = TokKind::Ident;
    if (up == "IF") kind = TokKind::If;
    else if (up == "IS") kind = TokKind::Is;
    else if (up == "NOT") kind = TokKind::Not;
    else if (up == "AND") kind = TokKind::And;
    else if (up == "OR") kind = TokKind::Or;
    else if (up == "THEN") kind = TokKind::Then;
    tokens.push_back({kind, std::move(word), line, start_col});
  }
  tokens.push_back({TokKind::End, "", line, col});
  return tokens;
}

class RuleParser {
 public:
  RuleParser(std::string_view text, int base_line) : tokens_(tokenize(text, base_line)) {}

  Rule parse() {
    Rule rule;
    expect(TokKind::If);
    rule.antecedent.push_back(clause(/*allow_not=*/true));

    bool connective_set = false;
    while (peek().kind == TokKind::And || peek().kind == TokKind::Or) {
      const Token& tok = next();
      const Connective conn = tok.kind == TokKind::And ? Connective::And : Connective::Or;
      if (connective_set && conn != rule.connective) {
        throw ParseError(tok.line, tok.column,
                         "'" + tok.text + "' (mixing AND and OR within one rule)",
                         {rule.connective == Connective::And ? "AND" : "OR", "THEN"});
      }
      rule.connective = conn;
      connective_set = true;
      rule.antecedent.push_back(clause(/*allow_not=*/true));
    }

    expect(TokKind::Then);
    rule.consequent = clause(/*allow_not=*/false);
    if (peek().kind != TokKind::End) {
      const Token& tok = peek();
      throw ParseError(tok.line, tok.column, got_text(tok), {"end of rule"});
    }
    return rule;
  }

 private:
  Clause clause(bool allow_not) {
    Clause c;
    c.variable = expect(TokKind::Ident, "variable identifier").text;
    expect(TokKind::Is);
    if (allow_not && peek().kind == TokKind::Not) {
      next();
      c.negated = true;
    }
    c.category = expect(TokKind::Ident, "category identifier").text;
    return c;
  }

  const Token& peek() const { return tokens_[pos_]; }
  const Token& next() { return tokens_[pos_++]; }

  static std::string got_text(const Token& tok) {
    if (tok.kind == TokKind::End) return "end of input";
    if (tok.kind == TokKind::Ident) return "identifier '" + tok.text + "'";
    return "'" + tok.text + "'";
  }

  const Token& expect(TokKind kind, const char* what = nullptr) {
    const Token& tok = peek();
    if (tok.kind != kind) {
      throw ParseError(tok.line, tok.column, got_text(tok),
                       {what != nullptr ? what : describe(kind)});
    }
    return next();
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

std::string format_message(int line, int column, const std::string& got,
                           const std::vector<std::string>& expected) {
  std::ostringstream os;
  os << line << ":" << column << ": expected ";
  for (std::size_t i = 0; i < expected.size(); ++i) {
    if (i > 0) os << (i + 1 == expected.size() ? " or " : ", ");
    os << expected[i];
  }
  os << ", got " << got;
  return os.str();
}

}  // namespace

ParseError::ParseError(int line, int column, const std::string& got,
                       std::vector<std::string> expected)
    : Error(format_message(line, column, got, expected)),
      line_(line),
      column_(column),
      expected_(std::move(expected)) {}

Rule parse_rule(std::string_view text, int base_line) {
  return RuleParser(text, base_line).parse();
}

RuleSet parse_ruleset(std::string_view text, std::string output_variable) {
  RuleSet rs;
  rs.output_variable = std::move(output_variable);

  int line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t nl = text.find('\n', start);
    std::string_view line =
        text.substr(start, nl == std::string_view::npos ? std::string_view::npos : nl - start);
    ++line_no;

    if (const std::size_t hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    const bool blank = line.find_first_not_of(" \t\r") == std::string_view::npos;
    if (!blank) {
      Rule rule = parse_rule(line, line_no);
      rule.id = "r" + std::to_string(rs.rules.size() + 1);
      rs.rules.push_back(std::move(rule));
    }

    if (nl == std::string_view::npos) break;
    start = nl + 1;
  }

  if (rs.rules.empty()) {
    throw ParseError(1, 1, "no rules", {"at least one rule"});
  }
  return rs;
}

}  // namespace pfis
