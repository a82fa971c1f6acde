#include "inj/crn.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

#include "inj/error.hpp"

namespace inj {

QMatrix Network::stoichiometric() const {
  QMatrix a(static_cast<Index>(species.size()), static_cast<Index>(reactions.size()));
  for (std::size_t k = 0; k < reactions.size(); ++k)
    a.col(static_cast<Index>(k)) = reactions[k].product - reactions[k].reactant;
  return a;
}

QMatrix Network::reactant_matrix() const {
  QMatrix b(static_cast<Index>(reactions.size()), static_cast<Index>(species.size()));
  for (std::size_t k = 0; k < reactions.size(); ++k) b.row(static_cast<Index>(k)) = reactions[k].reactant.transpose();
  return b;
}

QMatrix Network::kinetic_orders() const {
  QMatrix b(static_cast<Index>(reactions.size()), static_cast<Index>(species.size()));
  for (std::size_t k = 0; k < reactions.size(); ++k) {
    if (!reactions[k].orders) throw Error("reaction '" + reactions[k].label + "' has no kinetic orders");
    b.row(static_cast<Index>(k)) = reactions[k].orders->transpose();
  }
  return b;
}

KineticsMode parse_kinetics_mode(std::string_view name) {
  std::string s(name);
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  std::replace(s.begin(), s.end(), '-', '_');
  if (s == "MASS_ACTION") return KineticsMode::MassAction;
  if (s == "POWER_LAW") return KineticsMode::PowerLaw;
  if (s == "MONOTONIC_STRICT") return KineticsMode::MonotonicStrict;
  if (s == "MONOTONIC_WEAK") return KineticsMode::MonotonicWeak;
  throw Error("unknown kinetics mode '" + std::string(name) + "'");
}

std::string to_string(KineticsMode m) {
  switch (m) {
    case KineticsMode::MassAction: return "MASS_ACTION";
    case KineticsMode::PowerLaw: return "POWER_LAW";
    case KineticsMode::MonotonicStrict: return "MONOTONIC_STRICT";
    case KineticsMode::MonotonicWeak: return "MONOTONIC_WEAK";
  }
  return "?";
}

namespace {

struct Token {
  enum class Kind { Ident, Number, Plus, Arrow, BiArrow, Colon, Equals, End } kind;
  std::string text;
  std::size_t column;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }

std::vector<Token> tokenize(std::string_view line, std::size_t line_no) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    const char c = line[i];
    const std::size_t col = i + 1;
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (c == '#') {
      break;
    } else if (line.substr(i, 3) == "<->") {
      out.push_back({Token::Kind::BiArrow, "<->", col});
      i += 3;
    } else if (line.substr(i, 2) == "->") {
      out.push_back({Token::Kind::Arrow, "->", col});
      i += 2;
    } else if (c == '+') {
      out.push_back({Token::Kind::Plus, "+", col});
      ++i;
    } else if (c == ':') {
      out.push_back({Token::Kind::Colon, ":", col});
      ++i;
    } else if (c == '=') {
      out.push_back({Token::Kind::Equals, "=", col});
      ++i;
    } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == '-') {
      std::size_t j = i + 1;
      while (j < line.size() && (std::isdigit(static_cast<unsigned char>(line[j])) || line[j] == '.' || line[j] == '/'))
        ++j;
      out.push_back({Token::Kind::Number, std::string(line.substr(i, j - i)), col});
      i = j;
    } else if (ident_start(c)) {
      std::size_t j = i + 1;
      while (j < line.size() && ident_char(line[j])) ++j;
      out.push_back({Token::Kind::Ident, std::string(line.substr(i, j - i)), col});
      i = j;
    } else {
      throw ParseError(std::string("unexpected character '") + c + "'", line_no, col);
    }
  }
  out.push_back({Token::Kind::End, "", line.size() + 1});
  return out;
}

Rational number(const Token& t, std::size_t line_no) {
  try {
    return parse_rational(t.text);
  } catch (const std::exception& e) {
    throw ParseError(e.what(), line_no, t.column);
  }
}

using Side = std::vector<std::pair<std::string, Rational>>;

struct RawReaction {
  std::size_t line;
  std::string label;
  Side left, right;
  bool reversible;
  std::vector<std::pair<std::string, Rational>> orders;
  std::size_t orders_column = 0;
};

struct RawInfluence {
  std::size_t line;
  std::size_t column;
  std::string label;
  std::vector<std::string> tokens;
};

class LineParser {
 public:
  LineParser(std::vector<Token> toks, std::size_t line) : t_(std::move(toks)), line_(line) {}

  const Token& peek() const { return t_[pos_]; }
  const Token& next() { return t_[pos_++]; }
  bool at(Token::Kind k) const { return peek().kind == k; }

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line_, peek().column); }

  Side side() {
    Side s;
    if (at(Token::Kind::Number) && peek().text == "0" &&
        (t_[pos_ + 1].kind != Token::Kind::Ident)) {
      next();
      return s;
    }
    for (;;) {
      Rational coef = 1;
      if (at(Token::Kind::Number)) {
        const Token& tk = next();
        coef = number(tk, line_);
        if (coef < 0) throw ParseError("negative stoichiometric coefficient", line_, tk.column);
      }
      if (!at(Token::Kind::Ident)) fail("expected a species name");
      s.emplace_back(next().text, coef);
      if (!at(Token::Kind::Plus)) return s;
      next();
    }
  }

  std::size_t line() const { return line_; }

 private:
  std::vector<Token> t_;
  std::size_t pos_ = 0;
  std::size_t line_;
};

}  // namespace

Network parse_network(std::string_view text) {
  std::vector<std::string> declared;
  bool have_declaration = false;
  std::vector<RawReaction> raw;
  std::vector<RawInfluence> influences;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t end = std::min(text.find('\n', start), text.size());
    const std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    {
      // Sign-set tokens such as `-0`, `0+` and `*` are not reaction syntax; split on whitespace.
      std::string body(line.substr(0, std::min(line.find('#'), line.size())));
      std::istringstream is(body);
      std::string head, label;
      if (is >> head && head == "influence" && is >> label && label.back() != ':') {
        RawInfluence inf{line_no, body.find(label, body.find("influence") + 9) + 1, label, {}};
        for (std::string s; is >> s;) inf.tokens.push_back(s);
        influences.push_back(std::move(inf));
        continue;
      }
    }
    auto toks = tokenize(line, line_no);
    if (toks.front().kind == Token::Kind::End) continue;
    LineParser lp(toks, line_no);
    if (lp.at(Token::Kind::Ident) && lp.peek().text == "species" && toks[1].kind != Token::Kind::Colon) {
      if (have_declaration) lp.fail("duplicate species declaration");
      have_declaration = true;
      lp.next();
      while (lp.at(Token::Kind::Ident)) {
        const Token& tk = lp.next();
        if (std::find(declared.begin(), declared.end(), tk.text) != declared.end())
          throw ParseError("species '" + tk.text + "' declared twice", line_no, tk.column);
        declared.push_back(tk.text);
      }
      if (!lp.at(Token::Kind::End)) lp.fail("expected a species name");
      continue;
    }
    RawReaction r{line_no, "", {}, {}, false, {}, 0};
    if (lp.at(Token::Kind::Ident) && toks[1].kind == Token::Kind::Colon) {
      r.label = lp.next().text;
      lp.next();
    }
    r.left = lp.side();
    if (lp.at(Token::Kind::Arrow)) {
      lp.next();
    } else if (lp.at(Token::Kind::BiArrow)) {
      lp.next();
      r.reversible = true;
    } else {
      lp.fail("expected '->' or '<->'");
    }
    r.right = lp.side();
    if (lp.at(Token::Kind::Colon)) {
      lp.next();
      if (!lp.at(Token::Kind::Ident) || lp.peek().text != "orders") lp.fail("expected 'orders'");
      r.orders_column = lp.next().column;
      if (r.reversible) throw ParseError("orders on a reversible reaction; write the two directions separately", line_no, r.orders_column);
      do {
        if (!lp.at(Token::Kind::Ident)) lp.fail("expected species=order");
        std::string sp = lp.next().text;
        if (!lp.at(Token::Kind::Equals)) lp.fail("expected '='");
        lp.next();
        if (!lp.at(Token::Kind::Number)) lp.fail("expected a rational order");
        r.orders.emplace_back(sp, number(lp.next(), line_no));
      } while (lp.at(Token::Kind::Ident));
    }
    if (!lp.at(Token::Kind::End)) lp.fail("unexpected token '" + lp.peek().text + "'");
    raw.push_back(std::move(r));
  }

  Network net;
  net.species = declared;
  auto species_index = [&](const std::string& name, std::size_t line, std::size_t col) -> Index {
    auto it = std::find(net.species.begin(), net.species.end(), name);
    if (it != net.species.end()) return static_cast<Index>(it - net.species.begin());
    if (have_declaration) throw ParseError("undeclared species '" + name + "'", line, col);
    net.species.push_back(name);
    return static_cast<Index>(net.species.size() - 1);
  };
  for (const auto& r : raw) {
    for (const auto* s : {&r.left, &r.right})
      for (const auto& [name, c] : *s) species_index(name, r.line, 1);
    for (const auto& [name, c] : r.orders) species_index(name, r.line, r.orders_column);
  }
  const auto n = static_cast<Index>(net.species.size());
  auto vec = [&](const Side& s, std::size_t line) {
    QVector v = QVector::Zero(n);
    for (const auto& [name, c] : s) v(species_index(name, line, 1)) += c;
    return v;
  };
  std::set<std::string> labels;
  auto add = [&](Reaction rx, std::size_t line) {
    if (!labels.insert(rx.label).second) throw ParseError("duplicate reaction label '" + rx.label + "'", line, 1);
    net.reactions.push_back(std::move(rx));
  };
  std::size_t auto_label = 0;
  for (const auto& r : raw) {
    std::string label = r.label.empty() ? "R" + std::to_string(++auto_label) : r.label;
    if (r.label.empty())
      while (labels.count(label) || std::any_of(raw.begin(), raw.end(), [&](const RawReaction& o) { return o.label == label; }))
        label = "R" + std::to_string(++auto_label);
    Reaction fwd{label, vec(r.left, r.line), vec(r.right, r.line), std::nullopt, std::nullopt};
    if (!r.orders.empty()) {
      QVector o = QVector::Zero(n);
      for (const auto& [name, c] : r.orders) o(species_index(name, r.line, r.orders_column)) = c;
      fwd.orders = o;
    }
    if (r.reversible) {
      Reaction rev{label + "_rev", fwd.product, fwd.reactant, std::nullopt, std::nullopt};
      fwd.label = label + "_fwd";
      add(std::move(fwd), r.line);
      add(std::move(rev), r.line);
    } else {
      add(std::move(fwd), r.line);
    }
  }
  for (const auto& inf : influences) {
    auto it = std::find_if(net.reactions.begin(), net.reactions.end(), [&](const Reaction& rx) { return rx.label == inf.label; });
    if (it == net.reactions.end()) throw ParseError("influence for unknown reaction '" + inf.label + "'", inf.line, inf.column);
    if (inf.tokens.size() != net.species.size())
      throw ParseError("influence row needs " + std::to_string(net.species.size()) + " sign sets", inf.line, inf.column);
    std::vector<SignSet> row;
    for (const auto& tok : inf.tokens) {
      try {
        row.push_back(SignSet::parse(tok));
      } catch (const std::exception& e) {
        throw ParseError(e.what(), inf.line, inf.column);
      }
    }
    it->influence = std::move(row);
  }
  if (net.reactions.empty()) throw ParseError("network has no reactions", line_no, 1);
  return net;
}

std::string serialize(const Network& net) {
  std::ostringstream os;
  os << "species";
  for (const auto& s : net.species) os << ' ' << s;
  os << '\n';
  auto side = [&](const QVector& v) {
    std::string out;
    for (Index i = 0; i < v.size(); ++i) {
      if (v(i).is_zero()) continue;
      if (!out.empty()) out += " + ";
      if (v(i) != 1) out += to_string(v(i)) + " ";
      out += net.species[static_cast<std::size_t>(i)];
    }
    return out.empty() ? std::string("0") : out;
  };
  for (const auto& r : net.reactions) {
    os << r.label << ": " << side(r.reactant) << " -> " << side(r.product);
    if (r.orders) {
      os << " : orders";
      for (Index i = 0; i < r.orders->size(); ++i)
        if (!(*r.orders)(i).is_zero()) os << ' ' << net.species[static_cast<std::size_t>(i)] << '=' << to_string((*r.orders)(i));
    }
    os << '\n';
  }
  for (const auto& r : net.reactions) {
    if (!r.influence) continue;
    os << "influence " << r.label;
    for (const auto& s : *r.influence) os << ' ' << s.token();
    os << '\n';
  }
  return os.str();
}

SignSetMatrix influence_matrix(const Network& net, KineticsMode mode) {
  const SignSet on = mode == KineticsMode::MonotonicWeak ? SignSet(SignSet::kZero | SignSet::kPlus) : SignSet::of(Sign::Plus);
  SignSetMatrix w(net.reactions.size(), net.species.size(), SignSet::of(Sign::Zero));
  for (std::size_t k = 0; k < net.reactions.size(); ++k) {
    const auto& r = net.reactions[k];
    for (std::size_t i = 0; i < net.species.size(); ++i)
      w(k, i) = r.influence ? (*r.influence)[i] : (r.reactant(static_cast<Index>(i)) > 0 ? on : SignSet::of(Sign::Zero));
  }
  return w;
}

Problem build_problem(const Network& net, KineticsMode mode) {
  QMatrix a = net.stoichiometric();
  if (is_zero(QVector(a.reshaped()))) throw Error("stoichiometric matrix is zero: the network has no dynamics");
  ClassPtr cls;
  switch (mode) {
    case KineticsMode::MassAction: cls = MatrixClass::scaled(net.reactant_matrix()); break;
    case KineticsMode::PowerLaw: cls = MatrixClass::scaled(net.kinetic_orders()); break;
    case KineticsMode::MonotonicStrict:
    case KineticsMode::MonotonicWeak: cls = MatrixClass::sign_sets(influence_matrix(net, mode)); break;
  }
  return Problem{cls, Subspace::image_of(a), std::move(a), true};
}

}  // namespace inj
