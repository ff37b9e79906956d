#include <cctype>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "leadcon/errors.hpp"
#include "leadcon/milp.hpp"

namespace leadcon {

namespace {

std::string decimal(const Rational& v, bool& exact) {
  std::string s;
  if (v.terminating_decimal(s)) return s;
  exact = false;
  std::ostringstream os;
  os.precision(17);
  os << v.to_mpq().get_d();
  return os.str();
}

/// Renders " + c name" terms; `fractions` selects p/q output.
std::string render_terms(const LinearProgram& lp, const std::vector<std::pair<int, Rational>>& terms, bool fractions,
                         bool& exact) {
  std::ostringstream os;
  if (terms.empty()) os << " 0 " << lp.vars.front().name;
  int on_line = 0;
  for (const auto& [v, c] : terms) {
    if (on_line == 8) {
      os << "\n  ";
      on_line = 0;
    }
    const Rational mag = abs(c);
    os << (c.sign() < 0 ? " - " : " + ") << (fractions ? mag.to_string() : decimal(mag, exact)) << ' '
       << lp.vars[static_cast<std::size_t>(v)].name;
    ++on_line;
  }
  return os.str();
}

const char* rel_text(Relation r) {
  switch (r) {
    case Relation::LessEq: return "<=";
    case Relation::GreaterEq: return ">=";
    case Relation::Equal: return "=";
  }
  return "=";
}

void write_row(std::ostream& out, const LinearProgram& lp, const std::string& name,
               const std::vector<std::pair<int, Rational>>& terms, const Relation* rel, const Rational* rhs) {
  bool exact = true;
  std::string body = render_terms(lp, terms, false, exact);
  std::string tail;
  if (rel) tail = std::string(" ") + rel_text(*rel) + " " + decimal(*rhs, exact);
  if (!exact) {
    bool ignored = true;
    std::string fr = render_terms(lp, terms, true, ignored);
    for (auto& ch : fr) {
      if (ch == '\n') ch = ' ';
    }
    out << "\\exact " << name << ":" << fr;
    if (rel) out << ' ' << rel_text(*rel) << ' ' << rhs->to_string();
    out << '\n';
  }
  out << ' ' << name << ':' << body << tail << '\n';
}

}  // namespace

void export_lp_file(const MilpModel& model, std::ostream& out) {
  const auto& lp = model.lp;
  out << "\\ leadcon OSE model, mode " << to_string(model.mode) << ", variant "
      << (model.symmetric ? "symmetric" : "general") << '\n';
  out << (lp.maximize ? "Maximize" : "Minimize") << '\n';
  std::vector<std::pair<int, Rational>> obj;
  for (std::size_t v = 0; v < lp.vars.size(); ++v) {
    if (!lp.vars[v].cost.is_zero()) obj.emplace_back(static_cast<int>(v), lp.vars[v].cost);
  }
  write_row(out, lp, "obj", obj, nullptr, nullptr);
  out << "Subject To\n";
  for (const auto& row : lp.rows) write_row(out, lp, row.name, row.terms, &row.rel, &row.rhs);
  out << "Bounds\n";
  for (const auto& v : lp.vars) {
    if (v.lower && v.upper && *v.lower == *v.upper) {
      out << ' ' << v.name << " = " << v.lower->to_string() << '\n';
    } else if (!v.lower && !v.upper) {
      out << ' ' << v.name << " free\n";
    } else {
      out << ' ' << (v.lower ? v.lower->to_string() : "-inf") << " <= " << v.name;
      if (v.upper) out << " <= " << v.upper->to_string();
      out << '\n';
    }
  }
  out << "Binaries\n";
  int on_line = 0;
  for (int b : model.binaries) {
    out << ' ' << lp.vars[static_cast<std::size_t>(b)].name;
    if (++on_line == 10) {
      out << '\n';
      on_line = 0;
    }
  }
  if (on_line > 0) out << '\n';
  out << "End\n";
}

namespace {

bool is_relation(const std::string& t) { return t == "<=" || t == ">=" || t == "=" || t == "<" || t == ">" || t == "=<" || t == "=>"; }

Relation to_relation(const std::string& t) {
  if (t == "<=" || t == "<" || t == "=<") return Relation::LessEq;
  if (t == ">=" || t == ">" || t == "=>") return Relation::GreaterEq;
  return Relation::Equal;
}

bool is_number(const std::string& t) {
  return !t.empty() && (std::isdigit(static_cast<unsigned char>(t[0])) != 0 || t[0] == '.');
}

struct ParsedRow {
  std::string name;
  std::vector<std::pair<std::string, Rational>> terms;
  bool has_rel = false;
  Relation rel = Relation::LessEq;
  Rational rhs;
};

/// Parses "name: [+|-] [coef] var ... [rel rhs]" from tokens starting at pos.
ParsedRow parse_row(const std::vector<std::string>& tok, std::size_t& pos) {
  ParsedRow row;
  row.name = tok[pos].substr(0, tok[pos].size() - 1);
  ++pos;
  Rational sign(1);
  std::optional<Rational> coef;
  while (pos < tok.size()) {
    const std::string& t = tok[pos];
    if (t.back() == ':' && !coef && sign == Rational(1)) break;
    if (is_relation(t)) {
      row.has_rel = true;
      row.rel = to_relation(t);
      ++pos;
      if (pos >= tok.size()) throw ValidationError("missing right-hand side in row '" + row.name + "'");
      Rational rs(1);
      std::string v = tok[pos];
      if (v == "-" || v == "+") {
        rs = v == "-" ? Rational(-1) : Rational(1);
        v = tok.at(++pos);
      } else if (v[0] == '-') {
        rs = Rational(-1);
        v = v.substr(1);
      }
      row.rhs = rs * Rational::parse(v);
      ++pos;
      break;
    }
    if (t == "+" || t == "-") {
      if (t == "-") sign = -sign;
      ++pos;
      continue;
    }
    if (is_number(t)) {
      coef = Rational::parse(t);
      ++pos;
      continue;
    }
    if (!(std::isalpha(static_cast<unsigned char>(t[0])) || t[0] == '_')) break;
    const Rational c = sign * (coef ? *coef : Rational(1));
    if (!c.is_zero()) row.terms.emplace_back(t, c);
    sign = Rational(1);
    coef.reset();
    ++pos;
  }
  return row;
}

std::vector<std::string> tokenize(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string t;
  while (in >> t) out.push_back(t);
  return out;
}

}  // namespace

LpFile read_lp_file(std::istream& in) {
  enum class Section { None, Objective, Rows, Bounds, Binaries, Done };
  Section sec = Section::None;
  std::map<std::string, ParsedRow> exact_rows;
  std::string obj_text;
  std::string rows_text;
  std::vector<std::string> bound_lines;
  std::vector<std::string> binaries;
  bool maximize = false;
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("\\exact ", 0) == 0) {
      auto tok = tokenize(line.substr(7));
      std::size_t pos = 0;
      if (tok.empty() || tok[0].back() != ':') throw ValidationError("malformed exact comment");
      ParsedRow r = parse_row(tok, pos);
      exact_rows[r.name] = std::move(r);
      continue;
    }
    if (!line.empty() && line[0] == '\\') continue;
    std::string low;
    for (char c : line) low += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    const auto head = tokenize(low);
    if (!head.empty()) {
      if (head[0] == "minimize" || head[0] == "maximize") {
        maximize = head[0] == "maximize";
        sec = Section::Objective;
        continue;
      }
      if ((head[0] == "subject" && head.size() > 1 && head[1] == "to") || head[0] == "st" || head[0] == "s.t.") {
        sec = Section::Rows;
        continue;
      }
      if (head[0] == "bounds") {
        sec = Section::Bounds;
        continue;
      }
      if (head[0] == "binaries" || head[0] == "binary") {
        sec = Section::Binaries;
        continue;
      }
      if (head[0] == "end") {
        sec = Section::Done;
        continue;
      }
    }
    switch (sec) {
      case Section::Objective: obj_text += line + "\n"; break;
      case Section::Rows: rows_text += line + "\n"; break;
      case Section::Bounds: bound_lines.push_back(line); break;
      case Section::Binaries:
        for (auto& t : tokenize(line)) binaries.push_back(t);
        break;
      default: break;
    }
  }

  LpFile file;
  auto& lp = file.lp;
  lp.maximize = maximize;
  std::map<std::string, int> index;
  auto var = [&](const std::string& name) {
    auto it = index.find(name);
    if (it != index.end()) return it->second;
    const int v = lp.add_variable(name, Rational(0), std::nullopt);
    index.emplace(name, v);
    return v;
  };
  // Bounds first so that variable order follows the bounds section.
  for (const auto& bl : bound_lines) {
    auto tok = tokenize(bl);
    if (tok.empty()) continue;
    auto num = [](const std::string& t) -> std::optional<Rational> {
      if (t == "-inf" || t == "-infinity") return std::nullopt;
      return Rational::parse(t);
    };
    if (tok.size() == 2 && tok[1] == "free") {
      const int v = var(tok[0]);
      lp.vars[static_cast<std::size_t>(v)].lower.reset();
      lp.vars[static_cast<std::size_t>(v)].upper.reset();
    } else if (tok.size() == 3 && tok[1] == "=") {
      const int v = var(tok[0]);
      lp.vars[static_cast<std::size_t>(v)].lower = Rational::parse(tok[2]);
      lp.vars[static_cast<std::size_t>(v)].upper = Rational::parse(tok[2]);
    } else if (tok.size() >= 3 && tok[1] == "<=" && !is_number(tok[0]) && tok[0] != "-inf") {
      lp.vars[static_cast<std::size_t>(var(tok[0]))].upper = Rational::parse(tok[2]);
    } else if (tok.size() >= 3 && tok[1] == ">=") {
      lp.vars[static_cast<std::size_t>(var(tok[0]))].lower = num(tok[2]);
    } else if (tok.size() >= 3 && tok[1] == "<=") {
      const int v = var(tok[2]);
      lp.vars[static_cast<std::size_t>(v)].lower = num(tok[0]);
      if (tok.size() == 5 && tok[3] == "<=") lp.vars[static_cast<std::size_t>(v)].upper = Rational::parse(tok[4]);
    } else {
      throw ValidationError("unsupported bound line '" + bl + "'");
    }
  }

  auto obj_tok = tokenize(obj_text);
  if (!obj_tok.empty()) {
    std::size_t pos = 0;
    if (obj_tok[0].back() != ':') obj_tok.insert(obj_tok.begin(), "obj:");
    ParsedRow o = parse_row(obj_tok, pos);
    if (auto it = exact_rows.find(o.name); it != exact_rows.end()) o = it->second;
    for (const auto& [name, c] : o.terms) lp.vars[static_cast<std::size_t>(var(name))].cost += c;
  }
  const auto tok = tokenize(rows_text);
  std::size_t pos = 0;
  while (pos < tok.size()) {
    if (tok[pos].back() != ':') throw ValidationError("row without a name near '" + tok[pos] + "'");
    ParsedRow r = parse_row(tok, pos);
    if (auto it = exact_rows.find(r.name); it != exact_rows.end()) r = it->second;
    if (!r.has_rel) throw ValidationError("row '" + r.name + "' lacks a relation");
    std::vector<std::pair<int, Rational>> terms;
    for (const auto& [name, c] : r.terms) terms.emplace_back(var(name), c);
    lp.add_row(r.name, std::move(terms), r.rel, r.rhs);
  }
  for (const auto& b : binaries) {
    const int v = var(b);
    lp.vars[static_cast<std::size_t>(v)].lower = Rational(0);
    lp.vars[static_cast<std::size_t>(v)].upper = Rational(1);
  }
  file.binaries = binaries;
  return file;
}

}  // namespace leadcon
