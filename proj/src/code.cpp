#include "tsc/code.hpp"

#include "tsc/error.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace tsc {

char letter_char(PauliLetter l) {
  switch (l) {
    case PauliLetter::X: return 'X';
    case PauliLetter::Y: return 'Y';
    case PauliLetter::Z: return 'Z';
  }
  return '?';
}

unsigned CodeDefinition::recipe_range(const GeneratorRecipe& r) {
  if (r.terms.empty())
    return 1;
  int xmin = r.terms[0].dx, xmax = r.terms[0].dx;
  int ymin = r.terms[0].dy, ymax = r.terms[0].dy;
  for (const auto& t : r.terms) {
    xmin = std::min(xmin, t.dx);
    xmax = std::max(xmax, t.dx);
    ymin = std::min(ymin, t.dy);
    ymax = std::max(ymax, t.dy);
  }
  return unsigned(std::max(xmax - xmin, ymax - ymin) + 1);
}

unsigned CodeDefinition::max_range() const {
  unsigned m = 1;
  for (const auto& r : stabilizer_recipes)
    m = std::max(m, recipe_range(r));
  if (gauge_recipes)
    for (const auto& r : *gauge_recipes)
      m = std::max(m, recipe_range(r));
  return m;
}

namespace {

[[noreturn]] void parse_fail(std::size_t line_no, const std::string& msg) {
  std::ostringstream os;
  os << "parse error at line " << line_no << ": " << msg;
  throw Error(ErrorKind::Parse, os.str());
}

GeneratorRecipe parse_recipe(std::size_t line_no, const std::string& label,
                             const std::string& rest, unsigned qubits) {
  GeneratorRecipe rec;
  rec.label = label;
  std::istringstream is(rest);
  std::string tok;
  std::set<std::tuple<int, int, unsigned>> seen;
  while (is >> tok) {
    if (tok.size() < 7 || tok[1] != '(' || tok.back() != ')')
      parse_fail(line_no, "malformed term '" + tok + "'");
    PauliTerm term;
    switch (tok[0]) {
      case 'X': term.letter = PauliLetter::X; break;
      case 'Y': term.letter = PauliLetter::Y; break;
      case 'Z': term.letter = PauliLetter::Z; break;
      default: parse_fail(line_no, "unknown Pauli letter in '" + tok + "'");
    }
    std::string body = tok.substr(2, tok.size() - 3);
    int dx, dy;
    long q;
    char c1, c2;
    std::istringstream bs(body);
    if (!(bs >> dx >> c1 >> dy >> c2 >> q) || c1 != ',' || c2 != ',' ||
        (bs >> std::ws, !bs.eof()))
      parse_fail(line_no, "malformed offset in '" + tok + "'");
    if (q < 0 || q >= long(qubits))
      parse_fail(line_no, "qubit index out of range in '" + tok + "'");
    term.dx = dx;
    term.dy = dy;
    term.qubit = unsigned(q);
    if (!seen.insert({dx, dy, term.qubit}).second)
      parse_fail(line_no, "duplicate term '" + tok +
                              "' (use Y for a simultaneous X and Z)");
    rec.terms.push_back(term);
  }
  if (rec.terms.empty())
    parse_fail(line_no, "recipe '" + label + "' has no terms");
  return rec;
}

} // namespace

CodeDefinition parse_code_file(const std::string& text) {
  CodeDefinition code;
  bool saw_code = false, saw_qubits = false;
  std::istringstream is(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    auto hash = line.find('#');
    if (hash != std::string::npos)
      line = line.substr(0, hash);
    std::istringstream ls(line);
    std::string kw;
    if (!(ls >> kw))
      continue;
    if (kw == "code") {
      if (saw_code)
        parse_fail(line_no, "duplicate 'code' line");
      if (!(ls >> code.name))
        parse_fail(line_no, "missing code name");
      saw_code = true;
    } else if (kw == "qubits") {
      if (!saw_code)
        parse_fail(line_no, "'qubits' before 'code'");
      long q;
      if (!(ls >> q) || q < 0)
        parse_fail(line_no, "bad qubit count");
      code.qubits_per_site = unsigned(q);
      saw_qubits = true;
    } else if (kw == "stab" || kw == "gauge") {
      if (!saw_qubits)
        parse_fail(line_no, "recipe before 'qubits'");
      std::string label;
      if (!(ls >> label) || label.back() != ':')
        parse_fail(line_no, "expected 'LABEL:' after '" + kw + "'");
      label.pop_back();
      std::string rest;
      std::getline(ls, rest);
      auto rec = parse_recipe(line_no, label, rest, code.qubits_per_site);
      if (kw == "stab") {
        code.stabilizer_recipes.push_back(std::move(rec));
      } else {
        if (!code.gauge_recipes)
          code.gauge_recipes.emplace();
        code.gauge_recipes->push_back(std::move(rec));
      }
    } else {
      parse_fail(line_no, "unknown directive '" + kw + "'");
    }
  }
  if (!saw_code)
    throw Error(ErrorKind::Parse, "parse error: no 'code' line");
  if (!saw_qubits)
    throw Error(ErrorKind::Parse, "parse error: no 'qubits' line");
  return code;
}

std::string to_code_file(const CodeDefinition& code) {
  std::ostringstream os;
  os << "code " << code.name << "\n";
  os << "qubits " << code.qubits_per_site << "\n";
  auto emit = [&os](const char* kw, const GeneratorRecipe& r) {
    os << kw << ' ' << r.label << ':';
    for (const auto& t : r.terms)
      os << ' ' << letter_char(t.letter) << '(' << t.dx << ',' << t.dy << ','
         << t.qubit << ')';
    os << "\n";
  };
  for (const auto& r : code.stabilizer_recipes)
    emit("stab", r);
  if (code.gauge_recipes)
    for (const auto& r : *code.gauge_recipes)
      emit("gauge", r);
  return os.str();
}

namespace {

// floor division / modulo for possibly negative offsets
int fdiv(int a, int b) { return (a >= 0) ? a / b : -((-a + b - 1) / b); }
int fmod2(int a, int b) { return a - fdiv(a, b) * b; }

std::vector<GeneratorRecipe> coarse_recipes(
    const std::vector<GeneratorRecipe>& in, unsigned l, unsigned qps) {
  std::vector<GeneratorRecipe> out;
  for (const auto& rec : in) {
    for (unsigned sy = 0; sy < l; ++sy) {
      for (unsigned sx = 0; sx < l; ++sx) {
        GeneratorRecipe nr;
        nr.label = rec.label + "@" + std::to_string(sx) + "," +
                   std::to_string(sy);
        for (const auto& t : rec.terms) {
          int ax = t.dx + int(sx);
          int ay = t.dy + int(sy);
          PauliTerm nt;
          nt.dx = fdiv(ax, int(l));
          nt.dy = fdiv(ay, int(l));
          nt.qubit = (unsigned(fmod2(ay, int(l))) * l +
                      unsigned(fmod2(ax, int(l)))) *
                         qps +
                     t.qubit;
          nt.letter = t.letter;
          nr.terms.push_back(nt);
        }
        out.push_back(std::move(nr));
      }
    }
  }
  return out;
}

} // namespace

CodeDefinition coarse_grain(const CodeDefinition& code, unsigned l) {
  if (l == 0)
    throw Error(ErrorKind::Usage, "coarse_grain: l must be >= 1");
  if (l == 1)
    return code;
  CodeDefinition out;
  out.name = code.name;
  out.qubits_per_site = code.qubits_per_site * l * l;
  out.stabilizer_recipes =
      coarse_recipes(code.stabilizer_recipes, l, code.qubits_per_site);
  if (code.gauge_recipes)
    out.gauge_recipes =
        coarse_recipes(*code.gauge_recipes, l, code.qubits_per_site);
  return out;
}

CodeDefinition compose(const CodeDefinition& a, const CodeDefinition& b) {
  CodeDefinition out;
  out.name = a.name + "+" + b.name;
  out.qubits_per_site = a.qubits_per_site + b.qubits_per_site;
  auto shift = [](const std::vector<GeneratorRecipe>& in, unsigned offset,
                  const char* tag) {
    std::vector<GeneratorRecipe> out;
    for (const auto& r : in) {
      GeneratorRecipe nr;
      nr.label = std::string(tag) + r.label;
      for (auto t : r.terms) {
        t.qubit += offset;
        nr.terms.push_back(t);
      }
      out.push_back(std::move(nr));
    }
    return out;
  };
  out.stabilizer_recipes = shift(a.stabilizer_recipes, 0, "a.");
  for (auto& r : shift(b.stabilizer_recipes, a.qubits_per_site, "b."))
    out.stabilizer_recipes.push_back(std::move(r));
  if (a.gauge_recipes || b.gauge_recipes) {
    out.gauge_recipes.emplace();
    for (auto& r : shift(a.gauge_side(), 0, "a."))
      out.gauge_recipes->push_back(std::move(r));
    for (auto& r : shift(b.gauge_side(), a.qubits_per_site, "b."))
      out.gauge_recipes->push_back(std::move(r));
  }
  return out;
}

NormalizedCode normalize_code(const CodeDefinition& code) {
  NormalizedCode out{code, 1};
  while (out.code.max_range() > 2) {
    unsigned l = (out.code.max_range() + 1) / 2;
    out.code = coarse_grain(out.code, l);
    out.coarse_level *= l;
  }
  return out;
}

} // namespace tsc
