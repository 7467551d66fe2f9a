#include "rktree/tableau.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "rktree/errors.hpp"

namespace rktree {

using nlohmann::json;

namespace {

// nlohmann reports byte offsets; humans want line/column.
[[noreturn]] void rethrow_parse_error(const json::parse_error& e, std::string_view text) {
  size_t line = 1, col = 1;
  size_t limit = std::min(e.byte, text.size());
  for (size_t i = 0; i < limit; ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  throw ParseError("JSON parse error at line " + std::to_string(line) + ", column " +
                   std::to_string(col) + ": " + e.what());
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    rethrow_parse_error(e, text);
  }
}

// Numbers arrive as exact strings ("p/q", integer, finite decimal) or JSON
// integers. JSON floats are rejected: their binary value need not match the
// written literal and this pipeline promises exactness.
Rational rational_field(const json& v, const std::string& field) {
  if (v.is_string()) {
    try {
      return parse_rational(v.get<std::string>());
    } catch (const ValidationError& e) {
      throw ValidationError(field + ": " + e.what());
    }
  }
  if (v.is_number_integer()) return Rational(v.get<long long>());
  if (v.is_number_float())
    throw ValidationError(field + ": floating JSON literal; quote it as a string to keep it exact");
  throw ValidationError(field + ": expected a number string");
}

RatVec rational_vector(const json& v, const std::string& field) {
  if (!v.is_array()) throw ValidationError(field + ": expected an array");
  RatVec out;
  out.reserve(v.size());
  for (size_t i = 0; i < v.size(); ++i)
    out.push_back(rational_field(v[i], field + "[" + std::to_string(i) + "]"));
  return out;
}

int int_field(const json& v, const std::string& field) {
  if (!v.is_number_integer()) throw ValidationError(field + ": expected an integer");
  return v.get<int>();
}

const json& require(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ValidationError(std::string("missing field '") + key + "'");
  return *it;
}

}  // namespace

bool is_explicit(const Tableau& tab) {
  for (int i = 0; i < tab.s; ++i)
    for (int j = i; j < tab.s; ++j)
      if (tab.A[static_cast<size_t>(i)][static_cast<size_t>(j)] != 0) return false;
  return true;
}

Tableau parse_tableau(std::string_view text, std::vector<std::string>* warnings) {
  json j = parse_json(text);
  if (!j.is_object()) throw ValidationError("tableau: top level must be an object");

  Tableau tab;
  tab.s = int_field(require(j, "s"), "s");
  if (tab.s < 1) throw ValidationError("s: must be >= 1");

  const json& a = require(j, "A");
  if (!a.is_array() || static_cast<int>(a.size()) != tab.s)
    throw ValidationError("A: must be an array of s = " + std::to_string(tab.s) + " rows");
  for (size_t r = 0; r < a.size(); ++r) {
    RatVec row = rational_vector(a[r], "A[" + std::to_string(r) + "]");
    if (static_cast<int>(row.size()) != tab.s) throw ValidationError("A must be square");
    tab.A.push_back(std::move(row));
  }

  tab.b = rational_vector(require(j, "b"), "b");
  if (static_cast<int>(tab.b.size()) != tab.s)
    throw ValidationError("b: length " + std::to_string(tab.b.size()) + " does not match s = " +
                          std::to_string(tab.s));

  RatVec row_sums(static_cast<size_t>(tab.s), Rational(0));
  for (int i = 0; i < tab.s; ++i)
    for (int k = 0; k < tab.s; ++k)
      row_sums[static_cast<size_t>(i)] += tab.A[static_cast<size_t>(i)][static_cast<size_t>(k)];

  if (auto it = j.find("c"); it != j.end()) {
    tab.c = rational_vector(*it, "c");
    if (static_cast<int>(tab.c.size()) != tab.s)
      throw ValidationError("c: length " + std::to_string(tab.c.size()) + " does not match s = " +
                            std::to_string(tab.s));
    if (tab.c != row_sums && warnings)
      warnings->push_back("c differs from the row sums of A; keeping the given c");
  } else {
    tab.c = row_sums;
  }

  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (key != "s" && key != "A" && key != "b" && key != "c")
      throw ValidationError("tableau: unknown field '" + key + "'");
  }
  return tab;
}

PolynomialMap parse_problem(std::string_view text) {
  json j = parse_json(text);
  if (!j.is_object()) throw ValidationError("problem: top level must be an object");

  PolynomialMap f;
  f.d = int_field(require(j, "d"), "d");
  if (f.d < 1) throw ValidationError("d: must be >= 1");

  const json& comps = require(j, "components");
  if (!comps.is_array() || static_cast<int>(comps.size()) != f.d)
    throw ValidationError("components: must be an array of d = " + std::to_string(f.d) + " lists");

  for (size_t ci = 0; ci < comps.size(); ++ci) {
    const std::string where = "components[" + std::to_string(ci) + "]";
    const json& comp = comps[ci];
    if (!comp.is_array()) throw ValidationError(where + ": expected an array of monomials");
    if (comp.empty()) throw ValidationError(where + ": empty component (write a 0 coefficient)");
    std::vector<Monomial> monos;
    for (size_t mi = 0; mi < comp.size(); ++mi) {
      const std::string mwhere = where + "[" + std::to_string(mi) + "]";
      const json& m = comp[mi];
      if (!m.is_object()) throw ValidationError(mwhere + ": expected an object");
      Monomial mono;
      mono.coeff = rational_field(require(m, "coeff"), mwhere + ".coeff");
      const json& exps = require(m, "exponents");
      if (!exps.is_array() || static_cast<int>(exps.size()) != f.d)
        throw ValidationError(mwhere + ".exponents: must have length d = " + std::to_string(f.d));
      for (const auto& e : exps) {
        int v = int_field(e, mwhere + ".exponents");
        if (v < 0) throw ValidationError(mwhere + ".exponents: negative exponent");
        mono.exponents.push_back(v);
      }
      // Merge duplicate exponent vectors.
      auto dup = std::find_if(monos.begin(), monos.end(), [&](const Monomial& x) {
        return x.exponents == mono.exponents;
      });
      if (dup != monos.end())
        dup->coeff += mono.coeff;
      else
        monos.push_back(std::move(mono));
    }
    // Zero coefficients (given or merged away) carry no information.
    monos.erase(std::remove_if(monos.begin(), monos.end(),
                               [](const Monomial& m) { return m.coeff == 0; }),
                monos.end());
    f.components.push_back(std::move(monos));
  }

  f.y0 = rational_vector(require(j, "y0"), "y0");
  if (static_cast<int>(f.y0.size()) != f.d)
    throw ValidationError("y0: length " + std::to_string(f.y0.size()) + " does not match d = " +
                          std::to_string(f.d));

  f.degree = 0;
  for (const auto& comp : f.components)
    for (const auto& m : comp) {
      int total = 0;
      for (int e : m.exponents) total += e;
      f.degree = std::max(f.degree, total);
    }

  if (auto it = j.find("t_end"); it != j.end()) f.t_end = rational_field(*it, "t_end");
  if (auto it = j.find("exact"); it != j.end()) {
    if (!it->is_string()) throw ValidationError("exact: expected a registry name string");
    f.exact = it->get<std::string>();
  }
  if (auto it = j.find("params"); it != j.end()) {
    if (!it->is_object()) throw ValidationError("params: expected an object");
    for (const auto& [key, value] : it->items()) {
      if (value.is_array())
        f.params[key] = rational_vector(value, "params." + key);
      else
        f.params[key] = RatVec{rational_field(value, "params." + key)};
    }
  }

  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (key != "d" && key != "components" && key != "y0" && key != "t_end" && key != "exact" &&
        key != "params")
      throw ValidationError("problem: unknown field '" + key + "'");
  }
  return f;
}

namespace {

json rational_json(const Rational& r) { return to_string(r); }

json rational_vector_json(const RatVec& v) {
  json arr = json::array();
  for (const auto& r : v) arr.push_back(rational_json(r));
  return arr;
}

}  // namespace

std::string serialize_tableau(const Tableau& tab) {
  json j;
  j["s"] = tab.s;
  json a = json::array();
  for (const auto& row : tab.A) a.push_back(rational_vector_json(row));
  j["A"] = a;
  j["b"] = rational_vector_json(tab.b);
  j["c"] = rational_vector_json(tab.c);
  return j.dump(2) + "\n";
}

std::string serialize_problem(const PolynomialMap& f) {
  json j;
  j["d"] = f.d;
  json comps = json::array();
  for (const auto& comp : f.components) {
    json list = json::array();
    for (const auto& m : comp)
      list.push_back(json{{"coeff", rational_json(m.coeff)}, {"exponents", m.exponents}});
    if (list.empty())
      list.push_back(json{{"coeff", "0"}, {"exponents", std::vector<int>(static_cast<size_t>(f.d), 0)}});
    comps.push_back(list);
  }
  j["components"] = comps;
  j["y0"] = rational_vector_json(f.y0);
  if (f.t_end) j["t_end"] = rational_json(*f.t_end);
  if (!f.exact.empty()) j["exact"] = f.exact;
  if (!f.params.empty()) {
    json p;
    for (const auto& [key, value] : f.params) p[key] = rational_vector_json(value);
    j["params"] = p;
  }
  return j.dump(2) + "\n";
}

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

Tableau load_tableau_file(const std::string& path, std::vector<std::string>* warnings) {
  try {
    return parse_tableau(slurp(path), warnings);
  } catch (const ValidationError& e) {
    throw ValidationError(path + ": " + e.what());
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

PolynomialMap load_problem_file(const std::string& path) {
  try {
    return parse_problem(slurp(path));
  } catch (const ValidationError& e) {
    throw ValidationError(path + ": " + e.what());
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

std::string format_butcher(const Tableau& tab) {
  const size_t n = static_cast<size_t>(tab.s);
  std::vector<std::vector<std::string>> cells(n + 1, std::vector<std::string>(n + 1));
  for (size_t i = 0; i < n; ++i) {
    cells[i][0] = to_string(tab.c[i]);
    for (size_t k = 0; k < n; ++k) cells[i][k + 1] = to_string(tab.A[i][k]);
  }
  for (size_t k = 0; k < n; ++k) cells[n][k + 1] = to_string(tab.b[k]);

  std::vector<size_t> width(n + 1, 0);
  for (const auto& row : cells)
    for (size_t k = 0; k <= n; ++k) width[k] = std::max(width[k], row[k].size());

  std::string out;
  for (size_t i = 0; i <= n; ++i) {
    if (i == n) {
      out += std::string(width[0], '-');
      out += "-+-";
      size_t total = 0;
      for (size_t k = 1; k <= n; ++k) total += width[k] + (k > 1 ? 2 : 0);
      out += std::string(total, '-');
      out += "\n";
    }
    for (size_t k = 0; k <= n; ++k) {
      const std::string& cell = cells[i][k];
      out += std::string(width[k] - cell.size(), ' ') + cell;
      out += k == 0 ? " | " : (k < n ? "  " : "");
    }
    out += "\n";
  }
  return out;
}

RatVec PolynomialMap::eval(const RatVec& y) const {
  if (static_cast<int>(y.size()) != d)
    throw std::invalid_argument("PolynomialMap::eval: point has wrong dimension");
  RatVec out(static_cast<size_t>(d), Rational(0));
  for (size_t i = 0; i < components.size(); ++i)
    for (const auto& m : components[i]) {
      Rational term = m.coeff;
      for (int v = 0; v < d; ++v)
        for (int rep = 0; rep < m.exponents[static_cast<size_t>(v)]; ++rep)
          term *= y[static_cast<size_t>(v)];
      out[i] += term;
    }
  return out;
}

std::vector<double> PolynomialMap::eval(const std::vector<double>& y) const {
  if (static_cast<int>(y.size()) != d)
    throw std::invalid_argument("PolynomialMap::eval: point has wrong dimension");
  std::vector<double> out(static_cast<size_t>(d), 0.0);
  for (size_t i = 0; i < components.size(); ++i)
    for (const auto& m : components[i]) {
      double term = to_double(m.coeff);
      for (int v = 0; v < d; ++v)
        for (int rep = 0; rep < m.exponents[static_cast<size_t>(v)]; ++rep)
          term *= y[static_cast<size_t>(v)];
      out[i] += term;
    }
  return out;
}

}  // namespace rktree
