#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rktree/rational.hpp"

namespace rktree {

// Butcher tableau with exact rational entries.
struct Tableau {
  int s = 0;   // stage count
  RatMat A;    // s x s
  RatVec b;    // length s
  RatVec c;    // length s; row sums of A when absent from the source

  friend bool operator==(const Tableau& x, const Tableau& y) {
    return x.s == y.s && x.A == y.A && x.b == y.b && x.c == y.c;
  }
};

// True when A is strictly lower-triangular.
bool is_explicit(const Tableau& tab);

struct Monomial {
  Rational coeff;
  std::vector<int> exponents;  // length d

  friend bool operator==(const Monomial& x, const Monomial& y) {
    return x.coeff == y.coeff && x.exponents == y.exponents;
  }
};

// Polynomial right-hand side f: R^d -> R^d together with the problem data
// that rides along in the file: initial value, final time, and optionally the
// name of a closed-form registry entry for reference solutions.
struct PolynomialMap {
  int d = 0;
  std::vector<std::vector<Monomial>> components;  // d lists, duplicates merged
  RatVec y0;                                      // length d
  int degree = 0;                                 // max total degree
  std::optional<Rational> t_end;
  std::string exact;                        // registry key, may be empty
  std::map<std::string, RatVec> params;     // registry parameters

  RatVec eval(const RatVec& y) const;
  std::vector<double> eval(const std::vector<double>& y) const;

  friend bool operator==(const PolynomialMap& x, const PolynomialMap& y) {
    return x.d == y.d && x.components == y.components && x.y0 == y.y0 &&
           x.t_end == y.t_end && x.exact == y.exact && x.params == y.params;
  }
};

// JSON forms (documented in the README):
//   tableau: {"s": int, "A": [[str...]...], "b": [str...], "c": [str...]?}
//   problem: {"d": int, "components": [[{"coeff": str, "exponents": [int...]}...]...],
//             "y0": [str...], "t_end": str?, "exact": str?, "params": {...}?}
// Numbers are exact strings: "p/q", integer, or finite decimal. JSON integer
// literals are also accepted; JSON floats are rejected (quote decimals).
//
// Throws ParseError (malformed JSON, with line/column) or ValidationError
// (dimension/shape/denominator problems, naming the field).
Tableau parse_tableau(std::string_view text, std::vector<std::string>* warnings = nullptr);
PolynomialMap parse_problem(std::string_view text);

std::string serialize_tableau(const Tableau& tab);
std::string serialize_problem(const PolynomialMap& f);

Tableau load_tableau_file(const std::string& path, std::vector<std::string>* warnings = nullptr);
PolynomialMap load_problem_file(const std::string& path);

// Classic display layout (c | A over b), display only; not parseable input.
std::string format_butcher(const Tableau& tab);

}  // namespace rktree
