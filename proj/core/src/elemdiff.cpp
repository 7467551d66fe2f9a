#include "rktree/elemdiff.hpp"

#include <mutex>
#include <stdexcept>

#include "rktree/weights.hpp"

namespace rktree {

namespace {

size_t checked_pow(int base, int exp) {
  size_t r = 1;
  for (int i = 0; i < exp; ++i) r *= static_cast<size_t>(base);
  return r;
}

std::string point_key(const RatVec& y) { return to_string(y); }

}  // namespace

const Rational& DerivativeTensor::at(int i, const std::vector<int>& idx) const {
  size_t flat = static_cast<size_t>(i);
  for (int k : idx) flat = flat * static_cast<size_t>(d) + static_cast<size_t>(k);
  return entries[flat];
}

DerivativeTensor derivative_tensor(const PolynomialMap& f, int l, const RatVec& y0) {
  if (l < 0) throw std::invalid_argument("derivative_tensor: l must be >= 0");
  if (static_cast<int>(y0.size()) != f.d)
    throw std::invalid_argument("derivative_tensor: y0 has wrong dimension");

  DerivativeTensor t;
  t.l = l;
  t.d = f.d;
  t.entries.assign(checked_pow(f.d, l + 1), Rational(0));

  // Entry (i, i1..il): differentiate every monomial of f_i once per listed
  // index and evaluate the remainder at y0. The count vector per variable
  // turns repeated differentiation into one falling-factorial product.
  std::vector<int> idx(static_cast<size_t>(l), 0);
  std::vector<int> counts(static_cast<size_t>(f.d), 0);
  const size_t block = checked_pow(f.d, l);
  for (int i = 0; i < f.d; ++i) {
    std::fill(idx.begin(), idx.end(), 0);
    for (size_t off = 0; off < block; ++off) {
      std::fill(counts.begin(), counts.end(), 0);
      for (int k : idx) ++counts[static_cast<size_t>(k)];

      Rational sum = 0;
      for (const auto& m : f.components[static_cast<size_t>(i)]) {
        Rational term = m.coeff;
        bool dead = false;
        for (int v = 0; v < f.d && !dead; ++v) {
          int e = m.exponents[static_cast<size_t>(v)];
          int c = counts[static_cast<size_t>(v)];
          if (c > e) {
            dead = true;
            break;
          }
          for (int step = 0; step < c; ++step) term *= (e - step);
          for (int rep = 0; rep < e - c; ++rep) term *= y0[static_cast<size_t>(v)];
        }
        if (!dead) sum += term;
      }
      t.entries[static_cast<size_t>(i) * block + off] = sum;

      for (int pos = l - 1; pos >= 0; --pos) {
        if (++idx[static_cast<size_t>(pos)] < f.d) break;
        idx[static_cast<size_t>(pos)] = 0;
      }
    }
  }
  return t;
}

RatVec contract_last_modes(const DerivativeTensor& tensor, const std::vector<RatVec>& vectors) {
  if (static_cast<int>(vectors.size()) != tensor.l)
    throw std::invalid_argument("contract_last_modes: need one vector per mode");
  for (const auto& v : vectors)
    if (static_cast<int>(v.size()) != tensor.d)
      throw std::invalid_argument("contract_last_modes: vector has wrong dimension");

  const int d = tensor.d;
  const int l = tensor.l;
  const size_t block = checked_pow(d, l);
  RatVec out(static_cast<size_t>(d), Rational(0));
  std::vector<int> idx(static_cast<size_t>(l), 0);
  for (int i = 0; i < d; ++i) {
    std::fill(idx.begin(), idx.end(), 0);
    Rational acc = 0;
    for (size_t off = 0; off < block; ++off) {
      const Rational& entry = tensor.entries[static_cast<size_t>(i) * block + off];
      if (entry != 0) {
        Rational term = entry;
        for (int k = 0; k < l; ++k) term *= vectors[static_cast<size_t>(k)][static_cast<size_t>(idx[static_cast<size_t>(k)])];
        acc += term;
      }
      for (int pos = l - 1; pos >= 0; --pos) {
        if (++idx[static_cast<size_t>(pos)] < d) break;
        idx[static_cast<size_t>(pos)] = 0;
      }
    }
    out[static_cast<size_t>(i)] = acc;
  }
  return out;
}

ElementaryDifferentials::ElementaryDifferentials(PolynomialMap f) : f_(std::move(f)) {}

const DerivativeTensor& ElementaryDifferentials::tensor(int l, const RatVec& y0,
                                                        const std::string& y0_key) const {
  auto key = std::make_pair(l, y0_key);
  {
    std::shared_lock lock(mu_);
    if (auto it = tensors_.find(key); it != tensors_.end()) return it->second;
  }
  DerivativeTensor t = derivative_tensor(f_, l, y0);
  std::unique_lock lock(mu_);
  return tensors_.emplace(std::move(key), std::move(t)).first->second;
}

RatVec ElementaryDifferentials::eval(const RootedTree& t, const RatVec& y0) const {
  if (static_cast<int>(y0.size()) != f_.d)
    throw std::invalid_argument("ElementaryDifferentials::eval: y0 has wrong dimension");
  const std::string key2 = point_key(y0);
  auto key = std::make_pair(t.encoding(), key2);
  {
    std::shared_lock lock(mu_);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  }
  const int l = static_cast<int>(t.children().size());
  std::vector<RatVec> child_values;
  child_values.reserve(t.children().size());
  for (const auto& c : t.children()) child_values.push_back(eval(c, y0));
  RatVec out = contract_last_modes(tensor(l, y0, key2), child_values);
  {
    std::unique_lock lock(mu_);
    cache_.emplace(std::move(key), out);
  }
  return out;
}

RatVec elementary_differential(const RootedTree& t, const PolynomialMap& f, const RatVec& y0) {
  return ElementaryDifferentials(f).eval(t, y0);
}

bool kronecker_decomposition_check(const RootedTree& t, const Tableau& tab,
                                   const PolynomialMap& f, const RatVec& y0) {
  if (tab.s * f.d > 64)
    throw std::invalid_argument("kronecker_decomposition_check: s*d exceeds the oracle scale 64");
  if (t.order() > 5)
    throw std::invalid_argument("kronecker_decomposition_check: |T| exceeds the oracle scale 5");
  if (static_cast<int>(y0.size()) != f.d)
    throw std::invalid_argument("kronecker_decomposition_check: y0 has wrong dimension");

  const int s = tab.s;
  const int d = f.d;

  // Stacked stage system: block j of F~ applies f to block variables of
  // stage k, weighted by a_{jk}, summed over k.
  PolynomialMap stacked;
  stacked.d = s * d;
  stacked.components.resize(static_cast<size_t>(s * d));
  for (int j = 0; j < s; ++j)
    for (int i = 0; i < d; ++i) {
      auto& comp = stacked.components[static_cast<size_t>(j * d + i)];
      for (int k = 0; k < s; ++k) {
        const Rational& a = tab.A[static_cast<size_t>(j)][static_cast<size_t>(k)];
        if (a == 0) continue;
        for (const auto& m : f.components[static_cast<size_t>(i)]) {
          Monomial lifted;
          lifted.coeff = a * m.coeff;
          lifted.exponents.assign(static_cast<size_t>(s * d), 0);
          for (int v = 0; v < d; ++v)
            lifted.exponents[static_cast<size_t>(k * d + v)] = m.exponents[static_cast<size_t>(v)];
          comp.push_back(std::move(lifted));
        }
      }
    }
  stacked.degree = f.degree;
  stacked.y0.assign(static_cast<size_t>(s * d), Rational(0));

  RatVec replicated(static_cast<size_t>(s * d));
  for (int j = 0; j < s; ++j)
    for (int i = 0; i < d; ++i) replicated[static_cast<size_t>(j * d + i)] = y0[static_cast<size_t>(i)];

  RatVec lhs = elementary_differential(t, stacked, replicated);
  RatVec phi = ElementaryWeights(tab).phi_vector(t);
  RatVec value = elementary_differential(t, f, y0);
  for (int j = 0; j < s; ++j)
    for (int i = 0; i < d; ++i)
      if (lhs[static_cast<size_t>(j * d + i)] != phi[static_cast<size_t>(j)] * value[static_cast<size_t>(i)])
        return false;
  return true;
}

}  // namespace rktree
