// Copyright 2026 The schinzel-lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "schinzel/poly.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "schinzel/arith.hpp"

namespace schinzel::poly {

using u128 = unsigned __int128;

IntPoly::IntPoly(std::vector<std::int64_t> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw std::invalid_argument("IntPoly: no coefficients");
  if (coeffs_.back() == 0) throw std::invalid_argument("IntPoly: leading coefficient is zero");
}

std::int64_t IntPoly::height() const {
  std::int64_t h = 0;
  for (auto c : coeffs_) h = std::max(h, c < 0 ? -c : c);
  return h;
}

std::int64_t IntPoly::content() const {
  std::int64_t g = 0;
  for (auto c : coeffs_) g = std::gcd(g, c < 0 ? -c : c);
  return g;
}

std::string IntPoly::to_string() const {
  std::ostringstream out;
  bool first = true;
  for (std::size_t i = coeffs_.size(); i-- > 0;) {
    const std::int64_t c = coeffs_[i];
    if (c == 0) continue;
    const std::int64_t mag = c < 0 ? -c : c;
    if (first)
      out << (c < 0 ? "-" : "");
    else
      out << (c < 0 ? " - " : " + ");
    if (mag != 1 || i == 0) out << mag;
    if (i >= 1) out << "t";
    if (i >= 2) out << "^" << i;
    first = false;
  }
  return out.str();
}

PolyTuple::PolyTuple(std::vector<IntPoly> polys) : polys_(std::move(polys)) {
  if (polys_.empty()) throw std::invalid_argument("PolyTuple: need at least one polynomial");
}

std::vector<unsigned> PolyTuple::degrees() const {
  std::vector<unsigned> d;
  d.reserve(polys_.size());
  for (const auto& p : polys_) d.push_back(p.degree());
  return d;
}

unsigned PolyTuple::total_degree() const {
  unsigned d = 0;
  for (const auto& p : polys_) d += p.degree();
  return d;
}

std::int64_t PolyTuple::height() const {
  std::int64_t h = 0;
  for (const auto& p : polys_) h = std::max(h, p.height());
  return h;
}

std::optional<std::int64_t> eval_checked(const IntPoly& p, std::int64_t m) {
  const auto& c = p.coeffs();
  std::int64_t acc = c.back();
  for (std::size_t i = c.size() - 1; i-- > 0;) {
    if (__builtin_mul_overflow(acc, m, &acc)) return std::nullopt;
    if (__builtin_add_overflow(acc, c[i], &acc)) return std::nullopt;
  }
  return acc;
}

BigInt eval(const IntPoly& p, std::int64_t m) {
  if (auto v = eval_checked(p, m)) return BigInt(static_cast<long>(*v));
  const auto& c = p.coeffs();
  BigInt acc(static_cast<long>(c.back()));
  const BigInt mm(static_cast<long>(m));
  for (std::size_t i = c.size() - 1; i-- > 0;) acc = acc * mm + static_cast<long>(c[i]);
  return acc;
}

namespace {

std::uint64_t reduce(std::int64_t v, std::uint64_t q) {
  if (q <= static_cast<std::uint64_t>(INT64_MAX)) {
    std::int64_t r = v % static_cast<std::int64_t>(q);
    if (r < 0) r += static_cast<std::int64_t>(q);
    return static_cast<std::uint64_t>(r);
  }
  return v >= 0 ? static_cast<std::uint64_t>(v) : q - static_cast<std::uint64_t>(-(v + 1)) - 1;
}

}  // namespace

std::uint64_t eval_mod(const IntPoly& p, std::int64_t m, std::uint64_t q) {
  if (q == 0) throw std::invalid_argument("eval_mod: zero modulus");
  const auto& c = p.coeffs();
  const std::uint64_t mr = reduce(m, q);
  std::uint64_t acc = reduce(c.back(), q);
  for (std::size_t i = c.size() - 1; i-- > 0;)
    acc = static_cast<std::uint64_t>((static_cast<u128>(acc) * mr + reduce(c[i], q)) % q);
  return acc;
}

unsigned z_count(const IntPoly& p, std::uint64_t ell) {
  std::vector<std::uint64_t> red;
  red.reserve(p.coeffs().size());
  for (auto c : p.coeffs()) red.push_back(reduce(c, ell));
  unsigned zeros = 0;
  for (std::uint64_t s = 0; s < ell; ++s) {
    std::uint64_t acc = 0;
    for (std::size_t i = red.size(); i-- > 0;)
      acc = static_cast<std::uint64_t>((static_cast<u128>(acc) * s + red[i]) % ell);
    if (acc == 0) ++zeros;
  }
  return zeros;
}

unsigned z_count(const PolyTuple& tuple, std::uint64_t ell) {
  unsigned zeros = 0;
  for (std::uint64_t s = 0; s < ell; ++s) {
    for (const auto& p : tuple.polys()) {
      if (eval_mod(p, static_cast<std::int64_t>(s), ell) == 0) {
        ++zeros;
        break;
      }
    }
  }
  return zeros;
}

namespace {

// Smallest prime ell at which the product of `polys` vanishes identically on
// F_ell. For ell > total degree this happens iff ell divides some content.
std::optional<std::uint64_t> vanishing_prime(const PolyTuple& tuple, const Budget& budget) {
  std::optional<std::uint64_t> best;
  for (auto ell : arith::primes_up_to(tuple.total_degree())) {
    if (z_count(tuple, ell) == ell) {
      best = ell;
      break;
    }
  }
  for (const auto& p : tuple.polys()) {
    const std::int64_t c = p.content();
    if (c <= 1) continue;
    const auto fac = arith::factorize(static_cast<std::uint64_t>(c), budget);
    const std::uint64_t q = fac.factors.front().prime;
    if (!best || q < *best) best = q;
  }
  return best;
}

}  // namespace

LocalVerdict is_bouniakowsky(const IntPoly& p, const Budget& budget) {
  return is_schinzel(PolyTuple({p}), budget);
}

LocalVerdict is_schinzel(const PolyTuple& tuple, const Budget& budget) {
  for (const auto& p : tuple.polys())
    if (p.leading() <= 0) return {false, std::nullopt};
  if (auto w = vanishing_prime(tuple, budget)) return {false, w};
  return {true, std::nullopt};
}

void CoeffBox::validate() const {
  if (degrees.empty()) throw std::invalid_argument("box: need at least one degree");
  for (auto d : degrees)
    if (d < 1) throw std::invalid_argument("box: degrees must be positive");
  if (height < 1) throw std::invalid_argument("box: height must be >= 1");
  if (modulus < 1) throw std::invalid_argument("box: modulus must be >= 1");
  if (!residues.empty() && residues.size() != degrees.size())
    throw std::invalid_argument("box: need one residue polynomial per degree");
  for (std::size_t i = 0; i < residues.size(); ++i)
    if (residues[i].size() > degrees[i] + 1)
      throw std::invalid_argument("box: residue polynomial degree exceeds d_i");
}

std::int64_t CoeffBox::residue(std::size_t poly, std::size_t coeff) const {
  if (poly >= residues.size() || coeff >= residues[poly].size()) return 0;
  return residues[poly][coeff];
}

namespace {

Progression progression(std::int64_t lo, std::int64_t hi, std::int64_t residue, std::int64_t modulus) {
  std::int64_t shift = (residue - lo) % modulus;
  if (shift < 0) shift += modulus;
  const std::int64_t first = lo + shift;
  if (first > hi) return {first, modulus, 0};
  return {first, modulus, static_cast<std::uint64_t>((hi - first) / modulus + 1)};
}

}  // namespace

BoxEnumerator::BoxEnumerator(CoeffBox box) : box_(std::move(box)) {
  box_.validate();
  const std::int64_t h = box_.height;
  for (std::size_t i = 0; i < box_.degrees.size(); ++i) {
    const unsigned d = box_.degrees[i];
    for (unsigned k = 0; k <= d; ++k) {
      const std::int64_t lo = (k == d) ? 1 : -h;
      axes_.push_back(progression(lo, h, box_.residue(i, k), box_.modulus));
    }
  }
  u128 total = 1;
  for (const auto& a : axes_) {
    total *= a.count;
    if (total > static_cast<u128>(INT64_MAX)) throw BudgetExceeded("box has more than 2^63 members");
  }
  size_ = static_cast<std::uint64_t>(total);
}

BigInt BoxEnumerator::exact_size() const { return BigInt(std::to_string(size_)); }

PolyTuple BoxEnumerator::at(std::uint64_t index) const {
  if (index >= size_) throw std::out_of_range("box index out of range");
  std::vector<std::int64_t> flat(axes_.size());
  for (std::size_t a = axes_.size(); a-- > 0;) {
    const auto& ax = axes_[a];
    flat[a] = ax.first + static_cast<std::int64_t>(index % ax.count) * ax.step;
    index /= ax.count;
  }
  std::vector<IntPoly> polys;
  std::size_t pos = 0;
  for (auto d : box_.degrees) {
    polys.emplace_back(std::vector<std::int64_t>(flat.begin() + pos, flat.begin() + pos + d + 1));
    pos += d + 1;
  }
  return PolyTuple(std::move(polys));
}

void BoxEnumerator::for_each(std::uint64_t begin, std::uint64_t end,
                             const std::function<void(const PolyTuple&)>& visit) const {
  end = std::min(end, size_);
  for (std::uint64_t i = begin; i < end; ++i) visit(at(i));
}

PolyTuple sample_one(const BoxEnumerator& box, Rng& rng) {
  if (box.size() == 0) throw std::invalid_argument("cannot sample from an empty box");
  const auto& axes = box.axes();
  std::vector<std::int64_t> flat(axes.size());
  for (std::size_t a = 0; a < axes.size(); ++a)
    flat[a] = axes[a].first + static_cast<std::int64_t>(uniform_below(rng, axes[a].count)) * axes[a].step;
  std::vector<IntPoly> polys;
  std::size_t pos = 0;
  for (auto d : box.box().degrees) {
    polys.emplace_back(std::vector<std::int64_t>(flat.begin() + pos, flat.begin() + pos + d + 1));
    pos += d + 1;
  }
  return PolyTuple(std::move(polys));
}

std::vector<PolyTuple> sample_box(const CoeffBox& box, std::size_t count, std::uint64_t seed) {
  const BoxEnumerator en(box);
  Rng rng(seed);
  std::vector<PolyTuple> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(sample_one(en, rng));
  return out;
}

BigInt box_cardinality_unrestricted(std::span<const unsigned> degrees, std::int64_t height) {
  BigInt total = 1;
  for (auto d : degrees) total *= BigInt(static_cast<long>(height)) * pow(BigInt(static_cast<long>(2 * height + 1)), d);
  return total;
}

nlohmann::json to_json(const IntPoly& p) {
  nlohmann::json arr = nlohmann::json::array();
  for (auto c : p.coeffs()) arr.push_back(std::to_string(c));
  return arr;
}

nlohmann::json to_json(const PolyTuple& t) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& p : t.polys()) arr.push_back(to_json(p));
  return arr;
}

IntPoly poly_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw std::invalid_argument("polynomial must be a JSON array of coefficients");
  std::vector<std::int64_t> coeffs;
  for (const auto& c : j) {
    if (c.is_string())
      coeffs.push_back(std::stoll(c.get<std::string>()));
    else if (c.is_number_integer())
      coeffs.push_back(c.get<std::int64_t>());
    else
      throw std::invalid_argument("polynomial coefficient must be an integer or a string");
  }
  return IntPoly(std::move(coeffs));
}

PolyTuple tuple_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.empty()) throw std::invalid_argument("tuple must be a non-empty JSON array");
  // A bare coefficient list is read as a 1-tuple.
  if (!j.front().is_array()) return PolyTuple({poly_from_json(j)});
  std::vector<IntPoly> polys;
  for (const auto& p : j) polys.push_back(poly_from_json(p));
  return PolyTuple(std::move(polys));
}

}  // namespace schinzel::poly
