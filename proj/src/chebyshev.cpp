#include "twistlab/chebyshev.hpp"

#include <sstream>
#include <stdexcept>

namespace twistlab {

ChebPoly::ChebPoly(std::vector<Integer> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

void ChebPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Integer ChebPoly::evaluate(const Integer& t) const {
  Integer acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + *it;
  return acc;
}

Integer ChebPoly::evaluate(const Integer& t, Modulus m) const {
  Integer acc = 0;
  const Integer tr = m.reduce(t);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = m.reduce(acc * tr + *it);
  return acc;
}

ChebPoly ChebPoly::operator+(const ChebPoly& o) const {
  std::vector<Integer> c(std::max(coeffs_.size(), o.coeffs_.size()));
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = coeff(i) + o.coeff(i);
  return ChebPoly(std::move(c));
}

ChebPoly ChebPoly::operator-(const ChebPoly& o) const {
  std::vector<Integer> c(std::max(coeffs_.size(), o.coeffs_.size()));
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = coeff(i) - o.coeff(i);
  return ChebPoly(std::move(c));
}

ChebPoly ChebPoly::operator*(const ChebPoly& o) const {
  if (coeffs_.empty() || o.coeffs_.empty()) return {};
  std::vector<Integer> c(coeffs_.size() + o.coeffs_.size() - 1);
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    for (std::size_t j = 0; j < o.coeffs_.size(); ++j) c[i + j] += coeffs_[i] * o.coeffs_[j];
  return ChebPoly(std::move(c));
}

std::string ChebPoly::to_string() const {
  if (coeffs_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const Integer& c = coeffs_[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    Integer mag = c < 0 ? Integer(-c) : c;
    if (first) {
      if (c < 0) os << '-';
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    if (mag != 1 || i == 0) os << mag;
    if (i >= 1) os << 't';
    if (i >= 2) os << '^' << i;
    first = false;
  }
  return os.str();
}

ChebPoly q_poly(std::uint64_t n) {
  const ChebPoly t({0, 1});
  ChebPoly prev({1});
  if (n == 0) return prev;
  ChebPoly cur = t;
  for (std::uint64_t k = 1; k < n; ++k) {
    ChebPoly next = t * cur - prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

ChebPoly q_explicit(std::uint64_t n) {
  std::vector<Integer> c(n + 1);
  // (n-k)!/(k!(n-2k)!) is the binomial C(n-k, k).
  for (std::uint64_t k = 0; 2 * k <= n; ++k) {
    Integer binom = 1;
    for (std::uint64_t i = 0; i < k; ++i) binom = binom * (n - k - i) / (i + 1);
    c[n - 2 * k] = (k % 2 == 0) ? binom : Integer(-binom);
  }
  return ChebPoly(std::move(c));
}

Integer q_eval(std::uint64_t n, const Integer& t, Modulus m) {
  const Integer tr = m.reduce(t);
  Integer prev = m.reduce(Integer(1));
  if (n == 0) return prev;
  Integer cur = tr;
  for (std::uint64_t k = 1; k < n; ++k) {
    Integer next = m.reduce(tr * cur - prev);
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

bool sl2_power_identity_check(const ModMatrix& a, std::uint64_t d) {
  const Modulus m = a.modulus();
  if (det2(a) != m.reduce(Integer(1)))
    throw std::invalid_argument("sl2_power_identity_check: determinant is not 1: " + a.to_string());
  if (d == 0) throw std::invalid_argument("sl2_power_identity_check: D must be positive");
  const Integer t = a.trace();
  const Integer q1 = q_eval(d - 1, t, m);
  const Integer q2 = d >= 2 ? q_eval(d - 2, t, m) : Integer(0);
  const ModMatrix rhs = mat_sub(a.scaled(q1), ModMatrix::identity(2, m).scaled(q2));
  return mat_pow(a, d) == rhs;
}

bool mod6_degeneracy_check(std::uint64_t k) {
  if (k == 0) throw std::invalid_argument("mod6_degeneracy_check: k must be positive");
  const Modulus six(6);
  for (int t = 0; t < 6; ++t)
    if (q_eval(6 * k - 1, t, six) != 0) return false;
  return true;
}

}  // namespace twistlab
