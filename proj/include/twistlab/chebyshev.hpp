#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "twistlab/modring.hpp"

namespace twistlab {

/// Integer polynomial in t; coeffs[i] is the coefficient of t^i. The zero
/// polynomial has no coefficients, otherwise the last one is non-zero.
class ChebPoly {
 public:
  ChebPoly() = default;
  explicit ChebPoly(std::vector<Integer> coeffs);

  const std::vector<Integer>& coeffs() const { return coeffs_; }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  Integer coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Integer(0); }
  Integer leading() const { return coeffs_.empty() ? Integer(0) : coeffs_.back(); }

  Integer evaluate(const Integer& t) const;
  Integer evaluate(const Integer& t, Modulus m) const;

  ChebPoly operator+(const ChebPoly& o) const;
  ChebPoly operator-(const ChebPoly& o) const;
  ChebPoly operator*(const ChebPoly& o) const;

  std::string to_string() const;

  friend bool operator==(const ChebPoly& a, const ChebPoly& b) { return a.coeffs_ == b.coeffs_; }

 private:
  void trim();
  std::vector<Integer> coeffs_;
};

/// Q_n by the three-term recurrence Q_{n+1} = t Q_n - Q_{n-1}, Q_0 = 1, Q_1 = t.
ChebPoly q_poly(std::uint64_t n);

/// Q_n from the closed form sum_k (-1)^k (n-k)!/(k!(n-2k)!) t^(n-2k), k up to floor(n/2).
ChebPoly q_explicit(std::uint64_t n);

/// Q_n(t) mod m, running the recurrence on residues. Over Z (m = 0) the exact value.
Integer q_eval(std::uint64_t n, const Integer& t, Modulus m);

/// Checks A^D = Q_{D-1}(tr A) A - Q_{D-2}(tr A) I in A's ring. Throws if det A != 1.
/// D = 1 uses Q_{-1} = 0.
bool sl2_power_identity_check(const ModMatrix& a, std::uint64_t d);

/// True iff Q_{6k-1}(t) vanishes mod 6 for every t in {0,...,5}.
bool mod6_degeneracy_check(std::uint64_t k);

}  // namespace twistlab
