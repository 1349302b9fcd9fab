#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace twistlab {

using Integer = boost::multiprecision::cpp_int;

/// Residue ring Z/mZ. A modulus of 0 means plain integer arithmetic.
class Modulus {
 public:
  constexpr Modulus() = default;
  explicit Modulus(std::int64_t m);

  std::uint64_t value() const { return m_; }
  bool is_integer() const { return m_ == 0; }

  /// Least non-negative representative (identity when working over Z).
  Integer reduce(const Integer& x) const;
  std::int64_t reduce(std::int64_t x) const;

  friend bool operator==(Modulus a, Modulus b) { return a.m_ == b.m_; }

 private:
  std::uint64_t m_ = 0;
};

/// Representative of x mod m in (-m/2, m/2]; used when reporting +-1 style values.
Integer symmetric_residue(const Integer& x, Modulus m);

/// Square matrix over Z/mZ (or Z when the modulus is 0), row-major, entries
/// always held in canonical form.
class ModMatrix {
 public:
  ModMatrix(std::size_t dim, Modulus mod);

  static ModMatrix identity(std::size_t dim, Modulus mod);
  static ModMatrix from_rows(std::initializer_list<std::initializer_list<std::int64_t>> rows,
                             Modulus mod);
  static ModMatrix from_entries(std::size_t dim, const std::vector<Integer>& entries, Modulus mod);

  std::size_t dim() const { return dim_; }
  Modulus modulus() const { return mod_; }

  const Integer& at(std::size_t i, std::size_t j) const { return entries_[i * dim_ + j]; }
  void set(std::size_t i, std::size_t j, const Integer& v);
  const std::vector<Integer>& entries() const { return entries_; }

  bool is_identity() const;
  Integer trace() const;

  /// Entry-wise image in Z/fZ. Valid when f divides the current modulus,
  /// or the current ring is Z.
  ModMatrix reduced(Modulus f) const;
  ModMatrix transpose() const;
  ModMatrix negated() const;
  ModMatrix scaled(const Integer& k) const;

  std::string to_string() const;

  friend bool operator==(const ModMatrix& a, const ModMatrix& b) {
    return a.dim_ == b.dim_ && a.mod_ == b.mod_ && a.entries_ == b.entries_;
  }
  friend bool operator!=(const ModMatrix& a, const ModMatrix& b) { return !(a == b); }

 private:
  std::size_t dim_;
  Modulus mod_;
  std::vector<Integer> entries_;
};

ModMatrix mat_mul(const ModMatrix& a, const ModMatrix& b);
ModMatrix mat_add(const ModMatrix& a, const ModMatrix& b);
ModMatrix mat_sub(const ModMatrix& a, const ModMatrix& b);
ModMatrix mat_pow(const ModMatrix& a, std::uint64_t k);

/// Block-diagonal sum a (+) b.
ModMatrix direct_sum(const ModMatrix& a, const ModMatrix& b);

/// 2x2 determinant, reduced.
Integer det2(const ModMatrix& a);

/// Least k >= 1 with a^k = I, searched up to and including `cap`;
/// std::nullopt means the cap was exceeded.
std::optional<std::uint64_t> mat_order(const ModMatrix& a, std::int64_t cap);

std::size_t hash_value(const ModMatrix& a);

}  // namespace twistlab

template <>
struct std::hash<twistlab::ModMatrix> {
  std::size_t operator()(const twistlab::ModMatrix& a) const { return twistlab::hash_value(a); }
};
