#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "twistlab/modring.hpp"

namespace twistlab {

/// Thrown when a closure or enumeration would grow beyond its element cap.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kDefaultClosureCap = 10'000'000;

/// Standard form J = g copies of [[0,1],[-1,0]] on the ordered basis
/// (a_1, b_1, ..., a_g, b_g).
struct SymplecticForm {
  int genus;
  ModMatrix J;
};

SymplecticForm symplectic_form(int genus, Modulus m);

/// Length-2g integer vector in the basis (a_1, b_1, ..., a_g, b_g).
struct HomologyClass {
  std::vector<std::int64_t> vec;

  int genus() const { return static_cast<int>(vec.size() / 2); }
  HomologyClass operator+(const HomologyClass& o) const;
  friend bool operator==(const HomologyClass&, const HomologyClass&) = default;
};

/// a_i and b_i, 1-based.
HomologyClass class_a(int i, int genus);
HomologyClass class_b(int i, int genus);

/// Algebraic intersection number x^T J y.
std::int64_t pairing(const HomologyClass& x, const HomologyClass& y);

bool is_symplectic(const ModMatrix& a);

/// A^{-1} = -J A^T J, valid for any symplectic A.
ModMatrix symplectic_inverse(const ModMatrix& a);

/// Sign of the homology action of a positive twist.
enum class TwistConvention { kPlus, kMinus };

/// Matrix of x -> x + k<x,b>b (kPlus) or x -> x - k<x,b>b (kMinus), acting on columns.
ModMatrix transvection_power(const HomologyClass& b, std::int64_t k, Modulus m,
                             TwistConvention conv = TwistConvention::kPlus);

/// Elementary symplectic matrix SE_ij[D], 1-based i != j. Throws on bad indices and
/// if the result fails to be symplectic.
ModMatrix elementary_se(int i, int j, std::int64_t level, int genus, Modulus m);

struct SeIdentityReport {
  int genus = 0;
  std::int64_t level = 0;
  /// holds[c][k]: identity k (0: SE_12, 1: SE_13, 2: SE_14) under convention c.
  std::array<std::array<bool, 3>, 2> holds{};
  /// The unique convention satisfying all three, if exactly one does.
  std::optional<TwistConvention> pinned;
};

SeIdentityReport verify_se_identities(int genus, std::int64_t level);

/// Finite matrix group materialized by breadth-first closure. Elements are stored
/// packed (one byte per entry), so moduli up to 256 are supported.
class GroupClosure {
 public:
  GroupClosure(std::size_t dim, Modulus m);

  std::size_t dim() const { return dim_; }
  Modulus modulus() const { return mod_; }
  std::size_t size() const { return count_; }
  bool complete() const { return complete_; }
  const std::vector<ModMatrix>& generators() const { return generators_; }

  ModMatrix element(std::size_t i) const;
  std::span<const std::uint8_t> raw(std::size_t i) const {
    return {arena_.data() + i * dim_ * dim_, dim_ * dim_};
  }
  std::optional<std::size_t> index_of(std::span<const std::uint8_t> packed) const;
  std::optional<std::size_t> index_of(const ModMatrix& a) const;
  bool contains(const ModMatrix& a) const { return index_of(a).has_value(); }

  /// Adds a generator and closes again. Returns false (and marks the closure
  /// incomplete) if the cap is hit.
  bool add_generator(const ModMatrix& gen, std::size_t cap);

  std::vector<std::uint8_t> pack(const ModMatrix& a) const;
  ModMatrix unpack(std::span<const std::uint8_t> packed) const;
  /// out = a*b in packed form.
  void multiply(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b,
                std::span<std::uint8_t> out) const;

 private:
  std::size_t insert(std::span<const std::uint8_t> packed);
  std::size_t hash_packed(std::span<const std::uint8_t> packed) const;
  void grow_slots();
  bool close_from(std::size_t first_new, std::size_t gens_before, std::size_t cap);

  std::size_t dim_;
  Modulus mod_;
  std::vector<ModMatrix> generators_;
  std::vector<std::vector<std::uint8_t>> packed_generators_;
  std::vector<std::uint8_t> arena_;
  std::vector<std::uint32_t> slots_;
  std::size_t count_ = 0;
  bool complete_ = true;
};

/// Closure of the generators under multiplication. The result is marked incomplete
/// if it would exceed `cap` elements. Requires a positive modulus.
GroupClosure group_closure(const std::vector<ModMatrix>& gens, std::size_t cap);

/// Transvections along every a_i, b_i, a_i + a_{i+1} and a_i + b_{i+1}.
std::vector<ModMatrix> symplectic_generators(int genus, Modulus m);

/// Sp(2g, Z/mZ) via group_closure of symplectic_generators. Throws CapExceeded.
GroupClosure symplectic_group(int genus, Modulus m, std::size_t cap = kDefaultClosureCap);

/// |Sp(2g, Z/qZ)| from the order formula, multiplicative over prime powers.
Integer symplectic_group_order(int genus, std::uint64_t q);

/// Elements commuting with every generator. Throws if the closure is incomplete.
std::vector<ModMatrix> center_of(const GroupClosure& group);

/// Subgroup generated by all D-th powers. Throws CapExceeded.
GroupClosure power_subgroup(const GroupClosure& group, std::uint64_t power,
                            std::size_t cap = kDefaultClosureCap);

/// Least d >= 1 such that A^d is central for all A in Sp(2g, Z/qZ).
std::uint64_t o_c(std::uint64_t q, int genus, std::size_t cap = kDefaultClosureCap);

struct PrimePowerFactor {
  std::uint64_t prime;
  std::uint64_t prime_power;
  std::uint64_t oc;
  bool divides;
};

struct NuResult {
  std::uint64_t value = 1;
  std::vector<PrimePowerFactor> factors;
};

/// Product of the maximal prime powers q of D whose o_c(q) divides D.
NuResult nu(std::uint64_t d, int genus, std::size_t cap = kDefaultClosureCap);

/// Members of the group whose reduction mod F is central in Sp(2g, Z/FZ).
std::vector<ModMatrix> general_congruence_subgroup(const GroupClosure& group, std::uint64_t f,
                                                   std::size_t cap = kDefaultClosureCap);

/// Homology classes of the chain c_1, ..., c_{2g}: a_1, b_1, a_1+a_2, b_2, a_2+a_3, ...
std::vector<HomologyClass> chain_classes(int genus);

enum class ChainVariant { kA, kB };

/// Order over Z of the image of T_{c_1}^e T_{c_2} ... T_{c_2g}, e = 1 (kA) or 2 (kB).
std::uint64_t chain_image_order(int genus, ChainVariant variant, std::int64_t cap = 10'000);

struct CongruenceReport {
  int genus = 0;
  std::int64_t level = 0;
  bool transvection_powers_trivial = false;
  std::size_t transvections_checked = 0;
  std::size_t elementary_subgroup_order = 0;
  std::size_t kernel_order = 0;
  bool equal = false;  // the subgroup generated by the SE_ij[D] is the whole kernel
  /// Normal closure of the SE_ij[D] in Sp(2g, Z/D^2).
  std::size_t normal_closure_order = 0;
  bool normal_closure_equal = false;
};

/// Transvection D-th powers vanish mod D; compares the subgroup generated by the
/// SE_ij[D], and their normal closure, with the kernel of Sp(2g, Z/D^2) -> Sp(2g, Z/D).
CongruenceReport congruence_subgroup_check(int genus, std::int64_t level,
                                           std::size_t cap = kDefaultClosureCap);

/// Kernel of Sp(2g, Z/D^2) -> Sp(2g, Z/D), enumerated as I + D X with X over Z/D.
std::vector<ModMatrix> reduction_kernel(int genus, std::int64_t level);

}  // namespace twistlab
