#include "twistlab/sympgroup.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace twistlab {

namespace {

constexpr std::uint32_t kEmptySlot = 0xffffffffu;

int tau(int i) { return i % 2 == 1 ? i + 1 : i - 1; }

std::vector<std::pair<std::uint64_t, std::uint64_t>> prime_power_factors(std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    std::uint64_t q = 1;
    while (n % p == 0) {
      n /= p;
      q *= p;
    }
    out.emplace_back(p, q);
  }
  if (n > 1) out.emplace_back(n, n);
  return out;
}

void require_genus(int genus) {
  if (genus < 1) throw std::invalid_argument("genus must be at least 1");
}

}  // namespace

SymplecticForm symplectic_form(int genus, Modulus m) {
  require_genus(genus);
  ModMatrix j(2 * static_cast<std::size_t>(genus), m);
  for (std::size_t i = 0; i < static_cast<std::size_t>(genus); ++i) {
    j.set(2 * i, 2 * i + 1, 1);
    j.set(2 * i + 1, 2 * i, -1);
  }
  return {genus, std::move(j)};
}

HomologyClass HomologyClass::operator+(const HomologyClass& o) const {
  if (vec.size() != o.vec.size()) throw std::invalid_argument("homology class length mismatch");
  HomologyClass r = *this;
  for (std::size_t i = 0; i < vec.size(); ++i) r.vec[i] += o.vec[i];
  return r;
}

HomologyClass class_a(int i, int genus) {
  if (i < 1 || i > genus) throw std::invalid_argument("class_a: index out of range");
  HomologyClass c{std::vector<std::int64_t>(2 * static_cast<std::size_t>(genus), 0)};
  c.vec[2 * static_cast<std::size_t>(i - 1)] = 1;
  return c;
}

HomologyClass class_b(int i, int genus) {
  if (i < 1 || i > genus) throw std::invalid_argument("class_b: index out of range");
  HomologyClass c{std::vector<std::int64_t>(2 * static_cast<std::size_t>(genus), 0)};
  c.vec[2 * static_cast<std::size_t>(i - 1) + 1] = 1;
  return c;
}

std::int64_t pairing(const HomologyClass& x, const HomologyClass& y) {
  if (x.vec.size() != y.vec.size() || x.vec.size() % 2 != 0)
    throw std::invalid_argument("pairing: length mismatch");
  std::int64_t s = 0;
  for (std::size_t i = 0; i < x.vec.size(); i += 2) s += x.vec[i] * y.vec[i + 1] - x.vec[i + 1] * y.vec[i];
  return s;
}

bool is_symplectic(const ModMatrix& a) {
  if (a.dim() % 2 != 0) return false;
  const auto form = symplectic_form(static_cast<int>(a.dim() / 2), a.modulus());
  return mat_mul(mat_mul(a, form.J), a.transpose()) == form.J;
}

ModMatrix symplectic_inverse(const ModMatrix& a) {
  const auto form = symplectic_form(static_cast<int>(a.dim() / 2), a.modulus());
  return mat_mul(mat_mul(form.J, a.transpose()), form.J).negated();
}

ModMatrix transvection_power(const HomologyClass& b, std::int64_t k, Modulus m, TwistConvention conv) {
  const std::size_t n = b.vec.size();
  if (n == 0 || n % 2 != 0) throw std::invalid_argument("transvection_power: bad class length");
  // Column j of the matrix is the image of basis vector e_j: e_j + s k <e_j, b> b.
  const std::int64_t s = conv == TwistConvention::kPlus ? 1 : -1;
  ModMatrix r = ModMatrix::identity(n, m);
  for (std::size_t j = 0; j < n; ++j) {
    HomologyClass e{std::vector<std::int64_t>(n, 0)};
    e.vec[j] = 1;
    const Integer coef = Integer(s) * k * pairing(e, b);
    if (coef == 0) continue;
    for (std::size_t i = 0; i < n; ++i) r.set(i, j, r.at(i, j) + coef * b.vec[i]);
  }
  return r;
}

ModMatrix elementary_se(int i, int j, std::int64_t level, int genus, Modulus m) {
  require_genus(genus);
  const int n = 2 * genus;
  if (i < 1 || i > n || j < 1 || j > n || i == j)
    throw std::invalid_argument("elementary_se: need 1 <= i != j <= 2g, got (" + std::to_string(i) +
                                "," + std::to_string(j) + ")");
  ModMatrix r = ModMatrix::identity(static_cast<std::size_t>(n), m);
  auto add = [&](int row, int col, const Integer& v) {
    const auto r0 = static_cast<std::size_t>(row - 1);
    const auto c0 = static_cast<std::size_t>(col - 1);
    r.set(r0, c0, r.at(r0, c0) + v);
  };
  add(i, j, level);
  if (j != tau(i)) {
    const std::int64_t sign = ((i + j) % 2 == 0) ? 1 : -1;
    add(tau(j), tau(i), -sign * level);
  }
  if (!is_symplectic(r))
    throw std::logic_error("elementary_se: SE_" + std::to_string(i) + std::to_string(j) +
                           " is not symplectic");
  return r;
}

SeIdentityReport verify_se_identities(int genus, std::int64_t level) {
  if (genus < 2) throw std::invalid_argument("verify_se_identities: genus must be at least 2");
  SeIdentityReport rep;
  rep.genus = genus;
  rep.level = level;
  const Modulus z(0);
  const auto a1 = class_a(1, genus), a2 = class_a(2, genus), b2 = class_b(2, genus);
  const auto c = a1 + b2, d = a1 + a2;
  const auto se12 = elementary_se(1, 2, level, genus, z);
  const auto se13 = elementary_se(1, 3, level, genus, z);
  const auto se14 = elementary_se(1, 4, level, genus, z);
  int passing = 0;
  for (int ci = 0; ci < 2; ++ci) {
    const auto conv = ci == 0 ? TwistConvention::kPlus : TwistConvention::kMinus;
    auto t = [&](const HomologyClass& b, std::int64_t k) { return transvection_power(b, k, z, conv); };
    rep.holds[ci][0] = t(a1, -level) == se12;
    rep.holds[ci][1] = mat_mul(mat_mul(t(b2, -level), t(a1, -level)), t(c, level)) == se13;
    rep.holds[ci][2] = mat_mul(mat_mul(t(a2, level), t(a1, level)), t(d, -level)) == se14;
    if (rep.holds[ci][0] && rep.holds[ci][1] && rep.holds[ci][2]) {
      ++passing;
      rep.pinned = conv;
    }
  }
  if (passing != 1) rep.pinned.reset();
  return rep;
}

// ---------------------------------------------------------------------------
// GroupClosure

GroupClosure::GroupClosure(std::size_t dim, Modulus m) : dim_(dim), mod_(m) {
  if (m.is_integer() || m.value() > 256)
    throw std::invalid_argument("group closure needs a modulus in [1, 256], got " +
                                std::to_string(m.value()));
  slots_.assign(1024, kEmptySlot);
  insert(pack(ModMatrix::identity(dim, m)));
}

std::vector<std::uint8_t> GroupClosure::pack(const ModMatrix& a) const {
  if (a.dim() != dim_ || !(a.modulus() == mod_))
    throw std::invalid_argument("GroupClosure: matrix does not match the closure ring/dimension");
  std::vector<std::uint8_t> out(dim_ * dim_);
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = static_cast<std::uint8_t>(a.entries()[k]);
  return out;
}

ModMatrix GroupClosure::unpack(std::span<const std::uint8_t> packed) const {
  std::vector<Integer> e(packed.begin(), packed.end());
  return ModMatrix::from_entries(dim_, e, mod_);
}

ModMatrix GroupClosure::element(std::size_t i) const {
  if (i >= count_) throw std::out_of_range("GroupClosure::element");
  return unpack(raw(i));
}

void GroupClosure::multiply(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b,
                            std::span<std::uint8_t> out) const {
  const std::size_t n = dim_;
  const auto m = static_cast<std::uint32_t>(mod_.value());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::uint32_t acc = 0;
      for (std::size_t k = 0; k < n; ++k) acc += std::uint32_t{a[i * n + k]} * b[k * n + j];
      out[i * n + j] = static_cast<std::uint8_t>(acc % m);
    }
}

std::size_t GroupClosure::hash_packed(std::span<const std::uint8_t> packed) const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (auto v : packed) {
    h ^= v;
    h *= 0x100000001b3ULL;
  }
  h ^= h >> 29;
  return static_cast<std::size_t>(h);
}

std::optional<std::size_t> GroupClosure::index_of(std::span<const std::uint8_t> packed) const {
  const std::size_t mask = slots_.size() - 1;
  const std::size_t n2 = dim_ * dim_;
  for (std::size_t s = hash_packed(packed) & mask;; s = (s + 1) & mask) {
    const std::uint32_t idx = slots_[s];
    if (idx == kEmptySlot) return std::nullopt;
    if (std::equal(packed.begin(), packed.end(), arena_.begin() + static_cast<std::ptrdiff_t>(idx * n2)))
      return idx;
  }
}

std::optional<std::size_t> GroupClosure::index_of(const ModMatrix& a) const {
  if (a.dim() != dim_ || !(a.modulus() == mod_)) return std::nullopt;
  return index_of(pack(a));
}

void GroupClosure::grow_slots() {
  std::vector<std::uint32_t> fresh(slots_.size() * 2, kEmptySlot);
  const std::size_t mask = fresh.size() - 1;
  for (std::size_t i = 0; i < count_; ++i) {
    std::size_t s = hash_packed(raw(i)) & mask;
    while (fresh[s] != kEmptySlot) s = (s + 1) & mask;
    fresh[s] = static_cast<std::uint32_t>(i);
  }
  slots_.swap(fresh);
}

std::size_t GroupClosure::insert(std::span<const std::uint8_t> packed) {
  if (auto found = index_of(packed)) return *found;
  if (2 * (count_ + 1) > slots_.size()) grow_slots();
  const std::size_t mask = slots_.size() - 1;
  std::size_t s = hash_packed(packed) & mask;
  while (slots_[s] != kEmptySlot) s = (s + 1) & mask;
  slots_[s] = static_cast<std::uint32_t>(count_);
  arena_.insert(arena_.end(), packed.begin(), packed.end());
  return count_++;
}

bool GroupClosure::close_from(std::size_t first_new, std::size_t gens_before, std::size_t cap) {
  const std::size_t n2 = dim_ * dim_;
  std::vector<std::uint8_t> prod(n2);
  // Elements present before the new generators only need the new generators applied.
  for (std::size_t i = 0; i < first_new; ++i)
    for (std::size_t g = gens_before; g < packed_generators_.size(); ++g) {
      multiply(packed_generators_[g], raw(i), prod);
      if (!index_of(prod)) {
        if (count_ >= cap) return complete_ = false;
        insert(prod);
      }
    }
  for (std::size_t i = first_new; i < count_; ++i)
    for (const auto& gen : packed_generators_) {
      multiply(gen, raw(i), prod);
      if (!index_of(prod)) {
        if (count_ >= cap) return complete_ = false;
        insert(prod);
      }
    }
  return true;
}

bool GroupClosure::add_generator(const ModMatrix& gen, std::size_t cap) {
  const std::size_t before = packed_generators_.size();
  const std::size_t old_count = count_;
  generators_.push_back(gen);
  packed_generators_.push_back(pack(gen));
  if (!complete_) return false;
  return close_from(old_count, before, cap);
}

GroupClosure group_closure(const std::vector<ModMatrix>& gens, std::size_t cap) {
  if (cap == 0) throw std::invalid_argument("group_closure: cap must be positive");
  if (gens.empty()) throw std::invalid_argument("group_closure: need at least one generator");
  GroupClosure g(gens.front().dim(), gens.front().modulus());
  for (const auto& gen : gens)
    if (!g.add_generator(gen, cap)) break;
  return g;
}

std::vector<ModMatrix> symplectic_generators(int genus, Modulus m) {
  require_genus(genus);
  std::vector<HomologyClass> classes;
  for (int i = 1; i <= genus; ++i) {
    classes.push_back(class_a(i, genus));
    classes.push_back(class_b(i, genus));
  }
  for (int i = 1; i < genus; ++i) {
    classes.push_back(class_a(i, genus) + class_a(i + 1, genus));
    classes.push_back(class_a(i, genus) + class_b(i + 1, genus));
  }
  std::vector<ModMatrix> gens;
  for (const auto& c : classes) gens.push_back(transvection_power(c, 1, m));
  return gens;
}

GroupClosure symplectic_group(int genus, Modulus m, std::size_t cap) {
  auto g = group_closure(symplectic_generators(genus, m), cap);
  if (!g.complete())
    throw CapExceeded("Sp(" + std::to_string(2 * genus) + ", Z/" + std::to_string(m.value()) +
                      ") exceeds closure cap " + std::to_string(cap));
  return g;
}

Integer symplectic_group_order(int genus, std::uint64_t q) {
  require_genus(genus);
  if (q == 0) throw std::invalid_argument("symplectic_group_order: q must be positive");
  const auto g = static_cast<unsigned>(genus);
  Integer order = 1;
  for (auto [p, pk] : prime_power_factors(q)) {
    unsigned k = 0;
    for (std::uint64_t x = pk; x > 1; x /= p) ++k;
    const Integer pp = p;
    Integer local = boost::multiprecision::pow(pp, (k - 1) * (2 * g * g + g) + g * g);
    for (unsigned i = 1; i <= g; ++i) local *= boost::multiprecision::pow(pp, 2 * i) - 1;
    order *= local;
  }
  return order;
}

std::vector<ModMatrix> center_of(const GroupClosure& group) {
  if (!group.complete()) throw std::invalid_argument("center_of: closure is incomplete");
  const std::size_t n2 = group.dim() * group.dim();
  std::vector<std::vector<std::uint8_t>> gens;
  for (const auto& g : group.generators()) gens.push_back(group.pack(g));
  std::vector<std::uint8_t> gx(n2), xg(n2);
  std::vector<ModMatrix> out;
  for (std::size_t i = 0; i < group.size(); ++i) {
    auto x = group.raw(i);
    bool central = true;
    for (const auto& g : gens) {
      group.multiply(g, x, gx);
      group.multiply(x, g, xg);
      if (gx != xg) {
        central = false;
        break;
      }
    }
    if (central) out.push_back(group.element(i));
  }
  return out;
}

namespace {

std::vector<std::uint8_t> packed_pow(const GroupClosure& g, std::span<const std::uint8_t> a,
                                     std::uint64_t k) {
  const std::size_t n2 = g.dim() * g.dim();
  std::vector<std::uint8_t> result(g.raw(0).begin(), g.raw(0).end());  // identity
  std::vector<std::uint8_t> base(a.begin(), a.end()), tmp(n2);
  while (k > 0) {
    if (k & 1) {
      g.multiply(result, base, tmp);
      result.swap(tmp);
    }
    k >>= 1;
    if (k) {
      g.multiply(base, base, tmp);
      base.swap(tmp);
    }
  }
  return result;
}

}  // namespace

GroupClosure power_subgroup(const GroupClosure& group, std::uint64_t power, std::size_t cap) {
  if (!group.complete()) throw std::invalid_argument("power_subgroup: closure is incomplete");
  GroupClosure sub(group.dim(), group.modulus());
  for (std::size_t i = 0; i < group.size(); ++i) {
    auto p = packed_pow(group, group.raw(i), power);
    if (sub.index_of(p)) continue;
    if (!sub.add_generator(group.unpack(p), cap))
      throw CapExceeded("power_subgroup exceeds closure cap " + std::to_string(cap));
  }
  return sub;
}

std::uint64_t o_c(std::uint64_t q, int genus, std::size_t cap) {
  if (q == 0) throw std::invalid_argument("o_c: modulus must be positive");
  const auto group = symplectic_group(genus, Modulus(static_cast<std::int64_t>(q)), cap);
  std::vector<std::vector<std::uint8_t>> center;
  for (const auto& z : center_of(group)) center.push_back(group.pack(z));
  auto is_central = [&](const std::vector<std::uint8_t>& x) {
    return std::find(center.begin(), center.end(), x) != center.end();
  };
  const std::size_t n2 = group.dim() * group.dim();
  std::uint64_t result = 1;
  std::vector<std::uint8_t> cur(n2), tmp(n2);
  for (std::size_t i = 0; i < group.size(); ++i) {
    auto a = group.raw(i);
    cur.assign(a.begin(), a.end());
    std::uint64_t d = 1;
    while (!is_central(cur)) {
      group.multiply(cur, a, tmp);
      cur.swap(tmp);
      ++d;
    }
    result = std::lcm(result, d);
  }
  return result;
}

NuResult nu(std::uint64_t d, int genus, std::size_t cap) {
  if (d == 0) throw std::invalid_argument("nu: D must be positive");
  NuResult r;
  for (auto [p, pk] : prime_power_factors(d)) {
    PrimePowerFactor f{p, pk, o_c(pk, genus, cap), false};
    f.divides = d % f.oc == 0;
    if (f.divides) r.value *= pk;
    r.factors.push_back(f);
  }
  return r;
}

std::vector<ModMatrix> general_congruence_subgroup(const GroupClosure& group, std::uint64_t f,
                                                   std::size_t cap) {
  const std::uint64_t m = group.modulus().value();
  if (f == 0 || m % f != 0)
    throw std::invalid_argument("general_congruence_subgroup: F=" + std::to_string(f) +
                                " does not divide " + std::to_string(m));
  if (group.dim() % 2 != 0) throw std::invalid_argument("general_congruence_subgroup: odd dimension");
  const Modulus fm(static_cast<std::int64_t>(f));
  std::vector<ModMatrix> center;
  if (f > 1) center = center_of(symplectic_group(static_cast<int>(group.dim() / 2), fm, cap));
  std::vector<ModMatrix> out;
  for (std::size_t i = 0; i < group.size(); ++i) {
    ModMatrix a = group.element(i);
    if (f == 1 || std::find(center.begin(), center.end(), a.reduced(fm)) != center.end())
      out.push_back(std::move(a));
  }
  return out;
}

std::vector<HomologyClass> chain_classes(int genus) {
  require_genus(genus);
  std::vector<HomologyClass> out;
  for (int i = 1; i <= genus; ++i) {
    out.push_back(i == 1 ? class_a(1, genus) : class_a(i - 1, genus) + class_a(i, genus));
    out.push_back(class_b(i, genus));
  }
  return out;
}

std::uint64_t chain_image_order(int genus, ChainVariant variant, std::int64_t cap) {
  const Modulus z(0);
  const auto classes = chain_classes(genus);
  ModMatrix prod = ModMatrix::identity(classes.front().vec.size(), z);
  for (std::size_t i = 0; i < classes.size(); ++i) {
    const std::int64_t k = (i == 0 && variant == ChainVariant::kB) ? 2 : 1;
    prod = mat_mul(prod, transvection_power(classes[i], k, z));
  }
  auto order = mat_order(prod, cap);
  if (!order)
    throw CapExceeded("chain_image_order: no finite order found up to " + std::to_string(cap));
  return *order;
}

std::vector<ModMatrix> reduction_kernel(int genus, std::int64_t level) {
  require_genus(genus);
  if (level < 2) throw std::invalid_argument("reduction_kernel: level must be at least 2");
  const std::size_t n = 2 * static_cast<std::size_t>(genus);
  const std::size_t cells = n * n;
  const double combos = std::pow(static_cast<double>(level), static_cast<double>(cells));
  if (combos > 5e7) throw CapExceeded("reduction_kernel: enumeration too large");
  const Modulus big(level * level);
  std::vector<std::int64_t> digits(cells, 0);
  std::vector<ModMatrix> out;
  while (true) {
    ModMatrix a = ModMatrix::identity(n, big);
    for (std::size_t k = 0; k < cells; ++k)
      if (digits[k]) a.set(k / n, k % n, a.at(k / n, k % n) + level * digits[k]);
    if (is_symplectic(a)) out.push_back(std::move(a));
    std::size_t k = 0;
    while (k < cells && ++digits[k] == level) digits[k++] = 0;
    if (k == cells) break;
  }
  return out;
}

CongruenceReport congruence_subgroup_check(int genus, std::int64_t level, std::size_t cap) {
  CongruenceReport rep;
  rep.genus = genus;
  rep.level = level;
  const Modulus dm(level);
  const Modulus d2(level * level);

  // D-th powers of transvections along all classes with entries in {-1, 0, 1}.
  const std::size_t n = 2 * static_cast<std::size_t>(genus);
  std::vector<std::int64_t> digits(n, -1);
  rep.transvection_powers_trivial = true;
  while (true) {
    HomologyClass b{digits};
    if (transvection_power(b, level, dm).is_identity() == false) rep.transvection_powers_trivial = false;
    ++rep.transvections_checked;
    std::size_t k = 0;
    while (k < n && ++digits[k] == 2) digits[k++] = -1;
    if (k == n) break;
  }

  std::vector<ModMatrix> se;
  for (int i = 1; i <= static_cast<int>(n); ++i)
    for (int j = 1; j <= static_cast<int>(n); ++j)
      if (i != j) se.push_back(elementary_se(i, j, level, genus, d2));
  const auto elementary = group_closure(se, cap);
  if (!elementary.complete()) throw CapExceeded("elementary congruence subgroup exceeds cap");
  rep.elementary_subgroup_order = elementary.size();

  const auto full = symplectic_group(genus, d2, cap);
  std::size_t kernel = 0;
  bool all_in = true;
  for (std::size_t i = 0; i < full.size(); ++i) {
    ModMatrix a = full.element(i);
    if (!a.reduced(dm).is_identity()) continue;
    ++kernel;
    if (!elementary.contains(a)) all_in = false;
  }
  rep.kernel_order = kernel;
  rep.equal = all_in && kernel == elementary.size();

  // Products of I + D X are I + D (sum of X) mod D^2, so the generated subgroup only
  // spans the X of the generators; the normal closure also picks up their conjugates.
  GroupClosure normal = group_closure(se, cap);
  std::vector<ModMatrix> todo = se;
  while (!todo.empty()) {
    ModMatrix x = std::move(todo.back());
    todo.pop_back();
    for (const auto& s : full.generators()) {
      ModMatrix c = mat_mul(mat_mul(s, x), symplectic_inverse(s));
      if (normal.contains(c)) continue;
      if (!normal.add_generator(c, cap)) throw CapExceeded("normal closure exceeds cap");
      todo.push_back(std::move(c));
    }
  }
  std::size_t normal_in_kernel = 0;
  for (std::size_t i = 0; i < normal.size(); ++i)
    if (normal.element(i).reduced(dm).is_identity()) ++normal_in_kernel;
  rep.normal_closure_order = normal.size();
  rep.normal_closure_equal = normal_in_kernel == normal.size() && normal.size() == kernel;
  return rep;
}

}  // namespace twistlab
