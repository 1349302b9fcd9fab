#include "twistlab/modring.hpp"

#include <sstream>
#include <stdexcept>

namespace twistlab {

Modulus::Modulus(std::int64_t m) {
  if (m < 0) throw std::invalid_argument("modulus must be non-negative, got " + std::to_string(m));
  m_ = static_cast<std::uint64_t>(m);
}

Integer Modulus::reduce(const Integer& x) const {
  if (m_ == 0) return x;
  Integer r = x % m_;
  if (r < 0) r += m_;
  return r;
}

std::int64_t Modulus::reduce(std::int64_t x) const {
  if (m_ == 0) return x;
  auto m = static_cast<std::int64_t>(m_);
  std::int64_t r = x % m;
  return r < 0 ? r + m : r;
}

Integer symmetric_residue(const Integer& x, Modulus m) {
  if (m.is_integer()) return x;
  Integer r = m.reduce(x);
  if (2 * r > m.value()) r -= m.value();
  return r;
}

ModMatrix::ModMatrix(std::size_t dim, Modulus mod) : dim_(dim), mod_(mod), entries_(dim * dim) {
  if (dim == 0) throw std::invalid_argument("matrix dimension must be positive");
}

ModMatrix ModMatrix::identity(std::size_t dim, Modulus mod) {
  ModMatrix r(dim, mod);
  for (std::size_t i = 0; i < dim; ++i) r.set(i, i, 1);
  return r;
}

ModMatrix ModMatrix::from_rows(std::initializer_list<std::initializer_list<std::int64_t>> rows,
                               Modulus mod) {
  const std::size_t n = rows.size();
  ModMatrix r(n, mod);
  std::size_t i = 0;
  for (const auto& row : rows) {
    if (row.size() != n) throw std::invalid_argument("from_rows: matrix is not square");
    std::size_t j = 0;
    for (auto v : row) r.set(i, j++, v);
    ++i;
  }
  return r;
}

ModMatrix ModMatrix::from_entries(std::size_t dim, const std::vector<Integer>& entries, Modulus mod) {
  if (entries.size() != dim * dim) throw std::invalid_argument("from_entries: wrong entry count");
  ModMatrix r(dim, mod);
  for (std::size_t k = 0; k < entries.size(); ++k) r.entries_[k] = mod.reduce(entries[k]);
  return r;
}

void ModMatrix::set(std::size_t i, std::size_t j, const Integer& v) {
  entries_.at(i * dim_ + j) = mod_.reduce(v);
}

bool ModMatrix::is_identity() const {
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j)
      if (at(i, j) != mod_.reduce(Integer(i == j ? 1 : 0))) return false;
  return true;
}

Integer ModMatrix::trace() const {
  Integer t = 0;
  for (std::size_t i = 0; i < dim_; ++i) t += at(i, i);
  return mod_.reduce(t);
}

ModMatrix ModMatrix::reduced(Modulus f) const {
  if (!mod_.is_integer() && (f.is_integer() || mod_.value() % f.value() != 0))
    throw std::invalid_argument("reduced: target modulus " + std::to_string(f.value()) +
                                " does not divide " + std::to_string(mod_.value()));
  ModMatrix r(dim_, f);
  for (std::size_t k = 0; k < entries_.size(); ++k) r.entries_[k] = f.reduce(entries_[k]);
  return r;
}

ModMatrix ModMatrix::transpose() const {
  ModMatrix r(dim_, mod_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) r.entries_[j * dim_ + i] = at(i, j);
  return r;
}

ModMatrix ModMatrix::negated() const { return scaled(-1); }

ModMatrix ModMatrix::scaled(const Integer& k) const {
  ModMatrix r(dim_, mod_);
  for (std::size_t e = 0; e < entries_.size(); ++e) r.entries_[e] = mod_.reduce(k * entries_[e]);
  return r;
}

std::string ModMatrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < dim_; ++i) {
    os << (i ? ",[" : "[");
    for (std::size_t j = 0; j < dim_; ++j) os << (j ? "," : "") << at(i, j);
    os << ']';
  }
  os << ']';
  if (!mod_.is_integer()) os << " mod " << mod_.value();
  return os.str();
}

namespace {

void require_compatible(const ModMatrix& a, const ModMatrix& b, const char* op) {
  if (a.dim() != b.dim())
    throw std::invalid_argument(std::string(op) + ": dimension mismatch " +
                                std::to_string(a.dim()) + " vs " + std::to_string(b.dim()));
  if (!(a.modulus() == b.modulus()))
    throw std::invalid_argument(std::string(op) + ": modulus mismatch " +
                                std::to_string(a.modulus().value()) + " vs " +
                                std::to_string(b.modulus().value()));
}

}  // namespace

ModMatrix mat_mul(const ModMatrix& a, const ModMatrix& b) {
  require_compatible(a, b, "mat_mul");
  const std::size_t n = a.dim();
  std::vector<Integer> out(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const Integer& aik = a.at(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < n; ++j) out[i * n + j] += aik * b.at(k, j);
    }
  return ModMatrix::from_entries(n, out, a.modulus());
}

ModMatrix mat_add(const ModMatrix& a, const ModMatrix& b) {
  require_compatible(a, b, "mat_add");
  std::vector<Integer> out(a.entries());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] += b.entries()[k];
  return ModMatrix::from_entries(a.dim(), out, a.modulus());
}

ModMatrix mat_sub(const ModMatrix& a, const ModMatrix& b) { return mat_add(a, b.negated()); }

ModMatrix mat_pow(const ModMatrix& a, std::uint64_t k) {
  ModMatrix result = ModMatrix::identity(a.dim(), a.modulus());
  ModMatrix base = a;
  while (k > 0) {
    if (k & 1) result = mat_mul(result, base);
    k >>= 1;
    if (k) base = mat_mul(base, base);
  }
  return result;
}

ModMatrix direct_sum(const ModMatrix& a, const ModMatrix& b) {
  if (!(a.modulus() == b.modulus())) throw std::invalid_argument("direct_sum: modulus mismatch");
  const std::size_t n = a.dim() + b.dim();
  ModMatrix r(n, a.modulus());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) r.set(i, j, a.at(i, j));
  for (std::size_t i = 0; i < b.dim(); ++i)
    for (std::size_t j = 0; j < b.dim(); ++j) r.set(a.dim() + i, a.dim() + j, b.at(i, j));
  return r;
}

Integer det2(const ModMatrix& a) {
  if (a.dim() != 2) throw std::invalid_argument("det2: matrix is not 2x2");
  return a.modulus().reduce(a.at(0, 0) * a.at(1, 1) - a.at(0, 1) * a.at(1, 0));
}

std::optional<std::uint64_t> mat_order(const ModMatrix& a, std::int64_t cap) {
  if (cap <= 0) throw std::invalid_argument("mat_order: cap must be positive");
  ModMatrix p = a;
  for (std::int64_t k = 1; k <= cap; ++k) {
    if (p.is_identity()) return static_cast<std::uint64_t>(k);
    p = mat_mul(p, a);
  }
  return std::nullopt;
}

std::size_t hash_value(const ModMatrix& a) {
  std::size_t h = std::hash<std::size_t>{}(a.dim()) ^ (a.modulus().value() * 0x9e3779b97f4a7c15ULL);
  for (const auto& e : a.entries()) {
    Integer mag = boost::multiprecision::abs(e);
    auto v = static_cast<std::size_t>(mag & Integer(0xffffffffffffffffULL));
    if (e < 0) v = ~v;
    h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

}  // namespace twistlab
