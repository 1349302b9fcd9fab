#include "twistlab/cosets.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "twistlab/modring.hpp"

namespace twistlab {

void Presentation::check() const {
  for (std::size_t r = 0; r < relators.size(); ++r)
    for (int x : relators[r])
      if (x == 0 || static_cast<std::size_t>(x < 0 ? -x : x) > generators)
        throw std::invalid_argument("relator " + std::to_string(r) + ": letter " + std::to_string(x) +
                                    " is out of range");
}

std::string Presentation::to_string() const {
  std::ostringstream os;
  os << '<' << generators << " generators |";
  for (std::size_t r = 0; r < relators.size(); ++r) {
    os << (r ? ", " : " ");
    for (std::size_t k = 0; k < relators[r].size(); ++k) os << (k ? " " : "") << relators[r][k];
  }
  os << '>';
  return os.str();
}

std::int64_t CosetTable::trace(std::size_t coset, const Word& w) const {
  std::int64_t c = static_cast<std::int64_t>(coset);
  for (int x : w) {
    const std::size_t col = x > 0 ? 2 * static_cast<std::size_t>(x - 1) : 2 * static_cast<std::size_t>(-x - 1) + 1;
    c = at(static_cast<std::size_t>(c), col);
    if (c < 0) return -1;
  }
  return c;
}

bool CosetTable::verify(const Presentation& p, const std::vector<Word>& subgroup) const {
  if (!complete() || generators != p.generators) return false;
  const std::size_t cols = 2 * generators;
  for (std::size_t a = 0; a < cosets; ++a)
    for (std::size_t c = 0; c < cols; ++c) {
      const auto b = at(a, c);
      if (b < 0 || static_cast<std::size_t>(b) >= cosets) return false;
      if (at(static_cast<std::size_t>(b), c ^ 1) != static_cast<std::int32_t>(a)) return false;
    }
  for (const auto& r : p.relators)
    for (std::size_t a = 0; a < cosets; ++a)
      if (trace(a, r) != static_cast<std::int64_t>(a)) return false;
  for (const auto& s : subgroup)
    if (trace(0, s) != 0) return false;
  return true;
}

namespace {

using Cols = std::vector<std::size_t>;

Word free_reduce_word(const Word& w) {
  Word r;
  for (int x : w) {
    if (!r.empty() && r.back() == -x)
      r.pop_back();
    else
      r.push_back(x);
  }
  return r;
}

Word cyclic_reduce(Word w) {
  w = free_reduce_word(w);
  std::size_t lo = 0, hi = w.size();
  while (hi - lo >= 2 && w[lo] == -w[hi - 1]) ++lo, --hi;
  return Word(w.begin() + static_cast<std::ptrdiff_t>(lo), w.begin() + static_cast<std::ptrdiff_t>(hi));
}

Cols to_columns(const Word& w) {
  Cols c;
  for (int x : w) c.push_back(x > 0 ? 2 * static_cast<std::size_t>(x - 1) : 2 * static_cast<std::size_t>(-x - 1) + 1);
  return c;
}

class Enumerator {
 public:
  Enumerator(const Presentation& p, std::size_t cap) : cols_(2 * p.generators), cap_(cap) {
    for (const auto& r : p.relators) {
      Word w = cyclic_reduce(r);
      if (!w.empty()) rels_.push_back(to_columns(w));
    }
    // Cyclic conjugates of relators and their inverses, bucketed by first column.
    conj_.resize(cols_);
    for (const auto& r : rels_) {
      Cols inv;
      for (auto it = r.rbegin(); it != r.rend(); ++it) inv.push_back(*it ^ 1);
      for (const Cols* w : {&r, static_cast<const Cols*>(&inv)})
        for (std::size_t k = 0; k < w->size(); ++k) {
          Cols c(w->begin() + static_cast<std::ptrdiff_t>(k), w->end());
          c.insert(c.end(), w->begin(), w->begin() + static_cast<std::ptrdiff_t>(k));
          auto& bucket = conj_[c.front()];
          if (std::find(bucket.begin(), bucket.end(), c) == bucket.end()) bucket.push_back(std::move(c));
        }
    }
  }

  CosetTable run(const std::vector<Cols>& subgroup) {
    new_coset();
    for (const auto& s : subgroup) {
      scan_and_fill(0, s);
      process_deductions();
      if (full_ && !make_room(nullptr)) return finish(false);
    }
    std::size_t a = 0;
    while (a < n_) {
      if (dead(a)) {
        ++a;
        continue;
      }
      for (const auto& r : rels_) {
        scan_and_fill(static_cast<std::int32_t>(a), r);
        process_deductions();
        if (full_ || dead(a)) break;
      }
      if (!full_ && !dead(a))
        for (std::size_t c = 0; c < cols_; ++c)
          if (t(a, c) < 0) {
            define(static_cast<std::int32_t>(a), c);
            if (full_) break;
            process_deductions();
            if (dead(a)) break;
          }
      if (full_) {
        if (!make_room(&a)) return finish(false);
        continue;  // redo the current coset
      }
      ++a;
    }
    return finish(true);
  }

 private:
  std::int32_t& t(std::size_t a, std::size_t c) { return table_[a * cols_ + c]; }
  bool dead(std::size_t a) const { return parent_[a] != static_cast<std::int32_t>(a); }

  std::int32_t rep(std::int32_t a) {
    std::int32_t r = a;
    while (parent_[static_cast<std::size_t>(r)] != r) r = parent_[static_cast<std::size_t>(r)];
    while (parent_[static_cast<std::size_t>(a)] != r) {
      auto next = parent_[static_cast<std::size_t>(a)];
      parent_[static_cast<std::size_t>(a)] = r;
      a = next;
    }
    return r;
  }

  std::int32_t new_coset() {
    const auto b = static_cast<std::int32_t>(n_++);
    table_.resize(n_ * cols_, -1);
    parent_.push_back(b);
    ++live_;
    ++total_;
    return b;
  }

  bool define(std::int32_t a, std::size_t c) {
    if (n_ >= cap_) {
      full_ = true;
      return false;
    }
    const auto b = new_coset();
    t(static_cast<std::size_t>(a), c) = b;
    t(static_cast<std::size_t>(b), c ^ 1) = a;
    push_deduction(a, c);
    return true;
  }

  void push_deduction(std::int32_t a, std::size_t c) {
    if (deductions_.size() < kMaxDeductions)
      deductions_.emplace_back(a, c);
    else
      deductions_overflowed_ = true;
  }

  // Traces w from a forwards and backwards. With `fill`, missing cosets are defined;
  // otherwise the scan stops at a gap of two or more.
  void scan(std::int32_t a, const Cols& w, bool fill) {
    std::int32_t f = a, b = a;
    std::size_t i = 0, j = w.size();  // unmatched letters are w[i..j)
    for (;;) {
      while (i < j && t(static_cast<std::size_t>(f), w[i]) >= 0) f = t(static_cast<std::size_t>(f), w[i++]);
      if (i == j) {
        if (f != b) coincidence(f, b);
        return;
      }
      while (j > i && t(static_cast<std::size_t>(b), w[j - 1] ^ 1) >= 0) b = t(static_cast<std::size_t>(b), w[--j] ^ 1);
      if (j == i) {
        coincidence(f, b);
        return;
      }
      if (j == i + 1) {
        t(static_cast<std::size_t>(f), w[i]) = b;
        t(static_cast<std::size_t>(b), w[i] ^ 1) = f;
        push_deduction(f, w[i]);
        return;
      }
      if (!fill || !define(f, w[i])) return;
    }
  }

  void scan_and_fill(std::int32_t a, const Cols& w) { scan(a, w, true); }

  void process_deductions() {
    while (!deductions_.empty()) {
      auto [a, c] = deductions_.back();
      deductions_.pop_back();
      if (dead(static_cast<std::size_t>(a))) continue;
      for (const auto& w : conj_[c]) {
        scan(a, w, false);
        if (dead(static_cast<std::size_t>(a))) break;
      }
      if (dead(static_cast<std::size_t>(a))) continue;
      const auto b = t(static_cast<std::size_t>(a), c);
      if (b < 0 || dead(static_cast<std::size_t>(b))) continue;
      for (const auto& w : conj_[c ^ 1]) {
        scan(b, w, false);
        if (dead(static_cast<std::size_t>(b))) break;
      }
    }
  }

  void merge(std::int32_t k, std::int32_t l) {
    k = rep(k);
    l = rep(l);
    if (k == l) return;
    const auto lo = std::min(k, l), hi = std::max(k, l);
    parent_[static_cast<std::size_t>(hi)] = lo;
    --live_;
    queue_.push_back(hi);
  }

  void coincidence(std::int32_t a, std::int32_t b) {
    queue_.clear();
    merge(a, b);
    for (std::size_t q = 0; q < queue_.size(); ++q) {
      const std::int32_t g = queue_[q];
      for (std::size_t c = 0; c < cols_; ++c) {
        const std::int32_t d = t(static_cast<std::size_t>(g), c);
        if (d < 0) continue;
        if (t(static_cast<std::size_t>(d), c ^ 1) == g) t(static_cast<std::size_t>(d), c ^ 1) = -1;
        const std::int32_t mu = rep(g), nu = rep(d);
        const std::int32_t mc = t(static_cast<std::size_t>(mu), c);
        const std::int32_t nc = t(static_cast<std::size_t>(nu), c ^ 1);
        if (mc >= 0) {
          merge(nu, mc);
        } else if (nc >= 0) {
          merge(mu, nc);
        } else {
          t(static_cast<std::size_t>(mu), c) = nu;
          t(static_cast<std::size_t>(nu), c ^ 1) = mu;
          push_deduction(mu, c);
        }
      }
    }
  }

  // Scans every live coset under every relator without defining anything.
  void lookahead() {
    for (std::size_t a = 0; a < n_; ++a) {
      if (dead(a)) continue;
      for (const auto& r : rels_) {
        scan(static_cast<std::int32_t>(a), r, false);
        process_deductions();
        if (dead(a)) break;
      }
    }
  }

  // Renumbers live cosets in order; `current` is moved to its new position.
  void compact(std::size_t* current) {
    std::vector<std::int32_t> map(n_, -1);
    std::size_t k = 0;
    for (std::size_t a = 0; a < n_; ++a)
      if (!dead(a)) map[a] = static_cast<std::int32_t>(k++);
    if (current) {
      std::size_t before = 0;
      for (std::size_t a = 0; a < *current && a < n_; ++a) before += dead(a) ? 0 : 1;
      *current = before;
    }
    for (std::size_t a = 0; a < n_; ++a) {
      if (dead(a)) continue;
      const auto to = static_cast<std::size_t>(map[a]);
      for (std::size_t c = 0; c < cols_; ++c) {
        const auto v = table_[a * cols_ + c];
        table_[to * cols_ + c] = v < 0 ? -1 : map[static_cast<std::size_t>(rep(v))];
      }
    }
    n_ = k;
    table_.resize(n_ * cols_);
    parent_.resize(n_);
    std::iota(parent_.begin(), parent_.end(), 0);
    std::vector<std::pair<std::int32_t, std::size_t>> kept;
    for (auto [a, c] : deductions_)
      if (map.size() > static_cast<std::size_t>(a) && map[static_cast<std::size_t>(a)] >= 0)
        kept.emplace_back(map[static_cast<std::size_t>(a)], c);
    deductions_ = std::move(kept);
  }

  // Called when a definition was refused. Returns false if no space can be freed.
  bool make_room(std::size_t* current) {
    full_ = false;
    deductions_overflowed_ = false;
    if (live_ == n_) {
      lookahead();
      if (live_ == n_) return false;
    }
    compact(current);
    return true;
  }

  CosetTable finish(bool complete) {
    CosetTable out;
    out.status = complete ? EnumerationStatus::kComplete : EnumerationStatus::kExceeded;
    out.cap = cap_;
    out.generators = cols_ / 2;
    out.total_defined = total_;
    if (!complete) {
      out.cosets = live_;
      return out;
    }
    compact(nullptr);
    // Standardize: number cosets in breadth-first order from coset 0.
    std::vector<std::int32_t> order{0}, map(n_, -1);
    map[0] = 0;
    for (std::size_t q = 0; q < order.size(); ++q)
      for (std::size_t c = 0; c < cols_; ++c) {
        const auto b = t(static_cast<std::size_t>(order[q]), c);
        if (map[static_cast<std::size_t>(b)] < 0) {
          map[static_cast<std::size_t>(b)] = static_cast<std::int32_t>(order.size());
          order.push_back(b);
        }
      }
    out.cosets = order.size();
    out.table.resize(out.cosets * cols_);
    for (std::size_t k = 0; k < order.size(); ++k)
      for (std::size_t c = 0; c < cols_; ++c)
        out.table[k * cols_ + c] = map[static_cast<std::size_t>(t(static_cast<std::size_t>(order[k]), c))];
    return out;
  }

  static constexpr std::size_t kMaxDeductions = 1 << 16;

  std::size_t cols_;
  std::size_t cap_;
  std::vector<Cols> rels_;
  std::vector<std::vector<Cols>> conj_;
  std::vector<std::int32_t> table_;
  std::vector<std::int32_t> parent_;
  std::vector<std::int32_t> queue_;
  std::vector<std::pair<std::int32_t, std::size_t>> deductions_;
  std::size_t n_ = 0;
  std::size_t live_ = 0;
  std::size_t total_ = 0;
  bool full_ = false;
  bool deductions_overflowed_ = false;
};

}  // namespace

CosetTable todd_coxeter(const Presentation& p, const std::vector<Word>& subgroup, std::size_t cap) {
  if (cap == 0) throw std::invalid_argument("todd_coxeter: cap must be positive");
  p.check();
  Presentation sub{p.generators, subgroup};
  sub.check();
  if (p.generators == 0) {
    CosetTable t;
    t.status = EnumerationStatus::kComplete;
    t.cap = cap;
    t.cosets = t.total_defined = 1;
    return t;
  }
  std::vector<Cols> s;
  for (const auto& w : subgroup) {
    Word r = free_reduce_word(w);
    if (!r.empty()) s.push_back(to_columns(r));
  }
  return Enumerator(p, cap).run(s);
}

Presentation braid_power_presentation(std::size_t n, std::int64_t power) {
  if (n < 2) throw std::invalid_argument("braid_power_presentation: need n >= 2");
  if (power < 1) throw std::invalid_argument("braid_power_presentation: need D >= 1");
  Presentation p;
  p.generators = n - 1;
  for (int i = 1; i < static_cast<int>(n); ++i) {
    for (int j = i + 2; j < static_cast<int>(n); ++j) p.relators.push_back({i, j, -i, -j});
    if (i + 1 < static_cast<int>(n)) p.relators.push_back({i, i + 1, i, -(i + 1), -i, -(i + 1)});
  }
  for (int i = 1; i < static_cast<int>(n); ++i) p.relators.push_back(Word(static_cast<std::size_t>(power), i));
  return p;
}

std::optional<std::uint64_t> abelianized_generator_order(const Presentation& p, std::size_t gen) {
  p.check();
  if (gen >= p.generators) throw std::out_of_range("abelianized_generator_order: no such generator");
  const std::size_t n = p.generators;
  // Columns reordered so that `gen` is last.
  std::vector<std::size_t> colmap(n);
  for (std::size_t i = 0, k = 0; i < n; ++i)
    if (i != gen) colmap[i] = k++;
  colmap[gen] = n - 1;
  std::vector<std::vector<Integer>> rows;
  for (const auto& r : p.relators) {
    std::vector<Integer> v(n, 0);
    for (int x : r) v[colmap[static_cast<std::size_t>(std::abs(x) - 1)]] += x > 0 ? 1 : -1;
    rows.push_back(std::move(v));
  }
  // Integer row echelon form by repeated Euclidean steps.
  std::size_t top = 0;
  for (std::size_t c = 0; c < n && top < rows.size(); ++c) {
    for (;;) {
      std::size_t best = rows.size();
      for (std::size_t r = top; r < rows.size(); ++r)
        if (rows[r][c] != 0 && (best == rows.size() || abs(rows[r][c]) < abs(rows[best][c]))) best = r;
      if (best == rows.size()) break;
      std::swap(rows[top], rows[best]);
      bool clean = true;
      for (std::size_t r = top + 1; r < rows.size(); ++r) {
        if (rows[r][c] == 0) continue;
        const Integer q = rows[r][c] / rows[top][c];
        for (std::size_t k = c; k < n; ++k) rows[r][k] -= q * rows[top][k];
        if (rows[r][c] != 0) clean = false;
      }
      if (clean) {
        if (c == n - 1) return static_cast<std::uint64_t>(abs(rows[top][c]));
        ++top;
        break;
      }
    }
  }
  return std::nullopt;
}

namespace {

// Least k >= 1 with a relator equal to x^{+-k} after cyclic reduction.
std::optional<std::uint64_t> power_relator(const Presentation& p, std::size_t gen) {
  std::optional<std::uint64_t> best;
  const int x = static_cast<int>(gen) + 1;
  for (const auto& r : p.relators) {
    Word w = cyclic_reduce(r);
    if (w.empty()) continue;
    if (std::all_of(w.begin(), w.end(), [&](int y) { return y == w.front() && std::abs(y) == x; }))
      if (!best || w.size() < *best) best = w.size();
  }
  return best;
}

}  // namespace

QuotientOrder group_order(const Presentation& p, std::size_t cap, std::size_t gen) {
  QuotientOrder q;
  auto direct = todd_coxeter(p, {}, cap);
  q.direct_cosets = direct.cosets;
  if (direct.complete()) {
    q.order = direct.cosets;
    q.method = "direct";
    return q;
  }
  q.method = "exceeded";
  if (gen >= p.generators) return q;
  auto sub = todd_coxeter(p, {{static_cast<int>(gen) + 1}}, cap);
  if (!sub.complete()) return q;
  q.subgroup_index = sub.cosets;
  // The order of x divides any k with x^k a relator and is divisible by its order
  // in the abelianization and by its order as a permutation of the cosets.
  auto k = power_relator(p, gen);
  if (!k) return q;
  std::uint64_t lower = abelianized_generator_order(p, gen).value_or(1);
  std::vector<bool> seen(sub.cosets, false);
  for (std::size_t a = 0; a < sub.cosets; ++a) {
    if (seen[a]) continue;
    std::uint64_t len = 0;
    for (std::size_t b = a; !seen[b]; b = static_cast<std::size_t>(sub.at(b, 2 * gen))) {
      seen[b] = true;
      ++len;
    }
    lower = std::lcm(lower, len);
    if (lower > *k) return q;
  }
  if (lower != *k) return q;
  q.generator_order = lower;
  q.order = sub.cosets * lower;
  q.method = "cyclic-subgroup";
  return q;
}

QuotientOrder quotient_order(std::size_t n, std::int64_t power, std::size_t cap) {
  return group_order(braid_power_presentation(n, power), cap, 0);
}

bool finiteness_criterion(std::int64_t n, std::int64_t power) { return (power - 2) * (n - 2) < 4; }

std::optional<std::uint64_t> expected_quotient_order(std::size_t n, std::int64_t power) {
  if (n < 2 || power < 1) return std::nullopt;
  if (power == 1) return 1;
  if (n == 2) return static_cast<std::uint64_t>(power);
  if (power == 2) {
    std::uint64_t f = 1;
    for (std::uint64_t k = 2; k <= n; ++k) f *= k;
    return f;
  }
  static const std::map<std::pair<std::size_t, std::int64_t>, std::uint64_t> kExceptional{
      {{3, 3}, 24}, {{3, 4}, 96}, {{3, 5}, 600}, {{4, 3}, 648}, {{5, 3}, 155520}};
  auto it = kExceptional.find({n, power});
  if (it == kExceptional.end()) return std::nullopt;
  return it->second;
}

CoxeterCell coxeter_cell(std::size_t n, std::int64_t power, std::size_t cap) {
  CoxeterCell cell;
  cell.n = n;
  cell.power = power;
  cell.finite = finiteness_criterion(static_cast<std::int64_t>(n), power);
  cell.expected = expected_quotient_order(n, power);
  const auto start = std::chrono::steady_clock::now();
  cell.result = quotient_order(n, power, cap);
  cell.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (cell.finite)
    cell.passed = cell.result.order.has_value() && (!cell.expected || *cell.result.order == *cell.expected);
  else
    cell.passed = !cell.result.order.has_value();
  return cell;
}

bool CoxeterReport::passed() const {
  return std::all_of(cells.begin(), cells.end(), [](const CoxeterCell& c) { return c.passed; });
}

CoxeterReport coxeter_table_verify(std::size_t cap) {
  CoxeterReport r;
  r.cap = cap;
  for (std::size_t n = 2; n <= 6; ++n)
    for (std::int64_t d = 2; d <= 6; ++d) r.cells.push_back(coxeter_cell(n, d, cap));
  return r;
}

}  // namespace twistlab
