#include "twistlab/plumbing.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace twistlab {

// ---------------------------------------------------------------------------
// PlumbingDiagram

std::size_t PlumbingDiagram::add_curve(std::string label, std::size_t points,
                                       std::optional<std::int64_t> power) {
  for (const auto& c : curves_)
    if (c.label == label) throw std::invalid_argument("duplicate curve label '" + label + "'");
  curves_.push_back({std::move(label), points, power});
  return curves_.size() - 1;
}

void PlumbingDiagram::add_crossing(PointRef a, PointRef b, int eps_ab, int eps_ba) {
  if (a.curve >= curves_.size() || b.curve >= curves_.size())
    throw std::out_of_range("add_crossing: unknown curve");
  crossings_.push_back({a, b, eps_ab, eps_ba});
}

void PlumbingDiagram::set_power(std::size_t curve, std::optional<std::int64_t> power) {
  curves_.at(curve).power = power;
}

std::size_t PlumbingDiagram::index_of(const std::string& label) const {
  for (std::size_t i = 0; i < curves_.size(); ++i)
    if (curves_[i].label == label) return i;
  throw std::invalid_argument("unknown curve '" + label + "'");
}

std::size_t PlumbingDiagram::intersection(std::size_t s, std::size_t t) const {
  if (s == t) return 0;
  std::size_t n = 0;
  for (const auto& c : crossings_)
    if ((c.first.curve == s && c.second.curve == t) || (c.first.curve == t && c.second.curve == s)) ++n;
  return n;
}

std::optional<PlumbingDiagram::Partner> PlumbingDiagram::partner(std::size_t curve,
                                                                 std::size_t index) const {
  for (std::size_t k = 0; k < crossings_.size(); ++k) {
    const auto& c = crossings_[k];
    if (c.first == PointRef{curve, index}) return Partner{k, c.second.curve, c.second.index, c.eps_first};
    if (c.second == PointRef{curve, index}) return Partner{k, c.first.curve, c.first.index, c.eps_second};
  }
  return std::nullopt;
}

bool operator==(const PlumbingDiagram& a, const PlumbingDiagram& b) {
  if (a.curves_.size() != b.curves_.size() || a.crossings_.size() != b.crossings_.size()) return false;
  for (std::size_t i = 0; i < a.curves_.size(); ++i) {
    const auto &x = a.curves_[i], &y = b.curves_[i];
    if (x.label != y.label || x.points != y.points || x.power != y.power) return false;
  }
  for (std::size_t i = 0; i < a.crossings_.size(); ++i) {
    const auto &x = a.crossings_[i], &y = b.crossings_[i];
    if (!(x.first == y.first) || !(x.second == y.second) || x.eps_first != y.eps_first ||
        x.eps_second != y.eps_second)
      return false;
  }
  return true;
}

namespace {

// Builds a diagram from curve labels and an ordered list of crossings (s, t). Each
// curve's points are numbered in the order given by `order[s]` (a list of crossing
// ids). The lower-numbered curve of each pair gets eps = +1.
PlumbingDiagram assemble(const std::vector<std::string>& labels,
                         const std::vector<std::pair<std::size_t, std::size_t>>& pairs,
                         const std::vector<std::vector<std::size_t>>& order,
                         const std::vector<int>& signs) {
  PlumbingDiagram d;
  for (std::size_t s = 0; s < labels.size(); ++s) d.add_curve(labels[s], order[s].size());
  auto position = [&](std::size_t s, std::size_t k) {
    auto it = std::find(order[s].begin(), order[s].end(), k);
    return static_cast<std::size_t>(it - order[s].begin()) + 1;
  };
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    auto [s, t] = pairs[k];
    d.add_crossing({s, position(s, k)}, {t, position(t, k)}, signs[k], -signs[k]);
  }
  return d;
}

}  // namespace

PlumbingDiagram PlumbingDiagram::chain(std::size_t n, std::size_t first_label) {
  if (n == 0) throw std::invalid_argument("chain: need at least one curve");
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back("c" + std::to_string(first_label + i));
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::vector<std::vector<std::size_t>> order(n);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    pairs.emplace_back(i, i + 1);
    order[i].push_back(i);
    order[i + 1].push_back(i);
  }
  // c_i meets c_{i-1} first, then c_{i+1}
  for (auto& o : order) std::sort(o.begin(), o.end());
  return assemble(labels, pairs, order, std::vector<int>(pairs.size(), 1));
}

PlumbingDiagram PlumbingDiagram::humphries(std::size_t n) {
  if (n < 4) throw std::invalid_argument("humphries: need n >= 4 so that c0 can meet c4");
  std::vector<std::string> labels{"c0"};
  for (std::size_t i = 1; i <= n; ++i) labels.push_back("c" + std::to_string(i));
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::vector<std::vector<std::size_t>> order(n + 1);
  for (std::size_t i = 1; i < n; ++i) pairs.emplace_back(i, i + 1);
  pairs.emplace_back(0, 4);
  const std::size_t c0_crossing = pairs.size() - 1;
  for (std::size_t i = 1; i <= n; ++i) {
    if (i > 1) order[i].push_back(i - 2);        // crossing with c_{i-1}
    if (i == 4) order[i].push_back(c0_crossing);  // then c0
    if (i < n) order[i].push_back(i - 1);        // then c_{i+1}
  }
  order[0].push_back(c0_crossing);
  return assemble(labels, pairs, order, std::vector<int>(pairs.size(), 1));
}

PlumbingDiagram PlumbingDiagram::random_connected(std::size_t curves, std::size_t extra_crossings,
                                                  std::uint64_t seed) {
  if (curves == 0) throw std::invalid_argument("random_connected: need at least one curve");
  if (curves == 1 && extra_crossings > 0)
    throw std::invalid_argument("random_connected: a single curve cannot cross itself");
  std::mt19937_64 rng(seed);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < curves; ++i) labels.push_back("x" + std::to_string(i + 1));
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t k = 1; k < curves; ++k)
    pairs.emplace_back(std::uniform_int_distribution<std::size_t>(0, k - 1)(rng), k);
  std::uniform_int_distribution<std::size_t> pick(0, curves - 1);
  for (std::size_t e = 0; e < extra_crossings; ++e) {
    std::size_t s = pick(rng), t = pick(rng);
    while (t == s) t = pick(rng);
    pairs.emplace_back(std::min(s, t), std::max(s, t));
  }
  std::vector<std::vector<std::size_t>> order(curves);
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    order[pairs[k].first].push_back(k);
    order[pairs[k].second].push_back(k);
  }
  for (auto& o : order) std::shuffle(o.begin(), o.end(), rng);
  std::vector<int> signs;
  for (std::size_t k = 0; k < pairs.size(); ++k) signs.push_back((rng() & 1) ? 1 : -1);
  return assemble(labels, pairs, order, signs);
}

ValidationReport validate(const PlumbingDiagram& diagram) {
  ValidationReport r;
  const auto& curves = diagram.curves();
  const std::size_t n = curves.size();
  std::vector<std::vector<int>> seen(n);
  for (std::size_t s = 0; s < n; ++s) {
    seen[s].assign(curves[s].points + 1, 0);
    if (curves[s].power && *curves[s].power == 0)
      r.violations.push_back("curve " + curves[s].label + ": power must be non-zero");
  }
  auto name = [&](PointRef p) {
    return "p_" + curves.at(p.curve).label + "^" + std::to_string(p.index);
  };
  std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
  for (std::size_t k = 0; k < diagram.crossings().size(); ++k) {
    const auto& c = diagram.crossings()[k];
    const std::string tag = "crossing " + std::to_string(k) + ": ";
    if (c.first.curve == c.second.curve) {
      r.violations.push_back(tag + "both points lie on curve " + curves[c.first.curve].label);
      continue;
    }
    bool ok = true;
    for (PointRef p : {c.first, c.second}) {
      if (p.index == 0) {
        r.violations.push_back(tag + name(p) + " is a base point and cannot be an intersection");
        ok = false;
      } else if (p.index > curves[p.curve].points) {
        r.violations.push_back(tag + name(p) + " is out of range (d = " +
                               std::to_string(curves[p.curve].points) + ")");
        ok = false;
      } else if (++seen[p.curve][p.index] == 2) {
        r.violations.push_back(tag + name(p) + " is matched more than once");
      }
    }
    for (int e : {c.eps_first, c.eps_second})
      if (e != 1 && e != -1) {
        r.violations.push_back(tag + "sign must be +1 or -1, got " + std::to_string(e));
        ok = false;
      }
    if (ok) adj[c.first.curve][c.second.curve] = adj[c.second.curve][c.first.curve] = true;
  }
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t i = 1; i <= curves[s].points; ++i)
      if (seen[s][i] == 0) r.violations.push_back(name({s, i}) + " is not matched");

  std::vector<int> comp(n, -1);
  for (std::size_t s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    r.components.emplace_back();
    std::vector<std::size_t> stack{s};
    comp[s] = static_cast<int>(r.components.size() - 1);
    while (!stack.empty()) {
      std::size_t u = stack.back();
      stack.pop_back();
      r.components.back().push_back(u);
      for (std::size_t v = 0; v < n; ++v)
        if (adj[u][v] && comp[v] < 0) {
          comp[v] = comp[s];
          stack.push_back(v);
        }
    }
    std::sort(r.components.back().begin(), r.components.back().end());
  }
  r.connected = r.components.size() <= 1;
  return r;
}

CommutationGraph graph_from_curves(const PlumbingDiagram& diagram) {
  CommutationGraph g;
  for (const auto& c : diagram.curves()) g.add_vertex(c.label);
  for (std::size_t a = 0; a < diagram.curve_count(); ++a)
    for (std::size_t b = a + 1; b < diagram.curve_count(); ++b)
      if (diagram.intersection(a, b) == 0) g.add_edge(a, b);
  return g;
}

// ---------------------------------------------------------------------------
// Groupoid

Groupoid::Groupoid(PlumbingDiagram diagram) : diagram_(std::move(diagram)) {
  auto report = validate(diagram_);
  if (!report.valid())
    throw std::invalid_argument("invalid diagram: " + report.violations.front());
  const std::size_t n = diagram_.curve_count();
  object_count_ = n + diagram_.crossings().size();
  point_object_.resize(n);
  partners_.resize(n);
  for (std::size_t s = 0; s < n; ++s) {
    const std::size_t d = diagram_.curves()[s].points;
    point_object_[s].assign(d + 1, s);
    partners_[s].resize(d);
  }
  for (std::size_t k = 0; k < diagram_.crossings().size(); ++k) {
    const auto& c = diagram_.crossings()[k];
    point_object_[c.first.curve][c.first.index] = n + k;
    point_object_[c.second.curve][c.second.index] = n + k;
    partners_[c.first.curve][c.first.index - 1] = {k, c.second.curve, c.second.index, c.eps_first};
    partners_[c.second.curve][c.second.index - 1] = {k, c.first.curve, c.first.index, c.eps_second};
  }
  for (std::size_t s = 0; s < n; ++s) gens_.push_back({GeneratorKind::kLoop, s, 0, s, s});
  arc_offset_.resize(n);
  for (std::size_t s = 0; s < n; ++s) {
    arc_offset_[s] = gens_.size();
    for (std::size_t i = 0; i < diagram_.curves()[s].points; ++i)
      gens_.push_back({GeneratorKind::kArc, s, i, point_object_[s][i], point_object_[s][i + 1]});
  }
}

std::size_t Groupoid::arc(std::size_t curve, std::size_t i) const {
  if (curve >= diagram_.curve_count() || i >= diagram_.curves()[curve].points)
    throw std::out_of_range("no admissible arc (" + std::to_string(curve) + ", " + std::to_string(i) + ")");
  return arc_offset_[curve] + i;
}

std::size_t Groupoid::point(std::size_t curve, std::size_t index) const {
  if (curve >= point_object_.size() || index >= point_object_[curve].size())
    throw std::out_of_range("no marked point (" + std::to_string(curve) + ", " + std::to_string(index) + ")");
  return point_object_[curve][index];
}

const PlumbingDiagram::Partner& Groupoid::partner(std::size_t curve, std::size_t index) const {
  if (curve >= partners_.size() || index == 0 || index > partners_[curve].size())
    throw std::out_of_range("no intersection point (" + std::to_string(curve) + ", " +
                            std::to_string(index) + ")");
  return partners_[curve][index - 1];
}

std::size_t Groupoid::letter_source(Letter l) const {
  const auto& g = gens_.at(l.gen);
  return l.dir > 0 ? g.source : g.target;
}

std::size_t Groupoid::letter_target(Letter l) const {
  const auto& g = gens_.at(l.gen);
  return l.dir > 0 ? g.target : g.source;
}

GroupoidWord Groupoid::word(std::size_t gen, int power) const {
  const auto& g = gens_.at(gen);
  if (power != 0 && g.source != g.target && power != 1 && power != -1)
    throw std::invalid_argument("only loops can be raised to powers other than +-1");
  GroupoidWord w;
  w.source = power >= 0 ? g.source : g.target;
  w.target = power >= 0 ? g.target : g.source;
  if (power == 0) w.target = w.source;
  const auto dir = static_cast<std::int8_t>(power >= 0 ? 1 : -1);
  for (int k = 0; k < std::abs(power); ++k) w.letters.push_back({static_cast<std::uint32_t>(gen), dir});
  return w;
}

std::string Groupoid::to_string(const GroupoidWord& w) const {
  if (w.letters.empty()) return "1@" + std::to_string(w.source);
  std::ostringstream os;
  for (std::size_t k = 0; k < w.letters.size(); ++k) {
    const auto& g = gens_.at(w.letters[k].gen);
    if (k) os << ' ';
    const auto& label = diagram_.curves()[g.curve].label;
    if (g.kind == GeneratorKind::kLoop)
      os << "alpha_" << label;
    else
      os << label << ':' << g.arc;
    if (w.letters[k].dir < 0) os << "^-1";
  }
  return os.str();
}

namespace {

inline bool cancels(Letter a, Letter b) { return a.gen == b.gen && a.dir == -b.dir; }

// Appends letters to a reduced word, cancelling at the junction.
void push_reduced(std::vector<Letter>& out, Letter l) {
  if (!out.empty() && cancels(out.back(), l))
    out.pop_back();
  else
    out.push_back(l);
}

}  // namespace

GroupoidWord free_reduce(const Groupoid& g, const GroupoidWord& w) {
  std::size_t at = w.source;
  GroupoidWord r{w.source, w.target, {}};
  r.letters.reserve(w.letters.size());
  for (std::size_t k = 0; k < w.letters.size(); ++k) {
    const Letter l = w.letters[k];
    if (l.gen >= g.generator_count() || (l.dir != 1 && l.dir != -1))
      throw std::invalid_argument("letter " + std::to_string(k) + " is not a generator");
    if (g.letter_source(l) != at)
      throw std::invalid_argument("letter " + std::to_string(k) + " is not composable");
    at = g.letter_target(l);
    push_reduced(r.letters, l);
  }
  if (at != w.target) throw std::invalid_argument("word does not end at its target");
  return r;
}

GroupoidWord compose(const Groupoid& g, const GroupoidWord& u, const GroupoidWord& v) {
  if (u.target != v.source) throw std::invalid_argument("compose: target(u) != source(v)");
  GroupoidWord w{u.source, v.target, u.letters};
  w.letters.insert(w.letters.end(), v.letters.begin(), v.letters.end());
  return free_reduce(g, w);
}

GroupoidWord inverse(const GroupoidWord& w) {
  GroupoidWord r{w.target, w.source, {}};
  r.letters.reserve(w.letters.size());
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it)
    r.letters.push_back({it->gen, static_cast<std::int8_t>(-it->dir)});
  return r;
}

GroupoidWord power(const Groupoid& g, const GroupoidWord& loop, std::int64_t k) {
  if (loop.source != loop.target) throw std::invalid_argument("power: word is not a loop");
  const GroupoidWord base = k >= 0 ? free_reduce(g, loop) : inverse(free_reduce(g, loop));
  GroupoidWord r = g.identity(loop.source);
  for (std::int64_t i = 0; i < (k < 0 ? -k : k); ++i)
    for (Letter l : base.letters) push_reduced(r.letters, l);
  return r;
}

namespace {

GroupoidWord arc_chain(const Groupoid& g, std::size_t t, std::size_t j) {
  GroupoidWord w = g.identity(g.point(t, 0));
  for (std::size_t i = 0; i < j; ++i) w.letters.push_back({static_cast<std::uint32_t>(g.arc(t, i)), 1});
  w.target = g.point(t, j);
  return w;
}

}  // namespace

GroupoidWord loop_conjugate(const Groupoid& g, std::size_t t, std::size_t j) {
  if (t >= g.diagram().curve_count()) throw std::out_of_range("loop_conjugate: unknown curve");
  if (j > g.diagram().curves()[t].points) throw std::out_of_range("loop_conjugate: index out of range");
  GroupoidWord chain = arc_chain(g, t, j);
  GroupoidWord w = inverse(chain);
  w.letters.push_back({static_cast<std::uint32_t>(g.loop(t)), 1});
  w.letters.insert(w.letters.end(), chain.letters.begin(), chain.letters.end());
  w.source = w.target = g.point(t, j);
  // chain^{-1} alpha chain read as a path p_t^j -> p_t^0 -> p_t^0 -> p_t^j
  return w;
}

GroupoidWord twist_generator(const Groupoid& g, std::size_t t, std::int64_t m, std::size_t gen) {
  if (gen >= g.generator_count()) throw std::out_of_range("twist_generator: generator not in diagram");
  if (t >= g.diagram().curve_count()) throw std::out_of_range("twist_generator: unknown curve");
  const auto& e = g.generator(gen);
  GroupoidWord w = g.word(gen);
  if (m == 0 || e.curve == t) return w;
  if (e.kind == GeneratorKind::kArc) {
    const auto& p = g.partner(e.curve, e.arc + 1);
    if (p.curve != t) return w;
    return compose(g, w, power(g, loop_conjugate(g, t, p.index), m * p.eps));
  }
  if (g.diagram().intersection(e.curve, t) == 0) return w;
  // alpha_s = chain * closing arc, and the closing arc ends at the base point, so
  // only the chain moves: T(alpha_s) = T(chain) chain^{-1} alpha_s.
  const std::size_t d = g.diagram().curves()[e.curve].points;
  GroupoidWord moved = g.identity(g.point(e.curve, 0));
  for (std::size_t i = 0; i < d; ++i) {
    auto img = twist_generator(g, t, m, g.arc(e.curve, i));
    for (Letter l : img.letters) push_reduced(moved.letters, l);
  }
  moved.target = g.point(e.curve, d);
  GroupoidWord back = inverse(arc_chain(g, e.curve, d));
  for (Letter l : back.letters) push_reduced(moved.letters, l);
  push_reduced(moved.letters, {static_cast<std::uint32_t>(gen), 1});
  moved.target = e.target;
  return moved;
}

GroupoidAutomorphism GroupoidAutomorphism::identity(const Groupoid& g) {
  GroupoidAutomorphism a;
  for (std::size_t k = 0; k < g.generator_count(); ++k) a.images_.push_back(g.word(k));
  return a;
}

GroupoidAutomorphism GroupoidAutomorphism::twist(const Groupoid& g, std::size_t t, std::int64_t m) {
  GroupoidAutomorphism a;
  for (std::size_t k = 0; k < g.generator_count(); ++k) a.images_.push_back(twist_generator(g, t, m, k));
  return a;
}

GroupoidWord GroupoidAutomorphism::apply(const Groupoid& g, const GroupoidWord& w,
                                         std::size_t max_letters) const {
  (void)g;
  GroupoidWord r{w.source, w.target, {}};
  for (Letter l : w.letters) {
    const auto& img = images_.at(l.gen).letters;
    if (l.dir > 0)
      for (Letter x : img) push_reduced(r.letters, x);
    else
      for (auto it = img.rbegin(); it != img.rend(); ++it)
        push_reduced(r.letters, {it->gen, static_cast<std::int8_t>(-it->dir)});
    if (r.letters.size() > max_letters)
      throw std::length_error("automorphism image exceeds " + std::to_string(max_letters) + " letters");
  }
  return r;
}

std::vector<std::int64_t> uniform_powers(const PlumbingDiagram& d, std::int64_t power) {
  return std::vector<std::int64_t>(d.curve_count(), power);
}

std::vector<std::int64_t> diagram_powers(const PlumbingDiagram& d, std::int64_t fallback) {
  std::vector<std::int64_t> p;
  for (const auto& c : d.curves()) p.push_back(c.power.value_or(fallback));
  return p;
}

namespace {

class TwistCache {
 public:
  explicit TwistCache(const Groupoid& g) : g_(g) {}
  const GroupoidAutomorphism& get(std::size_t t, std::int64_t m) {
    auto key = std::make_pair(t, m);
    auto it = cache_.find(key);
    if (it == cache_.end()) it = cache_.emplace(key, GroupoidAutomorphism::twist(g_, t, m)).first;
    return it->second;
  }

 private:
  const Groupoid& g_;
  std::map<std::pair<std::size_t, std::int64_t>, GroupoidAutomorphism> cache_;
};

void check_word_fits(const Groupoid& g, const RaagWord& w, const std::vector<std::int64_t>& powers) {
  if (powers.size() != g.diagram().curve_count())
    throw std::invalid_argument("power list does not match the curve count");
  for (const auto& s : w.syllables())
    if (s.vertex >= g.diagram().curve_count())
      throw std::invalid_argument("word uses vertex " + std::to_string(s.vertex) + " outside the diagram");
}

}  // namespace

GroupoidWord act(const Groupoid& g, const RaagWord& w, const GroupoidWord& x,
                 const std::vector<std::int64_t>& powers, std::size_t max_letters) {
  check_word_fits(g, w, powers);
  TwistCache cache(g);
  GroupoidWord y = free_reduce(g, x);
  for (const auto& s : w.syllables())
    y = cache.get(s.vertex, powers[s.vertex] * s.exponent).apply(g, y, max_letters);
  return y;
}

GroupoidWord act(const Groupoid& g, const RaagWord& w, const GroupoidWord& x, std::int64_t power) {
  return act(g, w, x, uniform_powers(g.diagram(), power));
}

// ---------------------------------------------------------------------------
// Syllables

SyllableDecomposition decompose(const Groupoid& g, const GroupoidWord& x) {
  SyllableDecomposition d;
  GroupoidWord mu = g.identity(x.source);
  std::size_t at = x.source;
  for (Letter l : x.letters) {
    const auto& gen = g.generator(l.gen);
    if (gen.kind == GeneratorKind::kLoop) {
      if (!d.loops.empty() && mu.letters.empty() && d.loops.back().curve == gen.curve) {
        d.loops.back().exponent += l.dir;
        if (d.loops.back().exponent == 0) {  // only for unreduced input
          d.loops.pop_back();
          mu = d.arcs.back();
          d.arcs.pop_back();
        }
      } else {
        mu.target = at;
        d.arcs.push_back(std::move(mu));
        d.loops.push_back({gen.curve, l.dir});
        mu = g.identity(at);
      }
    } else {
      mu.letters.push_back(l);
    }
    at = g.letter_target(l);
  }
  mu.target = at;
  d.arcs.push_back(std::move(mu));
  return d;
}

GroupoidWord reassemble(const Groupoid& g, const SyllableDecomposition& d) {
  if (d.arcs.size() != d.loops.size() + 1) throw std::invalid_argument("reassemble: malformed decomposition");
  GroupoidWord w = d.arcs.front();
  for (std::size_t i = 0; i < d.loops.size(); ++i) {
    w = compose(g, w, g.word(g.loop(d.loops[i].curve), static_cast<int>(d.loops[i].exponent)));
    w = compose(g, w, d.arcs[i + 1]);
  }
  return w;
}

bool has_square(const Groupoid& g, const GroupoidWord& x, std::size_t s) {
  for (const auto& l : decompose(g, x).loops)
    if (l.curve == s && (l.exponent >= 2 || l.exponent <= -2)) return true;
  return false;
}

TypeResult is_type(const Groupoid& g, const GroupoidWord& x, std::size_t t, std::int64_t p) {
  auto d = decompose(g, x);
  TypeResult r;
  r.matches = true;
  for (const auto& l : d.loops)
    if (l.curve != t || p == 0 || l.exponent % p != 0) r.matches = false;
  GroupoidWord mu = d.arcs.front();
  for (std::size_t i = 1; i < d.arcs.size(); ++i) {
    GroupoidWord next = d.arcs[i];
    if (mu.target != next.source) {  // only when loops sit on different curves
      r.matches = false;
      break;
    }
    mu = compose(g, mu, next);
  }
  r.residual = r.matches ? mu : GroupoidWord{x.source, x.source, {}};
  return r;
}

// ---------------------------------------------------------------------------
// Random inputs

std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

GroupoidWord random_groupoid_word(const Groupoid& g, std::size_t max_len, std::mt19937_64& rng) {
  std::vector<std::vector<Letter>> out(g.object_count());
  for (std::size_t k = 0; k < g.generator_count(); ++k) {
    const auto& e = g.generator(k);
    out[e.source].push_back({static_cast<std::uint32_t>(k), 1});
    out[e.target].push_back({static_cast<std::uint32_t>(k), -1});
  }
  std::size_t at = std::uniform_int_distribution<std::size_t>(0, g.object_count() - 1)(rng);
  const std::size_t len = max_len == 0 ? 0 : std::uniform_int_distribution<std::size_t>(1, max_len)(rng);
  GroupoidWord w = g.identity(at);
  for (std::size_t k = 0; k < len; ++k) {
    std::vector<Letter> options;
    for (Letter l : out[at])
      if (w.letters.empty() || !cancels(w.letters.back(), l)) options.push_back(l);
    if (options.empty()) break;
    Letter l = options[std::uniform_int_distribution<std::size_t>(0, options.size() - 1)(rng)];
    w.letters.push_back(l);
    at = g.letter_target(l);
  }
  w.target = at;
  return w;
}

RaagWord random_m_reduced_word(const CommutationGraph& graph, std::size_t max_syllables,
                               std::mt19937_64& rng) {
  if (graph.vertex_count() == 0 || max_syllables == 0)
    throw std::invalid_argument("random_m_reduced_word: empty graph or zero length");
  static constexpr std::int64_t kExponents[] = {-2, -1, 1, 2};
  std::uniform_int_distribution<std::size_t> vertex(0, graph.vertex_count() - 1);
  std::uniform_int_distribution<std::size_t> exponent(0, 3);
  std::uniform_int_distribution<std::size_t> length(1, max_syllables);
  for (;;) {
    std::vector<Syllable> s;
    const std::size_t n = length(rng);
    for (std::size_t i = 0; i < n; ++i) s.push_back({vertex(rng), kExponents[exponent(rng)]});
    RaagWord w = m_reduce(RaagWord(std::move(s)), graph);
    if (!w.empty()) return w;
  }
}

// ---------------------------------------------------------------------------
// LinearShadow

namespace {

using Mat = LinearShadow::Mat;
constexpr std::uint64_t kP = LinearShadow::kPrime;

std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e) {
  std::uint64_t r = 1;
  b %= kP;
  while (e) {
    if (e & 1) r = r * b % kP;
    b = b * b % kP;
    e >>= 1;
  }
  return r;
}

}  // namespace

Mat LinearShadow::multiply(const Mat& a, const Mat& b) {
  return {(a[0] * b[0] + a[1] * b[2]) % kP, (a[0] * b[1] + a[1] * b[3]) % kP,
          (a[2] * b[0] + a[3] * b[2]) % kP, (a[2] * b[1] + a[3] * b[3]) % kP};
}

Mat LinearShadow::invert(const Mat& a) {
  // determinant one
  return {a[3], (kP - a[1]) % kP, (kP - a[2]) % kP, a[0]};
}

LinearShadow::LinearShadow(const Groupoid& g, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> entry(0, kP - 1);
  std::vector<std::size_t> parent(g.object_count());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  images_.resize(g.generator_count());
  for (std::size_t k = 0; k < g.generator_count(); ++k) {
    const auto& e = g.generator(k);
    if (e.kind == GeneratorKind::kArc) {
      auto a = find(e.source), b = find(e.target);
      if (a != b) {
        parent[a] = b;
        images_[k] = kIdentity;
        continue;
      }
    }
    std::uint64_t a = 0;
    while (a == 0) a = entry(rng);
    const std::uint64_t b = entry(rng), c = entry(rng);
    const std::uint64_t d = (1 + b * c % kP) % kP * pow_mod(a, kP - 2) % kP;
    images_[k] = {a, b, c, d};
  }
  for (const auto& m : images_) inverses_.push_back(invert(m));
}

Mat LinearShadow::evaluate(const GroupoidWord& w) const {
  Mat r = kIdentity;
  for (Letter l : w.letters) r = multiply(r, l.dir > 0 ? images_.at(l.gen) : inverses_.at(l.gen));
  return r;
}

std::vector<Mat> LinearShadow::pull_back(const Groupoid& g, const RaagWord& w,
                                         const std::vector<std::int64_t>& powers) const {
  check_word_fits(g, w, powers);
  TwistCache cache(g);
  std::vector<Mat> cur = images_;
  const auto& syl = w.syllables();
  for (std::size_t k = syl.size(); k-- > 0;) {
    const auto& aut = cache.get(syl[k].vertex, powers[syl[k].vertex] * syl[k].exponent);
    std::vector<Mat> next(cur.size());
    for (std::size_t e = 0; e < cur.size(); ++e) {
      Mat r = kIdentity;
      for (Letter l : aut.image(e).letters) r = multiply(r, l.dir > 0 ? cur[l.gen] : invert(cur[l.gen]));
      next[e] = r;
    }
    cur = std::move(next);
  }
  return cur;
}

// ---------------------------------------------------------------------------
// Certificate drivers

namespace {

void require_connected(const PlumbingDiagram& diagram, const char* who) {
  auto v = validate(diagram);
  if (!v.valid()) throw std::invalid_argument(std::string(who) + ": invalid diagram: " + v.violations.front());
  if (!v.connected) throw std::invalid_argument(std::string(who) + ": intersection graph is disconnected");
}

constexpr std::size_t kShadowCount = 3;
constexpr std::size_t kExactBudget = std::size_t{1} << 20;

}  // namespace

FaithfulnessReport faithfulness_check(const PlumbingDiagram& diagram, std::int64_t power,
                                      std::size_t trials, std::size_t max_len, std::uint64_t seed) {
  require_connected(diagram, "faithfulness_check");
  Groupoid g(diagram);
  const auto powers = diagram_powers(diagram, power);
  for (auto p : powers)
    if (p >= -1 && p <= 1) throw std::invalid_argument("faithfulness_check: every power needs |D| >= 2");
  if (diagram.curve_count() < 2) throw std::invalid_argument("faithfulness_check: need two crossing curves");
  const auto graph = graph_from_curves(diagram);
  std::vector<LinearShadow> shadows;
  for (std::size_t k = 0; k < kShadowCount; ++k) shadows.emplace_back(g, seed * 0x9E3779B97F4A7C15ULL + k + 1);

  FaithfulnessReport r;
  for (std::size_t trial = 0; trial < trials; ++trial) {
    auto rng = trial_rng(seed, trial);
    RaagWord w = random_m_reduced_word(graph, max_len, rng);
    const std::size_t s = w.syllables().back().vertex;  // always a final letter
    std::size_t t = 0;
    while (diagram.intersection(s, t) == 0) ++t;
    ++r.trials;
    bool certified = false;
    for (const auto& sh : shadows) {
      if (sh.pull_back(g, w, powers)[g.loop(t)] != sh.generator_image(g.loop(t))) {
        certified = true;
        break;
      }
    }
    if (certified) {
      ++r.certified_by_shadow;
      continue;
    }
    const GroupoidWord alpha = g.word(g.loop(t));
    try {
      if (act(g, w, alpha, powers, kExactBudget) == alpha)
        r.counterexamples.push_back({w.to_string(graph), diagram.curves()[t].label, "acts trivially"});
      else
        ++r.certified_exactly;
    } catch (const std::length_error&) {
      ++r.inconclusive;
    }
  }
  return r;
}

SquarePropagationReport square_propagation_check(const PlumbingDiagram& diagram, std::int64_t power,
                                                 std::size_t trials, std::uint64_t seed) {
  require_connected(diagram, "square_propagation_check");
  Groupoid g(diagram);
  const std::size_t n = diagram.curve_count();
  const std::int64_t top = std::max<std::int64_t>(3, power < 0 ? -power : power);
  SquarePropagationReport r;
  TwistCache cache(g);

  auto check = [&](std::size_t t, std::int64_t m, const GroupoidWord& x) {
    ++r.trials;
    GroupoidWord y = cache.get(t, m).apply(g, x);
    for (std::size_t s = 0; s < n; ++s) {
      if (!has_square(g, y, s)) continue;
      ++r.squares_observed;
      if (s == t || (diagram.intersection(s, t) == 0 && has_square(g, x, s))) continue;
      r.violations.push_back("T_" + diagram.curves()[t].label + "^" + std::to_string(m) + "(" +
                             g.to_string(x) + ") has a square in alpha_" + diagram.curves()[s].label);
    }
  };

  for (std::size_t trial = 0; trial < trials; ++trial) {
    auto rng = trial_rng(seed, trial);
    const std::size_t t = std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
    std::int64_t m = std::uniform_int_distribution<std::int64_t>(2, top)(rng);
    if (rng() & 1) m = -m;
    GroupoidWord x = random_groupoid_word(g, 12, rng);
    for (int attempt = 0; attempt < 1000 && has_square(g, x, t); ++attempt) x = random_groupoid_word(g, 12, rng);
    if (has_square(g, x, t)) continue;
    check(t, m, x);
  }
  return r;
}

CommutationReport commutation_soundness_check(const PlumbingDiagram& diagram, std::int64_t power,
                                              std::size_t samples_per_pair, std::uint64_t seed) {
  auto v = validate(diagram);
  if (!v.valid()) throw std::invalid_argument("commutation_soundness_check: invalid diagram");
  Groupoid g(diagram);
  const auto powers = diagram_powers(diagram, power);
  const auto graph = graph_from_curves(diagram);
  CommutationReport r;
  std::uint64_t stream = 0;
  for (auto [a, b] : graph.edges()) {
    ++r.pairs;
    const RaagWord ab({{a, 1}, {b, 1}}), ba({{b, 1}, {a, 1}});
    std::vector<GroupoidWord> xs;
    for (std::size_t k = 0; k < g.generator_count(); ++k) xs.push_back(g.word(k));
    auto rng = trial_rng(seed, stream++);
    for (std::size_t k = 0; k < samples_per_pair; ++k) xs.push_back(random_groupoid_word(g, 12, rng));
    for (const auto& x : xs) {
      ++r.checks;
      if (act(g, ab, x, powers) != act(g, ba, x, powers))
        r.failures.push_back(diagram.curves()[a].label + "," + diagram.curves()[b].label + " on " +
                             g.to_string(x));
    }
  }
  return r;
}

}  // namespace twistlab
