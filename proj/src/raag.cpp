#include "twistlab/raag.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace twistlab {

CommutationGraph::CommutationGraph(std::vector<std::string> labels) {
  for (auto& l : labels) add_vertex(std::move(l));
}

std::size_t CommutationGraph::add_vertex(std::string label) {
  if (std::find(labels_.begin(), labels_.end(), label) != labels_.end())
    throw std::invalid_argument("duplicate vertex label '" + label + "'");
  labels_.push_back(std::move(label));
  for (auto& row : adj_) row.push_back(false);
  adj_.emplace_back(labels_.size(), false);
  return labels_.size() - 1;
}

void CommutationGraph::add_edge(std::size_t a, std::size_t b) {
  if (a >= vertex_count() || b >= vertex_count()) throw std::out_of_range("add_edge: unknown vertex");
  if (a == b) throw std::invalid_argument("add_edge: self-loops are not allowed");
  adj_[a][b] = adj_[b][a] = true;
}

std::size_t CommutationGraph::index_of(const std::string& label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) throw std::invalid_argument("unknown vertex '" + label + "'");
  return static_cast<std::size_t>(it - labels_.begin());
}

bool CommutationGraph::commute(std::size_t a, std::size_t b) const { return a != b && adj_[a][b]; }

std::size_t CommutationGraph::edge_count() const { return edges().size(); }

std::vector<std::pair<std::size_t, std::size_t>> CommutationGraph::edges() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t a = 0; a < vertex_count(); ++a)
    for (std::size_t b = a + 1; b < vertex_count(); ++b)
      if (adj_[a][b]) out.emplace_back(a, b);
  return out;
}

CommutationGraph CommutationGraph::complete(std::size_t n) {
  CommutationGraph g = edgeless(n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) g.add_edge(a, b);
  return g;
}

CommutationGraph CommutationGraph::edgeless(std::size_t n) {
  CommutationGraph g;
  for (std::size_t a = 0; a < n; ++a) g.add_vertex("v" + std::to_string(a));
  return g;
}

RaagWord::RaagWord(std::vector<Syllable> syllables) {
  for (const auto& s : syllables) {
    if (s.exponent == 0) continue;
    if (!syllables_.empty() && syllables_.back().vertex == s.vertex) {
      syllables_.back().exponent += s.exponent;
      if (syllables_.back().exponent == 0) syllables_.pop_back();
    } else {
      syllables_.push_back(s);
    }
  }
}

std::int64_t RaagWord::letter_length() const {
  std::int64_t n = 0;
  for (const auto& s : syllables_) n += s.exponent < 0 ? -s.exponent : s.exponent;
  return n;
}

RaagWord RaagWord::then(const RaagWord& next) const {
  std::vector<Syllable> all = syllables_;
  all.insert(all.end(), next.syllables_.begin(), next.syllables_.end());
  return RaagWord(std::move(all));
}

RaagWord RaagWord::inverse() const {
  std::vector<Syllable> inv(syllables_.rbegin(), syllables_.rend());
  for (auto& s : inv) s.exponent = -s.exponent;
  return RaagWord(std::move(inv));
}

std::string RaagWord::to_string(const CommutationGraph& g) const {
  if (syllables_.empty()) return "1";
  std::ostringstream os;
  for (std::size_t i = 0; i < syllables_.size(); ++i) {
    if (i) os << ' ';
    os << g.label(syllables_[i].vertex) << '^' << syllables_[i].exponent;
  }
  return os.str();
}

namespace {

void require_vertices(const RaagWord& w, const CommutationGraph& g) {
  for (const auto& s : w.syllables())
    if (s.vertex >= g.vertex_count())
      throw std::invalid_argument("word uses unknown vertex " + std::to_string(s.vertex));
}

}  // namespace

bool is_m_reduced(const RaagWord& w, const CommutationGraph& g) {
  require_vertices(w, g);
  const auto& s = w.syllables();
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i].exponent == 0) return false;
    for (std::size_t j = i + 1; j < s.size(); ++j) {
      if (s[j].vertex != s[i].vertex) continue;
      bool separated = false;
      for (std::size_t k = i + 1; k < j && !separated; ++k)
        separated = s[k].vertex != s[i].vertex && !g.commute(s[k].vertex, s[i].vertex);
      if (!separated) return false;
      break;  // later occurrences are checked from j
    }
  }
  return true;
}

RaagWord m_reduce(const RaagWord& w, const CommutationGraph& g) {
  require_vertices(w, g);
  std::vector<Syllable> s = w.syllables();
  // Move each syllable left across commuting syllables; when it meets a syllable on
  // the same vertex, merge into it. Repeat until nothing merges.
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t j = 1; j < s.size() && !changed; ++j) {
      for (std::size_t i = j; i-- > 0;) {
        if (s[i].vertex == s[j].vertex) {
          s[i].exponent += s[j].exponent;
          s.erase(s.begin() + static_cast<std::ptrdiff_t>(j));
          if (s[i].exponent == 0) s.erase(s.begin() + static_cast<std::ptrdiff_t>(i));
          changed = true;
          break;
        }
        if (!g.commute(s[i].vertex, s[j].vertex)) break;
      }
    }
  }
  return RaagWord(std::move(s));
}

bool is_identity(const RaagWord& w, const CommutationGraph& g) { return m_reduce(w, g).empty(); }

bool ends_in(const RaagWord& w, std::size_t s, const CommutationGraph& g) {
  if (!is_m_reduced(w, g)) throw std::invalid_argument("ends_in: word is not M-reduced");
  const auto& syl = w.syllables();
  for (std::size_t i = syl.size(); i-- > 0;) {
    if (syl[i].vertex == s) return true;
    if (!g.commute(syl[i].vertex, s)) return false;
  }
  return false;
}

bool words_equal(const RaagWord& a, const RaagWord& b, const CommutationGraph& g) {
  return is_identity(a.then(b.inverse()), g);
}

}  // namespace twistlab
