#include "qpmut/potential.hpp"

#include <algorithm>

#include "qpmut/errors.hpp"

namespace qpmut {

void add_term(PathSum& sum, const Path& path, const Rational& coeff) {
  if (coeff == 0) return;
  auto [it, inserted] = sum.emplace(path, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0) sum.erase(it);
  }
}

CyclicWord CyclicWord::from_arrows(std::vector<ArrowId> arrows) {
  CyclicWord w;
  const std::size_t n = arrows.size();
  std::size_t best = 0;
  for (std::size_t r = 1; r < n; ++r) {
    for (std::size_t k = 0; k < n; ++k) {
      const ArrowId& lhs = arrows[(r + k) % n];
      const ArrowId& rhs = arrows[(best + k) % n];
      if (lhs != rhs) {
        if (lhs < rhs) best = r;
        break;
      }
    }
  }
  std::rotate(arrows.begin(), arrows.begin() + static_cast<std::ptrdiff_t>(best), arrows.end());
  w.arrows_ = std::move(arrows);
  return w;
}

bool CyclicWord::contains(const ArrowId& a) const {
  return std::find(arrows_.begin(), arrows_.end(), a) != arrows_.end();
}

std::size_t CyclicWord::occurrences(const ArrowId& a) const {
  return static_cast<std::size_t>(std::count(arrows_.begin(), arrows_.end(), a));
}

CyclicWord canonicalize_word(const Quiver& q, std::span<const ArrowId> raw) {
  if (raw.empty()) fail(ErrorKind::Composition, "empty cyclic word");
  const std::size_t n = raw.size();
  for (std::size_t k = 0; k < n; ++k) {
    const Arrow& cur = q.arrow(raw[k]);
    const Arrow& next = q.arrow(raw[(k + 1) % n]);
    if (cur.tgt != next.src)
      fail(ErrorKind::Composition, "arrows \"" + cur.id + "\" (target " + std::to_string(cur.tgt) + ") and \"" +
                                       next.id + "\" (source " + std::to_string(next.src) +
                                       ") are not composable");
  }
  return CyclicWord::from_arrows(std::vector<ArrowId>(raw.begin(), raw.end()));
}

void Potential::add(const CyclicWord& word, const Rational& coeff) {
  if (coeff == 0) return;
  auto [it, inserted] = terms_.emplace(word, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
  }
}

void Potential::add(const Potential& other, const Rational& scale) {
  for (const auto& [word, coeff] : other.terms_) add(word, coeff * scale);
}

std::size_t Potential::max_word_length() const {
  std::size_t m = 0;
  for (const auto& [word, coeff] : terms_) m = std::max(m, word.size());
  return m;
}

bool Potential::mentions(const ArrowId& a) const {
  return std::any_of(terms_.begin(), terms_.end(), [&](const auto& t) { return t.first.contains(a); });
}

PathSum cyclic_derivative(const ArrowId& a, const CyclicWord& word) {
  PathSum out;
  const auto& arrows = word.arrows();
  const std::size_t n = arrows.size();
  for (std::size_t k = 0; k < n; ++k) {
    if (arrows[k] != a) continue;
    Path rest;
    rest.reserve(n - 1);
    for (std::size_t j = 1; j < n; ++j) rest.push_back(arrows[(k + j) % n]);
    add_term(out, rest, 1);
  }
  return out;
}

PathSum cyclic_derivative(const ArrowId& a, const Potential& w) {
  PathSum out;
  for (const auto& [word, coeff] : w.terms()) {
    if (!word.contains(a)) continue;
    for (const auto& [path, c] : cyclic_derivative(a, word)) add_term(out, path, c * coeff);
  }
  return out;
}

Potential substitute(const Potential& w, const ArrowId& arrow, const PathSum& replacement) {
  Potential out;
  for (const auto& [word, coeff] : w.terms()) {
    if (!word.contains(arrow)) {
      out.add(word, coeff);
      continue;
    }
    std::vector<std::pair<Path, Rational>> partial{{Path{}, coeff}};
    for (const ArrowId& a : word.arrows()) {
      if (a != arrow) {
        for (auto& [p, c] : partial) p.push_back(a);
        continue;
      }
      std::vector<std::pair<Path, Rational>> next;
      next.reserve(partial.size() * (replacement.size() + 1));
      for (const auto& [p, c] : partial) {
        Path kept = p;
        kept.push_back(arrow);
        next.emplace_back(std::move(kept), c);
        for (const auto& [r, rc] : replacement) {
          Path grown = p;
          grown.insert(grown.end(), r.begin(), r.end());
          next.emplace_back(std::move(grown), c * rc);
        }
      }
      partial = std::move(next);
    }
    for (auto& [p, c] : partial) {
      if (p.empty()) fail(ErrorKind::Consistency, "substitution produced an empty cycle");
      out.add(CyclicWord::from_arrows(std::move(p)), c);
    }
  }
  return out;
}

}  // namespace qpmut
