#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "qpmut/quiver.hpp"
#include "qpmut/rational.hpp"

namespace qpmut {

/// Open path, listed in traversal order: entry 0 is traversed first.
/// The empty path stands for a trivial path (only the derivative of a loop
/// word of length 1 produces it).
using Path = std::vector<ArrowId>;

/// Formal linear combination of paths; zero coefficients are never stored.
using PathSum = std::map<Path, Rational>;

void add_term(PathSum& sum, const Path& path, const Rational& coeff);

/// Cycle of arrows up to rotation, stored as its lexicographically least
/// rotation.
class CyclicWord {
 public:
  CyclicWord() = default;

  /// Rotates to canonical form without checking composability.
  static CyclicWord from_arrows(std::vector<ArrowId> arrows);

  const std::vector<ArrowId>& arrows() const noexcept { return arrows_; }
  std::size_t size() const noexcept { return arrows_.size(); }
  bool contains(const ArrowId& a) const;
  std::size_t occurrences(const ArrowId& a) const;

  auto operator<=>(const CyclicWord&) const = default;

 private:
  std::vector<ArrowId> arrows_;
};

/// Checks cyclic composability against `q` and returns the canonical
/// rotation. Throws QpError(Composition) naming the first offending pair,
/// QpError(Lookup) for unknown arrows.
CyclicWord canonicalize_word(const Quiver& q, std::span<const ArrowId> raw);

/// Finite linear combination of cyclic words with exact rational
/// coefficients. Cyclically equivalent inputs merge; zero terms vanish.
class Potential {
 public:
  using Terms = std::map<CyclicWord, Rational>;

  void add(const CyclicWord& word, const Rational& coeff);
  void add(const Potential& other, const Rational& scale = 1);

  const Terms& terms() const noexcept { return terms_; }
  bool empty() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }
  std::size_t max_word_length() const;
  bool mentions(const ArrowId& a) const;

  bool operator==(const Potential&) const = default;

 private:
  Terms terms_;
};

/// Sum over decompositions w = u a v of the path v u, i.e. the arrows that
/// follow the removed occurrence, read cyclically back to it.
PathSum cyclic_derivative(const ArrowId& a, const CyclicWord& word);
PathSum cyclic_derivative(const ArrowId& a, const Potential& w);

/// Potential obtained by replacing every occurrence of `arrow` with
/// `arrow + replacement` (the replacement paths share its endpoints).
Potential substitute(const Potential& w, const ArrowId& arrow, const PathSum& replacement);

}  // namespace qpmut
