#include "qpmut/graded_qp.hpp"

#include "qpmut/errors.hpp"

namespace qpmut {

DegreeMap zero_degrees(const Quiver& q) {
  DegreeMap d;
  for (const Arrow& a : q.arrows()) d.emplace(a.id, 0);
  return d;
}

int path_degree(const DegreeMap& d, const std::vector<ArrowId>& arrows) {
  int total = 0;
  for (const ArrowId& a : arrows) {
    const auto it = d.find(a);
    if (it == d.end()) fail(ErrorKind::Lookup, "no degree for arrow \"" + a + "\"");
    total += it->second;
  }
  return total;
}

GradedQP::GradedQP(Quiver q, Potential w, DegreeMap d)
    : quiver(std::move(q)), potential(std::move(w)), degrees(std::move(d)) {
  for (const auto& [id, deg] : degrees)
    if (!quiver.has_arrow(id)) fail(ErrorKind::Lookup, "degree given for unknown arrow \"" + id + "\"");
  for (const Arrow& a : quiver.arrows()) degrees.try_emplace(a.id, 0);
  for (const auto& [word, coeff] : potential.terms()) canonicalize_word(quiver, word.arrows());
}

bool GradedQP::is_homogeneous(int total) const {
  for (const auto& [word, coeff] : potential.terms())
    if (word_degree(degrees, word) != total) return false;
  return true;
}

}  // namespace qpmut
