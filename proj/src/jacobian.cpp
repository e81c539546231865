#include "qpmut/jacobian.hpp"

#include <set>

namespace qpmut {

std::vector<JacobianRelation> jacobian_relations(const GradedQP& qp, bool only_degree_one) {
  std::vector<JacobianRelation> out;
  for (const Arrow& a : qp.quiver.arrows()) {
    if (only_degree_one && qp.degree(a.id) != 1) continue;
    out.push_back({a.id, cyclic_derivative(a.id, qp.potential)});
  }
  return out;
}

std::size_t path_sum_rank(const std::vector<PathSum>& vectors) {
  std::map<Path, std::size_t> column;
  for (const PathSum& v : vectors)
    for (const auto& [path, c] : v) column.emplace(path, column.size());
  std::vector<std::vector<Rational>> rows;
  for (const PathSum& v : vectors) {
    std::vector<Rational> row(column.size());
    for (const auto& [path, c] : v) row[column.at(path)] = c;
    rows.push_back(std::move(row));
  }
  std::size_t rank = 0;
  for (std::size_t col = 0; col < column.size() && rank < rows.size(); ++col) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][col] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[pivot], rows[rank]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][col] == 0) continue;
      const Rational factor = rows[r][col] / rows[rank][col];
      for (std::size_t c = col; c < column.size(); ++c) rows[r][c] -= factor * rows[rank][c];
    }
    ++rank;
  }
  return rank;
}

Verdict check_w_grading(const GradedQP& qp) {
  for (const auto& [arrow, deg] : qp.degrees)
    if (deg != 0 && deg != 1)
      return Verdict::no("arrow \"" + arrow + "\" has degree " + std::to_string(deg) + " outside {0,1}");
  for (const auto& [word, coeff] : qp.potential.terms()) {
    const int deg = word_degree(qp.degrees, word);
    if (deg != 1) {
      std::string text;
      for (const ArrowId& a : word.arrows()) text += (text.empty() ? "" : " ") + a;
      return Verdict::no("term [" + text + "] has degree " + std::to_string(deg));
    }
  }
  std::vector<PathSum> relations;
  for (auto& rel : jacobian_relations(qp, true)) {
    if (rel.relation.empty()) return Verdict::no("derivative along degree-1 arrow \"" + rel.arrow + "\" vanishes");
    relations.push_back(std::move(rel.relation));
  }
  if (path_sum_rank(relations) != relations.size())
    return Verdict::no("derivatives along degree-1 arrows are linearly dependent");
  return Verdict::yes();
}

}  // namespace qpmut
