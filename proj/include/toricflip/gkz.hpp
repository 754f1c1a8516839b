#pragma once

// Gale duality and the secondary fan restricted to the moving cone.

#include <map>
#include <set>
#include <vector>

#include "toricflip/fan.hpp"

namespace toricflip {

enum class WeightSource { computed, supplied };

/// Gale dual Q of a fan matrix V: rows are a basis of the saturated lattice
/// of linear relations among V's columns, so Q * V^T = 0.
struct WeightMatrix {
  IMatrix Q;
  WeightSource source = WeightSource::computed;
  bool torsion_free = true;  // class group has no torsion

  std::size_t rank() const noexcept { return Q.rows(); }
  std::size_t columns() const noexcept { return Q.cols(); }
  IVector column(std::size_t j) const { return Q.column(j); }
  std::vector<IVector> columns_of(const IndexSet& idx) const {
    std::vector<IVector> out;
    for (auto j : idx) out.push_back(Q.column(j));
    return out;
  }
};

/// Cl(X) = Z^m / (row lattice of V) is torsion-free iff V's row lattice is
/// saturated.
inline bool class_group_torsion_free(const IMatrix& V) {
  return same_row_lattice(saturated_span(V), V);
}

inline WeightMatrix gale_dual(const IMatrix& V) {
  if (rank(V) != V.rows())
    throw Error(ErrorCode::precondition, "fan matrix does not have full row rank");
  if (V.cols() <= V.rows())
    throw Error(ErrorCode::precondition, "fan matrix needs more columns than rows");
  return {kernel_lattice(V), WeightSource::computed, class_group_torsion_free(V)};
}

/// Accepts a user-supplied weight matrix after checking it is a Gale dual of V.
inline WeightMatrix supplied_weights(const IMatrix& V, const IMatrix& Q) {
  WeightMatrix computed = gale_dual(V);
  if (Q.cols() != V.cols() || Q.rows() != computed.rank())
    throw Error(ErrorCode::precondition, "weight matrix has the wrong shape for this fan matrix");
  if (!(Q * V.transposed()).is_zero())
    throw Error(ErrorCode::precondition, "weight matrix is not orthogonal to the fan matrix");
  if (!same_row_lattice(Q, computed.Q))
    throw Error(ErrorCode::precondition, "weight matrix rows do not span the relation lattice");
  return {Q, WeightSource::supplied, computed.torsion_free};
}

inline Cone effective_cone(const WeightMatrix& W) {
  return Cone::from_generators(W.rank(), W.Q.transposed().row_list());
}

/// Intersection over j of the cones spanned by all columns but the j-th.
inline Cone moving_cone(const WeightMatrix& W) {
  const std::size_t m = W.columns();
  if (m <= W.rank()) throw Error(ErrorCode::precondition, "weight matrix needs more columns than rows");
  std::vector<Cone> parts;
  for (std::size_t j = 0; j < m; ++j) {
    IndexSet others;
    for (std::size_t i = 0; i < m; ++i)
      if (i != j) others.push_back(i);
    parts.push_back(Cone::from_generators(W.rank(), W.columns_of(others)));
  }
  return intersect(parts, W.rank());
}

inline void require_simplicial_complete(const Fan& f, const WeightMatrix& W) {
  require_valid(f);
  if (f.ray_count() != W.columns())
    throw Error(ErrorCode::dimension_mismatch, "fan and weight matrix disagree on the number of rays");
  if (!is_simplicial(f)) throw Error(ErrorCode::precondition, "fan is not simplicial");
  if (!is_complete(f)) throw Error(ErrorCode::precondition, "fan is not complete");
}

/// For each maximal cone <I>, the cone spanned by the Q-columns outside I.
/// Deduplicated and in canonical order.
inline std::vector<Cone> bunch(const Fan& f, const WeightMatrix& W) {
  require_simplicial_complete(f, W);
  std::set<Cone> out;
  for (const auto& I : f.max_cones())
    out.insert(Cone::from_generators(W.rank(), W.columns_of(complement(I, W.columns()))));
  return {out.begin(), out.end()};
}

inline Cone nef_cone(const Fan& f, const WeightMatrix& W) {
  return intersect(bunch(f, W), W.rank());
}

inline bool is_projective(const Fan& f, const WeightMatrix& W) {
  return nef_cone(f, W).dim() == W.rank();
}

// ---------------------------------------------------------------------------
// secondary fan

struct Chamber {
  Cone cone;
  /// n-element index sets I (fan cones) with the chamber inside cone(Q_{not I}).
  std::vector<IndexSet> compatible_bases;
};

struct Wall {
  Cone cone;
  std::size_t left = 0, right = 0;  // chamber indices
};

struct SecondaryFan {
  WeightMatrix weights;
  Cone mov;
  std::vector<Chamber> chambers;
  std::vector<Wall> walls;
};

namespace detail {

/// Coefficients of w in the basis Q_J, when Q_J is invertible.
inline bool in_simplicial_cone(const WeightMatrix& W, const IndexSet& J, const QVector& w,
                               bool strict) {
  auto c = solve(to_rational(W.Q.select_columns(J)), w);
  for (const auto& x : *c)
    if (x < 0 || (strict && x == 0)) return false;
  return true;
}

/// r-subsets J of columns with Q_J invertible.
inline std::vector<IndexSet> weight_bases(const WeightMatrix& W) {
  std::vector<IndexSet> out;
  for (auto& J : k_subsets(W.columns(), W.rank()))
    if (rank(W.Q.select_columns(J)) == W.rank()) out.push_back(J);
  return out;
}

/// Linear hyperplanes spanned by (r-1)-subsets of columns, as primitive
/// normals with positive leading entry.
inline std::vector<IVector> weight_hyperplanes(const WeightMatrix& W) {
  const std::size_t r = W.rank();
  std::set<IVector, decltype(&lex_less)> hs(&lex_less);
  for (auto& S : k_subsets(W.columns(), r - 1)) {
    IMatrix rows = IMatrix::from_rows(W.columns_of(S), r);
    if (rank(rows) != r - 1) continue;
    IVector h = kernel_lattice(rows).row_vector(0);
    for (const auto& x : h) {
      if (x == 0) continue;
      if (x < 0)
        for (auto& y : h) y = -y;
      break;
    }
    hs.insert(std::move(h));
  }
  return {hs.begin(), hs.end()};
}

}  // namespace detail

/// Chamber of a generic class w: the intersection of every basis cone
/// cone(Q_J) containing it. Also returns the compatible fan cones.
inline Chamber chamber_of(const WeightMatrix& W, const std::vector<IndexSet>& bases, const QVector& w) {
  const std::size_t r = W.rank(), m = W.columns();
  std::vector<IVector> halfspaces;
  Chamber ch;
  for (const auto& J : bases) {
    if (!detail::in_simplicial_cone(W, J, w, false)) continue;
    Cone c = Cone::from_generators(r, W.columns_of(J));
    for (const auto& h : c.facets()) halfspaces.push_back(h);
    ch.compatible_bases.push_back(complement(J, m));
  }
  std::sort(ch.compatible_bases.begin(), ch.compatible_bases.end());
  ch.cone = Cone::from_halfspaces(r, halfspaces);
  return ch;
}

/// Full-dimensional GKZ chambers inside Mov(Q), in canonical cone order.
///
/// The arrangement of hyperplanes spanned by (r-1) columns refines the GKZ
/// fan, possibly strictly, so its cells serve only as a source of generic
/// sample points; each sample's chamber is rebuilt from the basis cones that
/// contain it and duplicates collapse.
inline SecondaryFan secondary_fan(const WeightMatrix& W, ExecOptions opts = {}) {
  const std::size_t r = W.rank();
  if (W.columns() <= r) throw Error(ErrorCode::precondition, "weight matrix needs more columns than rows");
  if (rank(W.Q) != r) throw Error(ErrorCode::precondition, "weight matrix rows are dependent");
  SecondaryFan sf{W, moving_cone(W), {}, {}};
  if (sf.mov.dim() < r) return sf;

  std::vector<Cone> cells{sf.mov};
  for (const auto& h : detail::weight_hyperplanes(W)) {
    std::vector<Cone> next;
    for (auto& c : cells) {
      bool pos = false, neg = false;
      for (const auto& g : c.generators()) {
        Int v = dot(h, g);
        if (v > 0) pos = true;
        if (v < 0) neg = true;
      }
      if (!(pos && neg)) {
        next.push_back(std::move(c));
        continue;
      }
      IVector hn = h;
      for (auto& x : hn) x = -x;
      for (const IVector& side : {h, hn}) {
        auto cons = c.constraints();
        cons.push_back(side);
        Cone piece = Cone::from_halfspaces(r, cons);
        if (piece.dim() == r) next.push_back(std::move(piece));
      }
    }
    cells = std::move(next);
  }

  auto bases = detail::weight_bases(W);
  auto found = parallel_map<Chamber>(
      cells.size(), [&](std::size_t i) { return chamber_of(W, bases, relint_point(cells[i])); }, opts);
  std::map<Cone, Chamber> unique;
  for (auto& ch : found) unique.emplace(ch.cone, std::move(ch));
  for (auto& [c, ch] : unique) sf.chambers.push_back(std::move(ch));

  for (std::size_t a = 0; a < sf.chambers.size(); ++a)
    for (std::size_t b = a + 1; b < sf.chambers.size(); ++b) {
      Cone w = intersect(sf.chambers[a].cone, sf.chambers[b].cone);
      if (w.dim() + 1 == r) sf.walls.push_back({std::move(w), a, b});
    }
  return sf;
}

/// The simplicial fan whose nef cone is the given full-dimensional chamber.
inline Fan chamber_to_fan(const WeightMatrix& W, const Cone& chamber, const IMatrix& V) {
  const std::size_t r = W.rank(), m = W.columns(), n = V.rows();
  if (chamber.dim() != r) throw Error(ErrorCode::precondition, "chamber is not full-dimensional");
  if (V.cols() != m) throw Error(ErrorCode::dimension_mismatch, "fan matrix and weight matrix disagree");
  QVector w = relint_point(chamber);
  std::vector<IndexSet> cones;
  for (auto& I : k_subsets(m, n)) {
    if (rank(V.select_columns(I)) != n) continue;
    IndexSet J = complement(I, m);
    if (rank(W.Q.select_columns(J)) != r) continue;
    if (detail::in_simplicial_cone(W, J, w, false)) cones.push_back(I);
  }
  Fan f(V, std::move(cones));
  auto rep = validate(f);
  if (!rep.valid())
    throw Error(ErrorCode::internal, "chamber does not yield a fan: " + rep.violations.front().message);
  if (!is_simplicial(f) || !is_complete(f) || !(nef_cone(f, W) == chamber))
    throw Error(ErrorCode::internal, "chamber and fan are inconsistent");
  return f;
}

inline Fan chamber_to_fan(const WeightMatrix& W, const Chamber& c, const IMatrix& V) {
  return chamber_to_fan(W, c.cone, V);
}

}  // namespace toricflip
