#pragma once

// Rational polyhedral cones with both representations kept in canonical form.
//
// A cone C in Q^n is stored as
//   lineality  L : saturated HNF basis of the largest subspace inside C
//   rays         : extremal rays of C / L, projected onto L-perp, primitive
//   equations  E : saturated HNF basis of span(C)-perp
//   facets       : facet normals projected onto span(C), primitive
// Two cones are equal iff these four lists are equal.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <span>
#include <vector>

#include "toricflip/exact.hpp"

namespace toricflip {

enum class Location { interior, boundary, outside };

inline const char* location_name(Location l) {
  switch (l) {
    case Location::interior: return "INTERIOR";
    case Location::boundary: return "BOUNDARY";
    case Location::outside: return "OUTSIDE";
  }
  return "?";
}

inline bool lex_less(const IVector& a, const IVector& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

inline void sort_unique(std::vector<IVector>& v) {
  std::sort(v.begin(), v.end(), lex_less);
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

namespace detail {

class Bitset {
 public:
  Bitset() = default;
  explicit Bitset(std::size_t n) : words_((n + 63) / 64, 0) {}
  void resize(std::size_t n) { words_.resize((n + 63) / 64, 0); }
  void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
  bool test(std::size_t i) const {
    return i / 64 < words_.size() && (words_[i / 64] >> (i % 64)) & 1;
  }
  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += std::popcount(w);
    return c;
  }
  Bitset operator&(const Bitset& o) const {
    Bitset r;
    r.words_.resize(std::min(words_.size(), o.words_.size()));
    for (std::size_t i = 0; i < r.words_.size(); ++i) r.words_[i] = words_[i] & o.words_[i];
    return r;
  }
  bool subset_of(const Bitset& o) const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      std::uint64_t ow = i < o.words_.size() ? o.words_[i] : 0;
      if (words_[i] & ~ow) return false;
    }
    return true;
  }

 private:
  std::vector<std::uint64_t> words_;
};

struct DDOutput {
  std::vector<IVector> lineality;
  std::vector<IVector> rays;
};

/// Incremental double description for {x in Q^n : <a, x> >= 0 for a in ineqs}.
/// Lineality directions are kept orthogonal to every processed constraint,
/// so tight sets of rays are well defined modulo lineality.
inline DDOutput double_description(std::size_t n, const std::vector<IVector>& ineqs) {
  std::vector<IVector> lin;
  for (std::size_t i = 0; i < n; ++i) {
    IVector e(n, Int(0));
    e[i] = 1;
    lin.push_back(std::move(e));
  }
  struct Ray {
    IVector v;
    Bitset tight;
  };
  std::vector<Ray> rays;
  const std::size_t k_total = ineqs.size();

  for (std::size_t k = 0; k < k_total; ++k) {
    const IVector& a = ineqs[k];
    if (a.size() != n)
      throw Error(ErrorCode::dimension_mismatch, "constraint length differs from ambient dimension");
    if (is_zero(a)) {
      for (auto& r : rays) r.tight.set(k);
      continue;
    }
    // case 1: the constraint cuts the lineality space
    std::size_t pick = lin.size();
    Int d0;
    for (std::size_t i = 0; i < lin.size(); ++i) {
      d0 = dot(a, lin[i]);
      if (d0 != 0) {
        pick = i;
        break;
      }
    }
    if (pick < lin.size()) {
      IVector l0 = std::move(lin[pick]);
      lin.erase(lin.begin() + static_cast<std::ptrdiff_t>(pick));
      if (d0 < 0) {
        for (auto& x : l0) x = -x;
        d0 = -d0;
      }
      for (auto& l : lin) {
        Int dl = dot(a, l);
        if (dl == 0) continue;
        for (std::size_t j = 0; j < n; ++j) l[j] = d0 * l[j] - dl * l0[j];
        l = primitive(std::move(l));
      }
      for (auto& r : rays) {
        Int dr = dot(a, r.v);
        if (dr != 0) {
          for (std::size_t j = 0; j < n; ++j) r.v[j] = d0 * r.v[j] - dr * l0[j];
          r.v = primitive(std::move(r.v));
        }
        r.tight.set(k);
      }
      Ray nr{primitive(std::move(l0)), Bitset(k_total)};
      for (std::size_t j = 0; j < k; ++j) nr.tight.set(j);
      rays.push_back(std::move(nr));
      continue;
    }

    // case 2: lineality untouched, split rays by sign
    std::vector<Int> val(rays.size());
    std::vector<std::size_t> pos, neg;
    for (std::size_t i = 0; i < rays.size(); ++i) {
      val[i] = dot(a, rays[i].v);
      if (val[i] > 0) pos.push_back(i);
      else if (val[i] < 0) neg.push_back(i);
    }
    if (neg.empty()) {
      for (std::size_t i = 0; i < rays.size(); ++i)
        if (val[i] == 0) rays[i].tight.set(k);
      continue;
    }
    const std::size_t pointed_dim = n - lin.size();
    const std::size_t need = pointed_dim >= 2 ? pointed_dim - 2 : 0;
    std::vector<Ray> next;
    for (std::size_t i = 0; i < rays.size(); ++i) {
      if (val[i] < 0) continue;
      Ray r = rays[i];
      if (val[i] == 0) r.tight.set(k);
      next.push_back(std::move(r));
    }
    for (std::size_t p : pos)
      for (std::size_t q : neg) {
        Bitset common = rays[p].tight & rays[q].tight;
        if (common.count() < need) continue;
        bool adjacent = true;
        for (std::size_t t = 0; t < rays.size() && adjacent; ++t) {
          if (t == p || t == q) continue;
          if (common.subset_of(rays[t].tight)) adjacent = false;
        }
        if (!adjacent) continue;
        IVector v(n);
        for (std::size_t j = 0; j < n; ++j)
          v[j] = val[p] * rays[q].v[j] - val[q] * rays[p].v[j];
        common.resize(k_total);
        common.set(k);
        next.push_back({primitive(std::move(v)), std::move(common)});
      }
    rays = std::move(next);
  }

  DDOutput out;
  out.lineality = std::move(lin);
  for (auto& r : rays) out.rays.push_back(std::move(r.v));
  return out;
}

/// Orthogonal projection of v onto the complement of span(basis), scaled to a
/// primitive integer vector.
inline IVector project_out(const IVector& v, const IMatrix& basis) {
  if (basis.rows() == 0) return primitive(v);
  const std::size_t k = basis.rows(), n = basis.cols();
  QMatrix gram(k, k);
  QVector rhs(k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) gram(i, j) = dot<Int>(basis.row(i), basis.row(j));
    rhs[i] = dot<Int>(basis.row(i), std::span<const Int>(v));
  }
  auto c = solve(gram, rhs);
  QVector w(n);
  for (std::size_t j = 0; j < n; ++j) {
    w[j] = v[j];
    for (std::size_t i = 0; i < k; ++i) w[j] -= (*c)[i] * basis(i, j);
  }
  return primitive_direction(w);
}

}  // namespace detail

class Cone {
 public:
  Cone() = default;

  /// Cone positively spanned by `gens`; zero vectors are ignored.
  static Cone from_generators(std::size_t dim, const std::vector<IVector>& gens) {
    for (const auto& g : gens)
      if (g.size() != dim)
        throw Error(ErrorCode::dimension_mismatch, "generator length differs from cone dimension");
    auto dual = detail::double_description(dim, gens);
    std::vector<IVector> cons = dual.rays;
    for (const auto& e : dual.lineality) {
      cons.push_back(e);
      cons.push_back(negated(e));
    }
    auto primal = detail::double_description(dim, cons);
    return Cone(dim, primal, dual);
  }

  /// Cone {x : <n, x> >= 0 for every n in normals}.
  static Cone from_halfspaces(std::size_t dim, const std::vector<IVector>& normals) {
    for (const auto& a : normals)
      if (a.size() != dim)
        throw Error(ErrorCode::dimension_mismatch, "halfspace length differs from cone dimension");
    auto primal = detail::double_description(dim, normals);
    std::vector<IVector> gens = primal.rays;
    for (const auto& l : primal.lineality) {
      gens.push_back(l);
      gens.push_back(negated(l));
    }
    auto dual = detail::double_description(dim, gens);
    return Cone(dim, primal, dual);
  }

  static Cone zero(std::size_t dim) { return from_generators(dim, {}); }

  std::size_t ambient_dim() const noexcept { return n_; }
  std::size_t dim() const noexcept { return n_ - equations_.size(); }
  bool is_zero() const noexcept { return dim() == 0; }
  bool is_pointed() const noexcept { return lineality_.empty(); }
  bool is_full_dimensional() const noexcept { return equations_.empty(); }

  const std::vector<IVector>& rays() const noexcept { return rays_; }
  const std::vector<IVector>& lineality() const noexcept { return lineality_; }
  const std::vector<IVector>& facets() const noexcept { return facets_; }
  const std::vector<IVector>& equations() const noexcept { return equations_; }

  /// Rays plus both signs of each lineality basis vector, sorted.
  std::vector<IVector> generators() const {
    std::vector<IVector> g = rays_;
    for (const auto& l : lineality_) {
      g.push_back(l);
      g.push_back(negated(l));
    }
    sort_unique(g);
    return g;
  }

  /// Facet normals plus both signs of each equation, sorted. Empty for the
  /// zero cone, which is flagged separately.
  std::vector<IVector> halfspaces() const {
    if (is_zero()) return {};
    std::vector<IVector> h = facets_;
    for (const auto& e : equations_) {
      h.push_back(e);
      h.push_back(negated(e));
    }
    sort_unique(h);
    return h;
  }

  /// Same as halfspaces(), but the zero cone gets its full constraint list.
  std::vector<IVector> constraints() const {
    std::vector<IVector> h = facets_;
    for (const auto& e : equations_) {
      h.push_back(e);
      h.push_back(negated(e));
    }
    return h;
  }

  Location contains(const QVector& x) const {
    if (x.size() != n_)
      throw Error(ErrorCode::dimension_mismatch, "point length differs from cone dimension");
    for (const auto& e : equations_)
      if (dot(e, x) != 0) return Location::outside;
    bool strict = true;
    for (const auto& f : facets_) {
      Rat v = dot(f, x);
      if (v < 0) return Location::outside;
      if (v == 0) strict = false;
    }
    return strict ? Location::interior : Location::boundary;
  }
  Location contains(const IVector& x) const { return contains(to_rational(x)); }

  /// Set inclusion: other is a subset of *this.
  bool includes(const Cone& other) const {
    check_same_dim(other);
    for (const auto& g : other.generators())
      if (contains(g) == Location::outside) return false;
    return true;
  }

  friend bool operator==(const Cone& a, const Cone& b) {
    return a.n_ == b.n_ && a.lineality_ == b.lineality_ && a.rays_ == b.rays_;
  }

  /// Canonical total order: ambient dimension, lineality, then rays.
  friend bool operator<(const Cone& a, const Cone& b) {
    if (a.n_ != b.n_) return a.n_ < b.n_;
    auto cmp = [](const std::vector<IVector>& x, const std::vector<IVector>& y) {
      return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end(), lex_less);
    };
    if (a.lineality_ != b.lineality_) return cmp(a.lineality_, b.lineality_);
    return cmp(a.rays_, b.rays_);
  }

  void check_same_dim(const Cone& o) const {
    if (o.n_ != n_) throw Error(ErrorCode::dimension_mismatch, "cones live in different ambient spaces");
  }

 private:
  Cone(std::size_t n, const detail::DDOutput& primal, const detail::DDOutput& dual) : n_(n) {
    lineality_ = saturated_span(IMatrix::from_rows(primal.lineality, n)).row_list();
    equations_ = saturated_span(IMatrix::from_rows(dual.lineality, n)).row_list();
    IMatrix lin = IMatrix::from_rows(lineality_, n);
    IMatrix eqs = IMatrix::from_rows(equations_, n);
    for (const auto& r : primal.rays) rays_.push_back(detail::project_out(r, lin));
    for (const auto& f : dual.rays) facets_.push_back(detail::project_out(f, eqs));
    sort_unique(rays_);
    sort_unique(facets_);
  }

  static IVector negated(IVector v) {
    for (auto& x : v) x = -x;
    return v;
  }

  std::size_t n_ = 0;
  std::vector<IVector> lineality_;
  std::vector<IVector> rays_;
  std::vector<IVector> equations_;
  std::vector<IVector> facets_;
};

inline Cone from_generators(std::size_t dim, const std::vector<IVector>& gens) {
  return Cone::from_generators(dim, gens);
}
inline Cone from_halfspaces(std::size_t dim, const std::vector<IVector>& normals) {
  return Cone::from_halfspaces(dim, normals);
}
inline std::vector<IVector> to_halfspaces(const Cone& c) { return c.halfspaces(); }

inline Cone intersect(const Cone& a, const Cone& b) {
  a.check_same_dim(b);
  auto h = a.constraints();
  auto hb = b.constraints();
  h.insert(h.end(), hb.begin(), hb.end());
  return Cone::from_halfspaces(a.ambient_dim(), h);
}

inline Cone intersect(const std::vector<Cone>& cones, std::size_t dim) {
  std::vector<IVector> h;
  for (const auto& c : cones) {
    if (c.ambient_dim() != dim)
      throw Error(ErrorCode::dimension_mismatch, "cones live in different ambient spaces");
    auto hc = c.constraints();
    h.insert(h.end(), hc.begin(), hc.end());
  }
  return Cone::from_halfspaces(dim, h);
}

/// The smallest face of c containing f: cut c by every facet vanishing on f.
inline Cone minimal_face_containing(const Cone& f, const Cone& c) {
  c.check_same_dim(f);
  auto gens = f.generators();
  auto h = c.constraints();
  for (const auto& n : c.facets()) {
    bool vanishes = std::all_of(gens.begin(), gens.end(),
                                [&](const IVector& g) { return dot(n, g) == 0; });
    if (vanishes) {
      IVector m = n;
      for (auto& x : m) x = -x;
      h.push_back(std::move(m));
    }
  }
  return Cone::from_halfspaces(c.ambient_dim(), h);
}

inline bool is_face(const Cone& f, const Cone& c) {
  if (!c.includes(f)) return false;
  return minimal_face_containing(f, c) == f;
}

/// Deterministic relative-interior point: the sum of the canonical ray
/// generators plus the lineality basis.
inline QVector relint_point(const Cone& c) {
  if (c.is_zero()) throw Error(ErrorCode::precondition, "relint_point of the zero cone");
  QVector p(c.ambient_dim(), Rat(0));
  for (const auto& r : c.rays())
    for (std::size_t j = 0; j < p.size(); ++j) p[j] += r[j];
  for (const auto& l : c.lineality())
    for (std::size_t j = 0; j < p.size(); ++j) p[j] += l[j];
  return p;
}

inline bool equals(const Cone& a, const Cone& b) {
  a.check_same_dim(b);
  return a == b;
}

}  // namespace toricflip
