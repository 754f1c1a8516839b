#pragma once

// Fans over a fixed fan matrix: validation, completeness, simpliciality, and
// enumeration of simplicial subdivisions that reuse the existing rays.

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "toricflip/cone.hpp"
#include "toricflip/parallel.hpp"

namespace toricflip {

/// Sorted 0-based column indices.
using IndexSet = std::vector<std::size_t>;

/// "<1,2,4>" with 1-based labels, for human-readable messages.
inline std::string label(const IndexSet& s) {
  std::ostringstream os;
  os << '<';
  for (std::size_t i = 0; i < s.size(); ++i) os << (i ? "," : "") << s[i] + 1;
  os << '>';
  return os.str();
}

struct Violation {
  std::string kind;
  std::string message;
  std::vector<std::size_t> indices;  // rays or cones, depending on kind
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool valid() const { return violations.empty(); }
  bool has(const std::string& kind) const {
    for (const auto& v : violations)
      if (v.kind == kind) return true;
    return false;
  }
};

namespace detail {
struct FanCache {
  std::mutex mu;
  std::map<IndexSet, Cone> cones;
  std::optional<ValidationReport> report;
  std::optional<bool> complete;
};
}  // namespace detail

class Fan {
 public:
  Fan() : cache_(std::make_shared<detail::FanCache>()) {}

  /// Index sets are sorted and the cone list is put in canonical order;
  /// duplicates are kept so that validate() can report them.
  Fan(IMatrix fan_matrix, std::vector<IndexSet> max_cones)
      : V_(std::move(fan_matrix)),
        cones_(std::move(max_cones)),
        cache_(std::make_shared<detail::FanCache>()) {
    for (auto& c : cones_) std::sort(c.begin(), c.end());
    std::sort(cones_.begin(), cones_.end());
  }

  std::size_t dim() const noexcept { return V_.rows(); }
  std::size_t ray_count() const noexcept { return V_.cols(); }
  const IMatrix& fan_matrix() const noexcept { return V_; }
  const std::vector<IndexSet>& max_cones() const noexcept { return cones_; }

  IVector ray(std::size_t j) const { return V_.column(j); }

  /// Cone spanned by the listed columns (memoized).
  Cone cone_of(const IndexSet& idx) const {
    {
      std::lock_guard lk(cache_->mu);
      auto it = cache_->cones.find(idx);
      if (it != cache_->cones.end()) return it->second;
    }
    std::vector<IVector> gens;
    for (auto j : idx) {
      if (j >= ray_count()) throw Error(ErrorCode::precondition, "ray index out of range");
      gens.push_back(ray(j));
    }
    Cone c = Cone::from_generators(dim(), gens);
    std::lock_guard lk(cache_->mu);
    cache_->cones.emplace(idx, c);
    return c;
  }
  Cone cone(std::size_t k) const {
    if (k >= cones_.size()) throw Error(ErrorCode::precondition, "cone index out of range");
    return cone_of(cones_[k]);
  }

  /// Index sets of the facets of cone `idx` (rays lying on each facet).
  std::vector<IndexSet> facet_sets(const IndexSet& idx) const {
    Cone c = cone_of(idx);
    std::vector<IndexSet> out;
    for (const auto& h : c.facets()) {
      IndexSet s;
      for (auto j : idx)
        if (dot(h, ray(j)) == 0) s.push_back(j);
      out.push_back(std::move(s));
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  friend bool operator==(const Fan& a, const Fan& b) {
    return a.V_ == b.V_ && a.cones_ == b.cones_;
  }

 private:
  friend ValidationReport validate(const Fan& f);
  friend bool is_complete(const Fan& f);

  IMatrix V_;
  std::vector<IndexSet> cones_;
  std::shared_ptr<detail::FanCache> cache_;
};

namespace detail {

inline ValidationReport compute_validation(const Fan& f) {
  ValidationReport rep;
  auto add = [&](std::string kind, std::string msg, std::vector<std::size_t> idx) {
    rep.violations.push_back({std::move(kind), std::move(msg), std::move(idx)});
  };
  const std::size_t n = f.dim(), m = f.ray_count();
  if (n == 0) add("empty lattice", "fan matrix has no rows", {});
  if (f.max_cones().empty()) add("no cones", "fan has no maximal cones", {});

  for (std::size_t j = 0; j < m; ++j) {
    IVector v = f.ray(j);
    if (is_zero(v)) add("zero ray", "ray " + std::to_string(j + 1) + " is zero", {j});
    else if (content(v) != 1)
      add("non-primitive ray", "ray " + std::to_string(j + 1) + " is not primitive", {j});
    for (std::size_t k = j + 1; k < m; ++k)
      if (f.ray(k) == v)
        add("duplicate ray",
            "rays " + std::to_string(j + 1) + " and " + std::to_string(k + 1) + " coincide", {j, k});
  }
  if (!rep.valid()) return rep;

  const auto& cones = f.max_cones();
  std::vector<bool> geometric_ok(cones.size(), false);
  std::vector<bool> used(m, false);
  for (std::size_t k = 0; k < cones.size(); ++k) {
    const IndexSet& I = cones[k];
    bool ok = !I.empty();
    if (I.empty()) add("not full-dimensional", "cone " + std::to_string(k + 1) + " is empty", {k});
    for (std::size_t t = 0; t < I.size(); ++t) {
      if (I[t] >= m) {
        add("index out of range", "cone " + std::to_string(k + 1) + " refers to ray " +
                                      std::to_string(I[t] + 1), {k});
        ok = false;
      } else {
        used[I[t]] = true;
      }
      if (t > 0 && I[t] == I[t - 1]) {
        add("duplicate index", "cone " + label(I) + " repeats a ray", {k});
        ok = false;
      }
    }
    if (!ok) continue;
    Cone c = f.cone_of(I);
    if (c.dim() != n) {
      add("not full-dimensional", "cone " + label(I) + " has dimension " + std::to_string(c.dim()), {k});
      ok = false;
    }
    if (!c.is_pointed()) {
      add("not pointed", "cone " + label(I) + " contains a line", {k});
      ok = false;
    }
    if (!ok) continue;
    for (auto j : I)
      if (!std::binary_search(c.rays().begin(), c.rays().end(), f.ray(j))) {
        add("non-extremal generator",
            "ray " + std::to_string(j + 1) + " is not an extremal ray of " + label(I), {k, j});
        ok = false;
      }
    geometric_ok[k] = ok;
    for (std::size_t j = 0; j < m; ++j)
      if (!std::binary_search(I.begin(), I.end(), j) && c.contains(f.ray(j)) != Location::outside)
        add("stray ray", "ray " + std::to_string(j + 1) + " lies in " + label(I) +
                             " without being one of its generators", {k, j});
  }
  for (std::size_t j = 0; j < m; ++j)
    if (!used[j]) add("unused ray", "ray " + std::to_string(j + 1) + " belongs to no cone", {j});

  for (std::size_t a = 0; a < cones.size(); ++a)
    for (std::size_t b = a + 1; b < cones.size(); ++b) {
      if (!geometric_ok[a] || !geometric_ok[b]) continue;
      Cone ca = f.cone_of(cones[a]), cb = f.cone_of(cones[b]);
      if (cones[a] == cones[b] || ca.includes(cb) || cb.includes(ca)) {
        add("redundant cone", "cones " + label(cones[a]) + " and " + label(cones[b]) +
                                  " are nested", {a, b});
      }
      Cone inter = intersect(ca, cb);
      if (!is_face(inter, ca) || !is_face(inter, cb))
        add("improper intersection", "cones " + label(cones[a]) + " and " + label(cones[b]) +
                                         " do not meet in a common face", {a, b});
    }
  return rep;
}

}  // namespace detail

/// Checks every structural requirement on a fan; violations are data.
inline ValidationReport validate(const Fan& f) {
  {
    std::lock_guard lk(f.cache_->mu);
    if (f.cache_->report) return *f.cache_->report;
  }
  ValidationReport rep = detail::compute_validation(f);
  std::lock_guard lk(f.cache_->mu);
  f.cache_->report = rep;
  return rep;
}

inline void require_valid(const Fan& f) {
  auto rep = validate(f);
  if (!rep.valid())
    throw Error(ErrorCode::invalid_fan, "invalid fan: " + rep.violations.front().message);
}

/// Complete iff every facet of every maximal cone is shared with exactly one
/// other maximal cone and the facet-adjacency graph is connected.
inline bool is_complete(const Fan& f) {
  require_valid(f);
  {
    std::lock_guard lk(f.cache_->mu);
    if (f.cache_->complete) return *f.cache_->complete;
  }
  const auto& cones = f.max_cones();
  std::map<IndexSet, std::vector<std::size_t>> owners;
  for (std::size_t k = 0; k < cones.size(); ++k)
    for (auto& s : f.facet_sets(cones[k])) owners[s].push_back(k);
  bool ok = true;
  std::vector<std::size_t> parent(cones.size());
  for (std::size_t k = 0; k < parent.size(); ++k) parent[k] = k;
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& [facet, who] : owners) {
    if (who.size() != 2) {
      ok = false;
      break;
    }
    parent[find(who[0])] = find(who[1]);
  }
  if (ok)
    for (std::size_t k = 0; k < cones.size(); ++k)
      if (find(k) != find(0)) ok = false;
  std::lock_guard lk(f.cache_->mu);
  f.cache_->complete = ok;
  return ok;
}

inline bool is_simplicial(const Fan& f) {
  require_valid(f);
  for (const auto& c : f.max_cones())
    if (c.size() != f.dim()) return false;
  return true;
}

// ---------------------------------------------------------------------------
// triangulations

namespace detail {

class TriangulationSearch {
 public:
  TriangulationSearch(const Fan& f, IndexSet rays) : f_(f), I_(std::move(rays)), n_(f.dim()) {
    sigma_ = f_.cone_of(I_);
    for (auto& J : k_subsets(I_.size(), n_)) {
      IndexSet s;
      for (auto t : J) s.push_back(I_[t]);
      std::vector<IVector> gens;
      for (auto j : s) gens.push_back(f_.ray(j));
      if (rank(IMatrix::from_columns(gens, n_)) != n_) continue;
      Cone c = Cone::from_generators(n_, gens);
      bool clean = true;
      for (auto j : I_)
        if (!std::binary_search(s.begin(), s.end(), j) && c.contains(f_.ray(j)) != Location::outside)
          clean = false;
      if (!clean) continue;
      index_.emplace(s, cands_.size());
      cands_.push_back(std::move(s));
      cand_cones_.push_back(std::move(c));
    }
  }

  std::vector<std::vector<IndexSet>> run() {
    for (std::size_t s = 0; s < cands_.size(); ++s) {
      if (cands_[s].front() != I_.front()) continue;
      std::vector<std::size_t> chosen{s};
      std::map<IndexSet, int> counts;
      for (auto& F : facets_of(cands_[s])) counts[F] = 1;
      extend(chosen, counts);
    }
    return {results_.begin(), results_.end()};
  }

 private:
  std::vector<IndexSet> facets_of(const IndexSet& J) const {
    std::vector<IndexSet> out;
    for (std::size_t drop = 0; drop < J.size(); ++drop) {
      IndexSet F;
      for (std::size_t t = 0; t < J.size(); ++t)
        if (t != drop) F.push_back(J[t]);
      out.push_back(std::move(F));
    }
    return out;
  }

  bool on_boundary(const IndexSet& F) {
    auto it = boundary_.find(F);
    if (it != boundary_.end()) return it->second;
    bool b = false;
    for (const auto& h : sigma_.facets()) {
      bool tight = true;
      for (auto j : F)
        if (dot(h, f_.ray(j)) != 0) tight = false;
      if (tight) b = true;
    }
    boundary_[F] = b;
    return b;
  }

  bool compatible(std::size_t a, std::size_t b) {
    auto key = std::minmax(a, b);
    auto it = compat_.find(key);
    if (it != compat_.end()) return it->second;
    IndexSet common;
    std::set_intersection(cands_[a].begin(), cands_[a].end(), cands_[b].begin(), cands_[b].end(),
                          std::back_inserter(common));
    bool ok = intersect(cand_cones_[a], cand_cones_[b]) == f_.cone_of(common);
    compat_[key] = ok;
    return ok;
  }

  void extend(std::vector<std::size_t>& chosen, std::map<IndexSet, int>& counts) {
    const IndexSet* open = nullptr;
    for (const auto& [F, c] : counts)
      if (c == 1 && !on_boundary(F)) {
        open = &F;
        break;
      }
    if (!open) {
      std::vector<IndexSet> t;
      for (auto s : chosen) t.push_back(cands_[s]);
      std::sort(t.begin(), t.end());
      results_.insert(std::move(t));
      return;
    }
    const IndexSet F = *open;
    std::size_t owner = 0;
    for (auto s : chosen)
      if (std::includes(cands_[s].begin(), cands_[s].end(), F.begin(), F.end())) owner = s;
    std::size_t apex = 0;
    for (auto j : cands_[owner])
      if (!std::binary_search(F.begin(), F.end(), j)) apex = j;
    std::vector<IVector> fr;
    for (auto j : F) fr.push_back(f_.ray(j));
    IVector h = kernel_lattice(IMatrix::from_rows(fr, n_)).row_vector(0);
    if (dot(h, f_.ray(apex)) < 0)
      for (auto& x : h) x = -x;

    for (auto j : I_) {
      if (std::binary_search(cands_[owner].begin(), cands_[owner].end(), j)) continue;
      if (dot(h, f_.ray(j)) >= 0) continue;
      IndexSet J = F;
      J.insert(std::upper_bound(J.begin(), J.end(), j), j);
      auto it = index_.find(J);
      if (it == index_.end()) continue;
      std::size_t cand = it->second;
      bool ok = true;
      for (auto s : chosen)
        if (!compatible(s, cand)) {
          ok = false;
          break;
        }
      auto fs = facets_of(J);
      for (auto& G : fs)
        if (counts.count(G) && counts[G] >= 2) ok = false;
      if (!ok) continue;
      chosen.push_back(cand);
      for (auto& G : fs) ++counts[G];
      extend(chosen, counts);
      for (auto& G : fs)
        if (--counts[G] == 0) counts.erase(G);
      chosen.pop_back();
    }
  }

  const Fan& f_;
  IndexSet I_;
  std::size_t n_;
  Cone sigma_;
  std::vector<IndexSet> cands_;
  std::vector<Cone> cand_cones_;
  std::map<IndexSet, std::size_t> index_;
  std::map<std::pair<std::size_t, std::size_t>, bool> compat_;
  std::map<IndexSet, bool> boundary_;
  std::set<std::vector<IndexSet>> results_;
};

}  // namespace detail

/// Every subdivision of maximal cone `cone_index` into simplicial cones that
/// uses only that cone's own rays. Each triangulation is a sorted list of
/// n-element index sets; the list of triangulations is sorted too.
inline std::vector<std::vector<IndexSet>> triangulations_of_cone(const Fan& f, std::size_t cone_index) {
  if (cone_index >= f.max_cones().size())
    throw Error(ErrorCode::precondition, "cone index out of range");
  const IndexSet& I = f.max_cones()[cone_index];
  Cone c = f.cone_of(I);
  if (c.dim() != f.dim()) throw Error(ErrorCode::precondition, "cone is not full-dimensional");
  if (I.size() == f.dim()) return {{I}};
  return detail::TriangulationSearch(f, I).run();
}

/// All simplicial refinements obtained by triangulating each non-simplicial
/// maximal cone independently, in odometer order (last cone fastest).
/// Combinations whose pieces disagree on a shared non-simplicial face (only
/// possible from dimension 4 on) fail validation and are dropped.
inline std::vector<Fan> simplicial_subdivisions(const Fan& f, ExecOptions opts = {}) {
  require_valid(f);
  if (!is_complete(f)) throw Error(ErrorCode::precondition, "fan is not complete");
  const auto& cones = f.max_cones();
  std::vector<IndexSet> fixed;
  std::vector<std::size_t> open;
  for (std::size_t k = 0; k < cones.size(); ++k) {
    if (cones[k].size() == f.dim()) fixed.push_back(cones[k]);
    else open.push_back(k);
  }
  if (open.empty()) return {f};
  auto per_cone = parallel_map<std::vector<std::vector<IndexSet>>>(
      open.size(), [&](std::size_t i) { return triangulations_of_cone(f, open[i]); }, opts);
  for (const auto& t : per_cone)
    if (t.empty()) throw Error(ErrorCode::internal, "cone admits no triangulation");

  std::vector<Fan> out;
  std::vector<std::size_t> digit(open.size(), 0);
  while (true) {
    std::vector<IndexSet> cs = fixed;
    for (std::size_t i = 0; i < open.size(); ++i)
      for (const auto& piece : per_cone[i][digit[i]]) cs.push_back(piece);
    Fan child(f.fan_matrix(), std::move(cs));
    if (validate(child).valid()) out.push_back(std::move(child));
    std::size_t i = open.size();
    while (i > 0) {
      if (++digit[i - 1] < per_cone[i - 1].size()) break;
      digit[i - 1] = 0;
      --i;
    }
    if (i == 0) break;
  }
  return out;
}

struct SubdivisionReport {
  Fan parent;
  Fan child;
  std::vector<IndexSet> added_walls;  // (n-1)-dim faces new in child
};

/// Codimension-one faces of `child` that are not faces of `parent`; one per
/// exceptional curve of the induced small morphism.
inline SubdivisionReport added_walls(const Fan& parent, const Fan& child) {
  if (!(parent.fan_matrix() == child.fan_matrix()))
    throw Error(ErrorCode::not_refinement, "ray sets differ");
  require_valid(parent);
  require_valid(child);
  for (const auto& c : child.max_cones()) {
    Cone cc = child.cone_of(c);
    bool inside = false;
    for (const auto& p : parent.max_cones())
      if (parent.cone_of(p).includes(cc)) {
        inside = true;
        break;
      }
    if (!inside) throw Error(ErrorCode::not_refinement, "cone " + label(c) + " lies in no parent cone");
  }
  std::set<IndexSet> old_faces, walls;
  for (const auto& p : parent.max_cones())
    for (auto& s : parent.facet_sets(p)) old_faces.insert(s);
  for (const auto& c : child.max_cones())
    for (auto& s : child.facet_sets(c))
      if (!old_faces.count(s)) walls.insert(s);
  return {parent, child, {walls.begin(), walls.end()}};
}

}  // namespace toricflip
