#pragma once

// Certified D-flips from non-projective complete simplicial fans, and the
// resolve-then-flip pipeline producing a projective model over the same rays.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "toricflip/divisor.hpp"

namespace toricflip {

struct VerificationReport {
  std::vector<std::pair<std::string, bool>> checks;

  bool all_passed() const {
    for (const auto& [name, ok] : checks)
      if (!ok) return false;
    return !checks.empty();
  }
  bool passed(const std::string& name) const {
    for (const auto& [n, ok] : checks)
      if (n == name) return ok;
    return false;
  }
};

// check names, in report order
inline constexpr const char* kCheckSmallModification = "small_modification";
inline constexpr const char* kCheckTargetProjective = "target_projective";
inline constexpr const char* kCheckNefProperFace = "nef_proper_face";
inline constexpr const char* kCheckCartierOnSource = "cartier_on_source";
inline constexpr const char* kCheckClassPosition = "class_position";
inline constexpr const char* kCheckAmpleOnTarget = "ample_on_target";

struct FlipCertificate {
  Fan source;
  Fan target;
  TDivisor divisor;
  DivClass divisor_class;
  Cone source_nef;
  Cone target_chamber;
  VerificationReport checks;
};

/// Rechecks every condition making source --> target a D-flip. Total: a
/// failing computation marks its check false instead of throwing.
inline VerificationReport verify_flip(const FlipCertificate& c, const WeightMatrix& W) {
  VerificationReport rep;
  auto run = [&](const char* name, auto&& fn) {
    bool ok = false;
    try {
      ok = fn();
    } catch (const std::exception&) {
      ok = false;
    }
    rep.checks.emplace_back(name, ok);
  };
  std::optional<Cone> sn, tn;
  try {
    sn = nef_cone(c.source, W);
  } catch (const std::exception&) {
  }
  try {
    tn = nef_cone(c.target, W);
  } catch (const std::exception&) {
  }

  run(kCheckSmallModification, [&] {
    return c.source.fan_matrix() == c.target.fan_matrix() &&
           c.source.max_cones() != c.target.max_cones();
  });
  run(kCheckTargetProjective, [&] {
    return validate(c.target).valid() && is_complete(c.target) && is_simplicial(c.target) &&
           is_projective(c.target, W);
  });
  bool proper_face = false;
  run(kCheckNefProperFace, [&] {
    proper_face = sn && tn && is_face(*sn, *tn) && !(*sn == *tn);
    return proper_face;
  });
  run(kCheckCartierOnSource,
      [&] { return c.divisor.is_integral() && is_cartier(c.source, c.divisor).cartier; });
  run(kCheckClassPosition, [&] {
    if (!sn || !tn) return false;
    DivClass cls = divisor_class(W, c.divisor);
    if (cls != c.divisor_class) return false;
    if (tn->contains(cls) != Location::interior) return false;
    Location s = sn->contains(cls);
    return s != Location::interior && (!proper_face || s == Location::outside);
  });
  run(kCheckAmpleOnTarget, [&] { return is_ample(c.target, W, c.divisor); });
  return rep;
}

namespace detail {

/// A rational preimage of w under Q: supported on the lexicographically
/// first invertible r-column subset.
inline TDivisor preimage_of_class(const WeightMatrix& W, const QVector& w) {
  for (auto& B : k_subsets(W.columns(), W.rank())) {
    auto QB = to_rational(W.Q.select_columns(B));
    if (rank(QB) != W.rank()) continue;
    auto a = solve(QB, w);
    TDivisor d;
    d.coeffs.assign(W.columns(), Rat(0));
    for (std::size_t t = 0; t < B.size(); ++t) d.coeffs[B[t]] = (*a)[t];
    return d;
  }
  throw Error(ErrorCode::internal, "weight matrix has no invertible column subset");
}

}  // namespace detail

/// A D-flip from a non-projective complete simplicial fan to a projective
/// one over the same rays. The target chamber is the canonically least
/// full-dimensional chamber having Nef(source) as a face.
inline FlipCertificate find_flip(const Fan& f, const WeightMatrix& W, ExecOptions opts = {}) {
  require_simplicial_complete(f, W);
  Cone nef = nef_cone(f, W);
  if (nef.dim() == W.rank()) throw Error(ErrorCode::precondition, "fan is already projective");

  SecondaryFan sf = secondary_fan(W, opts);
  const Chamber* gamma = nullptr;
  for (const auto& ch : sf.chambers)  // already in canonical order
    if (is_face(nef, ch.cone)) {
      gamma = &ch;
      break;
    }
  if (!gamma)
    throw Error(ErrorCode::internal, "no full-dimensional chamber has the nef cone as a face");

  FlipCertificate cert;
  cert.source = f;
  cert.target = chamber_to_fan(W, gamma->cone, f.fan_matrix());
  cert.source_nef = nef;
  cert.target_chamber = gamma->cone;
  TDivisor a = detail::preimage_of_class(W, relint_point(gamma->cone));
  Int t = cartier_multiple(f, a);
  cert.divisor = a.scaled(Rat(t));
  cert.divisor_class = divisor_class(W, cert.divisor);
  cert.checks = verify_flip(cert, W);
  return cert;
}

struct PipelineResult {
  Fan input;
  std::optional<SubdivisionReport> resolution;
  std::optional<FlipCertificate> flip;
  Fan final_fan;
  WeightMatrix weights;
};

struct ProjectivizeOptions {
  bool prefer_projective_subdivision = false;
  std::optional<IMatrix> weights;  // user-supplied Q; validated against V
  ExecOptions exec;
};

/// Small Q-factorial resolution (if needed) followed by at most one D-flip.
inline PipelineResult projectivize(const Fan& f, const ProjectivizeOptions& opts = {}) {
  require_valid(f);
  if (!is_complete(f)) throw Error(ErrorCode::precondition, "fan is not complete");
  PipelineResult out;
  out.input = f;
  out.weights = opts.weights ? supplied_weights(f.fan_matrix(), *opts.weights)
                             : gale_dual(f.fan_matrix());
  const WeightMatrix& W = out.weights;

  Fan resolved = f;
  if (!is_simplicial(f)) {
    auto subs = simplicial_subdivisions(f, opts.exec);
    resolved = subs.front();
    if (opts.prefer_projective_subdivision)
      for (const auto& s : subs)
        if (is_projective(s, W)) {
          resolved = s;
          break;
        }
    out.resolution = added_walls(f, resolved);
  }
  if (is_projective(resolved, W)) {
    out.final_fan = resolved;
  } else {
    out.flip = find_flip(resolved, W, opts.exec);
    if (!out.flip->checks.all_passed())
      throw Error(ErrorCode::internal, "constructed flip failed verification");
    out.final_fan = out.flip->target;
  }
  if (!is_projective(out.final_fan, W))
    throw Error(ErrorCode::internal, "pipeline ended on a non-projective fan");
  return out;
}

}  // namespace toricflip
