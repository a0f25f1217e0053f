#pragma once

#include <functional>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "slicealg/domain.hpp"
#include "slicealg/path.hpp"
#include "slicealg/quaternion.hpp"

namespace slicealg {

using MultiIndex = std::vector<unsigned>;

/// f(q) = sum_k q_1^{k_1} ... q_n^{k_n} a_k, coefficients on the right.
class PolyFunction {
 public:
  explicit PolyFunction(std::size_t n) : n_(n) {}
  PolyFunction(std::size_t n, std::map<MultiIndex, Quaternion> terms);

  /// One-variable polynomial from coefficients a_0, a_1, ...
  static PolyFunction univariate(const std::vector<Quaternion>& coeffs);
  static PolyFunction constant(std::size_t n, const Quaternion& c);

  std::size_t dim() const { return n_; }
  const std::map<MultiIndex, Quaternion>& terms() const { return terms_; }
  /// Adds a into the coefficient of q^k.
  void add_term(const MultiIndex& k, const Quaternion& a);
  unsigned degree() const;

  /// Evaluation at a point of one slice. Same-slice coordinates commute, so
  /// the monomial order is immaterial.
  Quaternion operator()(const SlicePoint& q) const;

 private:
  std::size_t n_;
  std::map<MultiIndex, Quaternion> terms_;
};

/// Analytic continuation of the principal branch of sqrt or log (n = 1),
/// started at a positive real point.
struct MonodromyFunction {
  enum class Branch { Sqrt, Log };
  Branch branch = Branch::Sqrt;

  Complex principal(const Complex& z) const;
  /// Continues the principal value at gamma(0) along the path. Throws
  /// BranchPointHit when the path comes within 1e-9 of 0.
  Complex continue_along(const PathFragment& gamma) const;
};

/// A function given directly by evaluators (used for star products and probes).
struct CustomFunction {
  std::function<Quaternion(const PLPath&, const ImaginaryUnit&)> along;
  std::function<Quaternion(const SlicePoint&)> point;  ///< may be empty
  std::string label;
};

/// A slice function with its declared domain.
struct SliceFunction {
  using Body = std::variant<PolyFunction, MonodromyFunction, CustomFunction>;

  Body body;
  SliceDomain domain;

  static SliceFunction poly(PolyFunction p) {
    const std::size_t n = p.dim();
    return {std::move(p), SliceDomain::full_space(n)};
  }
  static SliceFunction poly(PolyFunction p, SliceDomain d) { return {std::move(p), std::move(d)}; }
  static SliceFunction sqrt(SliceDomain d = SliceDomain::slit_plane()) {
    return {MonodromyFunction{MonodromyFunction::Branch::Sqrt}, std::move(d)};
  }
  static SliceFunction log(SliceDomain d = SliceDomain::slit_plane()) {
    return {MonodromyFunction{MonodromyFunction::Branch::Log}, std::move(d)};
  }

  std::size_t dim() const { return domain.dim(); }
  /// Whether values at points are path-independent (polynomials always,
  /// monodromy functions only on the slit plane).
  bool pointwise() const;
};

/// f(q). Throws OutOfDomain, or PathRequired when the value depends on the path.
Quaternion eval_point(const SliceFunction& f, const SlicePoint& q);

/// f o gamma^I(1). Throws PathLeavesDomain when the sampled lift leaves the declared domain.
Quaternion eval_along(const SliceFunction& f, const PLPath& gamma, const ImaginaryUnit& unit);

}  // namespace slicealg
