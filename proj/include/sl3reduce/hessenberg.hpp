#pragma once

#include <string>
#include <utility>

#include "sl3reduce/mat3.hpp"

namespace sl3 {

// The five entries <a11,a21|a12,a22,a32> of the first two columns of an
// upper Hessenberg matrix.
struct HessenbergType {
  Int a11, a21, a12, a22, a32;

  bool operator==(const HessenbergType&) const = default;
  bool operator<(const HessenbergType& o) const;

  bool is_perfect() const {
    return 0 <= a11 && a11 < a21 && 0 <= a12 && a12 < a32 && 0 <= a22 && a22 < a32;
  }

  std::string to_text() const;  // "a11,a21|a12,a22,a32"
  static HessenbergType from_text(const std::string&);
};

// Hessenberg complexity a21^2 * a32: the volume of the parallelepiped spanned
// by (1,0,0), M(1,0,0), M^2(1,0,0).  Throws DegenerateType when a21*a32 = 0.
Int complexity(const HessenbergType& t);

// Extracts the type of a Hessenberg matrix and whether it is perfect.
// Throws NotHessenberg when entry (3,1) is nonzero.
std::pair<HessenbergType, bool> type_of(const Mat3Z& m);

// Canonical third-column seed v = (a13,a23,a33) making det = 1:
// the lexicographically smallest completion with non-negative entries.
// Throws NoUnimodularCompletion when no integer completion exists.
Vec3Z complete_type(const HessenbergType& t);

struct FamilyPoint {
  HessenbergType type;
  Vec3Z v;
  Int m, n;
};

// H_Omega^v(m,n): first two columns from the type, third column
// (a11 m + a12 n + a13, a21 m + a22 n + a23, a32 n + a33).
Mat3Z family_matrix(const FamilyPoint& pt);
Mat3Z family_matrix(const HessenbergType& t, const Vec3Z& v, const Int& m, const Int& n);

struct RaySpec {
  HessenbergType type;
  Vec3Z v;
  Int base_m, base_n;
  int index = 1;  // 1: direction (-1,0); 2: direction (a11,a21)
};

Mat3Z ray_matrix(const RaySpec& r, const Int& t);
std::pair<Int, Int> ray_point(const RaySpec& r, const Int& t);  // (m,n) of the t-th element

// Test hook for the basis-completion steps of the reduction algorithm: shears
// add multiples of earlier basis vectors to a completion, flips negate it.
// The output matrix is invariant under any perturbation (asserted in tests).
struct CompletionPerturbation {
  long g2_shear = 0;
  bool g2_flip = false;
  long g3_shear1 = 0;
  long g3_shear2 = 0;
  bool g3_flip = false;
};

struct PerfectReduction {
  Mat3Z result;  // perfect Hessenberg, equal to basis^{-1} * M * basis
  Mat3Z basis;   // unimodular, first column = w
};

// The matrix (M|w): conjugates M into perfect Hessenberg form by completing
// the primitive vector w to a basis of Z^3 adapted to w, Mw.
// Requires det(M) = 1 and an irreducible characteristic polynomial.
PerfectReduction reduce_to_perfect_with_basis(const Mat3Z& m, const Vec3Z& w,
                                              const CompletionPerturbation& tweak = {});
Mat3Z reduce_to_perfect(const Mat3Z& m, const Vec3Z& w);

}  // namespace sl3
