#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sl3reduce/cubic_form.hpp"
#include "sl3reduce/hessenberg.hpp"
#include "sl3reduce/mat3.hpp"

namespace sl3 {

struct ReductionConfig {
  long box_bound = 100;                    // RS evidence bound
  long long cell_budget = 1000000000LL;    // candidate-scan budget
  int orbit_samples = 256;                 // orbit sampling for candidate regions
  double padding = 1e-6;                   // outward region padding
};

// Exact minimum of the MD-characteristic over nonzero |w|_inf <= bound.
// Witnesses are the minimizing primitive vectors (scan order deterministic);
// when the minimum 1 is hit on an irreducible input the scan stops early.
struct BoxSearchResult {
  Int mu;
  std::vector<Vec3Z> witnesses;
  bool early_exit = false;
};
BoxSearchResult box_search_min(const Mat3Z& m, long bound);

// Global minimum of the MD-characteristic of an NRS operator, computed over
// the Klein-Voronoi candidate set.  Non-Hessenberg input is first conjugated
// to perfect Hessenberg form so the candidate region stays small; argmins are
// transported back to the original coordinates.
struct MinMd {
  Int mu;
  std::vector<Vec3Z> argmins;
};
MinMd min_md_over_candidates(const Mat3Z& m, const ReductionConfig& cfg = {});

// Sound certificate that no integer vector has MD-characteristic exactly c:
// true iff no residue class w mod q has F(w) congruent to +-c.
bool mod_q_obstruction(const Mat3Z& m, const Int& c, long q);

enum class VerdictKind { Reduced, Nonreduced, ProbablyReduced, Unknown };
enum class CertificateKind { None, KleinVoronoiMinimum, ModQObstruction };

std::string to_string(VerdictKind);
std::string to_string(CertificateKind);

struct ReductionVerdict {
  VerdictKind kind = VerdictKind::Unknown;
  CertificateKind certificate = CertificateKind::None;
  long q = 0;                    // modulus of a ModQObstruction certificate
  std::optional<Int> mu;         // class minimum (Reduced) or witness value (Nonreduced)
  std::vector<Vec3Z> witnesses;  // vectors realizing mu for Nonreduced verdicts
  long bound = 0;                // box bound backing an RS verdict
};

// Decision for a perfect Hessenberg matrix with det 1 and irreducible
// characteristic polynomial.  NRS verdicts are exact; RS verdicts are either
// exact (witness / mod-q certificate) or ProbablyReduced at the given bound.
ReductionVerdict is_sigma_reduced(const Mat3Z& m, const ReductionConfig& cfg = {});

// All sigma-reduced representatives of the class of an NRS matrix.
struct ReducedSet {
  Int mu;
  std::vector<Mat3Z> matrices;  // canonical (lexicographic) order
};
ReducedSet sigma_reduced_set(const Mat3Z& m, const ReductionConfig& cfg = {});

// Integer-conjugacy decision via the reduced sets.  Matrices with different
// characteristic polynomials are rejected immediately.
bool integer_conjugate(const Mat3Z& m1, const Mat3Z& m2, const ReductionConfig& cfg = {});

// Searches for an integer B with B^k = M and |det B| = 1 (k in {2, 3}) by
// reconstructing B = c0 + c1 M + c2 M^2 from k-th root branches of the
// eigenvalues; every returned matrix is verified exactly.
std::optional<Mat3Z> detect_power_root(const Mat3Z& m, int k);

}  // namespace sl3
