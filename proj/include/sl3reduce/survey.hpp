#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sl3reduce/hessenberg.hpp"
#include "sl3reduce/klein_voronoi.hpp"
#include "sl3reduce/mat3.hpp"
#include "sl3reduce/reduction.hpp"

namespace sl3 {

// Scan-wide knobs.  File format: plain `key=value` lines ('#' starts a
// comment); recognized keys: box_bound, orbit_samples, padding, cell_budget,
// cache_dir, workers.  CLI flags override file values.
struct SurveyConfig {
  long box_bound = 100;
  int orbit_samples = 256;
  double padding = 1e-6;
  long long cell_budget = 1000000000LL;
  std::string cache_dir;
  int workers = 0;  // 0 = hardware concurrency
  bool rs_verdicts = true;   // census scans skip expensive RS verdicts
  bool power_detect = true;  // power-root detection on reduced NRS cells

  ReductionConfig reduction() const;
  std::string fingerprint() const;  // verdict-relevant part, for cache keys
};

SurveyConfig load_config_file(const std::string& path);
void apply_config_line(SurveyConfig& cfg, const std::string& line);

enum class CellClass {
  ReduciblePoly,
  NrsReduced,
  NrsReducedPower,
  NrsNonreduced,
  RsNonreduced,
  RsProbablyReduced,
  RsReducedCertified,
  Degenerate,
};
std::string to_string(CellClass);
std::optional<CellClass> cell_class_from_string(const std::string&);

struct CellResult {
  CellClass cls = CellClass::Degenerate;
  Int sigma;
  Int delta;
  std::optional<Int> mu;
  long q = 0;      // mod-q certificate modulus, when one backs the verdict
  long bound = 0;  // box bound behind an RS verdict
  std::string error;
};

CellResult classify_cell(const HessenbergType& t, const Vec3Z& v, const Int& m, const Int& n,
                         const SurveyConfig& cfg);

struct Window {
  long m_lo, m_hi, n_lo, n_hi;
  long area() const { return (m_hi - m_lo + 1) * (n_hi - n_lo + 1); }
};

struct FamilyGrid {
  HessenbergType type;
  Vec3Z v;
  Window window{};
  std::vector<CellResult> cells;  // m-major, n ascending inside each m

  const CellResult& cell(long m, long n) const;
  long count(CellClass c) const;
};

FamilyGrid scan_family(const HessenbergType& t, const Vec3Z& v, const Window& w,
                       const SurveyConfig& cfg);

struct SurveyReport {
  HessenbergType type;
  Vec3Z v;
  Int sigma;
  long nonreduced = 0;
  long window = 0;  // half-width of the final square window
  bool stabilized = false;
  double seconds = 0;
};

// Doubles the square window [-w, w]^2 from `start_window` until the
// NrsNonreduced count is unchanged across two consecutive doublings; a report
// with stabilized = false is returned when `max_window` is reached first.
SurveyReport count_nonreduced_stabilized(const HessenbergType& t, const Vec3Z& v,
                                         const SurveyConfig& cfg, long start_window = 16,
                                         long max_window = 512);

struct RayScan {
  RaySpec ray;
  std::vector<CellResult> cells;  // index = t
  long trailing_reduced = 0;      // length of the trailing all-reduced run
};
RayScan scan_ray(const RaySpec& r, long t_max, const SurveyConfig& cfg);

struct RayDiagnostics {
  bool affine_ok = false;
  Int slope;          // exact F(t+1) - F(t) of the signed form
  Int slope_formula;  // (a21 x - a11 y) a32^2 y^2
  bool slope_ok = false;
  double exponent = 0;  // log-log fit of the orbit axis ratio
  bool exponent_ok = false;
  std::vector<std::pair<long, double>> ratios;
};
RayDiagnostics ray_diagnostics(const RaySpec& r, const std::vector<long>& t_values,
                               const Int& px, const Int& py);

// Perfect types of complexity <= max_sigma admitting a unimodular completion,
// in (sigma, a32, a21, a11, a12, a22) order.
std::vector<HessenbergType> perfect_types_up_to_complexity(long max_sigma);

// deterministic renderers
std::string render_grid_json(const FamilyGrid&);
std::string render_grid_csv(const FamilyGrid&);
std::string render_grid_svg(const FamilyGrid&);
std::string render_sail_json(const FactorSail&);
std::string render_verdict_json(const ReductionVerdict&);
std::string render_ray_json(const RayScan&);
std::string render_ray_diagnostics_json(const RayDiagnostics&);
std::string render_census_csv(const std::vector<SurveyReport>&);

}  // namespace sl3
