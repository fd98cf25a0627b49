// Command-line surface: family grid scans, exact reduction and conjugacy
// queries, factor-sail export, the nonreduced census, and ray diagnostics.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <algorithm>
#include <set>

#include <CLI11.hpp>
#include <json.hpp>

#include "sl3reduce/cubic_form.hpp"
#include "sl3reduce/reduction.hpp"
#include "sl3reduce/spectra.hpp"
#include "sl3reduce/survey.hpp"

using namespace sl3;

namespace {

struct CommonOpts {
  std::string config;
  std::optional<long> box_bound;
  std::optional<int> orbit_samples;
  std::optional<double> padding;
  std::optional<long long> cell_budget;
  std::optional<std::string> cache_dir;
  std::optional<int> workers;

  SurveyConfig resolve() const {
    SurveyConfig cfg;
    if (!config.empty()) cfg = load_config_file(config);
    if (box_bound) cfg.box_bound = *box_bound;
    if (orbit_samples) cfg.orbit_samples = *orbit_samples;
    if (padding) cfg.padding = *padding;
    if (cell_budget) cfg.cell_budget = *cell_budget;
    if (cache_dir) cfg.cache_dir = *cache_dir;
    if (workers) cfg.workers = *workers;
    return cfg;
  }
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--config", o.config, "key=value config file");
  cmd->add_option("--box-bound", o.box_bound, "box-search bound for RS verdicts");
  cmd->add_option("--orbit-samples", o.orbit_samples, "orbit sampling count");
  cmd->add_option("--padding", o.padding, "outward region padding");
  cmd->add_option("--cell-budget", o.cell_budget, "candidate-scan cell budget");
  cmd->add_option("--cache-dir", o.cache_dir, "cell verdict cache directory");
  cmd->add_option("--workers", o.workers, "worker thread count (0 = auto)");
}

std::pair<long, long> parse_range(const std::string& s) {
  auto colon = s.find(':');
  if (colon == std::string::npos) throw ParseError("range must be lo:hi, got '" + s + "'");
  try {
    long lo = std::stol(s.substr(0, colon));
    long hi = std::stol(s.substr(colon + 1));
    if (lo > hi) throw ParseError("empty range '" + s + "'");
    return {lo, hi};
  } catch (const std::invalid_argument&) {
    throw ParseError("bad range '" + s + "'");
  }
}

std::pair<Int, Int> parse_pair(const std::string& s) {
  auto comma = s.find(',');
  if (comma == std::string::npos) throw ParseError("expected 'a,b', got '" + s + "'");
  try {
    return {Int(s.substr(0, comma), 10), Int(s.substr(comma + 1), 10)};
  } catch (const std::invalid_argument&) {
    throw ParseError("bad integer pair '" + s + "'");
  }
}

void emit(const std::string& bytes, const std::string& path) {
  if (path.empty()) {
    std::cout << bytes;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << bytes;
}

Vec3Z seed_for(const HessenbergType& t, const std::string& v_text) {
  return v_text.empty() ? complete_type(t) : Vec3Z::from_text(v_text);
}

int run_classify(const CommonOpts& common, const std::string& type_text,
                 const std::string& v_text, const std::string& m_range,
                 const std::string& n_range, const std::string& out,
                 const std::string& svg, const std::string& csv) {
  SurveyConfig cfg = common.resolve();
  HessenbergType t = HessenbergType::from_text(type_text);
  Vec3Z v = seed_for(t, v_text);
  auto [mlo, mhi] = parse_range(m_range);
  auto [nlo, nhi] = parse_range(n_range);
  FamilyGrid g = scan_family(t, v, Window{mlo, mhi, nlo, nhi}, cfg);
  emit(render_grid_json(g), out);
  if (!svg.empty()) emit(render_grid_svg(g), svg);
  if (!csv.empty()) emit(render_grid_csv(g), csv);
  return 0;
}

int run_reduce(const CommonOpts& common, const std::string& matrix_text,
               const std::string& out) {
  SurveyConfig cfg = common.resolve();
  Mat3Z m = Mat3Z::from_text(matrix_text);
  PerfectReduction pr = reduce_to_perfect_with_basis(m, Vec3Z(1, 0, 0));
  ReductionVerdict verdict = is_sigma_reduced(pr.result, cfg.reduction());

  nlohmann::json j;
  j["input"] = m.to_text();
  j["hessenberg"] = pr.result.to_text();
  j["complexity"] = complexity(type_of(pr.result).first).get_str();
  j["verdict"] = nlohmann::json::parse(render_verdict_json(verdict));
  if (spectrum_class(m) == SpectrumClass::NRS) {
    ReducedSet set = sigma_reduced_set(m, cfg.reduction());
    j["mu"] = set.mu.get_str();
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& h : set.matrices) arr.push_back(h.to_text());
    j["reduced_set"] = std::move(arr);
  }
  emit(j.dump(2) + "\n", out);
  return 0;
}

int run_conjugate(const CommonOpts& common, const std::string& m1_text,
                  const std::string& m2_text, const std::string& out) {
  SurveyConfig cfg = common.resolve();
  Mat3Z m1 = Mat3Z::from_text(m1_text);
  Mat3Z m2 = Mat3Z::from_text(m2_text);
  nlohmann::json j;
  j["conjugate"] = false;
  j["shared"] = nlohmann::json::array();
  if (charpoly_coeffs(m1) == charpoly_coeffs(m2)) {
    ReducedSet s1 = sigma_reduced_set(m1, cfg.reduction());
    ReducedSet s2 = sigma_reduced_set(m2, cfg.reduction());
    std::vector<Mat3Z> shared;
    std::set_intersection(s1.matrices.begin(), s1.matrices.end(), s2.matrices.begin(),
                          s2.matrices.end(), std::back_inserter(shared));
    j["conjugate"] = !shared.empty();
    for (const auto& h : shared) j["shared"].push_back(h.to_text());
  }
  emit(j.dump(2) + "\n", out);
  return 0;
}

int run_sail(const CommonOpts&, const std::string& matrix_text, long bound,
             const std::string& out) {
  Mat3Z m = Mat3Z::from_text(matrix_text);
  emit(render_sail_json(factor_sail(m, bound)), out);
  return 0;
}

int run_census(const CommonOpts& common, long max_complexity, const std::string& out) {
  SurveyConfig cfg = common.resolve();
  std::vector<SurveyReport> reports;
  bool all_stable = true;
  for (const auto& t : perfect_types_up_to_complexity(max_complexity)) {
    reports.push_back(count_nonreduced_stabilized(t, complete_type(t), cfg));
    all_stable = all_stable && reports.back().stabilized;
  }
  emit(render_census_csv(reports), out);
  return all_stable ? 0 : 3;
}

int run_ray(const CommonOpts& common, const std::string& type_text, const std::string& v_text,
            int index, const std::string& base, long steps, const std::string& out) {
  SurveyConfig cfg = common.resolve();
  HessenbergType t = HessenbergType::from_text(type_text);
  auto [bm, bn] = parse_pair(base);
  RaySpec ray{t, seed_for(t, v_text), bm, bn, index};
  emit(render_ray_json(scan_ray(ray, steps, cfg)), out);
  return 0;
}

int run_diagnose_ray(const std::string& type_text, const std::string& v_text, int index,
                     const std::string& base, const std::string& point,
                     const std::string& t_list, const std::string& out) {
  HessenbergType t = HessenbergType::from_text(type_text);
  auto [bm, bn] = parse_pair(base);
  auto [px, py] = parse_pair(point);
  std::vector<long> ts;
  std::string cur;
  for (char c : t_list + ",") {
    if (c == ',') {
      if (!cur.empty()) ts.push_back(std::stol(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  RaySpec ray{t, seed_for(t, v_text), bm, bn, index};
  emit(render_ray_diagnostics_json(ray_diagnostics(ray, ts, px, py)), out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact sigma-reduction and integer conjugacy for SL(3,Z) Hessenberg matrices"};
  app.require_subcommand(1);

  CommonOpts common;

  auto* classify = app.add_subcommand("classify", "scan a Hessenberg family window");
  std::string cl_type, cl_v, cl_m, cl_n, cl_out, cl_svg, cl_csv;
  classify->add_option("--type", cl_type, "Hessenberg type a11,a21|a12,a22,a32")->required();
  classify->add_option("--v", cl_v, "third-column seed (default: canonical completion)");
  classify->add_option("--m", cl_m, "m range lo:hi")->required();
  classify->add_option("--n", cl_n, "n range lo:hi")->required();
  classify->add_option("--out", cl_out, "grid JSON output path (default stdout)");
  classify->add_option("--svg", cl_svg, "grid SVG output path");
  classify->add_option("--csv", cl_csv, "grid CSV output path");
  add_common(classify, common);

  auto* reduce = app.add_subcommand("reduce", "sigma-reduction verdict and reduced set");
  std::string rd_matrix, rd_out;
  reduce->add_option("--matrix", rd_matrix, "matrix rows 'a,b,c;d,e,f;g,h,i'")->required();
  reduce->add_option("--out", rd_out, "output path (default stdout)");
  add_common(reduce, common);

  auto* conjugate = app.add_subcommand("conjugate", "decide integer conjugacy");
  std::string cj_m1, cj_m2, cj_out;
  conjugate->add_option("--m1", cj_m1, "first matrix")->required();
  conjugate->add_option("--m2", cj_m2, "second matrix")->required();
  conjugate->add_option("--out", cj_out, "output path (default stdout)");
  add_common(conjugate, common);

  auto* sail = app.add_subcommand("sail", "export truncated factor-sails as JSON");
  std::string sl_matrix, sl_out;
  long sl_bound = 30;
  sail->add_option("--matrix", sl_matrix, "NRS matrix")->required();
  sail->add_option("--bound", sl_bound, "lattice enumeration bound");
  sail->add_option("--out", sl_out, "output path (default stdout)");
  add_common(sail, common);

  auto* census = app.add_subcommand("census", "stabilized nonreduced counts per type");
  long cs_max = 4;
  std::string cs_out;
  census->add_option("--max-complexity", cs_max, "largest Hessenberg complexity");
  census->add_option("--out", cs_out, "output path (default stdout)");
  add_common(census, common);

  auto* ray = app.add_subcommand("ray", "classify the cells of a family ray");
  std::string ry_type, ry_v, ry_base, ry_out;
  int ry_index = 1;
  long ry_steps = 50;
  ray->add_option("--type", ry_type)->required();
  ray->add_option("--v", ry_v);
  ray->add_option("--index", ry_index, "1: direction (-1,0); 2: direction (a11,a21)");
  ray->add_option("--base", ry_base, "base point m,n")->required();
  ray->add_option("--steps", ry_steps);
  ray->add_option("--out", ry_out, "output path (default stdout)");
  add_common(ray, common);

  auto* diag = app.add_subcommand("diagnose-ray", "exact MD slope and orbit axis-ratio fit");
  std::string dg_type, dg_v, dg_base, dg_point, dg_t = "1000,3000,10000", dg_out;
  int dg_index = 1;
  diag->add_option("--type", dg_type)->required();
  diag->add_option("--v", dg_v);
  diag->add_option("--index", dg_index);
  diag->add_option("--base", dg_base, "base point m,n")->required();
  diag->add_option("--point", dg_point, "fixed point x,y (z = 0)")->required();
  diag->add_option("--t", dg_t, "comma-separated t values for the axis-ratio fit");
  diag->add_option("--out", dg_out, "output path (default stdout)");
  add_common(diag, common);

  try {
    app.parse(argc, argv);
    if (classify->parsed())
      return run_classify(common, cl_type, cl_v, cl_m, cl_n, cl_out, cl_svg, cl_csv);
    if (reduce->parsed()) return run_reduce(common, rd_matrix, rd_out);
    if (conjugate->parsed()) return run_conjugate(common, cj_m1, cj_m2, cj_out);
    if (sail->parsed()) return run_sail(common, sl_matrix, sl_bound, sl_out);
    if (census->parsed()) return run_census(common, cs_max, cs_out);
    if (ray->parsed())
      return run_ray(common, ry_type, ry_v, ry_index, ry_base, ry_steps, ry_out);
    if (diag->parsed())
      return run_diagnose_ray(dg_type, dg_v, dg_index, dg_base, dg_point, dg_t, dg_out);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const BudgetExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const RegionTooLarge& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
