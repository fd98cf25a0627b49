#include "sl3reduce/survey.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "sl3reduce/cubic_form.hpp"
#include "sl3reduce/spectra.hpp"

namespace sl3 {

namespace fs = std::filesystem;
using nlohmann::json;

ReductionConfig SurveyConfig::reduction() const {
  ReductionConfig r;
  r.box_bound = box_bound;
  r.cell_budget = cell_budget;
  r.orbit_samples = orbit_samples;
  r.padding = padding;
  return r;
}

std::string SurveyConfig::fingerprint() const {
  std::ostringstream os;
  os << "box_bound=" << box_bound << ";orbit_samples=" << orbit_samples
     << ";padding=" << padding << ";cell_budget=" << cell_budget
     << ";rs_verdicts=" << rs_verdicts << ";power_detect=" << power_detect;
  return os.str();
}

void apply_config_line(SurveyConfig& cfg, const std::string& raw) {
  std::string line = raw.substr(0, raw.find('#'));
  auto is_space = [](char c) { return std::isspace(static_cast<unsigned char>(c)); };
  line.erase(std::remove_if(line.begin(), line.end(), is_space), line.end());
  if (line.empty()) return;
  auto eq = line.find('=');
  if (eq == std::string::npos) throw ParseError("config line without '=': " + raw);
  std::string key = line.substr(0, eq), val = line.substr(eq + 1);
  try {
    if (key == "box_bound")
      cfg.box_bound = std::stol(val);
    else if (key == "orbit_samples")
      cfg.orbit_samples = std::stoi(val);
    else if (key == "padding")
      cfg.padding = std::stod(val);
    else if (key == "cell_budget")
      cfg.cell_budget = std::stoll(val);
    else if (key == "cache_dir")
      cfg.cache_dir = val;
    else if (key == "workers")
      cfg.workers = std::stoi(val);
    else
      throw ParseError("unknown config key '" + key + "'");
  } catch (const std::invalid_argument&) {
    throw ParseError("bad config value in line: " + raw);
  } catch (const std::out_of_range&) {
    throw ParseError("config value out of range in line: " + raw);
  }
}

SurveyConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open config file " + path);
  SurveyConfig cfg;
  std::string line;
  while (std::getline(in, line)) apply_config_line(cfg, line);
  return cfg;
}

std::string to_string(CellClass c) {
  switch (c) {
    case CellClass::ReduciblePoly: return "ReduciblePoly";
    case CellClass::NrsReduced: return "NrsReduced";
    case CellClass::NrsReducedPower: return "NrsReducedPower";
    case CellClass::NrsNonreduced: return "NrsNonreduced";
    case CellClass::RsNonreduced: return "RsNonreduced";
    case CellClass::RsProbablyReduced: return "RsProbablyReduced";
    case CellClass::RsReducedCertified: return "RsReducedCertified";
    case CellClass::Degenerate: return "Degenerate";
  }
  return "?";
}

std::optional<CellClass> cell_class_from_string(const std::string& s) {
  for (CellClass c : {CellClass::ReduciblePoly, CellClass::NrsReduced,
                      CellClass::NrsReducedPower, CellClass::NrsNonreduced,
                      CellClass::RsNonreduced, CellClass::RsProbablyReduced,
                      CellClass::RsReducedCertified, CellClass::Degenerate})
    if (to_string(c) == s) return c;
  return std::nullopt;
}

namespace {

uint64_t fnv1a64(const std::string& s) {
  uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string cache_path(const SurveyConfig& cfg, const std::string& matrix_text) {
  uint64_t h = fnv1a64(matrix_text + "||" + cfg.fingerprint());
  char buf[17];
  snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return (fs::path(cfg.cache_dir) / (std::string(buf) + ".json")).string();
}

json cell_to_json(const CellResult& r) {
  json j;
  j["class"] = to_string(r.cls);
  j["sigma"] = r.sigma.get_str();
  j["delta"] = r.delta.get_str();
  if (r.mu) j["mu"] = r.mu->get_str();
  if (r.q) j["q"] = r.q;
  if (r.bound) j["bound"] = r.bound;
  if (!r.error.empty()) j["error"] = r.error;
  return j;
}

std::optional<CellResult> cell_from_json(const json& j) {
  CellResult r;
  auto cls = cell_class_from_string(j.value("class", ""));
  if (!cls) return std::nullopt;
  r.cls = *cls;
  try {
    r.sigma = Int(j.value("sigma", "0"), 10);
    r.delta = Int(j.value("delta", "0"), 10);
    if (j.contains("mu")) r.mu = Int(j["mu"].get<std::string>(), 10);
  } catch (const std::invalid_argument&) {
    return std::nullopt;
  }
  r.q = j.value("q", 0L);
  r.bound = j.value("bound", 0L);
  r.error = j.value("error", "");
  return r;
}

std::optional<CellResult> cache_load(const SurveyConfig& cfg, const std::string& matrix_text) {
  if (cfg.cache_dir.empty()) return std::nullopt;
  std::ifstream in(cache_path(cfg, matrix_text));
  if (!in) return std::nullopt;
  json j = json::parse(in, nullptr, false);
  if (j.is_discarded()) return std::nullopt;
  return cell_from_json(j);
}

void cache_store(const SurveyConfig& cfg, const std::string& matrix_text, const CellResult& r) {
  if (cfg.cache_dir.empty()) return;
  std::error_code ec;
  fs::create_directories(cfg.cache_dir, ec);
  std::string path = cache_path(cfg, matrix_text);
  std::ostringstream tid;
  tid << std::this_thread::get_id();
  std::string tmp = path + ".tmp." + tid.str();
  {
    std::ofstream out(tmp);
    if (!out) return;
    out << cell_to_json(r).dump();
  }
  fs::rename(tmp, path, ec);
  if (ec) fs::remove(tmp, ec);
}

void run_parallel(size_t n_tasks, int workers, const std::function<void(size_t)>& fn) {
  unsigned n = workers > 0 ? static_cast<unsigned>(workers)
                           : std::max(1u, std::thread::hardware_concurrency());
  if (n <= 1 || n_tasks <= 1) {
    for (size_t i = 0; i < n_tasks; ++i) fn(i);
    return;
  }
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i = next.fetch_add(1); i < n_tasks; i = next.fetch_add(1)) fn(i);
  };
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < n; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
}

}  // namespace

CellResult classify_cell(const HessenbergType& t, const Vec3Z& v, const Int& m, const Int& n,
                         const SurveyConfig& cfg) {
  Mat3Z mat = family_matrix(t, v, m, n);
  std::string key = mat.to_text();
  if (auto cached = cache_load(cfg, key)) return *cached;

  CellResult r;
  r.sigma = complexity(t);
  CharPoly cp = charpoly_coeffs(mat);
  r.delta = discriminant_from_coeffs(cp);
  try {
    SpectrumClass sc = spectrum_class(cp);
    if (sc == SpectrumClass::ReduciblePoly) {
      r.cls = CellClass::ReduciblePoly;
    } else if (sc == SpectrumClass::DegenerateDiscriminant) {
      r.cls = CellClass::Degenerate;
    } else if (sc == SpectrumClass::NRS) {
      ReductionVerdict verdict = is_sigma_reduced(mat, cfg.reduction());
      r.mu = verdict.mu;
      r.q = verdict.q;
      if (verdict.kind == VerdictKind::Nonreduced) {
        r.cls = CellClass::NrsNonreduced;
      } else {
        r.cls = CellClass::NrsReduced;
        if (cfg.power_detect &&
            (detect_power_root(mat, 2) || detect_power_root(mat, 3)))
          r.cls = CellClass::NrsReducedPower;
      }
    } else {  // RS
      if (!cfg.rs_verdicts) {
        r.cls = CellClass::RsProbablyReduced;
      } else {
        ReductionVerdict verdict = is_sigma_reduced(mat, cfg.reduction());
        r.mu = verdict.mu;
        r.q = verdict.q;
        r.bound = verdict.bound;
        switch (verdict.kind) {
          case VerdictKind::Nonreduced: r.cls = CellClass::RsNonreduced; break;
          case VerdictKind::Reduced: r.cls = CellClass::RsReducedCertified; break;
          default: r.cls = CellClass::RsProbablyReduced; break;
        }
      }
    }
  } catch (const Error& e) {
    r.cls = CellClass::Degenerate;
    r.error = e.what();
  }
  cache_store(cfg, key, r);
  return r;
}

const CellResult& FamilyGrid::cell(long m, long n) const {
  if (m < window.m_lo || m > window.m_hi || n < window.n_lo || n > window.n_hi)
    throw Error("cell outside the window");
  size_t idx = static_cast<size_t>(m - window.m_lo) *
                   static_cast<size_t>(window.n_hi - window.n_lo + 1) +
               static_cast<size_t>(n - window.n_lo);
  return cells[idx];
}

long FamilyGrid::count(CellClass c) const {
  long k = 0;
  for (const auto& r : cells)
    if (r.cls == c) ++k;
  return k;
}

FamilyGrid scan_family(const HessenbergType& t, const Vec3Z& v, const Window& w,
                       const SurveyConfig& cfg) {
  if (w.m_lo > w.m_hi || w.n_lo > w.n_hi) throw Error("empty scan window");
  FamilyGrid grid;
  grid.type = t;
  grid.v = v;
  grid.window = w;
  size_t n_cols = static_cast<size_t>(w.n_hi - w.n_lo + 1);
  size_t n_cells = static_cast<size_t>(w.m_hi - w.m_lo + 1) * n_cols;
  grid.cells.resize(n_cells);
  run_parallel(n_cells, cfg.workers, [&](size_t idx) {
    long m = w.m_lo + static_cast<long>(idx / n_cols);
    long n = w.n_lo + static_cast<long>(idx % n_cols);
    grid.cells[idx] = classify_cell(t, v, Int(m), Int(n), cfg);
  });
  return grid;
}

SurveyReport count_nonreduced_stabilized(const HessenbergType& t, const Vec3Z& v,
                                         const SurveyConfig& cfg, long start_window,
                                         long max_window) {
  auto t0 = std::chrono::steady_clock::now();
  SurveyConfig census_cfg = cfg;
  census_cfg.rs_verdicts = false;   // only NRS cells feed the count
  census_cfg.power_detect = false;

  SurveyReport rep;
  rep.type = t;
  rep.v = v;
  rep.sigma = complexity(t);
  std::vector<long> counts;
  for (long w = start_window; w <= max_window; w *= 2) {
    FamilyGrid g = scan_family(t, v, Window{-w, w, -w, w}, census_cfg);
    counts.push_back(g.count(CellClass::NrsNonreduced));
    rep.window = w;
    rep.nonreduced = counts.back();
    size_t k = counts.size();
    if (k >= 3 && counts[k - 1] == counts[k - 2] && counts[k - 2] == counts[k - 3]) {
      rep.stabilized = true;
      break;
    }
  }
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

RayScan scan_ray(const RaySpec& r, long t_max, const SurveyConfig& cfg) {
  if (t_max < 0) throw Error("t_max must be non-negative");
  RayScan scan;
  scan.ray = r;
  scan.cells.resize(t_max + 1);
  run_parallel(t_max + 1, cfg.workers, [&](size_t i) {
    auto [m, n] = ray_point(r, Int(static_cast<long>(i)));
    scan.cells[i] = classify_cell(r.type, r.v, m, n, cfg);
  });
  auto reduced = [](const CellResult& c) {
    return c.cls == CellClass::NrsReduced || c.cls == CellClass::NrsReducedPower ||
           c.cls == CellClass::RsReducedCertified;
  };
  long run = 0;
  for (auto it = scan.cells.rbegin(); it != scan.cells.rend() && reduced(*it); ++it) ++run;
  scan.trailing_reduced = run;
  return scan;
}

RayDiagnostics ray_diagnostics(const RaySpec& r, const std::vector<long>& t_values,
                               const Int& px, const Int& py) {
  if (r.index != 1) throw Error("ray diagnostics require an index-1 ray");
  if (r.type.a21 == 0 || r.type.a32 == 0) throw DegenerateType("degenerate ray type");

  RayDiagnostics d;
  Vec3Z w(px, py, 0);
  Int f[4];
  for (int i = 0; i < 4; ++i) f[i] = cubic_form(ray_matrix(r, Int(i))).eval(w);
  d.affine_ok = (f[1] - f[0] == f[2] - f[1]) && (f[2] - f[1] == f[3] - f[2]);
  d.slope = f[1] - f[0];
  d.slope_formula = (r.type.a21 * px - r.type.a11 * py) * r.type.a32 * r.type.a32 * py * py;
  d.slope_ok = d.affine_ok && d.slope == d.slope_formula;

  // orbit axis ratio: condition of the (g2, g3) pair from the eigenframe
  for (long t : t_values) {
    Mat3Z mt = ray_matrix(r, Int(t));
    SpectralBasis sb = spectral_basis(mt);
    double a = 0, b = 0, c = 0;  // Gram matrix of (g2, g3)
    for (int i = 0; i < 3; ++i) {
      a += sb.g2[i] * sb.g2[i];
      b += sb.g2[i] * sb.g3[i];
      c += sb.g3[i] * sb.g3[i];
    }
    double tr2 = (a + c) / 2;
    double disc = std::sqrt(std::max(tr2 * tr2 - (a * c - b * b), 0.0));
    double ratio = std::sqrt((tr2 + disc) / (tr2 - disc));
    d.ratios.emplace_back(t, ratio);
  }
  if (d.ratios.size() >= 2) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (auto& [t, ratio] : d.ratios) {
      double lx = std::log(static_cast<double>(t)), ly = std::log(ratio);
      sx += lx;
      sy += ly;
      sxx += lx * lx;
      sxy += lx * ly;
    }
    double n = static_cast<double>(d.ratios.size());
    d.exponent = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    d.exponent_ok = std::abs(d.exponent - 0.5) <= 0.05;
  }
  return d;
}

std::vector<HessenbergType> perfect_types_up_to_complexity(long max_sigma) {
  std::vector<HessenbergType> out;
  for (long sigma = 1; sigma <= max_sigma; ++sigma)
    for (long a32 = 1; a32 <= sigma; ++a32) {
      if (sigma % a32) continue;
      long sq = sigma / a32;
      long a21 = static_cast<long>(std::lround(std::sqrt(static_cast<double>(sq))));
      if (a21 * a21 != sq) continue;
      for (long a11 = 0; a11 < a21; ++a11)
        for (long a12 = 0; a12 < a32; ++a12)
          for (long a22 = 0; a22 < a32; ++a22) {
            HessenbergType t{Int(a11), Int(a21), Int(a12), Int(a22), Int(a32)};
            Int c1 = t.a21 * t.a32;
            Int c2 = -t.a11 * t.a32;
            Int c3 = t.a11 * t.a22 - t.a12 * t.a21;
            if (gcd(gcd(c1, c2), c3) == 1) out.push_back(std::move(t));
          }
    }
  return out;
}

namespace {

json grid_cells_json(const FamilyGrid& g) {
  json cells = json::array();
  for (long m = g.window.m_lo; m <= g.window.m_hi; ++m)
    for (long n = g.window.n_lo; n <= g.window.n_hi; ++n) {
      const CellResult& r = g.cell(m, n);
      json c = cell_to_json(r);
      c["m"] = m;
      c["n"] = n;
      cells.push_back(std::move(c));
    }
  return cells;
}

const char* cell_color(CellClass c) {
  switch (c) {
    case CellClass::ReduciblePoly:
    case CellClass::Degenerate: return "#000000";
    case CellClass::NrsNonreduced:
    case CellClass::RsNonreduced: return "#555555";
    case CellClass::NrsReducedPower: return "#999999";
    case CellClass::RsProbablyReduced: return "#eeeeee";
    case CellClass::NrsReduced:
    case CellClass::RsReducedCertified: return "#ffffff";
  }
  return "#ff00ff";
}

bool nrs_side(CellClass c) {
  return c == CellClass::NrsReduced || c == CellClass::NrsReducedPower ||
         c == CellClass::NrsNonreduced;
}

bool rs_side(CellClass c) {
  return c == CellClass::RsNonreduced || c == CellClass::RsProbablyReduced ||
         c == CellClass::RsReducedCertified;
}

}  // namespace

std::string render_grid_json(const FamilyGrid& g) {
  json j;
  j["type"] = g.type.to_text();
  j["v"] = g.v.to_text();
  j["window"] = {{"m_lo", g.window.m_lo}, {"m_hi", g.window.m_hi},
                 {"n_lo", g.window.n_lo}, {"n_hi", g.window.n_hi}};
  j["cells"] = grid_cells_json(g);
  return j.dump(2) + "\n";
}

std::string render_grid_csv(const FamilyGrid& g) {
  std::ostringstream os;
  os << "m,n,class,sigma,delta,mu\n";
  for (long m = g.window.m_lo; m <= g.window.m_hi; ++m)
    for (long n = g.window.n_lo; n <= g.window.n_hi; ++n) {
      const CellResult& r = g.cell(m, n);
      os << m << ',' << n << ',' << to_string(r.cls) << ',' << r.sigma.get_str() << ','
         << r.delta.get_str() << ',' << (r.mu ? r.mu->get_str() : "") << '\n';
    }
  return os.str();
}

std::string render_grid_svg(const FamilyGrid& g) {
  const int cell = 8;
  long wcells = g.window.m_hi - g.window.m_lo + 1;
  long hcells = g.window.n_hi - g.window.n_lo + 1;
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << wcells * cell
     << "\" height=\"" << hcells * cell << "\" shape-rendering=\"crispEdges\">\n";
  for (long n = g.window.n_hi; n >= g.window.n_lo; --n)  // top row = largest n
    for (long m = g.window.m_lo; m <= g.window.m_hi; ++m) {
      long px = (m - g.window.m_lo) * cell;
      long py = (g.window.n_hi - n) * cell;
      os << "<rect x=\"" << px << "\" y=\"" << py << "\" width=\"" << cell
         << "\" height=\"" << cell << "\" fill=\"" << cell_color(g.cell(m, n).cls)
         << "\"/>\n";
    }
  // boundary broken line between NRS- and RS-squares
  for (long m = g.window.m_lo; m <= g.window.m_hi; ++m)
    for (long n = g.window.n_lo; n <= g.window.n_hi; ++n) {
      CellClass c = g.cell(m, n).cls;
      long px = (m - g.window.m_lo) * cell;
      long py = (g.window.n_hi - n) * cell;
      if (m < g.window.m_hi) {
        CellClass cr = g.cell(m + 1, n).cls;
        if ((nrs_side(c) && rs_side(cr)) || (rs_side(c) && nrs_side(cr)))
          os << "<line x1=\"" << px + cell << "\" y1=\"" << py << "\" x2=\"" << px + cell
             << "\" y2=\"" << py + cell << "\" stroke=\"#aaaaaa\" stroke-width=\"2\"/>\n";
      }
      if (n < g.window.n_hi) {
        CellClass cu = g.cell(m, n + 1).cls;
        if ((nrs_side(c) && rs_side(cu)) || (rs_side(c) && nrs_side(cu)))
          os << "<line x1=\"" << px << "\" y1=\"" << py << "\" x2=\"" << px + cell
             << "\" y2=\"" << py << "\" stroke=\"#aaaaaa\" stroke-width=\"2\"/>\n";
      }
    }
  os << "</svg>\n";
  return os.str();
}

std::string render_sail_json(const FactorSail& s) {
  auto comp = [](const std::vector<SailVertex>& vs) {
    json arr = json::array();
    for (const auto& v : vs) {
      json e;
      e["source"] = {v.source.x.get_str(), v.source.y.get_str(), v.source.z.get_str()};
      e["pi"] = {v.x, v.rho};
      e["certified"] = v.certified;
      arr.push_back(std::move(e));
    }
    return arr;
  };
  json j;
  j["positive"] = comp(s.positive);
  j["negative"] = comp(s.negative);
  return j.dump(2) + "\n";
}

std::string render_verdict_json(const ReductionVerdict& v) {
  json j;
  j["verdict"] = to_string(v.kind);
  j["certificate"] = to_string(v.certificate);
  if (v.q) j["q"] = v.q;
  if (v.mu) j["mu"] = v.mu->get_str();
  if (v.bound) j["bound"] = v.bound;
  json w = json::array();
  for (const auto& x : v.witnesses) w.push_back({x.x.get_str(), x.y.get_str(), x.z.get_str()});
  j["witnesses"] = std::move(w);
  return j.dump(2) + "\n";
}

std::string render_ray_json(const RayScan& s) {
  json j;
  j["type"] = s.ray.type.to_text();
  j["v"] = s.ray.v.to_text();
  j["index"] = s.ray.index;
  j["base"] = {s.ray.base_m.get_str(), s.ray.base_n.get_str()};
  j["trailing_reduced"] = s.trailing_reduced;
  json cells = json::array();
  for (size_t t = 0; t < s.cells.size(); ++t) {
    json c = cell_to_json(s.cells[t]);
    c["t"] = t;
    cells.push_back(std::move(c));
  }
  j["cells"] = std::move(cells);
  return j.dump(2) + "\n";
}

std::string render_ray_diagnostics_json(const RayDiagnostics& d) {
  json j;
  j["affine_ok"] = d.affine_ok;
  j["slope"] = d.slope.get_str();
  j["slope_formula"] = d.slope_formula.get_str();
  j["slope_ok"] = d.slope_ok;
  j["exponent"] = d.exponent;
  j["exponent_ok"] = d.exponent_ok;
  json r = json::array();
  for (auto& [t, ratio] : d.ratios) r.push_back({{"t", t}, {"ratio", ratio}});
  j["ratios"] = std::move(r);
  return j.dump(2) + "\n";
}

std::string render_census_csv(const std::vector<SurveyReport>& reports) {
  std::ostringstream os;
  os << "type,complexity,nonreduced,window,stabilized\n";
  for (const auto& r : reports)
    os << '"' << r.type.to_text() << "\"," << r.sigma.get_str() << ',' << r.nonreduced << ','
       << r.window << ',' << (r.stabilized ? 1 : 0) << '\n';
  return os.str();
}

}  // namespace sl3
