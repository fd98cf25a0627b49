#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <json.hpp>

#include "sl3reduce/cubic_form.hpp"
#include "sl3reduce/reduction.hpp"
#include "sl3reduce/spectra.hpp"
#include "sl3reduce/survey.hpp"

namespace py = pybind11;
using namespace sl3;
using nlohmann::json;

namespace {

std::string verdict_json(const ReductionVerdict& v) { return render_verdict_json(v); }

std::string box_search_json(const std::string& matrix, long bound) {
  BoxSearchResult r = box_search_min(Mat3Z::from_text(matrix), bound);
  json j;
  j["mu"] = r.mu.get_str();
  j["early_exit"] = r.early_exit;
  json w = json::array();
  for (const auto& x : r.witnesses) w.push_back({x.x.get_str(), x.y.get_str(), x.z.get_str()});
  j["witnesses"] = std::move(w);
  return j.dump();
}

std::string min_md_json(const std::string& matrix) {
  MinMd r = min_md_over_candidates(Mat3Z::from_text(matrix));
  json j;
  j["mu"] = r.mu.get_str();
  json w = json::array();
  for (const auto& x : r.argmins) w.push_back({x.x.get_str(), x.y.get_str(), x.z.get_str()});
  j["argmins"] = std::move(w);
  return j.dump();
}

std::string reduced_set_json(const std::string& matrix) {
  ReducedSet r = sigma_reduced_set(Mat3Z::from_text(matrix));
  json j;
  j["mu"] = r.mu.get_str();
  json arr = json::array();
  for (const auto& h : r.matrices) arr.push_back(h.to_text());
  j["matrices"] = std::move(arr);
  return j.dump();
}

std::string classify_cell_json(const std::string& type_text, const std::string& v_text,
                               long m, long n) {
  HessenbergType t = HessenbergType::from_text(type_text);
  Vec3Z v = v_text.empty() ? complete_type(t) : Vec3Z::from_text(v_text);
  SurveyConfig cfg;
  CellResult r = classify_cell(t, v, Int(m), Int(n), cfg);
  json j;
  j["class"] = to_string(r.cls);
  j["sigma"] = r.sigma.get_str();
  j["delta"] = r.delta.get_str();
  if (r.mu) j["mu"] = r.mu->get_str();
  if (r.q) j["q"] = r.q;
  return j.dump();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact sigma-reduction and integer conjugacy for SL(3,Z) Hessenberg matrices";

  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ParseError& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    } catch (const Error& e) {
      PyErr_SetString(PyExc_RuntimeError, e.what());
    }
  });

  m.def("charpoly", [](const std::string& matrix) {
    CharPoly cp = charpoly_coeffs(Mat3Z::from_text(matrix));
    return py::make_tuple(cp.b1.get_str(), cp.b2.get_str(), cp.b3.get_str());
  });
  m.def("discriminant", [](const std::string& matrix) {
    return discriminant_from_coeffs(charpoly_coeffs(Mat3Z::from_text(matrix))).get_str();
  });
  m.def("spectrum", [](const std::string& matrix) {
    return to_string(spectrum_class(Mat3Z::from_text(matrix)));
  });
  m.def("hessenberg_type", [](const std::string& matrix) {
    auto [t, perfect] = type_of(Mat3Z::from_text(matrix));
    return py::make_tuple(t.to_text(), perfect);
  });
  m.def("complexity", [](const std::string& type_text) {
    return complexity(HessenbergType::from_text(type_text)).get_str();
  });
  m.def("complete_type", [](const std::string& type_text) {
    return complete_type(HessenbergType::from_text(type_text)).to_text();
  });
  m.def("family_matrix", [](const std::string& type_text, const std::string& v_text, long mm,
                            long nn) {
    HessenbergType t = HessenbergType::from_text(type_text);
    Vec3Z v = v_text.empty() ? complete_type(t) : Vec3Z::from_text(v_text);
    return family_matrix(t, v, Int(mm), Int(nn)).to_text();
  });
  m.def("md_characteristic", [](const std::string& matrix, const std::string& vec) {
    return md_characteristic(Mat3Z::from_text(matrix), Vec3Z::from_text(vec)).get_str();
  });
  m.def("reduce_to_perfect", [](const std::string& matrix, const std::string& vec) {
    return reduce_to_perfect(Mat3Z::from_text(matrix), Vec3Z::from_text(vec)).to_text();
  });
  m.def("is_sigma_reduced", [](const std::string& matrix) {
    return verdict_json(is_sigma_reduced(Mat3Z::from_text(matrix)));
  });
  m.def("box_search_min", &box_search_json, py::arg("matrix"), py::arg("bound") = 100);
  m.def("min_md", &min_md_json);
  m.def("sigma_reduced_set", &reduced_set_json);
  m.def("integer_conjugate", [](const std::string& m1, const std::string& m2) {
    return integer_conjugate(Mat3Z::from_text(m1), Mat3Z::from_text(m2));
  });
  m.def("detect_power_root", [](const std::string& matrix, int k) -> py::object {
    auto b = detect_power_root(Mat3Z::from_text(matrix), k);
    if (!b) return py::none();
    return py::str(b->to_text());
  });
  m.def("classify_cell", &classify_cell_json, py::arg("type"), py::arg("v") = std::string(),
        py::arg("m") = 0, py::arg("n") = 0);
  m.def("sail", [](const std::string& matrix, long bound) {
    return render_sail_json(factor_sail(Mat3Z::from_text(matrix), bound));
  }, py::arg("matrix"), py::arg("bound") = 20);
}
