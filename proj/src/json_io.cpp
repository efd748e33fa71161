#include "dissip/json_io.hpp"

#include <fstream>

#include "dissip/errors.hpp"

namespace dissip {

Json poly_to_json(const Poly& p) {
  Json a = Json::array();
  for (const auto& c : p.coeffs()) a.push_back(format_rational(c));
  return a;
}

Poly poly_from_json(const Json& j) {
  if (!j.is_array()) throw ParseError("polynomial: expected array");
  std::vector<Rational> c;
  for (const auto& e : j) {
    if (e.is_string())
      c.push_back(parse_rational(e.get<std::string>()));
    else if (e.is_number())
      c.push_back(rational_from_double(e.get<double>()));
    else
      throw ParseError("polynomial coefficient: expected string or number");
  }
  return Poly(std::move(c));
}

Json polymat_to_json(const PolyMat& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(poly_to_json(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

PolyMat polymat_from_json(const Json& j) {
  if (!j.is_array()) throw ParseError("polymat: expected array of rows");
  const int rows = static_cast<int>(j.size());
  int cols = rows > 0 ? static_cast<int>(j[0].size()) : 0;
  PolyMat m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    if (!j[i].is_array() || static_cast<int>(j[i].size()) != cols)
      throw ParseError("polymat: ragged rows");
    for (int k = 0; k < cols; ++k) m(i, k) = poly_from_json(j[i][k]);
  }
  return m;
}

Json matrix_to_json(const Eigen::MatrixXd& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

Eigen::MatrixXd matrix_from_json(const Json& j) {
  if (!j.is_array()) throw ParseError("matrix: expected array of rows");
  const int rows = static_cast<int>(j.size());
  const int cols = rows > 0 ? static_cast<int>(j[0].size()) : 0;
  Eigen::MatrixXd m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    if (!j[i].is_array() || static_cast<int>(j[i].size()) != cols)
      throw ParseError("matrix: ragged rows");
    for (int k = 0; k < cols; ++k) {
      if (!j[i][k].is_number()) throw ParseError("matrix: expected numbers");
      m(i, k) = j[i][k].get<double>();
    }
  }
  return m;
}

Json statespace_to_json(const StateSpace& ss) {
  return Json{{"A", matrix_to_json(ss.A)},
              {"B", matrix_to_json(ss.B)},
              {"C", matrix_to_json(ss.C)},
              {"D", matrix_to_json(ss.D)}};
}

StateSpace statespace_from_json(const Json& j) {
  for (const char* k : {"A", "B", "C", "D"})
    if (!j.contains(k)) throw ParseError(std::string("state space: missing ") + k);
  StateSpace ss;
  ss.A = matrix_from_json(j["A"]);
  ss.B = matrix_from_json(j["B"]);
  ss.C = matrix_from_json(j["C"]);
  ss.D = matrix_from_json(j["D"]);
  // empty arrays stand for zero-column B and D (autonomous systems)
  if (ss.B.size() == 0) ss.B.resize(ss.A.rows(), 0);
  if (ss.D.size() == 0) ss.D.resize(ss.C.rows(), ss.B.cols());
  if (ss.A.rows() != ss.A.cols() || ss.B.rows() != ss.A.rows() ||
      ss.C.cols() != ss.A.rows() || ss.D.rows() != ss.C.rows() ||
      ss.D.cols() != ss.B.cols())
    throw ParseError("state space: inconsistent shapes");
  return ss;
}

namespace {

IOPartition io_from_json(const Json& j) {
  IOPartition io;
  for (const auto& e : j.value("inputs", Json::array()))
    io.inputs.push_back(e.get<int>());
  for (const auto& e : j.value("outputs", Json::array()))
    io.outputs.push_back(e.get<int>());
  return io;
}

Json io_to_json(const IOPartition& io) {
  return Json{{"inputs", io.inputs}, {"outputs", io.outputs}};
}

}  // namespace

Json behavior_to_json(const Behavior& b) {
  Json j;
  j["w"] = b.w();
  switch (b.kind()) {
    case ReprKind::Kernel:
      j["kind"] = "kernel";
      j["matrix"] = polymat_to_json(b.matrix());
      break;
    case ReprKind::Image:
      j["kind"] = "image";
      j["matrix"] = polymat_to_json(b.matrix());
      break;
    case ReprKind::Iso:
      j["kind"] = "iso";
      j["ss"] = statespace_to_json(b.state_space());
      break;
  }
  if (b.io().has_value()) j["io"] = io_to_json(*b.io());
  return j;
}

Behavior behavior_from_json(const Json& j) {
  if (!j.contains("kind")) throw ParseError("behavior: missing kind");
  const std::string kind = j["kind"].get<std::string>();
  Behavior b = [&] {
    if (kind == "kernel") return Behavior::kernel(polymat_from_json(j.at("matrix")));
    if (kind == "image") return Behavior::image(polymat_from_json(j.at("matrix")));
    if (kind == "iso") {
      if (!j.contains("io"))
        throw ParseError("behavior: iso kind requires io partition");
      return Behavior::iso(statespace_from_json(j.at("ss")),
                           io_from_json(j.at("io")));
    }
    throw ParseError("behavior: unknown kind '" + kind + "'");
  }();
  if (j.contains("w") && j["w"].get<int>() != b.w())
    throw ParseError("behavior: declared w does not match the matrix");
  if (kind != "iso" && j.contains("io")) b.set_io(io_from_json(j["io"]));
  return b;
}

Eigen::MatrixXd sigma_from_json(const Json& j) {
  if (j.is_object() && j.contains("sigma"))
    return matrix_from_json(j["sigma"]);
  return matrix_from_json(j);
}

namespace {

Json modes_to_json(const std::vector<std::complex<double>>& ms) {
  Json a = Json::array();
  for (const auto& z : ms) a.push_back(Json{{"re", z.real()}, {"im", z.imag()}});
  return a;
}

}  // namespace

Json certify_result_to_json(const CertifyResult& r) {
  Json j;
  j["verdict"] = r.ok ? "dissipative" : "refused:" + r.refusal_stage;
  j["assumptions"] = Json::object();
  for (const auto& [k, v] : r.assumptions) j["assumptions"][k] = v;
  j["lambda_un"] = modes_to_json(r.lambda_un.modes);
  if (!r.ok) j["reason"] = r.refusal_detail;
  if (r.certificate.has_value()) {
    const auto& c = *r.certificate;
    j["K"] = matrix_to_json(c.K);
    j["cset"] = modes_to_json(c.cset.members);
    j["are_residual"] = c.are_residual;
    j["lmi_max_eig"] = c.lmi_max_eig;
    j["state_map"] = c.state_map;
  }
  if (r.realization.has_value())
    j["realization"] = statespace_to_json(*r.realization);
  if (r.spectrum.has_value()) {
    j["spectrum_identity"] = Json{
        {"pass", r.spectrum->pass},
        {"matched", r.spectrum->matched.size()},
        {"unmatched", r.spectrum->unmatched_sigma_h.size() +
                          r.spectrum->unmatched_expected.size()}};
  }
  return j;
}

Json obstruction_to_json(const ObstructionReport& r) {
  Json j;
  j["kind"] = r.kind;
  j["obstruction"] = r.obstruction;
  j["offending"] = modes_to_json(r.offending);
  j["residuals"] = r.residuals;
  j["detail"] = r.detail;
  if (!r.cross_check_stage.empty())
    j["cross_check_stage"] = r.cross_check_stage;
  return j;
}

Json orthogonality_to_json(const OrthogonalityVerdict& v) {
  Json j;
  switch (v.verdict) {
    case Verdict3::Pass: j["verdict"] = "pass"; break;
    case Verdict3::Fail: j["verdict"] = "fail"; break;
    case Verdict3::Inconclusive: j["verdict"] = "inconclusive"; break;
  }
  j["label"] = v.label;
  j["detail"] = v.detail;
  return j;
}

Json embed_report_to_json(const EmbedReport& r) {
  Json j;
  j["kernel"] = polymat_to_json(r.behavior.kernel_matrix());
  j["autonomous"] = r.autonomous;
  j["input_cardinality"] = r.m_b;
  j["cardinality_bound"] = r.bound;
  j["bound_ok"] = r.bound_ok;
  j["plus_margin"] = r.plus.min_eig;
  j["minus_margin"] = r.minus.min_eig;
  return j;
}

Json cardinality_to_json(const CardinalityReport& r) {
  return Json{{"m", r.m_b},
              {"sigma_plus", r.sigma_plus},
              {"sigma_minus", r.sigma_minus},
              {"controllable", r.controllable},
              {"necessary_bound_ok", r.necessary_ok},
              {"strict_bound_ok", r.strict_ok}};
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open file: " + path);
  try {
    return Json::parse(in);
  } catch (const std::exception& e) {
    throw ParseError("invalid JSON in " + path + ": " + e.what());
  }
}

std::string render_json(const Json& j) {
  // nlohmann objects iterate in sorted key order; fixed indent keeps the
  // rendering byte-stable for identical inputs
  return j.dump(2) + "\n";
}

}  // namespace dissip
