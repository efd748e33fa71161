#pragma once

#include "dissip/analysis.hpp"

// single-header nlohmann/json, vendored
#include "json.hpp"

namespace dissip {

using Json = nlohmann::json;

// polynomial <-> array of "num/den" coefficient strings, ascending powers
Json poly_to_json(const Poly& p);
Poly poly_from_json(const Json& j);

// polynomial matrix <-> nested arrays, row-major
Json polymat_to_json(const PolyMat& m);
PolyMat polymat_from_json(const Json& j);

Json matrix_to_json(const Eigen::MatrixXd& m);
Eigen::MatrixXd matrix_from_json(const Json& j);

Json statespace_to_json(const StateSpace& ss);
StateSpace statespace_from_json(const Json& j);

// { "kind", "w", "matrix" | "ss", optional "io" }
Json behavior_to_json(const Behavior& b);
Behavior behavior_from_json(const Json& j);

// a supply matrix file is either a bare nested array or { "sigma": [[...]] }
Eigen::MatrixXd sigma_from_json(const Json& j);

Json certify_result_to_json(const CertifyResult& r);
Json obstruction_to_json(const ObstructionReport& r);
Json orthogonality_to_json(const OrthogonalityVerdict& v);
Json embed_report_to_json(const EmbedReport& r);
Json cardinality_to_json(const CardinalityReport& r);

Json load_json_file(const std::string& path);  // throws ParseError

// byte-stable rendering (keys sorted, fixed indentation)
std::string render_json(const Json& j);

}  // namespace dissip
