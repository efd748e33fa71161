#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "dissip/errors.hpp"
#include "dissip/json_io.hpp"

namespace {

using dissip::Json;

struct Output {
  std::string path;     // empty = stdout
  std::string format;   // "json" | "text"

  void emit(const Json& j, const std::string& text) const {
    const std::string& body =
        format == "text" ? text : dissip::render_json(j);
    if (path.empty()) {
      std::cout << body;
    } else {
      std::ofstream out(path);
      if (!out) throw dissip::ParseError("cannot write output: " + path);
      out << body;
    }
  }
};

std::string certify_text(const dissip::CertifyResult& r) {
  std::ostringstream os;
  os << "verdict: " << (r.ok ? "dissipative" : "refused:" + r.refusal_stage)
     << "\n";
  if (!r.ok) os << "reason:  " << r.refusal_detail << "\n";
  os << "assumption checks:\n";
  for (const auto& [k, v] : r.assumptions)
    os << "  " << (v ? "[pass] " : "[FAIL] ") << k << "\n";
  if (r.certificate.has_value()) {
    os << "K =\n" << r.certificate->K << "\n";
    os << "ARE residual: " << r.certificate->are_residual
       << "  LMI max eig: " << r.certificate->lmi_max_eig << "\n";
  }
  return os.str();
}

int cmd_certify(const std::string& behavior_path, const std::string& sigma_path,
                int m_b, double tol, int grid, const Output& out) {
  dissip::Behavior b =
      dissip::behavior_from_json(dissip::load_json_file(behavior_path));
  Eigen::MatrixXd sigma =
      dissip::sigma_from_json(dissip::load_json_file(sigma_path));
  dissip::CertifyOptions opts;
  opts.tol = tol;
  opts.grid = grid;
  dissip::CertifyResult r = dissip::certify(b, sigma, m_b, opts);
  out.emit(dissip::certify_result_to_json(r), certify_text(r));
  return r.ok ? 0 : 1;
}

int cmd_analyze(const std::string& ss_path, const std::string& j_path,
                double tol, const Output& out) {
  dissip::StateSpace ss =
      dissip::statespace_from_json(dissip::load_json_file(ss_path));
  Eigen::MatrixXd J;
  if (!j_path.empty()) {
    J = dissip::sigma_from_json(dissip::load_json_file(j_path));
  } else {
    J = -Eigen::MatrixXd::Identity(ss.C.rows(), ss.C.rows());
  }

  Json rep;
  bool obstruction = false;
  dissip::ObstructionReport lossless =
      dissip::lossless_obstruction(ss.A, ss.C, tol);
  rep["lossless"] = dissip::obstruction_to_json(lossless);
  obstruction |= lossless.obstruction;
  if (auto st = dissip::static_part_nonexistence(ss, J, tol)) {
    rep["static_part"] = dissip::obstruction_to_json(*st);
    obstruction |= st->obstruction;
  } else {
    rep["static_part"] = Json{{"kind", "static-nonexistence"},
                              {"applicable", false}};
  }

  std::ostringstream os;
  os << "lossless obstruction: " << lossless.detail << "\n";
  os << "static-part check:    "
     << rep["static_part"].value("detail", std::string("not applicable"))
     << "\n";
  out.emit(rep, os.str());
  return obstruction ? 1 : 0;
}

int cmd_superbehavior(const std::string& behavior_path, const Output& out) {
  dissip::Behavior b =
      dissip::behavior_from_json(dissip::load_json_file(behavior_path));
  dissip::Behavior kb = b.kind() == dissip::ReprKind::Kernel
                            ? b
                            : dissip::Behavior::kernel(b.kernel_matrix());
  dissip::Behavior super = dissip::superbehavior(kb);
  Json rep;
  rep["kernel"] = dissip::polymat_to_json(super.kernel_matrix());
  rep["m_before"] = dissip::input_cardinality(kb);
  rep["m_after"] = dissip::input_cardinality(super);
  rep["controllable"] = dissip::is_controllable(super);

  std::ostringstream os;
  os << "m(B) = " << rep["m_before"].get<int>()
     << " -> m(B_super) = " << rep["m_after"].get<int>() << "\n"
     << "kernel:\n"
     << dissip::format_polymat(super.kernel_matrix()) << "\n";
  out.emit(rep, os.str());
  return 0;
}

int cmd_orthogonality(const std::string& b1_path, const std::string& b2_path,
                      const std::string& sigma_path, double tol,
                      const Output& out) {
  dissip::Behavior b1 =
      dissip::behavior_from_json(dissip::load_json_file(b1_path));
  dissip::Behavior b2 =
      dissip::behavior_from_json(dissip::load_json_file(b2_path));
  Eigen::MatrixXd sigma =
      dissip::sigma_from_json(dissip::load_json_file(sigma_path));
  dissip::OrthogonalityVerdict v =
      dissip::orthogonality_check(b1, b2, sigma, tol);
  out.emit(dissip::orthogonality_to_json(v), v.label + ": " + v.detail + "\n");
  switch (v.verdict) {
    case dissip::Verdict3::Pass: return 0;
    case dissip::Verdict3::Fail: return 1;
    default: return 2;
  }
}

int cmd_embed(const std::string& sigma_path, const std::string& mplus_path,
              const std::string& mminus_path, double tol, int grid,
              const Output& out) {
  Eigen::MatrixXd sigma =
      dissip::sigma_from_json(dissip::load_json_file(sigma_path));
  dissip::PolyMat mp =
      dissip::polymat_from_json(dissip::load_json_file(mplus_path));
  dissip::PolyMat mm =
      dissip::polymat_from_json(dissip::load_json_file(mminus_path));
  try {
    dissip::EmbedReport rep =
        dissip::embed_both_ways(sigma, mp, mm, tol, grid);
    std::ostringstream os;
    os << "intersection kernel:\n"
       << dissip::format_polymat(rep.behavior.kernel_matrix()) << "\n"
       << "autonomous: " << (rep.autonomous ? "yes" : "no")
       << "  m = " << rep.m_b << " <= min(s+,s-) = " << rep.bound << "\n";
    out.emit(dissip::embed_report_to_json(rep), os.str());
    return (rep.autonomous && rep.bound_ok) ? 0 : 1;
  } catch (const dissip::StrictnessNotVerified& e) {
    Json j{{"verdict", "refused:strictness"}, {"reason", e.what()}};
    out.emit(j, std::string(e.what()) + "\n");
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dissipativity certification for linear differential behaviors"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand

  double tol = 1e-8;
  int grid = 2000;
  Output out{"", "json"};
  app.add_option("--tol", tol, "certificate tolerance")->check(CLI::PositiveNumber);
  app.add_option("--grid", grid, "frequency grid size")->check(CLI::Range(2, 1 << 24));
  app.add_option("--out", out.path, "output path (default stdout)");
  app.add_option("--format", out.format, "json | text")
      ->check(CLI::IsMember({"json", "text"}));

  std::string behavior_path, sigma_path, ss_path, j_path;
  std::string b1_path, b2_path, mplus_path, mminus_path;
  int m_b = -1;

  auto* certify = app.add_subcommand("certify", "certify Sigma-dissipativity");
  certify->add_option("--behavior", behavior_path)->required();
  certify->add_option("--sigma", sigma_path)->required();
  certify->add_option("--m", m_b, "input cardinality (default: from behavior)");

  auto* analyze = app.add_subcommand("analyze", "nonexistence / lossless checks");
  analyze->add_option("--ss", ss_path)->required();
  analyze->add_option("--j", j_path, "output-channel sign matrix J");

  auto* super = app.add_subcommand("superbehavior",
                                   "smallest controllable superbehavior");
  super->add_option("--behavior", behavior_path)->required();

  auto* ortho = app.add_subcommand("orthogonality", "Sigma-orthogonality check");
  ortho->add_option("--b1", b1_path)->required();
  ortho->add_option("--b2", b2_path)->required();
  ortho->add_option("--sigma", sigma_path)->required();

  auto* embed = app.add_subcommand("embed-demo", "both-ways embedding demo");
  embed->add_option("--sigma", sigma_path)->required();
  embed->add_option("--mplus", mplus_path)->required();
  embed->add_option("--mminus", mminus_path)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 3;
  }

  try {
    if (app.got_subcommand(certify))
      return cmd_certify(behavior_path, sigma_path, m_b, tol, grid, out);
    if (app.got_subcommand(analyze))
      return cmd_analyze(ss_path, j_path, tol, out);
    if (app.got_subcommand(super))
      return cmd_superbehavior(behavior_path, out);
    if (app.got_subcommand(ortho))
      return cmd_orthogonality(b1_path, b2_path, sigma_path, tol, out);
    if (app.got_subcommand(embed))
      return cmd_embed(sigma_path, mplus_path, mminus_path, tol, grid, out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 3;
}
