#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "sipovm/io.hpp"
#include "sipovm/wigner.hpp"

namespace {

using namespace sipovm;

std::string now_utc() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::tm tm_utc{};
  gmtime_r(&t, &tm_utc);
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DecodeError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_document(Document doc, const std::string& path) {
  doc.metadata.created_at = now_utc();
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << encode(doc);
}

void emit_report(const SiReport& report, int dimension, bool as_json) {
  if (as_json) {
    Document doc = document_from_report(report, dimension);
    doc.metadata.created_at = now_utc();
    std::cout << encode(doc);
    return;
  }
  std::printf("n                          : %d\n", report.n);
  std::printf("is_povm                    : %s\n", report.is_povm ? "true" : "false");
  std::printf("is_symmetric               : %s\n", report.is_symmetric ? "true" : "false");
  std::printf("alpha                      : %.15g\n", report.alpha);
  std::printf("beta                       : %.15g\n", report.beta);
  std::printf("kappa                      : %.15g\n", report.kappa);
  std::printf("gram_rank                  : %d\n", report.gram_rank);
  std::printf("informationally_complete   : %s\n",
              report.is_informationally_complete ? "true" : "false");
  std::printf("rank_one_sic               : %s\n", report.is_rank_one_sic ? "true" : "false");
  std::printf("max_residual               : %.3g\n", report.max_residual);
}

bool si_certificate_holds(const SiReport& report) {
  return report.is_povm && report.is_symmetric && report.is_informationally_complete;
}

int run(int argc, char** argv) {
  CLI::App app{"SI-POVM construction, search, and certification"};
  app.require_subcommand(1);

  int dim = 3;
  std::uint64_t seed = 0;
  double tol = 1e-9;
  int restarts = 10;
  int max_iter = 2000;
  std::string method = "frame";
  std::string in_path, out_path, state_path, povm_path, probs_path, bases_path;
  std::string phases_arg = "zero";
  bool as_json = false;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_flag("--json", as_json, "machine-readable JSON output");
  };

  auto* cmd_wigner = app.add_subcommand("wigner", "build the Wigner POVM (odd d)");
  cmd_wigner->add_option("--dim", dim, "dimension")->required();
  cmd_wigner->add_option("--out", out_path, "output POVM document");
  add_common(cmd_wigner);

  auto* cmd_search = app.add_subcommand("search", "numerical SIC fiducial search");
  cmd_search->add_option("--dim", dim, "dimension")->required();
  cmd_search->add_option("--method", method, "frame|phase");
  cmd_search->add_option("--restarts", restarts, "independent restarts");
  cmd_search->add_option("--seed", seed, "RNG seed");
  cmd_search->add_option("--tol", tol, "objective residual tolerance");
  cmd_search->add_option("--max-iter", max_iter, "iteration cap per restart");
  cmd_search->add_option("--out", out_path, "output document (fiducial or phases)");
  add_common(cmd_search);

  auto* cmd_random = app.add_subcommand("random-si", "random SI-POVM of arbitrary rank");
  cmd_random->add_option("--dim", dim, "dimension")->required();
  cmd_random->add_option("--seed", seed, "RNG seed");
  cmd_random->add_option("--out", out_path, "output POVM document");
  add_common(cmd_random);

  auto* cmd_cov = app.add_subcommand("covariant", "WH-covariant SI-POVM from phases");
  cmd_cov->add_option("--dim", dim, "dimension")->required();
  cmd_cov->add_option("--phases", phases_arg, "zero | pi | <phases document>");
  cmd_cov->add_option("--out", out_path, "output POVM document");
  add_common(cmd_cov);

  auto* cmd_verify = app.add_subcommand("verify", "certify a stored document");
  cmd_verify->add_option("--in", in_path, "input document")->required();
  cmd_verify->add_option("--tol", tol, "tolerance (informational)");
  add_common(cmd_verify);

  auto* cmd_wfn = app.add_subcommand("wigner-function", "discrete Wigner function of a state");
  cmd_wfn->add_option("--state", state_path, "state document")->required();
  cmd_wfn->add_option("--out", out_path, "output wigner document");
  add_common(cmd_wfn);

  auto* cmd_rec = app.add_subcommand("reconstruct", "linear state reconstruction");
  cmd_rec->add_option("--povm", povm_path, "POVM document")->required();
  cmd_rec->add_option("--probs", probs_path, "JSON array of probabilities")->required();
  cmd_rec->add_option("--out", out_path, "output state document");
  add_common(cmd_rec);

  auto* cmd_mub = app.add_subcommand("mub-check", "mutual unbiasedness of stored bases");
  cmd_mub->add_option("--bases", bases_path, "JSON file with a \"bases\" array")->required();
  add_common(cmd_mub);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e);
    return 0;
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (cmd_wigner->parsed()) {
    const GroupContext ctx(dim);
    const Povm povm = wigner_povm(ctx);
    const SiReport report = verify_si(povm);
    if (!out_path.empty()) write_document(document_from_povm(povm), out_path);
    emit_report(report, dim, as_json);
    return si_certificate_holds(report) ? 0 : 1;
  }

  if (cmd_search->parsed()) {
    SearchConfig config;
    config.dimension = dim;
    if (method == "frame") config.method = SearchMethod::FramePotential;
    else if (method == "phase") config.method = SearchMethod::PhaseObjective;
    else throw CLI::ValidationError("--method", "must be frame or phase");
    config.restarts = restarts;
    config.max_iterations = max_iter;
    config.seed = seed;
    config.tolerance = tol;
    const SearchResult result = search(config);
    Document doc = result.fiducial
                       ? document_from_fiducial(*result.fiducial, GroupContext(dim))
                       : document_from_phases(*result.phases);
    doc.metadata.seed = seed;
    doc.metadata.method = method;
    if (!out_path.empty()) write_document(doc, out_path);
    if (as_json) {
      nlohmann::json j = {{"objective_value", result.objective_value},
                          {"residual", result.residual},
                          {"certified", result.certified},
                          {"iterations_used", result.iterations_used},
                          {"seed_used", result.seed_used},
                          {"best_restart", result.best_restart}};
      Document summary{"report", dim, j, {seed, method, kToolVersion, now_utc()}};
      std::cout << encode(summary);
    } else {
      std::printf("objective  : %.15g\n", result.objective_value);
      std::printf("residual   : %.3g\n", result.residual);
      std::printf("certified  : %s\n", result.certified ? "true" : "false");
      std::printf("iterations : %d (restart %d)\n", result.iterations_used,
                  result.best_restart);
    }
    return result.certified ? 0 : 1;
  }

  if (cmd_random->parsed()) {
    const Povm povm = random_si_povm(dim, seed);
    const SiReport report = verify_si(povm);
    Document doc = document_from_povm(povm);
    doc.metadata.seed = seed;
    if (!out_path.empty()) write_document(doc, out_path);
    emit_report(report, dim, as_json);
    return si_certificate_holds(report) ? 0 : 1;
  }

  if (cmd_cov->parsed()) {
    const GroupContext ctx(dim);
    PhaseVector phi = [&] {
      if (phases_arg == "zero") return constant_phase_vector(0.0, ctx);
      if (phases_arg == "pi") return constant_phase_vector(M_PI, ctx);
      return phases_from_document(decode(read_file(phases_arg)));
    }();
    const CovariantPovm cov = covariant_si_povm(phi);
    const SiReport report = verify_si(cov.povm);
    if (!out_path.empty()) write_document(document_from_povm(cov.povm), out_path);
    emit_report(report, dim, as_json);
    return si_certificate_holds(report) ? 0 : 1;
  }

  if (cmd_verify->parsed()) {
    const Document doc = decode(read_file(in_path));
    SiReport report;
    bool pass = false;
    if (doc.kind == "povm") {
      report = verify_si(povm_from_document(doc));
      pass = si_certificate_holds(report);
    } else if (doc.kind == "fiducial") {
      const GroupContext ctx(doc.dimension);
      report = verify_si(sic_from_fiducial(fiducial_from_document(doc), ctx));
      pass = report.is_rank_one_sic;
    } else if (doc.kind == "phases") {
      report = verify_si(covariant_si_povm(phases_from_document(doc)).povm);
      pass = si_certificate_holds(report);
    } else {
      throw DecodeError("verify: unsupported document kind \"" + doc.kind + "\"");
    }
    emit_report(report, doc.dimension, as_json);
    return pass ? 0 : 1;
  }

  if (cmd_wfn->parsed()) {
    const Document doc = decode(read_file(state_path));
    const GroupContext ctx(doc.dimension);
    const WignerFunction w = wigner_from_state(state_from_document(doc), ctx);
    Document out = document_from_wigner(w);
    if (!out_path.empty()) write_document(out, out_path);
    if (as_json) {
      out.metadata.created_at = now_utc();
      std::cout << encode(out);
    } else {
      std::printf("W sums to %.15g over %d phase-space points\n", w.values.sum(),
                  static_cast<int>(w.values.size()));
    }
    return 0;
  }

  if (cmd_rec->parsed()) {
    const Povm povm = povm_from_document(decode(read_file(povm_path)));
    const nlohmann::json probs_json = nlohmann::json::parse(read_file(probs_path));
    if (!probs_json.is_array())
      throw DecodeError("probabilities file must hold a JSON array");
    std::vector<double> probs;
    for (const auto& p : probs_json) probs.push_back(p.get<double>());
    const Reconstruction rec = reconstruct_state(povm, probs);
    Document out = document_from_state(rec.rho, povm.ctx);
    out.payload["min_eigenvalue"] = rec.min_eigenvalue;
    out.payload["psd_warning"] = rec.psd_warning;
    if (!out_path.empty()) write_document(out, out_path);
    if (as_json) {
      out.metadata.created_at = now_utc();
      std::cout << encode(out);
    } else {
      std::printf("reconstructed state, min eigenvalue %.3g%s\n", rec.min_eigenvalue,
                  rec.psd_warning ? " (outside state space)" : "");
    }
    return 0;
  }

  if (cmd_mub->parsed()) {
    const nlohmann::json j = nlohmann::json::parse(read_file(bases_path));
    const int d = j.at("dimension").get<int>();
    BasisFamily family;
    for (const auto& basis_json : j.at("bases")) {
      std::vector<Vector> basis;
      for (const auto& vec_json : basis_json) basis.push_back(vector_from_json(vec_json, d));
      family.bases.push_back(std::move(basis));
    }
    const MubReport report = verify_mub(family);
    if (as_json) {
      nlohmann::json payload = {{"is_mub", report.is_mub},
                                {"max_deviation", report.max_deviation}};
      Document doc{"report", d, payload, {std::nullopt, "mub-check", kToolVersion, now_utc()}};
      std::cout << encode(doc);
    } else {
      std::printf("is_mub        : %s\n", report.is_mub ? "true" : "false");
      std::printf("max_deviation : %.3g\n", report.max_deviation);
    }
    return report.is_mub ? 0 : 1;
  }

  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const CLI::ParseError&) {
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
