#include "commands.hpp"

#include <chrono>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "specloc/eigen.hpp"
#include "specloc/errors.hpp"
#include "specloc/linalg.hpp"
#include "specloc/lyapunov.hpp"
#include "specloc/matrix_io.hpp"
#include "specloc/perturbation.hpp"
#include "specloc/regions.hpp"

namespace specloc::cli {

namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

struct RegionFlags {
  std::string name;
  std::optional<double> a;
  std::optional<double> b;
  std::optional<double> p;
};

struct Options {
  RegionFlags region;
  std::string a_path;
  std::string b_path;
  std::string y_path;
  std::string c_path;
  std::string coeffs_path;
  std::string out_path;
  std::string method = "kron";
  int q = tol::kDefaultQuadraturePoints;
  bool oracle = false;
  bool radius_only = false;
};

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

json spectrum_json(const Spectrum& s) {
  json values = json::array();
  for (const Complex& z : s.eigenvalues) values.push_back(complex_json(z));
  return {{"eigenvalues", std::move(values)}, {"backward_error", s.backward_error}};
}

double required(const std::optional<double>& v, const char* flag, const std::string& region) {
  if (!v) throw InvalidRegionParams(std::string("region ") + region + " needs " + flag);
  return *v;
}

Region parse_region(const RegionFlags& f) {
  Region r;
  if (f.name == "halfplane") r = HalfPlaneLeft{};
  else if (f.name == "disk") r = UnitDisk{};
  else if (f.name == "ellipse-in") r = EllipseInterior{required(f.a, "--a", f.name), required(f.b, "--b", f.name)};
  else if (f.name == "ellipse-out") r = EllipseExterior{required(f.a, "--a", f.name), required(f.b, "--b", f.name)};
  else if (f.name == "parabola-in") r = ParabolaInterior{required(f.p, "--p", f.name)};
  else if (f.name == "parabola-out") r = ParabolaExterior{required(f.p, "--p", f.name)};
  else throw InvalidRegionParams("unknown region \"" + f.name + "\"");
  validate_region(r);
  return r;
}

json region_json(const Region& r) {
  json out = {{"name", region_name(r)}};
  if (const auto* e = std::get_if<EllipseInterior>(&r)) out.update({{"a", e->a}, {"b", e->b}});
  if (const auto* e = std::get_if<EllipseExterior>(&r)) out.update({{"a", e->a}, {"b", e->b}});
  if (const auto* p = std::get_if<ParabolaInterior>(&r)) out["p"] = p->p;
  if (const auto* p = std::get_if<ParabolaExterior>(&r)) out["p"] = p->p;
  return out;
}

const char* direction_name(Direction d) {
  return d == Direction::iff ? "iff" : "sufficient_only";
}

const char* side_name(ThresholdSide s) {
  return s == ThresholdSide::less_than_I ? "less_than_I" : "greater_than_minus_I";
}

int cmd_spectrum(const Options& o, json& report) {
  const ComplexMatrix a = read_matrix_file(o.a_path);
  const auto t0 = Clock::now();
  const Spectrum s = eig(a);
  report["timings"]["eig_ms"] = ms_since(t0);
  report.update(spectrum_json(s));
  return kVerdictTrue;
}

int cmd_certify(const Options& o, json& report) {
  const Region region = parse_region(o.region);
  report["region"] = region_json(region);
  const ComplexMatrix a = read_matrix_file(o.a_path);
  std::optional<ComplexMatrix> c;
  if (!o.c_path.empty()) c = read_matrix_file(o.c_path);

  const auto t0 = Clock::now();
  const Certificate cert = certify(region, a, c, o.oracle);
  report["timings"]["certify_ms"] = ms_since(t0);

  report["verdict"] = cert.verdict;
  report["posdef"] = cert.posdef;
  report["residual"] = cert.residual;
  report["min_pivot"] = cert.min_pivot;
  report["condition_estimate"] = cert.condition_estimate;
  report["direction"] = direction_name(cert.direction);
  report["H"] = matrix_to_json(cert.h);
  if (cert.oracle) {
    json oracle = spectrum_json(cert.oracle->spectrum);
    oracle["in_region"] = cert.oracle->in_region;
    oracle["margin"] = cert.oracle->margin;
    oracle["agrees"] = cert.oracle->agrees;
    report["oracle"] = std::move(oracle);
  }
  if (!o.out_path.empty()) write_matrix_file(o.out_path, cert.h);
  return cert.verdict ? kVerdictTrue : kVerdictFalse;
}

int cmd_perturb(const Options& o, json& report) {
  const Region region = parse_region(o.region);
  report["region"] = region_json(region);
  if (std::holds_alternative<HalfPlaneLeft>(region) || std::holds_alternative<UnitDisk>(region)) {
    throw UnsupportedRegion("perturbation checks need an ellipse or parabola region");
  }
  const ComplexMatrix a = read_matrix_file(o.a_path);
  std::optional<ComplexMatrix> b;
  if (!o.radius_only) {
    if (o.b_path.empty()) throw ParseError("perturb needs a B matrix unless --radius-only is given");
    b = read_matrix_file(o.b_path);
  }

  const auto t0 = Clock::now();
  std::optional<Certificate> base;
  try {
    base = certify(region, a);
  } catch (const SingularSystem& e) {
    report["base_certificate"] = {{"verdict", false}, {"error", e.what()}};
    return kBaseCertificateFailed;
  }
  report["base_certificate"] = {{"verdict", base->verdict},
                                {"residual", base->residual},
                                {"min_pivot", base->min_pivot},
                                {"H", matrix_to_json(base->h)}};
  if (!base->verdict) return kBaseCertificateFailed;

  if (o.radius_only) {
    double rho;
    if (const auto* e = std::get_if<EllipseInterior>(&region))
      rho = radius_ellipse_interior(a, base->h, e->a, e->b);
    else if (const auto* ex = std::get_if<EllipseExterior>(&region))
      rho = radius_ellipse_exterior(a, base->h, ex->a, ex->b);
    else
      throw UnsupportedRegion("no closed-form radius for parabola regions");
    report["radius"] = rho;
    report["timings"]["perturb_ms"] = ms_since(t0);
    return kVerdictTrue;
  }

  const PerturbationReport pr = check_perturbation(region, a, *b, base->h);
  report["timings"]["perturb_ms"] = ms_since(t0);
  report["condition_holds"] = pr.condition_holds;
  report["threshold_side"] = side_name(pr.condition.side);
  report["margin"] = pr.margin;
  report["radius"] = pr.radius ? json(*pr.radius) : json(nullptr);
  report["b_norm"] = pr.b_norm;
  report["verdict"] = pr.verdict;
  return pr.verdict ? kVerdictTrue : kVerdictFalse;
}

int cmd_solve(const Options& o, json& report) {
  const ComplexMatrix a = read_matrix_file(o.a_path);
  ComplexMatrix y = read_matrix_file(o.y_path);
  std::optional<LyapunovForm> form;
  std::optional<ComplexMatrix> b;
  if (!o.coeffs_path.empty()) {
    if (!o.region.name.empty()) throw ParseError("give either --coeffs or --region, not both");
    CoefficientFile cf = read_coefficient_file(o.coeffs_path);
    form.emplace(std::move(cf.form));
    b = std::move(cf.b);
    report["coeffs"] = o.coeffs_path;
  } else {
    if (o.region.name.empty()) throw ParseError("solve needs --coeffs or --region");
    const Region region = parse_region(o.region);
    report["region"] = region_json(region);
    form.emplace(region_form(region));
    // Y plays the role of C in the region equation.
    y *= static_cast<double>(form->rhs_sign());
  }
  if (!b) b = a.adjoint();
  if (!a.is_square() || !b->is_square() || y.rows() != b->rows() || y.cols() != a.rows()) {
    throw DimensionMismatch("Y must be rows(B) x rows(A) with A and B square");
  }
  report["method"] = o.method;

  const auto t0 = Clock::now();
  const KreinVerdict krein = krein_condition(*form, eig(*b), eig(a));
  report["krein"] = {{"ok", krein.ok},
                     {"min_abs_symbol", krein.min_abs_symbol},
                     {"tolerance", krein.tolerance}};
  if (!krein.ok) {
    json pairs = json::array();
    for (const KreinPair& kp : krein.offending) {
      pairs.push_back({{"s", kp.s}, {"r", kp.r}, {"lambda", complex_json(kp.lambda)},
                       {"mu", complex_json(kp.mu)}, {"abs_symbol", kp.abs_symbol}});
    }
    report["krein"]["offending"] = std::move(pairs);
    return kKreinViolated;
  }

  SolveReport sr = [&] {
    if (o.method == "contour") {
      const auto [cb, ca] = choose_contours(*form, *b, a, o.q);
      report["contours"] = {{"B", {{"center", complex_json(cb.center)}, {"radius", cb.radius}}},
                            {"A", {{"center", complex_json(ca.center)}, {"radius", ca.radius}}},
                            {"Q", o.q}};
      return solve_contour(*form, *b, a, y, cb, ca);
    }
    return solve_kron(*form, *b, a, y);
  }();
  report["timings"]["solve_ms"] = ms_since(t0);

  report["residual"] = sr.residual;
  report["condition_estimate"] = sr.condition_estimate;
  report["hermitized"] = sr.hermitized;
  if (sr.hermitized) {
    report["asymmetry_dropped"] = sr.asymmetry_dropped;
    const CholeskyResult chol = cholesky_posdef(sr.h);
    report["posdef"] = chol.positive_definite;
    report["min_pivot"] = chol.min_pivot;
  }
  report["H"] = matrix_to_json(sr.h);
  if (!o.out_path.empty()) write_matrix_file(o.out_path, sr.h);
  const bool verdict = sr.residual <= tol::kSuppliedSolutionResidual;
  report["verdict"] = verdict;
  return verdict ? kVerdictTrue : kVerdictFalse;
}

void add_region_flags(CLI::App* cmd, Options& o, bool required) {
  auto* opt = cmd->add_option("--region", o.region.name,
                              "halfplane | disk | ellipse-in | ellipse-out | parabola-in | parabola-out");
  if (required) opt->required();
  cmd->add_option("--a", o.region.a, "ellipse semi-axis along the real axis");
  cmd->add_option("--b", o.region.b, "ellipse semi-axis along the imaginary axis");
  cmd->add_option("--p", o.region.p, "parabola parameter");
}

struct Failure {
  int code;
  const char* type;
};

Failure classify(const std::exception& e) {
  if (dynamic_cast<const NoConvergence*>(&e)) return {kNoConvergence, "NoConvergence"};
  if (dynamic_cast<const SingularSystem*>(&e)) return {kSingularSystem, "SingularSystem"};
  if (dynamic_cast<const ContourTooClose*>(&e)) return {kSingularSystem, "ContourTooClose"};
  if (dynamic_cast<const KreinConditionViolated*>(&e)) return {kKreinViolated, "KreinConditionViolated"};
  if (dynamic_cast<const InvalidRegionParams*>(&e)) return {kBadRegion, "InvalidRegionParams"};
  if (dynamic_cast<const UnsupportedRegion*>(&e)) return {kBadRegion, "UnsupportedRegion"};
  if (dynamic_cast<const ParseError*>(&e)) return {kInvalidInput, "ParseError"};
  if (dynamic_cast<const DimensionMismatch*>(&e)) return {kInvalidInput, "DimensionMismatch"};
  if (dynamic_cast<const CNotPositiveDefinite*>(&e)) return {kInvalidInput, "CNotPositiveDefinite"};
  return {kInvalidInput, "Error"};
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spectrum localization certificates via generalized Lyapunov equations", "specloc"};
  app.require_subcommand(1);
  Options o;

  auto* spectrum = app.add_subcommand("spectrum", "eigenvalues of a matrix file");
  spectrum->add_option("A", o.a_path, "matrix file")->required();

  auto* cert = app.add_subcommand("certify", "certificate that the spectrum lies in a region");
  cert->add_option("A", o.a_path, "matrix file")->required();
  add_region_flags(cert, o, true);
  cert->add_option("--C", o.c_path, "Hermitian positive definite right-hand side (default I)");
  cert->add_flag("--oracle", o.oracle, "cross-check against the eigenvalue oracle");
  cert->add_option("--out", o.out_path, "write H to this matrix file");

  auto* perturb = app.add_subcommand("perturb", "perturbation check for A + B");
  perturb->add_option("A", o.a_path, "matrix file")->required();
  perturb->add_option("B", o.b_path, "perturbation matrix file");
  add_region_flags(perturb, o, true);
  perturb->add_flag("--radius-only", o.radius_only, "print the admissible perturbation radius");

  auto* solve = app.add_subcommand("solve", "solve sum a_jk B^j H A^k = Y");
  solve->add_option("A", o.a_path, "matrix file")->required();
  solve->add_option("Y", o.y_path, "right-hand side matrix file")->required();
  solve->add_option("--coeffs", o.coeffs_path, "coefficient file");
  add_region_flags(solve, o, false);
  solve->add_option("--method", o.method, "kron or contour")
      ->check(CLI::IsMember({"kron", "contour"}));
  solve->add_option("--Q", o.q, "quadrature points per contour")->check(CLI::Range(16, 1 << 16));
  solve->add_option("--out", o.out_path, "write H to this matrix file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kInvalidInput;
  }

  json report;
  json args = json::array();
  for (int i = 1; i < argc; ++i) args.push_back(argv[i]);
  report["command"] = {{"name", app.get_subcommands().front()->get_name()}, {"args", args}};

  const auto t0 = Clock::now();
  int code;
  try {
    if (*spectrum) code = cmd_spectrum(o, report);
    else if (*cert) code = cmd_certify(o, report);
    else if (*perturb) code = cmd_perturb(o, report);
    else code = cmd_solve(o, report);
  } catch (const std::exception& e) {
    const Failure f = classify(e);
    report["error"] = {{"type", f.type}, {"message", e.what()}};
    err << "specloc: " << e.what() << '\n';
    code = f.code;
  }
  report["exit_code"] = code;
  report["timings"]["total_ms"] = ms_since(t0);
  out << report.dump(2) << '\n';
  return code;
}

}  // namespace specloc::cli
