// Batch front end: load matrices, algebras and functionals from JSON,
// run the analyses, emit deterministic JSON or text reports.
//
// Exit codes: 0 success, 1 domain error, 2 malformed input.

#include <chrono>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "finstar/elemcalc.hpp"
#include "finstar/gelfand.hpp"
#include "finstar/gnsrep.hpp"
#include "finstar/specanalysis.hpp"
#include "finstar/specmeasure.hpp"
#include "finstar/staralg.hpp"
#include "finstar/unbounded.hpp"
#include "finstar/vonneumann.hpp"

using json = nlohmann::json;
using namespace finstar;

namespace {

struct Options {
  double tol = 1e-10;
  std::uint64_t seed = 0;
  std::string out;
  std::string format = "json";
  bool timing = false;
  double t = 1.0;            // evolve
  std::size_t K = 64;        // wiener truncation
  std::size_t N = 0;         // wiener grid (0: max(4096, 32 K))
};

// ---------------------------------------------------------------------
// JSON <-> domain types

json complex_to_json(cxd z) { return json::array({z.real(), z.imag()}); }

cxd complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2)
    throw InvalidInput("complex entries are [re, im] pairs");
  return cxd(j[0].get<double>(), j[1].get<double>());
}

json matrix_to_json(const CMat& m) {
  json data = json::array();
  for (const cxd& z : m.data()) data.push_back(complex_to_json(z));
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", data}};
}

CMat matrix_from_json(const json& j) {
  std::size_t rows = j.at("rows").get<std::size_t>();
  std::size_t cols = j.at("cols").get<std::size_t>();
  const json& data = j.at("data");
  if (data.size() != rows * cols)
    throw InvalidInput("matrix data length must be rows * cols");
  CMat m(rows, cols);
  for (std::size_t k = 0; k < data.size(); ++k)
    m.data()[k] = complex_from_json(data[k]);
  return m;
}

json values_to_json(const std::vector<cxd>& v) {
  json out = json::array();
  for (const cxd& z : v) out.push_back(complex_to_json(z));
  return out;
}

std::vector<cxd> values_from_json(const json& j) {
  std::vector<cxd> out;
  for (const json& e : j) out.push_back(complex_from_json(e));
  return out;
}

json algebra_to_json(const StarAlgebra& a) {
  json mult = json::array();
  for (std::size_t i = 0; i < a.dim; ++i)
    for (std::size_t j = 0; j < a.dim; ++j)
      for (std::size_t k = 0; k < a.dim; ++k)
        if (a.mult[i][j][k] != cxd(0.0))
          mult.push_back(json::array({i, j, k, a.mult[i][j][k].real(),
                                      a.mult[i][j][k].imag()}));
  json out{{"basis", a.basis_names},
           {"mult", mult},
           {"star", matrix_to_json(a.star)}};
  switch (a.norm_tag) {
    case NormTag::Operator: out["norm"] = "operator"; break;
    case NormTag::Ell1: out["norm"] = "ell1"; break;
    case NormTag::Sup: out["norm"] = "sup"; break;
  }
  if (a.unit) out["unit"] = *a.unit;
  if (!a.rep_mats.empty()) {
    json mats = json::array();
    for (const CMat& m : a.rep_mats) mats.push_back(matrix_to_json(m));
    out["mats"] = mats;
  }
  if (!a.ell1_weights.empty()) out["weights"] = a.ell1_weights;
  return out;
}

StarAlgebra algebra_from_json(const json& j, double tol) {
  StarAlgebra a;
  a.basis_names = j.at("basis").get<std::vector<std::string>>();
  a.dim = a.basis_names.size();
  a.mult.assign(a.dim, std::vector<std::vector<cxd>>(
                           a.dim, std::vector<cxd>(a.dim, cxd(0.0))));
  for (const json& trip : j.at("mult")) {
    if (trip.size() != 5)
      throw InvalidInput("mult entries are [i, j, k, re, im]");
    std::size_t i = trip[0].get<std::size_t>();
    std::size_t jj = trip[1].get<std::size_t>();
    std::size_t k = trip[2].get<std::size_t>();
    if (i >= a.dim || jj >= a.dim || k >= a.dim)
      throw InvalidInput("mult index out of range");
    a.mult[i][jj][k] = cxd(trip[3].get<double>(), trip[4].get<double>());
  }
  a.star = matrix_from_json(j.at("star"));
  std::string norm = j.value("norm", "ell1");
  if (norm == "operator") a.norm_tag = NormTag::Operator;
  else if (norm == "sup") a.norm_tag = NormTag::Sup;
  else a.norm_tag = NormTag::Ell1;
  if (j.contains("unit")) a.unit = j.at("unit").get<std::size_t>();
  if (j.contains("mats"))
    for (const json& m : j.at("mats")) a.rep_mats.push_back(matrix_from_json(m));
  if (j.contains("weights"))
    a.ell1_weights = j.at("weights").get<std::vector<double>>();
  return build_algebra(std::move(a), tol);
}

json l1z_to_json(const L1ZElement& a) {
  return json{{"offset", a.offset}, {"coeffs", values_to_json(a.coeffs)}};
}

L1ZElement l1z_from_json(const json& j) {
  L1ZElement a;
  a.offset = j.at("offset").get<long>();
  a.coeffs = values_from_json(j.at("coeffs"));
  return a;
}

json opset_to_json(const OperatorSet& s) {
  json mats = json::array();
  for (const CMat& m : s.mats) mats.push_back(matrix_to_json(m));
  return json{{"carrier_dim", s.carrier_dim},
              {"mats", mats},
              {"star_closed", s.star_closed}};
}

OperatorSet opset_from_json(const json& j) {
  OperatorSet s;
  for (const json& m : j.at("mats")) s.mats.push_back(matrix_from_json(m));
  if (s.mats.empty()) throw InvalidInput("operator set needs matrices");
  s.carrier_dim = j.value("carrier_dim", s.mats.front().rows());
  s.star_closed = j.value("star_closed", true);
  return s;
}

json diagop_to_json(const DiagonalOperator& a) {
  json sym;
  switch (a.symbol.family) {
    case Symbol::Family::Affine:
      sym = {{"family", "affine"}, {"alpha", a.symbol.alpha},
             {"beta", a.symbol.beta}};
      break;
    case Symbol::Family::Power:
      sym = {{"family", "power"}, {"alpha", a.symbol.alpha},
             {"exponent", a.symbol.exponent}};
      break;
    case Symbol::Family::Table:
      sym = {{"family", "table"}, {"table", a.symbol.table}};
      break;
  }
  json wts;
  switch (a.weights.family) {
    case Weights::Family::Uniform: wts = {{"family", "uniform"}}; break;
    case Weights::Family::Geometric:
      wts = {{"family", "geometric"}, {"ratio", a.weights.ratio}};
      break;
    case Weights::Family::PowerLaw:
      wts = {{"family", "powerlaw"}, {"exponent", a.weights.exponent}};
      break;
    case Weights::Family::Table:
      wts = {{"family", "table"}, {"table", a.weights.table}};
      break;
  }
  return json{{"symbol", sym}, {"weights", wts}, {"truncation", a.truncation}};
}

DiagonalOperator diagop_from_json(const json& j) {
  DiagonalOperator a;
  const json& sym = j.at("symbol");
  std::string fam = sym.at("family").get<std::string>();
  if (fam == "affine") {
    a.symbol.family = Symbol::Family::Affine;
    a.symbol.alpha = sym.value("alpha", 1.0);
    a.symbol.beta = sym.value("beta", 0.0);
  } else if (fam == "power") {
    a.symbol.family = Symbol::Family::Power;
    a.symbol.alpha = sym.value("alpha", 1.0);
    a.symbol.exponent = sym.value("exponent", 1.0);
  } else if (fam == "table") {
    a.symbol.family = Symbol::Family::Table;
    a.symbol.table = sym.at("table").get<std::vector<double>>();
  } else {
    throw InvalidInput("unknown symbol family: " + fam);
  }
  if (j.contains("weights")) {
    const json& wts = j.at("weights");
    std::string wfam = wts.at("family").get<std::string>();
    if (wfam == "uniform") a.weights.family = Weights::Family::Uniform;
    else if (wfam == "geometric") {
      a.weights.family = Weights::Family::Geometric;
      a.weights.ratio = wts.value("ratio", 0.5);
    } else if (wfam == "powerlaw") {
      a.weights.family = Weights::Family::PowerLaw;
      a.weights.exponent = wts.value("exponent", 2.0);
    } else if (wfam == "table") {
      a.weights.family = Weights::Family::Table;
      a.weights.table = wts.at("table").get<std::vector<double>>();
    } else {
      throw InvalidInput("unknown weight family: " + wfam);
    }
  }
  a.truncation = j.value("truncation", std::size_t{4096});
  return a;
}

json load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw InvalidInput("cannot open input file: " + path);
  return json::parse(in);  // parse_error carries the byte position
}

// ---------------------------------------------------------------------
// Commands

json cmd_spectrum(const std::vector<std::string>& files, const Options& opt,
                  json& inputs) {
  json j0 = load_file(files.at(0));
  if (j0.contains("rows")) {
    CMat m = matrix_from_json(j0);
    inputs["matrix"] = matrix_to_json(m);
    EigenDecomp d = eig(m, opt.tol);
    return json{{"eigenvalues", values_to_json(d.values)},
                {"residual", d.residual}};
  }
  StarAlgebra alg = algebra_from_json(j0, opt.tol);
  inputs["algebra"] = algebra_to_json(alg);
  if (files.size() < 2)
    throw InvalidInput("abstract spectrum needs an element file");
  json j1 = load_file(files.at(1));
  AlgElement a = values_from_json(j1.at("values"));
  inputs["element"] = json{{"values", values_to_json(a)}};
  auto sp = spectrum(alg, a, opt.tol);
  return json{{"eigenvalues", values_to_json(sp)}};
}

json cmd_positivity(const std::vector<std::string>& files, const Options& opt,
                    json& inputs) {
  CMat m = matrix_from_json(load_file(files.at(0)));
  inputs["matrix"] = matrix_to_json(m);
  bool pos = positive_test(m, opt.tol);
  EigenDecomp d = eig(m, opt.tol);
  double min_re = HUGE_VAL, max_im = 0.0;
  for (const cxd& z : d.values) {
    min_re = std::min(min_re, z.real());
    max_im = std::max(max_im, std::abs(z.imag()));
  }
  return json{{"positive", pos},
              {"min_real_part", d.values.empty() ? 0.0 : min_re},
              {"max_imag_magnitude", max_im},
              {"hermitian_defect", op_norm(m - m.adjoint())}};
}

json cmd_sqrt(const std::vector<std::string>& files, const Options& opt,
              json& inputs, json& residuals) {
  CMat m = matrix_from_json(load_file(files.at(0)));
  inputs["matrix"] = matrix_to_json(m);
  CMat r = positive_sqrt(m, opt.tol);
  residuals["square_residual"] = op_norm(r * r - m);
  return json{{"root", matrix_to_json(r)}};
}

json cmd_polar(const std::vector<std::string>& files, const Options& opt,
               json& inputs, json& residuals) {
  CMat m = matrix_from_json(load_file(files.at(0)));
  inputs["matrix"] = matrix_to_json(m);
  PolarPair pf = polar_factorise(m, opt.tol);
  residuals["unitary_defect"] =
      op_norm(pf.u.adjoint() * pf.u - CMat::identity(m.rows()));
  residuals["reconstruction"] = op_norm(pf.u * pf.p - m);
  residuals["factor_commutator"] = op_norm(pf.u * pf.p - pf.p * pf.u);
  return json{{"unitary", matrix_to_json(pf.u)},
              {"positive", matrix_to_json(pf.p)}};
}

json cmd_gelfand(const std::vector<std::string>& files, const Options& opt,
                 json& inputs, json& residuals) {
  StarAlgebra alg = algebra_from_json(load_file(files.at(0)), opt.tol);
  inputs["algebra"] = algebra_to_json(alg);
  CharacterTable table = characters(alg, opt.tol, opt.seed);
  residuals["multiplicativity"] = table.multiplicativity_residual;
  json out{{"character_count", table.count()},
           {"characters", matrix_to_json(table.characters)}};
  if (files.size() > 1) {
    AlgElement a = values_from_json(load_file(files.at(1)).at("values"));
    inputs["element"] = json{{"values", values_to_json(a)}};
    auto hat = gelfand_transform(alg, table, a);
    out["transform"] = values_to_json(hat);
    double sup = 0.0;
    for (const cxd& v : hat) sup = std::max(sup, std::abs(v));
    residuals["sup_vs_spectral_radius"] =
        std::abs(sup - spectral_radius(alg, a).value);
  }
  return out;
}

json cmd_gns(const std::vector<std::string>& files, const Options& opt,
             json& inputs, json& residuals) {
  StarAlgebra alg = algebra_from_json(load_file(files.at(0)), opt.tol);
  inputs["algebra"] = algebra_to_json(alg);
  Functional phi{values_from_json(load_file(files.at(1)).at("values"))};
  inputs["functional"] = json{{"values", values_to_json(phi.values)}};
  FunctionalDiagnostics diag = functional_diagnostics(alg, phi, opt.tol);
  GnsResult g = gns_construct(alg, phi, opt.tol);
  residuals["reproducing"] = g.reproducing_residual;
  residuals["representation_laws"] = g.rep.law_residual(alg);
  OperatorSet range;
  range.carrier_dim = g.rep.carrier_dim;
  range.mats = g.rep.mats;
  range.star_closed = true;
  std::size_t commutant_dim =
      g.quotient_dim == 0 ? 0 : commutant(range, opt.tol).mats.size();
  json rep = json::array();
  for (const CMat& m : g.rep.mats) rep.push_back(matrix_to_json(m));
  json cyc = json::array();
  for (std::size_t i = 0; i < g.quotient_dim; ++i)
    cyc.push_back(complex_to_json(g.cyclic(i, 0)));
  return json{{"quotient_dim", g.quotient_dim},
              {"variation", diag.variation},
              {"positive", diag.positive},
              {"hermitian", diag.hermitian},
              {"commutant_dim", commutant_dim},
              {"cyclic_vector", cyc},
              {"representation", rep}};
}

json cmd_commutant(const std::vector<std::string>& files, const Options& opt,
                   json& inputs) {
  OperatorSet s = opset_from_json(load_file(files.at(0)));
  inputs["operators"] = opset_to_json(s);
  OperatorSet c = commutant(s, opt.tol);
  OperatorSet b = bicommutant(s, opt.tol);
  json basis = json::array();
  for (const CMat& m : c.mats) basis.push_back(matrix_to_json(m));
  return json{{"commutant_dim", c.mats.size()},
              {"bicommutant_dim", b.mats.size()},
              {"commutant_basis", basis}};
}

json cmd_diagonalize(const std::vector<std::string>& files, const Options& opt,
                     json& inputs, json& residuals) {
  OperatorSet s = opset_from_json(load_file(files.at(0)));
  inputs["operators"] = opset_to_json(s);
  std::vector<cxd> vec = values_from_json(load_file(files.at(1)).at("values"));
  inputs["vector"] = json{{"values", values_to_json(vec)}};
  CMat c = CMat::col_vector(vec);
  auto [alg, pi] = closure_as_algebra(s, opt.tol);
  DiagonalisationResult d = diagonalise_cyclic(alg, pi, c, opt.tol);
  residuals["intertwining"] = d.intertwining_residual;
  return json{{"measure", d.measure},
              {"unitary", matrix_to_json(d.unitary)},
              {"characters", matrix_to_json(d.characters)}};
}

json cmd_evolve(const std::vector<std::string>& files, const Options& opt,
                json& inputs, json& residuals) {
  DiagonalOperator a = diagop_from_json(load_file(files.at(0)));
  inputs["operator"] = diagop_to_json(a);
  json jv = load_file(files.at(1));
  SeqVector x;
  for (const json& entry : jv.at("entries")) {
    if (entry.size() != 3)
      throw InvalidInput("sequence entries are [index, re, im]");
    x.entries[entry[0].get<std::size_t>()] =
        cxd(entry[1].get<double>(), entry[2].get<double>());
  }
  json echo = json::array();
  for (const auto& [n, v] : x.entries)
    echo.push_back(json::array({n, v.real(), v.imag()}));
  inputs["vector"] = json{{"entries", echo}};
  SeqVector y = evolve(a, opt.t, x);
  residuals["norm_drift"] =
      std::abs(weighted_norm(a, y) - weighted_norm(a, x));
  json out = json::array();
  for (const auto& [n, v] : y.entries)
    out.push_back(json::array({n, v.real(), v.imag()}));
  return json{{"entries", out}, {"t", opt.t}};
}

json cmd_wiener(const std::vector<std::string>& files, const Options& opt,
                json& inputs, json& residuals) {
  L1ZElement a = l1z_from_json(load_file(files.at(0)));
  inputs["element"] = l1z_to_json(a);
  std::size_t grid = opt.N ? opt.N : std::max<std::size_t>(4096, 32 * opt.K);
  WienerResult w = wiener_invert(a, opt.K, grid, opt.tol);
  residuals["convolution"] = w.residual;
  residuals["tail"] = w.tail;
  return json{{"inverse", l1z_to_json(w.inverse)},
              {"min_symbol", w.min_symbol},
              {"truncation", opt.K},
              {"grid", grid}};
}

// ---------------------------------------------------------------------

void print_text(const json& report, std::ostream& os) {
  os << "command: " << report.at("command").get<std::string>() << "\n";
  if (report.contains("error")) {
    os << "error: " << report.at("error").at("kind").get<std::string>() << ": "
       << report.at("error").at("message").get<std::string>() << "\n";
    return;
  }
  os << "results:\n" << report.at("results").dump(2) << "\n";
  os << "residuals:\n" << report.at("residuals").dump(2) << "\n";
}

int usage(std::ostream& os) {
  os << "usage: finstar <command> <files...> [--tol T] [--seed S]\n"
        "               [--out PATH] [--format json|text] [--t T]\n"
        "               [--K TRUNC] [--N GRID] [--timing]\n"
        "commands: spectrum positivity sqrt polar gelfand gns commutant\n"
        "          diagonalize evolve wiener\n";
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  if (args.empty()) return usage(std::cerr);
  const std::string command = args.front();
  std::vector<std::string> files;
  Options opt;
  auto need_value = [&](std::size_t& i) -> std::string {
    if (i + 1 >= args.size()) throw InvalidInput("flag needs a value");
    return args[++i];
  };
  try {
    for (std::size_t i = 1; i < args.size(); ++i) {
      const std::string& a = args[i];
      if (a == "--tol") opt.tol = std::stod(need_value(i));
      else if (a == "--seed") opt.seed = std::stoull(need_value(i));
      else if (a == "--out") opt.out = need_value(i);
      else if (a == "--format") opt.format = need_value(i);
      else if (a == "--t") opt.t = std::stod(need_value(i));
      else if (a == "--K") opt.K = std::stoull(need_value(i));
      else if (a == "--N") opt.N = std::stoull(need_value(i));
      else if (a == "--timing") opt.timing = true;
      else if (a == "--help" || a == "-h") return usage(std::cout);
      else if (a.rfind("--", 0) == 0) throw InvalidInput("unknown flag " + a);
      else files.push_back(a);
    }
  } catch (const std::exception& e) {
    std::cerr << "argument error: " << e.what() << "\n";
    return 2;
  }

  json report;
  report["command"] = command;
  report["tolerances"] = json{{"tol", opt.tol}, {"seed", opt.seed}};
  json inputs = json::object();
  json residuals = json::object();
  int code = 0;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    json results;
    if (command == "spectrum") results = cmd_spectrum(files, opt, inputs);
    else if (command == "positivity") results = cmd_positivity(files, opt, inputs);
    else if (command == "sqrt") results = cmd_sqrt(files, opt, inputs, residuals);
    else if (command == "polar") results = cmd_polar(files, opt, inputs, residuals);
    else if (command == "gelfand") results = cmd_gelfand(files, opt, inputs, residuals);
    else if (command == "gns") results = cmd_gns(files, opt, inputs, residuals);
    else if (command == "commutant") results = cmd_commutant(files, opt, inputs);
    else if (command == "diagonalize") results = cmd_diagonalize(files, opt, inputs, residuals);
    else if (command == "evolve") results = cmd_evolve(files, opt, inputs, residuals);
    else if (command == "wiener") results = cmd_wiener(files, opt, inputs, residuals);
    else
      throw UnknownCommand("no such command: " + command);
    report["results"] = results;
  } catch (const UnknownCommand& e) {
    report["error"] = json{{"kind", e.kind()}, {"message", e.what()}};
    code = 2;
  } catch (const json::parse_error& e) {
    report["error"] = json{{"kind", "MalformedJson"},
                           {"message", e.what()},
                           {"byte", e.byte}};
    code = 2;
  } catch (const json::exception& e) {
    report["error"] = json{{"kind", "MalformedJson"}, {"message", e.what()}};
    code = 2;
  } catch (const Error& e) {
    json data = json::object();
    for (const auto& [k, v] : e.data()) data[k] = v;
    report["error"] =
        json{{"kind", e.kind()}, {"message", e.what()}, {"data", data}};
    code = 1;
  } catch (const std::out_of_range&) {
    report["error"] = json{{"kind", "MalformedJson"},
                           {"message", "missing argument or field"}};
    code = 2;
  } catch (const std::exception& e) {
    report["error"] = json{{"kind", "InternalError"}, {"message", e.what()}};
    code = 1;
  }
  report["inputs"] = inputs;
  report["residuals"] = residuals;
  // Reports must be byte-identical across runs; wall time is only
  // reported when explicitly requested.
  const auto t1 = std::chrono::steady_clock::now();
  report["elapsed_ms"] =
      opt.timing
          ? std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0)
                .count()
          : 0;

  std::ostringstream body;
  if (opt.format == "text") print_text(report, body);
  else body << report.dump(2) << "\n";
  if (!opt.out.empty()) {
    std::ofstream out(opt.out);
    out << body.str();
  } else {
    std::cout << body.str();
  }
  return code;
}
