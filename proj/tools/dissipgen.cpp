// Batch front door: verify pencils/quadruples, evolve models, dump spectra,
// tabulate sampled contractions and emit synthetic pencils. JSON configs in,
// CSV/JSON artifacts out. Exit codes: 0 pass, 1 domain or invariant failure,
// 2 usage or schema error.

#include <cmath>
#include <complex>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "dissipgen/dissipgen.hpp"

namespace dg = dissipgen;
using dg::Index;
using json = dg::json;
namespace fs = std::filesystem;

namespace {

struct Options {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
};

double effective_tol(const Options& opt) {
  if (opt.tol) return *opt.tol;
  if (const char* env = std::getenv("DISSIPGEN_TOL")) {
    try {
      const double v = std::stod(env);
      if (v > 0 && std::isfinite(v)) return v;
    } catch (...) {
      throw dg::SchemaError("DISSIPGEN_TOL is not a number: " + std::string(env));
    }
  }
  return dg::kDefaultTol;
}

void emit(const Options& opt, const std::string& content) {
  if (opt.out.empty()) {
    std::cout << content;
  } else {
    dg::write_file_atomic(opt.out, content);
  }
}

// ---------------------------------------------------------------- verify ---

int cmd_verify(const Options& opt) {
  const json cfg = dg::load_json_file(opt.config);
  const double tol = effective_tol(opt);
  std::vector<dg::CheckItem> checks;
  if (cfg.is_object() && cfg.contains("pencil_ref")) {
    const fs::path base = fs::path(opt.config).parent_path();
    if (!cfg["pencil_ref"].is_string()) throw dg::SchemaError("quadruple: pencil_ref must be a string");
    const fs::path pref = base / cfg["pencil_ref"].get<std::string>();
    dg::PencilPtr pencil = dg::pencil_from_json(dg::load_json_file(pref));
    const dg::BoundaryQuadruple quad = dg::quadruple_from_json(cfg, pencil);
    checks = dg::verify_pencil(*pencil, tol);
    auto qc = dg::verify_quadruple(quad, tol);
    checks.insert(checks.end(), qc.begin(), qc.end());
  } else {
    dg::PencilPtr pencil = dg::pencil_from_json(cfg);
    checks = dg::verify_pencil(*pencil, tol);
  }
  emit(opt, dg::check_items_to_json(checks).dump(2) + "\n");
  return dg::all_pass(checks) ? 0 : 1;
}

// ---------------------------------------------------------------- evolve ---

dg::Vector build_initial_state(const json& j, const dg::SbpModel& model) {
  dg::detail::require_keys(j, "u0", {"type"}, {"center", "width", "component", "values"});
  if (!j["type"].is_string()) throw dg::SchemaError("u0: type must be a string");
  const std::string type = j["type"].get<std::string>();
  const Index total = model.pencil->dim();
  if (type == "explicit") {
    if (!j.contains("values")) throw dg::SchemaError("u0: explicit needs 'values'");
    const json& vals = j["values"];
    if (!vals.is_array() || Index(vals.size()) != total) {
      throw dg::SchemaError("u0: values must hold " + std::to_string(total) + " entries");
    }
    dg::Vector u0(total);
    for (Index k = 0; k < total; ++k) u0(k) = dg::complex_from_json(vals[k], "u0.values");
    return u0;
  }
  if (type == "gaussian") {
    for (const char* key : {"center", "width"}) {
      if (!j.contains(key)) throw dg::SchemaError(std::string("u0: gaussian needs '") + key + "'");
    }
    const double center = dg::detail::number_at(j["center"], "u0.center");
    const double width = dg::detail::number_at(j["width"], "u0.width");
    if (!(width > 0)) throw dg::SchemaError("u0: width must be positive");
    Index component = 0;
    if (j.contains("component")) {
      if (!j["component"].is_number_integer()) throw dg::SchemaError("u0: component must be an integer");
      component = j["component"].get<Index>();
    }
    const Index blocks = (model.kind == dg::ModelKind::wave) ? 2 : model.m;
    if (component < 0 || component >= blocks) throw dg::SchemaError("u0: component out of range");
    const dg::SbpOperator op = dg::make_sbp(model.n, 2, model.a, model.b);
    const dg::RealVector x = op.grid();
    dg::Vector u0 = dg::Vector::Zero(model.pencil->dim());
    for (Index jx = 0; jx < model.n; ++jx) {
      const double g = std::exp(-std::pow((x(jx) - center) / width, 2));
      if (model.kind == dg::ModelKind::wave) {
        u0(component * model.n + jx) = g;
      } else {
        u0(jx * model.m + component) = g;
      }
    }
    return u0;
  }
  throw dg::SchemaError("u0: unknown type '" + type + "'");
}

int cmd_evolve(const Options& opt) {
  const json cfg = dg::load_json_file(opt.config);
  dg::detail::require_keys(cfg, "evolve", {"model", "u0"}, {"times", "dt", "steps", "tol"});
  const double tol = opt.tol ? *opt.tol
                             : (cfg.contains("tol") ? dg::detail::number_at(cfg["tol"], "tol")
                                                    : effective_tol(opt));
  const dg::ModelSpec spec = dg::model_spec_from_json(cfg["model"]);
  const dg::SbpModel model = dg::build_model(spec);
  const dg::Extension ext =
      dg::build_extension(model.quadruple, dg::Contraction(spec.phi), tol);
  const dg::Vector u0 = build_initial_state(cfg["u0"], model);

  dg::Trajectory traj;
  if (cfg.contains("times")) {
    if (cfg.contains("dt") || cfg.contains("steps")) {
      throw dg::SchemaError("evolve: give either 'times' or 'dt'+'steps'");
    }
    dg::detail::require_keys(cfg["times"], "times", {"t0", "t1", "samples"});
    const double t0 = dg::detail::number_at(cfg["times"]["t0"], "times.t0");
    const double t1 = dg::detail::number_at(cfg["times"]["t1"], "times.t1");
    if (!cfg["times"]["samples"].is_number_integer()) {
      throw dg::SchemaError("times: samples must be an integer");
    }
    const Index samples = cfg["times"]["samples"].get<Index>();
    if (samples < 2 || !(t1 > t0)) throw dg::SchemaError("times: need t1 > t0 and samples >= 2");
    dg::RealVector times(samples);
    for (Index k = 0; k < samples; ++k) {
      times(k) = t0 + (t1 - t0) * double(k) / double(samples - 1);
    }
    traj = dg::propagate_exact(ext, u0, times);
  } else if (cfg.contains("dt") && cfg.contains("steps")) {
    const double dt = dg::detail::number_at(cfg["dt"], "dt");
    if (!cfg["steps"].is_number_integer()) throw dg::SchemaError("steps must be an integer");
    traj = dg::propagate_cn(ext, u0, dt, cfg["steps"].get<Index>());
  } else {
    throw dg::SchemaError("evolve: missing time grid ('times' or 'dt'+'steps')");
  }

  std::ostringstream csv;
  dg::write_trajectory_csv(csv, traj);
  if (opt.out.empty()) {
    std::cout << csv.str();
    std::cerr << "final_energy=" << dg::csv_num(traj.energies(traj.energies.size() - 1)) << "\n";
  } else {
    dg::write_file_atomic(opt.out, csv.str());
    std::cout << "final_energy=" << dg::csv_num(traj.energies(traj.energies.size() - 1)) << "\n";
  }
  return 0;
}

// -------------------------------------------------------------- spectrum ---

int cmd_spectrum(const Options& opt) {
  const json cfg = dg::load_json_file(opt.config);
  dg::detail::require_keys(cfg, "spectrum", {"model"}, {"tol"});
  const double tol = opt.tol ? *opt.tol
                             : (cfg.contains("tol") ? dg::detail::number_at(cfg["tol"], "tol")
                                                    : effective_tol(opt));
  const dg::ModelSpec spec = dg::model_spec_from_json(cfg["model"]);
  const dg::SbpModel model = dg::build_model(spec);
  const dg::Contraction phi(spec.phi, tol);

  dg::Vector eig;
  if (model.kind == dg::ModelKind::second_derivative && phi.unitary()) {
    const dg::SelfadjointExtension se = dg::selfadjoint_extension(model.quadruple, phi, tol);
    eig = se.spectrum.cast<dg::Complex>();
  } else {
    const dg::Extension ext = dg::build_extension(model.quadruple, phi, tol);
    Eigen::ComplexEigenSolver<dg::Matrix> es(ext.gen);
    eig = es.eigenvalues();
    std::sort(eig.begin(), eig.end(), [](const dg::Complex& x, const dg::Complex& y) {
      if (x.real() != y.real()) return x.real() > y.real();
      return x.imag() > y.imag();
    });
  }
  std::ostringstream csv;
  dg::write_spectrum_csv(csv, eig);
  emit(opt, csv.str());
  return 0;
}

// ------------------------------------------------------------- enumerate ---

int cmd_enumerate(const Options& opt) {
  const json cfg = dg::load_json_file(opt.config);
  dg::detail::require_keys(cfg, "enumerate", {"samples"}, {"synth", "pencil_file", "seed", "tol"});
  const double tol = opt.tol ? *opt.tol
                             : (cfg.contains("tol") ? dg::detail::number_at(cfg["tol"], "tol")
                                                    : effective_tol(opt));
  if (!cfg["samples"].is_number_integer()) throw dg::SchemaError("enumerate: samples must be an integer");
  const Index samples = cfg["samples"].get<Index>();
  if (samples < 1) throw dg::SchemaError("enumerate: samples must be >= 1");

  dg::PencilPtr pencil;
  if (cfg.contains("synth") == cfg.contains("pencil_file")) {
    throw dg::SchemaError("enumerate: give exactly one of 'synth' or 'pencil_file'");
  }
  if (cfg.contains("synth")) {
    const json& s = cfg["synth"];
    dg::detail::require_keys(s, "synth", {"k0", "kp", "km", "seed"});
    pencil = dg::synth_pencil(s["k0"].get<Index>(), s["kp"].get<Index>(), s["km"].get<Index>(),
                              s["seed"].get<std::uint64_t>());
  } else {
    const fs::path base = fs::path(opt.config).parent_path();
    pencil = dg::pencil_from_json(
        dg::load_json_file(base / cfg["pencil_file"].get<std::string>()));
  }
  std::uint64_t seed = 0;
  if (cfg.contains("seed")) seed = cfg["seed"].get<std::uint64_t>();
  if (opt.seed) seed = *opt.seed;

  const dg::BoundaryQuadruple quad = dg::quadruple_from_form(pencil, tol);
  dg::Sampler sampler(seed);
  std::ostringstream csv;
  csv << "index,p,q,sigma_max,sigma_min,lambda_max_herm,unitary\n";
  for (Index k = 0; k < samples; ++k) {
    const dg::Contraction phi(sampler.contraction(quad.q(), quad.p()), tol);
    const dg::Extension ext = dg::build_extension(quad, phi, tol);
    csv << k << ',' << quad.p() << ',' << quad.q() << ',' << dg::csv_num(phi.sigma_max()) << ','
        << dg::csv_num(phi.sigma_min()) << ',' << dg::csv_num(dg::lambda_max_herm(ext.gen)) << ','
        << (dg::is_unitary_generator(ext) ? 1 : 0) << "\n";
  }
  emit(opt, csv.str());
  return 0;
}

// ----------------------------------------------------------------- synth ---

int cmd_synth(const Options& opt) {
  const json cfg = dg::load_json_file(opt.config);
  dg::detail::require_keys(cfg, "synth", {"k0", "kp", "km", "seed"});
  for (const char* key : {"k0", "kp", "km", "seed"}) {
    if (!cfg[key].is_number_integer()) throw dg::SchemaError(std::string("synth: ") + key + " must be an integer");
  }
  std::uint64_t seed = cfg["seed"].get<std::uint64_t>();
  if (opt.seed) seed = *opt.seed;
  const dg::PencilPtr pencil =
      dg::synth_pencil(cfg["k0"].get<Index>(), cfg["kp"].get<Index>(), cfg["km"].get<Index>(), seed);
  emit(opt, dg::pencil_to_json(*pencil).dump(2) + "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"boundary quadruples, dissipative extensions and their semigroups"};
  app.require_subcommand(1);

  Options opt;
  std::uint64_t seed_flag = 0;
  double tol_flag = 0.0;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", opt.config, "JSON configuration file")->required();
    sub->add_option("--out", opt.out, "output path (stdout when omitted)");
    sub->add_option("--seed", seed_flag, "seed override")->each([&](const std::string&) {
      opt.seed = seed_flag;
    });
    sub->add_option("--tol", tol_flag, "tolerance override")->each([&](const std::string&) {
      opt.tol = tol_flag;
    });
  };

  CLI::App* verify = app.add_subcommand("verify", "run pencil/quadruple invariants");
  CLI::App* evolve = app.add_subcommand("evolve", "propagate a model and write a trajectory CSV");
  CLI::App* spectrum = app.add_subcommand("spectrum", "write the extension spectrum CSV");
  CLI::App* enumerate_ = app.add_subcommand("enumerate", "tabulate sampled boundary contractions");
  CLI::App* synth = app.add_subcommand("synth", "emit a synthetic pencil JSON");
  for (CLI::App* sub : {verify, evolve, spectrum, enumerate_, synth}) add_common(sub);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (verify->parsed()) return cmd_verify(opt);
    if (evolve->parsed()) return cmd_evolve(opt);
    if (spectrum->parsed()) return cmd_spectrum(opt);
    if (enumerate_->parsed()) return cmd_enumerate(opt);
    if (synth->parsed()) return cmd_synth(opt);
  } catch (const dg::SchemaError& e) {
    std::cerr << "schema error: " << e.what() << "\n";
    return 2;
  } catch (const dg::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
