#pragma once

// On-disk formats: JSON documents for pencils, quadruples, model specs and
// verification reports (complex numbers as [re, im] pairs, matrices row
// major), CSV emitters for trajectories and spectra (RFC 4180, header row,
// LF endings). Parsers are strict: unknown keys are rejected.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "dissipgen/algebra.hpp"
#include "dissipgen/extension.hpp"
#include "dissipgen/pencil.hpp"
#include "dissipgen/quadruple.hpp"
#include "dissipgen/report.hpp"
#include "dissipgen/sbp.hpp"
#include "dissipgen/semigroup.hpp"

namespace dissipgen {

using json = nlohmann::json;

namespace detail {

inline void require_keys(const json& j, const std::string& what,
                         const std::set<std::string>& required,
                         const std::set<std::string>& optional = {}) {
  if (!j.is_object()) throw SchemaError(what + ": expected a JSON object");
  for (const auto& k : required) {
    if (!j.contains(k)) throw SchemaError(what + ": missing key '" + k + "'");
  }
  for (const auto& item : j.items()) {
    if (!required.count(item.key()) && !optional.count(item.key())) {
      throw SchemaError(what + ": unknown key '" + item.key() + "'");
    }
  }
}

inline double number_at(const json& j, const std::string& what) {
  if (!j.is_number()) throw SchemaError(what + ": expected a number");
  return j.get<double>();
}

}  // namespace detail

inline json complex_to_json(const Complex& z) { return json::array({z.real(), z.imag()}); }

inline Complex complex_from_json(const json& j, const std::string& what) {
  if (!j.is_array() || j.size() != 2) throw SchemaError(what + ": complex entries are [re, im]");
  return Complex(detail::number_at(j[0], what), detail::number_at(j[1], what));
}

inline json matrix_to_json(const Matrix& m) {
  json data = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) data.push_back(complex_to_json(m(i, j)));
  }
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

inline Matrix matrix_from_json(const json& j, const std::string& what) {
  detail::require_keys(j, what, {"rows", "cols", "data"});
  if (!j["rows"].is_number_integer() || !j["cols"].is_number_integer()) {
    throw SchemaError(what + ": rows/cols must be integers");
  }
  const Index rows = j["rows"].get<Index>();
  const Index cols = j["cols"].get<Index>();
  if (rows < 0 || cols < 0) throw SchemaError(what + ": negative dimensions");
  const json& data = j["data"];
  if (!data.is_array() || Index(data.size()) != rows * cols) {
    throw SchemaError(what + ": data must hold rows*cols entries");
  }
  Matrix m(rows, cols);
  Index k = 0;
  for (Index i = 0; i < rows; ++i) {
    for (Index jj = 0; jj < cols; ++jj) m(i, jj) = complex_from_json(data[k++], what);
  }
  if (!m.allFinite()) throw SchemaError(what + ": entries must be finite");
  return m;
}

inline json pencil_to_json(const SkewPencil& p) {
  return json{{"dim", p.dim()},
              {"weight", matrix_to_json(p.space.weight)},
              {"a_max", matrix_to_json(p.a_max)},
              {"core", matrix_to_json(p.core)}};
}

inline PencilPtr pencil_from_json(const json& j) {
  detail::require_keys(j, "pencil", {"dim", "weight", "a_max", "core"});
  if (!j["dim"].is_number_integer()) throw SchemaError("pencil: dim must be an integer");
  const Index dim = j["dim"].get<Index>();
  Matrix weight = matrix_from_json(j["weight"], "pencil.weight");
  Matrix a_max = matrix_from_json(j["a_max"], "pencil.a_max");
  Matrix core = matrix_from_json(j["core"], "pencil.core");
  if (weight.rows() != dim || a_max.rows() != dim || core.rows() != dim) {
    throw SchemaError("pencil: dim does not match the matrices");
  }
  try {
    return make_pencil(make_inner_space(std::move(weight)), std::move(a_max), std::move(core));
  } catch (const DimensionMismatch& e) {
    throw SchemaError(std::string("pencil: ") + e.what());
  }
}

inline QuadrupleMeta quadruple_meta_from_string(const std::string& s) {
  if (s == "form-spectral") return QuadrupleMeta::form_spectral;
  if (s == "deficiency") return QuadrupleMeta::deficiency;
  if (s == "model-explicit") return QuadrupleMeta::model_explicit;
  throw SchemaError("quadruple: unknown meta tag '" + s + "'");
}

inline json quadruple_to_json(const BoundaryQuadruple& q, const std::string& pencil_ref) {
  return json{{"pencil_ref", pencil_ref},
              {"gm", matrix_to_json(q.gm)},
              {"gp", matrix_to_json(q.gp)},
              {"meta", to_string(q.meta)}};
}

// The pencil is resolved by the caller from pencil_ref.
inline BoundaryQuadruple quadruple_from_json(const json& j, PencilPtr pencil) {
  detail::require_keys(j, "quadruple", {"pencil_ref", "gm", "gp", "meta"});
  Matrix gm = matrix_from_json(j["gm"], "quadruple.gm");
  Matrix gp = matrix_from_json(j["gp"], "quadruple.gp");
  if (!j["meta"].is_string()) throw SchemaError("quadruple: meta must be a string");
  const QuadrupleMeta meta = quadruple_meta_from_string(j["meta"].get<std::string>());
  if (gm.cols() != pencil->dim() || gp.cols() != pencil->dim()) {
    throw SchemaError("quadruple: map widths do not match the pencil dimension");
  }
  return BoundaryQuadruple{std::move(pencil), std::move(gm), std::move(gp), meta};
}

struct ModelSpec {
  ModelKind kind = ModelKind::transport;
  Index n = 0;
  Index m = 1;
  double a = 0.0;
  double b = 1.0;
  Matrix phi;
};

inline ModelKind model_kind_from_string(const std::string& s) {
  if (s == "transport") return ModelKind::transport;
  if (s == "second-derivative") return ModelKind::second_derivative;
  if (s == "wave") return ModelKind::wave;
  throw SchemaError("model: unknown kind '" + s + "'");
}

inline json model_spec_to_json(const ModelSpec& spec) {
  return json{{"kind", to_string(spec.kind)}, {"n", spec.n},   {"m", spec.m},
              {"a", spec.a},                  {"b", spec.b},   {"phi", matrix_to_json(spec.phi)}};
}

inline ModelSpec model_spec_from_json(const json& j) {
  detail::require_keys(j, "model", {"kind", "n", "phi"}, {"m", "a", "b"});
  ModelSpec spec;
  if (!j["kind"].is_string()) throw SchemaError("model: kind must be a string");
  spec.kind = model_kind_from_string(j["kind"].get<std::string>());
  if (!j["n"].is_number_integer()) throw SchemaError("model: n must be an integer");
  spec.n = j["n"].get<Index>();
  if (j.contains("m")) {
    if (!j["m"].is_number_integer()) throw SchemaError("model: m must be an integer");
    spec.m = j["m"].get<Index>();
  }
  if (j.contains("a")) spec.a = detail::number_at(j["a"], "model.a");
  if (j.contains("b")) spec.b = detail::number_at(j["b"], "model.b");
  spec.phi = matrix_from_json(j["phi"], "model.phi");
  if (spec.kind != ModelKind::transport && spec.m != 1) {
    throw SchemaError("model: m != 1 is only supported for transport");
  }
  return spec;
}

inline SbpModel build_model(const ModelSpec& spec) {
  switch (spec.kind) {
    case ModelKind::transport: return transport_model(spec.n, spec.m, spec.a, spec.b);
    case ModelKind::second_derivative: return second_derivative_model(spec.n, spec.a, spec.b);
    case ModelKind::wave: return wave_model(spec.n, spec.a, spec.b);
  }
  throw Error("build_model: unreachable");
}

inline json check_items_to_json(const std::vector<CheckItem>& checks) {
  json items = json::array();
  for (const auto& c : checks) {
    items.push_back(json{{"name", c.name},
                         {"residual", c.residual},
                         {"threshold", c.threshold},
                         {"pass", c.pass}});
  }
  return json{{"checks", std::move(items)}, {"pass", all_pass(checks)}};
}

inline json extension_report_json(const Extension& e) {
  const RegimeReport regime = enumerate_extremes(e.quadruple);
  return json{{"phi", matrix_to_json(e.phi.matrix())},
              {"s", e.basis.cols()},
              {"lambda_max_herm", lambda_max_herm(e.gen)},
              {"unitary", is_unitary_generator(e)},
              {"regime", to_string(regime.regime)}};
}

// Shortest round-trip decimal formatting, stable across runs.
inline std::string csv_num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

inline void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
  const Index s = traj.states.empty() ? 0 : traj.states.front().size();
  os << "t,energy,flux_plus,flux_minus";
  for (Index c = 0; c < s; ++c) os << ",re" << c << ",im" << c;
  os << "\n";
  for (Index k = 0; k < traj.times.size(); ++k) {
    os << csv_num(traj.times(k)) << ',' << csv_num(traj.energies(k)) << ','
       << csv_num(traj.flux_plus(k)) << ',' << csv_num(traj.flux_minus(k));
    for (Index c = 0; c < s; ++c) {
      os << ',' << csv_num(traj.states[std::size_t(k)](c).real()) << ','
         << csv_num(traj.states[std::size_t(k)](c).imag());
    }
    os << "\n";
  }
}

inline void write_spectrum_csv(std::ostream& os, const Vector& eigenvalues) {
  os << "k,re_lambda,im_lambda\n";
  for (Index k = 0; k < eigenvalues.size(); ++k) {
    os << k << ',' << csv_num(eigenvalues(k).real()) << ',' << csv_num(eigenvalues(k).imag())
       << "\n";
  }
}

// Writes to a temporary sibling and renames, so failures never leave a
// partial file behind.
inline void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary);
    if (!os) throw Error("cannot open " + tmp.string() + " for writing");
    os << content;
    if (!os) throw Error("short write to " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

inline json load_json_file(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw Error("cannot open " + path.string());
  json j;
  try {
    is >> j;
  } catch (const json::exception& e) {
    throw SchemaError("malformed JSON in " + path.string() + ": " + e.what());
  }
  return j;
}

}  // namespace dissipgen
