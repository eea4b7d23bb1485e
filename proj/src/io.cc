#include "spinlattice/io.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

namespace spinlattice::io {

namespace {

std::string shortest(double x) {
  if (std::isnan(x)) return "nan";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

[[noreturn]] void field_error(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::kParse, "field '" + where + "': " + what);
}

const Json& member(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) field_error(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) field_error(where.empty() ? key : where + "." + key, "missing");
  return *it;
}

int integer_member(const Json& j, const char* key) {
  const Json& v = member(j, key, "");
  if (!v.is_number_integer() || v.get<long long>() < 0) field_error(key, "expected a non-negative integer");
  return v.get<int>();
}

void require_shape(const ComplexMatrix& m, int rows, int cols, const std::string& where) {
  if (m.rows() != rows || m.cols() != cols) {
    throw Error(ErrorCode::kDimension, "field '" + where + "' is " + std::to_string(m.rows()) + "x" +
                                           std::to_string(m.cols()) + ", expected " +
                                           std::to_string(rows) + "x" + std::to_string(cols));
  }
}

}  // namespace

Json to_json(Complex z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

Json to_json(const ComplexMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Complex complex_from_json(const Json& j, const std::string& where) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  const Json& re = member(j, "re", where);
  const Json& im = member(j, "im", where);
  if (!re.is_number()) field_error(where + ".re", "expected a number");
  if (!im.is_number()) field_error(where + ".im", "expected a number");
  return {re.get<double>(), im.get<double>()};
}

ComplexMatrix matrix_from_json(const Json& j, const std::string& where) {
  if (!j.is_array()) field_error(where, "expected an array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  Eigen::Index cols = -1;
  for (Eigen::Index i = 0; i < rows; ++i) {
    const Json& row = j[i];
    const std::string at = where + "[" + std::to_string(i) + "]";
    if (!row.is_array()) field_error(at, "expected an array");
    if (cols < 0) cols = static_cast<Eigen::Index>(row.size());
    if (static_cast<Eigen::Index>(row.size()) != cols) field_error(at, "ragged row");
  }
  ComplexMatrix m(rows, std::max<Eigen::Index>(cols, 0));
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index k = 0; k < cols; ++k) {
      m(i, k) = complex_from_json(j[i][k], where + "[" + std::to_string(i) + "][" + std::to_string(k) + "]");
    }
  }
  return m;
}

Json parse(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    const std::size_t end = std::min(e.byte, text.size());
    const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<long>(end), '\n');
    throw Error(ErrorCode::kParse, source + ":" + std::to_string(line) + ": " + e.what());
  }
}

Json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kParse, "cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), path);
}

ParameterTriple triple_from_json(const Json& j, const Tolerances& tol) {
  const int n = integer_member(j, "N");
  const int m = integer_member(j, "m");
  const ComplexMatrix alpha = matrix_from_json(member(j, "alpha", ""), "alpha");
  ComplexMatrix theta1 = matrix_from_json(member(j, "theta1", ""), "theta1");
  ComplexMatrix theta2 = matrix_from_json(member(j, "theta2", ""), "theta2");
  if (n == 0) {
    theta1.resize(0, m);
    theta2.resize(0, m);
  }
  require_shape(alpha, n, n, "alpha");
  require_shape(theta1, n, m, "theta1");
  require_shape(theta2, n, m, "theta2");
  if (j.contains("sigma0")) {
    const ComplexMatrix sigma = matrix_from_json(j["sigma0"], "sigma0");
    require_shape(sigma, n, n, "sigma0");
    return ParameterTriple(alpha, theta1, theta2, HermitianMatrix::from(sigma, tol));
  }
  return ParameterTriple(alpha, theta1, theta2);
}

Json to_json(const ParameterTriple& t) {
  Json j;
  j["N"] = t.order();
  j["m"] = t.m();
  j["alpha"] = to_json(t.alpha());
  j["theta1"] = to_json(t.theta1());
  j["theta2"] = to_json(t.theta2());
  if (!t.has_identity_sigma0()) j["sigma0"] = to_json(t.sigma0().matrix());
  return j;
}

Realization realization_from_json(const Json& j) {
  const ComplexMatrix gamma = matrix_from_json(member(j, "gamma", ""), "gamma");
  const ComplexMatrix v1 = matrix_from_json(member(j, "vartheta1", ""), "vartheta1");
  const ComplexMatrix v2 = matrix_from_json(member(j, "vartheta2", ""), "vartheta2");
  if (gamma.rows() != gamma.cols()) {
    throw Error(ErrorCode::kDimension, "field 'gamma' must be square");
  }
  return Realization(gamma, v1, v2);
}

Json to_json(const Realization& r) {
  Json j;
  j["n"] = r.order();
  j["m"] = r.m();
  j["gamma"] = to_json(r.gamma());
  j["vartheta1"] = to_json(r.vartheta1());
  j["vartheta2"] = to_json(r.vartheta2());
  return j;
}

Json to_json(const AdmissibilityReport& r) {
  Json j;
  j["class"] = std::string(to_string(r.triple_class));
  j["identity_ok"] = r.identity_ok;
  j["identity_residual"] = r.identity_residual;
  j["theta1_full_range"] = r.theta1_full_range;
  j["theta2_full_range"] = r.theta2_full_range;
  j["sigma0_positive"] = r.sigma0_positive;
  Json spec;
  Json ev = Json::array();
  for (const auto& e : r.spectrum.eigenvalues) ev.push_back(to_json(e));
  spec["eigenvalues"] = ev;
  spec["min_imag_part"] = r.spectrum.min_imag_part;
  spec["contains_plus_i"] = r.spectrum.contains_plus_i;
  spec["contains_minus_i"] = r.spectrum.contains_minus_i;
  spec["contains_zero"] = r.spectrum.contains_zero;
  j["spectrum"] = spec;
  return j;
}

Json to_json(const LatticeState& s) {
  Json j;
  j["triple"] = to_json(s.triple());
  j["horizon"] = s.horizon();
  Json lambdas = Json::array();
  Json sigmas = Json::array();
  Json conds = Json::array();
  for (int n = 0; n <= s.horizon(); ++n) {
    lambdas.push_back(to_json(s.lambdas()[n]));
    sigmas.push_back(to_json(s.sigmas()[n].matrix()));
    conds.push_back(s.conditioning()[n]);
  }
  Json spins = Json::array();
  Json involution = Json::array();
  for (std::size_t n = 0; n < s.spins().size(); ++n) {
    spins.push_back(to_json(s.spins()[n].matrix()));
    involution.push_back(s.involution_residual(static_cast<int>(n)));
  }
  j["lambdas"] = lambdas;
  j["sigmas"] = sigmas;
  j["spins"] = spins;
  j["conditioning"] = conds;
  j["involution_residuals"] = involution;
  if (s.truncation()) j["truncated"] = *s.truncation();
  return j;
}

void write_spins_csv(std::ostream& os, const LatticeState& s) {
  os << "n,i,j,re,im\n";
  for (std::size_t n = 0; n < s.spins().size(); ++n) {
    const ComplexMatrix& m = s.spins()[n].matrix();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      for (Eigen::Index k = 0; k < m.cols(); ++k) {
        os << n << ',' << i << ',' << k << ',' << shortest(m(i, k).real()) << ','
           << shortest(m(i, k).imag()) << '\n';
      }
    }
  }
}

void write_trajectory_csv(std::ostream& os, const std::vector<TrajectoryRow>& rows) {
  os << "t,n,s1,s2,s3,zc_residual,ihm_residual\n";
  for (const auto& r : rows) {
    os << shortest(r.t) << ',' << r.n << ',' << shortest(r.s.s1) << ',' << shortest(r.s.s2) << ','
       << shortest(r.s.s3) << ',' << shortest(r.zc_residual) << ',' << shortest(r.ihm_residual)
       << '\n';
  }
}

Json to_json(const std::vector<TrajectoryRow>& rows) {
  Json out = Json::array();
  for (const auto& r : rows) {
    Json j;
    j["t"] = r.t;
    j["n"] = r.n;
    j["spin"] = to_json(spin_matrix(r.s));
    j["vector"] = Json::array({r.s.s1, r.s.s2, r.s.s3});
    j["zc_residual"] = std::isnan(r.zc_residual) ? Json(nullptr) : Json(r.zc_residual);
    j["ihm_residual"] = std::isnan(r.ihm_residual) ? Json(nullptr) : Json(r.ihm_residual);
    out.push_back(std::move(j));
  }
  return out;
}

std::string dump(const Json& j) { return j.dump(2); }

}  // namespace spinlattice::io
