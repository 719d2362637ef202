#include "krein/io.hpp"

namespace krein::io {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw Error(Errc::InvalidInput, std::string("json: missing field '") + key + "'");
  return j.at(key);
}

Index index_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    throw Error(Errc::InvalidInput, std::string("json: field '") + key + "' must be a nonnegative integer");
  }
  return static_cast<Index>(v.get<long long>());
}

}  // namespace

Json to_json(cplx z) { return Json::array({z.real(), z.imag()}); }

cplx complex_from_json(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw Error(Errc::InvalidInput, "json: complex entries are [re, im]");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

Json to_json(const Matrix& m) {
  Json data = Json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index k = 0; k < m.cols(); ++k) data.push_back(to_json(m(i, k)));
  }
  Json j;
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  j["data"] = std::move(data);
  return j;
}

Matrix matrix_from_json(const Json& j) {
  const Index rows = index_field(j, "rows");
  const Index cols = index_field(j, "cols");
  const Json& data = field(j, "data");
  if (!data.is_array() || static_cast<Index>(data.size()) != rows * cols) {
    throw Error(Errc::InvalidInput, "json: matrix data length does not match rows*cols");
  }
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    for (Index k = 0; k < cols; ++k) m(i, k) = complex_from_json(data[static_cast<std::size_t>(i * cols + k)]);
  }
  return m;
}

Json to_json(const Tolerance& t) { return Json{{"rank_cut", t.rank_cut}, {"eq_tol", t.eq_tol}}; }

Tolerance tolerance_from_json(const Json& j) {
  Tolerance t;
  if (j.contains("rank_cut")) t.rank_cut = j.at("rank_cut").get<double>();
  if (j.contains("eq_tol")) t.eq_tol = j.at("eq_tol").get<double>();
  t.validate();
  return t;
}

Json to_json(const HermitianContractionData& d) {
  Json j;
  j["ambient_dim"] = d.ambient_dim();
  j["dom_basis"] = to_json(d.dom().basis());
  j["b_column"] = to_json(d.b_column());
  return j;
}

HermitianContractionData data_from_json(const Json& j, const Tolerance& tol) {
  const Index n = index_field(j, "ambient_dim");
  const Matrix basis = matrix_from_json(field(j, "dom_basis"));
  if (basis.rows() != n) throw Error(Errc::InvalidInput, "json: dom_basis rows must equal ambient_dim");
  return HermitianContractionData::decompose(matrix_from_json(field(j, "b_column")), Subspace(basis, tol), tol);
}

Json to_json(const ExitParameter& x) {
  Json j;
  j["k_dim"] = x.k_dim();
  j["h_dim"] = x.h_dim();
  j["x11"] = to_json(x.x11());
  j["x12"] = to_json(x.x12());
  j["x22"] = to_json(x.x22());
  return j;
}

ExitParameter exit_from_json(const Json& j) {
  ExitParameter x = ExitParameter::selfadjoint(matrix_from_json(field(j, "x11")), matrix_from_json(field(j, "x12")),
                                               matrix_from_json(field(j, "x22")));
  if (x.k_dim() != index_field(j, "k_dim") || x.h_dim() != index_field(j, "h_dim")) {
    throw Error(Errc::InvalidInput, "json: exit parameter dimensions disagree with blocks");
  }
  return x;
}

Json to_json(const PassiveSystem& s) {
  Json j;
  j["in_dim"] = s.in_dim();
  j["out_dim"] = s.out_dim();
  j["state_dim"] = s.state_dim();
  j["d"] = to_json(s.d);
  j["c"] = to_json(s.c);
  j["b"] = to_json(s.b);
  j["a"] = to_json(s.a);
  return j;
}

PassiveSystem system_from_json(const Json& j) {
  PassiveSystem s = PassiveSystem::from_blocks(matrix_from_json(field(j, "d")), matrix_from_json(field(j, "c")),
                                               matrix_from_json(field(j, "b")), matrix_from_json(field(j, "a")));
  if (s.in_dim() != index_field(j, "in_dim") || s.out_dim() != index_field(j, "out_dim") ||
      s.state_dim() != index_field(j, "state_dim")) {
    throw Error(Errc::InvalidInput, "json: system dimensions disagree with blocks");
  }
  return s;
}

Json to_json(const LinearRelation& r) {
  Json j = to_json(r.graph().basis());
  j["ambient_dim"] = r.ambient_dim();
  return j;
}

LinearRelation relation_from_json(const Json& j) {
  return LinearRelation(index_field(j, "ambient_dim"), Subspace(matrix_from_json(j)));
}

std::vector<cplx> points_from_json(const Json& j) {
  const Json& pts = field(j, "points");
  if (!pts.is_array()) throw Error(Errc::InvalidInput, "json: 'points' must be an array");
  std::vector<cplx> out;
  for (const Json& p : pts) out.push_back(complex_from_json(p));
  return out;
}

}  // namespace krein::io
