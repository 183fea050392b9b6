#include "sipovm/io.hpp"

namespace sipovm {

namespace {

using nlohmann::json;

const json& require_field(const json& j, const char* field, const char* where) {
  auto it = j.find(field);
  if (it == j.end())
    throw DecodeError(std::string(where) + ": missing field \"" + field + "\"");
  return *it;
}

Complex complex_from_json(const json& j, const char* where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw DecodeError(std::string(where) + ": complex scalar must be a [re, im] pair");
  return {j[0].get<double>(), j[1].get<double>()};
}

json json_from_complex(const Complex& z) { return json::array({z.real(), z.imag()}); }

}  // namespace

json json_from_matrix(const Matrix& m) {
  json rows = json::array();
  for (int r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(json_from_complex(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const json& j, int d) {
  if (!j.is_array() || static_cast<int>(j.size()) != d)
    throw DecodeError("matrix: expected " + std::to_string(d) + " rows");
  Matrix m(d, d);
  for (int r = 0; r < d; ++r) {
    if (!j[r].is_array() || static_cast<int>(j[r].size()) != d)
      throw DecodeError("matrix: row " + std::to_string(r) + " has wrong length");
    for (int c = 0; c < d; ++c) m(r, c) = complex_from_json(j[r][c], "matrix");
  }
  return m;
}

json json_from_vector(const Vector& v) {
  json out = json::array();
  for (int i = 0; i < v.size(); ++i) out.push_back(json_from_complex(v(i)));
  return out;
}

Vector vector_from_json(const json& j, int d) {
  if (!j.is_array() || static_cast<int>(j.size()) != d)
    throw DecodeError("vector: expected " + std::to_string(d) + " entries");
  Vector v(d);
  for (int i = 0; i < d; ++i) v(i) = complex_from_json(j[i], "vector");
  return v;
}

std::string encode(const Document& doc) {
  json j;
  j["kind"] = doc.kind;
  j["dimension"] = doc.dimension;
  j["payload"] = doc.payload;
  json meta;
  if (doc.metadata.seed) meta["seed"] = *doc.metadata.seed;
  if (!doc.metadata.method.empty()) meta["method"] = doc.metadata.method;
  meta["tool_version"] = doc.metadata.tool_version;
  meta["created_at"] = doc.metadata.created_at;
  j["metadata"] = std::move(meta);
  return j.dump(2) + "\n";
}

Document decode(const std::string& bytes) {
  json j;
  try {
    j = json::parse(bytes);
  } catch (const json::parse_error& e) {
    throw DecodeError(std::string("document: malformed JSON (") + e.what() + ")");
  }
  Document doc;
  const json& kind = require_field(j, "kind", "document");
  if (!kind.is_string()) throw DecodeError("document: \"kind\" must be a string");
  doc.kind = kind.get<std::string>();
  static const char* kKnown[] = {"state", "povm", "fiducial", "phases", "wigner", "report"};
  bool known = false;
  for (const char* k : kKnown)
    if (doc.kind == k) known = true;
  if (!known) throw DecodeError("document: unknown kind \"" + doc.kind + "\"");

  const json& dim = require_field(j, "dimension", "document");
  if (!dim.is_number_integer() || dim.get<int>() < 2)
    throw DecodeError("document: \"dimension\" must be an integer >= 2");
  doc.dimension = dim.get<int>();
  doc.payload = require_field(j, "payload", "document");

  if (auto it = j.find("metadata"); it != j.end() && it->is_object()) {
    const json& meta = *it;
    if (auto s = meta.find("seed"); s != meta.end() && s->is_number_unsigned())
      doc.metadata.seed = s->get<std::uint64_t>();
    if (auto m = meta.find("method"); m != meta.end() && m->is_string())
      doc.metadata.method = m->get<std::string>();
    if (auto v = meta.find("tool_version"); v != meta.end() && v->is_string())
      doc.metadata.tool_version = v->get<std::string>();
    if (auto c = meta.find("created_at"); c != meta.end() && c->is_string())
      doc.metadata.created_at = c->get<std::string>();
  }
  return doc;
}

Document document_from_state(const Matrix& rho, const GroupContext& ctx) {
  Document doc;
  doc.kind = "state";
  doc.dimension = ctx.d;
  doc.payload = {{"matrix", json_from_matrix(rho)}};
  return doc;
}

Document document_from_povm(const Povm& povm) {
  Document doc;
  doc.kind = "povm";
  doc.dimension = povm.ctx.d;
  json elements = json::array();
  for (const auto& e : povm.elements) elements.push_back(json_from_matrix(e));
  doc.payload = {{"elements", std::move(elements)}};
  return doc;
}

Document document_from_fiducial(const Fiducial& psi, const GroupContext& ctx) {
  Document doc;
  doc.kind = "fiducial";
  doc.dimension = ctx.d;
  doc.payload = {{"vector", json_from_vector(psi.psi)}};
  return doc;
}

Document document_from_phases(const PhaseVector& phi) {
  Document doc;
  doc.kind = "phases";
  doc.dimension = phi.ctx.d;
  json angles = json::array();
  const int d = phi.ctx.d;
  for (int q1 = 0; q1 < d; ++q1)
    for (int q2 = 0; q2 < d; ++q2) {
      if (q1 == 0 && q2 == 0) continue;
      angles.push_back({{"p1", q1}, {"p2", q2}, {"theta", phi.theta[q1 * d + q2]}});
    }
  doc.payload = {{"angles", std::move(angles)}};
  return doc;
}

Document document_from_wigner(const WignerFunction& w) {
  Document doc;
  doc.kind = "wigner";
  doc.dimension = w.ctx.d;
  json values = json::array();
  for (int i = 0; i < w.values.size(); ++i) values.push_back(w.values(i));
  doc.payload = {{"values", std::move(values)}};
  return doc;
}

Document document_from_report(const SiReport& report, int dimension) {
  Document doc;
  doc.kind = "report";
  doc.dimension = dimension;
  doc.payload = {{"n", report.n},
                 {"is_povm", report.is_povm},
                 {"is_symmetric", report.is_symmetric},
                 {"alpha", report.alpha},
                 {"beta", report.beta},
                 {"kappa", report.kappa},
                 {"gram_rank", report.gram_rank},
                 {"is_informationally_complete", report.is_informationally_complete},
                 {"is_rank_one_sic", report.is_rank_one_sic},
                 {"max_residual", report.max_residual}};
  return doc;
}

Matrix state_from_document(const Document& doc) {
  if (doc.kind != "state") throw DecodeError("expected a state document");
  return matrix_from_json(require_field(doc.payload, "matrix", "state payload"),
                          doc.dimension);
}

Povm povm_from_document(const Document& doc) {
  if (doc.kind != "povm") throw DecodeError("expected a povm document");
  const json& elements = require_field(doc.payload, "elements", "povm payload");
  if (!elements.is_array() || elements.empty())
    throw DecodeError("povm payload: \"elements\" must be a non-empty array");
  Povm povm{{}, GroupContext(doc.dimension)};
  for (const auto& e : elements)
    povm.elements.push_back(matrix_from_json(e, doc.dimension));
  return povm;
}

Fiducial fiducial_from_document(const Document& doc) {
  if (doc.kind != "fiducial") throw DecodeError("expected a fiducial document");
  return {vector_from_json(require_field(doc.payload, "vector", "fiducial payload"),
                           doc.dimension)};
}

PhaseVector phases_from_document(const Document& doc) {
  if (doc.kind != "phases") throw DecodeError("expected a phases document");
  const json& angles = require_field(doc.payload, "angles", "phases payload");
  const int d = doc.dimension;
  if (!angles.is_array() || static_cast<int>(angles.size()) != d * d - 1)
    throw DecodeError("phases payload: expected d^2-1 angle entries");
  GroupContext ctx(d);
  PhaseVector phi{ctx, std::vector<double>(d * d, 0.0)};
  std::vector<bool> seen(d * d, false);
  for (const auto& entry : angles) {
    const int p1 = require_field(entry, "p1", "phase entry").get<int>();
    const int p2 = require_field(entry, "p2", "phase entry").get<int>();
    const double theta = require_field(entry, "theta", "phase entry").get<double>();
    if (p1 < 0 || p1 >= d || p2 < 0 || p2 >= d || (p1 == 0 && p2 == 0))
      throw DecodeError("phase entry: index out of range");
    if (seen[p1 * d + p2]) throw DecodeError("phase entry: duplicate index");
    seen[p1 * d + p2] = true;
    phi.theta[p1 * d + p2] = theta;
  }
  if (pairing_residual(phi) > 1e-8)
    throw DecodeError("phases payload: angles violate the Hermiticity pairing");
  return phi;
}

WignerFunction wigner_from_document(const Document& doc) {
  if (doc.kind != "wigner") throw DecodeError("expected a wigner document");
  const json& values = require_field(doc.payload, "values", "wigner payload");
  const int d = doc.dimension;
  if (!values.is_array() || static_cast<int>(values.size()) != d * d)
    throw DecodeError("wigner payload: expected d^2 values");
  WignerFunction w{GroupContext(d), Eigen::VectorXd(d * d)};
  for (int i = 0; i < d * d; ++i) {
    if (!values[i].is_number())
      throw DecodeError("wigner payload: values must be real numbers");
    w.values(i) = values[i].get<double>();
  }
  return w;
}

}  // namespace sipovm
