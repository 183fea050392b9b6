#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "sipovm/povm.hpp"
#include "sipovm/sic_search.hpp"
#include "sipovm/wh_covariant.hpp"
#include "sipovm/wigner.hpp"

namespace sipovm {

inline constexpr const char* kToolVersion = "0.1.0";

// JSON document envelope shared by every file the CLI reads or writes.
// Complex scalars are serialized as [re, im] pairs, matrices as row-major
// nested arrays.
struct DocumentMetadata {
  std::optional<std::uint64_t> seed;
  std::string method;
  std::string tool_version = kToolVersion;
  std::string created_at;
};

struct Document {
  std::string kind;  // state | povm | fiducial | phases | wigner | report
  int dimension = 0;
  nlohmann::json payload;
  DocumentMetadata metadata;
};

class DecodeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string encode(const Document& doc);
Document decode(const std::string& bytes);

nlohmann::json json_from_matrix(const Matrix& m);
Matrix matrix_from_json(const nlohmann::json& j, int d);
nlohmann::json json_from_vector(const Vector& v);
Vector vector_from_json(const nlohmann::json& j, int d);

Document document_from_state(const Matrix& rho, const GroupContext& ctx);
Document document_from_povm(const Povm& povm);
Document document_from_fiducial(const Fiducial& psi, const GroupContext& ctx);
Document document_from_phases(const PhaseVector& phi);
Document document_from_wigner(const WignerFunction& w);
Document document_from_report(const SiReport& report, int dimension);

Matrix state_from_document(const Document& doc);
Povm povm_from_document(const Document& doc);
Fiducial fiducial_from_document(const Document& doc);
PhaseVector phases_from_document(const Document& doc);
WignerFunction wigner_from_document(const Document& doc);

}  // namespace sipovm
