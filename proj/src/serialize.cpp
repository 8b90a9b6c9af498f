#include "vbslab/serialize.hpp"

#include <json.hpp>
#include <stdexcept>

namespace vbs {

namespace {

using nlohmann::json;

json complex_json(cplx z) { return json::array({z.real(), z.imag()}); }

cplx complex_from(const json& j) {
  if (!j.is_array() || j.size() != 2) throw std::invalid_argument("expected [re, im] pair");
  return {j[0].get<double>(), j[1].get<double>()};
}

json matrix_json(const Operator& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Operator matrix_from(const json& j) {
  if (!j.is_array() || j.empty()) throw std::invalid_argument("expected a non-empty matrix");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  Operator m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    if (!j[r].is_array() || static_cast<Eigen::Index>(j[r].size()) != cols) {
      throw std::invalid_argument("ragged matrix");
    }
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = complex_from(j[r][c]);
  }
  return m;
}

json tensor_json(const FcsTensor& t) {
  json out;
  out["d"] = t.d;
  out["D"] = t.D;
  out["labels"] = t.labels;
  out["basis"] = matrix_json(t.basis);
  json mats = json::array();
  for (const auto& m : t.matrices) mats.push_back(matrix_json(m));
  out["matrices"] = std::move(mats);
  return out;
}

FcsTensor tensor_from(const json& j) {
  FcsTensor t;
  t.d = j.at("d").get<int>();
  t.D = j.at("D").get<int>();
  t.labels = j.at("labels").get<std::vector<std::string>>();
  t.basis = matrix_from(j.at("basis"));
  for (const auto& m : j.at("matrices")) t.matrices.push_back(matrix_from(m));
  t.validate();
  return t;
}

json parse_tagged(const std::string& text, const char* format) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object() || j.value("format", "") != format) {
    throw std::invalid_argument(std::string("expected format \"") + format + "\"");
  }
  if (j.value("version", 0) != serialization_version) throw std::invalid_argument("unsupported version");
  return j;
}

template <typename F>
auto wrap(F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed document: ") + e.what());
  }
}

}  // namespace

std::string to_json(const FcsTensor& tensor) {
  json j = tensor_json(tensor);
  j["format"] = "vbslab.fcs";
  j["version"] = serialization_version;
  return j.dump(1);
}

std::string to_json(const ChainSpec& chain) {
  json j;
  j["format"] = "vbslab.chain";
  j["version"] = serialization_version;
  j["N"] = chain.N;
  j["tensor"] = tensor_json(chain.tensor);
  json boundary = json::array();
  for (Eigen::Index i = 0; i < chain.boundary.size(); ++i) boundary.push_back(complex_json(chain.boundary(i)));
  j["boundary"] = std::move(boundary);
  j["right_end"] = matrix_json(chain.right_end);
  return j.dump(1);
}

FcsTensor tensor_from_json(const std::string& text) {
  const json j = parse_tagged(text, "vbslab.fcs");
  return wrap([&] { return tensor_from(j); });
}

ChainSpec chain_from_json(const std::string& text) {
  const json j = parse_tagged(text, "vbslab.chain");
  return wrap([&] {
    ChainSpec chain;
    chain.N = j.at("N").get<int>();
    chain.tensor = tensor_from(j.at("tensor"));
    const auto& b = j.at("boundary");
    chain.boundary.resize(static_cast<Eigen::Index>(b.size()));
    for (std::size_t i = 0; i < b.size(); ++i) chain.boundary(static_cast<Eigen::Index>(i)) = complex_from(b[i]);
    chain.right_end = j.contains("right_end") ? matrix_from(j.at("right_end")) : identity(chain.tensor.D);
    chain.validate();
    return chain;
  });
}

}  // namespace vbs
