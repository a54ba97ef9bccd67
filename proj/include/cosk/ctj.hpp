// CTJ ("curvature tensor JSON") serialization.
//
// Schema "ctj-1": {"format":"ctj-1","n":4,"components":[{"i":..,"j":..,
// "k":..,"l":..,"v":..},...],"J":[...],"metadata":{...}} with 1-based
// canonical slots only (i<j, k<l, (i,j) <= (k,l) lexicographically), omitted
// slots zero, and an optional complex structure "J" as a flat row-major
// n*n array. Values round-trip exactly: the serializer emits the shortest
// decimal that parses back to the same double.
#pragma once

#include "cosk/curvature_tensor.hpp"
#include "cosk/model_spaces.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

namespace cosk {

using Json = nlohmann::ordered_json;

struct CtjData {
  CurvatureTensor<double> tensor;
  std::optional<ComplexStructure<double>> structure;
  double bianchi_defect = 0.0;
  Json metadata;
};

inline Json ctj_to_json(const CurvatureTensor<double>& r,
                        const ComplexStructure<double>* structure = nullptr,
                        const Json& metadata = Json::object()) {
  Json out;
  out["format"] = "ctj-1";
  out["n"] = r.dim();
  Json comps = Json::array();
  for (const auto& s : CurvatureTensor<double>::canonical_slots(r.dim())) {
    const double v = r(s.i, s.j, s.k, s.l);
    if (v == 0.0) continue;
    comps.push_back(Json{{"i", s.i + 1}, {"j", s.j + 1}, {"k", s.k + 1},
                         {"l", s.l + 1}, {"v", v}});
  }
  out["components"] = std::move(comps);
  if (structure != nullptr) {
    Json jrow = Json::array();
    const Matrix<double>& jm = structure->mat();
    for (Index a = 0; a < jm.rows(); ++a)
      for (Index b = 0; b < jm.cols(); ++b) jrow.push_back(jm(a, b));
    out["J"] = std::move(jrow);
  }
  if (!metadata.empty()) out["metadata"] = metadata;
  return out;
}

inline CtjData ctj_from_json(const Json& in) {
  try {
    if (!in.is_object() || in.value("format", "") != std::string("ctj-1"))
      throw ParseError("ctj: missing or unknown format (expected \"ctj-1\")");
    if (!in.contains("n") || !in["n"].is_number_integer())
      throw ParseError("ctj: missing integer field \"n\"");
    const Index n = in["n"].get<Index>();
    std::vector<ComponentEntry<double>> entries;
    if (in.contains("components")) {
      if (!in["components"].is_array()) throw ParseError("ctj: components must be an array");
      for (const auto& c : in["components"]) {
        if (!c.is_object() || !c.contains("i") || !c.contains("j") ||
            !c.contains("k") || !c.contains("l") || !c.contains("v"))
          throw ParseError("ctj: component entries need fields i, j, k, l, v");
        entries.push_back({c["i"].get<Index>(), c["j"].get<Index>(),
                           c["k"].get<Index>(), c["l"].get<Index>(),
                           c["v"].get<double>()});
      }
    }
    CtjData data{act_from_components<double>(n, entries), std::nullopt, 0.0,
                 in.contains("metadata") ? in["metadata"] : Json::object()};
    data.bianchi_defect = bianchi_defect(data.tensor);
    if (in.contains("J")) {
      const auto& jarr = in["J"];
      if (!jarr.is_array() || static_cast<Index>(jarr.size()) != n * n)
        throw ParseError("ctj: J must be a flat row-major n*n array");
      Matrix<double> jm(n, n);
      for (Index a = 0; a < n; ++a)
        for (Index b = 0; b < n; ++b)
          jm(a, b) = jarr[static_cast<std::size_t>(a * n + b)].get<double>();
      data.structure = ComplexStructure<double>(jm);  // ValidationError on bad J
    }
    return data;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("ctj: malformed JSON value: ") + e.what());
  }
}

inline void ctj_write(const std::string& path, const CurvatureTensor<double>& r,
                      const ComplexStructure<double>* structure = nullptr,
                      const Json& metadata = Json::object()) {
  std::ofstream out(path);
  if (!out) throw Error("ctj_write: cannot open " + path);
  out << ctj_to_json(r, structure, metadata).dump(2) << "\n";
}

inline CtjData ctj_read(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("ctj_read: cannot open " + path);
  Json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("ctj_read: invalid JSON: ") + e.what());
  }
  return ctj_from_json(j);
}

// FNV-1a 64-bit content digest, used to echo inputs into reports.
inline std::string fnv1a_digest(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  std::ostringstream out;
  out << "fnv1a:" << std::hex;
  out.width(16);
  out.fill('0');
  out << h;
  return out.str();
}

inline std::string file_digest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("file_digest: cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return fnv1a_digest(buf.str());
}

}  // namespace cosk
