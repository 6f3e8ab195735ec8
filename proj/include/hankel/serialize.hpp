#pragma once

#include <string>

#include "hankel/direct_map.hpp"
#include "hankel/model.hpp"
#include "json.hpp"

namespace hankel {

using Json = nlohmann::json;

Json measure_to_json(const SpectralMeasure& m);
SpectralMeasure measure_from_json(const Json& j);

Json datum_to_json(const SpectralDatum& d);
SpectralDatum datum_from_json(const Json& j);

Json symbol_to_json(const HankelSymbol& u);
HankelSymbol symbol_from_json(const Json& j);

Json complex_to_json(const Complex& z);
Complex complex_from_json(const Json& j);

// FNV-1a over the raw bytes, hex string; used for provenance blocks.
std::string fnv1a_hex(const std::string& bytes);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

// Row-major (re, im) doubles, for debugging dumps.
void dump_matrix(const std::string& path, const CMat& m);

}  // namespace hankel
