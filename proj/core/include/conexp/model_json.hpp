#pragma once

#include <nlohmann/json.hpp>

#include "conexp/model.hpp"

namespace conexp {

using nlohmann::json;

void to_json(json& j, const AngularKernel& k);
void from_json(const json& j, AngularKernel& k);
void to_json(json& j, const OperatorSpec& op);
void from_json(const json& j, OperatorSpec& op);
void to_json(json& j, const ConeSpec& c);
void from_json(const json& j, ConeSpec& c);
void to_json(json& j, const QuadratureConfig& q);
void from_json(const json& j, QuadratureConfig& q);
void to_json(json& j, const GridSpec& g);
void from_json(const json& j, GridSpec& g);
void to_json(json& j, const HomogeneousProfile& p);
void from_json(const json& j, HomogeneousProfile& p);
void to_json(json& j, const GridMeta& m);
void from_json(const json& j, GridMeta& m);
void to_json(json& j, const ExponentResult& r);
void from_json(const json& j, ExponentResult& r);

OperatorKind operator_kind_from_string(const std::string& s);
ConeShape cone_shape_from_string(const std::string& s);
ExponentKind exponent_kind_from_string(const std::string& s);

}  // namespace conexp
