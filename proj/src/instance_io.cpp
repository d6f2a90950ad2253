// SPDX-FileCopyrightText: Copyright (c) 2026, The bicut Authors
// SPDX-License-Identifier: Apache-2.0

#include "bicut/instance_io.hpp"

#include "json.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <sstream>

namespace bicut {

namespace {

using Json = nlohmann::ordered_json;

constexpr std::array<const char*, 20> kFields = {"n1", "n2", "c",  "d",       "M", "N", "h",
                                                 "Mt", "Nt", "ht", "cones_K", "a", "b", "f",
                                                 "V",  "g",  "Y_C", "Y_u",    "lb", "ub"};

Json number(double v) {
  if (std::isfinite(v) && v == std::floor(v) && std::abs(v) < 0x1.0p53) {
    return static_cast<std::int64_t>(v);
  }
  return v;
}

Json to_json(const Vector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(number(v[i]));
  return out;
}

Json to_json(const Matrix& m) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) out.push_back(to_json(Vector(m.row(i).transpose())));
  return out;
}

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw InstanceFormatError("field \"" + field + "\": " + what);
}

double scalar(const Json& j, const std::string& field, bool integer) {
  if (!j.is_number()) fail(field, "expected a number");
  const double v = j.get<double>();
  if (integer && (!std::isfinite(v) || v != std::floor(v))) fail(field, "expected an integer");
  return v;
}

Vector read_vector(const Json& j, const std::string& field, bool integer) {
  if (!j.is_array()) fail(field, "expected an array");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    v[static_cast<Eigen::Index>(i)] = scalar(j[i], field + "[" + std::to_string(i) + "]", integer);
  }
  return v;
}

Matrix read_matrix(const Json& j, const std::string& field, int cols) {
  if (!j.is_array()) fail(field, "expected an array of rows");
  Matrix m(static_cast<Eigen::Index>(j.size()), cols);
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string name = field + "[" + std::to_string(i) + "]";
    const Vector row = read_vector(j[i], name, false);
    if (row.size() != cols) {
      fail(name, "expected " + std::to_string(cols) + " columns, got " + std::to_string(row.size()));
    }
    m.row(static_cast<Eigen::Index>(i)) = row.transpose();
  }
  return m;
}

int read_dimension(const Json& j, const std::string& field) {
  const double v = scalar(j, field, true);
  if (v < 0 || v > 1e6) fail(field, "dimension out of range");
  return static_cast<int>(v);
}

}  // namespace

std::string instance_to_json(const Instance& inst, int indent) {
  Json j;
  j["n1"] = inst.n1;
  j["n2"] = inst.n2;
  j["c"] = to_json(inst.c);
  j["d"] = to_json(inst.d);
  j["M"] = to_json(inst.M);
  j["N"] = to_json(inst.N);
  j["h"] = to_json(inst.h);
  j["Mt"] = to_json(inst.Mt);
  j["Nt"] = to_json(inst.Nt);
  j["ht"] = to_json(inst.ht);
  j["cones_K"] = inst.cones_K;
  j["a"] = to_json(inst.a);
  j["b"] = to_json(inst.b);
  j["f"] = number(inst.f);
  j["V"] = to_json(inst.V);
  j["g"] = to_json(inst.g);
  j["Y_C"] = to_json(inst.Y_C);
  j["Y_u"] = to_json(inst.Y_u);
  j["lb"] = to_json(inst.lb);
  j["ub"] = to_json(inst.ub);
  return j.dump(indent) + "\n";
}

Instance instance_from_json(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InstanceFormatError(std::string("parse error: ") + e.what());
  }
  if (!j.is_object()) throw InstanceFormatError("instance document must be a JSON object");
  for (const char* field : kFields) {
    if (!j.contains(field)) fail(field, "missing");
  }
  for (const auto& item : j.items()) {
    if (std::find(kFields.begin(), kFields.end(), item.key()) == kFields.end()) {
      fail(item.key(), "unknown field");
    }
  }

  Instance inst;
  inst.n1 = read_dimension(j["n1"], "n1");
  inst.n2 = read_dimension(j["n2"], "n2");
  inst.c = read_vector(j["c"], "c", false);
  inst.d = read_vector(j["d"], "d", false);
  inst.M = read_matrix(j["M"], "M", inst.n1);
  inst.N = read_matrix(j["N"], "N", inst.n2);
  inst.h = read_vector(j["h"], "h", false);
  inst.Mt = read_matrix(j["Mt"], "Mt", inst.n1);
  inst.Nt = read_matrix(j["Nt"], "Nt", inst.n2);
  inst.ht = read_vector(j["ht"], "ht", false);
  const Vector cones = read_vector(j["cones_K"], "cones_K", true);
  for (Eigen::Index i = 0; i < cones.size(); ++i) inst.cones_K.push_back(static_cast<int>(cones[i]));
  inst.a = read_vector(j["a"], "a", true);
  inst.b = read_vector(j["b"], "b", true);
  inst.f = scalar(j["f"], "f", true);
  inst.V = read_matrix(j["V"], "V", inst.n2);
  inst.g = read_vector(j["g"], "g", false);
  inst.Y_C = read_matrix(j["Y_C"], "Y_C", inst.n2);
  inst.Y_u = read_vector(j["Y_u"], "Y_u", false);
  inst.lb = read_vector(j["lb"], "lb", true);
  inst.ub = read_vector(j["ub"], "ub", true);

  const auto report = validate_instance(inst);
  if (!report.ok()) {
    std::string msg = "invalid instance:";
    for (const auto& v : report.violations) msg += " " + v + ";";
    msg.pop_back();
    throw InstanceFormatError(msg);
  }
  return inst;
}

Instance read_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InstanceFormatError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return instance_from_json(buf.str());
  } catch (const InstanceFormatError& e) {
    throw InstanceFormatError(path.string() + ": " + e.what());
  }
}

void write_instance(const Instance& inst, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << instance_to_json(inst);
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace bicut
