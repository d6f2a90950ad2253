// SPDX-FileCopyrightText: Copyright (c) 2026, The bicut Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "bicut/model.hpp"

#include <filesystem>
#include <stdexcept>
#include <string>

namespace bicut {

/// Malformed or inadmissible instance document.
class InstanceFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// JSON text with the fields n1, n2, c, d, M, N, h, Mt, Nt, ht, cones_K, a,
/// b, f, V, g, Y_C, Y_u, lb, ub; matrices as arrays of rows.
std::string instance_to_json(const Instance& inst, int indent = 2);

/// Parses and validates a document.  Unknown or missing fields, wrong
/// shapes, non-integer a, b, f, lb, ub and validate_instance violations raise
/// InstanceFormatError.
Instance instance_from_json(const std::string& text);

Instance read_instance(const std::filesystem::path& path);
void write_instance(const Instance& inst, const std::filesystem::path& path);

}  // namespace bicut
