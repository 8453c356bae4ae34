#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "xpkit/constraints.hpp"
#include "xpkit/model.hpp"

namespace xpkit {

/// Parses a model document. Unknown fields are rejected (Io). Monotonic
/// expression bodies are tabulated over the declared domains. Constant
/// tables are rejected (Model). Other invariants are left to validate_model.
Model parse_model(std::string_view json_text);
Model load_model(const std::filesystem::path& path);

/// {"point":[...], "class": label}; a missing class means "as predicted".
/// The class must agree with the model's prediction (Contract).
Instance parse_instance(const Model& model, std::string_view json_text);
Instance load_instance(const Model& model, const std::filesystem::path& path);

/// {"clauses": [[{"f":2,"op":"!=","v":1}, ...], ...]}
ConstraintSet parse_constraints(const FeatureSpace& space, std::string_view json_text);
ConstraintSet load_constraints(const FeatureSpace& space, const std::filesystem::path& path);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace xpkit
