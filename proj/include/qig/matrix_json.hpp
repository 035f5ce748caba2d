#pragma once

#include <string>

#include <json.hpp>

#include "qig/state_space.hpp"

namespace qig {

// Matrix files: {"dim": n, "re": [[...]], "im": [[...]]}, row-major.
// State files add "kind": "density" | "positive".

nlohmann::ordered_json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const nlohmann::json& j);

nlohmann::ordered_json state_to_json(const DensityState& rho);
nlohmann::ordered_json state_to_json(const PositiveOperator& omega);

struct LoadedState {
    bool is_density = false;
    DensityState density;
    PositiveOperator positive;
};

LoadedState state_from_json(const nlohmann::json& j);

nlohmann::json load_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

} // namespace qig
