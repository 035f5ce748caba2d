#include "qig/matrix_json.hpp"

#include <fstream>

namespace qig {

using nlohmann::json;
using nlohmann::ordered_json;

ordered_json matrix_to_json(const ComplexMatrix& m) {
    ordered_json j;
    j["dim"] = m.dim();
    ordered_json re = ordered_json::array();
    ordered_json im = ordered_json::array();
    for (int i = 0; i < m.dim(); ++i) {
        ordered_json rrow = ordered_json::array();
        ordered_json irow = ordered_json::array();
        for (int k = 0; k < m.dim(); ++k) {
            rrow.push_back(m(i, k).real());
            irow.push_back(m(i, k).imag());
        }
        re.push_back(rrow);
        im.push_back(irow);
    }
    j["re"] = re;
    j["im"] = im;
    return j;
}

static std::vector<std::vector<double>> real_table(const json& j, const char* key, int dim) {
    if (!j.contains(key) || !j[key].is_array() || int(j[key].size()) != dim)
        throw UsageError(std::string("matrix JSON: '") + key + "' must be a " +
                         std::to_string(dim) + "-row array");
    std::vector<std::vector<double>> t;
    for (const auto& row : j[key]) {
        if (!row.is_array() || int(row.size()) != dim)
            throw UsageError(std::string("matrix JSON: each '") + key + "' row needs " +
                             std::to_string(dim) + " numbers");
        std::vector<double> r;
        for (const auto& v : row) {
            if (!v.is_number())
                throw UsageError(std::string("matrix JSON: non-numeric entry in '") + key + "'");
            r.push_back(v.get<double>());
        }
        t.push_back(std::move(r));
    }
    return t;
}

ComplexMatrix matrix_from_json(const json& j) {
    if (!j.is_object() || !j.contains("dim") || !j["dim"].is_number_integer())
        throw UsageError("matrix JSON: missing integer 'dim'");
    const int dim = j["dim"].get<int>();
    if (dim <= 0)
        throw UsageError("matrix JSON: 'dim' must be positive");
    auto re = real_table(j, "re", dim);
    auto im = real_table(j, "im", dim);
    ComplexMatrix m(dim);
    for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c)
            m(r, c) = cplx(re[std::size_t(r)][std::size_t(c)], im[std::size_t(r)][std::size_t(c)]);
    if (!m.all_finite())
        throw UsageError("matrix JSON: entries must be finite");
    return m;
}

ordered_json state_to_json(const DensityState& rho) {
    ordered_json j = matrix_to_json(rho.matrix());
    j["kind"] = "density";
    return j;
}

ordered_json state_to_json(const PositiveOperator& omega) {
    ordered_json j = matrix_to_json(omega.matrix());
    j["kind"] = "positive";
    return j;
}

LoadedState state_from_json(const json& j) {
    ComplexMatrix m = matrix_from_json(j);
    std::string kind = "density";
    if (j.contains("kind")) {
        if (!j["kind"].is_string())
            throw UsageError("state JSON: 'kind' must be a string");
        kind = j["kind"].get<std::string>();
    }
    LoadedState out;
    HermitianMatrix h(m);
    if (kind == "density") {
        out.is_density = true;
        out.density = DensityState(h);
        out.positive = immerse(out.density);
    } else if (kind == "positive") {
        out.is_density = false;
        out.positive = PositiveOperator(h);
    } else {
        throw UsageError("state JSON: 'kind' must be 'density' or 'positive'");
    }
    return out;
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw UsageError("cannot open file '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw UsageError("malformed JSON in '" + path + "': " + e.what());
    }
    return j;
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw UsageError("cannot write file '" + path + "'");
    out << text;
}

} // namespace qig
