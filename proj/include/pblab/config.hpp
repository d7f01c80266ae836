#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "pblab/coherent.hpp"
#include "pblab/diagnostics.hpp"
#include "pblab/models.hpp"
#include "pblab/nogo.hpp"

namespace pblab {

using json = nlohmann::json;

struct ConfigError : Error {
    ConfigError(const std::string& what, std::string field_, int line_ = 0, int col_ = 0)
        : Error(what), field(std::move(field_)), line(line_), col(col_) {}
    std::string field;  // empty for syntax errors
    int line, col;      // 1-based, 0 when not a syntax error
};

struct Tolerances {
    double biorthogonality = 1e-8;
    double number = 1e-8;
    double gram_psd = 1e-10;
    double metric = 1e-6;
    double intertwine = 1e-6;
    double eigen_relation = 1e-8;
    double route = 1e-9;
    double resolution = 1e-4;
    double nogo_pattern = 1e-10;
    double gll_metric = 1e-8;
};

enum class Format { JSON, CSV };

struct NogoConfig {
    CNum alpha{1.0};
    int kmax = 200;
    int n_deform = 2;
    bool has_variant = false;
    VariantKind variant = VariantKind::AMinusAlphaAdagN;
    VariantParams variant_params;
    int variant_kmax = 40;
};

struct DHOConfig {
    DHOParams params;
    int samples = 100;
    int grid = 64;
};

struct RunConfig {
    std::string model;
    Rep rep = Rep::Fock;
    int dim = 96;
    int nmax = 24;  // diagnostics size; family length is 2*nmax for the 1D models
    int lmax = 4;   // second index bound for gll
    std::vector<int> ladder;  // empty: {nmax/4, nmax/2, nmax}
    ModelParams params;
    std::vector<std::string> suites;  // sorted, unique
    Tolerances tol;
    Thresholds thresholds;
    std::vector<CNum> z_points{CNum(0.0), CNum(0.5), CNum(0.7, 0.2)};
    PlaneQuadrature quad;
    NogoConfig nogo;
    DHOConfig dho;
    std::string output_path;
    Format format = Format::JSON;
};

const std::vector<std::string>& model_names();
const std::vector<std::string>& suite_names();
// Suites that make sense for a model.
std::vector<std::string> suites_for(const std::string& model);

RunConfig parse_config(const std::string& text);
RunConfig config_from_json(const json& j);
// Normalized echo of every setting, defaults included.
json config_to_json(const RunConfig& c);

BiorthSystem build_system(const RunConfig& c);
int family_length(const RunConfig& c);
std::vector<int> effective_ladder(const RunConfig& c);

json complex_to_json(CNum z);
CNum complex_from_json(const json& j, const std::string& field);

}  // namespace pblab
