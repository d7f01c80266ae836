#include "pblab/report.hpp"

#include <Eigen/Core>
#include <cmath>
#include <cstdio>

namespace pblab {

namespace {

std::string fmt_double(double v) {
    if (std::isnan(v)) return "\"nan\"";
    if (std::isinf(v)) return v > 0 ? "\"inf\"" : "\"-inf\"";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", v);
    return buf;
}

void write(const json& j, std::string& out, int depth) {
    const std::string pad(2 * (depth + 1), ' '), close(2 * depth, ' ');
    switch (j.type()) {
        case json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out += "{\n";
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {  // std::map order is byte order
                if (!first) out += ",\n";
                first = false;
                out += pad + json(it.key()).dump() + ": ";
                write(it.value(), out, depth + 1);
            }
            out += "\n" + close + "}";
            return;
        }
        case json::value_t::array: {
            if (j.empty()) {
                out += "[]";
                return;
            }
            out += "[\n";
            for (size_t i = 0; i < j.size(); ++i) {
                if (i) out += ",\n";
                out += pad;
                write(j[i], out, depth + 1);
            }
            out += "\n" + close + "]";
            return;
        }
        case json::value_t::number_float: out += fmt_double(j.get<double>()); return;
        default: out += j.dump(); return;
    }
}

std::string csv_num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", v);
    return buf;
}

double as_double(const json& v) {
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) {
        auto s = v.get<std::string>();
        if (s == "inf") return INFINITY;
        if (s == "-inf") return -INFINITY;
        if (s == "nan") return NAN;
    }
    return NAN;
}

struct CsvWriter {
    std::string out = "suite,table,i,j,re,im\n";
    void row(const std::string& suite, const std::string& table, long i, long j, double re, double im) {
        out += suite + "," + table + "," + std::to_string(i) + "," + std::to_string(j) + "," + csv_num(re) + "," +
               csv_num(im) + "\n";
    }
    // matrix stored as rows of [re, im] pairs
    void matrix(const std::string& suite, const std::string& table, const json& m) {
        for (size_t i = 0; i < m.size(); ++i)
            for (size_t j = 0; j < m[i].size(); ++j)
                row(suite, table, i, j, as_double(m[i][j][0]), as_double(m[i][j][1]));
    }
};

}  // namespace

std::string canonical_dump(const json& j) {
    std::string out;
    write(j, out, 0);
    out += "\n";
    return out;
}

json versions_json() {
    return {{"pblab", "1.0.0"},
            {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
                          std::to_string(EIGEN_MINOR_VERSION)},
            {"nlohmann_json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                                  std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                                  std::to_string(NLOHMANN_JSON_VERSION_PATCH)},
            {"report_format", 1}};
}

json report_to_json(const RunReport& r) {
    json j;
    j["config"] = r.config;
    j["suites"] = r.suites;
    j["versions"] = r.versions;
    j["status"] = {{"inconsistent", r.inconsistent}, {"failures", r.failures}, {"exit_code", r.exit_code()}};
    return j;
}

RunReport report_from_json(const json& j) {
    RunReport r;
    r.config = j.at("config");
    r.suites = j.at("suites");
    r.versions = j.at("versions");
    const auto& st = j.at("status");
    r.inconsistent = st.at("inconsistent").get<bool>();
    r.failures = st.at("failures").get<std::vector<std::string>>();
    return r;
}

std::string emit_json(const RunReport& r) { return canonical_dump(report_to_json(r)); }

std::string emit_csv(const RunReport& r) {
    CsvWriter w;
    for (auto it = r.suites.begin(); it != r.suites.end(); ++it) {
        const std::string& s = it.key();
        const json& v = it.value();
        if (v.contains("overlap")) w.matrix(s, "overlap", v["overlap"]);
        if (v.contains("T")) w.matrix(s, "T", v["T"]);
        for (const char* fam : {"phi", "psi"}) {
            if (!v.contains("spectrum") || !v["spectrum"].contains(fam)) continue;
            for (const auto& p : v["spectrum"][fam])
                w.row(s, std::string(fam) + "_eig", p["N"].get<long>(), 0, as_double(p["min_eig"]),
                      as_double(p["max_eig"]));
        }
        if (v.contains("points"))
            for (size_t i = 0; i < v["points"].size(); ++i) {
                const auto& p = v["points"][i];
                if (p.contains("residual_phi"))
                    w.row(s, "eigen_residual", i, 0, as_double(p["residual_phi"]), as_double(p["residual_psi"]));
            }
        if (v.contains("ratios"))
            for (size_t i = 0; i < v["ratios"].size(); ++i) w.row(s, "ratio", i, 0, as_double(v["ratios"][i]), 0.0);
    }
    return w.out;
}

std::string emit(const RunReport& r, Format f) { return f == Format::CSV ? emit_csv(r) : emit_json(r); }

}  // namespace pblab
