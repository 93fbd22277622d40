#pragma once

#include <map>
#include <string>
#include <vector>

#include "json.hpp"

#include "curvedis/curve.hpp"
#include "curvedis/measures.hpp"

namespace curvedis {

using Json = nlohmann::json;

// temp file + rename in the target directory
void write_file_atomic(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

struct CurveFile {
    DiscreteCurve curve;
    Json metadata = Json::object();
};

// {"manifold": tag, "N": n, "coords": [flat], "metadata": {...}}
std::string curve_to_json(const DiscreteCurve& c, const Json& metadata = Json::object());
CurveFile curve_from_json(const std::string& text);
void save_curve(const std::string& path, const DiscreteCurve& c, const Json& metadata = Json::object());
CurveFile load_curve(const std::string& path);

// {"manifold": tag, "degree": r, "coefficients": [{"index": [...], "re": x, "im": y}, ...]}; missing entries are zero
std::string measure_to_json(const SpectralMeasure& mu);
SpectralMeasure measure_from_json(const std::string& text);
void save_measure(const std::string& path, const SpectralMeasure& mu);
SpectralMeasure load_measure(const std::string& path);

// P2 or P5, values scaled to [0,1]
Image read_pgm(const std::string& path);
std::string pgm_p2(const Image& img, int maxval = 255);
// whitespace-separated matrix, one grid row per line
SphereGrid read_sphere_grid(const std::string& path);

// x y z per line
std::vector<std::vector<double>> read_point_list(const std::string& path);

// Flat TOML subset: key = value lines, [section] headers prefix keys with "section.", # comments,
// quoted or bare values.
class Config {
public:
    static Config parse(const std::string& text);
    static Config load(const std::string& path);

    bool has(const std::string& key) const { return values_.count(key) > 0; }
    std::string get(const std::string& key, const std::string& fallback) const;
    double get(const std::string& key, double fallback) const;
    int get(const std::string& key, int fallback) const;
    bool get(const std::string& key, bool fallback) const;
    std::string require(const std::string& key) const;
    void set(const std::string& key, const std::string& value) { values_[key] = value; }
    const std::map<std::string, std::string>& values() const { return values_; }

private:
    std::map<std::string, std::string> values_;
};

} // namespace curvedis
