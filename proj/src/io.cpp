#include "curvedis/io.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace curvedis {

namespace fs = std::filesystem;

namespace {

std::string trim(const std::string& s)
{
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

Json parse_json(const std::string& text, const char* what)
{
    try {
        return Json::parse(text);
    } catch (const Json::exception& e) {
        throw Error(ErrorKind::Io, std::string("malformed ") + what + ": " + e.what());
    }
}

} // namespace

void write_file_atomic(const std::string& path, const std::string& content)
{
    const fs::path target(path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    const fs::path tmp = target.string() + ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw Error(ErrorKind::Io, "cannot write " + tmp.string());
        os << content;
        if (!os.flush()) throw Error(ErrorKind::Io, "write failed for " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) throw Error(ErrorKind::Io, "cannot rename onto " + path + ": " + ec.message());
}

std::string read_file(const std::string& path)
{
    std::ifstream is(path, std::ios::binary);
    if (!is) throw Error(ErrorKind::Io, "cannot open " + path);
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

std::string curve_to_json(const DiscreteCurve& c, const Json& metadata)
{
    Json j;
    j["manifold"] = c.manifold.tag();
    j["N"] = c.size();
    Json coords = Json::array();
    for (const auto& p : c.points)
        for (double v : p.coords()) coords.push_back(v);
    j["coords"] = std::move(coords);
    j["metadata"] = metadata.is_null() ? Json::object() : metadata;
    return j.dump(1) + "\n";
}

CurveFile curve_from_json(const std::string& text)
{
    const Json j = parse_json(text, "curve file");
    CurveFile f;
    try {
        const ManifoldId m = ManifoldId::from_tag(j.at("manifold").get<std::string>());
        const std::size_t n = j.at("N").get<std::size_t>();
        const auto coords = j.at("coords").get<std::vector<double>>();
        const std::size_t k = m.coord_count();
        if (coords.size() != n * k) throw Error(ErrorKind::Io, "coordinate count does not match N");
        f.curve.manifold = m;
        for (std::size_t i = 0; i < n; ++i) {
            Point p{m, {}};
            std::copy_n(coords.begin() + i * k, k, p.c.begin());
            if (manifold_defect(p) > 1e-9) throw Error(ErrorKind::Io, "point " + std::to_string(i) + " is off the manifold");
            f.curve.points.push_back(p);
        }
        if (j.contains("metadata")) f.metadata = j["metadata"];
    } catch (const Json::exception& e) {
        throw Error(ErrorKind::Io, std::string("malformed curve file: ") + e.what());
    }
    return f;
}

void save_curve(const std::string& path, const DiscreteCurve& c, const Json& metadata)
{
    write_file_atomic(path, curve_to_json(c, metadata));
}

CurveFile load_curve(const std::string& path) { return curve_from_json(read_file(path)); }

std::string measure_to_json(const SpectralMeasure& mu)
{
    Json j;
    j["manifold"] = mu.manifold.tag();
    j["degree"] = mu.degree;
    Json entries = Json::array();
    const auto idx = enumerate_frequencies(mu.manifold, mu.degree);
    for (std::size_t k = 0; k < idx.size(); ++k) {
        if (mu.coeffs[k] == cplx(0.0)) continue;
        entries.push_back({{"index", idx[k].parts}, {"re", mu.coeffs[k].real()}, {"im", mu.coeffs[k].imag()}});
    }
    j["coefficients"] = std::move(entries);
    return j.dump(1) + "\n";
}

SpectralMeasure measure_from_json(const std::string& text)
{
    const Json j = parse_json(text, "measure file");
    try {
        const ManifoldId m = ManifoldId::from_tag(j.at("manifold").get<std::string>());
        const int r = j.at("degree").get<int>();
        if (r < 0) throw Error(ErrorKind::Io, "negative degree");
        SpectralMeasure mu{m, r, std::vector<cplx>(frequency_count(m, r), 0.0)};
        for (const auto& e : j.at("coefficients")) {
            FrequencyIndex idx{e.at("index").get<std::vector<int>>()};
            validate_index(m, idx);
            const auto pos = frequency_position(m, r, idx);
            if (pos < 0) throw Error(ErrorKind::Io, "coefficient index outside the stated degree");
            mu.coeffs[pos] = cplx(e.at("re").get<double>(), e.value("im", 0.0));
        }
        return mu;
    } catch (const Json::exception& e) {
        throw Error(ErrorKind::Io, std::string("malformed measure file: ") + e.what());
    }
}

void save_measure(const std::string& path, const SpectralMeasure& mu) { write_file_atomic(path, measure_to_json(mu)); }
SpectralMeasure load_measure(const std::string& path) { return measure_from_json(read_file(path)); }

Image read_pgm(const std::string& path)
{
    const std::string data = read_file(path);
    std::size_t pos = 0;
    // header tokens, skipping comments
    auto token = [&]() {
        for (;;) {
            while (pos < data.size() && std::isspace(static_cast<unsigned char>(data[pos]))) ++pos;
            if (pos < data.size() && data[pos] == '#') {
                while (pos < data.size() && data[pos] != '\n') ++pos;
                continue;
            }
            break;
        }
        const std::size_t a = pos;
        while (pos < data.size() && !std::isspace(static_cast<unsigned char>(data[pos]))) ++pos;
        if (a == pos) throw Error(ErrorKind::Io, "truncated PGM file " + path);
        return data.substr(a, pos - a);
    };
    const std::string magic = token();
    if (magic != "P2" && magic != "P5") throw Error(ErrorKind::Io, path + " is not a P2/P5 PGM file");
    Image img;
    int maxval = 0;
    try {
        img.width = std::stoi(token());
        img.height = std::stoi(token());
        maxval = std::stoi(token());
    } catch (const std::logic_error&) {
        throw Error(ErrorKind::Io, "bad PGM header in " + path);
    }
    if (img.width <= 0 || img.height <= 0 || maxval <= 0 || maxval > 65535) throw Error(ErrorKind::Io, "bad PGM header in " + path);
    const std::size_t n = static_cast<std::size_t>(img.width) * img.height;
    img.pixels.resize(n);
    if (magic == "P2") {
        for (std::size_t i = 0; i < n; ++i) {
            try {
                img.pixels[i] = std::stod(token()) / maxval;
            } catch (const std::logic_error&) {
                throw Error(ErrorKind::Io, "bad PGM sample in " + path);
            }
        }
    } else {
        ++pos;   // single whitespace after maxval
        const std::size_t bytes = maxval < 256 ? 1 : 2;
        if (data.size() < pos + n * bytes) throw Error(ErrorKind::Io, "truncated PGM raster in " + path);
        for (std::size_t i = 0; i < n; ++i) {
            const auto* b = reinterpret_cast<const unsigned char*>(data.data() + pos + i * bytes);
            const int v = bytes == 1 ? b[0] : (b[0] << 8) | b[1];
            img.pixels[i] = static_cast<double>(v) / maxval;
        }
    }
    return img;
}

std::string pgm_p2(const Image& img, int maxval)
{
    std::ostringstream os;
    os << "P2\n" << img.width << ' ' << img.height << '\n' << maxval << '\n';
    for (int i = 0; i < img.height; ++i) {
        for (int j = 0; j < img.width; ++j) {
            const double v = std::clamp(img(i, j), 0.0, 1.0);
            os << (j ? " " : "") << std::lround(v * maxval);
        }
        os << '\n';
    }
    return os.str();
}

SphereGrid read_sphere_grid(const std::string& path)
{
    std::istringstream is(read_file(path));
    SphereGrid g;
    g.rows = 0;
    g.cols = 0;
    std::string line;
    while (std::getline(is, line)) {
        if (trim(line).empty()) continue;
        std::istringstream ls(line);
        int count = 0;
        double v;
        while (ls >> v) {
            g.values.push_back(v);
            ++count;
        }
        if (!ls.eof()) throw Error(ErrorKind::Io, "non-numeric entry in " + path);
        if (g.rows == 0) g.cols = count;
        else if (count != g.cols) throw Error(ErrorKind::Io, "ragged grid in " + path);
        ++g.rows;
    }
    if (g.rows == 0 || g.cols == 0) throw Error(ErrorKind::Io, "empty grid in " + path);
    return g;
}

std::vector<std::vector<double>> read_point_list(const std::string& path)
{
    std::istringstream is(read_file(path));
    std::vector<std::vector<double>> pts;
    std::string line;
    while (std::getline(is, line)) {
        line = trim(line.substr(0, line.find('#')));
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::vector<double> p;
        double v;
        while (ls >> v) p.push_back(v);
        if (!ls.eof() || p.empty()) throw Error(ErrorKind::Io, "bad point line in " + path);
        if (!pts.empty() && p.size() != pts.front().size()) throw Error(ErrorKind::Io, "mixed point dimensions in " + path);
        pts.push_back(std::move(p));
    }
    return pts;
}

Config Config::parse(const std::string& text)
{
    Config c;
    std::istringstream is(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        // strip comments outside quotes
        bool quoted = false;
        for (std::size_t i = 0; i < line.size(); ++i) {
            if (line[i] == '"') quoted = !quoted;
            if (line[i] == '#' && !quoted) {
                line.resize(i);
                break;
            }
        }
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw Error(ErrorKind::Io, "config line " + std::to_string(lineno) + ": bad section header");
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw Error(ErrorKind::Io, "config line " + std::to_string(lineno) + ": expected key = value");
        std::string key = trim(line.substr(0, eq)), val = trim(line.substr(eq + 1));
        if (key.empty()) throw Error(ErrorKind::Io, "config line " + std::to_string(lineno) + ": empty key");
        if (val.size() >= 2 && val.front() == '"' && val.back() == '"') val = val.substr(1, val.size() - 2);
        c.values_[section.empty() ? key : section + "." + key] = val;
    }
    return c;
}

Config Config::load(const std::string& path) { return parse(read_file(path)); }

std::string Config::get(const std::string& key, const std::string& fallback) const
{
    const auto it = values_.find(key);
    return it == values_.end() ? fallback : it->second;
}

double Config::get(const std::string& key, double fallback) const
{
    const auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    try {
        std::size_t used = 0;
        const double v = std::stod(it->second, &used);
        if (used != it->second.size()) throw std::invalid_argument(key);
        return v;
    } catch (const std::logic_error&) {
        throw Error(ErrorKind::InvalidArgument, "config key '" + key + "' is not a number");
    }
}

int Config::get(const std::string& key, int fallback) const
{
    const auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    try {
        std::size_t used = 0;
        const int v = std::stoi(it->second, &used);
        if (used != it->second.size()) throw std::invalid_argument(key);
        return v;
    } catch (const std::logic_error&) {
        throw Error(ErrorKind::InvalidArgument, "config key '" + key + "' is not an integer");
    }
}

bool Config::get(const std::string& key, bool fallback) const
{
    const auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    if (it->second == "true") return true;
    if (it->second == "false") return false;
    throw Error(ErrorKind::InvalidArgument, "config key '" + key + "' is not a boolean");
}

std::string Config::require(const std::string& key) const
{
    const auto it = values_.find(key);
    if (it == values_.end()) throw Error(ErrorKind::InvalidArgument, "config key '" + key + "' is missing");
    return it->second;
}

} // namespace curvedis
