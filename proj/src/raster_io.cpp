#include "relayout/raster_io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#ifdef RELAYOUT_WITH_OPENCV
#include <opencv2/imgcodecs.hpp>
#endif

namespace relayout {

namespace {

bool has_suffix(const std::string& s, const std::string& suffix) {
    if (s.size() < suffix.size()) return false;
    std::string tail = s.substr(s.size() - suffix.size());
    std::transform(tail.begin(), tail.end(), tail.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return tail == suffix;
}

// Reads the next whitespace-delimited token, skipping '#' comment lines.
std::string next_token(std::istream& in) {
    std::string tok;
    for (;;) {
        int c = in.get();
        if (c == EOF) break;
        if (c == '#') {
            std::string skip;
            std::getline(in, skip);
            continue;
        }
        if (std::isspace(c)) {
            if (!tok.empty()) break;
            continue;
        }
        tok.push_back(static_cast<char>(c));
    }
    if (tok.empty()) throw std::runtime_error("pgm: unexpected end of header");
    return tok;
}

SaliencyMap load_pgm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    const std::string magic = next_token(in);
    if (magic != "P2" && magic != "P5")
        throw std::runtime_error("pgm: unsupported magic '" + magic + "' in " + path);
    const int width = std::stoi(next_token(in));
    const int height = std::stoi(next_token(in));
    const int maxval = std::stoi(next_token(in));
    if (width <= 0 || height <= 0 || maxval <= 0 || maxval > 65535)
        throw std::runtime_error("pgm: bad header in " + path);

    SaliencyMap map;
    map.width = width;
    map.height = height;
    map.values.resize(static_cast<size_t>(width) * height);

    if (magic == "P2") {
        for (double& v : map.values) v = std::stod(next_token(in)) / maxval;
    } else {
        const int bytes = maxval > 255 ? 2 : 1;
        std::vector<unsigned char> raw(map.values.size() * bytes);
        in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
        if (in.gcount() != static_cast<std::streamsize>(raw.size()))
            throw std::runtime_error("pgm: truncated pixel data in " + path);
        for (size_t i = 0; i < map.values.size(); ++i) {
            const int v = bytes == 1 ? raw[i] : (raw[2 * i] << 8) | raw[2 * i + 1];
            map.values[i] = static_cast<double>(v) / maxval;
        }
    }
    return map;
}

}  // namespace

SaliencyMap load_gray_image(const std::string& path) {
    if (has_suffix(path, ".pgm")) return load_pgm(path);
#ifdef RELAYOUT_WITH_OPENCV
    cv::Mat img = cv::imread(path, cv::IMREAD_GRAYSCALE);
    if (img.empty()) throw std::runtime_error("cannot decode image " + path);
    SaliencyMap map;
    map.width = img.cols;
    map.height = img.rows;
    map.values.resize(static_cast<size_t>(img.cols) * img.rows);
    for (int y = 0; y < img.rows; ++y)
        for (int x = 0; x < img.cols; ++x)
            map.values[static_cast<size_t>(y) * img.cols + x] =
                static_cast<double>(img.at<unsigned char>(y, x)) / 255.0;
    return map;
#else
    throw std::runtime_error("only .pgm is supported in this build (OpenCV disabled): " + path);
#endif
}

void save_pgm(const SaliencyMap& map, const std::string& path) {
    if (!map.valid()) throw std::invalid_argument("save_pgm: invalid map");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << "P5\n" << map.width << " " << map.height << "\n255\n";
    std::vector<unsigned char> raw(map.values.size());
    for (size_t i = 0; i < map.values.size(); ++i) {
        const double v = std::clamp(map.values[i], 0.0, 1.0);
        raw[i] = static_cast<unsigned char>(std::lround(v * 255.0));
    }
    out.write(reinterpret_cast<const char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
}

}  // namespace relayout
