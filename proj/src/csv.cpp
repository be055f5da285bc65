#include "otdepth/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace otdepth {

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

PointCloud read_cloud_csv(std::istream& in, std::string label) {
    std::vector<Point> points;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        // strip trailing CR from CRLF files
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::size_t first = line.find_first_not_of(" \t");
        if (first == std::string::npos) continue;
        if (line[first] == '#') continue;
        Point p;
        std::size_t pos = 0;
        while (pos <= line.size()) {
            std::size_t comma = line.find(',', pos);
            std::string cell = line.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
            // trim
            const std::size_t b = cell.find_first_not_of(" \t");
            const std::size_t e = cell.find_last_not_of(" \t");
            if (b == std::string::npos)
                throw CsvError("empty cell at line " + std::to_string(lineno), lineno);
            cell = cell.substr(b, e - b + 1);
            double value = 0.0;
            const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), value);
            if (res.ec != std::errc{} || res.ptr != cell.data() + cell.size())
                throw CsvError("invalid number '" + cell + "' at line " + std::to_string(lineno), lineno);
            p.push_back(value);
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        if (!points.empty() && p.size() != points.front().size())
            throw CsvError("row width " + std::to_string(p.size()) + " differs from first row (" +
                               std::to_string(points.front().size()) + ") at line " + std::to_string(lineno),
                           lineno);
        points.push_back(std::move(p));
    }
    if (points.empty()) throw CsvError("no data rows found", lineno);
    return PointCloud(std::move(points), std::move(label));
}

PointCloud read_cloud_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    return read_cloud_csv(in, path);
}

void write_cloud_csv(std::ostream& out, const PointCloud& cloud) {
    out << "#";
    for (int c = 0; c < cloud.dim; ++c) out << (c ? "," : " ") << "x" << c;
    out << "\n";
    for (const Point& p : cloud.points) {
        for (std::size_t c = 0; c < p.size(); ++c) {
            if (c) out << ",";
            out << format_double(p[c]);
        }
        out << "\n";
    }
}

void write_cloud_csv_file(const std::string& path, const PointCloud& cloud) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    write_cloud_csv(out, cloud);
}

}  // namespace otdepth
