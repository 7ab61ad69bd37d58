#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

#include "lpvdd/errors.hpp"
#include "lpvdd/signals.hpp"

namespace lpvdd {

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    while (true) {
        const std::size_t comma = line.find(',', pos);
        out.push_back(line.substr(pos, comma == std::string_view::npos ? comma : comma - pos));
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    return out;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t')) {
        s.remove_suffix(1);
    }
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    return s;
}

template <typename T>
T parse_number(std::string_view field, int line_no) {
    field = trim(field);
    if (!field.empty() && field.front() == '+') field.remove_prefix(1);
    T value{};
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc() || ptr != field.data() + field.size() || field.empty()) {
        throw Error(Errc::InvalidFormat, "line " + std::to_string(line_no) + ": bad number '" +
                                             std::string(field) + "'");
    }
    return value;
}

}  // namespace

std::string format_double(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return {buf, ptr};
}

std::string format_csv(const Trajectory& w) {
    std::string out = "t";
    for (int c = 0; c < w.dim(); ++c) out += ",ch" + std::to_string(c + 1);
    out += '\n';
    for (int k = w.t_start(); k <= w.t_end(); ++k) {
        out += std::to_string(k);
        for (int c = 0; c < w.dim(); ++c) {
            out += ',';
            out += format_double(w.value(k, c));
        }
        out += '\n';
    }
    return out;
}

Trajectory parse_csv(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t nl = text.find('\n', pos);
        if (nl == std::string_view::npos) nl = text.size();
        const auto line = trim(text.substr(pos, nl - pos));
        if (!line.empty()) lines.push_back(line);
        pos = nl + 1;
    }
    if (lines.empty()) throw Error(Errc::InvalidFormat, "empty CSV");
    const auto header = split_fields(lines.front());
    if (trim(header.front()) != "t") {
        throw Error(Errc::InvalidFormat, "CSV header must start with 't'");
    }
    const int dim = static_cast<int>(header.size()) - 1;
    for (int c = 0; c < dim; ++c) {
        if (trim(header[c + 1]) != "ch" + std::to_string(c + 1)) {
            throw Error(Errc::InvalidFormat, "CSV header column " + std::to_string(c + 2) +
                                                 " must be 'ch" + std::to_string(c + 1) + "'");
        }
    }
    const int rows = static_cast<int>(lines.size()) - 1;
    if (rows < 1) throw Error(Errc::InvalidFormat, "CSV has no samples");
    Eigen::MatrixXd samples(dim, rows);
    int t_start = 0;
    for (int r = 0; r < rows; ++r) {
        const int line_no = r + 2;
        const auto fields = split_fields(lines[r + 1]);
        if (static_cast<int>(fields.size()) != dim + 1) {
            throw Error(Errc::InvalidFormat, "line " + std::to_string(line_no) + ": expected " +
                                                 std::to_string(dim + 1) + " fields");
        }
        const int t = parse_number<int>(fields[0], line_no);
        if (r == 0) {
            t_start = t;
        } else if (t != t_start + r) {
            throw Error(Errc::InvalidFormat,
                        "line " + std::to_string(line_no) + ": time index not consecutive");
        }
        for (int c = 0; c < dim; ++c) samples(c, r) = parse_number<double>(fields[c + 1], line_no);
    }
    return {t_start, std::move(samples)};
}

Trajectory read_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::InvalidFormat, "cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_csv(ss.str());
}

}  // namespace lpvdd
