/**
 * Copyright 2026 The qfti Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */


#include "qfti/io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <system_error>
#include <unistd.h>

namespace qfti::io {

namespace {

std::string shortest(double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("matrix entries must be finite");
    std::array<char, 64> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
    if (ec != std::errc{}) throw std::runtime_error("failed to format number");
    return {buf.data(), ptr};
}

double parse_double(std::string_view s) {
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        throw std::invalid_argument("cannot parse number '" + std::string(s) + "'");
    }
    return value;
}

} // namespace

std::string format_complex(Complex c) {
    std::string out = shortest(c.real());
    const std::string im = shortest(c.imag());
    if (im.front() != '-') out += '+';
    out += im;
    out += 'j';
    return out;
}

Complex parse_complex(std::string_view text) {
    if (text.size() < 2 || text.back() != 'j') {
        throw std::invalid_argument("complex entry must look like re+imj, got '" + std::string(text) + "'");
    }
    text.remove_suffix(1);
    // The imaginary sign is the last +/- that is not a leading sign or an exponent sign.
    std::size_t split = std::string_view::npos;
    for (std::size_t i = text.size(); i-- > 1;) {
        if ((text[i] == '+' || text[i] == '-') && text[i - 1] != 'e' && text[i - 1] != 'E') {
            split = i;
            break;
        }
    }
    if (split == std::string_view::npos) {
        throw std::invalid_argument("complex entry is missing its imaginary part: '" + std::string(text) + "j'");
    }
    return {parse_double(text.substr(0, split)), parse_double(text.substr(split))};
}

std::string format_matrix(const ComplexMatrix& m) {
    if (!m.is_square()) throw std::invalid_argument("format_matrix: matrix must be square");
    std::string out = "modes=" + std::to_string(m.rows()) + "\n";
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
            if (c > 0) out += ' ';
            out += format_complex(m(r, c));
        }
        out += '\n';
    }
    return out;
}

ComplexMatrix parse_matrix(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string header;
    if (!std::getline(in, header) || header.rfind("modes=", 0) != 0) {
        throw std::invalid_argument("matrix file must start with 'modes=<m>'");
    }
    const std::string_view count_text = std::string_view(header).substr(6);
    std::size_t m = 0;
    auto [ptr, ec] = std::from_chars(count_text.data(), count_text.data() + count_text.size(), m);
    if (ec != std::errc{} || ptr != count_text.data() + count_text.size() || m == 0) {
        throw std::invalid_argument("bad mode count in header '" + header + "'");
    }
    ComplexMatrix out(m, m);
    std::string line;
    for (std::size_t r = 0; r < m; ++r) {
        if (!std::getline(in, line)) throw std::invalid_argument("matrix file ends after " + std::to_string(r) + " rows");
        std::istringstream row(line);
        std::string token;
        std::size_t c = 0;
        while (row >> token) {
            if (c >= m) throw std::invalid_argument("row " + std::to_string(r) + " has more than " + std::to_string(m) + " entries");
            out(r, c++) = parse_complex(token);
        }
        if (c != m) throw std::invalid_argument("row " + std::to_string(r) + " has " + std::to_string(c) + " entries");
    }
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") != std::string::npos) {
            throw std::invalid_argument("unexpected content after the matrix rows");
        }
    }
    return out;
}

std::string format_probability(double p) {
    std::array<char, 64> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), p, std::chars_format::general, 12);
    if (ec != std::errc{}) throw std::runtime_error("failed to format probability");
    return {buf.data(), ptr};
}

std::string csv_field(std::string_view field) {
    if (field.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(field);
    std::string out = "\"";
    for (char ch : field) {
        if (ch == '"') out += '"';
        out += ch;
    }
    out += '"';
    return out;
}

std::string distribution_csv(const OutputDistribution& dist) {
    std::string out = "state,probability\n";
    for (std::size_t i = 0; i < dist.size(); ++i) {
        out += csv_field(dist.states()[i].to_string());
        out += ',';
        out += format_probability(dist.probabilities()[i]);
        out += '\n';
    }
    return out;
}

void write_file_atomic(const std::filesystem::path& path, std::string_view contents) {
    const auto dir = path.has_parent_path() ? path.parent_path() : std::filesystem::path(".");
    auto tmp = dir / ("." + path.filename().string() + ".tmp." + std::to_string(::getpid()));
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open '" + tmp.string() + "' for writing");
        out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
        out.flush();
        if (!out) {
            out.close();
            std::filesystem::remove(tmp);
            throw std::runtime_error("failed writing '" + tmp.string() + "'");
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        throw std::runtime_error("cannot move output into place at '" + path.string() + "': " + ec.message());
    }
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

} // namespace qfti::io
