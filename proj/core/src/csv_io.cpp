#include "ordagree/csv_io.hpp"

#include <algorithm>
#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ordagree::io {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return {};
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, sep)) fields.push_back(trim(field));
    if (!line.empty() && line.back() == sep) fields.emplace_back();
    return fields;
}

[[noreturn]] void fail_at(const std::filesystem::path& path, std::size_t row, std::size_t column,
                          const std::string& what) {
    throw std::runtime_error(path.string() + ":" + std::to_string(row) + ": column " +
                             std::to_string(column) + ": " + what);
}

int parse_score(const std::filesystem::path& path, std::size_t row, std::size_t column,
                const std::string& text) {
    if (text.empty()) fail_at(path, row, column, "empty cell");
    errno = 0;
    char* end = nullptr;
    const long value = std::strtol(text.c_str(), &end, 10);
    if (errno != 0 || end == text.c_str() || *end != '\0') {
        fail_at(path, row, column, "non-integer cell '" + text + "'");
    }
    if (value < 1) {
        fail_at(path, row, column, "score " + std::to_string(value) + " below 1");
    }
    return static_cast<int>(value);
}

}  // namespace

LabeledMatrix parse_matrix_csv(const std::filesystem::path& path, const CsvOptions& options) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open '" + path.string() + "' for reading");
    }
    std::string line;
    std::vector<std::vector<std::string>> rows;
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        rows.push_back(split(line, ','));
    }
    if (rows.empty()) {
        throw std::runtime_error(path.string() + ": empty file");
    }
    if (rows.size() < 2) {
        throw std::runtime_error(path.string() + ": header only, no data rows");
    }

    const auto& header = rows.front();
    std::size_t label_col = header.size();  // sentinel: none
    if (options.group_column.has_value()) {
        const auto it = std::find(header.begin(), header.end(), *options.group_column);
        if (it == header.end()) {
            throw std::runtime_error(path.string() + ": group column '" + *options.group_column +
                                     "' not found in the header");
        }
        label_col = static_cast<std::size_t>(it - header.begin());
    } else if (!header.empty() && header.front() == "group") {
        label_col = 0;
    }
    if (label_col != header.size() && options.transpose) {
        throw std::runtime_error(path.string() +
                                 ": a group column cannot be combined with --transpose");
    }

    const std::size_t width = header.size();
    std::vector<int> cells;
    std::vector<std::string> labels;
    const auto n_rows = rows.size() - 1;
    const auto n_score_cols = width - (label_col != width ? 1 : 0);
    if (n_score_cols < 1) {
        throw std::runtime_error(path.string() + ": no rater columns");
    }
    cells.reserve(n_rows * n_score_cols);
    int max_score = 0;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& fields = rows[r];
        if (fields.size() != width) {
            throw std::runtime_error(path.string() + ":" + std::to_string(r + 1) + ": ragged row (" +
                                     std::to_string(fields.size()) + " fields, header has " +
                                     std::to_string(width) + ")");
        }
        for (std::size_t c = 0; c < width; ++c) {
            if (c == label_col) {
                labels.push_back(fields[c]);
                continue;
            }
            const int score = parse_score(path, r + 1, c + 1, fields[c]);
            if (options.levels.has_value() && score > *options.levels) {
                fail_at(path, r + 1, c + 1,
                        "score " + std::to_string(score) + " above K = " +
                            std::to_string(*options.levels));
            }
            max_score = std::max(max_score, score);
            cells.push_back(score);
        }
    }

    const int levels = options.levels.value_or(std::max(max_score, 2));
    RatingMatrix matrix(static_cast<int>(n_rows), static_cast<int>(n_score_cols), levels,
                        std::move(cells));
    if (options.transpose) matrix = matrix.transposed();
    LabeledMatrix out{std::move(matrix), std::move(labels), !options.levels.has_value()};
    return out;
}

std::vector<std::string> group_order(const LabeledMatrix& labeled) {
    std::vector<std::string> order;
    for (const auto& label : labeled.group_labels) {
        if (std::find(order.begin(), order.end(), label) == order.end()) order.push_back(label);
    }
    return order;
}

RatingMatrix group_submatrix(const LabeledMatrix& labeled, const std::string& label) {
    std::vector<int> rows;
    for (std::size_t i = 0; i < labeled.group_labels.size(); ++i) {
        if (labeled.group_labels[i] == label) rows.push_back(static_cast<int>(i));
    }
    if (rows.empty()) {
        throw std::runtime_error("group '" + label + "' has no rows");
    }
    std::vector<int> cols(static_cast<std::size_t>(labeled.matrix.n_raters()));
    for (int j = 0; j < labeled.matrix.n_raters(); ++j) cols[static_cast<std::size_t>(j)] = j;
    return labeled.matrix.gather(rows, cols);
}

namespace {

double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw std::runtime_error("config key '" + key + "': invalid number '" + value + "'");
    }
}

long long parse_int(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const long long v = std::stoll(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw std::runtime_error("config key '" + key + "': invalid integer '" + value + "'");
    }
}

}  // namespace

StudyFileConfig parse_study_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open '" + path.string() + "' for reading");
    }
    StudyFileConfig config;
    std::optional<std::vector<double>> shares;
    std::optional<std::string> schemes_value;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string stripped = trim(line.substr(0, line.find('#')));
        if (stripped.empty()) continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos) {
            throw std::runtime_error(path.string() + ":" + std::to_string(line_no) +
                                     ": expected key=value, got '" + stripped + "'");
        }
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));

        if (key == "S") {
            config.study.samples = static_cast<int>(parse_int(key, value));
        } else if (key == "B") {
            config.study.replicates = static_cast<int>(parse_int(key, value));
        } else if (key == "n_T") {
            config.study.n_targets = static_cast<int>(parse_int(key, value));
        } else if (key == "n_R") {
            config.study.n_raters = static_cast<int>(parse_int(key, value));
        } else if (key == "level") {
            config.study.level = parse_double(key, value);
        } else if (key == "seed") {
            config.study.seed = static_cast<std::uint64_t>(parse_int(key, value));
            config.seed_given = true;
        } else if (key == "workers") {
            config.study.workers = static_cast<int>(parse_int(key, value));
        } else if (key == "N_T") {
            config.population.n_targets = static_cast<int>(parse_int(key, value));
        } else if (key == "N_R") {
            config.population.n_raters = static_cast<int>(parse_int(key, value));
        } else if (key == "p") {
            std::vector<double> p;
            for (const auto& field : split(value, ',')) p.push_back(parse_double(key, field));
            shares = std::move(p);
        } else if (key == "target_d") {
            config.target_d = parse_double(key, value);
        } else if (key == "methods") {
            config.study.methods.clear();
            if (value != "none") {
                for (const auto& name : split(value, ',')) {
                    config.study.methods.push_back(interval_method_from_string(name));
                }
            }
        } else if (key == "schemes") {
            schemes_value = value;
        } else if (key == "raw_output") {
            config.raw_output = value;
        } else {
            throw std::runtime_error(path.string() + ":" + std::to_string(line_no) +
                                     ": unknown config key '" + key + "'");
        }
    }
    if (shares.has_value()) {
        config.population.shares = CategoryDistribution(std::move(*shares));
    }
    if (schemes_value.has_value()) {
        config.study.schemes.clear();
        if (*schemes_value != "none") {
            for (const auto& name : split(*schemes_value, ',')) {
                const SchemeKind kind = scheme_kind_from_string(name);
                if (kind == SchemeKind::pseudo_population) {
                    config.study.schemes.push_back(BootstrapScheme::pseudo_population(
                        config.population.n_targets, config.population.n_raters));
                } else {
                    config.study.schemes.push_back(BootstrapScheme{kind, 0, 0});
                }
            }
        }
    } else {
        config.study.schemes = StudyConfig::default_schemes(config.population.n_targets,
                                                            config.population.n_raters);
    }
    return config;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path());
    }
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw std::runtime_error("cannot open '" + tmp.string() + "' for writing");
        }
        out << contents;
        if (!out) {
            std::filesystem::remove(tmp);
            throw std::runtime_error("failed writing '" + tmp.string() + "'");
        }
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace ordagree::io
