#include "oat/catalog.hpp"

#include "oat/errors.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace oat {

namespace {

struct CatalogEntry {
    const char* name;
    const char* text;
};

// Generated at configure time from core/data/catalog/*.oa; the data files
// are the source of truth.
#include "catalog_data.inc"

const std::map<std::string, const char*>& catalog_index() {
    static const std::map<std::string, const char*> index = [] {
        std::map<std::string, const char*> m;
        for (const auto& entry : kCatalogEntries) {
            m.emplace(entry.name, entry.text);
        }
        return m;
    }();
    return index;
}

} // namespace

OrthogonalArray parse_oa_text(const std::string& text, const std::string& origin) {
    std::istringstream in(text);
    std::string line;
    std::string header;
    std::vector<std::vector<int>> rows;

    auto schema_error = [&origin](const std::string& what) -> Error {
        return Error(ErrorKind::SchemaError, origin + ": " + what);
    };

    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        const auto start = line.find_first_not_of(" \t");
        if (start == std::string::npos || line[start] == '#') {
            continue;
        }
        if (header.empty()) {
            header = line.substr(start);
            continue;
        }
        std::istringstream fields(line);
        std::vector<int> row;
        int value = 0;
        while (fields >> value) {
            row.push_back(value);
        }
        if (!fields.eof()) {
            throw schema_error("non-numeric entry in row " + std::to_string(rows.size() + 1));
        }
        rows.push_back(std::move(row));
    }

    int n = 0;
    int h = 0;
    int k = 0;
    if (header.empty() ||
        std::sscanf(header.c_str(), "L%d(%d^%d)", &n, &h, &k) != 3) {
        throw schema_error("missing or malformed header line, expected L<N>(<h>^<k>)");
    }
    if (static_cast<int>(rows.size()) != n) {
        throw schema_error("header declares " + std::to_string(n) + " rows, found " +
                           std::to_string(rows.size()));
    }
    for (const auto& row : rows) {
        if (static_cast<int>(row.size()) != k) {
            throw schema_error("header declares " + std::to_string(k) + " columns, found a row with " +
                               std::to_string(row.size()));
        }
    }
    if (h < 2 || n % (h * h) != 0) {
        throw schema_error("row count " + std::to_string(n) + " is not a multiple of h^2");
    }

    OrthogonalArray array;
    array.levels = h;
    array.factors = k;
    array.rows = n;
    array.strength = 2;
    array.index_lambda = n / (h * h);
    array.entries = std::move(rows);
    return array;
}

std::string format_oa_text(const OrthogonalArray& array) {
    std::ostringstream out;
    out << "# oat orthogonal array catalog, format v1\n";
    out << "L" << array.rows << "(" << array.levels << "^" << array.factors << ")\n";
    for (const auto& row : array.entries) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c > 0) {
                out << ' ';
            }
            out << row[c];
        }
        out << '\n';
    }
    return out.str();
}

OrthogonalArray load_oa_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorKind::IoError, "cannot read " + path.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_oa_text(buffer.str(), path.filename().string());
}

OrthogonalArray catalog_lookup(const std::string& name) {
    const auto& index = catalog_index();
    auto it = index.find(name);
    if (it == index.end()) {
        throw Error(ErrorKind::UnknownTable, name + " is not a shipped catalog table");
    }
    OrthogonalArray array = parse_oa_text(it->second, name);
    auto verification = verify_oa(array);
    if (!verification.pass) {
        throw Error(ErrorKind::SchemaError,
                    "catalog entry " + name + " failed verification: " +
                        verification.first_violation);
    }
    return array;
}

std::vector<std::string> catalog_names() {
    std::vector<std::string> names;
    for (const auto& [name, text] : catalog_index()) {
        (void)text;
        names.push_back(name);
    }
    return names;
}

} // namespace oat
