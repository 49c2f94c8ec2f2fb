#include "sid/core/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace sid {

namespace {

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

} // namespace

SparseMatrix read_matrix_market(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("matrix market: cannot open '" + path + "'");

    std::string line;
    if (!std::getline(in, line)) throw IoError("matrix market: empty file");

    std::istringstream banner(line);
    std::string tag, object, format, field, symmetry;
    banner >> tag >> object >> format >> field >> symmetry;
    if (tag != "%%MatrixMarket")
        throw IoError("matrix market: missing %%MatrixMarket banner");
    object = lower(object);
    format = lower(format);
    field = lower(field);
    symmetry = lower(symmetry);
    if (object != "matrix" || format != "coordinate")
        throw IoError("matrix market: expected 'matrix coordinate' header");
    if (field != "real")
        throw IoError("matrix market: unsupported field type '" + field + "' (real only)");
    const bool symmetric_storage = symmetry == "symmetric";
    if (!symmetric_storage && symmetry != "general")
        throw IoError("matrix market: unsupported symmetry '" + symmetry + "'");

    // size line (comments in between are allowed)
    long rows = -1, cols = -1, entries = -1;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '%') continue;
        std::istringstream sz(line);
        if (!(sz >> rows >> cols >> entries))
            throw IoError("matrix market: malformed size line");
        break;
    }
    if (rows < 0) throw IoError("matrix market: missing size line");
    if (rows != cols) throw IoError("matrix market: matrix is not square");

    std::vector<Triplet> triplets;
    triplets.reserve(static_cast<std::size_t>(entries) * (symmetric_storage ? 2 : 1));
    long seen = 0;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '%') continue;
        std::istringstream es(line);
        long i, j;
        double v;
        if (!(es >> i >> j >> v)) throw IoError("matrix market: malformed entry line");
        if (i < 1 || i > rows || j < 1 || j > cols)
            throw IoError("matrix market: entry index out of range");
        if (symmetric_storage && j > i)
            throw IoError("matrix market: symmetric storage with upper-triangle entry");
        const auto r = static_cast<index_t>(i - 1);
        const auto c = static_cast<index_t>(j - 1);
        triplets.push_back({r, c, v});
        if (symmetric_storage && r != c) triplets.push_back({c, r, v});
        ++seen;
    }
    if (seen != entries)
        throw IoError("matrix market: entry count does not match size line");

    // Duplicate coordinates would silently sum in assembly; a file carrying
    // them is malformed.
    {
        std::vector<std::pair<index_t, index_t>> coords;
        coords.reserve(triplets.size());
        for (const auto& t : triplets) coords.emplace_back(t.row, t.col);
        std::sort(coords.begin(), coords.end());
        if (std::adjacent_find(coords.begin(), coords.end()) != coords.end())
            throw IoError("matrix market: duplicate entry coordinates");
    }

    try {
        return SparseMatrix::from_triplets(static_cast<index_t>(rows), std::move(triplets));
    } catch (const InvalidArgumentError& e) {
        throw IoError(std::string("matrix market: ") + e.what());
    }
}

void write_matrix_market(const SparseMatrix& A, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("matrix market: cannot write '" + path + "'");

    const auto& row_ptr = A.row_ptr();
    const auto& col_idx = A.col_idx();
    const auto& values = A.values();

    long lower_entries = 0;
    for (index_t i = 0; i < A.dim(); ++i)
        for (index_t k = row_ptr[static_cast<std::size_t>(i)];
             k < row_ptr[static_cast<std::size_t>(i) + 1]; ++k)
            if (col_idx[static_cast<std::size_t>(k)] <= i) ++lower_entries;

    out << "%%MatrixMarket matrix coordinate real symmetric\n";
    out << A.dim() << " " << A.dim() << " " << lower_entries << "\n";
    char buf[64];
    for (index_t i = 0; i < A.dim(); ++i) {
        for (index_t k = row_ptr[static_cast<std::size_t>(i)];
             k < row_ptr[static_cast<std::size_t>(i) + 1]; ++k) {
            const index_t j = col_idx[static_cast<std::size_t>(k)];
            if (j > i) continue;
            std::snprintf(buf, sizeof(buf), "%.17g", values[static_cast<std::size_t>(k)]);
            out << (i + 1) << " " << (j + 1) << " " << buf << "\n";
        }
    }
    if (!out) throw IoError("matrix market: write failed for '" + path + "'");
}

} // namespace sid
