/// @file matrix_market.hpp
/// @brief Matrix Market coordinate I/O for real symmetric matrices.

#ifndef SID_CORE_MATRIX_MARKET_HPP
#define SID_CORE_MATRIX_MARKET_HPP

#include <string>

#include "sid/core/sparse_matrix.hpp"

namespace sid {

/// Read a coordinate-format real matrix, symmetric or general storage.
/// General files must carry numerically symmetric content; the result is the
/// same CSR either way. Throws IoError on malformed input, nonsquare shape,
/// wrong banner field, or asymmetric values.
SparseMatrix read_matrix_market(const std::string& path);

/// Write in symmetric coordinate storage (lower triangle), 17 significant
/// digits so a write/read round trip reproduces values bit-exactly.
void write_matrix_market(const SparseMatrix& A, const std::string& path);

} // namespace sid

#endif // SID_CORE_MATRIX_MARKET_HPP
