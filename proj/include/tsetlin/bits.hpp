#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <span>
#include <vector>

namespace tsetlin {

/// One encoded input X = [x_1 ... x_n], each entry 0 or 1.
using BitVector = std::vector<std::uint8_t>;
using BitView = std::span<const std::uint8_t>;

/// Encoded samples, one per row.
using BitMatrix = Eigen::Matrix<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

inline BitView row_bits(const BitMatrix &m, Eigen::Index row) {
    return {m.row(row).data(), static_cast<std::size_t>(m.cols())};
}

} // namespace tsetlin
