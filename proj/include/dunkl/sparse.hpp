#ifndef DUNKL_SPARSE_HPP
#define DUNKL_SPARSE_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "dunkl/common.hpp"

namespace dunkl {

// Compressed sparse row matrix. Column indices within a row are sorted.
struct CsrMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::size_t> row_ptr;  // size rows + 1
  std::vector<std::uint32_t> col;
  std::vector<double> val;

  std::size_t nnz() const { return val.size(); }
};

// Row-by-row builder; entries within a row must be pushed in column order.
class CsrBuilder {
 public:
  CsrBuilder(std::size_t rows, std::size_t cols) {
    m_.rows = rows;
    m_.cols = cols;
    m_.row_ptr.reserve(rows + 1);
    m_.row_ptr.push_back(0);
  }

  void push(std::uint32_t column, double value) {
    m_.col.push_back(column);
    m_.val.push_back(value);
  }

  void finish_row() { m_.row_ptr.push_back(m_.col.size()); }

  CsrMatrix take() {
    if (m_.row_ptr.size() != m_.rows + 1)
      throw std::logic_error("CsrBuilder: row count mismatch");
    return std::move(m_);
  }

 private:
  CsrMatrix m_;
};

}  // namespace dunkl

#endif
