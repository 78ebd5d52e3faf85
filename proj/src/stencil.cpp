#include "mns/stencil.hpp"

#include <algorithm>
#include <cassert>

namespace mns {

void SparseOp::apply(const std::vector<double>& x, std::vector<double>& y) const {
  assert(int(x.size()) == cols);
  y.assign(rows, 0.0);
  for (int r = 0; r < rows; ++r) {
    double s = 0.0;
    for (int k = rowptr[r]; k < rowptr[r + 1]; ++k) s += val[k] * x[col[k]];
    y[r] = s;
  }
}

std::vector<double> SparseOp::apply(const std::vector<double>& x) const {
  std::vector<double> y;
  apply(x, y);
  return y;
}

SparseOp SparseOp::transposed() const {
  SparseOp t;
  t.rows = cols;
  t.cols = rows;
  t.rowptr.assign(cols + 1, 0);
  const int nnz = int(col.size());
  for (int k = 0; k < nnz; ++k) t.rowptr[col[k] + 1]++;
  for (int c = 0; c < cols; ++c) t.rowptr[c + 1] += t.rowptr[c];
  t.col.resize(nnz);
  t.val.resize(nnz);
  std::vector<int> next(t.rowptr.begin(), t.rowptr.end() - 1);
  for (int r = 0; r < rows; ++r) {
    for (int k = rowptr[r]; k < rowptr[r + 1]; ++k) {
      const int pos = next[col[k]]++;
      t.col[pos] = r;
      t.val[pos] = val[k];
    }
  }
  return t;
}

namespace {

struct RowBuilder {
  std::vector<int> cols;
  std::vector<double> vals;
  void add(int c, double v) {
    cols.push_back(c);
    vals.push_back(v);
  }
};

}  // namespace

SparseOp build_derivative(const ChartGrid& g, int axis) {
  const int n1 = g.n1, n2 = g.n2, N = g.size();
  const bool periodic = (axis == 1) ? g.periodic1 : g.periodic2;
  const int len = (axis == 1) ? n1 : n2;
  const double h = (axis == 1) ? g.d1 : g.d2;

  SparseOp op;
  op.rows = op.cols = N;
  op.rowptr.assign(N + 1, 0);
  std::vector<RowBuilder> rowsb(N);

  auto node = [&](int i, int j) { return g.idx(i, j); };
  // Index of the node offset by step along the axis, or -1 if it leaves the
  // grid / chart.
  auto shift = [&](int i, int j, int step) -> int {
    int p = (axis == 1) ? i + step : j + step;
    if (periodic) {
      p = ((p % len) + len) % len;
    } else if (p < 0 || p >= len) {
      return -1;
    }
    const int k = (axis == 1) ? node(p, j) : node(i, p);
    return g.in_chart[k] ? k : -1;
  };

  for (int i = 0; i < n1; ++i) {
    for (int j = 0; j < n2; ++j) {
      const int k = node(i, j);
      if (!g.in_chart[k]) continue;  // zero row
      RowBuilder& rb = rowsb[k];
      const int km = shift(i, j, -1);
      const int kp = shift(i, j, +1);
      if (km >= 0 && kp >= 0) {
        rb.add(km, -0.5 / h);
        rb.add(kp, 0.5 / h);
      } else if (kp >= 0) {
        const int kpp = shift(i, j, +2);
        if (kpp >= 0) {  // forward 3-point, second order
          rb.add(k, -1.5 / h);
          rb.add(kp, 2.0 / h);
          rb.add(kpp, -0.5 / h);
        } else {
          rb.add(k, -1.0 / h);
          rb.add(kp, 1.0 / h);
        }
      } else if (km >= 0) {
        const int kmm = shift(i, j, -2);
        if (kmm >= 0) {  // backward 3-point
          rb.add(k, 1.5 / h);
          rb.add(km, -2.0 / h);
          rb.add(kmm, 0.5 / h);
        } else {
          rb.add(k, 1.0 / h);
          rb.add(km, -1.0 / h);
        }
      }
      // isolated along this axis: zero row
    }
  }

  int nnz = 0;
  for (int r = 0; r < N; ++r) nnz += int(rowsb[r].cols.size());
  op.col.reserve(nnz);
  op.val.reserve(nnz);
  for (int r = 0; r < N; ++r) {
    op.rowptr[r + 1] = op.rowptr[r] + int(rowsb[r].cols.size());
    for (size_t q = 0; q < rowsb[r].cols.size(); ++q) {
      op.col.push_back(rowsb[r].cols[q]);
      op.val.push_back(rowsb[r].vals[q]);
    }
  }
  return op;
}

}  // namespace mns
