// Copyright 2026 The AlgoLisp Toolkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "algolisp/attention.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

#include "algolisp/error.h"

namespace algolisp {
namespace {

std::string Shape(const DenseMatrix& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

void RequireFinite(const DenseMatrix& m, const char* what) {
  if (!m.AllFinite()) {
    throw Error(ErrorCode::kNonFiniteInput,
                std::string(what) + " has a non-finite entry");
  }
}

void RequireFinite(const std::vector<double>& v, const char* what) {
  for (double x : v) {
    if (!std::isfinite(x)) {
      throw Error(ErrorCode::kNonFiniteInput,
                  std::string(what) + " has a non-finite entry");
    }
  }
}

void RequireShape(const DenseMatrix& m, std::size_t rows, std::size_t cols,
                  const char* what) {
  if (m.rows() != rows || m.cols() != cols) {
    throw Error(ErrorCode::kDimensionMismatch,
                std::string(what) + " is " + Shape(m) + ", expected " +
                    std::to_string(rows) + "x" + std::to_string(cols));
  }
}

void CheckGate(const GateParams& p, std::size_t d) {
  RequireShape(p.w_qg, d, d, "W_q^g");
  RequireShape(p.w_vg, d, d, "W_v^g");
  RequireShape(p.w_qi, d, d, "W_q^i");
  RequireShape(p.w_vi, d, d, "W_v^i");
  if (p.b_g.size() != d || p.b_i.size() != d) {
    throw Error(ErrorCode::kDimensionMismatch, "gate biases must have length d");
  }
  RequireFinite(p.w_qg, "W_q^g");
  RequireFinite(p.w_vg, "W_v^g");
  RequireFinite(p.w_qi, "W_q^i");
  RequireFinite(p.w_vi, "W_v^i");
  RequireFinite(p.b_g, "b^g");
  RequireFinite(p.b_i, "b^i");
}

double Sigmoid(double x) {
  // Branches keep exp() from overflowing for large |x|.
  if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

// Q W_q + F W_v + b
DenseMatrix Affine(const DenseMatrix& q, const DenseMatrix& w_q,
                   const DenseMatrix& f, const DenseMatrix& w_v,
                   const std::vector<double>& b) {
  DenseMatrix out = MatMul(q, w_q);
  const DenseMatrix fv = MatMul(f, w_v);
  for (std::size_t r = 0; r < out.rows(); ++r) {
    for (std::size_t c = 0; c < out.cols(); ++c) out(r, c) += fv(r, c) + b[c];
  }
  return out;
}

void AddInPlace(DenseMatrix& a, const DenseMatrix& b) {
  for (std::size_t i = 0; i < a.data().size(); ++i) a.data()[i] += b.data()[i];
}

std::vector<double> ColumnSums(const DenseMatrix& m) {
  std::vector<double> out(m.cols(), 0.0);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) out[c] += m(r, c);
  }
  return out;
}

double Sum(const DenseMatrix& m) {
  return std::accumulate(m.data().begin(), m.data().end(), 0.0);
}

// One parameter block for the finite-difference loop.
struct Block {
  std::string name;
  std::vector<double>* values;
  std::size_t cols;  // for naming entries
  const std::vector<double>* analytic;
};

GradCheckResult RunCheck(std::vector<Block> blocks,
                         const std::function<double()>& loss, double eps) {
  if (!(eps >= 1e-6 && eps <= 1e-3)) {
    throw Error(ErrorCode::kInvalidArgument,
                "eps must lie in [1e-6, 1e-3], got " + std::to_string(eps));
  }
  GradCheckResult result;
  for (auto& block : blocks) {
    auto& values = *block.values;
    for (std::size_t i = 0; i < values.size(); ++i) {
      const double saved = values[i];
      values[i] = saved + eps;
      const double plus = loss();
      values[i] = saved - eps;
      const double minus = loss();
      values[i] = saved;
      const double numeric = (plus - minus) / (2 * eps);
      const double analytic = (*block.analytic)[i];
      if (!std::isfinite(numeric) || !std::isfinite(analytic)) {
        throw Error(ErrorCode::kNonFiniteGradient,
                    "non-finite gradient for " + block.name);
      }
      const double denom =
          std::max({std::fabs(analytic), std::fabs(numeric), kGradCheckFloor});
      const double rel = std::fabs(analytic - numeric) / denom;
      ++result.entries;
      if (result.worst_entry.empty() || rel > result.max_rel_error) {
        result.max_rel_error = rel;
        result.worst_entry = block.name + "[" + std::to_string(i / block.cols) +
                             "," + std::to_string(i % block.cols) + "]";
      }
    }
  }
  return result;
}

}  // namespace

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

DenseMatrix::DenseMatrix(std::initializer_list<std::initializer_list<double>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  for (const auto& r : rows) {
    if (r.size() != cols_) {
      throw Error(ErrorCode::kDimensionMismatch, "ragged matrix literal");
    }
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

DenseMatrix DenseMatrix::Random(std::size_t rows, std::size_t cols,
                                std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> dist(lo, hi);
  DenseMatrix m(rows, cols);
  for (auto& x : m.data_) x = dist(rng);
  return m;
}

DenseMatrix DenseMatrix::Transpose() const {
  DenseMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  }
  return t;
}

bool DenseMatrix::AllFinite() const {
  return std::all_of(data_.begin(), data_.end(),
                     [](double x) { return std::isfinite(x); });
}

DenseMatrix MatMul(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols() != b.rows()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "cannot multiply " + Shape(a) + " by " + Shape(b));
  }
  DenseMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

DenseMatrix MatMulTransposed(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols() != b.cols()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "cannot multiply " + Shape(a) + " by the transpose of " + Shape(b));
  }
  DenseMatrix out(a.rows(), b.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < b.rows(); ++j) {
      double s = 0;
      for (std::size_t k = 0; k < a.cols(); ++k) s += a(i, k) * b(j, k);
      out(i, j) = s;
    }
  }
  return out;
}

DenseMatrix SoftmaxRows(const DenseMatrix& scores) {
  DenseMatrix out(scores.rows(), scores.cols());
  for (std::size_t r = 0; r < scores.rows(); ++r) {
    double mx = -std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < scores.cols(); ++c) mx = std::max(mx, scores(r, c));
    double total = 0;
    for (std::size_t c = 0; c < scores.cols(); ++c) {
      out(r, c) = std::exp(scores(r, c) - mx);
      total += out(r, c);
    }
    for (std::size_t c = 0; c < scores.cols(); ++c) out(r, c) /= total;
  }
  return out;
}

DenseMatrix AttentionWeights(const DenseMatrix& q, const DenseMatrix& k) {
  if (q.rows() == 0 || k.rows() == 0 || q.cols() == 0) {
    throw Error(ErrorCode::kDimensionMismatch, "attention needs non-empty inputs");
  }
  if (q.cols() != k.cols()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "query " + Shape(q) + " and key " + Shape(k) + " widths differ");
  }
  RequireFinite(q, "Q");
  RequireFinite(k, "K");
  DenseMatrix scores = MatMulTransposed(q, k);
  const double scale = 1.0 / std::sqrt(static_cast<double>(q.cols()));
  for (auto& x : scores.data()) x *= scale;
  return SoftmaxRows(scores);
}

DenseMatrix ScaledDotAttention(const DenseMatrix& q, const DenseMatrix& k,
                               const DenseMatrix& v) {
  if (v.rows() != k.rows()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "key " + Shape(k) + " and value " + Shape(v) + " lengths differ");
  }
  RequireFinite(v, "V");
  return MatMul(AttentionWeights(q, k), v);
}

DenseMatrix CrossAttention(const CrossInputs& x, CrossOrientation orientation) {
  if (orientation == CrossOrientation::kAsPrinted) {
    return ScaledDotAttention(x.q_enc, x.k_dec, x.v_dec);
  }
  return ScaledDotAttention(x.q_dec, x.k_enc, x.v_enc);
}

GateParams GateParams::Random(std::size_t d, std::mt19937_64& rng) {
  const double bound = 1.0 / std::sqrt(static_cast<double>(d));
  GateParams p;
  p.w_qg = DenseMatrix::Random(d, d, rng, -bound, bound);
  p.w_vg = DenseMatrix::Random(d, d, rng, -bound, bound);
  p.w_qi = DenseMatrix::Random(d, d, rng, -bound, bound);
  p.w_vi = DenseMatrix::Random(d, d, rng, -bound, bound);
  std::uniform_real_distribution<double> dist(-bound, bound);
  p.b_g.resize(d);
  p.b_i.resize(d);
  for (auto& b : p.b_g) b = dist(rng);
  for (auto& b : p.b_i) b = dist(rng);
  return p;
}

DenseMatrix GatedCrossAttention(const DenseMatrix& q, const DenseMatrix& f_ca,
                                const GateParams& p) {
  RequireShape(f_ca, q.rows(), q.cols(), "f_CA");
  RequireFinite(q, "Q_e");
  RequireFinite(f_ca, "f_CA");
  CheckGate(p, q.cols());
  const DenseMatrix gate = Affine(q, p.w_qg, f_ca, p.w_vg, p.b_g);
  DenseMatrix out = Affine(q, p.w_qi, f_ca, p.w_vi, p.b_i);
  for (std::size_t i = 0; i < out.data().size(); ++i) {
    out.data()[i] *= Sigmoid(gate.data()[i]);
  }
  return out;
}

SdaGrads ScaledDotAttentionBackward(const DenseMatrix& q, const DenseMatrix& k,
                                    const DenseMatrix& v,
                                    const DenseMatrix& upstream) {
  const DenseMatrix p = AttentionWeights(q, k);
  RequireShape(upstream, q.rows(), v.cols(), "upstream gradient");
  SdaGrads g;
  g.dv = MatMul(p.Transpose(), upstream);
  const DenseMatrix dp = MatMulTransposed(upstream, v);  // n x m
  DenseMatrix ds(p.rows(), p.cols());
  for (std::size_t i = 0; i < p.rows(); ++i) {
    double dot = 0;
    for (std::size_t j = 0; j < p.cols(); ++j) dot += p(i, j) * dp(i, j);
    for (std::size_t j = 0; j < p.cols(); ++j) ds(i, j) = p(i, j) * (dp(i, j) - dot);
  }
  const double scale = 1.0 / std::sqrt(static_cast<double>(q.cols()));
  g.dq = MatMul(ds, k);
  g.dk = MatMul(ds.Transpose(), q);
  for (auto& x : g.dq.data()) x *= scale;
  for (auto& x : g.dk.data()) x *= scale;
  return g;
}

GcaGrads GatedCrossAttentionBackward(const DenseMatrix& q,
                                     const DenseMatrix& f_ca,
                                     const GateParams& p,
                                     const DenseMatrix& upstream) {
  RequireShape(f_ca, q.rows(), q.cols(), "f_CA");
  CheckGate(p, q.cols());
  RequireShape(upstream, q.rows(), q.cols(), "upstream gradient");
  const DenseMatrix z = Affine(q, p.w_qg, f_ca, p.w_vg, p.b_g);
  const DenseMatrix info = Affine(q, p.w_qi, f_ca, p.w_vi, p.b_i);
  DenseMatrix d_info(q.rows(), q.cols()), d_z(q.rows(), q.cols());
  for (std::size_t i = 0; i < z.data().size(); ++i) {
    const double s = Sigmoid(z.data()[i]);
    d_info.data()[i] = upstream.data()[i] * s;
    d_z.data()[i] = upstream.data()[i] * info.data()[i] * s * (1 - s);
  }
  const DenseMatrix qt = q.Transpose(), ft = f_ca.Transpose();
  GcaGrads g;
  g.dp.w_qg = MatMul(qt, d_z);
  g.dp.w_vg = MatMul(ft, d_z);
  g.dp.w_qi = MatMul(qt, d_info);
  g.dp.w_vi = MatMul(ft, d_info);
  g.dp.b_g = ColumnSums(d_z);
  g.dp.b_i = ColumnSums(d_info);
  g.dq = MatMulTransposed(d_z, p.w_qg);
  AddInPlace(g.dq, MatMulTransposed(d_info, p.w_qi));
  g.df = MatMulTransposed(d_z, p.w_vg);
  AddInPlace(g.df, MatMulTransposed(d_info, p.w_vi));
  return g;
}

AttnOp ParseAttnOp(const std::string& name) {
  if (name == "sda") return AttnOp::kSda;
  if (name == "gca") return AttnOp::kGca;
  if (name == "gca-cross") return AttnOp::kGcaCross;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown attention op '" + name + "' (sda, gca, gca-cross)");
}

GradCheckResult GradCheckSda(const DenseMatrix& q, const DenseMatrix& k,
                             const DenseMatrix& v, double eps) {
  const SdaGrads g = ScaledDotAttentionBackward(
      q, k, v, DenseMatrix(q.rows(), v.cols(), 1.0));
  DenseMatrix mq = q, mk = k, mv = v;
  return RunCheck({{"dq", &mq.data(), mq.cols(), &g.dq.data()},
                   {"dk", &mk.data(), mk.cols(), &g.dk.data()},
                   {"dv", &mv.data(), mv.cols(), &g.dv.data()}},
                  [&] { return Sum(ScaledDotAttention(mq, mk, mv)); }, eps);
}

namespace {

std::vector<Block> GateBlocks(GateParams& p, const GateParams& dp) {
  return {{"dW_qg", &p.w_qg.data(), p.w_qg.cols(), &dp.w_qg.data()},
          {"dW_vg", &p.w_vg.data(), p.w_vg.cols(), &dp.w_vg.data()},
          {"dW_qi", &p.w_qi.data(), p.w_qi.cols(), &dp.w_qi.data()},
          {"dW_vi", &p.w_vi.data(), p.w_vi.cols(), &dp.w_vi.data()},
          {"db_g", &p.b_g, p.b_g.size(), &dp.b_g},
          {"db_i", &p.b_i, p.b_i.size(), &dp.b_i}};
}

}  // namespace

GradCheckResult GradCheckGca(const DenseMatrix& q, const DenseMatrix& f_ca,
                             const GateParams& p, double eps) {
  const GcaGrads g = GatedCrossAttentionBackward(
      q, f_ca, p, DenseMatrix(q.rows(), q.cols(), 1.0));
  DenseMatrix mq = q, mf = f_ca;
  GateParams mp = p;
  auto blocks = GateBlocks(mp, g.dp);
  blocks.push_back({"dq", &mq.data(), mq.cols(), &g.dq.data()});
  blocks.push_back({"df", &mf.data(), mf.cols(), &g.df.data()});
  return RunCheck(std::move(blocks),
                  [&] { return Sum(GatedCrossAttention(mq, mf, mp)); }, eps);
}

GradCheckResult GradCheckGcaCross(const DenseMatrix& q, const DenseMatrix& k,
                                  const DenseMatrix& v, const GateParams& p,
                                  double eps) {
  const DenseMatrix f = ScaledDotAttention(q, k, v);
  const GcaGrads top = GatedCrossAttentionBackward(
      q, f, p, DenseMatrix(q.rows(), q.cols(), 1.0));
  const SdaGrads inner = ScaledDotAttentionBackward(q, k, v, top.df);
  DenseMatrix dq = top.dq;
  AddInPlace(dq, inner.dq);

  DenseMatrix mq = q, mk = k, mv = v;
  GateParams mp = p;
  auto blocks = GateBlocks(mp, top.dp);
  blocks.push_back({"dq", &mq.data(), mq.cols(), &dq.data()});
  blocks.push_back({"dk", &mk.data(), mk.cols(), &inner.dk.data()});
  blocks.push_back({"dv", &mv.data(), mv.cols(), &inner.dv.data()});
  return RunCheck(std::move(blocks),
                  [&] {
                    return Sum(GatedCrossAttention(
                        mq, ScaledDotAttention(mq, mk, mv), mp));
                  },
                  eps);
}

GradCheckResult GradCheck(AttnOp op, std::size_t n, std::size_t m,
                          std::size_t d, std::uint64_t seed, double eps) {
  if (n == 0 || m == 0 || d == 0) {
    throw Error(ErrorCode::kDimensionMismatch, "n, m and d must be positive");
  }
  std::mt19937_64 rng(seed);
  const DenseMatrix q = DenseMatrix::Random(n, d, rng, -1, 1);
  switch (op) {
    case AttnOp::kSda: {
      const DenseMatrix k = DenseMatrix::Random(m, d, rng, -1, 1);
      const DenseMatrix v = DenseMatrix::Random(m, d, rng, -1, 1);
      return GradCheckSda(q, k, v, eps);
    }
    case AttnOp::kGca: {
      const DenseMatrix f = DenseMatrix::Random(n, d, rng, -1, 1);
      return GradCheckGca(q, f, GateParams::Random(d, rng), eps);
    }
    case AttnOp::kGcaCross: {
      const DenseMatrix k = DenseMatrix::Random(m, d, rng, -1, 1);
      const DenseMatrix v = DenseMatrix::Random(m, d, rng, -1, 1);
      return GradCheckGcaCross(q, k, v, GateParams::Random(d, rng), eps);
    }
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown attention op");
}

}  // namespace algolisp
