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

#ifndef ALGOLISP_ATTENTION_H_
#define ALGOLISP_ATTENTION_H_

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <string>
#include <vector>

namespace algolisp {

// Row-major dense matrix of doubles.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  DenseMatrix(std::initializer_list<std::initializer_list<double>> rows);

  // Entries drawn uniformly from [lo, hi).
  static DenseMatrix Random(std::size_t rows, std::size_t cols,
                            std::mt19937_64& rng, double lo, double hi);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }
  std::vector<double>& data() { return data_; }
  const std::vector<double>& data() const { return data_; }

  DenseMatrix Transpose() const;
  bool AllFinite() const;

  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

DenseMatrix MatMul(const DenseMatrix& a, const DenseMatrix& b);
// a * b^T without forming the transpose.
DenseMatrix MatMulTransposed(const DenseMatrix& a, const DenseMatrix& b);
// Row-wise softmax with the row maximum subtracted first.
DenseMatrix SoftmaxRows(const DenseMatrix& scores);

// softmax(Q K^T / sqrt(d)), n x m. Throws Error(kDimensionMismatch) or
// Error(kNonFiniteInput).
DenseMatrix AttentionWeights(const DenseMatrix& q, const DenseMatrix& k);

// softmax(Q K^T / sqrt(d)) V for Q: n x d, K: m x d, V: m x dv.
DenseMatrix ScaledDotAttention(const DenseMatrix& q, const DenseMatrix& k,
                               const DenseMatrix& v);

// Encoder-decoder attention. As printed, encoder queries attend over decoder
// keys and values; the standard orientation has decoder queries attend over
// encoder keys and values.
enum class CrossOrientation { kAsPrinted, kStandard };

struct CrossInputs {
  DenseMatrix q_enc, k_enc, v_enc;
  DenseMatrix q_dec, k_dec, v_dec;
};

DenseMatrix CrossAttention(const CrossInputs& x,
                           CrossOrientation orientation = CrossOrientation::kAsPrinted);

// sigmoid(Q W_qg + F W_vg + b_g) .* (Q W_qi + F W_vi + b_i); biases broadcast
// over rows.
struct GateParams {
  DenseMatrix w_qg, w_vg, w_qi, w_vi;  // d x d
  std::vector<double> b_g, b_i;        // d

  // Seeded uniform(-1/sqrt(d), 1/sqrt(d)) entries.
  static GateParams Random(std::size_t d, std::mt19937_64& rng);
};

DenseMatrix GatedCrossAttention(const DenseMatrix& q, const DenseMatrix& f_ca,
                                const GateParams& p);

// Gradients of sum(G .* output) for an upstream gradient G.
struct SdaGrads {
  DenseMatrix dq, dk, dv;
};
SdaGrads ScaledDotAttentionBackward(const DenseMatrix& q, const DenseMatrix& k,
                                    const DenseMatrix& v,
                                    const DenseMatrix& upstream);

struct GcaGrads {
  DenseMatrix dq, df;
  GateParams dp;
};
GcaGrads GatedCrossAttentionBackward(const DenseMatrix& q,
                                     const DenseMatrix& f_ca,
                                     const GateParams& p,
                                     const DenseMatrix& upstream);

// Finite-difference validation of the backward passes for the loss
// L = sum of outputs.
//   sda:       L(Q, K, V)
//   gca:       L(Q, F, params)
//   gca-cross: L(Q, K, V, params) with F = ScaledDotAttention(Q, K, V)
enum class AttnOp { kSda, kGca, kGcaCross };

AttnOp ParseAttnOp(const std::string& name);

struct GradCheckResult {
  double max_rel_error = 0;
  std::size_t entries = 0;
  std::string worst_entry;  // e.g. "dk[3,1]"
};

// Denominator floor in max(|analytic|, |numeric|, floor) for the relative
// error, so that entries whose true gradient is zero compare absolutely.
inline constexpr double kGradCheckFloor = 1e-3;

// eps must lie in [1e-6, 1e-3] (Error(kInvalidArgument)). Throws
// Error(kNonFiniteGradient) if any gradient is not finite.
GradCheckResult GradCheckSda(const DenseMatrix& q, const DenseMatrix& k,
                             const DenseMatrix& v, double eps);
GradCheckResult GradCheckGca(const DenseMatrix& q, const DenseMatrix& f_ca,
                             const GateParams& p, double eps);
GradCheckResult GradCheckGcaCross(const DenseMatrix& q, const DenseMatrix& k,
                                  const DenseMatrix& v, const GateParams& p,
                                  double eps);

// Random inputs of shape Q: n x d, K, V: m x d (F: n x d for gca) drawn with
// `seed`, then the matching check.
GradCheckResult GradCheck(AttnOp op, std::size_t n, std::size_t m,
                          std::size_t d, std::uint64_t seed, double eps = 1e-4);

}  // namespace algolisp

#endif  // ALGOLISP_ATTENTION_H_
